"""Field-normalized journal impact indicators and ranking-robustness analysis.

The package computes four journal indicators over a publication corpus
partitioned into fine-grained topic clusters (fncsi, fnif, expected_jif,
jif), turns them into deterministic rankings, and quantifies how stable those
rankings are under bootstrap resampling and document-type mislabeling.
"""

from .classifier import AssignmentReport, RelatedRecords, assign_majority, load_related
from .corpus import (
    Corpus,
    CoverageReport,
    DocumentType,
    Journal,
    Publication,
    SchemaError,
    ValidationReport,
    coverage_stats,
    load_corpus,
    load_journals,
    load_publications,
    validate_corpus,
    write_journals,
    write_publications,
)
from .indicators import (
    INDICATOR_KEYS,
    CellKey,
    CellStats,
    JournalIndicator,
    build_cells,
    compute_all,
    csi_cell,
    expected_jif,
    fncsi,
    fnif,
    indicator_values,
    jif,
)
from .ranking import InsufficientDataError, RankingRow, RankingTable, correlate, order_journals, rank
from .robustness import (
    RankingSamples,
    RankSummary,
    RobustnessReport,
    bootstrap_rankings,
    bootstrap_report,
    flip_doc_type,
    perturbation_comparison,
    relative_change,
)
from .synth import SyntheticProfile, generate_corpus, write_corpus_files

__version__ = "0.1.0"

__all__ = [
    "AssignmentReport",
    "CellKey",
    "CellStats",
    "Corpus",
    "CoverageReport",
    "DocumentType",
    "INDICATOR_KEYS",
    "InsufficientDataError",
    "Journal",
    "JournalIndicator",
    "Publication",
    "RankSummary",
    "RankingRow",
    "RankingSamples",
    "RankingTable",
    "RelatedRecords",
    "RobustnessReport",
    "SchemaError",
    "SyntheticProfile",
    "ValidationReport",
    "assign_majority",
    "bootstrap_rankings",
    "bootstrap_report",
    "build_cells",
    "compute_all",
    "correlate",
    "coverage_stats",
    "csi_cell",
    "expected_jif",
    "flip_doc_type",
    "fncsi",
    "fnif",
    "generate_corpus",
    "indicator_values",
    "jif",
    "load_corpus",
    "load_journals",
    "load_publications",
    "load_related",
    "order_journals",
    "perturbation_comparison",
    "rank",
    "relative_change",
    "validate_corpus",
    "write_corpus_files",
    "write_journals",
    "write_publications",
]
