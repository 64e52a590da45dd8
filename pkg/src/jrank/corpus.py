"""Publication corpus: data model, delimited-text ingestion, validation.

A corpus bundles everything the indicator pipeline consumes: publications
with precomputed citation counts, the journals that published them, and the
set of topic clusters used for field normalization.  Corpora are treated as
immutable once built; operations that "modify" one (topic assignment,
perturbations, resampling) return a new instance, so a validated corpus can
be shared freely across workers.
"""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping

PUBLICATION_COLUMNS = ("pub_id", "journal_id", "pub_year", "doc_type", "citations", "topic_id")
JOURNAL_COLUMNS = ("journal_id", "title", "categories")

CATEGORY_SEPARATOR = "|"


class SchemaError(Exception):
    """The file cannot be interpreted at all: no header, or required columns missing."""


class DocumentType(enum.Enum):
    """Document type of a scored publication.

    Only articles and reviews enter the census; any other tag is rejected at
    ingest rather than coerced, because a silently remapped type would land
    the publication in the wrong normalization cell.
    """

    ARTICLE = "Article"
    REVIEW = "Review"

    @classmethod
    def parse(cls, text: str) -> DocumentType:
        """Parse a document-type tag, case-insensitively."""
        normalized = text.strip().lower()
        for member in cls:
            if member.value.lower() == normalized:
                return member
        raise ValueError(f"unknown document type {text!r} (expected Article or Review)")

    @property
    def opposite(self) -> DocumentType:
        return DocumentType.REVIEW if self is DocumentType.ARTICLE else DocumentType.ARTICLE


@dataclass(frozen=True, slots=True)
class Publication:
    """One scored item: a journal's article or review with its citation count.

    ``topic_id`` of None marks the publication as unclassified; it is retained
    in the corpus (and counts toward the plain impact factor) but is excluded
    from field-normalized indicators until a topic is assigned.
    """

    pub_id: str
    journal_id: str
    pub_year: int
    doc_type: DocumentType
    citations: int
    topic_id: str | None = None

    def __post_init__(self) -> None:
        if self.citations < 0:
            raise ValueError(f"publication {self.pub_id!r}: citations must be >= 0")

    @property
    def classified(self) -> bool:
        return self.topic_id is not None


@dataclass(frozen=True, slots=True)
class Journal:
    """A journal and the subject-category labels used for scoped rankings."""

    journal_id: str
    title: str = ""
    categories: tuple[str, ...] = ()


@dataclass(frozen=True)
class Corpus:
    """An immutable snapshot of publications, journals, and the topic universe.

    ``topics`` is the set of known topic identifiers.  When a corpus is loaded
    from files it defaults to the topics observed in the publications; callers
    constructing corpora programmatically may pass a wider or narrower set,
    and :func:`validate_corpus` reports publications referencing topics
    outside it.
    """

    publications: tuple[Publication, ...]
    journals: dict[str, Journal]
    topics: frozenset[str]
    census_label: str = ""

    @cached_property
    def by_journal(self) -> dict[str, tuple[Publication, ...]]:
        """Publications grouped by journal (journals without publications absent)."""
        grouped: dict[str, list[Publication]] = {}
        for pub in self.publications:
            grouped.setdefault(pub.journal_id, []).append(pub)
        return {jid: tuple(pubs) for jid, pubs in grouped.items()}

    @cached_property
    def classified(self) -> tuple[Publication, ...]:
        return tuple(p for p in self.publications if p.classified)

    def with_publications(self, publications: Iterable[Publication]) -> Corpus:
        """Copy of this corpus with a different publication list."""
        return replace(self, publications=tuple(publications))


@dataclass(frozen=True, slots=True)
class RowError:
    """A rejected input row; the line number refers to the physical file line."""

    line: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.message}"


@dataclass
class CorpusFragment:
    """Parsed publications plus the rows that failed to parse."""

    publications: list[Publication] = field(default_factory=list)
    errors: list[RowError] = field(default_factory=list)


@dataclass
class JournalsFragment:
    """Parsed journal table plus the rows that failed to parse."""

    journals: dict[str, Journal] = field(default_factory=dict)
    errors: list[RowError] = field(default_factory=list)


@dataclass(frozen=True, slots=True)
class Finding:
    """One referential-integrity problem found by :func:`validate_corpus`."""

    code: str
    subject: str
    detail: str

    def __str__(self) -> str:
        return f"{self.code}: {self.subject}: {self.detail}"


@dataclass
class ValidationReport:
    """Findings from corpus validation; the corpus is acceptable iff empty."""

    findings: list[Finding] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.findings

    def __len__(self) -> int:
        return len(self.findings)

    def __iter__(self):
        return iter(self.findings)


@dataclass(frozen=True, slots=True)
class CoverageReport:
    """Topic-classification coverage of a corpus.

    ``publication_coverage`` is the fraction of publications with an assigned
    topic; ``journal_coverage`` is the fraction of journals (among those with
    at least one publication) whose assigned share exceeds 90%.  Both default
    to 1.0 on vacuously empty denominators.
    """

    publication_coverage: float
    journal_coverage: float
    n_publications: int
    n_classified: int
    n_journals: int
    n_journals_over_90: int


# ---------------------------------------------------------------------------
# Ingestion
# ---------------------------------------------------------------------------


def _data_lines(path: Path | str) -> list[tuple[int, str]]:
    """Read a delimited file, dropping blank and ``#`` comment lines.

    Returns (physical line number, text) pairs so row errors can name the
    actual file line.
    """
    text = Path(path).read_text(encoding="utf-8-sig")
    lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        lines.append((lineno, raw))
    return lines


def _read_table(
    path: Path | str, required: tuple[str, ...], delimiter: str | None = None
) -> tuple[list[tuple[int, dict[str, str]]], str]:
    """Parse header + rows from a comma- or tab-delimited file.

    With ``delimiter=None`` the separator is auto-detected from the header
    line (tab wins if present).  Raises :class:`SchemaError` when the header
    is missing or lacks required columns.  Rows shorter than the header are
    padded with empty strings; extra columns are ignored.
    """
    lines = _data_lines(path)
    if not lines:
        raise SchemaError(f"{path}: empty file, expected a header row")
    header_line = lines[0][1]
    if delimiter is None:
        delimiter = "\t" if "\t" in header_line else ","
    header = [h.strip() for h in next(csv.reader([header_line], delimiter=delimiter))]
    missing = [col for col in required if col not in header]
    if missing:
        raise SchemaError(f"{path}: missing required column(s): {', '.join(missing)}")

    rows: list[tuple[int, dict[str, str]]] = []
    for lineno, raw in lines[1:]:
        fields = next(csv.reader([raw], delimiter=delimiter))
        if len(fields) < len(header):
            fields = fields + [""] * (len(header) - len(fields))
        rows.append((lineno, {col: fields[i].strip() for i, col in enumerate(header)}))
    return rows, delimiter


def load_publications(path: Path | str, delimiter: str | None = None) -> CorpusFragment:
    """Load publications from delimited text (separator auto-detected by default).

    Unparseable rows are collected in ``errors`` rather than dropped: bad
    integers, unknown document types, negative citation counts, and duplicate
    publication ids each produce a :class:`RowError` naming the line.
    """
    rows, _ = _read_table(path, PUBLICATION_COLUMNS, delimiter)
    fragment = CorpusFragment()
    seen: set[str] = set()
    for lineno, row in rows:
        try:
            pub = _parse_publication(row)
        except ValueError as exc:
            fragment.errors.append(RowError(lineno, str(exc)))
            continue
        if pub.pub_id in seen:
            fragment.errors.append(RowError(lineno, f"duplicate pub_id {pub.pub_id!r}"))
            continue
        seen.add(pub.pub_id)
        fragment.publications.append(pub)
    return fragment


def _parse_publication(row: Mapping[str, str]) -> Publication:
    pub_id = row["pub_id"]
    journal_id = row["journal_id"]
    if not pub_id:
        raise ValueError("empty pub_id")
    if not journal_id:
        raise ValueError("empty journal_id")
    try:
        pub_year = int(row["pub_year"])
    except ValueError:
        raise ValueError(f"pub_year {row['pub_year']!r} is not an integer") from None
    try:
        citations = int(row["citations"])
    except ValueError:
        raise ValueError(f"citations {row['citations']!r} is not an integer") from None
    if citations < 0:
        raise ValueError(f"citations must be >= 0, got {citations}")
    doc_type = DocumentType.parse(row["doc_type"])
    topic_id = row["topic_id"] or None
    return Publication(pub_id, journal_id, pub_year, doc_type, citations, topic_id)


def load_journals(path: Path | str, delimiter: str | None = None) -> JournalsFragment:
    """Load the journal table; categories are ``|``-separated in one column."""
    rows, _ = _read_table(path, JOURNAL_COLUMNS, delimiter)
    fragment = JournalsFragment()
    for lineno, row in rows:
        journal_id = row["journal_id"]
        if not journal_id:
            fragment.errors.append(RowError(lineno, "empty journal_id"))
            continue
        if journal_id in fragment.journals:
            fragment.errors.append(RowError(lineno, f"duplicate journal_id {journal_id!r}"))
            continue
        categories = tuple(c.strip() for c in row["categories"].split(CATEGORY_SEPARATOR) if c.strip())
        fragment.journals[journal_id] = Journal(journal_id, row["title"], categories)
    return fragment


def load_corpus(
    pubs_path: Path | str,
    journals_path: Path | str,
    census_label: str = "",
) -> tuple[Corpus, list[RowError]]:
    """Assemble a corpus from a publications file and a journals file.

    The topic universe is the set of topic ids observed in the publications.
    Row-level problems are returned alongside the corpus; header-level
    problems raise :class:`SchemaError`.
    """
    pubs = load_publications(pubs_path)
    journals = load_journals(journals_path)
    topics = frozenset(p.topic_id for p in pubs.publications if p.topic_id is not None)
    corpus = Corpus(tuple(pubs.publications), journals.journals, topics, census_label)
    return corpus, pubs.errors + journals.errors


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def write_publications(publications: Iterable[Publication], path: Path | str) -> None:
    """Write publications as canonical comma-separated text (LF line endings)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(PUBLICATION_COLUMNS)
        for p in publications:
            writer.writerow(
                [p.pub_id, p.journal_id, p.pub_year, p.doc_type.value, p.citations, p.topic_id or ""]
            )


def write_journals(journals: Mapping[str, Journal], path: Path | str) -> None:
    """Write the journal table as canonical comma-separated text."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(JOURNAL_COLUMNS)
        for journal in journals.values():
            writer.writerow([journal.journal_id, journal.title, CATEGORY_SEPARATOR.join(journal.categories)])


# ---------------------------------------------------------------------------
# Validation and coverage
# ---------------------------------------------------------------------------


def validate_corpus(corpus: Corpus) -> ValidationReport:
    """Check referential integrity; pure, and side-effect free.

    Findings cover dangling journal references, topic ids outside the corpus
    topic set, and duplicate publication ids.  An empty report means the
    corpus is acceptable for indicator computation.
    """
    report = ValidationReport()
    seen: set[str] = set()
    for pub in corpus.publications:
        if pub.pub_id in seen:
            report.findings.append(
                Finding("duplicate-pub-id", pub.pub_id, "publication id appears more than once")
            )
        seen.add(pub.pub_id)
        if pub.journal_id not in corpus.journals:
            report.findings.append(
                Finding("dangling-journal", pub.pub_id, f"journal {pub.journal_id!r} not in journal table")
            )
        if pub.topic_id is not None and pub.topic_id not in corpus.topics:
            report.findings.append(
                Finding("unknown-topic", pub.pub_id, f"topic {pub.topic_id!r} not in corpus topic set")
            )
    return report


def coverage_stats(corpus: Corpus) -> CoverageReport:
    """Classification coverage: per-publication and per-journal fractions."""
    n_pubs = len(corpus.publications)
    n_classified = sum(1 for p in corpus.publications if p.classified)
    by_journal = corpus.by_journal
    n_journals = len(by_journal)
    n_over_90 = 0
    for pubs in by_journal.values():
        assigned = sum(1 for p in pubs if p.classified)
        # integer form of "assigned / len(pubs) > 0.9", immune to float rounding
        if 10 * assigned > 9 * len(pubs):
            n_over_90 += 1
    return CoverageReport(
        publication_coverage=n_classified / n_pubs if n_pubs else 1.0,
        journal_coverage=n_over_90 / n_journals if n_journals else 1.0,
        n_publications=n_pubs,
        n_classified=n_classified,
        n_journals=n_journals,
        n_journals_over_90=n_over_90,
    )
