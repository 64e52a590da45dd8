"""Field-normalized journal impact indicators.

Classified publications are partitioned into cells, one per (topic,
document-type) pair, and every indicator is assembled from per-cell
statistics:

* ``fncsi`` — probability that a random paper of the journal outcites a
  random same-cell paper from the other journals, ties credited one half,
  aggregated over the journal's cells by publication-count weights.
* ``fnif`` — mean of per-paper citations, each divided by its cell's average
  citation.
* ``expected_jif`` — publication-weighted average of topic mean citations
  (document types pooled): the citation level a journal's topic mix alone
  would predict.
* ``jif`` — plain citations-per-item over all of the journal's publications,
  classified or not.

The pairwise comparisons behind ``fncsi`` are never enumerated pair by pair.
Each cell keeps a sorted citation histogram with prefix sums, so scoring a
journal against the rest of a cell costs one pass over the journal's distinct
citation values.  Win and tie counts stay integers until a single final
division, which keeps pure-tie cells at exactly 0.5 and makes the two-journal
complement identity hold exactly.

Aggregation order is fixed everywhere (topics sorted by id, articles before
reviews, journals sorted by id), so results are bit-reproducible regardless
of input order or parallel scheduling.  Journals for which an indicator is
undefined are marked with None, never a fabricated zero.
"""

from __future__ import annotations

from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass, field
from itertools import groupby
from typing import Iterable, Mapping

from .corpus import Corpus, DocumentType

INDICATOR_KEYS = ("fncsi", "fnif", "expected_jif", "jif")

# fixed document-type aggregation order
_DOC_ORDER = (DocumentType.ARTICLE, DocumentType.REVIEW)
_DOC_RANK = {d: i for i, d in enumerate(_DOC_ORDER)}


@dataclass(frozen=True, slots=True)
class CellKey:
    """One normalization cell: a topic crossed with a document type."""

    topic_id: str
    doc_type: DocumentType

    def sort_key(self) -> tuple[str, int]:
        return (self.topic_id, _DOC_RANK[self.doc_type])


@dataclass
class CellStats:
    """Citation histogram of one cell, with per-journal breakdowns.

    ``citation_values`` is sorted and distinct; ``counts[i]`` is the number of
    cell papers cited exactly ``citation_values[i]`` times and ``cum_below[i]``
    the number cited fewer times (an exclusive prefix sum).
    ``per_journal_counts[j]`` maps citation value -> multiplicity for journal
    ``j``'s papers in the cell.
    """

    citation_values: list[int]
    counts: list[int]
    cum_below: list[int]
    per_journal_counts: dict[str, dict[int, int]]
    total: int
    citation_sum: int
    mean: float

    def journal_total(self, journal_id: str) -> int:
        return sum(self.per_journal_counts[journal_id].values())


@dataclass(frozen=True)
class JournalIndicator:
    """All four indicator values for one journal.

    None marks an indicator as undefined for the journal (no publications, no
    classified publications, or no non-empty comparison sets, depending on
    the indicator).  ``n_pubs`` counts classified publications only.
    ``topic_breakdown`` maps topic id to (per-topic score, number of the
    journal's papers that entered comparisons in that topic); topics whose
    comparison sets were all empty are omitted.
    """

    journal_id: str
    fncsi: float | None
    fnif: float | None
    expected_jif: float | None
    jif: float | None
    n_pubs: int
    topic_breakdown: dict[str, tuple[float, int]] = field(default_factory=dict)


def build_cells(corpus: Corpus) -> dict[CellKey, CellStats]:
    """Group classified publications into (topic, document-type) cells.

    Every classified publication lands in exactly one cell; unclassified
    publications do not participate.
    """
    members: dict[CellKey, list[tuple[str, int]]] = {}
    for pub in corpus.publications:
        if pub.topic_id is None:
            continue
        key = CellKey(pub.topic_id, pub.doc_type)
        members.setdefault(key, []).append((pub.journal_id, pub.citations))

    cells: dict[CellKey, CellStats] = {}
    for key in sorted(members, key=CellKey.sort_key):
        papers = members[key]
        histogram: Counter[int] = Counter()
        per_journal: dict[str, Counter[int]] = {}
        citation_sum = 0
        for journal_id, citations in papers:
            histogram[citations] += 1
            per_journal.setdefault(journal_id, Counter())[citations] += 1
            citation_sum += citations
        values = sorted(histogram)
        counts = [histogram[v] for v in values]
        cum_below = [0] * len(values)
        running = 0
        for i, c in enumerate(counts):
            cum_below[i] = running
            running += c
        cells[key] = CellStats(
            citation_values=values,
            counts=counts,
            cum_below=cum_below,
            per_journal_counts={j: dict(c) for j, c in per_journal.items()},
            total=len(papers),
            citation_sum=citation_sum,
            mean=citation_sum / len(papers),
        )
    return cells


def csi_cell(journal_id: str, cell: CellStats) -> tuple[float | None, int]:
    """Score one journal against the rest of one cell.

    Returns ``(probability, n_journal_papers)`` where the probability counts a
    win for every (journal paper, other paper) pair the journal outcites and
    half for every exact tie.  When the journal is the cell's sole publisher
    there is nothing to compare against and the probability is None.

    The journal must have at least one paper in the cell; anything else is a
    caller bug and raises KeyError.
    """
    try:
        own = cell.per_journal_counts[journal_id]
    except KeyError:
        raise KeyError(f"journal {journal_id!r} has no publications in this cell") from None
    n_own = sum(own.values())
    n_other = cell.total - n_own
    if n_other == 0:
        return None, n_own
    wins = 0
    ties = 0
    own_below = 0
    for value in sorted(own):
        count = own[value]
        i = bisect_left(cell.citation_values, value)
        wins += count * (cell.cum_below[i] - own_below)
        ties += count * (cell.counts[i] - count)
        own_below += count
    # integer numerator, one division: exact for pure ties and complements
    return (2 * wins + ties) / (2 * n_own * n_other), n_own


def _journal_cell_index(cells: Mapping[CellKey, CellStats]) -> dict[str, list[tuple[CellKey, CellStats]]]:
    """Per-journal list of occupied cells, in fixed (topic, doc-type) order."""
    index: dict[str, list[tuple[CellKey, CellStats]]] = {}
    for key in sorted(cells, key=CellKey.sort_key):
        cell = cells[key]
        for journal_id in cell.per_journal_counts:
            index.setdefault(journal_id, []).append((key, cell))
    return index


def _fncsi_from_cells(
    journal_id: str, journal_cells: Iterable[tuple[CellKey, CellStats]]
) -> tuple[float | None, dict[str, tuple[float, int]]]:
    """Aggregate per-cell comparison scores into the journal indicator.

    Cells where the journal is the sole publisher carry no information and
    are dropped; the remaining publication-count weights are renormalized,
    both within each topic and across topics.
    """
    breakdown: dict[str, tuple[float, int]] = {}
    weighted = 0.0
    weight = 0
    for topic_id, group in groupby(journal_cells, key=lambda item: item[0].topic_id):
        topic_sum = 0.0
        topic_n = 0
        for _, cell in group:
            probability, n_papers = csi_cell(journal_id, cell)
            if probability is None:
                continue
            topic_sum += n_papers * probability
            topic_n += n_papers
        if topic_n == 0:
            continue
        topic_score = topic_sum / topic_n
        breakdown[topic_id] = (topic_score, topic_n)
        weighted += topic_n * topic_score
        weight += topic_n
    if weight == 0:
        return None, {}
    return weighted / weight, breakdown


def fncsi(
    journal_id: str, cells: Mapping[CellKey, CellStats], corpus: Corpus
) -> tuple[float | None, dict[str, tuple[float, int]]]:
    """Field-normalized citation success of one journal.

    Returns ``(score, topic_breakdown)``; the score is None when the journal
    has no classified publications or every one of its cells lacks comparison
    papers.
    """
    if journal_id not in corpus.journals:
        raise KeyError(f"unknown journal {journal_id!r}")
    journal_cells = [
        (key, cell)
        for key, cell in sorted(cells.items(), key=lambda item: item[0].sort_key())
        if journal_id in cell.per_journal_counts
    ]
    return _fncsi_from_cells(journal_id, journal_cells)


def _fnif_from_cells(journal_id: str, journal_cells: Iterable[tuple[CellKey, CellStats]]) -> float | None:
    total = 0.0
    n_classified = 0
    for _, cell in journal_cells:
        own = cell.per_journal_counts[journal_id]
        n_classified += sum(own.values())
        if cell.citation_sum == 0:
            # all papers in the cell are uncited, including this journal's;
            # their normalized citation is defined as 0
            continue
        own_citations = sum(value * count for value, count in own.items())
        total += own_citations * cell.total / cell.citation_sum
    if n_classified == 0:
        return None
    return total / n_classified


def fnif(journal_id: str, cells: Mapping[CellKey, CellStats], corpus: Corpus) -> float | None:
    """Cell-mean-normalized impact of one journal, or None if unrankable."""
    if journal_id not in corpus.journals:
        raise KeyError(f"unknown journal {journal_id!r}")
    journal_cells = [
        (key, cell)
        for key, cell in sorted(cells.items(), key=lambda item: item[0].sort_key())
        if journal_id in cell.per_journal_counts
    ]
    return _fnif_from_cells(journal_id, journal_cells)


def _topic_totals(corpus: Corpus) -> dict[str, tuple[int, int]]:
    """Per-topic (citation sum, paper count) over all classified publications."""
    totals: dict[str, list[int]] = {}
    for pub in corpus.publications:
        if pub.topic_id is None:
            continue
        entry = totals.setdefault(pub.topic_id, [0, 0])
        entry[0] += pub.citations
        entry[1] += 1
    return {t: (s, n) for t, (s, n) in totals.items()}


def _expected_from_counts(
    topic_counts: Mapping[str, int], totals: Mapping[str, tuple[int, int]]
) -> float | None:
    n_classified = sum(topic_counts.values())
    if n_classified == 0:
        return None
    acc = 0.0
    for topic_id in sorted(topic_counts):
        citation_sum, n_papers = totals[topic_id]
        acc += (citation_sum / n_papers) * topic_counts[topic_id]
    return acc / n_classified


def expected_jif(journal_id: str, corpus: Corpus) -> float | None:
    """Citation potential of the journal's topic mix.

    Publication-weighted average of the topic mean citations, where each
    topic mean pools articles and reviews.  None when the journal has no
    classified publications.
    """
    if journal_id not in corpus.journals:
        raise KeyError(f"unknown journal {journal_id!r}")
    counts: Counter[str] = Counter(
        p.topic_id for p in corpus.by_journal.get(journal_id, ()) if p.topic_id is not None
    )
    return _expected_from_counts(counts, _topic_totals(corpus))


def jif(journal_id: str, corpus: Corpus) -> float | None:
    """Citations per item over all of the journal's publications."""
    if journal_id not in corpus.journals:
        raise KeyError(f"unknown journal {journal_id!r}")
    pubs = corpus.by_journal.get(journal_id, ())
    if not pubs:
        return None
    return sum(p.citations for p in pubs) / len(pubs)


def compute_all(corpus: Corpus) -> list[JournalIndicator]:
    """Compute all four indicators for every journal, sorted by journal id."""
    cells = build_cells(corpus)
    index = _journal_cell_index(cells)
    totals = _topic_totals(corpus)
    by_journal = corpus.by_journal

    records: list[JournalIndicator] = []
    for journal_id in sorted(corpus.journals):
        pubs = by_journal.get(journal_id, ())
        journal_cells = index.get(journal_id, [])
        topic_counts: Counter[str] = Counter(p.topic_id for p in pubs if p.topic_id is not None)
        fncsi_value, breakdown = _fncsi_from_cells(journal_id, journal_cells)
        records.append(
            JournalIndicator(
                journal_id=journal_id,
                fncsi=fncsi_value,
                fnif=_fnif_from_cells(journal_id, journal_cells),
                expected_jif=_expected_from_counts(topic_counts, totals),
                jif=sum(p.citations for p in pubs) / len(pubs) if pubs else None,
                n_pubs=sum(topic_counts.values()),
                topic_breakdown=breakdown,
            )
        )
    return records


def indicator_values(corpus: Corpus, key: str) -> dict[str, float | None]:
    """Values of one indicator for every journal; the fast path for resampling.

    Computes only what the requested indicator needs (no cells are built for
    ``expected_jif`` or ``jif``).
    """
    if key not in INDICATOR_KEYS:
        raise ValueError(f"unknown indicator key {key!r}; expected one of {INDICATOR_KEYS}")
    by_journal = corpus.by_journal
    values: dict[str, float | None] = {}
    if key == "jif":
        for journal_id in sorted(corpus.journals):
            pubs = by_journal.get(journal_id, ())
            values[journal_id] = sum(p.citations for p in pubs) / len(pubs) if pubs else None
        return values
    if key == "expected_jif":
        totals = _topic_totals(corpus)
        for journal_id in sorted(corpus.journals):
            counts: Counter[str] = Counter(
                p.topic_id for p in by_journal.get(journal_id, ()) if p.topic_id is not None
            )
            values[journal_id] = _expected_from_counts(counts, totals)
        return values
    cells = build_cells(corpus)
    index = _journal_cell_index(cells)
    for journal_id in sorted(corpus.journals):
        journal_cells = index.get(journal_id, [])
        if key == "fncsi":
            values[journal_id] = _fncsi_from_cells(journal_id, journal_cells)[0]
        else:
            values[journal_id] = _fnif_from_cells(journal_id, journal_cells)
    return values
