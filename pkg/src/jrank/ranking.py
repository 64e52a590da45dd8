"""Deterministic rankings and rank correlation.

Rankings depend only on the ordering of indicator values: journals are sorted
by descending value, equal values broken by ascending journal id, so the same
inputs always produce the same table.  Percentile ranks rescale positions to
(0, 100], higher is better: rank r of N maps to 100 * (N - r + 1) / N.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

from .corpus import Journal
from .indicators import INDICATOR_KEYS, JournalIndicator


class InsufficientDataError(ValueError):
    """Too few common journals to correlate two rankings."""


class RankingRow(NamedTuple):
    journal_id: str
    value: float
    rank: int
    percentile: float


@dataclass(frozen=True)
class RankingTable:
    """An ordered ranking under one indicator, globally or within a category."""

    indicator_name: str
    scope: str | None
    rows: tuple[RankingRow, ...]

    def rank_of(self) -> dict[str, int]:
        return {row.journal_id: row.rank for row in self.rows}


def order_journals(values: Mapping[str, float | None]) -> list[str]:
    """Journal ids ordered by descending value, ties by ascending id.

    Journals whose value is None (unrankable) are excluded.  This is the one
    ordering rule shared by every ranking in the package.
    """
    rankable = [(journal_id, value) for journal_id, value in values.items() if value is not None]
    rankable.sort(key=lambda item: (-item[1], item[0]))
    return [journal_id for journal_id, _ in rankable]


def rank(
    indicators: Sequence[JournalIndicator],
    key: str,
    scope: str | None = None,
    journals: Mapping[str, Journal] | None = None,
) -> RankingTable:
    """Rank journals on one indicator, optionally within one category.

    Journals unrankable on the chosen indicator are excluded.  With a scope,
    only journals whose category list contains the label participate (a
    multi-category journal appears in each of its categories' tables);
    ``journals`` must then supply the category lists.
    """
    if key not in INDICATOR_KEYS:
        raise ValueError(f"unknown indicator key {key!r}; expected one of {INDICATOR_KEYS}")
    if scope is not None and journals is None:
        raise ValueError("category-scoped ranking requires the journals mapping")

    values: dict[str, float | None] = {}
    for indicator in indicators:
        if scope is not None:
            journal = journals.get(indicator.journal_id)
            if journal is None or scope not in journal.categories:
                continue
        values[indicator.journal_id] = getattr(indicator, key)

    ordered = order_journals(values)
    n = len(ordered)
    rows = tuple(
        RankingRow(journal_id, values[journal_id], r, 100.0 * (n - r + 1) / n)
        for r, journal_id in enumerate(ordered, start=1)
    )
    return RankingTable(indicator_name=key, scope=scope, rows=rows)


def correlate(table_a: RankingTable, table_b: RankingTable) -> tuple[float, int]:
    """Spearman rank correlation over the journals common to both tables.

    The tables' rank columns are re-ranked within the common subset (ranks in
    a table are distinct, so this is a plain order relabeling) and the
    classical 1 - 6*sum(d^2)/(n*(n^2-1)) formula applies exactly.
    """
    ranks_a = table_a.rank_of()
    ranks_b = table_b.rank_of()
    common = sorted(set(ranks_a) & set(ranks_b))
    n = len(common)
    if n < 3:
        raise InsufficientDataError(f"only {n} journals are common to both tables; need at least 3")

    def reranked(ranks: Mapping[str, int]) -> dict[str, int]:
        ordered = sorted(common, key=lambda journal_id: ranks[journal_id])
        return {journal_id: position for position, journal_id in enumerate(ordered, start=1)}

    ra = reranked(ranks_a)
    rb = reranked(ranks_b)
    d_squared = sum((ra[j] - rb[j]) ** 2 for j in common)
    rho = 1.0 - 6.0 * d_squared / (n * (n * n - 1))
    return rho, n
