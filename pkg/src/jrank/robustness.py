"""Ranking-stability analysis: bootstrap resampling and the document-type flip.

The bootstrap rebuilds the whole corpus once per simulation: every journal's
publication list is independently resampled with replacement to its original
size, then cells, means, comparison sets, and the ranking are recomputed from
scratch.  Per-simulation seeds are spawned deterministically from the master
seed, so a report is reproducible bit for bit and simulations could run in
parallel without changing the result.

Journals covered by a report are those rankable on the *original* corpus
under the chosen indicator.  A journal that loses its comparison sets in a
particular simulation receives the sentinel rank (tracked journal count + 1)
for that simulation; the sentinel is recorded in the report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Mapping, NamedTuple

import numpy as np

from .corpus import Corpus
from .indicators import indicator_values
from .ranking import order_journals


@dataclass
class RankingSamples:
    """Ranks one journal obtained across all simulations, in simulation order."""

    journal_id: str
    rankings: list[int] = field(default_factory=list)


class RankSummary(NamedTuple):
    min_rank: int
    q1: float
    median: float
    q3: float
    max_rank: int


@dataclass
class RobustnessReport:
    """Bootstrap ranking-stability summary for one indicator."""

    indicator_name: str
    per_journal: dict[str, RankSummary]
    delta: float
    seed: int
    simulations: int
    sentinel_rank: int


def bootstrap_rankings(
    corpus: Corpus, key: str, sims: int = 100, seed: int = 42
) -> dict[str, RankingSamples]:
    """Resample the corpus ``sims`` times and collect each journal's ranks.

    Raises ValueError when no journal is rankable on the chosen indicator or
    ``sims`` < 1.
    """
    if sims < 1:
        raise ValueError(f"sims must be >= 1, got {sims}")
    base_values = indicator_values(corpus, key)
    tracked = sorted(j for j, v in base_values.items() if v is not None)
    if not tracked:
        raise ValueError(f"corpus has no journals rankable on {key!r}")
    sentinel = len(tracked) + 1

    by_journal = corpus.by_journal
    journal_order = sorted(by_journal)
    samples = {journal_id: RankingSamples(journal_id) for journal_id in tracked}

    for seq in np.random.SeedSequence(seed).spawn(sims):
        rng = np.random.default_rng(seq)
        resampled = []
        for journal_id in journal_order:
            pubs = by_journal[journal_id]
            for i in rng.integers(0, len(pubs), size=len(pubs)):
                resampled.append(pubs[i])
        boot = corpus.with_publications(resampled)
        rank_of = {j: r for r, j in enumerate(order_journals(indicator_values(boot, key)), start=1)}
        for journal_id in tracked:
            samples[journal_id].rankings.append(rank_of.get(journal_id, sentinel))
    return samples


def relative_change(samples: Mapping[str, RankingSamples]) -> float:
    """Mean over journals of (max - min) / average of the sampled ranks.

    Zero iff every journal's rank is constant across simulations; always
    non-negative.  Raises ValueError on an empty input or empty sample list.
    """
    if not samples:
        raise ValueError("no ranking samples to summarize")
    acc = 0.0
    for journal_id in sorted(samples):
        ranks = samples[journal_id].rankings
        if not ranks:
            raise ValueError(f"journal {journal_id!r} has an empty sample list")
        acc += (max(ranks) - min(ranks)) / (sum(ranks) / len(ranks))
    return acc / len(samples)


def _quantile(sorted_values: list[int], p: float) -> float:
    """Linear-interpolation quantile of pre-sorted data (numpy's default rule)."""
    if len(sorted_values) == 1:
        return float(sorted_values[0])
    position = p * (len(sorted_values) - 1)
    lo = math.floor(position)
    hi = math.ceil(position)
    frac = position - lo
    return sorted_values[lo] + (sorted_values[hi] - sorted_values[lo]) * frac


def bootstrap_report(corpus: Corpus, key: str, sims: int = 100, seed: int = 42) -> RobustnessReport:
    """Run the bootstrap and summarize each journal's rank distribution."""
    samples = bootstrap_rankings(corpus, key, sims=sims, seed=seed)
    per_journal: dict[str, RankSummary] = {}
    for journal_id in sorted(samples):
        ranks = sorted(samples[journal_id].rankings)
        per_journal[journal_id] = RankSummary(
            min_rank=ranks[0],
            q1=_quantile(ranks, 0.25),
            median=_quantile(ranks, 0.50),
            q3=_quantile(ranks, 0.75),
            max_rank=ranks[-1],
        )
    return RobustnessReport(
        indicator_name=key,
        per_journal=per_journal,
        delta=relative_change(samples),
        seed=seed,
        simulations=sims,
        sentinel_rank=len(samples) + 1,
    )


def flip_doc_type(corpus: Corpus) -> Corpus:
    """Toggle the document type of every journal's most highly cited paper.

    Ties on the citation count are broken by ascending publication id.  All
    flips are applied simultaneously to one perturbed copy; the input corpus
    is untouched.
    """
    flip_ids = set()
    for journal_id in sorted(corpus.by_journal):
        pubs = corpus.by_journal[journal_id]
        top = min(pubs, key=lambda p: (-p.citations, p.pub_id))
        flip_ids.add(top.pub_id)
    flipped = tuple(
        replace(p, doc_type=p.doc_type.opposite) if p.pub_id in flip_ids else p
        for p in corpus.publications
    )
    return corpus.with_publications(flipped)


def perturbation_comparison(corpus: Corpus, key: str) -> list[tuple[str, int | None, int | None]]:
    """Ranks before and after the document-type flip, joined per journal.

    Rows cover every journal rankable in either ranking, ordered by original
    rank (journals unrankable in the original corpus last), with None where a
    journal is unrankable on that side.
    """
    original = {j: r for r, j in enumerate(order_journals(indicator_values(corpus, key)), start=1)}
    perturbed_corpus = flip_doc_type(corpus)
    perturbed = {
        j: r for r, j in enumerate(order_journals(indicator_values(perturbed_corpus, key)), start=1)
    }
    journal_ids = sorted(
        set(original) | set(perturbed),
        key=lambda j: (original.get(j, math.inf), j),
    )
    return [(j, original.get(j), perturbed.get(j)) for j in journal_ids]
