"""Independent brute-force reference implementations.

Everything here recomputes indicator values the slow, obvious way: explicit
grouping into plain lists, all-pairs enumeration for the comparison
probability, per-paper loops for the normalized means.  None of it shares
code with the package kernels it checks.
"""

from __future__ import annotations

import math

import numpy as np

from jrank.corpus import Corpus, DocumentType, Journal, Publication


def naive_cells(corpus: Corpus) -> dict[tuple[str, DocumentType], list[tuple[str, int]]]:
    """(topic, doc_type) -> [(journal_id, citations), ...]; plain grouping."""
    cells: dict[tuple[str, DocumentType], list[tuple[str, int]]] = {}
    for p in corpus.publications:
        if p.topic_id is not None:
            cells.setdefault((p.topic_id, p.doc_type), []).append((p.journal_id, p.citations))
    return cells


def pairwise_score(own: list[int], others: list[int]) -> float:
    """All-pairs win/half-tie probability, one term per publication pair."""
    credit = 0.0
    for a in own:
        for o in others:
            if a > o:
                credit += 1.0
            elif a == o:
                credit += 0.5
    return credit / (len(own) * len(others))


def brute_fncsi(corpus: Corpus, journal_id: str) -> float | None:
    cells = naive_cells(corpus)
    per_topic: dict[str, list[float]] = {}  # topic -> [weighted sum, weight]
    for (topic, _), papers in cells.items():
        own = [c for j, c in papers if j == journal_id]
        others = [c for j, c in papers if j != journal_id]
        if not own or not others:
            continue
        entry = per_topic.setdefault(topic, [0.0, 0])
        entry[0] += len(own) * pairwise_score(own, others)
        entry[1] += len(own)
    total = 0.0
    weight = 0
    for topic in sorted(per_topic):
        weighted_sum, n = per_topic[topic]
        topic_score = weighted_sum / n
        total += n * topic_score
        weight += n
    return total / weight if weight else None


def brute_fnif(corpus: Corpus, journal_id: str) -> float | None:
    cells = naive_cells(corpus)
    means = {key: sum(c for _, c in papers) / len(papers) for key, papers in cells.items()}
    total = 0.0
    n = 0
    for p in corpus.publications:
        if p.journal_id != journal_id or p.topic_id is None:
            continue
        n += 1
        mean = means[(p.topic_id, p.doc_type)]
        if mean > 0:
            total += p.citations / mean
    return total / n if n else None


def brute_expected_jif(corpus: Corpus, journal_id: str) -> float | None:
    by_topic: dict[str, list[int]] = {}
    for p in corpus.publications:
        if p.topic_id is not None:
            by_topic.setdefault(p.topic_id, []).append(p.citations)
    means = {t: sum(cs) / len(cs) for t, cs in by_topic.items()}
    own = [p for p in corpus.publications if p.journal_id == journal_id and p.topic_id is not None]
    if not own:
        return None
    return sum(means[p.topic_id] for p in own) / len(own)


def brute_jif(corpus: Corpus, journal_id: str) -> float | None:
    own = [p for p in corpus.publications if p.journal_id == journal_id]
    if not own:
        return None
    return sum(p.citations for p in own) / len(own)


def brute_spearman(ranks_a: dict[str, int], ranks_b: dict[str, int]) -> float:
    """Pearson correlation of re-ranked common items, computed longhand."""
    common = sorted(set(ranks_a) & set(ranks_b))

    def rerank(ranks):
        ordered = sorted(common, key=lambda j: ranks[j])
        return {j: i for i, j in enumerate(ordered, start=1)}

    ra, rb = rerank(ranks_a), rerank(ranks_b)
    xs = [float(ra[j]) for j in common]
    ys = [float(rb[j]) for j in common]
    n = len(common)
    mx = sum(xs) / n
    my = sum(ys) / n
    cov = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    vx = sum((x - mx) ** 2 for x in xs)
    vy = sum((y - my) ** 2 for y in ys)
    return cov / math.sqrt(vx * vy)


def random_corpus(
    rng: np.random.Generator,
    max_journals: int = 50,
    max_pubs: int = 2000,
    max_topics: int = 10,
    tie_heavy: bool = False,
    unclassified_p: float = 0.0,
) -> Corpus:
    """Messy random corpus: uneven journals, tied citations, spare journals.

    Deliberately unrelated to the package's synthetic generator so that
    oracle tests do not inherit its structure.
    """
    n_journals = int(rng.integers(2, max_journals + 1))
    n_topics = int(rng.integers(1, max_topics + 1))
    n_pubs = int(rng.integers(max(10, n_journals), max_pubs + 1))
    journal_ids = [f"J{i:02d}" for i in range(n_journals)]
    topics = [f"T{i:02d}" for i in range(n_topics)]

    pubs = []
    for i in range(n_pubs):
        jid = journal_ids[int(rng.integers(n_journals))]
        topic = topics[int(rng.integers(n_topics))]
        if unclassified_p and rng.random() < unclassified_p:
            topic = None
        doc = DocumentType.REVIEW if rng.random() < 0.3 else DocumentType.ARTICLE
        if tie_heavy:
            citations = int(rng.integers(0, 5))
        else:
            citations = int(rng.integers(0, 40)) if rng.random() < 0.8 else int(rng.integers(0, 400))
        pubs.append(Publication(f"P{i:05d}", jid, 2018, doc, citations, topic))

    # one spare journal with no publications keeps the "unrankable" paths hot
    journal_ids.append("J_EMPTY")
    journals = {j: Journal(j, f"Journal {j}") for j in journal_ids}
    observed_topics = frozenset(p.topic_id for p in pubs if p.topic_id is not None)
    return Corpus(tuple(pubs), journals, observed_topics, "random test corpus")
