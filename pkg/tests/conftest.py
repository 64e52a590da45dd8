"""Shared corpus-building helpers for the test suite."""

from __future__ import annotations

import pytest

from jrank.corpus import Corpus, DocumentType, Journal, Publication


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """One visible pass/fail line per acceptance criterion."""
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and item.fspath.basename == "test_acceptance.py":
        print(f"\n[acceptance] {item.name}: {report.outcome.upper()}")

A = DocumentType.ARTICLE
R = DocumentType.REVIEW


def pub(pid: str, jid: str, citations: int, topic: str | None = None, doc=A, year: int = 2018) -> Publication:
    return Publication(pid, jid, year, doc, citations, topic)


def corpus_of(pubs, journals=None, topics=None, census: str = "test census") -> Corpus:
    """Corpus from a publication list; journals/topics default to what the pubs use."""
    if journals is None:
        journals = sorted({p.journal_id for p in pubs})
    if not isinstance(journals, dict):
        journals = {j: Journal(j, f"Journal {j}") for j in journals}
    if topics is None:
        topics = {p.topic_id for p in pubs if p.topic_id is not None}
    return Corpus(tuple(pubs), journals, frozenset(topics), census)


def coverage_9998_corpus() -> Corpus:
    """100 journals x 10 publications; 2 journals half-unclassified.

    Publication coverage is exactly 990/1000 = 0.99 and exactly 98 journals
    have more than 90% of their publications assigned.
    """
    pubs = []
    for j in range(100):
        jid = f"j{j:03d}"
        for k in range(10):
            unassigned = j < 2 and k < 5
            pubs.append(pub(f"p{j:03d}_{k}", jid, citations=k, topic=None if unassigned else "t1"))
    return corpus_of(pubs)
