"""Batch search over prime triples with deterministic output order."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .classifier import CaseTag, ClassificationVerdict, classify
from .ntheory import sieve_primes

FORMATS = ("json", "csv", "markdown")


@dataclass(frozen=True)
class SearchSpec:
    p_max: int
    q_max: int
    case: CaseTag | None = None
    limit: int | None = None
    jobs: int = 1
    fmt: str = "csv"

    def __post_init__(self):
        if self.p_max < 5 or self.q_max < 3:
            raise ValueError("bounds must admit at least one prime of each kind")
        if self.fmt not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.limit is not None and self.limit < 0:
            raise ValueError("limit must be >= 0")


def enumerate_triples(p_max: int, q_max: int):
    """All candidate triples under the bounds, ascending by d = 2*p1*p2*q."""
    ones = [p for p in sieve_primes(p_max) if p % 4 == 1]
    threes = [p for p in sieve_primes(q_max) if p % 4 == 3]
    keyed = [
        (2 * pa * pb * q, pa, pb, q)
        for i, pa in enumerate(ones)
        for pb in ones[i + 1 :]
        for q in threes
    ]
    keyed.sort()
    return [(pa, pb, q) for _, pa, pb, q in keyed]


def _classify_triple(triple) -> ClassificationVerdict:
    return classify(*triple)


def search(spec: SearchSpec):
    """Classify every triple under the bounds; yields verdicts d-ascending.

    Output order is a function of the bounds alone, so runs are byte-identical
    regardless of the worker count.
    """
    if spec.limit == 0:
        return
    triples = enumerate_triples(spec.p_max, spec.q_max)
    if spec.jobs == 1:
        verdicts = map(_classify_triple, triples)
    else:
        executor = ProcessPoolExecutor(max_workers=spec.jobs)
        chunk = max(1, len(triples) // (4 * spec.jobs))
        verdicts = executor.map(_classify_triple, triples, chunksize=chunk)
    emitted = 0
    try:
        for verdict in verdicts:
            if spec.case is not None and verdict.case != spec.case:
                continue
            yield verdict
            emitted += 1
            if spec.limit is not None and emitted >= spec.limit:
                break
    finally:
        if spec.jobs > 1:
            executor.shutdown(cancel_futures=True)
