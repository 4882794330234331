"""Degree-bounded sampling.

For fixed n, both sides of every identity here are polynomials in x and s
whose coefficients are rational functions of q of bounded degree.  Agreement
at more rational q points than that bound proves the identity for all q.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import islice
from typing import Iterator

BASE_Q_SAMPLES = tuple(
    Fraction(v) for v in ("1/2", "1/3", "2/3", "3/2", "2", "5", "1/7", "7/5", "9/8", "11/3")
)


def degree_bound(n: int) -> int:
    """q-degree bound 2 n^2 used for an identity at index n."""
    return 2 * n * n


def _calkin_wilf() -> Iterator[Fraction]:
    # every positive rational exactly once
    q = Fraction(1)
    while True:
        yield q
        q = 1 / (2 * (q.numerator // q.denominator) - q + 1)


@lru_cache(maxsize=64)
def certifying_q_samples(count: int) -> tuple:
    """The ten base points followed by further distinct positive rationals.

    q = 1 is skipped (it collapses q-numbers), as are nonpositive values,
    so no {m}_q can vanish.
    """
    if count <= len(BASE_Q_SAMPLES):
        return BASE_Q_SAMPLES[:count]
    seen = set(BASE_Q_SAMPLES)
    extra = (q for q in _calkin_wilf() if q != 1 and q not in seen)
    return BASE_Q_SAMPLES + tuple(islice(extra, count - len(BASE_Q_SAMPLES)))


def sample_count(n: int) -> int:
    """max(10, 2n^2 + 1)."""
    return max(len(BASE_Q_SAMPLES), degree_bound(n) + 1)


def samples_for(n: int) -> tuple:
    """Enough points to certify an identity at index n."""
    return certifying_q_samples(sample_count(n))
