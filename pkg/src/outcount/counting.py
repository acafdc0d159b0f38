"""Conjugacy-class counts of cyclically reduced words in free groups.

Counts are exact Python integers.  ``count_conjugacy_classes`` uses Burnside's
lemma over the rotation action; ``count_classes_direct`` is the brute-force
necklace enumeration kept as an independent cross-check.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from ._kernels import count_canonical_words
from .errors import InvalidInputError, OutcountError, ResourceLimitError

DIRECT_COUNT_CAP = 12


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _check(k: int, n: int, what: str = "n") -> None:
    if k < 2 or n < 1:
        raise InvalidInputError(f"need rank >= 2 and {what} >= 1, got rank={k}, {what}={n}")


def count_cyclically_reduced(k: int, n: int) -> int:
    """Number of cyclically reduced words of length ``n`` in F_k (rotations counted separately)."""
    _check(k, n)
    return (2 * k - 1) ** n + 1 + (k - 1) * (1 + (-1) ** n)


def count_classes_direct(k: int, n: int) -> int:
    """Brute-force necklace count: words that are their own least rotation."""
    _check(k, n)
    if n > DIRECT_COUNT_CAP:
        raise ResourceLimitError(f"direct necklace count is capped at n={DIRECT_COUNT_CAP}")
    return int(count_canonical_words(k, n))


def count_conjugacy_classes(k: int, n: int, cross_check: bool = False) -> int:
    """Number of conjugacy classes of F_k with translation length exactly ``n``."""
    _check(k, n)
    total = sum(totient(n // d) * count_cyclically_reduced(k, d) for d in _divisors(n))
    if total % n:
        raise OutcountError(f"Burnside sum {total} not divisible by {n}")
    classes = total // n
    if cross_check and n <= DIRECT_COUNT_CAP:
        direct = count_classes_direct(k, n)
        if direct != classes:
            raise OutcountError(f"Burnside gives {classes} but enumeration gives {direct} "
                                f"for rank {k}, n={n}")
    return classes


def classes_in_ball(k: int, R: int) -> int:
    """Nontrivial conjugacy classes meeting the ball of radius ``R``."""
    _check(k, R, "R")
    return sum(count_conjugacy_classes(k, n) for n in range(1, R + 1))


@dataclass(frozen=True)
class GrowthRow:
    n: int
    words: int
    classes: int
    cumulative_classes: int
    lower_bound_2n: int

    @property
    def flag(self) -> bool:
        return self.classes < self.lower_bound_2n


@dataclass(frozen=True)
class GrowthTable:
    rank: int
    rows: tuple[GrowthRow, ...]

    CSV_HEADER = ("n", "words", "classes", "cumulative", "two_to_n", "flag")

    def flagged(self) -> list[int]:
        return [r.n for r in self.rows if r.flag]

    def bound_holds_from(self) -> int | None:
        """Smallest n from which classes >= 2^n holds for every later row."""
        start = None
        for r in self.rows:
            if r.flag:
                start = None
            elif start is None:
                start = r.n
        return start

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.CSV_HEADER)
        for r in self.rows:
            writer.writerow([r.n, r.words, r.classes, r.cumulative_classes,
                             r.lower_bound_2n, str(r.flag).lower()])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {"rank": self.rank,
                "rows": [{"n": r.n, "words": r.words, "classes": r.classes,
                          "cumulative": r.cumulative_classes, "two_to_n": r.lower_bound_2n,
                          "flag": r.flag} for r in self.rows]}


def growth_report(k: int, R_max: int) -> GrowthTable:
    if R_max < 2:
        raise InvalidInputError(f"R_max must be at least 2, got {R_max}")
    _check(k, R_max, "R_max")
    rows = []
    cumulative = 0
    for n in range(1, R_max + 1):
        classes = count_conjugacy_classes(k, n)
        cumulative += classes
        rows.append(GrowthRow(n, count_cyclically_reduced(k, n), classes, cumulative, 2 ** n))
    return GrowthTable(k, tuple(rows))
