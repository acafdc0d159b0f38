"""The automorphisms a -> b, b -> c, c -> a w(b, c) of F_3 for positive words w.

Sampling, per-word certification, and census tables over word length.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .automorphisms import Endomorphism, as_bc_word
from .errors import InvalidInputError
from .graph_maps import (DEFAULT_PF_TOLERANCE, PFResult, TrainTrack, TransitionMatrix,
                         is_connected, is_irreducible, kb_bound_check, pf_eigenvalue,
                         rose_map_from_endo, train_track_status, transition_matrix,
                         whitehead_graph)
from .small_cancellation import (RemarkConditions, check_remark_conditions, gw_one_relator,
                                 satisfies_c_prime)
from .words import Word

EXHAUSTIVE_LIMIT = 2 ** 20
_B, _C = 2, 4


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed & (2 ** 64 - 1))


def random_positive_word(L: int, seed: int) -> Word:
    """Uniform i.i.d. letters over {b, c}."""
    if L < 1:
        raise InvalidInputError(f"length must be at least 1, got {L}")
    bits = _rng(seed).integers(0, 2, size=L)
    return Word(tuple(_B + 2 * int(x) for x in bits), 3)


def has_required_subwords(w: Word) -> bool:
    text = str(w)
    return all(s in text for s in ("bb", "cc", "bc", "cb"))


def random_admissible_word(L: int, seed: int, max_tries: int = 10_000) -> Word:
    """Rejection-sample a positive word containing bb, cc, bc and cb."""
    if L < 5:
        raise InvalidInputError("no admissible word is shorter than 5 letters")
    rng = _rng(seed)
    for _ in range(max_tries):
        bits = rng.integers(0, 2, size=L)
        w = Word(tuple(_B + 2 * int(x) for x in bits), 3)
        if has_required_subwords(w):
            return w
    raise InvalidInputError(f"no admissible word of length {L} found in {max_tries} draws")


def make_phi_w(w: Word | str) -> Endomorphism:
    w = as_bc_word(w)
    return Endomorphism(3, (Word((_B,), 3), Word((_C,), 3), Word((0,) + w.codes, 3)))


@lru_cache(maxsize=4096)
def _pf(M: TransitionMatrix, tolerance: float) -> PFResult:
    return pf_eigenvalue(M, tolerance)


@dataclass(frozen=True)
class Certificate:
    w: Word
    L: int
    conditions: RemarkConditions
    train_track: TrainTrack
    whitehead_connected: bool
    irreducible: bool
    lam: float
    kb_bound_ok: bool
    log_lambda_over_log_L: float | None
    passed_all: bool
    gw_c_prime_1_6: bool | None = field(default=None)

    def to_dict(self) -> dict:
        out = {"w": str(self.w), "L": self.L, "conditions": self.conditions.to_dict(),
               "train_track": self.train_track.value,
               "whitehead_connected": self.whitehead_connected,
               "irreducible": self.irreducible, "lambda": self.lam,
               "kb_bound_ok": self.kb_bound_ok,
               "log_lambda_over_log_L": self.log_lambda_over_log_L,
               "passed_all": self.passed_all}
        if self.gw_c_prime_1_6 is not None:
            out["gw_c_prime_1_6"] = self.gw_c_prime_1_6
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        return cls(Word.parse(data["w"], 3), int(data["L"]),
                   RemarkConditions.from_dict(data["conditions"]),
                   TrainTrack(data["train_track"]), data["whitehead_connected"],
                   data["irreducible"], float(data["lambda"]), data["kb_bound_ok"],
                   data["log_lambda_over_log_L"], data["passed_all"],
                   data.get("gw_c_prime_1_6"))


def certify(w: Word | str, pf_tolerance: float = DEFAULT_PF_TOLERANCE,
            gw_check: bool = False) -> Certificate:
    """Run every check on one word; failing checks are recorded, never raised."""
    w = as_bc_word(w)
    conditions = check_remark_conditions(w)
    f = rose_map_from_endo(make_phi_w(w))
    M = transition_matrix(f)
    irreducible = is_irreducible(M)
    tt = train_track_status(f)
    connected = is_connected(whitehead_graph(f))
    lam, kb = float("nan"), False
    if irreducible:
        pf = _pf(M, pf_tolerance)
        lam, kb = pf.lam, kb_bound_check(M, pf)
    L = len(w)
    ratio = math.log(lam) / math.log(L) if L > 1 and lam > 0 else None
    passed = (conditions.all_satisfied and tt is TrainTrack.YES and connected
              and irreducible and kb and lam > 1)
    gw = satisfies_c_prime([gw_one_relator(w)], Fraction(1, 6)) if gw_check else None
    return Certificate(w, L, conditions, tt, connected, irreducible, lam, kb, ratio, passed, gw)


@dataclass(frozen=True)
class CensusRow:
    L: int
    samples: int
    pass_subwords: int
    pass_cprime: int
    pass_all: int
    mean_lambda: float
    mean_log_ratio: float
    seed: int

    @property
    def pass_fraction(self) -> float:
        return self.pass_all / self.samples

    def family_size(self) -> str:
        """Estimated count of passing words of this length, 2^L times the pass fraction."""
        return f"2^{self.L} * {self.pass_all}/{self.samples}"


CENSUS_HEADER = ("L", "samples", "pass_subwords", "pass_cprime", "pass_all",
                 "mean_lambda", "mean_log_ratio", "seed")


def _fmt(x: float) -> str:
    return "nan" if x != x else f"{x:.10g}"


def _sample_words(L: int, samples: int, master_seed: int, exhaustive: bool | None):
    if exhaustive is None:
        exhaustive = 2 ** L <= EXHAUSTIVE_LIMIT
    if exhaustive:
        for letters in itertools.product((_B, _C), repeat=L):
            yield Word(letters, 3)
    else:
        for i in range(samples):
            yield random_positive_word(L, master_seed + i)


def _census_sample(args) -> tuple[bool, bool, bool, float, float]:
    w, tol = args
    cert = certify(w, tol)
    subwords = cert.conditions.subwords
    ratio = cert.log_lambda_over_log_L
    return (subwords, subwords and bool(cert.conditions.c_prime_1_20), cert.passed_all,
            cert.lam, float("nan") if ratio is None else ratio)


def _evaluate(words, tol: float, workers: int):
    jobs = ((w, tol) for w in words)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(_census_sample, jobs, chunksize=256))
    return [_census_sample(j) for j in jobs]


def census(L_values: Sequence[int], samples_per_L: int, master_seed: int,
           workers: int = 1, exhaustive: bool | None = None,
           pf_tolerance: float = DEFAULT_PF_TOLERANCE) -> list[CensusRow]:
    """Pass counts per length; sample i uses seed master_seed + i.

    Lengths with at most 2^20 words are enumerated exhaustively unless
    ``exhaustive=False``.  Results are aggregated in sample order, so the
    output does not depend on ``workers``.
    """
    if samples_per_L < 1:
        raise InvalidInputError("samples_per_L must be at least 1")
    rows = []
    for L in sorted(L_values):
        if L < 1:
            raise InvalidInputError(f"length must be at least 1, got {L}")
        results = _evaluate(_sample_words(L, samples_per_L, master_seed, exhaustive),
                            pf_tolerance, workers)
        n = len(results)
        rows.append(CensusRow(
            L, n,
            sum(r[0] for r in results), sum(r[1] for r in results), sum(r[2] for r in results),
            sum(r[3] for r in results) / n, sum(r[4] for r in results) / n, master_seed))
    return rows


def census_csv(rows: Sequence[CensusRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CENSUS_HEADER)
    for r in rows:
        writer.writerow([r.L, r.samples, r.pass_subwords, r.pass_cprime, r.pass_all,
                         _fmt(r.mean_lambda), _fmt(r.mean_log_ratio), r.seed])
    return buf.getvalue()


@dataclass(frozen=True)
class GrowthPoint:
    L: int
    mean_lambda: float
    mean_log_ratio: float


GROWTH_HEADER = ("L", "mean_lambda", "mean_log_ratio")


def growth_experiment(L_values: Sequence[int], samples_per_L: int, master_seed: int,
                      pf_tolerance: float = DEFAULT_PF_TOLERANCE) -> list[GrowthPoint]:
    """Mean PF eigenvalue and mean log(lambda)/log(L) of random positive words."""
    if samples_per_L < 1:
        raise InvalidInputError("samples_per_L must be at least 1")
    out = []
    for L in sorted(L_values):
        if L < 2:
            raise InvalidInputError("log(lambda)/log(L) needs L >= 2")
        lams = []
        for i in range(samples_per_L):
            w = random_positive_word(L, master_seed + i)
            M = transition_matrix(rose_map_from_endo(make_phi_w(w)))
            lams.append(_pf(M, pf_tolerance).lam)
        out.append(GrowthPoint(L, sum(lams) / len(lams),
                               sum(math.log(x) for x in lams) / len(lams) / math.log(L)))
    return out


def growth_csv(points: Sequence[GrowthPoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(GROWTH_HEADER)
    for p in points:
        writer.writerow([p.L, _fmt(p.mean_lambda), _fmt(p.mean_log_ratio)])
    return buf.getvalue()
