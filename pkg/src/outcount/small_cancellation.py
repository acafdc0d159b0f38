"""Pieces and metric small cancellation C'(p/q) for symmetrized relator sets."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .automorphisms import as_bc_word
from .errors import InvalidInputError, ProperPowerError
from .words import (DEFAULT_ALPHABET, Word, _reduce_codes, canonical_rotation, cyclic_reduce,
                    format_codes, invert, parse_codes)

GW_ALPHABET = "at"
_A, _t = 0, 2
_T = _t ^ 1


def is_proper_power(codes) -> bool:
    s = format_codes(codes)
    return bool(s) and (s + s).find(s, 1) < len(s)


@dataclass(frozen=True)
class Relator:
    """A nontrivial cyclically reduced relator.

    The word is kept in the rotation it was built with, so printed relators
    stay recognizable; ``canonical`` gives the least rotation.
    """

    word: Word
    alphabet: str = DEFAULT_ALPHABET

    def __post_init__(self):
        if not self.word.codes:
            raise InvalidInputError("relator must be nontrivial")
        if not self.word.is_cyclically_reduced():
            raise InvalidInputError(f"relator {self} is not cyclically reduced")

    @classmethod
    def parse(cls, text: str, alphabet: str = DEFAULT_ALPHABET) -> "Relator":
        return cls(Word.parse(text, alphabet=alphabet), alphabet)

    def __str__(self) -> str:
        return self.word.format(self.alphabet)

    def __len__(self) -> int:
        return len(self.word)

    @property
    def canonical(self) -> Word:
        return Word(canonical_rotation(self.word.codes), self.word.rank)

    def is_proper_power(self) -> bool:
        return is_proper_power(self.word.codes)


def symmetrized_closure(r: Relator) -> set[Word]:
    """All rotations of r and of r^-1."""
    return {Word.parse(s, r.word.rank) for s in _closure_strings(r)}


@dataclass(frozen=True)
class PieceReport:
    max_piece_length: int
    witness: tuple[Word, Word, Word] | None
    relator_length: int

    def to_dict(self, alphabet: str = DEFAULT_ALPHABET) -> dict:
        wit = None
        if self.witness:
            wit = [w.format(alphabet) for w in self.witness]
        return {"max_piece_length": self.max_piece_length, "witness": wit,
                "relator_length": self.relator_length}


def _lcp(x: str, y: str) -> int:
    return len(os.path.commonprefix((x, y)))


def _closure_strings(r: Relator) -> set[str]:
    if r.is_proper_power():
        raise ProperPowerError(f"relator {r} is a proper power")
    out = set()
    for s in (format_codes(r.word.codes), format_codes(invert(r.word).codes)):
        out.update(s[j:] + s[:j] for j in range(len(s)))
    return out


def _sorted_closure(rs: Iterable[Relator]):
    """Closure elements as strings in sorted order, with the shortest relator length for each.

    The longest common prefix of one element with any other is attained at one
    of its neighbours in sorted order, so adjacent comparisons are exhaustive.
    """
    rel_len: dict[str, int] = {}
    ranks: dict[str, int] = {}
    for r in rs:
        for key in _closure_strings(r):
            ranks[key] = r.word.rank
            rel_len[key] = min(rel_len.get(key, len(r)), len(r))
    keys = sorted(rel_len)
    best = [0] * len(keys)
    partner = [-1] * len(keys)
    for i in range(len(keys) - 1):
        p = _lcp(keys[i], keys[i + 1])
        if p > best[i]:
            best[i], partner[i] = p, i + 1
        if p > best[i + 1]:
            best[i + 1], partner[i + 1] = p, i
    return keys, ranks, rel_len, best, partner


def max_piece(rs: Iterable[Relator]) -> PieceReport:
    rs = list(rs)
    if not rs:
        raise InvalidInputError("need at least one relator")
    keys, ranks, rel_len, best, partner = _sorted_closure(rs)
    if not keys or max(best) == 0:
        return PieceReport(0, None, min(len(r) for r in rs))
    i = max(range(len(keys)), key=lambda k: (best[k], -k))
    j = partner[i]
    p = best[i]
    u, v = (Word.parse(keys[k], ranks[keys[k]]) for k in (i, j))
    piece = Word(u.codes[:p], u.rank)
    return PieceReport(p, (piece, u, v), min(rel_len[keys[i]], rel_len[keys[j]]))


def _as_fraction(lam) -> Fraction:
    try:
        lam = Fraction(lam)
    except (ValueError, TypeError, ZeroDivisionError):
        raise InvalidInputError(f"cannot read {lam!r} as a rational number") from None
    if not 0 < lam <= 1:
        raise InvalidInputError(f"small cancellation parameter must lie in (0, 1], got {lam}")
    return lam


@dataclass(frozen=True)
class CPrimeVerdict:
    holds: bool
    lam: Fraction
    piece_length: int
    relator_length: int

    def inequality(self) -> str:
        """The cross-multiplied comparison q*|piece| < p*|r| that decided the verdict."""
        p, q = self.lam.numerator, self.lam.denominator
        lhs, rhs = q * self.piece_length, p * self.relator_length
        sign = "<" if lhs < rhs else ">="
        return (f"{q}*{self.piece_length} = {lhs} {sign} {rhs} = {p}*{self.relator_length}")


def c_prime_verdict(rs: Iterable[Relator], lam) -> CPrimeVerdict:
    """Decide C'(lam) exactly and keep the tightest comparison for reporting."""
    lam = _as_fraction(lam)
    p, q = lam.numerator, lam.denominator
    keys, _, rel_len, best, _ = _sorted_closure(list(rs))
    # the worst element maximizes |piece| / |relator|
    worst = max(range(len(keys)), key=lambda k: (best[k] / rel_len[keys[k]], -k))
    piece, length = best[worst], rel_len[keys[worst]]
    holds = all(q * best[k] < p * rel_len[keys[k]] for k in range(len(keys)))
    return CPrimeVerdict(holds, lam, piece, length)


def satisfies_c_prime(rs: Iterable[Relator], lam) -> bool:
    return c_prime_verdict(rs, lam).holds


def gw_one_relator(w: Word | str) -> Relator:
    """Relator of <a, t | t^-3 a t^3 = a w(t^-1 a t, t^-2 a t^2)> as lhs * rhs^-1."""
    w = as_bc_word(w)
    subst = {2: (_T, _A, _t), 4: (_T, _T, _A, _t, _t)}
    rhs = [_A]
    for c in w.codes:
        rhs.extend(subst[c])
    lhs = [_T, _T, _T, _A, _t, _t, _t]
    codes = _reduce_codes(lhs + [c ^ 1 for c in reversed(_reduce_codes(rhs))])
    return Relator(Word(tuple(codes), 2), GW_ALPHABET)


@dataclass(frozen=True)
class RemarkConditions:
    positive: bool
    has_bb: bool
    has_cc: bool
    has_bc: bool
    has_cb: bool
    c_prime_1_20: bool | None
    is_proper_power: bool

    @property
    def subwords(self) -> bool:
        return self.positive and self.has_bb and self.has_cc and self.has_bc and self.has_cb

    @property
    def all_satisfied(self) -> bool:
        return self.subwords and bool(self.c_prime_1_20) and not self.is_proper_power

    def to_dict(self) -> dict:
        return {"positive": self.positive, "has_bb": self.has_bb, "has_cc": self.has_cc,
                "has_bc": self.has_bc, "has_cb": self.has_cb,
                "c_prime_1_20": self.c_prime_1_20, "is_proper_power": self.is_proper_power}

    @classmethod
    def from_dict(cls, data: dict) -> "RemarkConditions":
        return cls(**{k: data[k] for k in cls.__dataclass_fields__})


def check_remark_conditions(w: Word | str) -> RemarkConditions:
    """Subword conditions on the linear word, C'(1/20) on its symmetrized closure."""
    if isinstance(w, str):
        codes, _ = parse_codes(w, 3)
    else:
        if w.rank != 3:
            raise InvalidInputError(f"expected a word in F_3 over b, c; got rank {w.rank}")
        codes = list(w.codes)
    if any(c >> 1 == 0 for c in codes):
        raise InvalidInputError(f"word {format_codes(codes)!r} uses letters outside b, c")
    text = format_codes(codes)
    positive = bool(codes) and all(c & 1 == 0 for c in codes)

    core = Word(tuple(_reduce_codes(codes)), 3)
    core_codes = cyclic_reduce(core)[0].codes
    power = is_proper_power(core_codes)
    cprime = None
    if core_codes and not power:
        cprime = satisfies_c_prime([Relator(Word(core_codes, 3))], Fraction(1, 20))
    return RemarkConditions(positive, "bb" in text, "cc" in text, "bc" in text, "cb" in text,
                            cprime, power)
