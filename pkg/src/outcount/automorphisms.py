"""Endomorphisms of F_N given by generator images, and stretch-factor estimation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._kernels import cyclic_bounds, reduce_array
from .errors import DegenerateOrbitError, InvalidInputError, ResourceLimitError
from .words import Word, _reduce_codes, cyclic_reduce, invert

DEFAULT_MAX_TOTAL_LENGTH = 10 ** 7
DEFAULT_STRETCH_TOLERANCE = 0.01
DEFAULT_MAX_ITERATIONS = 64


@dataclass(frozen=True)
class Endomorphism:
    rank: int
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.rank:
            raise InvalidInputError(f"expected {self.rank} images, got {len(self.images)}")
        for img in self.images:
            if img.rank != self.rank:
                raise InvalidInputError(f"image {img} has rank {img.rank}, expected {self.rank}")

    @classmethod
    def from_strings(cls, images: Sequence[str], rank: int | None = None) -> "Endomorphism":
        rank = len(images) if rank is None else rank
        return cls(rank, tuple(Word.parse(s, rank) for s in images))

    @classmethod
    def identity(cls, rank: int) -> "Endomorphism":
        return cls(rank, tuple(Word.generator(i, rank) for i in range(rank)))

    def is_positive(self) -> bool:
        return all(img.is_positive() for img in self.images)

    def image_of_code(self, code: int) -> tuple[int, ...]:
        img = self.images[code >> 1].codes
        return tuple(c ^ 1 for c in reversed(img)) if code & 1 else img

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __str__(self) -> str:
        names = "abcdefghijklmnopqrstuvwxyz"
        return ", ".join(f"{names[i]}->{img}" for i, img in enumerate(self.images))

    def to_dict(self) -> dict:
        return {"rank": self.rank, "images": [str(img) for img in self.images]}

    @classmethod
    def from_dict(cls, data: dict) -> "Endomorphism":
        try:
            return cls.from_strings(list(data["images"]), int(data["rank"]))
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"bad endomorphism JSON: {exc}") from None


def apply(e: Endomorphism, w: Word) -> Word:
    if e.rank != w.rank:
        raise InvalidInputError(f"rank mismatch: endomorphism {e.rank}, word {w.rank}")
    out: list[int] = []
    for c in w.codes:
        out.extend(e.image_of_code(c))
    return Word(tuple(_reduce_codes(out)), e.rank)


def compose(e1: Endomorphism, e2: Endomorphism) -> Endomorphism:
    """The endomorphism ``w -> e1(e2(w))``."""
    if e1.rank != e2.rank:
        raise InvalidInputError(f"rank mismatch: {e1.rank} vs {e2.rank}")
    return Endomorphism(e1.rank, tuple(apply(e1, img) for img in e2.images))


def verify_inverse(e1: Endomorphism, e2: Endomorphism) -> bool:
    if e1.rank != e2.rank:
        return False
    ident = Endomorphism.identity(e1.rank)
    return compose(e1, e2) == ident and compose(e2, e1) == ident


def as_bc_word(w: Word | str) -> Word:
    """Validate a nontrivial positive word over {b, c} in F_3."""
    if isinstance(w, str):
        if not w or any(ch not in "bc" for ch in w):
            raise InvalidInputError(f"expected a nonempty positive word over b, c; got {w!r}")
        return Word.parse(w, 3)
    if w.rank != 3 or not w.codes or any(c not in (2, 4) for c in w.codes):
        raise InvalidInputError(f"expected a nonempty positive word over b, c in F_3; got {w!r}")
    return w


def phi_w_inverse(w: Word | str) -> Endomorphism:
    """Inverse of a -> b, b -> c, c -> a w(b, c): a -> c w(a, b)^-1, b -> a, c -> b."""
    w = as_bc_word(w)
    shifted = Word(tuple(c - 2 for c in w.codes), 3)
    a_image = Word.parse("c", 3) * invert(shifted)
    return Endomorphism(3, (a_image, Word.parse("a", 3), Word.parse("b", 3)))


@dataclass(frozen=True)
class StretchEstimate:
    lambda_estimate: float
    iterations_used: int
    final_length: int
    converged: bool
    ratios: tuple[float, ...] = ()
    root_estimate: float = float("nan")


class _Substitution:
    """Vectorized letter substitution for long words held in numpy arrays."""

    def __init__(self, e: Endomorphism):
        imgs = [np.asarray(e.image_of_code(c), dtype=np.int32) for c in range(2 * e.rank)]
        self.lengths = np.array([len(i) for i in imgs], dtype=np.int64)
        self.starts = np.concatenate(([0], np.cumsum(self.lengths)[:-1])).astype(np.int64)
        self.flat = np.concatenate(imgs) if self.lengths.sum() else np.zeros(0, np.int32)

    def image_length(self, codes: np.ndarray) -> int:
        return int(self.lengths[codes].sum())

    def __call__(self, codes: np.ndarray) -> np.ndarray:
        lens = self.lengths[codes]
        total = int(lens.sum())
        offsets = np.cumsum(lens) - lens
        idx = np.arange(total, dtype=np.int64) + np.repeat(self.starts[codes] - offsets, lens)
        return reduce_array(self.flat[idx])


def stretch_estimate(e: Endomorphism, seed: Word,
                     max_total_length: int = DEFAULT_MAX_TOTAL_LENGTH,
                     tolerance: float = DEFAULT_STRETCH_TOLERANCE,
                     max_iterations: int = DEFAULT_MAX_ITERATIONS) -> StretchEstimate:
    """Estimate the growth rate of cyclic lengths under iteration of ``e``.

    Each iterate is replaced by its cyclic core before the next application;
    the translation length of e(w) only depends on the conjugacy class of w.
    """
    if seed.rank != e.rank:
        raise InvalidInputError(f"rank mismatch: endomorphism {e.rank}, seed {seed.rank}")
    core = cyclic_reduce(seed)[0]
    if not core.codes:
        raise InvalidInputError("seed word must be nontrivial")
    if max_total_length < 10 * len(seed):
        raise InvalidInputError("max_total_length must be at least 10 times the seed length")
    if tolerance <= 0:
        raise InvalidInputError("tolerance must be positive")

    step = _Substitution(e)
    current = np.asarray(core.codes, dtype=np.int32)
    lengths = [len(current)]
    for _ in range(max_iterations):
        if step.image_length(current) > max_total_length:
            break
        image = step(current)
        i, j = cyclic_bounds(image)
        if j <= i:
            raise DegenerateOrbitError("iterate collapsed to the identity")
        current = image[i:j]
        lengths.append(j - i)

    ratios = tuple(b / a for a, b in zip(lengths, lengths[1:]))
    if not ratios:
        raise ResourceLimitError(
            f"the first image already exceeds max_total_length={max_total_length}")
    tail = ratios[-3:]
    estimate = math.exp(sum(math.log(r) for r in tail) / len(tail))
    converged = len(tail) == 3 and all(
        abs(x - y) < tolerance * max(x, y) for x in tail for y in tail)
    root = (lengths[-1] / lengths[0]) ** (1.0 / (len(lengths) - 1))
    return StretchEstimate(estimate, len(ratios), lengths[-1], converged, ratios, root)
