"""Free-group word arithmetic.

Letters are stored as small integer codes: generator ``i`` with sign +1 is
``2*i`` and with sign -1 is ``2*i + 1``.  The inverse of a code is ``code ^ 1``
and the natural integer order on codes is exactly the canonicalization order
(generator index first, then positive before negative), so ``a < A < b < B``.

Text format: generator ``i`` prints as the (i+1)-th lowercase letter, its
inverse as the matching uppercase letter, and the empty string is the identity.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import InvalidInputError, ResourceLimitError

DEFAULT_ALPHABET = string.ascii_lowercase
DEFAULT_ENUMERATION_CAP = 16


class Letter(NamedTuple):
    generator: int
    sign: int

    @property
    def code(self) -> int:
        return 2 * self.generator + (self.sign < 0)

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        return cls(code >> 1, -1 if code & 1 else 1)

    def inverse(self) -> "Letter":
        return Letter(self.generator, -self.sign)


def _reduce_codes(codes: Iterable[int]) -> list[int]:
    out: list[int] = []
    for c in codes:
        if out and out[-1] == c ^ 1:
            out.pop()
        else:
            out.append(c)
    return out


def _check_rank(codes: Sequence[int], rank: int) -> None:
    if rank < 1:
        raise InvalidInputError(f"rank must be positive, got {rank}")
    limit = 2 * rank
    for c in codes:
        if not 0 <= c < limit:
            raise InvalidInputError(
                f"letter {Letter.from_code(c)} is outside a free group of rank {rank}")


def format_codes(codes: Iterable[int], alphabet: str = DEFAULT_ALPHABET) -> str:
    chars = []
    for c in codes:
        ch = alphabet[c >> 1]
        chars.append(ch.upper() if c & 1 else ch)
    return "".join(chars)


def parse_codes(text: str, rank: int | None = None,
                alphabet: str = DEFAULT_ALPHABET) -> tuple[list[int], int]:
    """Parse ``text`` into raw (unreduced) letter codes.

    Returns the codes and the rank, inferring the rank from the largest
    generator used when ``rank`` is None.
    """
    codes = []
    for ch in text:
        idx = alphabet.find(ch.lower())
        if idx < 0 or not ch.isalpha():
            raise InvalidInputError(f"unrecognized letter {ch!r} in word {text!r}")
        codes.append(2 * idx + ch.isupper())
    if rank is None:
        rank = max((c >> 1 for c in codes), default=0) + 1
    _check_rank(codes, rank)
    return codes, rank


@dataclass(frozen=True, slots=True)
class Word:
    """A freely reduced word in the free group of the given rank."""

    codes: tuple[int, ...]
    rank: int

    def __post_init__(self):
        _check_rank(self.codes, self.rank)
        for x, y in zip(self.codes, self.codes[1:]):
            if x == y ^ 1:
                raise InvalidInputError(f"word {format_codes(self.codes)!r} is not freely reduced")

    @classmethod
    def parse(cls, text: str, rank: int | None = None,
              alphabet: str = DEFAULT_ALPHABET) -> "Word":
        codes, rank = parse_codes(text, rank, alphabet)
        return cls(tuple(_reduce_codes(codes)), rank)

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls((), rank)

    @classmethod
    def generator(cls, index: int, rank: int) -> "Word":
        return cls((2 * index,), rank)

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(Letter.from_code(c) for c in self.codes)

    def format(self, alphabet: str = DEFAULT_ALPHABET) -> str:
        return format_codes(self.codes, alphabet)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Word({self.format()!r}, rank={self.rank})"

    def __len__(self) -> int:
        return len(self.codes)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return invert(self) ** -n
        result = Word.identity(self.rank)
        for _ in range(n):
            result = concat(result, self)
        return result

    def is_positive(self) -> bool:
        return all(c & 1 == 0 for c in self.codes)

    def is_cyclically_reduced(self) -> bool:
        return len(self.codes) <= 1 or self.codes[0] != self.codes[-1] ^ 1


@dataclass(frozen=True, slots=True)
class CyclicWord:
    """Conjugacy class of a free-group element, stored as its least rotation."""

    codes: tuple[int, ...]
    rank: int

    def __post_init__(self):
        w = Word(self.codes, self.rank)
        if not w.is_cyclically_reduced():
            raise InvalidInputError(f"{w} is not cyclically reduced")
        if self.codes and least_rotation(self.codes) != 0:
            raise InvalidInputError(f"{w} is not in canonical rotation")

    def __str__(self) -> str:
        return format_codes(self.codes)

    def __len__(self) -> int:
        return len(self.codes)

    def as_word(self) -> Word:
        return Word(self.codes, self.rank)


def free_reduce(letters: Iterable[Letter | int], rank: int) -> Word:
    """Freely reduce a raw sequence of letters (``Letter`` or integer codes)."""
    codes = [x.code if isinstance(x, Letter) else int(x) for x in letters]
    _check_rank(codes, rank)
    return Word(tuple(_reduce_codes(codes)), rank)


def _same_rank(u: Word, v: Word) -> None:
    if u.rank != v.rank:
        raise InvalidInputError(f"rank mismatch: {u.rank} vs {v.rank}")


def concat(u: Word, v: Word) -> Word:
    _same_rank(u, v)
    a, b = u.codes, v.codes
    k = 0
    # cancellation only happens across the seam
    while k < len(a) and k < len(b) and a[-1 - k] == b[k] ^ 1:
        k += 1
    return Word(a[:len(a) - k] + b[k:], u.rank)


def invert(w: Word) -> Word:
    return Word(tuple(c ^ 1 for c in reversed(w.codes)), w.rank)


def least_rotation(codes: Sequence[int]) -> int:
    """Start index of the lexicographically least rotation, in linear time."""
    n = len(codes)
    i, j, k = 0, 1, 0
    while i < n and j < n and k < n:
        x = codes[(i + k) % n]
        y = codes[(j + k) % n]
        if x == y:
            k += 1
            continue
        if x > y:
            i += k + 1
        else:
            j += k + 1
        if i == j:
            j += 1
        k = 0
    return min(i, j)


def rotate(codes: Sequence[int], j: int) -> tuple[int, ...]:
    if not codes:
        return ()
    j %= len(codes)
    return tuple(codes[j:]) + tuple(codes[:j])


def canonical_rotation(codes: Sequence[int]) -> tuple[int, ...]:
    return rotate(codes, least_rotation(codes)) if codes else ()


def cyclic_reduce(w: Word) -> tuple[CyclicWord, Word]:
    """Return ``(core, conjugator)`` with ``w == conjugator * core * conjugator**-1``."""
    codes = w.codes
    n = len(codes)
    i = 0
    while 2 * i + 1 < n and codes[i] == codes[n - 1 - i] ^ 1:
        i += 1
    middle = codes[i:n - i]
    j = least_rotation(middle) if middle else 0
    # middle = x * (y x) * x^-1 with x = middle[:j]; w is reduced, so no cancellation
    conjugator = Word(codes[:i] + middle[:j], w.rank)
    return CyclicWord(rotate(middle, j), w.rank), conjugator


def is_conjugate(u: Word, v: Word) -> bool:
    _same_rank(u, v)
    return cyclic_reduce(u)[0] == cyclic_reduce(v)[0]


def translation_length(w: Word) -> int:
    """Length of the cyclic reduction, i.e. the limit of |w^i| / i."""
    return len(cyclic_reduce(w)[0])


def enumerate_cyclically_reduced(rank: int, n: int,
                                 cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Word]:
    """Yield every cyclically reduced word of length exactly ``n``, in code order.

    Rotations are distinct words here; no necklace deduplication happens.
    """
    if rank < 1 or n < 0:
        raise InvalidInputError(f"need rank >= 1 and n >= 0, got rank={rank}, n={n}")
    if n > cap:
        raise ResourceLimitError(f"length {n} exceeds the enumeration cap {cap}")
    if n == 0:
        yield Word.identity(rank)
        return
    alphabet = range(2 * rank)
    prefix: list[int] = []

    def extend(depth: int) -> Iterator[Word]:
        if depth == n:
            if n == 1 or prefix[0] != prefix[-1] ^ 1:
                yield Word(tuple(prefix), rank)
            return
        for c in alphabet:
            if prefix and c == prefix[-1] ^ 1:
                continue
            prefix.append(c)
            yield from extend(depth + 1)
            prefix.pop()

    yield from extend(0)
