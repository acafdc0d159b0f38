"""Self-maps of the N-petal rose: transition matrices, Perron-Frobenius data,
train-track checks and Whitehead graphs.

Directions at the single vertex are identified with letter codes: code ``x``
is the direction in which a path starting with letter ``x`` leaves the vertex.
A path ``... x y ...`` crosses the turn ``{x^-1, y}``.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .automorphisms import Endomorphism
from .errors import IndeterminateError, InvalidInputError, NonConvergenceError, PreconditionError
from .words import Word, format_codes

DEFAULT_PF_TOLERANCE = 1e-12
PF_ITERATION_CAP = 100_000
EXPANSION_MARGIN = 1e-9

Turn = tuple[int, int]


@dataclass(frozen=True)
class RoseMap:
    rank: int
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.rank:
            raise InvalidInputError(f"expected {self.rank} edge images, got {len(self.images)}")
        for i, img in enumerate(self.images):
            if img.rank != self.rank:
                raise InvalidInputError(f"edge image {img} has the wrong rank")
            if not img.codes:
                raise InvalidInputError(f"edge {i} has trivial image")

    @classmethod
    def from_strings(cls, images: Sequence[str], rank: int | None = None) -> "RoseMap":
        rank = len(images) if rank is None else rank
        return cls(rank, tuple(Word.parse(s, rank) for s in images))

    def image_of_code(self, code: int) -> tuple[int, ...]:
        img = self.images[code >> 1].codes
        return tuple(c ^ 1 for c in reversed(img)) if code & 1 else img

    def to_endomorphism(self) -> Endomorphism:
        return Endomorphism(self.rank, self.images)

    def to_dict(self) -> dict:
        return {"rank": self.rank, "images": [str(img) for img in self.images]}

    @classmethod
    def from_dict(cls, data: dict) -> "RoseMap":
        try:
            return cls.from_strings(list(data["images"]), int(data["rank"]))
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"bad rose map JSON: {exc}") from None


def rose_map_from_endo(e: Endomorphism) -> RoseMap:
    return RoseMap(e.rank, e.images)


@dataclass(frozen=True)
class TransitionMatrix:
    """``entries[i][j]`` counts occurrences of petal i (either orientation) in f(petal j)."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if n == 0 or any(len(row) != n for row in self.entries):
            raise InvalidInputError("transition matrix must be square and nonempty")
        if any(x < 0 for row in self.entries for x in row):
            raise InvalidInputError("transition matrix entries must be nonnegative")

    @classmethod
    def of(cls, rows) -> "TransitionMatrix":
        if isinstance(rows, TransitionMatrix):
            return rows
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def column_sums(self) -> list[int]:
        return [sum(row[j] for row in self.entries) for j in range(self.size)]

    def max_entry(self) -> int:
        return max(max(row) for row in self.entries)

    def to_list(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def transition_matrix(f: RoseMap) -> TransitionMatrix:
    n = f.rank
    m = [[0] * n for _ in range(n)]
    for j, img in enumerate(f.images):
        for c in img.codes:
            m[c >> 1][j] += 1
    return TransitionMatrix(tuple(tuple(row) for row in m))


def _reachable(adj: list[list[int]], start: int) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def is_irreducible(M) -> bool:
    """Strong connectivity of the digraph with an arc j -> i whenever m[i][j] > 0."""
    M = TransitionMatrix.of(M)
    n = M.size
    forward = [[i for i in range(n) if M.entries[i][j] > 0] for j in range(n)]
    backward = [[j for j in range(n) if M.entries[i][j] > 0] for i in range(n)]
    return len(_reachable(forward, 0)) == n and len(_reachable(backward, 0)) == n


def is_primitive(M) -> bool:
    """Some power is entrywise positive; by Wielandt it suffices to test (n-1)^2 + 1."""
    M = TransitionMatrix.of(M)
    n = M.size
    pattern = (M.array > 0).astype(np.int64)
    power = np.eye(n, dtype=np.int64)
    for _ in range((n - 1) ** 2 + 1):
        power = ((power @ pattern) > 0).astype(np.int64)
    return bool(power.all())


@dataclass(frozen=True)
class PFResult:
    lam: float
    eigenvector: tuple[float, ...]
    residual: float
    iterations: int


def pf_eigenvalue(M, tolerance: float = DEFAULT_PF_TOLERANCE,
                  max_iterations: int = PF_ITERATION_CAP) -> PFResult:
    """Perron-Frobenius eigenvalue by power iteration from the all-ones vector.

    Imprimitive irreducible matrices are iterated as M + I, which is primitive
    and has the same eigenvector; the shift is removed from the eigenvalue.
    Arithmetic is in extended precision so the absolute residual target is
    reachable for matrices with large entries.
    """
    M = TransitionMatrix.of(M)
    if tolerance <= 0:
        raise InvalidInputError("tolerance must be positive")
    if not is_irreducible(M):
        raise PreconditionError("Perron-Frobenius iteration needs an irreducible matrix")
    n = M.size
    A = M.array.astype(np.longdouble)
    shift = 0 if is_primitive(M) else 1
    B = A + shift * np.eye(n, dtype=np.longdouble)

    v = np.full(n, 1 / np.longdouble(n))
    lam = np.longdouble(0)
    residual = np.inf
    for it in range(1, max_iterations + 1):
        w = B @ v
        v = w / w.sum()
        Av = A @ v
        lam = Av.sum()
        residual = float(np.max(np.abs(Av - lam * v)))
        if residual < tolerance:
            return PFResult(float(lam), tuple(float(x) for x in v), residual, it)
    best = PFResult(float(lam), tuple(float(x) for x in v), residual, max_iterations)
    raise NonConvergenceError(
        f"power iteration did not reach residual {tolerance} in {max_iterations} steps", best)


def is_expanding(f: RoseMap, tolerance: float = DEFAULT_PF_TOLERANCE) -> bool:
    return pf_eigenvalue(transition_matrix(f), tolerance).lam > 1 + EXPANSION_MARGIN


def direction_map(f: RoseMap) -> list[int]:
    """Df as a list indexed by direction: the first direction of the image path."""
    return [f.image_of_code(d)[0] for d in range(2 * f.rank)]


def _turn(x: int, y: int) -> Turn:
    return (x, y) if x <= y else (y, x)


def taken_turns(f: RoseMap) -> set[Turn]:
    """Turns crossed inside the edge images."""
    turns = set()
    for img in f.images:
        for x, y in zip(img.codes, img.codes[1:]):
            turns.add(_turn(x ^ 1, y))
    return turns


class TrainTrack(enum.Enum):
    YES = "yes"
    NO = "no"
    INDETERMINATE = "indeterminate"


def train_track_status(f: RoseMap, power_cap: int | None = None) -> TrainTrack:
    """Follow the taken turns under Df; an illegal turn eventually becomes degenerate."""
    if power_cap is None:
        power_cap = 4 * f.rank ** 2
    df = direction_map(f)
    frontier = taken_turns(f)
    if any(x == y for x, y in frontier):
        return TrainTrack.NO
    seen = set(frontier)
    for _ in range(power_cap):
        images = {_turn(df[x], df[y]) for x, y in frontier}
        if any(x == y for x, y in images):
            return TrainTrack.NO
        frontier = images - seen
        if not frontier:
            return TrainTrack.YES
        seen |= frontier
    return TrainTrack.INDETERMINATE


def is_train_track(f: RoseMap, power_cap: int | None = None) -> bool:
    status = train_track_status(f, power_cap)
    if status is TrainTrack.INDETERMINATE:
        raise IndeterminateError(f"turn closure did not stabilize within {power_cap} steps")
    return status is TrainTrack.YES


@dataclass(frozen=True)
class WhiteheadGraph:
    rank: int
    edges: frozenset[Turn]

    def __post_init__(self):
        if any(x == y for x, y in self.edges):
            raise InvalidInputError("Whitehead graph cannot contain a degenerate turn")

    @property
    def vertices(self) -> range:
        return range(2 * self.rank)

    def edge_labels(self) -> list[str]:
        return sorted(format_codes((x,)) + format_codes((y,)) for x, y in self.edges)


def seed_whitehead_graph(f: RoseMap) -> WhiteheadGraph:
    """Only the turns crossed by the edge images themselves."""
    return WhiteheadGraph(f.rank, frozenset(taken_turns(f)))


def whitehead_graph(f: RoseMap) -> WhiteheadGraph:
    """Turns crossed by f^k(e) for all k >= 1: the taken turns closed under Df."""
    df = direction_map(f)
    edges = {t for t in taken_turns(f) if t[0] != t[1]}
    frontier = set(edges)
    while frontier:
        images = {_turn(df[x], df[y]) for x, y in frontier}
        frontier = {t for t in images if t[0] != t[1]} - edges
        edges |= frontier
    return WhiteheadGraph(f.rank, frozenset(edges))


def is_connected(g: WhiteheadGraph) -> bool:
    adj: list[list[int]] = [[] for _ in g.vertices]
    for x, y in g.edges:
        adj[x].append(y)
        adj[y].append(x)
    return len(_reachable(adj, 0)) == len(adj)


def kb_bound_check(M, pf: PFResult) -> bool:
    """max m_ij <= k * lambda^(k+1), with k the number of edges (petals)."""
    M = TransitionMatrix.of(M)
    k = M.size
    return M.max_entry() <= k * pf.lam ** (k + 1)


def analyze(f: RoseMap, pf_tolerance: float = DEFAULT_PF_TOLERANCE,
            power_cap: int | None = None) -> dict:
    """Full report for one rose map, in the JSON shape used by the CLI."""
    M = transition_matrix(f)
    irreducible = is_irreducible(M)
    lam = kb = None
    if irreducible:
        pf = pf_eigenvalue(M, pf_tolerance)
        lam = pf.lam
        kb = kb_bound_check(M, pf)
    return {
        "matrix": M.to_list(),
        "lambda": lam,
        "irreducible": irreducible,
        "primitive": is_primitive(M),
        "train_track": train_track_status(f, power_cap).value,
        "whitehead_connected": is_connected(whitehead_graph(f)),
        "kb_bound": kb,
    }
