"""Tournament representation, validation, induced subtournaments, degree statistics.

A tournament on n vertices is stored as a dense n x n uint8 orientation
matrix with adj[i][j] = 1 iff the edge between i and j points i -> j.
Rows are additionally available as Python-int bitsets (one n-bit integer
per vertex) which is what every reachability kernel in this package runs
on: an OR of neighborhood bitsets touches n/64 machine words.

Vertices are dense integers 0..n-1. Instances are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from ._bits import mask_of, rows_to_masks
from .errors import DiagonalNonzero, PairViolation, SubsetOutOfRange, Trn1ParseError

MAX_VERTICES = 1 << 16


class Tournament:
    """Immutable complete oriented graph.

    The constructor checks both tournament invariants (zero diagonal,
    exactly one orientation per pair) unless ``_trusted`` is set by
    internal code that constructs provably valid matrices.
    """

    __slots__ = ("n", "adj", "parent_labels", "_out_masks", "_in_masks")

    def __init__(self, adj, *, parent_labels: tuple[int, ...] | None = None,
                 _trusted: bool = False):
        a = np.asarray(adj, dtype=np.uint8)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"adjacency must be a square matrix, got shape {a.shape}")
        n = a.shape[0]
        if n < 1:
            raise ValueError("a tournament needs at least one vertex")
        if n > MAX_VERTICES:
            raise ValueError(f"n = {n} exceeds the supported maximum {MAX_VERTICES}")
        if not _trusted:
            _check_invariants(a)
        a = np.ascontiguousarray(a)
        a.setflags(write=False)
        self.n = n
        self.adj = a
        self.parent_labels = parent_labels
        self._out_masks: list[int] | None = None
        self._in_masks: list[int] | None = None

    @property
    def out_masks(self) -> list[int]:
        """Per-vertex bitset of out-neighbors N+(v)."""
        if self._out_masks is None:
            self._out_masks = rows_to_masks(self.adj)
        return self._out_masks

    @property
    def in_masks(self) -> list[int]:
        """Per-vertex bitset of in-neighbors N-(v)."""
        if self._in_masks is None:
            self._in_masks = rows_to_masks(np.ascontiguousarray(self.adj.T))
        return self._in_masks

    def edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def out_degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1, dtype=np.int64)

    def in_degrees(self) -> np.ndarray:
        return self.adj.sum(axis=0, dtype=np.int64)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tournament):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash((self.n, self.adj.tobytes()))

    def __repr__(self) -> str:
        return f"Tournament(n={self.n})"


def _check_invariants(a: np.ndarray) -> None:
    bad = np.flatnonzero(np.diagonal(a))
    if bad.size:
        raise DiagonalNonzero(int(bad[0]))
    s = a + a.T
    iu = np.triu_indices(a.shape[0], 1)
    viol = np.flatnonzero(s[iu] != 1)
    if viol.size:
        k = int(viol[0])
        raise PairViolation(int(iu[0][k]), int(iu[1][k]))


def validate(raw_matrix) -> Tournament:
    """Build a Tournament from a raw square 0/1 matrix, checking both invariants.

    Raises DiagonalNonzero or PairViolation identifying the first offending
    cell (row-major over the diagonal, then lexicographic over pairs).
    """
    a = np.asarray(raw_matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.size and not np.isin(a, (0, 1)).all():
        raise ValueError("matrix entries must be 0 or 1")
    return Tournament(a.astype(np.uint8))


class VertexSubset:
    """Ordered, duplicate-free set of vertex labels inside a fixed universe."""

    __slots__ = ("universe_n", "members", "_mask")

    def __init__(self, universe_n: int, members: Iterable[int]):
        mem = tuple(int(v) for v in members)
        for v in mem:
            if not 0 <= v < universe_n:
                raise SubsetOutOfRange(
                    f"vertex {v} outside universe of size {universe_n}")
        if len(set(mem)) != len(mem):
            raise ValueError("duplicate members in vertex subset")
        self.universe_n = universe_n
        self.members = mem
        self._mask: int | None = None

    @classmethod
    def full(cls, n: int) -> "VertexSubset":
        return cls(n, range(n))

    @classmethod
    def from_mask(cls, universe_n: int, mask: int) -> "VertexSubset":
        if mask < 0 or mask >> universe_n:
            raise SubsetOutOfRange(f"mask has bits outside universe {universe_n}")
        return cls(universe_n, [v for v in range(universe_n) if mask >> v & 1])

    @property
    def mask(self) -> int:
        if self._mask is None:
            self._mask = mask_of(self.members)
        return self._mask

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, v: int) -> bool:
        return bool(self.mask >> v & 1)

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VertexSubset):
            return NotImplemented
        return (self.universe_n, self.members) == (other.universe_n, other.members)

    def __hash__(self):
        return hash((self.universe_n, self.members))

    def __repr__(self) -> str:
        return f"VertexSubset(universe_n={self.universe_n}, members={self.members})"


@dataclass(frozen=True)
class SemidegreeProfile:
    """Per-vertex in/out degrees plus the minimum semidegree and a witness."""

    out_degrees: tuple[int, ...]
    in_degrees: tuple[int, ...]
    min_semidegree: int
    witness: int


def semidegrees(T: Tournament) -> SemidegreeProfile:
    """Exact degree statistics; witness is the lowest vertex attaining the minimum."""
    out = T.out_degrees()
    inn = T.in_degrees()
    per_vertex = np.minimum(out, inn)
    w = int(per_vertex.argmin())
    return SemidegreeProfile(
        out_degrees=tuple(int(x) for x in out),
        in_degrees=tuple(int(x) for x in inn),
        min_semidegree=int(per_vertex[w]),
        witness=w,
    )


def induced(T: Tournament, S: VertexSubset) -> Tournament:
    """Subtournament T[S], vertices relabeled 0..|S|-1 in S's order.

    The returned tournament keeps ``parent_labels`` (new label i came from
    S.members[i]) so certificates can be translated back to T's labels.
    """
    if S.universe_n != T.n:
        raise SubsetOutOfRange(
            f"subset universe {S.universe_n} does not match tournament n={T.n}")
    idx = np.fromiter(S.members, dtype=np.intp, count=len(S.members))
    sub = T.adj[np.ix_(idx, idx)]
    return Tournament(sub, parent_labels=S.members, _trusted=True)


# TRN1 text format: line 1 = "TRN1 <n>", lines 2..n+1 = rows of adj as
# n characters '0'/'1'. No trailing garbage is allowed.

def format_trn1(T: Tournament) -> str:
    rows = ["TRN1 %d" % T.n]
    rows.extend("".join("1" if x else "0" for x in row) for row in T.adj)
    return "\n".join(rows) + "\n"


def parse_trn1(text: str) -> Tournament:
    """Parse TRN1 text, enforcing both tournament invariants.

    Structural problems raise Trn1ParseError with the 1-based line number;
    orientation problems raise DiagonalNonzero/PairViolation.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise Trn1ParseError(1, "empty file")
    header = lines[0].split()
    if len(header) != 2 or header[0] != "TRN1":
        raise Trn1ParseError(1, "expected header 'TRN1 <n>'")
    try:
        n = int(header[1])
    except ValueError:
        raise Trn1ParseError(1, f"vertex count {header[1]!r} is not an integer") from None
    if n < 1:
        raise Trn1ParseError(1, f"vertex count must be >= 1, got {n}")
    if len(lines) < n + 1:
        raise Trn1ParseError(len(lines) + 1, f"expected {n} matrix rows, found {len(lines) - 1}")
    if len(lines) > n + 1:
        raise Trn1ParseError(n + 2, "trailing garbage after matrix rows")
    adj = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        row = lines[i + 1]
        if len(row) != n:
            raise Trn1ParseError(i + 2, f"row has {len(row)} characters, expected {n}")
        for j, ch in enumerate(row):
            if ch == "1":
                adj[i, j] = 1
            elif ch != "0":
                raise Trn1ParseError(i + 2, f"invalid character {ch!r} at column {j}")
    return Tournament(adj)


def read_trn1(path) -> Tournament:
    with open(path, "r", encoding="ascii") as fh:
        return parse_trn1(fh.read())


def write_trn1(T: Tournament, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_trn1(T))


def edge_count(T: Tournament, frm: Sequence[int], to: Sequence[int]) -> int:
    """Number of edges directed from ``frm`` into ``to`` (the parts may overlap)."""
    if len(frm) == 0 or len(to) == 0:
        return 0
    a = np.fromiter(frm, dtype=np.intp, count=len(frm))
    b = np.fromiter(to, dtype=np.intp, count=len(to))
    return int(T.adj[np.ix_(a, b)].sum(dtype=np.int64))
