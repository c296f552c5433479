"""Structural machinery: almost-directed cut search, partition cleaning to
goodness, refinement, connector enumeration, B->A matching with a König
cover, bad-event evaluation on sampled subsets, and degree diagnostics.

Everything operates on a three-part partition V(T) = A + B + X. The
dichotomy driving the analysis CLI: either no balanced bipartition is
almost-directed (dense both ways, nothing to do), or one is, in which
case it cleans to a good partition whose B->A traffic is carried by
either many connectors or a large matching.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from itertools import combinations
from math import ceil, log, sqrt

import numpy as np

from .core import Tournament, VertexSubset, edge_count
from .errors import BadParams, EmptyPart
from .hamilton import hamiltonian_on_subset, reach_on_mask

EXACT_CUT_MAX_N = 20


class Partition:
    """Disjoint cover V(T) = A + B + X."""

    __slots__ = ("A", "B", "X")

    def __init__(self, A: VertexSubset, B: VertexSubset, X: VertexSubset):
        if not (A.universe_n == B.universe_n == X.universe_n):
            raise BadParams("partition parts live in different universes")
        n = A.universe_n
        if A.mask & B.mask or A.mask & X.mask or B.mask & X.mask:
            raise BadParams("partition parts are not disjoint")
        if A.mask | B.mask | X.mask != (1 << n) - 1:
            raise BadParams("partition parts do not cover the vertex set")
        self.A = A
        self.B = B
        self.X = X

    @classmethod
    def from_members(cls, n: int, a, b, x) -> "Partition":
        return cls(VertexSubset(n, a), VertexSubset(n, b), VertexSubset(n, x))

    @property
    def universe_n(self) -> int:
        return self.A.universe_n

    def to_json_dict(self) -> dict:
        return {"A": list(self.A.members), "B": list(self.B.members),
                "X": list(self.X.members)}

    @classmethod
    def from_json_dict(cls, n: int, data: dict) -> "Partition":
        return cls.from_members(n, data["A"], data["B"], data["X"])

    def __repr__(self) -> str:
        return f"Partition(|A|={len(self.A)}, |B|={len(self.B)}, |X|={len(self.X)})"


@dataclass(frozen=True)
class GoodnessReport:
    """Flags of the goodness test at tolerance ``eps``.

    A partition is eps-good iff the parts are near-halves, both induced
    halves have linear minimum semidegree, and nearly all A-B pairs point
    A -> B: |A|,|B| >= (1-eps)n/2, semidegrees >= (1/6-eps)n, and
    e(A,B) >= (1-eps)|A||B|.
    """

    eps: float
    size_ok: bool
    semidegree_ok: bool
    density_ok: bool
    e_AB: int
    e_BA: int

    @property
    def is_good(self) -> bool:
        return self.size_ok and self.semidegree_ok and self.density_ok

    def to_json_dict(self) -> dict:
        return {"eps": self.eps, "size_ok": self.size_ok,
                "semidegree_ok": self.semidegree_ok, "density_ok": self.density_ok,
                "e_AB": self.e_AB, "e_BA": self.e_BA, "is_good": self.is_good}


@dataclass(frozen=True)
class CutResult:
    """Best directed balanced bipartition found, with how it was found."""

    A: VertexSubset
    B: VertexSubset
    density: float
    method: str  # exact | local_search | degree_witness

    def to_json_dict(self) -> dict:
        return {"A": list(self.A.members), "B": list(self.B.members),
                "density": self.density, "method": self.method}


@dataclass(frozen=True)
class MatchingCover:
    """Maximum B->A matching plus a König cover certifying optimality."""

    matching: tuple[tuple[int, int], ...]
    cover: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {"matching": [list(e) for e in self.matching], "cover": list(self.cover)}


@dataclass(frozen=True)
class BadEventFlags:
    """The four events whose joint absence forces T[S] Hamiltonian."""

    b1: bool
    b2: bool
    b3: bool
    b4: bool

    @property
    def any(self) -> bool:
        return self.b1 or self.b2 or self.b3 or self.b4

    def to_json_dict(self) -> dict:
        return {"b1": self.b1, "b2": self.b2, "b3": self.b3, "b4": self.b4}


def _induced_min_semidegree(T: Tournament, members) -> int:
    """Minimum semidegree of T[members]; 0 for fewer than two vertices."""
    m = len(members)
    if m <= 1:
        return 0
    idx = np.fromiter(members, dtype=np.intp, count=m)
    sub = T.adj[np.ix_(idx, idx)]
    return int(min(sub.sum(axis=1, dtype=np.int64).min(),
                   sub.sum(axis=0, dtype=np.int64).min()))


def evaluate_goodness(T: Tournament, P: Partition, eps: float) -> GoodnessReport:
    n = T.n
    a, b = len(P.A), len(P.B)
    e_ab = edge_count(T, P.A.members, P.B.members)
    e_ba = edge_count(T, P.B.members, P.A.members)
    size_ok = a >= (1 - eps) * n / 2 and b >= (1 - eps) * n / 2
    semi_ok = (_induced_min_semidegree(T, P.A.members) >= (1 / 6 - eps) * n
               and _induced_min_semidegree(T, P.B.members) >= (1 / 6 - eps) * n)
    density_ok = e_ab >= (1 - eps) * a * b
    return GoodnessReport(eps=eps, size_ok=size_ok, semidegree_ok=semi_ok,
                          density_ok=density_ok, e_AB=e_ab, e_BA=e_ba)


def _cut_density(T: Tournament, a_mask: int, b_mask: int, sizes: tuple[int, int]) -> float:
    out = T.out_masks
    e = 0
    m = a_mask
    while m:
        low = m & -m
        e += (out[low.bit_length() - 1] & b_mask).bit_count()
        m ^= low
    return e / (sizes[0] * sizes[1])


def _exact_balanced_cut(T: Tournament) -> CutResult:
    n = T.n
    half = n // 2
    full = (1 << n) - 1
    best = (-1.0, 0, 0, 0, 0)
    for combo in combinations(range(n), half):
        a_mask = 0
        for v in combo:
            a_mask |= 1 << v
        b_mask = full & ~a_mask
        d1 = _cut_density(T, a_mask, b_mask, (half, n - half))
        if d1 > best[0]:
            best = (d1, a_mask, b_mask, half, n - half)
        d2 = _cut_density(T, b_mask, a_mask, (n - half, half))
        if d2 > best[0]:
            best = (d2, b_mask, a_mask, n - half, half)
    _, a_mask, b_mask, _, _ = best
    return CutResult(A=VertexSubset.from_mask(n, a_mask),
                     B=VertexSubset.from_mask(n, b_mask),
                     density=best[0], method="exact")


def _hill_climb(T: Tournament, a_members: np.ndarray) -> tuple[np.ndarray, int, bool]:
    """Best-swap ascent on e(A,B); returns (A members, e(A,B), moved?).

    The gain of swapping a in A with b in B separates into per-vertex
    terms, so each step costs O(n): delta = inA[a] - outB[a] + outB[b]
    - inA[b] + 1, where inA[v] = |N-(v) & A| and outB[v] = |N+(v) & B|.
    """
    n = T.n
    adj = T.adj.astype(np.int32)
    in_a = np.zeros(n, dtype=bool)
    in_a[a_members] = True
    inA = adj[in_a, :].sum(axis=0)
    outB = adj[:, ~in_a].sum(axis=1)
    e = int(inA[~in_a].sum())
    gain_a = inA - outB
    moved = False
    while True:
        a_idx = np.flatnonzero(in_a)
        b_idx = np.flatnonzero(~in_a)
        a = a_idx[int(np.argmax(gain_a[a_idx]))]
        b = b_idx[int(np.argmin(gain_a[b_idx]))]
        delta = int(gain_a[a]) - int(gain_a[b]) + 1
        if delta <= 0:
            return np.flatnonzero(in_a), e, moved
        in_a[a] = False
        in_a[b] = True
        e += delta
        inA += adj[b, :] - adj[a, :]
        outB += adj[:, a] - adj[:, b]
        gain_a = inA - outB
        moved = True


def balanced_cut_search(T: Tournament, effort: int = 8, mode: str = "auto") -> CutResult:
    """Max-density balanced directed cut.

    Exhaustive for n <= 20, otherwise the best of the high-out-degree
    witness split and ``effort`` seeded hill-climbing restarts (a
    heuristic, reported as such). ``mode`` forces "exact" (refused above
    n = 20) or "heuristic"; "auto" picks by size.
    """
    n = T.n
    if n < 2:
        raise BadParams("cut search needs n >= 2")
    if mode not in ("auto", "exact", "heuristic"):
        raise BadParams(f"unknown cut search mode {mode!r}")
    if mode == "exact" and n > EXACT_CUT_MAX_N:
        raise BadParams(f"exact cut search capped at n = {EXACT_CUT_MAX_N}, got {n}")
    if mode != "heuristic" and n <= EXACT_CUT_MAX_N:
        return _exact_balanced_cut(T)

    half = n // 2
    candidates: list[tuple[int, np.ndarray, str]] = []

    order = np.argsort(-T.out_degrees(), kind="stable")
    witness = np.sort(order[:half])
    w_members, w_e, w_moved = _hill_climb(T, witness)
    candidates.append((w_e, w_members, "local_search" if w_moved else "degree_witness"))

    for r in range(effort):
        rng = np.random.default_rng(0xC0_7E50 + r)
        size = half if (n % 2 == 0 or r % 2 == 0) else n - half
        start = np.sort(rng.choice(n, size=size, replace=False))
        members, e, _ = _hill_climb(T, start)
        candidates.append((e, members, "local_search"))

    best_e, best_members, method = max(
        candidates, key=lambda c: c[0] / (len(c[1]) * (n - len(c[1]))))
    a = VertexSubset(n, [int(v) for v in best_members])
    b = VertexSubset(n, [int(v) for v in np.setdiff1d(np.arange(n), best_members)])
    return CutResult(A=a, B=b, density=best_e / (len(a) * len(b)), method=method)


def removal_sets(
    T: Tournament, A0: VertexSubset, B0: VertexSubset, eps: float
) -> tuple[list[int], list[int], list[int], list[int]]:
    """The cleaning procedure's four removal sets (A0-, A0+, B0+, B0-).

    With delta = eps^(1/2): A0- holds A0 vertices with at most (1/4-delta)n
    in-neighbors inside A0, A0+ those with at most n/5 out-neighbors inside
    A0; B0's sets mirror this with in/out swapped.
    """
    n = T.n
    delta = sqrt(eps)
    scarce = (0.25 - delta) * n
    fifth = n / 5

    ia = np.fromiter(A0.members, dtype=np.intp, count=len(A0))
    sub_a = T.adj[np.ix_(ia, ia)]
    in_a = sub_a.sum(axis=0, dtype=np.int64)
    out_a = sub_a.sum(axis=1, dtype=np.int64)
    a_minus = [int(ia[i]) for i in range(len(ia)) if in_a[i] <= scarce]
    a_plus = [int(ia[i]) for i in range(len(ia)) if out_a[i] <= fifth]

    ib = np.fromiter(B0.members, dtype=np.intp, count=len(B0))
    sub_b = T.adj[np.ix_(ib, ib)]
    in_b = sub_b.sum(axis=0, dtype=np.int64)
    out_b = sub_b.sum(axis=1, dtype=np.int64)
    b_plus = [int(ib[i]) for i in range(len(ib)) if out_b[i] <= scarce]
    b_minus = [int(ib[i]) for i in range(len(ib)) if in_b[i] <= fifth]
    return a_minus, a_plus, b_plus, b_minus


def clean_to_good_partition(
    T: Tournament, A0: VertexSubset, B0: VertexSubset, eps: float
) -> tuple[Partition, GoodnessReport]:
    """Strip low-degree vertices from a balanced almost-directed cut and
    report goodness of the result at the relaxed tolerance eps^(1/3).

    The procedure always runs; when the input cut is not actually
    almost-directed, the report's flags come back false honestly.
    """
    n = T.n
    if not 0.0 < eps <= 0.01:
        raise BadParams(f"cleaning tolerance must be in (0, 0.01], got {eps}")
    if A0.universe_n != n or B0.universe_n != n:
        raise BadParams("cut parts live in a different universe than T")
    if A0.mask & B0.mask or A0.mask | B0.mask != (1 << n) - 1:
        raise BadParams("(A0, B0) must partition the vertex set")
    if abs(len(A0) - len(B0)) > 1:
        raise BadParams("(A0, B0) must be balanced")

    a_minus, a_plus, b_plus, b_minus = removal_sets(T, A0, B0, eps)
    drop_a = set(a_minus) | set(a_plus)
    drop_b = set(b_plus) | set(b_minus)
    a = [v for v in A0.members if v not in drop_a]
    b = [v for v in B0.members if v not in drop_b]
    x = sorted(drop_a | drop_b)
    part = Partition.from_members(n, a, b, x)
    return part, evaluate_goodness(T, part, eps ** (1 / 3))


@dataclass(frozen=True)
class RefineResult:
    """Refinement outcome: the partition, what moved, and the short-circuit
    flag raised when more than t vertices on one side already connect."""

    partition: Partition
    moved: tuple[int, ...]
    short_circuit: bool


def refine_partition(T: Tournament, P: Partition, k: int, t: int) -> RefineResult:
    """Move heavy cross-traffic vertices out of A and B into X.

    A vertex b in B with at least k+t out-neighbors in A (or a in A with
    k+t in-neighbors in B) stays a k-connector even after t of its targets
    move, so it belongs in X. If more than t vertices qualify on either
    side the partition is returned unchanged with short_circuit set: that
    many connectors already settle the probability bound.
    """
    adj = T.adj
    ia = np.fromiter(P.A.members, dtype=np.intp, count=len(P.A))
    ib = np.fromiter(P.B.members, dtype=np.intp, count=len(P.B))
    thresh = k + t
    move_b: list[int] = []
    move_a: list[int] = []
    if len(ia) and len(ib):
        out_to_a = adj[np.ix_(ib, ia)].sum(axis=1, dtype=np.int64)
        move_b = [int(ib[i]) for i in np.flatnonzero(out_to_a >= thresh)]
        in_from_b = adj[np.ix_(ib, ia)].sum(axis=0, dtype=np.int64)
        move_a = [int(ia[i]) for i in np.flatnonzero(in_from_b >= thresh)]
    if len(move_b) > t or len(move_a) > t:
        return RefineResult(P, (), True)
    if not move_b and not move_a:
        return RefineResult(P, (), False)
    moved = set(move_a) | set(move_b)
    part = Partition.from_members(
        T.n,
        [v for v in P.A.members if v not in moved],
        [v for v in P.B.members if v not in moved],
        sorted(set(P.X.members) | moved),
    )
    return RefineResult(part, tuple(sorted(moved)), False)


def k_connectors(T: Tournament, P: Partition, k: int) -> VertexSubset:
    """Vertices with at least k out-neighbors in A and k in-neighbors in B."""
    n = T.n
    adj = T.adj
    if len(P.A) == 0 or len(P.B) == 0:
        return VertexSubset(n, [])
    ia = np.fromiter(P.A.members, dtype=np.intp, count=len(P.A))
    ib = np.fromiter(P.B.members, dtype=np.intp, count=len(P.B))
    out_to_a = adj[:, ia].sum(axis=1, dtype=np.int64)
    in_from_b = adj[ib, :].sum(axis=0, dtype=np.int64)
    hits = np.flatnonzero((out_to_a >= k) & (in_from_b >= k))
    return VertexSubset(n, [int(v) for v in hits])


def max_BA_matching(T: Tournament, P: Partition) -> MatchingCover:
    """Maximum matching of B->A edges with a minimum vertex cover.

    Augmenting-path matching over the bipartite graph (left = B, right =
    A, edge iff b beats a); the cover comes from the final alternating
    reachability set Z: (B minus Z) plus (A intersect Z). König equality
    and full coverage are asserted before returning.
    """
    b_list = list(P.B.members)
    a_list = list(P.A.members)
    nb, na = len(b_list), len(a_list)
    adj = T.adj
    nbrs: list[list[int]] = [
        [j for j in range(na) if adj[b_list[i], a_list[j]]] for i in range(nb)
    ]
    match_b = [-1] * nb
    match_a = [-1] * na

    def try_augment(i: int, seen: bytearray) -> bool:
        for j in nbrs[i]:
            if seen[j]:
                continue
            seen[j] = 1
            if match_a[j] == -1 or try_augment(match_a[j], seen):
                match_b[i] = j
                match_a[j] = i
                return True
        return False

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 2 * (na + nb) + 100))
    try:
        for i in range(nb):
            try_augment(i, bytearray(na))
    finally:
        sys.setrecursionlimit(old_limit)

    # Alternating BFS from unmatched left vertices: free edges left->right,
    # matched edges right->left.
    z_b = [match_b[i] == -1 for i in range(nb)]
    z_a = [False] * na
    queue = [i for i in range(nb) if z_b[i]]
    while queue:
        i = queue.pop()
        for j in nbrs[i]:
            if not z_a[j]:
                z_a[j] = True
                i2 = match_a[j]
                if i2 != -1 and not z_b[i2]:
                    z_b[i2] = True
                    queue.append(i2)

    matching = tuple(sorted((b_list[i], a_list[match_b[i]])
                            for i in range(nb) if match_b[i] != -1))
    cover = tuple(sorted([b_list[i] for i in range(nb) if not z_b[i]]
                         + [a_list[j] for j in range(na) if z_a[j]]))
    if len(cover) != len(matching):
        raise AssertionError(
            f"König equality violated: |matching|={len(matching)} |cover|={len(cover)}")
    cover_set = set(cover)
    for i in range(nb):
        for j in nbrs[i]:
            if b_list[i] not in cover_set and a_list[j] not in cover_set:
                raise AssertionError(f"cover misses edge {b_list[i]}->{a_list[j]}")
    return MatchingCover(matching=matching, cover=cover)


def bad_events(T: Tournament, P: Partition, S: VertexSubset) -> BadEventFlags:
    """Evaluate the four bad events on a concrete sampled subset S.

    b1: X got too big a share of S. b2: a semidegree floor fails in
    T[A&S], T[B&S], or T[S]. b3/b4: one direction between the sampled
    halves is unreachable inside T[S]. Raises EmptyPart when S misses A
    or B entirely (the path events presuppose both ends exist).
    """
    if S.universe_n != T.n:
        raise BadParams("sample universe does not match tournament")
    s_mask = S.mask
    sa_mask = s_mask & P.A.mask
    sb_mask = s_mask & P.B.mask
    if sa_mask == 0 or sb_mask == 0:
        raise EmptyPart("sample misses part A or part B")
    s_size = len(S)
    sx_size = (s_mask & P.X.mask).bit_count()
    b1 = 5 * sx_size >= s_size

    sa = [v for v in S.members if sa_mask >> v & 1]
    sb = [v for v in S.members if sb_mask >> v & 1]
    b2 = (10 * _induced_min_semidegree(T, sa) < 3 * len(sa)
          or 10 * _induced_min_semidegree(T, sb) < 3 * len(sb)
          or 5 * _induced_min_semidegree(T, S.members) < s_size)

    b3 = reach_on_mask(T.out_masks, s_mask, sa_mask) & sb_mask == 0
    b4 = reach_on_mask(T.out_masks, s_mask, sb_mask) & sa_mask == 0
    return BadEventFlags(b1=b1, b2=b2, b3=b3, b4=b4)


def hamiltonicity_from_no_bad_events(T: Tournament, P: Partition, S: VertexSubset) -> bool:
    """Consistency check: no bad events must force T[S] Hamiltonian.

    Returns True when the implication holds for this sample (vacuously,
    if some event occurred); False is a counterexample to the claim and
    should never happen.
    """
    flags = bad_events(T, P, S)
    if flags.any:
        return True
    return hamiltonian_on_subset(T, S)


def low_indegree_census(T: Tournament, beta: float) -> int:
    """How many vertices have in-degree at most beta * n."""
    if not 0.0 < beta < 1.0:
        raise BadParams(f"beta must be in (0,1), got {beta}")
    return int((T.in_degrees() <= beta * T.n).sum())


def default_connector_k(p: float, t: int, sigma: float = 0.01) -> int:
    """Default connector threshold: ceil(2 log((t+1)/sigma) base 1/(1-p^2))."""
    if not 0.0 < p < 1.0 or not 0.0 < sigma < 1.0 or t < 1:
        raise BadParams("need p, sigma in (0,1) and t >= 1")
    return ceil(2 * log((t + 1) / sigma) / log(1 / (1 - p * p)))
