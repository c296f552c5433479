"""Hamiltonicity decisions, certificates, and the independent brute-force oracle.

A tournament is Hamiltonian iff it is strongly connected and has at least
3 vertices (Moon/Camion). Three distinct decision routes live here on
purpose:

* ``is_hamiltonian`` — forward+backward bitset BFS from one vertex;
* ``brute_force_hamiltonian`` — Held–Karp dynamic programming over
  (visited-subset, endpoint) states, the trust anchor for small n;
* ``hamiltonian_batch`` — vectorized score-sequence test (a tournament is
  strong iff every proper prefix sum of its sorted score sequence strictly
  exceeds k(k-1)/2, Moon/Landau), used by the Monte Carlo estimator.

They are cross-checked against each other in the test suite; certificates
are validated edge-by-edge, so the constructive algorithm never has to be
trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key

import numpy as np

from ._bits import iter_bits
from .core import Tournament, VertexSubset
from .errors import InvalidCertificate, TooLarge

BRUTE_FORCE_MAX_N = 20


@dataclass(frozen=True)
class HamiltonCertificate:
    """Cyclic vertex sequence claimed to be a directed Hamilton cycle."""

    order: tuple[int, ...]

    def translate(self, labels: tuple[int, ...]) -> "HamiltonCertificate":
        """Map an induced-subtournament certificate back to parent labels."""
        return HamiltonCertificate(tuple(labels[v] for v in self.order))

    def to_text(self) -> str:
        return ",".join(str(v) for v in self.order)

    @classmethod
    def from_text(cls, text: str) -> "HamiltonCertificate":
        parts = [p.strip() for p in text.strip().split(",") if p.strip() != ""]
        return cls(tuple(int(p) for p in parts))


def check_certificate(T: Tournament, cert: HamiltonCertificate) -> None:
    """Raise InvalidCertificate at the first failing position, else return.

    Position i refers to the cyclic edge order[i] -> order[(i+1) % n].
    """
    order = cert.order
    n = T.n
    if len(order) != n or n < 3:
        raise InvalidCertificate(
            0, f"certificate has {len(order)} vertices, tournament has {n} (need >= 3)")
    if sorted(order) != list(range(n)):
        raise InvalidCertificate(0, "certificate is not a permutation of 0..n-1")
    for i in range(n):
        u, v = order[i], order[(i + 1) % n]
        if not T.adj[u, v]:
            raise InvalidCertificate(i, f"edge {u}->{v} at position {i} is reversed")


def is_valid_certificate(T: Tournament, cert: HamiltonCertificate) -> bool:
    try:
        check_certificate(T, cert)
    except InvalidCertificate:
        return False
    return True


def reach_on_mask(rows: list[int], mask: int, start_mask: int) -> int:
    """Bitset BFS: vertices of ``mask`` reachable from the ``start_mask`` set
    (which is included) along the ``rows`` adjacency bitsets."""
    reached = start_mask & mask
    frontier = reached
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= rows[v]
        frontier = nxt & mask & ~reached
        reached |= frontier
    return reached


def strong_on_mask(out_rows: list[int], in_rows: list[int], mask: int) -> bool:
    """Is the sub-digraph induced on the ``mask`` vertices strongly connected?

    Strong connectivity holds iff every vertex is reachable from one fixed
    vertex and that vertex is reachable from every vertex, hence one
    forward and one backward BFS suffice. Empty masks count as strong.
    """
    if mask == 0:
        return True
    start = mask & -mask
    if reach_on_mask(out_rows, mask, start) != mask:
        return False
    return reach_on_mask(in_rows, mask, start) == mask


def strongly_connected(T: Tournament) -> bool:
    return strong_on_mask(T.out_masks, T.in_masks, (1 << T.n) - 1)


def is_hamiltonian(T: Tournament) -> bool:
    """True iff n >= 3 and T is strongly connected.

    Tournaments with n <= 2 are non-Hamiltonian by convention: a directed
    cycle in a digon-free digraph needs length >= 3.
    """
    return T.n >= 3 and strongly_connected(T)


@dataclass(frozen=True)
class SccDecomposition:
    """Strongly connected components with the condensation's (unique) order.

    ``topological_order`` lists component ids source-first: every edge
    between distinct components goes from the earlier to the later one.
    """

    component_of: tuple[int, ...]
    component_count: int
    topological_order: tuple[int, ...]


def scc(T: Tournament) -> SccDecomposition:
    """Iterative Tarjan decomposition (no recursion depth in n)."""
    n = T.n
    out = T.out_masks
    index = [-1] * n
    low = [0] * n
    on_stack = bytearray(n)
    stack: list[int] = []
    comp_of = [-1] * n
    counter = 0
    comp_count = 0
    full = (1 << n) - 1

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter_bits(out[root] & full))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = 1
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = 1
                    work.append((w, iter_bits(out[w])))
                    advanced = True
                    break
                if on_stack[w]:
                    if index[w] < low[v]:
                        low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    comp_of[w] = comp_count
                    if w == v:
                        break
                comp_count += 1

    # The condensation of a tournament is a transitive tournament, so any
    # single cross edge between two components decides their order.
    reps = [0] * comp_count
    for v in range(n - 1, -1, -1):
        reps[comp_of[v]] = v
    adj = T.adj
    order = sorted(range(comp_count),
                   key=cmp_to_key(lambda a, b: -1 if adj[reps[a], reps[b]] else 1))
    return SccDecomposition(tuple(comp_of), comp_count, tuple(order))


def hamilton_cycle(T: Tournament) -> HamiltonCertificate | None:
    """Explicit Hamilton cycle, or None when T is not Hamiltonian.

    O(n^2) construction: find a 3-cycle, then repeatedly either insert an
    outside vertex between a consecutive pair with flipped orientation, or
    splice a two-vertex bridge u -> w where the cycle dominates u and w
    dominates the cycle. The output always passes check_certificate.
    """
    n = T.n
    if n < 3 or not strongly_connected(T):
        return None
    out = T.out_masks
    _in = T.in_masks
    full = (1 << n) - 1

    # Initial 3-cycle v -> a -> b -> v: some edge leaves N+(v) into N-(v),
    # otherwise {v} + N+(v) would have no outgoing edges.
    v = 0
    a = b = -1
    for cand in iter_bits(out[v]):
        hit = out[cand] & _in[v]
        if hit:
            a = cand
            b = (hit & -hit).bit_length() - 1
            break
    if a < 0:
        raise AssertionError("strong tournament without a 3-cycle through vertex 0")
    cycle = [v, a, b]
    cycle_mask = (1 << v) | (1 << a) | (1 << b)

    while len(cycle) < n:
        rest = full & ~cycle_mask
        inserted = False
        for w in iter_bits(rest):
            if out[w] & cycle_mask and _in[w] & cycle_mask:
                # Orientation flips somewhere around the cycle.
                for i in range(len(cycle)):
                    c0 = cycle[i]
                    c1 = cycle[(i + 1) % len(cycle)]
                    if T.adj[c0, w] and T.adj[w, c1]:
                        cycle.insert(i + 1, w)
                        cycle_mask |= 1 << w
                        inserted = True
                        break
                break
        if inserted:
            continue
        # Every outside vertex now either dominates the cycle or is
        # dominated by it; strong connectivity forces a bridge edge
        # (dominated) -> (dominating), spliceable after any position.
        dominated = 0
        dominating = 0
        for w in iter_bits(rest):
            if _in[w] & cycle_mask:
                dominated |= 1 << w
            else:
                dominating |= 1 << w
        u = w = -1
        for cand in iter_bits(dominated):
            hit = out[cand] & dominating
            if hit:
                u = cand
                w = (hit & -hit).bit_length() - 1
                break
        if u < 0:
            raise AssertionError("strong tournament without a bridge past the cycle")
        cycle[1:1] = [u, w]
        cycle_mask |= (1 << u) | (1 << w)

    cert = HamiltonCertificate(tuple(cycle))
    check_certificate(T, cert)
    return cert


_LAYER_CACHE: dict[int, list[np.ndarray]] = {}


def _odd_mask_layers(n: int) -> list[np.ndarray]:
    """Masks containing bit 0, grouped by popcount; layers[k] has popcount k."""
    layers = _LAYER_CACHE.get(n)
    if layers is None:
        masks = np.arange(1, 1 << n, 2, dtype=np.int64)
        pop = np.bitwise_count(masks)
        layers = [masks[pop == k] for k in range(n + 1)]
        _LAYER_CACHE[n] = layers
    return layers


def brute_force_hamiltonian(T: Tournament) -> bool:
    """Exact Hamiltonicity by Held–Karp dynamic programming (n <= 20).

    f[mask] is the bitset of endpoints e reachable by a directed path from
    vertex 0 covering exactly ``mask``; a Hamilton cycle exists iff some
    full-cover endpoint has an edge back to 0. Layers are processed with
    vectorized gathers so the n * 2^n state space stays cheap in Python.
    """
    n = T.n
    if n > BRUTE_FORCE_MAX_N:
        raise TooLarge(n, BRUTE_FORCE_MAX_N)
    if n < 3:
        return False
    in_masks = np.array(T.in_masks, dtype=np.int64)
    f = np.zeros(1 << n, dtype=np.int64)
    f[1] = 1
    layers = _odd_mask_layers(n)
    for k in range(1, n):
        layer = layers[k]
        fk = f[layer]
        live = fk != 0
        if not live.any():
            continue
        layer = layer[live]
        fk = fk[live]
        for v in range(1, n):
            bit = 1 << v
            sel = ((layer & bit) == 0) & ((fk & in_masks[v]) != 0)
            if sel.any():
                targets = layer[sel] | bit
                f[targets] |= bit
    closing = int(f[(1 << n) - 1]) & T.in_masks[0]
    return closing != 0


def hamiltonian_batch(T: Tournament, inclusion: np.ndarray) -> np.ndarray:
    """Per-row Hamiltonicity of T[S] for a batch of subsets of V(T).

    ``inclusion`` is a (batch, n) boolean matrix; row r encodes subset
    S_r. Returns a boolean vector: T[S_r] Hamiltonian, with |S| <= 2
    counting as non-Hamiltonian.

    Kernel: out-scores of the members inside S_r come from one matrix
    product; T[S_r] is strongly connected iff every proper prefix of the
    ascending score sequence sums to strictly more than k(k-1)/2 (the
    bottom-k vertices would otherwise form a dominated set). Exact in
    integer arithmetic: all counts are far below float32's 2^24 limit.
    """
    if inclusion.ndim != 2 or inclusion.shape[1] != T.n:
        raise ValueError(f"inclusion must be (batch, {T.n}), got {inclusion.shape}")
    n = T.n
    members = inclusion.astype(np.float32, copy=False)
    adj_t = np.ascontiguousarray(T.adj.T, dtype=np.float32)
    scores = (members @ adj_t).astype(np.int32)
    sizes = inclusion.sum(axis=1, dtype=np.int64)

    big = np.int32(1 << 22)
    scores = np.where(inclusion, scores, big)
    scores.sort(axis=1)
    prefix = scores.cumsum(axis=1, dtype=np.int64)

    k = np.arange(1, n, dtype=np.int64)
    triangular = k * (k - 1) // 2
    # Landau: prefix[k-1] >= tri(k) always; equality at some k < |S| means
    # the k lowest-score members have all out-edges among themselves.
    tie = prefix[:, : n - 1] == triangular
    in_range = (k - 1) < (sizes[:, None] - 1)
    not_strong = (tie & in_range).any(axis=1)
    return (sizes >= 3) & ~not_strong


def hamiltonian_on_subset(T: Tournament, S: VertexSubset) -> bool:
    """is_hamiltonian(T[S]) without materializing the induced tournament."""
    if len(S) < 3:
        return False
    return strong_on_mask(T.out_masks, T.in_masks, S.mask)
