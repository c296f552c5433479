"""Shared independent oracles for the test suite.

These deliberately avoid the package's optimized code paths: matching by
exhaustive recursion, reachability by plain per-vertex BFS over
adjacency lists, so they can referee the fast implementations.
"""

from __future__ import annotations

from collections import deque

import numpy as np
import pytest

from tourneylab import Tournament


def brute_force_max_matching(edges: list[tuple[int, int]]) -> int:
    """Maximum matching size by exhaustive assignment of left vertices."""
    lefts = sorted({u for u, _ in edges})
    nbrs = {u: [v for x, v in edges if x == u] for u in lefts}

    def go(i: int, used: frozenset) -> int:
        if i == len(lefts):
            return 0
        best = go(i + 1, used)  # leave lefts[i] unmatched
        for v in nbrs[lefts[i]]:
            if v not in used:
                best = max(best, 1 + go(i + 1, used | {v}))
        return best

    return go(0, frozenset())


def bfs_reachable(T: Tournament, start: int, allowed: set[int]) -> set[int]:
    """Plain queue BFS inside the ``allowed`` vertex set."""
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in range(T.n):
            if v in allowed and v not in seen and T.adj[u, v]:
                seen.add(v)
                queue.append(v)
    return seen


def strongly_connected_by_bfs(T: Tournament) -> bool:
    """Mutual reachability of every ordered pair, the slow way."""
    everyone = set(range(T.n))
    return all(bfs_reachable(T, v, everyone) == everyone for v in range(T.n))


def tournament_from_bits(n: int, code: int) -> Tournament:
    """Orient the pairs (i, j), i < j, by the bits of ``code``."""
    adj = np.zeros((n, n), dtype=np.uint8)
    bit = 0
    for i in range(n):
        for j in range(i + 1, n):
            if code >> bit & 1:
                adj[i, j] = 1
            else:
                adj[j, i] = 1
            bit += 1
    return Tournament(adj, _trusted=True)


@pytest.fixture(scope="session")
def triangle() -> Tournament:
    return Tournament(np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=np.uint8))
