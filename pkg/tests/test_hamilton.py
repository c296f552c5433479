import numpy as np
import pytest
from conftest import (bfs_reachable, strongly_connected_by_bfs,
                      tournament_from_bits)
from hypothesis import given, settings
from hypothesis import strategies as st

from tourneylab import (HamiltonCertificate, Tournament, VertexSubset,
                        brute_force_hamiltonian, check_certificate,
                        extremal_theorem1_even, hamilton_cycle,
                        hamiltonian_batch, hamiltonian_on_subset, induced,
                        is_hamiltonian, is_valid_certificate,
                        random_tournament, rotational_tournament, scc,
                        strongly_connected, transitive_tournament)
from tourneylab.errors import InvalidCertificate, TooLarge


def strong_tournaments(max_n=11):
    return (st.integers(3, max_n)
            .flatmap(lambda n: st.integers(0, 2 ** (n * (n - 1) // 2) - 1)
                     .map(lambda code: tournament_from_bits(n, code)))
            .filter(strongly_connected))


class TestScc:
    def test_triangle_single_component(self, triangle):
        assert scc(triangle).component_count == 1

    def test_transitive_source_to_sink(self):
        d = scc(transitive_tournament(5))
        assert d.component_count == 5
        # vertex 0 is the source, so its component leads the order
        assert [d.topological_order.index(d.component_of[v]) for v in range(5)] == list(range(5))

    def test_two_block_construction_oracle(self):
        # A -> B with 5-vertex rotational halves: exactly the two blocks
        T = extremal_theorem1_even(2)
        d = scc(T)
        assert d.component_count == 2
        first = d.topological_order[0]
        assert {v for v in range(10) if d.component_of[v] == first} == set(range(5))
        # cross-check components against mutual BFS reachability
        everyone = set(range(T.n))
        for v in range(T.n):
            mutual = {w for w in bfs_reachable(T, v, everyone)
                      if v in bfs_reachable(T, w, everyone)}
            assert mutual == {w for w in range(T.n)
                              if d.component_of[w] == d.component_of[v]}

    def test_components_match_mutual_reachability(self):
        rng = np.random.default_rng(88)
        everyone_cache = {}
        for _ in range(30):
            n = int(rng.integers(2, 25))
            T = random_tournament(n, int(rng.integers(0, 2**31)))
            d = scc(T)
            everyone = everyone_cache.setdefault(n, set(range(n)))
            for v in range(n):
                mutual = {w for w in bfs_reachable(T, v, everyone)
                          if v in bfs_reachable(T, w, everyone)}
                assert mutual == {w for w in range(n)
                                  if d.component_of[w] == d.component_of[v]}

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 9), st.integers(0, 2**36 - 1))
    def test_condensation_is_transitive(self, n, code):
        T = tournament_from_bits(n, code % 2 ** (n * (n - 1) // 2))
        d = scc(T)
        rank = {c: i for i, c in enumerate(d.topological_order)}
        assert sorted(rank) == list(range(d.component_count))
        for u in range(n):
            for v in range(n):
                cu, cv = d.component_of[u], d.component_of[v]
                if cu != cv and T.adj[u, v]:
                    assert rank[cu] < rank[cv]


class TestIsHamiltonian:
    def test_triangle(self, triangle):
        assert is_hamiltonian(triangle)

    def test_tiny_never_hamiltonian(self):
        assert not is_hamiltonian(transitive_tournament(1))
        assert not is_hamiltonian(transitive_tournament(2))

    def test_equals_component_count_one(self):
        for seed in range(40):
            T = random_tournament(12, seed)
            assert is_hamiltonian(T) == (scc(T).component_count == 1)

    def test_exhaustive_n_le_5_against_bfs_and_held_karp(self):
        for n in range(1, 6):
            for code in range(2 ** (n * (n - 1) // 2)):
                T = tournament_from_bits(n, code)
                expect = n >= 3 and strongly_connected_by_bfs(T)
                assert is_hamiltonian(T) == expect
                assert brute_force_hamiltonian(T) == expect

    def test_random_oracle_agreement(self):
        rng = np.random.default_rng(2024)
        for _ in range(300):
            n = int(rng.integers(4, 17))
            T = random_tournament(n, int(rng.integers(0, 2**32)))
            assert is_hamiltonian(T) == brute_force_hamiltonian(T)


class TestBruteForce:
    def test_triangle(self, triangle):
        assert brute_force_hamiltonian(triangle)

    def test_sink_vertex(self):
        # vertex 3 loses every edge, so no cycle covers it
        adj = np.zeros((4, 4), dtype=np.uint8)
        adj[0, 1] = adj[1, 2] = adj[2, 0] = 1
        adj[0, 3] = adj[1, 3] = adj[2, 3] = 1
        assert not brute_force_hamiltonian(Tournament(adj))

    def test_size_cap(self):
        with pytest.raises(TooLarge):
            brute_force_hamiltonian(transitive_tournament(21))


class TestHamiltonCycle:
    def test_triangle_rotation(self, triangle):
        cert = hamilton_cycle(triangle)
        assert cert is not None
        assert sorted(cert.order) == [0, 1, 2]
        check_certificate(triangle, cert)

    def test_transitive_none(self):
        assert hamilton_cycle(transitive_tournament(6)) is None

    def test_rotational_9(self):
        T = rotational_tournament(4)
        cert = hamilton_cycle(T)
        assert cert is not None
        check_certificate(T, cert)

    def test_present_iff_hamiltonian(self):
        for seed in range(60):
            T = random_tournament(10, seed)
            cert = hamilton_cycle(T)
            assert (cert is not None) == is_hamiltonian(T)
            if cert is not None:
                check_certificate(T, cert)

    @settings(max_examples=50, deadline=None)
    @given(strong_tournaments())
    def test_soundness_on_strong_tournaments(self, T):
        cert = hamilton_cycle(T)
        assert cert is not None
        check_certificate(T, cert)

    def test_large_instances(self):
        for seed in (0, 1):
            T = random_tournament(400, seed)
            if not is_hamiltonian(T):
                continue
            cert = hamilton_cycle(T)
            check_certificate(T, cert)


class TestCertificates:
    def test_text_round_trip(self):
        cert = HamiltonCertificate((0, 2, 1, 3))
        assert cert.to_text() == "0,2,1,3"
        assert HamiltonCertificate.from_text("0, 2, 1, 3\n") == cert

    def test_reversed_edge_position(self, triangle):
        with pytest.raises(InvalidCertificate) as exc:
            check_certificate(triangle, HamiltonCertificate((0, 2, 1)))
        assert exc.value.position == 0  # 0 -> 2 is the first reversed edge

    def test_not_a_permutation(self, triangle):
        assert not is_valid_certificate(triangle, HamiltonCertificate((0, 1, 1)))
        assert not is_valid_certificate(triangle, HamiltonCertificate((0, 1)))

    def test_translate_through_induced(self):
        T = random_tournament(12, seed=9)
        S = VertexSubset(12, [1, 3, 4, 7, 8, 10, 11])
        U = induced(T, S)
        cert = hamilton_cycle(U)
        if cert is not None:
            lifted = cert.translate(U.parent_labels)
            for i in range(len(lifted.order)):
                u = lifted.order[i]
                v = lifted.order[(i + 1) % len(lifted.order)]
                assert T.adj[u, v]


class TestBatchKernel:
    def test_matches_per_trial_route(self):
        rng = np.random.default_rng(77)
        for T in (random_tournament(30, 5), extremal_theorem1_even(4),
                  transitive_tournament(25), rotational_tournament(12)):
            inc = rng.random((300, T.n)) < 0.4
            fast = hamiltonian_batch(T, inc)
            for i in range(300):
                S = VertexSubset(T.n, np.flatnonzero(inc[i]))
                want = is_hamiltonian(induced(T, S)) if len(S) else False
                assert fast[i] == want

    def test_subset_shortcut_matches_induced(self):
        rng = np.random.default_rng(11)
        T = random_tournament(40, 13)
        for _ in range(100):
            S = VertexSubset(40, np.flatnonzero(rng.random(40) < 0.3))
            if len(S) == 0:
                assert not hamiltonian_on_subset(T, S)
            else:
                assert hamiltonian_on_subset(T, S) == is_hamiltonian(induced(T, S))

    def test_shape_check(self):
        T = rotational_tournament(2)
        with pytest.raises(ValueError):
            hamiltonian_batch(T, np.zeros((4, 3), dtype=bool))

    def test_all_subsets_of_small_parents(self):
        # every one of the 2^n subsets, checked against both other routes
        for seed in range(6):
            T = random_tournament(5, seed)
            inclusion = np.array([[m >> v & 1 for v in range(5)]
                                  for m in range(32)], dtype=bool)
            batch = hamiltonian_batch(T, inclusion)
            for m in range(32):
                members = [v for v in range(5) if m >> v & 1]
                if len(members) >= 1:
                    want = is_hamiltonian(induced(T, VertexSubset(5, members)))
                else:
                    want = False
                assert batch[m] == want
                if len(members) >= 3:
                    sub = induced(T, VertexSubset(5, members))
                    assert batch[m] == brute_force_hamiltonian(sub)
