"""Matroid core: axioms, families, operations, connections, minors."""

import itertools

import pytest

from golden import DUAL_PLANE_RANK3_QUADS, HOUSE_CIRCUITS
from voamat import (InputError, Matroid, PreconditionError, check_axioms,
                    connect, derived_families, direct_sum, dual, fano,
                    fano_dual, from_circuits, graphic_matroid, has_minor,
                    house, is_isomorphic, merge_elements,
                    parallel_connection, relax_circuit_hyperplane, scale_rank,
                    series_connection, standard, two_sum, uniform,
                    vector_matroid, wheel, whirl)
from voamat.families import house_graph, wheel_graph
from voamat.matroid import minor_witness, popcount


def brute_rank_from_circuits(labels, circuits, subset):
    """Independent oracle: rank = size of the largest subset containing
    no circuit, by direct enumeration."""
    circuits = [frozenset(c) for c in circuits]
    best = 0
    items = list(subset)
    for k in range(len(items), -1, -1):
        for combo in itertools.combinations(items, k):
            s = set(combo)
            if not any(c <= s for c in circuits):
                best = k
                break
        if best:
            break
    return best


class TestCheckAxioms:
    def test_house_rank_table_clean(self):
        assert check_axioms(house().table) == []
        assert house().rank([4, 5, 6]) == 2
        assert house().rank([1, 2, 3, 4]) == 3

    def test_free_rank_clean(self):
        table = [popcount(m) for m in range(32)]
        assert check_axioms(table) == []

    def test_oversized_singleton_pair_is_flagged(self):
        table = [popcount(m) for m in range(16)]
        table[0b0011] = 3  # r({1,2}) = 3 > |{1,2}|
        violations = check_axioms(table)
        assert any(v.axiom == "0<=r(A)<=|A|" and v.witnesses == ((1, 2),)
                   for v in violations)

    def test_monotonicity_and_submodularity_witnessed(self):
        table = [popcount(m) for m in range(8)]
        table[0b111] = 1  # below r({1,2}) = 2
        violations = check_axioms(table)
        assert any(v.axiom == "monotonicity" for v in violations)

    def test_mapping_input_must_be_total(self):
        with pytest.raises(InputError):
            check_axioms({0: 0, 1: 1}, n=2)


class TestFromCircuits:
    def test_house_circuits_reproduce_rank_table(self):
        m = from_circuits([1, 2, 3, 4, 5, 6], HOUSE_CIRCUITS)
        assert m == house()

    def test_no_circuits_gives_free_matroid(self):
        m = from_circuits([1, 2, 3], [])
        assert all(m.table[mask] == popcount(mask) for mask in range(8))

    @pytest.mark.parametrize("t,n", [(1, 3), (2, 4), (2, 5), (3, 5)])
    def test_all_t_plus_1_subsets_give_uniform(self, t, n):
        labels = list(range(1, n + 1))
        circuits = list(itertools.combinations(labels, t + 1))
        m = from_circuits(labels, circuits)
        # oracle: brute-force rank of every subset from the circuit list
        for k in range(n + 1):
            for subset in itertools.combinations(labels, k):
                assert m.rank(subset) == brute_rank_from_circuits(
                    labels, circuits, subset) == min(t, k)

    def test_containment_rejected(self):
        with pytest.raises(InputError):
            from_circuits([1, 2, 3], [[1, 2], [1, 2, 3]])

    def test_elimination_axiom_enforced(self):
        # {1,2} and {1,3} share 1 but no circuit inside {2,3}
        with pytest.raises(InputError, match="elimination"):
            from_circuits([1, 2, 3], [[1, 2], [1, 3]])


class TestDerivedFamilies:
    def test_house_bases(self):
        fams = derived_families(house())
        got = {frozenset(b) for b in fams.bases}
        want = {frozenset(c) for c in itertools.combinations(range(1, 7), 4)
                if set(c) != {1, 2, 3, 4} and not {4, 5, 6} <= set(c)}
        assert got == want
        assert {frozenset(c) for c in fams.circuits} == \
            {frozenset(c) for c in HOUSE_CIRCUITS}

    @pytest.mark.parametrize("t,n", [(2, 4), (2, 5), (3, 5)])
    def test_uniform_circuits_are_t_plus_1_subsets(self, t, n):
        fams = derived_families(uniform(t, n))
        assert {frozenset(c) for c in fams.circuits} == \
            {frozenset(c) for c in itertools.combinations(range(1, n + 1), t + 1)}

    def test_free_matroid_families(self):
        m = from_circuits([1, 2, 3], [])
        fams = derived_families(m)
        assert len(fams.circuits) == 0
        assert [c for (c,) in fams.coloops] == [1, 2, 3]
        assert len(fams.loops) == 0

    def test_loops_and_coloops_consistent_with_circuits(self):
        # a matroid with a loop: single self-loop edge in a graph
        m = graphic_matroid([(0, 0), (0, 1)], ["l", "e"])
        fams = derived_families(m)
        assert [l for (l,) in fams.loops] == ["l"]
        assert [c for (c,) in fams.coloops] == ["e"]


class TestConnectivity:
    def test_house_connected(self):
        assert house().is_connected()

    def test_u12_connected(self):
        assert uniform(1, 2).is_connected()

    def test_direct_sum_disconnected(self):
        m = direct_sum(uniform(1, 2), uniform(1, 2))
        # oracle: no circuit of the sum crosses the two halves
        circuits = derived_families(m).circuits
        for c in circuits:
            assert set(c) <= {1, 2} or set(c) <= {3, 4}
        assert not m.is_connected()

    def test_single_element_rejected(self):
        with pytest.raises(PreconditionError):
            uniform(1, 1).is_connected()


class TestMinorsAndDual:
    def test_house_deletion_is_u34(self):
        m = house().minor(delete=[5, 6])
        assert m.is_uniform() == 3 and m.labels == (1, 2, 3, 4)

    def test_then_contraction_is_u23(self):
        m = house().minor(delete=[5, 6]).minor(contract=[4])
        assert m.is_uniform() == 2 and m.labels == (1, 2, 3)

    def test_identity_minor(self):
        assert house().minor() == house()

    def test_minor_composition(self):
        m = wheel(3)
        assert m.minor(delete=["a1"]).minor(contract=["b2"]) == \
            m.minor(delete=["a1"], contract=["b2"])

    def test_overlapping_sets_rejected(self):
        with pytest.raises(InputError):
            house().minor(delete=[4], contract=[4])

    def test_dual_formula_oracle(self):
        m = house()
        d = m.dual()
        full = m.full_mask
        for mask in range(1 << m.n):
            assert d.table[mask] == popcount(mask) - m.full_rank + \
                m.table[full ^ mask]

    def test_dual_involution(self):
        for m in (house(), uniform(2, 5), fano(), wheel(3), whirl(3)):
            assert m.dual().dual() == m

    def test_u24_self_dual(self):
        assert uniform(2, 4).dual() == uniform(2, 4)

    def test_dual_u25_is_u35(self):
        assert uniform(2, 5).dual() == uniform(3, 5)

    def test_fano_dual_rank3_quads(self):
        fd = fano().dual()
        for a in itertools.combinations(range(1, 8), 4):
            expected = 3 if set(a) in DUAL_PLANE_RANK3_QUADS else 4
            assert fd.rank(a) == expected
        for k in (1, 2, 3):
            for a in itertools.combinations(range(1, 8), k):
                assert fd.rank(a) == k
        assert fd == fano_dual()


class TestStandardFamilies:
    @pytest.mark.parametrize("kind,params", [
        ("uniform", {"t": 2, "n": 4}),
        ("fano", {}),
        ("fano_dual", {}),
        ("wheel", {"r": 3}),
        ("whirl", {"r": 3}),
        ("house", {}),
    ])
    def test_every_standard_matroid_passes_axioms(self, kind, params):
        m = standard(kind, **params)
        assert check_axioms(m.table, m.n, m.labels) == []

    def test_uniform_bases(self):
        fams = derived_families(uniform(2, 4))
        assert {frozenset(b) for b in fams.bases} == \
            {frozenset(c) for c in itertools.combinations(range(1, 5), 2)}

    def test_whirl2_is_u24(self):
        assert whirl(2).is_uniform() == 2

    def test_whirl_from_relaxation(self):
        w = wheel(3)
        rim = ("a1", "a2", "a3")
        relaxed = relax_circuit_hyperplane(w, rim)
        assert relaxed == whirl(3)
        assert relaxed.rank(rim) == w.rank(rim) + 1
        # bases gain exactly the rim
        b_before = {frozenset(b) for b in derived_families(w).bases}
        b_after = {frozenset(b) for b in derived_families(relaxed).bases}
        assert b_after == b_before | {frozenset(rim)}

    def test_relax_rejects_non_circuit(self):
        with pytest.raises(PreconditionError):
            relax_circuit_hyperplane(wheel(3), ("a1", "a2"))

    def test_whirl_chain_contract_delete(self):
        for r in (3, 4):
            m = whirl(r).minor(delete=[f"b{r}"], contract=[f"a{r}"])
            assert is_isomorphic(m, whirl(r - 1))

    def test_invalid_params(self):
        with pytest.raises(InputError):
            uniform(5, 4)
        with pytest.raises(InputError):
            standard("uniform", t=1)


class TestVectorAndGraphic:
    def test_house_three_ways(self):
        from golden import HOUSE_GF2_MATRIX
        edges, labels = house_graph()
        assert graphic_matroid(edges, labels) == house()
        assert vector_matroid(HOUSE_GF2_MATRIX, 2) == house()

    def test_identity_matrix_is_free(self):
        m = vector_matroid([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 2)
        assert all(m.table[mask] == popcount(mask) for mask in range(8))

    def test_parallel_columns_over_gf3(self):
        m = vector_matroid([[1, 1], [0, 0]], 3)
        assert m.is_uniform() == 1 and m.n == 2

    def test_wheel_graph_is_wheel_matroid(self):
        edges, labels = wheel_graph(3)
        assert graphic_matroid(edges, labels) == wheel(3)

    def test_self_loop_is_a_loop(self):
        m = graphic_matroid([(0, 0)], ["x"])
        assert m.loops == ("x",)

    def test_gf4_needs_element_codes(self):
        with pytest.raises(InputError):
            vector_matroid([[5, 1], [1, 0]], 4)

    def test_rational_mode(self):
        m = vector_matroid([[2, 4], [1, 2]], None)
        assert m.is_uniform() == 1  # proportional columns


class TestConnections:
    def setup_method(self):
        self.u34 = uniform(3, 4)
        self.u23 = uniform(2, 3).relabel({1: 4, 2: 5, 3: 6})

    def test_series_is_u56(self):
        s = series_connection(self.u34, 4, self.u23, 4)
        assert s.is_uniform() == 5 and s.labels == (1, 2, 3, 4, 5, 6)

    def test_parallel_is_house(self):
        p = parallel_connection(self.u34, 4, self.u23, 4)
        assert p == house() or (p.labels == house().labels
                                and p.table == house().table)

    def test_rank_formulas(self):
        s = series_connection(self.u34, 4, self.u23, 4)
        p = parallel_connection(self.u34, 4, self.u23, 4)
        assert s.full_rank == 3 + 2
        assert p.full_rank == 3 + 2 - 1

    def test_direct_sum_rank(self):
        d = direct_sum(self.u34, self.u23)
        assert d.full_rank == 5 and d.n == 7

    def test_two_sum_equals_both_compositions(self):
        s = series_connection(self.u34, 4, self.u23, 4)
        p = parallel_connection(self.u34, 4, self.u23, 4)
        t = two_sum(self.u34, 4, self.u23, 4)
        joint = s.meta["joint"]
        assert s.minor(contract=[joint]) == t
        assert p.minor(delete=[joint]) == t

    def test_base_point_must_not_be_coloop(self):
        free = from_circuits([1, 2], [])
        with pytest.raises(PreconditionError):
            series_connection(free, 1, self.u23, 4)

    def test_label_collision_gets_fresh_labels(self):
        p = parallel_connection(uniform(2, 3), 1, uniform(2, 3), 1)
        assert len(set(p.labels)) == p.n == 5
        assert p.meta["relabeled"]  # side-2 labels 2,3 collided

    def test_connect_dispatch(self):
        assert connect("direct_sum", self.u34, None, self.u23, None).n == 7
        with pytest.raises(InputError):
            connect("direct_sum", self.u34, 4, self.u23, 4)
        with pytest.raises(InputError):
            connect("bogus", self.u34, 4, self.u23, 4)


def brute_has_uniform_minor(m, t, k):
    """Independent oracle for minor detection with a uniform target."""
    labels = list(m.labels)
    for removed in itertools.combinations(labels, m.n - k):
        rest = [l for l in labels if l not in removed]
        for dsize in range(len(removed) + 1):
            for del_set in itertools.combinations(removed, dsize):
                con_set = [l for l in removed if l not in del_set]
                sub = m.minor(delete=del_set, contract=con_set)
                if all(sub.rank(a) == min(t, len(a))
                       for r in range(k + 1)
                       for a in itertools.combinations(rest, r)):
                    return True
    return False


class TestMinorDetection:
    def test_whirl3_has_u24_minor(self):
        assert has_minor(whirl(3), uniform(2, 4))
        assert brute_has_uniform_minor(whirl(3), 2, 4)

    def test_self_minor(self):
        assert has_minor(house(), house())

    def test_wheel4_has_no_u24_minor(self):
        assert not has_minor(wheel(4), uniform(2, 4))
        assert not brute_has_uniform_minor(wheel(4), 2, 4)

    def test_witness_is_deterministic_and_valid(self):
        w = minor_witness(whirl(3), uniform(2, 4))
        assert w is not None
        dele, cont = w
        got = whirl(3).minor(delete=dele, contract=cont)
        assert is_isomorphic(got, uniform(2, 4))
        assert minor_witness(whirl(3), uniform(2, 4)) == w

    def test_fano_is_minor_of_its_extension(self):
        # direct sum contains both parts as minors
        d = direct_sum(fano(), uniform(1, 2))
        assert has_minor(d, fano())


class TestIsomorphism:
    def test_relabel_is_isomorphic(self):
        m = house()
        r = m.relabel({1: "x", 4: "y"})
        assert is_isomorphic(m, r)

    def test_different_matroids_are_not(self):
        assert not is_isomorphic(uniform(2, 4), wheel(2))
        assert not is_isomorphic(fano(), fano_dual())

    def test_wheel_whirl_differ(self):
        assert not is_isomorphic(wheel(3), whirl(3))


class TestPolymatroid:
    def test_merge_then_expand_scaling(self):
        doubled = scale_rank(uniform(1, 2), 2)
        assert doubled.element_rank(1) == 2
        assert doubled.full_rank == 2

    def test_merged_uniform_rank_values(self):
        p = merge_elements(uniform(2, 5), [[1, 2], [3], [4], [5]])
        assert p.element_rank(1) == 2
        assert p.full_rank == 2
        assert p.rank([2, 3]) == 2
