"""Theta maps, relative commutant dimensions, principal and dual graphs."""

from __future__ import annotations

import random

import pytest

from sfw.config import DEFAULT
from sfw.corpus import builtin_cases, case_by_name
from sfw.errors import CapExceededError, PreconditionError
from sfw.groupalgebra import GroupAlgebraElement
from sfw.permgroup import parse_cycle_string, right_coset_data
from sfw.standard_invariant import (
    IN_GROUP,
    IN_SUBGROUP,
    ThetaMap,
    action_on_tuples,
    brute_force_commutant_dim,
    dual_principal_graph,
    principal_graph,
    relative_commutant_dim,
    stabilizer_matches_intersection,
    theta_entry,
    theta_matrix_product,
)


def perm(degree, text):
    return parse_cycle_string(degree, text)


def all_tuples(n, k):
    out = [()]
    for _ in range(k):
        out = [t + (i,) for t in out for i in range(n)]
    return out


def oracle_fits(case, k):
    t = case.subgroup.order * case.index ** k
    return case.group.order * t <= DEFAULT.oracle_cap


# ---------------------------------------------------------------- theta maps


def test_theta_values_by_hand():
    # S3 over <(0 1)>: representatives (), (0 2), (1 2).  For g = (0 1) the
    # entry at row (1 2), column (0 2) is (1 2)(0 1)(0 2) = (0 1) itself, and
    # the entry at row (), column (0 2) falls outside the subgroup.
    case = case_by_name("s3-flip")
    cosets = right_coset_data(case.group, case.subgroup)
    g = perm(3, "(0 1)")
    hit = theta_entry(g, (2,), (1,), cosets)
    assert hit == GroupAlgebraElement.from_perm(case.group, perm(3, "(0 1)"))
    assert theta_entry(g, (0,), (1,), cosets).is_zero()
    # Depth two: representative products telescope, the survivor at
    # ((2, 2), (1, 1)) is again (0 1).
    hit2 = theta_entry(g, (2, 2), (1, 1), cosets)
    assert hit2 == GroupAlgebraElement.from_perm(case.group, perm(3, "(0 1)"))
    assert theta_entry(g, (0, 0), (1, 1), cosets).is_zero()


def test_action_identity_and_composition():
    rng = random.Random(7001)
    for case in builtin_cases():
        G = case.group
        cosets = right_coset_data(G, case.subgroup)
        e = G.elements[0]
        for k in (1, 2):
            tuples = all_tuples(len(cosets.reps), k)
            for t in tuples:
                assert action_on_tuples(e, t, cosets) == t
            for _ in range(10):
                g = G.elements[rng.randrange(G.order)]
                h = G.elements[rng.randrange(G.order)]
                t = tuples[rng.randrange(len(tuples))]
                via_h = action_on_tuples(h, t, cosets)
                lhs = action_on_tuples(g, via_h, cosets)
                rhs = action_on_tuples(g * h, t, cosets)
                assert lhs == rhs


def test_action_at_depth_one_is_right_coset_multiplication():
    for case in builtin_cases():
        cosets = right_coset_data(case.group, case.subgroup)
        for g in case.group.elements:
            for j, rep in enumerate(cosets.reps):
                (i,) = action_on_tuples(g, (j,), cosets)
                assert cosets.coset_index(rep * g.inv()) == i


def test_theta_matrix_shape_and_consistency():
    # ThetaMap.entry cross-checks the nested-expectation route against the
    # closed form internally, so evaluating it is itself the equality test.
    rng = random.Random(7002)
    for case in builtin_cases():
        G = case.group
        cosets = right_coset_data(G, case.subgroup)
        for k in (1, 2):
            if not oracle_fits(case, k):
                continue
            theta = ThetaMap(cosets, k)
            tuples = all_tuples(len(cosets.reps), k)
            for _ in range(50):
                g = G.elements[rng.randrange(G.order)]
                mat = theta.matrix(g)
                assert len(mat) == len(tuples)
                for (i_t, j_t), val in mat.items():
                    assert i_t == action_on_tuples(g, j_t, cosets)
                    assert val == theta.entry(g, i_t, j_t)
                    assert not val.is_zero()
                # A sample of off-pattern entries vanish.
                for _ in range(5):
                    i_t = tuples[rng.randrange(len(tuples))]
                    j_t = tuples[rng.randrange(len(tuples))]
                    if i_t != action_on_tuples(g, j_t, cosets):
                        assert theta.entry(g, i_t, j_t).is_zero()


def test_theta_is_multiplicative():
    rng = random.Random(7003)
    for name in ("s3-flip", "s3-a3", "s4-s3", "a4-v4"):
        case = case_by_name(name)
        G = case.group
        cosets = right_coset_data(G, case.subgroup)
        for k in (1, 2):
            if not oracle_fits(case, k):
                continue
            theta = ThetaMap(cosets, k)
            for _ in range(10):
                g = G.elements[rng.randrange(G.order)]
                h = G.elements[rng.randrange(G.order)]
                prod = theta_matrix_product(theta.matrix(g), theta.matrix(h))
                assert prod == theta.matrix(g * h)


def test_theta_rejects_bad_input():
    case = case_by_name("s3-flip")
    cosets = right_coset_data(case.group, case.subgroup)
    g = perm(3, "(0 1)")
    with pytest.raises(PreconditionError):
        theta_entry(g, (0, 0), (1,), cosets)
    with pytest.raises(PreconditionError):
        action_on_tuples(g, (99,), cosets)
    with pytest.raises(CapExceededError):
        ThetaMap(cosets, DEFAULT.theta_k_cap + 1)


# ------------------------------------------------- relative commutant sizes


def test_commutant_dims_against_hand_values():
    dims = {}
    for name in ("s3-flip", "s4-s3"):
        case = case_by_name(name)
        G, H = case.group, case.subgroup
        row = []
        for k in (1, 2, 3):
            row.append(relative_commutant_dim(G, H, H, k, IN_SUBGROUP))
            row.append(relative_commutant_dim(G, H, H, k, IN_GROUP))
        dims[name] = tuple(row)
    assert dims["s3-flip"] == (2, 5, 14, 41, 122, 365)
    assert dims["s4-s3"] == (2, 5, 15, 51, 187, 715)


def test_commutant_dim_equals_brute_force():
    for case in builtin_cases():
        G, H = case.group, case.subgroup
        for G0 in (H, G):
            for side in (IN_SUBGROUP, IN_GROUP):
                fast = relative_commutant_dim(G, G0, H, 1, side)
                slow = brute_force_commutant_dim(G, G0, H, 1, side)
                assert fast == slow
    # Depth two where the cap allows the dense kernel computation.
    case = case_by_name("s3-flip")
    G, H = case.group, case.subgroup
    for side in (IN_SUBGROUP, IN_GROUP):
        assert relative_commutant_dim(G, H, H, 2, side) == brute_force_commutant_dim(
            G, H, H, 2, side
        )


def path_count_dims(graph, steps):
    """Sum-of-squares path counts from the base vertex, one value per step."""
    B = [[0] * len(graph.odd) for _ in graph.even]
    for i, j, m in graph.edges:
        B[i][j] += m
    start = [1 if v.label == graph.designated else 0 for v in graph.even]
    vec, on_even, out = start, True, []
    for _ in range(steps):
        if on_even:
            vec = [
                sum(B[i][j] * vec[i] for i in range(len(graph.even)))
                for j in range(len(graph.odd))
            ]
        else:
            vec = [
                sum(B[i][j] * vec[j] for j in range(len(graph.odd)))
                for i in range(len(graph.even))
            ]
        on_even = not on_even
        out.append(sum(x * x for x in vec))
    return out


def test_commutant_dims_match_graph_path_counts():
    # Walks on the principal graph starting at the base vertex enumerate the
    # tower of relative commutants over the subgroup side; walks on the dual
    # graph enumerate the tower over the group side.
    for case in builtin_cases():
        G, H = case.group, case.subgroup
        sub_tower = path_count_dims(principal_graph(G, H), 6)
        grp_tower = path_count_dims(dual_principal_graph(G, H), 6)
        for k in (1, 2):
            if not oracle_fits(case, k):
                continue
            assert relative_commutant_dim(G, H, H, k, IN_SUBGROUP) == sub_tower[2 * k - 1]
            assert relative_commutant_dim(G, H, H, k, IN_GROUP) == sub_tower[2 * k]
            assert relative_commutant_dim(G, G, H, k, IN_SUBGROUP) == grp_tower[2 * k - 2]
            assert relative_commutant_dim(G, G, H, k, IN_GROUP) == grp_tower[2 * k - 1]


def test_depth_one_subgroup_side_counts_double_cosets():
    for case in builtin_cases():
        G, H = case.group, case.subgroup
        dim = relative_commutant_dim(G, H, H, 1, IN_SUBGROUP)
        assert dim <= case.index + 1


def test_commutant_rejects_bad_side():
    case = case_by_name("s3-flip")
    with pytest.raises(PreconditionError):
        relative_commutant_dim(case.group, case.subgroup, case.subgroup, 1, "sideways")
    with pytest.raises(PreconditionError):
        relative_commutant_dim(case.group, case.subgroup, case.subgroup, 0, IN_GROUP)


def test_stabilizers_match_intersections():
    for case in builtin_cases():
        assert stabilizer_matches_intersection(case.group, case.subgroup)


# ------------------------------------------------------------------- graphs


def test_principal_graph_of_s3_flip_is_the_five_vertex_path():
    case = case_by_name("s3-flip")
    g = principal_graph(case.group, case.subgroup)
    assert [v.label for v in g.even] == ["K1:chi0", "K1:chi1", "K2:chi0"]
    assert [v.label for v in g.odd] == ["H:chi0", "H:chi1"]
    assert g.edges == ((0, 0, 1), (1, 1, 1), (2, 0, 1), (2, 1, 1))
    assert g.designated == "K1:chi1"
    assert g.marked_odd == "H:chi1"
    assert abs(g.norm_squared - 3.0) < 1e-6
    # Path shape: every vertex has degree at most two, exactly two ends.
    degs = [g.degree_of("even", i) for i in range(len(g.even))]
    degs += [g.degree_of("odd", j) for j in range(len(g.odd))]
    assert sorted(degs) == [1, 1, 2, 2, 2]


def test_dual_graph_of_s3_flip_is_the_five_vertex_path():
    case = case_by_name("s3-flip")
    g = dual_principal_graph(case.group, case.subgroup)
    assert [v.label for v in g.even] == ["G:chi0", "G:chi1", "G:chi2"]
    assert [(v.label, v.degree) for v in g.even] == [
        ("G:chi0", 1),
        ("G:chi1", 1),
        ("G:chi2", 2),
    ]
    assert [v.label for v in g.odd] == ["H:chi0", "H:chi1"]
    assert g.edges == ((0, 0, 1), (1, 1, 1), (2, 0, 1), (2, 1, 1))
    assert g.designated == "G:chi1"
    assert abs(g.norm_squared - 3.0) < 1e-6


def test_principal_graph_of_a4_v4_is_a_three_pointed_star():
    case = case_by_name("a4-v4")
    g = principal_graph(case.group, case.subgroup)
    assert [v.label for v in g.even] == ["K1:chi3", "K2:chi3", "K3:chi3"]
    assert [v.label for v in g.odd] == ["H:chi3"]
    assert g.edges == ((0, 0, 1), (1, 0, 1), (2, 0, 1))
    assert abs(g.norm_squared - 3.0) < 1e-6


def test_graph_norms_equal_the_index():
    for case in builtin_cases():
        for build in (principal_graph, dual_principal_graph):
            g = build(case.group, case.subgroup)
            assert abs(g.norm_squared - case.index) < 1e-6


def test_graphs_are_connected_from_the_designated_vertex():
    for case in builtin_cases():
        for build in (principal_graph, dual_principal_graph):
            g = build(case.group, case.subgroup)
            adj = {v.label: set() for v in list(g.even) + list(g.odd)}
            for i, j, _ in g.edges:
                a, b = g.even[i].label, g.odd[j].label
                adj[a].add(b)
                adj[b].add(a)
            seen, frontier = {g.designated}, [g.designated]
            while frontier:
                nxt = []
                for lbl in frontier:
                    for other in adj[lbl]:
                        if other not in seen:
                            seen.add(other)
                            nxt.append(other)
                frontier = nxt
            assert seen == set(adj)


def test_graph_dimension_bookkeeping():
    # Multiplicities weighted by degrees reconstruct degrees on both sides of
    # the restriction pairing: summed over an odd vertex's edges into one even
    # group block they give back the odd degree.
    for case in builtin_cases():
        g = principal_graph(case.group, case.subgroup)
        blocks = sorted({v.group_index for v in g.even})
        for j, odd in enumerate(g.odd):
            for block in blocks:
                total = sum(
                    m * g.even[i].degree
                    for i, jj, m in g.edges
                    if jj == j and g.even[i].group_index == block
                )
                if total:
                    assert total == odd.degree
