"""Standard invariant data of a finite group-subgroup inclusion.

Given H <= G with right coset representatives g_1 = e, ..., g_t, every
element of the group algebra of G amplifies to a t^k x t^k matrix over the
algebra of H, indexed by k-tuples of coset indices.  This module computes
those matrix entries two independent ways (nested conditional expectations
versus a closed form gated by coset membership), the induced action of G
on index tuples, relative commutant dimensions, and the principal and dual
principal graphs with their operator norms.

Tuples are 0-based index vectors ordered lexicographically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .chartab import (
    character_table,
    multiplicity,
    permutation_character,
    restrict,
    trivial_character,
)
from .config import Config, DEFAULT
from .errors import (
    CapExceededError,
    InvariantViolationError,
    PreconditionError,
    SubgroupError,
)
from .groupalgebra import GroupAlgebraElement, conditional_expectation
from .permgroup import CosetData, Perm, PermGroup, right_coset_data, \
    _cached_cosets, _cached_double_cosets

IN_SUBGROUP = "in-L(H)"
IN_GROUP = "in-L(G)"
SIDES = (IN_SUBGROUP, IN_GROUP)


def _check_k(k: int, config: Config) -> None:
    if k < 1:
        raise PreconditionError("tuple length k=%d must be positive" % k)
    if k > config.theta_k_cap:
        raise CapExceededError(
            "tuple length k=%d exceeds cap %d" % (k, config.theta_k_cap))


class ThetaMap:
    """The amplification of the inclusion to tuple-indexed matrices."""

    def __init__(self, cosets: CosetData, k: int, config: Config = DEFAULT):
        _check_k(k, config)
        self.cosets = cosets
        self.k = k
        self.tuples = tuple(itertools.product(range(cosets.index), repeat=k))
        self.tuple_index = {tu: n for n, tu in enumerate(self.tuples)}
        self._prod = {}
        for tu in self.tuples:
            p = cosets.group.identity
            for i in tu:
                p = p * cosets.reps[i]
            self._prod[tu] = p

    def rep_product(self, tu) -> Perm:
        return self._prod[tuple(tu)]

    def entry(self, g: Perm, i_tuple, j_tuple) -> GroupAlgebraElement:
        """Matrix entry at (i_tuple, j_tuple) of the amplified u_g.

        Computed both by nested conditional expectations and by the
        closed form; the two must agree exactly.
        """
        i_tuple = tuple(i_tuple)
        j_tuple = tuple(j_tuple)
        if i_tuple not in self.tuple_index or j_tuple not in self.tuple_index:
            raise PreconditionError("tuple index out of range")
        if g not in self.cosets.group:
            raise PreconditionError("element is outside the ambient group")
        nested = self._entry_nested(g, i_tuple, j_tuple)
        closed = self._entry_closed(g, i_tuple, j_tuple)
        if nested != closed:
            raise InvariantViolationError(
                "amplification entry mismatch at g=%r i=%r j=%r: %r vs %r"
                % (g, i_tuple, j_tuple, nested, closed))
        return nested

    def _entry_nested(self, g: Perm, i_tuple, j_tuple) -> GroupAlgebraElement:
        G = self.cosets.group
        H = self.cosets.subgroup
        reps = self.cosets.reps
        y = GroupAlgebraElement.from_perm(G, g)
        for l in range(self.k - 1, -1, -1):
            left = GroupAlgebraElement.from_perm(G, reps[i_tuple[l]])
            right = GroupAlgebraElement.from_perm(G, reps[j_tuple[l]].inv())
            y = conditional_expectation(left * y * right, H)
        return y

    def _entry_closed(self, g: Perm, i_tuple, j_tuple) -> GroupAlgebraElement:
        H = self.cosets.subgroup
        reps = self.cosets.reps
        suffix_i = self.cosets.group.identity
        suffix_j = self.cosets.group.identity
        ok = True
        for l in range(self.k - 1, -1, -1):
            suffix_i = reps[i_tuple[l]] * suffix_i
            suffix_j = reps[j_tuple[l]] * suffix_j
            if (suffix_i * g) * suffix_j.inv() not in H:
                ok = False
                break
        if not ok:
            return GroupAlgebraElement.zero(H)
        w = self._prod[i_tuple] * g * self._prod[j_tuple].inv()
        return GroupAlgebraElement.from_perm(H, w)

    def matrix(self, g: Perm) -> dict:
        """Nonzero entries as {(i_tuple, j_tuple): element}.

        Exactly one nonzero entry per row and per column; the row index
        is the image of the column index under the tuple action.
        """
        act = {tu: action_on_tuples(g, tu, self.cosets, self.k)
               for tu in self.tuples}
        out = {}
        rows_seen = set()
        for j in self.tuples:
            i = act[j]
            value = self.entry(g, i, j)
            if value.is_zero():
                raise InvariantViolationError(
                    "expected nonzero entry at (%r, %r)" % (i, j))
            if i in rows_seen:
                raise InvariantViolationError("duplicate row in amplified matrix")
            rows_seen.add(i)
            out[(i, j)] = value
        return out


def theta_entry(g: Perm, i_tuple, j_tuple, cosets: CosetData,
                k: Optional[int] = None,
                config: Config = DEFAULT) -> GroupAlgebraElement:
    """Entry of the k-fold amplification of u_g; see ThetaMap.entry."""
    if k is None:
        k = len(tuple(i_tuple))
    if len(tuple(i_tuple)) != k or len(tuple(j_tuple)) != k:
        raise PreconditionError("tuple lengths must equal k")
    return ThetaMap(cosets, k, config).entry(g, i_tuple, j_tuple)


def action_on_tuples(g: Perm, j_tuple, cosets: CosetData,
                     k: Optional[int] = None,
                     config: Config = DEFAULT) -> tuple:
    """The image tuple i with amplified-u_g entry (i, j) nonzero.

    Left action of G on index tuples: solving coset membership
    conditions from the last coordinate backwards gives each i_l
    uniquely.  The defining conditions are re-checked before returning.
    """
    j_tuple = tuple(j_tuple)
    if k is None:
        k = len(j_tuple)
    _check_k(k, config)
    if len(j_tuple) != k:
        raise PreconditionError("tuple length must equal k")
    for i in j_tuple:
        if not 0 <= i < cosets.index:
            raise PreconditionError(
                "tuple entry %r outside coset range 0..%d" % (i, cosets.index - 1))
    reps = cosets.reps
    ginv = g.inv()
    out = [0] * k
    suffix_j = cosets.group.identity
    suffix_i = cosets.group.identity
    for l in range(k - 1, -1, -1):
        suffix_j = reps[j_tuple[l]] * suffix_j
        idx = cosets.coset_index(suffix_j * ginv * suffix_i.inv())
        out[l] = idx
        suffix_i = reps[idx] * suffix_i
    # re-check the defining membership conditions
    suffix_j = cosets.group.identity
    suffix_i = cosets.group.identity
    for l in range(k - 1, -1, -1):
        suffix_j = reps[j_tuple[l]] * suffix_j
        suffix_i = reps[out[l]] * suffix_i
        if cosets.coset_index(suffix_j * ginv) != cosets.coset_index(suffix_i):
            raise InvariantViolationError(
                "tuple action conditions failed at level %d" % l)
    return tuple(out)


def theta_matrix_product(m1: dict, m2: dict) -> dict:
    """Product of two sparse amplified matrices ({(i, j): element})."""
    by_row = {}
    for (i, j), v in m2.items():
        by_row.setdefault(i, []).append((j, v))
    out = {}
    for (i, j), v in m1.items():
        for (jj, w) in by_row.get(j, []):
            prod = v * w
            if (i, jj) in out:
                prod = out[(i, jj)] + prod
            if prod.is_zero():
                out.pop((i, jj), None)
            else:
                out[(i, jj)] = prod
    return out


# ---------------------------------------------------------------------------
# relative commutants

def _tuple_action_table(G0: PermGroup, cosets: CosetData, k: int,
                        config: Config) -> dict:
    """Action table of G0 on index k-tuples, flattened to point indices."""
    tuples = list(itertools.product(range(cosets.index), repeat=k))
    tup_idx = {tu: n for n, tu in enumerate(tuples)}
    table = {}
    for g in G0.elements:
        table[g] = tuple(tup_idx[action_on_tuples(g, tu, cosets, k, config)]
                         for tu in tuples)
    return table


def _sum_of_squared_multiplicities(G0: PermGroup, action_table: dict,
                                   size: int, config: Config) -> int:
    """dim of the commutant of the permutation representation on C^size."""
    chi = permutation_character(G0, action_table, size)
    tab = character_table(G0, config)
    total = 0
    for irr in tab.characters:
        m = multiplicity(chi, irr, config)
        total += m * m
    return total


def relative_commutant_dim(G: PermGroup, G0: PermGroup, H: PermGroup,
                           k: int, side: str,
                           config: Config = DEFAULT) -> int:
    """Dimension of the relative commutant of the amplified copy of G0.

    side selects where the commutant is formed: IN_SUBGROUP means inside
    the t^k x t^k matrices over the subgroup algebra, IN_GROUP inside
    matrices over the full group algebra.  With N and M the algebras of
    H and G, the four combinations (G0 in {H, G}) x side give the tower
    relative commutants N' or M' intersected with M_{2k-1} or M_{2k}.
    """
    if side not in SIDES:
        raise PreconditionError("side must be one of %r" % (SIDES,))
    _check_k(k, config)
    if not H.is_subgroup_of(G0) or not G0.is_subgroup_of(G):
        raise SubgroupError("need H <= G0 <= G")
    cosets = _cached_cosets(G, H)
    if side == IN_GROUP:
        table = _tuple_action_table(G0, cosets, k, config)
        return _sum_of_squared_multiplicities(
            G0, table, cosets.index ** k, config)
    # side == IN_SUBGROUP: orbit decomposition over single indices, then
    # the commutant of each stabilizer acting on (k-1)-tuples
    act1 = _tuple_action_table(G0, cosets, 1, config)
    seen = set()
    total = 0
    for i in range(cosets.index):
        if i in seen:
            continue
        orbit = {i}
        frontier = [i]
        while frontier:
            x = frontier.pop()
            for g in G0.generators:
                y = act1[g][x]
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        seen |= orbit
        stab_elems = [g for g in G0.elements if act1[g][i] == i]
        K = PermGroup(G.degree, stab_elems)
        if K.order * len(orbit) != G0.order:
            raise InvariantViolationError("orbit-stabilizer mismatch")
        if k == 1:
            total += 1
            continue
        sub_table = _tuple_action_table(K, cosets, k - 1, config)
        total += _sum_of_squared_multiplicities(
            K, sub_table, cosets.index ** (k - 1), config)
    return total


def stabilizer_matches_intersection(G: PermGroup, H: PermGroup) -> bool:
    """Stab_H(i) under the tuple action equals H intersect g_i^-1 H g_i."""
    cosets = _cached_cosets(G, H)
    act1 = _tuple_action_table(H, cosets, 1, DEFAULT)
    for i, rep in enumerate(cosets.reps):
        stab = {h for h in H.elements if act1[h][i] == i}
        conj = {rep.inv() * h * rep for h in H.elements}
        if stab != {h for h in H.elements if h in conj}:
            return False
    return True


# ---------------------------------------------------------------------------
# exact brute-force oracle for the same dimensions

def _rational_rank(rows) -> int:
    """Rank of a sparse rational matrix, exact Gaussian elimination.

    rows: iterable of {column: Fraction}.
    """
    pivots = {}
    rank = 0
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            c = min(row)
            if c in pivots:
                piv = pivots[c]
                factor = row[c] / piv[c]
                for cc, vv in piv.items():
                    nv = row.get(cc, Fraction(0)) - factor * vv
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
            else:
                pivots[c] = row
                rank += 1
                break
    return rank


def brute_force_commutant_dim(G: PermGroup, G0: PermGroup, H: PermGroup,
                              k: int, side: str,
                              config: Config = DEFAULT) -> int:
    """Same dimension as relative_commutant_dim, by literal linear algebra.

    The ambient space consists of tuple-indexed matrices whose (i, j)
    entry is an unknown scalar times u_{g_i-bar * g_j-bar^-1}; for
    side IN_SUBGROUP the entry must also land inside the subgroup.  The
    commutation equations against the amplified generators of G0 are
    expanded with honest group-algebra products and solved by exact
    rational elimination.
    """
    if side not in SIDES:
        raise PreconditionError("side must be one of %r" % (SIDES,))
    _check_k(k, config)
    if not H.is_subgroup_of(G0) or not G0.is_subgroup_of(G):
        raise SubgroupError("need H <= G0 <= G")
    cosets = _cached_cosets(G, H)
    t = cosets.index
    if G.order * t ** k > config.oracle_cap:
        raise CapExceededError(
            "oracle size %d exceeds cap %d" % (G.order * t ** k,
                                               config.oracle_cap))
    theta = ThetaMap(cosets, k, config)
    tuples = theta.tuples
    unknown = {}
    entry_perm = {}
    for a in tuples:
        for b in tuples:
            w = theta.rep_product(a) * theta.rep_product(b).inv()
            if side == IN_SUBGROUP and w not in H:
                continue
            entry_perm[(a, b)] = w
            unknown[(a, b)] = len(unknown)
    rows = []
    for g0 in G0.generators:
        mat = theta.matrix(g0)
        act = {j: i for (i, j) in mat}
        inv_act = {i: j for (i, j) in mat}
        for a in tuples:
            for b in tuples:
                # coefficient function of (x * Theta(g0) - Theta(g0) * x)_(a, b)
                expr = {}
                kk = act[b]
                if (a, kk) in unknown:
                    val = (GroupAlgebraElement.from_perm(G, entry_perm[(a, kk)])
                           * mat[(kk, b)])
                    for p, c in val.coeffs.items():
                        expr.setdefault(p, {})[unknown[(a, kk)]] = \
                            expr.get(p, {}).get(unknown[(a, kk)], Fraction(0)) \
                            + Fraction(c.real)
                ll = inv_act[a]
                if (ll, b) in unknown:
                    val = (mat[(a, ll)]
                           * GroupAlgebraElement.from_perm(G, entry_perm[(ll, b)]))
                    for p, c in val.coeffs.items():
                        cur = expr.setdefault(p, {})
                        cur[unknown[(ll, b)]] = \
                            cur.get(unknown[(ll, b)], Fraction(0)) \
                            - Fraction(c.real)
                for p, row in expr.items():
                    row = {c: v for c, v in row.items() if v}
                    if row:
                        rows.append(row)
    return len(unknown) - _rational_rank(rows)


# ---------------------------------------------------------------------------
# principal graphs

@dataclass(frozen=True)
class GraphVertex:
    """A vertex labeled by an irreducible character of a finite group."""

    label: str
    group_index: int
    irrep_index: int
    degree: int


@dataclass(frozen=True)
class BipartiteMultiGraph:
    """Connected bipartite multigraph with a designated even vertex.

    edges are (even_index, odd_index, multiplicity) triples.  The odd
    vertex carrying the trivial character is marked separately so both
    base points stay visible in emitted data.
    """

    even: tuple
    odd: tuple
    edges: tuple
    designated: str
    marked_odd: str
    norm_squared: float

    def adjacency(self) -> np.ndarray:
        B = np.zeros((len(self.even), len(self.odd)))
        for e, o, m in self.edges:
            B[e, o] += m
        return B

    def degree_of(self, side: str, index: int) -> int:
        total = 0
        for e, o, m in self.edges:
            if side == "even" and e == index:
                total += m
            if side == "odd" and o == index:
                total += m
        return total


def _power_iteration_norm_sq(B: np.ndarray, tol: float = 1e-12,
                             max_iter: int = 10 ** 4) -> float:
    """Largest eigenvalue of B B^T by deterministic power iteration."""
    M = B @ B.T
    n = M.shape[0]
    if n == 0:
        return 0.0
    v = np.ones(n) / np.sqrt(n)
    last = 0.0
    for _ in range(max_iter):
        w = M @ v
        norm = float(np.linalg.norm(w))
        if norm == 0.0:
            return 0.0
        v = w / norm
        lam = float(v @ (M @ v))
        if abs(lam - last) < tol:
            return lam
        last = lam
    return last


def _norm_in_jones_closure(x: float, tol: float) -> bool:
    from .indexarith import jones_spectrum_query

    verdict = jones_spectrum_query(x, tol)
    return verdict.kind in ("discrete", "continuous")


def _component(seed_even: int, n_even: int, n_odd: int, edges) -> tuple:
    """Vertex sets of the connected component containing an even seed."""
    adj_e = {i: set() for i in range(n_even)}
    adj_o = {i: set() for i in range(n_odd)}
    for e, o, m in edges:
        if m:
            adj_e[e].add(o)
            adj_o[o].add(e)
    even_in = {seed_even}
    odd_in = set()
    frontier_e = [seed_even]
    frontier_o = []
    while frontier_e or frontier_o:
        new_o = {o for e in frontier_e for o in adj_e[e]} - odd_in
        odd_in |= new_o
        frontier_o = list(new_o)
        new_e = {e for o in frontier_o for e in adj_o[o]} - even_in
        even_in |= new_e
        frontier_e = list(new_e)
    return even_in, odd_in


def _assemble_graph(even, odd, edges, designated_idx, marked_odd_idx,
                    config: Config) -> BipartiteMultiGraph:
    even_in, odd_in = _component(designated_idx, len(even), len(odd), edges)
    if marked_odd_idx not in odd_in:
        raise InvariantViolationError(
            "trivial odd vertex fell outside the designated component")
    even_map = {old: new for new, old in enumerate(sorted(even_in))}
    odd_map = {old: new for new, old in enumerate(sorted(odd_in))}
    kept_even = tuple(even[i] for i in sorted(even_in))
    kept_odd = tuple(odd[i] for i in sorted(odd_in))
    kept_edges = tuple(sorted((even_map[e], odd_map[o], m)
                              for e, o, m in edges
                              if m and e in even_in and o in odd_in))
    B = np.zeros((len(kept_even), len(kept_odd)))
    for e, o, m in kept_edges:
        B[e, o] += m
    norm_sq = _power_iteration_norm_sq(B)
    if not _norm_in_jones_closure(norm_sq, config.tol_norm):
        raise InvariantViolationError(
            "graph norm squared %r escapes the index spectrum closure"
            % norm_sq)
    return BipartiteMultiGraph(
        kept_even, kept_odd, kept_edges,
        even[designated_idx].label, odd[marked_odd_idx].label,
        norm_sq)


def principal_graph(G: PermGroup, H: PermGroup,
                    config: Config = DEFAULT) -> BipartiteMultiGraph:
    """Principal graph of the inclusion, from double coset stabilizers.

    Even vertices are irreducible characters of the stabilizers K_i of
    the double cosets, odd vertices are characters of H, and the edge
    multiplicity is the multiplicity of the even character inside the
    restriction of the odd one to K_i.  Only the connected component of
    the trivial characters is returned; the designated vertex is the
    trivial character of K_1 = H.
    """
    dc = _cached_double_cosets(G, H)
    h_tab = character_table(H, config)
    even = []
    even_rows = []
    designated_idx = None
    for i, K in enumerate(dc.stabilizers):
        k_tab = character_table(K, config)
        for j, rho in enumerate(k_tab.characters):
            label = "K%d:chi%d" % (i + 1, j)
            even.append(GraphVertex(label, i, j, int(round(
                rho.degree_value.real))))
            even_rows.append((i, rho))
            if i == 0 and j == k_tab.trivial_index():
                designated_idx = len(even) - 1
    odd = []
    for j, rho in enumerate(h_tab.characters):
        odd.append(GraphVertex("H:chi%d" % j, 0, j, int(round(
            rho.degree_value.real))))
    marked_odd_idx = h_tab.trivial_index()
    edges = []
    for e_idx, (i, rho0) in enumerate(even_rows):
        K = dc.stabilizers[i]
        for o_idx, rho1 in enumerate(h_tab.characters):
            m = multiplicity(restrict(rho1, K), rho0, config)
            if m:
                edges.append((e_idx, o_idx, m))
    return _assemble_graph(even, odd, edges, designated_idx, marked_odd_idx,
                           config)


def dual_principal_graph(G: PermGroup, H: PermGroup,
                         config: Config = DEFAULT) -> BipartiteMultiGraph:
    """Dual principal graph: characters of G against characters of H.

    Edge multiplicity is the multiplicity of the odd (subgroup)
    character inside the restriction of the even (group) character.
    The designated vertex is the trivial character of G.
    """
    if not H.is_subgroup_of(G):
        raise SubgroupError("need H <= G")
    g_tab = character_table(G, config)
    h_tab = character_table(H, config)
    even = tuple(GraphVertex("G:chi%d" % j, 0, j,
                             int(round(rho.degree_value.real)))
                 for j, rho in enumerate(g_tab.characters))
    odd = tuple(GraphVertex("H:chi%d" % j, 0, j,
                            int(round(rho.degree_value.real)))
                for j, rho in enumerate(h_tab.characters))
    edges = []
    for e_idx, rho0 in enumerate(g_tab.characters):
        res = restrict(rho0, H)
        for o_idx, rho1 in enumerate(h_tab.characters):
            m = multiplicity(res, rho1, config)
            if m:
                edges.append((e_idx, o_idx, m))
    return _assemble_graph(even, odd, edges, g_tab.trivial_index(),
                           h_tab.trivial_index(), config)
