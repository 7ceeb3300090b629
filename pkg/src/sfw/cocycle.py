"""Twisted cocycle data for group extensions.

A finite group H containing a normal copy of G determines, after a
choice of coset lifts, an outer action of the quotient on G together
with a G-valued 2-cocycle twisting the multiplication.  This module
extracts that data from outer automorphisms or from an explicit normal
inclusion, verifies the cocycle axioms, and checks the twisted crossed
product relations inside the group algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Tuple

from .config import Config, DEFAULT
from .errors import (
    HomomorphismError,
    InvariantViolationError,
    NontrivialCenterError,
    NotNormalError,
    PreconditionError,
    SubgroupError,
)
from .groupalgebra import GroupAlgebraElement
from .permgroup import (
    Perm,
    PermGroup,
    automorphism_perm,
    conjugation_perm,
    group_from_generators,
    is_automorphism_perm,
    right_coset_data,
)


@dataclass(frozen=True)
class Cocycle2:
    """Quotient-indexed 2-cocycle with values in a base group.

    values maps pairs of quotient elements to base elements, alpha maps
    each quotient element to an automorphism of the base encoded as a
    permutation of base element indices.
    """

    base: PermGroup
    quotient: PermGroup
    values: Mapping[Tuple[Perm, Perm], Perm]
    alpha: Mapping[Perm, Perm]

    def value(self, g1: Perm, g2: Perm) -> Perm:
        return self.values[(g1, g2)]

    def apply_alpha(self, g: Perm, x: Perm) -> Perm:
        """Image of the base element x under the automorphism for g."""
        a = self.alpha[g]
        return self.base.elements[a(self.base.element_index(x))]

    def is_normalized(self) -> bool:
        one = self.quotient.identity
        return self.values[(one, one)] == self.base.identity


@dataclass(frozen=True)
class CocycleReport:
    ok: bool
    reason: str = ""
    witness: Optional[tuple] = None


def verify_cocycle(c: Cocycle2) -> CocycleReport:
    """Check the twisted cocycle axioms, reporting the first failure.

    Axioms: the identity acts trivially, composing two of the
    automorphisms equals conjugation by the cocycle value followed by
    the automorphism of the product, and the twisted associativity law
    alpha_g(w(h,k)) * w(g, hk) == w(g,h) * w(gh, k).
    """
    Q = c.quotient
    B = c.base
    for g in Q.elements:
        if g not in c.alpha:
            return CocycleReport(False, "missing automorphism", (g,))
        if not is_automorphism_perm(B, c.alpha[g]):
            return CocycleReport(False, "value is not an automorphism", (g,))
    for g in Q.elements:
        for h in Q.elements:
            if (g, h) not in c.values:
                return CocycleReport(False, "missing cocycle value", (g, h))
            if c.values[(g, h)] not in B:
                return CocycleReport(False, "cocycle value outside base",
                                     (g, h))
    one = Q.identity
    if c.alpha[one] != Perm.identity(B.order):
        return CocycleReport(False, "identity does not act trivially", (one,))
    for g in Q.elements:
        for h in Q.elements:
            lhs = c.alpha[g] * c.alpha[h]
            rhs = conjugation_perm(B, c.values[(g, h)]) * c.alpha[g * h]
            if lhs != rhs:
                return CocycleReport(False, "composition law fails", (g, h))
    for g in Q.elements:
        for h in Q.elements:
            for k in Q.elements:
                lhs = c.apply_alpha(g, c.values[(h, k)]) * c.values[(g, h * k)]
                rhs = c.values[(g, h)] * c.values[(g * h, k)]
                if lhs != rhs:
                    return CocycleReport(False, "twisted associativity fails",
                                         (g, h, k))
    return CocycleReport(True)


def normalize_cocycle(c: Cocycle2) -> Cocycle2:
    """Shift all values by the inverse of the value at (1, 1).

    The shift only preserves the axioms when that value commutes with
    everything in sight, so the result is re-verified; when the check
    fails the caller should instead rebuild the cocycle from lifts that
    send the identity coset to the identity.
    """
    if c.is_normalized():
        return c
    one = c.quotient.identity
    shift = c.values[(one, one)].inv()
    shifted = {key: shift * val for key, val in c.values.items()}
    candidate = Cocycle2(c.base, c.quotient, shifted, dict(c.alpha))
    report = verify_cocycle(candidate)
    if not report.ok:
        raise PreconditionError(
            "normalization by a constant shift breaks axiom '%s'; rebuild "
            "the cocycle from lifts sending the identity coset to the "
            "identity" % report.reason)
    return candidate


def _coerce_automorphism(G: PermGroup, item) -> Perm:
    """Accept either an element-index permutation or a Perm -> Perm map."""
    if isinstance(item, Perm):
        a = item
    elif isinstance(item, Mapping):
        try:
            a = automorphism_perm(G, item)
        except ValueError as e:
            raise HomomorphismError("supplied map is not an automorphism: %s"
                                    % e) from None
    else:
        raise PreconditionError(
            "automorphism must be a permutation of element indices or a "
            "mapping of group elements")
    if not is_automorphism_perm(G, a):
        raise HomomorphismError("supplied map is not an automorphism")
    return a


def _inner_lookup(G: PermGroup) -> Mapping[Perm, Perm]:
    """Invert x -> Ad(x); requires a trivial centre for uniqueness."""
    table = {}
    for x in G.elements:
        table[conjugation_perm(G, x)] = x
    return table


def _quotient_action_perm(cosets, h: Perm) -> Perm:
    """Permutation of coset indices induced by right translation.

    Sending each coset of index i to the coset of reps[i] * h^-1 makes
    the assignment multiplicative for the rightmost-first convention.
    """
    hinv = h.inv()
    return Perm([cosets.coset_index(r * hinv) for r in cosets.reps])


@dataclass(frozen=True)
class ExtensionResult:
    """A group generated over the inner automorphisms by chosen outer ones.

    ambient acts on base element indices; inner is the image of the
    base under conjugation; quotient is realized on the inner-coset
    indices; lifts picks the minimal coset representative for each
    quotient element, with the identity lifted to the identity.
    """

    base: PermGroup
    ambient: PermGroup
    inner: PermGroup
    embedding: Mapping[Perm, Perm]
    quotient: PermGroup
    lifts: Mapping[Perm, Perm]
    cocycle: Cocycle2
    index: int

    def fingerprint(self) -> Mapping[int, int]:
        """Element order histogram of the ambient group."""
        return self.ambient.element_order_histogram()


def extension_from_out(G: PermGroup, out_auts: Sequence,
                       config: Config = DEFAULT) -> ExtensionResult:
    """Build the extension of G by the chosen outer automorphisms.

    Requires a trivial centre so that G embeds as its own inner
    automorphism group and cocycle values pull back uniquely.  Each
    entry of out_auts is an automorphism given as an element-index
    permutation or as a mapping of group elements.
    """
    if len(G.center()) != 1:
        raise NontrivialCenterError(
            "base group must have trivial centre")
    outs = [_coerce_automorphism(G, a) for a in out_auts]
    embedding = {x: conjugation_perm(G, x) for x in G.elements}
    inner_gens = [embedding[x] for x in G.generators]
    inner = group_from_generators(G.order, inner_gens, config=config)
    if inner.order != G.order:
        raise InvariantViolationError("inner automorphism count is off")
    ambient = group_from_generators(G.order, inner_gens + outs, config=config)
    if not inner.is_subgroup_of(ambient):
        raise InvariantViolationError("inner subgroup escaped the ambient")
    cosets = right_coset_data(ambient, inner)
    quotient_of = {}
    for h in ambient.elements:
        quotient_of[h] = _quotient_action_perm(cosets, h)
    qgens = [quotient_of[g] for g in ambient.generators]
    quotient = group_from_generators(cosets.index, qgens, config=config)
    if quotient.order != cosets.index:
        raise InvariantViolationError("quotient order mismatch")
    lifts = {}
    for rep in cosets.reps:
        lifts[quotient_of[rep]] = rep
    if len(lifts) != quotient.order:
        raise InvariantViolationError("coset representatives do not separate")
    if lifts[quotient.identity] != ambient.identity:
        raise InvariantViolationError("identity coset lift is not trivial")
    inner_of = _inner_lookup(G)
    values = {}
    for g1 in quotient.elements:
        for g2 in quotient.elements:
            w = lifts[g1] * lifts[g2] * lifts[g1 * g2].inv()
            if w not in inner_of:
                raise InvariantViolationError(
                    "lift defect is not an inner automorphism")
            values[(g1, g2)] = inner_of[w]
    alpha = {g: lifts[g] for g in quotient.elements}
    cocycle = Cocycle2(G, quotient, values, alpha)
    report = verify_cocycle(cocycle)
    if not report.ok:
        raise InvariantViolationError(
            "extracted cocycle fails axiom '%s' at %r"
            % (report.reason, report.witness))
    if not cocycle.is_normalized():
        raise InvariantViolationError("minimal lifts should normalize")
    return ExtensionResult(G, ambient, inner, embedding, quotient,
                           lifts, cocycle, quotient.order)


def extension_cocycle_from_lifts(result: ExtensionResult,
                                 lifts: Mapping[Perm, Perm]) -> Cocycle2:
    """Recompute the cocycle of an extension from caller-chosen lifts.

    Each quotient element must be assigned an ambient element in its
    own coset.  No normalization is applied, so a lift family moving
    the identity produces data that fails verification; this exposes
    how the choice of section feeds the cocycle.
    """
    Q = result.quotient
    cosets = right_coset_data(result.ambient, result.inner)
    canonical = {q: result.lifts[q] for q in Q.elements}
    for q in Q.elements:
        if q not in lifts:
            raise PreconditionError("lift family must cover the quotient")
        if cosets.coset_index(lifts[q]) != cosets.coset_index(canonical[q]):
            raise PreconditionError("lift lies in the wrong coset")
    inner_of = _inner_lookup(result.base)
    values = {}
    for g1 in Q.elements:
        for g2 in Q.elements:
            w = lifts[g1] * lifts[g2] * lifts[g1 * g2].inv()
            values[(g1, g2)] = inner_of[w]
    alpha = {q: lifts[q] for q in Q.elements}
    return Cocycle2(result.base, Q, values, alpha)


# ---------------------------------------------------------------------------
# crossed product decomposition of a group over a normal subgroup

@dataclass(frozen=True)
class CrossedProductReport:
    ok: bool
    reason: str = ""
    witness: Optional[tuple] = None
    quotient_order: int = 0
    cocycle: Optional[Cocycle2] = None
    middle_indices: Tuple[int, ...] = ()


def _check_normal(G: PermGroup, K: PermGroup) -> None:
    if not K.is_subgroup_of(G):
        raise SubgroupError("not a subgroup")
    for g in G.generators:
        ginv = g.inv()
        for x in K.generators:
            if g * x * ginv not in K:
                raise NotNormalError("subgroup is not normal")


def _crossed_reps(G: PermGroup, K: PermGroup, H_mid: PermGroup,
                  rule: str) -> list:
    """One representative per coset of K, those inside H_mid first.

    rule "min" takes the canonical minimal element of each coset, rule
    "max" takes the lexicographically largest one except that the
    subgroup coset keeps the identity.
    """
    chosen = {}
    for pool in (H_mid.elements, G.elements):
        for x in sorted(pool, key=Perm.sort_key):
            key = frozenset(k * x for k in K.elements)
            if key in chosen:
                if rule == "max" and not chosen[key].is_identity():
                    if x.sort_key() > chosen[key].sort_key():
                        chosen[key] = x
            else:
                chosen[key] = x
    inside = [x for x in chosen.values() if x in H_mid]
    outside = [x for x in chosen.values() if x not in H_mid]
    inside.sort(key=Perm.sort_key)
    outside.sort(key=Perm.sort_key)
    reps = inside + outside
    if not reps[0].is_identity():
        raise InvariantViolationError("identity coset must come first")
    return reps


def _crossed_product_data(G: PermGroup, K: PermGroup, H_mid: PermGroup,
                          rule: str, config: Config):
    reps = _crossed_reps(G, K, H_mid, rule)
    q = len(reps)
    coset_of = {}
    for j, r in enumerate(reps):
        for x in K.elements:
            coset_of[x * r] = j
    if len(coset_of) != G.order:
        raise InvariantViolationError("coset decomposition is not a cover")
    table = [[coset_of[reps[i] * reps[j]] for j in range(q)]
             for i in range(q)]
    qperms = [Perm([table[i][j] for j in range(q)]) for i in range(q)]
    quotient = group_from_generators(
        q, [p for p in qperms if not p.is_identity()], config=config)
    if quotient.order != q:
        raise InvariantViolationError("quotient regular image is too small")
    values = {}
    alpha = {}
    for i, gi in enumerate(qperms):
        mapping = {}
        ri = reps[i]
        riinv = ri.inv()
        for x in K.elements:
            y = ri * x * riinv
            if y not in K:
                raise NotNormalError("conjugation left the subgroup")
            mapping[x] = y
        alpha[gi] = automorphism_perm(K, mapping)
        for j, gj in enumerate(qperms):
            w = reps[i] * reps[j] * reps[table[i][j]].inv()
            if w not in K:
                raise InvariantViolationError(
                    "coset defect landed outside the normal subgroup")
            values[(gi, gj)] = w
    cocycle = Cocycle2(K, quotient, values, alpha)
    middle = tuple(sorted(j for j, r in enumerate(reps) if r in H_mid))
    return reps, coset_of, table, qperms, cocycle, middle


def crossed_product_check(G: PermGroup, K: PermGroup,
                          H_mid: Optional[PermGroup] = None,
                          config: Config = DEFAULT) -> CrossedProductReport:
    """Decompose G as a twisted crossed product of K by G/K and verify.

    K must be normal in G; H_mid, when given, must sit between them and
    is checked to be the restriction of the decomposition to a subgroup
    of the quotient.  The multiplication law
    (a r_i)(b r_j) = a alpha_i(b) w(i,j) r_{ij} is checked on every
    pair of basis elements, for two different representative choices.
    """
    _check_normal(G, K)
    if H_mid is None:
        H_mid = K
    if not (K.is_subgroup_of(H_mid) and H_mid.is_subgroup_of(G)):
        raise SubgroupError("middle group must sit between the two")
    last = None
    for rule in ("min", "max"):
        reps, coset_of, table, qperms, cocycle, middle = \
            _crossed_product_data(G, K, H_mid, rule, config)
        report = verify_cocycle(cocycle)
        if not report.ok:
            return CrossedProductReport(False, report.reason, report.witness,
                                        len(reps), cocycle, middle)
        seen = set()
        for j, r in enumerate(reps):
            for a in K.elements:
                seen.add(a * r)
        if len(seen) != G.order:
            return CrossedProductReport(False, "basis is not a bijection",
                                        None, len(reps), cocycle, middle)
        for i, gi in enumerate(qperms):
            for a in K.elements:
                for j, gj in enumerate(qperms):
                    for b in K.elements:
                        lhs = (a * reps[i]) * (b * reps[j])
                        tw = cocycle.apply_alpha(gi, b) * cocycle.value(gi, gj)
                        rhs = a * tw * reps[table[i][j]]
                        if lhs != rhs:
                            return CrossedProductReport(
                                False, "multiplication law fails",
                                (i, a, j, b), len(reps), cocycle, middle)
        closed = all(table[i][j] in middle
                     for i in middle for j in middle)
        if not closed:
            return CrossedProductReport(False,
                                        "middle group is not quotient-closed",
                                        None, len(reps), cocycle, middle)
        if len(middle) * K.order != H_mid.order:
            return CrossedProductReport(False,
                                        "middle group size mismatch",
                                        None, len(reps), cocycle, middle)
        last = CrossedProductReport(True, "", None, len(reps), cocycle,
                                    middle)
    return last


# ---------------------------------------------------------------------------
# crossed relations inside the group algebra

@dataclass(frozen=True)
class SubfactorExtensionReport:
    ok: bool
    index: int
    outer_count: int
    relation_pairs: int
    reason: str = ""
    witness: Optional[tuple] = None


def subfactor_report_from_out(G: PermGroup, out_auts: Sequence,
                              config: Config = DEFAULT):
    """Extend G by outer automorphisms and check the algebra relations.

    Verifies that every nonidentity quotient element lifts to an outer
    automorphism and that, inside the group algebra of the extension,
    the lifts multiply by the cocycle twist and conjugate the embedded
    base like the outer action prescribes.
    """
    result = extension_from_out(G, out_auts, config)
    Q = result.quotient
    outer_count = 0
    for g in Q.elements:
        if g == Q.identity:
            continue
        if result.lifts[g] in result.inner:
            return result, SubfactorExtensionReport(
                False, result.index, outer_count, 0,
                "lift of a nonidentity class is inner", (g,))
        outer_count += 1
    u = {h: GroupAlgebraElement.from_perm(result.ambient, h)
         for h in result.ambient.elements}
    pairs = 0
    for g1 in Q.elements:
        for g2 in Q.elements:
            lhs = u[result.lifts[g1]] * u[result.lifts[g2]]
            w = result.embedding[result.cocycle.value(g1, g2)]
            rhs = u[w] * u[result.lifts[g1 * g2]]
            if lhs != rhs:
                return result, SubfactorExtensionReport(
                    False, result.index, outer_count, pairs,
                    "twisted product relation fails", (g1, g2))
            pairs += 1
    for g in Q.elements:
        v = u[result.lifts[g]]
        for s in G.generators:
            lhs = v * u[result.embedding[s]] * v.star()
            image = result.cocycle.apply_alpha(g, s)
            rhs = u[result.embedding[image]]
            if lhs != rhs:
                return result, SubfactorExtensionReport(
                    False, result.index, outer_count, pairs,
                    "conjugation relation fails", (g, s))
            pairs += 1
    return result, SubfactorExtensionReport(True, result.index, outer_count,
                                            pairs)
