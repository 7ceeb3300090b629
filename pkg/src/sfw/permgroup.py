"""Finite permutation groups with exact arithmetic.

Conventions used throughout the package:

- Points are 0-based: a permutation of degree n acts on {0, ..., n-1}.
- A permutation is stored by its images tuple, images[x] = image of x.
- Composition is rightmost-first: (a * b)(x) == a(b(x)).
- Group elements are enumerated in lexicographic order of their images
  tuples, so the identity is always element 0.
- Coset and double coset representatives are chosen canonically: the
  minimum of the coset under the key (number of moved points, moved
  points, images).  Under this key the identity is the global minimum,
  so the coset of the subgroup itself always comes first and its
  representative is the identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .config import Config, DEFAULT
from .errors import (
    CapExceededError,
    InvalidActionError,
    NotNormalError,
    ParseError,
    PreconditionError,
    SubgroupError,
)


class Perm:
    """An element of a finite symmetric group, stored by its images."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        n = len(images)
        seen = [False] * n
        for x in images:
            if not isinstance(x, int) or not 0 <= x < n or seen[x]:
                raise ValueError("not a bijection on 0..%d: %r" % (n - 1, images))
            seen[x] = True
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[int]]) -> "Perm":
        """Product of the given cycles, rightmost cycle applied first."""
        result = cls.identity(degree)
        for cycle in reversed(list(cycles)):
            images = list(range(degree))
            for a, b in zip(cycle, cycle[1:]):
                if not (0 <= a < degree and 0 <= b < degree):
                    raise ValueError("cycle point out of range 0..%d" % (degree - 1))
                images[a] = b
            if cycle:
                images[cycle[-1]] = cycle[0]
            result = cls(images) * result
        return result

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Perm") -> "Perm":
        if len(self.images) != len(other.images):
            raise ValueError("degree mismatch: %d vs %d" % (len(self.images), len(other.images)))
        simg = self.images
        p = Perm.__new__(Perm)
        object.__setattr__(p, "images", tuple(simg[x] for x in other.images))
        return p

    def inv(self) -> "Perm":
        images = self.images
        out = [0] * len(images)
        for x, y in enumerate(images):
            out[y] = x
        p = Perm.__new__(Perm)
        object.__setattr__(p, "images", tuple(out))
        return p

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def is_identity(self) -> bool:
        return all(i == x for x, i in enumerate(self.images))

    def support(self) -> tuple:
        return tuple(x for x, i in enumerate(self.images) if i != x)

    def sort_key(self):
        """Canonical key for representative selection; identity is minimal."""
        moved = self.support()
        return (len(moved), moved, self.images)

    def order(self) -> int:
        n = 1
        p = self
        while not p.is_identity():
            p = p * self
            n += 1
        return n

    def cycles(self) -> list:
        """Disjoint cycles of length >= 2, each starting at its least point."""
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(%s)" % " ".join(str(x) for x in c) for c in cycs)

    def __repr__(self) -> str:
        return "Perm[%s]" % self.cycle_string()


def parse_cycle_string(degree: int, text: str) -> Perm:
    """Parse "(0 1)(2 3)" style notation.  "()" or "" is the identity."""
    text = text.strip()
    if text in ("", "()"):
        return Perm.identity(degree)
    if not text.startswith("(") or not text.endswith(")"):
        raise ParseError("cycle string must look like \"(0 1)(2 3)\": %r" % text)
    cycles = []
    for chunk in text[1:-1].split(")("):
        pts = []
        for tok in chunk.replace(",", " ").split():
            try:
                pts.append(int(tok))
            except ValueError:
                raise ParseError("bad point %r in cycle string %r" % (tok, text)) from None
        if len(set(pts)) != len(pts):
            raise ParseError("repeated point inside one cycle: %r" % text)
        cycles.append(pts)
    try:
        return Perm.from_cycles(degree, cycles)
    except ValueError as e:
        raise ParseError("%s in cycle string %r" % (e, text)) from None


def mulclose(generators: Sequence[Perm], cap: int) -> list:
    """BFS closure of the generators under multiplication.

    Raises CapExceededError as soon as more than cap elements appear.
    """
    if not generators:
        raise ValueError("mulclose needs at least one element")
    degree = generators[0].degree
    identity = Perm.identity(degree)
    seen = {identity.images: identity}
    frontier = [identity]
    while frontier:
        new = []
        for p in frontier:
            for g in generators:
                q = p * g
                if q.images not in seen:
                    if len(seen) >= cap:
                        raise CapExceededError(
                            "group order exceeds cap %d" % cap)
                    seen[q.images] = q
                    new.append(q)
        frontier = new
    return list(seen.values())


class PermGroup:
    """A finite permutation group, fully enumerated at construction."""

    def __init__(self, degree: int, generators: Iterable[Perm],
                 config: Config = DEFAULT):
        generators = tuple(generators)
        for g in generators:
            if g.degree != degree:
                raise PreconditionError(
                    "generator degree %d does not match group degree %d"
                    % (g.degree, degree))
        gens = tuple(g for g in generators if not g.is_identity())
        elements = mulclose(gens or (Perm.identity(degree),), config.order_cap)
        elements.sort(key=lambda p: p.images)
        self.degree = degree
        self.generators = gens if gens else (Perm.identity(degree),)
        self.elements = tuple(elements)
        self.order = len(elements)
        self._index = {p: i for i, p in enumerate(elements)}
        self._cache = {}

    @property
    def identity(self) -> Perm:
        return self.elements[0]

    def __contains__(self, p) -> bool:
        return isinstance(p, Perm) and p in self._index

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return self.order

    def element_index(self, p: Perm) -> int:
        return self._index[p]

    def __eq__(self, other) -> bool:
        return (isinstance(other, PermGroup) and self.degree == other.degree
                and self.elements == other.elements)

    def __hash__(self) -> int:
        return hash((self.degree, self.elements))

    def __repr__(self) -> str:
        return "PermGroup(degree=%d, order=%d)" % (self.degree, self.order)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        if self.degree != other.degree or self.order > other.order:
            return False
        return all(p in other for p in self.elements)

    def subgroup(self, generators: Iterable[Perm],
                 config: Config = DEFAULT) -> "PermGroup":
        sub = PermGroup(self.degree, generators, config)
        if not sub.is_subgroup_of(self):
            raise SubgroupError("generated group is not inside the parent")
        return sub

    def conjugacy_partition(self) -> tuple:
        """Conjugacy classes as element tuples, sorted by (size, least rep).

        The class of the identity always comes first.
        """
        if "classes" not in self._cache:
            remaining = dict(self._index)
            classes = []
            for p in self.elements:
                if p not in remaining:
                    continue
                orbit = {p}
                frontier = [p]
                while frontier:
                    x = frontier.pop()
                    for g in self.generators:
                        y = g * x * g.inv()
                        if y not in orbit:
                            orbit.add(y)
                            frontier.append(y)
                for x in orbit:
                    remaining.pop(x, None)
                classes.append(tuple(sorted(orbit, key=lambda q: q.images)))
            classes.sort(key=lambda c: (len(c), c[0].images))
            self._cache["classes"] = tuple(classes)
        return self._cache["classes"]

    def center(self) -> tuple:
        if "center" not in self._cache:
            self._cache["center"] = tuple(
                p for p in self.elements
                if all(p * g == g * p for g in self.generators))
        return self._cache["center"]

    def element_order_histogram(self) -> dict:
        hist = {}
        for p in self.elements:
            n = p.order()
            hist[n] = hist.get(n, 0) + 1
        return hist


def group_from_generators(degree: int, generators: Sequence[Perm],
                          config: Config = DEFAULT) -> PermGroup:
    """Enumerate the group generated by the given permutations."""
    return PermGroup(degree, generators, config)


def symmetric_group(n: int, config: Config = DEFAULT) -> PermGroup:
    if n <= 1:
        return PermGroup(max(n, 1), (), config)
    gens = [Perm.from_cycles(n, [list(range(n))]), Perm.from_cycles(n, [[0, 1]])]
    return PermGroup(n, gens, config)


def alternating_group(n: int, config: Config = DEFAULT) -> PermGroup:
    if n <= 2:
        return PermGroup(max(n, 1), (), config)
    gens = [Perm.from_cycles(n, [[i, i + 1, i + 2]]) for i in range(n - 2)]
    return PermGroup(n, gens, config)


def cyclic_group(n: int, config: Config = DEFAULT) -> PermGroup:
    if n <= 1:
        return PermGroup(max(n, 1), (), config)
    return PermGroup(n, [Perm.from_cycles(n, [list(range(n))])], config)


def _require_subgroup(G: PermGroup, H: PermGroup) -> None:
    if not H.is_subgroup_of(G):
        raise SubgroupError(
            "not a subgroup: degree %d order %d inside degree %d order %d"
            % (H.degree, H.order, G.degree, G.order))


@dataclass(frozen=True)
class CosetData:
    """Right cosets H\\G.  reps[0] is the identity; index = [G:H]."""

    group: PermGroup
    subgroup: PermGroup
    reps: tuple
    index: int
    coset_of: Mapping[Perm, int]

    def coset_index(self, g: Perm) -> int:
        return self.coset_of[g]

    def coset_elements(self, i: int) -> list:
        rep = self.reps[i]
        return sorted((h * rep for h in self.subgroup.elements),
                      key=lambda p: p.images)


def right_coset_data(G: PermGroup, H: PermGroup) -> CosetData:
    """Partition G into right cosets H*g with canonical representatives."""
    _require_subgroup(G, H)
    assigned = {}
    reps = []
    for g in sorted(G.elements, key=Perm.sort_key):
        if g in assigned:
            continue
        idx = len(reps)
        reps.append(g)
        for h in H.elements:
            assigned[h * g] = idx
    index = len(reps)
    if index * H.order != G.order:
        raise PreconditionError(
            "coset partition inconsistent: %d cosets of size %d in order %d"
            % (index, H.order, G.order))
    return CosetData(G, H, tuple(reps), index, assigned)


@dataclass(frozen=True)
class DoubleCosetData:
    """Double cosets H\\G/H with stabilizers K_i = H  *intersect*  g_i^-1 H g_i."""

    group: PermGroup
    subgroup: PermGroup
    reps: tuple
    sizes: tuple
    stabilizers: tuple
    coset_of: Mapping[Perm, int]

    @property
    def count(self) -> int:
        return len(self.reps)


def double_coset_data(G: PermGroup, H: PermGroup) -> DoubleCosetData:
    """Partition G into double cosets H*g*H; reps chosen like coset reps."""
    _require_subgroup(G, H)
    assigned = {}
    reps = []
    sizes = []
    stabs = []
    for g in sorted(G.elements, key=Perm.sort_key):
        if g in assigned:
            continue
        idx = len(reps)
        cell = set()
        for h1 in H.elements:
            left = h1 * g
            for h2 in H.elements:
                cell.add(left * h2)
        for x in cell:
            assigned[x] = idx
        ginv = g.inv()
        conj = {ginv * h * g for h in H.elements}
        k_elems = [h for h in H.elements if h in conj]
        K = PermGroup(G.degree, k_elems)
        if K.order != len(k_elems):
            raise PreconditionError("stabilizer enumeration inconsistent")
        reps.append(g)
        sizes.append(len(cell))
        stabs.append(K)
    if sum(sizes) != G.order:
        raise PreconditionError("double cosets do not partition the group")
    for size, K in zip(sizes, stabs):
        if size * K.order != H.order * H.order:
            raise PreconditionError(
                "double coset size %d inconsistent with |H|=%d, |K|=%d"
                % (size, H.order, K.order))
    return DoubleCosetData(G, H, tuple(reps), tuple(sizes), tuple(stabs),
                           assigned)


def normal_core(G: PermGroup, H: PermGroup) -> PermGroup:
    """The largest normal subgroup of G contained in H."""
    cosets = right_coset_data(G, H)
    core = set(H.elements)
    for g in cosets.reps:
        ginv = g.inv()
        conj = {ginv * h * g for h in H.elements}
        core &= conj
    K = PermGroup(G.degree, sorted(core, key=lambda p: p.images))
    if K.order != len(core):
        raise PreconditionError("core is not closed; subgroup data corrupt")
    for g in G.generators:
        ginv = g.inv()
        if any(g * x * ginv not in K for x in K.elements):
            raise NotNormalError("computed core is not normal")
    return K


# ---------------------------------------------------------------------------
# automorphisms

@dataclass(frozen=True)
class AutomorphismData:
    """Aut(G) acting on the element list of G.

    aut.degree == G.order; automorphism p sends G.elements[i] to
    G.elements[p(i)].  inner is the subgroup of conjugations, and
    out_cosets decomposes aut by inner, one coset per outer class.
    """

    group: PermGroup
    aut: PermGroup
    inner: PermGroup
    out_cosets: CosetData

    @property
    def out_order(self) -> int:
        return self.out_cosets.index


def automorphism_perm(G: PermGroup, mapping: Mapping[Perm, Perm]) -> Perm:
    """Encode a bijection G -> G as a permutation of element indices."""
    return Perm([G.element_index(mapping[p]) for p in G.elements])


def conjugation_perm(G: PermGroup, g: Perm) -> Perm:
    ginv = g.inv()
    return Perm([G.element_index(g * p * ginv) for p in G.elements])


def is_automorphism_perm(G: PermGroup, a: Perm) -> bool:
    """Check that index permutation a respects the multiplication of G."""
    if a.degree != G.order:
        return False
    elems = G.elements
    idx = G.element_index
    for i, x in enumerate(elems):
        ax = elems[a(i)]
        for s in G.generators:
            if elems[a(idx(x * s))] != ax * elems[a(idx(s))]:
                return False
    return True


def _reduced_generators(G: PermGroup) -> list:
    kept = []
    known = {G.identity}
    for g in G.generators:
        if g in known:
            continue
        kept.append(g)
        known = set(mulclose(kept, G.order + 1))
        if len(known) == G.order:
            break
    return kept or [G.identity]


def automorphism_group(G: PermGroup, config: Config = DEFAULT) -> AutomorphismData:
    """Aut(G) by constrained search over generator images.

    Candidate images of a generator are limited to elements with the same
    order and conjugacy class size.  Every candidate tuple is checked to
    define a bijective homomorphism, so the result is exhaustive.
    """
    if G.order > config.aut_cap:
        raise CapExceededError(
            "automorphism search capped at order %d, group has order %d"
            % (config.aut_cap, G.order))
    gens = _reduced_generators(G)
    classes = G.conjugacy_partition()
    class_size = {}
    for c in classes:
        for p in c:
            class_size[p] = len(c)
    orders = {p: p.order() for p in G.elements}
    candidates = []
    for g in gens:
        pool = [p for p in G.elements
                if orders[p] == orders[g] and class_size[p] == class_size[g]]
        candidates.append(pool)
    total = 1
    for pool in candidates:
        total *= len(pool)
    if total > 200000:
        raise CapExceededError(
            "automorphism candidate space too large (%d tuples)" % total)

    # express every element as parent * generator so candidate maps extend
    # to all of G in one pass
    derivation = {G.identity: None}
    frontier = [G.identity]
    while frontier:
        new = []
        for p in frontier:
            for gi, g in enumerate(gens):
                q = p * g
                if q not in derivation:
                    derivation[q] = (p, gi)
                    new.append(q)
        frontier = new

    elems = G.elements
    idx = G.element_index
    found = []
    for images in itertools.product(*candidates):
        phi = {G.identity: G.identity}
        ok = True
        for p in elems:
            if p in phi:
                continue
            chain = []
            q = p
            while q not in phi:
                chain.append(q)
                q = derivation[q][0]
            for q in reversed(chain):
                phi[q] = phi[derivation[q][0]] * images[derivation[q][1]]
        if len({phi[p] for p in elems}) != G.order:
            continue
        for p in elems:
            pp = phi[p]
            for gi, g in enumerate(gens):
                if phi[p * g] != pp * images[gi]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(automorphism_perm(G, phi))
    aut = PermGroup(G.order, sorted(found, key=lambda p: p.images), config)
    if aut.order != len(found):
        raise PreconditionError("automorphism set is not closed")
    inner = PermGroup(G.order, [conjugation_perm(G, g) for g in gens], config)
    if inner.order * len(G.center()) != G.order:
        raise PreconditionError("inner automorphism count violates |G/Z(G)|")
    out = right_coset_data(aut, inner)
    return AutomorphismData(G, aut, inner, out)


# ---------------------------------------------------------------------------
# wreath-like products

@dataclass(frozen=True)
class WreathData:
    """A wreath product A wr B realized on len(I) * deg(A) points.

    Block i occupies points [i*deg(A), (i+1)*deg(A)).  kappa maps each
    element of the product onto the acting group B; its kernel is the
    direct sum of the base copies.
    """

    group: PermGroup
    base: PermGroup
    base_copies: tuple
    acting: PermGroup
    action: Mapping[Perm, tuple]
    kappa: Mapping[Perm, Perm]


def natural_action(B: PermGroup) -> dict:
    """B acting on its own points, as an action table."""
    return {b: b.images for b in B.elements}


def _verify_action(B: PermGroup, action: Mapping[Perm, tuple], size: int) -> None:
    if set(action) != set(B.elements):
        raise InvalidActionError("action table must cover exactly the acting group")
    for b, img in action.items():
        if len(img) != size or sorted(img) != list(range(size)):
            raise InvalidActionError("action of %r is not a bijection on the index set" % b)
    id_img = tuple(range(size))
    if tuple(action[B.identity]) != id_img:
        raise InvalidActionError("identity must act trivially")
    for b1 in B.elements:
        a1 = action[b1]
        for b2 in B.generators:
            a2 = action[b2]
            composed = tuple(a1[x] for x in a2)
            if tuple(action[b1 * b2]) != composed:
                raise InvalidActionError("action table is not a homomorphism")


def wreath_product(A: PermGroup, B: PermGroup,
                   action: Optional[Mapping[Perm, tuple]] = None,
                   config: Config = DEFAULT) -> WreathData:
    """Wreath-like product of A by B along a faithful action of B on I.

    Returns the product group together with the base copies and the
    quotient map kappa recovered from the block structure.
    """
    if action is None:
        action = natural_action(B)
    size = len(next(iter(action.values())))
    _verify_action(B, action, size)
    by_image = {}
    for b, img in action.items():
        key = tuple(img)
        if key in by_image:
            raise InvalidActionError(
                "action must be faithful so the quotient map is recoverable")
        by_image[key] = b
    dA = A.degree
    degree = size * dA
    gens = []
    copy_gens = [[] for _ in range(size)]
    for i in range(size):
        for a in A.generators:
            images = list(range(degree))
            for x in range(dA):
                images[i * dA + x] = i * dA + a(x)
            p = Perm(images)
            gens.append(p)
            copy_gens[i].append(p)
    for b in B.generators:
        img = action[b]
        images = [0] * degree
        for i in range(size):
            for x in range(dA):
                images[i * dA + x] = img[i] * dA + x
        gens.append(Perm(images))
    G = PermGroup(degree, gens, config)
    copies = tuple(PermGroup(degree, cg, config) for cg in copy_gens)
    kappa = {}
    for g in G.elements:
        key = tuple(g(i * dA) // dA for i in range(size))
        if key not in by_image:
            raise InvalidActionError("element does not permute blocks per the action")
        kappa[g] = by_image[key]
    return WreathData(G, A, copies, B, dict(action), kappa)


@dataclass(frozen=True)
class WreathReport:
    ok: bool
    reason: str = ""
    witness: tuple = ()


def verify_wreath_like(G: PermGroup, copies: Sequence[PermGroup],
                       kappa: Mapping[Perm, Perm], B: PermGroup,
                       action: Optional[Mapping[Perm, tuple]] = None) -> WreathReport:
    """Check the defining properties of a wreath-like decomposition.

    kappa must be a surjective homomorphism G -> B whose kernel is the
    internal direct sum of the copies, and conjugation must permute the
    copies according to the action of kappa(g) on the index set.
    """
    copies = tuple(copies)
    n = len(copies)
    if action is None:
        if n == 1:
            action = {b: (0,) for b in B.elements}
        elif B.degree == n:
            action = natural_action(B)
        else:
            raise InvalidActionError(
                "no action given and the acting group degree does not match "
                "the number of copies")
    try:
        _verify_action(B, action, n)
    except InvalidActionError as exc:
        return WreathReport(False, "bad action table: %s" % exc)
    if set(kappa) != set(G.elements):
        return WreathReport(False, "kappa is not a total map on the group")
    for g in sorted(G.elements, key=Perm.sort_key):
        for s in G.generators:
            if kappa[g * s] != kappa[g] * kappa[s]:
                return WreathReport(False, "kappa is not a homomorphism",
                                    (g, s))
    if {kappa[g] for g in G.elements} != set(B.elements):
        return WreathReport(False, "kappa is not surjective")
    for A in copies:
        if not A.is_subgroup_of(G):
            return WreathReport(False, "copy is not a subgroup")
    gen_union = [g for A in copies for g in A.generators]
    D = PermGroup(G.degree, gen_union, Config(order_cap=G.order + 1))
    kernel = sorted((g for g in G.elements if kappa[g].is_identity()),
                    key=lambda p: p.images)
    if list(D.elements) != kernel:
        return WreathReport(False, "kernel of kappa differs from the span of the copies")
    prod_order = 1
    for A in copies:
        prod_order *= A.order
    if prod_order != D.order:
        return WreathReport(False,
                            "copies are not in direct sum: orders %d vs %d"
                            % (prod_order, D.order))
    for a, A in enumerate(copies):
        for b in range(a + 1, n):
            for x in A.generators:
                for y in copies[b].generators:
                    if x * y != y * x:
                        return WreathReport(False, "copies do not commute",
                                            (x, y))
    elem_sets = [set(A.elements) for A in copies]
    for g in G.generators:
        ginv = g.inv()
        img = action[kappa[g]]
        for i in range(n):
            conj = {g * x * ginv for x in copies[i].elements}
            if conj != elem_sets[img[i]]:
                return WreathReport(
                    False, "conjugation does not permute copies per kappa",
                    (g, i))
    return WreathReport(True)


@lru_cache(maxsize=None)
def _cached_cosets(G: PermGroup, H: PermGroup) -> CosetData:
    return right_coset_data(G, H)


@lru_cache(maxsize=None)
def _cached_double_cosets(G: PermGroup, H: PermGroup) -> DoubleCosetData:
    return double_coset_data(G, H)
