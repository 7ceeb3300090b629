"""Index arithmetic: the admissible index spectrum, virtual embedding
index values, local index combination, chain inequalities, and induced
block-matrix homomorphisms over a subgroup algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

from .config import Config, DEFAULT
from .errors import (
    ConstraintError,
    HomomorphismError,
    InvariantViolationError,
    PreconditionError,
    SubgroupError,
)
from .groupalgebra import GroupAlgebraElement
from .permgroup import CosetData, Perm, PermGroup


@dataclass(frozen=True)
class SpectrumVerdict:
    """Membership verdict for the admissible index value set.

    kind is one of "discrete" (value is 4 cos^2(pi/n), n recorded),
    "continuous" (value >= 4 up to tolerance), or "not-in-spectrum".
    residual is the distance to the nearest admissible value.
    """

    kind: str
    value: float
    n: Optional[int] = None
    residual: float = 0.0


def _discrete_point(n: int) -> float:
    return 4.0 * math.cos(math.pi / n) ** 2


def jones_spectrum_query(x: float, tol: float = None,
                         config: Config = DEFAULT) -> SpectrumVerdict:
    """Locate x in {4 cos^2(pi/n) : n >= 3} union [4, inf).

    Values within tol of 4 or above are reported continuous; this takes
    precedence over the accumulating discrete points just below 4.
    Otherwise the increasing discrete sequence is scanned until it
    passes x + tol.
    """
    x = float(x)
    tol = config.tol_spectrum if tol is None else float(tol)
    if x < 1.0 - tol:
        raise PreconditionError("index values start at 1, got %r" % x)
    if x >= 4.0 - tol:
        return SpectrumVerdict("continuous", x, None, max(0.0, 4.0 - x))
    prev = None
    n = 3
    while True:
        point = _discrete_point(n)
        if abs(x - point) <= tol:
            return SpectrumVerdict("discrete", x, n, abs(x - point))
        if point > x + tol:
            lower = abs(x - prev) if prev is not None else point - x
            return SpectrumVerdict("not-in-spectrum", x, None,
                                   min(lower, point - x))
        prev = point
        n += 1


@dataclass(frozen=True)
class VirtualPart:
    """One summand of a virtual embedding: multiplicity s and two indices."""

    s: int
    index_G_K: int
    index_H_gammaK: int


@dataclass(frozen=True)
class VirtualEmbeddingSpec:
    t: int
    parts: tuple

    @classmethod
    def make(cls, t: int, parts: Sequence) -> "VirtualEmbeddingSpec":
        vp = tuple(VirtualPart(*p) if not isinstance(p, VirtualPart) else p
                   for p in parts)
        if not vp:
            raise PreconditionError("need at least one virtual part")
        for p in vp:
            if p.s < 1 or p.index_G_K < 1 or p.index_H_gammaK < 1:
                raise PreconditionError("virtual part entries must be >= 1")
        return cls(int(t), vp)


def virtual_index(spec: VirtualEmbeddingSpec) -> int:
    """Index of a virtual embedding built from parts (s_i, K_i, gamma_i).

    Requires sum s_i [G:K_i] == t; the value is t * sum s_i [H:gamma_i(K_i)].
    """
    total = sum(p.s * p.index_G_K for p in spec.parts)
    if total != spec.t:
        raise ConstraintError(
            "sum s_i [G:K_i] = %d but t = %d" % (total, spec.t))
    return spec.t * sum(p.s * p.index_H_gammaK for p in spec.parts)


def virtual_index_concrete(G: PermGroup, H: PermGroup, t: int,
                           parts: Sequence) -> int:
    """virtual_index with concrete subgroups and embeddings.

    parts are (s_i, K_i, gamma_i) with K_i <= G and gamma_i a verified
    injective homomorphism K_i -> H given as a total mapping.  The two
    index factors are recomputed from the data.
    """
    built = []
    for s, K, gamma in parts:
        if not K.is_subgroup_of(G):
            raise SubgroupError("part subgroup is not inside G")
        image = _verified_injective_hom(K, H, gamma)
        built.append(VirtualPart(int(s), G.order // K.order,
                                 H.order // len(image)))
    return virtual_index(VirtualEmbeddingSpec.make(t, built))


def _verified_injective_hom(K: PermGroup, H: PermGroup,
                            gamma: Mapping[Perm, Perm]) -> set:
    if set(gamma) != set(K.elements):
        raise HomomorphismError("mapping must be total on the subgroup")
    for x in K.elements:
        for s in K.generators:
            if gamma[x * s] != gamma[x] * gamma[s]:
                raise HomomorphismError("mapping is not a homomorphism")
    image = {gamma[x] for x in K.elements}
    if len(image) != K.order:
        raise HomomorphismError("mapping is not injective")
    if any(y not in H for y in image):
        raise HomomorphismError("image is not inside the target group")
    return image


def local_index_combine(parts: Sequence) -> float:
    """Global index sum local_p / tr_p over a trace partition.

    parts: (tr_p, local_index_p) pairs with the tr_p summing to 1.
    Fractions are accepted and kept exact until the final conversion.
    """
    if not parts:
        raise PreconditionError("need at least one trace block")
    traces = []
    for tr, _ in parts:
        if isinstance(tr, Fraction):
            traces.append(tr)
        elif isinstance(tr, int):
            traces.append(Fraction(tr))
        else:
            traces.append(Fraction(tr).limit_denominator(10 ** 12))
    if any(tr <= 0 or tr > 1 for tr in traces):
        raise PreconditionError("trace weights must lie in (0, 1]")
    if any(local < 1 for _, local in parts):
        raise PreconditionError("local indices must be at least 1")
    total = sum(traces)
    if total != 1:
        raise ConstraintError("trace weights sum to %s, need 1" % total)
    locals_ = [local for _, local in parts]
    if all(isinstance(x, (int, Fraction)) for x in locals_):
        return float(sum(Fraction(x) / tr for x, tr in zip(locals_, traces)))
    return float(sum(float(x) / float(tr) for x, tr in zip(locals_, traces)))


def index_chain_check(index_outer: float, index_top: float,
                      index_bottom: float, tol: float = 1e-12) -> bool:
    """max of the two factors <= composite <= product, within tol."""
    lower = max(index_top, index_bottom)
    return (index_outer >= lower - tol
            and index_outer <= index_top * index_bottom + tol)


def commutant_bound_check(commutant_dim: int, index: float,
                          tol: float = 1e-12) -> bool:
    """Relative commutant dimension is at most index + 1."""
    return commutant_dim <= index + 1.0 + tol


# ---------------------------------------------------------------------------
# induced homomorphisms into amplified subgroup algebras

@dataclass(frozen=True)
class LeftCosetData:
    """Left cosets g*K of K in G; reps[0] is the identity."""

    group: PermGroup
    subgroup: PermGroup
    reps: tuple
    index: int
    coset_of: Mapping[Perm, int]

    def coset_index(self, g: Perm) -> int:
        return self.coset_of[g]


def left_coset_data(G: PermGroup, K: PermGroup) -> LeftCosetData:
    if not K.is_subgroup_of(G):
        raise SubgroupError("not a subgroup")
    assigned = {}
    reps = []
    for g in sorted(G.elements, key=Perm.sort_key):
        if g in assigned:
            continue
        idx = len(reps)
        reps.append(g)
        for h in K.elements:
            assigned[g * h] = idx
    if len(reps) * K.order != G.order:
        raise PreconditionError("left coset partition inconsistent")
    return LeftCosetData(G, K, tuple(reps), len(reps), assigned)


def _as_matrix(value, s):
    import numpy as np

    m = np.asarray(value, dtype=complex)
    if m.shape == () and s == 1:
        m = m.reshape(1, 1)
    if m.shape != (s, s):
        raise PreconditionError("representation matrix has wrong shape")
    return m


def _verify_unitary_rep(K: PermGroup, rho, s: int, tol: float = 1e-9):
    import numpy as np

    mats = {}
    for x in K.elements:
        if x not in rho:
            raise HomomorphismError("representation must be total on the group")
        mats[x] = _as_matrix(rho[x], s)
    eye = np.eye(s)
    if np.max(np.abs(mats[K.identity] - eye)) > tol:
        raise HomomorphismError("identity must map to the identity matrix")
    for x in K.elements:
        m = mats[x]
        if np.max(np.abs(m @ m.conj().T - eye)) > tol:
            raise HomomorphismError("representation value is not unitary")
        for g in K.generators:
            if np.max(np.abs(mats[x * g] - m @ mats[g])) > tol:
                raise HomomorphismError("representation is not multiplicative")
    return mats


class InducedHomomorphism:
    """Block monomial matrices over a subgroup algebra induced from K <= G.

    For g in G the matrix has one nonzero block per left coset column;
    block (m, l) is rho(c) tensored with u_{gamma(c)} where
    c = section(g * coset_l)^-1 * g * section(coset_l) lies in K.
    Multiplicativity and unitarity are verified on the generators at
    construction time.
    """

    def __init__(self, G: PermGroup, K: PermGroup, target: PermGroup,
                 gamma: Optional[Mapping[Perm, Perm]] = None,
                 rho: Optional[Mapping] = None,
                 section: Optional[Sequence[Perm]] = None,
                 config: Config = DEFAULT):
        import numpy as np

        self.G = G
        self.K = K
        self.target = target
        self.cosets = left_coset_data(G, K)
        if gamma is None:
            gamma = {x: x for x in K.elements}
        _verified_injective_hom(K, target, gamma)
        self.gamma = dict(gamma)
        if rho is None:
            self.s = 1
            self.rho = {x: np.ones((1, 1), dtype=complex) for x in K.elements}
        else:
            first = np.asarray(next(iter(rho.values())), dtype=complex)
            self.s = 1 if first.shape == () else int(first.shape[0])
            self.rho = _verify_unitary_rep(K, rho, self.s)
        if section is None:
            self.section = tuple(self.cosets.reps)
        else:
            section = tuple(section)
            if len(section) != self.cosets.index:
                raise PreconditionError("section must pick one element per coset")
            for l, x in enumerate(section):
                if self.cosets.coset_index(x) != l:
                    raise PreconditionError(
                        "section element %d is in the wrong coset" % l)
            if not section[self.cosets.coset_index(G.identity)].is_identity():
                raise PreconditionError(
                    "section must send the subgroup coset to the identity")
            self.section = section
        self.degree = self.cosets.index * self.s
        self._verify_on_generators(config)

    def cocycle(self, g: Perm, l: int):
        """(target coset, c) with c = section(g l K)^-1 g section(l K) in K."""
        x = g * self.section[l]
        m = self.cosets.coset_index(x)
        c = self.section[m].inv() * x
        if c not in self.K:
            raise InvariantViolationError("section cocycle left the subgroup")
        return m, c

    def matrix(self, g: Perm):
        """Dense block matrix of g, entries in the target group algebra."""
        if g not in self.G:
            raise PreconditionError("element outside the source group")
        t, s = self.cosets.index, self.s
        zero = GroupAlgebraElement.zero(self.target)
        out = [[zero for _ in range(t * s)] for _ in range(t * s)]
        for l in range(t):
            m, c = self.cocycle(g, l)
            block = self.rho[c]
            u = self.gamma[c]
            for r in range(s):
                for cc in range(s):
                    coeff = complex(block[r, cc])
                    if coeff != 0:
                        out[m * s + r][l * s + cc] = GroupAlgebraElement(
                            self.target, {u: coeff})
        return out

    def _verify_on_generators(self, config: Config) -> None:
        gens = list(self.G.generators)
        mats = {g: self.matrix(g) for g in gens}
        for g in gens:
            for h in gens:
                prod = _bmat_mul(mats[g], mats[h])
                direct = self.matrix(g * h)
                if not _bmat_close(prod, direct):
                    raise InvariantViolationError(
                        "induced map is not multiplicative at (%r, %r)"
                        % (g, h))
        ident = _bmat_identity(self.target, self.degree)
        for g in gens:
            if not _bmat_close(_bmat_mul(mats[g], _bmat_star(mats[g])), ident):
                raise InvariantViolationError(
                    "induced image of %r is not unitary" % (g,))


def _bmat_mul(A, B):
    n = len(A)
    zero = None
    out = []
    for r in range(n):
        row = []
        for c in range(n):
            acc = None
            for m in range(n):
                x = A[r][m]
                y = B[m][c]
                if x.is_zero() or y.is_zero():
                    continue
                term = x * y
                acc = term if acc is None else acc + term
            if acc is None:
                acc = GroupAlgebraElement.zero(A[r][0].group)
            row.append(acc)
        out.append(row)
    return out


def _bmat_star(A):
    n = len(A)
    return [[A[c][r].star() for c in range(n)] for r in range(n)]


def _bmat_identity(group: PermGroup, n: int):
    zero = GroupAlgebraElement.zero(group)
    one = GroupAlgebraElement.one(group)
    return [[one if r == c else zero for c in range(n)] for r in range(n)]


def _bmat_close(A, B, tol: float = 1e-9) -> bool:
    n = len(A)
    return all(A[r][c].allclose(B[r][c], tol)
               for r in range(n) for c in range(n))


def induced_standard_homomorphism(G: PermGroup, K: PermGroup,
                                  target: PermGroup,
                                  gamma: Optional[Mapping[Perm, Perm]] = None,
                                  rho: Optional[Mapping] = None,
                                  section: Optional[Sequence[Perm]] = None,
                                  config: Config = DEFAULT) -> InducedHomomorphism:
    """Induce a homomorphism G -> blocks over the target group algebra.

    gamma defaults to the inclusion of K into the target, rho to the
    trivial one-dimensional representation.
    """
    return InducedHomomorphism(G, K, target, gamma, rho, section, config)
