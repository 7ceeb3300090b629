"""Complex character tables of finite groups by the class-algebra method.

The table is obtained from simultaneous diagonalization of the class-sum
structure-constant matrices: a random real combination of them (seeded, so
the run is deterministic) is diagonalized, each eigenvector is normalized
at the identity class, and degrees are recovered from the column norm.
Orthogonality relations are asserted before anything is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Mapping, Sequence

import numpy as np

from .config import Config, DEFAULT
from .errors import (
    InvalidActionError,
    NumericalDegeneracyError,
    PreconditionError,
    SubgroupError,
)
from .permgroup import Perm, PermGroup

CLASS_CAP = 64


@dataclass(frozen=True)
class ConjClassData:
    """Conjugacy classes: canonical reps, sizes, and element -> class map."""

    group: PermGroup
    reps: tuple
    sizes: tuple
    class_of: Mapping[Perm, int]

    @property
    def count(self) -> int:
        return len(self.reps)

    def class_index(self, p: Perm) -> int:
        return self.class_of[p]


@lru_cache(maxsize=None)
def conjugacy_classes(G: PermGroup) -> ConjClassData:
    classes = G.conjugacy_partition()
    if len(classes) > CLASS_CAP:
        raise PreconditionError(
            "group has %d conjugacy classes, cap is %d"
            % (len(classes), CLASS_CAP))
    class_of = {}
    for i, cls in enumerate(classes):
        for p in cls:
            class_of[p] = i
    return ConjClassData(G, tuple(c[0] for c in classes),
                         tuple(len(c) for c in classes), class_of)


@dataclass(frozen=True)
class ClassFunction:
    """A class function, with a flag marking genuine characters."""

    group: PermGroup
    values: tuple
    is_character: bool = False

    @property
    def degree_value(self) -> complex:
        return self.values[conjugacy_classes(self.group).class_index(
            self.group.identity)]

    def value_at(self, p: Perm) -> complex:
        return self.values[conjugacy_classes(self.group).class_index(p)]


@dataclass(frozen=True)
class CharacterTable:
    group: PermGroup
    classes: ConjClassData
    characters: tuple  # of ClassFunction, sorted by (degree, values)
    degrees: tuple

    @property
    def count(self) -> int:
        return len(self.characters)

    def trivial_index(self) -> int:
        for i, chi in enumerate(self.characters):
            if all(abs(v - 1.0) < 1e-8 for v in chi.values):
                return i
        raise PreconditionError("no trivial character found")


def _structure_matrices(classes: ConjClassData) -> list:
    """B_i[j][k] = number of x in C_i with x * g_j in C_k.

    The plain character-value vector (chi(g_k))_k is then a right
    eigenvector of every B_i with eigenvalue |C_i| chi(g_i) / chi(1).
    """
    G = classes.group
    r = classes.count
    members = [[] for _ in range(r)]
    for p in G.elements:
        members[classes.class_index(p)].append(p)
    mats = []
    for i in range(r):
        B = np.zeros((r, r))
        for j, gj in enumerate(classes.reps):
            for x in members[i]:
                k = classes.class_index(x * gj)
                B[j][k] += 1.0
        mats.append(B)
    return mats


def _eigenbasis(mats: Sequence[np.ndarray], tol: float):
    """Common eigenvectors of the commuting family, via a random combination."""
    r = mats[0].shape[0]
    last_residual = None
    for attempt in range(8):
        rng = np.random.default_rng(12345 + attempt)
        weights = rng.normal(size=len(mats))
        M = sum(w * N for w, N in zip(weights, mats))
        eigvals, eigvecs = np.linalg.eig(M)
        scale = max(1.0, float(np.max(np.abs(eigvals))))
        min_gap = np.inf
        for a in range(r):
            for b in range(a + 1, r):
                min_gap = min(min_gap, abs(eigvals[a] - eigvals[b]))
        if r > 1 and min_gap < 1e-8 * scale:
            last_residual = float(min_gap)
            continue
        vectors = []
        ok = True
        for c in range(r):
            v = eigvecs[:, c]
            m = int(np.argmax(np.abs(v)))
            residual = 0.0
            for N in mats:
                w = N @ v
                lam = w[m] / v[m]
                residual = max(residual, float(np.max(np.abs(w - lam * v))))
            if residual > 1e-6 * scale:
                ok = False
                last_residual = residual
                break
            vectors.append(v)
        if ok:
            return vectors
    raise NumericalDegeneracyError(
        "class algebra diagonalization failed; residual %r" % (last_residual,))


def character_table(G: PermGroup, config: Config = DEFAULT) -> CharacterTable:
    """All irreducible complex characters of G.

    Characters are sorted by (degree, rounded real parts, rounded
    imaginary parts of the values), which fixes the table layout.
    """
    return _character_table_cached(G, config.tol_char, config.tol_multiplicity)


@lru_cache(maxsize=None)
def _character_table_cached(G: PermGroup, tol_char: float,
                            tol_mult: float) -> CharacterTable:
    classes = conjugacy_classes(G)
    r = classes.count
    order = G.order
    id_idx = classes.class_index(G.identity)
    mats = _structure_matrices(classes)
    vectors = _eigenbasis(mats, tol_char)

    chars = []
    degrees = []
    for v in vectors:
        if abs(v[id_idx]) < 1e-12:
            raise NumericalDegeneracyError(
                "eigenvector vanishes at the identity class")
        beta = v / v[id_idx]
        s = sum(classes.sizes[j] * abs(beta[j]) ** 2 for j in range(r))
        deg_sq = order / s
        deg = float(np.sqrt(deg_sq))
        deg_int = round(deg)
        if abs(deg - deg_int) > tol_mult or deg_int < 1:
            raise NumericalDegeneracyError(
                "non-integral character degree %r" % deg)
        values = tuple(complex(beta[j]).conjugate() * deg_int for j in range(r))
        chars.append(values)
        degrees.append(deg_int)

    if sum(d * d for d in degrees) != order:
        raise NumericalDegeneracyError(
            "degree squares sum to %d, expected %d"
            % (sum(d * d for d in degrees), order))

    def sort_key(item):
        deg, values = item
        re = tuple(round(v.real, 6) for v in values)
        im = tuple(round(v.imag, 6) for v in values)
        return (deg, re, im)

    paired = sorted(zip(degrees, chars), key=sort_key)
    degrees = tuple(d for d, _ in paired)
    functions = tuple(
        ClassFunction(G, values, is_character=True) for _, values in paired)

    # first orthogonality: <chi_a, chi_b> = delta_ab
    for a, fa in enumerate(functions):
        for b, fb in enumerate(functions):
            ip = sum(classes.sizes[j] * fa.values[j] * fb.values[j].conjugate()
                     for j in range(r)) / order
            target = 1.0 if a == b else 0.0
            if abs(ip - target) > tol_char:
                raise NumericalDegeneracyError(
                    "row orthogonality residual %r at (%d, %d)"
                    % (abs(ip - target), a, b))
    # column orthogonality
    for j in range(r):
        for k in range(r):
            s = sum(f.values[j] * f.values[k].conjugate() for f in functions)
            target = order / classes.sizes[j] if j == k else 0.0
            if abs(s - target) > tol_char * order:
                raise NumericalDegeneracyError(
                    "column orthogonality residual %r at (%d, %d)"
                    % (abs(s - target), j, k))

    return CharacterTable(G, classes, functions, degrees)


def inner_product(chi: ClassFunction, psi: ClassFunction,
                  config: Config = DEFAULT):
    """<chi, psi> = |G|^-1 sum |C| chi conj(psi).

    For two genuine characters the value must be a nonnegative integer
    within tolerance and the rounded integer is returned.
    """
    if chi.group != psi.group:
        raise PreconditionError("class functions live on different groups")
    classes = conjugacy_classes(chi.group)
    total = sum(classes.sizes[j] * chi.values[j] * psi.values[j].conjugate()
                for j in range(classes.count)) / chi.group.order
    if chi.is_character and psi.is_character:
        n = round(total.real)
        if abs(total - n) > config.tol_multiplicity or n < 0:
            raise NumericalDegeneracyError(
                "character inner product %r is not a nonnegative integer"
                % (total,))
        return int(n)
    return total


def multiplicity(chi: ClassFunction, irr: ClassFunction,
                 config: Config = DEFAULT) -> int:
    m = inner_product(chi, irr, config)
    if not isinstance(m, int):
        raise PreconditionError("multiplicity requires two characters")
    return m


def restrict(chi: ClassFunction, H: PermGroup) -> ClassFunction:
    """Restriction of a class function on G to a subgroup H."""
    if not H.is_subgroup_of(chi.group):
        raise SubgroupError("restriction target is not a subgroup")
    g_classes = conjugacy_classes(chi.group)
    h_classes = conjugacy_classes(H)
    values = tuple(chi.values[g_classes.class_index(rep)]
                   for rep in h_classes.reps)
    return ClassFunction(H, values, is_character=chi.is_character)


def induce(chi: ClassFunction, G: PermGroup) -> ClassFunction:
    """Induction from a subgroup to G via averaged conjugation sums."""
    H = chi.group
    if not H.is_subgroup_of(G):
        raise SubgroupError("induction target does not contain the subgroup")
    g_classes = conjugacy_classes(G)
    values = []
    for rep in g_classes.reps:
        total = 0.0 + 0.0j
        for x in G.elements:
            y = x * rep * x.inv()
            if y in H:
                total += chi.value_at(y)
        values.append(total / H.order)
    return ClassFunction(G, tuple(values), is_character=chi.is_character)


def trivial_character(G: PermGroup) -> ClassFunction:
    return ClassFunction(G, tuple([1.0 + 0.0j] * conjugacy_classes(G).count),
                         is_character=True)


def verify_action_table(G: PermGroup, action: Mapping[Perm, Sequence[int]],
                        size: int) -> None:
    if set(action) != set(G.elements):
        raise InvalidActionError("action table must cover the whole group")
    for p, img in action.items():
        if len(img) != size or sorted(img) != list(range(size)):
            raise InvalidActionError("action image of %r is not a bijection" % (p,))
    if tuple(action[G.identity]) != tuple(range(size)):
        raise InvalidActionError("identity must act trivially")
    for g in G.elements:
        ag = action[g]
        for s in G.generators:
            asq = action[s]
            if tuple(action[g * s]) != tuple(ag[x] for x in asq):
                raise InvalidActionError("action table is not a homomorphism")


def permutation_character(G: PermGroup, action: Mapping[Perm, Sequence[int]],
                          size: int) -> ClassFunction:
    """Fixed-point character of a verified action of G on {0..size-1}."""
    verify_action_table(G, action, size)
    classes = conjugacy_classes(G)
    values = []
    for rep in classes.reps:
        img = action[rep]
        values.append(complex(sum(1 for x in range(size) if img[x] == x)))
    return ClassFunction(G, tuple(values), is_character=True)


def action_from_callable(G: PermGroup, fn: Callable[[Perm], Sequence[int]]) -> dict:
    return {p: tuple(fn(p)) for p in G.elements}
