"""Self-checking suites over the built-in inclusion corpus.

Each suite runs a list of named cases and reports per-case outcomes;
a case failure is recorded, not raised, so one bad inclusion does not
hide the rest.  Precondition and parse errors from malformed custom
corpora still propagate.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .chartab import character_table
from .cocycle import crossed_product_check, extension_from_out, \
    subfactor_report_from_out, verify_cocycle
from .config import Config, DEFAULT
from .corpus import InclusionCase, builtin_cases
from .errors import ParseError, SfwError, SubgroupError
from .formats import group_from_json, parse_json_text
from .groupalgebra import GroupAlgebraElement, pimsner_popa_expand, \
    pimsner_popa_reassemble
from .indexarith import index_chain_check, jones_spectrum_query, \
    local_index_combine, commutant_bound_check
from .permgroup import (
    alternating_group,
    group_from_generators,
    parse_cycle_string,
    right_coset_data,
    symmetric_group,
)
from .standard_invariant import (
    IN_GROUP,
    IN_SUBGROUP,
    ThetaMap,
    action_on_tuples,
    dual_principal_graph,
    principal_graph,
    relative_commutant_dim,
    stabilizer_matches_intersection,
    theta_matrix_product,
)

SUITES = ("theta", "graphs", "cocycles", "extensions", "arithmetic")


@dataclass(frozen=True)
class CaseResult:
    case_id: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class VerifyReport:
    suite: str
    cases: tuple
    wall_time: float

    @property
    def cases_run(self) -> int:
        return len(self.cases)

    @property
    def failures(self) -> tuple:
        return tuple(c for c in self.cases if not c.ok)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "cases_run": self.cases_run,
            "failed": len(self.failures),
            "wall_time": round(self.wall_time, 3),
            "cases": [{"id": c.case_id, "ok": c.ok, "detail": c.detail}
                      for c in self.cases],
        }


class _Recorder:
    def __init__(self):
        self.results = []

    def run(self, case_id: str, fn) -> None:
        try:
            detail = fn()
        except SfwError as e:
            self.results.append(CaseResult(case_id, False,
                                           "%s: %s" % (type(e).__name__, e)))
        except AssertionError as e:
            self.results.append(CaseResult(case_id, False, str(e)))
        else:
            self.results.append(CaseResult(case_id, True, detail or ""))


def _sample_elements(G, rng, count):
    """Generators, identity, and a few random elements, deduplicated."""
    picks = [G.identity] + list(G.generators)
    for _ in range(count):
        picks.append(G.elements[rng.randrange(G.order)])
    seen = []
    for p in picks:
        if p not in seen:
            seen.append(p)
    return seen


def _suite_theta(cases, config: Config) -> list:
    rec = _Recorder()
    for n, case in enumerate(cases):
        G, H = case.group, case.subgroup
        cosets = right_coset_data(G, H)
        rng = random.Random(91100 + 13 * n)
        for k in (1, 2):
            if G.order * cosets.index ** k > config.oracle_cap:
                continue
            theta = ThetaMap(cosets, k, config)

            def entries_consistent(theta=theta, G=G, rng=rng, k=k,
                                   cosets=cosets):
                count = 0
                for g in _sample_elements(G, rng, 4):
                    m = theta.matrix(g)
                    for (i, j) in m:
                        if action_on_tuples(g, j, cosets, k) != i:
                            raise AssertionError(
                                "matrix support disagrees with the action")
                    count += len(m)
                return "%d entries cross-checked" % count

            rec.run("theta:%s:k%d:entries" % (case.name, k),
                    entries_consistent)

            def multiplicative(theta=theta, G=G, rng=rng):
                g = G.elements[rng.randrange(G.order)]
                h = G.elements[rng.randrange(G.order)]
                lhs = theta_matrix_product(theta.matrix(g), theta.matrix(h))
                rhs = theta.matrix(g * h)
                if set(lhs) != set(rhs):
                    raise AssertionError("product support mismatch")
                for key in rhs:
                    if not lhs[key].allclose(rhs[key], config.tol_char):
                        raise AssertionError("product entry mismatch")
                return "checked one random product"

            rec.run("theta:%s:k%d:product" % (case.name, k), multiplicative)

        def pp_round_trip(G=G, H=H, cosets=cosets, rng=rng):
            for _ in range(5):
                support = [G.elements[rng.randrange(G.order)]
                           for _ in range(4)]
                coeffs = {}
                for p in support:
                    coeffs[p] = complex(rng.randint(-3, 3), rng.randint(-3, 3))
                x = GroupAlgebraElement(G, coeffs)
                parts = pimsner_popa_expand(x, cosets)
                back = pimsner_popa_reassemble(parts, cosets)
                if back != x:
                    raise AssertionError("expansion did not reassemble")
            return "5 random elements"

        rec.run("theta:%s:expansion" % case.name, pp_round_trip)

        def stab(G=G, H=H):
            if not stabilizer_matches_intersection(G, H):
                raise AssertionError("stabilizer mismatch")
            return ""

        rec.run("theta:%s:stabilizers" % case.name, stab)
    return rec.results


def _check_dimension_law(graph, direction: str) -> None:
    """Each odd degree must match the weighted even degrees blockwise."""
    for o_idx, o in enumerate(graph.odd):
        blocks = {}
        for e, od, m in graph.edges:
            if od != o_idx:
                continue
            blocks.setdefault(graph.even[e].group_index, 0)
            blocks[graph.even[e].group_index] += m * graph.even[e].degree
        for gi, total in blocks.items():
            if direction == "restriction" and total != o.degree:
                raise AssertionError(
                    "degrees around %s do not add up" % o.label)
    if direction == "induction":
        for e_idx, e in enumerate(graph.even):
            total = sum(m * graph.odd[o].degree
                        for ee, o, m in graph.edges if ee == e_idx)
            if total != e.degree:
                raise AssertionError(
                    "degrees around %s do not add up" % e.label)


def _suite_graphs(cases, config: Config) -> list:
    rec = _Recorder()
    for case in cases:
        G, H = case.group, case.subgroup

        def principal(G=G, H=H, case=case):
            graph = principal_graph(G, H, config)
            if abs(graph.norm_squared - case.index) > config.tol_norm:
                raise AssertionError(
                    "norm squared %r is not the index %d"
                    % (graph.norm_squared, case.index))
            _check_dimension_law(graph, "restriction")
            return "%d even, %d odd" % (len(graph.even), len(graph.odd))

        rec.run("graphs:%s:principal" % case.name, principal)

        def dual(G=G, H=H, case=case):
            graph = dual_principal_graph(G, H, config)
            if abs(graph.norm_squared - case.index) > config.tol_norm:
                raise AssertionError(
                    "norm squared %r is not the index %d"
                    % (graph.norm_squared, case.index))
            _check_dimension_law(graph, "induction")
            return "%d even, %d odd" % (len(graph.even), len(graph.odd))

        rec.run("graphs:%s:dual" % case.name, dual)

        def commutants(G=G, H=H, case=case):
            checked = 0
            for k in (1, 2):
                if G.order * (case.index ** k) > config.oracle_cap:
                    continue
                for G0 in (H, G):
                    for side in (IN_SUBGROUP, IN_GROUP):
                        dim = relative_commutant_dim(G, G0, H, k, side,
                                                     config)
                        if dim < 1:
                            raise AssertionError(
                                "commutant lost the scalars")
                        checked += 1
            d1 = relative_commutant_dim(G, H, H, 1, IN_SUBGROUP, config)
            if not commutant_bound_check(d1, case.index):
                raise AssertionError("first commutant exceeds index + 1")
            return "%d tower entries" % checked

        rec.run("graphs:%s:commutants" % case.name, commutants)

        def char_table_laws(G=G, H=H):
            for grp in (G, H):
                tab = character_table(grp, config)
                total = sum(d * d for d in tab.degrees)
                if total != grp.order:
                    raise AssertionError("degree squares do not sum")
            return ""

        rec.run("graphs:%s:characters" % case.name, char_table_laws)
    return rec.results


def _normal_triples(cases):
    """Triples (G, K, mid) with K normal in G, drawn from the corpus."""
    S4 = symmetric_group(4)
    A4 = alternating_group(4)
    V4 = group_from_generators(
        4, [parse_cycle_string(4, "(0 1)(2 3)"),
            parse_cycle_string(4, "(0 2)(1 3)")])
    S3 = symmetric_group(3)
    A3 = alternating_group(3)
    triples = [("s4-v4-a4", S4, V4, A4),
               ("a4-v4", A4, V4, V4),
               ("s3-a3", S3, A3, A3)]
    for case in cases:
        if case.name == "wr2x3-base":
            triples.append(("wr2x3-base", case.group, case.subgroup,
                            case.subgroup))
    return triples


def _suite_cocycles(cases, config: Config) -> list:
    rec = _Recorder()
    for name, G, K, mid in _normal_triples(cases):

        def crossed(G=G, K=K, mid=mid):
            report = crossed_product_check(G, K, mid, config)
            if not report.ok:
                raise AssertionError("%s at %r"
                                     % (report.reason, report.witness))
            inner = verify_cocycle(report.cocycle)
            if not inner.ok:
                raise AssertionError("cocycle axioms: %s" % inner.reason)
            return "quotient order %d" % report.quotient_order

        rec.run("cocycles:%s" % name, crossed)
    return rec.results


def _suite_extensions(cases, config: Config) -> list:
    rec = _Recorder()

    def a4_out(config=config):
        A4 = alternating_group(4)
        t = parse_cycle_string(4, "(0 1)")
        out = {x: t * x * t.inv() for x in A4.elements}
        result, report = subfactor_report_from_out(A4, [out], config)
        if not report.ok:
            raise AssertionError("%s at %r" % (report.reason, report.witness))
        hist = dict(result.fingerprint())
        if hist != {1: 1, 2: 9, 3: 8, 4: 6}:
            raise AssertionError("unexpected extension fingerprint %r" % hist)
        return "index %d, ambient order %d" % (result.index,
                                               result.ambient.order)

    rec.run("extensions:a4-out", a4_out)

    def s3_trivial_out(config=config):
        S3 = symmetric_group(3)
        result, report = subfactor_report_from_out(S3, [], config)
        if not report.ok:
            raise AssertionError(report.reason)
        if result.index != 1:
            raise AssertionError("empty outer data must give index 1")
        return ""

    rec.run("extensions:s3-trivial", s3_trivial_out)

    def s3xs3_swap(config=config):
        a = parse_cycle_string(6, "(0 1)")
        b = parse_cycle_string(6, "(0 1 2)")
        c = parse_cycle_string(6, "(3 4)")
        d = parse_cycle_string(6, "(3 4 5)")
        G = group_from_generators(6, [a, b, c, d], config)
        swap = parse_cycle_string(6, "(0 3)(1 4)(2 5)")
        out = {x: swap * x * swap.inv() for x in G.elements}
        result, report = subfactor_report_from_out(G, [out], config)
        if not report.ok:
            raise AssertionError("%s at %r" % (report.reason, report.witness))
        if result.index != 2 or result.ambient.order != 72:
            raise AssertionError("swap extension has the wrong size")
        return "index %d" % result.index

    rec.run("extensions:s3xs3-swap", s3xs3_swap)
    return rec.results


def _suite_arithmetic(cases, config: Config) -> list:
    rec = _Recorder()

    def spectrum(config=config):
        import math
        for n in range(3, 9):
            point = 4.0 * math.cos(math.pi / n) ** 2
            verdict = jones_spectrum_query(point, config=config)
            if verdict.kind != "discrete" or verdict.n != n:
                raise AssertionError("point for n=%d misclassified" % n)
        for x, kind in ((3.5, "not-in-spectrum"), (4.0, "continuous"),
                        (6.25, "continuous")):
            verdict = jones_spectrum_query(x, config=config)
            if verdict.kind != kind:
                raise AssertionError("%r should be %s" % (x, kind))
        return "6 discrete points, 3 off-lattice values"

    rec.run("arithmetic:spectrum", spectrum)

    def chains(cases=cases):
        S4 = symmetric_group(4)
        A4 = alternating_group(4)
        V4 = group_from_generators(
            4, [parse_cycle_string(4, "(0 1)(2 3)"),
                parse_cycle_string(4, "(0 2)(1 3)")])
        towers = [(S4, A4, V4)]
        for G, M, H in towers:
            a = G.order / H.order
            b = G.order / M.order
            c = M.order / H.order
            if abs(a - b * c) > 1e-9:
                raise AssertionError("index tower is not multiplicative")
            if not index_chain_check(a, b, c):
                raise AssertionError("chain bounds violated")
        if index_chain_check(2.0, 2.0, 3.0):
            raise AssertionError("impossible chain accepted")
        return ""

    rec.run("arithmetic:chains", chains)

    def bounds(cases=cases):
        for case in cases:
            dim = relative_commutant_dim(case.group, case.subgroup,
                                         case.subgroup, 1, IN_SUBGROUP,
                                         config)
            if not commutant_bound_check(dim, float(case.index)):
                raise AssertionError("bound fails on %s" % case.name)
        return "%d inclusions" % len(cases)

    rec.run("arithmetic:bounds", bounds)

    def combination(config=config):
        value = local_index_combine([(Fraction(1, 2), 2), (Fraction(1, 2), 2)])
        if abs(value - 8.0) > 1e-12:
            raise AssertionError("halved pair should combine to 8")
        value = local_index_combine([(Fraction(1, 3), 1),
                                     (Fraction(2, 3), 2)])
        if abs(value - 6.0) > 1e-12:
            raise AssertionError("weighted pair should combine to 6")
        return ""

    rec.run("arithmetic:combination", combination)
    return rec.results


_SUITE_FUNCS = {
    "theta": _suite_theta,
    "graphs": _suite_graphs,
    "cocycles": _suite_cocycles,
    "extensions": _suite_extensions,
    "arithmetic": _suite_arithmetic,
}


def load_corpus_dir(path: str, config: Config = DEFAULT) -> tuple:
    """Read inclusion cases from JSON files in a directory.

    Each file holds {"name": ..., "group": {...}, "subgroup": {...}};
    the subgroup is validated against the group.
    """
    cases = []
    names = sorted(fn for fn in os.listdir(path) if fn.endswith(".json"))
    if not names:
        raise ParseError("no .json corpus files in %r" % path)
    for fn in names:
        with open(os.path.join(path, fn), "r", encoding="utf-8") as fh:
            obj = parse_json_text(fh.read())
        if not isinstance(obj, dict):
            raise ParseError("%s: corpus entry must be an object" % fn)
        name = obj.get("name") or os.path.splitext(fn)[0]
        G = group_from_json(obj.get("group"), config)
        H = group_from_json(obj.get("subgroup"), config)
        if not H.is_subgroup_of(G):
            raise SubgroupError("%s: subgroup entry is not contained" % fn)
        if G.order % H.order:
            raise SubgroupError("%s: order does not divide" % fn)
        cases.append(InclusionCase(name, G, H, G.order // H.order))
    return tuple(cases)


def run_suite(suite: str, cases=None, corpus_dir=None,
              config: Config = DEFAULT) -> VerifyReport:
    """Run one named suite, or every suite with "all"."""
    if cases is None:
        cases = (load_corpus_dir(corpus_dir, config) if corpus_dir
                 else builtin_cases())
    start = time.perf_counter()
    if suite == "all":
        results = []
        for name in SUITES:
            results.extend(_SUITE_FUNCS[name](cases, config))
    elif suite in _SUITE_FUNCS:
        results = _SUITE_FUNCS[suite](cases, config)
    else:
        raise ParseError("unknown suite %r, have %s"
                         % (suite, ", ".join(SUITES + ("all",))))
    return VerifyReport(suite, tuple(results), time.perf_counter() - start)
