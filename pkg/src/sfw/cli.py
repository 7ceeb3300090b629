"""Standard invariants of finite group-subgroup inclusions.

subcommands:
  index     Jones index, coset counts, and relative commutant dimensions
  graph     principal or dual principal graph as JSON or DOT
  chartab   character table of the group or the subgroup
  extend    extension of a centerless group by outer automorphisms
  spectrum  locate a value in the admissible index spectrum
  vindex    index of a virtual embedding from its part data
  induce    block matrix images of the homomorphism induced by a subgroup
  verify    run the built-in consistency suites

Inclusions come from a built-in case name (--case) or from JSON files
holding {"degree": n, "generators": [...]} (--group, --subgroup).
Exit codes: 0 success, 1 failed checks, 2 bad input, 3 unmet
preconditions, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import sys

from .chartab import character_table
from .cocycle import subfactor_report_from_out
from .config import Config, DEFAULT
from .corpus import case_names, case_by_name
from .errors import (
    CapExceededError,
    ParseError,
    PreconditionError,
    SfwError,
)
from .formats import (
    canonical_json,
    chartab_to_json,
    extension_to_json,
    graph_to_dot,
    graph_to_json,
    group_from_json,
    parse_json_text,
)
from .indexarith import (
    VirtualEmbeddingSpec,
    induced_standard_homomorphism,
    jones_spectrum_query,
    virtual_index,
)
from .permgroup import (
    automorphism_group,
    double_coset_data,
    parse_cycle_string,
    right_coset_data,
)
from .standard_invariant import (
    IN_GROUP,
    IN_SUBGROUP,
    dual_principal_graph,
    principal_graph,
    relative_commutant_dim,
)
from .verify import SUITES, run_suite

_CONFIG_FLAGS = ("order_cap", "aut_cap", "theta_k_cap", "oracle_cap",
                 "tol_char", "tol_multiplicity", "tol_norm", "tol_spectrum")


def _build_config(args) -> Config:
    cfg = DEFAULT
    if getattr(args, "config", None):
        try:
            cfg = Config.from_file(args.config, cfg)
        except OSError as e:
            raise ParseError("cannot read config: %s" % e) from None
        except ValueError as e:
            raise ParseError("bad config file: %s" % e) from None
    cfg = cfg.replace(**Config.env_overrides())
    overrides = {}
    for name in _CONFIG_FLAGS:
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    return cfg.replace(**overrides)


def _load_group_file(path: str, config: Config):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError("cannot read %s: %s" % (path, e)) from None
    return group_from_json(parse_json_text(text), config)


def _load_inclusion(args, config: Config):
    if args.case:
        if args.group or args.subgroup:
            raise ParseError("--case excludes --group/--subgroup")
        try:
            case = case_by_name(args.case)
        except KeyError as e:
            raise ParseError(str(e.args[0])) from None
        return case.name, case.group, case.subgroup
    if not (args.group and args.subgroup):
        raise ParseError("need --case or both --group and --subgroup")
    G = _load_group_file(args.group, config)
    H = _load_group_file(args.subgroup, config)
    return "custom", G, H


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands

def cmd_index(args) -> int:
    cfg = _build_config(args)
    name, G, H = _load_inclusion(args, cfg)
    cosets = right_coset_data(G, H)
    dc = double_coset_data(G, H)
    dims = {IN_SUBGROUP: {}, IN_GROUP: {}}
    for k in range(1, cfg.theta_k_cap + 1):
        if G.order * cosets.index ** k > cfg.oracle_cap:
            break
        for side in (IN_SUBGROUP, IN_GROUP):
            dims[side][k] = relative_commutant_dim(G, H, H, k, side, cfg)
    if args.json:
        payload = {
            "name": name,
            "group_order": G.order,
            "subgroup_order": H.order,
            "index": cosets.index,
            "right_cosets": cosets.index,
            "double_cosets": dc.count,
            "commutant_dims": {side: {str(k): v for k, v in table.items()}
                               for side, table in dims.items()},
        }
        _emit(args, canonical_json(payload))
        return 0
    lines = ["inclusion: %s" % name,
             "group order: %d, subgroup order: %d" % (G.order, H.order),
             "index: %d" % cosets.index,
             "double cosets: %d" % dc.count]
    for k in sorted(dims[IN_SUBGROUP]):
        lines.append("relative commutants k=%d: %s=%d %s=%d"
                     % (k, IN_SUBGROUP, dims[IN_SUBGROUP][k],
                        IN_GROUP, dims[IN_GROUP][k]))
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_graph(args) -> int:
    cfg = _build_config(args)
    name, G, H = _load_inclusion(args, cfg)
    build = principal_graph if args.kind == "principal" else dual_principal_graph
    graph = build(G, H, cfg)
    if args.format == "dot":
        _emit(args, graph_to_dot(graph, "%s_%s" % (args.kind, name)))
    else:
        _emit(args, canonical_json(graph_to_json(graph)))
    return 0


def cmd_chartab(args) -> int:
    cfg = _build_config(args)
    name, G, H = _load_inclusion(args, cfg)
    target = H if args.member == "subgroup" else G
    table = character_table(target, cfg)
    if args.json:
        _emit(args, canonical_json(chartab_to_json(table)))
        return 0
    lines = ["group of order %d, %d conjugacy classes"
             % (target.order, table.classes.count),
             "degrees: %s" % " ".join(str(d) for d in table.degrees)]
    header = ["class"] + [rep.cycle_string()
                          for rep in table.classes.reps]
    lines.append("  ".join(header))
    lines.append("  ".join(["sizes"] + [str(s) for s in table.classes.sizes]))
    for i, chi in enumerate(table.characters):
        cells = []
        for z in chi.values:
            if abs(z.imag) < 1e-9:
                cells.append("%g" % round(z.real, 6))
            else:
                cells.append("%g%+gi" % (round(z.real, 6), round(z.imag, 6)))
        lines.append("  ".join(["chi%d" % i] + cells))
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_extend(args) -> int:
    cfg = _build_config(args)
    if args.case:
        try:
            G = case_by_name(args.case).group
        except KeyError as e:
            raise ParseError(str(e.args[0])) from None
    elif args.group:
        G = _load_group_file(args.group, cfg)
    else:
        raise ParseError("need --case or --group")
    auts = automorphism_group(G, cfg)
    available = auts.out_cosets.index - 1
    if args.out_classes == "all":
        picks = list(range(1, auts.out_cosets.index))
    else:
        picks = []
        for chunk in args.out_classes.split(","):
            try:
                picks.append(int(chunk))
            except ValueError:
                raise ParseError("outer class list must be integers or "
                                 "'all'") from None
        for p in picks:
            if not 1 <= p <= available:
                raise ParseError("outer class %d out of range, have 1..%d"
                                 % (p, available))
    outs = [auts.out_cosets.reps[p] for p in picks]
    result, report = subfactor_report_from_out(G, outs, cfg)
    if args.json:
        payload = extension_to_json(result)
        payload["relations_ok"] = report.ok
        payload["outer_lifts"] = report.outer_count
        _emit(args, canonical_json(payload))
        return 0 if report.ok else 1
    lines = ["base order: %d" % result.base.order,
             "extension order: %d" % result.ambient.order,
             "index: %d" % result.index,
             "element order histogram: %s" % dict(sorted(
                 result.fingerprint().items())),
             "cocycle normalized: %s" % result.cocycle.is_normalized(),
             "relations verified: %s" % report.ok]
    if not report.ok:
        lines.append("failure: %s at %r" % (report.reason, report.witness))
    _emit(args, "\n".join(lines) + "\n")
    return 0 if report.ok else 1


def cmd_spectrum(args) -> int:
    cfg = _build_config(args)
    verdict = jones_spectrum_query(args.value, config=cfg)
    if args.json:
        payload = {"value": verdict.value, "kind": verdict.kind,
                   "residual": verdict.residual}
        if verdict.n is not None:
            payload["n"] = verdict.n
        _emit(args, canonical_json(payload))
        return 0
    if verdict.kind == "discrete":
        _emit(args, "discrete point 4cos^2(pi/%d), residual %.2e\n"
              % (verdict.n, verdict.residual))
    elif verdict.kind == "continuous":
        _emit(args, "continuous range [4, inf)\n")
    else:
        _emit(args, "not in the spectrum, distance %.6g to nearest point\n"
              % verdict.residual)
    return 0


def cmd_vindex(args) -> int:
    parts = []
    for raw in args.part:
        bits = raw.split(":")
        if len(bits) != 3:
            raise ParseError("part must look like s:indexGK:indexHK")
        try:
            parts.append(tuple(int(b) for b in bits))
        except ValueError:
            raise ParseError("part entries must be integers") from None
    spec = VirtualEmbeddingSpec.make(args.total, parts)
    value = virtual_index(spec)
    if args.json:
        payload = {"t": spec.t,
                   "parts": [[p.s, p.index_G_K, p.index_H_gammaK]
                             for p in spec.parts],
                   "virtual_index": value}
        _emit(args, canonical_json(payload))
    else:
        _emit(args, "virtual index: %d\n" % value)
    return 0


def cmd_induce(args) -> int:
    cfg = _build_config(args)
    name, G, K = _load_inclusion(args, cfg)
    hom = induced_standard_homomorphism(G, K, K, config=cfg)
    elements = []
    if args.element:
        elements.append(parse_cycle_string(G.degree, args.element))
    else:
        elements.extend(G.generators)
    for g in elements:
        if g not in G:
            raise PreconditionError("element %s is outside the group"
                                    % g.cycle_string())
    if args.json:
        blocks = []
        for g in elements:
            entries = []
            M = hom.matrix(g)
            for r in range(hom.degree):
                for c in range(hom.degree):
                    el = M[r][c]
                    for p, z in sorted(el.coeffs.items(),
                                       key=lambda kv: kv[0].images):
                        entries.append({"row": r, "col": c,
                                        "coeff": [round(z.real, 12),
                                                  round(z.imag, 12)],
                                        "support": p.cycle_string()})
            blocks.append({"element": g.cycle_string(), "entries": entries})
        payload = {"name": name, "degree": hom.degree,
                   "target_order": K.order, "matrices": blocks}
        _emit(args, canonical_json(payload))
        return 0
    lines = ["inclusion: %s" % name,
             "block matrix degree: %d over group of order %d"
             % (hom.degree, K.order)]
    for g in elements:
        lines.append("element %s:" % g.cycle_string())
        for row in hom.matrix(g):
            lines.append("  [" + ", ".join(repr(e) for e in row) + "]")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_verify(args) -> int:
    cfg = _build_config(args)
    report = run_suite(args.suite, corpus_dir=args.corpus_dir, config=cfg)
    if args.json:
        _emit(args, canonical_json(report.to_json()))
        return 0 if report.ok else 1
    lines = []
    for case in report.cases:
        flag = "ok  " if case.ok else "FAIL"
        detail = " (%s)" % case.detail if case.detail else ""
        lines.append("%s %s%s" % (flag, case.case_id, detail))
    lines.append("suite=%s cases=%d failures=%d wall=%.2fs"
                 % (report.suite, report.cases_run, len(report.failures),
                    report.wall_time))
    _emit(args, "\n".join(lines) + "\n")
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------

def _add_common(sub, inclusion=False, group_only=False):
    sub.add_argument("--config", help="JSON file with cap/tolerance settings")
    sub.add_argument("--json", action="store_true",
                     help="emit machine-readable JSON")
    sub.add_argument("--out", help="write output to a file instead of stdout")
    sub.add_argument("--order-cap", type=int, dest="order_cap")
    sub.add_argument("--aut-cap", type=int, dest="aut_cap")
    sub.add_argument("--theta-k-cap", type=int, dest="theta_k_cap")
    sub.add_argument("--oracle-cap", type=int, dest="oracle_cap")
    sub.add_argument("--tol-char", type=float, dest="tol_char")
    sub.add_argument("--tol-multiplicity", type=float,
                     dest="tol_multiplicity")
    sub.add_argument("--tol-norm", type=float, dest="tol_norm")
    sub.add_argument("--tol-spectrum", type=float, dest="tol_spectrum")
    if inclusion or group_only:
        sub.add_argument("--case", help="built-in case: %s"
                         % ", ".join(case_names()))
        sub.add_argument("--group", help="JSON file with the group")
    if inclusion:
        sub.add_argument("--subgroup", help="JSON file with the subgroup")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sfw", description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("index", help="index and commutant dimensions")
    _add_common(p, inclusion=True)
    p.set_defaults(func=cmd_index)

    p = subs.add_parser("graph", help="principal or dual principal graph")
    _add_common(p, inclusion=True)
    p.add_argument("--kind", choices=("principal", "dual"),
                   default="principal")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_graph)

    p = subs.add_parser("chartab", help="character table")
    _add_common(p, inclusion=True)
    p.add_argument("--member", choices=("group", "subgroup"),
                   default="group")
    p.set_defaults(func=cmd_chartab)

    p = subs.add_parser("extend", help="extension by outer automorphisms")
    _add_common(p, group_only=True)
    p.add_argument("--out-classes", default="all",
                   help="comma list of outer class indices, or 'all'")
    p.set_defaults(func=cmd_extend)

    p = subs.add_parser("spectrum", help="admissible index spectrum lookup")
    _add_common(p)
    p.add_argument("value", type=float)
    p.set_defaults(func=cmd_spectrum)

    p = subs.add_parser("vindex", help="virtual embedding index")
    _add_common(p)
    p.add_argument("--total", type=int, required=True,
                   help="row count t of the virtual embedding")
    p.add_argument("--part", action="append", required=True,
                   help="s:indexGK:indexHK, repeatable")
    p.set_defaults(func=cmd_vindex)

    p = subs.add_parser("induce", help="induced block matrix homomorphism")
    _add_common(p, inclusion=True)
    p.add_argument("--element", help="cycle notation for one group element")
    p.set_defaults(func=cmd_induce)

    p = subs.add_parser("verify", help="run consistency suites")
    _add_common(p)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--corpus-dir",
                   help="directory of inclusion JSON files replacing the "
                        "built-in corpus")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # load-bearing defaults for subcommands without inclusion flags
    for attr in ("case", "group", "subgroup"):
        if not hasattr(args, attr):
            setattr(args, attr, None)
    try:
        return args.func(args)
    except ParseError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except CapExceededError as e:
        print("error: %s" % e, file=sys.stderr)
        return 4
    except PreconditionError as e:
        print("error: %s" % e, file=sys.stderr)
        return 3
    except SfwError as e:
        print("error: %s" % e, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
