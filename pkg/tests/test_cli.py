"""Command line interface: outputs, option handling, exit codes."""

from __future__ import annotations

import json

import pytest

from sfw import cli
from sfw.corpus import case_by_name
from sfw.formats import canonical_json, graph_from_json, group_to_json


def run(capsys, argv):
    try:
        rc = cli.main(argv)
    except SystemExit as e:
        rc = e.code
    return rc, capsys.readouterr().out


def write_group(path, G):
    path.write_text(canonical_json(group_to_json(G)))
    return str(path)


def test_index_command(capsys):
    rc, out = run(capsys, ["index", "--case", "s3-flip", "--json"])
    assert rc == 0
    obj = json.loads(out)
    assert obj["index"] == 3
    assert obj["double_cosets"] == 2
    assert obj["right_cosets"] == 3
    assert obj["commutant_dims"]["in-L(H)"]["1"] == 2
    assert obj["commutant_dims"]["in-L(G)"]["2"] == 41


def test_index_from_group_files(capsys, tmp_path):
    g = write_group(tmp_path / "g.json", case_by_name("s3-flip").group)
    h = write_group(tmp_path / "h.json", case_by_name("s3-a3").subgroup)
    rc, out = run(capsys, ["index", "--group", g, "--subgroup", h, "--json"])
    assert rc == 0
    assert json.loads(out)["index"] == 2


def test_graph_command_json_and_dot(capsys):
    rc, out = run(capsys, ["graph", "--case", "a4-v4", "--kind", "principal", "--json"])
    assert rc == 0
    graph = graph_from_json(json.loads(out))
    assert len(graph.even) == 3 and len(graph.odd) == 1
    assert abs(graph.norm_squared - 3.0) < 1e-6

    rc, out = run(capsys, ["graph", "--case", "s3-flip", "--format", "dot"])
    assert rc == 0
    assert out.startswith("graph principal")
    assert out.count(" -- ") == 4

    rc, out = run(capsys, ["graph", "--case", "s3-flip", "--kind", "dual", "--format", "dot"])
    assert rc == 0
    assert "G:chi2" in out


def test_chartab_command(capsys):
    rc, out = run(capsys, ["chartab", "--case", "s3-flip", "--member", "subgroup", "--json"])
    assert rc == 0
    obj = json.loads(out)
    assert obj["degrees"] == [1, 1]
    assert obj["group_order"] == 2


def test_spectrum_command(capsys):
    rc, out = run(capsys, ["spectrum", "2", "--json"])
    assert rc == 0
    obj = json.loads(out)
    assert obj["kind"] == "discrete" and obj["n"] == 4
    rc, out = run(capsys, ["spectrum", "3.5", "--json"])
    assert rc == 0
    assert json.loads(out)["kind"] == "not-in-spectrum"


def test_vindex_command(capsys):
    rc, out = run(
        capsys,
        ["vindex", "--total", "3", "--part", "1:1:2", "--part", "1:2:3", "--json"],
    )
    assert rc == 0
    assert json.loads(out)["virtual_index"] == 15


def test_vindex_constraint_violation_exits_3(capsys):
    rc, _ = run(capsys, ["vindex", "--total", "4", "--part", "1:2:5"])
    assert rc == 3


def test_extend_command(capsys):
    rc, out = run(capsys, ["extend", "--case", "a4-v4", "--json"])
    assert rc == 0
    obj = json.loads(out)
    assert obj["index"] == 2
    assert obj["ambient_order"] == 24
    assert obj["fingerprint"] == {"1": 1, "2": 9, "3": 8, "4": 6}
    assert obj["relations_ok"] is True


def test_induce_command(capsys):
    rc, out = run(capsys, ["induce", "--case", "s3-a3", "--element", "(0 1)", "--json"])
    assert rc == 0
    obj = json.loads(out)
    assert obj["degree"] == 2
    entries = obj["matrices"][0]["entries"]
    assert sorted((e["row"], e["col"]) for e in entries) == [(0, 1), (1, 0)]
    assert all(e["support"] == "()" for e in entries)


def test_verify_command(capsys):
    rc, out = run(capsys, ["verify", "--suite", "arithmetic"])
    assert rc == 0
    assert "failures=0" in out


def test_verify_corpus_dir(capsys, tmp_path):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    entry = {
        "name": "c4-c2",
        "group": {
            "degree": 4,
            "convention": "rightmost-first",
            "generators": ["(0 1 2 3)"],
        },
        "subgroup": {
            "degree": 4,
            "convention": "rightmost-first",
            "generators": ["(0 2)(1 3)"],
        },
    }
    (corpus / "c4c2.json").write_text(canonical_json(entry))
    rc, out = run(capsys, ["verify", "--suite", "graphs", "--corpus-dir", str(corpus)])
    assert rc == 0
    assert "failures=0" in out


def test_out_file_replaces_stdout(capsys, tmp_path):
    target = tmp_path / "report.json"
    rc, out = run(capsys, ["index", "--case", "s3-flip", "--json", "--out", str(target)])
    assert rc == 0
    assert out == ""
    assert json.loads(target.read_text())["index"] == 3


def test_unknown_case_exits_2(capsys):
    rc, _ = run(capsys, ["index", "--case", "nope"])
    assert rc == 2


def test_case_and_group_are_mutually_exclusive(capsys, tmp_path):
    g = write_group(tmp_path / "g.json", case_by_name("s3-flip").group)
    rc, _ = run(capsys, ["index", "--case", "s3-flip", "--group", g])
    assert rc == 2


def test_non_subgroup_exits_3(capsys, tmp_path):
    g = write_group(tmp_path / "g.json", case_by_name("s3-flip").group)
    h = write_group(tmp_path / "h.json", case_by_name("a4-v4").subgroup)
    rc, _ = run(capsys, ["index", "--group", g, "--subgroup", h])
    assert rc == 3


def test_order_cap_exits_4(capsys, tmp_path):
    g = write_group(tmp_path / "g.json", case_by_name("s3-flip").group)
    h = write_group(tmp_path / "h.json", case_by_name("s3-a3").subgroup)
    rc, _ = run(capsys, ["index", "--group", g, "--subgroup", h, "--order-cap", "3"])
    assert rc == 4


def test_bad_cycle_string_exits_2(capsys):
    rc, _ = run(capsys, ["induce", "--case", "s3-a3", "--element", "(0 9)"])
    assert rc == 2


def test_bad_suite_is_an_argparse_error(capsys):
    rc, _ = run(capsys, ["verify", "--suite", "bogus"])
    assert rc == 2


def test_config_file_settings_apply(capsys, tmp_path):
    g = write_group(tmp_path / "g.json", case_by_name("s3-flip").group)
    h = write_group(tmp_path / "h.json", case_by_name("s3-a3").subgroup)
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"order_cap": 3}\n')
    rc, _ = run(capsys, ["index", "--group", g, "--subgroup", h, "--config", str(cfg)])
    assert rc == 4
    cfg.write_text('{"order_cpa": 3}\n')
    rc, _ = run(capsys, ["index", "--group", g, "--subgroup", h, "--config", str(cfg)])
    assert rc == 2


def test_env_cap_applies_and_flags_win(capsys, tmp_path, monkeypatch):
    g = write_group(tmp_path / "g.json", case_by_name("s3-flip").group)
    h = write_group(tmp_path / "h.json", case_by_name("s3-a3").subgroup)
    monkeypatch.setenv("SFW_ORDER_CAP", "3")
    rc, _ = run(capsys, ["index", "--group", g, "--subgroup", h])
    assert rc == 4
    rc, _ = run(capsys, ["index", "--group", g, "--subgroup", h, "--order-cap", "100"])
    assert rc == 0
