import importlib
import json
import math

import pytest

from selfsim.main import ROUTERS, build_parser, run, serialize


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_word_problem(capsys):
    assert invoke(capsys, "is-trivial", "--group", "catalog:grigorchuk", "--word", "adadadad") == (0, "true\n", "")
    code, out, _ = invoke(capsys, "is-trivial", "--group", "catalog:grigorchuk", "--word", "ab")
    assert (code, out) == (0, "false\n")


def test_act(capsys):
    code, out, _ = invoke(capsys, "act", "--group", "catalog:adding_machine", "--word-input", "000", "--element", "a")
    assert (code, out) == (0, "100\n")


def test_act_omega(capsys):
    code, out, _ = invoke(capsys, "act-omega", "--group", "catalog:adding_machine", "--point", "(1)", "--element", "a")
    assert (code, out) == (0, "(0)\n")


def test_order_json(capsys):
    code, out, _ = invoke(capsys, "order", "--group", "catalog:grigorchuk", "--element", "ab")
    assert code == 0
    assert json.loads(out) == {"order": 16}
    _, out, _ = invoke(capsys, "order", "--group", "catalog:adding_machine", "--element", "a", "--cap", "32")
    assert json.loads(out) == {"order": None, "unbounded_below": 32}


def test_spectrum(capsys):
    code, out, _ = invoke(capsys, "spectrum", "--group", "catalog:fabrykowski_gupta", "--level", "2", "--unnormalized")
    assert code == 0
    report = json.loads(out)
    r = math.sqrt(6)
    assert report["values"] == pytest.approx([1 - r, 1.0, 1 + r, 4.0], abs=1e-9)
    assert report["dimension"] == 9
    assert report["seed"] == 0


def test_nucleus_formats(capsys):
    _, out, _ = invoke(capsys, "nucleus", "--group", "catalog:grigorchuk")
    report = json.loads(out)
    assert report["contracting"] and report["size"] == 5
    assert report["open_set_condition"] is True
    _, out, _ = invoke(capsys, "nucleus", "--group", "catalog:grigorchuk", "--format", "text")
    assert out.startswith("# nucleus of grigorchuk: 5 elements\n")
    _, out, _ = invoke(capsys, "nucleus", "--group", "catalog:grigorchuk", "--format", "dot")
    assert out.startswith('digraph "nucleus_grigorchuk" {')


def test_nucleus_not_found(capsys):
    _, out, _ = invoke(capsys, "nucleus", "--group", "catalog:lamplighter", "--cap", "40")
    assert json.loads(out)["contracting"] is False
    code, _, err = invoke(capsys, "nucleus", "--group", "catalog:lamplighter", "--cap", "40", "--format", "text")
    assert code == 1
    assert err.startswith("error:")


def test_schreier_dot(capsys):
    code, out, _ = invoke(capsys, "schreier", "--group", "catalog:grigorchuk", "--level", "1", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")
    assert '0 -> 1 [label="a"];' in out


def test_tile_render_to_file(capsys, tmp_path):
    target = tmp_path / "dragon.pgm"
    code, out, _ = invoke(capsys, "tile-render", "--system", "catalog:dragon", "--depth", "8",
                          "--resolution", "64", "--format", "pgm", "--output", str(target))
    assert (code, out) == (0, "")
    assert target.read_bytes().startswith(b"P5\n64 64\n255\n")


def test_semigroup_successor(capsys):
    _, out, _ = invoke(capsys, "semigroup", "successor", "--table", "catalog:fibonacci", "--n", "7")
    assert json.loads(out) == {"n": 7, "successor": 8}


def test_semigroup_rejects_inadmissible_words(capsys):
    code, _, err = invoke(capsys, "semigroup", "apply", "--table", "catalog:fibonacci", "--map", "a", "--point", "11(0)")
    assert code == 2
    assert "admissible" in err


def test_catalog(capsys):
    code, out, _ = invoke(capsys, "catalog", "list")
    assert code == 0
    assert "grigorchuk\tgroup\tfirst Grigorchuk group" in out.splitlines()
    _, out, _ = invoke(capsys, "catalog", "show", "adding_machine")
    assert out == "group adding_machine alphabet 2\na = perm(0 1) [1, a]\n"


def test_group_file(capsys, tmp_path):
    path = tmp_path / "flip.grp"
    path.write_text("group flip alphabet 2\na = perm(0 1) [a, a]\n")
    code, out, _ = invoke(capsys, "osc", "--group", str(path))
    assert (code, out) == (0, "false\n")


@pytest.mark.parametrize("argv, expected", [
    (["no-such-command"], 2),
    ([], 2),
    (["is-trivial", "--group", "missing/file.grp", "--word", "a"], 2),
    (["is-trivial", "--group", "catalog:grigorchuk"], 2),
    (["act", "--group", "catalog:grigorchuk", "--element", "x", "--word-input", "0"], 2),
    (["catalog", "show", "nonexistent"], 1),
    (["catalog", "show"], 2),
    (["spectrum", "--group", "catalog:grigorchuk", "--level", "2", "--gens", "a,z"], 2),
])
def test_exit_codes(capsys, argv, expected):
    code, out, err = invoke(capsys, *argv)
    assert code == expected
    assert out == ""
    assert err.startswith("error:")


def test_serialize():
    assert serialize(True) == b"true\n"
    assert serialize("x") == b"x\n"
    assert serialize(b"\x00") == b"\x00"
    assert serialize({"b": 1, "a": [1]}) == b'{\n  "a": [\n    1\n  ],\n  "b": 1\n}\n'


def test_every_subcommand_is_registered():
    parser = build_parser()
    subparsers = next(a for a in parser._actions if a.dest == "subcommand")
    assert {"act", "nucleus", "schreier", "spectrum", "digit-automaton", "semigroup", "catalog"} <= set(subparsers.choices)


@pytest.mark.parametrize("argv", [
    ["schreier", "--group", "catalog:grigorchuk", "--level", "4"],
    ["cover-check", "--group", "catalog:grigorchuk", "--level", "4"],
    ["tile-graph", "--group", "catalog:grigorchuk", "--level", "4"],
    ["hausdorff", "--group", "catalog:grigorchuk", "--level", "4"],
    ["spectrum", "--group", "catalog:grigorchuk", "--level", "4"],
])
def test_max_level_is_honored(capsys, argv):
    code, out, err = invoke(capsys, *argv, "--max-level", "3")
    assert (code, out) == (1, "")
    assert err.startswith("error:")


def test_max_level_allows_small_levels(capsys):
    code, _, _ = invoke(capsys, "schreier", "--group", "catalog:grigorchuk", "--level", "1", "--max-level", "3")
    assert code == 0


def test_help_names_operation_and_reference():
    parser = build_parser()
    subparsers = next(a for a in parser._actions if a.dest == "subcommand")
    for module in ROUTERS:
        for cmd in module.router.commands:
            module_path, _, func = f"selfsim.{cmd.handler.operation}".rpartition(".")
            assert callable(getattr(importlib.import_module(module_path), func)), cmd.name
            assert cmd.handler.reference, cmd.name
            description = subparsers.choices[cmd.name].description
            assert f"operation: selfsim.{cmd.handler.operation}" in description
            assert "reference: " in description


def test_detq_check_default_group(capsys):
    code, out, _ = invoke(capsys, "detq-check", "--level", "3", "--samples", "3")
    assert code == 0
    report = json.loads(out)
    assert report["passed"] is True
    assert all(s["base_error"] <= 1e-8 for s in report["samples"])
