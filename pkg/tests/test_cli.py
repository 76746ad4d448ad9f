import io
import json
import subprocess
import sys
from pathlib import Path

from hypothesis import given, strategies as st

from cosetkit import serialize as ser
from cosetkit.cli import Options, main, run_script
from cosetkit.decompose import check_certificate
from cosetkit.dsl import (BinOp, CosetDecl, Command, Const, GroupDecl, Name, ParseError, SetDecl,
                          SubgroupDecl, Translate, Vec, parse, pretty)

EXAMPLES = Path(__file__).resolve().parent.parent / "scripts" / "examples"
LINES = (EXAMPLES / "lines.cos").read_text()


def run(source, tmp_path, fmt="text", radius=20):
    out, err = io.StringIO(), io.StringIO()
    code = run_script(source, Options(fmt, radius, tmp_path), out, err)
    return code, out.getvalue(), err.getvalue()


def test_example_script_writes_a_checked_certificate(tmp_path):
    code, out, err = run(LINES, tmp_path)
    assert code == 0, err
    cert = ser.certificate_from_json(ser.loads((tmp_path / "Y.cert.json").read_text()))
    assert check_certificate(cert)
    assert "check ok" in out


def test_unclosed_bracket_points_at_the_bracket(tmp_path):
    code, out, err = run("group G = Z^2\nsubgroup A < G = span [[1,0]\n", tmp_path)
    assert code == 2 and out == ""
    assert err.startswith("error: 2:23:") and "'['" in err


def test_empty_script(tmp_path):
    assert run("", tmp_path) == (0, "", "")
    assert run("# only a comment\n", tmp_path) == (0, "", "")


def test_unknown_name_is_a_semantic_error(tmp_path):
    code, _, err = run("group G = Z^2\nset Y = A | B\n", tmp_path)
    assert code == 2 and err.startswith("error: 2:")


def test_mixed_groups_are_rejected(tmp_path):
    src = "group G = Z^2\ngroup K = Dinf^1\nsubgroup A < G = span [[1,0]]\nsubgroup R < K = span [] refl (0)\nset X = A | R\n"
    code, _, err = run(src, tmp_path)
    assert code == 2 and "mixes groups" in err


def test_failed_check_exits_with_one(tmp_path):
    assert run(LINES, tmp_path)[0] == 0
    other = "group G = Z^2\nsubgroup A < G = span [[1,0]]\nset Y = A\ncheck Y\n"
    code, out, _ = run(other, tmp_path)
    assert code == 1 and "different set" in out


def test_json_output_is_deterministic(tmp_path):
    src = (EXAMPLES / "tour.cos").read_text()
    a = run(src, tmp_path / "a", fmt="json")
    b = run(src, tmp_path / "b", fmt="json")
    assert a[0] == 0 and a == b
    for line in a[1].splitlines():
        json.loads(line)
    for f in sorted((tmp_path / "a").iterdir()):
        assert f.read_bytes() == (tmp_path / "b" / f.name).read_bytes()


def test_member_and_equal_commands(tmp_path):
    src = LINES.replace("decompose Y", "member Y (7,0)\nmember Y (2,3)\nequal Y Y\nempty Y\n")
    code, out, _ = run(src, tmp_path, fmt="json")
    rows = [json.loads(x) for x in out.splitlines()]
    assert [r.get("member") for r in rows[:2]] == [True, False]
    assert rows[2]["equal"] is True and rows[3]["empty"] is False


def test_radius_flag_beats_the_environment(tmp_path, monkeypatch, capsys):
    script = tmp_path / "s.cos"
    script.write_text(LINES.replace("decompose Y", "compare Y A"))
    monkeypatch.setenv("COSETKIT_WINDOW_RADIUS", "4")
    assert main([str(script), "--out-dir", str(tmp_path)]) == 0
    assert "radius 4" in capsys.readouterr().out
    assert main([str(script), "--out-dir", str(tmp_path), "--window-radius", "2"]) == 0
    assert "radius 2" in capsys.readouterr().out


def test_check_flag(tmp_path, capsys):
    assert run(LINES, tmp_path)[0] == 0
    path = tmp_path / "Y.cert.json"
    assert main(["--check", str(path)]) == 0
    assert capsys.readouterr().out.strip().endswith("ok")
    d = json.loads(path.read_text())
    d["subgroups"][0]["basis"] = [["2", "0"]]
    path.write_text(json.dumps(d))
    assert main(["--check", str(path)]) == 1
    path.write_text("{")
    assert main(["--check", str(path)]) == 2


def test_module_entry_point(tmp_path):
    p = subprocess.run([sys.executable, "-m", "cosetkit", "-", "--out-dir", str(tmp_path)],
                       input=LINES, capture_output=True, text=True, timeout=60)
    assert p.returncode == 0 and (tmp_path / "Y.cert.json").exists()


def test_maps_round_trip_through_the_cli(tmp_path):
    src = (EXAMPLES / "tour.cos").read_text()
    code, out, err = run(src, tmp_path)
    assert code == 0, err
    assert "f_graph: 1 affine piece(s)" in out


# ---- parse and pretty-print -------------------------------------------


def test_example_scripts_round_trip():
    for f in sorted(EXAMPLES.glob("*.cos")):
        stmts = parse(f.read_text())
        assert parse(pretty(stmts)) == stmts


def test_parse_shapes():
    (s,) = parse("set X = (1,0) + A \\ B & C + (0;-1)")
    assert s == SetDecl("X", BinOp("\\", Translate("left", Vec((1, 0)), Name("A")),
                                   BinOp("&", Name("B"), Translate("right", Vec((0,), -1), Name("C")))))
    (c,) = parse("compare X Y radius 7")
    assert c == Command("compare", ("X", "Y", 7))
    (e,) = parse("set F = full(G) \\ empty")
    assert e.expr == BinOp("\\", Const("full", "G"), Const("empty"))


def test_parse_errors_carry_positions():
    try:
        parse("group G = Z^2\nset X = A |")
    except ParseError as exc:
        assert (exc.line, exc.col) == (2, 12)
    else:
        raise AssertionError("expected a parse error")


names = st.sampled_from(["A", "B", "C1", "Y", "q_2"])
vecs = st.builds(Vec, st.lists(st.integers(-9, 9), min_size=2, max_size=2).map(tuple),
                 st.sampled_from([None, 1, -1]))
exprs = st.recursive(
    st.one_of(names.map(Name), st.sampled_from([Const("empty"), Const("full"), Const("full", "G")])),
    lambda sub: st.one_of(
        st.builds(BinOp, st.sampled_from(["|", "&", "\\"]), sub, sub),
        st.builds(Translate, st.sampled_from(["left", "right"]), vecs, sub)),
    max_leaves=6)
statements = st.one_of(
    st.builds(GroupDecl, names, st.sampled_from(["Z", "Dinf"]), st.integers(1, 4)),
    st.builds(SubgroupDecl, names, names,
              st.lists(st.lists(st.integers(-5, 5), min_size=2, max_size=2).map(tuple), max_size=2).map(tuple),
              st.one_of(st.none(), st.lists(st.integers(-3, 3), min_size=2, max_size=2).map(tuple))),
    st.builds(CosetDecl, names, names, vecs),
    st.builds(SetDecl, names, exprs),
    st.builds(Command, st.sampled_from(["normalize", "decompose", "empty"]), st.tuples(names)),
    st.builds(Command, st.just("compare"), st.tuples(names, names, st.one_of(st.none(), st.integers(0, 30)))),
)


@given(st.lists(statements, max_size=6))
def test_pretty_then_parse_is_identity(stmts):
    assert parse(pretty(stmts)) == stmts
