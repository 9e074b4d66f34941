"""End-to-end command line tests driven through ``rmc.cli.main``."""

import json

from rmc import parse_automaton
from rmc.cli import bundled_examples, main

AB_WORD = """\
type: nfa
alphabet: a b
states: q0 q1
initial: q0
final: q1
transitions:
q0 a q1
"""

AB_OTHER = """\
type: nfa
alphabet: a b
states: q0 q1
initial: q0
final: q1
transitions:
q0 b q1
"""

SWAP = """\
type: transducer
alphabet-top: a b
alphabet-bottom: a b
states: s0 s1
initial: s0
final: s1
transitions:
s0 a/b s1
s0 b/a s1
"""


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bundled_examples_present():
    assert {"herman-lp", "herman-grow", "succ-walk", "toggle"} <= set(
        bundled_examples()
    )


def test_check_holds(capsys):
    code, out, _ = run(
        capsys, "check", "as-gf", "--rts", "herman-lp", "--goal", "one-token"
    )
    assert code == 0
    assert out.startswith("VERDICT: HOLDS")


def test_check_fails_with_lasso_json(capsys):
    code, out, _ = run(
        capsys, "check", "af", "--rts", "herman-lp", "--goal", "one-token", "--json"
    )
    assert code == 1
    data = json.loads(out)
    assert data["outcome"] == "FAILS"
    assert data["witness"]["kind"] == "lasso"
    assert data["witness"]["loop_start"] is not None
    assert all(isinstance(c, str) for c in data["witness"]["configurations"])
    assert set(data) == {
        "command",
        "outcome",
        "witness",
        "bound_used",
        "checks",
        "elapsed_ms",
    }


def test_check_unknown_exit(capsys):
    code, out, _ = run(
        capsys,
        "check",
        "as-f",
        "--rts",
        "herman-lp",
        "--goal",
        "one-token",
        "--max-length",
        "6",
    )
    assert code == 2
    assert "UNKNOWN" in out
    assert "bound 6" in out


def test_check_growing_system_clique(capsys):
    code, out, _ = run(capsys, "check", "egf", "--rts", "succ-walk", "--goal", "all")
    assert code == 0
    assert "clique-prefix" in out


def test_check_missing_goal(capsys):
    code, _, err = run(capsys, "check", "ef", "--rts", "toggle")
    assert code == 3
    assert err.startswith("error:")


def test_unknown_bundle_lists_shipped_names(capsys):
    code, _, err = run(capsys, "check", "ef", "--rts", "nope", "--goal", "all")
    assert code == 3
    assert "herman-lp" in err


def test_oracle_with_dump(tmp_path, capsys):
    dump = tmp_path / "slice.txt"
    code, out, _ = run(
        capsys,
        "oracle",
        "--rts",
        "herman-lp",
        "--length",
        "6",
        "--property",
        "agf",
        "--goal",
        "one-token",
        "--dump-slice",
        str(dump),
    )
    assert code == 1
    assert "length-6 slice" in out
    text = dump.read_text()
    assert text.startswith("length: 6")
    assert "bottom-scc:" in text


def test_oracle_bad_length(capsys):
    code, _, err = run(
        capsys, "oracle", "--rts", "toggle", "--length", "-1", "--property", "ef",
        "--goal", "done",
    )
    assert code == 3
    assert err.startswith("error:")


def test_simulate_deterministic(capsys):
    args = (
        "simulate", "--rts", "toggle", "--from", "a",
        "--runs", "40", "--steps", "5", "--seed", "9", "--json",
    )
    code, first, _ = run(capsys, *args)
    assert code == 0
    code, second, _ = run(capsys, *args)
    first, second = json.loads(first), json.loads(second)
    first.pop("elapsed_ms"), second.pop("elapsed_ms")
    assert first == second
    data = first
    assert data["stats"]["termination_frequency"] == 1.0
    assert data["stats"]["runs"] == 40


def test_simulate_goal_frequency(capsys):
    code, out, _ = run(
        capsys,
        "simulate", "--rts", "toggle", "--from", "a", "--goal", "done",
        "--runs", "10", "--json",
    )
    assert code == 0
    assert json.loads(out)["stats"]["goal_hit_frequency"] == 1.0


def test_algebra_union_roundtrip(tmp_path, capsys):
    one = tmp_path / "one.nfa"
    two = tmp_path / "two.nfa"
    out_path = tmp_path / "union.nfa"
    one.write_text(AB_WORD)
    two.write_text(AB_OTHER)
    code, _, _ = run(
        capsys, "algebra", "union", str(one), str(two), "--out", str(out_path)
    )
    assert code == 0
    merged = parse_automaton(out_path.read_text())
    assert merged.accepts(("a",))
    assert merged.accepts(("b",))
    assert not merged.accepts(("a", "b"))


def test_algebra_compose_to_stdout(tmp_path, capsys):
    swap = tmp_path / "swap.t"
    swap.write_text(SWAP)
    code, out, _ = run(capsys, "algebra", "compose", str(swap), str(swap))
    assert code == 0
    doubled = parse_automaton(out)
    assert doubled.accepts_pair(("a",), ("a",))
    assert not doubled.accepts_pair(("a",), ("b",))


def test_algebra_image(tmp_path, capsys):
    swap = tmp_path / "swap.t"
    word = tmp_path / "word.nfa"
    swap.write_text(SWAP)
    word.write_text(AB_WORD)
    code, out, _ = run(capsys, "algebra", "image", str(swap), str(word))
    assert code == 0
    assert parse_automaton(out).accepts(("b",))
    code, out, _ = run(
        capsys, "algebra", "image", str(swap), str(word), "--direction", "pre"
    )
    assert code == 0
    assert parse_automaton(out).accepts(("b",))


def test_algebra_kind_mismatch(tmp_path, capsys):
    word = tmp_path / "word.nfa"
    word.write_text(AB_WORD)
    code, _, err = run(capsys, "algebra", "compose", str(word), str(word))
    assert code == 3
    assert err.startswith("error:")


def test_algebra_complement_cap(tmp_path, capsys):
    word = tmp_path / "word.nfa"
    word.write_text(AB_WORD)
    code, _, err = run(
        capsys, "algebra", "complement", str(word), "--cap", "1"
    )
    assert code == 3
    assert "cap" in err


def test_constraint_inductive_failure(capsys):
    code, out, _ = run(
        capsys,
        "constraint", "inductive", "--interp", "ident.t", "--rts", "toggle",
        "--constraint", "a",
    )
    assert code == 1
    assert "witness (pair):" in out


def test_constraint_certify(capsys):
    code, out, _ = run(
        capsys,
        "constraint", "certify", "--interp", "ident.t", "--rts", "toggle",
        "--constraint", "b", "--config", "b", "--other", "a",
    )
    assert code == 0
    assert out.startswith("VERDICT: HOLDS")


def test_abstract_validate(capsys):
    code, out, _ = run(capsys, "abstract", "validate", "--rts", "herman-lp", "--json")
    assert code == 0
    data = json.loads(out)
    assert [c["passed"] for c in data["checks"]] == [True, True, True]


def test_abstract_safety(capsys):
    code, out, _ = run(
        capsys, "abstract", "safety", "--rts", "toggle", "--goal", "empty"
    )
    assert code == 0
    assert out.startswith("VERDICT: HOLDS")


def test_abstract_as_liveness(capsys):
    code, out, _ = run(
        capsys,
        "abstract", "as-liveness", "--rts", "herman-lp",
        "--goal", "one-token", "--pre-of-goal", "tokens.nfa",
    )
    assert code == 0
    assert out.startswith("VERDICT: HOLDS")


def test_bad_arguments_exit_three(capsys):
    assert main(["check"]) == 3
    assert main([]) == 3
    assert main(["--help"]) == 0
    capsys.readouterr()
