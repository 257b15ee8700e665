import pytest

from fibautomata.automata import equivalent
from fibautomata.cli import main
from fibautomata.numeration import pair_encode
from fibautomata.relations import add_const, affine
from fibautomata.subsequences import Morphism, fib_word, linear_subseq
from fibautomata.textio import from_text, to_text


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_encode_decode(capsys):
    assert run(capsys, "encode", "6") == (0, "1001\n", "")
    assert run(capsys, "encode", "0")[1] == "0\n"
    assert run(capsys, "decode", "10010")[1] == "10\n"
    code, _, err = run(capsys, "decode", "110")
    assert code == 2 and "not a valid" in err
    assert run(capsys, "encode", "-1")[0] == 2


def test_usage_errors_exit_two(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "build", "add-const")[0] == 2
    assert run(capsys, "subseq", "shift", "no-such-file")[0] == 2
    assert run(capsys, "pipeline", "affine", "3", "x")[0] == 2


def test_build_and_export_round_trip(capsys, tmp_path):
    code, text, _ = run(capsys, "build", "affine", "3", "2")
    assert code == 0
    assert equivalent(from_text(text), affine(3, 2))
    path = tmp_path / "a.txt"
    path.write_text(text)
    code, again, _ = run(capsys, "export", str(path))
    assert code == 0 and again == text
    out = tmp_path / "b.txt"
    assert run(capsys, "export", str(path), "--out", str(out))[0] == 0
    assert out.read_bytes() == text.encode()


def test_build_affine_with_large_constant(capsys):
    code, text, _ = run(capsys, "build", "affine", "2", "5")
    assert code == 0
    d = from_text(text)
    for x in range(50):
        for y in range(120):
            assert d.accepts(pair_encode((x, y))) == (y == 2 * x + 5)


def test_build_stats_and_dot(capsys):
    code, out, err = run(capsys, "build", "add-const", "3", "--stats", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")
    assert err == f"states={add_const(3).num_states} transitions={add_const(3).num_transitions}\n"


def test_no_minimize(capsys):
    _, text, _ = run(capsys, "build", "add-const", "3", "--no-minimize")
    assert from_text(text).num_states == add_const(3, minimized=False).num_states
    assert from_text(text).num_states > add_const(3).num_states


def test_subseq_commands(capsys, tmp_path):
    code, text, _ = run(capsys, "subseq", "linear", "fib-word", "2", "0")
    assert code == 0 and equivalent(from_text(text), linear_subseq(fib_word(), 2, 0))
    code, text, _ = run(capsys, "subseq", "morphism", "fib-word")
    assert Morphism.from_text(text).rules == {0: (0, 1), 1: (0,)}
    path = tmp_path / "f.txt"
    path.write_text(to_text(fib_word()))
    code, text, _ = run(capsys, "subseq", "shift", str(path), "1")
    assert code == 0
    assert run(capsys, "subseq", "shift", "fib-word")[0] == 2


def test_seq_eval(capsys):
    assert run(capsys, "seq", "eval", "fib-word", "--count", "8")[1] == "0\n1\n0\n0\n1\n0\n1\n0\n"
    assert run(capsys, "seq", "eval", "fib-thue-morse", "1", "6")[1] == "1\n0\n"
    assert run(capsys, "seq", "eval", "fib-word")[0] == 2


def test_pipeline_report(capsys, tmp_path):
    rep = tmp_path / "r.txt"
    code, text, _ = run(capsys, "pipeline", "affine", "3", "1", "--report", str(rep))
    assert code == 0 and equivalent(from_text(text), affine(3, 1))
    lines = rep.read_text().splitlines()
    assert any(line.startswith("stage=affine(3,1)/minimize ") for line in lines)
    code, text, _ = run(capsys, "pipeline", "subseq", "fib-word", "2", "0")
    assert code == 0 and equivalent(from_text(text), linear_subseq(fib_word(), 2, 0))


def test_verify_oracle(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "oracle", "add-const", "3", "--bound", "300")
    assert code == 0 and out.startswith("PASS")
    path = tmp_path / "wrong.txt"
    path.write_text(to_text(add_const(4)))
    code, out, _ = run(capsys, "verify", "oracle", "add-const", "3", "--bound", "300", "--file", str(path))
    assert code == 1 and "counterexample=[0, 3]" in out
    assert run(capsys, "verify", "oracle", "linear", "2", "1", "--bound", "500", "--base", "fib-word")[0] == 0
    assert run(capsys, "verify", "oracle", "shift", "2")[0] == 2


def test_verify_oeis(capsys):
    code, out, _ = run(capsys, "verify", "oeis", "A385021")
    assert code == 0 and len(out.splitlines()) == 10
    code, out, _ = run(capsys, "verify", "oeis", "A372846")
    assert code == 0 and "MISMATCH" not in out


@pytest.mark.parametrize("family", ["add-const", "affine", "linear-subseq", "shift"])
def test_verify_growth(capsys, family):
    code, out, _ = run(capsys, "verify", "growth", family, "--max", "5")
    assert code == 0
    assert out.splitlines()[-1].startswith(f"PASS family={family}")


def test_malformed_automaton_file(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("this is not an automaton\n")
    code, _, err = run(capsys, "export", str(path))
    assert code == 2 and err.startswith("error:")
