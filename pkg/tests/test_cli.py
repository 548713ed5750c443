import io
import json
import subprocess
import sys

import pytest

from tuttedelta.cli import main
from tuttedelta.combmap import format_map, m0
from tuttedelta.decision import random_decision_tree
from tuttedelta.graph import format_graph, g0


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run(*argv)
    return code, json.loads(out)


def test_tutte_of_k3():
    code, payload = run_json("tutte", "@k3", "--verify")
    assert code == 0 and payload["verified"] is True
    assert payload["text"] == "x^2 + x + y"


@pytest.mark.parametrize("method", ["sum", "delcon", "delta"])
def test_tutte_methods_agree(method):
    code, payload = run_json("tutte", "@g0", "--method", method)
    assert code == 0
    assert payload["polynomial"] == run_json("tutte", "@g0")[1]["polynomial"]


def test_graph_file_and_stdin(tmp_path, monkeypatch):
    path = tmp_path / "g0.txt"
    path.write_text(format_graph(g0()))
    from_file = run("tutte", str(path))
    monkeypatch.setattr(sys, "stdin", io.StringIO(format_graph(g0())))
    from_stdin = run("tutte", "-")
    assert from_file == from_stdin == run("tutte", "@g0")


def test_output_is_byte_identical():
    first = run("partition", "@g0", "--delta-seed", "7", "--verify")
    assert first[0] == 0
    assert first == run("partition", "@g0", "--delta-seed", "7", "--verify")


def test_seed_changes_the_partition_but_not_the_sum():
    _, one = run_json("partition", "@g0", "--delta-seed", "1")
    _, two = run_json("partition", "@g0", "--delta-seed", "2")
    assert one["delta_seed"] == 1 and two["delta_seed"] == 2
    assert one["sum"] == two["sum"]


def test_delta_file(tmp_path):
    g = g0()
    path = tmp_path / "delta.sexp"
    path.write_text(random_decision_tree(g, 3).to_sexp(g))
    code, payload = run_json("activity", "@g0", "--kind", "delta", "--tree", "a,c",
                             "--delta", str(path), "--verify")
    assert code == 0 and payload["verified"] and payload["delta"] == str(path)
    assert payload["active"] == run_json("activity", "@g0", "--kind", "delta", "--tree", "a,c",
                                         "--delta-seed", "3")[1]["active"]


@pytest.mark.parametrize("kind, source", [("ordering", "@g0"), ("dfs", "@g1"),
                                          ("embedding", "@m0"), ("blossoming", "@m0")])
def test_activity_kinds_verify(kind, source):
    tree = {"@g0": "a,c", "@g1": "14,46,24,35", "@m0": "1,3"}[source]
    code, payload = run_json("activity", source, "--kind", kind, "--tree", tree, "--verify")
    assert code == 0, payload
    assert payload["verified"] is True


def test_ordering_example():
    _, payload = run_json("activity", "@g0", "--kind", "ordering", "--tree", "a,c",
                          "--order", "a,b,c,d")
    assert [e["label"] for e in payload["active"]] == ["a"]


def test_series_tsv():
    code, out, _ = run("series", "--preset", "cubic", "--order", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split("\t")[0] == "z"
    rows = {line.split("\t")[0]: line.split("\t")[1:] for line in lines[1:]}
    assert rows["3"][:2] == ["6", "4"]
    assert rows["4"][:4] == ["140", "234", "144", "32"]


def test_series_json_and_rational_u():
    code, payload = run_json("series", "--preset", "tetravalent", "--order", "5", "--u", "0",
                             "--format", "json", "--verify")
    assert code == 0 and payload["verified"]
    assert dict((k, v) for k, v in payload["rows"])[4] == ["20"]


def test_bijection_open_and_close(tmp_path):
    mapfile = tmp_path / "m0.map"
    mapfile.write_text(format_map(m0()))
    code, opened = run_json("bijection", str(mapfile), "--direction", "open", "--forest", "0",
                            "--face", str(m0().root), "--verify")
    assert code == 0 and opened["word"] == "i(BB)x(L)L" and opened["verified"]
    word = tmp_path / "tree.txt"
    word.write_text(opened["word"] + "\n")
    code, closed = run_json("bijection", str(word), "--direction", "close", "--verify")
    assert code == 0 and closed["verified"] and closed["forest"] == [0]


def test_sandpile_levels():
    code, payload = run_json("sandpile", "@g0", "--verify")
    assert code == 0 and payload["verified"]
    assert [lv["count"] for lv in payload["levels"]] == [2, 2, 1]


def test_conjecture_report():
    code, payload = run_json("conjecture", "@k3", "--verify")
    assert code == 0 and payload["verified"] is True
    assert payload["conjecture1_holds"] and payload["conjecture2_holds"]


@pytest.mark.parametrize("argv, error", [
    (["tutte", "@nope"], "unknown_fixture"),
    (["tutte", "/nonexistent/file"], "io"),
    (["activity", "@g0", "--kind", "ordering", "--tree", "zz"], "unknown_edge"),
    (["activity", "@g0", "--kind", "ordering", "--tree", "a", "--order", "a,b"], "bad_order"),
    (["series", "--preset", "cubic", "--order", "3", "--u", "one"], "bad_u"),
    (["bijection", "@m0", "--face", "99"], "bad_face"),
])
def test_error_envelope(argv, error):
    code, out, _ = run(*argv)
    assert code == 1
    assert json.loads(out)["error"]["code"] == error


def test_bad_arguments_exit_one():
    assert run("tutte")[0] == 1
    assert run("--help")[0] == 0


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "tuttedelta.cli", "tutte", "@k3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["text"] == "x^2 + x + y"
