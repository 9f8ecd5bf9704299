import json
from importlib import resources

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from symdual import matfile
from symdual.catalog import Catalog
from symdual.cli import main
from symdual.code import LinearCode
from symdual.errors import ParseError
from symdual.seeds import NAMES, shipped


def data_path(name):
    return str(resources.files("symdual").joinpath("data", f"{name}.txt"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out.strip() else None, err


# -- matrix files -----------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5, 7, 11, 23]), st.integers(1, 4), st.integers(0, 4), st.integers(0, 2**32 - 1))
def test_matrix_file_round_trip(p, k, extra, seed):
    rng = np.random.default_rng(seed)
    g = np.hstack([np.eye(k, dtype=np.int64), rng.integers(0, p, size=(k, extra))])
    c = LinearCode(g, p)
    text = matfile.dumps(c, ["hello", "# claimed d=2"])
    back = matfile.loads(text)
    assert back.code.gen == c.gen and back.claimed_distance == 2
    assert matfile.dumps(back.code) == matfile.dumps(c)


@pytest.mark.parametrize("name", NAMES)
def test_shipped_files_parse_and_rewrite_identically(name):
    mf = matfile.read(data_path(name))
    assert matfile.dumps(mf.code, mf.comments) == matfile.dumps(shipped(name), mf.comments)


@pytest.mark.parametrize("text,msg", [
    ("symdual-matrix v1\np=5 n=2 k=1\n1 2", "newline"),
    ("symdual-matrix v2\np=5 n=2 k=1\n1 2\n", "first line"),
    ("symdual-matrix v1\np=5 n=2\n1 2\n", "header"),
    ("symdual-matrix v1\np=6 n=2 k=1\n1 2\n", "prime"),
    ("symdual-matrix v1\np=5 n=2 k=2\n1 2\n", "rows"),
    ("symdual-matrix v1\np=5 n=2 k=1\n1 2 3\n", "entries"),
    ("symdual-matrix v1\np=5 n=2 k=1\n1 5\n", "0..4"),
    ("symdual-matrix v1\np=5 n=2 k=1\n1 x\n", "non-integer"),
    ("symdual-matrix v1\n\np=5 n=2 k=1\n1 2\n", "blank"),
    ("symdual-matrix v1\np=5 n=2 k=2\n1 2\n2 4\n", "rank"),
])
def test_parse_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        matfile.loads(text)


def test_comments_anywhere():
    mf = matfile.loads("# top\nsymdual-matrix v1\n# mid\np=3 n=2 k=1\n1 1\n# end\n")
    assert mf.comments == ["# top", "# mid", "# end"] and mf.code.n == 2


# -- verify / dist ----------------------------------------------------------

def test_verify_record_matrix(capsys):
    code, rep, _ = run_json(capsys, "verify", data_path("a23_36"))
    assert code == 0 and rep["ok"] and all(rep["checks"].values())


def test_verify_padded_identity_fails(tmp_path, capsys):
    g = np.hstack([np.eye(3, dtype=int), np.zeros((3, 3), dtype=int)])
    path = tmp_path / "pad.txt"
    matfile.write(path, LinearCode(g, 7))
    code, rep, _ = run_json(capsys, "verify", str(path))
    assert code == 1 and rep["checks"]["self_dual"] is False


def test_verify_claim_beyond_singleton_fails(tmp_path, capsys):
    path = tmp_path / "c.txt"
    matfile.write(path, shipped("gf3_base"), ["# claimed d=9"])
    code, rep, _ = run_json(capsys, "verify", str(path))
    assert code == 1 and rep["checks"]["singleton"] is False


def test_verify_malformed_header(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("symdual-matrix v1\np=3 k=1\n1 1\n")
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2 and "ParseError" in err


def test_dist_exact_example(capsys):
    code, rep, _ = run_json(capsys, "dist", data_path("gf19_g2"), "--exact")
    assert code == 0 and (rep["lower"], rep["upper"], rep["exact"]) == (7, 7, True)


def test_dist_target(capsys):
    code, rep, _ = run_json(capsys, "dist", data_path("a11_32"), "--target", "12")
    assert code == 0 and rep["exact"] and rep["upper"] == 12


def test_dist_zero_budget(capsys):
    code, rep, _ = run_json(capsys, "dist", data_path("gf19_g2"), "--budget", "0")
    assert code == 0 and (rep["lower"], rep["upper"], rep["exact"]) == (1, 7, False)


def test_dist_partial_with_isd_upper(capsys):
    code, rep, _ = run_json(capsys, "dist", data_path("a19_40"), "--budget", "1000",
                            "--iterations", "40", "--seed", "3")
    assert code == 0 and not rep["exact"] and rep["upper"] <= 16 and rep["seed"] == 3


# -- construct --------------------------------------------------------------

def test_construct_A_prints_example_verbatim(capsys):
    code, out, _ = run(capsys, "construct", "A", data_path("gf3_base"), "--x", "2 1 1 1",
                       "--alpha", "1", "--beta", "1", "--s", "0", "--t", "1")
    assert code == 0 and out == matfile.dumps(shipped("gf3_g1"))


def test_construct_B_prints_example_verbatim(capsys):
    code, out, _ = run(capsys, "construct", "B", data_path("gf19_base"), "--x", "1,6,9,6",
                       "--alpha", "18", "--beta", "6", "--H", "9 12 13")
    assert code == 0 and out == matfile.dumps(shipped("gf19_g2"))


def test_construct_on_non_self_dual_base(tmp_path, capsys):
    path = tmp_path / "pad.txt"
    matfile.write(path, LinearCode(np.hstack([np.eye(2, dtype=int), np.zeros((2, 2), dtype=int)]), 3))
    code, rep, _ = run_json(capsys, "construct", "A", str(path), "--auto")
    assert code == 1 and rep["error"] == "IneligibleParams"


def test_construct_auto_is_reproducible(tmp_path, capsys):
    outs = []
    for i in range(2):
        path = tmp_path / f"g{i}.txt"
        code, rep, _ = run_json(capsys, "construct", "B", data_path("gf19_base"), "--auto",
                                "--seed", "11", "--out", str(path))
        assert code == 0 and rep["seed"] == 11
        outs.append(path.read_bytes())
        trace = json.loads((tmp_path / f"g{i}.txt.trace.json").read_text())
        assert trace["steps"][0]["method"] == "B"
    assert outs[0] == outs[1]


# -- search + catalog -------------------------------------------------------

def test_search_into_catalog_and_inspect(tmp_path, capsys, monkeypatch):
    cat_dir = tmp_path / "cat"
    monkeypatch.setenv("SYMDUAL_CATALOG", str(cat_dir))
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"p": 3, "target_length": 12, "target_distance": 6, "seed": 0,
                               "trials": 300}))
    code, recs, _ = run_json(capsys, "search", str(cfg), "--bases", data_path("gf3_base"))
    assert code == 0 and recs and recs[0]["upper"] == 6 and recs[0]["seed"] == 0

    code, listing, _ = run_json(capsys, "catalog", "list")
    assert code == 0 and [r["id"] for r in listing] == [r["id"] for r in recs]
    assert all(r["ok"] for r in listing)

    rid = recs[0]["id"]
    code, shown, _ = run_json(capsys, "catalog", "show", rid[:8])
    assert code == 0 and shown["status"] == "exact" and shown["matrix"].startswith("symdual-matrix v1")

    code, text, _ = run(capsys, "catalog", "export", rid)
    assert code == 0 and matfile.loads(text).claimed_distance == 6

    # re-running the same search adds nothing new
    run(capsys, "search", str(cfg), "--bases", data_path("gf3_base"))
    assert len(Catalog(cat_dir).records()) == len(recs)

    # corrupt a payload: list reports it and exits 1
    mpath = Catalog(cat_dir).matrix_path(rid)
    lines = mpath.read_text().splitlines(keepends=True)
    lines[-1] = " ".join("0" for _ in lines[-1].split()) + "\n"
    lines[-1] = lines[-1][:-2] + "1\n"
    mpath.write_text("".join(lines))
    code, rep, _ = run_json(capsys, "catalog", "list")
    assert code == 1 and any(r["problems"] for r in rep["records"])
    code, rep, _ = run_json(capsys, "catalog", "show", rid)
    assert code == 1 and rep["problems"]


def test_catalog_list_empty(tmp_path, capsys):
    code, rows, _ = run_json(capsys, "catalog", "list", "--catalog", str(tmp_path / "none"))
    assert code == 0 and rows == []


def test_catalog_show_unknown(tmp_path, capsys):
    code, _, err = run(capsys, "catalog", "show", "abc", "--catalog", str(tmp_path))
    assert code == 2 and "abc" in err


def test_search_bad_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"p": 11, "target_length": 10}))
    code, _, err = run(capsys, "search", str(cfg), "--catalog", str(tmp_path / "c"))
    assert code == 2 and "ParseError" in err


# -- qdc / enum-sets --------------------------------------------------------

def test_qdc_table_code(tmp_path, capsys):
    out = tmp_path / "q.txt"
    code, rep, _ = run_json(capsys, "qdc", "--p", "11", "--ell", "19", "--a", "3", "--b", "4",
                            "--expect", "13", "--out", str(out))
    assert code == 0 and (rep["n"], rep["k"], rep["upper"]) == (40, 20, 13)
    assert rep["self_dual"] and rep["canonical"] and rep["matches_expected"]
    assert matfile.read(out).code.n == 40


def test_qdc_without_completion(capsys):
    code, rep, _ = run_json(capsys, "qdc", "--p", "17", "--ell", "17", "--a", "7", "--b", "0")
    assert code == 1 and rep["error"] == "NoSelfDualCompletion"


def test_enum_sets(capsys):
    code, rep, _ = run_json(capsys, "enum-sets", "3")
    assert code == 0 and rep["count"] == 4 == rep["expected"]
    code, out, _ = run(capsys, "enum-sets", "3", "--pretty")
    assert code == 0 and "count" in out


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["dist"])
    assert exc.value.code == 2
