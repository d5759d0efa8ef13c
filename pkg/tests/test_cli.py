import json

import pytest

from bgtrace.cli import main


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("BGTRACE_CACHE_DIR", str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, _ = run(capsys, "--no-cache", *argv)
    return code, json.loads(out)


def test_koszul_check(capsys):
    code, rep = report(capsys, "koszul", "check", "--algebra", "A3z")
    assert code == 0 and rep["koszul"]
    code, rep = report(capsys, "koszul", "check", "--algebra", "x3")
    assert code == 1 and rep["koszul_complex"]["first_failure"] == -1
    assert rep["violation"]["internal_weight"] == 3


def test_koszul_resolve_and_dual(capsys):
    _, rep = report(capsys, "koszul", "resolve", "--algebra", "dual", "--length", "2")
    assert [t["weights"] for t in rep["terms"]] == [[0], [1], [2]]
    _, rep = report(capsys, "koszul", "dual", "--algebra", "A3z", "--max-n", "2")
    assert rep["dims"]["1"] == {"1,0": 1, "2,1": 1} and rep["matches_ext"]


def test_hochschild(capsys):
    _, rep = report(capsys, "hh", "compute", "--algebra", "dual", "--min-degree", "-2",
                    "--compare")
    assert rep["dims"] == {"0": 2, "-1": 1, "-2": 1} and rep["models_agree"]
    _, rep = report(capsys, "hh", "compute", "--algebra", "kxk", "--twist", "perm:1,0")
    assert not any(rep["dims"].values())


def test_bg_trace(capsys):
    code, rep = report(capsys, "bg", "trace", "--action", "dual-sign", "--depth", "3")
    assert code == 0 and rep["equivariant"]
    assert rep["global_sections"] == {"0": 2, "-1": 1, "-2": 1}
    _, rep = report(capsys, "bg", "trace", "--action", "s3-permute", "--bounded")
    assert rep["global_sections"] == {"0": 2}
    code, out, err = run(capsys, "--no-cache", "bg", "trace", "--action", "trivial",
                         "--algebra", "x3", "--bounded")
    assert code == 2 and out == "" and "Koszul" in err


def test_bg_inertia(capsys):
    code, rep = report(capsys, "bg", "inertia", "--group", "S3", "--perms", "[[1,0,2],[1,2,0]]")
    assert code == 0 and rep["global_H0"] == rep["orbit_count"] == 2
    code, rep = report(capsys, "bg", "inertia", "--group", "D8", "--seed", "3")
    assert code == 0 and rep["holds"]


def test_bg_homotopy(capsys):
    code, rep = report(capsys, "bg", "homotopy", "--action", "trivial", "--algebra", "dual",
                       "--twist", "scale:-1", "--r", '{"1": 1}', "--depth", "2")
    assert code == 0 and rep["holds"] and not rep["difference_is_zero"]


def test_rootdata(capsys):
    _, rep = report(capsys, "rootdata", "schur", "--type", "A2", "--X", "root")
    assert rep["group"]["group"] == "Z/3"
    _, rep = report(capsys, "rootdata", "pi1", "--type", "D4", "--X", "root")
    assert rep["group"]["torsion"] == [2, 2]
    _, rep = report(capsys, "rootdata", "poincare", "--type", "A2")
    assert rep["P_W"] == [1, 2, 2, 1] and rep["P_flag_in_q"] == [1, 0, 2, 0, 2, 0, 1]
    code, rep = report(capsys, "rootdata", "split", "--type", "A1", "--q", "cyclotomic:4:1")
    assert not rep["splits"]
    _, rep = report(capsys, "rootdata", "brionpeyre", "--type", "B2")
    assert rep["holds"]
    _, rep = report(capsys, "rootdata", "minuscule", "--type", "A2", "--weight", "2,0")
    assert rep["minuscule_lift"] == [0, 1]


def test_orbits(capsys):
    _, rep = report(capsys, "orbit", "grading", "--type", "A2", "--weights", "1,1")
    assert rep["grading"]["dims"] == {"-2": 1, "-1": 2, "0": 2, "1": 2, "2": 1}
    _, rep = report(capsys, "orbit", "dims", "--builtin", "E6-trivalent")
    assert rep["orbit_dim"] == 58
    _, rep = report(capsys, "orbit", "dims", "--partition", "2,1")
    assert rep["centralizer_dim"] == rep["type_A_rank_oracle"] == 4
    _, rep = report(capsys, "orbit", "slicedim", "--type", "A2", "--weights", "2,2", "--P", "")
    assert rep["partial_resolution_slice"] == {"dim": 0}
    _, rep = report(capsys, "orbit", "grading", "--type", "E8", "--weights", "0,0,0,0,2,0,0,0")
    assert sum(rep["grading"]["dims"].values()) == 248


def test_group_cohomology(capsys):
    _, rep = report(capsys, "gcoh", "compute", "--group", "S3", "--module", "sl3-lattice",
                    "--degree", "0")
    assert rep["cohomology"]["group"] == "0"
    _, rep = report(capsys, "gcoh", "schur", "--group", "A4")
    assert rep["schur_multiplier"]["torsion"] == [2]
    _, rep = report(capsys, "gcoh", "product", "--first", "Z2", "--second", "Z2")
    assert rep["holds"] and rep["M(AxB)"] == "Z/2"
    _, rep = report(capsys, "gcoh", "central", "--group", "Q8", "--central", "center")
    assert rep["holds"] and rep["M(G/Z)"] == "Z/2"
    _, rep = report(capsys, "gcoh", "semidirect", "--orders", "3", "--gamma", "Z2",
                    "--action", "[[[2]]]")
    assert rep["holds"] and rep["M(G)"] == "0"
    code, rep = report(capsys, "gcoh", "claims")
    assert code == 1 and not rep["all_pass"]
    assert report(capsys, "gcoh", "section4")[1] == rep


def test_accept_subset(capsys):
    code, out, err = run(capsys, "accept", "--only", "1,9")
    assert code == 0 and json.loads(out)["all_pass"]
    assert "[PASS] criterion  1" in err and "[PASS] criterion  9" in err


@pytest.mark.parametrize("argv, field", [
    (["koszul", "check", "--algebra", '{"vertices": ["1"], "arrows": [{"src": "1"}]}'],
     "algebra.arrows[0].dst"),
    (["koszul", "check", "--algebra", "nope"], "algebra"),
    (["koszul", "check", "--algebra", "{not json"], "algebra"),
    (["hh", "compute", "--algebra", "A2", "--twist", "rotate"], "twist"),
    (["rootdata", "schur", "--type", "Q7"], "type"),
    (["rootdata", "split", "--type", "A1", "--q", "0"], "q"),
    (["bg", "inertia", "--group", "S3", "--perms", "[[[1,2,3]],[[1,2]]]"], "perms[0]"),
    (["bg", "homotopy", "--action", "dual-sign", "--r", '{"1": 1}'], "r"),
    (["orbit", "grading", "--type", "A2", "--weights", "3,0"], "weights"),
])
def test_malformed_input_names_the_field(capsys, argv, field):
    code, out, err = run(capsys, "--no-cache", *argv)
    assert code == 2 and out == ""
    assert err.startswith(f"error: {field}")


def test_missing_file_is_an_input_error(capsys, tmp_path):
    code, _, err = run(capsys, "koszul", "check", "--algebra", str(tmp_path / "missing.json"))
    assert code == 2


def test_json_file_input(capsys, tmp_path):
    path = tmp_path / "quiver.json"
    path.write_text(json.dumps({"vertices": ["1", "2"],
                                "arrows": [{"src": "1", "dst": "2", "name": "a"}]}))
    code, rep = report(capsys, "koszul", "dual", "--algebra", str(path), "--max-n", "1")
    assert code == 0 and rep["matches_ext"]


def test_cache_replays_byte_identical_output(capsys, cache_dir):
    argv = ["hh", "compute", "--algebra", "A2", "--min-degree", "-2"]
    code1, first, err1 = run(capsys, *argv)
    assert "cached" not in err1 and any(cache_dir.iterdir())
    code2, second, err2 = run(capsys, *argv)
    assert err2.strip() == "cached"
    assert second == first and code2 == code1
    _, third, err3 = run(capsys, "--no-cache", *argv)
    assert third == first and "cached" not in err3


def test_cache_key_depends_on_file_contents(capsys, tmp_path):
    path = tmp_path / "quiver.json"
    path.write_text(json.dumps({"vertices": ["1"], "arrows": []}))
    argv = ["koszul", "dual", "--algebra", str(path), "--max-n", "1"]
    run(capsys, *argv)
    path.write_text(json.dumps({"vertices": ["1", "2"],
                                "arrows": [{"src": "1", "dst": "2", "name": "a"}]}))
    _, out, err = run(capsys, *argv)
    assert "cached" not in err and '"1,0"' in out


def test_cached_failure_keeps_its_exit_code(capsys):
    argv = ["koszul", "check", "--algebra", "x3"]
    assert run(capsys, *argv)[0] == 1
    code, _, err = run(capsys, *argv)
    assert code == 1 and "cached" in err
