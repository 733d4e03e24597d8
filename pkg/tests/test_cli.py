import json

import pytest

from cyclesep.cli import main


@pytest.fixture
def doc_path(tmp_path):
    p = tmp_path / "e.json"
    assert main(["gen", "--n", "14", "--seed", "2", "-o", str(p)]) == 0
    return str(p)


@pytest.fixture
def cage_path(tmp_path):
    p = tmp_path / "c.json"
    assert main(["gen", "--kind", "planted_cage", "--paths", "4", "--n", "17", "--seed", "1", "-o", str(p)]) == 0
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_and_faces(capsys, doc_path):
    code, out, _ = run(capsys, "check", doc_path)
    assert code == 0
    info = json.loads(out)
    assert info["euler"] == 2 and info["vertices"] == 14
    code, out, _ = run(capsys, "faces", doc_path)
    assert len(json.loads(out)["faces"]) == info["faces"]


def test_separate(capsys, octa_doc, tmp_path):
    p = tmp_path / "o.json"
    p.write_text(json.dumps(octa_doc))
    code, out, _ = run(capsys, "separate", str(p), "--a", "0", "--b", "5", "--cycle", "1,2,3,4")
    first, second = out.splitlines()
    assert code == 0 and first == "R=false"
    body = json.loads(second)
    assert body["a"]["same_side"] == [0] and body["a"]["other_side"] == [5]
    code, out, _ = run(capsys, "separate", str(p), "--a", "5", "--b", "3", "--cycle", "0,1,2")
    assert out.startswith("R=true")


def test_cycles_and_regions(capsys, octa_doc, tmp_path):
    p = tmp_path / "o.json"
    p.write_text(json.dumps(octa_doc))
    code, out, _ = run(capsys, "cycles", str(p), "--max-len", "4")
    assert code == 0 and len(out.splitlines()) == 23
    code, out, _ = run(capsys, "cycles", str(p), "--max-len", "4", "--through", "0,5")
    assert all("0" in line.split() and "5" in line.split() for line in out.splitlines())
    code, out, _ = run(capsys, "regions", str(p), "--support", "0,1,2")
    assert json.loads(out)["classes"] == [[3, 4, 5]]


def test_cages_and_fit(capsys, cage_path):
    meta = json.load(open(cage_path))["meta"]
    code, out, _ = run(capsys, "cages", cage_path, "--poles", "0,1", "--max-len", "5")
    cages = json.loads(out)["cages"]
    assert code == 0 and len(cages[0]["paths"]) == 4
    seq = ",".join(map(str, meta["marked"]))
    code, out, _ = run(capsys, "fit", cage_path, "--seq", seq, "--poles", "0,1", "--max-len", "5")
    assert json.loads(out)["fits"] is True
    paths = ";".join(",".join(map(str, p)) for p in meta["paths"])
    code, out, _ = run(capsys, "fit", cage_path, "--seq", seq, "--paths", paths)
    assert json.loads(out)["fits"] is True
    code, _, err = run(capsys, "fit", cage_path, "--seq", seq)
    assert code == 2 and "exactly one" in err


def test_envelope(capsys, tmp_path):
    p = tmp_path / "g.json"
    main(["gen", "--kind", "grapes", "--k", "3", "--n", "13", "--seed", "0", "-o", str(p)])
    capsys.readouterr()
    meta = json.load(open(p))["meta"]
    code, out, _ = run(capsys, "envelope", str(p), "--seq", ",".join(map(str, meta["marked"])), "--max-len", "6")
    assert code == 0 and json.loads(out)["nod"] == meta["hub"]


def test_verify_and_replay(capsys, tmp_path):
    rep = tmp_path / "r.json"
    code, out, err = run(capsys, "verify", "--property", "prop_B_symmetry", "--trials", "6", "--seed", "1",
                         "--out", str(rep))
    assert code == 1 and "prop_B_symmetry:" in err and out == ""
    code, out, _ = run(capsys, "replay", str(rep))
    assert code == 1 and all(r["fails"] for r in json.loads(out)["replays"])
    code, out, _ = run(capsys, "verify", "--property", "euler", "--trials", "3", "--seed", "1")
    assert code == 0 and json.loads(out)["failures"] == []


def test_exports(capsys, doc_path):
    code, out, _ = run(capsys, "export-dot", doc_path, "--highlight", "0,1")
    assert code == 0 and out.startswith("graph embedding")
    code, out, _ = run(capsys, "export-svg", doc_path, "--size", "200")
    assert out.startswith("<svg") and 'width="200"' in out


def test_input_errors(capsys, tmp_path, doc_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [0, 1], "rotation": {"0": [1], "1": []}}')
    assert run(capsys, "check", str(bad))[0] == 2
    assert run(capsys, "check", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "separate", doc_path, "--a", "99", "--b", "1", "--cycle", "0,1,2")[0] == 2
    assert run(capsys, "separate", doc_path, "--a", "x", "--b", "1", "--cycle", "0,1,2")[0] == 2
    assert run(capsys, "gen", "--kind", "grapes", "--k", "2")[0] == 2
    assert run(capsys, "verify", "--property", "bogus")[0] == 2
    assert run(capsys)[0] == 2
