import json
import subprocess
import sys

import pytest

from dualmat.cli import EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, run


def call(capsys, *argv):
    try:
        code = run(list(map(str, argv)))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


@pytest.fixture
def gen(tmp_path, capsys):
    def make(name, *extra):
        path = tmp_path / f"{name}{'_'.join(extra)}.json"
        code, man = call(capsys, "gen", name, *extra, "-o", path)
        assert code == EXIT_OK
        return path, man
    return make


def test_gen_manifests(gen):
    _, m = gen("cone-k5")
    assert (m["vertices"], m["edges"], m["faces"]) == (6, 15, 10)
    _, m = gen("grid", "--dims", "4,2,1")
    assert (m["vertices"], m["edges"], m["faces"]) == (30, 59, 38)
    _, m = gen("grid", "--dims", "4,2,1", "--pair", "z110,z310")
    assert (m["vertices"], m["edges"], m["faces"]) == (28, 58, 38)


def test_gen_is_bit_stable(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        call(capsys, "gen", "an", "--n", 5, "-o", p)
    assert a.read_bytes() == b.read_bytes()


def test_embed_tetrahedron_and_validate(gen, tmp_path, capsys):
    path, _ = gen("tetrahedron")
    out = tmp_path / "cert"
    code, verdict = call(capsys, "embed", path, "--assert-simply-connected", "--out", out, "--report", out)
    assert code == EXIT_OK and verdict["status"] == "EMBEDDABLE"
    assert (out / "verdict.json").exists() and (out / "dual_graph.png").exists()
    code, rep = call(capsys, "validate", path, "--rotation", out / "rotation.json",
                     "--dual-graph", out / "dual_graph.json")
    assert code == EXIT_OK and rep["valid"]


def test_embed_cone_is_inconclusive(gen, capsys):
    path, _ = gen("cone-k5")
    code, v = call(capsys, "embed", path)
    assert code == EXIT_INCONCLUSIVE and "not local" in v["reason"]


def test_embed_an_needs_the_assertion(gen, capsys):
    path, _ = gen("an", "--n", "4")
    assert call(capsys, "embed", path)[0] == EXIT_INCONCLUSIVE
    code, v = call(capsys, "embed", path, "--assert-simply-connected")
    assert code == EXIT_NEGATIVE and v["witness"]


def test_checks(gen, capsys):
    torus, _ = gen("torus")
    assert call(capsys, "check", torus, "--what", "nullhomologous")[0] == EXIT_NEGATIVE
    tet, _ = gen("tetrahedron")
    for what in ("local", "nullhomologous", "locally-connected"):
        assert call(capsys, "check", tet, "--what", what)[0] == EXIT_OK


def test_dual_matroid_and_link(gen, capsys):
    cone, _ = gen("cone-k5")
    code, m = call(capsys, "dual-matroid", cone)
    assert code == EXIT_OK and len(m["ground"]) == 10 and m["rank"] == 0
    code, l = call(capsys, "link", cone, "--vertex", "apex")
    assert code == EXIT_OK and len(l["nodes"]) == 5 and len(l["links"]) == 10


def test_split_modes(gen, tmp_path, capsys):
    a, _ = gen("appendix-a")
    for flag in ("--vertical", "--edge", "--full"):
        assert call(capsys, "split", a, flag)[0] == EXIT_OK
    assert call(capsys, "split", a, "--lazy", "e@v")[0] == EXIT_OK
    assert call(capsys, "split", a, "--lazy", "e@nowhere")[0] == EXIT_INPUT


def test_verify_and_regular_rep(tmp_path, capsys):
    code, rep = call(capsys, "verify", "an", "--n", 4)
    assert code == EXIT_OK and rep["all_pass"]
    assert call(capsys, "verify", "an", "--n", 2)[0] == EXIT_INPUT
    mat = tmp_path / "m.json"
    mat.write_text(json.dumps({"rows": [[1, 1], [1, -1], [1, 0], [0, -1]]}))
    code, rep = call(capsys, "regular-rep", mat)
    assert code == EXIT_OK and rep["regular"] and rep["totally_unimodular"] is False


def test_bad_input_exits_3(tmp_path, capsys):
    assert call(capsys, "frobnicate")[0] == EXIT_INPUT
    assert call(capsys, "embed", tmp_path / "missing.json")[0] == EXIT_INPUT
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert call(capsys, "embed", junk)[0] == EXIT_INPUT
    assert call(capsys, "gen", "grid", "--pair", "z110")[0] == EXIT_INPUT


def test_scan_limit(tmp_path, capsys):
    code, rep = call(capsys, "scan", "--dims", "2,2,1", "--limit", 3, "--report", tmp_path)
    assert rep["base_status"] == "EMBEDDABLE" and rep["pairs_scanned"] == 3
    assert code in (EXIT_OK, EXIT_NEGATIVE)
    assert (tmp_path / "scan.csv").read_text().count("\n") == 4


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "dualmat", "gen", "tetrahedron"], capture_output=True, text=True)
    assert r.returncode == 0 and len(json.loads(r.stdout)["faces"]) == 4
