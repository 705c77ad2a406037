import json
import subprocess
import sys

import pytest

from congforge import fixtures, jsonio, verify
from congforge.cli import main


@pytest.fixture()
def files(tmp_path):
    paths = {}
    for name, lat in (("m3", fixtures.m3()), ("n5", fixtures.n5())):
        p = tmp_path / ("%s.json" % name)
        p.write_text(jsonio.lattice_to_json(lat))
        paths[name] = str(p)
    for name, alg in (
        ("z2", fixtures.cyclic_group(2)),
        ("z2z2", fixtures.klein_group()),
        ("s3", fixtures.sym3()),
    ):
        p = tmp_path / ("%s.json" % name)
        p.write_text(json.dumps(jsonio.algebra_to_dict(alg)))
        paths[name] = str(p)
    return paths


def test_lattice_json_roundtrip(m3x2):
    again = jsonio.lattice_from_json(jsonio.lattice_to_json(m3x2))
    assert again == m3x2
    assert again.labels == m3x2.labels


def test_algebra_json_roundtrip():
    s3 = fixtures.sym3()
    again = jsonio.algebra_from_dict(jsonio.algebra_to_dict(s3))
    assert again.size == 6
    import numpy as np

    for name in ("mul", "inv"):
        assert np.array_equal(again.by_name[name], s3.by_name[name])


def test_partition_json():
    from congforge.partitions import Partition

    part = Partition.from_blocks(4, [[0, 2], [1], [3]])
    again = jsonio.partition_from_dict(jsonio.partition_to_dict(part))
    assert again == part
    with pytest.raises(ValueError):
        jsonio.partition_from_dict({"base_size": 3, "blocks": [[0, 1]]})


def test_check_exit_codes(files, capsys):
    assert main(["check", files["n5"], "--builtin", "modular"]) == 1
    verdict = json.loads(capsys.readouterr().out)
    assert verdict["status"] == "fails" and len(verdict["assignment"]) == 3
    assert main(["check", files["m3"], "--builtin", "2dist"]) == 0
    capsys.readouterr()
    assert main(["check", files["m3"], "--builtin", "arguesian-d3"]) == 0
    capsys.readouterr()
    assert main(["check", files["m3"], "--identity", "x*(y+z) = x*y + x*z"]) == 1
    capsys.readouterr()
    assert main(["check", files["m3"], "--builtin", "dn"]) == 2  # missing --n
    assert main(["check", "/nonexistent.json", "--builtin", "modular"]) == 2
    assert main(["check", files["m3"], "--identity", "x0 + ("]) == 2


def test_check_dn_star_on_line_lattice(tmp_path, capsys):
    # the 6-element lattice of GF(3)^2 is a lattice of permuting
    # equivalence relations, so the companion inequality holds, decisively
    assert main(["gen", "sub", "--dim", "2", "--p", "3"]) == 0
    path = tmp_path / "sub_2_3.json"
    path.write_text(capsys.readouterr().out)
    assert main(["check", str(path), "--builtin", "dn-star", "--n", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["status"] == "holds"


def test_check_sampled_mode(files, capsys):
    code = main(
        ["check", files["m3"], "--builtin", "dn-star", "--n", "3",
         "--mode", "sampled", "--samples", "500", "--seed", "9"]
    )
    assert code == 0
    assert json.loads(capsys.readouterr().out)["status"] == "sampled_pass"


def test_gen_commands(tmp_path, capsys):
    assert main(["gen", "pi", "--n", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["size"] == 5
    assert main(["gen", "sub", "--dim", "3", "--p", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["size"] == 16
    assert main(["gen", "m3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["size"] == 5 and len(data["covers"]) == 6
    m3_path = tmp_path / "m3.json"
    m3_path.write_text(json.dumps(data))
    two = tmp_path / "two.json"
    two.write_text(jsonio.lattice_to_json(fixtures.chain(2)))
    assert main(["gen", "product", str(m3_path), str(two)]) == 0
    assert json.loads(capsys.readouterr().out)["size"] == 10
    assert main(["gen", "pi"]) == 2  # --n required


def test_gen_respects_cap(monkeypatch, capsys):
    monkeypatch.setenv("CONGFORGE_CAP", "10")
    assert main(["gen", "sub", "--dim", "3", "--p", "2"]) == 2


def test_alg_commands(files, capsys):
    assert main(["alg", files["z2z2"], "con"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["count"] == 5
    assert main(["alg", files["s3"], "commutator", "top", "top"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["commutator"] == [[0, 3, 4], [1, 2, 5]]
    assert main(["alg", files["z2"], "embed-construct", "--alpha", "top", "--n", "3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["passed"] and data["interval_size"] == 16
    assert main(["alg", files["s3"], "wdt", "mul(x, mul(inv(y), z))"]) == 0
    assert json.loads(capsys.readouterr().out)["is_weak_difference_term"]
    assert main(["alg", files["s3"], "commutator", "top", "[[0,1],[2,3],[4,5]]"]) == 2


def test_verify_cli(files, capsys):
    assert main(["verify", "abx", "--seed", "7"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["passed"]
    ids = [c["check_id"] for c in data["suites"][0]["checks"]]
    assert ids == sorted(ids)
    assert main(["--human", "verify", "m3proj"]) == 0
    out = capsys.readouterr().out
    assert "m3proj-nonmodular-failure" in out


def test_cli_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "congforge.cli", "gen", "n5"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["size"] == 5


def test_suite_determinism():
    a = verify.suite_dnperm(seed=4, instances=50)
    b = verify.suite_dnperm(seed=4, instances=50)
    assert a.to_json() == b.to_json() or _strip_times(a) == _strip_times(b)


def _strip_times(result):
    return [(c.check_id, c.passed, json.dumps(c.witness, sort_keys=True, default=str))
            for c in result.checks]


def test_every_suite_has_unique_check_ids():
    seen = set()
    for suite in (
        verify.suite_abx(),
        verify.suite_m3proj(),
        verify.suite_commutator(),
        verify.suite_embedding(),
        verify.suite_dnperm(instances=20),
    ):
        for c in suite.checks:
            assert c.check_id not in seen
            seen.add(c.check_id)
            if not c.passed:
                assert c.witness is not None
