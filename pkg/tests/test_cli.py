import json
import subprocess
import sys

import pytest

from golden import EXAMPLES
from pseudomonodromy.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_components_table(capsys):
    code, out, _ = run(capsys, "components", "--max-period", "3")
    rows = out.splitlines()[1:]
    assert code == 0 and len(rows) == 4
    assert rows[0].split() == ["2", "1/3", "2/3", "BA", "B"]
    assert ["3", "1/7", "2/7", "BBA", "BB"] in [r.split() for r in rows]
    assert ["3", "3/7", "4/7", "BAA", "BA"] in [r.split() for r in rows]
    code, out, _ = run(capsys, "components", "--max-period", "2")
    assert len(out.splitlines()) == 2
    code, out, _ = run(capsys, "components", "--max-period", "5")
    assert ["5", "13/31", "18/31", "BABBA", "BABB"] in [r.split() for r in out.splitlines()]


def test_components_json(capsys):
    code, out, _ = run(capsys, "components", "--max-period", "4", "--format", "json")
    data = json.loads(out)
    assert data["schema_version"] == 1 and len(data["components"]) == 10


def test_pool_file_is_written_and_reused(capsys, tmp_path):
    path = tmp_path / "p.json"
    run(capsys, "components", "--max-period", "4", "--pool", str(path))
    assert json.loads(path.read_text())["max_period"] == 4
    path.write_text("garbage")
    code, out, _ = run(capsys, "components", "--max-period", "4", "--pool", str(path))
    assert code == 0 and len(out.splitlines()) == 11


def test_kneading(capsys):
    code, out, _ = run(capsys, "kneading", "13/31", "18/31")
    assert code == 0 and "BABBA" in out and "BABB" in out
    code, out, _ = run(capsys, "kneading", "3/7")
    assert "(BA∘)*" in out


def test_conspicuous(capsys):
    code, out, _ = run(capsys, "conspicuous", "10/63", "17/63", "--format", "json")
    data = json.loads(out)
    assert [c["kneading"] for c in data["conspicuous"]] == ["BBABBB", "BBABA", "BBAA"]
    assert data["return_times"] == [4, 5]


def test_verify_pair(capsys):
    code, out, _ = run(capsys, "verify", "13/31", "18/31")
    assert code == 0 and "covered" in out
    code, out, _ = run(capsys, "verify", "2/5", "3/5", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["covered"] and data["structural"]["ok"]
    assert [p["angle"] for p in data["residual_points"]] == ["2/5", "3/5"]
    assert all(p["in_xi"] for p in data["residual_points"])


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "--all", "--max-period", "6", "--jobs", "1")
    assert code == 0
    assert out.splitlines()[-1] == "total: 52 components, 0 failures"


def test_verify_all_parallel_matches_serial(capsys):
    _, serial, _ = run(capsys, "verify", "--all", "--max-period", "5", "--jobs", "1", "--format", "json")
    _, par, _ = run(capsys, "verify", "--all", "--max-period", "5", "--jobs", "2", "--format", "json")
    assert serial == par


def test_invalid_pair(capsys):
    with pytest.raises(SystemExit, match="period mismatch"):
        main(["verify", "1/3", "3/7"])
    with pytest.raises(SystemExit, match="not a Lavaurs pair"):
        main(["verify", "3/15", "12/15"])
    with pytest.raises(SystemExit):
        main(["disc", "1/3", "2/3", "pi"])
    assert "error" in capsys.readouterr().err


def test_disc(capsys):
    code, out, _ = run(capsys, "disc", "1/3", "2/3", "1/6")
    assert code == 0 and "m = 1" in out
    code, out, _ = run(capsys, "disc", "1/3", "2/3", "0")
    assert "not in Disc" in out


def test_marker(capsys):
    code, out, _ = run(capsys, "marker", "3/7", "4/7", "11/14")
    assert code == 0 and "chain: (⋆BA)* (infinite" in out
    code, out, _ = run(capsys, "marker", "2/5", "3/5", "2/5", "--format", "json")
    data = json.loads(out)
    assert data["chain"]["exceptional"] and data["consistent"]


def test_render_to_file(capsys, tmp_path):
    out = tmp_path / "lob.svg"
    code, _, _ = run(capsys, "render", "13/31", "18/31", "--out", str(out))
    assert code == 0 and out.read_text().startswith("<?xml")
    with pytest.raises(SystemExit):
        main(["render", "3/7", "4/7", "--step", "7"])


def test_report(capsys):
    code, out, _ = run(capsys, "report")
    assert code == 0
    for line, _ in EXAMPLES["Example 1"]["chains"]:
        assert line in out
    code, again, _ = run(capsys, "report")
    assert out == again


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "pseudomonodromy", "components", "--max-period", "2"],
                         capture_output=True, text=True, check=True)
    assert "1/3" in res.stdout
