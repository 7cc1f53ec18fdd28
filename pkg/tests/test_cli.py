import json

import pytest

from chimera_qubo.bench import fileio
from chimera_qubo.cli import main
from chimera_qubo.generators import gen_ising_fields
from chimera_qubo.instances import ising_to_qubo
from chimera_qubo.lpformat import parse_lp


@pytest.fixture
def ising_file(tmp_path):
    path = tmp_path / "c1.txt"
    fileio.write_instance(gen_ising_fields(1, 3), path)
    return path


def test_gen(tmp_path, capsys):
    assert main(["gen", "--family", "uniform-pm1", "--k", "2", "--seed", "5", "--count", "2",
                 "--out-dir", str(tmp_path)]) == 0
    files = sorted(tmp_path.iterdir())
    assert [f.name for f in files] == ["uniform-pm1_k2_s5.txt", "uniform-pm1_k2_s6.txt"]
    assert fileio.read_instance(files[0]).topology.num_edges == 80


def test_gen_subset(tmp_path):
    subset = tmp_path / "keep.txt"
    subset.write_text("0 4 5\n")
    assert main(["gen", "--family", "ising-zero-field", "--k", "1", "--subset", str(subset),
                 "--out-dir", str(tmp_path / "o")]) == 0
    inst = fileio.read_instance(tmp_path / "o" / "ising-zero-field_k1_s0.txt")
    assert inst.nodes == (0, 4, 5)


def test_convert(ising_file, tmp_path):
    out = tmp_path / "q.txt"
    assert main(["convert", str(ising_file), str(out), "--to", "qubo"]) == 0
    assert fileio.read_instance(out) == ising_to_qubo(fileio.read_instance(ising_file))
    back = tmp_path / "i.txt"
    assert main(["convert", str(out), str(back), "--to", "ising"]) == 0
    assert "4 * qubo(x)" in back.read_text()
    stripped = tmp_path / "s.txt"
    assert main(["convert", str(ising_file), str(stripped), "--strip-fields"]) == 0
    assert set(fileio.read_instance(stripped).h.values()) == {0}
    assert main(["convert", str(out), str(stripped), "--strip-fields"]) == 2


def test_emit(ising_file, tmp_path, capsys):
    assert main(["emit", str(ising_file)]) == 0
    text = capsys.readouterr().out
    assert parse_lp(text).binaries[0] == "x0"
    out = tmp_path / "m.lp"
    assert main(["emit", str(ising_file), "--form", "miqp", "--repair", "diag-dominant",
                 "--out", str(out)]) == 0
    assert "\\Formulation: miqp" in out.read_text()


def test_solve_methods_agree(ising_file, capsys):
    values = []
    for method in ("brute", "dp"):
        assert main(["solve", str(ising_file), "--method", method, "--json"]) == 0
        values.append(json.loads(capsys.readouterr().out)["value"])
    assert main(["solve", str(ising_file), "--max-iters", "2000"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == f"value {values[0]}"
    assert values[0] == values[1]


def test_bench_and_stats(tmp_path, capsys):
    csv_path = tmp_path / "r.csv"
    assert main(["bench", "--family", "uniform-pm1", "--k", "1", "--k", "2", "--count", "3",
                 "--csv", str(csv_path)]) == 0
    table = capsys.readouterr().out
    assert "C1" in table and "C2" in table
    assert main(["stats", str(csv_path)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("group,count")
    assert len(lines) == 3
    plain = tmp_path / "t.txt"
    plain.write_text("1\n4\n")
    assert main(["stats", str(plain)]) == 0
    assert capsys.readouterr().out.splitlines()[1] == "all,2,2.5,2,1,4,2.12132"


def test_bench_inputs(ising_file, capsys):
    assert main(["bench", "--input", str(ising_file), "--method", "dp"]) == 0
    assert "input" in capsys.readouterr().out


def test_usage_errors(ising_file):
    assert main(["nope"]) == 1
    assert main(["gen", "--k", "2"]) == 1
    assert main(["solve", str(ising_file), "--pert", "abc"]) == 1
    assert main(["bench", "--k", "1"]) == 1


def test_data_errors(tmp_path, ising_file):
    bad = tmp_path / "bad.txt"
    bad.write_text("ising 1 2 1\n0 0 1\n0 1 1\n1 1 1\n")
    assert main(["solve", str(bad)]) == 2
    assert main(["solve", str(ising_file), "--method", "brute", "--cap", "4"]) == 2
    assert main(["gen", "--family", "uniform-pm1", "--k", "0",
                 "--out-dir", str(tmp_path)]) == 2
