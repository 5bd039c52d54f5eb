import json

import pytest

from bunkbed.cli import main


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run(capsys, *argv):
    code = main(["--threads", "1", *argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def edge_h1(tmp_path):
    return write(tmp_path, "edge.json", {"n": 2, "edges": [[1, 2]], "H": [1], "u": 1, "v": 2})


@pytest.fixture
def star_file(tmp_path):
    return write(tmp_path, "star.json", {"n": 4, "edges": [[1, 2], [2, 3], [2, 4]], "H": [4], "u": 1, "v": 3})


class TestExact:
    def test_single_edge(self, capsys, edge_h1):
        code, out, _ = run(capsys, "exact", edge_h1, "--p", "1/2", "--json")
        doc = json.loads(out)
        assert code == 0
        assert doc["values"] == [{"p": "1/2", "same": "1/2", "cross": "1/2", "difference": "0/1"}]

    def test_empty_h(self, capsys, tmp_path):
        path = write(tmp_path, "e.json", {"n": 3, "edges": [[1, 2], [2, 3]], "u": 1, "v": 3})
        code, out, _ = run(capsys, "exact", path, "--p", "0.3", "--p", "2/3")
        assert code == 0
        assert all(row["cross"] == "0/1" for row in json.loads(out)["values"])

    def test_triangle(self, capsys, tmp_path):
        path = write(tmp_path, "t.json", {"n": 3, "edges": [[1, 2], [2, 3], [1, 3]], "H": [3], "u": 1, "v": 2})
        code, out, _ = run(capsys, "exact", path)
        doc = json.loads(out)
        assert code == (0 if doc["verdict"] == "PASS" else 1)
        assert len(doc["values"]) == 9

    def test_validation_exit(self, capsys, tmp_path):
        path = write(tmp_path, "bad.json", {"n": 2, "edges": [[1, 1]], "u": 1, "v": 2})
        code, _, err = run(capsys, "exact", path)
        assert code == 2 and "self-loop" in err

    def test_cap_exit(self, capsys, star_file):
        code, _, _ = run(capsys, "exact", star_file, "--cap", "4")
        assert code == 3

    def test_missing_terminals(self, capsys, tmp_path):
        path = write(tmp_path, "x.json", {"n": 2, "edges": [[1, 2]]})
        assert run(capsys, "exact", path)[0] == 2

    def test_pretty(self, capsys, edge_h1):
        code, out, _ = run(capsys, "--pretty", "exact", edge_h1, "--p", "1/2")
        assert code == 0 and "same=1/2 cross=1/2" in out


class TestMc:
    def test_deterministic(self, capsys, edge_h1):
        _, first, _ = run(capsys, "mc", edge_h1, "--p", "0.5", "--samples", "5000", "--seed", "4")
        _, second, _ = run(capsys, "mc", edge_h1, "--p", "0.5", "--samples", "5000", "--seed", "4")
        assert first == second
        doc = json.loads(first)
        assert doc["mean_diff"] == pytest.approx(doc["mean_same"] - doc["mean_cross"])

    def test_cross_zero(self, capsys, tmp_path):
        path = write(tmp_path, "e.json", {"n": 2, "edges": [[1, 2]], "u": 1, "v": 2})
        _, out, _ = run(capsys, "mc", path, "--samples", "1000")
        assert json.loads(out)["mean_cross"] == 0

    def test_invalid(self, capsys, edge_h1):
        assert run(capsys, "mc", edge_h1, "--p", "1.5")[0] == 2


class TestPathCheck:
    @pytest.mark.parametrize("n,h,exponent", [("2", "1", 1), ("3", "3", 0), ("5", "1,3", 2)])
    def test_pass(self, capsys, n, h, exponent):
        code, out, _ = run(capsys, "path-check", "--n", n, "--H", h)
        doc = json.loads(out)
        assert code == 0 and doc["verdict"] == "PASS"
        assert doc["factorization"]["factor_exponent"] == exponent

    def test_empty_h(self, capsys):
        assert run(capsys, "path-check", "--n", "3", "--H", "")[0] == 2


class TestReduce:
    def test_star_all(self, capsys, star_file):
        code, out, _ = run(capsys, "reduce", star_file, "--all")
        doc = json.loads(out)
        assert code == 0
        assert doc["h_prime_by_outcfg"] == {"0": [], "1": [], "2": [], "3": [2]}
        assert len(doc["rows"]) == 4 and doc["tower"] == {"same": True, "cross": True}

    def test_single_config(self, capsys, star_file):
        code, out, _ = run(capsys, "reduce", star_file, "--outside-config", "3")
        doc = json.loads(out)
        assert code == 0 and doc["h_prime_by_outcfg"] == {"3": [2]}

    def test_path_single_row(self, capsys, tmp_path):
        path = write(tmp_path, "p.json", {"n": 3, "edges": [[1, 2], [2, 3]], "H": [2], "u": 1, "v": 3})
        code, out, _ = run(capsys, "reduce", path)
        assert code == 0 and len(json.loads(out)["rows"]) == 1

    def test_not_forest(self, capsys, tmp_path):
        path = write(tmp_path, "t.json", {"n": 3, "edges": [[1, 2], [2, 3], [1, 3]], "u": 1, "v": 2})
        assert run(capsys, "reduce", path)[0] == 2

    def test_disconnected(self, capsys, tmp_path):
        path = write(tmp_path, "d.json", {"n": 4, "edges": [[1, 2], [3, 4]], "u": 1, "v": 3})
        code, _, err = run(capsys, "reduce", path)
        assert code == 2 and "different components" in err


class TestVerify:
    def test_trees4(self, capsys, tmp_path):
        spec = write(tmp_path, "s.json", {"family": {"kind": "all-labeled-trees", "n": 4}})
        out_file = tmp_path / "report.json"
        code, out, _ = run(capsys, "verify", "--spec", spec, "--out", str(out_file))
        assert code == 0
        assert json.loads(out_file.read_text())["violations"] == []

    def test_malformed(self, capsys, tmp_path):
        spec = write(tmp_path, "s.json", {"family": {"kind": "nope"}})
        assert run(capsys, "verify", "--spec", spec)[0] == 2
        bad = tmp_path / "broken.json"
        bad.write_text("{not json")
        assert run(capsys, "verify", "--spec", str(bad))[0] == 2

    def test_byte_identical(self, capsys, tmp_path):
        spec = write(tmp_path, "s.json", {"family": {"kind": "random-forests", "n": 5, "k": 2, "count": 5, "seed": 3},
                                          "mode": "both", "mc": {"samples": 500, "seed": 9}})
        first = run(capsys, "verify", "--spec", spec)[1]
        second = run(capsys, "--threads", "3", "verify", "--spec", spec)[1]
        assert first == second


class TestGen:
    def test_n2(self, capsys):
        code, out, _ = run(capsys, "gen", "--n", "2")
        assert code == 0 and json.loads(out) == {"n": 2, "edges": [[1, 2]]}

    def test_reproducible(self, capsys, tmp_path):
        a = run(capsys, "gen", "--n", "8", "--components", "3", "--seed", "5")[1]
        b = run(capsys, "gen", "--n", "8", "--components", "3", "--seed", "5", "--out", str(tmp_path / "g.json"))[1]
        assert a == b and json.loads((tmp_path / "g.json").read_text()) == json.loads(a)

    def test_invalid_components(self, capsys):
        assert run(capsys, "gen", "--n", "3", "--components", "5")[0] == 2
