import json

import pytest

from perturbed_ramsey.cli import main
from perturbed_ramsey.graphcore import Graph, read_graph, write_graph


def run(argv):
    return main(argv)


@pytest.fixture
def k6_file(tmp_path):
    path = tmp_path / "k6.txt"
    write_graph(Graph.complete(6), path)
    return str(path)


@pytest.fixture
def k5_file(tmp_path):
    path = tmp_path / "k5.txt"
    write_graph(Graph.complete(5), path)
    return str(path)


class TestGen:
    def test_gnp_roundtrip(self, tmp_path):
        out = tmp_path / "g.txt"
        assert run(["gen", "--model", "gnp", "--n", "12", "--p", "0.3",
                    "--seed", "9", "--out", str(out)]) == 0
        g = read_graph(out)
        assert g.n == 12

    def test_bipartite(self, tmp_path):
        out = tmp_path / "b.txt"
        assert run(["gen", "--model", "bipartite", "--n", "7", "--out", str(out)]) == 0
        assert read_graph(out).m == 12

    def test_perturbed_sidecar(self, tmp_path):
        out = tmp_path / "p.txt"
        assert run(["gen", "--model", "perturbed", "--n", "10", "--p", "0.2",
                    "--seed", "4", "--out", str(out)]) == 0
        sidecar = json.loads((tmp_path / "p.txt.json").read_text())
        assert sidecar["n"] == 10
        assert sidecar["seed"] == 4
        assert sidecar["seed_kind"] == "complete-bipartite"
        assert sidecar["seed_edge_count"] == 25
        assert set(sidecar) == {
            "n", "p", "seed", "seed_kind", "partition",
            "seed_edge_count", "random_edge_count",
        }

    def test_gen_determinism(self, tmp_path):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        for out in (a, b):
            run(["gen", "--model", "perturbed", "--n", "14", "--p", "0.1",
                 "--seed", "3", "--out", str(out)])
        assert a.read_bytes() == b.read_bytes()


class TestDensity:
    def test_graph_densities(self, k5_file, capsys):
        assert run(["density", "--graph", k5_file]) == 0
        out = capsys.readouterr().out
        assert "rho = 2" in out
        assert "d2 = 3" in out
        assert "m2 = 3" in out

    def test_asymmetric(self, k5_file, tmp_path, capsys):
        left = tmp_path / "k3.txt"
        write_graph(Graph.complete(3), left)
        assert run(["density", "--graph", k5_file, "--asym-left", str(left)]) == 0
        out = capsys.readouterr().out
        assert "m2_asym = 20/7" in out

    def test_closed_form(self, capsys):
        assert run(["density", "--closed-form", "3", "5"]) == 0
        assert "= 20/7" in capsys.readouterr().out

    def test_nothing_to_do(self, capsys):
        assert run(["density"]) == 2


class TestArrow:
    def test_exit_codes(self, k6_file, k5_file):
        assert run(["arrow", "--graph", k6_file, "--s", "3", "--t", "3"]) == 0
        assert run(["arrow", "--graph", k5_file, "--s", "3", "--t", "3"]) == 1
        assert run(["arrow", "--graph", k6_file, "--s", "3", "--t", "3",
                    "--budget-nodes", "1"]) == 2

    def test_witness_json(self, k5_file, tmp_path):
        wpath = tmp_path / "w.json"
        assert run(["arrow", "--graph", k5_file, "--s", "3", "--t", "3",
                    "--witness", str(wpath)]) == 1
        data = json.loads(wpath.read_text())
        assert data["kind"] == "edge-coloring"
        assert len(data["edges"]) == 10
        assert all(c in (0, 1) for _, _, c in data["edges"])

    def test_cnf_export(self, k5_file, tmp_path):
        cpath = tmp_path / "f.cnf"
        run(["arrow", "--graph", k5_file, "--s", "3", "--t", "3", "--cnf", str(cpath)])
        assert cpath.read_text().startswith("p cnf 10 20\n")

    def test_vertex_mode(self, tmp_path):
        path = tmp_path / "k7.txt"
        write_graph(Graph.complete(7), path)
        assert run(["arrow", "--graph", str(path), "--vertex", "--r", "4"]) == 0
        assert run(["arrow", "--graph", str(path), "--vertex", "--r", "5"]) == 1


class TestConstruct:
    def test_k4_adversary(self, tmp_path):
        out = tmp_path / "c.json"
        code = run(["construct", "k4-adversary", "--n", "16", "--p", "0.04",
                    "--seed", "2", "--out", str(out)])
        data = json.loads(out.read_text())
        assert data["construction"] == "k4-adversary"
        if code == 0:
            assert data["verified"] is True
            assert all(c in (0, 1) for _, _, c in data["edges"])
        else:
            assert data["outcome"] in ("precondition-failed", "budget-exhausted")

    def test_bipartite_extend(self, tmp_path):
        out = tmp_path / "e.json"
        code = run(["construct", "bipartite-extend", "--n", "12", "--p", "0.05",
                    "--seed", "1", "--r", "5", "--out", str(out)])
        assert code == 0
        data = json.loads(out.read_text())
        assert data["verified"] is True

    def test_construct_determinism(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for out in (a, b):
            run(["construct", "k4-adversary", "--n", "16", "--p", "0.04",
                 "--seed", "2", "--out", str(out)])
        assert a.read_bytes() == b.read_bytes()

    def test_drc(self, tmp_path, k6_file):
        out = tmp_path / "d.json"
        code = run(["construct", "drc", "--graph", k6_file, "--r", "2", "--m", "2",
                    "--a", "2", "--t", "1", "--seed", "3", "--out", str(out)])
        assert code == 0
        data = json.loads(out.read_text())
        assert data["verified"] is True and len(data["vertices"]) >= 2

    def test_mono_clique(self, tmp_path, k6_file):
        coloring = tmp_path / "col.json"
        g = Graph.complete(6)
        coloring.write_text(json.dumps(
            {"edges": [[u, v, 0] for u, v in g.edges()]}
        ))
        out = tmp_path / "m.json"
        code = run(["construct", "mono-clique", "--graph", k6_file,
                    "--coloring", str(coloring), "--r", "3", "--u-floor", "3",
                    "--w-floor", "1", "--t", "1", "--seed", "1", "--out", str(out)])
        assert code == 0
        data = json.loads(out.read_text())
        assert data["color"] == 0 and len(data["vertices"]) == 3

    def test_arrow_witness_feeds_mono_clique(self, tmp_path, k5_file):
        # the witness JSON from `arrow` is a valid `--coloring` input
        wpath = tmp_path / "w.json"
        assert run(["arrow", "--graph", k5_file, "--s", "3", "--t", "3",
                    "--witness", str(wpath)]) == 1
        out = tmp_path / "m.json"
        code = run(["construct", "mono-clique", "--graph", k5_file,
                    "--coloring", str(wpath), "--r", "3", "--u-floor", "2",
                    "--w-floor", "1", "--t", "1", "--seed", "2", "--out", str(out)])
        # the witness avoids monochromatic triangles, so this must fail
        assert code == 1
        data = json.loads(out.read_text())
        assert data["outcome"] in ("precondition-failed", "budget-exhausted")


class TestExperiment:
    def test_estimate_csv(self, tmp_path):
        out = tmp_path / "r.csv"
        assert run(["experiment", "estimate", "--model", "perturbed-bipartite",
                    "--r", "3", "--n", "6", "--p", "1.0", "--trials", "5",
                    "--seed", "1", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("n,p,trials")
        assert lines[1].startswith("6,1.0,5,5,0,0,1.0")
        assert (tmp_path / "r.csv.manifest.json").exists()

    def test_sweep_csv_and_manifest(self, tmp_path):
        out = tmp_path / "s.csv"
        assert run(["experiment", "sweep", "--model", "perturbed-bipartite",
                    "--r", "3", "--n", "6,8", "--trials", "10", "--seed", "2",
                    "--max-iters", "3", "--out", str(out)]) == 0
        manifest = json.loads((tmp_path / "s.csv.manifest.json").read_text())
        assert [c["n"] for c in manifest["curves"]] == [6, 8]
        assert manifest["version"]

    def test_sweep_grid(self, tmp_path):
        out = tmp_path / "g.csv"
        assert run(["experiment", "sweep", "--model", "perturbed-bipartite",
                    "--r", "3", "--n", "6", "--trials", "10", "--seed", "2",
                    "--p-grid", "0.0,0.5,1.0", "--out", str(out)]) == 0
        assert len(out.read_text().splitlines()) == 4  # header + 3 grid points

    def test_construct_missing_args(self, tmp_path):
        out = tmp_path / "x.json"
        assert run(["construct", "k4-adversary", "--seed", "1", "--out", str(out)]) == 2
        assert run(["construct", "drc", "--seed", "1", "--out", str(out)]) == 2
