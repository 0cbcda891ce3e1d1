import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from birkhoff.cli import main

E = math.exp(-math.sqrt(3) * math.pi)


def run(argv, capsys):
    try:
        rc = main(argv)
    except SystemExit as exc:
        rc = exc.code
    out, err = capsys.readouterr()
    return rc, out, err


def write_matrix(path, rows):
    path.write_text(json.dumps({"rows": [list(map(float, r)) for r in rows]}))
    return str(path)


@pytest.fixture
def counterexample(tmp_path):
    d, o = (1 - 2 * E) / 3, (1 + E) / 3
    return write_matrix(tmp_path / "counterexample.json", [[d, o, o], [o, d, o], [o, o, d]])


class TestCoords:
    def test_identity_matrix(self, tmp_path, capsys):
        rc, out, _ = run(["coords", "--order", "3", "--matrix", write_matrix(tmp_path / "pe.json", np.eye(3))], capsys)
        assert rc == 0
        c = json.loads(out)
        assert np.allclose(c["u"], [1, 0], atol=1e-15) and np.allclose(c["w"], [0, 0], atol=1e-15)

    def test_transposition(self, capsys):
        rc, out, _ = run(["coords", "--order", "3", "--u", "0", "--w", "1"], capsys)
        assert rc == 0
        assert np.allclose(json.loads(out)["rows"], [[0, 1, 0], [1, 0, 0], [0, 0, 1]], atol=1e-15)

    def test_complex_flag(self, capsys):
        rc, out, _ = run(["coords", "--u=-0.5+0.8660254037844386j"], capsys)
        assert rc == 0
        assert np.allclose(json.loads(out)["rows"], [[0, 0, 1], [1, 0, 0], [0, 1, 0]], atol=1e-15)

    def test_order4_zero(self, capsys):
        rc, out, _ = run(["coords", "--order", "4", "--zero"], capsys)
        assert rc == 0
        assert json.loads(out)["rows"] == [[0.25] * 4] * 4

    def test_coords_file(self, tmp_path, capsys):
        p = tmp_path / "c.json"
        p.write_text(json.dumps({"u": [0, 0], "w": [1, 0]}))
        rc, out, _ = run(["coords", "--coords", str(p)], capsys)
        assert rc == 0 and np.allclose(json.loads(out)["rows"][2], [0, 0, 1], atol=1e-15)

    def test_outside_w3(self, tmp_path, capsys):
        rc, _, err = run(["coords", "--matrix", write_matrix(tmp_path / "m.json", 2 * np.eye(3))], capsys)
        assert rc == 2 and "W3" in err

    def test_malformed_json(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text("{bad")
        rc, _, err = run(["coords", "--matrix", str(p)], capsys)
        assert rc == 1 and "malformed JSON" in err

    def test_missing_input(self, capsys):
        rc, _, _ = run(["coords"], capsys)
        assert rc == 1


class TestClassify:
    def test_interior(self, capsys):
        rc, out, _ = run(["classify", "--phi", "0", "--a", "0.6", "--b", "0.2"], capsys)
        assert rc == 0
        assert json.loads(out)["markov_class"] == "MARKOV_INTERIOR"

    def test_segment(self, capsys):
        rc, out, _ = run(["classify", "--phi", "0", "--a", "0.3", "--b", "0.3"], capsys)
        assert json.loads(out)["markov_class"] == "DIVISIBLE_NOT_MARKOV_LIMIT"

    def test_counterexample(self, counterexample, capsys):
        rc, out, _ = run(["classify", "--matrix", counterexample], capsys)
        r = json.loads(out)
        assert rc == 0
        assert r["in_B3sym"] is True and r["positive_semidefinite"] is False
        assert r["markov_class"] == "NOT_MARKOV"

    def test_verify(self, capsys):
        rc, out, _ = run(["classify", "--a", "0.6", "--b", "0.2", "--verify"], capsys)
        assert json.loads(out)["oracle"]["agree"] is True

    def test_asymmetric(self, tmp_path, capsys):
        m = write_matrix(tmp_path / "ns.json", [[0.3, 0.3, 0.4], [0.4, 0.3, 0.3], [0.3, 0.4, 0.3]])
        rc, _, err = run(["classify", "--matrix", m], capsys)
        assert rc == 2 and "not symmetric" in err

    def test_negative_b(self, capsys):
        rc, _, _ = run(["classify", "--a", "0.1", "--b=-0.1"], capsys)
        assert rc == 2

    def test_bad_flag_value(self, capsys):
        rc, _, _ = run(["classify", "--a", "zero", "--b", "0.1"], capsys)
        assert rc == 1

    def test_grid_csv(self, capsys):
        rc, out, _ = run(["classify", "--grid", "--phi-samples", "3", "--steps", "4"], capsys)
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["phi", "a", "b", "classifier_verdict", "oracle_verdict", "agree"]
        assert len(rows) == 1 + 3 * 15
        assert all(r[5] == "true" for r in rows[1:])

    def test_eps_flag(self, capsys):
        _, out, _ = run(["classify", "--a", "0.3000001", "--b", "0.3", "--eps", "1e-6"], capsys)
        assert json.loads(out)["markov_class"] == "DIVISIBLE_NOT_MARKOV_LIMIT"


class TestOtherCommands:
    def test_semigroup_generator(self, capsys):
        rc, out, _ = run(["semigroup", "--a", "0.5", "--b-re", "0.1", "--t", "1", "--generator", "--horizon", "5"], capsys)
        r = json.loads(out)
        assert rc == 0 and r["markov_generator"] and r["stays_bistochastic"]
        assert np.allclose(r["matrix"]["rows"], r["expm"]["rows"], atol=1e-12)

    def test_semigroup_symmetric(self, capsys):
        _, out, _ = run(["semigroup", "--theta", str(math.pi / 4), "--t", str(math.sqrt(2))], capsys)
        assert json.loads(out)["u"][0] == pytest.approx(math.exp(-1) * math.cosh(1), abs=1e-14)

    def test_semigroup_neutral(self, capsys):
        _, out, _ = run(["semigroup", "--neutral", "--t", "0"], capsys)
        r = json.loads(out)
        assert r["u"] == [0.5, 0.0] and r["w"] == [0.5, 0.0]

    def test_boundary(self, capsys):
        _, out, _ = run(["boundary", "--samples", "720"], capsys)
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["phi", "f"] and len(rows) == 721
        assert rows[1] == ["0.0", "1.0"]

    def test_roots(self, capsys):
        _, out, _ = run(["roots", "--a", "0.3", "--b", "0.3", "--n", "2"], capsys)
        r = json.loads(out)
        assert any(abs(x["a"] - math.sqrt(0.6) / 2) < 1e-12 for x in r["roots"])
        assert r["inf_divisible"] is True

    def test_pauli_family(self, capsys):
        _, out, _ = run(["pauli", "--vx", "1", "--vy", "2", "--vz", "3", "--t", "0.7"], capsys)
        r = json.loads(out)
        assert r["consistency_residual"] < 1e-12
        assert r["lambda"] == pytest.approx(math.exp(-2.1), abs=1e-12)

    def test_pauli_channel_with_state(self, tmp_path, capsys):
        p = tmp_path / "rho.json"
        p.write_text(json.dumps({"p1": 0.8, "p2": 0.2, "c": [0.1, 0.1]}))
        _, out, _ = run(["pauli", "--ax", "0.25", "--ay", "0.25", "--az", "0.25", "--rho", str(p)], capsys)
        state = json.loads(out)["output_state"]
        assert state["p1"] == pytest.approx(0.5) and np.allclose(state["c"], 0, atol=1e-15)

    def test_pauli_invalid(self, capsys):
        rc, _, _ = run(["pauli", "--ax", "0.9", "--ay", "0.9"], capsys)
        assert rc == 2
        rc, _, _ = run(["pauli", "--vx", "1", "--vy", "0", "--vz", "0"], capsys)
        assert rc == 2

    def test_order4(self, tmp_path, capsys):
        _, out, _ = run(["order4", "--matrix", write_matrix(tmp_path / "i4.json", np.eye(4)), "--rep3"], capsys)
        r = json.loads(out)
        assert np.allclose(r["coords"]["u"], [1, 0], atol=1e-14) and r["coords"]["x"] == pytest.approx(1)
        rep = np.array(r["rep3"]["rows"])
        assert np.allclose(rep[..., 0] + 1j * rep[..., 1], np.eye(3), atol=1e-14)
        _, out, _ = run(["order4", "--check-rep3", "20"], capsys)
        assert json.loads(out)["holds"] is True

    def test_csv_format_of_object(self, capsys):
        _, out, _ = run(["classify", "--a", "0.6", "--b", "0.2", "--format", "csv"], capsys)
        header, row = list(csv.reader(io.StringIO(out)))
        assert dict(zip(header, row))["markov_class"] == "MARKOV_INTERIOR"

    def test_output_file(self, tmp_path, capsys):
        target = tmp_path / "out.csv"
        rc, out, _ = run(["figure", "--which", "boundary", "--samples", "6", "--output", str(target)], capsys)
        assert rc == 0 and out == ""
        text = target.read_bytes()
        assert b"\r" not in text and text.startswith(b"phi,f\n")


class TestFigure:
    @pytest.mark.parametrize("which", ["polytope3", "bipyramid", "halfplane", "boundary", "semigroup", "pauli"])
    def test_emits_csv(self, which, capsys):
        rc, out, _ = run(["figure", "--which", which, "--samples", "5", "--steps", "5"], capsys)
        assert rc == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert len(rows) > 2 and all(len(r) == len(rows[0]) for r in rows)

    def test_unknown(self, capsys):
        rc, _, _ = run(["figure", "--which", "nope"], capsys)
        assert rc == 1

    def test_polytope_edges(self, capsys):
        _, out, _ = run(["figure", "--which", "polytope3"], capsys)
        rows = list(csv.DictReader(io.StringIO(out)))
        assert sum(r["kind"] == "vertex" for r in rows) == 6
        assert len({r["label"] for r in rows if r["kind"] == "edge"}) == 15

    def test_halfplane_series(self, capsys):
        _, out, _ = run(["figure", "--which", "halfplane", "--phi", "0.5235987756"], capsys)
        series = {r["series"] for r in csv.DictReader(io.StringIO(out))}
        assert {"bistochastic", "positive_definite"} <= series

    def test_circulant_row(self, capsys):
        a = 1 / math.sqrt(3)
        t = math.sqrt(3) * math.pi
        argv = ["figure", "--which", "semigroup", "--a", repr(a), "--b-re", "0", "--b-im", "0",
                "--t-max", "10", "--steps", "200", "--at", repr(t)]
        _, out, _ = run(argv, capsys)
        rows = {float(r["t"]): r for r in csv.DictReader(io.StringIO(out))}
        assert len(rows) == 202
        assert float(rows[t]["re_u"]) == pytest.approx(-E, abs=1e-12)
        assert float(rows[t]["im_u"]) == pytest.approx(0.0, abs=1e-12)

    def test_pauli_family(self, capsys):
        _, out, _ = run(["figure", "--which", "pauli", "--vx", "1", "--vy", "1", "--vz", "1", "--steps", "4"], capsys)
        fam = [r for r in csv.DictReader(io.StringIO(out)) if r["kind"] == "family"]
        assert len(fam) == 5


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ["classify", "--grid", "--phi-samples", "4", "--steps", "6"],
            ["figure", "--which", "halfplane", "--phi", "1.0"],
            ["order4", "--check-rep3", "5", "--seed", "3"],
        ],
    )
    def test_byte_identical(self, argv, capsys):
        _, first, _ = run(argv, capsys)
        _, second, _ = run(argv, capsys)
        assert first == second

    def test_bit_exact_numbers(self, capsys):
        from birkhoff import HalfPlaneCoord, classify

        _, out, _ = run(["classify", "--a", "0.6", "--b", "0.2"], capsys)
        assert json.loads(out)["theta"] == classify(HalfPlaneCoord(0.0, 0.6, 0.2)).theta


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "birkhoff", "coords", "--zero", "--format", "csv"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    header, row = proc.stdout.splitlines()
    assert header.split(",")[0] == "rows_0_0"
    assert row == ",".join([repr(1 / 3)] * 9)
