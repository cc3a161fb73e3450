import json
import subprocess
import sys

import numpy as np
import pytest

from qcoarse.cli import main
from qcoarse.io import StateFileError, dump_state, dumps_json, load_state, parse_state_file
from qcoarse.pauli import PauliString
from qcoarse.wigner import QuantumState

from conftest import double_bell, phase_free, w_like


def write_state(path, vec):
    path.write_text(dumps_json(dump_state(QuantumState(vec))), encoding="utf-8")
    return path


@pytest.fixture
def bell2(tmp_path):
    return write_state(tmp_path / "bell2.json", double_bell())


@pytest.fixture
def wstate(tmp_path):
    return write_state(tmp_path / "w.json", w_like())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestStateFiles:
    def test_double_bell(self, bell2):
        s = parse_state_file(bell2)
        assert s.num_qubits == 4
        np.testing.assert_allclose(s.vector, double_bell())

    def test_density_kind(self, tmp_path):
        rho = np.diag([0.5, 0.5, 0, 0]).astype(complex)
        doc = dump_state(rho)
        assert doc["kind"] == "density"
        np.testing.assert_allclose(load_state(doc).density, rho)

    def test_round_trip(self, tmp_path):
        v = np.array([1, 1j, -1, 0.5]) / np.linalg.norm([1, 1j, -1, 0.5])
        p = write_state(tmp_path / "s.json", v)
        np.testing.assert_allclose(parse_state_file(p).vector, v)

    def test_bad_dimension(self, tmp_path):
        p = tmp_path / "s.json"
        p.write_text(json.dumps({"dim": 3, "kind": "vector", "data": [[1, 0], [0, 0], [0, 0]]}))
        with pytest.raises(StateFileError, match="dimension must be 2\\^N"):
            parse_state_file(p)

    def test_not_normalized(self, tmp_path):
        p = tmp_path / "s.json"
        p.write_text(json.dumps({"dim": 2, "kind": "vector", "data": [[0.9, 0], [0, 0]]}))
        with pytest.raises(StateFileError, match="state not normalized"):
            parse_state_file(p)

    def test_malformed_json(self, tmp_path):
        p = tmp_path / "s.json"
        p.write_text('{"dim": 2,\n "kind": "vector"\n "data": []}')
        with pytest.raises(StateFileError, match="parse error at line 3") as info:
            parse_state_file(p)
        assert '"data": []' in str(info.value)

    @pytest.mark.parametrize(
        "doc",
        [
            {"dim": 2, "kind": "vector"},
            {"dim": 2, "kind": "ket", "data": []},
            {"dim": 2, "kind": "vector", "data": [[1, 0]]},
            {"dim": 2, "kind": "vector", "data": [[1, "x"], [0, 0]]},
            [1, 2],
        ],
    )
    def test_parse_errors(self, doc):
        with pytest.raises(StateFileError, match="parse error"):
            load_state(doc)

    def test_dumps_json_is_deterministic(self):
        assert dumps_json({"b": 1, "a": "σ"}) == '{\n  "b": 1,\n  "a": "σ"\n}\n'


class TestCommands:
    def test_field_json(self, capsys):
        code, out, _ = run(capsys, "field", "--degree", "4", "--m", "2", "--mode", "subfield", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["self_dual_basis"] == [3, 7, 12, 13]
        assert doc["modulus"] == [1, 1, 0, 0, 1]
        assert len(doc["cosets"]) == 4

    def test_field_text(self, capsys):
        code, out, _ = run(capsys, "field", "--degree", "3")
        assert code == 0
        assert "self-dual basis: σ^3, σ^5, σ^6" in out

    def test_mubs(self, capsys):
        code, out, _ = run(capsys, "mubs", "--degree", "2", "--format", "json")
        cols = json.loads(out)
        assert code == 0 and len(cols) == 5
        ops = [PauliString.parse(o) for c in cols for o in c["operators"]]
        assert len(phase_free(ops)) == 15

    def test_coarse_subfield(self, capsys):
        code, out, _ = run(capsys, "coarse", "--degree", "4", "--m", "2", "--mode", "subfield", "--format", "json")
        doc = json.loads(out)
        assert code == 0
        found = {o for s in doc["slopes"] for o in s["survivors"]}
        assert phase_free(PauliString.parse(o) for o in found) == {
            "ZZZZ", "IZIZ", "ZIZI", "ZYZY", "XZXZ", "YXYX", "YZYZ", "XYXY", "ZXZX",
            "YYYY", "IYIY", "YIYI", "XXXX", "IXIX", "XIXI",
        }

    def test_coarse_with_cnots(self, capsys):
        code, out, _ = run(
            capsys, "coarse", "--degree", "3", "--m", "1", "--basis", "1,s1,s2",
            "--cnots", "1:2,1:3,2:1,3:1", "--format", "json",
        )
        doc = json.loads(out)
        assert doc["cnots"] == ["1:2", "1:3", "2:1", "3:1"]
        ops = [PauliString.parse(o) for s in doc["slopes"] for o in s["survivors"]]
        assert phase_free(ops) == {"XII", "YII", "ZII"}

    def test_coarse_text(self, capsys):
        code, out, _ = run(capsys, "coarse", "--degree", "2", "--m", "1", "--mode", "subfield")
        assert code == 0
        assert out.splitlines()[-1].split() == ["inf", "XX"]

    def test_wigner_csv_sums_to_one(self, capsys, bell2):
        code, out, _ = run(capsys, "wigner", "--state", str(bell2), "--format", "csv")
        assert code == 0
        rows = out.splitlines()
        assert len(rows) == 17
        assert abs(sum(float(c) for r in rows[1:] for c in r.split(",")[1:]) - 1) < 1e-12

    def test_coarse_wigner_csv(self, capsys, bell2):
        code, out, _ = run(
            capsys, "coarse-wigner", "--degree", "4", "--m", "2", "--mode", "subfield",
            "--state", str(bell2), "--format", "csv",
        )
        rows = [r.split(",") for r in out.splitlines()]
        assert code == 0 and len(rows) == 5
        vals = np.array([[float(c) for c in r[1:]] for r in rows[1:]])
        assert abs(vals.sum() - 1) < 1e-12
        np.testing.assert_allclose(vals.T, [[0.25, 0.25, 0, 0], [0.25, 0.25, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])

    def test_coarse_wigner_csv_matches_json(self, capsys, wstate):
        base = ["coarse-wigner", "--m", "2", "--basis", "1,s1", "--state", str(wstate)]
        _, csv_out, _ = run(capsys, *base, "--format", "csv")
        _, json_out, _ = run(capsys, *base, "--format", "json")
        csv_vals = [[float(c) for c in r.split(",")[1:]] for r in csv_out.splitlines()[1:]]
        assert csv_vals == json.loads(json_out)["values"]

    def test_conjugate(self, capsys):
        code, out, _ = run(capsys, "conjugate", "--paulis", "XI,IZ,YY", "--gates", "1:2")
        assert code == 0
        assert out.splitlines() == ["XX", "ZZ", "-XZ"]
        assert all(str(PauliString.parse(l)) == l for l in out.splitlines())

    def test_output_file_and_env(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("QCOARSE_OUTPUT_DIR", str(tmp_path))
        code, out, _ = run(capsys, "mubs", "--degree", "1", "--output", "sub/mubs.txt")
        assert code == 0 and out == ""
        text = (tmp_path / "sub" / "mubs.txt").read_text(encoding="utf-8")
        _, direct, _ = run(capsys, "mubs", "--degree", "1")
        assert text == direct


class TestExitCodes:
    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["nope"],
            ["coarse", "--degree", "4"],
            ["coarse", "--degree", "4", "--m", "2"],
            ["field", "--degree", "2", "--modulus", "a,b"],
            ["conjugate", "--paulis", "XX", "--gates", "12"],
        ],
    )
    def test_usage(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2

    def test_validation(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"dim": 3, "kind": "vector", "data": [[1, 0]] * 3}))
        code, _, err = run(capsys, "wigner", "--state", str(bad))
        assert code == 3 and "dimension must be 2^N" in err

    @pytest.mark.parametrize(
        "argv",
        [
            ["field", "--degree", "2", "--modulus", "1,0,1"],
            ["coarse", "--degree", "4", "--m", "2", "--basis", "1,s5"],
            ["coarse", "--degree", "3", "--m", "1", "--mode", "subfield"],
            ["conjugate", "--paulis", "XX", "--gates", "1:3"],
            ["conjugate", "--paulis", "XQ", "--gates", "1:2"],
        ],
    )
    def test_invalid_input(self, capsys, argv):
        assert run(capsys, *argv)[0] == 3

    def test_degree_mismatch(self, capsys, bell2):
        assert run(capsys, "wigner", "--degree", "3", "--state", str(bell2))[0] == 3


def test_byte_identical_subprocess(bell2):
    cmds = [
        ["field", "--degree", "4", "--m", "2", "--basis", "1,s1", "--format", "json"],
        ["mubs", "--degree", "3"],
        ["coarse", "--degree", "4", "--m", "2", "--mode", "subfield", "--cnots", "1:3,2:4"],
        ["wigner", "--state", str(bell2), "--format", "json"],
        ["coarse-wigner", "--m", "2", "--mode", "subfield", "--state", str(bell2), "--format", "csv"],
        ["conjugate", "--paulis", "XXX,ZZZ,-YYY", "--gates", "1:2,1:3,2:1,3:1"],
    ]
    for cmd in cmds:
        outs = [
            subprocess.run([sys.executable, "-m", "qcoarse", *cmd], capture_output=True, check=True).stdout
            for _ in range(2)
        ]
        assert outs[0] == outs[1] and outs[0]
