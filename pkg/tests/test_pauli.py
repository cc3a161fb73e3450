import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qcoarse.field import make_field
from qcoarse.pauli import (
    DisplacementLabel,
    PauliString,
    cnot_conjugate,
    cnot_dense,
    displacement_dense,
    displacement_string,
    fourier_dense,
    phase_phi,
)

from conftest import oracle_chi, oracle_x, oracle_z, poly_mulmod

Y = np.array([[0, -1j], [1j, 0]])
H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)


def all_labels(f):
    return [(a, b) for a in f.elements() for b in f.elements()]


class TestPhase:
    def test_axes_have_no_phase(self, small_field):
        for a in small_field.elements():
            assert phase_phi(small_field, a, 0) == 1
            assert phase_phi(small_field, 0, a) == 1

    def test_single_qubit(self):
        f = make_field(1)
        assert phase_phi(f, 1, 1) == 1j

    @pytest.mark.parametrize("degree", [1, 2, 3, 4])
    def test_square_is_character(self, degree):
        f = make_field(degree)
        for a, b in all_labels(f):
            assert phase_phi(f, a, b) ** 2 == oracle_chi(poly_mulmod(a, b, f.modulus), f.modulus)


class TestDense:
    def test_single_qubit_y(self):
        # i Z X = -Y: Hermitian, and equal to Y up to the global sign
        f = make_field(1)
        z = np.diag([1, -1])
        x = np.array([[0, 1], [1, 0]])
        np.testing.assert_allclose(displacement_dense((1, 1), field=f), 1j * z @ x)
        np.testing.assert_allclose(displacement_dense((1, 1), field=f), -Y)
        assert str(displacement_string(DisplacementLabel(1, 1, f))) == "-Y"

    @pytest.mark.parametrize("degree", [1, 2, 3])
    def test_matches_definition(self, degree):
        f = make_field(degree)
        for a, b in all_labels(f):
            ref = phase_phi(f, a, b) * oracle_z(f, a) @ oracle_x(f, b)
            np.testing.assert_allclose(displacement_dense((a, b), field=f), ref, atol=1e-12)

    @pytest.mark.parametrize("degree", [1, 2, 3])
    def test_hermitian_involution(self, degree):
        f = make_field(degree)
        eye = np.eye(f.order)
        for lab in all_labels(f):
            d = displacement_dense(lab, field=f)
            np.testing.assert_allclose(d, d.conj().T, atol=1e-12)
            np.testing.assert_allclose(d @ d, eye, atol=1e-12)

    @pytest.mark.parametrize("degree", [1, 2, 3])
    def test_weyl_commutation(self, degree):
        f = make_field(degree)
        for a, b in all_labels(f):
            z, x = oracle_z(f, a), oracle_x(f, b)
            chi = oracle_chi(poly_mulmod(a, b, f.modulus), f.modulus)
            np.testing.assert_allclose(z @ x, chi * x @ z, atol=1e-12)

    def test_dense_limit(self):
        f = make_field(11)
        with pytest.raises(ValueError, match="dense oracle limit"):
            displacement_dense((1, 1), field=f)


class TestFourier:
    def test_single_qubit_is_hadamard(self):
        np.testing.assert_allclose(fourier_dense(make_field(1)), H, atol=1e-15)

    def test_is_hadamard_power(self, gf8):
        # the self-dual basis makes chi(v v') factor over qubits
        np.testing.assert_allclose(fourier_dense(gf8), np.kron(np.kron(H, H), H), atol=1e-12)

    @pytest.mark.parametrize("degree", [1, 2, 3])
    def test_unitary_and_conjugates_z_to_x(self, degree):
        f = make_field(degree)
        F = fourier_dense(f)
        np.testing.assert_allclose(F @ F.conj().T, np.eye(f.order), atol=1e-12)
        for a in f.elements():
            np.testing.assert_allclose(F @ oracle_z(f, a) @ F.conj().T, oracle_x(f, a), atol=1e-12)


class TestPauliString:
    @pytest.mark.parametrize("text", ["iZX", "XII", "-YY", "-iI", "ZZZZ"])
    def test_round_trip(self, text):
        assert str(PauliString.parse(text)) == text

    def test_plus_prefix(self):
        assert PauliString.parse("+XZ") == PauliString("XZ")

    @pytest.mark.parametrize("bad", ["", "iABC", "XQ", "--X"])
    def test_parse_errors(self, bad):
        with pytest.raises(ValueError):
            PauliString.parse(bad)

    @given(st.text(alphabet="IXYZ", min_size=1, max_size=6), st.integers(0, 3))
    def test_round_trip_property(self, letters, phase):
        p = PauliString(letters, phase)
        assert PauliString.parse(str(p)) == p
        z, x, k = p.zx()
        assert PauliString.from_zx(z, x, k) == p

    @given(st.text(alphabet="IXYZ", min_size=1, max_size=4), st.text(alphabet="IXYZ", min_size=4, max_size=4))
    def test_commutation_matches_dense(self, a, b):
        b = b[: len(a)]
        p, q = PauliString(a), PauliString(b)
        pd, qd = p.to_dense(), q.to_dense()
        assert p.commutes(q) == np.allclose(pd @ qd, qd @ pd)


class TestDisplacementString:
    def test_identity(self, gf8):
        p = displacement_string(DisplacementLabel(0, 0, gf8))
        assert p == PauliString("III")

    def test_gf4_z_sigma(self, gf4):
        assert str(displacement_string(DisplacementLabel(gf4.sigma(1), 0, gf4))) == "ZI"

    def test_gf4_x_one(self, gf4):
        assert str(displacement_string(DisplacementLabel(0, 1, gf4))) == "XX"

    @pytest.mark.parametrize("degree", [1, 2, 3])
    def test_matches_dense(self, degree):
        f = make_field(degree)
        for a, b in all_labels(f):
            p = displacement_string(DisplacementLabel(a, b, f))
            np.testing.assert_allclose(p.to_dense(), displacement_dense((a, b), field=f), atol=1e-12)
            assert p.phase in (0, 2)

    def test_requires_self_dual(self, gf8):
        from qcoarse.field import Basis

        with pytest.raises(ValueError, match="requires self-dual basis"):
            displacement_string(DisplacementLabel(1, 1, gf8), Basis.polynomial(gf8))


class TestCnot:
    def test_identity_fixed(self):
        assert cnot_conjugate("III", [(0, 1), (2, 0)]) == PauliString("III")

    def test_x_spreads(self):
        assert str(cnot_conjugate("XI", [(0, 1)])) == "XX"

    def test_z_spreads_back(self):
        assert str(cnot_conjugate("IZ", [(0, 1)])) == "ZZ"

    def test_yy(self):
        assert str(cnot_conjugate("YY", [(0, 1)])) == "-XZ"

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            cnot_conjugate("XX", [(0, 2)])

    @pytest.mark.parametrize("gate", [(0, 1), (1, 0)])
    def test_all_two_qubit_paulis_match_dense(self, gate):
        u = cnot_dense(2, *gate)
        for letters in itertools.product("IXYZ", repeat=2):
            for k in range(4):
                p = PauliString("".join(letters), k)
                q = cnot_conjugate(p, [gate])
                np.testing.assert_allclose(q.to_dense(), u @ p.to_dense() @ u.conj().T, atol=1e-12)

    @given(st.text(alphabet="IXYZ", min_size=3, max_size=3),
           st.lists(st.permutations([0, 1, 2]).map(lambda p: (p[0], p[1])), max_size=5))
    def test_sequences_match_dense(self, letters, gates):
        p = PauliString(letters)
        u = np.eye(8)
        for g in gates:
            u = cnot_dense(3, *g) @ u
        np.testing.assert_allclose(cnot_conjugate(p, gates).to_dense(), u @ p.to_dense() @ u.T, atol=1e-12)

    def test_gate_strings(self):
        assert cnot_conjugate("XI", ["0:1"]) == PauliString("XX")

    def test_cnot_dense_reference(self):
        ref = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
        np.testing.assert_array_equal(cnot_dense(2, 0, 1), ref)
