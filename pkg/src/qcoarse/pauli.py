"""Displacement operators on N qubits: symbolic Pauli strings and dense matrices.

Dense operators are plain complex ``numpy`` arrays in the computational
basis of the qubits.  Qubit 1 is the leftmost tensor factor and the most
significant bit of the row/column index.  A field element ``v`` labels the
basis state whose bits are its coefficients in the self-dual basis.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .field import Basis, FieldElement, GaloisField, expand_in_basis, qubit_index_map

__all__ = [
    "PauliString",
    "DisplacementLabel",
    "phase_phi",
    "displacement_string",
    "displacement_dense",
    "displacement_parts",
    "fourier_dense",
    "cnot_conjugate",
    "DENSE_LIMIT",
]

DENSE_LIMIT = 10

_PHASES = {0: "", 1: "i", 2: "-", 3: "-i"}
_PREFIX = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}
_PAULI_RE = re.compile(r"^([+-]?i?)([IXYZ]+)$")

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_LETTER = {(0, 0): "I", (1, 0): "Z", (0, 1): "X", (1, 1): "Y"}
_BITS = {v: k for k, v in _LETTER.items()}


def _as_int(x) -> int:
    return x.value if isinstance(x, FieldElement) else int(x)


@dataclass(frozen=True)
class PauliString:
    """``i**phase`` times a tensor product of single-qubit Paulis.

    The text form is an optional phase prefix (``""``, ``"-"``, ``"i"``,
    ``"-i"``) followed by one letter per qubit, e.g. ``"-iZX"``.
    """

    letters: str
    phase: int = 0

    def __post_init__(self):
        if not self.letters or any(c not in "IXYZ" for c in self.letters):
            raise ValueError(f"invalid Pauli letters {self.letters!r}")
        object.__setattr__(self, "phase", int(self.phase) % 4)

    @classmethod
    def parse(cls, text: str) -> "PauliString":
        m = _PAULI_RE.match(text.strip())
        if not m:
            raise ValueError(f"cannot parse Pauli string {text!r}")
        return cls(m.group(2), _PREFIX[m.group(1)])

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls("I" * n)

    @classmethod
    def from_zx(cls, z: Sequence[int], x: Sequence[int], phase: int = 0) -> "PauliString":
        """Build ``i**phase * Z^z X^x`` (Z factor to the left on every qubit)."""
        letters = "".join(_LETTER[(int(a), int(b))] for a, b in zip(z, x))
        # Z X = i Y on each site carrying both
        n_y = sum(1 for a, b in zip(z, x) if a and b)
        return cls(letters, phase + n_y)

    def zx(self) -> tuple[tuple[int, ...], tuple[int, ...], int]:
        """Inverse of :meth:`from_zx`: ``(z, x, phase)`` with ``self = i**phase Z^z X^x``."""
        z = tuple(_BITS[c][0] for c in self.letters)
        x = tuple(_BITS[c][1] for c in self.letters)
        n_y = self.letters.count("Y")
        return z, x, (self.phase - n_y) % 4

    @property
    def num_qubits(self) -> int:
        return len(self.letters)

    def unsigned(self) -> "PauliString":
        return PauliString(self.letters)

    def commutes(self, other: "PauliString") -> bool:
        z1, x1, _ = self.zx()
        z2, x2, _ = other.zx()
        s = sum(a * d + b * c for a, b, c, d in zip(z1, x1, z2, x2))
        return s % 2 == 0

    def to_dense(self) -> np.ndarray:
        if self.num_qubits > DENSE_LIMIT:
            raise ValueError("dense oracle limit")
        out = np.ones((1, 1), dtype=complex)
        for c in self.letters:
            out = np.kron(out, _SINGLE[c])
        return (1j ** self.phase) * out

    def __str__(self):
        return _PHASES[self.phase] + self.letters


@dataclass(frozen=True)
class DisplacementLabel:
    """Phase-space point ``(alpha, beta)`` labelling ``D(alpha, beta)``."""

    alpha: int
    beta: int
    field: GaloisField

    def __post_init__(self):
        object.__setattr__(self, "alpha", _as_int(self.alpha))
        object.__setattr__(self, "beta", _as_int(self.beta))

    @property
    def phase(self) -> complex:
        return phase_phi(self.field, self.alpha, self.beta)

    def is_identity(self) -> bool:
        return self.alpha == 0 and self.beta == 0

    def __str__(self):
        f = self.field
        return f"D({f.label(self.alpha)},{f.label(self.beta)})"


def phase_exponent(field: GaloisField, alpha, beta) -> int:
    """Exponent ``k`` with ``Phi(alpha, beta) = i**k``."""
    x = field.mul(_as_int(alpha), _as_int(beta))
    fx = field.f_value(x)
    if fx not in (0, 1):
        raise ArithmeticError(f"f({field.label(x)}) = {field.label(fx)} is not in GF(2)")
    return (field.trace(x) + 2 * fx) % 4


def phase_phi(field: GaloisField, alpha, beta) -> complex:
    """Hermitising phase ``i**tr(ab) * (-1)**f(ab)``; equals 1 on both axes."""
    return (1, 1j, -1, -1j)[phase_exponent(field, alpha, beta)]


def displacement_string(label: DisplacementLabel, basis: Basis | None = None) -> PauliString:
    """Symbolic form of ``D(alpha, beta)`` as a Pauli string.

    Qubit ``i`` carries ``Z`` to the power ``tr(alpha t_i)`` and ``X`` to the
    power ``tr(beta t_i)`` where ``t_i`` is the i-th self-dual basis element.
    """
    f = label.field
    basis = f.self_dual_basis if basis is None else basis
    if basis.field != f or not basis.is_self_dual():
        raise ValueError("requires self-dual basis")
    z = expand_in_basis(label.alpha, basis)
    x = expand_in_basis(label.beta, basis)
    return PauliString.from_zx(z, x, phase_exponent(f, label.alpha, label.beta))


def _check_dense(field: GaloisField) -> None:
    if field.degree > DENSE_LIMIT:
        raise ValueError("dense oracle limit")


def displacement_parts(field: GaloisField, alpha, beta, basis: Basis | None = None):
    """Monomial form of ``D(alpha, beta)``: ``(rows, values)`` with column ``c`` nonzero only at ``rows[c]``.

    Works on the field-element ordering; callers permute with
    :func:`~qcoarse.field.qubit_index_map`.
    """
    a, b = _as_int(alpha), _as_int(beta)
    v = np.arange(field.order)
    rows = v ^ b
    chi = 1 - 2 * field.trace_array(field.mul_array(a, rows))
    return rows, phase_phi(field, a, b) * chi


def displacement_dense(
    label: DisplacementLabel | tuple, basis: Basis | None = None, field: GaloisField | None = None
) -> np.ndarray:
    """Dense matrix ``Phi(a, b) Z_a X_b`` in the qubit computational basis.

    Built directly from ``Z_a |v> = chi(a v)|v>`` and ``X_b |v> = |v + b>``.
    """
    if not isinstance(label, DisplacementLabel):
        label = DisplacementLabel(label[0], label[1], field)
    f = label.field
    _check_dense(f)
    basis = f.self_dual_basis if basis is None else basis
    idx = qubit_index_map(basis)
    rows, vals = displacement_parts(f, label.alpha, label.beta)
    out = np.zeros((f.order, f.order), dtype=complex)
    out[idx[rows], idx[np.arange(f.order)]] = vals
    return out


def fourier_dense(field: GaloisField, basis: Basis | None = None) -> np.ndarray:
    """Finite Fourier transform ``2^{-N/2} sum chi(v v') |v><v'|``."""
    _check_dense(field)
    basis = field.self_dual_basis if basis is None else basis
    idx = qubit_index_map(basis)
    out = np.zeros((field.order, field.order), dtype=complex)
    out[np.ix_(idx, idx)] = field.character_matrix / np.sqrt(field.order)
    return out


def _parse_gate(gate) -> tuple[int, int]:
    if isinstance(gate, str):
        c, t = gate.split(":")
        return int(c), int(t)
    c, t = gate
    return int(c), int(t)


def cnot_conjugate(p: PauliString | str, gates: Iterable) -> PauliString:
    """Conjugate ``p`` by a CNOT sequence, first gate first.

    Each gate is ``(control, target)`` with 0-based qubit indices.  Under
    conjugation X on the control spreads to the target and Z on the target
    spreads to the control; in ``i**k Z^z X^x`` form the phase is untouched.
    """
    if isinstance(p, str):
        p = PauliString.parse(p)
    z, x, k = p.zx()
    z, x = list(z), list(x)
    n = len(z)
    for gate in gates:
        c, t = _parse_gate(gate)
        if not (0 <= c < n and 0 <= t < n) or c == t:
            raise IndexError(f"invalid CNOT({c}, {t}) on {n} qubits")
        x[t] ^= x[c]
        z[c] ^= z[t]
    return PauliString.from_zx(z, x, k)


def cnot_dense(n: int, control: int, target: int) -> np.ndarray:
    """Permutation matrix of a CNOT (0-based indices, qubit 0 most significant)."""
    dim = 1 << n
    out = np.zeros((dim, dim))
    for col in range(dim):
        row = col
        if (col >> (n - 1 - control)) & 1:
            row ^= 1 << (n - 1 - target)
        out[row, col] = 1
    return out
