"""Discrete Wigner function of N qubits and its coarse-grained version.

The kernel is ``Delta(a, b) = 2^-N sum chi(a a' + b b') D(a', b')`` (in
characteristic 2 the minus sign of the usual double Fourier transform is a
plus) and ``W(a, b) = 2^-N Tr[rho Delta(a, b)]``.

Everything here is computed from the expectation values ``E[a', b'] =
Tr[rho D(a', b')]``; both character transforms are then matrix products
with the character table.  :func:`kernel_dense` builds the kernel operator
term by term and serves as the reference for that fast path.

Tables are indexed ``values[h, v]`` with the horizontal label (``alpha``,
computational basis) first and the vertical one (``beta``, Fourier basis)
second.  Fine tables order both axes by computational-basis index.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .field import Basis, CosetPartition, GaloisField, qubit_index_map
from .pauli import phase_exponent
from .phase_space import INFINITE, LineId, line_points, operator_sum

__all__ = [
    "QuantumState",
    "WignerTable",
    "kernel_dense",
    "wigner_of_state",
    "reconstruct_state",
    "coarse_kernel",
    "coarse_wigner",
    "block_sum",
    "line_sum",
    "marginal_line",
]

WIGNER_LIMIT = 8


class QuantumState:
    """A validated density matrix on ``2^N`` dimensions (qubit ordering).

    Parameters
    ----------
    data : array_like
        State vector of shape ``(d,)`` or density matrix of shape ``(d, d)``.
    atol : float
        Tolerance on the norm (vectors) or trace (density matrices).
    """

    def __init__(self, data, atol: float = 1e-10):
        arr = np.asarray(data, dtype=complex)
        if arr.ndim not in (1, 2) or (arr.ndim == 2 and arr.shape[0] != arr.shape[1]):
            raise ValueError("state must be a vector or a square matrix")
        dim = arr.shape[0]
        if dim < 2 or dim & (dim - 1):
            raise ValueError("dimension must be 2^N")
        self.vector = None
        if arr.ndim == 1:
            norm = np.vdot(arr, arr).real
            if abs(norm - 1) > atol:
                raise ValueError("state not normalized")
            self.vector = arr
            rho = np.outer(arr, arr.conj())
        else:
            if np.max(np.abs(arr - arr.conj().T)) > max(atol, 1e-8):
                raise ValueError("density matrix is not Hermitian")
            rho = (arr + arr.conj().T) / 2
            if abs(np.trace(rho).real - 1) > atol:
                raise ValueError("state not normalized")
            if np.linalg.eigvalsh(rho).min() < -max(atol, 1e-8):
                raise ValueError("density matrix is not positive semidefinite")
        self.density = rho
        self.dim = dim
        self.num_qubits = dim.bit_length() - 1

    @classmethod
    def maximally_mixed(cls, num_qubits: int) -> "QuantumState":
        d = 1 << num_qubits
        return cls(np.eye(d) / d)

    def __repr__(self):
        kind = "vector" if self.vector is not None else "density"
        return f"QuantumState(num_qubits={self.num_qubits}, kind={kind})"


def _as_density(state) -> np.ndarray:
    if isinstance(state, QuantumState):
        return state.density
    return QuantumState(state).density


@dataclass(frozen=True, eq=False)
class WignerTable:
    """Real phase-space function on the fine or coarse grid."""

    values: np.ndarray
    labels: tuple[str, ...]
    coarse: bool = False
    # field element(s) behind each axis position: ints (fine) or cosets (coarse)
    elements: tuple = dc_field(default=(), compare=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def total(self) -> float:
        return float(self.values.sum())

    def rows(self) -> np.ndarray:
        """Export orientation: row = vertical label, column = horizontal label."""
        return self.values.T

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "coarse": self.coarse,
            "labels": list(self.labels),
            "values": [[_num(v) for v in row] for row in self.rows()],
        }

    def to_csv(self) -> str:
        lines = ["," + ",".join(self.labels)]
        for lab, row in zip(self.labels, self.rows()):
            lines.append(lab + "," + ",".join(_fmt(v) for v in row))
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        cells = [[_fmt(v) for v in row] for row in self.rows()]
        w = max(len(c) for row in cells for c in row + list(self.labels))
        out = [" " * w + "  " + "  ".join(l.rjust(w) for l in self.labels)]
        for lab, row in zip(self.labels, cells):
            out.append(lab.rjust(w) + "  " + "  ".join(c.rjust(w) for c in row))
        return "\n".join(out) + "\n"


def _clean(v: float) -> float:
    v = float(v)
    return 0.0 if abs(v) < 1e-13 else v


def _fmt(v: float) -> str:
    return format(_clean(v), ".12g")


def _num(v: float):
    s = _fmt(v)
    return float(s) if any(c in s for c in ".en") else int(s)


def _check_size(field: GaloisField) -> None:
    if field.degree > WIGNER_LIMIT:
        raise ValueError("dense oracle limit")


@functools.lru_cache(maxsize=None)
def _phase_matrix(field: GaloisField) -> np.ndarray:
    # the phase depends on the product a*b only
    per_product = np.array(
        [(1, 1j, -1, -1j)[phase_exponent(field, x, 1)] for x in field.elements()]
    )
    v = np.arange(field.order)
    return per_product[field.mul_array(v[:, None], v[None, :])]


def _field_order(rho: np.ndarray, basis: Basis) -> np.ndarray:
    idx = qubit_index_map(basis)
    return rho[np.ix_(idx, idx)]


def expectation_table(field: GaloisField, rho: np.ndarray, basis: Basis | None = None) -> np.ndarray:
    """``E[a, b] = Tr[rho D(a, b)]`` for every label."""
    basis = field.self_dual_basis if basis is None else basis
    rf = _field_order(np.asarray(rho, dtype=complex), basis)
    u = np.arange(field.order)
    # R[u, b] = rho[u + b, u]
    r = rf[u[:, None] ^ u[None, :], u[:, None]]
    return _phase_matrix(field) * (field.character_matrix @ r)


def _density_from_coefficients(field: GaloisField, k: np.ndarray, basis: Basis) -> np.ndarray:
    """Dense ``2^-N sum_{a,b} k[a,b] D(a,b)`` in qubit ordering."""
    m = field.character_matrix @ (k * _phase_matrix(field)) / field.order
    u = np.arange(field.order)
    rf = np.zeros((field.order, field.order), dtype=complex)
    # coefficient of D(a, b) lands on entries (u, u + b)
    rf[u[:, None], u[:, None] ^ u[None, :]] = m
    idx = qubit_index_map(basis)
    out = np.zeros_like(rf)
    out[np.ix_(idx, idx)] = rf
    return out


def kernel_dense(field: GaloisField, alpha: int, beta: int, basis: Basis | None = None) -> np.ndarray:
    """The kernel operator at one grid point, summed term by term."""
    _check_size(field)
    a0, b0 = int(alpha), int(beta)
    coeffs = {
        (a, b): field.chi(field.mul(a0, a) ^ field.mul(b0, b))
        for a in field.elements()
        for b in field.elements()
    }
    return operator_sum(field, coeffs, basis) / field.order


def _fine_labels(field: GaloisField, basis: Basis) -> tuple[tuple[str, ...], tuple[int, ...]]:
    idx = qubit_index_map(basis)
    order = np.argsort(idx)
    n = field.degree
    labels = tuple(format(int(i), f"0{n}b") for i in range(field.order))
    return labels, tuple(int(x) for x in order)


def wigner_of_state(state, field: GaloisField | None = None, basis: Basis | None = None) -> WignerTable:
    """Fine Wigner table ``W(a, b) = 2^-N Tr[rho Delta(a, b)]``."""
    rho = _as_density(state)
    if field is None:
        from .field import make_field

        field = make_field(rho.shape[0].bit_length() - 1)
    if rho.shape[0] != field.order:
        raise ValueError("state dimension does not match the field")
    _check_size(field)
    basis = field.self_dual_basis if basis is None else basis
    e = expectation_table(field, rho, basis)
    c = field.character_matrix
    w = c @ e @ c / field.order**2
    if np.max(np.abs(w.imag)) > 1e-9:
        raise ValueError("non-Hermitian input beyond tolerance")
    labels, order = _fine_labels(field, basis)
    idx = qubit_index_map(basis)
    values = np.zeros((field.order, field.order))
    values[np.ix_(idx, idx)] = w.real
    return WignerTable(values, labels, False, order)


def reconstruct_state(table: WignerTable, field: GaloisField | None = None, basis: Basis | None = None) -> np.ndarray:
    """Density matrix ``sum Delta(a, b) W(a, b)`` from a fine table."""
    values = np.asarray(table.values if isinstance(table, WignerTable) else table, dtype=float)
    if table_is_coarse(table):
        raise ValueError("wrong table shape: coarse tables cannot be inverted")
    d = values.shape[0]
    if values.ndim != 2 or values.shape != (d, d) or d < 2 or d & (d - 1):
        raise ValueError("wrong table shape")
    if field is None:
        from .field import make_field

        field = make_field(d.bit_length() - 1)
    if field.order != d:
        raise ValueError("wrong table shape")
    basis = field.self_dual_basis if basis is None else basis
    idx = qubit_index_map(basis)
    w = values[np.ix_(idx, idx)]
    c = field.character_matrix
    k = c @ w @ c
    return _density_from_coefficients(field, k, basis)


def table_is_coarse(table) -> bool:
    return isinstance(table, WignerTable) and table.coarse


def _coset_characters(partition: CosetPartition) -> np.ndarray:
    """``S[t, a] = sum_{x in C_t} chi(x a)``."""
    c = partition.field.character_matrix.astype(np.int64)
    return np.array([c[list(coset)].sum(axis=0) for coset in partition.cosets])


def coarse_kernel(tau: int, xi: int, partition: CosetPartition, basis: Basis | None = None) -> np.ndarray:
    """Sum of the kernel over the coset rectangle ``C_tau x C_xi`` (coset indices)."""
    f = partition.field
    _check_size(f)
    s = _coset_characters(partition)
    coeffs = {
        (a, b): complex(s[tau, a] * s[xi, b])
        for a in f.elements()
        for b in f.elements()
    }
    return operator_sum(f, coeffs, basis) / f.order


def coarse_wigner(state, partition: CosetPartition, basis: Basis | None = None) -> WignerTable:
    """Coarse table ``2^-N Tr[rho D(C_tau, C_xi)]`` over pairs of cosets."""
    f = partition.field
    _check_size(f)
    rho = _as_density(state)
    if rho.shape[0] != f.order:
        raise ValueError("partition/field mismatch")
    basis = f.self_dual_basis if basis is None else basis
    e = expectation_table(f, rho, basis)
    s = _coset_characters(partition)
    w = s @ e @ s.T / f.order**2
    if np.max(np.abs(w.imag)) > 1e-9:
        raise ValueError("non-Hermitian input beyond tolerance")
    return WignerTable(np.real(w), tuple(partition.coset_labels()), True, partition.cosets)


def block_sum(table: WignerTable, partition: CosetPartition, basis: Basis | None = None) -> np.ndarray:
    """Aggregate a fine table over coset rectangles."""
    f = partition.field
    basis = f.self_dual_basis if basis is None else basis
    idx = qubit_index_map(basis)
    k = len(partition.cosets)
    out = np.zeros((k, k))
    for i, ct in enumerate(partition.cosets):
        for j, cx in enumerate(partition.cosets):
            out[i, j] = table.values[np.ix_(idx[list(ct)], idx[list(cx)])].sum()
    return out


def line_sum(table: WignerTable, field: GaloisField, line: LineId, basis: Basis | None = None) -> float:
    """Sum of a fine table over the points of a line."""
    basis = field.self_dual_basis if basis is None else basis
    idx = qubit_index_map(basis)
    return float(sum(table.values[idx[a], idx[b]] for a, b in line_points(field, line)))


def marginal_line(field: GaloisField, line: LineId) -> LineId:
    """Line whose projector has expectation equal to the Wigner sum over ``line``.

    The kernel pairs the grid point ``(a, b)`` with ``D(a', b')`` through
    ``chi(a a' + b b')``, so the points ``b = l a + g`` collect the operators
    on the ray ``b' = a' / l``: slope and intercept are divided by ``l``.
    Horizontal lines map to vertical ones and vice versa.
    """
    g = line.intercept
    if line.slope == INFINITE:
        return LineId(0, g)
    lam = int(line.slope)
    if lam == 0:
        return LineId(INFINITE, g)
    mu = field.inv(lam)
    return LineId(mu, field.mul(g, mu))


def states_to_density(states: Sequence) -> list[np.ndarray]:
    return [_as_density(s) for s in states]
