"""Rays, lines and their projectors on the 2^N x 2^N grid; MUB tables and eigenbases."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .field import Basis, GaloisField, qubit_index_map
from .pauli import (
    DisplacementLabel,
    PauliString,
    _check_dense,
    displacement_dense,
    displacement_parts,
    displacement_string,
)

__all__ = [
    "INFINITE",
    "LineId",
    "MubTable",
    "EigenSystem",
    "ray_points",
    "line_points",
    "ray_labels",
    "operator_sum",
    "line_projector",
    "line_projector_by_characters",
    "mub_table",
    "eigensystem",
    "slope_label",
]

INFINITE = "inf"


def _check_slope(field: GaloisField, slope) -> object:
    if slope == INFINITE:
        return INFINITE
    s = int(slope)
    if not 0 <= s < field.order:
        raise ValueError(f"slope {slope!r} is not a field element")
    return s


def slope_label(field: GaloisField, slope) -> str:
    return INFINITE if slope == INFINITE else field.label(int(slope))


@dataclass(frozen=True)
class LineId:
    """Line ``beta = slope*alpha + intercept`` or, for ``INFINITE`` slope, ``alpha = intercept``."""

    slope: object
    intercept: int = 0

    def __post_init__(self):
        if self.slope != INFINITE:
            object.__setattr__(self, "slope", int(self.slope))
        object.__setattr__(self, "intercept", int(self.intercept))


def ray_points(field: GaloisField, slope) -> set[tuple[int, int]]:
    """Grid points of the ray through the origin with the given slope."""
    return line_points(field, LineId(_check_slope(field, slope), 0))


def line_points(field: GaloisField, line: LineId) -> set[tuple[int, int]]:
    g = line.intercept
    if line.slope == INFINITE:
        return {(g, b) for b in field.elements()}
    return {(a, field.mul(line.slope, a) ^ g) for a in field.elements()}


def ray_labels(field: GaloisField, slope) -> list[tuple[int, int]]:
    """Displacement labels ``(a, slope*a)`` (or ``(0, b)``) of a ray, origin first."""
    slope = _check_slope(field, slope)
    if slope == INFINITE:
        return [(0, b) for b in field.elements()]
    return [(a, field.mul(slope, a)) for a in field.elements()]


def operator_sum(
    field: GaloisField, coeffs: Mapping[tuple[int, int], complex], basis: Basis | None = None
) -> np.ndarray:
    """Dense ``sum c * D(a, b)`` over the given labels."""
    _check_dense(field)
    basis = field.self_dual_basis if basis is None else basis
    idx = qubit_index_map(basis)
    cols = idx[np.arange(field.order)]
    out = np.zeros((field.order, field.order), dtype=complex)
    for (a, b), c in coeffs.items():
        if c == 0:
            continue
        rows, vals = displacement_parts(field, a, b)
        out[idx[rows], cols] += c * vals
    return out


def _ray_projector(field: GaloisField, slope, basis: Basis | None) -> np.ndarray:
    # all-positive sum convention
    return operator_sum(field, {lab: 1.0 for lab in ray_labels(field, slope)}, basis) / field.order


def line_projector(field: GaloisField, line: LineId, basis: Basis | None = None) -> np.ndarray:
    """Rank-one projector of a line.

    The ray projector is ``2^-N sum_a D(a, slope*a)``; a nonzero intercept is
    reached by conjugating with ``D(0, g)`` (finite slope) or ``D(g, 0)``
    (vertical lines).
    """
    slope = _check_slope(field, line.slope)
    p = _ray_projector(field, slope, basis)
    g = line.intercept
    if g == 0:
        return p
    shift = (g, 0) if slope == INFINITE else (0, g)
    d = displacement_dense(DisplacementLabel(shift[0], shift[1], field), basis)
    return d @ p @ d.conj().T


def line_projector_by_characters(field: GaloisField, line: LineId, basis: Basis | None = None) -> np.ndarray:
    """Same projector written as ``2^-N sum_a chi(g a) D(a, slope*a)``."""
    slope = _check_slope(field, line.slope)
    g = line.intercept
    coeffs = {}
    for a, b in ray_labels(field, slope):
        # vertical lines pick up chi(g b) instead of chi(g a)
        coeffs[(a, b)] = field.chi(field.mul(g, b if slope == INFINITE else a))
    return operator_sum(field, coeffs, basis) / field.order


@dataclass(frozen=True)
class MubTable:
    """One column per ray; each lists the ``2^N - 1`` non-identity displacements."""

    field: GaloisField
    basis: Basis
    slopes: tuple
    columns: tuple[tuple[DisplacementLabel, ...], ...]

    def strings(self) -> list[list[PauliString]]:
        return [[displacement_string(lab, self.basis) for lab in col] for col in self.columns]

    def to_json(self) -> list[dict]:
        return [
            {
                "slope": slope_label(self.field, s),
                "operators": [str(p) for p in ops],
            }
            for s, ops in zip(self.slopes, self.strings())
        ]

    def to_text(self) -> str:
        f = self.field
        heads = [
            "inf" if s == INFINITE else f.pretty(s) for s in self.slopes
        ]
        cols = [[str(p) for p in ops] for ops in self.strings()]
        width = max(len(x) for x in heads + [p for c in cols for p in c])
        lines = ["  ".join(h.ljust(width) for h in heads).rstrip()]
        for r in range(len(cols[0])):
            lines.append("  ".join(c[r].ljust(width) for c in cols).rstrip())
        return "\n".join(lines) + "\n"


def mub_table(field: GaloisField, basis: Basis | None = None) -> MubTable:
    basis = field.self_dual_basis if basis is None else basis
    slopes = tuple(sorted(field.elements(), key=field.log)) + (INFINITE,)
    # sort puts 0 first (log -1), then 1, s, s^2, ...
    columns = tuple(
        tuple(DisplacementLabel(a, b, field) for a, b in ray_labels(field, s)[1:])
        for s in slopes
    )
    return MubTable(field, basis, slopes, columns)


@dataclass(frozen=True)
class EigenSystem:
    """Common eigenbasis of one ray's displacement operators.

    ``vectors[:, k]`` is the k-th eigenvector; it belongs to the line with
    intercept ``intercepts[k]``.  ``eigenvalues[k, a]`` is the eigenvalue of
    the ray operator with horizontal label ``a`` (``b`` for vertical rays).
    """

    slope: object
    intercepts: tuple[int, ...]
    vectors: np.ndarray
    eigenvalues: np.ndarray


def eigensystem(field: GaloisField, slope, basis: Basis | None = None) -> EigenSystem:
    """Eigenvectors ordered by the qubit index of their line intercept.

    That order is the binary eigenvalue pattern on the generators built from
    the self-dual basis.  Global phases make the first nonzero amplitude real
    and positive.
    """
    if field.degree > 8:
        raise ValueError("dense oracle limit")
    slope = _check_slope(field, slope)
    basis = field.self_dual_basis if basis is None else basis
    idx = qubit_index_map(basis)
    intercepts = tuple(int(g) for g in np.argsort(idx))
    labels = ray_labels(field, slope)
    ops = [displacement_dense(DisplacementLabel(a, b, field), basis) for a, b in labels]
    vecs = np.zeros((field.order, field.order), dtype=complex)
    evals = np.zeros((field.order, field.order), dtype=complex)
    for k, g in enumerate(intercepts):
        p = line_projector_by_characters(field, LineId(slope, g), basis)
        j = int(np.argmax(np.real(np.diag(p))))
        v = p[:, j] / np.sqrt(np.real(p[j, j]))
        first = np.flatnonzero(np.abs(v) > 1e-12)[0]
        v = v * (abs(v[first]) / v[first])
        vecs[:, k] = v
        evals[k] = [np.vdot(v, d @ v) for d in ops]
    return EigenSystem(slope, intercepts, vecs, evals)
