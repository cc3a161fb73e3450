"""Thick lines and the displacement operators that survive coarse graining.

For a partition with initial coset ``C_0`` the thick ray of slope ``l`` is

    2^-N  sum_a [ sum_{g in C_0} chi(g a) ] D(a, l a),

and because ``C_0`` is an additive subgroup the bracket is either 0 or
``|C_0|``.  The labels with a nonzero bracket are the survivors: they are the
measurements needed to locate a state on the coarse grid.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .field import Basis, CosetPartition, GaloisField
from .pauli import DisplacementLabel, PauliString, cnot_conjugate, displacement_string
from .phase_space import INFINITE, LineId, line_projector, operator_sum, ray_labels, slope_label

__all__ = [
    "CoarseLine",
    "SurvivorTable",
    "bracket_sum",
    "survivors",
    "coarse_slopes",
    "coarse_line_projector",
    "coarse_line_projector_by_survivors",
    "survivor_table",
]


def bracket_sum(partition: CosetPartition, x: int) -> int:
    """``sum_{g in C_0} chi(g x)``; always 0 or ``|C_0|``."""
    f = partition.field
    s = sum(f.chi(f.mul(g, x)) for g in partition.initial_coset)
    if s not in (0, partition.coset_size):
        raise ArithmeticError(f"character sum {s} over C_0 is neither 0 nor |C_0|")
    return s


def coarse_slopes(partition: CosetPartition) -> tuple:
    """Allowed slopes: the embedded GF(2^m) in power order, then ``INFINITE``."""
    return partition.embedded_subfield + (INFINITE,)


def _check_coarse_slope(partition: CosetPartition, slope):
    if slope == INFINITE:
        return INFINITE
    s = int(slope)
    if s not in partition.embedded_subfield:
        raise ValueError("slope not in subfield")
    return s


def survivors(partition: CosetPartition, slope, include_identity: bool = False) -> list[DisplacementLabel]:
    """Labels on the ray whose bracketed character sum is nonzero.

    The identity ``D(0, 0)`` is dropped unless ``include_identity``.
    """
    f = partition.field
    slope = _check_coarse_slope(partition, slope)
    out = []
    for a, b in ray_labels(f, slope):
        if a == 0 and b == 0 and not include_identity:
            continue
        # vertical rays are shifted by D(g, 0), which picks up chi(g b)
        x = b if slope == INFINITE else a
        if bracket_sum(partition, x):
            out.append(DisplacementLabel(a, b, f))
    return out


@dataclass(frozen=True)
class CoarseLine:
    """Thick line: slope plus the index of the intercept coset in the partition."""

    slope: object
    coset: int


def coarse_line_projector(line: CoarseLine, partition: CosetPartition, basis: Basis | None = None) -> np.ndarray:
    """Sum of the thin-line projectors whose intercepts lie in the coset."""
    f = partition.field
    slope = _check_coarse_slope(partition, line.slope)
    out = np.zeros((f.order, f.order), dtype=complex)
    for g in partition.cosets[line.coset]:
        out += line_projector(f, LineId(slope, g), basis)
    return out


def coarse_line_projector_by_survivors(
    line: CoarseLine, partition: CosetPartition, basis: Basis | None = None
) -> np.ndarray:
    """The same projector built only from surviving displacement operators.

    For the coset ``r + C_0`` each survivor ``x`` carries ``|C_0| chi(r x)``.
    """
    f = partition.field
    slope = _check_coarse_slope(partition, line.slope)
    rep = partition.representatives[line.coset]
    coeffs = {}
    for lab in survivors(partition, slope, include_identity=True):
        x = lab.beta if slope == INFINITE else lab.alpha
        coeffs[(lab.alpha, lab.beta)] = partition.coset_size * f.chi(f.mul(rep, x))
    return operator_sum(f, coeffs, basis) / f.order


@dataclass(frozen=True)
class SurvivorTable:
    """Survivors for every coarse slope (embedded subfield plus the vertical ray)."""

    partition: CosetPartition
    basis: Basis
    slopes: tuple
    labels: tuple[tuple[DisplacementLabel, ...], ...]
    gates: tuple[tuple[int, int], ...] = ()

    def strings(self) -> list[list[PauliString]]:
        out = []
        for col in self.labels:
            ps = [displacement_string(lab, self.basis) for lab in col]
            if self.gates:
                ps = [cnot_conjugate(p, self.gates) for p in ps]
            out.append(ps)
        return out

    def conjugated(self, gates: Iterable[Sequence[int]]) -> "SurvivorTable":
        """Copy whose strings are conjugated by a further CNOT sequence (0-based)."""
        extra = tuple((int(c), int(t)) for c, t in gates)
        return SurvivorTable(self.partition, self.basis, self.slopes, self.labels, self.gates + extra)

    def all_strings(self) -> list[PauliString]:
        return [p for col in self.strings() for p in col]

    def to_json(self) -> dict:
        f = self.partition.field
        out = {
            "m": self.partition.m,
            "n": self.partition.n,
            "partition": self.partition.to_json(),
            "slopes": [],
        }
        if self.gates:
            out["cnots"] = [f"{c + 1}:{t + 1}" for c, t in self.gates]
        for s, ps in zip(self.slopes, self.strings()):
            entry = {"slope": slope_label(f, s), "survivors": [str(p) for p in ps]}
            if s == INFINITE:
                entry["note"] = "vertical ray"
            out["slopes"].append(entry)
        return out

    def to_text(self) -> str:
        f = self.partition.field
        rows = []
        for s, ps in zip(self.slopes, self.strings()):
            head = "inf" if s == INFINITE else f.pretty(s)
            rows.append((head, " ".join(str(p) for p in ps)))
        w = max(len(h) for h, _ in rows)
        return "".join(f"{h.ljust(w)}  {body}\n" for h, body in rows)


def survivor_table(partition: CosetPartition, basis: Basis | None = None) -> SurvivorTable:
    f: GaloisField = partition.field
    basis = f.self_dual_basis if basis is None else basis
    slopes = coarse_slopes(partition)
    labels = tuple(tuple(survivors(partition, s)) for s in slopes)
    return SurvivorTable(partition, basis, slopes, labels)
