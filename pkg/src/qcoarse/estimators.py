"""scikit-learn compatible transformers over batches of quantum states.

``X`` is either an array of state vectors, shape ``(n_samples, 2**N)``, or an
array of density matrices, shape ``(n_samples, 2**N, 2**N)``.  Transformed
output is 2-D, one flattened Wigner table per row, so the transformers drop
into pipelines next to ordinary feature processing.

>>> import numpy as np
>>> bell = np.array([[1, 0, 0, 1]]) / np.sqrt(2)
>>> WignerTransformer().fit(bell).transform(bell).shape
(1, 16)
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .coarse import survivor_table
from .field import coset_decompose_general, coset_decompose_subfield, make_field
from .wigner import QuantumState, WignerTable, coarse_wigner, reconstruct_state, wigner_of_state

__all__ = ["WignerTransformer", "CoarseWignerTransformer", "check_states"]


def check_states(X, dim: int | None = None, atol: float = 1e-8) -> np.ndarray:
    """Validate a batch of states and return density matrices ``(n, d, d)``."""
    arr = np.asarray(X, dtype=complex)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim not in (2, 3):
        raise ValueError(f"expected a 2-D or 3-D array of states, got ndim={arr.ndim}")
    if arr.shape[0] == 0:
        raise ValueError("empty batch of states")
    if dim is not None and arr.shape[1] != dim:
        raise ValueError(f"states have dimension {arr.shape[1]}, expected {dim}")
    return np.stack([QuantumState(s, atol=atol).density for s in arr])


def _num_qubits(X) -> int:
    d = np.asarray(X).shape[-1]
    if d < 2 or d & (d - 1):
        raise ValueError("dimension must be 2^N")
    return d.bit_length() - 1


class WignerTransformer(TransformerMixin, BaseEstimator):
    """Map states to their fine discrete Wigner tables.

    Parameters
    ----------
    degree : int or None
        Number of qubits; inferred from the data in :meth:`fit` when None.
    modulus : tuple of int or None
        Field modulus bits, lowest degree first; default is the canonical one.

    Each output row is ``values.ravel()`` of the table, so entry
    ``h * 2**N + v`` holds the horizontal/vertical computational indices
    ``(h, v)``.
    """

    def __init__(self, degree=None, modulus=None):
        self.degree = degree
        self.modulus = modulus

    def fit(self, X=None, y=None):
        degree = self.degree if self.degree is not None else _num_qubits(X)
        self.field_ = make_field(degree, self.modulus)
        self.basis_ = self.field_.self_dual_basis
        self.n_features_out_ = self.field_.order ** 2
        if X is not None:
            check_states(X, self.field_.order)
        return self

    def transform(self, X):
        check_is_fitted(self, "field_")
        rhos = check_states(X, self.field_.order)
        return np.stack([wigner_of_state(r, self.field_).values.ravel() for r in rhos])

    def inverse_transform(self, W):
        check_is_fitted(self, "field_")
        W = np.asarray(W, dtype=float)
        d = self.field_.order
        if W.ndim != 2 or W.shape[1] != d * d:
            raise ValueError(f"expected shape (n_samples, {d * d})")
        return np.stack([reconstruct_state(w.reshape(d, d), self.field_) for w in W])

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "field_")
        n = self.field_.degree
        labs = [format(i, f"0{n}b") for i in range(self.field_.order)]
        return np.array([f"W[{h},{v}]" for h in labs for v in labs], dtype=object)


class CoarseWignerTransformer(TransformerMixin, BaseEstimator):
    """Map states to coarse Wigner tables over a coset partition.

    Parameters
    ----------
    degree : int
        Number of qubits N.
    m : int
        Degree of the coarse field; must divide N.
    mode : {"general", "subfield"}
        Partition construction.  ``"subfield"`` needs ``N = 2m``.
    relative_basis : sequence of str or int, optional
        Basis of GF(2^N) over GF(2^m) (labels like ``"1"``, ``"s1"``);
        required in general mode.
    modulus : tuple of int or None
        Field modulus bits, lowest degree first.
    """

    def __init__(self, degree=4, m=2, mode="subfield", relative_basis=None, modulus=None):
        self.degree = degree
        self.m = m
        self.mode = mode
        self.relative_basis = relative_basis
        self.modulus = modulus

    def fit(self, X=None, y=None):
        f = make_field(self.degree, self.modulus)
        if self.mode == "subfield":
            self.partition_ = coset_decompose_subfield(f, self.m)
        elif self.mode == "general":
            if self.relative_basis is None:
                raise ValueError("general mode requires relative_basis")
            mus = [f.parse_label(x) if isinstance(x, str) else int(x) for x in self.relative_basis]
            self.partition_ = coset_decompose_general(f, self.m, mus)
        else:
            raise ValueError(f"unknown mode {self.mode!r}")
        self.field_ = f
        self.n_features_out_ = len(self.partition_.cosets) ** 2
        if X is not None:
            check_states(X, f.order)
        return self

    def transform(self, X):
        check_is_fitted(self, "partition_")
        rhos = check_states(X, self.field_.order)
        return np.stack([coarse_wigner(r, self.partition_).values.ravel() for r in rhos])

    def tables(self, X) -> list[WignerTable]:
        check_is_fitted(self, "partition_")
        return [coarse_wigner(r, self.partition_) for r in check_states(X, self.field_.order)]

    def survivors(self):
        """The survivor table that determines these coarse functions."""
        check_is_fitted(self, "partition_")
        return survivor_table(self.partition_)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "partition_")
        labs = self.partition_.coset_labels()
        return np.array([f"W[{h},{v}]" for h in labs for v in labs], dtype=object)
