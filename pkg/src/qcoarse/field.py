"""Arithmetic in GF(2^N), trace and additive character, bases and coset partitions.

Elements are stored as Python ints whose bit ``k`` is the coefficient of
``x**k`` in the polynomial representation.  :class:`FieldElement` wraps such
an int together with its field for operator-style arithmetic; the hot paths
(table construction, Wigner kernels) work on plain ints and numpy arrays.

Labels follow the usual convention of writing nonzero elements as powers of
the primitive element: ``"0"`` for zero, ``"1"`` for ``s^0``, ``"s5"`` for
``s^5``.  Exponent labels use ``-1`` for zero.
"""
from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "GaloisField",
    "FieldElement",
    "Basis",
    "CosetPartition",
    "make_field",
    "default_modulus",
    "find_self_dual_basis",
    "expand_in_basis",
    "coset_decompose_general",
    "coset_decompose_subfield",
]

MAX_DEGREE = 16

# conventional moduli for N = 2, 3, 4; they are also the smallest primitive ones
_KNOWN_MODULI = {2: 0b111, 3: 0b1011, 4: 0b10011}

_LABEL_RE = re.compile(r"^(?:s|σ)\^?(\d+)$")


def _poly_degree(p: int) -> int:
    return p.bit_length() - 1


def _poly_mod(a: int, m: int) -> int:
    dm = _poly_degree(m)
    while a and _poly_degree(a) >= dm:
        a ^= m << (_poly_degree(a) - dm)
    return a


def _is_irreducible(p: int) -> bool:
    n = _poly_degree(p)
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for q in range(1 << d, 1 << (d + 1)):
            if _poly_mod(p, q) == 0:
                return False
    return True


def _bits_to_int(bits: Sequence[int]) -> int:
    value = 0
    for k, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"coefficients must be 0 or 1, got {b!r}")
        value |= int(b) << k
    return value


def _int_to_bits(value: int, length: int) -> list[int]:
    return [(value >> k) & 1 for k in range(length)]


def gf2_rank(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of a collection of bit-vectors packed into ints."""
    pivots: dict[int, int] = {}
    rank = 0
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                v ^= pivots[top]
            else:
                pivots[top] = v
                rank += 1
                break
    return rank


def gf2_inv(matrix: np.ndarray) -> np.ndarray:
    """Inverse of a square 0/1 matrix over GF(2); raises if singular."""
    a = np.array(matrix, dtype=np.uint8) & 1
    n = a.shape[0]
    aug = np.concatenate([a, np.eye(n, dtype=np.uint8)], axis=1)
    for col in range(n):
        rows = np.nonzero(aug[col:, col])[0]
        if rows.size == 0:
            raise np.linalg.LinAlgError("singular matrix over GF(2)")
        piv = col + rows[0]
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        for r in range(n):
            if r != col and aug[r, col]:
                aug[r] ^= aug[col]
    return aug[:, n:]


def default_modulus(degree: int) -> int:
    """Canonical modulus: the conventional one for N <= 4, else the smallest primitive one."""
    if degree in _KNOWN_MODULI:
        return _KNOWN_MODULI[degree]
    for p in range((1 << degree) | 1, 1 << (degree + 1), 2):
        if _is_irreducible(p) and _multiplicative_order_of_x(p) == (1 << degree) - 1:
            return p
    raise ValueError(f"no primitive polynomial of degree {degree}")  # pragma: no cover


def _multiplicative_order_of_x(p: int) -> int:
    n = _poly_degree(p)
    one = 1
    x = _poly_mod(0b10, p)
    y = x
    for k in range(1, 1 << n):
        if y == one:
            return k
        y = _poly_mod(y << 1, p)
    return 0


class GaloisField:
    """The field GF(2^N) realised as GF(2)[x] modulo a primitive polynomial.

    The polynomial variable ``x`` is the primitive element (written ``s`` or
    ``σ`` in labels).  Instances are immutable and hashable by
    ``(degree, modulus)``.

    Parameters
    ----------
    degree : int
        Extension degree N, 1 <= N <= 16.
    modulus : int or sequence of int, optional
        Modulus polynomial as an int (bit k = coefficient of x^k) or as a
        coefficient list ``[c0, c1, ..., cN]`` (lowest degree first).
        Defaults to :func:`default_modulus`.
    """

    def __init__(self, degree: int, modulus: int | Sequence[int] | None = None):
        if not 1 <= degree <= MAX_DEGREE:
            raise ValueError(f"degree must be between 1 and {MAX_DEGREE}, got {degree}")
        if modulus is None:
            modulus = default_modulus(degree)
        elif not isinstance(modulus, (int, np.integer)):
            modulus = _bits_to_int(modulus)
        modulus = int(modulus)
        if _poly_degree(modulus) != degree:
            raise ValueError(f"modulus must have degree {degree}")
        if not _is_irreducible(modulus):
            raise ValueError("modulus is not irreducible")
        if _multiplicative_order_of_x(modulus) != (1 << degree) - 1:
            raise ValueError("modulus is not primitive")

        self.degree = degree
        self.modulus = modulus
        self.order = 1 << degree
        q1 = self.order - 1

        exp = np.zeros(2 * q1, dtype=np.int64)
        log = np.full(self.order, -1, dtype=np.int64)
        v = 1
        for k in range(q1):
            exp[k] = v
            log[v] = k
            v <<= 1
            if v & self.order:
                v ^= modulus
        exp[q1:] = exp[:q1]
        self._exp = exp
        self._log = log
        self._exp.setflags(write=False)
        self._log.setflags(write=False)

        # trace is GF(2)-linear: tr(v) = parity(v & mask)
        mask = 0
        for k in range(degree):
            if self._trace_slow(1 << k):
                mask |= 1 << k
        self._trace_mask = mask
        values = np.arange(self.order, dtype=np.int64)
        self._trace_table = _parity(values & mask).astype(np.int8)
        self._trace_table.setflags(write=False)

    # -- identity -------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, GaloisField)
            and other.degree == self.degree
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash((self.degree, self.modulus))

    def __repr__(self):
        return f"GaloisField(degree={self.degree}, modulus={self.modulus_bits})"

    @property
    def modulus_bits(self) -> list[int]:
        """Modulus coefficients, lowest degree first."""
        return _int_to_bits(self.modulus, self.degree + 1)

    @property
    def log_table(self) -> np.ndarray:
        return self._log

    @property
    def antilog_table(self) -> np.ndarray:
        return self._exp[: self.order - 1]

    # -- scalar arithmetic on ints ---------------------------------------
    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return int(self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)])

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 1 if k == 0 else 0
        return int(self._exp[(self._log[a] * k) % (self.order - 1)])

    def sigma(self, k: int) -> int:
        """The primitive element raised to the power ``k``."""
        return int(self._exp[k % (self.order - 1)])

    def log(self, a: int) -> int:
        """Exponent of ``a`` relative to the primitive element, -1 for zero."""
        return int(self._log[a])

    def _trace_slow(self, a: int) -> int:
        s, y = 0, a
        for _ in range(self.degree):
            s ^= y
            y = self.mul(y, y)
        if s not in (0, 1):
            raise ArithmeticError("trace left the prime field")
        return s

    def trace(self, a: int) -> int:
        return int(self._trace_table[a])

    def chi(self, a: int) -> int:
        """Additive character (-1)**tr(a)."""
        return 1 - 2 * int(self._trace_table[a])

    # -- vectorised helpers ----------------------------------------------
    def mul_array(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la = self._log[a]
        lb = self._log[b]
        out = self._exp[np.where(la < 0, 0, la) + np.where(lb < 0, 0, lb)]
        return np.where((la < 0) | (lb < 0), 0, out)

    def trace_array(self, a) -> np.ndarray:
        return self._trace_table[np.asarray(a, dtype=np.int64)]

    @functools.cached_property
    def character_matrix(self) -> np.ndarray:
        """``C[a, b] = chi(a*b)`` over all pairs of elements (int8)."""
        v = np.arange(self.order)
        c = 1 - 2 * self.trace_array(self.mul_array(v[:, None], v[None, :]))
        c = c.astype(np.int8)
        c.setflags(write=False)
        return c

    # -- elements and labels -----------------------------------------------
    def elements(self) -> range:
        """All element ints, in integer order."""
        return range(self.order)

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, str):
            return FieldElement(self.parse_label(value), self)
        if isinstance(value, (list, tuple)):
            if len(value) != self.degree:
                raise ValueError(f"expected {self.degree} coefficients")
            return FieldElement(_bits_to_int(value), self)
        value = int(value)
        if not 0 <= value < self.order:
            raise ValueError(f"{value} is not an element of GF({self.order})")
        return FieldElement(value, self)

    def label(self, a: int) -> str:
        if a == 0:
            return "0"
        k = self.log(a)
        return "1" if k == 0 else f"s{k}"

    def pretty(self, a: int) -> str:
        if a == 0:
            return "0"
        k = self.log(a)
        return "1" if k == 0 else f"σ^{k}"

    def parse_label(self, text: str) -> int:
        """Parse ``"0"``, ``"1"``, ``"s3"``, ``"s^3"`` or ``"σ^3"``."""
        t = text.strip()
        if t == "0":
            return 0
        if t == "1":
            return 1
        m = _LABEL_RE.match(t)
        if not m:
            raise ValueError(f"cannot parse field element label {text!r}")
        return self.sigma(int(m.group(1)))

    def f_value(self, x: int) -> int:
        """Sum of x**(2**i + 2**j) over 0 <= j < i <= N-1, evaluated in the field."""
        conj = [x]
        for _ in range(self.degree - 1):
            conj.append(self.mul(conj[-1], conj[-1]))
        s = 0
        for i in range(self.degree):
            for j in range(i):
                s ^= self.mul(conj[i], conj[j])
        return s

    def subfield(self, m: int) -> list[int]:
        """Embedded GF(2^m) in power order ``0, s^e, s^2e, ..., 1``."""
        if m < 1 or self.degree % m:
            raise ValueError(f"GF(2^{m}) is not a subfield of GF(2^{self.degree})")
        e = (self.order - 1) // ((1 << m) - 1)
        return [0] + [self.sigma(e * k) for k in range(1, 1 << m)]

    def to_json(self) -> dict:
        return {"degree": self.degree, "modulus": self.modulus_bits}

    @functools.cached_property
    def self_dual_basis(self) -> "Basis":
        return find_self_dual_basis(self)


def _parity(values: np.ndarray) -> np.ndarray:
    v = values.copy()
    out = np.zeros_like(v)
    while np.any(v):
        out ^= v & 1
        v >>= 1
    return out


def make_field(degree: int, modulus: int | Sequence[int] | None = None) -> GaloisField:
    """Build (and cache) a field; raises ``ValueError`` for bad moduli."""
    if modulus is not None and not isinstance(modulus, (int, np.integer)):
        modulus = tuple(modulus)
    return _make_field(degree, modulus)


@functools.lru_cache(maxsize=None)
def _make_field(degree, modulus):
    return GaloisField(degree, modulus)


@dataclass(frozen=True)
class FieldElement:
    """One element of a :class:`GaloisField`."""

    value: int
    field: GaloisField = dc_field(repr=False, compare=True)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("operands belong to different fields")
            return other.value
        if isinstance(other, (int, np.integer)) and int(other) in (0, 1):
            return int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value ^ o, self.field)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field.mul(self.value, o), self.field)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return FieldElement(self.field.pow(self.value, k), self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FieldElement(self.field.inv(o), self.field)

    def __neg__(self):
        return self

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(_int_to_bits(self.value, self.field.degree))

    @property
    def exponent(self) -> int:
        return self.field.log(self.value)

    def trace(self) -> int:
        return self.field.trace(self.value)

    def chi(self) -> int:
        return self.field.chi(self.value)

    def __str__(self):
        return self.field.label(self.value)

    def __repr__(self):
        return f"FieldElement({self.field.label(self.value)})"


@dataclass(frozen=True)
class Basis:
    """An ordered GF(2)-basis of the field.

    ``kind`` is one of ``"polynomial"``, ``"normal"``, ``"self-dual"`` or
    ``"custom"``.  Construction checks linear independence and, for
    ``"self-dual"``, the orthonormality ``tr(t_i t_j) = delta_ij``.
    """

    field: GaloisField
    elements: tuple[int, ...]
    kind: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(int(e) for e in self.elements))
        if len(self.elements) != self.field.degree:
            raise ValueError(f"a basis needs {self.field.degree} elements")
        if gf2_rank(self.elements) != self.field.degree:
            raise ValueError("basis elements are linearly dependent")
        if self.kind not in ("polynomial", "normal", "self-dual", "custom"):
            raise ValueError(f"unknown basis kind {self.kind!r}")
        if self.kind == "self-dual" and not self.is_self_dual():
            raise ValueError("basis is not self-dual")

    @classmethod
    def polynomial(cls, field: GaloisField) -> "Basis":
        return cls(field, tuple(field.sigma(k) for k in range(field.degree)), "polynomial")

    @classmethod
    def normal(cls, field: GaloisField, generator: int | None = None) -> "Basis":
        g = field.sigma(1) if generator is None else generator
        els = [g]
        for _ in range(field.degree - 1):
            els.append(field.mul(els[-1], els[-1]))
        return cls(field, tuple(els), "normal")

    def gram(self) -> np.ndarray:
        f = self.field
        return np.array(
            [[f.trace(f.mul(a, b)) for b in self.elements] for a in self.elements],
            dtype=np.uint8,
        )

    def is_self_dual(self) -> bool:
        return bool(np.array_equal(self.gram(), np.eye(self.field.degree, dtype=np.uint8)))

    @functools.cached_property
    def dual(self) -> tuple[int, ...]:
        """The trace-dual basis ``t'_j`` with ``tr(t_i t'_j) = delta_ij``."""
        if self.is_self_dual():
            return self.elements
        try:
            h = gf2_inv(self.gram())
        except np.linalg.LinAlgError as exc:  # pragma: no cover - trace form is nondegenerate
            raise ValueError("dual basis unavailable") from exc
        dual = []
        for j in range(self.field.degree):
            v = 0
            for k in range(self.field.degree):
                if h[k, j]:
                    v ^= self.elements[k]
            dual.append(v)
        return tuple(dual)

    def labels(self) -> list[str]:
        return [self.field.label(e) for e in self.elements]


def expand_in_basis(x: int | FieldElement, basis: Basis) -> tuple[int, ...]:
    """Coefficients ``a_i = tr(x t'_i)`` so that ``x = sum a_i t_i``."""
    f = basis.field
    v = x.value if isinstance(x, FieldElement) else int(x)
    return tuple(f.trace(f.mul(v, d)) for d in basis.dual)


def qubit_index_map(basis: Basis) -> np.ndarray:
    """Map element int -> computational-basis index (qubit 1 is the most significant bit)."""
    f = basis.field
    n = f.degree
    v = np.arange(f.order, dtype=np.int64)
    idx = np.zeros(f.order, dtype=np.int64)
    for i, d in enumerate(basis.dual):
        bit = f.trace_array(f.mul_array(v, d)).astype(np.int64)
        idx |= bit << (n - 1 - i)
    return idx


def find_self_dual_basis(field: GaloisField) -> Basis:
    """Lexicographically smallest self-dual basis by sorted exponent list.

    Depth-first search over trace-one elements in exponent order; the first
    complete basis found is the lexicographic minimum.
    """
    f = field
    q1 = f.order - 1
    # tr(t^2) = tr(t), so every self-dual basis element has trace one
    candidates = [f.sigma(k) for k in range(q1) if f.trace(f.sigma(k)) == 1]

    def extend(chosen: list[int], pool: list[int]) -> list[int] | None:
        need = f.degree - len(chosen)
        if need == 0:
            return chosen
        if len(pool) < need:
            return None
        for i, c in enumerate(pool):
            if len(pool) - i < need:
                return None
            if gf2_rank(chosen + [c]) != len(chosen) + 1:
                continue
            rest = [p for p in pool[i + 1:] if f.trace(f.mul(p, c)) == 0]
            found = extend(chosen + [c], rest)
            if found is not None:
                return found
        return None

    result = extend([], candidates)
    if result is None:  # pragma: no cover - self-dual bases always exist in characteristic 2
        raise ArithmeticError("no self-dual basis found")
    return Basis(f, tuple(result), "self-dual")


@dataclass(frozen=True)
class CosetPartition:
    """Decomposition of GF(2^{mn}) into translates of a GF(2^m)-subspace.

    ``cosets[k]`` is the coset labelled by ``representatives[k]``; the first
    one is always the initial coset ``C_0`` (representative 0).  The order of
    elements inside each coset is the construction order.
    """

    field: GaloisField
    m: int
    n: int
    relative_basis: tuple[int, ...]
    initial_coset: tuple[int, ...]
    representatives: tuple[int, ...]
    cosets: tuple[tuple[int, ...], ...]
    mode: str = "general"

    def __post_init__(self):
        f = self.field
        size = 1 << (self.m * (self.n - 1))
        seen: set[int] = set()
        for c in self.cosets:
            if len(c) != size or len(set(c)) != size:
                raise ValueError("cosets must all have size 2^(m(n-1))")
            if seen & set(c):
                raise ValueError("cosets are not disjoint")
            seen |= set(c)
        if len(seen) != f.order:
            raise ValueError("cosets do not cover the field")
        c0 = set(self.initial_coset)
        if any((a ^ b) not in c0 for a in c0 for b in c0):
            raise ValueError("initial coset is not additively closed")

    @property
    def coset_size(self) -> int:
        return len(self.initial_coset)

    def coset_of(self, a: int) -> int:
        """Index of the coset containing ``a``."""
        return int(self._coset_index[a])

    @functools.cached_property
    def _coset_index(self) -> np.ndarray:
        idx = np.empty(self.field.order, dtype=np.int64)
        for k, c in enumerate(self.cosets):
            idx[list(c)] = k
        return idx

    @functools.cached_property
    def embedded_subfield(self) -> tuple[int, ...]:
        return tuple(self.field.subfield(self.m))

    def coset_labels(self) -> list[str]:
        return [f"C_{self.field.label(r)}" for r in self.representatives]

    def as_sets(self) -> list[frozenset[int]]:
        return [frozenset(c) for c in self.cosets]

    def to_json(self) -> dict:
        f = self.field
        return {
            "degree": f.degree,
            "modulus": f.modulus_bits,
            "m": self.m,
            "n": self.n,
            "mode": self.mode,
            "relative_basis": [f.log(x) for x in self.relative_basis],
            "representatives": [f.log(x) for x in self.representatives],
            "cosets": [[f.log(x) for x in c] for c in self.cosets],
        }


def _span(field: GaloisField, scalars: Sequence[int], vectors: Sequence[int]) -> list[int]:
    """All linear combinations of ``vectors`` with coefficients from ``scalars``."""
    out = []
    for coeffs in itertools.product(scalars, repeat=len(vectors)):
        v = 0
        for c, mu in zip(coeffs, vectors):
            v ^= field.mul(c, mu)
        out.append(v)
    return out


def coset_decompose_general(
    field: GaloisField, m: int, relative_basis: Sequence[int | FieldElement]
) -> CosetPartition:
    """Cosets ``C_t = t*mu_0 + C_0`` with ``C_0`` spanned over GF(2^m) by ``mu_1..mu_{n-1}``.

    ``t`` runs over the embedded GF(2^m) in power order, so the first coset is
    ``C_0`` itself.
    """
    f = field
    if m < 1 or f.degree % m:
        raise ValueError(f"m={m} does not divide N={f.degree}")
    n = f.degree // m
    mus = [x.value if isinstance(x, FieldElement) else int(x) for x in relative_basis]
    if len(mus) != n:
        raise ValueError(f"relative basis needs {n} elements")
    sub = f.subfield(m)
    omega = sub[1]
    gf2_gens = [f.mul(f.pow(omega, k), mu) for mu in mus for k in range(m)]
    if gf2_rank(gf2_gens) != f.degree:
        raise ValueError("not a relative basis")

    c0 = _span(f, sub, mus[1:])
    reps = [f.mul(t, mus[0]) for t in sub]
    cosets = tuple(tuple(r ^ c for c in c0) for r in reps)
    return CosetPartition(
        field=f,
        m=m,
        n=n,
        relative_basis=tuple(mus),
        initial_coset=tuple(c0),
        representatives=tuple(reps),
        cosets=cosets,
        mode="general",
    )


def coset_decompose_subfield(field: GaloisField, m: int) -> CosetPartition:
    """Quadratic-extension partition with the embedded GF(2^m) as ``C_0``.

    Representatives are ``s^{2^m (i-1) + i}`` for ``i = 1 .. 2^m - 1``.
    """
    f = field
    if f.degree != 2 * m:
        raise ValueError("not a quadratic extension")
    k = (1 << m) + 1
    c0 = [0] + [f.sigma(i * k) for i in range(1, 1 << m)]
    reps = [0] + [f.sigma((1 << m) * (i - 1) + i) for i in range(1, 1 << m)]
    cosets = tuple(tuple(r ^ c for c in c0) for r in reps)
    return CosetPartition(
        field=f,
        m=m,
        n=2,
        relative_basis=(f.sigma(1), 1),
        initial_coset=tuple(c0),
        representatives=tuple(reps),
        cosets=cosets,
        mode="subfield",
    )
