"""Shared fixtures and independent reference implementations.

The helpers here deliberately avoid the package's log/antilog tables and
fast paths: they multiply polynomials schoolbook-style and build operators
straight from the defining sums.
"""
import time

import numpy as np
import pytest

from qcoarse.field import make_field, qubit_index_map


def poly_mulmod(a: int, b: int, modulus: int) -> int:
    """Carry-less multiply then reduce; no tables."""
    deg = modulus.bit_length() - 1
    prod = 0
    while b:
        if b & 1:
            prod ^= a
        a <<= 1
        b >>= 1
    while prod.bit_length() - 1 >= deg:
        prod ^= modulus << (prod.bit_length() - 1 - deg)
    return prod


def poly_trace(x: int, modulus: int) -> int:
    deg = modulus.bit_length() - 1
    s, y = 0, x
    for _ in range(deg):
        s ^= y
        y = poly_mulmod(y, y, modulus)
    assert s in (0, 1)
    return s


def oracle_chi(x, modulus):
    return -1 if poly_trace(x, modulus) else 1


def oracle_z(field, alpha, basis=None):
    """Z_alpha = sum_v chi(alpha v)|v><v| in qubit ordering."""
    basis = basis or field.self_dual_basis
    idx = qubit_index_map(basis)
    out = np.zeros((field.order, field.order), dtype=complex)
    for v in range(field.order):
        out[idx[v], idx[v]] = oracle_chi(poly_mulmod(alpha, v, field.modulus), field.modulus)
    return out


def oracle_x(field, beta, basis=None):
    """X_beta = sum_v |v + beta><v|."""
    basis = basis or field.self_dual_basis
    idx = qubit_index_map(basis)
    out = np.zeros((field.order, field.order), dtype=complex)
    for v in range(field.order):
        out[idx[v ^ beta], idx[v]] = 1
    return out


def random_density(d, rng, rank=None):
    k = d if rank is None else rank
    a = rng.normal(size=(d, k)) + 1j * rng.normal(size=(d, k))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


@pytest.fixture
def rng():
    return np.random.default_rng(20161201)


@pytest.fixture(params=[1, 2, 3, 4])
def small_field(request):
    return make_field(request.param)


@pytest.fixture
def gf4():
    return make_field(2)


@pytest.fixture
def gf8():
    return make_field(3)


@pytest.fixture
def gf16():
    return make_field(4)


def double_bell():
    v = np.zeros(16)
    v[[0b0000, 0b0011, 0b1100, 0b1111]] = 0.5
    return v


def w_like():
    v = np.zeros(16)
    v[[0b0001, 0b0010, 0b0100, 0b1000]] = 0.5
    return v


def phase_free(strings):
    """Set of Pauli letters with phases stripped."""
    return {str(p).lstrip("-i+") for p in strings}


SUITE_BUDGET_S = 300.0
_start = {}


def pytest_sessionstart(session):
    _start["t"] = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    _start["elapsed"] = time.perf_counter() - _start.get("t", time.perf_counter())
    if _start["elapsed"] >= SUITE_BUDGET_S:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    elapsed = _start.get("elapsed", 0.0)
    ok = elapsed < SUITE_BUDGET_S
    terminalreporter.write_line(
        f"[{'PASS' if ok else 'FAIL'}] C11 suite runtime ({elapsed:.1f} s < {SUITE_BUDGET_S:.0f} s)"
    )
