import math
from fractions import Fraction

import numpy as np
import pytest

from magiclab import agsp, statevec as sv, symplectic as sp, zxcat


def cheb_exact(m, x):
    """Independent exact-rational Chebyshev recurrence."""
    x = Fraction(x)
    prev, cur = Fraction(1), x
    if m == 0:
        return prev
    for _ in range(m - 1):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def test_chebyshev_point_values():
    assert agsp.chebyshev(3, 2) == pytest.approx(26, abs=1e-9)
    for m in range(11):
        assert agsp.chebyshev(m, 1) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        agsp.chebyshev(-1, 0.5)


def test_chebyshev_matches_exact_recurrence():
    points = [Fraction(-3), Fraction(-1, 2), Fraction(1, 3), Fraction(2), Fraction(7, 2)]
    for m in range(21):
        for x in points:
            want = float(cheb_exact(m, x))
            got = agsp.chebyshev(m, x)
            assert got == pytest.approx(want, rel=1e-9, abs=1e-9)


def test_build_polynomial_invariants():
    for n, m in ((16, 4), (64, 8), (10, 9)):
        poly = agsp.build_polynomial(n, m)
        assert poly.coeffs[0] == 1
        assert len(poly.coeffs) == m + 1
        for k, a in enumerate(poly.coeffs):
            assert (a > 0) == (k % 2 == 0) and a != 0
    for bad in ((1, 1), (16, 0), (16, 16)):
        with pytest.raises(ValueError):
            agsp.build_polynomial(*bad)


def test_polynomial_validation_rejects_tampering():
    poly = agsp.build_polynomial(8, 3)
    with pytest.raises(ValueError):
        agsp.AgspPolynomial(8, 3, tuple(abs(c) for c in poly.coeffs))
    with pytest.raises(ValueError):
        agsp.AgspPolynomial(8, 2, poly.coeffs)
    with pytest.raises(ValueError):
        agsp.AgspPolynomial(8, 3, (Fraction(2),) + poly.coeffs[1:])


def test_evaluation_matches_chebyshev_form():
    for n, m in ((16, 4), (64, 8), (9, 5)):
        poly = agsp.build_polynomial(n, m)
        direct = 1.0 / agsp.chebyshev(m, Fraction(n + 1, n - 1))
        assert float(poly.evaluate(1)) == pytest.approx(direct, abs=1e-12)


def test_step_error_sup_bound_and_trend():
    val = agsp.step_error_sup(agsp.build_polynomial(16, 8))
    assert val <= 2 * math.exp(-4.0)
    sups = [agsp.step_error_sup(agsp.build_polynomial(64, m)) for m in (4, 8, 12, 16)]
    assert all(a > b for a, b in zip(sups, sups[1:]))
    # maximal admissible degree still honors the bound
    agsp.step_error_sup(agsp.build_polynomial(10, 9))


def test_coeff_sum_identity_exact_and_float():
    poly = agsp.build_polynomial(16, 4)
    exact_sum = sum(abs(a) * Fraction(16) ** k for k, a in enumerate(poly.coeffs))
    assert exact_sum == abs(poly.evaluate(-16))
    total, p_minus_n = agsp.coeff_sum_identity(poly)
    assert total == pytest.approx(p_minus_n, rel=1e-9)
    # degree-1 closed form (3n+1)/(n+1)
    one = agsp.build_polynomial(10, 1)
    assert agsp.coeff_sum_identity(one)[1] == pytest.approx(31 / 11, abs=1e-12)


def test_coeff_sum_growth_is_single_exponential():
    n = 64
    kappa = math.acosh((3 * n + 1) / (n - 1)) - math.acosh((n + 1) / (n - 1))
    for m in (4, 8, 12, 16, 20):
        total, _ = agsp.coeff_sum_identity(agsp.build_polynomial(n, m))
        assert math.log(total) <= kappa * m + 1.0


def test_operator_check_matches_scalar():
    op = agsp.agsp_operator_check(9, 6)
    scalar = agsp.step_error_sup(agsp.build_polynomial(9, 6))
    assert op == scalar
    assert op <= 2 * math.exp(-4.0)
    # weight-0 deviation vanishes identically
    assert agsp.build_polynomial(9, 6).evaluate(0) == 1
    with pytest.raises(ValueError):
        agsp.agsp_operator_check(13, 4)


def test_complexity_bound_values():
    assert agsp.complexity_bound(64, 64, 0.0, 0.0).bound == pytest.approx(6.0, abs=1e-12)
    low = agsp.complexity_bound(64, 32, 0.0, 0.0).bound
    high = agsp.complexity_bound(64, 64, 0.0, 0.0).bound
    assert high - low == pytest.approx(1.0, abs=1e-12)
    sweep = [agsp.complexity_bound(64, d, 0.01, 0.04).bound for d in (8, 16, 32, 64)]
    assert all(b >= a for a, b in zip(sweep, sweep[1:]))
    for bad in ((1, 1, 0, 0), (8, 9, 0, 0), (8, 4, -1, 0), (8, 4, 0, -1)):
        with pytest.raises(ValueError):
            agsp.complexity_bound(*bad)


def test_complexity_bound_cat_instantiation_trend():
    # d = n/3 with exponentially small epsilon: the bits bound grows like
    # (1/2) log2 n and the projector threshold steps up once per 4x n.
    bits = []
    thresholds = []
    for n in (64, 256, 1024, 4096):
        cb = agsp.complexity_bound(n, n // 3, math.exp(-n / 6), 1 / math.sqrt(n))
        bits.append(cb.bound)
        thresholds.append(
            agsp.complexity_bound(n, n // 3, math.exp(-n / 6), 0.01).depth_threshold
        )
    assert bits == pytest.approx([1.3920, 2.4094, 3.4136, 4.4147], abs=1e-3)
    assert thresholds == [2, 3, 4, 5]
    assert all(b > a for a, b in zip(bits, bits[1:]))


def test_select_degree_controls_amplified_error():
    n = 64
    for eps in (1e-4, 1e-8):
        m = agsp.select_degree(n, 40, eps)
        total, _ = agsp.coeff_sum_identity(agsp.build_polynomial(n, m))
        assert total * eps <= math.sqrt(eps) * (1 + 1e-12)
    assert agsp.select_degree(64, 3, 1e-12) == 2
    with pytest.raises(ValueError):
        agsp.select_degree(64, 1, 1e-4)
    with pytest.raises(ValueError):
        agsp.select_degree(64, 8, 0.0)


def test_local_indistinguishability_closed_form():
    n = 8
    plus = zxcat.build(n, "plus")
    minus = zxcat.build(n, "minus")
    z0 = sp.PauliString.single(n, 0, "Z")
    diff = sv.pauli_expectation(plus, z0) - sv.pauli_expectation(minus, z0)
    s = 2.0 ** (-n / 2)
    assert diff == pytest.approx(s / (1 - s * s), abs=1e-12)
    ident = sp.PauliString.identity(n)
    assert sv.pauli_expectation(plus, ident) == pytest.approx(1.0, abs=1e-12)
    assert sv.pauli_expectation(minus, ident) == pytest.approx(1.0, abs=1e-12)


def test_local_indist_scan_ratio_bounded():
    ratio = agsp.local_indist_scan(12, 3)
    assert 0 < ratio <= 8
    with_random = agsp.local_indist_scan(8, 2, random_trials=50, seed=1)
    assert 0 < with_random <= 8
    with pytest.raises(ValueError):
        agsp.local_indist_scan(sv.max_qubits() + 1, 1)
