"""Chebyshev approximate ground-state projectors and depth lower bounds.

``build_polynomial(n, m)`` produces the degree-m polynomial
P(x) = T_m((n+1-2x)/(n-1)) / T_m((n+1)/(n-1)) with exact rational
coefficients.  P mimics the step function that projects onto the
zero-eigenvalue ground space of G = sum_i |1><1|_i: P(0) = 1 exactly while
|P(x)| <= 2 exp(-2m/sqrt(n)) throughout [1, n].  All of its roots are
positive, so the coefficients alternate in sign and the coefficient-mass
identity sum_k |a_k| n^k = |P(-n)| holds exactly in rational arithmetic.

These facts feed two depth diagnostics for states that look like
approximate code states (orthogonal, yet locally indistinguishable up to
epsilon on every region smaller than d):

* ``complexity_bound`` — the bits-style lower bound
  log2(d / max{n(delta + epsilon), 1}) on the depth needed to reach the
  state within trace error delta, plus the projector-based integer depth
  threshold (smallest depth not excluded by the overlap ceiling
  1/2 + exp(-n^alpha / 2^t), with the hidden constant set to 1 — a
  reporting convention, flagged as such).
* ``local_indist_scan`` — direct verification that the plus/minus cat
  pair is locally indistinguishable at rate 2^{a - n/2} on supports of
  size a.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import statevec as sv
from . import symplectic as sp
from . import zxcat

_OPERATOR_MAX_QUBITS = 12


def chebyshev(m: int, x) -> float:
    """Degree-m Chebyshev polynomial of the first kind, evaluated stably.

    Uses the cosine form on [-1, 1], the cosh form for x > 1, and the
    parity rule T_m(-x) = (-1)^m T_m(x) below -1, so no recurrence is run
    in floating point.
    """
    if m < 0:
        raise ValueError("degree must be nonnegative")
    x = float(x)
    if abs(x) <= 1.0:
        return math.cos(m * math.acos(x))
    if x > 1.0:
        return math.cosh(m * math.acosh(x))
    val = math.cosh(m * math.acosh(-x))
    return -val if m % 2 else val


@dataclass(frozen=True)
class AgspPolynomial:
    """Exact-coefficient step-function approximant for an n-site spectrum."""

    n: int
    m: int
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != self.m + 1 or coeffs[-1] == 0:
            raise ValueError("degree mismatch")
        if coeffs[0] != 1:
            raise ValueError("P(0) must equal 1 exactly")
        for k, a in enumerate(coeffs):
            if a == 0 or (a > 0) != (k % 2 == 0):
                raise ValueError("coefficient signs must alternate")

    def evaluate(self, x) -> Fraction:
        """Exact Horner evaluation at a rational point."""
        x = Fraction(x)
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def error_bound(self) -> float:
        """The guaranteed sup bound 2 exp(-2m/sqrt(n)) on [1, n]."""
        return 2.0 * math.exp(-2.0 * self.m / math.sqrt(self.n))


def build_polynomial(n: int, m: int) -> AgspPolynomial:
    """Compose the affine spectral map into the Chebyshev recurrence.

    Exact rationals throughout: float coefficient extraction is badly
    conditioned already at moderate degree.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if not 1 <= m < n:
        raise ValueError("need 1 <= m < n")
    # l(x) = (n + 1 - 2x)/(n - 1) maps [1, n] onto [-1, 1] and 0 to y1 > 1.
    den = Fraction(n - 1)
    ell = [Fraction(n + 1) / den, Fraction(-2) / den]

    def times_ell(poly):
        out = [Fraction(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            out[i] += c * ell[0]
            out[i + 1] += c * ell[1]
        return out

    prev = [Fraction(1)]
    cur = list(ell)
    for _ in range(m - 1):
        nxt = [2 * c for c in times_ell(cur)]
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    # scalar T_m at the image of 0, by the same recurrence
    t_prev, t_cur = Fraction(1), ell[0]
    for _ in range(m - 1):
        t_prev, t_cur = t_cur, 2 * ell[0] * t_cur - t_prev
    scale = t_cur if m >= 1 else t_prev
    return AgspPolynomial(n, m, tuple(c / scale for c in cur))


def step_error_sup(poly: AgspPolynomial) -> float:
    """Max |P(x)| over the excited spectrum x in {1..n}.

    The affine map sends [1, n] onto [-1, 1] where |T_m| <= 1, so the
    continuous sup over the whole interval is attained at x = 1 and the
    integer grid already captures it. Asserts the 2 exp(-2m/sqrt(n)) bound.
    """
    worst = max(abs(poly.evaluate(x)) for x in range(1, poly.n + 1))
    val = float(worst)
    assert val <= poly.error_bound() + 1e-15, "step-error bound violated"
    return val


def coeff_sum_identity(poly: AgspPolynomial) -> tuple:
    """Both sides of sum_k |a_k| n^k = |P(-n)|, computed independently.

    The left side is an exact rational made from the coefficients; the
    right side evaluates T_m((3n+1)/(n-1)) / T_m((n+1)/(n-1)) in floating
    point through the stable cosh form. Their agreement (asserted to
    relative 1e-9) checks the sign-alternation reasoning end to end.
    """
    n, m = poly.n, poly.m
    total = sum(abs(a) * Fraction(n) ** k for k, a in enumerate(poly.coeffs))
    total = float(total)
    p_minus_n = abs(
        chebyshev(m, Fraction(3 * n + 1, n - 1))
        / chebyshev(m, Fraction(n + 1, n - 1))
    )
    assert abs(total - p_minus_n) <= 1e-9 * max(abs(total), 1.0), (
        "coefficient-mass identity violated"
    )
    return total, p_minus_n


def agsp_operator_check(n: int, m: int) -> float:
    """Operator-norm distance between |0^n><0^n| and P(G) for diagonal G.

    G = sum_i |1><1|_i counts excited sites, so P(G) is diagonal with
    entry P(hamming weight); the norm is the largest per-entry deviation
    from the step function, evaluated exactly per weight and materialized
    across all 2^n entries. Asserts the same 2 exp(-2m/sqrt(n)) bound.
    """
    if n > _OPERATOR_MAX_QUBITS:
        raise ValueError(f"operator check capped at {_OPERATOR_MAX_QUBITS} qubits")
    poly = build_polynomial(n, m)
    dev = [float(abs(poly.evaluate(w) - (1 if w == 0 else 0))) for w in range(n + 1)]
    weights = np.bitwise_count(np.arange(1 << n, dtype=np.uint64))
    diag_dev = np.asarray(dev)[weights]
    val = float(diag_dev.max())
    assert val <= poly.error_bound() + 1e-15
    return val


@dataclass(frozen=True)
class ComplexityBound:
    """Depth lower bound for approximate-code states, with diagnostics."""

    n: int
    d: int
    epsilon: float
    delta: float
    bound: float
    alpha: float
    depth_threshold: int
    note: str

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "bound": self.bound,
            "alpha": self.alpha,
            "depth_threshold": self.depth_threshold,
            "note": self.note,
        }


def complexity_bound(n: int, d, epsilon: float, delta: float) -> ComplexityBound:
    """Depth bound log2(d / max{n(delta+epsilon), 1}) plus the projector threshold.

    The threshold diagnostic is the smallest integer depth t at which the
    overlap ceiling 1/2 + exp(-n^alpha / 2^t) stops excluding fidelity
    1 - delta, where n^alpha = d / sqrt(n); the hidden constant in the
    exponent is set to 1, which makes the integer convention-dependent.
    """
    if n < 2 or not 1 <= d <= n:
        raise ValueError("need 2 <= n and 1 <= d <= n")
    if epsilon < 0 or delta < 0:
        raise ValueError("epsilon and delta must be nonnegative")
    bound = math.log2(d / max(n * (delta + epsilon), 1.0))
    alpha = math.log(d) / math.log(n) - 0.5
    n_alpha = d / math.sqrt(n)
    t = 0
    while 0.5 + math.exp(-n_alpha / 2.0**t) < 1.0 - delta and t < 400:
        t += 1
    return ComplexityBound(
        n=n,
        d=int(d),
        epsilon=float(epsilon),
        delta=float(delta),
        bound=bound,
        alpha=alpha,
        depth_threshold=t,
        note="threshold uses unit constant in the exponent (convention)",
    )


def select_degree(n: int, d: int, epsilon: float, c: float | None = None) -> int:
    """Degree rule m = min{d-1, c log(1/epsilon)} with a safe default c.

    The default chooses c = 1/(2 kappa) with kappa the per-degree growth
    rate of |P(-n)|, so that the amplified error |P(-n)| * epsilon stays
    at or below sqrt(epsilon).
    """
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if d < 2:
        raise ValueError("need d >= 2")
    if c is None:
        kappa = math.acosh((3 * n + 1) / (n - 1)) - math.acosh((n + 1) / (n - 1))
        c = 1.0 / (2.0 * kappa)
    return max(1, min(d - 1, int(c * math.log(1.0 / epsilon))))


def local_indist_scan(
    n: int, max_support: int, random_trials: int = 0, seed: int = 0
) -> float:
    """Largest ratio |<V>_plus - <V>_minus| / 2^{a - n/2} over small supports.

    Scans every Pauli word whose support has size a <= max_support
    (letters X, Y, Z on each support qubit), plus optional random
    unit-norm Hermitian V trials on random supports. The plus/minus cat
    pair is locally indistinguishable, so the ratio stays order one.
    """
    if n > sv.max_qubits():
        raise ValueError("n exceeds the dense cap")
    plus = zxcat.build(n, "plus")
    minus = zxcat.build(n, "minus")
    worst = 0.0
    for a in range(1, max_support + 1):
        limit = 2.0 ** (a - n / 2.0)
        for support in itertools.combinations(range(n), a):
            for letters in range(3**a):
                p = sp.PauliString.identity(n)
                rem = letters
                for q in support:
                    p = p * sp.PauliString.single(n, q, "XYZ"[rem % 3])
                    rem //= 3
                diff = abs(
                    sv.pauli_expectation(plus, p)
                    - sv.pauli_expectation(minus, p)
                )
                worst = max(worst, diff / limit)
    rng = np.random.default_rng(seed)
    for _ in range(random_trials):
        a = int(rng.integers(1, max_support + 1))
        support = tuple(sorted(int(q) for q in rng.choice(n, a, replace=False)))
        herm = zxcat._random_bounded_hermitian(1 << a, rng)
        d1 = np.vdot(plus.amps, sv.matrix_action(plus.amps, n, support, herm))
        d2 = np.vdot(minus.amps, sv.matrix_action(minus.amps, n, support, herm))
        worst = max(worst, abs((d1 - d2).real) / 2.0 ** (a - n / 2.0))
    return worst
