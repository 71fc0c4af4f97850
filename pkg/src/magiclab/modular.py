"""Double-Fibonacci modular data and the monomial logical-gate exclusion.

The anyon content is described by a 4x4 S matrix with entries in the golden
field (rationals extended by the golden ratio) and a diagonal T of tenth
roots of unity. A locality-preserving logical gate would have to be a
monomial matrix L = (permutation) x (unimodular diagonal) whose conjugates
by the modular matrices stay monomial; this module carries out that
exclusion exactly: golden-field elimination pins the diagonal phases, and a
numerical monomiality test disposes of the surviving permutation case. A
randomized scalar-rigidity trial covers the companion fact that only scalar
matrices stay monomial under conjugation by every local-unitary pair.
"""

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import linear_sum_assignment

from .statevec import haar_unitary

_PHI = (1.0 + 5.0 ** 0.5) / 2.0


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("golden components must be exact (int/Fraction/str)")
    return Fraction(value)


@dataclass(frozen=True)
class GoldenNumber:
    """Exact element a + b*phi of the golden field.

    Multiplication reduces through phi^2 = phi + 1, so the pair (a, b) of
    rationals is closed under ring operations, and division is exact.
    """

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", _as_fraction(self.a))
        object.__setattr__(self, "b", _as_fraction(self.b))

    # -- constructors
    @classmethod
    def phi(cls) -> "GoldenNumber":
        return cls(0, 1)

    @classmethod
    def of(cls, value) -> "GoldenNumber":
        if isinstance(value, GoldenNumber):
            return value
        return cls(_as_fraction(value), Fraction(0))

    # -- ring operations
    def __add__(self, other):
        o = GoldenNumber.of(other)
        return GoldenNumber(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return GoldenNumber(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-GoldenNumber.of(other))

    def __rsub__(self, other):
        return GoldenNumber.of(other) + (-self)

    def __mul__(self, other):
        o = GoldenNumber.of(other)
        # (a + b phi)(c + d phi) = ac + bd + (ad + bc + bd) phi
        return GoldenNumber(
            self.a * o.a + self.b * o.b,
            self.a * o.b + self.b * o.a + self.b * o.b,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GoldenNumber":
        # (a + b phi)((a + b) - b phi) = a^2 + ab - b^2, a rational
        norm = self.a * self.a + self.a * self.b - self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("inverse of zero golden number")
        return GoldenNumber((self.a + self.b) / norm, -self.b / norm)

    def __truediv__(self, other):
        return self * GoldenNumber.of(other).inverse()

    def __rtruediv__(self, other):
        return GoldenNumber.of(other) * self.inverse()

    def __pow__(self, exponent: int) -> "GoldenNumber":
        if not isinstance(exponent, int):
            raise TypeError("exponent must be an integer")
        base = self if exponent >= 0 else self.inverse()
        out = GoldenNumber(Fraction(1), Fraction(0))
        for _ in range(abs(exponent)):
            out = out * base
        return out

    def __eq__(self, other):
        try:
            o = GoldenNumber.of(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __float__(self):
        return float(self.a) + float(self.b) * _PHI

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __repr__(self):
        return f"GoldenNumber({self.a}, {self.b})"


_ZERO = GoldenNumber(0, 0)
_ONE = GoldenNumber(1, 0)
_PHI_G = GoldenNumber.phi()


@dataclass(frozen=True)
class ModularData:
    """Label set with exact S matrix and root-of-unity T phases.

    ``s_body`` holds the golden-field entries of S over the common
    prefactor ``s_prefactor`` (so S = prefactor * body), and T is stored as
    integer exponents over a primitive ``t_root_order``-th root of unity.
    """

    k: int
    dims: tuple
    s_body: tuple
    s_prefactor: GoldenNumber
    t_exponents: tuple
    t_root_order: int = 10

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("need at least one label")
        if len(self.dims) != self.k or len(self.t_exponents) != self.k:
            raise ValueError("dims/T length must match the label count")
        if len(self.s_body) != self.k or any(
            len(row) != self.k for row in self.s_body
        ):
            raise ValueError("S must be k x k")
        for i in range(self.k):
            for j in range(self.k):
                if self.s_body[i][j] != self.s_body[j][i]:
                    raise ValueError("S must be symmetric")
        s = self.s_numeric()
        if not np.allclose(s @ s.conj().T, np.eye(self.k), atol=1e-12):
            raise ValueError("numerical embedding of S is not unitary")

    def s_exact(self, i: int, j: int) -> GoldenNumber:
        return self.s_prefactor * self.s_body[i][j]

    def s_numeric(self) -> np.ndarray:
        pref = float(self.s_prefactor)
        return np.array(
            [[pref * float(e) for e in row] for row in self.s_body]
        )

    def t_numeric(self) -> np.ndarray:
        root = 2j * np.pi / self.t_root_order
        return np.diag([np.exp(root * e) for e in self.t_exponents])

    def to_json(self) -> str:
        def pair(g: GoldenNumber):
            return [str(g.a), str(g.b)]

        payload = {
            "labels": self.k,
            "dims": [pair(d) for d in self.dims],
            "s_prefactor": pair(self.s_prefactor),
            "s_body": [[pair(e) for e in row] for row in self.s_body],
            "t_root_order": self.t_root_order,
            "t_exponents": list(self.t_exponents),
        }
        return json.dumps(payload, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ModularData":
        def golden(pair) -> GoldenNumber:
            return GoldenNumber(Fraction(pair[0]), Fraction(pair[1]))

        raw = json.loads(text)
        return cls(
            k=int(raw["labels"]),
            dims=tuple(golden(p) for p in raw["dims"]),
            s_body=tuple(
                tuple(golden(p) for p in row) for row in raw["s_body"]
            ),
            s_prefactor=golden(raw["s_prefactor"]),
            t_exponents=tuple(int(e) for e in raw["t_exponents"]),
            t_root_order=int(raw["t_root_order"]),
        )


def double_fibonacci() -> ModularData:
    """The four-label data with quantum dimensions (1, phi, phi, phi^2)."""
    phi = _PHI_G
    phi2 = phi * phi
    body = (
        (_ONE, phi, phi, phi2),
        (phi, -_ONE, phi2, -phi),
        (phi, phi2, -_ONE, -phi),
        (phi2, -phi, -phi, _ONE),
    )
    return ModularData(
        k=4,
        dims=(_ONE, phi, phi, phi2),
        s_body=body,
        s_prefactor=(GoldenNumber.of(2) + phi).inverse(),
        t_exponents=(0, 4, 6, 0),  # 1, e^{i4pi/5}, e^{-i4pi/5}, 1
    )


def verlinde_dim(dims, genus: int) -> GoldenNumber:
    """Genus-g space dimension sum_i (D/d_i)^{2g-2} with D^2 = sum d_i^2.

    Exact in the golden field: only even powers of D appear, so the square
    root never materializes. Genus 1 returns the label count.
    """
    if genus < 1:
        raise ValueError("genus must be at least 1")
    ds = [GoldenNumber.of(d) for d in dims]
    if not ds or any(float(d) <= 0 for d in ds):
        raise ValueError("dims must be positive")
    d_sq = _ZERO
    for d in ds:
        d_sq = d_sq + d * d
    total = _ZERO
    for d in ds:
        total = total + (d_sq ** (genus - 1)) / ((d * d) ** (genus - 1))
    return total


def dim_preserving_perms(dims) -> list:
    """All permutations pi with d_{pi(i)} = d_i exactly."""
    ds = [GoldenNumber.of(d) for d in dims]
    k = len(ds)
    out = []
    for perm in itertools.permutations(range(k)):
        if all(ds[perm[i]] == ds[i] for i in range(k)):
            out.append(tuple(perm))
    return out


@dataclass(frozen=True)
class MonomialCandidate:
    """Permutation-times-diagonal gate pattern with unit phases.

    The matrix is L[i, j] = phases[j] when permutation[i] = j and zero
    otherwise; the first phase is pinned to 1 (gates are projective, so a
    global phase carries no information).
    """

    permutation: tuple
    phases: tuple

    def __post_init__(self):
        k = len(self.permutation)
        if sorted(self.permutation) != list(range(k)):
            raise ValueError("not a permutation")
        if len(self.phases) != k:
            raise ValueError("need one phase per label")
        if abs(self.phases[0] - 1.0) > 1e-12:
            raise ValueError("first phase must be 1")
        if any(abs(abs(z) - 1.0) > 1e-12 for z in self.phases):
            raise ValueError("phases must be unimodular")

    def matrix(self) -> np.ndarray:
        k = len(self.permutation)
        out = np.zeros((k, k), dtype=complex)
        for i in range(k):
            out[i, self.permutation[i]] = self.phases[self.permutation[i]]
        return out

    def is_identity(self, tol: float = 1e-12) -> bool:
        return self.permutation == tuple(range(len(self.permutation))) and all(
            abs(z - 1.0) <= tol for z in self.phases
        )


def monomial_distance(m: np.ndarray, tol: float = 1e-9):
    """Distance of a square matrix from the nearest monomial pattern.

    Picks the single-entry-per-row-and-column pattern capturing the most
    squared mass (an assignment problem) and returns the Frobenius norm of
    everything outside it. When that distance is at most `tol`, also
    returns the pattern as a MonomialCandidate, with phases normalized to
    unit modulus and to a unit leading phase (the decomposition is exact
    only up to overall scale).
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("need a square matrix")
    weight = np.abs(m) ** 2
    rows, cols = linear_sum_assignment(-weight)
    # Sum the off-pattern mass directly; total-minus-captured would lose
    # everything to cancellation when the matrix is already monomial.
    off = weight.copy()
    off[rows, cols] = 0.0
    distance = float(np.sqrt(off.sum()))
    if distance > tol:
        return distance, None
    perm = tuple(int(c) for c in cols)
    entries = m[rows, cols]
    if np.min(np.abs(entries)) < 1e-300:
        return distance, None  # a vanishing diagonal is not invertible
    phases_by_col = np.empty(m.shape[0], dtype=complex)
    phases_by_col[list(perm)] = entries / np.abs(entries)
    phases_by_col = phases_by_col / phases_by_col[0]
    return distance, MonomialCandidate(perm, tuple(phases_by_col))


def _eliminate(rows):
    """Exact Gaussian elimination over the golden field.

    `rows` is a list of (coefficients, rhs) pairs. Returns the unique
    solution vector, None when the system is inconsistent, and raises when
    it is underdetermined.
    """
    rows = [([c for c in coeffs], r) for coeffs, r in rows]
    u = len(rows[0][0]) if rows else 0
    pivots = []
    level = 0
    for col in range(u):
        pivot = next(
            (
                i
                for i in range(level, len(rows))
                if not rows[i][0][col].is_zero()
            ),
            None,
        )
        if pivot is None:
            raise ValueError("phase system is underdetermined")
        rows[level], rows[pivot] = rows[pivot], rows[level]
        coeffs, rhs = rows[level]
        inv = coeffs[col].inverse()
        coeffs = [c * inv for c in coeffs]
        rhs = rhs * inv
        rows[level] = (coeffs, rhs)
        for i in range(len(rows)):
            if i != level and not rows[i][0][col].is_zero():
                f = rows[i][0][col]
                rows[i] = (
                    [ci - f * cj for ci, cj in zip(rows[i][0], coeffs)],
                    rows[i][1] - f * rhs,
                )
        pivots.append(level)
        level += 1
    for coeffs, rhs in rows[level:]:
        if not rhs.is_zero():
            return None  # inconsistent
    solution = [None] * u
    for col, row in enumerate(pivots):
        solution[col] = rows[row][1]
    return solution


def conjugate_entry_coefficients(data: ModularData, perm, i: int, j: int):
    """Golden coefficients of entry (i, j) of S (Pi D) S+ in the d_m.

    The entry is prefactor^2 * sum_m body[i][pi^{-1}(m)] body[j][m] d_m,
    a linear form in the diagonal entries d_m of D.
    """
    k = data.k
    inv = [0] * k
    for a, p in enumerate(perm):
        inv[p] = a
    return [data.s_body[i][inv[m]] * data.s_body[j][m] for m in range(k)]


def monomial_phase_solution(data: ModularData, perm):
    """Exact diagonal phases forced by monomiality of S (Pi D) S+.

    The conjugate is unitary, and a unitary monomial matrix has every
    entry either zero or unimodular. Any entry whose triangle bound (the
    modulus sum of its golden coefficients over |d_m| = 1) stays strictly
    below 1 can therefore never be the unit entry and must vanish; with
    the first phase pinned to 1, those vanishing conditions form a linear
    system over the golden field. For the identity permutation the forced
    entries are exactly the off-diagonal ones; for the label swap they are
    the off-pattern entries (the same linear forms, rows permuted).
    Returns the golden solution (d_1..d_{k-1}) or None when the system is
    inconsistent; raises when the forced entries leave phases free.
    """
    pref_sq = float(data.s_prefactor) ** 2
    rows = []
    for i in range(data.k):
        for j in range(data.k):
            coeffs = conjugate_entry_coefficients(data, perm, i, j)
            bound = pref_sq * sum(abs(float(c)) for c in coeffs)
            if bound < 1.0 - 1e-6:
                rows.append((coeffs[1:], -coeffs[0]))
    if not rows:
        raise ValueError("no entry of the conjugate is forced to vanish")
    return _eliminate(rows)


def lpu_search(data: ModularData, tol: float = 1e-9) -> list:
    """Enumerate monomial gates compatible with both modular conjugations.

    For each dimension-preserving permutation, the off-diagonal system of
    S L S+ pins the diagonal phases exactly (or proves there are none);
    exact solutions that fail unimodularity are discarded, and the
    survivors must additionally keep (ST) L (ST)+ monomial numerically.
    For the double-Fibonacci data the output is exactly the identity gate.
    """
    s = data.s_numeric()
    st = s @ data.t_numeric()
    results = []
    for perm in dim_preserving_perms(data.dims):
        solution = monomial_phase_solution(data, perm)
        if solution is None:
            continue
        # the system has real coefficients, so solutions are real golden
        # numbers, and a unimodular real number is +-1
        if any(not (z * z == _ONE) for z in solution):
            continue
        phases = (1.0,) + tuple(float(z) for z in solution)
        candidate = MonomialCandidate(perm, phases)
        mat = candidate.matrix()
        dist_s, _ = monomial_distance(s @ mat @ s.conj().T, tol)
        dist_st, _ = monomial_distance(st @ mat @ st.conj().T, tol)
        if dist_s <= tol and dist_st <= tol:
            results.append(candidate)
    return results


def offdiag_modulus_scan(
    data: ModularData, perm, samples: int = 10000, seed: int = 0
) -> float:
    """Largest off-diagonal modulus of S (Pi D) S+ over random phases.

    Samples unimodular diagonals uniformly in angle and returns the max
    off-diagonal modulus encountered; for dimension-preserving
    permutations of the double-Fibonacci data this stays strictly below 1,
    which is what forces monomial conjugates to be diagonal.
    """
    if tuple(perm) not in {
        tuple(p) for p in dim_preserving_perms(data.dims)
    }:
        raise ValueError("permutation does not preserve the dimensions")
    s = data.s_numeric()
    k = data.k
    rng = np.random.default_rng(seed)
    mask = ~np.eye(k, dtype=bool)
    worst = 0.0
    for _ in range(samples):
        phases = np.exp(2j * np.pi * rng.random(k - 1))
        mat = np.zeros((k, k), dtype=complex)
        diag = np.concatenate(([1.0], phases))
        for i, p in enumerate(perm):
            mat[i, p] = diag[p]
        conj = s @ mat @ s.conj().T
        worst = max(worst, float(np.max(np.abs(conj[mask]))))
    return worst


def scalar_rigidity_trial(
    n: int, k_matrix: np.ndarray, attempts: int = 1000, seed: int = 0,
    tol: float = 1e-9,
):
    """Search for a unitary witnessing that K is not scalar.

    Conjugating K by U (x) U* preserves monomiality for every U only when
    K is a multiple of the identity (n >= 3); this randomized trial
    returns the first Haar sample whose conjugate fails the monomiality
    test, or None when every attempt stays monomial (as a scalar K always
    does). A None is evidence, not proof, for non-scalar K.
    """
    if n < 3:
        raise ValueError("the rigidity statement needs dimension >= 3")
    k_matrix = np.asarray(k_matrix, dtype=complex)
    if k_matrix.shape != (n * n, n * n):
        raise ValueError("K must be n^2 x n^2")
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        u = haar_unitary(n, rng)
        w = np.kron(u, u.conj())
        conj = w @ k_matrix @ w.conj().T
        distance, _ = monomial_distance(conj, tol)
        if distance > tol:
            return u
    return None
