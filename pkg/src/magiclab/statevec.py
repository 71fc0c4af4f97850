"""Dense statevector simulation, light cones, and information quantities.

Amplitude indexing: qubit q is bit q of the index (qubit 0 = least
significant), so axis n-1-q of the reshaped (2,)*n tensor belongs to
qubit q. Multi-qubit gate matrices pack their targets the same way:
targets[0] is the least significant bit of the gate's own index.

Entropies are in bits (base 2); eigenvalues below 1e-12 are treated as
exact zeros, and 0*log(0) is 0. Dense work is capped at max_qubits()
statevector qubits (MAGICLAB_MAX_N, default 14) and 12 density-matrix
qubits.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _f2
from .symplectic import PauliString, StabilizerState

_EIG_CLIP = 1e-12
_DENSITY_MAX_QUBITS = 12

I2 = np.eye(2, dtype=complex)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Y2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z2 = np.array([[1, 0], [0, -1]], dtype=complex)
H2 = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S2 = np.array([[1, 0], [0, 1j]], dtype=complex)
# control = targets[0] (low bit), target = targets[1] (high bit)
CX4 = np.array(
    [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex
)
CZ4 = np.diag([1, 1, 1, -1]).astype(complex)


def max_qubits() -> int:
    """Dense-simulation cap; override with MAGICLAB_MAX_N."""
    return int(os.environ.get("MAGICLAB_MAX_N", "14"))


def _check_dense(n: int) -> None:
    cap = max_qubits()
    if n > cap:
        raise ValueError(f"{n} qubits exceeds the dense cap of {cap}")


@dataclass(frozen=True)
class StateVector:
    """Normalized pure state on n qubits."""

    n: int
    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        if amps.shape != (2**self.n,):
            raise ValueError("amplitude length must be 2**n")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-8:
            raise ValueError(f"state not normalized (norm {norm})")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @classmethod
    def from_amplitudes(cls, amps, normalize: bool = True) -> "StateVector":
        amps = np.asarray(amps, dtype=complex)
        n = int(amps.size - 1).bit_length()
        if amps.size != 2**n:
            raise ValueError("length is not a power of two")
        if normalize:
            norm = np.linalg.norm(amps)
            if norm < 1e-12:
                raise ValueError("cannot normalize the zero vector")
            amps = amps / norm
        return cls(n, amps)

    @classmethod
    def basis_state(cls, n: int, index: int) -> "StateVector":
        _check_dense(n)
        amps = np.zeros(2**n, dtype=complex)
        amps[index] = 1.0
        return cls(n, amps)

    @classmethod
    def uniform_plus(cls, n: int) -> "StateVector":
        _check_dense(n)
        return cls(n, np.full(2**n, 2.0 ** (-n / 2), dtype=complex))


@dataclass(frozen=True)
class DensityMatrix:
    """Mixed state on a labeled subset of qubits."""

    qubits: tuple[int, ...]
    mat: np.ndarray

    def __post_init__(self):
        k = len(self.qubits)
        if k > _DENSITY_MAX_QUBITS:
            raise ValueError(f"density matrices capped at {_DENSITY_MAX_QUBITS} qubits")
        mat = np.asarray(self.mat, dtype=complex)
        if mat.shape != (2**k, 2**k):
            raise ValueError("matrix shape must be 2^k x 2^k")
        if np.abs(mat - mat.conj().T).max() > 1e-8:
            raise ValueError("density matrix must be Hermitian")
        if abs(np.trace(mat).real - 1.0) > 1e-8:
            raise ValueError("density matrix must have unit trace")
        mat = mat.copy()
        mat.flags.writeable = False
        object.__setattr__(self, "mat", mat)


@dataclass(frozen=True)
class Gate:
    """k-qubit gate; matrix index packs targets[0] as the low bit."""

    targets: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        k = len(self.targets)
        if k < 1:
            raise ValueError("gate needs at least one target")
        if len(set(self.targets)) != k:
            raise ValueError("duplicate targets")
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.shape != (2**k, 2**k):
            raise ValueError("matrix shape must match target count")
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        object.__setattr__(self, "matrix", mat)

    def adjoint(self) -> "Gate":
        return Gate(self.targets, self.matrix.conj().T)


@dataclass(frozen=True)
class LayeredCircuit:
    """Depth-ordered layers of gates with disjoint targets per layer."""

    n: int
    layers: tuple[tuple[Gate, ...], ...]

    def __post_init__(self):
        layers = tuple(tuple(layer) for layer in self.layers)
        for layer in layers:
            seen: set[int] = set()
            for gate in layer:
                for t in gate.targets:
                    if not 0 <= t < self.n:
                        raise ValueError("gate target out of range")
                    if t in seen:
                        raise ValueError("overlapping targets within a layer")
                    seen.add(t)
        object.__setattr__(self, "layers", layers)

    @property
    def depth(self) -> int:
        return len(self.layers)

    @classmethod
    def identity(cls, n: int) -> "LayeredCircuit":
        return cls(n, ())

    def adjoint(self) -> "LayeredCircuit":
        layers = tuple(
            tuple(g.adjoint() for g in layer) for layer in reversed(self.layers)
        )
        return LayeredCircuit(self.n, layers)


@dataclass(frozen=True)
class LightCone:
    """Set of qubits reachable from a seed set through a circuit."""

    qubits: frozenset[int]

    @property
    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.qubits))

    def __len__(self):
        return len(self.qubits)


def matrix_action(
    amps: np.ndarray, n: int, targets: Sequence[int], matrix: np.ndarray
) -> np.ndarray:
    """Apply a (not necessarily unitary) matrix on `targets` to raw amplitudes."""
    k = len(targets)
    tensor = amps.reshape((2,) * n)
    # targets[0] must land on the low bit of the matrix index, i.e. the
    # last of the front axes after the reshape to (2**k, -1).
    front = [n - 1 - q for q in reversed(targets)]
    tensor = np.moveaxis(tensor, front, range(k))
    flat = tensor.reshape(2**k, -1)
    flat = np.asarray(matrix, dtype=complex) @ flat
    tensor = flat.reshape((2,) * n)
    tensor = np.moveaxis(tensor, range(k), front)
    return tensor.reshape(-1)


def apply_gate(v: StateVector, gate: Gate) -> StateVector:
    return StateVector(v.n, matrix_action(v.amps, v.n, gate.targets, gate.matrix))


def apply_circuit(circ: LayeredCircuit, v: StateVector) -> StateVector:
    if circ.n != v.n:
        raise ValueError("size mismatch")
    for layer in circ.layers:
        for gate in layer:
            v = apply_gate(v, gate)
    return v


def forward_cone(circ: LayeredCircuit, seeds: Iterable[int]) -> LightCone:
    """Output qubits that the seed inputs can influence."""
    cone = set(seeds)
    for layer in circ.layers:
        for gate in layer:
            if cone.intersection(gate.targets):
                cone.update(gate.targets)
    return LightCone(frozenset(cone))


def backward_cone(circ: LayeredCircuit, seeds: Iterable[int]) -> LightCone:
    """Input qubits that can influence the seed outputs."""
    cone = set(seeds)
    for layer in reversed(circ.layers):
        for gate in layer:
            if cone.intersection(gate.targets):
                cone.update(gate.targets)
    return LightCone(frozenset(cone))


def haar_unitary(dim: int, rng) -> np.ndarray:
    """Haar-random unitary matrix; `rng` is a Generator or an int seed."""
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    from scipy.stats import unitary_group

    return unitary_group.rvs(dim, random_state=rng)


def random_brickwork(n: int, depth: int, rng) -> LayeredCircuit:
    """Brickwork circuit of Haar-random two-qubit gates.

    Layer d pairs qubits starting at offset d % 2, so consecutive layers
    interleave; a lone unpaired qubit gets a random single-qubit gate.
    """
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    layers = []
    for d in range(depth):
        start = d % 2
        layer = []
        if start == 1 and n > 1:
            layer.append(Gate((0,), haar_unitary(2, rng)))
        q = start
        while q + 1 < n:
            layer.append(Gate((q, q + 1), haar_unitary(4, rng)))
            q += 2
        if q < n:
            layer.append(Gate((q,), haar_unitary(2, rng)))
        layers.append(tuple(layer))
    return LayeredCircuit(n, tuple(layers))


def reduced_density(v: StateVector, qubits: Iterable[int]) -> DensityMatrix:
    keep = tuple(sorted(set(int(q) for q in qubits)))
    if any(q < 0 or q >= v.n for q in keep):
        raise ValueError("qubit out of range")
    if len(keep) > _DENSITY_MAX_QUBITS:
        raise ValueError(f"density matrices capped at {_DENSITY_MAX_QUBITS} qubits")
    k = len(keep)
    tensor = v.amps.reshape((2,) * v.n)
    front = [v.n - 1 - q for q in reversed(keep)]
    tensor = np.moveaxis(tensor, front, range(k))
    flat = tensor.reshape(2**k, -1)
    return DensityMatrix(keep, flat @ flat.conj().T)


def entropy(dm: DensityMatrix) -> float:
    """Von Neumann entropy in bits; eigenvalues under 1e-12 count as 0."""
    w = np.linalg.eigvalsh(dm.mat)
    w = w[w > _EIG_CLIP]
    return float(-(w * np.log2(w)).sum())


def mutual_information(v: StateVector, a: Iterable[int], b: Iterable[int]) -> float:
    sa, sb = set(a), set(b)
    if sa & sb:
        raise ValueError("regions must be disjoint")
    return (
        entropy(reduced_density(v, sa))
        + entropy(reduced_density(v, sb))
        - entropy(reduced_density(v, sa | sb))
    )


def _sqrt_psd(mat: np.ndarray) -> np.ndarray:
    w, u = np.linalg.eigh(mat)
    w = np.clip(w, 0.0, None)
    return (u * np.sqrt(w)) @ u.conj().T


def fidelity(dm1: DensityMatrix, dm2: DensityMatrix) -> float:
    """Uhlmann fidelity F = ||sqrt(rho) sqrt(sigma)||_1 (not squared)."""
    if dm1.mat.shape != dm2.mat.shape:
        raise ValueError("dimension mismatch")
    prod = _sqrt_psd(dm1.mat) @ _sqrt_psd(dm2.mat)
    return float(np.linalg.svd(prod, compute_uv=False).sum())


def pure_overlap(v1: StateVector, v2: StateVector) -> float:
    """|<v1|v2>| for pure states."""
    if v1.n != v2.n:
        raise ValueError("size mismatch")
    return float(abs(np.vdot(v1.amps, v2.amps)))


# -- Pauli action -----------------------------------------------------------

def pauli_matrix(p: PauliString) -> np.ndarray:
    """Dense matrix of a Pauli string (qubit 0 = low index bit)."""
    if p.n > _DENSITY_MAX_QUBITS:
        raise ValueError("dense Pauli matrices capped at 12 qubits")
    singles = {"I": I2, "X": X2, "Y": Y2, "Z": Z2}
    mat = np.array([[1.0 + 0j]])
    for q in range(p.n - 1, -1, -1):
        xb, zb = p.x >> q & 1, p.z >> q & 1
        letter = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}[(xb, zb)]
        mat = np.kron(mat, singles[letter])
    return (1j**p.phase) * mat


def _word_action(amps: np.ndarray, p: PauliString) -> np.ndarray:
    idx = np.arange(amps.size, dtype=np.uint64)
    src = idx ^ np.uint64(p.x)
    par = (np.bitwise_count(src & np.uint64(p.z)) & 1).astype(np.int64)
    k = (p.phase + (p.x & p.z).bit_count()) % 4
    return (1j**k) * ((-1.0) ** par) * amps[src]


def apply_pauli(v: StateVector, p: PauliString) -> StateVector:
    """P|v> via index arithmetic, O(2^n) time."""
    if p.n != v.n:
        raise ValueError("size mismatch")
    return StateVector(v.n, _word_action(v.amps, p))


def pauli_expectation(v: StateVector, p: PauliString) -> float:
    """<v|P|v> for Hermitian P, as a real float."""
    if not p.is_hermitian:
        raise ValueError("expectation needs a Hermitian Pauli")
    val = np.vdot(v.amps, apply_pauli(v, p).amps)
    if abs(val.imag) > 1e-9:
        raise AssertionError("Hermitian expectation came out complex")
    return float(val.real)


def to_statevector(s: StabilizerState) -> StateVector:
    """Dense vector of a stabilizer state.

    Seeds the projector product with a computational basis state chosen
    by solving the sign constraints of the diagonal (x = 0) subgroup
    over F2, which guarantees a nonzero projection in one pass.
    """
    n = s.n
    _check_dense(n)
    x_rows = [g.x for g in s.generators]
    equations = []
    for tag in _f2.left_kernel(x_rows):
        word, sign = s.element(tag)
        if word.x != 0:
            raise AssertionError("diagonal subgroup element has X support")
        equations.append((word.z, 0 if sign == 1 else 1))
    b = _f2.solve(equations)
    if b is None:
        raise AssertionError("inconsistent stabilizer signs")
    state = np.zeros(2**n, dtype=complex)
    state[b] = 1.0
    for word, sign in zip(s.generators, s.signs):
        state = (state + sign * _word_action(state, word)) / 2.0
    return StateVector.from_amplitudes(state, normalize=True)


def partial_inner(
    v: StateVector, targets: Sequence[int], bra: np.ndarray
) -> tuple[np.ndarray, float]:
    """Contract <bra| against the target qubits without normalizing.

    Returns the unnormalized amplitudes on the remaining qubits (indices
    relabeled in their original relative order) and the outcome
    probability |<bra| v>|^2 restricted to those targets. The bra packs
    targets[0] as its low index bit. Zero-probability branches are
    returned as-is, which lets callers enumerate measurement outcomes.
    """
    targets = tuple(int(t) for t in targets)
    k = len(targets)
    bra = np.asarray(bra, dtype=complex).reshape(2**k)
    tensor = v.amps.reshape((2,) * v.n)
    front = [v.n - 1 - q for q in reversed(targets)]
    tensor = np.moveaxis(tensor, front, range(k))
    flat = tensor.reshape(2**k, -1)
    post = bra.conj() @ flat
    prob = float(np.linalg.norm(post) ** 2)
    # the moveaxis above keeps the non-target axes in their original
    # relative order, so the flat result is already LSB-consistent
    return post, prob


def project_out(
    v: StateVector, targets: Sequence[int], bra: np.ndarray
) -> tuple[StateVector, float]:
    """Contract <bra| against the target qubits.

    Returns the normalized post-state on the remaining qubits and the
    outcome probability, rejecting (near) impossible outcomes.
    """
    post, prob = partial_inner(v, targets, bra)
    if prob < 1e-14:
        raise ValueError("projection has (near) zero probability")
    remaining = v.n - len(tuple(targets))
    return StateVector(remaining, post / np.sqrt(prob)), prob


# -- snapshots ---------------------------------------------------------------

def save_snapshot(v: StateVector, path: str) -> None:
    """Write {"n": ..., "amplitudes": [re, im, ...]} atomically."""
    inter = np.empty(2 * v.amps.size)
    inter[0::2] = v.amps.real
    inter[1::2] = v.amps.imag
    payload = {"n": v.n, "amplitudes": inter.tolist()}
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def load_snapshot(path: str) -> StateVector:
    with open(path) as fh:
        payload = json.load(fh)
    inter = np.asarray(payload["amplitudes"], dtype=float)
    amps = inter[0::2] + 1j * inter[1::2]
    return StateVector(int(payload["n"]), amps)
