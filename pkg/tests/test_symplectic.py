"""Exact Pauli/stabilizer algebra against dense matrix oracles."""

import math

import numpy as np
import pytest

from magiclab import symplectic as sp
from magiclab.statevec import pauli_matrix, to_statevector


def random_pauli(n, rng, hermitian=False):
    x = int(rng.integers(0, 2**n))
    z = int(rng.integers(0, 2**n))
    phase = int(rng.choice([0, 2] if hermitian else [0, 1, 2, 3]))
    return sp.PauliString(n, x, z, phase)


def test_text_roundtrip():
    for text in ["XIZY", "-XIZY", "iZZ", "-iYX", "I", "-Z"]:
        p = sp.PauliString.from_text(text)
        assert p.to_text() == text.replace("+", "")
    assert sp.PauliString.from_text("X").x == 1
    # qubit 0 is the leftmost letter
    p = sp.PauliString.from_text("XII")
    assert p.x == 1 and p.z == 0


def test_single_letters_match_dense():
    for letter, mat in [("I", np.eye(2)), ("X", [[0, 1], [1, 0]]),
                        ("Y", [[0, -1j], [1j, 0]]), ("Z", [[1, 0], [0, -1]])]:
        p = sp.PauliString.single(1, 0, letter)
        assert np.allclose(pauli_matrix(p), np.array(mat))


def test_product_example():
    x = sp.PauliString.from_text("X")
    z = sp.PauliString.from_text("Z")
    assert (x * z).to_text() == "-iY"
    assert (z * x).to_text() == "iY"


def test_product_vs_dense():
    rng = np.random.default_rng(11)
    for _ in range(300):
        n = int(rng.integers(1, 5))
        p, q = random_pauli(n, rng), random_pauli(n, rng)
        got = pauli_matrix(sp.pauli_product(p, q))
        want = pauli_matrix(p) @ pauli_matrix(q)
        assert np.abs(got - want).max() < 1e-12


def test_commutes_vs_dense():
    rng = np.random.default_rng(12)
    for _ in range(200):
        n = int(rng.integers(1, 4))
        p, q = random_pauli(n, rng), random_pauli(n, rng)
        comm = pauli_matrix(p) @ pauli_matrix(q) - pauli_matrix(q) @ pauli_matrix(p)
        assert sp.commutes(p, q) == (np.abs(comm).max() < 1e-12)


def test_weight_and_support():
    p = sp.PauliString.from_text("XIZY")
    assert p.weight == 3
    assert p.support == (0, 2, 3)


def test_elementary_conjugations_match_dense():
    from magiclab.statevec import CX4, H2, I2, S2

    rng = np.random.default_rng(13)
    h, s = np.asarray(H2), np.asarray(S2)
    # embed on 2 qubits, qubit 0 = low bit
    embeds = {
        ("h", 0): np.kron(I2, h), ("h", 1): np.kron(h, I2),
        ("s", 0): np.kron(I2, s), ("s", 1): np.kron(s, I2),
    }
    for _ in range(100):
        p = random_pauli(2, rng)
        for (kind, q), u in embeds.items():
            xs, zs, ph = [p.x], [p.z], [p.phase]
            if kind == "h":
                sp._conj_h(xs, zs, ph, q)
            else:
                sp._conj_s(xs, zs, ph, q)
            got = pauli_matrix(sp.PauliString(2, xs[0], zs[0], ph[0]))
            want = u @ pauli_matrix(p) @ u.conj().T
            assert np.abs(got - want).max() < 1e-12, (kind, q, p)
        # CX with control 0, target 1 (matches CX4's convention)
        xs, zs, ph = [p.x], [p.z], [p.phase]
        sp._conj_cx(xs, zs, ph, 0, 1)
        got = pauli_matrix(sp.PauliString(2, xs[0], zs[0], ph[0]))
        want = CX4 @ pauli_matrix(p) @ CX4.conj().T
        assert np.abs(got - want).max() < 1e-12, ("cx", p)


def test_random_clifford_structure_and_adjoint():
    rng = np.random.default_rng(14)
    for _ in range(20):
        n = int(rng.integers(1, 7))
        c = sp.random_clifford(n, rng)  # constructor validates structure
        cinv = c.adjoint()
        for _ in range(5):
            p = random_pauli(n, rng, hermitian=True)
            assert cinv.conjugate(c.conjugate(p)) == p
            assert c.conjugate(cinv.conjugate(p)) == p


def test_conjugate_is_homomorphism():
    rng = np.random.default_rng(15)
    c = sp.random_clifford(4, rng)
    for _ in range(50):
        p, q = random_pauli(4, rng), random_pauli(4, rng)
        lhs = c.conjugate(sp.pauli_product(p, q))
        rhs = sp.pauli_product(c.conjugate(p), c.conjugate(q))
        assert lhs == rhs


def test_single_qubit_cliffords_land_in_the_24_group():
    # enumeration oracle: images of X and Z are anticommuting signed
    # letters; 6 * 4 = 24 elements mod global phase
    valid = set()
    letters = ["X", "Y", "Z"]
    for lx in letters:
        for sx in (0, 2):
            for lz in letters:
                if lz == lx:
                    continue
                for sz in (0, 2):
                    valid.add((lx, sx, lz, sz))
    assert len(valid) == 24
    rng = np.random.default_rng(16)
    seen = set()
    for _ in range(300):
        c = sp.random_clifford(1, rng)
        xi, zi = c.x_images[0], c.z_images[0]
        key = (
            xi.word().to_text(), xi.phase, zi.word().to_text(), zi.phase,
        )
        seen.add((key[0], key[1], key[2], key[3]))
        assert (key[0], key[1], key[2], key[3]) in {
            (lx, sx, lz, sz) for (lx, sx, lz, sz) in valid
        }
    assert len(seen) > 12  # mixing sanity, not uniformity


def random_stabilizer_state(n, rng):
    c = sp.random_clifford(n, rng)
    base = sp.StabilizerState.zero_state(n)
    return sp.apply_clifford(c, base)


def test_overlap_examples():
    z2 = sp.StabilizerState.zero_state(2)
    p2 = sp.StabilizerState.plus_state(2)
    assert sp.stabilizer_overlap(z2, p2) == pytest.approx(0.5, abs=1e-15)
    # GHZ via generators XX..X and Z_i Z_{i+1}
    n = 4
    gens = [sp.PauliString(n, (1 << n) - 1, 0, 0)]
    for i in range(n - 1):
        gens.append(sp.PauliString(n, 0, (1 << i) | (1 << (i + 1)), 0))
    ghz = sp.StabilizerState(n, tuple(gens), (1,) * n)
    assert sp.stabilizer_overlap(sp.StabilizerState.zero_state(n), ghz) == (
        pytest.approx(2**-0.5, abs=1e-15)
    )
    # orthogonal: |0> vs |1>
    one = sp.StabilizerState(1, (sp.PauliString.from_text("Z"),), (-1,))
    assert sp.stabilizer_overlap(sp.StabilizerState.zero_state(1), one) == 0.0


def test_overlap_matches_dense_and_is_half_integer_power():
    rng = np.random.default_rng(17)
    for _ in range(150):
        n = int(rng.integers(1, 6))
        s1 = random_stabilizer_state(n, rng)
        s2 = random_stabilizer_state(n, rng)
        val = sp.stabilizer_overlap(s1, s2)
        dense = abs(np.vdot(to_statevector(s1).amps, to_statevector(s2).amps))
        assert abs(val - dense) < 1e-10
        if val > 0:
            k = math.log2(val**2)
            assert abs(k - round(k)) < 1e-12


def test_sandwich_matches_dense_and_overlap():
    # The sandwich always shares the group-intersection dimension with the
    # plain overlap, so it is 0 or the same half-integer power of 2; the
    # two magnitudes agree whenever the plain overlap itself is nonzero.
    rng = np.random.default_rng(18)
    both_nonzero = 0
    for _ in range(200):
        n = int(rng.integers(1, 6))
        s1 = random_stabilizer_state(n, rng)
        s2 = random_stabilizer_state(n, rng)
        p = random_pauli(n, rng)
        val = sp.pauli_sandwich(s2, p, s1)
        v1 = to_statevector(s1).amps
        v2 = to_statevector(s2).amps
        dense = abs(np.vdot(v2, pauli_matrix(p) @ v1))
        assert abs(val - dense) < 1e-10
        if val > 1e-12:
            halves = 2.0 * np.log2(val)
            assert abs(halves - round(halves)) < 1e-9
        overlap = sp.stabilizer_overlap(s2, s1)
        if overlap > 1e-12 and val > 1e-12:
            both_nonzero += 1
            assert abs(val - overlap) < 1e-12
    assert both_nonzero > 20


def test_stabilizer_state_validation():
    with pytest.raises(ValueError):
        sp.StabilizerState(
            2,
            (sp.PauliString.from_text("XI"), sp.PauliString.from_text("ZI")),
            (1, 1),
        )  # anticommuting
    with pytest.raises(ValueError):
        sp.StabilizerState(
            2,
            (sp.PauliString.from_text("ZI"), sp.PauliString.from_text("ZI")),
            (1, 1),
        )  # dependent
