import itertools

import numpy as np
import pytest

from conftest import random_state_vector
from qecc1wqc import code5, svsim
from qecc1wqc.circuit import CZ, Circuit, Gate, H, Measure, RZ
from qecc1wqc.pauli import PauliString
from qecc1wqc.svsim import StateVector
from qecc1wqc.tableau import Tableau


def test_init_plus():
    s = svsim.init(1, "+")
    assert np.allclose(s.amps, [1 / np.sqrt(2), 1 / np.sqrt(2)])


def test_init_two_plus_then_cz():
    s = svsim.init(2, "++")
    svsim.apply(s, CZ(0, 1))
    # (|0+> + |1->)/sqrt(2)
    expect = np.array([1, 1, 1, -1], dtype=complex) / 2
    assert np.allclose(s.amps, expect)


def test_init_basis_state():
    s = svsim.init(5, "00000")
    assert s.amps[0] == 1 and np.count_nonzero(s.amps) == 1


def test_qubit0_is_most_significant():
    s = svsim.init(2, "10")
    assert s.amps[2] == 1  # |10> -> index 2


def test_budget_guard():
    with pytest.raises(ValueError):
        svsim.init(25, "0" * 25)


def test_apply_h():
    s = svsim.init(1, "0")
    svsim.apply(s, H(0))
    assert svsim.fidelity(s, svsim.init(1, "+")) > 1 - 1e-12


def test_pentagon_gives_logical_minus():
    s = svsim.init(5, "+++++")
    for a, b in code5.PENTAGON_EDGES:
        svsim.apply(s, CZ(a, b))
    assert svsim.fidelity(s, code5.logical_minus()) > 1 - 1e-10


def test_rz_on_plus():
    s = svsim.init(1, "+")
    svsim.apply(s, RZ(0, np.pi / 2))
    expect = np.array([1, 1j], dtype=complex) / np.sqrt(2)
    assert abs(np.vdot(expect, s.amps)) > 1 - 1e-12


def test_measure_plus_in_x_deterministic():
    s = svsim.init(1, "+")
    rec, _ = svsim.measure(s, 0, "X")
    assert rec.outcome == 0 and abs(rec.probability - 1) < 1e-10


def test_measure_xy_eigenstate():
    xi = 0.83
    amps = np.array([1, np.exp(1j * xi)], dtype=complex) / np.sqrt(2)
    s = StateVector(1, amps)
    rec, _ = svsim.measure(s, 0, "XY", xi=xi)
    assert rec.outcome == 0 and abs(rec.probability - 1) < 1e-10


def test_forced_zero_probability_rejected():
    s = svsim.init(1, "0")
    with pytest.raises(ValueError):
        svsim.measure(s, 0, "Z", forced=1)


def test_teleported_gate_from_physical_logical_state(rng):
    """Measuring the hub of the physical-logical state at angle -xi leaves
    (X^L)^m H^L Rz^L(xi) |psi^L> on the register."""
    for _ in range(3):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        alpha, beta = v / np.linalg.norm(v)
        xi = float(rng.uniform(0, 2 * np.pi))
        for m in (0, 1):
            state = StateVector(6, np.kron(
                np.array([alpha, beta]), svsim.init(5, "00000").amps))
            # physical-logical: qubit 0 physical, 1..5 logical
            # build it as alpha|0>|+L> + beta|1>|-L>
            lp = np.kron(np.array([1, 0]), code5.logical_plus().amps)
            lm = np.kron(np.array([0, 1]), code5.logical_minus().amps)
            state = StateVector(6, alpha * lp + beta * lm)
            rec, _ = svsim.measure(state, 0, "XY", forced=m, xi=-xi)
            out = svsim.extract_pure(state, [1, 2, 3, 4, 5])
            target = protocols_target(alpha, beta, xi, m)
            assert svsim.fidelity(out, target) > 1 - 1e-9


def protocols_target(alpha, beta, xi, m):
    from qecc1wqc.protocols import teleport_target
    return teleport_target((alpha, beta), xi, m)


def test_fidelity_basics():
    s0 = svsim.init(1, "0")
    s1 = svsim.init(1, "1")
    assert svsim.fidelity(s0, s0) == pytest.approx(1)
    assert svsim.fidelity(s0, s1) == pytest.approx(0)
    with pytest.raises(ValueError):
        svsim.fidelity(s0, svsim.init(2, "00"))


def test_partial_trace_pure_product(rng):
    sub = random_state_vector(rng, 2)
    amps = np.kron(np.array([1, 0]), sub)
    ok, got = svsim.partial_trace_is_pure(StateVector(3, amps), [1, 2])
    assert ok
    assert abs(np.vdot(sub, got.amps)) > 1 - 1e-10


def test_partial_trace_rejects_entangled_cut():
    bell = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    ok, got = svsim.partial_trace_is_pure(StateVector(2, bell), [0])
    assert not ok and got is None
    with pytest.raises(ValueError):
        svsim.extract_pure(StateVector(2, bell), [0])


def test_norm_preserved_through_random_circuit(rng):
    s = svsim.init(4, "+0+0")
    for _ in range(60):
        kind = rng.choice(["H", "S", "RZ", "CZ"])
        if kind == "CZ":
            a, b = rng.choice(4, size=2, replace=False)
            svsim.apply(s, CZ(int(a), int(b)))
        elif kind == "RZ":
            svsim.apply(s, RZ(int(rng.integers(0, 4)), float(rng.uniform(0, 7))))
        else:
            svsim.apply(s, Gate(kind, (int(rng.integers(0, 4)),)))
    assert abs(s.norm() - 1) < 1e-10
    for q in range(4):
        svsim.measure(s, q, "Z", rng=rng)
        assert abs(s.norm() - 1) < 1e-10


def test_measurement_statistics_within_5_sigma(rng):
    zeros = 0
    trials = 10_000
    for _ in range(trials):
        s = svsim.init(1, "0")
        rec, _ = svsim.measure(s, 0, "X", rng=rng)
        zeros += rec.outcome == 0
    sigma = np.sqrt(trials * 0.25)
    assert abs(zeros - trials / 2) < 5 * sigma


def test_replay_with_recorded_outcomes_is_bitwise(rng):
    c = Circuit(3)
    c.append(H(0))
    c.append(CZ(0, 1))
    c.append(H(1))
    c.append(Measure(1, "Z", slot=0))
    c.append(CZ(1, 2))
    c.append(Measure(0, "X", slot=1))
    s1 = svsim.init(3, "0+0")
    records, _ = svsim.run_circuit(s1, c, rng=rng)
    outcomes = {slot: rec.outcome for slot, rec in records.items()}
    s2 = svsim.init(3, "0+0")
    svsim.run_circuit(s2, c, forced=outcomes)
    assert np.array_equal(s1.amps, s2.amps)


def _dense_stabilizer_group(state: StateVector):
    """All signed Pauli strings stabilizing a dense state (n <= 5)."""
    found = set()
    n = state.n
    for x in range(2**n):
        for z in range(2**n):
            for phase in (0, 1, 2, 3):
                p = PauliString(n, x, z, phase)
                if not p.is_hermitian():
                    continue
                if np.allclose(p.matrix() @ state.amps, state.amps, atol=1e-8):
                    found.add((x, z, phase))
    return found


def test_clifford_cross_check_with_tableau(rng):
    """Random Clifford circuits: the dense stabilizer group, extracted by
    testing every signed Pauli string, equals the tableau's group."""
    for n in (2, 2, 3, 3, 4, 5):
        init = "".join(rng.choice(["0", "+"], size=n))
        s = svsim.init(n, init)
        t = Tableau.initialized(n, list(init))
        for _ in range(15):
            kind = rng.choice(["H", "S", "CZ"])
            if kind == "CZ" and n >= 2:
                a, b = rng.choice(n, size=2, replace=False)
                g = CZ(int(a), int(b))
            else:
                g = Gate(kind if kind != "CZ" else "H", (int(rng.integers(0, n)),))
            svsim.apply(s, g)
            t.apply(g)
        dense_group = _dense_stabilizer_group(s)
        # every group element generated by the tableau rows must stabilize
        members = set()
        rows = t.stabilizer_rows()
        from qecc1wqc.pauli import compose_pauli
        for bits in itertools.product([0, 1], repeat=n):
            acc = PauliString.identity(n)
            for take, row in zip(bits, rows):
                if take:
                    acc = compose_pauli(acc, row)
            members.add((acc.x, acc.z, acc.phase))
        assert members == dense_group


def test_amplitude_dump_sparse():
    s = svsim.init(2, "0+")
    dump = s.amplitude_dump()
    assert dump == [(0, pytest.approx(1 / np.sqrt(2)), 0.0),
                    (1, pytest.approx(1 / np.sqrt(2)), 0.0)]
