import itertools
import json

import numpy as np
import pytest

from qecc1wqc import harness


@pytest.fixture(scope="module")
def oracle():
    return harness.exhaustive_failure_oracle(seed=77)


def test_exhaustive_sweep_all_corrected():
    rep = harness.run_exhaustive_correction_sweep(seed=5)
    assert rep.trials == 16
    assert rep.success_count == 16
    assert rep.details["all_corrected"]
    syndromes = {t.injected: t.syndrome for t in rep.per_trial}
    assert syndromes["None"] == "0000"
    assert syndromes["X1"] == "1001"
    assert syndromes["Z1"] == "1111"


def test_oracle_weights(oracle):
    weights = oracle["weights"]
    assert weights["0"]["failures"] == 0
    assert weights["1"]["failures"] == 0
    assert weights["2"]["failures"] > 0  # distance-3 limit
    assert weights["2"]["patterns"] == 90


def test_depolarizing_p_zero(oracle):
    rep = harness.run_depolarizing(0.0, 500, seed=1, oracle=oracle)
    assert rep.details["failure_rate"] == 0
    assert rep.success_count == 500


def test_depolarizing_matches_prediction(oracle):
    for p in (1e-3, 1e-2):
        rep = harness.run_depolarizing(p, 10_000, seed=2, oracle=oracle)
        assert rep.details["within_5_sigma"]
        assert rep.details["weight_le1_failures"] == 0


def test_depolarizing_p_one_matches_weight5(oracle):
    rep = harness.run_depolarizing(1.0, 400, seed=3, oracle=oracle)
    f5 = oracle["weights"]["5"]["failure_fraction"]
    sigma = np.sqrt(f5 * (1 - f5) / 400)
    assert abs(rep.details["failure_rate"] - f5) <= 5 * sigma


def test_report_determinism(oracle):
    a = harness.run_depolarizing(1e-3, 1500, seed=9, oracle=oracle).to_json()
    b = harness.run_depolarizing(1e-3, 1500, seed=9, oracle=oracle).to_json()
    assert a == b
    payload = json.loads(a)
    assert payload["schema"] == "1"


def test_two_column_single_hop_is_hadamard():
    rep = harness.run_two_column_computation([0.0], seed=4, psi=(1, 0),
                                             forced_ms=[0])
    assert rep.details["final_fidelity"] > 1 - 1e-9


def test_two_column_three_hops_forced_zero(rng):
    xis = [0.3, 1.1, 2.0]
    rep = harness.run_two_column_computation(xis, seed=6, forced_ms=[0, 0, 0])
    assert rep.details["final_fidelity"] > 1 - 1e-9
    assert rep.details["ms"] == [0, 0, 0]


def test_two_column_all_outcome_patterns():
    """Every outcome pattern over three hops matches the frame-corrected
    oracle product."""
    xis = [0.4, 0.9, 1.7]
    for pattern in itertools.product([0, 1], repeat=3):
        rep = harness.run_two_column_computation(
            xis, seed=8, psi=(0.6, 0.8), forced_ms=list(pattern))
        assert rep.details["final_fidelity"] > 1 - 1e-9, pattern


def test_two_column_random_outcomes_many_seeds():
    for seed in range(20):
        rep = harness.run_two_column_computation([0.5, 1.3], seed=seed)
        assert rep.details["final_fidelity"] > 1 - 1e-9


def test_depolarizing_validates_arguments():
    with pytest.raises(ValueError):
        harness.Depolarizing(1.5)
    with pytest.raises(ValueError):
        harness.run_depolarizing(0.1, 0)


def test_targeted_model_runner():
    from qecc1wqc.pauli import PauliString
    model = harness.Targeted(PauliString.single(5, 2, "Y"))
    rep = harness.run_targeted(model, psi=(0.6, 0.8), seed=2)
    assert rep.success_count == 1
    assert rep.per_trial[0].syndrome == code5_syndrome("X3Z3")

    leaky = harness.Targeted(PauliString.single(5, 2, "X"),
                             stage="after_encode_a")
    rep = harness.run_targeted(leaky, psi=(0.6, 0.8), seed=2)
    assert rep.success_count == 0


def code5_syndrome(label):
    from qecc1wqc import code5
    return code5.SYNDROME_TABLE[label][0]


def test_unprotected_window_is_weakly_tolerant():
    """In the unprotected window even single-qubit errors can break the
    output, so the failure rate at weight <= 1 is nonzero."""
    oracle = harness.exhaustive_failure_oracle(seed=21, stage="after_encode_a")
    assert oracle["weights"]["1"]["failures"] > 0
    rep = harness.run_depolarizing(0.05, 3000, seed=22, oracle=oracle,
                                   unprotected=True)
    assert rep.details["within_5_sigma"]
