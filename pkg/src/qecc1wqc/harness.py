"""Error injection, Monte Carlo sweeps, and the multi-hop compute driver.

Trial RNG streams derive from (seed, trial index) so runs are reproducible
and aggregation order-independent; a report serialized twice from the same
seed and configuration is byte-identical.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import code5, protocols, svsim
from .circuit import CZ, H
from .pauli import PauliString, compose_pauli
from .svsim import StateVector

SCHEMA = "1"
SUCCESS_FIDELITY = 1 - 1e-6


@dataclass(frozen=True)
class ExhaustiveSinglePauli:
    kind: str = "exhaustive-single-pauli"


@dataclass(frozen=True)
class Depolarizing:
    p: float
    kind: str = "iid-depolarizing"

    def __post_init__(self):
        if not 0 <= self.p <= 1:
            raise ValueError("p must lie in [0, 1]")


@dataclass(frozen=True)
class Targeted:
    pauli: PauliString
    stage: str = "protected"
    kind: str = "targeted"


@dataclass
class TrialResult:
    injected: str
    syndrome: str
    m: int
    fidelity: float

    def to_json_obj(self) -> dict:
        return {"injected": self.injected, "syndrome": self.syndrome,
                "m": self.m, "fidelity": round(self.fidelity, 12)}


@dataclass
class RunReport:
    kind: str
    seed: int
    trials: int
    success_count: int
    mean_fidelity: float
    op_counts: dict
    details: dict = field(default_factory=dict)
    per_trial: list[TrialResult] = field(default_factory=list)

    def to_json_obj(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": self.kind,
            "seed": self.seed,
            "trials": self.trials,
            "success_count": self.success_count,
            "mean_fidelity": round(self.mean_fidelity, 12),
            "op_counts": self.op_counts,
            "details": self.details,
            "per_trial": [t.to_json_obj() for t in self.per_trial],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))


def _random_qubit(rng) -> tuple[complex, complex]:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    v = v / np.linalg.norm(v)
    return complex(v[0]), complex(v[1])


def _op_counts() -> dict:
    return {"two_qubit_gates": protocols.build_teleport_circuit().two_qubit_gate_count()}


WEIGHT1_LABELS = tuple(lbl for lbl in code5.SYNDROME_TABLE if lbl != "I")


def run_exhaustive_correction_sweep(seed: int = 0, xi: float = 0.7,
                                    keep_trials: bool = True) -> RunReport:
    """No-error case plus all fifteen single-qubit Paulis in the protected
    window; asserts every syndrome matches the lookup table."""
    rng = np.random.default_rng(seed)
    psi = _random_qubit(rng)
    trials = []
    successes = 0
    for label in ("I",) + WEIGHT1_LABELS:
        err = None if label == "I" else code5.error_operator(label)
        label_key = int.from_bytes(label.encode(), "big")
        rep = protocols.encoded_teleport(
            psi, xi, injected_error=err, rng=np.random.default_rng((seed, label_key)))
        expected_syn = code5.SYNDROME_TABLE[label][0]
        if rep.syndrome != expected_syn:
            raise AssertionError(
                f"{label}: syndrome {rep.syndrome}, table says {expected_syn}")
        ok = rep.fidelity >= SUCCESS_FIDELITY
        successes += ok
        trials.append(TrialResult("None" if label == "I" else label,
                                  rep.syndrome, rep.m, rep.fidelity))
    mean = float(np.mean([t.fidelity for t in trials]))
    return RunReport("exhaustive-single-pauli", seed, len(trials), successes,
                     mean, _op_counts(),
                     details={"xi": xi, "all_corrected": successes == len(trials)},
                     per_trial=trials if keep_trials else [])


# -- depolarizing Monte Carlo ----------------------------------------------------


def hash_pattern(pattern: tuple[str, ...]) -> int:
    """Stable small integer from a letter pattern (process-independent)."""
    return int.from_bytes("".join(pattern).encode(), "big")


def _pattern_pauli(pattern: tuple[str, ...]) -> PauliString | None:
    """Five per-qubit letters in {I, X, Y, Z} -> error Pauli, or None."""
    p = PauliString.identity(5)
    any_err = False
    for q, letter in enumerate(pattern):
        if letter == "I":
            continue
        any_err = True
        p = compose_pauli(p, PauliString.single(5, q, letter))
    return p if any_err else None


class _TeleportCache:
    """Memoized teleport outcomes for a fixed (psi, xi, stage).

    The syndrome and output fidelity depend only on the injected Pauli, so
    each of the 4^5 letter patterns is simulated at most once.
    """

    def __init__(self, psi, xi, stage: str = "protected"):
        self.psi = psi
        self.xi = xi
        self.stage = stage
        self._memo: dict[tuple[str, ...], tuple[str, float]] = {}

    def result(self, pattern: tuple[str, ...]) -> tuple[str, float]:
        if pattern not in self._memo:
            err = _pattern_pauli(pattern)
            rep = protocols.encoded_teleport(
                self.psi, self.xi, injected_error=err, error_stage=self.stage,
                rng=np.random.default_rng(hash_pattern(pattern)))
            self._memo[pattern] = (rep.syndrome, rep.fidelity)
        return self._memo[pattern]


def exhaustive_failure_oracle(psi=None, xi: float = 0.7, seed: int = 12345,
                              stage: str = "protected") -> dict:
    """Classify all 4^5 Pauli patterns by weight: failure fractions.

    In the protected window weight 0 and 1 always succeed and the weight-2
    fraction demonstrates the distance-3 limit.  Used as the analytic
    reference for the Monte Carlo.
    """
    rng = np.random.default_rng(seed)
    if psi is None:
        psi = _random_qubit(rng)
    cache = _TeleportCache(psi, xi, stage)
    by_weight: dict[int, list[float]] = {w: [] for w in range(6)}
    for pattern in itertools.product("IXYZ", repeat=5):
        w = sum(1 for ch in pattern if ch != "I")
        _, fid = cache.result(pattern)
        by_weight[w].append(fid)
    out = {"xi": xi, "weights": {}}
    for w, fids in by_weight.items():
        fails = sum(1 for f in fids if f < SUCCESS_FIDELITY)
        out["weights"][str(w)] = {
            "patterns": len(fids),
            "failures": fails,
            "failure_fraction": fails / len(fids),
        }
    out["cache"] = cache
    return out


def predicted_failure_rate(p: float, oracle: dict) -> float:
    """Exact failure probability under iid single-qubit depolarizing noise."""
    total = 0.0
    for w_str, info in oracle["weights"].items():
        w = int(w_str)
        # probability of any specific weight-w pattern times pattern count
        # collapses to C(5,w) p^w (1-p)^(5-w) * failure fraction at weight w,
        # since each non-identity letter is uniform over {X, Y, Z}
        comb = math.comb(5, w)
        total += comb * p**w * (1 - p)**(5 - w) * info["failure_fraction"]
    return total


def run_depolarizing(p: float, trials: int, seed: int = 0,
                     xi: float = 0.7, oracle: dict | None = None,
                     unprotected: bool = False) -> RunReport:
    """Each protected qubit independently suffers a uniform X/Y/Z error with
    probability p; reports the empirical logical failure rate.

    With ``unprotected`` the errors strike between the encoding of the
    source register and the entangling fan instead, where the scheme gives
    no guarantee; the oracle prediction then describes that window.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if oracle is None:
        stage = "after_encode_a" if unprotected else "protected"
        oracle = exhaustive_failure_oracle(xi=xi, seed=seed ^ 0x5EED, stage=stage)
    cache: _TeleportCache = oracle["cache"]
    successes = 0
    fid_sum = 0.0
    weight_le1_failures = 0
    weight_counts = [0] * 6
    for k in range(trials):
        rng = np.random.default_rng((seed, k))
        letters = []
        for _ in range(5):
            if rng.random() < p:
                letters.append("XYZ"[rng.integers(0, 3)])
            else:
                letters.append("I")
        pattern = tuple(letters)
        w = sum(1 for ch in pattern if ch != "I")
        weight_counts[w] += 1
        _, fid = cache.result(pattern)
        ok = fid >= SUCCESS_FIDELITY
        successes += ok
        fid_sum += fid
        if w <= 1 and not ok:
            weight_le1_failures += 1
    failure_rate = 1 - successes / trials
    predicted = predicted_failure_rate(p, oracle)
    sigma = math.sqrt(max(predicted * (1 - predicted), 1e-12) / trials)
    details = {
        "p": p,
        "xi": xi,
        "failure_rate": failure_rate,
        "predicted_failure_rate": predicted,
        "binomial_sigma": sigma,
        "within_5_sigma": abs(failure_rate - predicted) <= 5 * sigma,
        "weight_le1_failures": weight_le1_failures,
        "weight_histogram": weight_counts,
        "weight2_failure_fraction": oracle["weights"]["2"]["failure_fraction"],
    }
    return RunReport("iid-depolarizing", seed, trials, successes,
                     fid_sum / trials, _op_counts(), details=details)


def run_targeted(model: Targeted, psi=None, xi: float = 0.7,
                 seed: int = 0) -> RunReport:
    """Single run with one fixed injected Pauli in a chosen stage."""
    rng = np.random.default_rng(seed)
    if psi is None:
        psi = _random_qubit(rng)
    rep = protocols.encoded_teleport(psi, xi, injected_error=model.pauli,
                                     error_stage=model.stage, rng=rng)
    trial = TrialResult(model.pauli.to_label(), rep.syndrome, rep.m, rep.fidelity)
    return RunReport("targeted", seed, 1,
                     int(rep.fidelity >= SUCCESS_FIDELITY), rep.fidelity,
                     _op_counts(), details={"stage": model.stage, "xi": xi},
                     per_trial=[trial])


# -- multi-hop two-column computation ------------------------------------------


def _oracle_gate_product(psi, xis) -> np.ndarray:
    """prod_k H Rz(xi_k) applied to a single qubit, hop order first."""
    v = np.array(psi, dtype=complex)
    for xi in xis:
        v = np.array([v[0] * np.exp(-1j * xi / 2), v[1] * np.exp(1j * xi / 2)])
        v = np.array([v[0] + v[1], v[0] - v[1]]) / math.sqrt(2)
    return v


def run_two_column_computation(xis, seed: int = 0,
                               psi=None,
                               forced_ms: list[int] | None = None) -> RunReport:
    """Alternate teleport hops, adapting each angle to the running frame.

    Hop k measures at the frame-adapted angle (-1)^x xi_k; afterwards the
    frame updates as (x, z) <- (m xor z, x).  The final state equals the
    frame-corrected product of the programmed gates.
    """
    rng = np.random.default_rng(seed)
    if psi is None:
        psi = _random_qubit(rng)
    xis = list(xis)
    state = code5.encode(psi)
    fx = fz = 0
    trials = []
    for k, xi in enumerate(xis):
        hop_rng = np.random.default_rng((seed, k))
        xi_eff = xi if fx == 0 else -xi
        full = StateVector(10, np.kron(state.amps, svsim.init(5, "00000").amps))
        svsim.apply(full, H(5))
        for nq in range(5):
            svsim.apply(full, CZ(nq, 5))
        svsim.run_circuit(full, code5.build_encoder(5, 10))
        svsim.run_circuit(full, code5.build_decoder(0, 10))
        bits = []
        for q in range(1, 5):
            rec, _ = svsim.measure(full, q, "Z", rng=hop_rng)
            bits.append(rec.outcome)
        syndrome = code5.Syndrome(tuple(bits))
        if str(syndrome) != "0000":
            raise AssertionError("noiseless hop produced a nonzero syndrome")
        forced = None if forced_ms is None else forced_ms[k]
        rec, _ = svsim.measure(full, 0, "XY", rng=hop_rng, forced=forced, xi=-xi_eff)
        m = rec.outcome
        state = svsim.extract_pure(full, [5, 6, 7, 8, 9])
        fx, fz = m ^ fz, fx
        trials.append(TrialResult("None", str(syndrome), m, 1.0))

    # apply the leftover logical frame, then compare with the gate product
    corrected = state.copy()
    if fx:
        svsim.apply_pauli(corrected, code5.logical_x())
    if fz:
        svsim.apply_pauli(corrected, code5.logical_z())
    target_amp = _oracle_gate_product(psi, xis)
    target = code5.encode_amplitudes(target_amp[0], target_amp[1])
    fid = svsim.fidelity(corrected, target)
    for t in trials:
        t.fidelity = fid
    details = {
        "hops": len(xis),
        "xis": [float(x) for x in xis],
        "final_frame": {"x": fx, "z": fz},
        "final_fidelity": fid,
        "ms": [t.m for t in trials],
    }
    return RunReport("two-column-computation", seed, len(xis),
                     sum(1 for t in trials if t.fidelity >= SUCCESS_FIDELITY),
                     fid, _op_counts(), details=details, per_trial=trials)
