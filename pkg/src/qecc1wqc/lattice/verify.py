"""Schedule verification against circuit-built reference tableaux."""

from __future__ import annotations

from dataclasses import dataclass

from .. import code5
from ..circuit import CZ, Circuit, GateApp, H
from ..tableau import Tableau
from .engine import Lattice, LatticeError
from .layouts import build_schedule, run_schedule


def _apply_circuit(t: Tableau, c: Circuit) -> Tableau:
    for ins in c.instructions:
        if isinstance(ins, GateApp):
            t.apply(ins.gate)
    return t


def target_tableau(name: str) -> tuple[Tableau, list[str]]:
    """Reference tableau and the data-label order it is expressed in."""
    if name == "E1_lattice":
        t = Tableau.initialized(5, "+++++")
        c = Circuit(5)
        for q in range(1, 5):
            c.append(CZ(0, q))
        return _apply_circuit(t, c), ["1", "2", "3", "4", "5"]
    if name == "E2_lattice":
        t = Tableau.initialized(5, "+++++")
        return _apply_circuit(t, code5.build_E2()), ["1", "2", "3", "4", "5"]
    if name == "GHZ6_lattice":
        t = Tableau.initialized(6, "++++++")
        c = Circuit(6)
        for q in range(5):
            c.append(CZ(q, 5))
        return _apply_circuit(t, c), ["1", "2", "3", "4", "5", "6"]
    if name == "LP_full":
        t = Tableau.initialized(6, ["+", "0", "0", "0", "0", "+"])
        c = Circuit(6)
        c.extend(code5.build_encoder(0, 6).instructions)
        for q in range(5):
            c.append(CZ(q, 5))
        return _apply_circuit(t, c), ["1", "2", "3", "4", "5", "6"]
    if name == "horseshoe_lattice":
        init = (["+"] + ["0"] * 4) * 4
        t = Tableau.initialized(20, init)
        c = Circuit(20)
        c.extend(code5.build_encoder(0, 20).instructions)
        c.extend(code5.build_encoder(15, 20).instructions)
        c.append(CZ(5, 10))
        for q in range(5):
            c.append(CZ(q, 5))
        for q in range(15, 20):
            c.append(CZ(q, 10))
        c.extend(code5.build_encoder(5, 20).instructions)
        c.extend(code5.build_encoder(10, 20).instructions)
        return _apply_circuit(t, c), [str(i) for i in range(1, 21)]
    raise LatticeError(f"no target defined for schedule {name!r}")


@dataclass
class VerifyResult:
    name: str
    ok: bool
    global_cz_steps: int
    measured_ancillae: int
    diagnostic: str | None = None

    def to_json_obj(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "global_cz_steps": self.global_cz_steps,
            "measured_ancillae": self.measured_ancillae,
            "diagnostic": self.diagnostic,
        }


def verify_lattice_against(lat: Lattice, target: Tableau,
                           label_order: list[str], name: str) -> VerifyResult:
    try:
        sub = lat.data_subtableau(label_order)
    except LatticeError as exc:
        return VerifyResult(name, False, lat.counts.global_cz_steps,
                            lat.counts.measured_ancillae, str(exc))
    if sub.stab_equal(target):
        return VerifyResult(name, True, lat.counts.global_cz_steps,
                            lat.counts.measured_ancillae)
    return VerifyResult(name, False, lat.counts.global_cz_steps,
                        lat.counts.measured_ancillae,
                        sub.first_difference(target))


def run_named_schedule(name: str, seed=None) -> tuple[Lattice, dict]:
    """Execute a named schedule; returns the lattice and its count report."""
    sched = build_schedule(name)
    lat = run_schedule(sched, seed=seed)
    return lat, lat.counts.to_json_obj()


def verify_schedule(name: str, seed=None) -> VerifyResult:
    """Run a named schedule and compare, frame-corrected, with its target."""
    lat, _ = run_named_schedule(name, seed=seed)
    target, order = target_tableau(name)
    return verify_lattice_against(lat, target, order, name)
