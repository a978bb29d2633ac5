"""Stabilizer tableau simulator (destabilizer/stabilizer generator rows).

Rows are kept as integer bitmasks, one (x, z, phase) triple per generator,
in the same phased X/Z normal form as :mod:`.pauli`:

    row = i^phase * prod_q X_q^{x_q} Z_q^{z_q}

Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizers.  Measurement in Z
follows the usual tableau update: a random outcome replaces the pivot
stabilizer with +/-Z_q, a deterministic outcome is read off by multiplying
the stabilizer partners of the anticommuting destabilizers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Gate
from .pauli import (NonCliffordGateError, PauliString, _clifford_angle_index,
                    _popcount)


class ForcedOutcomeError(ValueError):
    """Raised when a forced outcome contradicts a deterministic measurement."""


@dataclass
class Tableau:
    n: int
    xs: list[int]
    zs: list[int]
    ph: list[int]

    # -- construction --------------------------------------------------------

    @classmethod
    def initialized(cls, n: int, assignment=None) -> "Tableau":
        """Product state; per-qubit symbols in {'0', '+'} (default all '0')."""
        if assignment is None:
            assignment = ["0"] * n
        if len(assignment) != n:
            raise ValueError("assignment length must equal qubit count")
        xs = [0] * (2 * n)
        zs = [0] * (2 * n)
        ph = [0] * (2 * n)
        for q, sym in enumerate(assignment):
            if str(sym) == "0":
                xs[q] = 1 << q          # destabilizer X_q
                zs[n + q] = 1 << q      # stabilizer   Z_q
            elif str(sym) == "+":
                zs[q] = 1 << q          # destabilizer Z_q
                xs[n + q] = 1 << q      # stabilizer   X_q
            else:
                raise ValueError(f"unsupported init symbol {sym!r}")
        return cls(n, xs, zs, ph)

    def copy(self) -> "Tableau":
        return Tableau(self.n, list(self.xs), list(self.zs), list(self.ph))

    # -- row helpers ----------------------------------------------------------

    def _rowmult(self, h: int, i: int) -> None:
        """row[h] <- row[h] * row[i] with phase tracking."""
        self.ph[h] = (self.ph[h] + self.ph[i] + 2 * _popcount(self.zs[h] & self.xs[i])) % 4
        self.xs[h] ^= self.xs[i]
        self.zs[h] ^= self.zs[i]

    def row_pauli(self, i: int) -> PauliString:
        return PauliString(self.n, self.xs[i], self.zs[i], self.ph[i])

    def stabilizer_rows(self) -> list[PauliString]:
        return [self.row_pauli(i) for i in range(self.n, 2 * self.n)]

    def generator_labels(self) -> list[str]:
        return [p.to_label() for p in self.stabilizer_rows()]

    # -- gates ----------------------------------------------------------------

    def apply(self, g: Gate) -> "Tableau":
        if not g.is_clifford():
            raise NonCliffordGateError(f"non-Clifford gate {g}")
        kind = g.kind
        if kind == "RZ":
            kind = ("NOP", "S", "Z", "SDG")[_clifford_angle_index(g.xi)]
        if kind == "NOP":
            return self
        if kind == "CZ":
            a, b = g.targets
            for i in range(2 * self.n):
                xa, xb = (self.xs[i] >> a) & 1, (self.xs[i] >> b) & 1
                self.zs[i] ^= (xb << a) | (xa << b)
                self.ph[i] = (self.ph[i] + 2 * (xa & xb)) % 4
            return self
        (t,) = g.targets
        bit = 1 << t
        if kind == "H":
            for i in range(2 * self.n):
                xt, zt = self.xs[i] & bit, self.zs[i] & bit
                if bool(xt) != bool(zt):
                    self.xs[i] ^= bit
                    self.zs[i] ^= bit
                elif xt and zt:
                    self.ph[i] = (self.ph[i] + 2) % 4
        elif kind in ("S", "SDG"):
            d = 1 if kind == "S" else 3
            for i in range(2 * self.n):
                if self.xs[i] & bit:
                    self.zs[i] ^= bit
                    self.ph[i] = (self.ph[i] + d) % 4
        elif kind == "X":
            for i in range(2 * self.n):
                if self.zs[i] & bit:
                    self.ph[i] = (self.ph[i] + 2) % 4
        elif kind == "Z":
            for i in range(2 * self.n):
                if self.xs[i] & bit:
                    self.ph[i] = (self.ph[i] + 2) % 4
        elif kind == "Y":
            for i in range(2 * self.n):
                if bool(self.xs[i] & bit) != bool(self.zs[i] & bit):
                    self.ph[i] = (self.ph[i] + 2) % 4
        else:
            raise NonCliffordGateError(f"unsupported gate kind {kind!r}")
        return self

    def apply_pauli(self, p: PauliString) -> "Tableau":
        for q in range(self.n):
            if p.x_bit(q):
                self.apply(Gate("X", (q,)))
            if p.z_bit(q):
                self.apply(Gate("Z", (q,)))
        return self

    # -- measurement ------------------------------------------------------------

    def measure_z(self, q: int, rng=None, forced: int | None = None):
        """Measure Z on qubit q.  Returns (outcome, deterministic)."""
        n = self.n
        bit = 1 << q
        pivot = None
        for i in range(n, 2 * n):
            if self.xs[i] & bit:
                pivot = i
                break

        if pivot is not None:
            for i in range(2 * n):
                if i != pivot and (self.xs[i] & bit):
                    self._rowmult(i, pivot)
            # old stabilizer becomes the destabilizer partner
            d = pivot - n
            self.xs[d], self.zs[d], self.ph[d] = self.xs[pivot], self.zs[pivot], self.ph[pivot]
            if forced is not None:
                outcome = int(forced)
            else:
                if rng is None:
                    rng = np.random.default_rng()
                outcome = int(rng.integers(0, 2))
            self.xs[pivot] = 0
            self.zs[pivot] = bit
            self.ph[pivot] = 2 * outcome
            return outcome, False

        # deterministic: multiply stabilizer partners of anticommuting destabs
        sx, sz, sp = 0, 0, 0
        for i in range(n):
            if self.xs[i] & bit:
                sp = (sp + self.ph[n + i] + 2 * _popcount(sz & self.xs[n + i])) % 4
                sx ^= self.xs[n + i]
                sz ^= self.zs[n + i]
        if sx != 0 or sz != bit or sp % 2 != 0:
            raise AssertionError("deterministic measurement did not reduce to +/-Z")
        outcome = 0 if sp == 0 else 1
        if forced is not None and int(forced) != outcome:
            raise ForcedOutcomeError(
                f"forced outcome {forced} contradicts deterministic value {outcome}")
        return outcome, True

    def measure_x(self, q: int, rng=None, forced: int | None = None):
        self.apply(Gate("H", (q,)))
        out = self.measure_z(q, rng=rng, forced=forced)
        self.apply(Gate("H", (q,)))
        return out

    def measure_y(self, q: int, rng=None, forced: int | None = None):
        """Outcome 0 is the +i eigenstate."""
        self.apply(Gate("SDG", (q,)))
        out = self.measure_x(q, rng=rng, forced=forced)
        self.apply(Gate("S", (q,)))
        return out

    def measure(self, q: int, basis: str, rng=None, forced: int | None = None):
        if basis == "Z":
            return self.measure_z(q, rng, forced)
        if basis == "X":
            return self.measure_x(q, rng, forced)
        if basis == "Y":
            return self.measure_y(q, rng, forced)
        raise ValueError(f"tableau measurement supports Z/X/Y, not {basis!r}")

    def reset_to_zero(self, q: int, rng=None) -> None:
        """Collapse qubit q and leave it in |0>.  Caller must ensure it is
        disentangled (e.g. just measured); the collapse itself is projective."""
        outcome, _ = self.measure_z(q, rng=rng)
        if outcome == 1:
            self.apply(Gate("X", (q,)))

    # -- canonical form and equality ----------------------------------------------

    def canonical_stabilizers(self) -> list[PauliString]:
        """Row-reduced echelon generators (x-block first, then z), signed."""
        xs = [self.xs[i] for i in range(self.n, 2 * self.n)]
        zs = [self.zs[i] for i in range(self.n, 2 * self.n)]
        ph = [self.ph[i] for i in range(self.n, 2 * self.n)]

        def mult(h, i):
            ph[h] = (ph[h] + ph[i] + 2 * _popcount(zs[h] & xs[i])) % 4
            xs[h] ^= xs[i]
            zs[h] ^= zs[i]

        rank = 0
        for col_kind, col in [(0, q) for q in range(self.n)] + [(1, q) for q in range(self.n)]:
            vecs = xs if col_kind == 0 else zs
            bit = 1 << col
            pivot = None
            for i in range(rank, self.n):
                if vecs[i] & bit:
                    pivot = i
                    break
            if pivot is None:
                continue
            xs[rank], xs[pivot] = xs[pivot], xs[rank]
            zs[rank], zs[pivot] = zs[pivot], zs[rank]
            ph[rank], ph[pivot] = ph[pivot], ph[rank]
            for i in range(self.n):
                if i != rank and (vecs[i] & bit):
                    mult(i, rank)
            rank += 1
        return [PauliString(self.n, xs[i], zs[i], ph[i]) for i in range(self.n)]

    def canonical_form(self) -> "Tableau":
        """Copy with the stabilizer half in row-reduced echelon form."""
        out = Tableau.initialized(self.n)
        for i, row in enumerate(self.canonical_stabilizers()):
            out.xs[self.n + i] = row.x
            out.zs[self.n + i] = row.z
            out.ph[self.n + i] = row.phase
        return out

    def stab_equal(self, other: "Tableau") -> bool:
        """Equality of signed stabilizer groups."""
        if self.n != other.n:
            raise ValueError("qubit count mismatch")
        a = [(p.x, p.z, p.phase) for p in self.canonical_stabilizers()]
        b = [(p.x, p.z, p.phase) for p in other.canonical_stabilizers()]
        return a == b

    def first_difference(self, other: "Tableau") -> str | None:
        """Label of the first differing canonical generator, for diagnostics."""
        a = self.canonical_stabilizers()
        b = other.canonical_stabilizers()
        for pa, pb in zip(a, b):
            if (pa.x, pa.z, pa.phase) != (pb.x, pb.z, pb.phase):
                return f"{pa.to_label()} != {pb.to_label()}"
        return None

    def stabilizes(self, p: PauliString) -> bool:
        """Is the signed Pauli ``p`` in the stabilizer group?"""
        from .pauli import compose_pauli

        cur = p
        for row in self.canonical_stabilizers():
            lead = None
            for col in range(2 * self.n):
                kind, q = divmod(col, self.n)
                vec = row.x if kind == 0 else row.z
                if (vec >> q) & 1:
                    lead = (kind, q)
                    break
            if lead is None:
                continue
            kind, q = lead
            vec = cur.x if kind == 0 else cur.z
            if (vec >> q) & 1:
                cur = compose_pauli(cur, row)
        return cur.x == 0 and cur.z == 0 and cur.phase == 0

    def is_disentangled(self, q: int) -> bool:
        """True when qubit q is in a product state with the rest."""
        touching = [p for p in self.canonical_stabilizers()
                    if p.x_bit(q) or p.z_bit(q)]
        return len(touching) == 1 and touching[0].weight == 1


def run_gates(t: Tableau, gates) -> Tableau:
    for g in gates:
        t.apply(g)
    return t
