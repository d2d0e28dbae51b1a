"""State classification: XP states as weighted hypergraph states and back.

A weighted hypergraph state is |+>^r acted on by generalised controlled
phase operators CP(p/q, v).  Every XP stabiliser state has such a
representation, obtained by reading off its phase function; conversely any
weighted hypergraph state embeds into a (possibly larger) Hilbert space as
an XP stabiliser state.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Optional, Sequence

from . import xpop
from .codespace import Bits, OrbitForm
from .ringlinalg import RingMatrix
from .xpop import XpOperator


@dataclass(frozen=True)
class ControlledPhase:
    """CP(p/q, v): apply exp(i 2 pi p/q) to |e> exactly when e v = v."""

    phase: Fraction
    v: Bits

    def __post_init__(self) -> None:
        object.__setattr__(self, "phase", Fraction(self.phase))
        object.__setattr__(self, "v", tuple(int(b) % 2 for b in self.v))

    @property
    def weight(self) -> int:
        return sum(self.v)

    def applies_to(self, e: Sequence[int]) -> bool:
        return all(not vi or ei for vi, ei in zip(self.v, e))

    def __str__(self) -> str:
        return f"CP({self.phase.numerator}/{self.phase.denominator}, {''.join(map(str, self.v))})"


def cp_apply(cp: ControlledPhase, e: Sequence[int]) -> Fraction:
    """The phase (as a fraction of a full turn) applied by cp to |e>."""
    return cp.phase if cp.applies_to(e) else Fraction(0)


@dataclass(frozen=True)
class Embedding:
    """The injection |e> -> |e . M^r_m> onto one qubit per weight-1..m subset."""

    r: int
    m: int
    M: RingMatrix
    K: RingMatrix

    def apply_bits(self, e: Sequence[int]) -> Bits:
        return tuple(
            sum(ei * self.M.rows[i][j] for i, ei in enumerate(e)) % 2
            for j in range(self.M.cols)
        )


def _subsets(r: int, m: int) -> list[tuple[int, ...]]:
    """Supports of the columns of M^r_m: weight 1..m, ordered by weight then support."""
    out = []
    for w in range(1, m + 1):
        out.extend(combinations(range(r), w))
    return out


def embedding_matrix(r: int, m: int) -> RingMatrix:
    """M^r_m over Z_2: entry (i, s) is 1 iff vertex i lies in subset s."""
    cols = _subsets(r, m)
    rows = tuple(tuple(1 if i in s else 0 for s in cols) for i in range(r))
    return RingMatrix(2, rows, len(cols))


def embedding(r: int, m: int) -> Embedding:
    M = embedding_matrix(r, m)
    cols = _subsets(r, m)
    # M = (I | A) by column order, so the kernel is spanned by (A^T | I).
    k_rows = []
    for j, s in enumerate(cols):
        if len(s) == 1:
            continue
        row = [0] * M.cols
        for i in s:
            row[i] = 1
        row[j] = 1
        k_rows.append(tuple(row))
    K = RingMatrix(2, tuple(k_rows), M.cols)
    return Embedding(r, m, M, K)


def extract_phase_function(
    s_x: Sequence[XpOperator], m: Sequence[int], N: int, n: int
) -> tuple[ControlledPhase, ...]:
    """Controlled phase operators reproducing the phases of O_{S_X}|m>.

    The scan runs over exponent vectors u by weight then lexicographic order;
    for N = 2^t only weights up to t+1 can carry non-zero coefficients.
    """
    r = len(s_x)
    leads = []
    for op in s_x:
        leads.append(next(j for j, b in enumerate(op.x) if b))
    phases: dict[Bits, int] = {}
    for uidx in range(1 << r):
        u = tuple((uidx >> (r - 1 - j)) & 1 for j in range(r))
        phase, bits = 0, tuple(m)
        for op, ui in zip(reversed(s_x), reversed(u)):
            if ui:
                ph, bits = xpop.apply_basis(op, bits)
                phase = (phase + ph) % (2 * N)
        phases[u] = phase
    max_w = r
    t = N.bit_length() - 1
    if N == 1 << t:
        max_w = min(r, t + 1)
    cps = []
    order = sorted(phases, key=lambda u: (sum(u), u))
    for u in order:
        if sum(u) > max_w:
            break
        p = phases[u]
        if p:
            v = [0] * n
            for i, ui in enumerate(u):
                if ui:
                    v[leads[i]] = 1
            cps.append(ControlledPhase(Fraction(p, 2 * N), tuple(v)))
            for w in phases:
                if all(not ui or wi for ui, wi in zip(u, w)):
                    phases[w] = (phases[w] - p) % (2 * N)
    return tuple(cps)


def extract_from_state(state: OrbitForm, s_x: Sequence[XpOperator], m: Sequence[int], n: int):
    return extract_phase_function(s_x, m, state.N, n)


def _precision_for(cps: Sequence[ControlledPhase]) -> int:
    parts = []
    for cp in cps:
        q = cp.phase.denominator
        if cp.weight >= 2:
            parts.append(q << (cp.weight - 2))
        else:
            parts.append(q // 2 if (q > 2 and q % 2 == 0) else q)
    return lcm(2, *parts) if parts else 2


@dataclass(frozen=True)
class WhgCode:
    """Output of the weighted-hypergraph to XP conversion."""

    N: int
    embedding: Embedding
    S_X: tuple[XpOperator, ...]
    S_Z: tuple[XpOperator, ...]
    kept_columns: tuple[int, ...]


def _inclusion_vector(cols: Sequence[tuple[int, ...]], v: Bits) -> tuple[int, ...]:
    sup = {i for i, b in enumerate(v) if b}
    return tuple(1 if set(s) <= sup else 0 for s in cols)


def _alternating_vector(cols: Sequence[tuple[int, ...]]) -> tuple[int, ...]:
    return tuple((-1) ** len(s) for s in cols)


def whg_to_xp(cps: Sequence[ControlledPhase], r: int, optimise: bool = False) -> WhgCode:
    """An XP code whose sole codeword is the embedded weighted hypergraph state.

    Weight-0 edges only contribute a global phase and are dropped.  With
    optimise=True, CP(1/2, v) edges use the compacted Z-component update and
    redundant qubits are deleted; an edge keeps the plain update when another
    edge's support contains its own, where the compacted form is not valid.
    """
    cps = [cp for cp in cps if cp.weight >= 1]
    m = max((cp.weight for cp in cps), default=1)
    N = _precision_for(cps)
    emb = embedding(r, m)
    cols = _subsets(r, m)
    nq = len(cols)
    a = _alternating_vector(cols)
    z_rows = [[0] * nq for _ in range(r)]
    p_rows = [0] * r
    for cp in cps:
        w = _inclusion_vector(cols, cp.v)
        if cp.weight == 1:
            # Multiplication by the antisymmetric operator D_N(c x_j w): the
            # phase picks up the coordinate sum, the Z component its negative.
            c = cp.phase * 2 * N
            assert c.denominator == 1
            c = int(c)
            for j in range(r):
                x_j = emb.M.rows[j]
                p_rows[j] = (p_rows[j] + c * sum(x_j[u] * w[u] for u in range(nq))) % (2 * N)
                for u in range(nq):
                    z_rows[j][u] = (z_rows[j][u] - c * x_j[u] * w[u]) % N
            continue
        c = cp.phase * 2 * N / (1 << (cp.weight - 1))
        assert c.denominator == 1, "precision choice makes the coefficient integral"
        c = int(c)
        optimised_edge = (
            optimise
            and cp.phase == Fraction(1, 2)
            and not any(other is not cp and cp.applies_to(other.v) for other in cps)
        )
        for j in range(r):
            x_j = emb.M.rows[j]
            for u in range(nq):
                if optimised_edge:
                    factor = cp.v[j] * a[u] * (x_j[u] - 1)
                else:
                    factor = a[u] * x_j[u]
                z_rows[j][u] = (z_rows[j][u] + c * factor * w[u]) % N
    kept = list(range(nq))
    if optimise:
        kept = [
            u
            for u in range(nq)
            if len(cols[u]) == 1 or any(z_rows[j][u] for j in range(r))
        ]
    s_x = tuple(
        xpop.make(
            N,
            p_rows[j],
            tuple(emb.M.rows[j][u] for u in kept),
            tuple(z_rows[j][u] for u in kept),
        )
        for j in range(r)
    )
    s_z = []
    if m > 1:
        for row, s in zip(emb.K.rows, (s for s in cols if len(s) > 1)):
            pivot = cols.index(s)
            if pivot not in kept:
                continue
            s_z.append(
                xpop.make(N, 0, (0,) * len(kept), tuple((N // 2) * row[u] for u in kept))
            )
    return WhgCode(N, emb, s_x, tuple(s_z), tuple(kept))


def whg_to_xp_optimised(cps: Sequence[ControlledPhase], r: int) -> WhgCode:
    return whg_to_xp(cps, r, optimise=True)


def parse_cp(text: str) -> ControlledPhase:
    """Parse the text form CP(p/q, bits)."""
    import re

    m = re.match(r"^CP\(\s*(-?\d+)\s*/\s*(\d+)\s*,\s*([01]+)\s*\)$", text.strip())
    if not m:
        raise ValueError(f"cannot parse controlled phase: {text!r}")
    return ControlledPhase(
        Fraction(int(m.group(1)), int(m.group(2))), tuple(int(b) for b in m.group(3))
    )
