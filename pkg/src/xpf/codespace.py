"""From canonical generators to codewords.

The simultaneous +1 eigenspace of the diagonal generators has a Z-support E
of computational basis vectors.  Reducing E modulo the X components of the
non-diagonal generators gives one orbit representative per codeword; applying
the orbit operator to a representative expands the codeword.  The coset
decomposition E_m = E_q + <L_X> identifies the core of the code and the
X components available for logical operators.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import xpop
from .ringlinalg import RingMatrix, howell, kernel, residue, rref2
from .xpgroup import CanonicalGenerators, canonical, inconsistent_phase
from .xpop import XpOperator

Bits = tuple[int, ...]


class SearchBudgetExceeded(Exception):
    """The orbit-representative search exceeded its node budget."""


class SizeLimitExceeded(Exception):
    """A symbolic computation would exceed the qubit bound."""


def _search_budget() -> int:
    return int(os.environ.get("XPF_SEARCH_BUDGET", str(10 ** 7)))


def _max_qubits() -> int:
    return int(os.environ.get("XPF_MAX_QUBITS", "24"))


@dataclass(frozen=True)
class OrbitForm:
    """An unnormalised codeword sum_j w^phase_j |bits_j>."""

    N: int
    terms: tuple[tuple[int, Bits], ...]

    def zsupport(self) -> tuple[Bits, ...]:
        return tuple(bits for _, bits in self.terms)

    def phase_of(self, bits: Bits) -> Optional[int]:
        for phase, b in self.terms:
            if b == bits:
                return phase
        return None


@dataclass(frozen=True)
class CosetDecomposition:
    """E = E_q + <S_X> + <L_X> over Z_2, with RREF matrices."""

    E_q: tuple[Bits, ...]
    S_X_matrix: RingMatrix
    L_X_matrix: RingMatrix


@dataclass(frozen=True)
class CoreForm:
    """Compact code data (E_q, S_X ops, L_X ops) plus the diagonal reduction basis."""

    N: int
    E_q: tuple[Bits, ...]
    S_X: tuple[XpOperator, ...]
    L_X: tuple[XpOperator, ...]


def _leading_indices(mat: RingMatrix) -> list[int]:
    out = []
    for row in mat.rows:
        for j, e in enumerate(row):
            if e:
                out.append(j)
                break
    return out


def _z2_residue(mat: RingMatrix, v: Sequence[int]) -> Bits:
    """Residue of a binary vector against an RREF matrix over Z_2."""
    r = list(int(b) % 2 for b in v)
    for row in mat.rows:
        lead = next((j for j, e in enumerate(row) if e), None)
        if lead is not None and r[lead]:
            r = [(a + b) % 2 for a, b in zip(r, row)]
    return tuple(r)


def _constraint_system(s_z: Sequence[XpOperator], N: int, n: int):
    """Rows (z_i | p_i/2) over Z_N of the system e.z + p/2 = 0 mod N.

    Returns None when some diagonal generator has odd phase (empty support).
    """
    rows = []
    for op in s_z:
        if op.p % 2:
            return None
        rows.append(tuple(op.z) + ((op.p // 2) % N,))
    return RingMatrix(N, tuple(rows), n + 1)


def zsupport_exhaustive(s_z: Sequence[XpOperator], N: int, n: int) -> tuple[Bits, ...]:
    """All e in Z_2^n fixed by every diagonal generator, by direct enumeration."""
    if n > min(_max_qubits(), 20):
        raise SizeLimitExceeded(f"exhaustive Z-support bounded to 20 qubits, got {n}")
    sys_m = _constraint_system(s_z, N, n)
    if sys_m is None:
        return ()
    out = []
    for idx in range(1 << n):
        e = tuple((idx >> (n - 1 - j)) & 1 for j in range(n))
        ok = True
        for row in sys_m.rows:
            if (sum(ei * zi for ei, zi in zip(e, row[:n])) + row[n]) % N:
                ok = False
                break
        if ok:
            out.append(e)
    return tuple(out)


def _orbit_rep_set(s_z: Sequence[XpOperator], s_x_mat: RingMatrix, N: int, n: int) -> set[Bits]:
    """Depth-first search for E_m: members of E with zeros at S_X leading indices.

    Positions are assigned left to right; the search state is the vector of
    partial sums of the Z_N constraints, and suffix solution sets are memoised
    per (position, partial sums).
    """
    sys_m = _constraint_system(s_z, N, n)
    if sys_m is None:
        return set()
    pinned = set(_leading_indices(s_x_mat))
    rows = sys_m.rows
    targets = tuple((-row[n]) % N for row in rows)
    cols = tuple(tuple(row[j] % N for row in rows) for j in range(n))
    budget = _search_budget()
    nodes = 0
    memo: dict[tuple[int, tuple[int, ...]], tuple[Bits, ...]] = {}

    def search(pos: int, sums: tuple[int, ...]) -> tuple[Bits, ...]:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"orbit search exceeded {budget} nodes")
        if pos == n:
            return ((),) if sums == targets else ()
        key = (pos, sums)
        hit = memo.get(key)
        if hit is not None:
            return hit
        solutions = [(0,) + suffix for suffix in search(pos + 1, sums)]
        if pos not in pinned:
            bumped = tuple((s + c) % N for s, c in zip(sums, cols[pos]))
            solutions += [(1,) + suffix for suffix in search(pos + 1, bumped)]
        result = tuple(solutions)
        memo[key] = result
        return result

    return set(search(0, (0,) * len(rows)))


@dataclass
class XpCode:
    """An XP code: input generators plus lazily computed derived structure."""

    generators: tuple[XpOperator, ...]
    _canonical: Optional[CanonicalGenerators] = field(default=None, repr=False)
    _orbit_reps: Optional[tuple[Bits, ...]] = field(default=None, repr=False)
    _decomposition: Optional[CosetDecomposition] = field(default=None, repr=False)
    _codewords: Optional[tuple[OrbitForm, ...]] = field(default=None, repr=False)

    @classmethod
    def from_generators(cls, gens: Sequence[XpOperator]) -> "XpCode":
        if not gens:
            raise ValueError("a code needs at least one generator")
        return cls(tuple(gens))

    @property
    def N(self) -> int:
        return self.generators[0].N

    @property
    def n(self) -> int:
        return self.generators[0].n

    @property
    def canonical(self) -> CanonicalGenerators:
        if self._canonical is None:
            self._canonical = canonical(self.generators)
        return self._canonical

    @property
    def S_X(self) -> tuple[XpOperator, ...]:
        return self.canonical.S_X

    @property
    def S_Z(self) -> tuple[XpOperator, ...]:
        return self.canonical.S_Z

    @property
    def S_X_matrix(self) -> RingMatrix:
        return RingMatrix(2, tuple(op.x for op in self.S_X), self.n)

    def empty_codespace_phase(self) -> Optional[int]:
        return inconsistent_phase(self.S_Z)

    @property
    def orbit_reps(self) -> tuple[Bits, ...]:
        """E_m ordered by coset: L_X combinations outermost, core members lex."""
        if self._orbit_reps is None:
            reps = orbit_reps(self.S_Z, self.S_X_matrix, self.N, self.n)
            decomp = coset_decomposition(reps, self.S_X_matrix)
            self._decomposition = decomp
            self._orbit_reps = _coset_ordered(decomp)
        return self._orbit_reps

    @property
    def decomposition(self) -> CosetDecomposition:
        self.orbit_reps
        assert self._decomposition is not None
        return self._decomposition

    @property
    def codewords(self) -> tuple[OrbitForm, ...]:
        if self._codewords is None:
            self._codewords = tuple(orbit_apply(self.S_X, m, self.N, self.n) for m in self.orbit_reps)
        return self._codewords

    @property
    def dim(self) -> int:
        return len(self.orbit_reps)

    def zsupport(self) -> tuple[Bits, ...]:
        """E in codeword order: the Z-supports of the codewords concatenated."""
        return tuple(bits for kw in self.codewords for bits in kw.zsupport())


def orbit_reps(
    s_z: Sequence[XpOperator], s_x_mat: RingMatrix, N: int, n: int
) -> tuple[Bits, ...]:
    """The set E_m of orbit representatives, lexicographically sorted."""
    return tuple(sorted(_orbit_rep_set(s_z, s_x_mat, N, n)))


def _coset_ordered(decomp: CosetDecomposition) -> tuple[Bits, ...]:
    """Order E_m as q + v.L_X with v counting in binary and q lex within each v."""
    k = decomp.L_X_matrix.nrows
    eq = sorted(decomp.E_q)
    out = []
    for vidx in range(1 << k):
        v = tuple((vidx >> (k - 1 - j)) & 1 for j in range(k))
        shift = decomp.L_X_matrix.row_combination(v) if k else (0,) * decomp.L_X_matrix.cols
        for q in eq:
            out.append(tuple(a ^ b for a, b in zip(q, shift)))
    return tuple(out)


def orbit_apply(s_x: Sequence[XpOperator], m: Sequence[int], N: int, n: int) -> OrbitForm:
    """Expand O_{S_X}|m> = sum_v S_X^v |m> into orbit form, terms in v order."""
    r = len(s_x)
    terms = []
    for vidx in range(1 << r):
        v = tuple((vidx >> (r - 1 - j)) & 1 for j in range(r))
        phase, bits = 0, tuple(m)
        for op, vi in zip(reversed(s_x), reversed(v)):
            if vi:
                ph, bits = xpop.apply_basis(op, bits)
                phase = (phase + ph) % (2 * N)
        terms.append((phase, bits))
    return OrbitForm(N, tuple(terms))


def coset_decomposition(e_m: Sequence[Bits], s_x_mat: RingMatrix) -> CosetDecomposition:
    """Split E_m into E_q + <L_X> where x in <L_X> iff E_m xor x = E_m."""
    if not e_m:
        return CosetDecomposition((), s_x_mat, RingMatrix(2, (), s_x_mat.cols))
    e_set = set(e_m)
    base = min(e_m)
    stabilising = []
    for m in e_m:
        d = tuple(a ^ b for a, b in zip(m, base))
        if any(d) and {tuple(a ^ b for a, b in zip(e, d)) for e in e_set} == e_set:
            stabilising.append(d)
    if stabilising:
        l_x = rref2(RingMatrix(2, tuple(stabilising), s_x_mat.cols)).H
    else:
        l_x = RingMatrix(2, (), s_x_mat.cols)
    e_q = tuple(sorted({_z2_residue(l_x, m) for m in e_m}))
    return CosetDecomposition(e_q, s_x_mat, l_x)


def _z2_express(mat: RingMatrix, v: Bits) -> Optional[Bits]:
    """Coefficients u with u.mat = v over Z_2 (mat in RREF), else None."""
    r = list(v)
    coeffs = [0] * mat.nrows
    for i, row in enumerate(mat.rows):
        lead = next((j for j, e in enumerate(row) if e), None)
        if lead is not None and r[lead]:
            coeffs[i] = 1
            r = [(a + b) % 2 for a, b in zip(r, row)]
    if any(r):
        return None
    return tuple(coeffs)


def orbit_distance(e: Sequence[int], decomp: CosetDecomposition) -> int:
    """wt(u) + wt(v) for the unique writing e = q + u.S_X + v.L_X mod 2."""
    e = tuple(int(b) % 2 for b in e)
    m = _z2_residue(decomp.S_X_matrix, e)
    u = _z2_express(decomp.S_X_matrix, tuple(a ^ b for a, b in zip(e, m)))
    q = _z2_residue(decomp.L_X_matrix, m)
    v = _z2_express(decomp.L_X_matrix, tuple(a ^ b for a, b in zip(m, q)))
    if u is None or v is None or q not in decomp.E_q:
        raise ValueError("vector is not in the Z-support of the code")
    return sum(u) + sum(v)


def quantum_numbers(e: Sequence[int], decomp: CosetDecomposition) -> tuple[Bits, Bits, Bits]:
    """The unique (q, u, v) with e = q + u.S_X + v.L_X mod 2."""
    e = tuple(int(b) % 2 for b in e)
    m = _z2_residue(decomp.S_X_matrix, e)
    u = _z2_express(decomp.S_X_matrix, tuple(a ^ b for a, b in zip(e, m)))
    q = _z2_residue(decomp.L_X_matrix, m)
    v = _z2_express(decomp.L_X_matrix, tuple(a ^ b for a, b in zip(m, q)))
    if u is None or v is None or q not in decomp.E_q:
        raise ValueError("vector is not in the Z-support of the code")
    return q, u, v
