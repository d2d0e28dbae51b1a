"""Logical structure of an XP code.

From the codewords we derive: the logical identity group M (the unique
canonical generating set of all operators fixing every codeword), the
non-trivial diagonal and non-diagonal logical generators L_Z / L_X, the
lattice of achievable diagonal actions (phase vectors), a classification of
codes and diagonal operators, a mapping of XP-regular codes to CSS codes,
and the Reed-Muller family of self-dual XP codes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from . import xpop
from .codespace import Bits, CosetDecomposition, OrbitForm, XpCode
from .ringlinalg import (
    AffineSpan,
    RingMatrix,
    affine_intersection,
    express_in_span,
    howell,
    kernel,
    residue,
    rref2,
    solve_linear,
    span_intersection,
)
from .xpgroup import _zp_reduce, generator_product, in_diagonal_span, zp_matrix
from .xpop import XpOperator


class NotXpCodespaceError(Exception):
    """The span of the given states is not the codespace of any XP code."""


class NotLogicalError(Exception):
    """The operator does not preserve the codespace."""


@dataclass(frozen=True)
class PhaseVector:
    """Logical action A|kappa_i> = w^{f[i]} |kappa_{pi[i]}>."""

    f: tuple[int, ...]
    pi: tuple[int, ...]

    @property
    def is_diagonal(self) -> bool:
        return all(p == i for i, p in enumerate(self.pi))


@dataclass(frozen=True)
class LogicalGroupData:
    """Generators of the logical XP group and the diagonal action basis."""

    M_Z: tuple[XpOperator, ...]
    M_X: tuple[XpOperator, ...]
    L_Z: tuple[XpOperator, ...]
    L_X_ops: tuple[XpOperator, ...]
    L_X_failures: tuple[Bits, ...]
    F_D: RingMatrix
    L_D: tuple[XpOperator, ...]

    @property
    def M(self) -> tuple[XpOperator, ...]:
        return self.M_X + self.M_Z


def _phase_table(codewords: Sequence[OrbitForm]) -> dict[Bits, tuple[int, int]]:
    """Map each Z-support element to (codeword index, phase exponent)."""
    table: dict[Bits, tuple[int, int]] = {}
    for i, kw in enumerate(codewords):
        for phase, bits in kw.terms:
            table[bits] = (i, phase)
    return table


def _e_matrix_rows(codewords: Sequence[OrbitForm]) -> list[Bits]:
    return [bits for kw in codewords for _, bits in kw.terms]


def logical_identity(
    codewords: Sequence[OrbitForm], N: int, n: int
) -> tuple[tuple[XpOperator, ...], tuple[XpOperator, ...]]:
    """Canonical generators (M_Z, M_X) of the logical identity group.

    Raises NotXpCodespaceError when the span of the codewords is not the
    codespace of a precision-N XP code.
    """
    e_rows = _e_matrix_rows(codewords)
    table = _phase_table(codewords)
    e_m = RingMatrix.make(N, [tuple(e) + (1,) for e in e_rows], n + 1)
    k_m = kernel(e_m)
    m_z = tuple(
        xpop.make(N, 2 * row[n], (0,) * n, row[:n]) for row in k_m.rows
    )

    # X components: differences within one Z-support, RREF; every codeword's
    # support must be a single coset of the resulting span.
    diffs = []
    for kw in codewords:
        sup = kw.zsupport()
        base = sup[0]
        diffs.extend(tuple(a ^ b for a, b in zip(base, e)) for e in sup[1:])
    if diffs:
        s_x_mat = rref2(RingMatrix(2, tuple(diffs), n)).H
    else:
        s_x_mat = RingMatrix(2, (), n)
    for kw in codewords:
        sup = set(kw.zsupport())
        if len(sup) != 1 << s_x_mat.nrows:
            raise NotXpCodespaceError("codeword Z-supports are not cosets of one span")
        base = next(iter(sup))
        for cidx in range(1 << s_x_mat.nrows):
            c = tuple((cidx >> (s_x_mat.nrows - 1 - j)) & 1 for j in range(s_x_mat.nrows))
            shift = s_x_mat.row_combination(c) if s_x_mat.nrows else (0,) * n
            if tuple(a ^ b for a, b in zip(base, shift)) not in sup:
                raise NotXpCodespaceError("codeword Z-supports are not cosets of one span")

    m_x = []
    for x in s_x_mat.rows:
        deltas = []
        for e in e_rows:
            _, p = table[e]
            partner = tuple(a ^ b for a, b in zip(e, x))
            if partner not in table:
                raise NotXpCodespaceError("Z-support not closed under X component")
            _, pp = table[partner]
            deltas.append((pp - p) % (2 * N))
        parities = {d % 2 for d in deltas}
        if len(parities) != 1:
            raise NotXpCodespaceError("odd/even phase mismatch for X component")
        a = deltas[0] % 2
        p3 = tuple(((d - a) // 2) % N for d in deltas)
        sol = solve_linear(e_m, tuple((-v) % N for v in p3))
        if sol is None:
            raise NotXpCodespaceError("no Z component matches the codeword phases")
        zr = residue(k_m, sol.offset)
        m_x.append(xpop.make(N, a + 2 * zr[n], x, zr[:n]))

    # Sanity check replacing the full graph search: every generator must fix
    # every codeword.
    for op in m_z + tuple(m_x):
        pv = phase_vector(op, codewords, check_logical=False)
        if pv is None or any(pv.f) or not pv.is_diagonal:
            raise NotXpCodespaceError("candidate generator does not fix the codewords")
    return m_z, tuple(m_x)


def logical_identity_modified(
    code: XpCode,
) -> tuple[tuple[XpOperator, ...], tuple[XpOperator, ...]]:
    """Logical identity generators from truncated codeword data.

    For precision N = 2^t only elements within orbit distance t of the core
    are needed; for other N this falls back to the full codewords.
    """
    N, n = code.N, code.n
    t = N.bit_length() - 1
    if N != 1 << t:
        return logical_identity(code.codewords, N, n)
    r = len(code.S_X)
    truncated = []
    e_t = set()
    for w, m in zip(_weights_in_coset_order(code), code.orbit_reps):
        # Keep phases one step beyond the distance bound so the phase-pair
        # constraints for members of E_t remain available.
        limit = min(t + 1 - w, r)
        terms = []
        for wt_u in range(max(limit, 0) + 1):
            for idxs in combinations(range(r), wt_u):
                phase, bits = 0, tuple(m)
                for j in reversed(idxs):
                    ph, bits = xpop.apply_basis(code.S_X[j], bits)
                    phase = (phase + ph) % (2 * N)
                terms.append((phase, bits))
                if w + wt_u <= t:
                    e_t.add(bits)
        truncated.append(OrbitForm(N, tuple(terms)))
    return _logical_identity_partial(truncated, e_t, code)


def _weights_in_coset_order(code: XpCode) -> list[int]:
    k = code.decomposition.L_X_matrix.nrows
    eq = len(code.decomposition.E_q)
    out = []
    for vidx in range(1 << k):
        w = bin(vidx).count("1")
        out.extend([w] * eq)
    return out


def _logical_identity_partial(
    codewords: Sequence[OrbitForm], e_t: set, code: XpCode
) -> tuple[tuple[XpOperator, ...], tuple[XpOperator, ...]]:
    N, n = code.N, code.n
    table = _phase_table(codewords)
    rows = sorted(e_t)
    e_m = RingMatrix.make(N, [tuple(e) + (1,) for e in rows], n + 1)
    k_m = kernel(e_m)
    m_z = tuple(xpop.make(N, 2 * row[n], (0,) * n, row[:n]) for row in k_m.rows)
    m_x = []
    for x_op in code.S_X:
        x = x_op.x
        deltas = []
        used_rows = []
        for e in rows:
            partner = tuple(a ^ b for a, b in zip(e, x))
            if partner not in table:
                continue
            _, p = table[e]
            _, pp = table[partner]
            used_rows.append(tuple(e) + (1,))
            deltas.append((pp - p) % (2 * N))
        parities = {d % 2 for d in deltas}
        if len(parities) != 1:
            raise NotXpCodespaceError("odd/even phase mismatch for X component")
        a = deltas[0] % 2
        p3 = tuple(((d - a) // 2) % N for d in deltas)
        sub = RingMatrix.make(N, used_rows, n + 1)
        sol = solve_linear(sub, tuple((-v) % N for v in p3))
        if sol is None:
            raise NotXpCodespaceError("no Z component matches the codeword phases")
        zr = residue(k_m, sol.offset)
        m_x.append(xpop.make(N, a + 2 * zr[n], x, zr[:n]))
    return m_z, tuple(m_x)


def diagonal_logicals(
    codewords: Sequence[OrbitForm], m_z: Sequence[XpOperator], N: int, n: int
) -> tuple[XpOperator, ...]:
    """Non-trivial diagonal logical generators L_Z."""
    dim = len(codewords)
    rows = []
    for i, kw in enumerate(codewords):
        ind = tuple(1 if j == i else 0 for j in range(dim))
        for _, bits in kw.terms:
            rows.append(tuple(bits) + ind)
    e_l = RingMatrix.make(N, rows, n + dim)
    k_l = kernel(e_l)
    m_z_mat = RingMatrix.make(N, [op.z for op in m_z], n)
    m_z_h = howell(m_z_mat).H
    reduced = [residue(m_z_h, row[:n]) for row in k_l.rows]
    reduced = [r for r in reduced if any(r)]
    if not reduced:
        return ()
    k = howell(RingMatrix.make(N, reduced, n)).H
    return tuple(xpop.make(N, 0, (0,) * n, row) for row in k.rows)


def nondiagonal_logicals(
    codewords: Sequence[OrbitForm],
    l_x_matrix: RingMatrix,
    m_z: Sequence[XpOperator],
    l_z: Sequence[XpOperator],
    N: int,
    n: int,
) -> tuple[tuple[XpOperator, ...], tuple[Bits, ...]]:
    """One logical X operator per L_X row, plus the rows that failed."""
    dim = len(codewords)
    table = _phase_table(codewords)
    rows = []
    for i, kw in enumerate(codewords):
        ind = tuple(1 if j == i else 0 for j in range(dim))
        for _, bits in kw.terms:
            rows.append(tuple(bits) + ind)
    e_l = RingMatrix.make(N, rows, n + dim)
    ops, failures = [], []
    for x in l_x_matrix.rows:
        raw = _solve_nondiagonal(codewords, table, e_l, x, N, n)
        if raw is None:
            failures.append(tuple(x))
            continue
        adjusted = logical_x_adjust(raw, m_z, l_z, tuple(x))
        if adjusted is None:
            failures.append(tuple(x))
            continue
        ops.append(adjusted)
    return tuple(ops), tuple(failures)


def _solve_nondiagonal(codewords, table, e_l, x, N, n) -> Optional[XpOperator]:
    dim = len(codewords)
    p3 = []
    a_by_codeword = []
    for i, kw in enumerate(codewords):
        a_i = None
        for phase, bits in kw.terms:
            partner = tuple(p ^ q for p, q in zip(bits, x))
            if partner not in table:
                return None
            _, pp = table[partner]
            d = (pp - phase) % (2 * N)
            if a_i is None:
                a_i = d % 2
            elif d % 2 != a_i:
                return None
            p3.append(((d - a_i) // 2) % N)
        a_by_codeword.append(a_i)
    sol = solve_linear(e_l, tuple((-v) % N for v in p3))
    if sol is None:
        return None
    return xpop.make(N, 0, x, sol.offset[:n])


def logical_x_adjust(
    op: XpOperator,
    m_z: Sequence[XpOperator],
    l_z: Sequence[XpOperator],
    x: Bits,
) -> Optional[XpOperator]:
    """Set the diagonal part of a non-diagonal logical so its square is an identity.

    The Z component is chosen from the intersection of the affine span of valid
    logical Z components with the span whose squares lie in the diagonal
    identity group; the phase then cancels the square exactly.
    """
    N, n = op.N, op.n
    m_z_mat = RingMatrix.make(N, [g.z for g in m_z] or [], n)
    l_z_mat = RingMatrix.make(N, [g.z for g in l_z] or [], n)
    sp_b = AffineSpan(
        tuple(op.z), howell(RingMatrix.make(N, list(m_z_mat.rows) + list(l_z_mat.rows), n)).H
    )
    not_x = RingMatrix.make(
        N,
        [
            tuple(2 if (j == i and not x[i]) else 0 for j in range(n))
            for i in range(n)
            if not x[i]
        ],
        n,
    )
    sp_2 = span_intersection(m_z_mat, not_x)
    halved = [tuple((v % N) // 2 for v in row) for row in sp_2.rows]
    extra = []
    if N % 2 == 0:
        extra.extend(
            tuple(N // 2 if (j == i and not x[i]) else 0 for j in range(n))
            for i in range(n)
            if not x[i]
        )
    extra.extend(
        tuple(1 if (j == i and x[i]) else 0 for j in range(n)) for i in range(n) if x[i]
    )
    sp_a_basis = howell(RingMatrix.make(N, halved + extra, n)).H
    sp_a = AffineSpan((0,) * n, sp_a_basis)
    meet = affine_intersection(sp_a, sp_b)
    if meet is None:
        return None
    z = meet.offset
    sq = xpop.square(xpop.make(N, 0, x, z))
    m_z_h = howell(m_z_mat)
    coeffs = express_in_span(m_z_h.H, sq.z)
    if coeffs is None:
        return None
    u = tuple(
        sum(c * m_z_h.U.rows[i][j] for i, c in enumerate(coeffs)) % N
        for j in range(m_z_h.U.cols)
    )
    prod = (
        generator_product(list(m_z), u) if m_z else xpop.identity(N, len(x))
    )
    if prod.z != sq.z:
        return None
    p = ((prod.p - sq.p) % (2 * N)) // 2
    return xpop.make(N, p, x, z)


def is_logical(op: XpOperator, m: Sequence[XpOperator], m_z: Sequence[XpOperator]) -> bool:
    """True iff the group commutator with every identity generator is an identity."""
    for a in m:
        c = xpop.comm(a, op)
        if any(c.x):
            return False
        if not in_diagonal_span(c, m_z):
            return False
    return True


def phase_vector(
    op: XpOperator, codewords: Sequence[OrbitForm], check_logical: bool = True
) -> Optional[PhaseVector]:
    """The action (f, pi) of op on the codewords, or None if not logical."""
    N = op.N
    supports = {frozenset(kw.zsupport()): i for i, kw in enumerate(codewords)}
    f, pi = [], []
    for kw in codewords:
        image = []
        for phase, bits in kw.terms:
            dp, nb = xpop.apply_basis(op, bits)
            image.append(((phase + dp) % (2 * N), nb))
        target = supports.get(frozenset(b for _, b in image))
        if target is None:
            if check_logical:
                raise NotLogicalError(f"{op} does not preserve the codespace")
            return None
        ref = codewords[target]
        shift = None
        for ph, bits in image:
            base = ref.phase_of(bits)
            d = (ph - base) % (2 * N)
            if shift is None:
                shift = d
            elif d != shift:
                if check_logical:
                    raise NotLogicalError(f"{op} does not preserve the codespace")
                return None
        f.append(shift)
        pi.append(target)
    return PhaseVector(tuple(f), tuple(pi))


def action_basis(
    l_z: Sequence[XpOperator], codewords: Sequence[OrbitForm], N: int, n: int
) -> tuple[RingMatrix, tuple[XpOperator, ...]]:
    """(F_D, L_D): Howell basis of achievable diagonal phase vectors and realising ops."""
    omega_i = xpop.make(N, 1, (0,) * n, (0,) * n)
    gens = [omega_i] + list(l_z)
    f_z = RingMatrix.make(
        2 * N, [phase_vector(g, codewords).f for g in gens], len(codewords)
    )
    h = howell(f_z)
    l_d = tuple(generator_product(gens, u) for u in h.U.rows)
    return h.H, l_d


def operator_for_action(
    f: Sequence[int], f_d: RingMatrix, l_d: Sequence[XpOperator]
) -> Optional[XpOperator]:
    """An operator whose phase vector is f, or None when unachievable."""
    coeffs = express_in_span(f_d, tuple(v % f_d.modulus for v in f))
    if coeffs is None:
        return None
    return generator_product(list(l_d), coeffs)


def classify_code(decomp: CosetDecomposition) -> str:
    return "XP-regular" if len(decomp.E_q) == 1 else "non-XP-regular"


def classify_operator(op: XpOperator, code: XpCode) -> str:
    """Classify a diagonal logical operator as regular, core, both, or neither."""
    pv = phase_vector(op, code.codewords)
    if not pv.is_diagonal:
        raise ValueError("classification applies to diagonal logical operators")
    q = len(code.decomposition.E_q)
    rows = [pv.f[i : i + q] for i in range(0, len(pv.f), q)]
    regular = all(len(set(r)) == 1 for r in rows)
    core = all(len({r[j] for r in rows}) == 1 for j in range(q))
    if regular and core:
        return "both"
    if regular:
        return "regular"
    if core:
        return "core"
    return "neither"


def map_to_css(code: XpCode) -> tuple[tuple[XpOperator, ...], tuple[XpOperator, ...]]:
    """Map an XP-regular code to a CSS code (R_X, R_Z) with the same Z-support."""
    decomp = code.decomposition
    if len(decomp.E_q) != 1:
        raise ValueError("only XP-regular codes map to CSS codes")
    n = code.n
    q = decomp.E_q[0]
    g_x = RingMatrix.make(
        2, [op.x for op in code.S_X] + list(decomp.L_X_matrix.rows), n
    )
    k = kernel(g_x)
    r_z = tuple(
        xpop.make(2, -2 * sum(a * b for a, b in zip(q, z)), (0,) * n, z) for z in k.rows
    )
    r_x = tuple(xpop.make(2, 0, op.x, (0,) * n) for op in code.S_X)
    return r_x, r_z


def logical_group(code: XpCode) -> LogicalGroupData:
    """Full logical structure of a code in one pass."""
    N, n = code.N, code.n
    kws = code.codewords
    m_z, m_x = logical_identity(kws, N, n)
    l_z = diagonal_logicals(kws, m_z, N, n)
    l_x_ops, failures = nondiagonal_logicals(
        kws, code.decomposition.L_X_matrix, m_z, l_z, N, n
    )
    f_d, l_d = action_basis(l_z, kws, N, n)
    return LogicalGroupData(m_z, m_x, l_z, l_x_ops, failures, f_d, l_d)


def reduce_by_identities(op: XpOperator, m_z: Sequence[XpOperator]) -> XpOperator:
    """Residue an operator's diagonal data against the diagonal identity group.

    The compact core-form generators are unique only modulo diagonal logical
    identities, so reports and measurement updates reduce against M_Z rather
    than the stabiliser's diagonal span.
    """
    if not m_z:
        return op
    h = howell(zp_matrix_of(m_z, op.N, op.n))
    return _zp_reduce(op, h.H)


def zp_matrix_of(ops: Sequence[XpOperator], N: int, n: int) -> RingMatrix:
    return zp_matrix(N, list(ops), n)


def reed_muller(r: int) -> XpCode:
    """The self-dual XP form of the Reed-Muller code on 2^r - 1 qubits."""
    if r < 3:
        raise ValueError("need r >= 3")
    from .states import embedding_matrix

    N = 1 << (r - 2)
    m = embedding_matrix(r, r)
    n = m.cols
    gens = [xpop.make(N, 0, row, (0,) * n) for row in m.rows]
    gens += [xpop.make(N, 0, (0,) * n, row) for row in m.rows]
    return XpCode.from_generators(gens)
