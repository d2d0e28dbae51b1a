"""Group-level structure of XP operator sets: canonical generators.

A set of XP operators generates a group whose unique canonical generating set
splits into non-diagonal generators S_X (X components in RREF over Z_2) and
diagonal generators S_Z (images under the Zp homomorphism in Howell form over
Z_2N).  Two generator sets span the same group iff their canonical forms are
identical, which gives an exact group-equality test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import xpop
from .ringlinalg import RingMatrix, howell, residue
from .xpop import XpOperator


@dataclass(frozen=True)
class CanonicalGenerators:
    S_X: tuple[XpOperator, ...]
    S_Z: tuple[XpOperator, ...]

    @property
    def N(self) -> int:
        return (self.S_X + self.S_Z)[0].N

    @property
    def n(self) -> int:
        return (self.S_X + self.S_Z)[0].n

    def all_ops(self) -> tuple[XpOperator, ...]:
        return self.S_X + self.S_Z


def zp_map(b: XpOperator) -> tuple[int, ...]:
    """The homomorphism XP_N(p|0|z) -> (2z | p) mod 2N on diagonal operators."""
    if not b.is_diagonal:
        raise ValueError("Zp is defined on diagonal operators only")
    two_n = 2 * b.N
    return tuple((2 * zi) % two_n for zi in b.z) + (b.p % two_n,)


def zp_unmap(N: int, row: Sequence[int]) -> XpOperator:
    """Inverse of zp_map on vectors with even z entries."""
    z_part, p = row[:-1], row[-1]
    if any(e % 2 for e in z_part):
        raise ValueError("z entries of a Zp image must be even")
    return xpop.make(N, p, (0,) * len(z_part), [e // 2 for e in z_part])


def zp_matrix(N: int, ops: Sequence[XpOperator], n: int) -> RingMatrix:
    """Stack the Zp images of diagonal operators as a matrix over Z_2N."""
    return RingMatrix(2 * N, tuple(zp_map(b) for b in ops), n + 1)


def _zp_reduce(a: XpOperator, h_zp: RingMatrix) -> XpOperator:
    """Reduce the (2z|p) data of any operator modulo the span of h_zp."""
    two_n = 2 * a.N
    vec = tuple((2 * zi) % two_n for zi in a.z) + (a.p % two_n,)
    r = residue(h_zp, vec)
    return xpop.make(a.N, r[-1], a.x, [e // 2 for e in r[:-1]])


def _rounds_for(N: int) -> Optional[int]:
    """Number of commutator-closure rounds: t-1 when N = 2^t, else None (iterate)."""
    t = 0
    m = N
    while m % 2 == 0:
        m //= 2
        t += 1
    if m == 1:
        return max(t - 1, 0)
    return None


def canonical(gens: Sequence[XpOperator]) -> CanonicalGenerators:
    """Unique canonical generators (S_X, S_Z) of the group generated by gens.

    Steps: RREF the X components via group operations, split off the diagonal
    part, close the diagonal subgroup under squares and commutators, put the
    Zp images into Howell form, then reduce the S_X diagonal data against it.
    """
    gens = list(gens)
    if not gens:
        return CanonicalGenerators((), ())
    N = gens[0].N
    n = gens[0].n
    if any(g.N != N or g.n != n for g in gens):
        raise ValueError("generators must share precision and qubit count")

    # RREF of the X-component matrix, performed by group operations so each
    # row always corresponds to an actual group element.
    ops = list(gens)
    pivot_row = 0
    for col in range(n):
        pivot = next((i for i in range(pivot_row, len(ops)) if ops[i].x[col]), None)
        if pivot is None:
            continue
        ops[pivot_row], ops[pivot] = ops[pivot], ops[pivot_row]
        for i in range(len(ops)):
            if i != pivot_row and ops[i].x[col]:
                ops[i] = xpop.mul(ops[i], ops[pivot_row])
        pivot_row += 1
    s_x = [op for op in ops[:pivot_row]]
    s_z = [op for op in ops[pivot_row:]]

    # The diagonal subgroup: add squares and pairwise commutators of S_X,
    # then close under commutators with S_X.
    for a in s_x:
        s_z.append(xpop.square(a))
    for i, a in enumerate(s_x):
        for b in s_x[i + 1:]:
            s_z.append(xpop.comm(a, b))

    def compress(diag_ops: list[XpOperator]) -> list[XpOperator]:
        if not diag_ops:
            return []
        h = howell(zp_matrix(N, diag_ops, n)).H
        return [zp_unmap(N, row) for row in h.rows]

    rounds = _rounds_for(N)
    s_z = compress(s_z)
    iteration = 0
    while s_z and s_x:
        if rounds is not None and iteration >= rounds:
            break
        nxt = compress(s_z + [xpop.comm(b, a) for a in s_z for b in s_x])
        if rounds is None and nxt == s_z:
            break
        s_z = nxt
        iteration += 1
        if iteration > 4 * N * n + 4:
            raise AssertionError("commutator closure failed to stabilise")

    if s_z:
        h_zp = howell(zp_matrix(N, s_z, n)).H
        s_z_canon = tuple(zp_unmap(N, row) for row in h_zp.rows)
        s_x_canon = tuple(_zp_reduce(a, h_zp) for a in s_x)
    else:
        s_z_canon = ()
        s_x_canon = tuple(s_x)
    return CanonicalGenerators(s_x_canon, s_z_canon)


def same_group(g1: Sequence[XpOperator], g2: Sequence[XpOperator]) -> bool:
    return canonical(g1) == canonical(g2)


def generator_product(ops: Sequence[XpOperator], a: Sequence[int]) -> XpOperator:
    """The ordered product prod_i ops[i]^a[i]."""
    if len(ops) != len(a):
        raise ValueError("length mismatch")
    if not ops:
        raise ValueError("empty generator list")
    acc = xpop.identity(ops[0].N, ops[0].n)
    for op, e in zip(ops, a):
        acc = xpop.mul(acc, xpop.power(op, e))
    return acc


def inconsistent_phase(s_z: Sequence[XpOperator]) -> Optional[int]:
    """The exponent q if some w^q I (q != 0) lies in S_Z, else None.

    A phase-identity among the diagonal generators means no state is fixed by
    the whole group, i.e. the codespace is empty.
    """
    for op in s_z:
        if not any(op.z) and not any(op.x) and op.p != 0:
            return op.p
    return None


def in_diagonal_span(op: XpOperator, s_z: Sequence[XpOperator]) -> bool:
    """True iff diagonal op lies in the group generated by diagonal s_z."""
    if not op.is_diagonal:
        return False
    if not s_z:
        return not any(op.z) and op.p == 0
    h = howell(zp_matrix(op.N, s_z, op.n)).H
    return not any(residue(h, zp_map(op)))
