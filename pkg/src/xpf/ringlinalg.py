"""Exact linear algebra over Z_N: Howell forms, kernels, residues, solving.

Everything here works with row spans of matrices over the ring Z_N for an
arbitrary modulus N >= 2.  The Howell form plays the role that RREF plays over
a field: it is a canonical basis for a row span, so span equality can be
tested by comparing Howell forms, and coset membership by computing residues.
For N = 2 the Howell form *is* the RREF.

Matrices are small and dense; entries are Python ints reduced into
[0, modulus).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence


Vec = tuple[int, ...]


@dataclass(frozen=True)
class RingMatrix:
    """A dense matrix over Z_N, stored as a tuple of row tuples."""

    modulus: int
    rows: tuple[Vec, ...]
    cols: int

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        for r in self.rows:
            if len(r) != self.cols:
                raise ValueError("ragged rows")
            if any(not (0 <= e < self.modulus) for e in r):
                raise ValueError("entries must lie in [0, modulus)")

    @classmethod
    def make(cls, modulus: int, rows: Iterable[Sequence[int]], cols: Optional[int] = None) -> "RingMatrix":
        rws = tuple(tuple(e % modulus for e in r) for r in rows)
        if cols is None:
            if not rws:
                raise ValueError("cols required for an empty matrix")
            cols = len(rws[0])
        return cls(modulus, rws, cols)

    @classmethod
    def identity(cls, modulus: int, n: int) -> "RingMatrix":
        return cls(modulus, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def row_combination(self, coeffs: Sequence[int]) -> Vec:
        """Return (coeffs . self) mod modulus."""
        if len(coeffs) != self.nrows:
            raise ValueError("coefficient length mismatch")
        out = [0] * self.cols
        for c, row in zip(coeffs, self.rows):
            if c % self.modulus:
                for j, e in enumerate(row):
                    out[j] += c * e
        return tuple(e % self.modulus for e in out)


@dataclass(frozen=True)
class HowellForm:
    """Canonical form H of a row span plus the transformation U with H = U.M."""

    H: RingMatrix
    U: RingMatrix


@dataclass(frozen=True)
class AffineSpan:
    """The set offset + Span(basis) over Z_N."""

    offset: Vec
    basis: RingMatrix

    @property
    def modulus(self) -> int:
        return self.basis.modulus

    def contains(self, v: Sequence[int]) -> bool:
        d = tuple((a - b) % self.modulus for a, b in zip(v, self.offset))
        return not any(residue(self.basis, d))

    def enumerate(self) -> list[Vec]:
        """All members; intended for small test instances only."""
        N = self.modulus
        out = {self.offset}
        for row in self.basis.rows:
            out = {
                tuple((v[j] + c * row[j]) % N for j in range(len(v)))
                for v in out
                for c in range(N)
            }
        return sorted(out)


def minimal_associate(a: int, N: int) -> int:
    """The canonical representative GCD(N, a) of the unit-multiple class of a."""
    return gcd(a % N, N) % N


def _gcdex(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: g, s, t with s*a + t*b = g."""
    r0, r1, s0, s1, t0, t1 = a, b, 1, 0, 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


def _stabilising_unit(a: int, N: int) -> int:
    """A unit u of Z_N with u*a = GCD(N, a) mod N."""
    a %= N
    if a == 0:
        return 1
    g = gcd(a, N)
    b = a // g
    n1 = N // g
    u = pow(b, -1, n1) if n1 > 1 else 1
    while gcd(u, N) != 1:
        u += n1
    return u % N


def _leading_index(row: Vec) -> int:
    for j, e in enumerate(row):
        if e:
            return j
    return len(row)


def howell(M: RingMatrix) -> HowellForm:
    """Howell canonical form of the row span of M, with transformation record.

    Works on the augmented matrix [M | I] so each work row carries the
    coefficients that produced it.  Annihilator rows ((N/g) * pivot row, for a
    zero-divisor pivot g) are appended to the worklist so the span below each
    pivot is fully represented.
    """
    N = M.modulus
    n = M.cols
    work: list[list[int]] = [
        list(row) + [1 if i == j else 0 for j in range(M.nrows)]
        for i, row in enumerate(M.rows)
    ]
    width = n + M.nrows
    r = 0
    for c in range(n):
        # Combine rows below r so only row r has a nonzero entry in column c.
        for i in range(r + 1, len(work)):
            if r >= len(work):
                break
            a, b = work[r][c] % N, work[i][c] % N
            if b == 0:
                continue
            if a == 0:
                work[r], work[i] = work[i], work[r]
                continue
            g, s, t = _gcdex(a, b)
            u, v = -(b // g), a // g
            new_r = [(s * work[r][j] + t * work[i][j]) % N for j in range(width)]
            new_i = [(u * work[r][j] + v * work[i][j]) % N for j in range(width)]
            work[r], work[i] = new_r, new_i
        if r < len(work) and work[r][c] % N != 0:
            a = work[r][c] % N
            unit = _stabilising_unit(a, N)
            work[r] = [(unit * e) % N for e in work[r]]
            g = work[r][c]  # now the minimal associate
            for i in range(r):
                q = work[i][c] // g
                if q:
                    work[i] = [(work[i][j] - q * work[r][j]) % N for j in range(width)]
            if g != 1:
                ann = [((N // g) * e) % N for e in work[r]]
                if any(ann[:n]):
                    work.append(ann)
            r += 1
    rows_h = []
    rows_u = []
    for row in work[:r]:
        if any(row[:n]):
            rows_h.append(tuple(row[:n]))
            rows_u.append(tuple(row[n:]))
    H = RingMatrix(N, tuple(rows_h), n)
    U = RingMatrix(N, tuple(rows_u), M.nrows)
    return HowellForm(H, U)


def rref2(M: RingMatrix) -> HowellForm:
    """RREF over Z_2 (the field case of the Howell form)."""
    if M.modulus != 2:
        raise ValueError("rref2 requires modulus 2")
    return howell(M)


def kernel(M: RingMatrix) -> RingMatrix:
    """Howell basis K of {v : v . M^T = 0 mod N} (v orthogonal to every row)."""
    N = M.modulus
    # Rows of [M^T | I]: linear combinations are (v . M^T | v).
    stacked = RingMatrix(
        N,
        tuple(
            tuple(M.rows[i][j] for i in range(M.nrows)) + tuple(1 if j == k else 0 for k in range(M.cols))
            for j in range(M.cols)
        ),
        M.nrows + M.cols,
    )
    h = howell(stacked).H
    ker_rows = [row[M.nrows:] for row in h.rows if not any(row[: M.nrows])]
    if not ker_rows:
        return RingMatrix(N, (), M.cols)
    return howell(RingMatrix(N, tuple(ker_rows), M.cols)).H


def residue(B: RingMatrix, a: Sequence[int]) -> Vec:
    """Canonical representative of the coset a + Span(B); zero iff a in Span(B)."""
    N = B.modulus
    if len(a) != B.cols:
        raise ValueError("length mismatch")
    stacked = RingMatrix(
        N,
        ((1,) + tuple(e % N for e in a),) + tuple((0,) + row for row in B.rows),
        B.cols + 1,
    )
    h = howell(stacked).H
    for row in h.rows:
        if row[0] == 1:
            return row[1:]
    raise AssertionError("unreachable: leading 1 always survives reduction")


def express_in_span(H: RingMatrix, a: Sequence[int]) -> Optional[Vec]:
    """Coefficients v with v . H = a mod N, for H in Howell form; None if a not in span."""
    N = H.modulus
    rem = [e % N for e in a]
    coeffs = [0] * H.nrows
    for i, row in enumerate(H.rows):
        lead = _leading_index(row)
        if lead == H.cols:
            continue
        g = row[lead]
        if rem[lead] % g:
            return None
        t = rem[lead] // g
        coeffs[i] = t
        if t:
            rem = [(rem[j] - t * row[j]) % N for j in range(H.cols)]
    if any(rem):
        return None
    return tuple(coeffs)


def solve_linear(A: RingMatrix, c: Sequence[int]) -> Optional[AffineSpan]:
    """The full solution set of x . A^T + c = 0 mod N, or None if unsolvable."""
    N = A.modulus
    if len(c) != A.nrows:
        raise ValueError("length mismatch")
    At = RingMatrix(
        N,
        tuple(tuple(A.rows[i][j] for i in range(A.nrows)) for j in range(A.cols)),
        A.nrows,
    )
    hf = howell(At)
    target = tuple((-e) % N for e in c)
    v = express_in_span(hf.H, target)
    if v is None:
        return None
    x0 = hf.U.row_combination(v)
    return AffineSpan(offset=x0, basis=kernel(A))


def span_intersection(A: RingMatrix, B: RingMatrix) -> RingMatrix:
    """Howell basis of Span(A) intersect Span(B)."""
    if A.modulus != B.modulus or A.cols != B.cols:
        raise ValueError("incompatible matrices")
    N = A.modulus
    stacked = RingMatrix(N, A.rows + B.rows, A.cols)
    # Coefficient vectors (a|b) with a.A + b.B = 0; then a.A is in both spans.
    coeff_ker = kernel(
        RingMatrix(
            N,
            tuple(tuple(stacked.rows[i][j] for i in range(stacked.nrows)) for j in range(A.cols)),
            stacked.nrows,
        )
    )
    members = [A.row_combination(k[: A.nrows]) for k in coeff_ker.rows]
    if not members:
        return RingMatrix(N, (), A.cols)
    return howell(RingMatrix(N, tuple(members), A.cols)).H


def affine_intersection(S1: AffineSpan, S2: AffineSpan) -> Optional[AffineSpan]:
    """Intersection of two affine spans; None when empty."""
    if S1.modulus != S2.modulus or len(S1.offset) != len(S2.offset):
        raise ValueError("incompatible spans")
    N = S1.modulus
    cols = len(S1.offset)
    stacked = RingMatrix(N, S1.basis.rows + S2.basis.rows, cols)
    hf = howell(stacked)
    diff = tuple((a - b) % N for a, b in zip(S1.offset, S2.offset))
    v = express_in_span(hf.H, diff)
    if v is None:
        return None
    coeffs = hf.U.row_combination(v)
    u = coeffs[: S1.basis.nrows]
    shift = S1.basis.row_combination(u) if S1.basis.nrows else (0,) * cols
    c = tuple((a - s) % N for a, s in zip(S1.offset, shift))
    basis = span_intersection(S1.basis, S2.basis)
    return AffineSpan(offset=residue(basis, c), basis=basis)


def span_enumerate(M: RingMatrix) -> set[Vec]:
    """All members of Span(M); test helper for small instances."""
    N = M.modulus
    out = {(0,) * M.cols}
    for row in M.rows:
        out = {
            tuple((v[j] + c * row[j]) % N for j in range(M.cols))
            for v in out
            for c in range(N)
        }
    return out
