"""XP operators in unique vector form and their closed-form algebra.

An operator XP_N(p|x|z) is a global phase w^p (w a primitive 2N-th root of
unity) times a tensor of X^x[i] P^z[i] factors with P = diag(1, w^2).  The
unique vector representation keeps p mod 2N, x mod 2 and z mod N.  All group
operations below are closed forms in these components - no matrices anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Bits = tuple[int, ...]


@dataclass(frozen=True)
class XpOperator:
    N: int
    p: int
    x: Bits
    z: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.N < 2:
            raise ValueError("precision must be >= 2")
        if len(self.x) != len(self.z):
            raise ValueError("x and z length mismatch")
        if not (0 <= self.p < 2 * self.N):
            raise ValueError("phase out of range")
        if any(b not in (0, 1) for b in self.x):
            raise ValueError("x must be binary")
        if any(not (0 <= e < self.N) for e in self.z):
            raise ValueError("z out of range")

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def is_diagonal(self) -> bool:
        return not any(self.x)

    def __mul__(self, other: "XpOperator") -> "XpOperator":
        return mul(self, other)

    def __pow__(self, m: int) -> "XpOperator":
        return power(self, m)

    def __str__(self) -> str:
        return format_op(self)


def make(N: int, p: int, x: Sequence[int], z: Sequence[int]) -> XpOperator:
    """Construct the unique vector representation, reducing all components."""
    if len(x) != len(z):
        raise ValueError("x and z length mismatch")
    return XpOperator(N, p % (2 * N), tuple(b % 2 for b in x), tuple(e % N for e in z))


def identity(N: int, n: int) -> XpOperator:
    return XpOperator(N, 0, (0,) * n, (0,) * n)


def antisym(N: int, z: Sequence[int]) -> XpOperator:
    """The antisymmetric operator D_N(z) = XP_N(sum z | 0 | -z)."""
    return make(N, sum(z), (0,) * len(z), [-e for e in z])


def _require_compatible(a: XpOperator, b: XpOperator) -> None:
    if a.N != b.N or a.n != b.n:
        raise ValueError("operators must share precision and qubit count")


def mul(a: XpOperator, b: XpOperator) -> XpOperator:
    """Product a.b via the MUL rule: XP(u_a + u_b) . D_N(2 x_b z_a)."""
    _require_compatible(a, b)
    corr = sum(2 * xb * za for xb, za in zip(b.x, a.z))
    return make(
        a.N,
        a.p + b.p + corr,
        [xa + xb for xa, xb in zip(a.x, b.x)],
        [za + zb - 2 * xb * za for za, zb, xb in zip(a.z, b.z, b.x)],
    )


def square(a: XpOperator) -> XpOperator:
    """SQ rule: a^2 = XP(2p|0|2z) . D_N(2xz); always diagonal."""
    return make(
        a.N,
        2 * a.p + sum(2 * xi * zi for xi, zi in zip(a.x, a.z)),
        (0,) * a.n,
        [2 * zi - 2 * xi * zi for xi, zi in zip(a.x, a.z)],
    )


def power(a: XpOperator, m: int) -> XpOperator:
    """POW rule: a^m = XP(mp | (m mod 2) x | mz) . D_N((m - m mod 2) x z)."""
    if m < 0:
        return inv(power(a, -m))
    par = m % 2
    return make(
        a.N,
        m * a.p + (m - par) * sum(xi * zi for xi, zi in zip(a.x, a.z)),
        [par * xi for xi in a.x],
        [m * zi - (m - par) * xi * zi for xi, zi in zip(a.x, a.z)],
    )


def inv(a: XpOperator) -> XpOperator:
    """INV rule: a^-1 = XP(-p|x|-z) . D_N(-2xz)."""
    return make(
        a.N,
        -a.p - sum(2 * xi * zi for xi, zi in zip(a.x, a.z)),
        a.x,
        [-zi + 2 * xi * zi for xi, zi in zip(a.x, a.z)],
    )


def conj(a: XpOperator, b: XpOperator) -> XpOperator:
    """CONJ rule: a b a^-1 = b . D_N(2 x_a z_b + 2 x_b z_a - 4 x_a x_b z_a)."""
    _require_compatible(a, b)
    w = [
        2 * xa * zb + 2 * xb * za - 4 * xa * xb * za
        for xa, za, xb, zb in zip(a.x, a.z, b.x, b.z)
    ]
    return mul_diag_right(b, antisym(a.N, w))


def comm(a: XpOperator, b: XpOperator) -> XpOperator:
    """COMM rule: the group commutator a b a^-1 b^-1; always diagonal."""
    _require_compatible(a, b)
    w = [
        2 * xa * zb - 2 * xb * za + 4 * xa * xb * za - 4 * xa * xb * zb
        for xa, za, xb, zb in zip(a.x, a.z, b.x, b.z)
    ]
    return antisym(a.N, w)


def mul_diag_right(a: XpOperator, d: XpOperator) -> XpOperator:
    """a . d for diagonal d: components simply add."""
    if not d.is_diagonal:
        raise ValueError("right factor must be diagonal")
    return make(a.N, a.p + d.p, a.x, [za + zd for za, zd in zip(a.z, d.z)])


def apply_basis(a: XpOperator, e: Sequence[int]) -> tuple[int, Bits]:
    """OP rule: a|e> = w^(p + 2 e.z) |e xor x>."""
    if len(e) != a.n:
        raise ValueError("length mismatch")
    phase = (a.p + 2 * sum(ei * zi for ei, zi in zip(e, a.z))) % (2 * a.N)
    return phase, tuple(ei ^ xi for ei, xi in zip(e, a.x))


def degree(a: XpOperator) -> int:
    """Smallest d with a^d proportional to the identity."""
    if a.is_diagonal:
        return lcm(1, *(a.N // gcd(a.N, zi) for zi in a.z))
    return 2 * degree(square(a))


def fundamental_phase(a: XpOperator) -> int:
    """The exponent q with a^degree(a) = w^q I."""
    return power(a, degree(a)).p


@dataclass(frozen=True)
class EigenvalueSet:
    degree: int
    fundamental_phase: int
    exponents: tuple[int, ...]  # eigenvalues are w^m for these m, mod 2N


def eigenvalues(a: XpOperator) -> EigenvalueSet:
    """Possible eigenvalue exponents: m = (q + 2Nj)/d that are integers."""
    d = degree(a)
    q = fundamental_phase(a)
    two_n = 2 * a.N
    exps = []
    for j in range(d):
        num = q + two_n * j
        if num % d == 0:
            exps.append((num // d) % two_n)
    return EigenvalueSet(d, q, tuple(sorted(set(exps))))


def projector_apply(
    a: XpOperator, eigen_exponent: int, e: Sequence[int]
) -> list[tuple[Fraction, int, Bits]]:
    """Image of |e> under the projector onto the w^eigen_exponent eigenspace.

    Returns a formal combination as (weight, phase exponent, bits) terms;
    the actual coefficient of a term is weight * w^phase.
    """
    two_n = 2 * a.N
    if a.is_diagonal:
        phase, _ = apply_basis(a, e)
        if phase == eigen_exponent % two_n:
            return [(Fraction(1), 0, tuple(e))]
        return []
    sq_phase, _ = apply_basis(square(a), e)
    if sq_phase != (2 * eigen_exponent) % two_n:
        return []
    phase, image = apply_basis(a, e)
    return [
        (Fraction(1, 2), 0, tuple(e)),
        (Fraction(1, 2), (phase - eigen_exponent) % two_n, image),
    ]


def rescale(a: XpOperator, factor: Union[int, Fraction]) -> XpOperator:
    """Change precision without changing the matrix.

    Integer k >= 1 upscales N -> kN; Fraction(1, k) downscales when k divides
    N, p and every z component.
    """
    f = Fraction(factor)
    if f >= 1 and f.denominator == 1:
        k = f.numerator
        return make(k * a.N, k * a.p, a.x, [k * zi for zi in a.z])
    if f.numerator == 1:
        k = f.denominator
        if a.N % k or a.p % k or any(zi % k for zi in a.z):
            raise ValueError(f"cannot downscale {format_op(a)} by {k}: components not divisible")
        if a.N // k < 2:
            raise ValueError("downscale would leave precision < 2")
        return make(a.N // k, a.p // k, a.x, [zi // k for zi in a.z])
    raise ValueError("factor must be a positive integer or a reciprocal 1/k")


_OP_RE = re.compile(r"^XP_(\d+)\(\s*(-?\d+)\s*\|\s*([01]*)\s*\|\s*([0-9,\s-]*)\s*\)$")


def format_op(a: XpOperator) -> str:
    """Text form XP_N(p|x|z); z is a digit string for N <= 10, else comma-separated."""
    xs = "".join(str(b) for b in a.x)
    if a.N <= 10:
        zs = "".join(str(e) for e in a.z)
    else:
        zs = ",".join(str(e) for e in a.z)
    return f"XP_{a.N}({a.p}|{xs}|{zs})"


def parse_op(text: str) -> XpOperator:
    """Parse the XP_N(p|x|z) text form (both z syntaxes accepted)."""
    m = _OP_RE.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse operator: {text!r}")
    N = int(m.group(1))
    p = int(m.group(2))
    xs = [int(c) for c in m.group(3)]
    ztext = m.group(4).strip()
    if "," in ztext:
        zs = [int(t) for t in ztext.split(",")]
    else:
        zs = [int(c) for c in ztext]
    if len(xs) != len(zs):
        raise ValueError(f"x and z length mismatch in {text!r}")
    return make(N, p, xs, zs)


def product(ops: Iterable[XpOperator]) -> XpOperator:
    """Left-to-right product of a non-empty sequence of operators."""
    it = iter(ops)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("empty product; use identity(N, n) explicitly") from None
    for op in it:
        acc = mul(acc, op)
    return acc
