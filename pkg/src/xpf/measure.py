"""Measurement of XP operators on XP codes.

Diagonal Pauli measurements have an efficient stabiliser-style update rule
acting on the core form of a code (core ``E_q`` plus the non-diagonal
generators and logical X operators).  Measurements of general diagonal and
non-diagonal XP operators are handled by direct enumeration over the
Z-support of the codewords; their post-measurement states need not be XP
codespaces, which we flag explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import xpop
from .codespace import Bits, CoreForm, OrbitForm, XpCode, orbit_apply
from .logical import LogicalGroupData, logical_group, logical_identity, reduce_by_identities
from .xpgroup import generator_product
from .xpop import XpOperator


def parity(x: Sequence[int], z: Sequence[int]) -> int:
    """Binary parity of x with respect to z: x.z mod 2."""
    return sum(a * b for a, b in zip(x, z)) % 2


# ---------------------------------------------------------------------------
# Core form
# ---------------------------------------------------------------------------


def core_form(code: XpCode, data: Optional[LogicalGroupData] = None) -> CoreForm:
    """Compact (E_q, S_X, L_X) description of a code.

    Operators are reduced modulo the diagonal logical identities, which makes
    the generators unique and matches the convention used in reports.
    """
    if data is None:
        data = logical_group(code)
    m_z = data.M_Z
    s_x = tuple(reduce_by_identities(a, m_z) for a in code.S_X)
    l_x = tuple(reduce_by_identities(a, m_z) for a in data.L_X_ops)
    return CoreForm(code.N, code.decomposition.E_q, s_x, l_x)


def core_codewords(core: CoreForm, n: int) -> tuple[OrbitForm, ...]:
    """Regenerate the codewords of a code given in core form."""
    l_rows = [a.x for a in core.L_X]
    reps: list[Bits] = []
    for v in range(1 << len(l_rows)):
        shift = [0] * n
        for i, row in enumerate(l_rows):
            if (v >> (len(l_rows) - 1 - i)) & 1:
                shift = [a ^ b for a, b in zip(shift, row)]
        for q in core.E_q:
            reps.append(tuple(a ^ b for a, b in zip(q, shift)))
    return tuple(orbit_apply(core.S_X, m, core.N, n) for m in reps)


def rescale_core(core: CoreForm, k: int) -> CoreForm:
    """Raise the precision of every core-form operator by an integer factor."""
    return CoreForm(
        core.N * k,
        core.E_q,
        tuple(xpop.rescale(a, k) for a in core.S_X),
        tuple(xpop.rescale(a, k) for a in core.L_X),
    )


# ---------------------------------------------------------------------------
# Diagonal Pauli measurement (core-form update rules)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PauliOutcome:
    """One branch of a diagonal Pauli measurement."""

    eigenvalue: int  # +1 or -1
    probability: Fraction
    post_core: Optional[CoreForm]  # None when the branch has probability 0


def measure_diagonal_pauli(
    core: CoreForm, z: Sequence[int], m_z: Optional[Sequence[XpOperator]] = None
) -> tuple[PauliOutcome, PauliOutcome]:
    """Measure the diagonal Pauli with Z-support z on a code in core form.

    Returns the (+1, -1) outcome branches.  The update is the stabiliser
    rule generalised by the parity function: at most one non-diagonal
    operator anticommutes irreparably and is removed, every other
    anticommuting operator is multiplied by it, and the core doubles.

    ``m_z`` optionally supplies the diagonal logical identities used to keep
    replaced operators in reduced form; it is recomputed from the core
    otherwise.
    """
    n = len(z)
    if core.N % 2:
        core = rescale_core(core, 2)
    s_x, l_x, e_q = list(core.S_X), list(core.L_X), list(core.E_q)

    # Step 1: remove an anticommuting operator, preferring stabilisers.
    b = None
    for pool in (s_x, l_x):
        for a in pool:
            if parity(a.x, z):
                b = a
                pool.remove(a)
                break
        if b is not None:
            break
    if b is not None:
        if m_z is None:
            m_z, _ = logical_identity(core_codewords(core, n), core.N, n)
        s_x = [_fix_anticommuting(a, b, z, m_z) for a in s_x]
        l_x = [_fix_anticommuting(a, b, z, m_z) for a in l_x]
        e_q = sorted(set(e_q) | {tuple(q ^ x for q, x in zip(e, b.x)) for e in e_q})

    # Step 2: split the core by parity.
    plus = [e for e in e_q if parity(e, z) == 0]
    minus = [e for e in e_q if parity(e, z) == 1]
    total = len(e_q)

    def outcome(sign: int, part: list[Bits]) -> PauliOutcome:
        if not part:
            return PauliOutcome(sign, Fraction(0), None)
        post = CoreForm(core.N, tuple(part), tuple(s_x), tuple(l_x))
        return PauliOutcome(sign, Fraction(len(part), total), post)

    return outcome(+1, plus), outcome(-1, minus)


def _fix_anticommuting(
    a: XpOperator, b: XpOperator, z: Sequence[int], m_z: Sequence[XpOperator]
) -> XpOperator:
    if parity(a.x, z) == 0:
        return a
    return reduce_by_identities(xpop.mul(b, a), m_z)


# ---------------------------------------------------------------------------
# General XP operator measurement (codeword enumeration)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiagonalOutcome:
    """One eigenvalue branch when measuring a diagonal XP operator."""

    exponent: int  # eigenvalue is w^exponent, w = exp(i*pi/N)
    probability: Fraction
    post_codewords: tuple[OrbitForm, ...]  # codewords truncated to the branch
    xp_representable: bool  # False when the branch is not an XP codespace


def measure_diagonal(
    codewords: Sequence[OrbitForm], a: XpOperator
) -> tuple[DiagonalOutcome, ...]:
    """Outcome distribution of a diagonal XP operator on the even code mix.

    Pr(w^m) = |E^m| / |E| where E^m collects the Z-support basis vectors on
    which the operator acts with phase m.  Branches of probability zero are
    omitted.  Post-measurement branches whose codeword supports are not all
    powers of two cannot be the codewords of any XP code and are flagged.
    """
    if not a.is_diagonal:
        raise ValueError("operator must be diagonal")
    total = sum(len(kw.terms) for kw in codewords)
    out = []
    for m in xpop.eigenvalues(a).exponents:
        kept: list[OrbitForm] = []
        count = 0
        for kw in codewords:
            terms = tuple(
                (ph, e) for ph, e in kw.terms if xpop.apply_basis(a, e)[0] == m
            )
            count += len(terms)
            if terms:
                kept.append(OrbitForm(kw.N, terms))
        if count == 0:
            continue
        representable = all(len(kw.terms).bit_count() == 1 for kw in kept)
        out.append(
            DiagonalOutcome(m, Fraction(count, total), tuple(kept), representable)
        )
    return tuple(out)


def _rational_cos(k: int, N: int) -> Optional[Fraction]:
    """cos(k*pi/N) when it is rational (Niven: only 0, +-1/2, +-1), else None."""
    t = Fraction(k % (2 * N), N)  # cos(t*pi), 0 <= t < 2
    table = {
        Fraction(0): Fraction(1),
        Fraction(1): Fraction(-1),
        Fraction(1, 2): Fraction(0),
        Fraction(3, 2): Fraction(0),
        Fraction(1, 3): Fraction(1, 2),
        Fraction(5, 3): Fraction(1, 2),
        Fraction(2, 3): Fraction(-1, 2),
        Fraction(4, 3): Fraction(-1, 2),
    }
    return table.get(t)


@dataclass(frozen=True)
class NondiagonalOutcome:
    """Pr(+1) when measuring a non-diagonal XP operator with eigenvalues +-1.

    When a stabiliser product B shares the measured operator's X component,
    Pr(+1) = (1/2|E|) * sum over E^+- of (1 + cos(q_e * pi / N)) with integer
    exponents q_e; otherwise Pr(+1) = |E^+-| / (2|E|).  ``exact`` is None
    when some cosine term is irrational.
    """

    N: int
    support_size: int  # |E|
    square_fixed: int  # |E^+-|, vectors with A^2|e> = |e>
    cos_exponents: Optional[tuple[int, ...]]  # q_e terms, None when B absent

    @property
    def exact(self) -> Optional[Fraction]:
        if self.cos_exponents is None:
            return Fraction(self.square_fixed, 2 * self.support_size)
        acc = Fraction(0)
        for k in self.cos_exponents:
            c = _rational_cos(k, self.N)
            if c is None:
                return None
            acc += 1 + c
        return acc / (2 * self.support_size)

    @property
    def value(self) -> float:
        if self.cos_exponents is None:
            return self.square_fixed / (2 * self.support_size)
        return sum(
            1 + math.cos(k * math.pi / self.N) for k in self.cos_exponents
        ) / (2 * self.support_size)

    def __str__(self) -> str:
        ex = self.exact
        if ex is not None:
            return str(ex)
        terms = " + ".join(
            f"(1+cos({k}*pi/{self.N}))" for k in self.cos_exponents
        )
        return f"({terms}) / {2 * self.support_size}"


def prob_nondiagonal(
    codewords: Sequence[OrbitForm], s_x: Sequence[XpOperator], a: XpOperator
) -> NondiagonalOutcome:
    """Probability of outcome +1 when measuring a non-diagonal XP operator.

    The operator must admit +1 as an eigenvalue.  ``s_x`` are the canonical
    non-diagonal generators of the code being measured.
    """
    if a.is_diagonal:
        raise ValueError("operator must be non-diagonal")
    if 0 not in xpop.eigenvalues(a).exponents:
        raise ValueError("operator does not have +1 as an eigenvalue")
    support = sorted({e for kw in codewords for _, e in kw.terms})
    sq = xpop.square(a)
    fixed = [e for e in support if xpop.apply_basis(sq, e) == (0, e)]

    b = _stabiliser_with_x(s_x, a.x)
    if b is None:
        return NondiagonalOutcome(a.N, len(support), len(fixed), None)
    c = xpop.make(
        a.N, b.p - a.p, (0,) * len(a.x), [zm - zi for zm, zi in zip(b.z, a.z)]
    )
    q_es = tuple(xpop.apply_basis(c, e)[0] for e in fixed)
    return NondiagonalOutcome(a.N, len(support), len(fixed), q_es)


def _stabiliser_with_x(
    s_x: Sequence[XpOperator], x: Sequence[int]
) -> Optional[XpOperator]:
    """A product of the given generators whose X component equals x, if any."""
    if not s_x:
        return None
    # Canonical generators have X components in reduced echelon form, so
    # greedy elimination on leading indices finds the product when it exists.
    prod = None
    rem = list(x)
    for a in s_x:
        lead = next((j for j, e in enumerate(a.x) if e), None)
        if lead is not None and rem[lead]:
            prod = a if prod is None else xpop.mul(prod, a)
            rem = [p ^ q for p, q in zip(rem, a.x)]
    if not any(rem) and prod is not None:
        return prod
    return _search_product(s_x, x)


def _search_product(
    s_x: Sequence[XpOperator], x: Sequence[int]
) -> Optional[XpOperator]:
    for u in range(1, 1 << len(s_x)):
        bits = [(u >> (len(s_x) - 1 - i)) & 1 for i in range(len(s_x))]
        cand = generator_product(list(s_x), bits)
        if tuple(cand.x) == tuple(x):
            return cand
    return None
