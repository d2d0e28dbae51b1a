"""Brute-force dense reference semantics for small qubit counts.

This module is the ground truth the rest of the package is tested against.
It deliberately shares no algebra with the closed-form implementation: an
operator is expanded directly from its definition as a phase times a tensor
of X and P = diag(1, w^2) factors, and everything downstream is plain
matrix/vector arithmetic.

Phases are tracked as integer exponents of a primitive 2N-th root of unity
wherever possible; complex doubles appear only when states are compared or
projected, with a 1e-12 tolerance at that final step.
"""

from __future__ import annotations

import cmath
import os
from dataclasses import dataclass

import numpy as np

TOL = 1e-12


def _max_qubits() -> int:
    return int(os.environ.get("XPF_MAX_QUBITS_ORACLE", "10"))


class OracleSizeError(Exception):
    """Raised when a dense computation would exceed the qubit bound."""


def _check_size(n: int) -> None:
    if n > _max_qubits():
        raise OracleSizeError(f"oracle bounded to {_max_qubits()} qubits, got {n}")


@dataclass(frozen=True)
class PermPhaseMatrix:
    """A unitary of the form: basis state e maps to phase_root^exponents[e] |perm[e]>.

    phase_root is a primitive root exponent base 2N; exponents are integers
    mod 2N.  This represents any XP operator exactly.
    """

    two_n: int  # phase exponents live in Z_{two_n}
    perm: np.ndarray  # perm[e] = image basis index
    exponents: np.ndarray  # exponents[e] = phase exponent on |e>

    def to_dense(self) -> np.ndarray:
        dim = len(self.perm)
        w = cmath.exp(1j * cmath.pi * 2 / self.two_n)
        m = np.zeros((dim, dim), dtype=complex)
        for e in range(dim):
            m[self.perm[e], e] = w ** int(self.exponents[e])
        return m

    def compose(self, other: "PermPhaseMatrix") -> "PermPhaseMatrix":
        """self applied after other (matrix product self @ other)."""
        if self.two_n != other.two_n:
            raise ValueError("phase-root mismatch")
        perm = self.perm[other.perm]
        exponents = (other.exponents + self.exponents[other.perm]) % self.two_n
        return PermPhaseMatrix(self.two_n, perm, exponents)


def matrix_of(N: int, p: int, x: tuple[int, ...], z: tuple[int, ...]) -> PermPhaseMatrix:
    """Dense semantics of XP_N(p|x|z), built from its tensor-factor definition.

    X flips a bit; P applies w^2 to |1>; the global phase is w^p.  The matrix
    is assembled factor by factor rather than via any closed-form identity.
    """
    n = len(x)
    _check_size(n)
    dim = 1 << n
    two_n = 2 * N
    perm = np.arange(dim)
    exponents = np.full(dim, p % two_n, dtype=np.int64)
    for q in range(n):
        bit = 1 << (n - 1 - q)  # qubit 0 is the leftmost position
        if z[q] % N:
            for e in range(dim):
                if e & bit:
                    exponents[e] = (exponents[e] + 2 * z[q]) % two_n
        if x[q] % 2:
            perm = perm ^ bit
    return PermPhaseMatrix(two_n, perm, exponents % two_n)


@dataclass
class DenseState:
    """An unnormalised state vector on n qubits."""

    n: int
    amplitudes: np.ndarray

    @classmethod
    def zeros(cls, n: int) -> "DenseState":
        _check_size(n)
        return cls(n, np.zeros(1 << n, dtype=complex))

    @classmethod
    def from_terms(cls, n: int, two_n: int, terms) -> "DenseState":
        """Build a state from (phase exponent, bit tuple) pairs."""
        st = cls.zeros(n)
        w = cmath.exp(1j * cmath.pi * 2 / two_n)
        for phase, bits in terms:
            idx = int("".join(str(b) for b in bits), 2) if bits else 0
            st.amplitudes[idx] += w ** int(phase)
        return st

    def apply(self, m: PermPhaseMatrix) -> "DenseState":
        w = cmath.exp(1j * cmath.pi * 2 / m.two_n)
        out = np.zeros_like(self.amplitudes)
        phases = w ** m.exponents.astype(float)
        np.add.at(out, m.perm, self.amplitudes * phases)
        return DenseState(self.n, out)

    def norm2(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def isclose(self, other: "DenseState", up_to_global_phase: bool = False) -> bool:
        a, b = self.amplitudes, other.amplitudes
        na, nb = np.linalg.norm(a), np.linalg.norm(b)
        if na < TOL and nb < TOL:
            return True
        if na < TOL or nb < TOL:
            return False
        a = a / na
        b = b / nb
        if up_to_global_phase:
            ov = np.vdot(b, a)
            if abs(ov) < TOL:
                return False
            a = a * (abs(ov) / ov)
        return bool(np.allclose(a, b, atol=1e-10, rtol=0))


def overlap(s1: DenseState, s2: DenseState) -> complex:
    return complex(np.vdot(s1.amplitudes, s2.amplitudes))


def fixes(m: PermPhaseMatrix, state: DenseState) -> bool:
    """True iff m(state) equals state exactly (not just up to phase)."""
    return state.apply(m).isclose(state)


def eigenvalue_exponents(m: PermPhaseMatrix) -> set[int]:
    """Exponents k (mod two_n) such that w^k is an eigenvalue of m."""
    dense = m.to_dense()
    vals = np.linalg.eigvals(dense)
    w = cmath.exp(1j * cmath.pi * 2 / m.two_n)
    out = set()
    for v in vals:
        for k in range(m.two_n):
            if abs(v - w ** k) < 1e-8:
                out.add(k)
                break
        else:
            raise AssertionError(f"eigenvalue {v} is not a 2N-th root of unity")
    return out


def project(m: PermPhaseMatrix, eigen_exponent: int, state: DenseState) -> DenseState:
    """Orthogonal projection of state onto the w^eigen_exponent eigenspace of m."""
    d = m.perm.shape[0]
    dense = m.to_dense()
    w = cmath.exp(1j * cmath.pi * 2 / m.two_n)
    lam = w ** eigen_exponent
    # Average over the cyclic group generated by (m / lambda): for a unitary of
    # finite order d0, P = (1/d0) sum_k (m/lam)^k.
    acc = np.eye(d, dtype=complex)
    term = np.eye(d, dtype=complex)
    step = dense / lam
    order = 1
    while True:
        term = term @ step
        if np.allclose(term, np.eye(d), atol=1e-9):
            break
        acc = acc + term
        order += 1
        if order > 4 * m.two_n * d:
            raise AssertionError("operator order too large for projector averaging")
    proj = acc / order
    return DenseState(state.n, proj @ state.amplitudes)


def outcome_probability(m: PermPhaseMatrix, eigen_exponent: int, state: DenseState) -> float:
    """Pr(outcome) for measuring m on the normalised version of state."""
    n2 = state.norm2()
    if n2 < TOL:
        raise ValueError("zero state")
    return project(m, eigen_exponent, state).norm2() / n2
