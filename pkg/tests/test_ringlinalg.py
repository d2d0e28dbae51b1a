"""Properties of the exact linear algebra over Z_N."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from xpf.ringlinalg import (
    AffineSpan,
    RingMatrix,
    affine_intersection,
    express_in_span,
    howell,
    kernel,
    residue,
    rref2,
    solve_linear,
    span_enumerate,
    span_intersection,
)


@st.composite
def matrices(draw, max_modulus=8, max_rows=4, max_cols=4):
    N = draw(st.integers(2, max_modulus))
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    data = [
        tuple(draw(st.integers(0, N - 1)) for _ in range(cols)) for _ in range(rows)
    ]
    return RingMatrix.make(N, data, cols)


@given(matrices())
@settings(max_examples=120, deadline=None)
def test_howell_is_idempotent(m):
    h = howell(m).H
    assert howell(h).H == h


@given(matrices())
@settings(max_examples=120, deadline=None)
def test_howell_preserves_span(m):
    assert span_enumerate(howell(m).H) == span_enumerate(m)


@given(matrices(), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_howell_unique_per_span(m, rng):
    # A random invertible-ish row shuffle plus added row combinations keeps
    # the span, so the Howell form must be identical.
    rows = list(m.rows)
    rng.shuffle(rows)
    coeffs = [rng.randrange(m.modulus) for _ in rows]
    extra = tuple(
        sum(c * r[j] for c, r in zip(coeffs, rows)) % m.modulus
        for j in range(m.cols)
    )
    m2 = RingMatrix.make(m.modulus, rows + [extra], m.cols)
    assert howell(m2).H == howell(m).H


@given(matrices())
@settings(max_examples=100, deadline=None)
def test_howell_transform_record(m):
    h = howell(m)
    for i, row in enumerate(h.H.rows):
        combo = tuple(
            sum(h.U.rows[i][k] * m.rows[k][j] for k in range(len(m.rows))) % m.modulus
            for j in range(m.cols)
        )
        assert combo == row


@given(matrices())
@settings(max_examples=100, deadline=None)
def test_kernel_annihilates(m):
    k = kernel(m)
    for row in k.rows:
        for mrow in m.rows:
            assert sum(a * b for a, b in zip(row, mrow)) % m.modulus == 0


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_residue_and_express_split_membership(m):
    N = m.modulus
    for v in list(span_enumerate(m))[:20]:
        assert residue(howell(m).H, v) == (0,) * m.cols
        coeffs = express_in_span(howell(m).H, v)
        assert coeffs is not None
        back = tuple(
            sum(c * row[j] for c, row in zip(coeffs, howell(m).H.rows)) % N
            for j in range(m.cols)
        )
        assert back == v


def test_rref2_binary():
    m = RingMatrix.make(2, [(1, 1, 0), (0, 1, 1), (1, 0, 1)], 3)
    r = rref2(m).H
    assert span_enumerate(r) == span_enumerate(m)
    leads = []
    for row in r.rows:
        lead = next(j for j, e in enumerate(row) if e)
        leads.append(lead)
        for other in r.rows:
            if other is not row:
                assert other[lead] == 0
    assert leads == sorted(leads)


def test_solve_linear_solutions_exact():
    rng = random.Random(7)
    for _ in range(50):
        N = rng.choice([2, 4, 6, 8])
        rows, cols = rng.randint(1, 3), rng.randint(1, 3)
        a = RingMatrix.make(
            N, [tuple(rng.randrange(N) for _ in range(cols)) for _ in range(rows)], cols
        )
        c = tuple(rng.randrange(N) for _ in range(rows))
        sol = solve_linear(a, c)
        brute = {
            x
            for x in span_enumerate(RingMatrix.identity(N, cols))
            if all(
                (sum(xi * aij for xi, aij in zip(x, arow)) + ci) % N == 0
                for arow, ci in zip(a.rows, c)
            )
        }
        got = set(sol.enumerate()) if sol is not None else set()
        assert got == brute


def test_span_and_affine_intersection():
    rng = random.Random(11)
    for _ in range(30):
        N = rng.choice([2, 4, 8])
        cols = rng.randint(1, 3)
        mk = lambda: RingMatrix.make(
            N,
            [tuple(rng.randrange(N) for _ in range(cols)) for _ in range(rng.randint(1, 2))],
            cols,
        )
        m1, m2 = mk(), mk()
        inter = span_intersection(m1, m2)
        assert span_enumerate(inter) == span_enumerate(m1) & span_enumerate(m2)
        o1 = tuple(rng.randrange(N) for _ in range(cols))
        o2 = tuple(rng.randrange(N) for _ in range(cols))
        a1, a2 = AffineSpan(o1, m1), AffineSpan(o2, m2)
        meet = affine_intersection(a1, a2)
        brute = set(a1.enumerate()) & set(a2.enumerate())
        if meet is None:
            assert not brute
        else:
            assert set(meet.enumerate()) == brute
