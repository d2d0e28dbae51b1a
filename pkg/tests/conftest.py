import random

import pytest

from xpf.codespace import XpCode
from xpf.logical import logical_group
from xpf.xpop import make


def code1() -> XpCode:
    """7-qubit precision-8 code with a 4-dimensional codespace."""
    return XpCode.from_generators(
        [
            make(8, 8, (0,) * 7, (6, 5, 5, 4, 4, 4, 4)),
            make(8, 7, (1,) * 7, (1, 2, 4, 1, 2, 3, 4)),
            make(8, 1, (1, 1, 1, 0, 0, 0, 0), (3, 1, 3, 4, 4, 4, 4)),
        ]
    )


def code2() -> XpCode:
    """7-qubit precision-8 non-XP-regular code (|E_q| = 4)."""
    return XpCode.from_generators(
        [
            make(8, 0, (0,) * 7, (1, 3, 2, 2, 2, 2, 4)),
            make(8, 12, (1,) * 7, (1, 2, 3, 4, 5, 6, 7)),
        ]
    )


@pytest.fixture(scope="session")
def code1_fix() -> XpCode:
    return code1()


@pytest.fixture(scope="session")
def code2_fix() -> XpCode:
    return code2()


@pytest.fixture(scope="session")
def code1_logical(code1_fix):
    return logical_group(code1_fix)


@pytest.fixture(scope="session")
def code2_logical(code2_fix):
    return logical_group(code2_fix)


def random_op(rng: random.Random, N: int, n: int):
    return make(
        N,
        rng.randrange(2 * N),
        tuple(rng.randrange(2) for _ in range(n)),
        tuple(rng.randrange(N) for _ in range(n)),
    )
