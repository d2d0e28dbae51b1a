#!/usr/bin/env python3
"""Simulate a sequence of single-qubit Z measurements on a code in core form.

Walks through the efficient diagonal-Pauli update rule, sampling an outcome
at each step and printing the updated core.
"""

import random
import sys

from xpf import measure
from xpf.codespace import XpCode
from xpf.logical import logical_group
from xpf.xpop import format_op, make


def main() -> None:
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
    rng = random.Random(seed)
    code = XpCode.from_generators(
        [
            make(8, 0, (0,) * 7, (1, 3, 2, 2, 2, 2, 4)),
            make(8, 12, (1,) * 7, (1, 2, 3, 4, 5, 6, 7)),
        ]
    )
    data = logical_group(code)
    core = measure.core_form(code, data)
    print("initial core:")
    _show(core)
    for qubit in rng.sample(range(7), 4):
        z = tuple(1 if j == qubit else 0 for j in range(7))
        plus, minus = measure.measure_diagonal_pauli(core, z, m_z=data.M_Z)
        pick = rng.random()
        out = plus if pick < float(plus.probability) else minus
        if out.post_core is None:
            out = minus if out is plus else plus
        print(
            f"measure Z on qubit {qubit}: Pr(+1)={plus.probability} "
            f"Pr(-1)={minus.probability} -> outcome {out.eigenvalue:+d}"
        )
        core = out.post_core
        _show(core)


def _show(core) -> None:
    print("  E_q:", " ".join("".join(map(str, q)) for q in core.E_q))
    print("  S_X:", ", ".join(format_op(a) for a in core.S_X) or "(none)")
    print("  L_X:", ", ".join(format_op(a) for a in core.L_X) or "(none)")


if __name__ == "__main__":
    main()
