#!/usr/bin/env python3
"""Eigenspace dimensions of random diagonal XP operators.

Illustrates how +1 eigenspace dimensions of diagonal operators at a given
precision spread over values that are not powers of two, unlike in the
Pauli formalism.

Usage: eigenspace_dimensions.py [N] [n] [count]
"""

import random
import sys
from collections import Counter

from xpf.codespace import zsupport_exhaustive
from xpf.xpop import format_op, make


def main() -> None:
    N = int(sys.argv[1]) if len(sys.argv) > 1 else 8
    n = int(sys.argv[2]) if len(sys.argv) > 2 else 7
    count = int(sys.argv[3]) if len(sys.argv) > 3 else 200
    rng = random.Random(0)
    dims = Counter()
    samples = {}
    for _ in range(count):
        op = make(N, 0, (0,) * n, tuple(rng.randrange(N) for _ in range(n)))
        d = len(zsupport_exhaustive([op], N, n))
        dims[d] += 1
        samples.setdefault(d, op)
    print(f"+1 eigenspace dimensions for {count} random XP_{N}(0|0|z) on {n} qubits")
    for d in sorted(dims):
        print(f"  dim {d:4d}  x{dims[d]:4d}   e.g. {format_op(samples[d])}")


if __name__ == "__main__":
    main()
