#!/usr/bin/env python3
"""Full pipeline report for the two 7-qubit reference codes.

Prints, for each code: canonical generators, orbit representatives,
codewords, the logical identity group, logical operators, the diagonal
action basis, and the code classification.
"""

from xpf.codespace import XpCode
from xpf.logical import classify_code, logical_group
from xpf.xpop import format_op, make

CODES = {
    "code 1 (XP-regular)": [
        make(8, 8, (0,) * 7, (6, 5, 5, 4, 4, 4, 4)),
        make(8, 7, (1,) * 7, (1, 2, 4, 1, 2, 3, 4)),
        make(8, 1, (1, 1, 1, 0, 0, 0, 0), (3, 1, 3, 4, 4, 4, 4)),
    ],
    "code 2 (non-XP-regular)": [
        make(8, 0, (0,) * 7, (1, 3, 2, 2, 2, 2, 4)),
        make(8, 12, (1,) * 7, (1, 2, 3, 4, 5, 6, 7)),
    ],
}


def section(title, items):
    print(f"  {title}:")
    for it in items:
        print(f"    {it}")


def main() -> None:
    for name, gens in CODES.items():
        code = XpCode.from_generators(gens)
        data = logical_group(code)
        print(f"== {name} ==")
        print(f"  class: {classify_code(code.decomposition)}, dim {code.dim}")
        section("S_X", map(format_op, code.S_X))
        section("S_Z", map(format_op, code.S_Z))
        section("E_m", ("".join(map(str, m)) for m in code.orbit_reps))
        section(
            "codewords",
            (
                " + ".join(
                    f"w^{p}|{''.join(map(str, e))}>" if p else f"|{''.join(map(str, e))}>"
                    for p, e in kw.terms
                )
                for kw in code.codewords
            ),
        )
        section("M_X", map(format_op, data.M_X))
        section("M_Z", map(format_op, data.M_Z))
        section("L_Z", map(format_op, data.L_Z))
        section("L_X", map(format_op, data.L_X_ops))
        section("F_D", (str(tuple(r)) for r in data.F_D.rows))
        print()


if __name__ == "__main__":
    main()
