"""Command-line front end for the XP stabiliser formalism library.

Commands operate on plain-text code files: a header line ``N=<int> n=<int>``
followed by one ``XP_N(p|x|z)`` generator per line; ``#`` starts a comment.
Every command supports ``--format text`` (default, human-readable notation)
and ``--format json`` (structured, deterministic ordering).

Exit codes: 0 success, 1 usage error (or failed check), 2 empty codespace,
3 size-limit refusal.
"""

from __future__ import annotations

import json
import os
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

import click

from . import measure as measure_mod
from . import oracle, states, xpop
from .codespace import (
    Bits,
    CoreForm,
    OrbitForm,
    SearchBudgetExceeded,
    SizeLimitExceeded,
    XpCode,
)
from .logical import (
    NotLogicalError,
    classify_code,
    classify_operator,
    logical_group,
    phase_vector,
    reed_muller,
)
from .xpop import XpOperator, format_op, parse_op

EXIT_USAGE = 1
EXIT_EMPTY = 2
EXIT_SIZE = 3

_HEADER_RE = re.compile(r"^N\s*=\s*(\d+)\s+n\s*=\s*(\d+)$")


def _fail(code: int, message: str) -> "NoReturn":  # noqa: F821
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _max_qubits() -> int:
    return int(os.environ.get("XPF_MAX_QUBITS", "24"))


def _oracle_max_qubits() -> int:
    return int(os.environ.get("XPF_MAX_QUBITS", "10"))


def load_code_file(path: str) -> XpCode:
    """Parse a code file into an XpCode, reporting errors with line numbers."""
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        _fail(EXIT_USAGE, str(exc))
    header: Optional[tuple[int, int]] = None
    gens: list[XpOperator] = []
    for lineno, raw in enumerate(lines, 1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        if header is None:
            m = _HEADER_RE.match(text)
            if not m:
                _fail(EXIT_USAGE, f"{path}:{lineno}: expected header 'N=<int> n=<int>'")
            header = (int(m.group(1)), int(m.group(2)))
            continue
        try:
            op = parse_op(text)
        except ValueError as exc:
            _fail(EXIT_USAGE, f"{path}:{lineno}: {exc}")
        if op.N != header[0] or len(op.x) != header[1]:
            _fail(
                EXIT_USAGE,
                f"{path}:{lineno}: operator does not match header "
                f"N={header[0]} n={header[1]}",
            )
        gens.append(op)
    if header is None:
        _fail(EXIT_USAGE, f"{path}: missing header line 'N=<int> n=<int>'")
    if not gens:
        _fail(EXIT_USAGE, f"{path}: no generators")
    if header[1] > _max_qubits():
        _fail(EXIT_SIZE, f"n={header[1]} exceeds XPF_MAX_QUBITS={_max_qubits()}")
    return XpCode.from_generators(gens)


def _checked_code(path: str) -> XpCode:
    code = load_code_file(path)
    try:
        q = code.empty_codespace_phase()
        if q is not None:
            _fail(EXIT_EMPTY, f"empty codespace: w^{q} I in <S_Z>")
        if not code.orbit_reps:
            _fail(EXIT_EMPTY, "empty codespace: no orbit representatives")
    except (SearchBudgetExceeded, SizeLimitExceeded) as exc:
        _fail(EXIT_SIZE, str(exc))
    return code


def _parse_operator_arg(text: str, code: Optional[XpCode] = None) -> XpOperator:
    try:
        op = parse_op(text.strip())
    except ValueError as exc:
        _fail(EXIT_USAGE, str(exc))
    if code is not None and (op.N != code.N or len(op.x) != code.n):
        if len(op.x) != code.n:
            _fail(EXIT_USAGE, f"operator acts on {len(op.x)} qubits, code has {code.n}")
    return op


def _bits(b: Bits) -> str:
    return "".join(str(v) for v in b)


def _codeword_str(kw: OrbitForm) -> str:
    parts = []
    for p, e in kw.terms:
        parts.append(f"|{_bits(e)}>" if p == 0 else f"w^{p}|{_bits(e)}>")
    return " + ".join(parts)


def _emit(fmt: str, text_lines: Sequence[str], payload: dict) -> None:
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            click.echo(line)


_FORMAT = click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
    help="Output mode.",
)


@click.group()
def main() -> None:
    """Exact computations in the XP stabiliser formalism."""


@main.command()
@click.argument("file", type=click.Path())
@_FORMAT
def canon(file: str, fmt: str) -> None:
    """Canonical generators of the code's stabiliser group."""
    code = _checked_code(file)
    lines = ["S_X:"]
    lines += [f"  {format_op(a)}" for a in code.S_X] or ["  (none)"]
    lines.append("S_Z:")
    lines += [f"  {format_op(a)}" for a in code.S_Z] or ["  (none)"]
    _emit(
        fmt,
        lines,
        {
            "N": code.N,
            "n": code.n,
            "S_X": [format_op(a) for a in code.S_X],
            "S_Z": [format_op(a) for a in code.S_Z],
        },
    )


@main.command()
@click.argument("file", type=click.Path())
@_FORMAT
def codewords(file: str, fmt: str) -> None:
    """Orbit representatives and codewords of the code."""
    code = _checked_code(file)
    try:
        kws = code.codewords
    except (SearchBudgetExceeded, SizeLimitExceeded) as exc:
        _fail(EXIT_SIZE, str(exc))
    lines = ["E_m:"]
    lines += [f"  {_bits(m)}" for m in code.orbit_reps]
    lines.append("codewords:")
    for i, kw in enumerate(kws):
        lines.append(f"  |k_{i}> = {_codeword_str(kw)}")
    _emit(
        fmt,
        lines,
        {
            "N": code.N,
            "n": code.n,
            "E_m": [_bits(m) for m in code.orbit_reps],
            "codewords": [
                [{"phase": p, "e": _bits(e)} for p, e in kw.terms] for kw in kws
            ],
        },
    )


@main.command()
@click.argument("file", type=click.Path())
@_FORMAT
def logical(file: str, fmt: str) -> None:
    """Logical identity group, logical operators and diagonal action basis."""
    code = _checked_code(file)
    try:
        data = logical_group(code)
    except (SearchBudgetExceeded, SizeLimitExceeded) as exc:
        _fail(EXIT_SIZE, str(exc))
    cls = classify_code(code.decomposition)
    sections = [
        ("M_X", [format_op(a) for a in data.M_X]),
        ("M_Z", [format_op(a) for a in data.M_Z]),
        ("L_Z", [format_op(a) for a in data.L_Z]),
        ("L_X", [format_op(a) for a in data.L_X_ops]),
        ("F_D", [str(tuple(r)) for r in data.F_D.rows]),
        ("L_D", [format_op(a) for a in data.L_D]),
    ]
    lines = [f"class: {cls}"]
    for name, items in sections:
        lines.append(f"{name}:")
        lines += [f"  {s}" for s in items] or ["  (none)"]
    if data.L_X_failures:
        lines.append("L_X failures (no XP logical X for these X-components):")
        lines += [f"  {_bits(x)}" for x in data.L_X_failures]
    _emit(
        fmt,
        lines,
        {
            "class": cls,
            "M_X": [format_op(a) for a in data.M_X],
            "M_Z": [format_op(a) for a in data.M_Z],
            "L_Z": [format_op(a) for a in data.L_Z],
            "L_X": [format_op(a) for a in data.L_X_ops],
            "L_X_failures": [_bits(x) for x in data.L_X_failures],
            "F_D": [list(r) for r in data.F_D.rows],
            "L_D": [format_op(a) for a in data.L_D],
        },
    )


@main.command()
@click.argument("file", type=click.Path())
@click.argument("operator")
@_FORMAT
def action(file: str, operator: str, fmt: str) -> None:
    """Phase vector and classification of an operator's logical action."""
    code = _checked_code(file)
    op = _parse_operator_arg(operator, code)
    if op.N != code.N:
        _fail(EXIT_USAGE, f"operator precision {op.N} does not match code precision {code.N}")
    try:
        pv = phase_vector(op, code.codewords)
    except NotLogicalError:
        _fail(EXIT_USAGE, f"{format_op(op)} does not preserve the codespace")
    cls = classify_operator(op, code)
    lines = [
        f"f: {tuple(pv.f)}",
        f"permutation: {tuple(pv.pi)}",
        f"class: {cls}",
    ]
    _emit(
        fmt,
        lines,
        {"f": list(pv.f), "permutation": list(pv.pi), "class": cls},
    )


def _core_payload(core: CoreForm) -> dict:
    return {
        "E_q": [_bits(q) for q in core.E_q],
        "S_X": [format_op(a) for a in core.S_X],
        "L_X": [format_op(a) for a in core.L_X],
    }


def _core_lines(core: CoreForm, indent: str = "  ") -> list[str]:
    lines = [f"{indent}E_q: " + " ".join(_bits(q) for q in core.E_q)]
    lines.append(f"{indent}S_X: " + (", ".join(format_op(a) for a in core.S_X) or "(none)"))
    lines.append(f"{indent}L_X: " + (", ".join(format_op(a) for a in core.L_X) or "(none)"))
    return lines


@main.command()
@click.argument("file", type=click.Path())
@click.argument("operator")
@click.option(
    "--diag-pauli",
    is_flag=True,
    help="Use the efficient core-form update rule (operator must be XP_2(0|0|z)).",
)
@_FORMAT
def measure(file: str, operator: str, diag_pauli: bool, fmt: str) -> None:
    """Measure an XP operator on the even mixture of the codewords."""
    code = _checked_code(file)
    op = _parse_operator_arg(operator, code)
    if diag_pauli:
        if op.N != 2 or op.p != 0 or any(op.x):
            _fail(EXIT_USAGE, "--diag-pauli requires an operator of the form XP_2(0|0|z)")
        core = measure_mod.core_form(code)
        plus, minus = measure_mod.measure_diagonal_pauli(core, op.z)
        lines, branches = [], []
        for out in (plus, minus):
            sign = "+1" if out.eigenvalue > 0 else "-1"
            lines.append(f"Pr({sign}) = {out.probability}")
            branch = {"eigenvalue": sign, "probability": str(out.probability)}
            if out.post_core is not None:
                lines.append(f"post-measurement core ({sign}):")
                lines += _core_lines(out.post_core)
                branch["post_core"] = _core_payload(out.post_core)
            branches.append(branch)
        _emit(fmt, lines, {"mode": "diag-pauli", "outcomes": branches})
        return
    if op.N != code.N:
        _fail(EXIT_USAGE, f"operator precision {op.N} does not match code precision {code.N}")
    kws = code.codewords
    if op.is_diagonal:
        outs = measure_mod.measure_diagonal(kws, op)
        lines, branches = [], []
        for out in outs:
            lines.append(f"Pr(w^{out.exponent}) = {out.probability}")
            e_sets = [_bits(e) for kw in out.post_codewords for _, e in kw.terms]
            lines.append(f"  E^(w^{out.exponent}) = {{{', '.join(e_sets)}}}")
            if not out.xp_representable:
                lines.append("  post-measurement state is not an XP codespace")
            branches.append(
                {
                    "eigenvalue_exponent": out.exponent,
                    "probability": str(out.probability),
                    "support": e_sets,
                    "xp_representable": out.xp_representable,
                }
            )
        _emit(fmt, lines, {"mode": "diagonal", "outcomes": branches})
        return
    try:
        out = measure_mod.prob_nondiagonal(kws, code.S_X, op)
    except ValueError as exc:
        _fail(EXIT_USAGE, str(exc))
    exact = out.exact
    lines = [f"Pr(+1) = {out}"]
    if exact is None:
        lines.append(f"Pr(+1) ~ {out.value:.12g}")
    _emit(
        fmt,
        lines,
        {
            "mode": "nondiagonal",
            "probability_exact": None if exact is None else str(exact),
            "probability": out.value,
            "expression": str(out),
        },
    )


def _print_code_file(N: int, n: int, gens: Sequence[XpOperator], fmt: str) -> None:
    _emit(
        fmt,
        [f"N={N} n={n}"] + [format_op(a) for a in gens],
        {"N": N, "n": n, "generators": [format_op(a) for a in gens]},
    )


@main.command()
@click.option("--whg-to-xp", "direction", flag_value="whg-to-xp")
@click.option("--xp-to-whg", "direction", flag_value="xp-to-whg")
@click.option("--optimise", is_flag=True, help="Qubit-efficient embedding (whg-to-xp only).")
@click.argument("file", type=click.Path())
@_FORMAT
def convert(direction: Optional[str], optimise: bool, file: str, fmt: str) -> None:
    """Convert between weighted hypergraph states and XP codes.

    For --whg-to-xp the input file holds a header ``r=<int>`` followed by one
    ``CP(p/q, v)`` edge per line.  For --xp-to-whg the input is a code file;
    the phase function of its first codeword is extracted.
    """
    if direction is None:
        _fail(EXIT_USAGE, "one of --whg-to-xp or --xp-to-whg is required")
    if direction == "whg-to-xp":
        try:
            with open(file) as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            _fail(EXIT_USAGE, str(exc))
        r: Optional[int] = None
        cps: list[states.ControlledPhase] = []
        for lineno, raw in enumerate(lines, 1):
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            if r is None:
                m = re.match(r"^r\s*=\s*(\d+)$", text)
                if not m:
                    _fail(EXIT_USAGE, f"{file}:{lineno}: expected header 'r=<int>'")
                r = int(m.group(1))
                continue
            try:
                cps.append(states.parse_cp(text))
            except ValueError as exc:
                _fail(EXIT_USAGE, f"{file}:{lineno}: {exc}")
        if r is None:
            _fail(EXIT_USAGE, f"{file}: missing header 'r=<int>'")
        whg = states.whg_to_xp(cps, r, optimise=optimise)
        n = len(whg.S_X[0].x) if whg.S_X else (len(whg.S_Z[0].x) if whg.S_Z else 0)
        _print_code_file(whg.N, n, list(whg.S_X) + list(whg.S_Z), fmt)
        return
    code = _checked_code(file)
    if code.N & (code.N - 1):
        _fail(EXIT_USAGE, "phase-function extraction requires precision N = 2^t")
    cps = states.extract_phase_function(code.S_X, code.orbit_reps[0], code.N, code.n)
    _emit(
        fmt,
        [str(cp) for cp in cps],
        {
            "n": code.n,
            "edges": [
                {"phase": str(cp.phase), "v": _bits(tuple(cp.v))} for cp in cps
            ],
        },
    )


@main.command()
@click.argument("r", type=int)
@_FORMAT
def rm(r: int, fmt: str) -> None:
    """Code file for the hypergraph code on 2^r - 1 qubits (punctured RM construction)."""
    if r < 3:
        _fail(EXIT_USAGE, "r must be at least 3")
    code = reed_muller(r)
    _print_code_file(code.N, code.n, list(code.S_X) + list(code.S_Z), fmt)


@main.command()
@click.argument("file", type=click.Path())
@_FORMAT
def check(file: str, fmt: str) -> None:
    """Verify the code against the dense state-vector oracle."""
    code = _checked_code(file)
    if code.n > _oracle_max_qubits():
        _fail(EXIT_SIZE, f"n={code.n} exceeds the oracle limit of {_oracle_max_qubits()} qubits")
    results: list[tuple[str, bool]] = []
    kws = code.codewords
    dense = [oracle.DenseState.from_terms(code.n, 2 * code.N, kw.terms) for kw in kws]
    gens = list(code.S_X) + list(code.S_Z)
    mats = [oracle.matrix_of(a.N, a.p, tuple(a.x), tuple(a.z)) for a in gens]
    results.append(
        (
            "generators fix every codeword",
            all(oracle.fixes(m, st) for m in mats for st in dense),
        )
    )
    results.append(
        (
            "codewords are linearly independent (disjoint Z-supports)",
            len({e for kw in kws for _, e in kw.terms})
            == sum(len(kw.terms) for kw in kws),
        )
    )
    results.append(
        (
            "codeword Z-support sizes are powers of two",
            all(len(kw.terms) & (len(kw.terms) - 1) == 0 for kw in kws),
        )
    )
    try:
        data = logical_group(code)
        ok = True
        for op in list(data.L_Z) + list(data.L_X_ops) + list(data.L_D):
            pv = phase_vector(op, kws)
            m = oracle.matrix_of(op.N, op.p, tuple(op.x), tuple(op.z))
            for i, st in enumerate(dense):
                target = dense[pv.pi[i]].apply(
                    oracle.matrix_of(op.N, pv.f[i], (0,) * code.n, (0,) * code.n)
                )
                if not st.apply(m).isclose(target):
                    ok = False
        results.append(("logical operators act as their phase vectors", ok))
    except (NotLogicalError, SearchBudgetExceeded, SizeLimitExceeded):
        results.append(("logical operators act as their phase vectors", False))
    lines = [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in results]
    all_ok = all(ok for _, ok in results)
    lines.append(f"{'PASS' if all_ok else 'FAIL'}  overall")
    _emit(
        fmt,
        lines,
        {
            "checks": [{"name": name, "pass": ok} for name, ok in results],
            "pass": all_ok,
        },
    )
    if not all_ok:
        sys.exit(EXIT_USAGE)
