"""Command-line interface.

Subcommands: ``field``, ``mubs``, ``coarse``, ``wigner``, ``coarse-wigner``
and ``conjugate``.  Exit status is 0 on success, 2 on usage errors and 3
when an input fails validation.  Output goes to stdout unless ``--output``
is given; relative output paths resolve against ``$QCOARSE_OUTPUT_DIR``
when that variable is set.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .coarse import survivor_table
from .field import (
    CosetPartition,
    GaloisField,
    coset_decompose_general,
    coset_decompose_subfield,
    make_field,
)
from .io import StateFileError, dumps_json, parse_state_file
from .pauli import PauliString, cnot_conjugate
from .phase_space import mub_table
from .wigner import coarse_wigner, wigner_of_state

OUTPUT_DIR_ENV = "QCOARSE_OUTPUT_DIR"


class UsageError(Exception):
    pass


def _modulus(text: str | None):
    if text is None:
        return None
    try:
        return tuple(int(b) for b in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad --modulus {text!r}; expected comma-separated bits, lowest degree first") from exc


def _gates(text: str | None) -> list[tuple[int, int]]:
    """``"1:2,1:3"`` -> 0-based ``[(0, 1), (0, 2)]``."""
    if not text:
        return []
    out = []
    for item in text.split(","):
        try:
            c, t = item.split(":")
            out.append((int(c) - 1, int(t) - 1))
        except ValueError as exc:
            raise UsageError(f"bad CNOT {item!r}; expected control:target") from exc
    return out


def _field(args) -> GaloisField:
    return make_field(args.degree, _modulus(args.modulus))


def _partition(args, f: GaloisField) -> CosetPartition:
    if args.m is None:
        raise UsageError("--m is required")
    if args.mode == "subfield":
        if f.degree != 2 * args.m:
            raise ValueError("subfield mode requires N = 2m")
        return coset_decompose_subfield(f, args.m)
    if not args.basis:
        raise UsageError("general mode requires --basis")
    mus = [f.parse_label(x) for x in args.basis.split(",")]
    return coset_decompose_general(f, args.m, mus)


def _cmd_field(args) -> str:
    f = _field(args)
    doc = f.to_json()
    sd = f.self_dual_basis
    doc["self_dual_basis"] = [f.log(x) for x in sd.elements]
    if args.m is not None:
        p = _partition(args, f)
        doc.update({k: v for k, v in p.to_json().items() if k not in ("degree", "modulus")})
    if args.format == "json":
        return dumps_json(doc)
    lines = [
        f"GF(2^{f.degree}) modulus (low to high): {' '.join(map(str, f.modulus_bits))}",
        "self-dual basis: " + ", ".join(f.pretty(x) for x in sd.elements),
    ]
    if args.m is not None:
        for lab, coset in zip(p.coset_labels(), p.cosets):
            lines.append(f"{lab}: " + ", ".join(f.pretty(x) for x in coset))
    return "\n".join(lines) + "\n"


def _cmd_mubs(args) -> str:
    t = mub_table(_field(args))
    return dumps_json(t.to_json()) if args.format == "json" else t.to_text()


def _cmd_coarse(args) -> str:
    f = _field(args)
    t = survivor_table(_partition(args, f))
    gates = _gates(args.cnots)
    if gates:
        t = t.conjugated(gates)
    return dumps_json(t.to_json()) if args.format == "json" else t.to_text()


def _render_table(table, fmt: str) -> str:
    if fmt == "json":
        return dumps_json(table.to_json())
    if fmt == "csv":
        return table.to_csv()
    return table.to_text()


def _state_and_field(args):
    state = parse_state_file(args.state)
    degree = args.degree if args.degree is not None else state.num_qubits
    if degree != state.num_qubits:
        raise ValueError(f"state has {state.num_qubits} qubits but --degree is {degree}")
    return state, make_field(degree, _modulus(args.modulus))


def _cmd_wigner(args) -> str:
    state, f = _state_and_field(args)
    return _render_table(wigner_of_state(state, f), args.format)


def _cmd_coarse_wigner(args) -> str:
    state, f = _state_and_field(args)
    return _render_table(coarse_wigner(state, _partition(args, f)), args.format)


def _cmd_conjugate(args) -> str:
    paulis = [PauliString.parse(p) for p in args.paulis.replace(",", " ").split()]
    gates = _gates(args.gates)
    out = [cnot_conjugate(p, gates) for p in paulis]
    return "".join(f"{p}\n" for p in out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcoarse", description="Coarse-grained phase space of N qubits.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json"), degree_required=True):
        p.add_argument("--degree", type=int, required=degree_required, help="number of qubits N")
        p.add_argument("--modulus", help="modulus bits, lowest degree first (e.g. 1,1,0,0,1)")
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--output", help="write to this file instead of stdout")

    def partition_opts(p, required=True):
        p.add_argument("--m", type=int, required=required, help="subfield degree m (N = m n)")
        p.add_argument("--mode", choices=("general", "subfield"), default="general")
        p.add_argument("--basis", help="relative basis as exponent labels, e.g. 1,s1")

    p = sub.add_parser("field", help="field tables, self-dual basis and coset partition")
    common(p)
    partition_opts(p, required=False)
    p.set_defaults(func=_cmd_field)

    p = sub.add_parser("mubs", help="table of MUB displacement operators")
    common(p)
    p.set_defaults(func=_cmd_mubs)

    p = sub.add_parser("coarse", help="surviving displacement operators")
    common(p)
    partition_opts(p)
    p.add_argument("--cnots", help="conjugate the output by CNOTs, e.g. 1:3,2:4 (1-based)")
    p.set_defaults(func=_cmd_coarse)

    p = sub.add_parser("wigner", help="fine Wigner function of a state file")
    common(p, formats=("csv", "json", "text"), degree_required=False)
    p.add_argument("--state", required=True)
    p.set_defaults(func=_cmd_wigner)

    p = sub.add_parser("coarse-wigner", help="coarse Wigner function of a state file")
    common(p, formats=("csv", "json", "text"), degree_required=False)
    partition_opts(p)
    p.add_argument("--state", required=True)
    p.set_defaults(func=_cmd_coarse_wigner)

    p = sub.add_parser("conjugate", help="conjugate Pauli strings by a CNOT sequence")
    p.add_argument("--paulis", required=True, help='e.g. "XXX,ZZZ,-YYY"')
    p.add_argument("--gates", required=True, help="CNOTs as control:target, 1-based, applied left to right")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_conjugate)
    return parser


def _write(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    path = Path(output)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(text.encode("utf-8"))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = args.func(args)
        _write(text, args.output)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qcoarse: error: {exc}", file=sys.stderr)
        return 2
    except (StateFileError, ValueError, IndexError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"qcoarse: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
