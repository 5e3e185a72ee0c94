"""Command-line front end; every subcommand prints one JSON document.

Exit codes: 0 ok, 1 input/parse error, 2 enumeration bound exceeded,
3 a certificate failed re-verification (a library bug).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import digraph as dg
from .evenness import (
    PreconditionError,
    detect_even_circuit_via_noneven_oracle,
    directed_basis_and_cover,
    directed_circuit_masks,
    find_odd_directed_circuit,
    non_even_bruteforce,
    noneven_oracle,
)
from .exact_linalg import check_tu, parse_tu_matrix
from .farkas_engine import (
    CertificateError,
    farkas_dichotomy,
    is_directed_circuit,
    totally_cyclic_part,
    verify_certificate,
)
from .oriented_matroid import DEFAULT_ENUMERATION_BOUND, EnumerationBoundExceeded, OrientedMatroid
from .r10_verifier import verify_conjecture_on_r10

MATROID_COMMANDS = ("farkas", "tc", "basis", "non-even", "even-circuit", "odd-circuit")
DIGRAPH_COMMANDS = ("odd-dijoin", "minimal-obstruction")


class InputError(ValueError):
    pass


def _labels(items, order=None):
    items = list(items)
    if order is not None:
        rank = {e: i for i, e in enumerate(order)}
        return [str(e) for e in sorted(items, key=rank.__getitem__)]
    return sorted(str(e) for e in items)


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None


def _detect_format(text: str) -> str:
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            return "digraph" if line.lower() == "digraph" else "tu-matrix"
    raise InputError("empty input")


def load_matroid(args) -> OrientedMatroid:
    text = _read(args.input)
    fmt = args.format or _detect_format(text)
    try:
        if fmt == "digraph":
            d = dg.parse_digraph(text)
            builder = dg.bond_matroid if args.matroid == "bond" else dg.graphic_matroid
            return builder(d, bound=args.bound)
        rep = parse_tu_matrix(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    verdict = check_tu(rep, args.tu_order)
    if verdict.refuted:
        raise InputError(
            f"matrix is not totally unimodular: rows {list(verdict.witness_rows)} "
            f"cols {list(verdict.witness_cols)} have determinant {verdict.determinant}"
        )
    return OrientedMatroid([f"e{j + 1}" for j in range(rep.ncols)], rep, bound=args.bound)


def load_digraph(args) -> dg.Digraph:
    text = _read(args.input)
    try:
        return dg.parse_digraph(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _require(ok: bool, what: str):
    if not ok:
        raise CertificateError(what)


# ---------------------------------------------------------------------------
# subcommands


def cmd_farkas(args) -> dict:
    m = load_matroid(args)
    e = args.element
    if e not in m.elements:
        raise InputError(f"unknown element {e!r}")
    cert = farkas_dichotomy(m, e)
    _require(verify_certificate(m, cert), "Farkas certificate failed re-verification")
    return {
        "element": str(e),
        "kind": "directed-circuit" if cert.is_circuit else "directed-cocircuit",
        "elements": _labels(cert.elements, m.elements),
        "method": "exact-simplex",
    }


def cmd_tc(args) -> dict:
    m = load_matroid(args)
    tc, _ = totally_cyclic_part(m)
    kept = set(tc.elements)
    return {
        "totally_cyclic_part": _labels(tc.elements, m.elements),
        "deleted": [str(e) for e in m.elements if e not in kept],
        "totally_cyclic": len(tc) == len(m),
        "method": "exact-simplex",
    }


def cmd_basis(args) -> dict:
    m = load_matroid(args)
    tc, _ = totally_cyclic_part(m)
    basis, cover = directed_basis_and_cover(tc)
    for c in basis:
        _require(is_directed_circuit(tc, c), "basis member is not a directed circuit")
        _require(len(c & cover.elements) % 2 == 1, "parity cover is even on a basis member")
    _require(len(basis) == len(tc) - tc.rank, "basis has the wrong size")
    return {
        "totally_cyclic_part": _labels(tc.elements, m.elements),
        "basis": [_labels(c, m.elements) for c in basis],
        "parity_cover": _labels(cover.elements, m.elements),
        "method": "recursive-farkas",
    }


def cmd_non_even(args) -> dict:
    m = load_matroid(args)
    cover = non_even_bruteforce(m)
    out = {"non_even": cover is not None, "method": "brute-force"}
    if cover is not None:
        jmask = m.mask(cover.elements)
        _require(
            all(bin(c & jmask).count("1") % 2 == 1 for c in directed_circuit_masks(m)),
            "parity set is even on a directed circuit",
        )
        out["parity_set"] = _labels(cover.elements, m.elements)
    return out


def cmd_even_circuit(args) -> dict:
    m = load_matroid(args)
    found = detect_even_circuit_via_noneven_oracle(m, noneven_oracle)
    out = {"found": found, "method": "reduction(non-even brute-force oracle)"}
    if found:
        witness = next((c for c in directed_circuit_masks(m) if bin(c).count("1") % 2 == 0), None)
        _require(witness is not None, "reduction reported an even circuit that enumeration cannot find")
        circuit = m.labels(witness)
        _require(is_directed_circuit(m, circuit), "even witness is not a directed circuit")
        out["circuit"] = [str(e) for e in circuit]
    return out


def cmd_odd_circuit(args) -> dict:
    m = load_matroid(args)
    c = find_odd_directed_circuit(m)
    out = {"found": c is not None, "method": "directed-basis"}
    if c is not None:
        _require(len(c) % 2 == 1 and is_directed_circuit(m, c), "odd witness failed re-verification")
        out["circuit"] = _labels(c, m.elements)
    return out


def cmd_odd_dijoin(args) -> dict:
    d = load_digraph(args)
    j = dg.odd_dijoin(d, bound=args.vertex_bound)
    out = {"found": j is not None, "method": "brute-force"}
    if j is not None:
        _require(dg.is_odd_dijoin(d, j, bound=args.vertex_bound), "dijoin failed re-verification")
        out["dijoin"] = _labels(j, d.edge_ids)
    return out


def cmd_d_family(args) -> dict:
    n1, n2, n3 = args.sizes
    if min(n1, n2, n3) < 0:
        raise InputError("layer sizes must be nonnegative")
    has = dg.d_family_has_odd_dijoin(n1, n2, n3)
    j, method = dg.d_family_odd_dijoin_construct(n1, n2, n3)
    _require((j is not None) == has, "construction disagrees with the closed form")
    out = {
        "sizes": [n1, n2, n3],
        "has_odd_dijoin": has,
        "clause": dg.d_family_clause(n1, n2, n3),
        "method": "closed-form",
        "construction": method,
    }
    if j is not None:
        d = dg.build_D(n1, n2, n3)
        if len(d.vertices) <= args.vertex_bound:
            _require(dg.is_odd_dijoin(d, j, bound=args.vertex_bound), "dijoin failed re-verification")
        out["dijoin"] = _labels(j, d.edge_ids)
    return out


def cmd_minimal_obstruction(args) -> dict:
    d = load_digraph(args)
    return {"minimal_obstruction": dg.is_minimal_obstruction(d), "method": "brute-force(one-step cut minors)"}


def cmd_r10_verify(args) -> dict:
    report = verify_conjecture_on_r10(workers=args.workers)
    out = report.to_dict()
    out["method"] = "brute-force"
    return out


COMMANDS = {
    "farkas": cmd_farkas,
    "tc": cmd_tc,
    "basis": cmd_basis,
    "non-even": cmd_non_even,
    "even-circuit": cmd_even_circuit,
    "odd-circuit": cmd_odd_circuit,
    "odd-dijoin": cmd_odd_dijoin,
    "d-family": cmd_d_family,
    "minimal-obstruction": cmd_minimal_obstruction,
    "r10-verify": cmd_r10_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output (the only mode)")
    common.add_argument("--bound", type=int, default=DEFAULT_ENUMERATION_BOUND,
                        help="matroid enumeration bound (elements)")
    common.add_argument("--vertex-bound", type=int, default=dg.DEFAULT_VERTEX_BOUND,
                        help="digraph enumeration bound (vertices)")
    common.add_argument("--tu-order", type=int, default=6, help="largest submatrix order for the TU check")
    common.add_argument("-o", "--output", help="write JSON here instead of stdout")

    parser = argparse.ArgumentParser(prog="noneven", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p, formats=("tu-matrix", "digraph")):
        p.add_argument("input", help="input file, or - for stdin")
        p.add_argument("--format", choices=formats, help="input format (default: sniffed)")

    p = sub.add_parser("farkas", parents=[common], help="directed circuit or cocircuit through an element")
    add_input(p)
    p.add_argument("element")
    for name in ("tc", "basis", "non-even", "even-circuit", "odd-circuit"):
        p = sub.add_parser(name, parents=[common])
        add_input(p)
    for p in sub.choices.values():
        p.add_argument("--matroid", choices=("graphic", "bond"), default="graphic",
                       help="matroid of a digraph input")
    for name in DIGRAPH_COMMANDS:
        p = sub.add_parser(name, parents=[common])
        add_input(p, ("digraph",))
    p = sub.add_parser("d-family", parents=[common])
    p.add_argument("sizes", type=int, nargs=3, metavar="N")
    p = sub.add_parser("r10-verify", parents=[common])
    p.add_argument("--workers", type=int, default=1)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    if args.bound != DEFAULT_ENUMERATION_BOUND or args.vertex_bound != dg.DEFAULT_VERTEX_BOUND:
        print("warning: non-default enumeration bound; this may be slow", file=sys.stderr)
    try:
        result = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (EnumerationBoundExceeded, dg.DigraphBoundExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CertificateError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    text = json.dumps(result, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
