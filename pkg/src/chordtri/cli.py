"""Command-line entry point: analyze, decompose, verify, bench, gen.

Exit status: 0 success, 1 usage or input error, 2 decomposition error,
3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .bench import DEFAULT_REPEAT, machine_fingerprint, median_of_medians, time_orderings
from .decompose import ALGORITHMS, DEFAULT_MAX_NODES, decompose, level
from .errors import ChordtriError, ParseError
from .families import FAMILIES, gen_family
from .field import field_from_spec
from .graph import (associated_graph, chordal_completion, mcs_peo, to_dot,
                    variable_sparsity, weighted_variable_sparsity)
from .oracle import DEFAULT_PRIMES, check_systems, verify_decomposition
from .parsing import format_system, parse_system
from .poly import format_poly
from .serialize import SCHEMA, decomposition_to_json, dumps, load_decomposition
from .sparse import DEFAULT_S0, resolve_orderings

EXIT_OK, EXIT_USAGE, EXIT_DECOMPOSE, EXIT_VERIFY = 0, 1, 2, 3

log = logging.getLogger("chordtri")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _primes(text: str) -> list:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of primes: {text!r}") from None


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_system(args):
    """Input polynomials from a file or from ``--family``/``--i``."""
    fld = field_from_spec(getattr(args, "field", None))
    if getattr(args, "family", None):
        if args.i is None:
            raise UsageError("--family needs --i")
        return gen_family(args.family, args.i, fld)
    if not getattr(args, "file", None):
        raise UsageError("an input file or --family is required")
    F, _ = parse_system(_read(args.file), field=fld)
    F = [f for f in F if not f.is_zero]
    if not F:
        raise UsageError("input system has no nonzero polynomial")
    return F


def _single_ordering(F, args):
    orders = resolve_orderings(F, args.order, args.s0, args.seed)
    if len(orders) != 1:
        raise UsageError("--order must describe exactly one ordering here")
    return orders[0]


def _emit(doc_or_text, args):
    out = dumps(doc_or_text) if isinstance(doc_or_text, dict) else doc_or_text
    print(out.rstrip("\n"))


# -- commands -----------------------------------------------------------------

def cmd_analyze(args) -> int:
    F = _load_system(args)
    G = associated_graph(F)
    peo = mcs_peo(G)
    names = F[0].ring.names
    info = {
        "schema": SCHEMA, "kind": "analysis",
        "polynomials": len(F), "variables": len(G.vertices), "edges": len(G.edges),
        "sparsity": str(variable_sparsity(G)),
        "weighted_sparsity": str(weighted_variable_sparsity(F)),
        "chordal": peo is not None,
        "level": level(F),
    }
    if peo is not None:
        info["peo"] = [names[v] for v in peo]
    else:
        H, order = chordal_completion(G)
        info["completion_fill"] = len(H.edges) - len(G.edges)
        info["completion_peo"] = [names[v] for v in order]
    if args.dot:
        order = info.get("peo") or info["completion_peo"]
        head = [f"// chordal: {'yes' if peo is not None else 'no'}",
                f"// {'peo' if peo is not None else 'completion peo'}: {' < '.join(order)}"]
        _emit("\n".join(head) + "\n" + to_dot(G), args)
    elif args.json:
        _emit(info, args)
    else:
        s = Fraction(info["sparsity"])
        print(f"polynomials: {info['polynomials']}")
        print(f"variables:   {info['variables']}")
        print(f"edges:       {info['edges']}")
        print(f"sparsity:    {s} (~{float(s):.3f})")
        print(f"weighted:    {info['weighted_sparsity']}")
        print(f"chordal:     {'yes' if info['chordal'] else 'no'}")
        if peo is not None:
            print("peo:         " + " < ".join(info["peo"]))
        else:
            print(f"completion:  {info['completion_fill']} fill edges")
            print("peo:         " + " < ".join(info["completion_peo"]))
    return EXIT_OK


def cmd_decompose(args) -> int:
    F = _load_system(args)
    label, names = _single_ordering(F, args)
    ring = F[0].ring.reordered(names)
    work = [f.to_ring(ring) for f in F]
    try:
        res = decompose(work, args.alg, ring=ring, max_nodes=args.max_nodes,
                        time_limit=args.time_limit)
    except ChordtriError as exc:
        print(f"decomposition failed: {exc}", file=sys.stderr)
        return EXIT_DECOMPOSE
    if args.dot:
        for i, S in enumerate(res.systems, 1):
            _emit(to_dot(associated_graph(S.T), name=f"T{i}"), args)
        return EXIT_OK
    if args.json:
        doc = decomposition_to_json(res, F=F, include_tree=not args.no_tree,
                                    extra={"ordering_source": label})
        _emit(doc, args)
        return EXIT_OK
    print(f"# {args.alg}, ordering {' < '.join(names)} ({label}), {len(res.systems)} systems, "
          f"{len(res.tree)} nodes")
    for i, S in enumerate(res.systems, 1):
        print(f"T{i} = [{', '.join(format_poly(f) for f in S.T)}]")
        if S.U:
            print(f"U{i} = {{{', '.join(format_poly(g) for g in S.U)}}}")
    return EXIT_OK


def cmd_verify(args) -> int:
    text = _read(args.file)
    stored = None
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"invalid JSON: {exc}") from None
        F, systems, ring, algorithm = load_decomposition(doc)
        if F is None:
            raise UsageError("decomposition document lacks its input system")
        algorithm = args.alg or algorithm or "wang"
        stored = (systems, ring)
    else:
        fld = field_from_spec(args.field)
        F, _ = parse_system(text, field=fld)
        F = [f for f in F if not f.is_zero]
        if not F:
            raise UsageError("input system has no nonzero polynomial")
        ring = F[0].ring.reordered(_single_ordering(F, args)[1])
        algorithm = args.alg or "wang"
    F = [f.to_ring(ring) for f in F]
    primes = args.primes
    if ring.field.characteristic:
        # reducing GF(q) data modulo another prime is meaningless
        primes = [ring.field.characteristic]
    try:
        report = verify_decomposition(F, algorithm, primes, ring=ring,
                                      max_nodes=args.max_nodes)
    except ChordtriError as exc:
        print(f"verification could not run: {exc}", file=sys.stderr)
        return EXIT_DECOMPOSE
    doc = report.to_dict()
    ok = report.status == "pass"
    if stored is not None and ring.field.characteristic:
        # results computed over a prime field can be checked as stored
        check = check_systems(F, stored[0], ring.field.characteristic)
        doc["stored"] = check.to_dict()
        ok = ok and check.status == "pass"
    if args.json:
        doc["schema"] = SCHEMA
        _emit(doc, args)
    else:
        for c in report.checks:
            line = f"p={c.p}: {c.status}"
            if c.status == "skipped":
                line += f" ({c.reason})"
            elif c.status == "fail":
                line += f" missing={c.missing[:5]} extra={c.extra[:5]}"
            else:
                line += f" ({c.zeros} zeros, {c.systems} systems)"
            print(line)
        if "stored" in doc:
            print(f"stored systems: {doc['stored']['status']}")
        print(f"overall: {report.status}")
    if report.status == "inconclusive":
        return EXIT_VERIFY
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_bench(args) -> int:
    F = _load_system(args)
    orders = resolve_orderings(F, args.orders, args.s0, args.seed)
    runs = time_orderings(F, orders, args.alg, repeat=args.repeat, timeout=args.timeout,
                          parallel=args.parallel, max_nodes=args.max_nodes)
    peo_runs = [r for r in runs if r.label == "peo" or r.label.startswith("auto:p")]
    rnd_runs = [r for r in runs if r.label.startswith("random")]
    ratio = None
    peo_med = median_of_medians(peo_runs, args.timeout) if peo_runs else None
    rnd_med = median_of_medians(rnd_runs, args.timeout) if rnd_runs else None
    if peo_med and rnd_med:
        ratio = rnd_med / peo_med
    if args.json:
        _emit({"schema": SCHEMA, "kind": "bench", "algorithm": args.alg,
               "sparsity": str(variable_sparsity(F)), "repeat": args.repeat,
               "timeout": args.timeout, "machine": machine_fingerprint(),
               "runs": [r.to_dict() for r in runs],
               "peo_median": peo_med, "random_median": rnd_med, "ratio": ratio}, args)
        return EXIT_OK
    n = len(associated_graph(F).vertices)
    print(f"# {args.alg}, {len(F)} polynomials, {n} variables, "
          f"s_v = {float(variable_sparsity(F)):.3f}, repeat {args.repeat}")
    print(f"{'ordering':<14} {'median s':>10} {'systems':>8}  status")
    for r in runs:
        med = r.median(args.timeout)
        shown = "-" if med is None else (f">={med:.3f}" if r.timed_out else f"{med:.3f}")
        status = r.error or ("over budget" if r.timed_out else "ok")
        print(f"{r.label:<14} {shown:>10} {r.systems if r.systems is not None else '-':>8}  {status}")
    if ratio is not None:
        print(f"random/peo median ratio: {ratio:.2f}")
    return EXIT_OK


def cmd_gen(args) -> int:
    F = gen_family(args.family, args.i)
    if args.json:
        _emit({"schema": SCHEMA, "kind": "system", "family": args.family, "i": args.i,
               "polynomials": [format_poly(f) for f in F]}, args)
    else:
        print(format_system(F) + ";")
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="chordtri", description="Top-down triangular decomposition with chordal orderings.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, file_required=False):
        sp.add_argument("file", nargs=None if file_required else "?", help="system file ('-' for stdin)")
        sp.add_argument("--field", default="QQ", help="QQ (default) or a prime")
        sp.add_argument("--json", action="store_true")

    def ordering(sp, default):
        sp.add_argument("--order", default=default,
                        help="csv of variables (ascending), natural, peo, auto, random or random:<k>")
        sp.add_argument("--s0", type=_fraction, default=DEFAULT_S0, help="sparsity threshold for auto")
        sp.add_argument("--seed", type=int, default=0)

    def family(sp):
        sp.add_argument("--family", choices=FAMILIES)
        sp.add_argument("--i", type=int)

    sp = sub.add_parser("analyze", help="associated graph, sparsity and chordality")
    common(sp)
    family(sp)
    sp.add_argument("--dot", action="store_true", help="print the associated graph as DOT")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("decompose", help="triangular decomposition")
    common(sp)
    family(sp)
    ordering(sp, "auto")
    sp.add_argument("--alg", choices=ALGORITHMS, default="wang")
    sp.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    sp.add_argument("--time-limit", type=float, default=None, help="wall-clock budget in seconds")
    sp.add_argument("--dot", action="store_true", help="print the graphs of the triangular sets")
    sp.add_argument("--no-tree", action="store_true", help="omit the tree from JSON output")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("verify", help="check Zero(F) = union of Zero(T/U) over prime fields")
    common(sp, file_required=True)
    ordering(sp, "auto")
    sp.add_argument("--alg", choices=ALGORITHMS)
    sp.add_argument("--primes", type=_primes, default=list(DEFAULT_PRIMES))
    sp.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="time decompositions under several orderings")
    common(sp)
    family(sp)
    sp.add_argument("--alg", choices=ALGORITHMS, default="regser")
    sp.add_argument("--orders", default="peo,random:5")
    sp.add_argument("--s0", type=_fraction, default=DEFAULT_S0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--repeat", type=int, default=DEFAULT_REPEAT)
    sp.add_argument("--timeout", type=float, default=None, help="per-run budget in seconds")
    sp.add_argument("--parallel", type=int, default=1, help="concurrent runs (isolated processes)")
    sp.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("gen", help="print a benchmark family")
    sp.add_argument("--family", choices=FAMILIES, required=True)
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_gen)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help, --version and usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    if not getattr(args, "command", None):
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ChordtriError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DECOMPOSE


if __name__ == "__main__":
    sys.exit(main())
