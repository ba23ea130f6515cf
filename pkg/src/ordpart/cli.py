"""Command-line interface.

Exit codes: 0 ok, 1 verification failure, 2 malformed input, 3 poset axiom
violation, 4 the sphere counts disagree.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .errors import AxiomError, TooSmall
from .extensions import classes_to_dicts, cyclic_classes, linear_extensions
from .oplattice import enumerate_lattice, to_dot, to_json
from .poset import Poset, connected_components, minimal_elements, poset_from_dict, poset_to_dict
from .topology import homotopy_report
from .verify import INVARIANTS, VerifyResult, named_fixtures, random_catalog, run_invariants
from .words import PWord, detanglement_index, entangled_table, finest_detanglement

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_AXIOM, EXIT_DISAGREE = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def read_poset(source: str) -> Poset:
    """Load a poset from a path, ``-`` for stdin, or inline JSON text."""
    try:
        if source.lstrip().startswith("{"):
            data = json.loads(source)
        elif source == "-":
            data = json.load(sys.stdin)
        else:
            with open(source) as fh:
                data = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {source}: {exc}", EXIT_PARSE) from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"invalid JSON: {exc}", EXIT_PARSE) from exc
    try:
        return poset_from_dict(data)
    except AxiomError as exc:
        raise CliError(f"{type(exc).__name__}: {exc}", EXIT_AXIOM) from exc
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise CliError(f"malformed poset: {type(exc).__name__}: {exc}", EXIT_PARSE) from exc


def summarize(p: Poset) -> str:
    comps = connected_components(p)
    mins = len(minimal_elements(p))
    plural = "" if mins == 1 else "s"
    if len(comps) == 1:
        shape = "connected"
    elif len(comps) == p.n:
        shape = f"antichain, {p.n} components"
    else:
        shape = f"{len(comps)} components"
    return f"n={p.n}, {shape}, {mins} minimal element{plural}"


def cmd_validate(args) -> int:
    p = read_poset(args.poset)
    sys.stdout.write(summarize(p) + "\n")
    return EXIT_OK


def cmd_lattice(args) -> int:
    lat = enumerate_lattice(read_poset(args.poset))
    sys.stdout.write(to_dot(lat) if args.dot else to_json(lat))
    return EXIT_OK


def cmd_spheres(args) -> int:
    p = read_poset(args.poset)
    routes = ("recurrence", "morse", "homology") if args.method == "all" else (args.method,)
    try:
        rep = homotopy_report(p, routes)
    except TooSmall as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    sys.stdout.write(_dump(rep.to_dict()))
    return EXIT_OK if rep.agree else EXIT_DISAGREE


def cmd_extensions(args) -> int:
    p = read_poset(args.poset)
    classes = cyclic_classes(p)
    out = {"e": len(linear_extensions(p)), "eC": len(classes), "connected": p.is_connected()}
    if args.cyclic:
        out["classes"] = classes_to_dicts(classes)
    sys.stdout.write(_dump(out))
    return EXIT_OK


def cmd_words(args) -> int:
    if args.table:
        m_max, s_max = args.table
        if m_max < 1 or s_max < 1:
            raise CliError("table bounds must be positive", EXIT_PARSE)
        lines = ["m\\s\t" + "\t".join(str(s) for s in range(1, s_max + 1))]
        for m, row in enumerate(entangled_table(m_max, s_max), start=1):
            lines.append(f"{m}\t" + "\t".join(str(v) for v in row))
        sys.stdout.write("\n".join(lines) + "\n")
        return EXIT_OK
    try:
        w = PWord.parse(args.word)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    if args.sizes:
        try:
            sizes = [int(s) for s in args.sizes.split(",")]
        except ValueError as exc:
            raise CliError(f"malformed --sizes {args.sizes!r}", EXIT_PARSE) from exc
        declared = {i + 1: k for i, k in enumerate(sizes)}
        if w.multiplicities != {c: k for c, k in declared.items() if k}:
            raise CliError(f"word {w} does not match multiset {args.sizes}", EXIT_PARSE)
    sys.stdout.write(f"finest={finest_detanglement(w)}\tdi={detanglement_index(w)}\n")
    return EXIT_OK


def _verify_one(item):
    label, p, max_nodes = item
    return run_invariants({label: p}, max_nodes=max_nodes)


def cmd_verify(args) -> int:
    if args.n_max < 3:
        raise CliError("--n-max must be at least 3", EXIT_PARSE)
    posets = {k: v for k, v in named_fixtures().items() if v.n <= args.n_max}
    posets.update(random_catalog(3, args.n_max, args.trials, args.seed))
    items = [(label, p, args.max_nodes) for label, p in posets.items()]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            parts = list(pool.map(_verify_one, items))
    else:
        parts = [_verify_one(it) for it in items]
    total = VerifyResult()
    for part in parts:
        for name, k in part.passed.items():
            total.passed[name] = total.passed.get(name, 0) + k
        for name, k in part.skipped.items():
            total.skipped[name] = total.skipped.get(name, 0) + k
        total.failures.extend(part.failures)
    width = max(len(inv.name) for inv in INVARIANTS)
    for inv in INVARIANTS:
        status = "FAIL" if any(f[0] == inv.name for f in total.failures) else "ok"
        sys.stdout.write(
            f"{inv.name:<{width}}  passed {total.passed.get(inv.name, 0):>4}"
            f"  skipped {total.skipped.get(inv.name, 0):>3}  {status}\n"
        )
    sys.stdout.write(f"{len(posets)} posets, {'PASS' if total.ok else 'FAIL'}\n")
    if total.ok:
        return EXIT_OK
    name, label, p = total.failures[0]
    with open(args.repro, "w") as fh:
        fh.write(_dump({"invariant": name, "instance": label, "poset": poset_to_dict(p)}))
    sys.stderr.write(f"first failure: {name} on {label}; repro written to {args.repro}\n")
    return EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ordpart", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="parse a poset and summarize it")
    s.add_argument("poset", help="JSON file, '-' for stdin, or inline JSON")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("lattice", help="export the lattice of order-preserving partitions")
    s.add_argument("poset")
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true", help="default")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("spheres", help="count spheres in the order complex")
    s.add_argument("poset")
    s.add_argument("--method", choices=["recurrence", "morse", "homology", "all"], default="all")
    s.set_defaults(func=cmd_spheres)

    s = sub.add_parser("extensions", help="linear and cyclic extension counts")
    s.add_argument("poset")
    s.add_argument("--cyclic", action="store_true", help="list the cyclic classes")
    s.set_defaults(func=cmd_extensions)

    s = sub.add_parser("words", help="entangled-word table or detanglement of one word")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--table", nargs=2, type=int, metavar=("M_MAX", "S_MAX"))
    g.add_argument("--word")
    s.add_argument("--sizes", help="declared letter multiplicities for --word, e.g. 2,3,4")
    s.set_defaults(func=cmd_words)

    s = sub.add_parser("verify", help="run the invariant suite on fixtures and random posets")
    s.add_argument("--n-max", type=int, default=5)
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-nodes", type=int, default=250, help="skip topology when O(P) is larger")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--repro", default="verify-repro.json")
    s.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
