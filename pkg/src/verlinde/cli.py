"""Command-line front end: ``verlinde <subcommand> --p P [--format table|json] [--out FILE]``.

Exit status is 0 on success, 2 on a usage error and 1 when the input is
well formed but outside the domain of the operation.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from . import alcove, catalog, oracle, ring, verify
from .alcove import AlcoveWeight
from .errors import DomainError, NotHomogeneousError
from .ring import VerClass

_TERM = re.compile(r"^(\d*)\s*L(\d+)$")


class UsageError(Exception):
    pass


# ----------------------------------------------------------------- parsing


def parse_class(text: str, p: int) -> VerClass:
    """``"2L1 + L4"``, ``"L3"``, a bare index ``"3"``, or ``"0"``."""
    text = text.strip()
    if text == "0":
        return VerClass.zero(p)
    if text.isdigit():
        return ring.simple(int(text), p)
    terms: dict[int, int] = {}
    for raw in text.split("+"):
        m = _TERM.match(raw.strip())
        if not m:
            raise UsageError(f"cannot read class term {raw.strip()!r} (expected like 2L3)")
        k = int(m.group(1)) if m.group(1) else 1
        i = int(m.group(2))
        terms[i] = terms.get(i, 0) + k
    return VerClass.from_dict(p, terms)


def parse_ints(text: str, what: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"cannot read {what} {text!r} (expected comma-separated integers)") from None


def parse_matrix(text: str) -> list[list[int]]:
    return [list(parse_ints(row, "matrix row")) for row in text.split(";")]


# ---------------------------------------------------------------- handlers


def _class_out(c: VerClass, fmt: str):
    return c.to_json() if fmt == "json" else str(c)


def _jordan_out(t: oracle.JordanType, fmt: str):
    c = oracle.semisimplify(t)
    if fmt == "json":
        return {"jordan": t.to_json(), "class": c.to_json()}
    return f"jordan: {t}\nclass: {c}"


def _weights_out(terms: dict[AlcoveWeight, int], fmt: str):
    if fmt == "json":
        return [{"weight": w.to_json(), "mult": m} for w, m in terms.items()]
    if not terms:
        return "0"
    return " + ".join(f"{m}{w}" if m > 1 else str(w) for w, m in terms.items())


def cmd_fuse(args):
    x = parse_class(args.x, args.p)
    y = parse_class(args.y, args.p)
    return _class_out(ring.tensor(x, y), args.format)


def cmd_dim(args):
    d = ring.cat_dim(parse_class(args.x, args.p))
    return {"p": args.p, "dim": d} if args.format == "json" else str(d)


def cmd_ssimp(args):
    t = oracle.JordanType(args.p, parse_ints(args.blocks, "block sizes"))
    return _jordan_out(t, args.format)


def cmd_sym(args):
    return _jordan_out(oracle.sym_power_jordan(args.a, args.n, args.p), args.format)


def cmd_ext(args):
    return _jordan_out(oracle.ext_power_jordan(args.a, args.n, args.p), args.format)


def cmd_jordan(args):
    if args.tensor:
        a, b = args.tensor
        t = oracle.tensor_jordan(a, b, args.p)
    elif args.matrix:
        t = oracle.jordan_type_of_unipotent(oracle.FpMatrix(args.p, parse_matrix(args.matrix)))
    else:
        raise UsageError("jordan needs --matrix ROWS or --tensor A B")
    return _jordan_out(t, args.format)


def cmd_simples(args):
    ws = alcove.plus_simples(args.i, args.p) if args.plus else alcove.enumerate_simples(args.i, args.p)
    if args.format == "json":
        return [w.to_json() for w in ws]
    return "\n".join(str(w) for w in ws)


def _weight(args, text: str) -> AlcoveWeight:
    return AlcoveWeight(args.i, args.p, parse_ints(text, "partition"))


def cmd_slfuse(args):
    return _weights_out(alcove.kac_walton_fuse(_weight(args, args.lam), _weight(args, args.mu)), args.format)


def cmd_restrict(args):
    return _class_out(alcove.principal_restriction(_weight(args, args.lam)), args.format)


def _shape(args) -> catalog.ObjectShape:
    return catalog.ObjectShape(args.p, parse_ints(args.shape, "shape"))


def cmd_gl(args):
    return _class_out(catalog.gl_class(_shape(args)), args.format)


def cmd_sl(args):
    return _class_out(catalog.sl_class(_shape(args)), args.format)


def cmd_labels(args):
    labels = catalog.enumerate_labels(_shape(args), args.bound)
    if args.format == "json":
        return [label.to_json() for label in labels]
    return "\n".join(str(label) for label in labels)


def cmd_count(args):
    n = catalog.count_labels(_shape(args), args.bound)
    return {"count": n} if args.format == "json" else str(n)


def cmd_verma(args):
    shape = _shape(args)
    factors = shape.factors()
    if len(factors) != 1:
        raise NotHomogeneousError(f"X = {shape} is not of the form n L_i")
    (i, n) = factors[0]
    lam = parse_ints(args.lam, "lambda") if args.lam is not None else (0,) * n
    if args.s is not None:
        s = tuple(AlcoveWeight(i, args.p, parse_ints(t, "partition")) for t in args.s.split(";"))
    else:
        s = (alcove.plus_simples(i, args.p)[0],) * n
    label = catalog.GLIrrepLabel(args.p, (catalog.LabelFactor(i, lam, s),))
    char = catalog.verma_character(shape, label, args.degree_bound)
    if args.format == "json":
        return char.to_json()
    return "\n".join(f"({','.join(str(x) for x in w)}): {c}" for w, c in char.entries)


def cmd_verify(args):
    results = verify.run_suite(args.suite, args.p)
    args._status = 0 if all(r.passed for r in results) else 1
    if args.format == "json":
        return [
            {"name": r.name, "passed": r.passed, "cases": r.cases, "failures": r.failures, "unverified": r.unverified}
            for r in results
        ]
    return "\n".join(r.line() for r in results)


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="the prime p")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--out", help="write the result to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="verlinde", description="Fusion combinatorics of Ver_p and GL(X).")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("fuse", cmd_fuse, "tensor product of two classes (e.g. 2 2, or 2L1+L3 L2)")
    sp.add_argument("x")
    sp.add_argument("y")
    sp = add("dim", cmd_dim, "categorical dimension mod p")
    sp.add_argument("x")
    sp = add("ssimp", cmd_ssimp, "semisimplify a Jordan type given as block sizes")
    sp.add_argument("blocks", help="comma-separated block sizes, e.g. 4,2")
    sp = add("sym", cmd_sym, "Jordan type of S^n(M_a)")
    sp.add_argument("a", type=int)
    sp.add_argument("n", type=int)
    sp = add("ext", cmd_ext, "Jordan type of the n-th exterior power of M_a")
    sp.add_argument("a", type=int)
    sp.add_argument("n", type=int)
    sp = add("jordan", cmd_jordan, "Jordan type of a unipotent matrix, or of M_a (x) M_b")
    sp.add_argument("--matrix", help="rows separated by ';', entries by ','")
    sp.add_argument("--tensor", type=int, nargs=2, metavar=("A", "B"))
    sp = add("simples", cmd_simples, "simples of Ver_p(SL_i)")
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--plus", action="store_true", help="only the plus part")
    sp = add("slfuse", cmd_slfuse, "fusion in Ver_p(SL_i)")
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("lam")
    sp.add_argument("mu")
    sp = add("restrict", cmd_restrict, "restriction to the principal SL_2")
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("lam")
    for name, fn, help_ in (("gl", cmd_gl, "class of gl(X)"), ("sl", cmd_sl, "class of sl(X)")):
        sp = add(name, fn, help_)
        sp.add_argument("--shape", required=True, help="n_1,...,n_{p-1}; trailing zeros may be omitted")
    for name, fn, help_ in (("labels", cmd_labels, "irreducible labels of GL(X)"), ("count", cmd_count, "number of labels")):
        sp = add(name, fn, help_)
        sp.add_argument("--shape", required=True)
        sp.add_argument("--bound", type=int, required=True, help="max |entry| of the torus weights")
    sp = add("verma", cmd_verma, "graded character of a generalized Verma module for X = n L_i")
    sp.add_argument("--shape", required=True)
    sp.add_argument("--lambda", dest="lam", help="dominant GL_n weight, comma-separated (default 0)")
    sp.add_argument("--s", help="plus-part alcove weights separated by ';' (default: all trivial)")
    sp.add_argument("--degree-bound", type=int, default=0)
    sp = add("verify", cmd_verify, "run property sweeps over the primes up to --p")
    sp.add_argument("--suite", choices=tuple(verify.SUITES), default="all")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._status = 0
    try:
        result = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except DomainError as exc:
        print(f"verlinde: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        parser.error(str(exc))
    text = json.dumps(result, indent=2) if args.format == "json" else str(result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return args._status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
