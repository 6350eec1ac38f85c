"""Command-line interface.

Exit codes: 0 all checks passed, 1 an identity or hypothesis failed,
2 bad input or usage, 3 budget exceeded.  Reports go to stdout and are
byte-stable for fixed inputs; diagnostics and timings go to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import shlex
import sys
import time

import numpy as np

from . import theorem as th
from .algebra import (
    AlgebraError,
    DecompositionError,
    check_sum_decomposition,
    closure_witness,
    full_space,
    is_associative,
)
from .algfile import ParseError, parse_algebra_file, render_algebra_file
from .multilinear import (
    DEFAULT_BUDGET,
    DEFAULT_D_MAX,
    BudgetExceeded,
    check_identity,
    check_symmetric,
    commutator_product_poly,
    commutator_square_poly,
    min_symmetric_degree,
)
from .zoo import KINDS, direct_sum

OK, FINDING, USAGE, BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Report:
    def __init__(self, argv):
        self.lines = ["command: sumpi " + shlex.join(argv)]
        self.notes: list[str] = []

    def kv(self, key, value):
        self.lines.append(f"{key}: {value}")

    def note(self, text):
        self.notes.append(text)

    def emit(self, code: int) -> int:
        self.kv("exit", code)
        out = "\n".join(self.lines)
        if self.notes:
            out += "\n\n" + "\n".join(self.notes)
        print(out)
        return code


def _load(path: str, rep: Report):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    rep.kv("input", f"{path} sha256={hashlib.sha256(data).hexdigest()}")
    try:
        f = parse_algebra_file(data.decode("utf-8"))
    except (ParseError, UnicodeDecodeError) as exc:
        raise UsageError(f"{path}: {exc}") from None
    rep.kv("algebra", f"{f.algebra.name} p={f.algebra.p} dim={f.algebra.n}")
    return f


def _space(f, name):
    if name is None:
        return full_space(f.algebra)
    try:
        return f.space(name)
    except KeyError as exc:
        raise UsageError(f"--space/--a/--v: {exc.args[0]}") from None


def _rows_label(s, idx) -> str:
    a = s.algebra
    return ", ".join(a.format_element(s.rows[i]) for i in idx)


def _parse_poly(spec: str):
    if spec == "comm":
        return "poly", commutator_product_poly(1)
    if spec == "comm2":
        return "poly", commutator_square_poly()
    kind, _, arg = spec.partition(":")
    if kind in ("sym", "commprod") and arg.isdigit() and int(arg) >= 1:
        if kind == "sym":
            return "sym", int(arg)
        try:
            return "poly", commutator_product_poly(int(arg))
        except ValueError as exc:
            raise UsageError(f"--poly {spec}: {exc}") from None
    raise UsageError(f"--poly {spec!r}: expected sym:<d>, comm, comm2 or commprod:<n>")


# commands


def cmd_validate(args, rep: Report) -> int:
    f = _load(args.file, rep)
    for w in f.warnings:
        print(f"warning: {w}", file=sys.stderr)
    ok, wit = is_associative(f.algebra)
    rep.kv("associative", "yes" if ok else f"no witness=({','.join(str(i + 1) for i in wit)})")
    for name in sorted(f.subspaces):
        s = f.subspaces[name]
        w = closure_witness(s)
        closed = "yes" if w is None else f"no witness=({_rows_label(s, w)})"
        rep.kv(f"subspace {name}", f"dim={s.dim} subalgebra={closed}")
    rep.note("PASS: algebra is associative" if ok else "FAIL: algebra is not associative")
    return rep.emit(OK if ok else FINDING)


def cmd_check_identity(args, rep: Report) -> int:
    f = _load(args.file, rep)
    s = _space(f, args.space)
    kind, poly = _parse_poly(args.poly)
    rep.kv("space", f"{args.space or '<all>'} dim={s.dim}")
    rep.kv("poly", args.poly)
    if kind == "sym":
        result = check_symmetric(s, poly, budget=args.budget, workers=args.workers)
    else:
        result = check_identity(poly, s, budget=args.budget, workers=args.workers)
    rep.kv("outcome", result.outcome)
    rep.kv("tuples_checked", result.tuples_checked)
    if result.outcome == "budget":
        rep.note(f"BUDGET: needs about {result.cost} multiplications, budget {args.budget}")
        return rep.emit(BUDGET)
    if result.holds:
        rep.note(f"PASS: {args.poly} vanishes on {args.space or 'the algebra'}")
        return rep.emit(OK)
    rep.kv("witness", f"({_rows_label(s, result.witness)})")
    rep.kv("value", f.algebra.format_element(result.value))
    rep.note(f"FAIL: {args.poly} does not vanish on {args.space or 'the algebra'}")
    return rep.emit(FINDING)


def cmd_min_sym_degree(args, rep: Report) -> int:
    f = _load(args.file, rep)
    s = _space(f, args.space)
    rep.kv("space", f"{args.space or '<all>'} dim={s.dim}")
    try:
        d = min_symmetric_degree(s, args.max, budget=args.budget, workers=args.workers)
    except BudgetExceeded as exc:
        rep.note(f"BUDGET: {exc}")
        return rep.emit(BUDGET)
    rep.kv("min_symmetric_degree", d if d is not None else f"none<={args.max}")
    if d is None:
        rep.note(f"FAIL: no symmetric identity of degree <= {args.max}")
        return rep.emit(FINDING)
    return rep.emit(OK)


def cmd_bounds(args, rep: Report) -> int:
    def need(*names):
        missing = [n for n in names if getattr(args, n) is None]
        if missing:
            raise UsageError(f"bounds {args.which} needs " + " ".join("--" + m for m in missing))

    try:
        if args.which == "theorem":
            need("d1", "d2", "k", "p", "side")
            bp = th.BoundParams(args.d1, args.d2, args.k, args.t1, args.t2, args.p, args.side)
            rep.kv("D", th.theorem_bound(bp))
        elif args.which == "cor1":
            need("d1", "d2", "k", "side")
            th.BoundParams(args.d1, args.d2, args.k, side=args.side)
            rep.kv("D", th.cor1_bound(args.d1, args.d2, args.k, args.side))
        else:
            need("d", "k")
            a, log_bound = th.fgl_bound(args.d, args.k)
            rep.kv("a", f"{a:.6f}")
            rep.kv("log10_bound", f"{log_bound:.6f}")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return rep.emit(OK)


def _decomposition(f, args, rep):
    s1, s2 = _space(f, args.a1), _space(f, args.a2)
    try:
        return check_sum_decomposition(f.algebra, s1, s2)
    except DecompositionError as exc:
        rep.kv("decomposition", f"invalid ({exc.reason})")
        if exc.witness is not None:
            s = s1 if exc.reason.startswith("s1") else s2
            rep.kv("closure_witness", f"({_rows_label(s, exc.witness)})")
        return None


def cmd_verify_theorem(args, rep: Report) -> int:
    f = _load(args.file, rep)
    dec = _decomposition(f, args, rep)
    if dec is None:
        rep.note("FAIL: A1 + A2 is not a sum decomposition into subalgebras")
        return rep.emit(FINDING)
    v1 = _space(f, args.v1) if args.v1 else None
    v2 = _space(f, args.v2) if args.v2 else None
    try:
        verdict = th.verify_theorem_instance(
            dec, args.k, v1, v2, budget=args.budget, dstar=args.dstar, workers=args.workers
        )
    except AlgebraError as exc:
        raise UsageError(str(exc)) from None
    except BudgetExceeded as exc:
        rep.note(f"BUDGET: {exc}")
        return rep.emit(BUDGET)
    if not verdict.hypothesis_ok:
        rep.kv("hypothesis", "failed")
        rep.note(f"FAIL: (V1 V2)^{args.k} lies in neither summand")
        return rep.emit(FINDING)
    bp = verdict.params
    for key in ("d1", "d2", "side", "t1", "t2"):
        rep.kv(key, getattr(bp, key))
    rep.kv("k", bp.k)
    rep.kv("D", verdict.D)
    rep.kv("identity", {True: "holds", False: "fails", "budget": "budget"}[verdict.identity_ok])
    if args.dstar:
        rep.kv("d_star", verdict.d_star if verdict.d_star is not None else "unknown")
        if verdict.d_star is not None:
            rep.kv("gap", verdict.D - verdict.d_star)
    if verdict.identity_ok == "budget":
        rep.note(f"BUDGET: s_{verdict.D} sweep exceeds budget {args.budget}")
        return rep.emit(BUDGET)
    if verdict.identity_ok is False:
        full = full_space(f.algebra)
        rep.kv("witness", f"({_rows_label(full, verdict.witness)})")
        rep.kv("value", f.algebra.format_element(verdict.value))
        rep.note(f"FAIL: s_{verdict.D} does not vanish although the hypothesis holds")
        rep.note("replay: sumpi check-identity " + shlex.join([args.file, "--poly", f"sym:{verdict.D}"]))
        return rep.emit(FINDING)
    rep.note(f"PASS: the algebra satisfies s_{verdict.D}")
    return rep.emit(OK)


def cmd_decompose(args, rep: Report) -> int:
    f = _load(args.file, rep)
    dec = _decomposition(f, args, rep)
    if dec is None:
        rep.note("FAIL: A1 + A2 is not a sum decomposition into subalgebras")
        return rep.emit(FINDING)
    r, s = args.r, args.s
    if r < 0 or s < 0 or not 1 <= r + s <= 8:
        raise UsageError("--r/--s: need r, s >= 0 and 1 <= r + s <= 8")
    rows1, rows2 = dec.s1.matrix(), dec.s2.matrix()
    if (r and not len(rows1)) or (s and not len(rows2)):
        raise UsageError("--r/--s: a summand is zero")
    if args.exhaustive:
        tuples = (
            (rows1[list(bi)], rows2[list(ci)])
            for bi in itertools.product(range(len(rows1)), repeat=r)
            for ci in itertools.product(range(len(rows2)), repeat=s)
        )
        mode = "exhaustive"
    else:
        rng = np.random.default_rng(args.seed)
        p = f.algebra.p

        def sample():
            for _ in range(args.tuples):
                b = rng.integers(0, p, size=(r, len(rows1))) @ rows1 % p
                c = rng.integers(0, p, size=(s, len(rows2))) @ rows2 % p
                yield b, c

        tuples = sample()
        mode = f"random tuples={args.tuples} seed={args.seed}"
    rep.kv("mode", mode)
    rep.kv("deltas", len(th.enumerate_delta(r, s)))
    checked = failed = 0
    first = None
    for b, c in tuples:
        checked += 1
        if not th.verify_decomposition(dec, list(b), list(c)):
            failed += 1
            if first is None:
                first = (b, c)
    rep.kv("checked", checked)
    rep.kv("failed", failed)
    if first is not None:
        a = f.algebra
        rep.kv("first_failure", "b=(" + ", ".join(a.format_element(x) for x in first[0])
               + ") c=(" + ", ".join(a.format_element(x) for x in first[1]) + ")")
        rep.note("FAIL: s_D differs from the sum of its block-pattern parts")
        return rep.emit(FINDING)
    rep.note(f"PASS: s_{r + s} equals the sum over all block patterns on every tuple")
    return rep.emit(OK)


def cmd_zoo(args, rep: Report) -> int:
    if args.kind == "direct_sum":
        if not (args.left and args.right):
            raise UsageError("zoo direct_sum needs --left FILE --right FILE")
        scratch = Report([])
        f = direct_sum(_load(args.left, scratch), _load(args.right, scratch))
    else:
        size = args.n
        if size is None:
            raise UsageError(f"zoo {args.kind} needs --n")
        try:
            f = KINDS[args.kind](size, args.p)
        except ValueError as exc:
            raise UsageError(f"zoo {args.kind}: {exc}") from None
    text = render_algebra_file(f)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        rep.kv("wrote", f"{args.output} sha256={hashlib.sha256(text.encode()).hexdigest()}")
        return rep.emit(OK)
    sys.stdout.write(text)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sumpi", description=__doc__.splitlines()[0])
    parser.add_argument("--timings", action="store_true", help="print elapsed time to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def sweep_flags(sp):
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        sp.add_argument("--workers", type=int, default=1)

    sp = sub.add_parser("validate", help="associativity and subalgebra closure")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("check-identity", help="check a multilinear identity on a subspace")
    sp.add_argument("file")
    sp.add_argument("--space", help="named subspace (default: whole algebra)")
    sp.add_argument("--poly", required=True, help="sym:<d> | comm | comm2 | commprod:<n>")
    sweep_flags(sp)
    sp.set_defaults(func=cmd_check_identity)

    sp = sub.add_parser("min-sym-degree", help="least d with s_d an identity")
    sp.add_argument("file")
    sp.add_argument("--space")
    sp.add_argument("--max", type=int, default=DEFAULT_D_MAX)
    sweep_flags(sp)
    sp.set_defaults(func=cmd_min_sym_degree)

    sp = sub.add_parser("bounds", help="evaluate a degree bound")
    sp.add_argument("which", choices=["theorem", "cor1", "fgl"])
    for flag in ("d1", "d2", "k", "p", "side", "d"):
        sp.add_argument(f"--{flag}", type=int)
    sp.add_argument("--t1", type=int, default=0)
    sp.add_argument("--t2", type=int, default=0)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("verify-theorem", help="check the degree bound on a concrete sum")
    sp.add_argument("file")
    sp.add_argument("--a1", required=True)
    sp.add_argument("--a2", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--v1")
    sp.add_argument("--v2")
    sp.add_argument("--dstar", action="store_true", help="also compute the true least degree")
    sweep_flags(sp)
    sp.set_defaults(func=cmd_verify_theorem)

    sp = sub.add_parser("decompose", help="check the block-pattern splitting of s_(r+s)")
    sp.add_argument("file")
    sp.add_argument("--a1", required=True)
    sp.add_argument("--a2", required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--tuples", type=int, default=100)
    mode.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("zoo", help="write a standard algebra file")
    sp.add_argument("kind", choices=sorted(KINDS) + ["direct_sum"])
    sp.add_argument("--n", type=int, help="size (m for truncated_poly)")
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--left")
    sp.add_argument("--right")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_zoo)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    if getattr(args, "k", None) is not None and args.k < 1 and args.command == "verify-theorem":
        print("sumpi: error: --k must be >= 1", file=sys.stderr)
        return USAGE
    start = time.perf_counter()
    rep = Report(argv)
    try:
        code = args.func(args, rep)
    except UsageError as exc:
        print(f"sumpi: error: {exc}", file=sys.stderr)
        return USAGE
    if args.timings:
        print(f"elapsed: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
