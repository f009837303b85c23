"""Command-line entry point: ``qalg dim | verify | reduce | op-check``.

Reports are one record per line (``key=value`` pairs) ending with a
``verdict=`` line, or a single JSON document with ``--json``.  Exit status:
0 all checks pass, 1 mathematical mismatch, 2 resource guard, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .catalog import PRESETS, CatalogError, build, parse_presentation
from .engine import EngineError, GuardError, complete, filtered_dims, matrix_rank_dim, replay, torsion_probe
from .freealg import FreeAlgebraError, parse_element, render
from .scalars import DEFAULT_PRIMES, PrimeField, ScalarError, field_from_descriptor

EXIT_PASS, EXIT_MISMATCH, EXIT_GUARD, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class Output:
    command: str
    records: list[dict] = field(default_factory=list)
    verdict: str = "pass"

    def add(self, **kv):
        self.records.append(kv)

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps({"command": self.command, "records": self.records, "verdict": self.verdict}, indent=2, default=str)
        lines = [" ".join(f"{k}={v}" for k, v in r.items()) for r in self.records]
        lines.append(f"verdict={self.verdict}")
        return "\n".join(lines)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def default_degree(preset: str, n: int) -> int:
    table = {("En0", 3): 4, ("En0", 4): 12, ("Bn0", 3): 5, ("Bn0", 4): 11}
    if (preset, n) in table:
        return table[(preset, n)]
    if preset == "An0":
        return n
    return 6


# ---------------------------------------------------------------------
# expected-polynomial parsing


def parse_expected(text: str) -> list[int]:
    """Expand a (possibly factored) polynomial in t into its coefficient list."""
    import sympy
    from sympy.parsing.sympy_parser import (
        convert_xor,
        implicit_multiplication_application,
        parse_expr,
        standard_transformations,
    )

    t = sympy.Symbol("t")
    try:
        expr = parse_expr(
            text,
            local_dict={"t": t},
            transformations=standard_transformations + (convert_xor, implicit_multiplication_application),
            evaluate=True,
        )
        poly = sympy.Poly(sympy.expand(expr), t)
    except Exception as exc:  # sympy raises a variety of parse errors
        raise UsageError(f"cannot parse expected polynomial {text!r}: {exc}") from exc
    coeffs = poly.all_coeffs()[::-1]
    out = []
    for c in coeffs:
        if not c.is_integer:
            raise UsageError(f"expected polynomial has a non-integer coefficient {c}")
        out.append(int(c))
    return out


# ---------------------------------------------------------------------
# commands


def _presentation(args):
    if args.file:
        try:
            text = Path(args.file).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(str(exc)) from exc
        p = parse_presentation(text)
        if args.field and args.field != "Q":
            raise UsageError("--field applies to built-in presets; set ring: in the file instead")
        return p
    if args.preset is None:
        raise UsageError("a preset or --file is required")
    if args.n is None:
        raise UsageError("--n is required")
    ring = None
    if args.field and args.field not in ("Q", "Z"):
        ring = field_from_descriptor(args.field)
        if not isinstance(ring, PrimeField):
            raise UsageError("--field must be Q or Fp:<prime>; parameter fields follow --params")
    return build(args.preset, args.n, params=args.params, ring=ring)


def cmd_dim(args) -> tuple[Output, int]:
    out = Output("dim")
    p = _presentation(args)
    D = args.deg if args.deg is not None else default_degree(p.name, p.n)
    if D < 0:
        raise UsageError("--deg must be non-negative")
    rb = complete(p, max(D, 2))
    mode = args.mode
    if mode == "auto":
        mode = "graded" if p.homogeneous else "filtered"
    if mode == "graded":
        if not p.homogeneous:
            raise UsageError("graded dimensions need a homogeneous presentation; use --mode filtered")
        dims = rb.standard_counts(D)
    else:
        dims = filtered_dims(rb, D).dims
    out.add(preset=p.name, n=p.n, field=rb.field.name, mode=mode, deg=D, rules=len(rb.leading_words()))
    for k, d in enumerate(dims):
        out.add(degree=k, dim=d)
    out.add(total=sum(dims))
    status = EXIT_PASS
    if args.oracle:
        for k in range(D + 1):
            r = matrix_rank_dim(p, k)
            ok = r == dims[k]
            out.add(oracle_degree=k, matrix_rank=r, agrees=str(ok).lower())
            if not ok:
                status = EXIT_MISMATCH
    if args.torsion:
        primes = args.primes or list(DEFAULT_PRIMES)
        probe = torsion_probe(p, D, primes)
        for key, dl in probe["dims"].items():
            out.add(field=key, dims=",".join(map(str, dl)))
        for pr, k, a, b in probe["discrepancies"]:
            out.add(discrepancy_prime=pr, degree=k, dim_Q=a, dim_Fp=b)
    if args.expect:
        want = parse_expected(args.expect)
        want = want + [0] * (D + 1 - len(want))
        if len(want) > D + 1:
            out.add(note=f"expected polynomial has degree {len(want) - 1} > {D}; comparing through degree {D}")
        for k in range(D + 1):
            if dims[k] != want[k]:
                out.add(mismatch_degree=k, got=dims[k], expected=want[k])
                status = EXIT_MISMATCH
        out.add(expect=args.expect, match=str(status == EXIT_PASS).lower())
    out.verdict = "pass" if status == EXIT_PASS else "fail"
    return out, status


def cmd_verify(args) -> tuple[Output, int]:
    from .checks import all_checks, run_check
    from .elements import RecipeError

    out = Output("verify")
    if args.list:
        for name, desc in all_checks().items():
            out.add(check=name, claim=json.dumps(desc))
        return out, EXIT_PASS
    if not args.check:
        raise UsageError("name a check or pass --list")
    try:
        rep = run_check(args.check, args.n, args.deg, preset=args.preset, reading=args.reading)
    except RecipeError as exc:
        raise UsageError(str(exc)) from exc
    out.add(check=rep.check, n=rep.n)
    for it in rep.items:
        rec = {"item": json.dumps(it.label), "status": it.status}
        if args.timings:
            rec["seconds"] = f"{it.seconds:.3f}"
        if it.detail:
            rec["detail"] = json.dumps(it.detail)
        out.add(**rec)
    for note in rep.notes:
        out.add(note=json.dumps(note))
    out.add(summary=rep.summary())
    if any(it.status == "error" and "GuardError" in it.detail for it in rep.items):
        out.verdict = "guard"
        return out, EXIT_GUARD
    out.verdict = "pass" if rep.passed else "fail"
    return out, EXIT_PASS if rep.passed else EXIT_MISMATCH


def cmd_reduce(args) -> tuple[Output, int]:
    out = Output("reduce")
    p = _presentation(args)
    if args.expr is None:
        raise UsageError("--expr is required")
    ring = p.ring
    e = parse_element(args.expr, p.n, ring)
    D = args.deg if args.deg is not None else e.degree()
    rb = complete(p, max(D, 2))
    log: list = []
    nf = rb.normal_form(e.to_ring(rb.field) if e.ring != rb.field else e, log=log if args.emit_log else None, allow_incomplete=True)
    out.add(normal_form=render(nf))
    if args.emit_log:
        for step in log:
            out.add(step=step.record(rb.field, p.n))
        again = replay(rb, e.to_ring(rb.field) if e.ring != rb.field else e, log)
        out.add(replay="ok" if again == nf else "mismatch")
        if again != nf:
            out.verdict = "fail"
            return out, EXIT_MISMATCH
    return out, EXIT_PASS


def cmd_op_check(args) -> tuple[Output, int]:
    from .qops import OperatorError, op_equal_on_slice, parse_operator

    out = Output("op-check")
    if args.n is None:
        raise UsageError("--n is required")
    try:
        a = parse_operator(args.lhs, args.n)
        b = parse_operator(args.rhs, args.n, a.cvars)
        res = op_equal_on_slice(a, b, args.deg)
    except OperatorError as exc:
        raise UsageError(str(exc)) from exc
    out.add(n=args.n, deg=args.deg, monomials=res.checked, equal=str(res.equal).lower())
    if not res.equal:
        out.add(witness=res.witness_str(), lhs=json.dumps(str(res.lhs)), rhs=json.dumps(str(res.rhs)))
        out.verdict = "fail"
        return out, EXIT_MISMATCH
    return out, EXIT_PASS


# ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="qalg", description="Exact computations in quadratic algebras, Hecke algebras and braid groups.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="emit one JSON document")
        sp.add_argument("--output", help="also write the report to this file")
        sp.add_argument("--threads", type=int, default=1, help="worker cap (computations are single-threaded)")

    d = sub.add_parser("dim", help="graded or filtered dimensions")
    d.add_argument("preset", nargs="?", choices=PRESETS)
    d.add_argument("--file", help="presentation file instead of a preset")
    d.add_argument("--n", type=int)
    d.add_argument("--deg", type=int)
    d.add_argument("--field", default="Q", help="Q or Fp:<prime>")
    d.add_argument("--params", default=None, help="generic | single (t-deformed presets)")
    d.add_argument("--mode", choices=("auto", "graded", "filtered"), default="auto")
    d.add_argument("--expect", help="expected Hilbert polynomial, e.g. '(1+t)^2*(1+t^2)'")
    d.add_argument("--oracle", action="store_true", help="cross-check each degree by matrix rank")
    d.add_argument("--torsion", action="store_true", help="compare dimensions over Q and prime fields")
    d.add_argument("--primes", type=int, nargs="*")
    common(d)

    v = sub.add_parser("verify", help="run a named verification")
    v.add_argument("check", nargs="?")
    v.add_argument("--list", action="store_true")
    v.add_argument("--n", type=int)
    v.add_argument("--deg", type=int)
    v.add_argument("--preset")
    v.add_argument("--reading", choices=("composed", "multiplied"))
    v.add_argument("--timings", action="store_true", help="include per-item timings")
    common(v)

    r = sub.add_parser("reduce", help="normal form of an element")
    r.add_argument("preset", nargs="?", choices=PRESETS)
    r.add_argument("--file")
    r.add_argument("--n", type=int)
    r.add_argument("--deg", type=int)
    r.add_argument("--field", default="Q")
    r.add_argument("--params", default=None)
    r.add_argument("--expr")
    r.add_argument("--emit-log", action="store_true")
    common(r)

    o = sub.add_parser("op-check", help="compare two operators on a degree slice")
    o.add_argument("lhs")
    o.add_argument("rhs")
    o.add_argument("--n", type=int)
    o.add_argument("--deg", type=int, default=3)
    common(o)
    return ap


COMMANDS = {"dim": cmd_dim, "verify": cmd_verify, "reduce": cmd_reduce, "op-check": cmd_op_check}


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    as_json = False
    try:
        args = ap.parse_args(argv)
        as_json = args.json if args.command else False
        if not args.command:
            raise UsageError("choose a command: dim, verify, reduce, op-check")
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        if getattr(args, "deg", None) is not None and args.deg < 0:
            raise UsageError("--deg must be non-negative")
        out, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CatalogError, FreeAlgebraError, ScalarError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardError as exc:
        out = Output(args.command, verdict="guard")
        out.add(guard=json.dumps(str(exc)))
        print(out.render(as_json))
        return EXIT_GUARD
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    text = out.render(as_json)
    print(text)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    return code


if __name__ == "__main__":
    sys.exit(main())
