"""Command-line front end.

Exit codes: 0 success/pass, 1 usage error, 2 validation error, 3 suite
failure.  Default output is plain text with no timestamps, so identical
invocations are byte-identical; --json switches to the documented schema
(top-level "schema": 1) and --timing adds elapsed seconds to verify output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import affine, exprs, harness, roots, sl2
from .valued import NotIntegral, parse_field

USAGE_ERROR = 1
VALIDATION_ERROR = 2
SUITE_FAILURE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _field_arg(parser):
    parser.add_argument("--field", default="p:3",
                        help="p:<prime> or fq:<prime> (default p:3)")


def build_parser() -> _Parser:
    top = _Parser(prog="kmtop", description=__doc__.splitlines()[0])
    top.add_argument("--json", action="store_true", help="structured output")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="list real roots up to a height bound")
    p.add_argument("--system", default="affine-sl2",
                   help="a1 | affine-sl2 | fixture path")
    p.add_argument("--height", type=int, required=True)

    p = sub.add_parser("char", help="evaluate m·å + n·δ on an affine torus element")
    _field_arg(p)
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("expr")

    p = sub.add_parser("mul", help="multiply an element expression")
    _field_arg(p)
    p.add_argument("expr")

    p = sub.add_parser("member", help="subgroup membership for an element")
    _field_arg(p)
    p.add_argument("--spec", required=True, help="<name>[:<n>], e.g. hn:2, kerpi:1, centerO")
    p.add_argument("expr")

    p = sub.add_parser("decompose", help="triangular and Birkhoff decompositions (SL2)")
    _field_arg(p)
    p.add_argument("expr")

    p = sub.add_parser("retract", help="retraction of a tree point onto the apartment")
    _field_arg(p)
    p.add_argument("expr", help="point(<sl2 expr>, y)")

    p = sub.add_parser("fix-interval", help="apartment fixed set of an SL2 element")
    _field_arg(p)
    p.add_argument("expr")

    p = sub.add_parser("nu", help="translation vector of an affine torus element")
    _field_arg(p)
    p.add_argument("expr")

    p = sub.add_parser("kp-witness", help="escape witness for the colimit topology")
    p.add_argument("-n", type=int, required=True, dest="level")
    p.add_argument("--depth", type=int, default=12)

    p = sub.add_parser("verify", help="run verification suites")
    _field_arg(p)
    p.add_argument("--suite", default="all", help="suite name or 'all'")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--timing", action="store_true", help="include elapsed seconds")

    p = sub.add_parser("tits", help="Tits-cone classification of an apartment vector")
    p.add_argument("--system", default="affine-sl2")
    p.add_argument("--max-steps", type=int, default=64)
    p.add_argument("--coords", required=True, help="comma-separated rationals, e.g. 1,3")
    return top


def _emit(args, payload: dict, text_lines: list[str]):
    if args.json:
        print(json.dumps({"schema": 1, **payload}, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


_SL2_SPECS = {"kerpi", "tn", "tnunits", "vlambda", "fixpoint", "bigcello"}
_AFF_SPECS = {"kerpi", "hn", "tn", "tnphi", "center", "centero", "vform"}


def _parse_spec(text: str):
    name, _, arg = text.partition(":")
    name = name.lower()
    if name not in _SL2_SPECS | _AFF_SPECS:
        raise exprs.ValidationError(f"unknown subgroup spec {name!r}")
    return name, arg


def _level(name: str, arg: str) -> int:
    if not arg.isdigit() or int(arg) < 1:
        raise exprs.ValidationError(f"spec {name!r} needs a level, e.g. {name}:2")
    return int(arg)


def _sl2_spec(name: str, arg: str) -> sl2.SL2SubgroupSpec:
    if name == "kerpi":
        return sl2.SL2SubgroupSpec.kerpi(_level(name, arg))
    if name == "tn":
        return sl2.SL2SubgroupSpec.tn(_level(name, arg))
    if name == "tnunits":
        return sl2.SL2SubgroupSpec.tn_units()
    if name == "vlambda":
        return sl2.SL2SubgroupSpec.v_lambda(_level(name, arg))
    if name == "fixpoint":
        return sl2.SL2SubgroupSpec.fix_point(Fraction(arg))
    return sl2.SL2SubgroupSpec.big_cell_integral()


def _aff_spec(name: str, arg: str) -> affine.AffSubgroupSpec:
    if name == "kerpi":
        return affine.AffSubgroupSpec.kerpi(_level(name, arg))
    if name == "hn":
        return affine.AffSubgroupSpec.hn(_level(name, arg))
    if name == "tn":
        return affine.AffSubgroupSpec.tn(_level(name, arg))
    if name == "tnphi":
        return affine.AffSubgroupSpec.tnphi(_level(name, arg))
    if name == "center":
        return affine.AffSubgroupSpec.center()
    if name == "centero":
        return affine.AffSubgroupSpec.center_integral()
    return affine.AffSubgroupSpec.vform(_level(name, arg))


def cmd_roots(args):
    system = roots.load_system(args.system)
    found = sorted(roots.real_roots_up_to_height(system, args.height),
                   key=lambda b: (roots.height(b), b))
    lines = [f"{b} ht={roots.height(b)}" for b in found]
    lines.append(f"total: {len(found)}")
    _emit(args, {"command": "roots",
                 "roots": [{"coords": list(b), "height": roots.height(b)} for b in found],
                 "count": len(found)}, lines)
    return 0


def cmd_char(args):
    field = parse_field(args.field)
    _, elt = exprs.parse_element(args.expr, exprs.AFFINE, field)
    value = affine.eval_char((args.m, args.n), elt)
    _emit(args, {"command": "char", "value": str(value)}, [str(value)])
    return 0


def cmd_mul(args):
    field = parse_field(args.field)
    target, _, elt = exprs.parse_auto(args.expr, field)
    _emit(args, {"command": "mul", "target": target, "element": str(elt)}, [str(elt)])
    return 0


def cmd_member(args):
    field = parse_field(args.field)
    name, arg = _parse_spec(args.spec)
    target, _, elt = exprs.parse_auto(args.expr, field)
    if target == exprs.SL2:
        if name not in _SL2_SPECS:
            raise exprs.ValidationError(f"spec {name!r} does not apply to SL2 elements")
        violations = sl2.sl2_violations(elt, _sl2_spec(name, arg))
    elif target == exprs.AFFINE:
        if name not in _AFF_SPECS:
            raise exprs.ValidationError(f"spec {name!r} does not apply to affine elements")
        violations = affine.aff_violations(elt, _aff_spec(name, arg))
    else:
        raise exprs.ValidationError("member does not apply to tree points")
    ok = not violations
    lines = ["true" if ok else "false"]
    lines.extend(f"  violated: {v}" for v in violations)
    _emit(args, {"command": "member", "member": ok, "violations": violations}, lines)
    return 0


def cmd_decompose(args):
    field = parse_field(args.field)
    _, elt = exprs.parse_element(args.expr, exprs.SL2, field)
    payload = {"command": "decompose"}
    lines = []
    try:
        b, c, d = sl2.upt_decompose(elt)
        payload["triangular"] = {"b": str(b), "c": str(c), "delta": str(d)}
        lines.append(f"triangular: b={b} c={c} delta={d}")
    except sl2.NotInBigCell:
        payload["triangular"] = None
        lines.append("triangular: not in the big cell")
    beta, n, gamma = sl2.birkhoff_decompose(elt)
    payload["birkhoff"] = {"beta": str(beta), "monomial": str(n), "gamma": str(gamma)}
    lines.append(f"birkhoff: beta={beta} monomial={n} gamma={gamma}")
    _emit(args, payload, lines)
    return 0


def cmd_retract(args):
    field = parse_field(args.field)
    _, point = exprs.parse_element(args.expr, exprs.TREEPOINT, field)
    y = sl2.tree_retract(point)
    _emit(args, {"command": "retract", "coordinate": str(y)}, [str(y)])
    return 0


def cmd_fix_interval(args):
    field = parse_field(args.field)
    _, elt = exprs.parse_element(args.expr, exprs.SL2, field)
    interval = sl2.fixed_interval(elt)
    if interval is None:
        _emit(args, {"command": "fix-interval", "interval": "empty"}, ["empty"])
        return 0
    lo, hi = interval
    if lo is None and hi is None:
        _emit(args, {"command": "fix-interval", "interval": "all"}, ["all"])
        return 0
    text = f"[{'-inf' if lo is None else lo}, {'+inf' if hi is None else hi}]"
    _emit(args, {"command": "fix-interval",
                 "interval": {"lo": None if lo is None else str(lo),
                              "hi": None if hi is None else str(hi)}}, [text])
    return 0


def cmd_nu(args):
    field = parse_field(args.field)
    _, elt = exprs.parse_element(args.expr, exprs.AFFINE, field)
    x, y = affine.nu_translation(elt)
    _emit(args, {"command": "nu", "vector": [x, y]}, [f"({x}, {y})"])
    return 0


def cmd_kp_witness(args):
    betas, witness = affine.kp_witness(args.level, args.depth)
    lines = [f"beta[{i + 1}] = {b} ht={h}" for i, (b, h) in enumerate(betas)]
    lines.append(f"witness: {witness if witness is not None else 'not found'}")
    _emit(args, {"command": "kp-witness",
                 "heights": [h for _, h in betas],
                 "witness_index": witness}, lines)
    return 0


def cmd_verify(args):
    field = parse_field(args.field)
    cfg = harness.SamplerConfig(field=field, seed=args.seed, trials=args.trials)
    names = harness.all_suite_names() if args.suite == "all" else [args.suite]
    try:
        reports = harness.run_suites(names, cfg)
    except harness.UnknownSuite as exc:
        raise UsageError(f"unknown suite {exc.args[0]!r}") from exc
    lines = []
    for r in reports:
        lines.append(f"{r.suite}: {r.verdict} ({r.trials} trials)")
        if r.skipped:
            lines.append(f"  not applicable: {r.skipped}")
        for f in sorted(r.failures, key=lambda f: f.trial)[:10]:
            lines.append(f"  trial {f.trial}: {f.inputs} expected {f.expected} got {f.got}")
        if args.timing:
            lines.append(f"  elapsed: {r.elapsed:.2f}s")
    failed = [r for r in reports if r.verdict == "fail"]
    lines.append(f"suites: {len(reports)}, failed: {len(failed)}")
    _emit(args, {"command": "verify",
                 "config": cfg.echo(),
                 "suites": [r.as_dict(include_elapsed=args.timing) for r in reports],
                 "verdict": "fail" if failed else "pass"}, lines)
    return SUITE_FAILURE if failed else 0


def cmd_tits(args):
    system = roots.load_system(args.system)
    coords = [Fraction(c) for c in args.coords.split(",")]
    result = roots.tits_classify(system, coords, args.max_steps)
    if result is None:
        _emit(args, {"command": "tits", "classified": False}, ["not classified"])
        return 0
    _emit(args, {"command": "tits", "classified": True,
                 "word": list(result.w.word), "walls": sorted(result.zero_set)},
          [f"word: {''.join(f'r{i}' for i in result.w.word) or 'e'}",
           f"walls: {sorted(result.zero_set)}"])
    return 0


_COMMANDS = {
    "roots": cmd_roots,
    "char": cmd_char,
    "mul": cmd_mul,
    "member": cmd_member,
    "decompose": cmd_decompose,
    "retract": cmd_retract,
    "fix-interval": cmd_fix_interval,
    "nu": cmd_nu,
    "kp-witness": cmd_kp_witness,
    "verify": cmd_verify,
    "tits": cmd_tits,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (exprs.ExprSyntaxError, exprs.ValidationError, affine.NotTorus,
            sl2.NotInBigCell, NotIntegral, roots.NotRegular, ValueError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VALIDATION_ERROR


if __name__ == "__main__":
    sys.exit(main())
