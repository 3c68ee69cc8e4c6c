"""Command-line front end.

Exit status: 0 when every check passes, 1 when a check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import adams, borel, ftl, hrr, io, todd
from .expr import ExprSyntaxError, parse_expr
from .linalg import LinearSystemError
from .rings import QEPS, MUL, IllegalSymbol, NotInvertible, RingError, ring_from_tag
from .series import SeriesError, render

BUILTINS = ("additive", "alternative", "multiplicative", "mul-plus", "mul-minus")


class InputError(Exception):
    pass


def builtin_law(name: str) -> ftl.FTL:
    if name == "additive":
        return ftl.additive_ftl()
    if name == "alternative":
        return ftl.alternative_additive_ftl()
    if name == "multiplicative":
        return ftl.multiplicative_ftl()
    if name == "mul-plus":
        return ftl.specialize_ftl(ftl.multiplicative_ftl(), "plus")
    if name == "mul-minus":
        return ftl.specialize_ftl(ftl.multiplicative_ftl(), "minus")
    raise InputError(f"unknown builtin {name!r}")


def _read_json(text: str):
    """Inline JSON, or a path to a JSON file."""
    text = text.strip()
    try:
        if text.startswith("{") or text.startswith("["):
            return json.loads(text)
        with open(text, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {text}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {text[:40]!r}: {exc}") from None


def load_law(args) -> tuple[ftl.FTL, str]:
    if args.builtin and args.law:
        raise InputError("give either a law file or --builtin, not both")
    if args.builtin:
        F, source = builtin_law(args.builtin), f"builtin:{args.builtin}"
    elif args.law:
        F, source = io.ftl_from_json(_read_json(args.law)), args.law
    else:
        raise InputError("no law given (path or --builtin)")
    for spec in getattr(args, "perturb", None) or []:
        F = perturb(F, spec)
    return F, source


def perturb(F: ftl.FTL, spec: str) -> ftl.FTL:
    """Apply 'a<l>_<ijk>=<expr>', e.g. a4_400=2."""
    try:
        key, value = spec.split("=", 1)
        head, idx = key.strip().split("_")
        if not head.startswith("a") or len(idx) != 3:
            raise ValueError
        index = (int(head[1:]),) + tuple(int(ch) for ch in idx)
    except ValueError:
        raise InputError(f"bad perturbation {spec!r}; expected e.g. a4_400=2") from None
    return F.perturb(index, parse_expr(value, F.ring))


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args):
    F, source = load_law(args)
    if not F.exact and args.bound is None:
        raise InputError("a truncated law needs an explicit --bound")
    start = time.perf_counter()
    report = ftl.check_axioms(F, args.bound)
    checks = {name: {"passed": r.passed, "witness": r.witness} for name, r in report.results.items()}
    passed = report.passed
    if args.against:
        target = builtin_law(args.against)
        target = ftl.base_change(target, F.ring) if target.ring is not F.ring else target
        N = report.bound
        same = F.truncate(N) == target.truncate(N) if N is not None else F == target
        checks["matches_" + args.against] = {"passed": same, "witness": None}
        passed = passed and same
    out = {"command": "verify", "law": source, "ring": F.ring.tag, "exact": report.exact,
           "bound": report.bound, "checks": checks, "passed": passed}
    scope = "exactly" if report.exact else f"up to filtration degree {report.bound}"
    lines = [f"law {source} over {F.ring.tag}, checked {scope}"]
    for name, c in checks.items():
        line = f"  {name:<16} {'pass' if c['passed'] else 'FAIL'}"
        if c["witness"]:
            w = c["witness"]
            line += f"  (t^{w['l']}, monomial {tuple(w['monomial'])}: {w['lhs']} != {w['rhs']})"
        lines.append(line)
    lines.append(f"  time {time.perf_counter() - start:.2f}s")
    return out, "\n".join(lines), passed


def cmd_show(args):
    F, source = load_law(args)
    return io.ftl_to_json(F), "\n".join(F.render_lines()), True


def cmd_log(args):
    F, source = load_law(args)
    theta = ftl.logarithm(F, args.degree)
    out = {"command": "log", "law": source, "degree": args.degree, "theta": io.iso_to_json(theta)}
    passed = True
    text = f"Theta = {render(theta.theta)}"
    if args.check:
        G = ftl.transform(ftl.base_change(F, theta.ring) if F.ring is not theta.ring else F,
                          theta, args.degree)
        same = G == ftl.additive_ftl(theta.ring).truncate(args.degree)
        out["matches_additive"] = same
        passed = same
        text += f"\ntransformed law matches the additive law: {'yes' if same else 'NO'}"
    return out, text, passed


def cmd_transform(args):
    F, source = load_law(args)
    theta = io.iso_from_json(_read_json(args.theta))
    if theta.ring is not F.ring:
        F = ftl.base_change(F, theta.ring)
    G = ftl.transform_unit(F, theta, args.degree)
    return io.ftl_to_json(G), "\n".join(G.render_lines()), True


def _ring_arg(tag):
    try:
        return ring_from_tag(tag)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_todd(args):
    ring = _ring_arg(args.ring)
    coeffs = [parse_expr(s, ring) for s in args.theta.split(",")] if args.theta else []
    theta = todd.OrientationSeries(ring, coeffs, args.theta_bound)
    tt = todd.todd_series(theta, args.degree)
    out = {"command": "todd", "theta": io.series_to_json(theta.series()),
           "todd_series": io.series_to_json(tt)}
    text = f"t/theta(t) = {render(tt)}"
    if args.rank is not None:
        B = todd.BorelData(args.rank, args.bound if args.bound is not None else 2 * args.degree)
        cls = todd.todd_of_bundle(tt, B)
        out["todd_class"] = io.series_to_json(cls)
        text += f"\ntd = {render(cls)}"
    return out, text, True


def cmd_adams(args):
    n = args.n
    if args.what == "p":
        if n < 1:
            raise InputError("p_n needs n >= 1")
        p = adams.p_poly(n)
        return {"command": "adams p", "n": n, "p": io.series_to_json(p)}, f"p_{n} = {render(p)}", True
    if args.what == "omega":
        if n < 0:
            raise InputError("omega(n) needs n >= 0")
        w = adams.omega(n)
        return {"command": "adams omega", "n": n, "omega": MUL.fmt(w)}, f"omega({n}) = {MUL.fmt(w)}", True
    if n < 1:
        raise InputError("q_n needs n >= 1")
    q = adams.q_poly(n, args.part)
    out = {"command": "adams q", "n": n, "part": args.part, "q": io.series_to_json(q)}
    return out, f"q_{n} ({args.part}) = {render(q)}", True


def cmd_borel(args):
    if args.what == "chi":
        if args.n is None or args.n < 1:
            raise InputError("borel chi needs n >= 1")
        if args.rank is None:
            raise InputError("borel chi needs --rank")
        c = borel.chi_tilde(args.n, todd.BorelData(args.rank, 0))
        out = {"command": "borel chi", "n": args.n, "rank": args.rank, "chi": io.series_to_json(c)}
        return out, f"chi~_{2 * args.n} = {render(c)}", True
    if args.what == "todd":
        f = borel.borel_todd_W(args.degree) if args.part == "W" else borel.borel_todd_M(args.degree)
        out = {"command": "borel todd", "part": args.part, "degree": args.degree,
               "inverse_todd": io.series_to_json(f)}
        return out, f"td^-1 ({args.part}) = {render(f)}", True
    bc = borel.borel_character_rank2(args.degree)
    out = {"command": "borel char", "degree": args.degree,
           "motivic": io.series_to_json(bc.motivic), "witt": io.series_to_json(bc.witt)}
    return out, f"motivic: {render(bc.motivic)}\nWitt:    {render(bc.witt)}", True


def cmd_hrr(args):
    if args.what == "k3":
        if args.rank2r is None or args.rank2r < 0 or args.rank2r % 2:
            raise InputError("--rank2r must be an even nonnegative integer")
        r = args.rank2r // 2
        deg_e = parse_expr(args.deg_e, QEPS)
        model = hrr.k3_model(args.deg_c2, deg_e)
        td = hrr.k3_todd_class(model)
        via_hrr = hrr.hrr_surface(model, r, model.element({"e": 1}), td)
        value = QEPS.coerce(via_hrr)
        same = True
        if args.deg_c2 == 24:
            same = QEPS.coerce(hrr.quadratic_euler_char_k3(r, deg_e)) == value
        out = {"command": "hrr k3", "rank2r": args.rank2r, "deg_c2": args.deg_c2,
               "deg_e": QEPS.fmt(deg_e), "todd": render(td), "chi": QEPS.fmt(value),
               "matches_closed_form": same}
        return out, f"chi~ = {QEPS.fmt(value)}", same
    # surface
    if args.todd is None or args.euler is None:
        raise InputError("hrr surface needs --todd and --euler")
    todd_obj = _read_json(args.todd)
    euler = _read_json(args.euler)
    if not isinstance(todd_obj, dict) or not isinstance(euler, dict):
        raise InputError("--todd and --euler must be JSON objects")
    try:
        rank2r = int(euler["rank2r"])
        deg_e = parse_expr(str(euler.get("deg_e", "0")), QEPS)
        e_terms = euler.get("class", {"e": "1"})
    except (KeyError, ValueError) as exc:
        raise InputError(f"bad --euler object: {exc}") from None
    if rank2r < 0 or rank2r % 2:
        raise InputError("rank2r must be an even nonnegative integer")
    model = hrr.k3_model(args.deg_c2, deg_e)

    def cls(obj):
        return model.element({_mono(k): parse_expr(str(v), QEPS) for k, v in obj.items()})

    td = cls(todd_obj)
    e = cls(e_terms)
    value = QEPS.coerce(hrr.hrr_surface(model, rank2r // 2, e, td))
    out = {"command": "hrr surface", "rank2r": rank2r, "deg_c2": args.deg_c2,
           "todd": render(td), "euler": render(e), "chi": QEPS.fmt(value)}
    return out, f"chi~ = {QEPS.fmt(value)}", True


def _mono(key: str):
    key = key.strip()
    if key in ("", "1"):
        return ()
    return tuple(p.strip() for p in key.split("*"))


# ---------------------------------------------------------------------------
# parser


def _add_law_args(p):
    p.add_argument("law", nargs="?", help="FTL JSON file (or inline JSON)")
    p.add_argument("--builtin", choices=BUILTINS)
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ftlcalc", description="Exact algebra of formal ternary laws.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the five axioms")
    _add_law_args(p)
    p.add_argument("--bound", type=int)
    p.add_argument("--perturb", action="append", metavar="aL_IJK=EXPR")
    p.add_argument("--against", choices=("additive",), help="also compare with a builtin law")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("show", help="print a law as JSON")
    _add_law_args(p)
    p.add_argument("--perturb", action="append", metavar="aL_IJK=EXPR")
    p.set_defaults(func=cmd_show, json=True)

    p = sub.add_parser("log", help="logarithm of a law over a rational ring")
    _add_law_args(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--check", action="store_true", help="transform and compare with the additive law")
    p.set_defaults(func=cmd_log)

    p = sub.add_parser("transform", help="transport a law along an isomorphism")
    _add_law_args(p)
    p.add_argument("--theta", required=True, help="isomorphism JSON (as printed by 'log')")
    p.add_argument("--degree", type=int)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("todd", help="Todd series and Todd classes")
    p.add_argument("--theta", default="", help="comma-separated a_2,a_3,... of theta(t)")
    p.add_argument("--theta-bound", type=int, help="theta is known through t^THETA_BOUND")
    p.add_argument("--ring", default="q")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--rank", type=int, help="symplectic rank 2n for the Todd class")
    p.add_argument("--bound", type=int, help="degree bound for the Todd class (b_i has degree 2i)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_todd)

    p = sub.add_parser("adams", help="Adams polynomials")
    p.add_argument("what", choices=("p", "omega", "q"))
    p.add_argument("n", type=int)
    p.add_argument("--part", choices=("plus", "minus"), default="plus")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_adams)

    p = sub.add_parser("borel", help="Borel character")
    p.add_argument("what", choices=("chi", "todd", "char"))
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--rank", type=int)
    p.add_argument("--part", choices=("W", "M"), default="W")
    p.add_argument("--degree", type=int, default=8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_borel)

    p = sub.add_parser("hrr", help="quadratic Riemann-Roch on surfaces")
    p.add_argument("what", choices=("k3", "surface"))
    p.add_argument("--rank2r", type=int)
    p.add_argument("--deg-e", default="0")
    p.add_argument("--deg-c2", type=int, default=24)
    p.add_argument("--todd")
    p.add_argument("--euler")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hrr)
    return parser


_INPUT_ERRORS = (InputError, io.FormatError, ExprSyntaxError, IllegalSymbol, ftl.InconsistentTable,
                 ValueError, SeriesError, RingError)
_CHECK_ERRORS = (LinearSystemError, adams.Mismatch, NotInvertible)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, text, passed = args.func(args)
    except _CHECK_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        if getattr(args, "json", False):
            sys.stdout.write(io.dumps({"command": args.command, "passed": False, "error": str(exc)}))
        return 1
    except _INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    if getattr(args, "json", False):
        sys.stdout.write(io.dumps(out))
    else:
        print(text)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
