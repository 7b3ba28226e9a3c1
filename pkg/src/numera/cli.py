"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 malformed input.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction

from .algnum import AlgNum, fmt_rational
from .automata import format_automaton
from .errors import DomainError, FormatError, NumeraError
from .system import NumerationSystem

EXIT_USAGE, EXIT_DOMAIN, EXIT_FORMAT = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class Printer:
    def __init__(self, exact: bool, digits: int):
        self.exact = exact
        self.digits = digits

    def num(self, x) -> str:
        if isinstance(x, AlgNum):
            if self.exact:
                return x.serialize(self.digits)
            return str(x)
        return fmt_rational(Fraction(x))

    def num_approx(self, x: AlgNum) -> str:
        base = self.num(x)
        if self.exact:
            return base
        return f"{base} (≈ {x.to_decimal(self.digits)})"


def parse_value(text: str, sys_field) -> AlgNum:
    """A rational ``p/q`` or a residue ``poly:[c0,c1,...]`` (coefficients of θ^0, θ^1, …)."""
    text = text.strip()
    if text.startswith("poly:"):
        body = text[5:].strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise FormatError(f"cannot parse value {text!r}")
        try:
            coeffs = [Fraction(c) for c in body[1:-1].split(",") if c.strip()]
        except ValueError as exc:
            raise FormatError(f"cannot parse value {text!r}") from exc
        return sys_field.element(coeffs)
    try:
        return sys_field(Fraction(text))
    except ValueError as exc:
        raise FormatError(f"cannot parse value {text!r}") from exc


def parse_poly(text: str) -> list[int]:
    """Integer coefficients, highest degree first, separated by commas or spaces."""
    try:
        coeffs = [int(c) for c in text.replace(",", " ").split()]
    except ValueError as exc:
        raise FormatError(f"cannot parse polynomial {text!r}") from exc
    if len(coeffs) < 2:
        raise FormatError("polynomial must have degree >= 1")
    return list(reversed(coeffs))


def budget(args) -> int:
    env = os.environ.get("NUMERA_BUDGET_STEPS")
    if env:
        try:
            n = int(env)
        except ValueError as exc:
            raise FormatError(f"NUMERA_BUDGET_STEPS={env!r} is not an integer") from exc
        if n <= 0:
            raise FormatError("NUMERA_BUDGET_STEPS must be positive")
        return n
    return args.max_steps


def _load(args) -> NumerationSystem:
    try:
        with open(args.automaton, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {args.automaton}: {exc.strerror}") from exc
    return NumerationSystem.from_text(text, horizon=args.horizon)


# -- subcommands -------------------------------------------------------------

def cmd_info(args, out: Printer):
    from .counting import check_rel_identity

    s = _load(args)
    d, g = s.dfa, s.profile
    print(f"alphabet: {' '.join(d.alphabet)}")
    print(f"states: {' '.join(map(str, d.states))}")
    print(f"theta: {out.num_approx(g.theta)}")
    print(f"minimal polynomial: {_poly_str(s.field.minpoly)}")
    print(f"polynomial degree of growth: {g.poly_degree}")
    for q in d.states:
        print(f"a[{q}] = {out.num(g.a_of(q))} ({g.classes[q].value})")
    print(f"sum identity holds: {check_rel_identity(d, g)}")
    u = [s.tables.u[d.initial][n] for n in range(min(10, s.horizon) + 1)]
    print(f"u(0..{len(u) - 1}): {' '.join(map(str, u))}")


def _poly_str(p) -> str:
    from . import _poly as P

    return P.to_str(p)


def cmd_val(args, out):
    s = _load(args)
    print(s.val(s.parse_word(args.word)))


def cmd_rep(args, out):
    s = _load(args)
    w = s.rep(args.n)
    print(s.format_word(w) if w else "ε")


def cmd_interval(args, out):
    s = _load(args)
    I = s.interval(s.parse_word(args.prefix))
    print(f"[{out.num(I.lower)}, {out.num(I.upper)}]")


def _print_rep(s: NumerationSystem, r, out: Printer, label="word"):
    if r.up is not None:
        print(f"{label} = {r.up.format(s.dfa.alphabet)}")
    else:
        print(f"{label} = {s.format_word(r.letters)}... (no period within budget)")


def cmd_represent(args, out):
    s = _load(args)
    x = parse_value(args.x, s.field)
    steps = budget(args)
    r = s.represent(x, steps)
    if args.cross_check:
        from .realline import represent_global

        r2 = represent_global(s.profile, s.dfa, x, steps, s.partitions)
        if r2.letters != r.letters:
            raise DomainError("global-interval iteration disagrees with the state iteration")
    _print_rep(s, r, out)
    if r.detection is not None:
        print(f"detected: step {r.detection[0]} = step {r.detection[1]}")
    if not args.no_trace:
        print("trace:")
        for n, st in enumerate(r.trace[: args.trace_limit]):
            letter = st.letter if st.letter is not None else "-"
            print(f"  {n} {st.state} {out.num(st.position)} {letter}")
    if args.both:
        r_left = s.represent(x, steps, convention="left")
        _print_rep(s, r_left, out, label="left")


def cmd_value_up(args, out):
    s = _load(args)
    w = s.parse_up(args.word)
    print(f"value = {out.num_approx(s.value_of_up(w))}")


def cmd_per(args, out):
    from .periodic import per_language

    s = _load(args)
    sys.stdout.write(format_automaton(per_language(s.dfa)))


def cmd_aper(args, out):
    from .periodic import aper_language

    s = _load(args)
    sys.stdout.write(format_automaton(aper_language(s.dfa)))


def cmd_uper(args, out):
    from .periodic import uper_omega

    s = _load(args)
    expr = uper_omega(s.dfa)
    print(f"blocks: {len(expr)}")
    sys.stdout.write(expr.serialize())


def cmd_fixed_points(args, out):
    from .affine import enumerate_up_values

    s = _load(args)
    vals = enumerate_up_values(s.profile, s.dfa, args.cycle_len, args.path_len)
    for v in sorted(vals, key=lambda v: v.value) if args.sort else vals:
        print(f"value = {out.num_approx(v.value)} word = {v.word.format(s.dfa.alphabet)} {v.describe()}")


def cmd_simplify(args, out):
    from .counting import simplify_language

    s = _load(args)
    sys.stdout.write(format_automaton(simplify_language(s.dfa, s.profile)))


def cmd_check(args, out):
    from .counting import check_hypothesis

    s = _load(args)
    for line in check_hypothesis(s.dfa, s.tables).lines():
        print(line)


def _pisot_setup(args):
    from .pisot import build_bertrand, field_from_coefficients, theta_expansion_of_one

    f = field_from_coefficients(parse_poly(args.poly))
    e = theta_expansion_of_one(f, budget=budget(args))
    return f, e, build_bertrand(e, f)


def cmd_pisot_expand1(args, out):
    from .pisot import field_from_coefficients, format_digits, pisot_check, theta_expansion_of_one

    f = field_from_coefficients(parse_poly(args.poly))
    print(f"theta: {f.theta.to_decimal(out.digits)}")
    print(f"pisot: {pisot_check(f).value}")
    e = theta_expansion_of_one(f, budget=budget(args))
    print(f"e(1) = {e.format()}")
    print(f"e*(1) = {format_digits(e.quasi)}")


def cmd_pisot_build(args, out):
    from .pisot import pisot_check

    f, e, b = _pisot_setup(args)
    print(f"pisot: {pisot_check(f).value}")
    print(f"e(1) = {e.format()}")
    print(f"U: {' '.join(map(str, b.sequence(args.terms)))}")
    print(f"recurrence: {' '.join(map(str, b.linear_recurrence()))}")
    print("[A]")
    sys.stdout.write(format_automaton(b.A))
    print("[A']")
    sys.stdout.write(format_automaton(b.A_prime))


def cmd_pisot_equiv(args, out):
    from .pisot import equivalence_check

    f, e, b = _pisot_setup(args)
    if args.samples:
        samples = [parse_value(x, f) for x in args.samples]
    else:
        samples = random_samples(f, args.random, args.seed)
    rep = equivalence_check(b, samples, args.digits_compare, max_len=args.max_len, max_steps=budget(args))
    for line in rep.lines():
        print(line)
    if not rep.ok:
        return EXIT_DOMAIN
    return 0


def random_samples(f, n: int, seed: int, height: int = 12) -> list:
    """Elements (a + bθ)/c of Q(θ) ∩ [1/θ, 1] with small integers a, b, c."""
    rng = random.Random(seed)
    theta = f.theta
    lo = 1 / theta
    out = []
    while len(out) < n:
        a, b = rng.randint(-height, height), rng.randint(-height, height)
        c = rng.randint(1, height)
        x = (a + b * theta) / c
        if lo <= x <= 1:
            out.append(x)
    return out


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="numera", description="Abstract numeration systems and real-number representations.")
    p.add_argument("--exact", action="store_true", help="print exact residues with field data and decimals")
    p.add_argument("--digits", type=int, default=6, help="decimal digits (1..1000)")
    sub = p.add_subparsers(dest="cmd", parser_class=_Parser, metavar="subcommand")

    def auto(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--automaton", required=True, help="automaton file")
        sp.add_argument("--horizon", type=int, default=200, help="counting horizon")
        sp.set_defaults(fn=fn)
        return sp

    auto("info", cmd_info, "growth data of the language")
    auto("val", cmd_val, "position of a word").add_argument("--word", required=True)
    auto("rep", cmd_rep, "n-th word").add_argument("--n", type=int, required=True)
    auto("interval", cmd_interval, "interval of reals for a prefix").add_argument("--prefix", required=True)
    sp = auto("represent", cmd_represent, "representation of a real in [1/θ, 1]")
    sp.add_argument("--x", required=True, help="p/q or poly:[c0,c1,...]")
    sp.add_argument("--max-steps", type=int, default=10000)
    sp.add_argument("--both", action="store_true", help="also print the left-limit representation")
    sp.add_argument("--cross-check", action="store_true", help="rerun with nested global intervals")
    sp.add_argument("--no-trace", action="store_true")
    sp.add_argument("--trace-limit", type=int, default=200)
    auto("value-up", cmd_value_up, "value of u(v)^w").add_argument("--word", required=True)
    auto("per", cmd_per, "automaton of periods")
    auto("aper", cmd_aper, "automaton of preperiods")
    auto("uper", cmd_uper, "ultimately periodic words as prefix/period blocks")
    sp = auto("fixed-points", cmd_fixed_points, "values of pumped cycles")
    sp.add_argument("--cycle-len", type=int, default=4)
    sp.add_argument("--path-len", type=int, default=2)
    sp.add_argument("--sort", action="store_true", help="sort by value")
    auto("simplify", cmd_simplify, "drop states with zero weight")
    auto("check", cmd_check, "check the growth hypothesis")

    ps = sub.add_parser("pisot", help="greedy expansions in a Pisot base")
    psub = ps.add_subparsers(dest="pcmd", parser_class=_Parser, metavar="action")

    def pis(name, fn, help_):
        sp = psub.add_parser(name, help=help_)
        sp.add_argument("--poly", required=True, help="integer coefficients, highest degree first")
        sp.add_argument("--max-steps", type=int, default=10000)
        sp.set_defaults(fn=fn)
        return sp

    pis("expand1", cmd_pisot_expand1, "expansion of 1")
    pis("build", cmd_pisot_build, "the associated numeration system").add_argument("--terms", type=int, default=10)
    sp = pis("equiv", cmd_pisot_equiv, "compare greedy and abstract representations")
    sp.add_argument("--samples", nargs="*", default=None)
    sp.add_argument("--random", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--digits-compare", type=int, default=30)
    sp.add_argument("--max-len", type=int, default=5)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "fn", None) is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    if not 1 <= args.digits <= 1000:
        parser.error("--digits must lie in [1, 1000]")
    for name in ("horizon", "max_steps", "cycle_len", "terms", "random"):
        v = getattr(args, name, None)
        if v is not None and v <= 0:
            parser.error(f"--{name.replace('_', '-')} must be positive")
    out = Printer(args.exact, args.digits)
    try:
        code = args.fn(args, out)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumeraError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
