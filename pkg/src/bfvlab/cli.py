"""Command line front end.

Exit codes: 0 success or affirmative verdict, 1 negative verdict, 2 input
error, 3 internal invariant failure.
"""
from __future__ import annotations

import argparse
import itertools
import json
import random
import sys

from . import bfv, suite, trees, voronov
from .oddsymplectic import NotPoissonError
from .setupfile import SetupFileError, load
from .superpoly import ParseError, parse, serialize

OK, NEGATIVE, INPUT, INTERNAL = 0, 1, 2, 3


class Report:
    """Ordered key/value lines, printed as text or as one JSON document."""

    def __init__(self, structured: bool):
        self.structured = structured
        self.items: list = []

    def add(self, key, value):
        self.items.append((key, value if isinstance(value, (bool, int, list, dict)) else str(value)))

    def emit(self, out):
        if self.structured:
            json.dump(dict(self.items), out, indent=1)
            out.write("\n")
            return
        for k, v in self.items:
            if isinstance(v, bool):
                v = "yes" if v else "no"
            elif isinstance(v, list):
                v = "; ".join(map(str, v))
            out.write(f"{k} = {v}\n")


def _setup(args, validate=True):
    sf, setup = load(args.setup)
    if validate:
        bfv.validate(setup)
    return sf, setup


def _bigrades(report, prefix, X):
    parts = bfv.bigrade_parts(X)
    if not parts:
        report.add(prefix, "0")
    for (m, n), part in parts.items():
        report.add(f"{prefix}({m},{n})", serialize(part))


def cmd_check(args, report):
    _, setup = _setup(args, validate=False)
    sq = voronov.sn_bracket(setup.Pi, setup.Pi)
    report.add("poisson", "ok" if not sq else f"FAIL [Pi,Pi] = {serialize(sq)}")
    bad = bfv.coisotropy_defects(setup.alg, setup.Pi)
    if bad:
        report.add("coisotropic", "FAIL not coisotropic: " + ", ".join(
            f"Pi[{a},{b}]|S = {serialize(v)}" for (a, b), v in bad.items()))
    else:
        report.add("coisotropic", "ok")
    return OK if not sq and not bad else NEGATIVE


def cmd_charge(args, report):
    _, setup = _setup(args)
    ch = setup.charge
    for k, L in enumerate(ch.levels):
        report.add(f"Omega_{k}", serialize(L))
    report.add("residual", serialize(setup.bracket(ch.total, ch.total)))
    return OK


def _table(report, label, fn, setup, max_arity):
    gens = suite.generators(setup)
    for k in range(1, max_arity + 1):
        for tup in itertools.combinations_with_replacement(gens, k):
            v = fn(k, list(tup))
            if v is not None and v:
                report.add(f"{label}^{k}({', '.join(map(str, tup))})", serialize(v))


def cmd_shla(args, report):
    _, setup = _setup(args)
    _table(report, "mu", lambda k, xs: voronov.shla_brackets(setup, k, xs), setup, args.max_arity)
    return OK


def cmd_transfer(args, report):
    _, setup = _setup(args)
    C = bfv.bfv_contraction(setup)
    L = bfv.transfer_input(setup)
    _table(report, "mu", lambda k, xs: trees.nu_k(C, L, k, xs), setup, args.max_arity)
    _table(report, "lambda", lambda k, xs: trees.lambda_k(C, L, k, xs), setup,
           min(args.max_arity, 2))
    return OK


def _section(setup, mus):
    if not mus:
        return None
    try:
        return [parse(m, setup.alg) for m in mus]
    except ParseError as err:
        raise SetupFileError(f"--mu: {err.message}", 0, err.column) from None


def cmd_mc(args, report):
    _, setup = _setup(args)
    mu = _section(setup, args.mu)
    r = bfv.extend_section_to_mc(setup, mu)
    report.add("coisotropic", r.coisotropic)
    if not r.coisotropic:
        report.add("obstruction", serialize(r.obstruction))
        return NEGATIVE
    omega = setup.charge.total
    _bigrades(report, "beta", r.beta)
    report.add("residual", serialize(bfv.mc_residual_bfv(setup, omega, r.beta)))
    report.add("normalized", bfv.is_normalized(r.beta))
    gens, certs = bfv.coisotrope_generators(setup, omega, r.beta, args.degree_bound)
    for j, h in enumerate(gens, 1):
        report.add(f"h{j}", serialize(h))
    for cert in certs:
        i, j = cert.pair
        key = f"certificate[h{i + 1},h{j + 1}]"
        if cert.found:
            report.add(key, [serialize(a) for a in cert.coefficients])
        else:
            report.add(key, f"none of degree <= {args.degree_bound}")
    return OK


def cmd_gauge(args, report):
    sf, setup = _setup(args)
    omega = setup.charge.total
    mu = _section(setup, args.mu)
    rng = random.Random(args.seed)
    first = bfv.extend_section_to_mc(setup, mu)
    report.add("coisotropic", first.coisotropic)
    if not first.coisotropic:
        report.add("obstruction", serialize(first.obstruction))
        return NEGATIVE
    shifts = {}
    if setup.e >= 2:
        alg = setup.alg
        eta = alg.const(rng.choice([1, 2, 3]))
        for n in alg.cs[:2] + alg.bs[:2]:
            eta = eta * alg(n)
        if alg.xs:
            eta = eta * alg(rng.choice(alg.xs))
        shifts = {1: eta}
    second = bfv.extend_section_to_mc(setup, mu, shifts)
    gens = bfv.gauge_between(setup, omega, first.beta, second.beta)
    for k, eps in enumerate(gens, 1):
        report.add(f"eps_{k}", serialize(eps))
    exact = bfv.apply_gauge(setup, gens, omega + first.beta) == omega + second.beta
    report.add("composite", "exact" if exact else "FAIL")
    order = args.order if args.order is not None else (sf.jet_order_eps or 2)
    beta = bfv.random_formal_mc(setup, rng, order)
    gammas, out = bfv.normalize_formal_mc(setup, omega, beta, order)
    for l, g in enumerate(gammas, 1):
        report.add(f"gamma_{l}", serialize(g))
    report.add("formal_normalized", all(bfv.is_normalized(b) for b in out[1:]))
    return OK if exact else INTERNAL


def cmd_verify(args, report):
    sf, setup = _setup(args)
    order = args.order if args.order is not None else (sf.jet_order_eps or 2)
    status = OK
    for check in suite.run(setup, args.seed, args.trials, args.max_arity, order):
        if check.ok:
            report.add(check.name, "PASS")
        else:
            report.add(check.name, f"FAIL {check.detail}".rstrip())
            status = NEGATIVE
            break
    return status


COMMANDS = {
    "check": (cmd_check, "Poisson and coisotropy verdicts"),
    "charge": (cmd_charge, "the BFV charge level by level"),
    "shla": (cmd_shla, "derived brackets on generators of the exterior normal bundle"),
    "mc": (cmd_mc, "extend a section to a Maurer-Cartan element or print its obstruction"),
    "transfer": (cmd_transfer, "transferred brackets and transfer morphism on generators"),
    "gauge": (cmd_gauge, "gauge between two extensions; normalize a formal perturbation"),
    "verify": (cmd_verify, "run the property suite on a setup"),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="bfvlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--setup", required=True, help="setup file")
        p.add_argument("--structured", action="store_true", help="emit one JSON document")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-arity", type=int, default=3)
        p.add_argument("--order", type=int, default=None, help="eps order for formal series")
        p.add_argument("--degree-bound", type=int, default=1)
        p.add_argument("--trials", type=int, default=20)
        p.add_argument("--mu", action="append", help="section component (repeat per fiber index)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT if exc.code else OK
    for opt in ("max_arity", "trials", "degree_bound"):
        if getattr(args, opt) < 0:
            print(f"error: --{opt.replace('_', '-')} must be nonnegative", file=sys.stderr)
            return INPUT
    if args.order is not None and args.order < 0:
        print("error: --order must be nonnegative", file=sys.stderr)
        return INPUT
    report = Report(args.structured)
    fn = COMMANDS[args.command][0]
    try:
        status = fn(args, report)
    except (SetupFileError, ParseError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return INPUT
    except (NotPoissonError, bfv.NotCoisotropicError) as err:
        report.add("refused", str(err))
        status = NEGATIVE
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return INPUT
    except bfv.InternalError as err:
        print(f"internal error: {err}", file=sys.stderr)
        return INTERNAL
    report.emit(sys.stdout)
    return status
