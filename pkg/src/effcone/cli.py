"""Command-line front end.

    effcone membership --s 4 --d 3 --mults 2,2,2,2
    effcone weakfano --s 6
    effcone oracle --d 2 --mults 1,1,1 --trials 3 --json

Exit status: 0 on success, 1 on domain errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import baselocus, divisor, effective, oracle
from .divisor import DivisorClass
from .errors import EffconeError
from .kernel import DEFAULT_PRIME, fraction_str

VERBS = ("membership", "decompose", "facets", "rays", "verify-duality", "incidence",
         "baselocus", "weakfano", "oracle", "splittings")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _rational_list(text: str) -> list[Fraction]:
    if not text.strip():
        return []
    return [_rational(x) for x in text.split(",")]


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="effcone",
        description="Effective cones, base loci and weak-Fano data of P^3 blown up in lines.",
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    def add(name, help_, s=True, divisor_opts=False):
        p = sub.add_parser(name, help=help_)
        if s:
            p.add_argument("--s", type=int, required=not divisor_opts,
                           help="number of lines (defaults to len(mults))")
        if divisor_opts:
            p.add_argument("--d", type=_rational, required=True, help="degree coefficient")
            p.add_argument("--mults", type=_rational_list, default=[],
                           help="comma-separated multiplicities, e.g. 1,1,3/2")
        p.add_argument("--json", action="store_true", help="emit JSON")
        return p

    add("membership", "decide effectivity with a certificate", divisor_opts=True)
    add("decompose", "constructive decomposition for s <= 4", divisor_opts=True)
    add("facets", "inequality list")
    add("rays", "extremal ray list")
    add("verify-duality", "compare inequality list and ray list by double description")
    add("incidence", "tight inequalities at each extremal ray")
    add("baselocus", "forced quadrics and transversals", divisor_opts=True)
    add("weakfano", "anticanonical degree and weak-Fano status")
    add("splittings", "decompositions of -K for s = 5, 6")
    p = add("oracle", "h^0 by interpolation over a prime field", divisor_opts=True)
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--seeds", type=_int_list, default=None,
                   help="comma-separated seeds (overrides --trials)")
    p.add_argument("--trials", type=int, default=3,
                   help="number of consecutive seeds starting at $EFFCONE_SEED (default 0)")
    p.add_argument("--samples", type=int, default=None,
                   help="also test quadric containment with this many points per quadric")
    return parser


def _divisor_from_args(args) -> DivisorClass:
    s = args.s if args.s is not None else len(args.mults)
    if s != len(args.mults):
        raise EffconeError(f"--s {s} but {len(args.mults)} multiplicities given")
    return DivisorClass(args.d, args.mults)


def _seeds(args) -> list[int]:
    if args.seeds:
        return args.seeds
    base = int(os.environ.get("EFFCONE_SEED", "0"))
    if args.trials < 1:
        raise EffconeError("--trials must be at least 1")
    return list(range(base, base + args.trials))


def _emit(payload, text: str, as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _cmd_membership(args, out):
    D = _divisor_from_args(args)
    _, cert = effective.is_effective(D)
    _emit(cert.to_dict(), cert.describe(), args.json, out)


def _cmd_decompose(args, out):
    cert = effective.decompose_paper_recipe(_divisor_from_args(args))
    _emit(cert.to_dict(), cert.describe(), args.json, out)


def _cmd_facets(args, out):
    ineqs = effective.inequality_list(args.s)
    payload = {"dim": args.s + 1, "rays": [], "inequalities": [list(q.normal) for q in ineqs]}
    text = "\n".join(f"{q.label:<14} {q.text}" for q in ineqs)
    _emit(payload, f"{len(ineqs)} inequalities in (d, m1..m{args.s}):\n{text}", args.json, out)


def _cmd_rays(args, out):
    rays = effective.ray_list(args.s)
    payload = {"dim": args.s + 1, "rays": [list(v) for _, v in rays], "inequalities": []}
    text = "\n".join(f"{g.name:<8} {list(v)}" for g, v in rays)
    _emit(payload, f"{len(rays)} rays:\n{text}", args.json, out)


def _cmd_verify_duality(args, out):
    audit = effective.facet_audit(args.s)
    lines = [
        f"s={args.s}: rays from inequalities match ray list: {'yes' if audit.rays_match else 'NO'}",
        f"facets from rays match facets from inequalities: {'yes' if audit.facets_match else 'NO'}",
        f"{len(audit.facets)} facets; {len(audit.genuine)} listed inequalities are facets, "
        f"{len(audit.redundant)} redundant, {len(audit.missing)} facets not listed",
    ]
    for f in audit.missing:
        lines.append(f"  unlisted facet: {list(f)}")
    listed = {r for _, r in effective.ray_list(args.s)}
    for r in audit.rays_from_inequalities:
        if r not in listed:
            lines.append(f"  extra ray of the inequality cone: {list(r)}")
    _emit(audit.to_dict(), "\n".join(lines), args.json, out)


def _cmd_incidence(args, out):
    report = effective.incidence_report(args.s)
    lines = []
    for e in report:
        status = "extremal" if e.extremal else "NOT pinned"
        line = f"{e.generator.name:<8} {status:<10} tight: {', '.join(e.tight)}"
        if e.listed is not None:
            line += f"\n{'':<8} listed set contained: {'yes' if e.listed_subset_of_tight else 'NO'}"
        lines.append(line)
    _emit([e.to_dict() for e in report], "\n".join(lines), args.json, out)


def _cmd_baselocus(args, out):
    rep = baselocus.base_locus(_divisor_from_args(args))
    lines = [f"target {rep.target}"]
    for t, k in rep.quadrics:
        lines.append(f"quadric Q_{''.join(map(str, t))} with multiplicity {fraction_str(k)}")
    for q, k in rep.transversal_pairs:
        lines.append(f"transversals t, t' to lines {list(q)} with multiplicity {fraction_str(k)}")
    if rep.is_empty:
        lines.append("no forced components")
    lines.append(f"divisorial residual {rep.residual}")
    _emit(rep.to_dict(), "\n".join(lines), args.json, out)


def _yes(b):
    return "yes" if b else "no"


def _cmd_weakfano(args, out):
    r = divisor.weak_fano_report(args.s)
    text = (f"(-K)^3 = {fraction_str(r.anticanonical_cube)}; nef: {_yes(r.is_nef)}; "
            f"big: {_yes(r.is_big)}; weak Fano: {_yes(r.is_weak_fano)}")
    _emit(r.to_dict(), text, args.json, out)


def _cmd_splittings(args, out):
    splits = divisor.anticanonical_splittings(args.s)
    payload = [[c.to_dict() for c in parts] for parts in splits]
    text = "\n".join(" + ".join(str(c) for c in parts) for parts in splits)
    _emit(payload, text, args.json, out)


def _cmd_oracle(args, out):
    D = _divisor_from_args(args)
    values = [D.d] + list(D.mults)
    if any(v.denominator != 1 or v < 0 for v in values):
        raise EffconeError("the oracle needs nonnegative integer degree and multiplicities")
    d, mults = int(D.d), [int(m) for m in D.mults]
    res = oracle.h0_generic(d, mults, prime=args.prime, seeds=_seeds(args))
    payload = res.to_dict()
    text = (f"h0(L_{d}({','.join(map(str, mults))})) per seed {list(res.seeds)}: "
            f"{list(res.h0_per_trial)}; generic estimate {res.h0_generic_estimate}")
    if args.samples is not None:
        checks = {}
        for t, _ in baselocus.quadric_multiplicities(D):
            name = "".join(map(str, t))
            ok = True
            for seed, count in zip(res.seeds, res.h0_per_trial):
                if count == 0:
                    continue
                cfg = oracle.sample_lines(len(mults), args.prime, seed)
                prob = oracle.InterpolationProblem(d, mults, cfg)
                ok = ok and oracle.containment_check(prob, t, samples=args.samples)
            checks[name] = ok
            text += f"\nquadric Q_{name} in base locus: {_yes(ok)}"
        payload["containment"] = checks
    _emit(payload, text, args.json, out)


_COMMANDS = {
    "membership": _cmd_membership,
    "decompose": _cmd_decompose,
    "facets": _cmd_facets,
    "rays": _cmd_rays,
    "verify-duality": _cmd_verify_duality,
    "incidence": _cmd_incidence,
    "baselocus": _cmd_baselocus,
    "weakfano": _cmd_weakfano,
    "splittings": _cmd_splittings,
    "oracle": _cmd_oracle,
}


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _COMMANDS[args.verb](args, out)
    except EffconeError as exc:
        err.write(f"error: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
