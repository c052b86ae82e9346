"""Command-line front end.

    rxbilip <command> PROBLEM.ini [--out report.json] [flags]

Exit status 0 means the computation ran, whatever the verdict; 2 means the
input or a precondition was rejected.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .derlog import stratum_dim
from .invariants import (
    analytic_triviality_check,
    bruce_roberts_number,
    good_deformation_check,
    isolated_singularity,
    rx_codimension,
    unit_field_precheck,
)
from .numeric import SamplerConfig, field_from_certificate, numeric_lipschitz_check, numeric_sup_hypothesis
from .poly import field_fil, format_field, is_weighted_homogeneous, weighted_fil
from .problem import ProblemFile, load_problem, parse_kill_sets
from .report import Report, jsonable
from .rigidity import RigidityOptions, restrict_to_plane, rigidity_verdict
from .triviality import build_certificate, degree_criterion

COMMANDS = ("derlog", "mubr", "fil", "good-def", "analytic", "check-trivial", "certificate",
            "check-rigidity", "restrict")


class InputError(Exception):
    pass


def _sampler(pf: ProblemFile, args) -> SamplerConfig:
    opt = pf.options
    base = SamplerConfig()

    def pick(flag, key, conv, default):
        v = getattr(args, flag)
        if v is not None:
            return v
        return conv(opt[key]) if key in opt else default

    t_vals = args.t_values if args.t_values is not None else (
        tuple(float(x) for x in opt["t_values"].split(",")) if "t_values" in opt else base.t_values)
    return replace(
        base,
        radii=pick("radii", "radii", int, base.radii),
        radius_factor=pick("radius_factor", "radius_factor", float, base.radius_factor),
        points_per_radius=pick("points_per_radius", "points_per_radius", int, base.points_per_radius),
        seed=pick("seed", "seed", int, base.seed),
        tolerance=pick("tolerance", "tolerance", float, base.tolerance),
        t_values=tuple(t_vals),
    )


def _cap(pf, args) -> int:
    if args.cap is not None:
        return args.cap
    return int(pf.options.get("exponent_cap", 20))


def _fields(dl) -> list[dict]:
    return [{"index": i + 1, "field": format_field(g), "degree": d, "euler": i == dl.euler_index}
            for i, (g, d) in enumerate(zip(dl.generators, dl.degrees))]


def cmd_derlog(pf, prob, args, out):
    dl = prob.derlog
    res = {
        "generators": _fields(dl),
        "degrees": list(dl.degrees),
        "stratum_dim": stratum_dim(dl),
        "isolated_singularity": isolated_singularity(dl.phi, prob.weights),
    }
    out.append(f"Theta_X for phi = {dl.phi}: {len(dl.generators)} generators")
    out.extend("  " + line for line in dl.describe())
    out.append(f"degrees {tuple(dl.degrees)}, stratum dimension {res['stratum_dim']}")
    return res, None


def cmd_mubr(pf, prob, args, out):
    dl = prob.derlog
    mu = bruce_roberts_number(prob.f, dl, prob.weights, prob.order_kind)
    s = stratum_dim(dl)
    rx = rx_codimension(prob.f, dl, prob.weights, prob.order_kind) if mu is not None else None
    unit = unit_field_precheck(prob)
    res = {"mu_br": mu, "stratum_dim": s, "rx_codimension": rx,
           "unit_field": None if unit is None else unit.describe()}
    out.append(f"mu_BR = {'infinite' if mu is None else mu}, s = {s}, "
               f"R_X-codimension = {'infinite' if rx is None else rx}")
    if unit is not None:
        out.append(f"unit field: {unit.describe()}")
    return res, None


def cmd_fil(pf, prob, args, out):
    ws = prob.weights
    d = is_weighted_homogeneous(prob.f, ws)
    gap = max(ws.weights) - min(ws.weights)
    thetas = [{"theta": th, "fil": weighted_fil(th, ws)} for th in prob.thetas]
    res = {
        "weights": list(ws.weights),
        "degree_f": d,
        "threshold": None if d is None else d + gap,
        "thetas": thetas,
        "generator_fil": [field_fil(g, ws) for g in prob.derlog.generators],
    }
    out.append(f"weights {ws.weights}, d = {d}, threshold d + w_max - w_min = {res['threshold']}")
    for t in thetas:
        out.append(f"  fil({t['theta']}) = {t['fil']}")
    return res, None


def cmd_good_def(pf, prob, args, out):
    g = good_deformation_check(prob)
    out.append(f"good deformation (germ test): {g.good}; global test: {g.global_check}")
    out.extend("  note: " + n for n in g.notes)
    return {"good": g.good, "per_variable": g.per_variable, "global_check": g.global_check, "notes": g.notes}, None


def cmd_analytic(pf, prob, args, out):
    unit = unit_field_precheck(prob)
    tv = pf.options.get("fixed_t")
    t_values = [x.strip() for x in tv.split(",")] if tv else ()
    v = analytic_triviality_check(prob, t_values)
    res = {"verdict": v.verdict, "theta_zero_size": len(v.theta_zero),
           "unit": None if v.certificate is None else v.certificate.unit,
           "cofactors": None if v.certificate is None else list(v.certificate.cofactors),
           "verified": v.verify(prob) if v.certificate is not None else None,
           "fixed_t": v.fixed_t, "unit_field": None if unit is None else unit.describe(), "notes": v.notes}
    out.append(f"analytic triviality: {v.verdict}")
    if unit is not None:
        out.append(f"  unit field present: {unit.describe()}")
    out.extend("  note: " + n for n in v.notes)
    return res, None


def cmd_check_trivial(pf, prob, args, out):
    crit = degree_criterion(prob)
    sampler = _sampler(pf, args)
    num = numeric_sup_hypothesis(prob, sampler)
    rows = [{"theta": c.theta, "fil": c.fil, "threshold": c.threshold, "verdict": c.verdict} for c in crit]
    verdict = "trivial" if all(c.verdict == "trivial" for c in crit) else "inconclusive"
    for c in crit:
        out.append(f"fil({c.theta}) = {c.fil} vs threshold {c.threshold} (d = {c.degree}): {c.verdict}")
    out.append(f"numeric sup hypothesis: {'supported' if num.supported else 'violated'}, "
               f"growth per radius step {[round(g, 6) for g in num.growth_factors]}")
    return {"verdict": verdict, "criterion": rows, "numeric": num.to_dict()}, sampler.seed


def cmd_certificate(pf, prob, args, out):
    exps = pf.options.get("exponents")
    exps = tuple(int(x) for x in exps.split(",")) if exps else None
    cert = build_certificate(prob, exponent_cap=_cap(pf, args), exponents=exps)
    if cert is None:
        out.append(f"no certificate with exponents {'up to ' + str(_cap(pf, args)) if exps is None else exps}")
        return {"found": False, "exponent_cap": _cap(pf, args), "exponents": exps}, None
    sampler = _sampler(pf, args)
    num = numeric_lipschitz_check(field_from_certificate(prob, cert), sampler)
    out.append(f"certificate: exponents {cert.exponents()}, rho = {cert.rho}, verified {cert.verified}")
    out.append(f"  unit U = {cert.unit}")
    out.append(f"  numeric Lipschitz check: supported {num.supported}, lambda spread {num.lambda_spread}")
    res = {
        "found": True, "exponents": list(cert.exponents()), "rho": cert.rho, "unit": cert.unit,
        "alphas": cert.alphas, "verified": cert.verified, "notes": cert.notes, "numeric": num.to_dict(),
    }
    return res, sampler.seed


def _rigidity_options(pf, prob, args) -> RigidityOptions:
    asserted = set(args.asserted or [])
    if "assert" in pf.options:
        asserted |= {a.strip() for a in pf.options["assert"].split(",") if a.strip()}
    kill = None
    if args.kill:
        kill = tuple(k for raw in args.kill for k in parse_kill_sets(raw, pf.variables))
    elif "kill" in pf.options:
        kill = pf.kill_sets()
    choice = pf.options.get("choice")
    choice = tuple(int(x) - 1 for x in choice.split(",")) if choice else None
    return RigidityOptions(choice, frozenset(asserted), kill)


def _hyp_rows(v):
    return [{"name": h.name, "status": h.status, "detail": h.detail} for h in v.hypotheses]


def cmd_check_rigidity(pf, prob, args, out):
    opts = _rigidity_options(pf, prob, args)
    v = rigidity_verdict(prob, opts)
    names = prob.ctx.names
    out.append(f"rigidity: {v.conclusion} (route {v.route}), scalar constant "
               f"{'none' if v.scalar_constant is None else v.scalar_constant}")
    for h in v.hypotheses:
        out.append(f"  [{h.status}] {h.name}: {h.detail}")
    out.extend("  note: " + n for n in v.notes)
    res = {
        "conclusion": v.conclusion, "route": v.route, "scalar_constant": v.scalar_constant,
        "polar_choice": [i + 1 for i in v.polar_choice], "hypotheses": _hyp_rows(v),
        "tried_kill_sets": [[names[i] for i in k] for k in v.tried_kill_sets], "notes": v.notes,
    }
    if v.sub_verdict is not None:
        sub = v.sub_verdict
        res["restriction"] = {
            "kill": [names[i] for i in v.restriction.kill],
            "checks": [{"name": h.name, "status": h.status, "detail": h.detail} for h in v.restriction.checks],
            "F0": v.restriction.problem.F,
            "theta0": list(v.restriction.problem.thetas),
            "conclusion": sub.conclusion, "hypotheses": _hyp_rows(sub),
            "scalar_constant": sub.scalar_constant,
        }
    return res, None


def cmd_restrict(pf, prob, args, out):
    kill_sets = tuple(k for raw in (args.kill or []) for k in parse_kill_sets(raw, pf.variables)) or pf.kill_sets()
    if not kill_sets:
        raise InputError("restrict needs --kill or a kill option in the problem file")
    names = prob.ctx.names
    rows = []
    for kill in kill_sets:
        r = restrict_to_plane(prob, kill)
        row = {"kill": [names[i] for i in kill], "generic": r.generic,
               "checks": [{"name": h.name, "status": h.status, "detail": h.detail} for h in r.checks]}
        out.append(f"kill {tuple(names[i] for i in kill)}: generic {r.generic}")
        if r.problem is not None:
            row["phi0"] = r.problem.derlog.phi
            row["F0"] = r.problem.F
            row["generators"] = _fields(r.problem.derlog)
            out.append(f"  X0 = {{{r.problem.derlog.phi} = 0}}, F0 = {r.problem.F}")
            out.extend("  " + line for line in r.problem.derlog.describe())
        for h in r.checks:
            out.append(f"  [{h.status}] {h.name}: {h.detail}")
        rows.append(row)
    return {"restrictions": rows}, None


HANDLERS = {
    "derlog": cmd_derlog, "mubr": cmd_mubr, "fil": cmd_fil, "good-def": cmd_good_def,
    "analytic": cmd_analytic, "check-trivial": cmd_check_trivial, "certificate": cmd_certificate,
    "check-rigidity": cmd_check_rigidity, "restrict": cmd_restrict,
}


def _t_values(raw: str) -> tuple[float, ...]:
    return tuple(float(x) for x in raw.split(",") if x.strip())


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rxbilip", description="Triviality and rigidity checks for deformations on X.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("problem", help="problem file (INI)")
    ap.add_argument("--out", help="write the JSON report here")
    ap.add_argument("--ordering", choices=("wgrevlex", "lex"))
    ap.add_argument("--cap", type=int, help="exponent cap for the multiplier search")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--radii", type=int)
    ap.add_argument("--radius-factor", dest="radius_factor", type=float)
    ap.add_argument("--points-per-radius", dest="points_per_radius", type=int)
    ap.add_argument("--t-values", dest="t_values", type=_t_values)
    ap.add_argument("--tolerance", type=float)
    ap.add_argument("--assert", dest="asserted", action="append", metavar="HYPOTHESIS",
                    help="mark a rigidity hypothesis as user-asserted (repeatable)")
    ap.add_argument("--kill", action="append", metavar="COORDS",
                    help="coordinates to set to zero, names or 1-based indices (repeatable)")
    return ap


def execute(argv=None, stdout=None) -> tuple[int, Report | None]:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    lines: list[str] = []
    try:
        pf = load_problem(args.problem)
        prob = pf.problem(args.ordering)
        results, seed = HANDLERS[args.command](pf, prob, args, lines)
    except (ValueError, InputError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, None
    inputs = pf.echo()
    inputs["flags"] = {k: v for k, v in sorted(vars(args).items())
                       if k not in ("command", "problem", "out") and v is not None}
    report = Report(args.command, inputs, jsonable(results), seed)
    for line in lines:
        print(line, file=stdout)
    if args.out:
        report.write(args.out)
    return 0, report


def main(argv=None) -> int:
    code, _ = execute(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
