"""Recompute the worked examples: criterion values, mu_BR, certificates and rigidity verdicts.

    python scripts/reproduce_examples.py [--problems DIR]

Prints one block per problem file; nothing is cached.
"""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from rxbilip.invariants import analytic_triviality_check, invariant_report
from rxbilip.problem import load_problem
from rxbilip.rigidity import RigidityOptions, rigidity_verdict
from rxbilip.triviality import build_certificate, degree_criterion

ROOT = Path(__file__).resolve().parents[1]


def rigidity_options(pf) -> RigidityOptions:
    opts = pf.options
    choice = tuple(int(x) - 1 for x in opts["choice"].split(",")) if "choice" in opts else None
    asserted = frozenset(a.strip() for a in opts.get("assert", "").split(",") if a.strip())
    return RigidityOptions(choice, asserted, pf.kill_sets())


def describe(path: Path, cert_cap: int) -> None:
    pf = load_problem(path)
    prob = pf.problem()
    print(f"== {pf.name}: X = {{{prob.derlog.phi} = 0}}, F = {prob.F}, weights {prob.weights.weights}")
    t0 = time.perf_counter()
    rep = invariant_report(prob)
    print(f"   mu_BR {rep.mu_br}, stratum dim {rep.s}, rx codimension {rep.rx_cod}, good {rep.good_deformation}")
    try:
        for r in degree_criterion(prob):
            print(f"   criterion: fil {r.fil} vs threshold {r.threshold} -> {r.verdict}")
    except ValueError as exc:
        print(f"   criterion not applicable: {exc}")
    print(f"   analytic: {analytic_triviality_check(prob).verdict}")
    cert = build_certificate(prob, exponent_cap=cert_cap) if prob.n <= 3 else None
    if cert is not None:
        print(f"   minimal certificate exponents {cert.exponents()}, verified {cert.verified}")
    try:
        v = rigidity_verdict(prob, rigidity_options(pf))
        failed = [h.name for h in v.hypotheses if not h.holds]
        print(f"   rigidity: {v.conclusion} via {v.route}; failed hypotheses {failed or 'none'}")
    except ValueError as exc:
        print(f"   rigidity not applicable: {exc}")
    print(f"   ({time.perf_counter() - t0:.1f} s)")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--problems", type=Path, default=ROOT / "problems")
    ap.add_argument("--cap", type=int, default=20, help="exponent cap for the certificate search")
    args = ap.parse_args(argv)
    for path in sorted(args.problems.glob("*.ini")):
        describe(path, args.cap)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
