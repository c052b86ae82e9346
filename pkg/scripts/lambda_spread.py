"""Per-t Lipschitz constants of certificate fields as the control exponents grow.

    python scripts/lambda_spread.py [--points-per-radius N] [--seed S]

For each instance the minimal certificate is scaled by k = 1, 2, ... and the
largest given exponent tuple is appended; each row reports the per-t lambda
values, their relative spread and whether the sampled quotients stay bounded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from rxbilip.numeric import SamplerConfig, field_from_certificate, numeric_lipschitz_check
from rxbilip.triviality import build_certificate

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from conftest import brieskorn, quadric  # noqa: E402

INSTANCES = {
    "brieskorn_757": (brieskorn, (10, 14, 10)),
    "quadric_3332": (quadric, (12, 12, 12, 18)),
}


def sweep(name: str, sampler: SamplerConfig, scales=(1, 2, 3)) -> None:
    build, given = INSTANCES[name]
    prob = build()
    base = build_certificate(prob).exponents()
    tuples = [tuple(k * a for a in base) for k in scales] + [given]
    for exps in tuples:
        cert = build_certificate(prob, exponents=exps)
        if cert is None:
            print(f"{name:8s} {exps}: no certificate")
            continue
        rep = numeric_lipschitz_check(field_from_certificate(prob, cert), sampler)
        lams = ", ".join(f"{t}: {v:.4g}" for t, v in sorted(rep.lambda_per_t.items()))
        spread = "n/a" if rep.lambda_spread is None else f"{rep.lambda_spread:.3%}"
        print(f"{name:8s} {str(exps):18s} spread {spread:>8s}  supported {rep.supported}  [{lams}]")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points-per-radius", type=int, default=SamplerConfig().points_per_radius)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--instances", nargs="*", default=sorted(INSTANCES))
    args = ap.parse_args(argv)
    sampler = SamplerConfig(points_per_radius=args.points_per_radius, seed=args.seed)
    for name in args.instances:
        sweep(name, sampler)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
