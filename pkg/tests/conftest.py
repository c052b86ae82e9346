"""Shared builders, strategies and the hypothesis profile for the suite."""

from __future__ import annotations

import itertools
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rxbilip.derlog import derlog_from_fields, derlog_generators
from rxbilip.invariants import DeformationProblem
from rxbilip.parser import parse_poly
from rxbilip.poly import Poly, VarContext, VectorField, WeightSystem

# Every property suite runs at least 200 derandomized (fixed-seed) examples.
settings.register_profile(
    "rxbilip",
    max_examples=200,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("rxbilip")

ROOT = Path(__file__).resolve().parents[1]
PROBLEMS = ROOT / "problems"


def make_problem(names, phi, weights, f, thetas, generators=None, order_kind="wgrevlex"):
    ctx = VarContext(tuple(names))
    ws = WeightSystem(tuple(weights))
    phi_p = parse_poly(phi, ctx)
    if generators is None:
        dl = derlog_generators(phi_p, ws)
    else:
        fields = [VectorField(ctx, [parse_poly(c, ctx) for c in comps]) for comps in generators]
        dl = derlog_from_fields(phi_p, fields, ws)
    return DeformationProblem(dl, parse_poly(f, ctx), tuple(parse_poly(t, ctx) for t in thetas), ws, order_kind)


CROSSCAP_GENS = (("u", "2*v", "2*w"), ("u", "v", "0"), ("0", "u^2", "2*v"), ("v", "u*w", "0"))
QUADRIC_GENS = (
    ("3*x", "3*y", "3*z", "2*w"),
    ("2*y", "-2*x", "0", "0"),
    ("2*z", "0", "-2*x", "0"),
    ("3*w^2", "0", "0", "-2*x"),
    ("0", "3*w^2", "0", "-2*y"),
    ("0", "2*z", "-2*y", "0"),
    ("0", "0", "3*w^2", "-2*z"),
)


def brieskorn(theta="u^3*v^4"):
    return make_problem("uvw", "2*u^5 - v^7 + w^5", (7, 5, 7), "u^5 + v^7 + 2*w^5", [theta])


def quadric(theta="x^2*w"):
    return make_problem("xyzw", "x^2 + y^2 + z^2 + w^3", (3, 3, 3, 2), "2*x^2 - y^2 - 3*z^2 + w^3",
                        [theta], generators=QUADRIC_GENS)


def crosscap(theta="u^6", weights=(1, 2, 2), f="u^6 + v^3 + w^3"):
    gens = CROSSCAP_GENS if weights == (1, 2, 2) else None
    return make_problem("uvw", "v^2 - u^2*w", weights, f, [theta], generators=gens)


def plane_curve(theta="x^2"):
    return make_problem("xw", "x^2 + w^3", (3, 2), "2*x^2 + w^3", [theta])


# ---------------------------------------------------------------------------
# Strategies

CTX3 = VarContext(("x", "y", "z"))
small_coeff = st.integers(-4, 4).filter(lambda c: c != 0)


def monomials_of_degree(weights, d):
    """Exponent tuples e with sum(e_i * w_i) == d."""
    n = len(weights)
    ranges = [range(d // w + 1) for w in weights]
    return [e for e in itertools.product(*ranges) if sum(a * w for a, w in zip(e, weights)) == d][: 10 * n]


def poly_from_terms(ctx, terms) -> Poly:
    out = Poly.zero(ctx)
    for e, c in terms:
        out = out + Poly.monomial(ctx, tuple(e) + (0,) * (ctx.nvars - len(e)), c)
    return out


@st.composite
def polys(draw, ctx=CTX3, max_exp=3, max_terms=5):
    k = draw(st.integers(0, max_terms))
    terms = [(tuple(draw(st.integers(0, max_exp)) for _ in range(ctx.n)), draw(small_coeff)) for _ in range(k)]
    return poly_from_terms(ctx, terms)


@st.composite
def weight_systems(draw, n=3, max_w=4):
    return WeightSystem(tuple(draw(st.integers(1, max_w)) for _ in range(n)))


@st.composite
def homogeneous_polys(draw, ctx, ws, degree, max_terms=4, nonzero=True):
    monos = monomials_of_degree(ws.weights, degree)
    if not monos:
        return Poly.zero(ctx)
    k = draw(st.integers(1 if nonzero else 0, min(max_terms, len(monos))))
    chosen = draw(st.lists(st.sampled_from(monos), min_size=k, max_size=k, unique=True))
    return poly_from_terms(ctx, [(e, draw(small_coeff)) for e in chosen])


@st.composite
def homogeneous_fields(draw, ctx, ws, degree):
    """Vector field with component j of weighted degree degree + w_j (zero allowed)."""
    comps = []
    for w in ws.weights:
        d = degree + w
        comps.append(draw(homogeneous_polys(ctx, ws, d, max_terms=3, nonzero=False)) if d >= 0 else Poly.zero(ctx))
    return VectorField(ctx, comps)


@pytest.fixture(scope="session")
def problems_dir() -> Path:
    return PROBLEMS


# ---------------------------------------------------------------------------
# Acceptance reporting: one line per criterion, repeated in the terminal summary

ACCEPTANCE_LINES: list[str] = []


def acceptance_record(number: int, title: str, ok: bool, detail: str, seconds: float) -> None:
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title} ({seconds:.1f} s)"
    if detail:
        line += f": {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
