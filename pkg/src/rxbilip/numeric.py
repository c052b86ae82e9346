"""Floating-point checks of the Lipschitz estimates on weighted spheres.

Points are sampled as x_i = r^{w_i} * xh_i with xh on the unit weighted sphere
and r running through a geometric ladder of powers of two.  Every polynomial
is evaluated as ``mantissa * 2**exponent`` from its weighted-graded parts at
xh, so high-degree control functions do not underflow and homogeneous ratios
scale exactly from one radius to the next.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .derlog import theta_zero
from .invariants import DeformationProblem
from .poly import Poly, VectorField, WeightSystem, apply_field, field_fil, monomial_fil

__all__ = [
    "CertificateField",
    "NumericReport",
    "SamplerConfig",
    "TheoremField",
    "ZeroField",
    "build_theorem_field",
    "field_from_certificate",
    "numeric_lipschitz_check",
    "numeric_sup_hypothesis",
]


@dataclass(frozen=True)
class SamplerConfig:
    radii: int = 8
    radius_factor: float = 0.5
    points_per_radius: int = 256
    t_values: tuple[float, ...] = (0.0, 0.5, 1.0)
    seed: int = 0
    tolerance: float = 0.1
    r_max: float = 0.25
    step: float = 1e-4

    def __post_init__(self):
        object.__setattr__(self, "t_values", tuple(float(t) for t in self.t_values))
        if self.radii < 1 or self.points_per_radius < 1 or not self.t_values:
            raise ValueError("degenerate sampler: no samples")
        if not 0 < self.radius_factor < 1:
            raise ValueError("radius_factor must lie in (0, 1)")
        if self.r_max <= 0:
            raise ValueError("r_max must be positive")

    def log2_radii(self) -> list[float]:
        base = math.log2(self.r_max)
        f = math.log2(self.radius_factor)
        return [base + k * f for k in range(self.radii)]


@dataclass
class NumericReport:
    bound_kind: str  # "sup-hypothesis" | "component-growth" | "lipschitz-quotient" | "residual"
    samples: int
    max_ratio: float
    estimated_constant: float
    supported: bool
    violations: list[dict] = field(default_factory=list)
    per_radius: list[float] = field(default_factory=list)
    growth_factors: list[float] = field(default_factory=list)
    lambda_per_t: dict[str, float] = field(default_factory=dict)
    lambda_spread: float | None = None
    residual_max: float | None = None
    seed: int = 0
    config: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# Scaled arithmetic: value = m * 2**e with a scalar exponent per array


class _S:
    __slots__ = ("m", "e")

    def __init__(self, m, e: float):
        self.m = np.asarray(m, dtype=complex)
        self.e = float(e)

    def __mul__(self, o):
        if isinstance(o, _S):
            return _S(self.m * o.m, self.e + o.e)
        return _S(self.m * o, self.e)

    def __truediv__(self, o):
        # 0/0 only occurs at the origin, which callers overwrite with V(0, t) = 0
        with np.errstate(divide="ignore", invalid="ignore"):
            return _S(self.m / o.m, self.e - o.e)

    def __add__(self, o):
        if not np.any(self.m):
            return o
        if not np.any(o.m):
            return self
        e = max(self.e, o.e)
        return _S(self.m * np.exp2(self.e - e) + o.m * np.exp2(o.e - e), e)

    def __sub__(self, o):
        return self + _S(-o.m, o.e)

    def conj(self):
        return _S(np.conj(self.m), self.e)

    def abs(self):
        return _S(np.abs(self.m), self.e)

    def value(self):
        return self.m * np.exp2(self.e)

    def log2abs(self):
        with np.errstate(divide="ignore"):
            return np.log2(np.abs(self.m)) + self.e


def _zero(shape) -> _S:
    return _S(np.zeros(shape, dtype=complex), 0.0)


class _ScaledPoly:
    """Evaluator of p(r^w * xh, t) as a scaled number, from the graded parts of p."""

    def __init__(self, p: Poly, weights: WeightSystem):
        ctx = p.ctx
        sw = list(WeightSystem(weights.weights).slot_weights(ctx))
        groups: dict[int, dict] = {}
        for e, c in p.terms.items():
            groups.setdefault(monomial_fil(e, sw), {})[e] = c
        self.parts = sorted((k, Poly(ctx, t, _trusted=True).compile()) for k, t in groups.items())
        self.is_zero = not self.parts

    def __call__(self, xh, log2r: float, t) -> _S:
        shape = np.asarray(xh).shape[1:]
        if self.is_zero:
            return _zero(shape)
        kmin = self.parts[0][0]
        m = np.zeros(shape, dtype=complex)
        for k, fn in self.parts:
            m = m + fn(xh, t) * np.exp2((k - kmin) * log2r)
        return _S(m, kmin * log2r)


def _unit_sphere(ws: WeightSystem, count: int, rng) -> np.ndarray:
    n = ws.n
    z = rng.standard_normal((n, count)) + 1j * rng.standard_normal((n, count))
    nrm = ws.norm(z)
    return np.stack([z[i] * nrm ** (-float(w)) for i, w in enumerate(ws.weights)])


def _points(xh: np.ndarray, ws: WeightSystem, log2r: float) -> np.ndarray:
    return np.stack([xh[i] * np.exp2(w * log2r) for i, w in enumerate(ws.weights)])


# ---------------------------------------------------------------------------
# Fields


class _NumericField:
    """Common interface: scaled components of V and the residual of dF(V) = dF/dt."""

    prob: DeformationProblem
    label: str

    def _setup_common(self, prob: DeformationProblem):
        self.prob = prob
        ws = prob.weights
        self._dFdt = _ScaledPoly(prob.dF_dt, ws)
        self._grad = [_ScaledPoly(prob.F.diff(j), ws) for j in range(prob.n)]

    def scaled(self, xh, log2r, t) -> list[_S]:
        raise NotImplementedError

    def values(self, xh, log2r, t) -> np.ndarray:
        comps = self.scaled(xh, log2r, t)
        return np.stack([c.value() for c in comps])

    def residual(self, xh, log2r, t) -> np.ndarray:
        """|dF/dt - dF(V)| divided by |dF/dt| + sum_j |dF/dx_j| |V_j|."""
        comps = self.scaled(xh, log2r, t)
        lhs = self._dFdt(xh, log2r, t)
        acc = _zero(lhs.m.shape)
        scale = lhs.abs()
        for g, v in zip(self._grad, comps):
            gv = g(xh, log2r, t) * v
            acc = acc + gv
            scale = scale + gv.abs()
        diff = lhs - acc
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.abs(diff.m) * np.exp2(diff.e - scale.e) / np.abs(scale.m)
        return np.nan_to_num(out, nan=0.0)


class TheoremField(_NumericField):
    """V = (dF/dt / rho^2) * sum_i conj(rho_i) ||x||^(2 e_i) eta_i with rho_i = dF(eta_i).

    rho^2 = sum_i |rho_i|^2 ||x||^(2 e_i), e_i = S - d_i, S = max d_i, and V(0, t) = 0.
    """

    label = "theorem"

    def __init__(self, prob: DeformationProblem, generators: Sequence[VectorField] | None = None):
        self._setup_common(prob)
        ws = prob.weights
        gens = list(generators) if generators is not None else theta_zero(prob.derlog)
        self.generators = gens
        self.d_list = [int(field_fil(g, ws)) for g in gens]
        self.S = max(self.d_list)
        self.e_list = [self.S - d for d in self.d_list]
        self._rho = [_ScaledPoly(apply_field(g, prob.F), ws) for g in gens]
        self._eta = [[_ScaledPoly(c, ws) for c in g.components] for g in gens]

    def rho_squared(self, xh, log2r, t) -> _S:
        nrm = self.prob.weights.norm(xh)
        out = _zero(nrm.shape)
        for rho, e in zip(self._rho, self.e_list):
            r = rho(xh, log2r, t)
            out = out + (r.conj() * r) * _S(nrm ** (2 * e), 2 * e * log2r)
        return out

    def scaled(self, xh, log2r, t) -> list[_S]:
        ws = self.prob.weights
        nrm = ws.norm(xh)
        shape = nrm.shape
        theta = self._dFdt(xh, log2r, t)
        den = _zero(shape)
        comps = [_zero(shape) for _ in range(self.prob.n)]
        for rho, e, eta in zip(self._rho, self.e_list, self._eta):
            r = rho(xh, log2r, t)
            pw = _S(nrm ** (2 * e), 2 * e * log2r)
            den = den + (r.conj() * r) * pw
            coef = r.conj() * pw
            for k, c in enumerate(eta):
                if not c.is_zero:
                    comps[k] = comps[k] + coef * c(xh, log2r, t)
        out = []
        zero_pts = np.all(xh == 0, axis=0)
        for c in comps:
            v = (theta * c) / den
            v.m = np.where(zero_pts, 0, v.m)
            out.append(v)
        return out


class CertificateField(_NumericField):
    """V = (1 / (U rho)) * sum_j alpha_j eta_j from an exact certificate."""

    label = "certificate"

    def __init__(self, prob: DeformationProblem, rho: Poly, unit: Poly, alphas: Sequence[Poly],
                 generators: Sequence[VectorField] | None = None):
        self._setup_common(prob)
        ws = prob.weights
        gens = list(generators) if generators is not None else list(prob.derlog.generators)
        self.generators = gens
        self._den = _ScaledPoly(unit * rho, ws)
        self._terms = []
        for a, g in zip(alphas, gens):
            if a.is_zero():
                continue
            self._terms.append([(_ScaledPoly(a * c, ws) if c else None) for c in g.components])

    def scaled(self, xh, log2r, t) -> list[_S]:
        shape = np.asarray(xh).shape[1:]
        den = self._den(xh, log2r, t)
        comps = [_zero(shape) for _ in range(self.prob.n)]
        for row in self._terms:
            for k, sp in enumerate(row):
                if sp is not None:
                    comps[k] = comps[k] + sp(xh, log2r, t)
        zero_pts = np.all(np.asarray(xh) == 0, axis=0)
        out = []
        for c in comps:
            v = c / den
            v.m = np.where(zero_pts, 0, v.m)
            out.append(v)
        return out


class ZeroField(_NumericField):
    label = "zero"

    def __init__(self, prob: DeformationProblem):
        self._setup_common(prob)

    def scaled(self, xh, log2r, t) -> list[_S]:
        shape = np.asarray(xh).shape[1:]
        return [_zero(shape) for _ in range(self.prob.n)]


def build_theorem_field(prob: DeformationProblem) -> TheoremField:
    return TheoremField(prob)


def field_from_certificate(prob: DeformationProblem, cert, drop: int | None = None) -> CertificateField:
    """Numeric field of a certificate; ``drop`` zeroes one alpha (falsification check)."""
    alphas = list(cert.alphas)
    if drop is not None:
        alphas[drop] = Poly.zero(prob.ctx)
    return CertificateField(prob, cert.rho, cert.unit, alphas)


# ---------------------------------------------------------------------------
# Checks


def _config_dict(cfg: SamplerConfig) -> dict:
    d = asdict(cfg)
    d["t_values"] = list(cfg.t_values)
    return d


def numeric_sup_hypothesis(prob: DeformationProblem, sampler: SamplerConfig = SamplerConfig()) -> NumericReport:
    """max over samples of |dF/dt| / max_i |dF_t(eta_i)| r^(-d_i + w_max - w_min), per radius."""
    ws = prob.weights
    rng = np.random.default_rng(sampler.seed)
    xh = _unit_sphere(ws, sampler.points_per_radius, rng)
    gens = theta_zero(prob.derlog)
    d_list = [int(field_fil(g, ws)) for g in gens]
    rho = [_ScaledPoly(apply_field(g, prob.F), ws) for g in gens]
    dfdt = _ScaledPoly(prob.dF_dt, ws)
    gap = max(ws.weights) - min(ws.weights)
    per_radius = []
    worst = []
    for log2r in sampler.log2_radii():
        best = None
        for t in sampler.t_values:
            num = dfdt(xh, log2r, t).log2abs()
            den = np.full(num.shape, -np.inf)
            for r, d in zip(rho, d_list):
                den = np.maximum(den, r(xh, log2r, t).log2abs() + (-d + gap) * log2r)
            with np.errstate(invalid="ignore"):
                ratio = np.exp2(num - den)
            ratio = np.where(np.isneginf(num), 0.0, ratio)
            k = int(np.nanargmax(ratio))
            if best is None or ratio[k] > best[0]:
                best = (float(ratio[k]), k, t)
        per_radius.append(best[0])
        worst.append(best)
    growth = [per_radius[k + 1] / per_radius[k] if per_radius[k] > 0 else math.inf
              for k in range(len(per_radius) - 1)]
    max_ratio = max(per_radius)
    tail = growth[-1] if growth else 1.0
    supported = math.isfinite(max_ratio) and tail <= 1 + sampler.tolerance
    violations = []
    if not supported:
        ratio, k, t = worst[-1]
        violations.append({
            "radius_log2": sampler.log2_radii()[-1],
            "t": t,
            "direction": [[float(z.real), float(z.imag)] for z in xh[:, k]],
            "ratio": ratio,
            "growth_per_step": tail,
        })
    return NumericReport(
        "sup-hypothesis", sampler.radii * sampler.points_per_radius * len(sampler.t_values),
        max_ratio, max_ratio, supported, violations, per_radius, growth,
        seed=sampler.seed, config=_config_dict(sampler),
    )


def numeric_lipschitz_check(fld: _NumericField, sampler: SamplerConfig = SamplerConfig(),
                            residual_tol: float = 1e-9) -> NumericReport:
    """Residual of dF(V) = dF/dt, growth |V_j| <= C r^(w_j + w_max - w_min), and difference quotients."""
    prob = fld.prob
    ws = prob.weights
    n = ws.n
    rng = np.random.default_rng(sampler.seed)
    xh = _unit_sphere(ws, sampler.points_per_radius, rng)
    dirs = rng.standard_normal((n, sampler.points_per_radius)) + 1j * rng.standard_normal((n, sampler.points_per_radius))
    dirs = dirs / np.linalg.norm(dirs, axis=0)
    partner = np.roll(np.arange(sampler.points_per_radius), 1)
    gap = max(ws.weights) - min(ws.weights)
    radii = sampler.log2_radii()
    samples = len(radii) * sampler.points_per_radius * len(sampler.t_values)
    cfg = _config_dict(sampler)

    res_max = 0.0
    for log2r in radii:
        for t in sampler.t_values:
            res_max = max(res_max, float(np.max(fld.residual(xh, log2r, t))))
    if not res_max < residual_tol:
        return NumericReport("residual", samples, math.inf, math.inf, False,
                             [{"residual_max": res_max}], residual_max=res_max,
                             seed=sampler.seed, config=cfg,
                             notes=["dF(V) != dF/dt: field rejected before the Lipschitz stage"])

    growth_per_radius = []
    lam = {}
    for t in sampler.t_values:
        lam_t = 0.0
        for ri, log2r in enumerate(radii):
            comps = fld.scaled(xh, log2r, t)
            C = 0.0
            for j, c in enumerate(comps):
                C = max(C, float(np.max(np.exp2(c.log2abs() - (ws.weights[j] + gap) * log2r))))
            if len(growth_per_radius) <= ri:
                growth_per_radius.append(C)
            else:
                growth_per_radius[ri] = max(growth_per_radius[ri], C)
            p = _points(xh, ws, log2r)
            vp = np.stack([c.value() for c in comps])
            # local perturbations, taken in rescaled coordinates
            qh = xh + sampler.step * dirs
            q = _points(qh, ws, log2r)
            vq = fld.values(qh, log2r, t)
            dq = np.linalg.norm(vp - vq, axis=0) / np.linalg.norm(p - q, axis=0)
            # pairs of points on the same sphere
            q2 = p[:, partner]
            vq2 = vp[:, partner]
            dist = np.linalg.norm(p - q2, axis=0)
            ok = dist > 0
            dq2 = np.linalg.norm(vp - vq2, axis=0)[ok] / dist[ok]
            lam_t = max(lam_t, float(np.max(dq)), float(np.max(dq2)) if dq2.size else 0.0)
        lam[repr(t)] = lam_t
    lmax = max(lam.values())
    spread = (lmax - min(lam.values())) / lmax if lmax > 0 else 0.0
    growth = [growth_per_radius[k + 1] / growth_per_radius[k] if growth_per_radius[k] > 0 else 0.0
              for k in range(len(growth_per_radius) - 1)]
    bounded = all(math.isfinite(v) for v in lam.values()) and (not growth or growth[-1] <= 1 + sampler.tolerance)
    supported = bounded and spread < sampler.tolerance
    violations = []
    if not bounded:
        violations.append({"component_growth": growth})
    if spread >= sampler.tolerance:
        violations.append({"lambda_spread": spread})
    return NumericReport(
        "lipschitz-quotient", samples, lmax, max(growth_per_radius), supported, violations,
        growth_per_radius, growth, lam, spread, res_max, sampler.seed, cfg,
        notes=["uniformity in t is tested as the relative spread of the per-t Lipschitz estimates"],
    )
