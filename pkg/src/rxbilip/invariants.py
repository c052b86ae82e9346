"""Bruce-Roberts number, R_X-codimension, good deformations and analytic triviality.

Membership questions over the ring with t are germ questions at (0, 0); they
are decided exactly with ``local_membership`` (a unit multiplier is allowed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .derlog import Derlog, stratum_dim, theta_zero
from .groebner import (
    LocalDimensionUnsupported,
    LocalMembership,
    MonomialOrdering,
    local_membership,
    local_radical_membership,
    quotient_dim,
    radical_membership,
)
from .poly import Poly, VectorField, WeightSystem, apply_field, format_field, is_weighted_homogeneous


@dataclass(frozen=True)
class DeformationProblem:
    """F = f + t * sum(thetas) on X = {phi = 0}."""

    derlog: Derlog
    f: Poly
    thetas: tuple[Poly, ...]
    weights: WeightSystem
    order_kind: str = "wgrevlex"

    def __post_init__(self):
        object.__setattr__(self, "thetas", tuple(self.thetas))
        MonomialOrdering(self.order_kind)
        ctx = self.f.ctx
        if ctx != self.derlog.ctx:
            raise ValueError("f and X live in different contexts")
        if not ctx.has_parameter:
            raise ValueError("deformations need a context with the parameter t")
        for p in (self.f,) + self.thetas:
            if p.ctx != ctx:
                raise ValueError("theta lives in a different context")
            if p.involves_conjugates():
                raise ValueError(f"{p} involves conjugate variables")
            if p.constant_term() != 0:
                raise ValueError(f"{p} has a constant term, so F(0, t) != 0")
        if self.f.involves_parameter():
            raise ValueError("f must not involve t")

    @property
    def ctx(self):
        return self.f.ctx

    @property
    def n(self) -> int:
        return self.ctx.n

    @property
    def theta(self) -> Poly:
        out = Poly.zero(self.ctx)
        for th in self.thetas:
            out = out + th
        return out

    @property
    def F(self) -> Poly:
        return self.f + Poly.slot(self.ctx, self.ctx.t_index) * self.theta

    @property
    def dF_dt(self) -> Poly:
        return self.F.diff(self.ctx.t_index)

    def degree(self) -> int | None:
        return None if self.f.is_zero() else is_weighted_homogeneous(self.f, self.weights)

    def ordering(self) -> MonomialOrdering:
        return MonomialOrdering(self.order_kind, weights=self.weights)

    def with_theta(self, thetas: Sequence[Poly]) -> DeformationProblem:
        return DeformationProblem(self.derlog, self.f, tuple(thetas), self.weights, self.order_kind)

    def dF_generators(self, fields: Sequence[VectorField] | None = None) -> list[Poly]:
        fields = self.derlog.generators if fields is None else fields
        F = self.F
        return [apply_field(eta, F) for eta in fields]


@dataclass
class InvariantReport:
    mu_br: int | None
    s: int
    rx_cod: int | None
    good_deformation: bool | None = None
    notes: list[str] = field(default_factory=list)


def _ordering_for(dl: Derlog, ws: WeightSystem | None, kind: str = "wgrevlex") -> MonomialOrdering:
    ws = ws or dl.weights or WeightSystem((1,) * dl.n)
    return MonomialOrdering(kind, weights=ws)


def bruce_roberts_number(f: Poly, dl: Derlog, ws: WeightSystem | None = None,
                         kind: str = "wgrevlex") -> int | None:
    """dim O_n / <df(eta_1), ..., df(eta_r)>; None when infinite."""
    gens = [apply_field(eta, f) for eta in dl.generators]
    return quotient_dim(gens, _ordering_for(dl, ws, kind))


def singular_at_origin(f: Poly) -> bool:
    """df(0) = 0, i.e. f has no linear terms in the holomorphic variables."""
    n = f.ctx.n
    return not any(sum(e[:n]) == 1 and not any(e[n:]) for e in f.terms)


def rx_codimension_direct(f: Poly, dl: Derlog, ws: WeightSystem | None = None,
                          kind: str = "wgrevlex") -> int | None:
    """dim m_n / df(Theta_X^0), computed from the generators of Theta_X^0."""
    gens = [apply_field(eta, f) for eta in theta_zero(dl)]
    dim = quotient_dim(gens, _ordering_for(dl, ws, kind))
    return None if dim is None else dim - 1


def rx_codimension(f: Poly, dl: Derlog, ws: WeightSystem | None = None,
                   kind: str = "wgrevlex") -> int | None:
    """mu_BR + s - 1, cross-checked against the direct quotient of m_n by df(Theta_X^0).

    The identity needs a critical point of f at 0; for f regular at 0 the
    direct quotient is returned instead.
    """
    if not singular_at_origin(f):
        return rx_codimension_direct(f, dl, ws, kind)
    mu = bruce_roberts_number(f, dl, ws, kind)
    if mu is None:
        return None
    value = mu + stratum_dim(dl) - 1
    direct = rx_codimension_direct(f, dl, ws, kind)
    if direct != value:
        raise AssertionError(f"codimension mismatch: mu_BR + s - 1 = {value}, direct = {direct}")
    return value


def isolated_singularity(phi: Poly, ws: WeightSystem | None = None) -> bool | None:
    """Whether {phi = 0} has at most an isolated singular point at 0.

    Decided for weighted-homogeneous phi (finite Jacobian quotient); None otherwise.
    phi = 0 (X = C^n) counts as smooth.
    """
    if phi.is_zero():
        return True
    ws = ws or WeightSystem((1,) * phi.ctx.n)
    if is_weighted_homogeneous(phi, ws) is None:
        return None
    gens = [phi.diff(j) for j in range(phi.ctx.n)]
    try:
        return quotient_dim(gens, MonomialOrdering(weights=ws)) is not None
    except LocalDimensionUnsupported:
        return None


def _jointly_quasi_homogeneous(prob: DeformationProblem) -> bool:
    F = prob.F
    if F.is_zero():
        return False
    return is_weighted_homogeneous(F, prob.weights) is not None


@dataclass
class GoodDeformation:
    good: bool
    per_variable: dict[str, bool]
    global_check: bool
    notes: list[str] = field(default_factory=list)


def good_deformation_check(prob: DeformationProblem) -> GoodDeformation:
    """Whether the zero set of <dF(eta_i)> is the t-axis near (0, 0).

    Decided on germs: x_i must vanish on the germ at 0 of V(dF(eta_1), ...),
    tested by saturation.  The global Rabinowitsch test is reported too; it can
    only be stricter, because it also sees components away from the origin.
    """
    gens = prob.dF_generators()
    ctx = prob.ctx
    per = {}
    glob = True
    for i, nm in enumerate(ctx.names):
        xi = Poly.slot(ctx, i)
        per[nm] = local_radical_membership(xi, gens)
        if glob:
            glob = radical_membership(xi, gens, prob.ordering())
    good = all(per.values())
    notes = []
    if good and not glob:
        notes.append(
            "germ test passes but the global zero set has components away from the origin; "
            "the global Rabinowitsch test alone would have rejected this family"
        )
    if not _jointly_quasi_homogeneous(prob):
        notes.append("family is not jointly quasi-homogeneous: global and germ zero sets can differ")
    return GoodDeformation(good, per, glob, notes)


@dataclass
class AnalyticVerdict:
    verdict: str  # "trivial-with-certificate" | "not-in-tangent-space"
    theta_zero: list[VectorField]
    certificate: LocalMembership | None = None
    fixed_t: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def verify(self, prob: DeformationProblem) -> bool:
        if self.certificate is None:
            return False
        return self.certificate.check(prob.dF_dt, prob.dF_generators(self.theta_zero))


def fixed_t_membership(prob: DeformationProblem, t_values: Sequence) -> dict[str, bool]:
    """Germ membership of dF/dt in dF_t(Theta^0) with t frozen at each rational value."""
    th0 = theta_zero(prob.derlog)
    out = {}
    for tv in t_values:
        gens = [g.at_parameter(tv) for g in prob.dF_generators(th0)]
        target = prob.dF_dt.at_parameter(tv)
        out[str(tv)] = local_membership(target, gens, prob.ordering()) is not None
    return out


def analytic_triviality_check(prob: DeformationProblem, t_values: Sequence = ()) -> AnalyticVerdict:
    """Decide dF/dt in dF(Theta_X^0) for germs at (0, 0), with t a variable."""
    th0 = theta_zero(prob.derlog)
    gens = prob.dF_generators(th0)
    cert = local_membership(prob.dF_dt, gens, prob.ordering())
    notes = []
    fixed = {}
    if cert is not None:
        verdict = AnalyticVerdict("trivial-with-certificate", th0, cert)
        if cert.unit != Poly.const(prob.ctx, 1):
            notes.append(f"cofactors are divided by the unit {cert.unit}")
    else:
        verdict = AnalyticVerdict("not-in-tangent-space", th0)
        if t_values:
            fixed = fixed_t_membership(prob, t_values)
    verdict.fixed_t = fixed
    verdict.notes = notes
    return verdict


@dataclass(frozen=True)
class UnitWitness:
    index: int
    field: VectorField
    value: object

    def describe(self) -> str:
        return f"df(eta_{self.index + 1})(0) = {self.value} for eta = {format_field(self.field)}"


def unit_field_precheck(prob: DeformationProblem) -> UnitWitness | None:
    """A generator eta with df(eta)(0) != 0 makes every deformation analytically trivial."""
    for i, eta in enumerate(prob.derlog.generators):
        val = apply_field(eta, prob.f).constant_term()
        if val != 0:
            return UnitWitness(i, eta, val)
    return None


def invariant_report(prob: DeformationProblem) -> InvariantReport:
    dl = prob.derlog
    s = stratum_dim(dl)
    notes = []
    try:
        mu = bruce_roberts_number(prob.f, dl, prob.weights, prob.order_kind)
        if singular_at_origin(prob.f):
            rx = None if mu is None else mu + s - 1
        else:
            rx = rx_codimension_direct(prob.f, dl, prob.weights, prob.order_kind)
            notes.append("f is regular at 0: codimension taken from the direct quotient, "
                         "mu_BR + s - 1 needs a critical point")
    except LocalDimensionUnsupported as exc:
        mu, rx = None, None
        notes.append(str(exc))
    good = good_deformation_check(prob)
    return InvariantReport(mu, s, rx, good.good, notes + good.notes)
