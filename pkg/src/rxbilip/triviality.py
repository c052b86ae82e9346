"""Filtration criterion and control-function certificates for bi-Lipschitz triviality.

A certificate is an exact identity in the doubled ring Q[x, conj(x), t]

    U * rho * dF/dt = sum_j alpha_j * dF(eta_j)

with rho = sum_i x_i^m_i conj(x_i)^m_i and U a polynomial unit (U(0) = 1)
coming from germ membership.  U = 1 whenever the memberships hold globally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .groebner import LocalMembership, local_membership
from .invariants import DeformationProblem, bruce_roberts_number
from .poly import Poly, conjugate, is_weighted_homogeneous, weighted_fil

__all__ = [
    "Certificate",
    "CriterionResult",
    "build_certificate",
    "degree_criterion",
    "minimal_multiplier",
]


@dataclass(frozen=True)
class CriterionResult:
    theta: Poly
    fil: int
    threshold: int
    verdict: str  # "trivial" | "inconclusive"
    degree: int
    permutation: tuple[int, ...]


def _check_homogeneous(prob: DeformationProblem) -> int:
    ws = prob.weights
    dl = prob.derlog
    if dl.weights is not None and dl.weights.weights != ws.weights:
        raise ValueError(f"X carries weights {dl.weights.weights}, f carries {ws.weights}")
    if not dl.phi.is_zero() and is_weighted_homogeneous(dl.phi, ws) is None:
        raise ValueError(f"phi = {dl.phi} is not weighted homogeneous for {ws.weights}")
    if prob.f.is_zero():
        raise ValueError("f is zero")
    d = is_weighted_homogeneous(prob.f, ws)
    if d is None:
        raise ValueError(f"f = {prob.f} is not weighted homogeneous for {ws.weights}")
    return d


def degree_criterion(prob: DeformationProblem, require_finite: bool = True) -> list[CriterionResult]:
    """Per theta: trivial when fil(theta) >= d + w_max - w_min, inconclusive otherwise.

    The criterion is only sufficient.  For equal weights the threshold is d.
    """
    d = _check_homogeneous(prob)
    ws = prob.weights
    if require_finite and bruce_roberts_number(prob.f, prob.derlog, ws, prob.order_kind) is None:
        raise ValueError("f is not finitely determined on X (infinite Bruce-Roberts number)")
    perm = ws.descending_permutation()
    threshold = d + max(ws.weights) - min(ws.weights)
    out = []
    for th in prob.thetas:
        fil = weighted_fil(th, ws)
        if fil == float("inf"):
            raise ValueError("zero deformation term")
        verdict = "trivial" if fil >= threshold else "inconclusive"
        out.append(CriterionResult(th, int(fil), threshold, verdict, d, perm))
    return out


@dataclass(frozen=True)
class Multiplier:
    slot: int
    exponent: int
    membership: LocalMembership


@dataclass
class Certificate:
    rho: Poly
    unit: Poly
    multipliers: list[Multiplier]
    alphas: list[Poly]
    target: Poly
    generators: list[Poly]
    verified: bool = False
    notes: list[str] = field(default_factory=list)

    def exponents(self) -> tuple[int, ...]:
        return tuple(m.exponent for m in self.multipliers)

    def residual(self) -> Poly:
        """U * rho * dF/dt - sum alpha_j dF(eta_j); zero for a valid certificate."""
        lhs = self.unit * self.rho * self.target
        rhs = Poly.zero(lhs.ctx)
        for a, g in zip(self.alphas, self.generators):
            rhs = rhs + a * g
        return lhs - rhs

    def verify(self) -> bool:
        ok = self.residual().is_zero() and self.unit.constant_term() != 0
        if self.multipliers:
            ok = ok and all(m.exponent >= 1 for m in self.multipliers)
        self.verified = ok
        return ok


def minimal_multiplier(prob: DeformationProblem, slot: int, cap: int,
                       start: int = 1) -> Multiplier | None:
    """Smallest m in [start, cap] with x_slot^m * dF/dt in <dF(eta_j)> at the origin."""
    gens = prob.dF_generators()
    target = prob.dF_dt
    order = prob.ordering()
    for m in range(start, cap + 1):
        lm = local_membership(target * Poly.slot(prob.ctx, slot, m), gens, order)
        if lm is not None:
            return Multiplier(slot, m, lm)
    return None


def build_certificate(prob: DeformationProblem, exponent_cap: int = 20,
                      exponents: Sequence[int] | None = None) -> Certificate | None:
    """Search monomial multipliers and assemble a verified control-function certificate.

    With ``exponents`` the multipliers x_i^exponents[i] are tried as given;
    otherwise each variable gets the smallest exponent up to ``exponent_cap``.
    Returns None when some variable has no multiplier within the cap.
    """
    ctx = prob.ctx
    if not ctx.has_conjugates:
        raise ValueError("certificates need conjugate variables in the context")
    gens = prob.dF_generators()
    target = prob.dF_dt
    n = ctx.n
    one = Poly.const(ctx, 1)

    if exponents is None:
        direct = local_membership(target, gens, prob.ordering())
        if direct is not None:
            cert = Certificate(one, direct.unit, [], list(direct.cofactors), target, gens,
                               notes=["dF/dt already lies in dF(Theta_X): rho = 1"])
            cert.verify()
            return cert
    mults: list[Multiplier] = []
    for i in range(n):
        if exponents is not None:
            m = exponents[i]
            lm = local_membership(target * Poly.slot(ctx, i, m), gens, prob.ordering())
            if lm is None:
                return None
            mults.append(Multiplier(i, m, lm))
        else:
            found = minimal_multiplier(prob, i, exponent_cap)
            if found is None:
                return None
            mults.append(found)

    rho = Poly.zero(ctx)
    for mu in mults:
        rho = rho + Poly.slot(ctx, mu.slot, mu.exponent) * Poly.slot(ctx, ctx.conj_index(mu.slot), mu.exponent)
    units = [mu.membership.unit for mu in mults]
    U = one
    for u in units:
        U = U * u
    alphas = [Poly.zero(ctx) for _ in gens]
    for k, mu in enumerate(mults):
        others = one
        for j, u in enumerate(units):
            if j != k:
                others = others * u
        cbar = Poly.slot(ctx, ctx.conj_index(mu.slot), mu.exponent) * others
        for j, beta in enumerate(mu.membership.cofactors):
            if beta:
                alphas[j] = alphas[j] + cbar * beta
    cert = Certificate(rho, U, mults, alphas, target, gens)
    if U != one:
        cert.notes.append("memberships hold only in the local ring; alphas are divided by the unit U")
    if not cert.verify():
        raise AssertionError("assembled certificate fails its identity")
    return cert


def is_real(p: Poly) -> bool:
    """Fixed by conjugation, e.g. a control function."""
    return conjugate(p) == p
