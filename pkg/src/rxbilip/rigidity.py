"""Polar curves, rigidity hypotheses and restriction to coordinate planes.

Rigidity means: strongly rational R_X-bi-Lipschitz triviality of F = f + t*theta
forces R_X-analytic triviality.  When every non-Euler generator of Theta_X has
degree above the Euler field, rigidity further forces theta = c*f, so a theta
that is not a scalar multiple of f certifies non-triviality.  The checks below
are symbolic; genericity of the polar curve is a reported choice, never guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Sequence

from .derlog import Derlog, NonReducedError, derlog_generators, module_equal, stratum_dim
from .factor import SquarefreeDecomposition, divides, squarefree_decomposition
from .groebner import LocalDimensionUnsupported, local_radical_membership
from .invariants import DeformationProblem, bruce_roberts_number, isolated_singularity
from .poly import QQ, Poly, VarContext, VectorField, WeightSystem, apply_field, is_weighted_homogeneous, lie_bracket

__all__ = [
    "HYPOTHESES",
    "Hypothesis",
    "PlaneRestriction",
    "PolarCurve",
    "RigidityOptions",
    "RigidityVerdict",
    "bracket_divisibility",
    "genericity_checks",
    "polar_curve",
    "reducedness_check",
    "restrict_to_plane",
    "rigidity_verdict",
    "scalar_multiple_check",
]

HYPOTHESES = (
    "homogeneous-family",
    "unique-minimal-weight",
    "stratum-zero",
    "degree-regime",
    "no-branch",
    "isolated-singularity",
    "reduced-polar",
    "bracket-divisibility",
)


@dataclass(frozen=True)
class Hypothesis:
    name: str
    status: str  # "pass" | "fail" | "user-asserted"
    detail: str

    @property
    def holds(self) -> bool:
        return self.status in ("pass", "user-asserted")


@dataclass(frozen=True)
class PolarCurve:
    field_choice: tuple[int, ...]
    ideal_gens: tuple[Poly, ...]
    squarefree_data: tuple[SquarefreeDecomposition, ...]

    @property
    def phi(self) -> Poly:
        return self.ideal_gens[0]


def _euler_index(dl: Derlog) -> int:
    if dl.euler_index is None:
        raise ValueError("Theta_X has no Euler generator; weighted-homogeneous input is required")
    return dl.euler_index


def _default_choice(dl: Derlog, count: int) -> tuple[int, ...]:
    e = _euler_index(dl)
    others = sorted((i for i in range(len(dl.generators)) if i != e), key=lambda i: (dl.degrees[i], i))
    if len(others) < count:
        raise ValueError(f"need {count} non-Euler generators for the polar curve, have {len(others)}")
    return tuple(sorted(others[:count]))


def polar_curve(prob: DeformationProblem, choice: Sequence[int] | None = None) -> PolarCurve:
    """Gamma = {phi = 0, dF(eta_i) = 0 for i in choice}; the whole of X when n = 2.

    Indices refer to ``prob.derlog.generators``.  The default takes the n - 2
    lowest-degree non-Euler generators.
    """
    dl = prob.derlog
    n = prob.n
    if n < 2:
        raise ValueError("polar curves need n >= 2")
    if dl.phi.is_zero():
        raise ValueError("X = C^n has no defining equation")
    count = n - 2
    if choice is None:
        choice = _default_choice(dl, count) if count else ()
    choice = tuple(int(i) for i in choice)
    if len(set(choice)) != len(choice) or any(not 0 <= i < len(dl.generators) for i in choice):
        raise ValueError(f"invalid generator choice {choice}")
    if len(choice) != count:
        raise ValueError(f"a polar curve in C^{n} uses {count} generators, got {len(choice)}")
    if dl.euler_index is not None and dl.euler_index in choice:
        raise ValueError("the Euler field cannot cut out the polar curve")
    gens = [dl.phi] + prob.dF_generators([dl.generators[i] for i in choice])
    for g in gens[1:]:
        if g.is_zero():
            raise ValueError("a chosen generator annihilates F; the polar curve is not a curve")
    sq = tuple(squarefree_decomposition(g) for g in gens)
    return PolarCurve(choice, tuple(gens), sq)


def _min_weight_slot(ws: WeightSystem) -> int | None:
    low = min(ws.weights)
    slots = [i for i, w in enumerate(ws.weights) if w == low]
    return slots[0] if len(slots) == 1 else None


def _degree_regime(dl: Derlog, pc: PolarCurve) -> tuple[str, dict]:
    """Classify generator degrees against the Euler field.

    "step-1": every generator outside the polar choice is above deg(eta_e);
    "step-2": some generator outside the choice shares the Euler degree.
    ``all_greater`` records deg(eta_e) < deg(eta_i) for every i != e, the case
    that forces theta = c*f.
    """
    e = _euler_index(dl)
    de = dl.degrees[e]
    outside = [i for i in range(len(dl.generators)) if i != e and i not in pc.field_choice]
    equal_outside = [i for i in outside if dl.degrees[i] == de]
    info = {
        "pattern": tuple(dl.degrees),
        "equal_outside": tuple(equal_outside),
        "all_greater": all(dl.degrees[i] > de for i in range(len(dl.generators)) if i != e),
        "below_euler": tuple(i for i in range(len(dl.generators)) if dl.degrees[i] < de),
    }
    return ("step-2" if equal_outside else "step-1"), info


def reducedness_check(pc: PolarCurve) -> tuple[bool, tuple[SquarefreeDecomposition, ...]]:
    """Per-generator squarefreeness of the polar equations; strata are kept for the n = 3 path."""
    return all(s.is_squarefree() for s in pc.squarefree_data), pc.squarefree_data


def bracket_divisibility(prob: DeformationProblem, pc: PolarCurve, eta2_index: int, eta_i0_index: int) -> bool:
    """s^(k-1) divides [eta_2, eta_i0](F) for every multiplicity-k stratum s of dF(eta_2)."""
    dl = prob.derlog
    if eta2_index not in pc.field_choice:
        raise ValueError(f"generator {eta2_index} is not part of the polar choice {pc.field_choice}")
    sq = pc.squarefree_data[1 + pc.field_choice.index(eta2_index)]
    bracket = apply_field(lie_bracket(dl.generators[eta2_index], dl.generators[eta_i0_index]), prob.F)
    for s, k in sq.parts:
        if k >= 2 and not divides(s ** (k - 1), bracket):
            return False
    return True


def scalar_multiple_check(theta: Poly, f: Poly):
    """c with theta = c*f, or None."""
    if f.is_zero():
        raise ValueError("f is zero")
    if theta.is_zero():
        return QQ(0)
    e, c = f.sorted_terms()[0]
    if e not in theta.terms:
        return None
    ratio = theta.terms[e] / c
    return ratio if theta == f.scale(ratio) else None


def genericity_checks(prob: DeformationProblem, pc: PolarCurve) -> list[Hypothesis]:
    """Hypotheses of the rigidity theorems, in a fixed order; failures are statuses."""
    dl = prob.derlog
    ws = prob.weights
    n = prob.n
    out = []

    d = is_weighted_homogeneous(prob.f, ws)
    off = [str(th) for th in prob.thetas if th and is_weighted_homogeneous(th, ws) != d]
    if off:
        out.append(Hypothesis("homogeneous-family", "fail",
                              f"f has degree {d} but theta terms {', '.join(off)} do not, "
                              "so f_t is not weighted homogeneous of a fixed type"))
    else:
        out.append(Hypothesis("homogeneous-family", "pass", f"f_t is weighted homogeneous of degree {d}"))

    low = _min_weight_slot(ws)
    perm = ws.descending_permutation()
    if low is None:
        out.append(Hypothesis("unique-minimal-weight", "fail",
                              f"no unique minimal weight in {ws.weights}"))
    else:
        out.append(Hypothesis("unique-minimal-weight", "pass",
                              f"{prob.ctx.names[low]} has the minimal weight {ws.weights[low]}; "
                              f"descending order {tuple(prob.ctx.names[i] for i in perm)}"))

    s = stratum_dim(dl)
    out.append(Hypothesis("stratum-zero", "pass" if s == 0 else "fail", f"analytic stratum dimension {s}"))

    regime, info = _degree_regime(dl, pc)
    detail = f"degrees {info['pattern']}, regime {regime}"
    if info["equal_outside"]:
        detail += f", Euler degree shared by generators {tuple(i + 1 for i in info['equal_outside'])}"
    if info["all_greater"]:
        detail += ", all non-Euler degrees exceed the Euler degree"
    if info["below_euler"]:
        out.append(Hypothesis("degree-regime", "fail", detail + ", some generator has degree below the Euler field"))
    else:
        out.append(Hypothesis("degree-regime", "pass", detail))

    if low is None:
        out.append(Hypothesis("no-branch", "fail", "undefined without a unique minimal weight"))
    else:
        xn = Poly.slot(prob.ctx, low)
        ideal = list(pc.ideal_gens) + [xn]
        bad = [prob.ctx.names[i] for i in range(n) if i != low
               and not local_radical_membership(Poly.slot(prob.ctx, i), ideal)]
        if bad:
            out.append(Hypothesis("no-branch", "fail",
                                  f"the polar curve meets {{{prob.ctx.names[low]} = 0}} along a branch "
                                  f"where {', '.join(bad)} do not vanish"))
        else:
            out.append(Hypothesis("no-branch", "pass",
                                  f"no branch of the polar curve inside {{phi = 0, {prob.ctx.names[low]} = 0}}"))

    iso = isolated_singularity(dl.phi, ws)
    out.append(Hypothesis(
        "isolated-singularity", "pass" if iso else "fail",
        "phi has an isolated singularity (sufficient for the Cohen-Macaulay hypothesis)" if iso
        else "phi has no isolated singularity; the Cohen-Macaulay hypothesis is not certified",
    ))

    reduced, sq = reducedness_check(pc)
    mults = [tuple(m for _, m in d.parts) for d in sq[1:]]
    out.append(Hypothesis("reduced-polar", "pass" if reduced else "fail",
                          f"multiplicities of the polar equations {mults}"))

    if n == 3 and pc.field_choice:
        eta2 = pc.field_choice[0]
        shared = info["equal_outside"]
        if len(shared) > 1:
            out.append(Hypothesis("bracket-divisibility", "fail",
                                  f"{len(shared)} generators share the Euler degree outside the polar choice"))
        elif shared:
            ok = bracket_divisibility(prob, pc, eta2, shared[0])
            out.append(Hypothesis("bracket-divisibility", "pass" if ok else "fail",
                                  f"[eta_{eta2 + 1}, eta_{shared[0] + 1}](F) against the strata of dF(eta_{eta2 + 1})"))
        else:
            out.append(Hypothesis("bracket-divisibility", "pass", "no generator shares the Euler degree: vacuous"))
    return out


# ---------------------------------------------------------------------------
# Restriction to coordinate planes


@dataclass
class PlaneRestriction:
    kill: tuple[int, ...]
    problem: DeformationProblem | None
    checks: list[Hypothesis]

    @property
    def generic(self) -> bool:
        return self.problem is not None and all(h.holds for h in self.checks)


def _sub_context(ctx: VarContext, keep: Sequence[int]) -> tuple[VarContext, dict[int, int]]:
    sub = VarContext(tuple(ctx.names[i] for i in keep), ctx.has_conjugates, ctx.has_parameter, ctx.parameter)
    slot_map = {old: new for new, old in enumerate(keep)}
    if ctx.has_conjugates:
        for new, old in enumerate(keep):
            slot_map[ctx.conj_index(old)] = sub.conj_index(new)
    if ctx.has_parameter:
        slot_map[ctx.t_index] = sub.t_index
    return sub, slot_map


def restrict_to_plane(prob: DeformationProblem, kill_indices) -> PlaneRestriction:
    """X0 = X cap H and F0 = F|_H for H = {x_i = 0, i in kill}, with the genericity checks.

    Checks: the projection of Theta_X equals Theta_X0, F0 is not homogeneous in
    the standard grading, and mu_BR(f0, X0) is finite.
    """
    n = prob.n
    kill = tuple(sorted(set(int(i) for i in kill_indices)))
    if not 1 <= len(kill) <= n - 2 or any(not 0 <= i < n for i in kill):
        raise ValueError(f"kill set {kill} must have between 1 and {n - 2} valid indices")
    ctx = prob.ctx
    keep = [i for i in range(n) if i not in kill]
    zero_slots = list(kill) + ([ctx.conj_index(i) for i in kill] if ctx.has_conjugates else [])
    sub, slot_map = _sub_context(ctx, keep)

    def down(p: Poly) -> Poly:
        return p.substitute_zero(zero_slots).change_context(sub, slot_map)

    phi0 = down(prob.derlog.phi)
    if phi0.is_zero():
        raise ValueError(f"H = {{{', '.join(ctx.names[i] for i in kill)} = 0}} lies inside X")
    ws0 = WeightSystem(tuple(prob.weights.weights[i] for i in keep))
    names = ", ".join(ctx.names[i] for i in kill)
    checks: list[Hypothesis] = []
    try:
        dl0 = derlog_generators(phi0, ws0)
    except NonReducedError:
        checks.append(Hypothesis("reduced-section", "fail", f"X cap {{{names} = 0}} is not reduced: {phi0}"))
        return PlaneRestriction(kill, None, checks)

    projected = [VectorField(sub, [down(eta.components[i]) for i in keep]) for eta in prob.derlog.generators]
    projected = [v for v in projected if not v.is_zero()]
    same = module_equal(projected, list(dl0.generators), ws0)
    checks.append(Hypothesis("projection", "pass" if same else "fail",
                             "pi(Theta_X) = Theta_X0" if same else "pi(Theta_X) differs from Theta_X0"))

    thetas0 = tuple(down(th) for th in prob.thetas)
    f0 = down(prob.f)
    if f0.is_zero():
        checks.append(Hypothesis("finite-mu-br", "fail", "f vanishes on H"))
        return PlaneRestriction(kill, None, checks)
    prob0 = DeformationProblem(dl0, f0, thetas0, ws0, prob.order_kind)
    flat = WeightSystem((1,) * len(keep))
    homogeneous = is_weighted_homogeneous(prob0.F, flat) is not None
    checks.append(Hypothesis("not-homogeneous", "fail" if homogeneous else "pass",
                             f"F0 = {prob0.F} is {'' if homogeneous else 'not '}homogeneous"))
    try:
        mu = bruce_roberts_number(f0, dl0, ws0, prob.order_kind)
    except LocalDimensionUnsupported:
        mu = None
    checks.append(Hypothesis("finite-mu-br", "pass" if mu is not None else "fail",
                             f"mu_BR(f0, X0) = {mu if mu is not None else 'infinite'}"))
    return PlaneRestriction(kill, prob0, checks)


# ---------------------------------------------------------------------------
# Verdict


@dataclass(frozen=True)
class RigidityOptions:
    choice: tuple[int, ...] | None = None
    asserted: frozenset[str] = frozenset()
    kill_sets: tuple[tuple[int, ...], ...] | None = None
    enumerate_kill_sets: bool = True


@dataclass
class RigidityVerdict:
    hypotheses: list[Hypothesis]
    conclusion: str  # "rigid" | "not-strongly-trivial" | "inapplicable"
    scalar_constant: object = None
    polar_choice: tuple[int, ...] = ()
    route: str = "direct"  # "direct" | "restriction"
    restriction: PlaneRestriction | None = None
    sub_verdict: RigidityVerdict | None = None
    tried_kill_sets: list[tuple[int, ...]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def _apply_assertions(hyps: list[Hypothesis], asserted: frozenset[str]) -> list[Hypothesis]:
    out = []
    for h in hyps:
        if h.status == "fail" and h.name in asserted:
            h = replace(h, status="user-asserted", detail=h.detail + " [asserted by the user]")
        out.append(h)
    return out


def _direct(prob: DeformationProblem, options: RigidityOptions) -> RigidityVerdict:
    dl = prob.derlog
    ws = prob.weights
    if dl.phi.is_zero():
        raise ValueError("rigidity needs a hypersurface X = {phi = 0}")
    if is_weighted_homogeneous(dl.phi, ws) is None or is_weighted_homogeneous(prob.f, ws) is None:
        raise ValueError("phi and f must be weighted homogeneous for the same weights")
    pc = polar_curve(prob, options.choice)
    hyps = _apply_assertions(genericity_checks(prob, pc), options.asserted)
    verdict = RigidityVerdict(hyps, "inapplicable", polar_choice=pc.field_choice)
    by_name = {h.name: h for h in hyps}
    needed = ["homogeneous-family", "unique-minimal-weight", "stratum-zero", "degree-regime", "no-branch", "isolated-singularity"]
    if not all(by_name[k].holds for k in needed):
        return verdict
    reduced = by_name["reduced-polar"].holds
    if not reduced:
        bracket = by_name.get("bracket-divisibility")
        if prob.n != 3 or bracket is None or not bracket.holds:
            return verdict
        verdict.notes.append("non-reduced polar curve handled by the multiplicity argument in C^3")
    verdict.conclusion = "rigid"
    _, info = _degree_regime(dl, pc)
    c = scalar_multiple_check(prob.theta, prob.f)
    verdict.scalar_constant = c
    if info["all_greater"] and c is None:
        verdict.conclusion = "not-strongly-trivial"
        verdict.notes.append("theta is not a constant multiple of f while every generator is above the Euler degree")
    return verdict


def rigidity_verdict(prob: DeformationProblem, options: RigidityOptions = RigidityOptions()) -> RigidityVerdict:
    """Direct hypotheses first; on failure, restriction to (X, F)-generic coordinate planes.

    A plane verdict of not-strongly-trivial lifts to F.  Enumeration runs through
    kill sets of size n - 2 in lexicographic order and stops at the first
    generic plane whose verdict is conclusive.
    """
    direct = _direct(prob, options)
    if direct.conclusion != "inapplicable" or prob.n < 3:
        return direct
    if options.kill_sets is not None:
        candidates = [tuple(k) for k in options.kill_sets]
    elif options.enumerate_kill_sets:
        candidates = list(combinations(range(prob.n), prob.n - 2))
    else:
        return direct
    sub_options = RigidityOptions(asserted=options.asserted, enumerate_kill_sets=False)
    for kill in candidates:
        direct.tried_kill_sets.append(kill)
        try:
            res = restrict_to_plane(prob, kill)
        except ValueError as exc:
            direct.notes.append(f"kill set {kill}: {exc}")
            continue
        if not res.generic:
            continue
        try:
            sub = _direct(res.problem, sub_options)
        except ValueError as exc:
            direct.notes.append(f"kill set {kill}: {exc}")
            continue
        if sub.conclusion == "not-strongly-trivial":
            return RigidityVerdict(
                direct.hypotheses + [Hypothesis("generic-plane", "pass",
                                                f"kill {tuple(prob.ctx.names[i] for i in kill)}")],
                "not-strongly-trivial", None, direct.polar_choice, "restriction", res, sub,
                direct.tried_kill_sets, direct.notes + [
                    "F restricted to an (X, F)-generic plane is not strongly rational trivial, hence neither is F"],
            )
        direct.notes.append(f"kill set {kill}: generic plane, restricted verdict {sub.conclusion}")
    return direct
