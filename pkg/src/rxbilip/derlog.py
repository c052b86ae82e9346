"""Logarithmic vector fields of a hypersurface X = {phi = 0}.

Theta_X is the module of fields eta with eta(phi) in <phi>.  It is computed as
the syzygy module of (d phi/dx_1, ..., d phi/dx_n, phi) with the last
coordinate dropped.  For weighted-homogeneous phi the raw syzygies are split
into graded pieces and a minimal homogeneous generating set is picked greedily.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .factor import exact_divide, squarefree_decomposition
from .groebner import ModuleElement, MonomialOrdering, groebner, reduces_to_zero, syzygies
from .linalg import column_pivots, rank, solve_in_span
from .poly import (
    Poly,
    VectorField,
    WeightSystem,
    apply_field,
    euler_field,
    field_fil,
    field_weighted_parts,
    format_field,
    is_weighted_homogeneous,
)

__all__ = [
    "Derlog",
    "NonReducedError",
    "derlog_generators",
    "derlog_from_fields",
    "euler_field",
    "hamiltonian_fields",
    "is_tangent",
    "module_equal",
    "module_contains",
    "stratum_dim",
    "theta_zero",
]


class NonReducedError(ValueError):
    """phi has a repeated factor; Theta_X is only computed for reduced equations."""


@dataclass(frozen=True)
class Derlog:
    phi: Poly
    generators: tuple[VectorField, ...]
    degrees: tuple[int, ...]
    weights: WeightSystem | None = None
    euler_index: int | None = None

    @property
    def ctx(self):
        return self.phi.ctx

    @property
    def n(self) -> int:
        return self.phi.ctx.n

    def __len__(self):
        return len(self.generators)

    def describe(self) -> list[str]:
        return [f"eta_{i + 1} [deg {d}]: {format_field(g)}" for i, (g, d) in enumerate(zip(self.generators, self.degrees))]


def _field_ordering(ws: WeightSystem | None, n: int, module: str = "TOP") -> MonomialOrdering:
    ws = ws or WeightSystem((1,) * n)
    return MonomialOrdering(weights=ws, module=module, position_shifts=tuple(-w for w in ws.weights))


def _as_elem(eta: VectorField) -> ModuleElement:
    return ModuleElement(eta.components)


def module_contains(gens: Sequence[VectorField], eta: VectorField, ws: WeightSystem | None = None) -> bool:
    if eta.is_zero():
        return True
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return False
    gb = groebner([_as_elem(g) for g in gens], _field_ordering(ws, eta.ctx.n))
    return reduces_to_zero(_as_elem(eta), gb)


def module_equal(a: Sequence[VectorField], b: Sequence[VectorField], ws: WeightSystem | None = None) -> bool:
    """Mutual membership of two lists of fields."""
    a = [g for g in a if not g.is_zero()]
    b = [g for g in b if not g.is_zero()]
    if not a or not b:
        return not a and not b
    order = _field_ordering(ws, a[0].ctx.n)
    gb_a = groebner([_as_elem(g) for g in a], order)
    gb_b = groebner([_as_elem(g) for g in b], order)
    return all(reduces_to_zero(_as_elem(g), gb_b) for g in a) and all(
        reduces_to_zero(_as_elem(g), gb_a) for g in b
    )


def is_tangent(eta: VectorField, phi: Poly) -> bool:
    """eta(phi) in <phi>; for a principal ideal membership is divisibility."""
    val = apply_field(eta, phi)
    if val.is_zero():
        return True
    if phi.is_zero():
        return False
    return exact_divide(val, phi) is not None


def hamiltonian_fields(phi: Poly) -> list[VectorField]:
    """eta_ij = (d phi/dx_j) d/dx_i - (d phi/dx_i) d/dx_j for i < j."""
    ctx = phi.ctx
    n = ctx.n
    if n < 2:
        raise ValueError("hamiltonian fields need at least two variables")
    grads = [phi.diff(j) for j in range(n)]
    out = []
    zero = Poly.zero(ctx)
    for i in range(n):
        for j in range(i + 1, n):
            comps = [zero] * n
            comps[i] = grads[j]
            comps[j] = -grads[i]
            out.append(VectorField(ctx, comps))
    return out


def _check_phi(phi: Poly) -> None:
    if phi.involves_conjugates() or phi.involves_parameter():
        raise ValueError("phi must be a holomorphic polynomial free of t")
    if phi.is_constant() and not phi.is_zero():
        raise ValueError("phi is a nonzero constant, so X is empty")


def _sort_key(eta: VectorField, deg, is_euler: bool):
    return (0 if is_euler else 1, deg, format_field(eta))


def _finish(phi: Poly, fields: list[VectorField], ws: WeightSystem | None) -> Derlog:
    ctx = phi.ctx
    euler = euler_field(ctx, ws) if ws is not None and not phi.is_zero() else None
    degs = [field_fil(g, ws) if ws is not None else None for g in fields]
    euler_index = None
    for i, g in enumerate(fields):
        if euler is not None and g == euler:
            euler_index = i
    return Derlog(phi, tuple(fields), tuple(degs), ws, euler_index)


def derlog_generators(phi: Poly, ws: WeightSystem | None = None) -> Derlog:
    """Generators of Theta_X for X = {phi = 0}.

    With ``ws`` the output is weighted homogeneous: the Euler field first, then
    the remaining generators by ascending degree, ties broken by printed form.
    ``phi = 0`` is read as X = C^n and yields the coordinate fields.
    """
    _check_phi(phi)
    ctx = phi.ctx
    n = ctx.n
    if phi.is_zero():
        return _finish(phi, [VectorField.partial(ctx, j) for j in range(n)], ws)
    if not squarefree_decomposition(phi).is_squarefree():
        raise NonReducedError(f"phi = {phi} is not reduced")
    homogeneous = ws is not None
    if homogeneous and is_weighted_homogeneous(phi, ws) is None:
        raise ValueError(f"phi = {phi} is not weighted homogeneous for weights {ws.weights}")

    grads = [phi.diff(j) for j in range(n)]
    base = MonomialOrdering(weights=ws) if ws is not None else MonomialOrdering()
    rows = syzygies(grads + [phi], base)
    raw = [VectorField(ctx, r.coords[:n]) for r in rows]
    raw = [r for r in raw if not r.is_zero()]

    candidates: list[tuple[tuple, VectorField]] = []
    if homogeneous:
        euler = euler_field(ctx, ws)
        candidates.append((_sort_key(euler, 0, True), euler))
        seen = {euler}
        for r in raw:
            for d, piece in field_weighted_parts(r, ws).items():
                if piece.is_zero() or piece in seen:
                    continue
                if not is_tangent(piece, phi):
                    raise AssertionError(f"graded piece {piece} of a syzygy is not tangent")
                seen.add(piece)
                candidates.append((_sort_key(piece, d, False), piece))
    else:
        for r in raw:
            candidates.append(((1, 0, format_field(r)), r))
    candidates.sort(key=lambda kv: kv[0])

    chosen: list[VectorField] = []
    for key, eta in candidates:
        if not chosen or not module_contains(chosen, eta, ws):
            chosen.append(eta if key[0] == 0 else _normalize_field(eta))
    return _finish(phi, chosen, ws)


def _normalize_field(eta: VectorField) -> VectorField:
    """Scale so the first nonzero component has leading coefficient 1 (Euler field is left alone)."""
    for c in eta.components:
        if c:
            lead = c.sorted_terms()[0][1]
            return eta * (1 / lead) if lead != 1 else eta
    return eta


def derlog_from_fields(phi: Poly, fields: Sequence[VectorField], ws: WeightSystem | None = None,
                       check: bool = True) -> Derlog:
    """Wrap a user-supplied generator list after checking tangency (and completeness when ``check``)."""
    _check_phi(phi)
    fields = list(fields)
    for eta in fields:
        if not is_tangent(eta, phi):
            raise ValueError(f"field {format_field(eta)} is not tangent to phi = {phi}")
    if check:
        computed = derlog_generators(phi, ws)
        if not module_equal(fields, list(computed.generators), ws):
            raise ValueError("supplied fields do not generate Theta_X")
    return _finish(phi, fields, ws)


def stratum_dim(dl: Derlog) -> int:
    """Rank of the values of the generators at the origin."""
    return rank([g.constant_part() for g in dl.generators])


def theta_zero(dl: Derlog) -> list[VectorField]:
    """Generators of the submodule of fields vanishing at 0.

    Generators whose constant parts are independent (picked left to right) are
    multiplied by every coordinate; each remaining generator has its constant
    part cancelled by a rational combination of the picked ones.
    """
    ctx = dl.ctx
    consts = [g.constant_part() for g in dl.generators]
    picked = column_pivots(consts)
    out: list[VectorField] = []
    for j in picked:
        for i in range(ctx.n):
            out.append(dl.generators[j] * Poly.slot(ctx, i))
    basis = [consts[j] for j in picked]
    for k, g in enumerate(dl.generators):
        if k in picked:
            continue
        if any(consts[k]):
            coeffs = solve_in_span(basis, consts[k])
            if coeffs is None:
                raise AssertionError("constant part outside the span of the pivot columns")
            for c, j in zip(coeffs, picked):
                if c:
                    g = g - dl.generators[j] * Poly.const(ctx, c)
        if not g.is_zero():
            out.append(g)
    return out
