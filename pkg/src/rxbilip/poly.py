"""Exact polynomials in x, conj(x) and a deformation parameter t.

A ``Poly`` is a sparse map from exponent tuples to nonzero rationals.  The
exponent layout is fixed by its ``VarContext``::

    (x_1, ..., x_n, conj(x_1), ..., conj(x_n), t)

where the conjugate block and the trailing ``t`` slot are present only when
the context declares them.  Conjugate variables are independent formal
symbols; they carry the same weight as their holomorphic partners.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from gmpy2 import mpq

QQ = mpq
INF = math.inf

Exps = tuple


def to_qq(c) -> mpq:
    """Coerce ints, Fractions, mpq and numeric strings to an exact rational."""
    if isinstance(c, float):
        raise TypeError("floating-point coefficients are not allowed")
    return mpq(c)


@dataclass(frozen=True)
class VarContext:
    names: tuple[str, ...]
    has_conjugates: bool = True
    has_parameter: bool = True
    parameter: str = "t"

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("a context needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if self.has_parameter and self.parameter in names:
            raise ValueError(f"parameter name {self.parameter!r} clashes with a variable")
        for nm in names:
            if not nm.isidentifier() or nm == "conj":
                raise ValueError(f"invalid variable name {nm!r}")

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def nvars(self) -> int:
        return self.n * (2 if self.has_conjugates else 1) + (1 if self.has_parameter else 0)

    @property
    def t_index(self) -> int | None:
        return self.nvars - 1 if self.has_parameter else None

    def conj_index(self, i: int) -> int:
        if not self.has_conjugates:
            raise ValueError("context has no conjugate variables")
        return self.n + i

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(name) from None

    def slot_names(self) -> list[str]:
        out = list(self.names)
        if self.has_conjugates:
            out += [f"conj({nm})" for nm in self.names]
        if self.has_parameter:
            out.append(self.parameter)
        return out

    def zero_exps(self) -> Exps:
        return (0,) * self.nvars

    def unit_exps(self, slot: int, power: int = 1) -> Exps:
        e = [0] * self.nvars
        e[slot] = power
        return tuple(e)

    def holomorphic_slots(self) -> range:
        return range(self.n)


@dataclass(frozen=True)
class WeightSystem:
    """Positive integer weights w_1..w_n; ``degree_of_t`` is the weight of t."""

    weights: tuple[int, ...]
    degree_of_t: int = 0

    def __post_init__(self):
        ws = tuple(int(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if not ws or any(w < 1 for w in ws):
            raise ValueError(f"weights must be positive integers, got {ws}")
        if self.degree_of_t < 0:
            raise ValueError("degree_of_t must be non-negative")

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def product_w(self) -> int:
        return math.prod(self.weights)

    @property
    def is_homogeneous(self) -> bool:
        return len(set(self.weights)) == 1

    def slot_weights(self, ctx: VarContext) -> tuple[int, ...]:
        """Weight of every exponent slot of ``ctx`` (conjugates share weights)."""
        if ctx.n != self.n:
            raise ValueError(f"{self.n} weights for {ctx.n} variables")
        out = list(self.weights)
        if ctx.has_conjugates:
            out += list(self.weights)
        if ctx.has_parameter:
            out.append(self.degree_of_t)
        return tuple(out)

    def descending_permutation(self) -> tuple[int, ...]:
        """Stable permutation sorting the variables by decreasing weight."""
        return tuple(sorted(range(self.n), key=lambda i: -self.weights[i]))

    def norm(self, X: np.ndarray) -> np.ndarray:
        """Weighted norm ``(sum |x_i|^(2w/w_i))^(1/2w)`` for columns of ``X`` (shape n x N)."""
        w = self.product_w
        acc = sum(np.abs(X[i]) ** (2 * w // wi) for i, wi in enumerate(self.weights))
        return acc ** (1.0 / (2 * w))


class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: VarContext, terms: Mapping[Exps, object] | None = None, *, _trusted=False):
        self.ctx = ctx
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            nv = ctx.nvars
            for e, c in (terms or {}).items():
                e = tuple(int(a) for a in e)
                if len(e) != nv:
                    raise ValueError(f"exponent {e} does not match context with {nv} slots")
                if any(a < 0 for a in e):
                    raise ValueError(f"negative exponent in {e}")
                c = to_qq(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
            self.terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, ctx: VarContext) -> Poly:
        return cls(ctx, {}, _trusted=True)

    @classmethod
    def const(cls, ctx: VarContext, c) -> Poly:
        c = to_qq(c)
        return cls(ctx, {ctx.zero_exps(): c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, ctx: VarContext, name: str) -> Poly:
        if ctx.has_parameter and name == ctx.parameter:
            slot = ctx.t_index
        else:
            slot = ctx.index(name)
        return cls(ctx, {ctx.unit_exps(slot): QQ(1)}, _trusted=True)

    @classmethod
    def slot(cls, ctx: VarContext, slot: int, power: int = 1) -> Poly:
        return cls(ctx, {ctx.unit_exps(slot, power): QQ(1)}, _trusted=True)

    @classmethod
    def monomial(cls, ctx: VarContext, exps: Exps, coeff=1) -> Poly:
        return cls(ctx, {tuple(exps): coeff})

    # -- basic queries ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def constant_term(self) -> mpq:
        return self.terms.get(self.ctx.zero_exps(), QQ(0))

    def is_constant(self) -> bool:
        z = self.ctx.zero_exps()
        return all(e == z for e in self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, slot: int) -> int:
        return max((e[slot] for e in self.terms), default=-1)

    def support_slots(self) -> set[int]:
        out = set()
        for e in self.terms:
            out.update(i for i, a in enumerate(e) if a)
        return out

    def involves_conjugates(self) -> bool:
        if not self.ctx.has_conjugates:
            return False
        n = self.ctx.n
        return any(any(e[n:2 * n]) for e in self.terms)

    def involves_parameter(self) -> bool:
        ti = self.ctx.t_index
        return ti is not None and any(e[ti] for e in self.terms)

    def is_holomorphic(self) -> bool:
        return not self.involves_conjugates()

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise ValueError("polynomials live in different contexts")
            return other
        if isinstance(other, float):
            raise TypeError("floating-point arithmetic is not supported")
        return Poly.const(self.ctx, other)

    def __add__(self, other):
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for e, c in small.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly(self.ctx, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ctx, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> Poly:
        c = to_qq(c)
        if not c:
            return Poly.zero(self.ctx)
        return Poly(self.ctx, {e: c * v for e, v in self.terms.items()}, _trusted=True)

    def mul_monomial(self, exps: Exps, c=1) -> Poly:
        c = to_qq(c)
        if not c:
            return Poly.zero(self.ctx)
        return Poly(
            self.ctx,
            {tuple(a + b for a, b in zip(e, exps)): c * v for e, v in self.terms.items()},
            _trusted=True,
        )

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, float):
                raise TypeError("floating-point arithmetic is not supported")
            return self.scale(other)
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Poly(self.ctx, {e: c for e, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Poly.const(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, (int, mpq)) or hasattr(other, "denominator"):
            return self.terms == Poly.const(self.ctx, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution -----------------------------------------
    def diff(self, slot: int) -> Poly:
        out = {}
        for e, c in self.terms.items():
            k = e[slot]
            if k:
                e2 = e[:slot] + (k - 1,) + e[slot + 1:]
                out[e2] = c * k
        return Poly(self.ctx, out, _trusted=True)

    def diff_var(self, name: str) -> Poly:
        if self.ctx.has_parameter and name == self.ctx.parameter:
            return self.diff(self.ctx.t_index)
        return self.diff(self.ctx.index(name))

    def substitute_zero(self, slots: Iterable[int]) -> Poly:
        slots = list(slots)
        return Poly(self.ctx, {e: c for e, c in self.terms.items() if not any(e[s] for s in slots)},
                    _trusted=True)

    def substitute_value(self, slot: int, value) -> Poly:
        """Replace one variable by an exact rational value."""
        value = to_qq(value)
        out: dict = {}
        for e, c in self.terms.items():
            k = e[slot]
            e2 = e[:slot] + (0,) + e[slot + 1:]
            v = c * value ** k if k else c
            if v:
                out[e2] = out.get(e2, 0) + v
        return Poly(self.ctx, {e: c for e, c in out.items() if c}, _trusted=True)

    def at_parameter(self, value) -> Poly:
        if self.ctx.t_index is None:
            return self
        return self.substitute_value(self.ctx.t_index, value)

    def change_context(self, ctx: VarContext, slot_map: Mapping[int, int]) -> Poly:
        """Move into ``ctx``; ``slot_map`` sends used slots of self to slots of ctx."""
        out = {}
        nv = ctx.nvars
        for e, c in self.terms.items():
            e2 = [0] * nv
            for i, a in enumerate(e):
                if a:
                    if i not in slot_map:
                        raise ValueError(f"slot {i} has no image in the target context")
                    e2[slot_map[i]] += a
            out[tuple(e2)] = c
        return Poly(ctx, out, _trusted=True)

    def monic(self) -> Poly:
        """Divide by the leading coefficient in canonical print order."""
        if not self.terms:
            return self
        lc = self.terms[max(self.terms, key=_print_key)]
        return self.scale(1 / lc)

    # -- numeric evaluation -----------------------------------------------
    def compile(self):
        """Vectorised evaluator ``fn(X, t)`` with ``X`` complex of shape (n, N).

        Conjugate slots read ``np.conj(X)``; ``t`` may be a scalar or length-N array.
        """
        ctx = self.ctx
        n = ctx.n
        items = [(tuple(e), complex(float(c))) for e, c in self.terms.items()]

        def fn(X, t=0.0):
            X = np.asarray(X, dtype=complex)
            Xc = np.conj(X) if ctx.has_conjugates else None
            out = np.zeros(X.shape[1:], dtype=complex)
            for e, c in items:
                term = np.full(X.shape[1:], c, dtype=complex)
                for i in range(n):
                    if e[i]:
                        term = term * X[i] ** e[i]
                if ctx.has_conjugates:
                    for i in range(n):
                        if e[n + i]:
                            term = term * Xc[i] ** e[n + i]
                if ctx.has_parameter and e[-1]:
                    term = term * np.asarray(t, dtype=complex) ** e[-1]
                out = out + term
            return out

        return fn

    # -- printing ---------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Exps, mpq]]:
        return sorted(self.terms.items(), key=lambda kv: _print_key(kv[0]), reverse=True)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def _print_key(e: Exps):
    return (sum(e), e)


def _format_coeff(c: mpq) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_monomial(ctx: VarContext, e: Exps) -> str:
    names = ctx.slot_names()
    parts = []
    for nm, a in zip(names, e):
        if a == 1:
            parts.append(nm)
        elif a > 1:
            parts.append(f"{nm}^{a}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Canonical text: degree-lex descending terms, reduced fraction coefficients."""
    if not p.terms:
        return "0"
    out = []
    for k, (e, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(p.ctx, e)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


# ---------------------------------------------------------------------------
# Filtration


def monomial_fil(e: Exps, slot_weights: Sequence[int]) -> int:
    return sum(a * w for a, w in zip(e, slot_weights))


def weighted_fil(p: Poly, ws: WeightSystem) -> float | int:
    """Smallest weighted degree of a monomial of ``p``; ``inf`` for the zero polynomial."""
    if not p.terms:
        return INF
    sw = ws.slot_weights(p.ctx)
    return min(monomial_fil(e, sw) for e in p.terms)


def weighted_degree_max(p: Poly, ws: WeightSystem) -> float | int:
    if not p.terms:
        return -INF
    sw = ws.slot_weights(p.ctx)
    return max(monomial_fil(e, sw) for e in p.terms)


def is_weighted_homogeneous(p: Poly, ws: WeightSystem) -> int | None:
    if not p.terms:
        raise ValueError("the zero polynomial has no weighted degree")
    sw = ws.slot_weights(p.ctx)
    degs = {monomial_fil(e, sw) for e in p.terms}
    return degs.pop() if len(degs) == 1 else None


def weighted_parts(p: Poly, ws: WeightSystem) -> dict[int, Poly]:
    sw = ws.slot_weights(p.ctx)
    groups: dict[int, dict] = {}
    for e, c in p.terms.items():
        groups.setdefault(monomial_fil(e, sw), {})[e] = c
    return {d: Poly(p.ctx, t, _trusted=True) for d, t in groups.items()}


def conjugate(p: Poly) -> Poly:
    """Swap every x_i with conj(x_i); rational coefficients are fixed."""
    ctx = p.ctx
    if not ctx.has_conjugates:
        raise ValueError("context has no conjugate variables")
    n = ctx.n
    out = {}
    for e, c in p.terms.items():
        out[e[n:2 * n] + e[:n] + e[2 * n:]] = c
    return Poly(ctx, out, _trusted=True)


def eval_complex(p: Poly, point: Mapping[str, complex], t_value: complex = 0.0) -> complex:
    ctx = p.ctx
    missing = [nm for nm in ctx.names if nm not in point]
    if missing:
        raise KeyError(f"no value assigned to {', '.join(missing)}")
    vals = [complex(point[nm]) for nm in ctx.names]
    if ctx.has_conjugates:
        vals += [v.conjugate() for v in vals]
    if ctx.has_parameter:
        vals.append(complex(t_value))
    total = 0j
    for e, c in p.terms.items():
        term = complex(float(c))
        for v, a in zip(vals, e):
            if a:
                term *= v ** a
        total += term
    return total


# ---------------------------------------------------------------------------
# Vector fields


class VectorField:
    """``sum_j components[j] * d/dx_j`` over a context."""

    __slots__ = ("ctx", "components")

    def __init__(self, ctx: VarContext, components: Sequence[Poly]):
        comps = tuple(components)
        if len(comps) != ctx.n:
            raise ValueError(f"expected {ctx.n} components, got {len(comps)}")
        for c in comps:
            if c.ctx != ctx:
                raise ValueError("component lives in a different context")
        self.ctx = ctx
        self.components = comps

    @classmethod
    def zero(cls, ctx: VarContext) -> VectorField:
        return cls(ctx, [Poly.zero(ctx)] * ctx.n)

    @classmethod
    def partial(cls, ctx: VarContext, j: int) -> VectorField:
        comps = [Poly.zero(ctx)] * ctx.n
        comps[j] = Poly.const(ctx, 1)
        return cls(ctx, comps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __getitem__(self, j):
        return self.components[j]

    def __iter__(self):
        return iter(self.components)

    def __add__(self, other: VectorField):
        return VectorField(self.ctx, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: VectorField):
        return VectorField(self.ctx, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return VectorField(self.ctx, [-a for a in self.components])

    def __mul__(self, other):
        return VectorField(self.ctx, [a * other for a in self.components])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.ctx == other.ctx and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def constant_part(self) -> tuple[mpq, ...]:
        return tuple(c.constant_term() for c in self.components)

    def map(self, fn) -> VectorField:
        return VectorField(self.ctx, [fn(c) for c in self.components])

    def __str__(self):
        return format_field(self)

    def __repr__(self):
        return f"VectorField({format_field(self)!r})"


def format_field(eta: VectorField) -> str:
    parts = []
    for nm, c in zip(eta.ctx.names, eta.components):
        if c:
            parts.append(f"({c})*d/d{nm}")
    return " + ".join(parts) if parts else "0"


def apply_field(eta: VectorField, f: Poly) -> Poly:
    """``df(eta) = sum_j eta_j * df/dx_j`` (holomorphic derivatives only)."""
    if eta.ctx != f.ctx:
        raise ValueError("field and polynomial live in different contexts")
    out = Poly.zero(f.ctx)
    for j, comp in enumerate(eta.components):
        if comp:
            d = f.diff(j)
            if d:
                out = out + comp * d
    return out


def lie_bracket(eta: VectorField, xi: VectorField) -> VectorField:
    if eta.ctx != xi.ctx:
        raise ValueError("fields live in different contexts")
    return VectorField(
        eta.ctx,
        [apply_field(eta, xi.components[k]) - apply_field(xi, eta.components[k]) for k in range(eta.ctx.n)],
    )


def field_fil(eta: VectorField, ws: WeightSystem) -> float | int:
    """``inf_j (fil(eta_j) - w_j)``; raises on the zero field."""
    if eta.is_zero():
        raise ValueError("the zero field has no filtration")
    return min(weighted_fil(c, ws) - w for c, w in zip(eta.components, ws.weights) if c)


def field_weighted_degree(eta: VectorField, ws: WeightSystem) -> int | None:
    """Degree ``d`` when every term of component j has filtration ``d + w_j``; else None."""
    if eta.is_zero():
        raise ValueError("the zero field has no degree")
    degs = set()
    for c, w in zip(eta.components, ws.weights):
        if c:
            sw = ws.slot_weights(c.ctx)
            degs.update(monomial_fil(e, sw) - w for e in c.terms)
    return degs.pop() if len(degs) == 1 else None


def field_weighted_parts(eta: VectorField, ws: WeightSystem) -> dict[int, VectorField]:
    ctx = eta.ctx
    sw = ws.slot_weights(ctx)
    groups: dict[int, list[dict]] = {}
    for j, (c, w) in enumerate(zip(eta.components, ws.weights)):
        for e, v in c.terms.items():
            d = monomial_fil(e, sw) - w
            groups.setdefault(d, [dict() for _ in range(ctx.n)])[j][e] = v
    return {d: VectorField(ctx, [Poly(ctx, t, _trusted=True) for t in comps]) for d, comps in groups.items()}


def euler_field(ctx: VarContext, ws: WeightSystem) -> VectorField:
    """``sum_j w_j x_j d/dx_j``."""
    if ws.n != ctx.n:
        raise ValueError(f"{ws.n} weights for {ctx.n} variables")
    return VectorField(ctx, [Poly.slot(ctx, j).scale(w) for j, w in enumerate(ws.weights)])


def jacobian(p: Poly) -> list[Poly]:
    return [p.diff(j) for j in range(p.ctx.n)]
