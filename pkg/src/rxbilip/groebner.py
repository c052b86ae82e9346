"""Buchberger's algorithm for ideals and submodules of free modules over Q[x, conj(x), t].

Monomials are packed into Python ints, one 16-bit field per variable plus a
position field for module elements.  Bit 15 of every field is a guard bit, so
divisibility of packed monomials is a single subtraction and mask test.

Pair selection follows the normal strategy (smallest weighted degree of the
lcm, ties broken by the term order and then by insertion order), with the
Gebauer-Moller criteria.  Every basis element can carry its representation in
terms of the input generators, which is how cofactors are produced.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Sequence


from .factor import exact_divide
from .poly import QQ, Poly, VarContext, WeightSystem, is_weighted_homogeneous

_BITS = 16
_FIELD = (1 << _BITS) - 1
_GUARD_BIT = 1 << (_BITS - 1)
MAX_EXPONENT = _GUARD_BIT - 1


class LocalDimensionUnsupported(ValueError):
    """Raised when a local (germ) dimension is requested for a non-quasi-homogeneous ideal."""


class _Packer:
    def __init__(self, nv: int):
        self.nv = nv
        self.guards = sum(_GUARD_BIT << (_BITS * i) for i in range(nv))
        self.pos_shift = _BITS * nv
        self.exps_mask = (1 << self.pos_shift) - 1

    def pack(self, exps, pos: int = 0) -> int:
        m = pos << self.pos_shift
        for i, a in enumerate(exps):
            if a:
                if a > MAX_EXPONENT:
                    raise OverflowError(f"exponent {a} exceeds {MAX_EXPONENT}")
                m |= a << (_BITS * i)
        return m

    def unpack(self, m: int) -> tuple[int, tuple[int, ...]]:
        pos = m >> self.pos_shift
        return pos, tuple((m >> (_BITS * i)) & _FIELD for i in range(self.nv))

    def exps(self, m: int) -> tuple[int, ...]:
        return tuple((m >> (_BITS * i)) & _FIELD for i in range(self.nv))

    def pos(self, m: int) -> int:
        return m >> self.pos_shift

    def divides(self, a: int, b: int) -> bool:
        if (a >> self.pos_shift) != (b >> self.pos_shift):
            return False
        return (((b & self.exps_mask) | self.guards) - (a & self.exps_mask)) & self.guards == self.guards

    def lcm(self, a: int, b: int) -> int:
        m = (a >> self.pos_shift) << self.pos_shift
        for i in range(self.nv):
            sh = _BITS * i
            x = (a >> sh) & _FIELD
            y = (b >> sh) & _FIELD
            m |= (x if x > y else y) << sh
        return m

    def coprime(self, a: int, b: int) -> bool:
        for i in range(self.nv):
            sh = _BITS * i
            if (a >> sh) & _FIELD and (b >> sh) & _FIELD:
                return False
        return True


@dataclass(frozen=True)
class MonomialOrdering:
    """Global monomial ordering.

    ``kind`` is ``"wgrevlex"`` (weighted degree, then reverse lex), ``"lex"`` or
    ``"elimination"`` (a wgrevlex block on ``eliminate`` dominating a wgrevlex
    block on the remaining variables).  ``module`` picks term-over-position
    (``"TOP"``) or position-over-term (``"POT"``) for module elements;
    ``position_shifts`` adds a per-position degree offset under TOP.
    Zero weights (the default weight of t) are raised to 1 so the order stays global.
    """

    kind: str = "wgrevlex"
    weights: WeightSystem | None = None
    module: str = "TOP"
    eliminate: tuple[int, ...] = ()
    position_shifts: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("wgrevlex", "lex", "elimination"):
            raise ValueError(f"unknown ordering kind {self.kind!r}")
        if self.module not in ("TOP", "POT"):
            raise ValueError(f"unknown module extension {self.module!r}")
        if self.kind == "elimination" and not self.eliminate:
            raise ValueError("elimination ordering needs a non-empty block")
        object.__setattr__(self, "eliminate", tuple(sorted(self.eliminate)))

    def slot_weights(self, ctx: VarContext, extra: int = 0) -> tuple[int, ...]:
        if self.weights is None:
            base = (1,) * ctx.nvars
        else:
            base = self.weights.slot_weights(ctx)
        return tuple(max(1, w) for w in base) + (1,) * extra


class _Order:
    """Sort keys for packed monomials: smaller key means larger monomial."""

    def __init__(self, ordering: MonomialOrdering, packer: _Packer, weights: Sequence[int]):
        self.packer = packer
        self.weights = tuple(weights)
        self.ordering = ordering
        nv = packer.nv
        self._cache: dict[int, tuple] = {}
        kind = ordering.kind
        shifts = ordering.position_shifts
        top = ordering.module == "TOP"
        rev = tuple(range(nv - 1, -1, -1))
        if kind == "elimination":
            elim = set(ordering.eliminate)
            blocks = [tuple(i for i in rev if i in elim), tuple(i for i in rev if i not in elim)]
        else:
            blocks = [rev]
        w = self.weights

        def key(m: int) -> tuple:
            pos, e = packer.unpack(m)
            if kind == "lex":
                tk = tuple(-a for a in e)
            else:
                parts = []
                for bi, blk in enumerate(blocks):
                    deg = sum(w[i] * e[i] for i in blk)
                    if top and shifts is not None and bi == len(blocks) - 1:
                        deg += shifts[pos]
                    parts.append(-deg)
                    parts.extend(e[i] for i in blk)
                tk = tuple(parts)
            return tk + (pos,) if top else (pos,) + tk

        self._key = key

    def key(self, m: int) -> tuple:
        k = self._cache.get(m)
        if k is None:
            k = self._key(m)
            self._cache[m] = k
        return k

    def degree(self, m: int) -> int:
        pos, e = self.packer.unpack(m)
        d = sum(a * w for a, w in zip(e, self.weights))
        shifts = self.ordering.position_shifts
        if shifts is not None:
            d += shifts[pos]
        return d


def _lead(p: dict, order: _Order) -> int:
    return min(p, key=order.key)


def _pmul_mono(p: dict, shift: int, c) -> dict:
    return {m + shift: c * v for m, v in p.items()}


def _padd_into(acc: dict, p: dict, c=1) -> None:
    for m, v in p.items():
        w = acc.get(m)
        if w is None:
            acc[m] = c * v
        else:
            w = w + c * v
            if w:
                acc[m] = w
            else:
                del acc[m]


def _pmul(p: dict, q: dict) -> dict:
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = m1 + m2
            v = out.get(m)
            out[m] = c1 * c2 if v is None else v + c1 * c2
    return {m: c for m, c in out.items() if c}


class _Engine:
    """Mutable working state of one basis computation."""

    def __init__(self, ordering: MonomialOrdering, nv: int, weights: Sequence[int], rank: int, track: bool):
        self.packer = _Packer(nv)
        self.order = _Order(ordering, self.packer, weights)
        self.rank = rank
        self.track = track
        self.polys: list[dict] = []
        self.lms: list[int] = []
        self.reps: list[dict[int, dict]] = []
        self.n_inputs = 0

    # -- reduction ----------------------------------------------------------
    def _find_reducer(self, m: int, basis: Sequence[int]) -> int | None:
        divides = self.packer.divides
        lms = self.lms
        for j in basis:
            if divides(lms[j], m):
                return j
        return None

    def reduce(self, p: dict, basis: Sequence[int], full: bool = True, want_quotients: bool = False):
        """Return (remainder, quotients) with p = sum quotients[j]*polys[j] + remainder."""
        key = self.order.key
        p = dict(p)
        heap = [(key(m), m) for m in p]
        heapq.heapify(heap)
        rem: dict = {}
        quots: dict[int, dict] = {}
        polys = self.polys
        lms = self.lms
        while heap:
            _, m = heapq.heappop(heap)
            c = p.pop(m, None)
            if c is None:
                continue
            j = self._find_reducer(m, basis)
            if j is None:
                rem[m] = c
                if not full:
                    rem.update(p)
                    break
                continue
            lm = lms[j]
            shift = m - lm
            for gm, gc in polys[j].items():
                if gm == lm:
                    continue
                nm = gm + shift
                v = p.get(nm)
                if v is None:
                    p[nm] = -c * gc
                    heapq.heappush(heap, (key(nm), nm))
                else:
                    v = v - c * gc
                    if v:
                        p[nm] = v
                    else:
                        del p[nm]
            if want_quotients:
                q = quots.setdefault(j, {})
                q[shift] = q.get(shift, 0) + c
        return rem, quots

    def _rep_from(self, base: dict[int, dict], quots: dict[int, dict]) -> dict[int, dict]:
        rep = {k: dict(v) for k, v in base.items()}
        for j, q in quots.items():
            for gi, r in self.reps[j].items():
                acc = rep.setdefault(gi, {})
                _padd_into(acc, _pmul(q, r), -1)
        return {k: v for k, v in rep.items() if v}

    def _add(self, p: dict, rep: dict[int, dict] | None) -> int:
        lm = _lead(p, self.order)
        lc = p[lm]
        if lc != 1:
            inv = 1 / lc
            p = {m: v * inv for m, v in p.items()}
            if rep is not None:
                rep = {k: {m: v * inv for m, v in r.items()} for k, r in rep.items()}
        self.polys.append(p)
        self.lms.append(lm)
        self.reps.append(rep if rep is not None else {})
        return len(self.polys) - 1

    # -- Buchberger ---------------------------------------------------------
    def _update(self, G: list[int], B: list[tuple[int, int]], h: int):
        pk = self.packer
        lms = self.lms
        lmh = lms[h]
        rank1 = self.rank == 1
        C = [g for g in G if pk.pos(lms[g]) == pk.pos(lmh)]
        lcm_h = {g: pk.lcm(lmh, lms[g]) for g in C}
        D: list[int] = []
        while C:
            g1 = C.pop(0)
            l1 = lcm_h[g1]
            if rank1 and pk.coprime(lmh, lms[g1]):
                D.append(g1)
                continue
            if not any(pk.divides(lcm_h[g2], l1) for g2 in itertools.chain(C, D)):
                D.append(g1)
        E = [g for g in D if not (rank1 and pk.coprime(lmh, lms[g]))]
        B_new = []
        for g1, g2 in B:
            l12 = pk.lcm(lms[g1], lms[g2])
            if (
                pk.divides(lmh, l12)
                and pk.lcm(lms[g1], lmh) != l12
                and pk.lcm(lmh, lms[g2]) != l12
            ):
                continue
            B_new.append((g1, g2))
        B_new.extend((g, h) for g in E)
        G_new = [g for g in G if not pk.divides(lmh, lms[g])]
        G_new.append(h)
        return G_new, B_new

    def _spoly(self, i: int, j: int):
        pk = self.packer
        lm_i, lm_j = self.lms[i], self.lms[j]
        l = pk.lcm(lm_i, lm_j)
        si = l - lm_i
        sj = l - lm_j
        s = _pmul_mono(self.polys[i], si, 1)
        _padd_into(s, _pmul_mono(self.polys[j], sj, 1), -1)
        rep = None
        if self.track:
            rep = {}
            for gi, r in self.reps[i].items():
                _padd_into(rep.setdefault(gi, {}), _pmul_mono(r, si & self.packer.exps_mask, 1))
            for gi, r in self.reps[j].items():
                _padd_into(rep.setdefault(gi, {}), _pmul_mono(r, sj & self.packer.exps_mask, 1), -1)
        return s, rep

    def run(self, inputs: Sequence[dict]) -> list[int]:
        self.n_inputs = len(inputs)
        G: list[int] = []
        B: list[tuple[int, int]] = []
        for k, p in enumerate(inputs):
            if not p:
                continue
            rem, quots = self.reduce(p, G, full=True, want_quotients=self.track)
            if not rem:
                continue
            rep = self._rep_from({k: {0: QQ(1)}}, quots) if self.track else None
            h = self._add(rem, rep)
            if self.order.packer.exps(self.lms[h]) == (0,) * self.packer.nv and self.rank == 1:
                return self._finish_unit(h)
            G, B = self._update(G, B, h)
        order = self.order
        pk = self.packer
        while B:
            best = min(
                B,
                key=lambda pr: (
                    order.degree(pk.lcm(self.lms[pr[0]], self.lms[pr[1]])),
                    order.key(pk.lcm(self.lms[pr[0]], self.lms[pr[1]])),
                    pr,
                ),
            )
            B.remove(best)
            s, rep = self._spoly(*best)
            if not s:
                continue
            rem, quots = self.reduce(s, G, full=True, want_quotients=self.track)
            if not rem:
                continue
            if self.track:
                rep = self._rep_from(rep, quots)
            h = self._add(rem, rep)
            if self.rank == 1 and self.lms[h] == 0:
                return self._finish_unit(h)
            G, B = self._update(G, B, h)
        return self._interreduce(G)

    def _finish_unit(self, h: int) -> list[int]:
        return [h]

    def _interreduce(self, G: list[int]) -> list[int]:
        pk = self.packer
        key = self.order.key
        # minimal basis: drop elements whose lead monomial is a multiple of another's
        G = sorted(G, key=lambda g: key(self.lms[g]), reverse=True)
        minimal: list[int] = []
        for g in G:
            if not any(pk.divides(self.lms[h], self.lms[g]) for h in minimal):
                minimal.append(g)
        out = []
        for g in minimal:
            others = [h for h in minimal if h != g]
            p = self.polys[g]
            lm = self.lms[g]
            tail = {m: v for m, v in p.items() if m != lm}
            rem, quots = self.reduce(tail, others, full=True, want_quotients=self.track)
            rem[lm] = p[lm]
            rep = self._rep_from(self.reps[g], quots) if self.track else None
            out.append(self._add(rem, rep))
        out.sort(key=lambda g: key(self.lms[g]))
        return out


# ---------------------------------------------------------------------------
# Public types


@dataclass(frozen=True)
class ModuleElement:
    """Element of a free module of rank ``len(coords)``."""

    coords: tuple[Poly, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if not self.coords:
            raise ValueError("module elements need at least one coordinate")
        ctx = self.coords[0].ctx
        if any(c.ctx != ctx for c in self.coords):
            raise ValueError("coordinates live in different contexts")

    @property
    def ctx(self) -> VarContext:
        return self.coords[0].ctx

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __add__(self, other):
        return ModuleElement(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return ModuleElement(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, r):
        return ModuleElement(tuple(a * r for a in self.coords))

    __rmul__ = __mul__

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.coords) + "]"


def _as_module(g) -> ModuleElement:
    if isinstance(g, ModuleElement):
        return g
    if isinstance(g, Poly):
        return ModuleElement((g,))
    return ModuleElement(tuple(g))


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis of an ideal (rank 1) or submodule.

    ``generators`` holds Polys for ideals and ModuleElements otherwise.
    ``representation[i][k]`` expresses basis element ``i`` through input generator ``k``
    when the basis was computed with ``track=True``.
    """

    generators: list
    ordering: MonomialOrdering
    ctx: VarContext
    rank: int
    inputs: list
    reduced: bool = True
    representation: list[list[Poly]] | None = None
    extra_vars: int = 0
    _engine: _Engine | None = field(default=None, repr=False, compare=False)
    _basis_ids: list[int] = field(default_factory=list, repr=False, compare=False)

    def __len__(self):
        return len(self.generators)

    def contains_unit(self) -> bool:
        return self.rank == 1 and any(g.is_constant() and g for g in self.generators)

    def leading_exponents(self) -> list[tuple[int, tuple[int, ...]]]:
        eng = self._engine
        return [eng.packer.unpack(eng.lms[i]) for i in self._basis_ids]

    def dump(self) -> str:
        """Basis in the canonical polynomial grammar, one element per line."""
        return "\n".join(str(g) for g in self.generators)


def _engine_for(ordering: MonomialOrdering, ctx: VarContext, rank: int, track: bool, extra: int = 0) -> _Engine:
    weights = ordering.slot_weights(ctx, extra)
    if ordering.position_shifts is not None and len(ordering.position_shifts) < rank:
        raise ValueError("position_shifts shorter than the module rank")
    return _Engine(ordering, ctx.nvars + extra, weights, rank, track)


def _to_internal(eng: _Engine, v: ModuleElement, extra: int = 0) -> dict:
    pk = eng.packer
    out = {}
    pad = (0,) * extra
    for pos, c in enumerate(v.coords):
        for e, coef in c.terms.items():
            out[pk.pack(e + pad, pos)] = coef
    return out


def _poly_to_internal(eng: _Engine, p: Poly, extra: int = 0) -> dict:
    pk = eng.packer
    pad = (0,) * extra
    return {pk.pack(e + pad, 0): c for e, c in p.terms.items()}


def _from_internal(eng: _Engine, p: dict, ctx: VarContext, rank: int, extra: int = 0) -> ModuleElement:
    pk = eng.packer
    comps: list[dict] = [dict() for _ in range(rank)]
    for m, c in p.items():
        pos, e = pk.unpack(m)
        if extra and any(e[ctx.nvars:]):
            raise ValueError("auxiliary variable survived in the output")
        comps[pos][e[: ctx.nvars]] = c
    return ModuleElement(tuple(Poly(ctx, t, _trusted=True) for t in comps))


def _ring_from_internal(eng: _Engine, p: dict, ctx: VarContext) -> Poly:
    pk = eng.packer
    return Poly(ctx, {pk.exps(m)[: ctx.nvars]: c for m, c in p.items()}, _trusted=True)


def groebner(gens: Sequence, ordering: MonomialOrdering | None = None, track: bool = False,
             ctx: VarContext | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal or module generated by ``gens``."""
    ordering = ordering or MonomialOrdering()
    gens = list(gens)
    if not gens:
        if ctx is None:
            raise ValueError("empty generator list needs an explicit context")
        return GroebnerBasis([], ordering, ctx, 1, [], representation=[] if track else None,
                             _engine=_engine_for(ordering, ctx, 1, track))
    is_ideal = all(isinstance(g, Poly) for g in gens)
    mods = [_as_module(g) for g in gens]
    ctx = mods[0].ctx
    rank = mods[0].rank
    if any(m.ctx != ctx or m.rank != rank for m in mods):
        raise ValueError("generators must share context and ambient rank")
    eng = _engine_for(ordering, ctx, rank, track)
    ids = eng.run([_to_internal(eng, m) for m in mods])
    elems = [_from_internal(eng, eng.polys[i], ctx, rank) for i in ids]
    rep = None
    if track:
        rep = []
        for i in ids:
            row = []
            for k in range(len(mods)):
                r = eng.reps[i].get(k)
                row.append(_ring_from_internal(eng, r, ctx) if r else Poly.zero(ctx))
            rep.append(row)
    generators = [e.coords[0] for e in elems] if is_ideal else elems
    return GroebnerBasis(generators, ordering, ctx, rank, list(gens), representation=rep,
                         _engine=eng, _basis_ids=list(ids))


def normal_form(p, gb: GroebnerBasis):
    """Divide ``p`` by ``gb``: returns ``(remainder, cofactors)`` with
    ``p = sum cofactors[i] * gb.generators[i] + remainder``."""
    eng = gb._engine
    v = _as_module(p)
    if v.rank != gb.rank:
        raise ValueError(f"rank {v.rank} element reduced by a rank {gb.rank} basis")
    if v.ctx != gb.ctx:
        raise ValueError("element and basis live in different contexts")
    rem, quots = eng.reduce(_to_internal(eng, v), gb._basis_ids, full=True, want_quotients=True)
    remainder = _from_internal(eng, rem, gb.ctx, gb.rank)
    cof = []
    for i in gb._basis_ids:
        q = quots.get(i)
        cof.append(_ring_from_internal(eng, q, gb.ctx) if q else Poly.zero(gb.ctx))
    if isinstance(p, Poly):
        return remainder.coords[0], cof
    return remainder, cof


def reduces_to_zero(p, gb: GroebnerBasis) -> bool:
    eng = gb._engine
    v = _as_module(p)
    rem, _ = eng.reduce(_to_internal(eng, v), gb._basis_ids, full=False)
    return not rem


def lift(p, gb: GroebnerBasis) -> list[Poly] | None:
    """Cofactors of ``p`` with respect to the *input* generators of a tracked basis."""
    if gb.representation is None:
        raise ValueError("basis was computed without tracking")
    rem, cof = normal_form(p, gb)
    if not (rem.is_zero() if isinstance(rem, (Poly, ModuleElement)) else not rem):
        return None
    ctx = gb.ctx
    out = [Poly.zero(ctx) for _ in gb.inputs]
    for c, row in zip(cof, gb.representation):
        if c:
            for k, r in enumerate(row):
                if r:
                    out[k] = out[k] + c * r
    return out


def ideal_membership(p, gens: Sequence, ordering: MonomialOrdering | None = None,
                     gb: GroebnerBasis | None = None) -> list[Poly] | None:
    """Cofactors ``c`` with ``p = sum c_i gens_i``, or None when ``p`` is not a member."""
    gens = list(gens)
    if gb is None:
        if not gens:
            return [] if _as_module(p).is_zero() else None
        gb = groebner(gens, ordering, track=True)
    return lift(p, gb)


def syzygies(gens: Sequence, ordering: MonomialOrdering | None = None) -> list[ModuleElement]:
    """Generators of the module of relations ``sum a_i gens_i = 0``.

    Computed as the position-over-term basis of the rows ``(g_i, e_i)`` in a
    free module of rank ``r + k``; rows with vanishing leading block are the syzygies.
    """
    mods = [_as_module(g) for g in gens]
    if not mods:
        return []
    ctx = mods[0].ctx
    r = mods[0].rank
    k = len(mods)
    one = Poly.const(ctx, 1)
    zero = Poly.zero(ctx)
    rows = []
    for i, m in enumerate(mods):
        tail = [zero] * k
        tail[i] = one
        rows.append(ModuleElement(m.coords + tuple(tail)))
    base = ordering or MonomialOrdering()
    ordn = MonomialOrdering(kind=base.kind, weights=base.weights, module="POT", eliminate=base.eliminate)
    gb = groebner(rows, ordn)
    out = []
    for g in gb.generators:
        if all(c.is_zero() for c in g.coords[:r]):
            out.append(ModuleElement(g.coords[r:]))
    return out


def module_membership(v, gens: Sequence, ordering: MonomialOrdering | None = None) -> bool:
    gens = [_as_module(g) for g in gens if not _as_module(g).is_zero()]
    v = _as_module(v)
    if v.is_zero():
        return True
    if not gens:
        return False
    gb = groebner(gens, ordering)
    return reduces_to_zero(v, gb)


def _standard_monomial_count(lead_exps: list[tuple[int, ...]], slots: Sequence[int]) -> int | None:
    """Number of monomials in ``slots`` not divisible by any lead exponent; None if infinite."""
    leads = [e for e in lead_exps if all(a == 0 for i, a in enumerate(e) if i not in slots)]
    if any(all(a == 0 for a in e) for e in leads):
        return 0
    bounds = {}
    for s in slots:
        pure = [e[s] for e in leads if all(a == 0 for i, a in enumerate(e) if i != s)]
        if not pure:
            return None
        bounds[s] = min(pure)
    slots = list(slots)
    leads_r = [tuple(e[s] for s in slots) for e in leads]

    def standard(x):
        return not any(all(a <= b for a, b in zip(l, x)) for l in leads_r)

    seen = set()
    start = (0,) * len(slots)
    stack = [start]
    seen.add(start)
    while stack:
        x = stack.pop()
        for i in range(len(slots)):
            y = x[:i] + (x[i] + 1,) + x[i + 1:]
            if y not in seen and standard(y):
                seen.add(y)
                stack.append(y)
    return len(seen)


def quotient_dim(gens: Sequence[Poly], ordering: MonomialOrdering | None = None,
                 slots: Sequence[int] | None = None) -> int | None:
    """dim_Q of Q[x]/I for an ideal generated by weighted-homogeneous polynomials.

    Returns None when the quotient is infinite-dimensional.  ``slots`` are the
    variables of the ring (default: the holomorphic ones).  Inputs that are not
    weighted homogeneous for the ordering's weights raise LocalDimensionUnsupported,
    because the global count would not equal the local dimension at the origin.
    """
    gens = [g for g in gens if not g.is_zero()]
    ordering = ordering or MonomialOrdering()
    if not gens:
        return None
    ctx = gens[0].ctx
    slots = tuple(range(ctx.n)) if slots is None else tuple(slots)
    ws = ordering.weights or WeightSystem((1,) * ctx.n)
    for g in gens:
        if g.support_slots() - set(slots):
            raise ValueError(f"generator {g} involves variables outside the quotient ring")
        if is_weighted_homogeneous(g, ws) is None:
            raise LocalDimensionUnsupported(
                f"generator {g} is not weighted homogeneous for weights {ws.weights}; "
                "local dimension at the origin is not computed for such ideals"
            )
    gb = groebner(gens, ordering)
    leads = [e for _, e in gb.leading_exponents()]
    return _standard_monomial_count(leads, slots)


def radical_membership(p: Poly, gens: Sequence[Poly], ordering: MonomialOrdering | None = None) -> bool:
    """True iff some power of ``p`` lies in the ideal: 1 in <gens, 1 - z*p>."""
    if p.is_zero():
        return True
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return False
    ordering = ordering or MonomialOrdering()
    ctx = p.ctx
    eng = _engine_for(ordering, ctx, 1, False, extra=1)
    pk = eng.packer
    inputs = [_poly_to_internal(eng, g, extra=1) for g in gens]
    rab = {pk.pack((0,) * ctx.nvars + (1,), 0) + pk.pack(e + (0,), 0): -c for e, c in p.terms.items()}
    rab[0] = rab.get(0, 0) + 1
    inputs.append({m: c for m, c in rab.items() if c})
    ids = eng.run(inputs)
    return any(eng.lms[i] == 0 for i in ids)


# ---------------------------------------------------------------------------
# Membership in the local ring at the origin
#
# For an ideal I of Q[x, t], p lies in I * O_0 (germs at 0) iff u * p lies in I
# for some u with u(0) != 0.  Such u exist iff the quotient (I : p) is not
# contained in the maximal ideal at 0, which is read off the first coordinates
# of the syzygies of (p, g_1, ..., g_k).


@dataclass(frozen=True)
class LocalMembership:
    """``unit * p = sum cofactors[i] * gens[i]`` with ``unit(0) != 0``."""

    unit: Poly
    cofactors: tuple[Poly, ...]

    def check(self, p: Poly, gens: Sequence[Poly]) -> bool:
        total = Poly.zero(p.ctx)
        for c, g in zip(self.cofactors, gens):
            total = total + c * g
        return self.unit.constant_term() != 0 and total == self.unit * p


def local_membership(p: Poly, gens: Sequence[Poly], ordering: MonomialOrdering | None = None,
                     try_global: bool = True) -> LocalMembership | None:
    """Decide p in <gens> * O_0 exactly; return a unit multiplier and cofactors, or None."""
    gens = list(gens)
    ctx = p.ctx
    if p.is_zero():
        return LocalMembership(Poly.const(ctx, 1), tuple(Poly.zero(ctx) for _ in gens))
    nonzero = [g for g in gens if not g.is_zero()]
    if not nonzero:
        return None
    gb = groebner(gens, ordering, track=True)
    if try_global:
        cof = lift(p, gb)
        if cof is not None:
            return LocalMembership(Poly.const(ctx, 1), tuple(cof))
    candidates = [h for h in ideal_quotient(nonzero, p, ordering) if h.constant_term() != 0]
    if not candidates:
        return None
    h = min(candidates, key=lambda q: (len(q.terms), str(q)))
    unit = h.scale(1 / h.constant_term())
    cof = lift(unit * p, gb)
    if cof is None:
        raise AssertionError("ideal quotient element does not multiply p into the ideal")
    return LocalMembership(unit, tuple(cof))


def ideal_intersection(a: Sequence[Poly], b: Sequence[Poly],
                       ordering: MonomialOrdering | None = None) -> list[Poly]:
    """Generators of <a> intersected with <b>, via s*a + (1-s)*b and elimination of s."""
    a = [g for g in a if not g.is_zero()]
    b = [g for g in b if not g.is_zero()]
    if not a or not b:
        return []
    ctx = a[0].ctx
    big, mapping = _extend_context(ctx)
    s = Poly.slot(big, ctx.n)
    one = Poly.const(big, 1)
    lifted = [s * g.change_context(big, mapping) for g in a]
    lifted += [(one - s) * g.change_context(big, mapping) for g in b]
    weights = ordering.weights if ordering is not None else None
    if weights is not None:
        weights = WeightSystem(weights.weights + (1,), weights.degree_of_t)
    inv = {v: k for k, v in mapping.items()}
    return [g.change_context(ctx, inv) for g in elimination_ideal(lifted, [ctx.n], weights)]


def ideal_quotient(gens: Sequence[Poly], p: Poly, ordering: MonomialOrdering | None = None) -> list[Poly]:
    """Generators of <gens> : p."""
    out = []
    for q in ideal_intersection(gens, [p], ordering):
        h = exact_divide(q, p)
        if h is None:
            raise AssertionError("element of the intersection is not divisible by p")
        out.append(h)
    return out


def elimination_ideal(gens: Sequence[Poly], eliminate: Sequence[int],
                      weights: WeightSystem | None = None) -> list[Poly]:
    """Generators of <gens> intersected with the ring without the ``eliminate`` slots."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ordering = MonomialOrdering(kind="elimination", weights=weights, eliminate=tuple(eliminate))
    gb = groebner(gens, ordering)
    elim = set(eliminate)
    return [g for g in gb.generators if not (g.support_slots() & elim)]


def _extend_context(ctx: VarContext, extra_name: str = "z_aux") -> tuple[VarContext, dict[int, int]]:
    """A context with one more holomorphic variable, placed last among the x's."""
    names = ctx.names + (extra_name,)
    new = VarContext(names, ctx.has_conjugates, ctx.has_parameter, ctx.parameter)
    mapping = {}
    for i in range(ctx.n):
        mapping[i] = i
        if ctx.has_conjugates:
            mapping[ctx.conj_index(i)] = new.conj_index(i)
    if ctx.has_parameter:
        mapping[ctx.t_index] = new.t_index
    return new, mapping


def saturation(gens: Sequence[Poly], p: Poly) -> list[Poly]:
    """Generators of I : p^infinity = (I + <1 - z p>) intersected with the original ring."""
    ctx = p.ctx
    big, mapping = _extend_context(ctx)
    z = Poly.slot(big, ctx.n)
    lifted = [g.change_context(big, mapping) for g in gens if not g.is_zero()]
    lifted.append(Poly.const(big, 1) - z * p.change_context(big, mapping))
    inv = {v: k for k, v in mapping.items()}
    out = elimination_ideal(lifted, [ctx.n])
    return [g.change_context(ctx, inv) for g in out]


def local_radical_membership(p: Poly, gens: Sequence[Poly]) -> bool:
    """True iff p vanishes on the germ at 0 of the zero set of <gens>.

    Equivalent to: the saturation <gens> : p^infinity is not contained in the
    maximal ideal of the origin.
    """
    if p.is_zero():
        return True
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return False
    if p.constant_term() != 0:
        # p is a unit at 0: the germ of V(gens) must be empty, i.e. some generator is a unit
        return any(g.constant_term() != 0 for g in gens)
    return any(g.constant_term() != 0 for g in saturation(gens, p))
