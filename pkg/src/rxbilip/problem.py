"""Problem files: one (X, f, theta list) per INI file.

Grammar, version 1::

    [problem]
    version = 1                      ; mandatory
    name = cross-cap                 ; optional label
    variables = u, v, w
    weights = 1, 2, 2
    parameter = t                    ; optional, default t
    phi = "v^2 - u^2*w"              ; omit or "0" for X = C^n
    f = "u^6 + v^3 + w^3"
    theta = "u^6"                    ; several terms: one per line

    [generators]                     ; optional explicit Theta_X, checked against the computed one
    eta_1 = "u, 2*v, 2*w"            ; components separated by commas

    [options]                        ; all optional
    ordering = wgrevlex
    exponent_cap = 20
    exponents = 10, 14, 10
    seed = 0
    radii = 8
    radius_factor = 0.5
    points_per_radius = 256
    t_values = 0, 0.5, 1
    tolerance = 0.1
    assert = no-branch, isolated-singularity
    kill = y, z ; x, y               ; kill sets separated by ';'
    choice = 2                       ; 1-based generator indices for the polar curve

Polynomial values may be quoted.  Generator and kill indices are 1-based.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

from .derlog import Derlog, derlog_from_fields, derlog_generators
from .invariants import DeformationProblem
from .parser import parse_poly
from .poly import VarContext, VectorField, WeightSystem

__all__ = ["FORMAT_VERSION", "ProblemError", "ProblemFile", "load_problem", "parse_problem"]

FORMAT_VERSION = 1


class ProblemError(ValueError):
    """Unreadable file, grammar violation or inconsistent dimensions."""


@dataclass
class ProblemFile:
    name: str
    variables: tuple[str, ...]
    weights: tuple[int, ...]
    phi: str
    f: str
    thetas: tuple[str, ...]
    parameter: str = "t"
    generators: tuple[tuple[str, ...], ...] | None = None
    options: dict[str, str] = field(default_factory=dict)
    source: str = ""

    def context(self) -> VarContext:
        return VarContext(self.variables, True, True, self.parameter)

    def weight_system(self) -> WeightSystem:
        return WeightSystem(self.weights)

    def derlog(self) -> Derlog:
        ctx = self.context()
        ws = self.weight_system()
        phi = parse_poly(self.phi, ctx)
        if self.generators is None:
            return derlog_generators(phi, ws)
        fields = []
        for comps in self.generators:
            if len(comps) != ctx.n:
                raise ProblemError(f"generator with {len(comps)} components for {ctx.n} variables")
            fields.append(VectorField(ctx, [parse_poly(c, ctx) for c in comps]))
        return derlog_from_fields(phi, fields, ws)

    def problem(self, order_kind: str | None = None) -> DeformationProblem:
        ctx = self.context()
        kind = order_kind or self.options.get("ordering", "wgrevlex")
        f = parse_poly(self.f, ctx)
        thetas = tuple(parse_poly(th, ctx) for th in self.thetas)
        return DeformationProblem(self.derlog(), f, thetas, self.weight_system(), kind)

    def kill_sets(self) -> tuple[tuple[int, ...], ...] | None:
        raw = self.options.get("kill")
        return None if raw is None else parse_kill_sets(raw, self.variables)

    def echo(self) -> dict:
        return {
            "name": self.name,
            "variables": list(self.variables),
            "parameter": self.parameter,
            "weights": list(self.weights),
            "phi": self.phi,
            "f": self.f,
            "theta": list(self.thetas),
            "generators": None if self.generators is None else [list(g) for g in self.generators],
            "options": dict(sorted(self.options.items())),
        }


def _unquote(v: str) -> str:
    v = v.strip()
    if len(v) >= 2 and v[0] == v[-1] and v[0] in "\"'":
        return v[1:-1].strip()
    return v


def _int_list(raw: str, key: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in raw.split(",") if x.strip())
    except ValueError:
        raise ProblemError(f"{key} must be a comma-separated list of integers, got {raw!r}") from None


def parse_kill_sets(raw: str, variables: tuple[str, ...]) -> tuple[tuple[int, ...], ...]:
    """``"y, z ; x, y"`` or ``"2,3"`` to 0-based index tuples."""
    out = []
    for chunk in raw.split(";"):
        items = [x.strip() for x in chunk.split(",") if x.strip()]
        if not items:
            continue
        idx = []
        for it in items:
            if it in variables:
                idx.append(variables.index(it))
            elif it.isdigit() and 1 <= int(it) <= len(variables):
                idx.append(int(it) - 1)
            else:
                raise ProblemError(f"unknown kill coordinate {it!r}")
        out.append(tuple(sorted(set(idx))))
    return tuple(out)


def parse_problem(text: str, source: str = "<string>") -> ProblemFile:
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"), interpolation=None)
    try:
        cp.read_string(text, source=source)
    except configparser.Error as exc:
        raise ProblemError(f"{source}: {exc}") from None
    if not cp.has_section("problem"):
        raise ProblemError(f"{source}: missing [problem] section")
    sec = cp["problem"]
    if "version" not in sec:
        raise ProblemError(f"{source}: the version key is mandatory")
    try:
        version = int(sec["version"])
    except ValueError:
        raise ProblemError(f"{source}: version must be an integer") from None
    if version != FORMAT_VERSION:
        raise ProblemError(f"{source}: unsupported format version {version}")
    for key in ("variables", "weights", "f"):
        if key not in sec:
            raise ProblemError(f"{source}: missing key {key!r}")
    variables = tuple(v.strip() for v in sec["variables"].split(",") if v.strip())
    weights = _int_list(sec["weights"], "weights")
    if len(weights) != len(variables):
        raise ProblemError(f"{source}: {len(weights)} weights for {len(variables)} variables")
    thetas = tuple(_unquote(line) for line in sec.get("theta", "").splitlines() if _unquote(line))
    if not thetas:
        raise ProblemError(f"{source}: at least one theta is required")
    generators = None
    if cp.has_section("generators"):
        generators = tuple(
            tuple(c.strip() for c in _unquote(v).split(","))
            for _, v in sorted(cp["generators"].items(), key=lambda kv: _gen_key(kv[0]))
        )
    options = dict(cp["options"].items()) if cp.has_section("options") else {}
    pf = ProblemFile(
        name=sec.get("name", Path(source).stem),
        variables=variables,
        weights=weights,
        phi=_unquote(sec.get("phi", "0")),
        f=_unquote(sec["f"]),
        thetas=thetas,
        parameter=sec.get("parameter", "t").strip(),
        generators=generators,
        options={k: _unquote(v) for k, v in options.items()},
        source=source,
    )
    try:
        pf.context()
        pf.weight_system()
    except ValueError as exc:
        raise ProblemError(f"{source}: {exc}") from None
    return pf


def _gen_key(name: str):
    tail = name.rsplit("_", 1)[-1]
    return (0, int(tail), name) if tail.isdigit() else (1, 0, name)


def load_problem(path) -> ProblemFile:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ProblemError(f"cannot read {p}: {exc.strerror}") from None
    return parse_problem(text, str(p))
