"""Quantum-dot graphs: declarative spec, JSON I/O, Hamiltonian assembly.

A graph is a set of dots (sites) with on-site energies and tunnelling
couplings along undirected edges.  Couplings and potentials are either
literal numbers or names looked up in the graph's parameter table, so one
spec can be re-evaluated for many parameter values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Union

import jsonschema
import numpy as np

from .errors import GraphSyntaxError, UnknownParameter, ValidationError

Value = Union[float, str]

_NUMBER = {"type": "number"}
_VALUE = {"anyOf": [{"type": "number"}, {"type": "string", "minLength": 1}]}

GRAPH_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["sites", "edges", "parameters"],
    "properties": {
        "sites": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["id", "potential"],
                "properties": {
                    "id": {"type": "integer", "minimum": 0},
                    "potential": _VALUE,
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["a", "b", "coupling"],
                "properties": {
                    "a": {"type": "integer", "minimum": 0},
                    "b": {"type": "integer", "minimum": 0},
                    "coupling": _VALUE,
                },
            },
        },
        "parameters": {"type": "object", "additionalProperties": _NUMBER},
    },
}


@dataclass(frozen=True)
class Site:
    id: int
    potential: Value = 0.0


@dataclass(frozen=True)
class Edge:
    a: int
    b: int
    coupling: Value

    @property
    def key(self) -> frozenset:
        return frozenset((self.a, self.b))


@dataclass(frozen=True)
class GraphSpec:
    """Validated, immutable description of a quantum-dot graph.

    Sites must be listed with ids exactly ``0..N-1`` (any order is accepted
    and normalised to ascending).  Edges are undirected; self-loops and
    repeated pairs are rejected.
    """

    sites: tuple[Site, ...]
    edges: tuple[Edge, ...]
    parameters: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        sites = tuple(sorted(self.sites, key=lambda s: s.id))
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(
            self,
            "parameters",
            MappingProxyType({str(k): float(v) for k, v in self.parameters.items()}),
        )
        self._validate()

    def _validate(self):
        seen = set()
        for s in self.sites:
            if s.id in seen:
                raise ValidationError(f"site {s.id}", "duplicate site id")
            seen.add(s.id)
        n = len(self.sites)
        for k, s in enumerate(self.sites):
            if s.id != k:
                raise ValidationError(
                    f"site {s.id}", f"site ids must be dense 0..{n - 1}; missing {k}"
                )
            self._check_ref(s.potential, f"site {s.id}")

        pairs = set()
        for k, e in enumerate(self.edges):
            locus = f"edges[{k}] ({e.a},{e.b})"
            if e.a == e.b:
                raise ValidationError(locus, "self-loop")
            if not (0 <= e.a < n and 0 <= e.b < n):
                raise ValidationError(locus, f"endpoint outside 0..{n - 1}")
            if e.key in pairs:
                raise ValidationError(locus, "duplicate edge")
            pairs.add(e.key)
            self._check_ref(e.coupling, locus)

    def _check_ref(self, value, locus):
        if isinstance(value, str) and value not in self.parameters:
            raise UnknownParameter(locus, f"unknown parameter {value!r}")

    @property
    def n(self) -> int:
        return len(self.sites)

    def resolve(self, value: Value, overrides: Mapping[str, float] | None = None) -> float:
        if isinstance(value, str):
            if overrides and value in overrides:
                return float(overrides[value])
            return self.parameters[value]
        return float(value)

    def with_parameters(self, overrides: Mapping[str, float]) -> "GraphSpec":
        """Return a copy with some parameter values replaced."""
        _check_overrides(self, overrides)
        params = dict(self.parameters)
        params.update({k: float(v) for k, v in overrides.items()})
        return GraphSpec(self.sites, self.edges, params)

    def to_dict(self) -> dict:
        return {
            "sites": [{"id": s.id, "potential": s.potential} for s in self.sites],
            "edges": [{"a": e.a, "b": e.b, "coupling": e.coupling} for e in self.edges],
            "parameters": dict(self.parameters),
        }


def _check_overrides(spec: GraphSpec, overrides: Mapping[str, float] | None):
    for name in overrides or ():
        if name not in spec.parameters:
            raise UnknownParameter(f"override {name!r}", "not a parameter of this graph")


def parse_graph_spec(text: str | bytes) -> GraphSpec:
    """Parse and validate a JSON graph document."""
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise GraphSyntaxError(f"malformed JSON: {exc}") from exc
    try:
        jsonschema.validate(doc, GRAPH_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise GraphSyntaxError(f"{where}: {exc.message}") from exc

    sites = [Site(int(d["id"]), d["potential"]) for d in doc["sites"]]
    edges = [Edge(int(d["a"]), int(d["b"]), d["coupling"]) for d in doc["edges"]]
    return GraphSpec(tuple(sites), tuple(edges), doc["parameters"])


def serialize_graph_spec(spec: GraphSpec) -> str:
    return json.dumps(spec.to_dict(), indent=2, sort_keys=True) + "\n"


def load_graph_spec(path) -> GraphSpec:
    with open(path, "rb") as fh:
        return parse_graph_spec(fh.read())


def build_hamiltonian(
    spec: GraphSpec, overrides: Mapping[str, float] | None = None
) -> np.ndarray:
    """Assemble the real symmetric tight-binding matrix of ``spec``.

    The diagonal holds site potentials, ``H[a, b] = H[b, a]`` the coupling of
    edge ``{a, b}``.  ``overrides`` take precedence over the spec's own
    parameter values.  The returned array is read-only.
    """
    _check_overrides(spec, overrides)
    H = np.zeros((spec.n, spec.n))
    for s in spec.sites:
        H[s.id, s.id] = spec.resolve(s.potential, overrides)
    for e in spec.edges:
        H[e.a, e.b] = H[e.b, e.a] = spec.resolve(e.coupling, overrides)
    H.flags.writeable = False
    return H


def builtin_braess4(
    b: float, s: float, c: float, V0: float = 0.0, *, cross_edge: bool | None = None
) -> GraphSpec:
    """Four dots on a rhombus with the extra ``c`` link between dots 1 and 3.

    Reproduces::

        [[V0, b,  0,  s ],
         [b,  V0, s,  c ],
         [0,  s,  V0, b ],
         [s,  c,  b,  V0]]

    ``cross_edge=None`` keeps the ``c`` edge only when ``c != 0``.
    """
    if cross_edge is None:
        cross_edge = c != 0
    sites = tuple(Site(i, "V0") for i in range(4))
    edges = [Edge(0, 1, "b"), Edge(1, 2, "s"), Edge(2, 3, "b"), Edge(0, 3, "s")]
    if cross_edge:
        edges.append(Edge(1, 3, "c"))
    return GraphSpec(sites, tuple(edges), {"b": b, "s": s, "c": c, "V0": V0})


# Dots: {0,1} initial DQD, {2,3} upper DQD, 4 upper single dot,
# {5,6} lower DQD, 7 lower single dot, {8,9} final DQD.
_BRAESS10_POTENTIALS = ("V1", "V1", "Eu", "Eu", "Vu", "Ed", "Ed", "Vd", "V2", "V2")
_BRAESS10_EDGES = (
    (0, 1, "s"), (2, 3, "s"), (5, 6, "s"), (8, 9, "s"),
    (1, 2, "h"), (3, 4, "h"), (4, 8, "h"),
    (1, 5, "l"), (6, 7, "l"), (7, 8, "l"),
)


def builtin_braess10(
    l: float,
    h: float,
    s: float,
    c: float,
    V1: float = 0.0,
    V2: float = 0.0,
    Eu: float = 0.0,
    Ed: float = 0.0,
    Vu: float = 0.0,
    Vd: float = 0.0,
    *,
    cross_edge: bool | None = None,
) -> GraphSpec:
    """Ten-dot two-branch network with an optional third path ``c``.

    The upper branch (coupling ``h``) runs 1-2=3-4-8, the lower branch
    (coupling ``l``) runs 1-5=6-7-8, and the ``c`` link joins the two single
    dots 4 and 7.  ``=`` marks intra-DQD coupling ``s``.
    """
    if cross_edge is None:
        cross_edge = c != 0
    sites = tuple(Site(i, p) for i, p in enumerate(_BRAESS10_POTENTIALS))
    edges = [Edge(a, b, name) for a, b, name in _BRAESS10_EDGES]
    if cross_edge:
        edges.append(Edge(4, 7, "c"))
    params = dict(l=l, h=h, s=s, c=c, V1=V1, V2=V2, Eu=Eu, Ed=Ed, Vu=Vu, Vd=Vd)
    return GraphSpec(sites, tuple(edges), params)


def _uniform(V: float) -> dict:
    return dict(V1=V, V2=V, Eu=V, Ed=V, Vu=V, Vd=V)


PRESETS = {
    "table1": ("braess4", dict(b=0.01, s=0.01, c=0.1, V0=0.0)),
    "table2": ("braess10", dict(l=0.1, h=0.2, s=0.25, c=0.3, **_uniform(0.5))),
    "table3": ("braess10", dict(l=0.04, h=0.05, s=0.25, c=0.3, **_uniform(0.0))),
}

BUILTINS = {"braess4": builtin_braess4, "braess10": builtin_braess10}
DEFAULT_PRESET = {"braess4": "table1", "braess10": "table2"}


def builtin(name: str, preset: str | None = None, **kwargs) -> GraphSpec:
    """Build a named builtin from a preset table plus keyword overrides."""
    if name not in BUILTINS:
        raise ValidationError(f"builtin {name!r}", f"expected one of {sorted(BUILTINS)}")
    preset = preset or DEFAULT_PRESET[name]
    target, values = PRESETS[preset]
    if target != name:
        raise ValidationError(f"preset {preset!r}", f"applies to {target}, not {name}")
    params = dict(values)
    for key in kwargs:
        if key not in params and key != "cross_edge":
            raise UnknownParameter(f"override {key!r}", f"not a parameter of {name}")
    params.update(kwargs)
    return BUILTINS[name](**params)
