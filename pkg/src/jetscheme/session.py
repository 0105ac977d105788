"""Session documents: one JSON object describing a variety, its arcs and run settings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from importlib import resources

import jsonschema

from .arcs import Arc
from .errors import SessionError
from .fields import field_from_spec
from .groebner import Budget
from .polynomials import PolyRing, VarTable

__all__ = ["Session", "session_from_dict", "load_session", "load_schema", "validate_report"]


@lru_cache(maxsize=None)
def load_schema(name: str):
    text = resources.files("jetscheme").joinpath("schemas", f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


def _validate(doc, name):
    try:
        jsonschema.validate(doc, load_schema(name))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SessionError(f"{name} does not match its schema at {where}: {exc.message}") from None


def validate_report(doc):
    _validate(doc, "report")


@dataclass
class Session:
    doc: dict
    field: object
    ring: PolyRing
    gens: list
    arcs: dict = dc_field(default_factory=dict)
    levels: list = dc_field(default_factory=list)
    precision: int = None
    seed: int = 0
    budget: Budget = dc_field(default_factory=Budget)
    projection_attempts: int = 64

    @property
    def weights(self):
        return self.ring.vars.weights

    @property
    def weighted(self):
        return any(w != 1 for w in self.weights)

    def arc(self, name=None):
        if not self.arcs:
            raise SessionError("the session defines no arcs")
        if name is None:
            name = sorted(self.arcs)[0]
        if name not in self.arcs:
            raise SessionError(f"no arc named {name!r} (have {', '.join(sorted(self.arcs))})")
        return self.arcs[name]

    def default_precision(self, level):
        """At least ``2 * level + 2`` unless the session asks for more."""
        need = 2 * level + 2
        return max(need, self.precision or 0)

    def morphism(self):
        m = self.doc.get("morphism")
        if not m:
            raise SessionError("the session defines no morphism")
        target = PolyRing(self.field, tuple(m["target_variables"]))
        return target, list(m.get("target_ideal", [])), list(m["images"])


def _parse_vars(items):
    names, weights = [], []
    for v in items:
        if isinstance(v, str):
            names.append(v)
            weights.append(1)
        else:
            names.append(v["name"])
            weights.append(int(v.get("weight", 1)))
    if len(set(names)) != len(names):
        raise SessionError("duplicate variable names")
    if "t" in names:
        raise SessionError("'t' is reserved for arcs")
    return VarTable(tuple(names), tuple(weights))


def _build_arc(name, spec, ring, prec):
    from .invariants import generic_arc

    if "generic" in spec:
        g = spec["generic"]
        arc = generic_arc(ring, g["images"], g["terms"], g.get("start", 1), prec=prec)
        arc.name = name
        return arc
    return Arc(ring, spec["images"], spec.get("params", ()), prec or 16, name)


def session_from_dict(doc) -> Session:
    _validate(doc, "session")
    F = field_from_spec(doc["field"])
    ring = PolyRing(F, _parse_vars(doc["variables"]))
    gens = [ring.convert(g) for g in doc["ideal"]]
    prec = doc.get("precision")
    levels = list(doc.get("levels", []))
    if prec is not None and levels and prec < 2 * max(levels) + 2:
        raise SessionError(f"precision {prec} is below 2*level+2 for level {max(levels)}")
    arcs = {}
    for name in sorted(doc.get("arcs", {})):
        arcs[name] = _build_arc(name, doc["arcs"][name], ring, prec)
    b = dict(doc.get("budget", {}))
    attempts = b.pop("projection_attempts", 64)
    budget = Budget(**b)
    return Session(doc, F, ring, gens, arcs, levels, prec, int(doc.get("seed", 0)), budget, attempts)


def load_session(path) -> Session:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SessionError(f"cannot read session {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SessionError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    return session_from_dict(doc)
