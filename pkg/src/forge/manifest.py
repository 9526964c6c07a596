"""JSON manifests: algebras, forms, r-matrices, cobrackets and chart actions.

Rationals travel as "p/q" strings so that nothing is rounded on the way.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .bialg import Cobracket, RMatrix
from .liealg import LieAlgebra
from .tensorspace import Tensor, q

VERSION = 1


class ManifestError(ValueError):
    """Malformed input; the message names the offending field."""


class UnknownVersion(ManifestError):
    pass


def fmt(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _rat(s, where: str) -> Fraction:
    try:
        return q(s)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ManifestError(f"{where}: bad rational {s!r} ({exc})") from None


@dataclass
class ActionSpec:
    """Per-basis polynomial vector fields: {label: {variable: [[exponents], "p/q"], ...}}."""
    name: str
    algebra: str
    variables: tuple
    side: str
    fields: dict


@dataclass
class Manifest:
    version: int = VERSION
    name: str = ""
    algebras: dict = field(default_factory=dict)
    r_matrices: dict = field(default_factory=dict)
    cobrackets: dict = field(default_factory=dict)
    actions: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    def is_empty(self) -> bool:
        return not (self.algebras or self.r_matrices or self.cobrackets or self.actions)

    def lie_action(self, name: str):
        from .polyfield import Chart, LieAction, PolyField
        spec = self.actions[name]
        g = self.algebras[spec.algebra]
        C = Chart(spec.variables)
        fields = []
        for lab in g.labels:
            comps = {}
            for var, terms in spec.fields.get(lab, {}).items():
                comps[(C.variables.index(var),)] = C.poly({tuple(e): c for e, c in terms})
            fields.append(PolyField(C, 1, comps))
        return LieAction(g, C, fields, spec.side)


@lru_cache(maxsize=None)
def schema() -> dict:
    text = resources.files("forge").joinpath("data/manifest.schema.json").read_text()
    return json.loads(text)


def _label(V_labels, lab, where):
    if lab not in V_labels:
        raise ManifestError(f"{where}: unknown basis label {lab!r}")
    return V_labels.index(lab)


def parse(doc: dict, source: str = "<manifest>") -> Manifest:
    if not isinstance(doc, dict):
        raise ManifestError(f"{source}: top level must be an object")
    if "version" not in doc:
        raise ManifestError(f"{source}: missing field 'version'")
    if doc["version"] != VERSION:
        raise UnknownVersion(f"{source}: unsupported version {doc['version']!r}")
    try:
        jsonschema.validate(doc, schema())
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ManifestError(f"{source}: field {path}: {exc.message}") from None
    m = Manifest(name=doc.get("name", ""), checks=dict(doc.get("checks", {})))
    for i, a in enumerate(doc.get("algebras", [])):
        where = f"algebras[{i}]"
        labels = list(a["labels"])
        br = {}
        for j, (x, y, z, c) in enumerate(a.get("brackets", [])):
            w = f"{where}.brackets[{j}]"
            for lab in (x, y, z):
                _label(labels, lab, w)
            br.setdefault((x, y), {})[z] = _rat(c, w)
        form = None
        if "form" in a:
            form = {}
            for j, (x, y, c) in enumerate(a["form"]):
                w = f"{where}.form[{j}]"
                _label(labels, x, w), _label(labels, y, w)
                form[(x, y)] = _rat(c, w)
        m.algebras[a["name"]] = LieAlgebra.from_brackets(a["name"], labels, br, form, check=False)
    for i, r in enumerate(doc.get("r_matrices", [])):
        where = f"r_matrices[{i}]"
        g = _algebra(m, r["algebra"], where)
        ent = []
        for j, (x, y, c) in enumerate(r["entries"]):
            w = f"{where}.entries[{j}]"
            _label(g.labels, x, w), _label(g.labels, y, w)
            ent.append((_rat(c, w), x, y))
        T = Tensor.from_labels(g.space, ent) if ent else Tensor.zero(g.space, 2)
        m.r_matrices[r["name"]] = (r["algebra"], T)
    for i, cbd in enumerate(doc.get("cobrackets", [])):
        where = f"cobrackets[{i}]"
        g = _algebra(m, cbd["algebra"], where)
        vals = []
        for lab in g.labels:
            ent = []
            for j, (x, y, c) in enumerate(cbd["values"].get(lab, [])):
                w = f"{where}.values.{lab}[{j}]"
                _label(g.labels, x, w), _label(g.labels, y, w)
                v = _rat(c, w)
                ent += [(v, x, y), (-v, y, x)]
            vals.append(Tensor.from_labels(g.space, ent) if ent else Tensor.zero(g.space, 2))
        m.cobrackets[cbd["name"]] = (cbd["algebra"], vals)
    for i, ad in enumerate(doc.get("actions", [])):
        where = f"actions[{i}]"
        g = _algebra(m, ad["algebra"], where)
        variables = tuple(ad["variables"])
        fields = {}
        for lab, comps in ad["fields"].items():
            _label(g.labels, lab, f"{where}.fields")
            fields[lab] = {}
            for var, terms in comps.items():
                if var not in variables:
                    raise ManifestError(f"{where}.fields.{lab}: unknown variable {var!r}")
                fields[lab][var] = [(tuple(e), _rat(c, f"{where}.fields.{lab}.{var}"))
                                    for e, c in terms]
                if any(len(e) != len(variables) for e, _ in fields[lab][var]):
                    raise ManifestError(f"{where}.fields.{lab}.{var}: exponent length mismatch")
        m.actions[ad["name"]] = ActionSpec(ad["name"], ad["algebra"], variables,
                                           ad.get("side", "left"), fields)
    return m


def _algebra(m: Manifest, name: str, where: str) -> LieAlgebra:
    if name not in m.algebras:
        raise ManifestError(f"{where}: unknown algebra {name!r}")
    return m.algebras[name]


def load(path) -> Manifest:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ManifestError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse(doc, str(path))


# --------------------------------------------------------------------------
# serialization


def algebra_doc(g: LieAlgebra) -> dict:
    L = g.labels
    br = []
    for (i, j, k), c in sorted(g.structure.entries.items()):
        if i < j:
            br.append([L[i], L[j], L[k], fmt(c)])
    out = {"name": g.space.name, "labels": list(L), "brackets": br}
    if g.form is not None:
        out["form"] = [[L[i], L[j], fmt(c)] for (i, j), c in sorted(g.form.entries.items()) if i <= j]
    return out


def tensor_entries(T: Tensor) -> list:
    return [[*(V.labels[i] for V, i in zip(T.spaces, key)), fmt(c)]
            for key, c in sorted(T.entries.items())]


def r_doc(name: str, algebra: str, T: Tensor) -> dict:
    return {"name": name, "algebra": algebra, "entries": tensor_entries(T)}


def cobracket_doc(name: str, algebra: str, cb: Cobracket) -> dict:
    L = cb.algebra.labels
    vals = {}
    for lab, v in zip(L, cb.values):
        comps = v.skew_components()
        if comps:
            vals[lab] = [[L[a], L[b], fmt(c)] for (a, b), c in sorted(comps.items())]
    return {"name": name, "algebra": algebra, "values": vals}


def _poly_terms(f) -> list:
    return [[list(mon), fmt(Fraction(int(c.numerator), int(c.denominator)))]
            for mon, c in sorted(f.terms())]


def action_doc(name: str, algebra: str, act) -> dict:
    C = act.chart
    fields = {}
    for lab, X in zip(act.algebra.labels, act.fields):
        comps = {C.variables[I[0]]: _poly_terms(f) for I, f in sorted(X.comps.items())}
        if comps:
            fields[lab] = comps
    return {"name": name, "algebra": algebra, "variables": list(C.variables),
            "side": act.side, "fields": fields}


def field_doc(A) -> dict:
    C = A.chart
    return {"variables": list(C.variables), "degree": A.degree,
            "components": [[[C.variables[i] for i in I], _poly_terms(f)]
                           for I, f in sorted(A.comps.items())]}


def to_doc(m: Manifest) -> dict:
    doc = {"version": m.version}
    if m.name:
        doc["name"] = m.name
    if m.algebras:
        doc["algebras"] = [{**algebra_doc(g), "name": n} for n, g in sorted(m.algebras.items())]
    if m.r_matrices:
        doc["r_matrices"] = [r_doc(n, a, T) for n, (a, T) in sorted(m.r_matrices.items())]
    if m.cobrackets:
        out = []
        for n, (a, vals) in sorted(m.cobrackets.items()):
            out.append(cobracket_doc(n, a, Cobracket(m.algebras[a], vals, check=False)))
        doc["cobrackets"] = out
    if m.actions:
        out = []
        for n, spec in sorted(m.actions.items()):
            fields = {lab: {v: [[list(e), fmt(c)] for e, c in terms] for v, terms in comps.items()}
                      for lab, comps in spec.fields.items()}
            out.append({"name": n, "algebra": spec.algebra, "variables": list(spec.variables),
                        "side": spec.side, "fields": fields})
        doc["actions"] = out
    if m.checks:
        doc["checks"] = m.checks
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def save(m: Manifest, path) -> None:
    Path(path).write_text(dumps(to_doc(m)))
