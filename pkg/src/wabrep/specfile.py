"""JSON module-spec files: one record per module.

    {"schema": 1,
     "modules": [
       {"family": "A", "name": "A",
        "params": {"a": "sym", "b": "sym", "lam": "sym", "mu": "1/2"},
        "gamma": "inf",                      # only for families reading gamma
        "p": 3,                              # only for Abar_periodic
        "layers": [0, null],                 # null = unbounded
        "variant": "printed",                # optional
        "perturb": {"generator": "W", "index": 1, "source": [0, 0],
                    "delta": "1", "target": [1, 1]}}   # optional, for controls
     ]}

Parameter values are "sym" (the indeterminate named after the parameter), an
exact rational "p/q", or an expression over the parameter names; gamma may
also be "inf".  ``dump_specs(load_specs(text))`` reproduces ``text`` exactly
when ``text`` was produced by ``dump_specs``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .algebra import Generator
from .catalog import BasisIndex, ModuleSpec, build_module, canonical_family, default_catalog
from .errors import SpecFileError
from .scalar import INFINITY, Scalar, parse_scalar, sym

SCHEMA_VERSION = 1
PARAM_NAMES = ("a", "b", "lam", "mu", "gamma", "c")


@dataclass
class Perturbation:
    generator: Generator
    source: BasisIndex
    delta: Scalar
    target: Optional[BasisIndex] = None

    def to_dict(self) -> Dict:
        out = {"generator": self.generator.kind, "index": self.generator.index,
               "source": list(self.source), "delta": str(self.delta)}
        if self.target is not None:
            out["target"] = list(self.target)
        return out


@dataclass
class SpecRecord:
    """A parsed record: the module plus an optional perturbation."""

    spec: ModuleSpec
    perturbation: Optional[Perturbation] = None

    def module(self):
        if self.perturbation is None:
            return self.spec
        from .verifier import perturb
        pt = self.perturbation
        return perturb(self.spec, pt.generator, pt.source, pt.delta, pt.target)


def parse_value(name: str, text) -> object:
    """"sym" -> indeterminate, "inf" (gamma only) -> INFINITY, else exact expression."""
    if isinstance(text, bool):
        raise SpecFileError(f"parameter {name}: boolean is not a value")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise SpecFileError(f"parameter {name}: expected a string, got {text!r}")
    t = text.strip()
    if t == "sym":
        return sym(name)
    if t == "inf":
        if name != "gamma":
            raise SpecFileError(f"only gamma may be 'inf' (got {name} = inf)")
        return INFINITY
    try:
        return parse_scalar(t)
    except (ValueError, SyntaxError, ZeroDivisionError, ArithmeticError) as exc:
        raise SpecFileError(f"parameter {name}: cannot parse {text!r}: {exc}") from exc


def format_value(name: str, value) -> str:
    if value is INFINITY:
        return "inf"
    text = str(value)
    return "sym" if text == name else text


def _layers(value) -> Optional[Tuple[Optional[int], Optional[int]]]:
    if value is None:
        return None
    if not (isinstance(value, list) and len(value) == 2
            and all(x is None or (isinstance(x, int) and not isinstance(x, bool)) for x in value)):
        raise SpecFileError(f"layers must be [lo, hi] with integers or null, got {value!r}")
    return tuple(value)


def _index(value, what) -> BasisIndex:
    if not (isinstance(value, list) and len(value) == 2 and all(isinstance(x, int) for x in value)):
        raise SpecFileError(f"{what} must be [layer, offset], got {value!r}")
    return BasisIndex(*value)


def _perturbation(d) -> Perturbation:
    if not isinstance(d, Mapping):
        raise SpecFileError("perturb must be an object")
    try:
        kind, index = d["generator"], d["index"]
        if kind not in ("L", "W") or not isinstance(index, int):
            raise SpecFileError(f"bad perturbation generator {kind!r}{index!r}")
        target = _index(d["target"], "perturb.target") if "target" in d else None
        return Perturbation(Generator(kind, index), _index(d["source"], "perturb.source"),
                            parse_value("delta", str(d.get("delta", "1"))), target)
    except KeyError as exc:
        raise SpecFileError(f"perturb is missing {exc}") from exc


def record_from_dict(d, overrides: Optional[Mapping[str, str]] = None) -> SpecRecord:
    """Build one record; ``overrides`` (name -> text) replace file parameters."""
    if not isinstance(d, Mapping):
        raise SpecFileError(f"module record must be an object, got {d!r}")
    if "family" not in d:
        raise SpecFileError("module record has no 'family'")
    params = dict(d.get("params", {}))
    if not isinstance(params, dict):
        raise SpecFileError("params must be an object")
    if "gamma" in d:
        params["gamma"] = d["gamma"]
    for key, text in (overrides or {}).items():
        params[key] = text
    unknown = set(params) - set(PARAM_NAMES)
    if unknown:
        raise SpecFileError(f"unknown parameter(s) {sorted(unknown)}")
    values = {k: parse_value(k, v) for k, v in params.items()}
    p = d.get("p")
    if p is not None and (not isinstance(p, int) or isinstance(p, bool)):
        raise SpecFileError(f"p must be an integer, got {p!r}")
    spec = build_module(canonical_family(d["family"]), p=p, layers=_layers(d.get("layers")),
                        name=d.get("name", ""), variant=d.get("variant", ""), **values)
    pert = _perturbation(d["perturb"]) if "perturb" in d else None
    return SpecRecord(spec, pert)


def record_to_dict(rec) -> Dict:
    if isinstance(rec, ModuleSpec):
        rec = SpecRecord(rec)
    s = rec.spec
    params = {"a": format_value("a", s.algebra.a), "b": format_value("b", s.algebra.b)}
    for name in s.info.params:
        if name != "gamma":
            params[name] = format_value(name, getattr(s, name))
    out = {"family": s.family, "name": s.name, "params": params}
    if "gamma" in s.info.params:
        out["gamma"] = format_value("gamma", s.gamma)
    if s.p is not None:
        out["p"] = s.p
    out["layers"] = [s.layers.lo, s.layers.hi]
    if s.variant:
        out["variant"] = s.variant
    if rec.perturbation is not None:
        out["perturb"] = rec.perturbation.to_dict()
    return out


def loads_specs(text: str, overrides: Optional[Mapping[str, str]] = None) -> List[SpecRecord]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SpecFileError("spec file must be a JSON object")
    if data.get("schema") != SCHEMA_VERSION:
        raise SpecFileError(f"unsupported spec-file schema {data.get('schema')!r}")
    modules = data.get("modules")
    if not isinstance(modules, list):
        raise SpecFileError("spec file needs a 'modules' list")
    return [record_from_dict(d, overrides) for d in modules]


def load_specs(path, overrides: Optional[Mapping[str, str]] = None) -> List[SpecRecord]:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecFileError(f"cannot read {path}: {exc}") from exc
    return loads_specs(text, overrides)


def dump_specs(records: Iterable) -> str:
    return json.dumps({"schema": SCHEMA_VERSION,
                       "modules": [record_to_dict(r) for r in records]}, indent=2) + "\n"


def catalog_text() -> str:
    """The shipped spec file holding the full default catalog."""
    return resources.files("wabrep").joinpath("data/catalog.json").read_text()


def load_catalog(overrides: Optional[Mapping[str, str]] = None) -> List[SpecRecord]:
    return loads_specs(catalog_text(), overrides)


def default_catalog_text() -> str:
    """Regenerate the shipped catalog file from ``default_catalog()``."""
    return dump_specs(default_catalog())
