"""Closed-form solutions for the unknown W-coefficients, checked on a window.

A case fixes the Vir-module type and mu of each layer, a few parameter
bindings (b = 1, lam = 0, ...), and a formula for w^j_{k,m} on each layer
that carries one.  Formulas are expression strings in j, k, m and the
parameters; ``delta(x)`` is the Kronecker delta.  The shipped table lives in
``data/cases.json``.

``verify_w_formula`` substitutes a case into the first- and second-order
constraints (and, for three layers, into [W_k1, W_k2] = 0) and reports every
nonzero residual.  It also checks that the formula vanishes on labels that do
not exist (the W-image of an absent vector, or an image landing on one).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from ..errors import BadParams, SpecFileError, ZeroDenominator
from ..report import VerificationReport
from ..scalar import INFINITY, ZERO, Scalar, as_scalar, parse_scalar
from .constraints import (A_DOUBLE_PRIME, LAYER_TYPES, LayerSystem, WUnknown,
                          first_order, second_order, w_square)

DEFAULT_K = 4
DEFAULT_M = 4


@dataclass
class WFormula:
    name: str
    description: str
    layers: List[Dict[str, str]]            # {"layer", "kind", "mu"}
    w: Dict[int, str]                       # layer -> formula text
    bindings: Dict[str, str] = field(default_factory=dict)
    shifts: Tuple[int, ...] = (0,)
    printed_w: Optional[Dict[int, str]] = None   # as originally printed, if it differs

    @classmethod
    def from_dict(cls, d: Mapping) -> "WFormula":
        try:
            layers = [dict(x) for x in d["layers"]]
            for x in layers:
                x["layer"] = int(x["layer"])
                x.setdefault("kind", "generic")
                if x["kind"] not in LAYER_TYPES:
                    raise SpecFileError(f"case {d['name']}: unknown layer kind {x['kind']!r}")
            return cls(name=d["name"], description=d.get("description", ""), layers=layers,
                       w={int(j): str(t) for j, t in d["w"].items()},
                       bindings={k: str(v) for k, v in d.get("bindings", {}).items()},
                       shifts=tuple(int(s) for s in d.get("shifts", [0])),
                       printed_w=({int(j): str(t) for j, t in d["printed_w"].items()}
                                  if "printed_w" in d else None))
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecFileError(f"malformed case entry: {exc}") from exc

    def to_dict(self) -> Dict:
        out = {"name": self.name, "description": self.description,
               "bindings": dict(self.bindings),
               "layers": [dict(x) for x in self.layers],
               "w": {str(j): t for j, t in sorted(self.w.items())},
               "shifts": list(self.shifts)}
        if self.printed_w is not None:
            out["printed_w"] = {str(j): t for j, t in sorted(self.printed_w.items())}
        return out

    @property
    def group(self) -> str:
        return self.name.split(".")[0]

    @property
    def requires_b(self) -> Optional[Scalar]:
        """The value b is pinned to, if any."""
        return parse_scalar(self.bindings["b"]) if "b" in self.bindings else None

    def with_b(self, b) -> Optional["WFormula"]:
        """The case specialized to a concrete b, or None if it needs another b."""
        b = as_scalar(b)
        pinned = self.requires_b
        if pinned is not None:
            return self if (pinned - b).is_zero() else None
        out = WFormula(self.name, self.description, self.layers, self.w,
                       dict(self.bindings), self.shifts, self.printed_w)
        out.bindings["b"] = str(b)
        return out

    def printed(self) -> Optional["WFormula"]:
        """The case with its formula exactly as first printed (None if no such variant)."""
        if self.printed_w is None:
            return None
        return WFormula(self.name + ":printed", self.description, self.layers,
                        dict(self.printed_w), dict(self.bindings), self.shifts)

    # -- construction -----------------------------------------------------------

    def _params(self) -> Dict[str, Scalar]:
        return {k: parse_scalar(v) for k, v in self.bindings.items()}

    def layer_system(self, shift: int = 0) -> LayerSystem:
        p = self._params()
        env = dict(p)
        mu, special = {}, {}
        for x in self.layers:
            j = x["layer"] + shift
            if x["kind"] == "generic":
                mu[j] = parse_scalar(x.get("mu", "mu"), env)
            else:
                special[j] = x["kind"]
        js = [x["layer"] + shift for x in self.layers]
        gamma = p.get("gamma")
        if self.bindings.get("gamma") == "inf":
            gamma = INFINITY
        return LayerSystem(a=p.get("a"), b=p.get("b"), lam=p.get("lam"), mu=mu,
                           special=special, gamma=gamma, layers=range(min(js), max(js) + 1))

    def w_function(self, shift: int = 0):
        """Callable WUnknown -> Scalar; unknowns on layers without a formula are 0."""
        env = self._params()
        texts = {j + shift: t for j, t in self.w.items()}
        cache: Dict[WUnknown, Scalar] = {}

        def w(u: WUnknown) -> Scalar:
            val = cache.get(u)
            if val is None:
                text = texts.get(u.layer)
                if text is None:
                    val = ZERO
                else:
                    local = dict(env)
                    local.update(j=u.layer, k=u.k, m=u.m)
                    val = parse_scalar(text, local)
                cache[u] = val
            return val
        return w


def _window(K: int, M: int):
    ks = range(-K, K + 1)
    ms = range(-M, M + 1)
    return ks, ms


def verify_w_formula(case: WFormula, K: int = DEFAULT_K, M: int = DEFAULT_M,
                     second: bool = True) -> VerificationReport:
    """Substitute the case's w into the constraints on the (K, M) window.

    Every layer with a formula gets the first-order constraint for all
    |i|, |k| <= K, |m| <= M and (if ``second``) the second-order constraint
    for all |i1|, |i2|, |k| <= K, |m| <= M.  Cases with formulas on two
    consecutive layers are also checked against [W_k1, W_k2] = 0.
    """
    report = VerificationReport(name=case.name, window={"K": K, "M": M})
    ks, ms = _window(K, M)
    for shift in case.shifts:
        system = case.layer_system(shift)
        w = case.w_function(shift)
        for j0 in sorted(case.w):
            j = j0 + shift
            for k in ks:
                for m in ms:
                    _check_boundary(report, system, w, j, k, m, shift)
            for i in ks:
                for k in ks:
                    for m in ms:
                        con = first_order(system, j, i, k, m)
                        _record(report, "first", (shift, j, i, k, m), con, w)
            if second:
                for i1 in ks:
                    for i2 in ks:
                        for k in ks:
                            for m in ms:
                                con = second_order(system, j, i1, i2, k, m)
                                _record(report, "second", (shift, j, i1, i2, k, m), con, w)
            if j0 + 1 in case.w:
                for k1 in ks:
                    for k2 in ks:
                        if k1 >= k2:
                            continue
                        for m in ms:
                            report.add("wsq", (shift, j, k1, k2, m),
                                       w_square(system, j, k1, k2, m, w))
    return report


def _record(report, relation, indices, con, w) -> None:
    if not con.coeffs and con.const.is_zero():
        report.skipped += 1
        return
    try:
        value = con.evaluate(w)
    except ZeroDenominator:
        # the formula is singular at this label (e.g. lam + ja + m = 0 with
        # concrete lam); its stated domain excludes such points
        report.skipped += 1
        return
    report.add(relation, indices, value)


def _check_boundary(report, system: LayerSystem, w, j, k, m, shift) -> None:
    """A formula must vanish where the source or target label is absent."""
    if system.has_unknown(j, k, m):
        return
    if system.layers is not None and j + system.step not in system.layers:
        return
    try:
        value = w(WUnknown(j, k, m))
    except ZeroDenominator:
        report.skipped += 1
        return
    report.add("boundary", (shift, j, k, m), value)


# -- the shipped table -----------------------------------------------------------

def load_cases(path=None) -> List[WFormula]:
    if path is None:
        text = resources.files("wabrep").joinpath("data/cases.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"case table is not valid JSON: {exc}") from exc
    if data.get("schema") != 1:
        raise SpecFileError(f"unsupported case-table schema {data.get('schema')!r}")
    return [WFormula.from_dict(d) for d in data["cases"]]


def dump_cases(cases: Iterable[WFormula]) -> str:
    return json.dumps({"schema": 1, "cases": [c.to_dict() for c in cases]}, indent=2) + "\n"


def case_by_name(name: str, cases: Optional[List[WFormula]] = None) -> WFormula:
    for c in cases or load_cases():
        if c.name == name:
            return c
    raise BadParams(f"unknown case {name!r}")


def select_cases(cases: List[WFormula], b=None) -> List[WFormula]:
    """Cases applicable at a concrete b (specialized), or all cases if b is None."""
    if b is None:
        return list(cases)
    out = []
    for c in cases:
        s = c.with_b(b)
        if s is not None:
            out.append(s)
    return out


def verify_all(cases: Optional[List[WFormula]] = None, K: int = DEFAULT_K, M: int = DEFAULT_M,
               second: bool = True) -> List[VerificationReport]:
    return [verify_w_formula(c, K, M, second) for c in (cases or load_cases())]


# -- negative control ------------------------------------------------------------

def stacked_general_case(b=None) -> WFormula:
    """The mu-step-(b+1) formula placed on two consecutive layers.

    [W_k1, W_k2] = 0 forces b = 0 here, so this fails the W-square check for
    any other b.
    """
    layers = [{"layer": 0, "kind": "generic", "mu": "mu"},
              {"layer": 1, "kind": "generic", "mu": "mu + b + 1"},
              {"layer": 2, "kind": "generic", "mu": "mu + 2*b + 2"}]
    formula = "b*(lam + j*a + m) - (a + k)*mu_j"
    w = {0: formula.replace("mu_j", "mu"), 1: formula.replace("mu_j", "(mu + b + 1)")}
    case = WFormula("stacked_control", "step-(b+1) formula on two consecutive layers",
                    layers, w, {}, (0,))
    return case if b is None else case.with_b(b)
