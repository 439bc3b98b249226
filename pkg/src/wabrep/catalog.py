"""Module families of the intermediate series over W(a, b).

Every family is an explicit action rule on basis vectors v_m^j (layer j,
offset m).  Coefficients are transcribed case by case from the family's
definition, without simplification; a generator maps a basis vector to at
most one basis vector.

Gamma may be the point at infinity.  In that case a coefficient affine in
gamma, ``slope*gamma + const``, is replaced by ``slope``; for the factor
``k + gamma`` this reads it as 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, NamedTuple, Optional, Tuple

from .algebra import AlgebraElement, AlgebraParams, Generator
from .errors import BadParams, ZeroDenominator
from .scalar import INFINITY, ONE, ZERO, Scalar, as_scalar, sym


class BasisIndex(NamedTuple):
    layer: int
    offset: int

    def __str__(self) -> str:
        return f"v[{self.layer},{self.offset}]"


def v(layer: int, offset: int) -> BasisIndex:
    return BasisIndex(layer, offset)


class LayerWindow(NamedTuple):
    """Inclusive layer range; None stands for -inf (lo) or +inf (hi)."""

    lo: Optional[int]
    hi: Optional[int]

    def contains(self, j: int) -> bool:
        return (self.lo is None or j >= self.lo) and (self.hi is None or j <= self.hi)

    def is_finite(self) -> bool:
        return self.lo is not None and self.hi is not None

    def clipped(self, radius: int) -> range:
        lo = -radius if self.lo is None else self.lo
        hi = radius if self.hi is None else self.hi
        return range(lo, hi + 1)

    def within(self, other: "LayerWindow") -> bool:
        lo_ok = other.lo is None or (self.lo is not None and self.lo >= other.lo)
        hi_ok = other.hi is None or (self.hi is not None and self.hi <= other.hi)
        return lo_ok and hi_ok

    def __str__(self) -> str:
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"[{lo},{hi}]"


ALL_LAYERS = LayerWindow(None, None)


class ModuleVector:
    """Sparse combination of basis vectors with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: Dict[BasisIndex, Scalar] = {}
        for idx, c in (terms or {}).items():
            c = as_scalar(c)
            if not c.is_zero():
                clean[BasisIndex(*idx)] = c
        self.terms = clean

    @classmethod
    def basis(cls, idx: BasisIndex) -> "ModuleVector":
        return cls({idx: ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        terms = dict(self.terms)
        for idx, c in other.terms.items():
            terms[idx] = terms.get(idx, ZERO) + c
        return ModuleVector(terms)

    def __neg__(self) -> "ModuleVector":
        return ModuleVector({i: -c for i, c in self.terms.items()})

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + (-other)

    def scale(self, c) -> "ModuleVector":
        c = as_scalar(c)
        if c.is_zero():
            return ModuleVector()
        return ModuleVector({i: c * x for i, x in self.terms.items()})

    def coefficient(self, idx: BasisIndex) -> Scalar:
        return self.terms.get(idx, ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __iter__(self) -> Iterator[Tuple[BasisIndex, Scalar]]:
        return iter(sorted(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{i}" for i, c in self)

    __repr__ = __str__


Terms = List[Tuple[BasisIndex, Scalar]]


class ModuleLike:
    """Shared surface of anything the verifier can act with.

    Subclasses provide ``algebra``, ``layers``, ``name`` and
    ``raw_terms(g, v)``, the unclipped image of a basis vector.
    """

    algebra: AlgebraParams
    layers: LayerWindow
    name: str = "module"

    def raw_terms(self, g: Generator, idx: BasisIndex) -> Terms:
        raise NotImplementedError

    def offset_drift(self) -> int:
        """Bound on |target offset - source offset - generator index|."""
        return 0

    def contains(self, idx: BasisIndex) -> bool:
        return self.layers.contains(idx.layer)

    def act(self, g: Generator, idx) -> ModuleVector:
        idx = BasisIndex(*idx)
        if not self.contains(idx):
            raise ValueError(f"{idx} lies outside the layer window {self.layers}")
        terms: Dict[BasisIndex, Scalar] = {}
        for tgt, c in self.raw_terms(g, idx):
            if self.contains(tgt):
                terms[tgt] = terms.get(tgt, ZERO) + c
        return ModuleVector(terms)

    def act_element(self, x, vec) -> ModuleVector:
        if isinstance(x, Generator):
            x = AlgebraElement(x)
        if isinstance(vec, BasisIndex):
            vec = ModuleVector.basis(vec)
        out = ModuleVector()
        for g, cg in x.terms.items():
            for idx, cv in vec.terms.items():
                out = out + self.act(g, idx).scale(cg * cv)
        return out

    def weight_of(self, idx) -> Scalar:
        idx = BasisIndex(*idx)
        image = self.act(Generator("L", 0), idx)
        extra = [t for t in image.terms if t != idx]
        if extra:
            raise ValueError(f"L_0 does not act diagonally on {idx}")
        return image.coefficient(idx)


# -- family definitions -----------------------------------------------------

class FamilyInfo(NamedTuple):
    tag: str
    params: Tuple[str, ...]          # which of lam, mu, gamma, c the family reads
    b_value: Optional[int]           # forced value of b, if any
    layers: LayerWindow              # natural layer range
    divides_by_a_plus_k: bool
    rule: Callable


FAMILIES: Dict[str, FamilyInfo] = {}

ALIASES = {
    "VirA′": "VirA'", "VirA'(λ,μ)": "VirA'", "VirA(γ)": "VirA", "VirB(γ)": "VirB",
    "Ã": "A~", "B̃": "B~", "Ã1": "A1~", "Ã2": "A2~", "Ã3": "A3~",
    "B̃1": "B1~", "B̃2": "B2~", "B̃3": "B3~", "B̂": "B^", "Â2": "A2^", "B̂2": "B2^",
    "Abar_p": "Abar_periodic", "Abar_int": "Abar_integer",
    "Ābar_periodic": "Abar_periodic", "Ābar_integer": "Abar_integer",
}


def canonical_family(tag: str) -> str:
    tag = ALIASES.get(tag, tag)
    if tag not in FAMILIES:
        raise BadParams(f"unknown module family {tag!r}")
    return tag


def _family(tag, params, layers, b_value=None, divides=False):
    def deco(fn):
        FAMILIES[tag] = FamilyInfo(tag, params, b_value, LayerWindow(*layers), divides, fn)
        return fn
    return deco


def _delta(x: int) -> int:
    return 1 if x == 0 else 0


# Each rule takes (spec, kind, k, j, m) and returns the unclipped terms.

def _vir_a_gamma(s, k, m) -> Terms:
    # L_k on v_m for A'(gamma)
    if m == 0:
        return [(BasisIndex(0, k), k * s.gamma_affine(ONE, as_scalar(k)))]
    return [(BasisIndex(0, m + k), as_scalar(m + k))]


def _vir_b_gamma(s, k, m) -> Terms:
    # L_k on v_m for B'(gamma)
    if m == -k:
        return [(BasisIndex(0, 0), -k * s.gamma_affine(ONE, as_scalar(k)))]
    return [(BasisIndex(0, m + k), as_scalar(m))]


def _inv_a_plus(s, k) -> Scalar:
    return ONE / s.a_plus(k)


@_family("VirA'", ("lam", "mu"), (0, 0))
def _rule_vir_a_prime(s, kind, k, j, m):
    if kind == "L":
        return [(BasisIndex(0, m + k), s.lam + m + s.mu * k)]
    return []


@_family("VirA", ("gamma",), (0, 0))
def _rule_vir_a(s, kind, k, j, m):
    return _vir_a_gamma(s, k, m) if kind == "L" else []


@_family("VirB", ("gamma",), (0, 0))
def _rule_vir_b(s, kind, k, j, m):
    return _vir_b_gamma(s, k, m) if kind == "L" else []


@_family("A", ("lam", "mu"), (None, None))
def _rule_a(s, kind, k, j, m):
    a, b = s.algebra.a, s.algebra.b
    if kind == "L":
        return [(BasisIndex(j, m + k), s.lam + a * j + m + (s.mu + b * j) * k)]
    return [(BasisIndex(j + 1, m + k), ONE)]


@_family("B", ("lam", "mu"), (0, 1))
def _rule_b(s, kind, k, j, m):
    a, b = s.algebra.a, s.algebra.b
    if j == 0:
        if kind == "L":
            return [(BasisIndex(0, m + k), s.lam + m + s.mu * k)]
        return [(BasisIndex(1, m + k), b * (s.lam + m) - s.mu * (a + k))]
    if kind == "L":
        return [(BasisIndex(1, m + k), s.lam + a + m + (s.mu + b + 1) * k)]
    return []


@_family("A1", ("gamma",), (None, None))
def _rule_a1(s, kind, k, j, m):
    a, b = s.algebra.a, s.algebra.b
    if kind == "L":
        if j == 0:
            return _vir_a_gamma(s, k, m)
        return [(BasisIndex(j, m + k), a * j + m + b * (j * k))]
    if j == -1:
        return [(BasisIndex(0, m + k), as_scalar(m + k))]
    if j == 0:
        return [(BasisIndex(1, m + k), as_scalar(_delta(m)))]
    return [(BasisIndex(j + 1, m + k), ONE)]


@_family("A2", ("gamma",), (-1, None))
def _rule_a2(s, kind, k, j, m):
    a, b = s.algebra.a, s.algebra.b
    if j == -1:
        if kind == "L":
            return [(BasisIndex(-1, m + k), -a + m - (1 + b) * k)]
        return [(BasisIndex(0, m + k), (m + k) * (a + (1 + b) * k + b * m))]
    if j == 0:
        if kind == "L":
            return _vir_a_gamma(s, k, m)
        return [(BasisIndex(1, m + k), as_scalar(_delta(m)))]
    if kind == "L":
        return [(BasisIndex(j, m + k), a * j + m + b * (j * k))]
    return [(BasisIndex(j + 1, m + k), ONE)]


@_family("A3", ("gamma",), (0, 1))
def _rule_a3(s, kind, k, j, m):
    a, b = s.algebra.a, s.algebra.b
    if j == 0:
        if kind == "L":
            return _vir_a_gamma(s, k, m)
        if m != 0:
            return [(BasisIndex(1, m + k), b)]
        return [(BasisIndex(1, k), s.gamma_affine(b, -a - k))]
    if kind == "L":
        return [(BasisIndex(1, m + k), a + m + (b + 1) * k)]
    return []


@_family("B1", ("gamma",), (None, None))
def _rule_b1(s, kind, k, j, m):
    a, b = s.algebra.a, s.algebra.b
    if kind == "L":
        if j == 0:
            return _vir_b_gamma(s, k, m)
        return [(BasisIndex(j, m + k), a * j + m + (b * j + 1) * k)]
    if j == -1:
        return [(BasisIndex(0, m + k), as_scalar(_delta(k + m)))]
    if j == 0:
        return [(BasisIndex(1, m + k), as_scalar(m))]
    return [(BasisIndex(j + 1, m + k), ONE)]


@_family("B2", ("gamma",), (None, 1))
def _rule_b2(s, kind, k, j, m):
    a, b = s.algebra.a, s.algebra.b
    if kind == "L":
        if j == 0:
            return _vir_b_gamma(s, k, m)
        if j < 0:
            return [(BasisIndex(j, m + k), a * j + m + (b * j + 1) * k)]
        return [(BasisIndex(1, m + k), a + m + (b + 2) * k)]
    if j < -1:
        return [(BasisIndex(j + 1, m + k), ONE)]
    if j == -1:
        return [(BasisIndex(0, m + k), as_scalar(_delta(m + k)))]
    if j == 0:
        return [(BasisIndex(1, m + k), m * (a + k - b * m))]
    return []


@_family("B3", ("gamma",), (-1, 0))
def _rule_b3(s, kind, k, j, m):
    a, b = s.algebra.a, s.algebra.b
    if j == 0:
        return _vir_b_gamma(s, k, m) if kind == "L" else []
    if kind == "L":
        return [(BasisIndex(-1, m + k), -a + m - b * k)]
    if m != -k:
        # The printed rule has coefficient 1 here, which breaks [L_i, W_k]
        # at m = -i-k unless b = 1; b matches the mechanical dual of A3.
        return [(BasisIndex(0, k + m), ONE if s.variant == "printed" else b)]
    return [(BasisIndex(0, 0), s.gamma_affine(b, -a - k))]


@_family("A~", ("lam", "mu"), (None, None), b_value=1, divides=True)
def _rule_a_tilde(s, kind, k, j, m):
    a = s.algebra.a
    if kind == "L":
        return [(BasisIndex(j, m + k), s.lam + a * j + m + s.mu * k)]
    return [(BasisIndex(j + 1, m + k), _inv_a_plus(s, k))]


@_family("A1~", ("gamma",), (None, None), b_value=1, divides=True)
def _rule_a1_tilde(s, kind, k, j, m):
    a = s.algebra.a
    if kind == "L":
        if j == 0:
            return _vir_a_gamma(s, k, m)
        return [(BasisIndex(j, m + k), a * j + m)]
    if j == -1:
        return [(BasisIndex(0, m + k), (m + k) * _inv_a_plus(s, k))]
    if j == 0:
        return [(BasisIndex(1, m + k), _delta(m) * _inv_a_plus(s, k))]
    return [(BasisIndex(j + 1, m + k), _inv_a_plus(s, k))]


@_family("A3~", ("gamma",), (0, 1), b_value=1, divides=True)
def _rule_a3_tilde(s, kind, k, j, m):
    a = s.algebra.a
    if j == 0:
        if kind == "L":
            return _vir_a_gamma(s, k, m)
        if m != 0:
            return []
        return [(BasisIndex(1, k), ONE)]
    if kind == "L":
        return [(BasisIndex(1, m + k), a + m + k)]
    return []


@_family("B1~", ("gamma",), (None, None), b_value=1, divides=True)
def _rule_b1_tilde(s, kind, k, j, m):
    a = s.algebra.a
    if kind == "L":
        if j == 0:
            return _vir_b_gamma(s, k, m)
        return [(BasisIndex(j, m + k), a * j + m + k)]
    if j == -1:
        return [(BasisIndex(0, m + k), _delta(m + k) * _inv_a_plus(s, k))]
    if j == 0:
        return [(BasisIndex(1, m + k), m * _inv_a_plus(s, k))]
    return [(BasisIndex(j + 1, m + k), _inv_a_plus(s, k))]


@_family("B3~", ("gamma",), (-1, 0), b_value=1, divides=True)
def _rule_b3_tilde(s, kind, k, j, m):
    a = s.algebra.a
    if j == 0:
        return _vir_b_gamma(s, k, m) if kind == "L" else []
    if kind == "L":
        return [(BasisIndex(-1, m + k), -a + m)]
    if m != -k:
        # Twist of the corrected B3 at b = 0: zero off the special vector.
        if s.variant == "printed":
            return [(BasisIndex(0, k + m), _inv_a_plus(s, k))]
        return []
    return [(BasisIndex(0, 0), -ONE)]


@_family("B^", ("lam", "mu"), (0, 1), b_value=0)
def _rule_b_hat(s, kind, k, j, m):
    a = s.algebra.a
    if j == 0:
        if kind == "L":
            return [(BasisIndex(0, k + m), s.lam + m)]
        return [(BasisIndex(1, m + k), (a * m - s.lam * k) * s.mu + a + k)]
    if kind == "L":
        return [(BasisIndex(1, k + m), s.lam + a + m + k)]
    return []


@_family("A2^", ("gamma",), (None, None), b_value=0)
def _rule_a2_hat(s, kind, k, j, m):
    a = s.algebra.a
    if kind == "L":
        if j == 0:
            return _vir_a_gamma(s, k, m)
        if j > 0:
            return [(BasisIndex(j, m + k), a * j + m)]
        return [(BasisIndex(j, m + k), a * j + m + j * k)]
    if j == 0:
        return [(BasisIndex(1, m + k), as_scalar(_delta(m)))]
    if j == -1:
        return [(BasisIndex(0, m + k), (m + k) * s.a_plus(k))]
    if j > 0:
        return [(BasisIndex(j + 1, m + k), ONE)]
    return [(BasisIndex(j + 1, m + k), s.a_plus(k))]


@_family("B2^", ("gamma",), (None, None), b_value=0)
def _rule_b2_hat(s, kind, k, j, m):
    a = s.algebra.a
    if kind == "L":
        if j == 0:
            return _vir_b_gamma(s, k, m)
        if j < 0:
            return [(BasisIndex(j, m + k), a * j + m + k)]
        return [(BasisIndex(j, m + k), a * j + m + (j + 1) * k)]
    if j == 0:
        return [(BasisIndex(1, m + k), m * s.a_plus(k))]
    if j == -1:
        return [(BasisIndex(0, m + k), as_scalar(_delta(m + k)))]
    if j < -1:
        return [(BasisIndex(j + 1, m + k), ONE)]
    # Layer 1 has no printed W-rule; it follows the j > 1 rule.
    return [(BasisIndex(j + 1, m + k), s.a_plus(k))]


@_family("B~", ("lam", "mu"), (0, 1), b_value=1, divides=True)
def _rule_b_tilde(s, kind, k, j, m):
    a = s.algebra.a
    if j == 0:
        if kind == "L":
            return [(BasisIndex(0, k + m), s.lam + m)]
        return [(BasisIndex(1, m + k), ((a * m - s.lam * k) * s.mu + a + k) * _inv_a_plus(s, k))]
    if kind == "L":
        return [(BasisIndex(1, k + m), s.lam + a + m + k)]
    return []


@_family("A2~", ("gamma",), (None, None), b_value=1, divides=True)
def _rule_a2_tilde(s, kind, k, j, m):
    a = s.algebra.a
    if kind == "L":
        if j == 0:
            return _vir_a_gamma(s, k, m)
        if j > 0:
            return [(BasisIndex(j, m + k), a * j + m)]
        return [(BasisIndex(j, m + k), a * j + m + j * k)]
    if j == 0:
        return [(BasisIndex(1, m + k), _delta(m) * _inv_a_plus(s, k))]
    if j == -1:
        return [(BasisIndex(0, m + k), as_scalar(m + k))]
    if j > 0:
        return [(BasisIndex(j + 1, m + k), _inv_a_plus(s, k))]
    return [(BasisIndex(j + 1, m + k), ONE)]


@_family("B2~", ("gamma",), (None, None), b_value=1, divides=True)
def _rule_b2_tilde(s, kind, k, j, m):
    a = s.algebra.a
    if kind == "L":
        if j == 0:
            return _vir_b_gamma(s, k, m)
        if j < 0:
            return [(BasisIndex(j, m + k), a * j + m + k)]
        return [(BasisIndex(j, m + k), a * j + m + (j + 1) * k)]
    if j == 0:
        return [(BasisIndex(1, m + k), as_scalar(m))]
    if j == -1:
        return [(BasisIndex(0, m + k), _delta(m + k) * _inv_a_plus(s, k))]
    if j < -1:
        return [(BasisIndex(j + 1, m + k), _inv_a_plus(s, k))]
    # Layer 1 has no printed W-rule; it follows the j > 1 rule.
    return [(BasisIndex(j + 1, m + k), ONE)]


@_family("Abar_periodic", ("lam", "mu"), (0, None), b_value=1, divides=True)
def _rule_abar_periodic(s, kind, k, j, m):
    a = s.algebra.a
    if kind == "L":
        return [(BasisIndex(j, m + k), s.lam + a * j + m + s.mu * k)]
    if j < s.p - 1:
        return [(BasisIndex(j + 1, m + k), _inv_a_plus(s, k))]
    shift = s.p * s.algebra.a.constant_value()
    return [(BasisIndex(0, k + m + int(shift)), _inv_a_plus(s, k))]


@_family("Abar_integer", ("lam", "mu", "c"), (0, 0), b_value=1)
def _rule_abar_integer(s, kind, k, j, m):
    if kind == "L":
        return [(BasisIndex(0, m + k), s.lam + m + s.mu * k)]
    a = int(s.algebra.a.constant_value())
    if k + a != 0:
        return []
    return [(BasisIndex(0, m + k + a), s.c)]


FAMILY_ORDER = (
    "VirA'", "VirA", "VirB",
    "A", "B", "A1", "A2", "A3", "B1", "B2", "B3",
    "A~", "B~", "A1~", "A2~", "A3~", "B1~", "B2~", "B3~",
    "B^", "A2^", "B2^",
    "Abar_periodic", "Abar_integer",
)
assert set(FAMILY_ORDER) == set(FAMILIES)

# Families whose literal published W-rule is kept as a selectable variant.
PRINTED_VARIANTS = ("B3", "B3~")

# Families obtained from W(a,0)-modules by rescaling W_k by 1/(a+k).
TWIST_PAIRS = (
    ("A", "A~"), ("B^", "B~"), ("A1", "A1~"), ("A2^", "A2~"),
    ("A3", "A3~"), ("B1", "B1~"), ("B2^", "B2~"), ("B3", "B3~"),
)


# -- module specs -------------------------------------------------------------

def _default_symbol(name: str) -> Scalar:
    return sym(name)


@dataclass(eq=False)
class ModuleSpec(ModuleLike):
    family: str
    algebra: AlgebraParams
    lam: Scalar = field(default_factory=lambda: sym("lam"))
    mu: Scalar = field(default_factory=lambda: sym("mu"))
    gamma: object = field(default_factory=lambda: sym("gamma"))
    c: Scalar = field(default_factory=lambda: sym("c"))
    p: Optional[int] = None
    layers: LayerWindow = ALL_LAYERS
    name: str = ""
    variant: str = ""

    def __post_init__(self):
        if not self.name:
            self.name = self.family

    @property
    def info(self) -> FamilyInfo:
        return FAMILIES[self.family]

    def gamma_affine(self, slope: Scalar, const: Scalar) -> Scalar:
        """slope*gamma + const, or slope when gamma is infinite."""
        if self.gamma is INFINITY:
            return slope
        return slope * self.gamma + const

    def a_plus(self, k: int) -> Scalar:
        val = self.algebra.a + k
        if val.is_zero():
            raise ZeroDenominator(f"a + {k} vanishes")
        return val

    def offset_drift(self) -> int:
        if self.family == "Abar_periodic":
            return abs(int(self.p * self.algebra.a.constant_value()))
        if self.family == "Abar_integer":
            return abs(int(self.algebra.a.constant_value()))
        return 0

    def raw_terms(self, g: Generator, idx: BasisIndex) -> Terms:
        out = []
        for tgt, c in self.info.rule(self, g.kind, g.index, idx.layer, idx.offset):
            c = as_scalar(c)
            if not c.is_zero():
                out.append((tgt, c))
        return out

    def with_params(self, **changes) -> "ModuleSpec":
        return replace(self, **changes)

    def describe(self) -> str:
        parts = [f"a={self.algebra.a}", f"b={self.algebra.b}"]
        for name in self.info.params:
            parts.append(f"{name}={getattr(self, name)}")
        if self.p is not None:
            parts.append(f"p={self.p}")
        return f"{self.family}({', '.join(parts)}) layers {self.layers}"


def _concrete(x: Scalar) -> Optional[Fraction]:
    return x.constant_value()


def build_module(family: str, *, a=None, b=None, lam=None, mu=None, gamma=None, c=None,
                 p: Optional[int] = None, layers=None, name: str = "",
                 variant: str = "") -> ModuleSpec:
    """Validate parameters for a catalog family and return its ModuleSpec.

    Missing parameters default to indeterminates named after them; ``b``
    defaults to the value a family forces, if any.  ``variant="printed"``
    selects the literal published W-rule for B3 and B3~, which is not a
    module (kept as a reproducible counterexample).
    """
    tag = canonical_family(family)
    if variant not in ("", "printed") or (variant and tag not in PRINTED_VARIANTS):
        raise BadParams(f"family {tag} has no variant {variant!r}")
    info = FAMILIES[tag]
    a_s = sym("a") if a is None else as_scalar(a)
    if b is None:
        b_s = sym("b") if info.b_value is None else as_scalar(info.b_value)
    else:
        b_s = as_scalar(b)
    if info.b_value is not None and not (b_s - info.b_value).is_zero():
        raise BadParams(f"family {tag} requires b = {info.b_value}, got b = {b_s}")

    a_val = _concrete(a_s)
    if info.divides_by_a_plus_k and a_val is not None and a_val.denominator == 1:
        raise BadParams(f"family {tag} needs a not in Z (a + k vanishes at k = {-a_val})")

    if tag == "Abar_periodic":
        if a_val is None:
            raise BadParams("Abar_periodic needs a concrete a = q/p")
        if a_val.denominator < 2:
            raise BadParams("Abar_periodic needs a non-integer a = q/p")
        if p is None:
            p = a_val.denominator
        if p != a_val.denominator:
            raise BadParams(f"a = {a_val} is not q/{p} with q, {p} coprime")
    elif p is not None:
        raise BadParams(f"family {tag} takes no period p")
    if tag == "Abar_integer":
        if a_val is None or a_val.denominator != 1:
            raise BadParams("Abar_integer needs a concrete integer a")

    if gamma is None:
        gamma_v = sym("gamma")
    elif gamma is INFINITY or (isinstance(gamma, str) and gamma == "inf"):
        gamma_v = INFINITY
    else:
        gamma_v = as_scalar(gamma)

    natural = info.layers
    if tag == "Abar_periodic":
        natural = LayerWindow(0, p - 1)
    if layers is None:
        window = natural
    else:
        window = LayerWindow(*layers)
        if window.lo is not None and window.hi is not None and window.lo > window.hi:
            raise BadParams(f"empty layer window {window}")
        if not window.within(natural):
            raise BadParams(f"layer window {window} exceeds the range {natural} of {tag}")
        if tag == "Abar_periodic" and window != natural:
            raise BadParams("Abar_periodic uses all p layers")

    return ModuleSpec(
        family=tag,
        algebra=AlgebraParams(a_s, b_s),
        lam=sym("lam") if lam is None else as_scalar(lam),
        mu=sym("mu") if mu is None else as_scalar(mu),
        gamma=gamma_v,
        c=sym("c") if c is None else as_scalar(c),
        p=p,
        layers=window,
        name=name or (f"{tag}[{variant}]" if variant else tag),
        variant=variant,
    )


def act(spec: ModuleLike, g: Generator, idx) -> ModuleVector:
    return spec.act(g, idx)


def act_element(spec: ModuleLike, x, vec) -> ModuleVector:
    return spec.act_element(x, vec)


def weight_of(spec: ModuleLike, idx) -> Scalar:
    return spec.weight_of(idx)


def normalize_integer_a(spec: ModuleSpec) -> ModuleSpec:
    """Abar_integer with a = 0, via the index shift W_k -> W_{k+a}."""
    if spec.family != "Abar_integer":
        raise BadParams("only Abar_integer has an integer-a normalization")
    return replace(spec, algebra=AlgebraParams(ZERO, spec.algebra.b))


def default_catalog() -> List[ModuleSpec]:
    """One symbolic instance of every family (periodic one at a = 1/2)."""
    out = []
    for tag in FAMILY_ORDER:
        if tag == "Abar_periodic":
            out.append(build_module(tag, a=Fraction(1, 2), name="Abar_periodic_p2"))
            out.append(build_module(tag, a=Fraction(1, 3), name="Abar_periodic_p3"))
        elif tag == "Abar_integer":
            out.append(build_module(tag, a=0))
        else:
            out.append(build_module(tag))
    return out
