"""The Lie algebra W(a, b) with basis L_i, W_i (i in Z).

    [L_i, L_j] = (j - i) L_{i+j}
    [L_i, W_j] = (a + j + b i) W_{i+j}
    [W_i, W_j] = 0

``a`` and ``b`` are Scalars, symbolic by default so a single check covers
every specialization.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, NamedTuple, Tuple

from .report import VerificationReport
from .scalar import ONE, ZERO, Scalar, as_scalar, sym


class Generator(NamedTuple):
    kind: str  # "L" or "W"
    index: int

    def __str__(self) -> str:
        return f"{self.kind}_{self.index}"


def L(k: int) -> Generator:
    return Generator("L", k)


def W(k: int) -> Generator:
    return Generator("W", k)


@dataclass(frozen=True)
class AlgebraParams:
    a: Scalar = field(default_factory=lambda: sym("a"))
    b: Scalar = field(default_factory=lambda: sym("b"))

    def __post_init__(self):
        object.__setattr__(self, "a", as_scalar(self.a))
        object.__setattr__(self, "b", as_scalar(self.b))

    def __eq__(self, other):
        if not isinstance(other, AlgebraParams):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    __hash__ = None


# A bracket rule maps a pair of generators to a list of (coefficient, generator).
BracketRule = Callable[[AlgebraParams, Generator, Generator], List[Tuple[Scalar, Generator]]]


def bracket_generators(params: AlgebraParams, x: Generator, y: Generator
                       ) -> List[Tuple[Scalar, Generator]]:
    i, j = x.index, y.index
    if x.kind == "L" and y.kind == "L":
        c = j - i
        return [(as_scalar(c), Generator("L", i + j))] if c else []
    if x.kind == "L" and y.kind == "W":
        c = params.a + j + params.b * i
        return [(c, Generator("W", i + j))] if c else []
    if x.kind == "W" and y.kind == "L":
        c = params.a + i + params.b * j
        return [(-c, Generator("W", i + j))] if c else []
    return []


class AlgebraElement:
    """Finite linear combination of generators with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: Dict[Generator, Scalar] = {}
        if isinstance(terms, Generator):
            terms = {terms: ONE}
        for g, c in (terms or {}).items():
            c = as_scalar(c)
            if not c.is_zero():
                clean[g] = c
        self.terms = clean

    @classmethod
    def of(cls, *pairs) -> "AlgebraElement":
        """AlgebraElement.of((2, L(1)), (a, W(0))) or AlgebraElement.of(L(1))."""
        out = cls()
        for p in pairs:
            if isinstance(p, Generator):
                out = out + cls({p: ONE})
            else:
                c, g = p
                out = out + cls({g: c})
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        terms = dict(self.terms)
        for g, c in other.terms.items():
            terms[g] = terms.get(g, ZERO) + c
        return AlgebraElement(terms)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({g: -c for g, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        c = as_scalar(c)
        return AlgebraElement({g: c * v for g, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def is_w_only(self) -> bool:
        return all(g.kind == "W" for g in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for g in sorted(self.terms):
            parts.append(f"({self.terms[g]})*{g}")
        return " + ".join(parts)

    __repr__ = __str__


def bracket(params: AlgebraParams, x, y, rule: BracketRule = bracket_generators
            ) -> AlgebraElement:
    """Bilinear bracket of two algebra elements (generators are promoted)."""
    x = AlgebraElement(x) if isinstance(x, Generator) else x
    y = AlgebraElement(y) if isinstance(y, Generator) else y
    out: Dict[Generator, Scalar] = {}
    for g, cg in x.terms.items():
        for h, ch in y.terms.items():
            for c, z in rule(params, g, h):
                out[z] = out.get(z, ZERO) + cg * ch * c
    return AlgebraElement(out)


def window_generators(K: int) -> List[Generator]:
    return [Generator(kind, i) for kind in ("L", "W") for i in range(-K, K + 1)]


def check_jacobi(params: AlgebraParams, K: int = 4, rule: BracketRule = bracket_generators
                 ) -> VerificationReport:
    """Jacobi identity on all generator triples with indices in [-K, K]."""
    if K < 1:
        raise ValueError("window K must be at least 1")
    report = VerificationReport(name="jacobi", window={"K": K})
    gens = window_generators(K)
    br = lambda u, v: bracket(params, u, v, rule)
    for x, y, z in itertools.combinations_with_replacement(gens, 3):
        total = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))
        if total.is_zero():
            report.checked += 1
            continue
        for g in sorted(total.terms):
            report.add("jacobi", (str(x), str(y), str(z), str(g)), total.terms[g])
    return report


def check_antisymmetry(params: AlgebraParams, K: int = 4,
                       rule: BracketRule = bracket_generators) -> VerificationReport:
    report = VerificationReport(name="antisymmetry", window={"K": K})
    gens = window_generators(K)
    for x, y in itertools.product(gens, repeat=2):
        total = bracket(params, x, y, rule) + bracket(params, y, x, rule)
        report.checked += 1
        for g in sorted(total.terms):
            report.fail("antisym", (str(x), str(y), str(g)), total.terms[g])
    return report


def generators_in(elements: Iterable[AlgebraElement]) -> List[Generator]:
    return sorted({g for e in elements for g in e.terms})
