"""Window checks that a module rule really is a W(a, b)-module.

All identities are checked exactly, with parameters left symbolic where
possible.  A window is (K, M): generator indices |i|, |k| <= K and basis
offsets |m| <= M.  Modules with infinitely many layers are tested on the
layers within ``layer_radius`` of 0.
"""

from __future__ import annotations

import itertools
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .algebra import AlgebraParams, Generator, bracket_generators
from .catalog import (BasisIndex, LayerWindow, ModuleLike, ModuleSpec, ModuleVector,
                      Terms)
from .errors import BadParams, ZeroDenominator
from .report import VerificationReport
from .scalar import ONE, ZERO, Scalar, as_scalar

DEFAULT_LAYER_RADIUS = 3

RELATIONS = (("LL", "L", "L"), ("LW", "L", "W"), ("WW", "W", "W"))


def window_labels(module: ModuleLike, M: int, layer_radius: int = DEFAULT_LAYER_RADIUS
                  ) -> List[BasisIndex]:
    return [BasisIndex(j, m) for j in module.layers.clipped(layer_radius)
            for m in range(-M, M + 1)]


class _ActCache:
    """Memoized basis action; also reports whether a label left the box."""

    def __init__(self, module: ModuleLike, offset_bound: int, layers: range):
        self.module = module
        self.offset_bound = offset_bound
        self.layer_lo, self.layer_hi = layers.start - 2, layers.stop + 1
        self.cache: Dict[Tuple[Generator, BasisIndex], Dict[BasisIndex, Scalar]] = {}

    def inside(self, idx: BasisIndex) -> bool:
        return (abs(idx.offset) <= self.offset_bound
                and self.layer_lo <= idx.layer <= self.layer_hi)

    def __call__(self, g: Generator, idx: BasisIndex) -> Dict[BasisIndex, Scalar]:
        key = (g, idx)
        got = self.cache.get(key)
        if got is None:
            got = self.module.act(g, idx).terms
            self.cache[key] = got
        return got

    def apply(self, g: Generator, vec: Dict[BasisIndex, Scalar]) -> Optional[Dict[BasisIndex, Scalar]]:
        """g acting on a combination; None if a label escapes the box."""
        out: Dict[BasisIndex, Scalar] = {}
        for idx, c in vec.items():
            if not self.inside(idx):
                return None
            for tgt, d in self(g, idx).items():
                out[tgt] = out.get(tgt, ZERO) + c * d
        return out


def check_module_window(spec: ModuleLike, K: int = 4, M: int = 4,
                        layer_radius: int = DEFAULT_LAYER_RADIUS,
                        relations: Iterable[str] = ("LL", "LW", "WW")) -> VerificationReport:
    """Assert act([x,y], v) = x(y v) - y(x v) on the (K, M) window.

    Pairs (x, y) run over (L_i, L_k), (L_i, W_k), (W_i, W_k).  Residuals are
    indexed (i, k, layer, offset).  An assertion whose intermediate vectors
    would leave the offset box |m| <= M + 2K is skipped and counted.
    """
    if K < 1 or M < 1:
        raise ValueError("window sizes K and M must be at least 1")
    report = VerificationReport(name=spec.name, window={"K": K, "M": M})
    layers = spec.layers.clipped(layer_radius)
    acts = _ActCache(spec, M + 2 * K, layers)
    wanted = set(relations)
    params = spec.algebra
    rng = range(-K, K + 1)
    labels = window_labels(spec, M, layer_radius)
    for rel, kx, ky in RELATIONS:
        if rel not in wanted:
            continue
        for i, k in itertools.product(rng, rng):
            x, y = Generator(kx, i), Generator(ky, k)
            br = bracket_generators(params, x, y)
            for v in labels:
                start = {v: ONE}
                yv = acts.apply(y, start)
                xv = acts.apply(x, start)
                xyv = None if yv is None else acts.apply(x, yv)
                yxv = None if xv is None else acts.apply(y, xv)
                if xyv is None or yxv is None:
                    report.skipped += 1
                    continue
                diff: Dict[BasisIndex, Scalar] = dict(xyv)
                for t, c in yxv.items():
                    diff[t] = diff.get(t, ZERO) - c
                for coef, z in br:
                    for t, c in acts(z, v).items():
                        diff[t] = diff.get(t, ZERO) - coef * c
                bad = [(t, c) for t, c in diff.items() if not c.is_zero()]
                report.checked += 1
                for t, c in sorted(bad):
                    report.fail(rel, (i, k, v.layer, v.offset), c)
    return report


# -- basis maps and isomorphism checks ----------------------------------------

class BasisMap:
    """A candidate isomorphism on basis labels: idx -> (scalar, idx')."""

    def __init__(self, rule: Callable[[BasisIndex], Tuple[Scalar, BasisIndex]], name: str = "map"):
        self.rule = rule
        self.name = name

    def __call__(self, idx: BasisIndex) -> Tuple[Scalar, BasisIndex]:
        c, tgt = self.rule(BasisIndex(*idx))
        return as_scalar(c), BasisIndex(*tgt)

    def apply(self, vec: ModuleVector) -> ModuleVector:
        out = ModuleVector()
        for idx, c in vec.terms.items():
            s, tgt = self(idx)
            out = out + ModuleVector({tgt: c * s})
        return out

    def then(self, other: "BasisMap") -> "BasisMap":
        """First self, then other."""
        def rule(idx):
            c1, t1 = self(idx)
            c2, t2 = other(t1)
            return c1 * c2, t2
        return BasisMap(rule, f"{other.name}.{self.name}")

    @classmethod
    def identity(cls) -> "BasisMap":
        return cls(lambda idx: (ONE, idx), "id")

    @classmethod
    def shift(cls, dlayer: int = 0, doffset: int = 0) -> "BasisMap":
        return cls(lambda idx: (ONE, BasisIndex(idx.layer + dlayer, idx.offset + doffset)),
                   f"shift({dlayer},{doffset})")

    @classmethod
    def layer_signs(cls, sign: Callable[[int], int], name: str = "signs") -> "BasisMap":
        return cls(lambda idx: (as_scalar(sign(idx.layer)), idx), name)


def check_isomorphic(spec_a: ModuleLike, spec_b: ModuleLike, basis_map: BasisMap,
                     K: int = 4, M: int = 4,
                     layer_radius: int = DEFAULT_LAYER_RADIUS) -> VerificationReport:
    """Assert map(act_A(g, v)) = act_B(g, map(v)) for window g and v.

    Residuals are recorded under relation "iso" with indices
    (generator, layer, offset, target layer, target offset).
    """
    report = VerificationReport(name=f"{spec_a.name}~{spec_b.name}", window={"K": K, "M": M})
    for v in window_labels(spec_a, M, layer_radius):
        s, image = basis_map(v)
        if s.is_zero() or not spec_b.contains(image):
            report.fail("iso", ("map", v.layer, v.offset, image.layer, image.offset), ONE)
            continue
        for kind in ("L", "W"):
            for k in range(-K, K + 1):
                g = Generator(kind, k)
                lhs = basis_map.apply(spec_a.act(g, v))
                rhs = spec_b.act(g, image).scale(s)
                diff = lhs - rhs
                report.checked += 1
                for t, c in diff:
                    report.fail("iso", (str(g), v.layer, v.offset, t.layer, t.offset), c)
    return report


# -- duals --------------------------------------------------------------------

class DualModule(ModuleLike):
    """Graded dual: x.f(v) = -f(x.v), computed by coefficient extraction.

    The functional dual to v_m^j carries the label (-j, -m), so weights and
    the W-grading keep their usual direction.
    """

    def __init__(self, base: ModuleLike, name: Optional[str] = None):
        lay = base.layers
        self.base = base
        self.algebra = base.algebra
        self.layers = LayerWindow(None if lay.hi is None else -lay.hi,
                                  None if lay.lo is None else -lay.lo)
        self.name = name or f"dual({base.name})"

    def offset_drift(self) -> int:
        return self.base.offset_drift()

    def _candidate_layers(self, layer: int) -> List[int]:
        lay = self.base.layers
        if lay.is_finite():
            return list(range(lay.lo, lay.hi + 1))
        return [layer - 1, layer, layer + 1]

    def raw_terms(self, g: Generator, idx: BasisIndex) -> Terms:
        target = BasisIndex(-idx.layer, -idx.offset)   # the base vector this functional reads
        drift = self.base.offset_drift()
        out = []
        for lj in self._candidate_layers(target.layer):
            for d in range(-drift, drift + 1):
                src = BasisIndex(lj, target.offset - g.index + d)
                if not self.base.contains(src):
                    continue
                c = self.base.act(g, src).coefficient(target)
                if not c.is_zero():
                    out.append((BasisIndex(-src.layer, -src.offset), -c))
        return out


def dualize(spec: ModuleLike) -> DualModule:
    return DualModule(spec)


def dual_label_map(sign: Callable[[int], int], dlayer: int = 0, doffset: int = 0,
                   name: str = "dual-map") -> BasisMap:
    """Dual label (j, m) -> sign(j) * v_{m + doffset}^{j + dlayer}."""
    return BasisMap(lambda idx: (as_scalar(sign(idx.layer)),
                                 BasisIndex(idx.layer + dlayer, idx.offset + doffset)), name)


# -- eta twist ----------------------------------------------------------------

class TwistedModule(ModuleLike):
    """W_k rescaled by a factor depending on k; L_k unchanged.

    ``twist_eta`` turns a W(a,0)-module into a W(a,1)-module (factor
    1/(a+k)); ``untwist`` goes back (factor a+k).
    """

    def __init__(self, base: ModuleLike, algebra: AlgebraParams, inverse: bool, name: str):
        self.base = base
        self.algebra = algebra
        self.layers = base.layers
        self.inverse = inverse
        self.name = name

    def contains(self, idx):
        return self.base.contains(idx)

    def offset_drift(self):
        return self.base.offset_drift()

    def factor(self, k: int) -> Scalar:
        ak = self.algebra.a + k
        if ak.is_zero():
            raise ZeroDenominator(f"a + {k} vanishes")
        return ONE / ak if self.inverse else ak

    def raw_terms(self, g, idx):
        terms = self.base.raw_terms(g, idx)
        if g.kind == "L":
            return terms
        f = self.factor(g.index)
        return [(t, c * f) for t, c in terms]


def twist_eta(spec: ModuleLike) -> TwistedModule:
    if not spec.algebra.b.is_zero():
        raise BadParams("the eta twist starts from a module over W(a, 0)")
    a = spec.algebra.a.constant_value()
    if a is not None and a.denominator == 1:
        raise BadParams("the eta twist needs a not in Z")
    return TwistedModule(spec, AlgebraParams(spec.algebra.a, ONE), True, f"twist({spec.name})")


def untwist(spec: ModuleLike) -> TwistedModule:
    if not (spec.algebra.b - 1).is_zero():
        raise BadParams("untwisting starts from a module over W(a, 1)")
    return TwistedModule(spec, AlgebraParams(spec.algebra.a, ZERO), False, f"untwist({spec.name})")


# -- other wrappers ------------------------------------------------------------

class PerturbedModule(ModuleLike):
    """One coefficient of a module changed by ``delta``.

    The perturbed coefficient is that of ``target`` in g.source; the target
    defaults to the natural image label (same layer for L, next for W).
    """

    def __init__(self, base: ModuleLike, g: Generator, source: BasisIndex, delta,
                 target: Optional[BasisIndex] = None):
        self.base = base
        self.algebra = base.algebra
        self.layers = base.layers
        self.g = g
        self.source = BasisIndex(*source)
        self.delta = as_scalar(delta)
        if target is None:
            step = 1 if g.kind == "W" else 0
            target = BasisIndex(self.source.layer + step, self.source.offset + g.index)
        self.target = BasisIndex(*target)
        self.name = f"perturbed({base.name})"

    def contains(self, idx):
        return self.base.contains(idx)

    def offset_drift(self):
        return self.base.offset_drift()

    def raw_terms(self, g, idx):
        terms = list(self.base.raw_terms(g, idx))
        if g == self.g and idx == self.source:
            for n, (t, c) in enumerate(terms):
                if t == self.target:
                    terms[n] = (t, c + self.delta)
                    break
            else:
                terms.append((self.target, self.delta))
        return terms


def perturb(spec: ModuleLike, g: Generator, source, delta=1, target=None) -> PerturbedModule:
    return PerturbedModule(spec, g, source, delta, target)


class StackedModule(ModuleLike):
    """Layers j in a window with L_k v_m^j = ell(j,k,m) v_{m+k}^j and
    W_k v_m^j = w(j,k,m) v_{m+k}^{j+1}."""

    def __init__(self, algebra: AlgebraParams, layers: Tuple[int, int],
                 ell: Callable[[int, int, int], Scalar],
                 w: Callable[[int, int, int], Scalar], name: str = "stacked"):
        self.algebra = algebra
        self.layers = LayerWindow(*layers)
        self.ell = ell
        self.w = w
        self.name = name

    def raw_terms(self, g, idx):
        j, m, k = idx.layer, idx.offset, g.index
        if g.kind == "L":
            c = as_scalar(self.ell(j, k, m))
            return [(BasisIndex(j, m + k), c)] if not c.is_zero() else []
        c = as_scalar(self.w(j, k, m))
        return [(BasisIndex(j + 1, m + k), c)] if not c.is_zero() else []


class TrivialModule(ModuleLike):
    """The one-dimensional trivial module T."""

    def __init__(self, algebra: Optional[AlgebraParams] = None):
        self.algebra = algebra or AlgebraParams()
        self.layers = LayerWindow(0, 0)
        self.name = "T"

    def contains(self, idx):
        return idx.layer == 0 and idx.offset == 0

    def raw_terms(self, g, idx):
        return []


# -- W squares to zero -----------------------------------------------------------

def w_coefficient(spec: ModuleLike, j: int, k: int, m: int) -> Scalar:
    """Coefficient of v_{m+k}^{j+1} in W_k v_m^j (zero if either is absent)."""
    src = BasisIndex(j, m)
    if not spec.contains(src):
        return ZERO
    return spec.act(Generator("W", k), src).coefficient(BasisIndex(j + 1, m + k))


def check_w_square_zero(spec: ModuleLike, K: int = 4, M: int = 4,
                        layer_radius: int = DEFAULT_LAYER_RADIUS) -> VerificationReport:
    """w^{j+1}_{k1,k2+m} w^j_{k2,m} = w^{j+1}_{k2,k1+m} w^j_{k1,m} on the window."""
    report = VerificationReport(name=f"wsq({spec.name})", window={"K": K, "M": M})
    cache: Dict[Tuple[int, int, int], Scalar] = {}

    def w(j, k, m):
        key = (j, k, m)
        if key not in cache:
            cache[key] = w_coefficient(spec, j, k, m)
        return cache[key]

    rng = range(-K, K + 1)
    for j in spec.layers.clipped(layer_radius):
        if not spec.layers.contains(j + 2):
            continue
        for k1, k2 in itertools.combinations(rng, 2):
            for m in range(-M, M + 1):
                lhs = w(j + 1, k1, k2 + m) * w(j, k2, m)
                rhs = w(j + 1, k2, k1 + m) * w(j, k1, m)
                report.add("wsq", (j, k1, k2, m), lhs - rhs)
    return report


def alternating(j: int) -> int:
    """(-1)^j for any integer j."""
    return -1 if j % 2 else 1
