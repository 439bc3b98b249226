"""Linear constraints on the unknown W-coefficients w^j_{k,m}.

Layers carry Vir-module actions L_k v_m^j = ell^j_{k,m} v_{m+k}^j and the
unknowns are defined by W_k v_m^j = w^j_{k,m} v_{m+k}^{j+1}.  Generic layers
use ell^j_{k,m} = lam + a*j + m + k*mu_j; a layer may instead carry one of the
reducible Vir-modules (A''_{0,0}, A'(gamma), B'(gamma)).  Basis labels that
do not exist count as zero: an ell or w whose source or target label is
absent vanishes, and no unknown is created for it.

Indices may be integers or polynomial Scalars (symbolic i, n), so the same
constructors produce the symbolic 3x3 system.
"""

from __future__ import annotations

from typing import Callable, Dict, Mapping, NamedTuple, Optional, Union

from ..errors import BadParams
from ..scalar import INFINITY, ONE, ZERO, Polynomial, Scalar, as_scalar, sym

Index = Union[int, Polynomial]


def index_key(x) -> Index:
    """Hashable form of an integer or polynomial index."""
    if isinstance(x, int):
        return x
    if isinstance(x, Polynomial):
        cv = x.constant_value()
        return int(cv) if cv is not None and cv.denominator == 1 else x
    s = as_scalar(x)
    cv = s.constant_value()
    if cv is not None:
        if cv.denominator != 1:
            raise BadParams(f"index {cv} is not an integer")
        return int(cv)
    if not s.is_polynomial():
        raise BadParams(f"index {s} is not polynomial")
    return s.numerator


def index_scalar(x: Index) -> Scalar:
    return as_scalar(x)


class WUnknown(NamedTuple):
    layer: int
    k: Index
    m: Index

    def __str__(self) -> str:
        return f"w^{self.layer}[{self.k},{self.m}]"


def w_unknown(j: int, k, m) -> WUnknown:
    return WUnknown(j, index_key(k), index_key(m))


# Vir-module types a layer can carry.
GENERIC = "generic"          # A'_{lam + a j, mu_j}
A_DOUBLE_PRIME = "A''00"     # A'_{0,0} with v_0 removed
A_GAMMA = "A'(gamma)"
B_GAMMA = "B'(gamma)"
LAYER_TYPES = (GENERIC, A_DOUBLE_PRIME, A_GAMMA, B_GAMMA)


class LayerSystem:
    """Vir-actions on a range of layers, plus which labels exist.

    ``mu`` maps layer -> Scalar for generic layers; ``special`` maps a layer
    to one of the reducible types, in which case lam is taken to be 0 on
    that layer, as in the classification with integral weights.
    ``step`` is the layer shift of W (1, or 0 for a single-layer module).
    """

    def __init__(self, a=None, b=None, lam=None, mu: Optional[Mapping[int, object]] = None,
                 special: Optional[Mapping[int, str]] = None, gamma=None,
                 layers: Optional[range] = None, step: int = 1):
        self.a = sym("a") if a is None else as_scalar(a)
        self.b = sym("b") if b is None else as_scalar(b)
        self.lam = sym("lam") if lam is None else as_scalar(lam)
        self.mu = {j: as_scalar(v) for j, v in (mu or {}).items()}
        self.special = dict(special or {})
        for t in self.special.values():
            if t not in LAYER_TYPES:
                raise BadParams(f"unknown layer type {t!r}")
        self.gamma = sym("gamma") if gamma is None else (gamma if gamma is INFINITY else as_scalar(gamma))
        self.layers = layers
        self.step = step
        self._ell_cache: Dict[tuple, Scalar] = {}

    def kind(self, j: int) -> str:
        return self.special.get(j, GENERIC)

    def mu_of(self, j: int) -> Scalar:
        if j not in self.mu:
            return sym(f"mu{j}" if j >= 0 else f"mu_m{-j}")
        return self.mu[j]

    def present(self, j: int, m) -> bool:
        if self.layers is not None and j not in self.layers:
            return False
        if self.kind(j) == A_DOUBLE_PRIME:
            return index_key(m) != 0
        return True

    def _gamma_factor(self, k: int) -> Scalar:
        if self.gamma is INFINITY:
            return ONE
        return self.gamma + k

    def ell(self, j: int, k, m) -> Scalar:
        """Coefficient of v^j_{m+k} in L_k v^j_m (zero if either is absent)."""
        if isinstance(k, int) and isinstance(m, int):
            key = (j, k, m)
            val = self._ell_cache.get(key)
            if val is None:
                val = self._ell_cache[key] = self._ell(j, k, m)
            return val
        return self._ell(j, k, m)

    def _ell(self, j: int, k, m) -> Scalar:
        if not (self.present(j, m) and self.present(j, index_scalar(index_key(m)) + k)):
            return ZERO
        kind = self.kind(j)
        k_s, m_s = as_scalar(k), as_scalar(m)
        if kind == GENERIC:
            return self.lam + self.a * j + m_s + k_s * self.mu_of(j)
        k_i, m_i = index_key(k), index_key(m)
        if not (isinstance(k_i, int) and isinstance(m_i, int)):
            raise BadParams("reducible layers need integer indices")
        if kind == A_DOUBLE_PRIME:
            return as_scalar(m_i)
        if kind == A_GAMMA:
            if m_i == 0:
                return k_i * self._gamma_factor(k_i)
            return as_scalar(m_i + k_i)
        # B'(gamma)
        if m_i == -k_i:
            return -k_i * self._gamma_factor(k_i)
        return as_scalar(m_i)

    def has_unknown(self, j: int, k, m) -> bool:
        return self.present(j, m) and self.present(j + self.step, index_scalar(index_key(m)) + k)


class LinearConstraint:
    """sum(coeff * w) + const = 0, with Scalar coefficients."""

    __slots__ = ("coeffs", "const", "label")

    def __init__(self, coeffs: Optional[Dict[WUnknown, Scalar]] = None, const=ZERO, label=()):
        self.coeffs: Dict[WUnknown, Scalar] = {}
        for u, c in (coeffs or {}).items():
            self.add(u, c)
        self.const = as_scalar(const)
        self.label = tuple(label)

    def add(self, u: WUnknown, c) -> None:
        c = as_scalar(c)
        if c.is_zero():
            return
        total = self.coeffs.get(u, ZERO) + c
        if total.is_zero():
            self.coeffs.pop(u, None)
        else:
            self.coeffs[u] = total

    def is_trivial(self) -> bool:
        return not self.coeffs and self.const.is_zero()

    def coefficient(self, u: WUnknown) -> Scalar:
        return self.coeffs.get(u, ZERO)

    def evaluate(self, w: Callable[[WUnknown], Scalar]) -> Scalar:
        """Residual after substituting values for every unknown."""
        total = self.const
        for u, c in self.coeffs.items():
            val = as_scalar(w(u))
            if not val.is_zero():
                total = total + c * val
        return total

    def substitute(self, bindings: Mapping[str, object]) -> "LinearConstraint":
        out = LinearConstraint(label=self.label)
        for u, c in self.coeffs.items():
            out.add(u, c.substitute(bindings))
        out.const = self.const.substitute(bindings)
        return out

    def __str__(self) -> str:
        parts = [f"({c})*{u}" for u, c in sorted(self.coeffs.items(), key=lambda t: str(t[0]))]
        if not self.const.is_zero():
            parts.append(f"({self.const})")
        return (" + ".join(parts) or "0") + " = 0"


def _native(x):
    """Integers stay ints (cheap arithmetic, cacheable); anything else becomes a Scalar."""
    return x if isinstance(x, int) else as_scalar(x)


def _w_term(system: LayerSystem, out: LinearConstraint, j: int, k, m, coeff: Scalar) -> None:
    if coeff.is_zero() or not system.has_unknown(j, k, m):
        return
    out.add(w_unknown(j, k, m), coeff)


def first_order(system: LayerSystem, j: int, i, k, m) -> LinearConstraint:
    """[L_i, W_k] = (a + k + b i) W_{i+k} applied to v_m^j:

        (a+k+bi) w^j_{i+k,m} - ell^{j+1}_{i,k+m} w^j_{k,m} + w^j_{k,m+i} ell^j_{i,m} = 0.

    Empty (trivial) if v_m^j does not exist.
    """
    out = LinearConstraint(label=("first", j, index_key(i), index_key(k), index_key(m)))
    if not system.present(j, m):
        return out
    i, k, m = _native(i), _native(k), _native(m)
    t = j + system.step
    a, b = system.a, system.b
    _w_term(system, out, j, i + k, m, a + k + b * i)
    _w_term(system, out, j, k, m, -system.ell(t, i, k + m))
    _w_term(system, out, j, k, m + i, system.ell(j, i, m))
    return out


def second_order(system: LayerSystem, j: int, i1, i2, k, m) -> LinearConstraint:
    """(a+k+b(i1+i2)) [L_i1, [L_i2, W_k]] = (a+i2+k+b i1)(a+k+b i2) [L_{i1+i2}, W_k]
    applied to v_m^j, expanded in the unknowns exactly as displayed."""
    out = LinearConstraint(label=("second", j, index_key(i1), index_key(i2),
                                  index_key(k), index_key(m)))
    if not system.present(j, m):
        return out
    i1, i2, k, m = (_native(x) for x in (i1, i2, k, m))
    t = j + system.step
    a, b = system.a, system.b
    ell_s = system.ell
    left = a + k + b * (i1 + i2)
    right = (a + i2 + k + b * i1) * (a + k + b * i2)

    # left * ( ell^{t}_{i1,i2+k+m} (ell^{t}_{i2,k+m} w_{k,m} - w_{k,i2+m} ell^{j}_{i2,m})
    #        - (ell^{t}_{i2,i1+k+m} w_{k,i1+m} - w_{k,i1+i2+m} ell^{j}_{i2,i1+m}) ell^{j}_{i1,m} )
    outer = ell_s(t, i1, i2 + k + m)
    _w_term(system, out, j, k, m, left * outer * ell_s(t, i2, k + m))
    _w_term(system, out, j, k, i2 + m, -left * outer * ell_s(j, i2, m))
    tail = ell_s(j, i1, m)
    _w_term(system, out, j, k, i1 + m, -left * tail * ell_s(t, i2, i1 + k + m))
    _w_term(system, out, j, k, i1 + i2 + m, left * tail * ell_s(j, i2, i1 + m))
    # - right * (ell^{t}_{i1+i2,k+m} w_{k,m} - w_{k,i1+i2+m} ell^{j}_{i1+i2,m})
    _w_term(system, out, j, k, m, -right * ell_s(t, i1 + i2, k + m))
    _w_term(system, out, j, k, i1 + i2 + m, right * ell_s(j, i1 + i2, m))
    return out


def w_square(system: LayerSystem, j: int, k1: int, k2: int, m: int,
             w: Callable[[WUnknown], Scalar]) -> Scalar:
    """Residual of [W_k1, W_k2] = 0 on v_m^j (t = j + step):
    w^t_{k1,k2+m} w^j_{k2,m} - w^t_{k2,k1+m} w^j_{k1,m}."""
    def val(jj, kk, mm):
        return w(w_unknown(jj, kk, mm)) if system.has_unknown(jj, kk, mm) else ZERO
    if not system.present(j, m):
        return ZERO
    t = j + system.step
    return (val(t, k1, k2 + m) * val(j, k2, m)
            - val(t, k2, k1 + m) * val(j, k1, m))
