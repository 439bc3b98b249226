"""The single-layer case: W_k v_m = w_{k,m} v_{m+k} on a Vir-module A'_{lam,mu}.

With a normalized to 0, the relation [L_i, W_k] at k = 0 gives

    (lam + m + k mu)(w_{0,m} - w_{0,m+k}) = b k w_{k,m}            (R1)

and [W_k, W_0] = 0 gives

    w_{k,m} (w_{0,m} - w_{0,m+k}) = 0.                               (R2)

Writing ell = lam + m + k mu, the polynomial identity

    ell * R2 - w_{k,m} * R1 = b k w_{k,m}^2

shows w_{k,m} = 0 for every k != 0.  What is left of [L_1, W_{-1}] is then
(b - 1) w_{0,m} = 0, so for b != 1 every W_k acts by zero, while for b = 1 a
constant w_{0,m} = c survives (the module with W_k v_m = c delta_{k,0} v_m).
"""

from __future__ import annotations

from typing import Callable, Dict, Union

from ..errors import ZeroDenominator
from ..report import VerificationReport
from ..scalar import ZERO, Scalar, as_scalar, parse_scalar, sym
from .constraints import LayerSystem, WUnknown, first_order, second_order, w_square, w_unknown

WCandidate = Union[str, Callable[[int, int], object]]


def integer_system(b=None, lam=None, mu=None) -> LayerSystem:
    """One generic layer, a = 0, W keeping the layer."""
    mu = sym("mu") if mu is None else mu
    return LayerSystem(a=0, b=b, lam=lam, mu={0: mu}, layers=range(0, 1), step=0)


def _symbolic_w(u: WUnknown) -> Scalar:
    def tag(x):
        return str(x) if x >= 0 else f"m{-x}"
    return sym(f"w_{tag(u.k)}_{tag(u.m)}")


def check_certificate(b=None, lam=None, mu=None, K: int = 4, M: int = 4) -> VerificationReport:
    """ell * R2 - w_{k,m} * R1 - b k w_{k,m}^2 vanishes identically, with R1 and
    R2 taken from the constraint constructors (unknowns kept symbolic)."""
    system = integer_system(b, lam, mu)
    report = VerificationReport(name="integer-certificate", window={"K": K, "M": M})
    for k in range(-K, K + 1):
        if k == 0:
            continue
        for m in range(-M, M + 1):
            # first_order at (i, k) = (k, 0) is  b k w_{k,m} - ell (w_{0,m} - w_{0,m+k}) = -R1
            minus_r1 = first_order(system, 0, k, 0, m).evaluate(_symbolic_w)
            r2 = w_square(system, 0, k, 0, m, _symbolic_w)
            w_km = _symbolic_w(w_unknown(0, k, m))
            ell = system.ell(0, k, m)
            value = ell * r2 + w_km * minus_r1 - system.b * k * w_km * w_km
            report.add("certificate", (k, m), value)
    return report


def derive_integer_case(b=None, lam=None, mu=None, K: int = 4, M: int = 4) -> VerificationReport:
    """Rebuild the single-layer argument on a window.

    * the certificate identity (so w_{k,m} = 0 for k != 0);
    * with those zeros imposed, [L_1, W_{-1}] reduces to (b - 1) w_{0,m} = 0;
      for b != 1 this forces w_{0,m} = 0 at every m of the window, and a
      residual (relation "integer") is recorded wherever it does not;
    * for b = 1 the constant w_{0,m} = c (c symbolic) is substituted into all
      first- and second-order constraints and [W_k1, W_k2] = 0.
    """
    system = integer_system(b, lam, mu)
    report = VerificationReport(name=f"integer-case(b={system.b})", window={"K": K, "M": M})
    report.merge(check_certificate(b, lam, mu, K, M))

    def reduced(u: WUnknown) -> Scalar:
        return _symbolic_w(u) if u.k == 0 else ZERO

    b_is_one = (system.b - 1).is_zero()
    if not b_is_one:
        for m in range(-M, M + 1):
            con = first_order(system, 0, 1, -1, m)
            forced = con.evaluate(reduced)
            # the reduced constraint must be exactly (b - 1) w_{0,m}, a nonzero
            # multiple of the single remaining unknown
            w0 = _symbolic_w(w_unknown(0, 0, m))
            ok = (forced - (system.b - 1) * w0).is_zero()
            report.checked += 1
            if not ok:
                report.fail("integer", (m,), forced)
        report.notes.append("b != 1: W_k acts by zero on every label of the window")
    else:
        report.merge(check_integer_candidate("c", b=system.b, lam=lam, mu=mu, K=K, M=M))
        report.notes.append("b = 1: constant w_{0,m} = c satisfies every constraint")
    return report


def candidate_function(w: WCandidate) -> Callable[[WUnknown], Scalar]:
    """w_{0,m} given as an expression in m (and free constants), or a callable
    (k, m) -> value; w_{k,m} for k != 0 is taken to be 0."""
    if isinstance(w, str):
        text = w

        def value(k, m):
            return parse_scalar(text, {"m": m, "k": k})
    else:
        value = w
    cache: Dict[WUnknown, Scalar] = {}

    def fn(u: WUnknown) -> Scalar:
        if u.k != 0:
            return ZERO
        if u not in cache:
            cache[u] = as_scalar(value(u.k, u.m))
        return cache[u]
    return fn


def check_integer_candidate(w: WCandidate, b=None, lam=None, mu=None, K: int = 4, M: int = 4,
                            second: bool = True) -> VerificationReport:
    """Substitute a candidate w_{0,m} (with w_{k,m} = 0 for k != 0) into the
    single-layer first-order, second-order and W-square constraints."""
    system = integer_system(b, lam, mu)
    fn = candidate_function(w)
    label = w if isinstance(w, str) else getattr(w, "__name__", "w")
    report = VerificationReport(name=f"integer-candidate(w0={label}, b={system.b})",
                                window={"K": K, "M": M})
    ks, ms = range(-K, K + 1), range(-M, M + 1)

    def record(relation, indices, con):
        if con.is_trivial():
            report.skipped += 1
            return
        try:
            report.add(relation, indices, con.evaluate(fn))
        except ZeroDenominator:
            report.skipped += 1

    for i in ks:
        for k in ks:
            for m in ms:
                record("first", (i, k, m), first_order(system, 0, i, k, m))
    if second:
        for i1 in ks:
            for i2 in ks:
                for k in ks:
                    for m in ms:
                        record("second", (i1, i2, k, m), second_order(system, 0, i1, i2, k, m))
    for k1 in ks:
        for k2 in ks:
            if k1 < k2:
                for m in ms:
                    report.add("wsq", (k1, k2, m), w_square(system, 0, k1, k2, m, fn))
    return report
