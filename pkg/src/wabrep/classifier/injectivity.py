"""Whether the maps out of a one-dimensional weight space are jointly nonzero.

For a weight vector v of weight lam and an index m outside {-1, 0}, the test
asks whether at least one of L_m, L_{m+1}, W_m, W_{m+1} sends v to a nonzero
vector.  Coefficients are exact Scalars, so "nonzero" means "not identically
zero" when parameters are symbolic.
"""

from __future__ import annotations

from typing import List, Optional

from ..algebra import Generator
from ..catalog import BasisIndex, ModuleLike
from ..errors import BadParams, WeightAbsent
from ..scalar import Scalar, as_scalar, parse_scalar

DEFAULT_OFFSET_RADIUS = 12
DEFAULT_LAYER_RADIUS = 3


def _weight(spec: ModuleLike, idx: BasisIndex) -> Optional[Scalar]:
    try:
        return spec.weight_of(idx)
    except ValueError:
        return None


def weight_vectors(spec: ModuleLike, lam, offset_radius: int = DEFAULT_OFFSET_RADIUS,
                   layer_radius: int = DEFAULT_LAYER_RADIUS) -> List[BasisIndex]:
    """Basis labels of weight lam within the search box."""
    lam = parse_scalar(lam) if isinstance(lam, str) else as_scalar(lam)
    found = []
    for j in spec.layers.clipped(layer_radius):
        for m in range(-offset_radius, offset_radius + 1):
            idx = BasisIndex(j, m)
            if not spec.contains(idx):
                continue
            wt = _weight(spec, idx)
            if wt is not None and (wt - lam).is_zero():
                found.append(idx)
    return found


def check_psi_injectivity(spec: ModuleLike, m: int, lam,
                          offset_radius: int = DEFAULT_OFFSET_RADIUS,
                          layer_radius: int = DEFAULT_LAYER_RADIUS) -> bool:
    """True iff one of L_m, L_{m+1}, W_m, W_{m+1} acts nonzero on the weight-lam vector.

    Raises BadParams for m in {-1, 0} or when the weight space is not
    one-dimensional, and WeightAbsent when lam is not a weight of spec.
    """
    if m in (-1, 0):
        raise BadParams(f"m must avoid -1 and 0 (got {m})")
    found = weight_vectors(spec, lam, offset_radius, layer_radius)
    if not found:
        raise WeightAbsent(f"{lam} is not a weight of {spec.name}")
    if len(found) > 1:
        raise BadParams(f"weight space {lam} of {spec.name} is not one-dimensional: "
                        + ", ".join(map(str, found)))
    idx = found[0]
    for g in (Generator("L", m), Generator("L", m + 1), Generator("W", m), Generator("W", m + 1)):
        if not spec.act(g, idx).is_zero():
            return True
    return False
