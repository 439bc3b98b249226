"""Expected outcomes of dualizing and eta-twisting catalog modules.

``expected_dual`` and ``expected_twist`` name the catalog module the
mechanical construction should be isomorphic to, together with the basis map
realizing the isomorphism; ``check_dual`` / ``check_twist`` run the
comparison on a window.
"""

from __future__ import annotations

from typing import Optional, Tuple

from .catalog import TWIST_PAIRS, ModuleSpec, build_module, canonical_family
from .errors import BadParams
from .report import VerificationReport
from .verifier import (DEFAULT_LAYER_RADIUS, BasisMap, alternating, check_isomorphic,
                       check_module_window, dual_label_map, dualize, twist_eta)

TWIST_TARGET = dict(TWIST_PAIRS)

# Twists whose image matches the tilde family only after rescaling a layer:
# the W(a,0)-module A3 has W_k v_0^0 = -(a + k) v_k^1, so its twist sends
# v_0^0 to -v_k^1 where the tilde family has +v_k^1.
TWIST_SIGNS = {"A3": alternating}


def _same(spec: ModuleSpec, family: str, **changes) -> ModuleSpec:
    params = dict(a=spec.algebra.a, b=spec.algebra.b, lam=spec.lam, mu=spec.mu,
                  gamma=spec.gamma, c=spec.c, p=spec.p, layers=tuple(spec.layers))
    params.update(changes)
    return build_module(family, **params)


def expected_dual(spec: ModuleSpec) -> Optional[Tuple[ModuleSpec, BasisMap]]:
    """The module dual(spec) should be, with the label map; None if not tabulated."""
    a, b = spec.algebra.a, spec.algebra.b
    if spec.family == "A":
        return (_same(spec, "A", lam=-spec.lam, mu=1 - spec.mu),
                dual_label_map(alternating, name="(-1)^j"))
    if spec.family == "B":
        # the dual label (j, m) is read as v_m^{j+1}; no sign is needed
        return (_same(spec, "B", lam=-spec.lam - a, mu=-spec.mu - b, layers=None),
                dual_label_map(lambda j: 1, dlayer=1, name="layer+1"))
    if spec.family == "VirA'":
        return (_same(spec, "VirA'", lam=-spec.lam, mu=1 - spec.mu),
                dual_label_map(lambda j: 1, name="identity"))
    return None


def check_dual(spec: ModuleSpec, K: int = 4, M: int = 4,
               layer_radius: int = DEFAULT_LAYER_RADIUS) -> VerificationReport:
    """dual(spec) is a module, dual(dual(spec)) = spec, and, where tabulated,
    dual(spec) is isomorphic to the expected catalog module."""
    dual = dualize(spec)
    report = VerificationReport(name=f"dual({spec.name})", window={"K": K, "M": M})
    report.merge(check_module_window(dual, K, M, layer_radius))
    report.merge(check_isomorphic(dualize(dual), spec, BasisMap.identity(), K, M, layer_radius))
    expected = expected_dual(spec)
    if expected is None:
        report.notes.append("no tabulated dual; checked module relations and double dual")
    else:
        target, bmap = expected
        report.merge(check_isomorphic(dual, target, bmap, K, M, layer_radius))
        report.notes.append(f"dual({spec.name}) ~ {target.describe()} via {bmap.name}")
    return report


def expected_twist(spec: ModuleSpec) -> Tuple[ModuleSpec, BasisMap]:
    """The tilde family the eta twist of a W(a,0)-module should produce."""
    family = canonical_family(spec.family)
    if family not in TWIST_TARGET:
        raise BadParams(f"family {family} has no tilde counterpart "
                        f"(twistable: {', '.join(TWIST_TARGET)})")
    target = _same(spec, TWIST_TARGET[family], b=1, layers=None)
    if family in TWIST_SIGNS:
        return target, BasisMap.layer_signs(TWIST_SIGNS[family], name="(-1)^j")
    return target, BasisMap.identity()


def twist_source(family: str, **params) -> ModuleSpec:
    """The W(a,0)-module of a twistable family."""
    params["b"] = 0
    return build_module(family, **params)


def check_twist(spec: ModuleSpec, K: int = 4, M: int = 4, literal: bool = False,
                layer_radius: int = DEFAULT_LAYER_RADIUS) -> VerificationReport:
    """Compare twist_eta(spec) with its tilde family.

    With ``literal`` the identity map is used for every family, so the A3
    sign shows up as residuals.
    """
    twisted = twist_eta(spec)
    target, bmap = expected_twist(spec)
    if literal:
        bmap = BasisMap.identity()
    report = check_isomorphic(twisted, target, bmap, K, M, layer_radius)
    report.name = f"twist({spec.name})~{target.name}"
    report.notes.append(f"basis map {bmap.name}")
    return report
