"""One entry point running every classification check.

``classify`` returns two lists of reports:

* ``checks`` -- identities that must hold (all pass on a correct build);
* ``discrepancies`` -- literal published forms that do not hold as printed,
  kept so their residuals stay visible (a power of a in the determinant's
  prefactor, three row-2 entries of the 3x3 system, one case-table formula).
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from ..errors import BadParams
from ..report import VerificationReport
from ..scalar import as_scalar
from .cases import DEFAULT_K, DEFAULT_M, load_cases, select_cases, verify_w_formula
from .integer_case import derive_integer_case
from .system import (PRINTED_A_POWER, check_mu_families, check_rows_agree, check_t_family_roots,
                     derived_system, enumerate_mu_families, factor_determinant,
                     printed_system, verify_determinant_identity)

Reports = List[VerificationReport]


def system_checks() -> Tuple[Reports, Reports]:
    derived = derived_system()
    checks = [
        verify_determinant_identity(a_power=1),
        factor_determinant(derived),
        check_rows_agree(derived, printed_system(corrected=True)),
        check_mu_families(derived),
        check_t_family_roots(),
    ]
    discrepancies = [
        verify_determinant_identity(a_power=PRINTED_A_POWER),
        check_rows_agree(derived, printed_system()),
    ]
    checks[2].name = "rows(corrected)"
    discrepancies[1].name = "rows(printed)"
    return checks, discrepancies


def mu_family_report(b=None) -> VerificationReport:
    fams = enumerate_mu_families(b)
    report = VerificationReport(name=f"mu-families(b={'b' if b is None else as_scalar(b)})")
    report.checked = len(fams)
    report.notes.extend(f"{f.name} [{f.group}]: " + ", ".join(f"{k}={v}" for k, v in
                                                            sorted(f.bindings.items()))
                        for f in fams)
    return report


def case_checks(b=None, K: int = DEFAULT_K, M: int = DEFAULT_M, second: bool = True,
                names: Optional[List[str]] = None, printed: bool = False) -> Reports:
    cases = select_cases(load_cases(), b)
    if names:
        missing = set(names) - {c.name for c in cases}
        if missing:
            raise BadParams(f"unknown or inapplicable case(s): {', '.join(sorted(missing))}")
        cases = [c for c in cases if c.name in names]
    if printed:
        cases = [c.printed() for c in cases if c.printed_w is not None]
    return [verify_w_formula(c, K, M, second) for c in cases]


def integer_checks(b=None, K: int = DEFAULT_K, M: int = DEFAULT_M) -> Reports:
    values = [as_scalar(b)] if b is not None else [as_scalar(2), as_scalar(1)]
    return [derive_integer_case(v, K=K, M=M) for v in values]


def classify(b=None, K: int = DEFAULT_K, M: int = DEFAULT_M, second: bool = True
             ) -> Tuple[Reports, Reports]:
    checks, discrepancies = system_checks()
    checks.append(mu_family_report(b))
    checks.extend(case_checks(b, K, M, second))
    checks.extend(integer_checks(b, K, M))
    discrepancies.extend(case_checks(b, K, M, second=False, printed=True))
    return checks, discrepancies
