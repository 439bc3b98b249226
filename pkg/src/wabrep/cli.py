"""Command-line front end.

    wab verify      [--input SPEC.json]          module relations on a window
    wab classify    [--b VALUE]                  determinant, mu-families, cases, integer case
    wab dual        FAMILY | --input SPEC.json   dual module vs. the expected family
    wab twist       FAMILY                       eta twist vs. the tilde family
    wab solve-cases [--case NAME ...]            the closed-form w table

Common options: --window K[,M] (default from $WAB_WINDOW, else 4),
--set name=value (p/q, sym, inf or an expression; repeatable), --out PATH,
--jobs N, --max-residuals N.

Reports are JSON with a top-level schema version, residuals sorted by
relation and index, and no timestamps, so repeated runs are byte-identical.
Exit status: 0 all checks pass, 1 a check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .errors import BadParams, SpecFileError, WeightAbsent, ZeroDenominator
from .report import SCHEMA_VERSION, VerificationReport

WINDOW_ENV = "WAB_WINDOW"
DEFAULT_WINDOW = "4"
EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Bad command-line input (exit status 2)."""


# -- configuration ---------------------------------------------------------------

def parse_window(text: str) -> Tuple[int, int]:
    parts = [p.strip() for p in text.split(",")]
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise InputError(f"window must be K or K,M with integers, got {text!r}") from None
    if len(values) == 1:
        values = values * 2
    if len(values) != 2 or min(values) < 1:
        raise InputError(f"window must be K or K,M with K, M >= 1, got {text!r}")
    return values[0], values[1]


def parse_sets(items: Sequence[str]) -> Dict[str, str]:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or not name.strip() or not value.strip():
            raise InputError(f"--set expects name=value, got {item!r}")
        out[name.strip()] = value.strip()
    return out


class RunConfig:
    def __init__(self, args: argparse.Namespace):
        self.command = args.command
        window = args.window or os.environ.get(WINDOW_ENV) or DEFAULT_WINDOW
        self.K, self.M = parse_window(window)
        self.overrides = parse_sets(args.set)
        self.out = args.out
        self.jobs = max(1, args.jobs)
        self.max_residuals = args.max_residuals
        self.args = args


# -- helpers ---------------------------------------------------------------------

def _parallel(fn: Callable, items: List, jobs: int) -> List:
    """Ordered map, across processes when jobs > 1."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _emit(config: RunConfig, body: Dict) -> None:
    doc = {"schema": SCHEMA_VERSION, "command": config.command,
           "window": {"K": config.K, "M": config.M}}
    doc.update(body)
    text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_dicts(reports: List[VerificationReport], limit) -> List[Dict]:
    return [r.to_dict(limit) for r in reports]


def _summarize(reports: List[VerificationReport], label: str = "") -> None:
    for r in reports:
        print(f"{label}{r.summary()}", file=sys.stderr)


def _status(reports) -> int:
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# -- verify ----------------------------------------------------------------------

def _verify_one(job) -> VerificationReport:
    from .specfile import record_from_dict
    from .verifier import check_module_window, check_w_square_zero
    record_dict, K, M = job
    module = record_from_dict(record_dict).module()
    report = check_module_window(module, K, M)
    if len(module.layers.clipped(3)) >= 3:
        report.merge(check_w_square_zero(module, K, M))
    return report


def cmd_verify(config: RunConfig) -> int:
    from .specfile import load_catalog, load_specs, record_to_dict
    path = config.args.input
    records = load_specs(path, config.overrides) if path else load_catalog(config.overrides)
    jobs = [(record_to_dict(r), config.K, config.M) for r in records]
    reports = _parallel(_verify_one, jobs, config.jobs)
    _summarize(reports)
    _emit(config, {"input": path or "<catalog>", "passed": all(r.passed for r in reports),
                   "modules": _report_dicts(reports, config.max_residuals)})
    return _status(reports)


# -- classify / solve-cases ------------------------------------------------------

def _b_value(config: RunConfig):
    from .specfile import parse_value
    text = config.args.b if config.args.b is not None else config.overrides.get("b")
    if text is None or text == "sym":
        return None
    try:
        return parse_value("b", text)
    except SpecFileError as exc:
        raise InputError(str(exc)) from None


def _case_job(job) -> VerificationReport:
    from .classifier.cases import case_by_name, verify_w_formula
    from .scalar import parse_scalar
    name, b, K, M, second = job
    case = case_by_name(name)
    if b is not None:
        case = case.with_b(parse_scalar(b))
    return verify_w_formula(case, K, M, second)


def _cases(config: RunConfig, b, second: bool, names=None) -> List[VerificationReport]:
    from .classifier.cases import load_cases, select_cases
    cases = select_cases(load_cases(), b)
    if names:
        known = {c.name for c in cases}
        missing = [n for n in names if n not in known]
        if missing:
            raise InputError(f"unknown or inapplicable case(s): {', '.join(missing)}")
        cases = [c for c in cases if c.name in names]
    b_text = None if b is None else str(b)
    jobs = [(c.name, b_text, config.K, config.M, second) for c in cases]
    return _parallel(_case_job, jobs, config.jobs)


def cmd_classify(config: RunConfig) -> int:
    from .classifier.run import case_checks, integer_checks, mu_family_report, system_checks
    b = _b_value(config)
    checks, discrepancies = system_checks()
    checks.append(mu_family_report(b))
    checks.extend(_cases(config, b, not config.args.first_only))
    checks.extend(integer_checks(b, config.K, config.M))
    discrepancies.extend(case_checks(b, config.K, config.M, second=False, printed=True))
    _summarize(checks)
    _summarize(discrepancies, "[printed form] ")
    _emit(config, {"b": "sym" if b is None else str(b),
                   "passed": all(r.passed for r in checks),
                   "checks": _report_dicts(checks, config.max_residuals),
                   "printed_discrepancies": _report_dicts(discrepancies, config.max_residuals)})
    return _status(checks)


def cmd_solve_cases(config: RunConfig) -> int:
    from .classifier.cases import load_cases, select_cases
    b = _b_value(config)
    if config.args.list:
        rows = [c.to_dict() for c in select_cases(load_cases(), b)]
        _emit(config, {"cases": rows})
        return EXIT_OK
    reports = _cases(config, b, not config.args.first_only, config.args.case)
    _summarize(reports)
    _emit(config, {"b": "sym" if b is None else str(b),
                   "passed": all(r.passed for r in reports),
                   "cases": _report_dicts(reports, config.max_residuals)})
    return _status(reports)


# -- dual / twist ----------------------------------------------------------------

def _modules_from(config: RunConfig, build: Callable):
    from .specfile import load_specs
    if config.args.input:
        if config.args.family:
            raise InputError("give either FAMILY or --input, not both")
        return [r.spec for r in load_specs(config.args.input, config.overrides)]
    if not config.args.family:
        raise InputError("a module family (or --input) is required")
    from .specfile import parse_value
    params = {}
    for k, v in config.overrides.items():
        if k == "p":
            try:
                params["p"] = int(v)
            except ValueError:
                raise InputError(f"p must be an integer, got {v!r}") from None
        elif k in ("a", "b", "lam", "mu", "gamma", "c"):
            params[k] = parse_value(k, v)
        else:
            raise InputError(f"unknown parameter {k!r}")
    return [build(config.args.family, params)]


def cmd_dual(config: RunConfig) -> int:
    from .catalog import build_module
    from .functors import check_dual, expected_dual
    from .verifier import dualize
    modules = _modules_from(config, lambda fam, p: build_module(fam, **p))
    reports, actions = [], []
    for spec in modules:
        reports.append(check_dual(spec, config.K, config.M))
        actions.append(_action_table(dualize(spec), config))
        exp = expected_dual(spec)
        if exp is not None:
            actions[-1]["expected"] = exp[0].describe()
            actions[-1]["basis_map"] = exp[1].name
    _summarize(reports)
    _emit(config, {"passed": all(r.passed for r in reports), "actions": actions,
                   "reports": _report_dicts(reports, config.max_residuals)})
    return _status(reports)


def cmd_twist(config: RunConfig) -> int:
    from .functors import check_twist, expected_twist, twist_source
    from .verifier import twist_eta

    def build(fam, params):
        from .catalog import canonical_family
        from .functors import TWIST_TARGET
        if canonical_family(fam) not in TWIST_TARGET:
            raise BadParams(f"family {fam} is not a W(a,0) family with a tilde counterpart "
                            f"(twistable: {', '.join(TWIST_TARGET)})")
        if "b" in params and not params["b"] == 0:
            raise BadParams("the eta twist starts from b = 0")
        params.pop("b", None)
        return twist_source(fam, **params)

    modules = _modules_from(config, build)
    reports, actions = [], []
    for spec in modules:
        reports.append(check_twist(spec, config.K, config.M, literal=config.args.literal))
        target, bmap = expected_twist(spec)
        table = _action_table(twist_eta(spec), config)
        table["expected"] = target.describe()
        table["basis_map"] = "id" if config.args.literal else bmap.name
        actions.append(table)
    _summarize(reports)
    _emit(config, {"passed": all(r.passed for r in reports), "actions": actions,
                   "reports": _report_dicts(reports, config.max_residuals)})
    return _status(reports)


def _action_table(module, config: RunConfig, radius: int = 1) -> Dict:
    """The mechanical action on a small box: generator -> label -> image."""
    from .algebra import Generator
    from .catalog import BasisIndex
    K = min(config.K, 2)
    M = min(config.M, 2)
    rows = []
    for j in module.layers.clipped(radius):
        for m in range(-M, M + 1):
            idx = BasisIndex(j, m)
            if not module.contains(idx):
                continue
            for kind in ("L", "W"):
                for k in range(-K, K + 1):
                    image = module.act(Generator(kind, k), idx)
                    rows.append({"g": f"{kind}_{k}", "v": [j, m], "image": str(image)})
    return {"module": module.name, "rows": rows}


# -- entry point -----------------------------------------------------------------

COMMANDS = {"verify": cmd_verify, "classify": cmd_classify, "dual": cmd_dual,
            "twist": cmd_twist, "solve-cases": cmd_solve_cases}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window", help=f"K or K,M (default ${WINDOW_ENV} or {DEFAULT_WINDOW})")
    common.add_argument("--set", action="append", default=[], metavar="NAME=VALUE",
                        help="parameter override: p/q, sym, inf or an expression")
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--max-residuals", type=int, default=20,
                        help="residuals listed per report (default 20)")

    parser = argparse.ArgumentParser(prog="wab", description="Exact checks for W(a,b)-modules.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check module relations on a window")
    p.add_argument("--input", help="module-spec JSON file (default: the shipped catalog)")

    p = sub.add_parser("classify", parents=[common], help="run the classification checks")
    p.add_argument("--b", help="restrict to a concrete b")
    p.add_argument("--first-only", action="store_true", help="skip second-order constraints")

    for name, text in (("dual", "dual module vs. the expected family"),
                       ("twist", "eta twist vs. the tilde family")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("family", nargs="?", help="catalog family tag")
        p.add_argument("--input", help="module-spec JSON file")
        if name == "twist":
            p.add_argument("--literal", action="store_true",
                           help="compare with the identity basis map only")

    p = sub.add_parser("solve-cases", parents=[common], help="check the closed-form w table")
    p.add_argument("--case", action="append", help="case name (repeatable; default all)")
    p.add_argument("--b", help="restrict to a concrete b")
    p.add_argument("--first-only", action="store_true", help="skip second-order constraints")
    p.add_argument("--list", action="store_true", help="list the cases instead of checking")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(args)
        return COMMANDS[args.command](config)
    except (InputError, SpecFileError, BadParams, WeightAbsent, ZeroDenominator) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
