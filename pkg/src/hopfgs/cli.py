"""Command-line front end: ``hopfgs cohomology|verify|normalizability|report-schema``.

Reports are JSON (sorted keys, exact scalars as strings) or plain tables.
Two runs with the same arguments print identical bytes unless ``--timing``
is given.  The exit code is 0 iff every check in the report passed; usage
and input errors exit with 2 and a budget overrun with 3.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from importlib import resources

from . import __version__
from .complexes import (
    BudgetExceededError,
    averaging_check,
    d_squared_check,
    gs_complex,
    hochschild_complex,
    random_bimodule,
    reconstruction_check,
    resolution_complex_psl2,
    resolution_complex_sl2,
)
from .complexes.resolution import ResolutionMaps, make_algebra
from .exact_linalg import ScalarParseError, parse_scalar
from .hopf_core import (
    GroupTableError,
    check_hopf_axioms,
    check_kac,
    function_algebra,
    group_algebra,
    load_group,
    presentation_check_As_Ah,
)
from .hopf_core.pbw import EvenSubalgebra, PBWAlgebra
from .measured_algebra import BUILTINS, MeasuredAlgebra, MeasuredAlgebraError, frobenius_dual, normalizability
from .reporting import Report
from .yetter_drinfeld import (
    Splitting,
    adjoint_restriction_check,
    check_yd,
    chi_coinvariant_check,
    coad_power,
    cofree_yd,
    end_comodule,
    free_yd,
    fundamental_comodule,
    sigma_section,
    trivial_comodule,
    trivial_yd,
    twist_bimodule,
)
from .yetter_drinfeld.modules import Bimodule, RightModule

SCHEMAS = ("cohomology", "verify", "normalizability")
SUITES = ("axioms", "yd", "sigma", "averaging", "relations", "normalizability")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    target: str | None = None
    q: str | None = None
    symbolic_q: bool = False
    degree_bound: int | None = None
    max_degree: int | None = None
    group: str = "S3"
    algebra: str = "group"
    bimodule: str = "regular"
    input: str | None = None
    builtin: str | None = None
    n: int | None = None
    format: str = "json"
    seed: int = 0
    timing: bool = False

    def q_value(self):
        """``None`` in symbolic mode, else the parsed rational (default 2)."""
        if self.symbolic_q:
            return None
        try:
            q = parse_scalar(self.q if self.q is not None else "2")
        except ScalarParseError as exc:
            raise UsageError(f"invalid q: {exc}") from exc
        if q == 0:
            raise UsageError("q must be nonzero")
        if q + 1 / q == 0:
            raise UsageError("q + 1/q must be nonzero")
        return q

    def echo(self) -> dict:
        out = {k: v for k, v in asdict(self).items() if k not in ("timing", "format")}
        return out


def _group_algebra(cfg: RunConfig, group=None):
    G = group or _load_group(cfg.group)
    if cfg.algebra == "group":
        return group_algebra(G), G
    if cfg.algebra == "function":
        return function_algebra(G), G
    raise UsageError(f"unknown algebra kind {cfg.algebra!r}")


def _load_group(source: str):
    try:
        return load_group(source)
    except (GroupTableError, OSError, ValueError) as exc:
        raise UsageError(f"cannot load group {source!r}: {exc}") from exc


def _bimodule(cfg: RunConfig, A, G) -> Bimodule:
    if cfg.bimodule == "trivial":
        return Bimodule.trivial(A)
    if cfg.bimodule == "regular":
        return Bimodule.regular(A)
    if cfg.bimodule == "random":
        return random_bimodule(A, G, cfg.seed)
    raise UsageError(f"unknown bimodule {cfg.bimodule!r}")


# -- cohomology ---------------------------------------------------------------


def cmd_cohomology(cfg: RunConfig) -> tuple[dict, Report]:
    target = cfg.target
    checks = Report(f"cohomology {target}")
    if target in ("sl2", "psl2"):
        q = cfg.q_value()
        N = 3 if cfg.max_degree is None else cfg.max_degree
        if N != 3:
            raise UsageError("the resolution complexes have max degree 3")
        D = 6 if cfg.degree_bound is None else cfg.degree_bound
        if D < N + 2:
            raise UsageError(f"degree bound must be at least max degree + 2 = {N + 2}")
        build = resolution_complex_sl2 if target == "sl2" else resolution_complex_psl2
        res = build(q, D)
        result = res.to_json()
        checks.extend(d_squared_check(res.complex))
        checks.extend(res.maps.composition_check(2))
        return result, checks
    if target == "group-gs":
        A, _ = _group_algebra(cfg)
        N = 2 if cfg.max_degree is None else cfg.max_degree
        c = gs_complex(A, trivial_yd(A), N)
        checks.extend(d_squared_check(c.complex))
        return _complex_json(A.name, "C", c), checks
    if target == "hochschild":
        A, G = _group_algebra(cfg)
        N = 2 if cfg.max_degree is None else cfg.max_degree
        M = _bimodule(cfg, A, G)
        c = hochschild_complex(A, M, N)
        checks.extend(d_squared_check(c.complex))
        return _complex_json(A.name, M.name, c), checks
    raise UsageError(f"unknown cohomology target {target!r}")


def _complex_json(algebra: str, coeffs: str, c) -> dict:
    return {
        "algebra": algebra,
        "coefficients": coeffs,
        "q": None,
        "cochain_dims": c.dims,
        "ranks": c.ranks(),
        "homology": c.homology(),
    }


# -- verify -------------------------------------------------------------------


def _pbw(cfg: RunConfig, bound: int) -> PBWAlgebra:
    D = max(bound, cfg.degree_bound or 0)
    return make_algebra(cfg.q_value(), D)


def verify_axioms(cfg: RunConfig) -> Report:
    rep = Report("Hopf algebra axioms")
    G = _load_group(cfg.group)
    for A in (group_algebra(G), function_algebra(G)):
        rep.extend(check_hopf_axioms(A), f"{A.name}: ")
    B = _pbw(cfg, 6)
    D = B.degree_bound // 2
    rep.extend(check_hopf_axioms(B, D), f"{B.name}: ")
    rep.extend(check_hopf_axioms(EvenSubalgebra(B), D), f"{B.name}_+: ")
    kac = check_kac(B)
    rep.add(f"{B.name} is not of Kac type", ["S^2 = id on generators"] if kac else [], 1)
    return rep


def verify_yd(cfg: RunConfig) -> Report:
    rep = Report("Yetter-Drinfeld constructions")
    G = _load_group(cfg.group)
    for A in (group_algebra(G), function_algebra(G)):
        regular = RightModule.regular(A)
        for Y in (
            free_yd(trivial_comodule(A)),
            cofree_yd(regular),
            coad_power(A, 2),
            twist_bimodule(Bimodule.regular(A)),
            twist_bimodule(random_bimodule(A, G, cfg.seed)),
        ):
            rep.extend(check_yd(Y), f"{A.name} {Y.name}: ")
    B = _pbw(cfg, 6)
    Y = free_yd(fundamental_comodule(B))
    rep.extend(check_yd(Y, Y.basis(2), B.basis(2), total_degree=2), f"{B.name} {Y.name}: ")
    return rep


def verify_sigma(cfg: RunConfig) -> Report:
    B = _pbw(cfg, 9)
    rep = Report("section sigma and splitting")
    s, conds = sigma_section(B)
    rep.extend(conds)
    rep.extend(chi_coinvariant_check(B))
    for W in (trivial_comodule(B), fundamental_comodule(B), end_comodule(B)):
        rep.extend(Splitting(B, W, s).check(2, seed=cfg.seed), f"W = {W.name}: ")
    rep.extend(adjoint_restriction_check(B, B.degree_bound // 3))
    return rep


def verify_averaging(cfg: RunConfig) -> Report:
    rep = Report("averaging operator")
    G = _load_group(cfg.group)
    for A in (group_algebra(G), function_algebra(G)):
        kac = check_kac(A)
        rep.add(f"{A.name} is of Kac type", [] if kac else ["S^2 != id"], 1)
        for n in (1, 2):
            for V in (trivial_yd(A), twist_bimodule(random_bimodule(A, G, cfg.seed))):
                rep.extend(averaging_check(A, V, n, seed=cfg.seed), f"{A.name} n={n} {V.name}: ")
    return rep


def verify_relations(cfg: RunConfig) -> Report:
    rep = Report("relations and rewriting")
    B = _pbw(cfg, 6)
    rs = B.rewriting
    D = 5
    bad = rs.check_confluence(D)
    rep.add(f"rewriting system confluent up to degree {D}", bad, sum(1 for _ in rs.overlaps(D)))
    counts = rs.standard_counts(D)
    expect = [(d + 1) ** 2 for d in range(D + 1)]
    rep.add("standard monomial counts equal commutative counts", [] if counts == expect else [counts], D + 1,
            detail=f"{counts}")
    R = ResolutionMaps(B)
    rep.extend(R.composition_check(2))
    rep.extend(R.linearity_check(1))
    rep.extend(R.colinearity_check(1))
    rep.extend(reconstruction_check(cfg.q_value(), seed=cfg.seed))
    n = 3 if cfg.n is None else cfg.n
    rep.extend(presentation_check_As_Ah(n))
    return rep


def _measured(cfg: RunConfig) -> MeasuredAlgebra:
    if cfg.input:
        try:
            return MeasuredAlgebra.load(cfg.input)
        except OSError as exc:
            raise UsageError(f"cannot read {cfg.input}: {exc}") from exc
    name = cfg.builtin or "cn"
    if name not in BUILTINS:
        raise UsageError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}")
    n = 4 if cfg.n is None else cfg.n
    q = None if cfg.q is None else cfg.q_value()
    return BUILTINS[name](n=n, q=q)


def verify_normalizability(cfg: RunConfig) -> Report:
    rep = Report("normalizability")
    if cfg.input or cfg.builtin:
        R = _measured(cfg)
        dual = frobenius_dual(R)
        rep.add(f"{R.name}: snake identities", dual.snake_failures, 2 * R.dim)
        res = normalizability(R)
        rep.add(f"{R.name}: normalizable", [] if res.normalizable else [res.witness or res.reason], 1,
                detail=res.reason)
        return rep
    from .measured_algebra import cn, weighted_c2

    for n in range(2, 10):
        res = normalizability(cn(n))
        ok = res.normalizable and res.lam == 1 and res.mu_squared == n
        rep.add(f"C^{n}: lambda = 1, mu^2 = {n}", [] if ok else [res.to_json()], 1)
    res = normalizability(weighted_c2())
    rep.add("weighted C^2 rejected with witness", [] if (not res.normalizable and res.witness) else ["accepted"], 1,
            detail=f"witness {res.witness}")
    for name, make in sorted(BUILTINS.items()):
        R = make()
        rep.add(f"{name}: snake identities", frobenius_dual(R).snake_failures, 2 * R.dim)
    return rep


VERIFIERS = {
    "axioms": verify_axioms,
    "yd": verify_yd,
    "sigma": verify_sigma,
    "averaging": verify_averaging,
    "relations": verify_relations,
    "normalizability": verify_normalizability,
}


def cmd_verify(cfg: RunConfig) -> tuple[dict, Report]:
    suites = SUITES if cfg.target == "all" else (cfg.target,)
    if any(s not in VERIFIERS for s in suites):
        raise UsageError(f"unknown suite {cfg.target!r}")
    rep = Report(f"verify {cfg.target}")
    for s in suites:
        rep.extend(VERIFIERS[s](cfg), f"{s}: " if len(suites) > 1 else "")
    return {"suite": cfg.target}, rep


def cmd_normalizability(cfg: RunConfig) -> tuple[dict, Report]:
    try:
        R = _measured(cfg)
    except MeasuredAlgebraError as exc:
        raise UsageError(str(exc)) from exc
    dual = frobenius_dual(R) if _nondegenerate(R) else None
    res = normalizability(R)
    rep = Report(f"normalizability of {R.name}")
    if dual is not None:
        rep.add("snake identities", dual.snake_failures, 2 * R.dim)
    result = {"algebra": R.name, "dim": R.dim, **res.to_json()}
    return result, rep


def _nondegenerate(R) -> bool:
    try:
        frobenius_dual(R)
    except MeasuredAlgebraError:
        return False
    return True


# -- output -------------------------------------------------------------------


def load_schema(name: str) -> dict:
    text = resources.files("hopfgs").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)


def build_report(cfg: RunConfig, result: dict, checks: Report, elapsed: float | None) -> dict:
    out = {
        "command": cfg.command,
        "target": cfg.target,
        "config": cfg.echo(),
        "seed": cfg.seed,
        "versions": {"hopfgs": __version__, "python": f"{sys.version_info.major}.{sys.version_info.minor}"},
        "result": result,
        "checks": [r.to_json() for r in checks.results],
        "passed": checks.passed,
    }
    if elapsed is not None:
        out["timing_seconds"] = f"{elapsed:.3f}"
    return out


def render_table(report: dict) -> str:
    lines = [f"hopfgs {report['command']} {report['target'] or ''}".rstrip()]
    for k, v in report["result"].items():
        lines.append(f"  {k}: {v}")
    for c in report["checks"]:
        mark = "PASS" if c["passed"] else "FAIL"
        lines.append(f"  [{mark}] {c['name']} ({c['checked']} checked)")
        for w in c.get("witnesses", []):
            lines.append(f"         witness: {w}")
    if "timing_seconds" in report:
        lines.append(f"  time: {report['timing_seconds']} s")
    lines.append("PASSED" if report["passed"] else "FAILED")
    return "\n".join(lines) + "\n"


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", help="rational deformation parameter (default 2)")
    common.add_argument("--symbolic-q", action="store_true", help="work over Q(q)")
    common.add_argument("--degree-bound", type=int, help="truncation degree D for B(E_q)")
    common.add_argument("--max-degree", type=int, help="max cochain degree N")
    common.add_argument("--group", default="S3", help="Z2, Z3, Z4, S3 or a JSON group table")
    common.add_argument("--algebra", choices=("group", "function"), default="group",
                        help="CG or O(G) for group commands")
    common.add_argument("--bimodule", choices=("trivial", "regular", "random"), default="regular")
    common.add_argument("--input", help="JSON measured algebra")
    common.add_argument("--builtin", help=f"built-in measured algebra: {', '.join(sorted(BUILTINS))}")
    common.add_argument("--n", type=int, help="size parameter for built-ins and presentations")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timing", action="store_true", help="add wall-clock time (breaks byte-identity)")

    p = argparse.ArgumentParser(prog="hopfgs", description="Exact Hopf-algebraic cohomology computations.")
    p.add_argument("--version", action="version", version=f"hopfgs {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("cohomology", parents=[common], help="build a complex and report its homology")
    c.add_argument("target", choices=("sl2", "psl2", "group-gs", "hochschild"))
    v = sub.add_parser("verify", parents=[common], help="run a property suite")
    v.add_argument("target", choices=SUITES + ("all",))
    sub.add_parser("normalizability", parents=[common], help="normalizability of a measured algebra")
    s = sub.add_parser("report-schema", help="print a report JSON schema")
    s.add_argument("target", nargs="?", choices=SCHEMAS, default="cohomology")
    return p


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "report-schema":
        sys.stdout.write(json.dumps(load_schema(args.target), indent=2, sort_keys=True) + "\n")
        return 0
    fields = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
    cfg = RunConfig(**fields)
    start = time.perf_counter()
    try:
        if cfg.command == "cohomology":
            result, checks = cmd_cohomology(cfg)
        elif cfg.command == "verify":
            result, checks = cmd_verify(cfg)
        else:
            result, checks = cmd_normalizability(cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MeasuredAlgebraError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return 3
    elapsed = time.perf_counter() - start if cfg.timing else None
    report = build_report(cfg, result, checks, elapsed)
    if cfg.format == "json":
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(render_table(report))
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
