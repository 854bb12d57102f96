"""Command-line front end.

Commands: inverse, ode, hadamard, scan, probe, volterra, demo. Artifacts go to stdout (or
``--out``) as JSON or CSV; logs and rich tables go to stderr. Exit codes: 0 on success,
2 on a precondition violation, 3 on a numerical failure.
"""

from __future__ import annotations

__all__ = ["Artifact", "RunConfig", "build_parser", "main", "run"]

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .config import DEFAULT_CONFIG, NumericsConfig, RunLedger
from .contour_quadrature import (
    LimitProbeConfig,
    Orientation,
    PointEvaluator,
    QuadratureSpec,
    integrate_on_C,
    integrate_on_I,
    integrate_on_KJ,
    limit_probe,
    partial_sum_evaluator,
)
from .exceptions import HadamardError, InvalidParametersError, UnknownGermError
from .germ_catalog import (
    RationalGerm,
    expand,
    log_over_zeta_coefficients,
    log_variation_coefficients,
    parse_complex,
)
from .germ_core import hadamard_inverse, hadamard_product
from .logging_config import floating_point_logged, setup_logging
from .ode_builder import build_euler_operator, characteristic_values, singular_points, verify_recurrence
from .rich_utils import create_progress, format_complex, render_rows
from .serialization import (
    document,
    dumps_json,
    germ_to_dict,
    jet_to_dict,
    operator_to_dict,
    pair,
    resolve_germ,
    write_csv,
)
from .singularity_scope import natural_boundary_score, scan_report
from .volterra_engine import (
    EntireFunctionJet,
    SingularJet,
    check_inverse_conditions,
    homogeneous_uniqueness,
    solve_g1,
)

logger = logging.getLogger(__name__)

COMMANDS = ("inverse", "ode", "hadamard", "scan", "probe", "volterra", "demo")


@dataclass(frozen=True)
class RunConfig:
    """Validated command-line configuration.

    Attributes:
        command: One of :data:`COMMANDS`
        germ: Catalog name or ``.json`` path
        order: Truncation order N (>= 8)
        tol: Pass/fail tolerance reported with the artifact
        seed: Seed for randomised demos
        out: Output path, stdout when None
        fmt: ``json`` or ``csv``
        table: Also render a rich table on stderr
        ledger: TinyDB ledger path, when recording
        extra: Command-specific options
    """

    command: str
    germ: str
    order: int
    tol: float
    seed: int
    out: Path | None
    fmt: str
    table: bool
    ledger: Path | None
    extra: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise InvalidParametersError(f"unknown command {self.command!r}", module="cli")
        if self.order < 8:
            raise InvalidParametersError(f"truncation order must be at least 8, got {self.order}", module="cli")

    @property
    def run_name(self) -> str:
        return f"{self.command}:{self.germ}:{self.order}"


@dataclass
class Artifact:
    """Command result: JSON payload plus its CSV rendering."""

    payload: dict[str, Any]
    header: list[str]
    rows: list[list[Any]]
    title: str = ""

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return write_csv(self.header, self.rows)
        return dumps_json(document(self.payload))


# ==================== Commands ====================


def _coefficient_rows(*series: np.ndarray) -> list[list[Any]]:
    rows = []
    for n in range(min(len(s) for s in series)):
        row: list[Any] = [n]
        for s in series:
            row += [float(s[n].real), float(s[n].imag)]
        rows.append(row)
    return rows


def cmd_inverse(config: RunConfig, numerics: NumericsConfig) -> Artifact:
    germ = resolve_germ(config.germ)
    F = germ.coefficients(config.order)
    G = hadamard_inverse(F, numerics)
    return Artifact(
        payload={"command": "inverse", "germ": germ.name, "order": config.order, "F": germ_to_dict(F), "inverse": germ_to_dict(G)},
        header=["n", "re_f", "im_f", "re_g", "im_g"],
        rows=_coefficient_rows(F.coeffs, G.coeffs),
        title=f"Hadamard inverse of {germ.name}",
    )


def _rational(text: str) -> RationalGerm:
    germ = resolve_germ(text)
    if germ.rational is None:
        raise InvalidParametersError(f"{germ.name} is not a single-pole rational germ", module="ode_builder")
    return germ.rational


def cmd_ode(config: RunConfig, numerics: NumericsConfig) -> Artifact:
    F = _rational(config.germ)
    op = build_euler_operator(F)
    report = verify_recurrence(op, F, config.order, numerics)
    points = sorted(singular_points(op), key=lambda z: (z.real, z.imag))
    return Artifact(
        payload={
            "command": "ode",
            "germ": config.germ,
            "operator": operator_to_dict(op),
            "singular_points": [pair(z) for z in points],
            "characteristic": [pair(v) for v in characteristic_values(op, min(config.order, 8))],
            "max_residual": report.max_residual,
            "worst_index": report.worst_index,
            "passed": report.passed(config.tol),
        },
        header=["k", "re_c", "im_c"],
        rows=[[k, c.real, c.imag] for k, c in enumerate(op.coeffs)],
        title=f"Euler operator of {config.germ}",
    )


def cmd_hadamard(config: RunConfig, numerics: NumericsConfig) -> Artifact:
    F_germ = resolve_germ(config.germ)
    G_germ = resolve_germ(config.extra["with_germ"])
    zeta = parse_complex(config.extra["zeta"])
    spec = QuadratureSpec(0j, config.extra["radius"], config.extra["nodes"])
    F, G = PointEvaluator.from_catalog(F_germ), PointEvaluator.from_catalog(G_germ)
    termwise = complex(hadamard_product(F_germ.coefficients(config.order), G_germ.coefficients(config.order)).partial_sum(zeta))
    results = {
        "on_I": integrate_on_I(F, G, zeta, spec, numerics),
        "on_C": integrate_on_C(F, G, zeta, spec, numerics),
    }
    if F_germ.rational is not None:
        r = F_germ.rational
        K = QuadratureSpec(0j, 2.0 * (abs(r.pole) + spec.radius), spec.nodes)
        J = QuadratureSpec(r.pole, config.extra["j_radius"] * abs(r.pole), spec.nodes, Orientation.CLOCKWISE)
        results["K_part"], results["J_part"] = integrate_on_KJ(r, G, zeta, K, J, numerics)

    values = {"termwise": termwise} | {name: result.value for name, result in results.items()}
    if "K_part" in results:
        values["on_KJ"] = values["K_part"] + values["J_part"]
    quadrature = {
        name: {"nodes": result.nodes, "difference": result.difference, "converged": result.converged}
        for name, result in results.items()
    }
    rows = []
    for name, v in values.items():
        refined = results.get(name)
        nodes = refined.nodes if refined else 0
        difference = refined.difference if refined else 0.0
        rows.append([name, v.real, v.imag, abs(v - termwise), nodes, difference])
    return Artifact(
        payload={
            "command": "hadamard",
            "F": F_germ.name,
            "G": G_germ.name,
            "zeta": pair(zeta),
            "values": values,
            "quadrature": quadrature,
        },
        header=["method", "re", "im", "abs_diff_termwise", "nodes", "difference"],
        rows=rows,
        title=f"{F_germ.name} ⊙ {G_germ.name} at ζ={format_complex(zeta)}",
    )


def _parse_orders(text: str) -> list[tuple[int, int]]:
    orders = []
    for item in text.split(","):
        L, _, M = item.partition("/")
        try:
            orders.append((int(L), int(M)))
        except ValueError as e:
            raise InvalidParametersError(f"malformed Padé order {item!r}", module="cli") from e
    return orders


def cmd_scan(config: RunConfig, numerics: NumericsConfig) -> Artifact:
    germ = resolve_germ(config.germ)
    f = germ.coefficients(config.order)
    if config.extra["inverse"]:
        f = hadamard_inverse(f, numerics)
    expected = [parse_complex(s) for s in config.extra["expected"].split(",")]
    orders = _parse_orders(config.extra["orders"])
    report = scan_report(f, expected=expected, orders=orders, config=numerics)
    rows = [
        [pole.location.real, pole.location.imag, L, M, int(pole.spurious)]
        for (L, M), cloud in report.poles.items()
        for pole in cloud
    ]
    ratio = None
    if report.ratio is not None:
        ratio = {
            "location": report.ratio.locations[0],
            "spread": report.ratio.residuals[0],
            "oscillatory": report.ratio.oscillatory,
        }
    return Artifact(
        payload={
            "command": "scan",
            "germ": germ.name,
            "inverse": config.extra["inverse"],
            "ratio": ratio,
            "stable_poles": list(report.stable_poles),
            "cut_poles": list(report.cut_poles),
            "boundary_score": report.boundary_score,
            "confined": report.confined,
            "failures": report.failures,
            "caveat": report.caveat,
        },
        header=["re", "im", "order_L", "order_M", "spurious"],
        rows=rows,
        title=f"Singularity scan of {germ.name}",
    )


def _probe_source(pair_name: str) -> tuple[PointEvaluator, complex]:
    if pair_name == "delta":
        return PointEvaluator.delta(), 1.0 + 0j
    if pair_name == "example1":

        def rule(count: int):
            return hadamard_product(expand(RationalGerm(1.0, (0.0, 1.0)), count), log_over_zeta_coefficients(count))

        return partial_sum_evaluator(rule, name="example1 pair"), 1.0 + 0j
    if pair_name == "logvar":

        def log_rule(count: int):
            v = log_variation_coefficients(count)
            return hadamard_product(v, v)

        return partial_sum_evaluator(log_rule, name="log-variation pair"), 1.0 + 0j
    raise UnknownGermError(f"unknown probe pair {pair_name!r}; known: delta, example1, logvar", module="cli")


def cmd_probe(config: RunConfig, numerics: NumericsConfig) -> Artifact:
    evaluator, omega = _probe_source(config.extra["pair"])
    probe = LimitProbeConfig.geometric(config.extra["k_start"], config.extra["k_stop"])
    samples = limit_probe(evaluator, omega, config.extra["power"], probe)
    return Artifact(
        payload={
            "command": "probe",
            "pair": config.extra["pair"],
            "power": config.extra["power"],
            "samples": [{"offset": s.offset, "zeta": s.zeta, "scaled": s.scaled} for s in samples],
        },
        header=["offset", "re", "im", "abs_scaled"],
        rows=[[s.offset, s.scaled.real, s.scaled.imag, abs(s.scaled)] for s in samples],
        title=f"Limit probe of the {config.extra['pair']} pair",
    )


def _parse_f1(text: str, order: int) -> EntireFunctionJet:
    kind, _, value = text.partition(":")
    if kind == "const":
        return EntireFunctionJet.constant(parse_complex(value or "1"), order)
    if kind == "poly":
        return EntireFunctionJet.from_polynomial([parse_complex(v) for v in value.split("|")], order)
    if kind == "exp":
        return EntireFunctionJet.exponential(order)
    raise UnknownGermError(f"unknown f1 {text!r}; use const:c, poly:c0|c1|..., or exp", module="cli")


def cmd_volterra(config: RunConfig, numerics: NumericsConfig) -> Artifact:
    N = config.order
    A, B = parse_complex(config.extra["A"]), parse_complex(config.extra["B"])
    omega = parse_complex(config.extra["omega"])
    f1 = _parse_f1(config.extra["f1"], N)
    g1 = solve_g1(A, B, f1, omega, N, numerics)
    F = SingularJet(omega, A, f1.recentered(omega, N))
    G = SingularJet(omega, B, g1)
    conditions = check_inverse_conditions(F, G, f1, tol=config.tol)
    certificate = homogeneous_uniqueness(A, f1, omega, N, numerics)
    return Artifact(
        payload={
            "command": "volterra",
            "F": jet_to_dict(F),
            "G": jet_to_dict(G),
            "residue_residual": conditions.residue_residual,
            "log_residual": conditions.log_residual,
            "unique": certificate.unique,
            "conditioning": certificate.conditioning,
            "ill_conditioned": certificate.ill_conditioned,
        },
        header=["n", "re_g1", "im_g1"],
        rows=_coefficient_rows(g1.coeffs),
        title=f"Volterra solve, A={format_complex(A)}, B={format_complex(B)}",
    )


def cmd_demo(config: RunConfig, numerics: NumericsConfig) -> Artifact:
    rng = np.random.default_rng(config.seed)
    N = config.order
    checks: list[tuple[str, float]] = []

    def example(name: str, expected: Callable[[np.ndarray], np.ndarray]) -> float:
        G = hadamard_inverse(resolve_germ(name).coefficients(N), numerics)
        return float(np.max(np.abs(G.coeffs - expected(np.arange(N)))))

    steps: list[tuple[str, Callable[[], float]]] = [
        ("example1 inverse", lambda: example("example1", lambda n: 1.0 / (n + 1))),
        ("example2 inverse", lambda: example("example2", lambda n: 1.0 / ((n + 1) * (n + 3)))),
        ("ladder inverse", lambda: example("ladder-F", lambda n: np.where(n == 0, 1.0, 1.0 / (1.0 - np.exp2(-np.maximum(n, 1)))))),
        ("bm92 boundary score", lambda: natural_boundary_score(resolve_germ("bm92").coefficients(96), [(20, 20), (30, 30), (40, 40)])),
    ]
    for trial in range(5):
        M = int(rng.integers(1, 6))
        omega = complex(rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.uniform()))
        coeffs = tuple(complex(v) for v in rng.normal(size=M) + 1j * rng.normal(size=M))

        def random_recurrence(omega=omega, coeffs=coeffs) -> float:
            F = RationalGerm(omega, coeffs)
            return verify_recurrence(build_euler_operator(F), F, 200, numerics).max_residual

        steps.append((f"random recurrence #{trial} (M={M})", random_recurrence))

    with create_progress() as progress:
        task = progress.add_task("Running demo", total=len(steps))
        for name, step in steps:
            checks.append((name, step()))
            progress.advance(task)

    return Artifact(
        payload={"command": "demo", "seed": config.seed, "order": N, "checks": dict(checks)},
        header=["check", "value"],
        rows=[[name, value] for name, value in checks],
        title="hadamard-inverse demo",
    )


HANDLERS: dict[str, Callable[[RunConfig, NumericsConfig], Artifact]] = {
    "inverse": cmd_inverse,
    "ode": cmd_ode,
    "hadamard": cmd_hadamard,
    "scan": cmd_scan,
    "probe": cmd_probe,
    "volterra": cmd_volterra,
    "demo": cmd_demo,
}


# ==================== Parser ====================


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--germ", "-g", default="example1", help="catalog name (name:key=value,...) or .json germ file")
    common.add_argument("--order", "-N", type=int, default=64, help="truncation order (>= 8)")
    common.add_argument("--tol", type=float, default=1e-10, help="pass/fail tolerance")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised checks")
    common.add_argument("--out", type=Path, default=None, help="write the artifact here instead of stdout")
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    common.add_argument("--table", action="store_true", help="also render a table on stderr")
    common.add_argument("--ledger", type=Path, default=None, help="record the artifact in a TinyDB ledger")
    common.add_argument("--log-level", default="WARNING", choices=("DEBUG", "INFO", "WARNING", "ERROR"))

    parser = argparse.ArgumentParser(prog="hadamard-inverse", description="Hadamard products and inverses of germs")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("inverse", parents=[common], help="coefficients of F and its Hadamard inverse")
    sub.add_parser("ode", parents=[common], help="Euler operator annihilating the inverse of a single-pole germ")

    ph = sub.add_parser("hadamard", parents=[common], help="F ⊙ G at a point by contour integrals")
    ph.add_argument("--with", dest="with_germ", default="log", help="second factor G")
    ph.add_argument("--zeta", default="0.3")
    ph.add_argument("--radius", type=float, default=0.6)
    ph.add_argument("--nodes", type=int, default=256)
    ph.add_argument("--j-radius", type=float, default=0.3, help="J radius relative to |pole of F|")

    ps = sub.add_parser("scan", parents=[common], help="ratio test, Padé sweep and boundary score")
    ps.add_argument("--inverse", action="store_true", help="scan the Hadamard inverse of the germ")
    ps.add_argument("--expected", default="1", help="comma-separated expected singular points")
    ps.add_argument("--orders", default="12/12,16/16,20/20", help="Padé sweep, e.g. 12/12,16/16")

    pp = sub.add_parser("probe", parents=[common], help="(ζ-ω)^power·(F ⊙ G) approaching ω")
    pp.add_argument("--pair", default="example1", choices=("example1", "delta", "logvar"))
    pp.add_argument("--power", type=int, default=1)
    pp.add_argument("--k-start", type=int, default=1)
    pp.add_argument("--k-stop", type=int, default=12)

    pv = sub.add_parser("volterra", parents=[common], help="solve for g1 and check the inverse conditions")
    pv.add_argument("--A", dest="A", default="1")
    pv.add_argument("--B", dest="B", default="1")
    pv.add_argument("--f1", default="const:1", help="const:c, poly:c0|c1|..., or exp")
    pv.add_argument("--omega", default="1")

    sub.add_parser("demo", parents=[common], help="run the catalog examples and randomised checks")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    base = {"command", "germ", "order", "tol", "seed", "out", "fmt", "table", "ledger", "log_level"}
    extra = {k: v for k, v in vars(args).items() if k not in base}
    return RunConfig(
        command=args.command,
        germ=args.germ,
        order=args.order,
        tol=args.tol,
        seed=args.seed,
        out=args.out,
        fmt=args.fmt,
        table=args.table,
        ledger=args.ledger,
        extra=extra,
    )


def run(config: RunConfig, numerics: NumericsConfig | None = None) -> Artifact:
    """Execute one command and deliver its artifact."""
    numerics = numerics or DEFAULT_CONFIG
    with floating_point_logged():
        artifact = HANDLERS[config.command](config, numerics)
    text = artifact.render(config.fmt)
    if config.out is None:
        sys.stdout.write(text)
    else:
        config.out.parent.mkdir(parents=True, exist_ok=True)
        config.out.write_text(text, encoding="utf-8")
        logger.info(f"✅ Wrote {config.fmt} artifact to {config.out}")
    if config.table:
        render_rows(artifact.title, artifact.header, artifact.rows)
    if config.ledger is not None:
        with RunLedger(config.ledger) as ledger:
            ledger.save(config.run_name, json.loads(dumps_json(document(artifact.payload))))
    return artifact


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)
    try:
        run(_config_from_args(args))
    except HadamardError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
