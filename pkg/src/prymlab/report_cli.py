"""Command-line driver: seeded pipelines and versioned JSON reports.

Exit codes: 0 when every verdict passes, 1 on a verification failure, 2 on
a precondition violation (unparsable input, singular or non-generic curve).
Everything except the ``timestamp`` field of a report is a deterministic
function of the command line.
"""

from __future__ import annotations

import json
import random
import sys
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

import click

from . import __version__
from .exact_algebra import PolyParseError
from .invariants_calculus import FUJIKI_HODGE, fujiki_euler, total_euler
from .luna_local_model import (
    ISOLATED_FIXED_POINTS,
    MukaiVector,
    VerificationError,
    derived_fixed_hyperplanes,
    flag_ideal,
    hyperplane_sets_match,
    incidence_oracle,
    invariant_generation_check,
    kappa_action_report,
    kappa_fixed_ideal,
    moduli_dimension,
    quadric_cone_model,
    variety_degree,
)
from .prym_combinatorics import (
    CASES,
    apply_iota,
    apply_kappa,
    apply_tau,
    boundary_gluing_constants,
    classify_stability,
    cross_ratio,
    indeterminacy_components,
    kappa_fixed,
    prym_fiber_model,
    random_fixed_sheaf,
    random_sheaf,
    semistable_bidegrees,
    theta_characteristics,
)
from .quartic_invariants import (
    ConfirmationError,
    CurveError,
    DegenerateEliminantError,
    NonGenericError,
    NonZeroDimensionalError,
    PlaneCurve,
    count_bitangents,
    count_flexes,
    default_primes,
    plucker_data,
    random_smooth_quartic,
)
from .quartic_invariants.intersection import ProjectionError
from .tangency_config import ConfigError, enumerate_strata, random_config

SCHEMA_VERSION = 1
MODES = ("full", "quartic-only", "prym-only", "local-only", "euler-only")


class PreconditionError(Exception):
    """Input cannot be processed (exit code 2)."""


class VerdictFailure(Exception):
    """A computed invariant disagrees with its expected value (exit code 1)."""


@dataclass
class RunConfig:
    seed: int = 0
    coefficient_bound: int = 10
    primes: list[int] = field(default_factory=list)
    degree_cap: int = 4
    mode: str = "full"
    timeout_seconds: float = 600.0

    def __post_init__(self):
        if self.mode not in MODES:
            raise PreconditionError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if not 0 <= self.seed < 2**64:
            raise PreconditionError("seed must be a 64-bit unsigned integer")
        if not self.primes:
            self.primes = default_primes()

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "coefficient_bound": self.coefficient_bound,
            "primes": list(self.primes),
            "degree_cap": self.degree_cap,
            "mode": self.mode,
            "timeout_seconds": self.timeout_seconds,
        }


def jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return {"num": str(x.numerator), "den": str(x.denominator)}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "as_dict"):
        return jsonable(x.as_dict())
    return x


class Pipeline:
    """Runs named stages in order, keeping a log, verdicts and timings."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.log: list[str] = []
        self.verdicts: dict[str, bool] = {}
        self.seconds: dict[str, float] = {}
        self.reports: dict[str, Any] = {}
        self.cache: dict[str, Any] = {}

    def stage(self, name: str, fn: Callable[[], dict]) -> dict:
        self.log.append(name)
        start = time.perf_counter()
        report = fn()
        elapsed = time.perf_counter() - start
        self.seconds[name] = round(elapsed, 3)
        if elapsed > self.cfg.timeout_seconds:
            report = dict(report, verdict=False, failure=f"stage exceeded {self.cfg.timeout_seconds} s")
        self.reports[name] = report
        self.verdicts[name] = bool(report.get("verdict", True))
        return report

    def document(self, command: str) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "prymlab_version": __version__,
            "command": command,
            "config": self.cfg.as_dict(),
            "stage_log": list(self.log),
            "verdicts": dict(self.verdicts),
            "passed": all(self.verdicts.values()),
            "report": jsonable(self.reports),
            "timestamp": {
                "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
                "stage_seconds": dict(self.seconds),
            },
        }


# -- stage implementations --------------------------------------------------------------


def load_curve(path: str | None, cfg: RunConfig) -> tuple[PlaneCurve, dict]:
    if path:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise PreconditionError(f"cannot read curve file: {exc}") from exc
        try:
            text = " ".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
            curve = PlaneCurve.parse(text)
        except (PolyParseError, CurveError) as exc:
            raise PreconditionError(f"cannot parse curve: {exc}") from exc
        return curve, {"source": str(path), "resamples": 0, "form": str(curve)}
    curve, rejected = random_smooth_quartic(cfg.seed, cfg.coefficient_bound)
    return curve, {"source": f"seed {cfg.seed}", "resamples": rejected, "form": str(curve)}


def _quartic(p: Pipeline, curve: PlaneCurve, what: str):
    if curve.degree != 4:
        raise PreconditionError(f"expected a quartic, got degree {curve.degree}")
    if what not in p.cache:
        counter = count_bitangents if what == "bitangents" else count_flexes
        try:
            p.cache[what] = counter(curve, p.cfg.primes, p.cfg.seed)
        except (NonZeroDimensionalError, ProjectionError, DegenerateEliminantError) as exc:
            raise PreconditionError(f"curve is too special for the {what} count: {exc}") from exc
    return p.cache[what]


def stage_bitangents(p: Pipeline, curve: PlaneCurve, expect_generic: bool) -> dict:
    rep = _quartic(p, curve, "bitangents")
    ok = rep.total_with_multiplicity == 28 and (rep.generic or not expect_generic)
    return {"verdict": ok, "bitangents": rep.total_with_multiplicity, **rep.as_dict()}


def stage_flexes(p: Pipeline, curve: PlaneCurve, expect_generic: bool) -> dict:
    rep = _quartic(p, curve, "flexes")
    ok = rep.total_with_multiplicity == 24 and (rep.generic or not expect_generic)
    return {"verdict": ok, "flexes": rep.total_with_multiplicity, **rep.as_dict()}


def stage_plucker(p: Pipeline, curve: PlaneCurve, expect_generic: bool) -> dict:
    _quartic(p, curve, "bitangents")
    _quartic(p, curve, "flexes")
    data = plucker_data(curve, p.cfg.primes, p.cfg.seed, p.cache["flexes"], p.cache["bitangents"])
    ok = data.dual_degree == 12 and (data.genus_check == 3 or not (expect_generic or data.generic))
    return {"verdict": ok, **data.as_dict()}


def _config(p: Pipeline):
    if "config" not in p.cache:
        try:
            p.cache["config"] = random_config(p.cfg.seed, p.cfg.coefficient_bound)
        except ConfigError as exc:
            raise PreconditionError(str(exc)) from exc
    return p.cache["config"]


def stage_config(p: Pipeline) -> dict:
    cfg = _config(p)
    return {"verdict": cfg.tangency_points == 8, **cfg.as_dict()}


def stage_strata(p: Pipeline, dual_check: bool = True) -> dict:
    cfg = _config(p)
    try:
        strata = enumerate_strata(cfg, p.cfg.primes, p.cfg.seed, with_dual_intersection=dual_check)
    except ConfigError as exc:
        raise PreconditionError(str(exc)) from exc
    p.cache["strata"] = strata
    expected = {"Pi2": 24, "Pi4": 28, "Pi5": 24, "Pi6": 128, "Pi7": 8, "Pi8": 28}
    got = {s.label: s.cardinality for s in strata if s.label in expected}
    return {"verdict": got == expected, "strata": [s.as_dict() for s in strata]}


def stage_euler(p: Pipeline) -> dict:
    strata = p.cache.get("strata")
    if strata is None:
        stage_strata(p)
        strata = p.cache["strata"]
    rep = total_euler(strata)
    nonzero = [(c.label, c.base_chi, c.fiber_chi) for c in rep.nonzero]
    ok = rep.total == 268 and nonzero == [("Pi4", 28, 4), ("Pi6", 128, 1), ("Pi8", 28, 1)]
    return {"verdict": ok and rep.comparison["distinct_from_fujiki_examples"], **rep.as_dict()}


def stage_stability(p: Pipeline) -> dict:
    tables = {}
    for k in (4, 3):
        tables[str(k)] = {
            str(s): [[d, dp, v] for d, dp, v in semistable_bidegrees(k, s)] for s in range(5)
        }
    even = {(d - 2, dp - 2) for d, dp, _ in semistable_bidegrees(4, 4)}
    odd = {(d, dp) for d, dp, _ in semistable_bidegrees(3, 4)}
    indet = {
        f"k={k},{q}": [c.as_dict() for c in indeterminacy_components(k, q)] for k in (4, 3) for q in ("C", "C'")
    }
    return {
        "verdict": odd == {(0, 3), (1, 2), (2, 1), (3, 0)} and len(even) == 5,
        "tables": tables,
        "even_s4_offsets": sorted(even),
        "indeterminacy": indet,
    }


def stage_involutions(p: Pipeline, samples: int = 100) -> dict:
    rng = random.Random(f"involutions:{p.cfg.seed}")
    patterns = [(), (0, 1), (2, 3), (0,), (0, 1, 2, 3)]
    bad = 0
    for split in patterns:
        for _ in range(samples):
            F = random_sheaf(rng, split, m=rng.randint(-3, 3))
            if apply_tau(apply_tau(F)) != F or apply_iota(apply_iota(F)) != F:
                bad += 1
            if apply_kappa(apply_kappa(F)) != F or apply_tau(apply_iota(F)) != apply_iota(apply_tau(F)):
                bad += 1
    fixed_ok = all(kappa_fixed(random_fixed_sheaf(rng)) for _ in range(samples))
    thetas = theta_characteristics((1, -1, 2, -2))
    return {
        "verdict": bad == 0 and fixed_ok and len(thetas) == 2,
        "violations": bad,
        "fixed_locus_check": fixed_ok,
        "theta_characteristics": [[str(x) for x in t.gluing] for t in thetas],
    }


def stage_fibers(p: Pipeline) -> dict:
    models = {c: prym_fiber_model(c) for c in CASES}
    euler = {c: m.euler for c, m in models.items()}
    nonzero = {c: e for c, e in euler.items() if e}
    return {"verdict": nonzero == {"iv": 4, "vi": 1, "viii": 1}, "models": [m.as_dict() for m in models.values()]}


def stage_glue(p: Pipeline, nodes=(1, -1, 2, -2)) -> dict:
    consts = boundary_gluing_constants(nodes)
    z = [Fraction(x) for x in nodes]
    cr = cross_ratio(*z)
    return {
        "verdict": consts["horizontal"] == cr**2,
        "nodes": [str(x) for x in z],
        "horizontal": consts["horizontal"],
        "vertical": consts["vertical"],
        "cross_ratio": cr,
        "product": consts["horizontal"] * consts["vertical"],
    }


def stage_local(p: Pipeline) -> dict:
    cap = p.cfg.degree_cap
    I = kappa_fixed_ideal()
    table = I.hilbert_table(cap)
    from math import comb

    veronese_ok = all(table[d] == comb(2 * d + 3, 3) for d in table)
    degree = variety_degree({d: table[d] for d in range(1, 5)}, 3) if cap >= 4 else None
    flag = flag_ideal()
    flag_table = {d: flag.hilbert(d) for d in range(min(cap, 3) + 1)}
    flag_ok = all(flag_table[d] == incidence_oracle(d) for d in flag_table)
    quad = quadric_cone_model()
    kap = kappa_action_report()
    ok = (
        veronese_ok
        and (degree in (None, 8))
        and flag_ok
        and hyperplane_sets_match()
        and all(kap.values())
        and quad["rank"] == 8
        and quad["quotient_dimension"] == 6
        and invariant_generation_check(max_degree=min(cap, 4))
    )
    return {
        "verdict": ok,
        "kappa_fixed_hilbert": table,
        "kappa_fixed_with_trace_hilbert": kappa_fixed_ideal(include_trace=True).hilbert_table(cap),
        "variety_degree": degree,
        "flag_hilbert": flag_table,
        "fixed_hyperplanes": [list(h) for h in derived_fixed_hyperplanes()],
        "quadric_cone": quad,
        "kappa_action": kap,
        "mukai_dimension": moduli_dimension(MukaiVector(0, 1, 2)),
        "isolated_fixed_points": ISOLATED_FIXED_POINTS,
    }


# -- CLI plumbing -------------------------------------------------------------------


def _emit(doc: dict, json_path: str | None, summary: list[str]) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if json_path == "-":
        click.echo(text)
    else:
        for line in summary:
            click.echo(line)
        if json_path:
            Path(json_path).write_text(text + "\n")


def _execute(command: str, cfg_kwargs: dict, body: Callable[[Pipeline], list[str]], json_path: str | None) -> None:
    try:
        cfg = RunConfig(**cfg_kwargs)
        pipe = Pipeline(cfg)
        summary = body(pipe)
    except (PreconditionError, CurveError, NonGenericError, PolyParseError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except (ConfirmationError, VerificationError, VerdictFailure) as exc:
        click.echo(f"verification failed: {exc}", err=True)
        sys.exit(1)
    doc = pipe.document(command)
    failed = [k for k, v in pipe.verdicts.items() if not v]
    if failed:
        summary = summary + [f"FAILED: {', '.join(failed)}"]
    _emit(doc, json_path, summary)
    sys.exit(1 if failed else 0)


def common(fn):
    fn = click.option("--json", "json_path", type=click.Path(dir_okay=False), help="write the JSON report here ('-' for stdout)")(fn)
    fn = click.option("--prime", "primes", type=int, multiple=True, help="check prime (repeatable)")(fn)
    fn = click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)(fn)
    return fn


def _kw(seed, primes, **extra) -> dict:
    return {"seed": seed, "primes": list(primes), **extra}


@click.group()
@click.version_option(__version__)
def main() -> None:
    """Exact computations for Prym fibrations over totally tangent quartic pairs."""


def _curve_command(name: str, stage: Callable):
    @main.command(name)
    @common
    @click.option("--curve", "curve_path", type=str, default=None, help="file with a ternary quartic in X, Y, Z")
    @click.option("--bound", default=10, show_default=True, help="coefficient bound for random quartics")
    def cmd(seed, primes, json_path, curve_path, bound):
        def body(p: Pipeline) -> list[str]:
            curve, meta = load_curve(curve_path, p.cfg)
            p.stage("curve", lambda: {"verdict": True, **meta})
            rep = p.stage(name, lambda: stage(p, curve, curve_path is None))
            key = {"bitangents": "bitangents", "flexes": "flexes", "plucker": "dual_degree"}[name]
            return [f"{name}: {rep[key]}" + (f" (genus check {rep['genus_check']})" if name == "plucker" else "")]

        _execute(name, _kw(seed, primes, coefficient_bound=bound), body, json_path)

    cmd.__doc__ = f"Report the {name} data of a quartic."
    return cmd


_curve_command("bitangents", stage_bitangents)
_curve_command("flexes", stage_flexes)
_curve_command("plucker", stage_plucker)


@main.command("config-check")
@common
def config_check(seed, primes, json_path):
    """Build and validate a seeded totally tangent configuration."""

    def body(p: Pipeline) -> list[str]:
        rep = p.stage("config", lambda: stage_config(p))
        return [f"config: {rep['tangency_points']} tangency points on q = 0 (resamples {rep['resamples']})"]

    _execute("config-check", _kw(seed, primes), body, json_path)


@main.command("strata")
@common
@click.option("--no-dual-check", is_flag=True, help="skip the modular dual intersection count")
def strata_cmd(seed, primes, json_path, no_dual_check):
    """Enumerate the strata of the dual plane with cardinalities."""

    def body(p: Pipeline) -> list[str]:
        p.stage("config", lambda: stage_config(p))
        rep = p.stage("strata", lambda: stage_strata(p, not no_dual_check))
        return [f"{s['label']}: {s['cardinality']} (case {s['fiber_case']})" for s in rep["strata"]]

    _execute("strata", _kw(seed, primes), body, json_path)


@main.command("stability")
@click.option("--k", "k", type=int, required=True)
@click.option("--s", "s", type=click.IntRange(0, 4), required=True)
@click.option("--polarization", type=click.Choice(["H", "H_eps", "H_eps_swapped"]), default="H", show_default=True)
@click.option("--window", default=6, show_default=True)
@click.option("--json", "json_path", type=click.Path(dir_okay=False))
def stability_cmd(k, s, polarization, window, json_path):
    """List semistable bidegrees for the given k and number of glued nodes."""

    def body(p: Pipeline) -> list[str]:
        rows = semistable_bidegrees(k, s, polarization, window)

        def run() -> dict:
            return {
                "k": k,
                "s": s,
                "polarization": polarization,
                "bidegrees": [[d, dp, v] for d, dp, v in rows],
                "verdicts_checked": (2 * window + 1) ** 2,
                "sample": classify_stability(k // 2, k // 2, s, k, polarization),
            }

        p.stage("stability", run)
        return [f"({d}, {dp}) {v}" for d, dp, v in rows] or ["no semistable bidegrees"]

    _execute("stability", {"mode": "prym-only"}, body, json_path)


@main.command("prym-fiber")
@click.option("--case", "case", type=click.Choice(list(CASES)), required=True)
@click.option("--json", "json_path", type=click.Path(dir_okay=False))
def prym_fiber_cmd(case, json_path):
    """Strata and Euler number of the Prym fiber over a singular member."""

    def body(p: Pipeline) -> list[str]:
        model = prym_fiber_model(case)
        p.stage("prym-fiber", lambda: {"verdict": True, **model.as_dict()})
        return [f"{s.name}: {s.space}  chi={s.euler}" for s in model.strata] + [f"total chi = {model.euler}"]

    _execute("prym-fiber", {"mode": "prym-only"}, body, json_path)


@main.command("glue-constants")
@click.option("--nodes", default="1,-1,2,-2", show_default=True, help="z1,z2,z3,z4 with z2=-z1, z4=-z3")
@click.option("--json", "json_path", type=click.Path(dir_okay=False))
def glue_constants_cmd(nodes, json_path):
    """Boundary gluing constants of the open torus of the reducible fiber."""

    def body(p: Pipeline) -> list[str]:
        try:
            z = tuple(Fraction(x.strip()) for x in nodes.split(","))
        except (ValueError, ZeroDivisionError) as exc:
            raise PreconditionError(f"bad node list {nodes!r}") from exc
        try:
            rep = p.stage("glue-constants", lambda: stage_glue(p, z))
        except ValueError as exc:
            raise PreconditionError(str(exc)) from exc
        return [f"horizontal = {rep['horizontal']}", f"vertical = {rep['vertical']}", f"cross ratio = {rep['cross_ratio']}"]

    _execute("glue-constants", {"mode": "prym-only"}, body, json_path)


@main.command("local-model")
@click.option("--max-degree", default=4, show_default=True, type=click.IntRange(1, 6))
@click.option("--json", "json_path", type=click.Path(dir_okay=False))
def local_model_cmd(max_degree, json_path):
    """Hilbert functions, degree and fixed hyperplanes of the local model."""

    def body(p: Pipeline) -> list[str]:
        rep = p.stage("local-model", lambda: stage_local(p))
        return [
            f"kappa-fixed Hilbert: {rep['kappa_fixed_hilbert']}",
            f"degree: {rep['variety_degree']}",
            f"flag Hilbert: {rep['flag_hilbert']}",
        ]

    _execute("local-model", {"mode": "local-only", "degree_cap": max_degree}, body, json_path)


@main.command("euler")
@common
def euler_cmd(seed, primes, json_path):
    """Stratified Euler number of the Prym fibration for a seeded configuration."""

    def body(p: Pipeline) -> list[str]:
        _euler_stages(p)
        rep = p.reports["euler"]
        return [f"chi = {rep['total']} (Fujiki: {rep['comparison']['fujiki']})"]

    _execute("euler", _kw(seed, primes, mode="euler-only"), body, json_path)


def _euler_stages(p: Pipeline) -> None:
    p.stage("config", lambda: stage_config(p))
    p.stage("strata", lambda: stage_strata(p))
    p.stage("prym-fibers", lambda: stage_fibers(p))
    p.stage("euler", lambda: stage_euler(p))
    p.stage(
        "fujiki",
        lambda: {"verdict": fujiki_euler(*FUJIKI_HODGE) == 226, "hodge": list(FUJIKI_HODGE), "euler": fujiki_euler(*FUJIKI_HODGE)},
    )


def run_pipeline(cfg: RunConfig) -> Pipeline:
    """Execute the stages selected by ``cfg.mode``."""
    p = Pipeline(cfg)
    mode = cfg.mode
    if mode in ("full", "quartic-only"):
        curve, meta = load_curve(None, cfg)
        p.stage("curve", lambda: {"verdict": True, **meta})
        p.stage("bitangents", lambda: stage_bitangents(p, curve, True))
        p.stage("flexes", lambda: stage_flexes(p, curve, True))
        p.stage("plucker", lambda: stage_plucker(p, curve, True))
    if mode in ("full", "euler-only"):
        _euler_stages(p)
    if mode in ("full", "prym-only"):
        p.stage("stability", lambda: stage_stability(p))
        p.stage("involutions", lambda: stage_involutions(p))
        if "prym-fibers" not in p.log:
            p.stage("prym-fibers", lambda: stage_fibers(p))
        p.stage("glue-constants", lambda: stage_glue(p))
    if mode in ("full", "local-only"):
        p.stage("local-model", lambda: stage_local(p))
    return p


@main.command("run")
@common
@click.option("--mode", type=click.Choice(MODES), default="full", show_default=True)
@click.option("--max-degree", default=4, show_default=True, type=click.IntRange(4, 6))
@click.option("--bound", default=10, show_default=True)
@click.option("--timeout", "timeout_seconds", default=600.0, show_default=True)
def run_cmd(seed, primes, json_path, mode, max_degree, bound, timeout_seconds):
    """Run the pipeline stages selected by --mode."""
    kwargs = _kw(seed, primes, mode=mode, degree_cap=max_degree, coefficient_bound=bound, timeout_seconds=timeout_seconds)
    try:
        cfg = RunConfig(**kwargs)
        pipe = run_pipeline(cfg)
    except (PreconditionError, CurveError, NonGenericError, PolyParseError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except (ConfirmationError, VerificationError) as exc:
        click.echo(f"verification failed: {exc}", err=True)
        sys.exit(1)
    doc = pipe.document("run")
    summary = [f"{name}: {'pass' if ok else 'FAIL'}" for name, ok in pipe.verdicts.items()]
    r = pipe.reports
    if "bitangents" in r:
        summary.append(f"bitangents = {r['bitangents']['bitangents']}, flexes = {r['flexes']['flexes']}")
    if "euler" in r:
        summary.append(f"chi = {r['euler']['total']}")
    _emit(doc, json_path, summary)
    sys.exit(0 if doc["passed"] else 1)


if __name__ == "__main__":  # pragma: no cover
    main()
