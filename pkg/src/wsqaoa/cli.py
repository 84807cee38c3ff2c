"""
``qaoa-ws`` command-line front end.

Subcommands write CSV (and for ``sweep-theta`` an SVG) into ``--out``.
Exit codes: 0 success, 1 usage or parse error, 2 size-guard refusal,
3 verification or audit failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from . import bounds, toy
from .core import MAX_DENSE_QUBITS, MixerSpec, Statevector, mixer_dense
from .errors import InvalidInputError, SizeGuardError, WsQaoaError
from .problems import (
    Objective,
    complete_graph,
    load_graph,
    load_objective,
    maxcut_objective,
    toy_objective,
)
from .qaoa import QaoaParams, optimize_params, run_qaoa
from .report import loglog_svg, write_csv
from .verification import DEFAULT_THETA_GRID, run_suite
from .warmstart import WarmStart, aligned_mixer, from_bitstring, load_warmstart, to_statevector

log = logging.getLogger("wsqaoa")

EXIT_OK, EXIT_USAGE, EXIT_SIZE, EXIT_FAILED = 0, 1, 2, 3
COMMANDS = ("simulate", "bounds", "sweep-theta", "toy", "verify")


@dataclass
class ExperimentConfig:
    command: str = "simulate"
    graph: str | None = None
    objective: str | None = None
    toy: bool = False
    bitstring: str | None = None
    warmstart: str | None = None
    theta: float | None = None
    theta_grid: list[float] | None = None
    depth: int | None = None
    depth_range: tuple[int, int] | None = None
    delta_lambda: float = 0.5
    budget: int = 2000
    seed: int = 42
    out: str = "out"
    mixer: str = "auto"
    gammas: list[float] | None = None
    betas: list[float] | None = None
    workers: int = 1
    count: int = 50
    simulate: bool = True

    def depths(self, default: tuple[int, int]) -> list[int]:
        if self.depth is not None:
            return [self.depth]
        lo, hi = self.depth_range or default
        return list(range(lo, hi + 1))

    def thetas(self, default=DEFAULT_THETA_GRID) -> list[float]:
        if self.theta_grid:
            return list(self.theta_grid)
        if self.theta is not None:
            return [self.theta]
        return list(default)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _float_list(text: str) -> list[float]:
    try:
        return [_angle(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _angle(text: str) -> float:
    """Parse a float, also accepting 'pi' expressions such as pi/3 or 2*pi."""
    text = text.strip().lower()
    if "pi" in text:
        num, _, den = text.partition("/")
        coeff = num.replace("pi", "").rstrip("*").strip()
        value = {"": 1.0, "-": -1.0}.get(coeff, None)
        value = (float(coeff) if value is None else value) * math.pi
        return value / float(den) if den else value
    return float(text)


def _depth_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"depth range must look like A..B, got {text!r}") from None
    if not sep or a < 0 or b < a:
        raise argparse.ArgumentTypeError(f"invalid depth range {text!r}")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qaoa-ws", description="Warm-started QAOA simulation and depth bounds")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--graph", help="edge-list file (MAX-CUT instance)")
    parser.add_argument("--objective", help="JSON objective table {n, values}")
    parser.add_argument("--toy", action="store_true", default=None,
                        help="single-qubit toy instance c(x) = x driven by Z")
    parser.add_argument("--bitstring", help="corresponding bitstring of an at-theta warm-start")
    parser.add_argument("--warmstart", help="warm-start JSON file")
    parser.add_argument("--theta", type=_angle)
    parser.add_argument("--theta-grid", type=_float_list)
    parser.add_argument("--depth", type=int)
    parser.add_argument("--depth-range", type=_depth_range)
    parser.add_argument("--delta-lambda", type=float)
    parser.add_argument("--budget", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out")
    parser.add_argument("--config", help="JSON config file; flags override its values")
    parser.add_argument("--mixer", choices=("auto", "aligned", "tf"))
    parser.add_argument("--gammas", type=_float_list, help="fixed gammas (skips optimization)")
    parser.add_argument("--betas", type=_float_list, help="fixed betas (skips optimization)")
    parser.add_argument("--workers", type=int)
    parser.add_argument("--count", type=int, help="random instances for verify")
    parser.add_argument("--no-simulate", dest="simulate", action="store_false", default=None,
                        help="sweep-theta: bounds only")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def load_config(argv=None) -> ExperimentConfig:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    values: dict = {}
    if args.config:
        try:
            doc = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidInputError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(doc, dict):
            raise InvalidInputError("config file must hold a JSON object")
        values.update({k.replace("-", "_"): v for k, v in doc.items()})
    values.update({k: v for k, v in vars(args).items()
                   if v is not None and k not in ("config", "verbose")})

    known = {f.name for f in fields(ExperimentConfig)}
    unknown = sorted(set(values) - known)
    if unknown:
        raise InvalidInputError(f"unknown config keys: {', '.join(unknown)}")
    if isinstance(values.get("depth_range"), str):
        values["depth_range"] = _depth_range(values["depth_range"])
    if isinstance(values.get("theta_grid"), str):
        values["theta_grid"] = _float_list(values["theta_grid"])
    return ExperimentConfig(**values)


# --------------------------------------------------------------------------- #
# Instance assembly
# --------------------------------------------------------------------------- #


@dataclass
class Instance:
    obj: Objective
    phase_costs: np.ndarray | None = None


def load_instance(cfg: ExperimentConfig, max_n: int = MAX_DENSE_QUBITS) -> Instance:
    sources = [s for s in (cfg.graph, cfg.objective) if s] + (["toy"] if cfg.toy else [])
    if len(sources) > 1:
        raise InvalidInputError("choose at most one of --graph, --objective, --toy")
    if cfg.toy:
        inst = Instance(toy_objective(), toy.Z_DIAGONAL)
    elif cfg.graph:
        inst = Instance(maxcut_objective(load_graph(cfg.graph)))
    elif cfg.objective:
        inst = Instance(load_objective(cfg.objective))
    else:
        inst = Instance(maxcut_objective(complete_graph(3)))
    if inst.obj.n > max_n:
        raise SizeGuardError(f"instance has n={inst.obj.n} > {max_n} qubits")
    return inst


def _bitstring(cfg: ExperimentConfig, n: int) -> str:
    b = cfg.bitstring or "0" * n
    if len(b) != n:
        raise InvalidInputError(f"bitstring {b!r} has length {len(b)}, instance has n={n}")
    return b


def _initial(cfg: ExperimentConfig, n: int, theta: float | None):
    """(warm-start or None, initial state, mixer) for one run."""
    ws: WarmStart | None = None
    if cfg.warmstart:
        ws = load_warmstart(cfg.warmstart)
    elif theta is not None:
        ws = from_bitstring(_bitstring(cfg, n), theta)
    if ws is not None and ws.n != n:
        raise InvalidInputError(f"warm-start has {ws.n} qubits, instance has n={n}")
    init = to_statevector(ws) if ws else Statevector.uniform(n)
    if cfg.mixer == "tf" or (cfg.mixer == "auto" and ws is None):
        mixer = MixerSpec.transverse_field(n)
    else:
        if ws is None:
            raise InvalidInputError("aligned mixer needs a warm-start (--theta or --warmstart)")
        mixer = aligned_mixer(ws)
    return ws, init, mixer


# --------------------------------------------------------------------------- #
# Commands
# --------------------------------------------------------------------------- #

RUN_COLUMNS = ["n", "theta", "p", "gamma_star", "beta_star", "expectation",
               "lambda_i", "lambda_f", "delta_lambda", "optimizer_evals", "seed"]


def cmd_simulate(cfg: ExperimentConfig) -> int:
    inst = load_instance(cfg)
    obj = inst.obj
    thetas = [None] if (cfg.theta is None and not cfg.theta_grid) else cfg.thetas()
    fixed = cfg.gammas is not None or cfg.betas is not None
    rows = []
    for theta in thetas:
        _, init, mixer = _initial(cfg, obj.n, theta)
        lam_i = run_qaoa(obj, init, mixer, QaoaParams((), ())).lam
        previous = None
        for p in cfg.depths(default=(1, 1)):
            if fixed:
                params = QaoaParams(cfg.gammas or (), cfg.betas or ())
                if params.p != p:
                    raise InvalidInputError(f"--gammas/--betas give depth {params.p}, run asks for p={p}")
                result = run_qaoa(obj, init, mixer, params, inst.phase_costs)
                evals = 0
            else:
                result = optimize_params(obj, init, mixer, p, cfg.budget, cfg.seed,
                                         inst.phase_costs,
                                         extra_starts=[previous] if previous else ())
                evals = result.evaluations
                previous = result.params
            rows.append({
                "n": obj.n, "theta": theta, "p": p,
                "gamma_star": list(result.params.gammas), "beta_star": list(result.params.betas),
                "expectation": result.expectation, "lambda_i": lam_i, "lambda_f": result.lam,
                "delta_lambda": result.lam - lam_i, "optimizer_evals": evals, "seed": cfg.seed,
            })
            log.info("theta=%s p=%d lambda_f=%.6f", theta, p, result.lam)
    path = write_csv(Path(cfg.out) / "runs.csv", RUN_COLUMNS, rows)
    print(f"wrote {path} ({len(rows)} rows)")
    return EXIT_OK


BOUND_COLUMNS = ["theta", "mixer_kind", "commutator_norm", "p_min", "finite",
                 "f_of_c", "within_theta_lower"]


def cmd_bounds(cfg: ExperimentConfig) -> int:
    inst = load_instance(cfg, max_n=bounds.F_MAX_QUBITS)
    sep = bounds.PhaseSeparator.from_objective(inst.obj)
    n = inst.obj.n
    b = _bitstring(cfg, n)
    f = bounds.f_of_c(sep)
    dl = cfg.delta_lambda
    tf = bounds.pmin_for_mixer(dl, sep, MixerSpec.transverse_field(n))
    rows = [{"mixer_kind": tf.mixer_kind, "commutator_norm": tf.commutator_norm,
             "p_min": tf.p_min, "finite": tf.finite, "f_of_c": f}]
    for theta in cfg.thetas():
        if not 0 <= theta <= math.pi / 2:
            raise InvalidInputError(f"theta {theta} outside [0, pi/2]")
        db = bounds.pmin_for_mixer(dl, sep, aligned_mixer(from_bitstring(b, theta)))
        rows.append({"theta": theta, "mixer_kind": db.mixer_kind,
                     "commutator_norm": db.commutator_norm, "p_min": db.p_min,
                     "finite": db.finite, "f_of_c": f,
                     "within_theta_lower": bounds.within_theta_lower(dl, theta, f)})
    path = write_csv(Path(cfg.out) / "bounds.csv", BOUND_COLUMNS, rows)
    if dl <= 0:
        print("note: delta_lambda <= 0, every bound is vacuous")
    print(f"wrote {path} ({len(rows)} rows)")
    return EXIT_OK


SWEEP_COLUMNS = ["theta", "p", "commutator_norm", "p_min", "finite", "lambda_i",
                 "lambda_f", "delta_lambda", "theorem_bound", "audit_pass"]


def _sweep_point(task):
    """One (theta, p) simulation; module-level so worker processes can pickle it."""
    cfg, theta, p = task
    inst = load_instance(cfg)
    obj = inst.obj
    sep = bounds.PhaseSeparator.from_objective(obj)
    ws = from_bitstring(_bitstring(cfg, obj.n), theta)
    init, mixer = to_statevector(ws), aligned_mixer(ws)
    result = optimize_params(obj, init, mixer, p, cfg.budget, cfg.seed, inst.phase_costs)
    dl = bounds.delta_lambda_achieved(obj, init, result.final_state)
    tb = bounds.theorem_bound(result.final_state, mixer_dense(mixer.as_shifted()), dl, sep)
    lam_i = float(init.probabilities() @ obj.values) / obj.c_max
    return {"lambda_i": lam_i, "lambda_f": result.lam, "delta_lambda": dl,
            "theorem_bound": tb, "audit_pass": bool(p >= tb)}


def loglog_slope(xs, ys) -> float:
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def cmd_sweep_theta(cfg: ExperimentConfig) -> int:
    inst = load_instance(cfg, max_n=bounds.F_MAX_QUBITS)
    sep = bounds.PhaseSeparator.from_objective(inst.obj)
    b = _bitstring(cfg, inst.obj.n)
    thetas = cfg.thetas()
    if not thetas:
        raise InvalidInputError("theta grid is empty")
    for theta in thetas:
        if not 0 < theta <= math.pi / 2:
            raise InvalidInputError(f"sweep thetas must lie in (0, pi/2], got {theta}")

    per_theta = {
        theta: bounds.pmin_for_mixer(cfg.delta_lambda, sep, aligned_mixer(from_bitstring(b, theta)))
        for theta in thetas
    }
    depths = cfg.depths(default=(1, 3)) if cfg.simulate else []
    tasks = [(cfg, theta, p) for theta in thetas for p in depths]
    if cfg.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            sims = list(pool.map(_sweep_point, tasks))
    else:
        sims = [_sweep_point(t) for t in tasks]
    sim_by_key = {(t[1], t[2]): s for t, s in zip(tasks, sims)}

    rows = []
    for theta in thetas:
        db = per_theta[theta]
        base = {"theta": theta, "commutator_norm": db.commutator_norm,
                "p_min": db.p_min, "finite": db.finite}
        if not depths:
            rows.append(base)
        for p in depths:
            rows.append({**base, "p": p, **sim_by_key[(theta, p)]})

    out = Path(cfg.out)
    csv_path = write_csv(out / "sweep.csv", SWEEP_COLUMNS, rows)
    series = [("p_min (delta_lambda=%g)" % cfg.delta_lambda, "#1f77b4",
               [(t, per_theta[t].p_min) for t in thetas], "left")]
    if depths:
        top = depths[-1]
        series.append((f"achieved delta_lambda at p={top}", "#d62728",
                       [(t, sim_by_key[(t, top)]["delta_lambda"]) for t in thetas], "right"))
    svg_path = loglog_svg(out / "sweep.svg", "Depth lower bound vs initialization angle",
                          "theta (rad)", series)
    print(f"wrote {csv_path} ({len(rows)} rows) and {svg_path}")

    small = [t for t in thetas if t <= 0.2 and per_theta[t].finite]
    if len(small) >= 2:
        slope = loglog_slope(small, [per_theta[t].p_min for t in small])
        print(f"log-log slope of p_min vs theta over theta <= 0.2: {slope:.6f}")

    failed = [r for r in rows if r.get("audit_pass") is False]
    if failed:
        for r in failed:
            print(f"AUDIT FAILURE theta={r['theta']:.6g} p={r['p']} "
                  f"theorem_bound={r['theorem_bound']:.6g}", file=sys.stderr)
        return EXIT_FAILED
    if depths:
        print(f"audit: {len(rows)} simulated points satisfy p >= theorem bound")
    return EXIT_OK


TOY_COLUMNS = ["theta", "p", "analytic_lambda", "simulated_lambda", "deviation"]
TOY_DEPTH_COLUMNS = ["delta_lambda", "theta", "p_required"]


def cmd_toy(cfg: ExperimentConfig) -> int:
    thetas = cfg.thetas(default=(0.1, 0.2, 0.3, 0.5))
    rows, depth_rows = [], []
    for theta in thetas:
        for p in cfg.depths(default=(0, 5)):
            analytic = toy.toy_lambda(p, theta)
            simulated, _ = toy.toy_simulate(p, theta)
            rows.append({"theta": theta, "p": p, "analytic_lambda": analytic,
                         "simulated_lambda": simulated, "deviation": abs(simulated - analytic)})
        req = toy.toy_required_depth(cfg.delta_lambda, theta) if theta > 0 else None
        depth_rows.append({"delta_lambda": cfg.delta_lambda, "theta": theta,
                           "p_required": "unreachable" if req is None else req})
    out = Path(cfg.out)
    a = write_csv(out / "toy.csv", TOY_COLUMNS, rows)
    b = write_csv(out / "toy_depth.csv", TOY_DEPTH_COLUMNS, depth_rows)
    print(f"wrote {a} and {b}")
    worst = max(r["deviation"] for r in rows)
    return EXIT_OK if worst <= 1e-9 else EXIT_FAILED


def cmd_verify(cfg: ExperimentConfig) -> int:
    results = run_suite(cfg.seed, cfg.count)
    width = max(len(r.name) for r in results)
    print(f"{'check':<{width}}  cases  max deviation  tolerance  status")
    for r in results:
        print(f"{r.name:<{width}}  {r.cases:>5}  {r.max_deviation:>13.3e}  "
              f"{r.tolerance:>9.0e}  {'PASS' if r.passed else 'FAIL'}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


HANDLERS = {
    "simulate": cmd_simulate,
    "bounds": cmd_bounds,
    "sweep-theta": cmd_sweep_theta,
    "toy": cmd_toy,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    try:
        cfg = load_config(argv)
        return HANDLERS[cfg.command](cfg)
    except SizeGuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (WsQaoaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
