"""End-to-end runs: ingest or generate, profile, fit, compare, write artifacts."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .boxcover import DEFAULT_REPETITIONS
from .entropy import EXACT, MODES
from .errors import DengDimError
from .fit import (DENG, DSUMMABLE, LOG_BASES, EntropyProfile, ModelComparison,
                  build_profile, compare, fit_deng, fit_dsummable, fit_report)
from .graph import Network, largest_component, read_edge_list, require_connected
from .synthgen import GenSpec, generate

log = logging.getLogger(__name__)

OUT_ENV = "DENGDIM_OUT"
DEFAULT_OUT = "dengdim-out"
EMIT_ALL = frozenset({"profile", "fits", "plot", "row"})

TABLE_COLUMNS = ["name", "nodes", "edges", "d_D", "d_dD", "nu"]
PROVENANCE_COLUMNS = ["seed", "repetitions", "mode", "log_base"]
BATCH_COLUMNS = TABLE_COLUMNS + [
    "r2adj_D", "r2adj_dD", "aic_min", "delta_aic_D", "delta_aic_dD", "selected",
] + PROVENANCE_COLUMNS + ["status", "error"]


def default_out_dir() -> str:
    return os.environ.get(OUT_ENV, DEFAULT_OUT)


def fmt(v) -> str:
    """17 significant digits for floats; everything else via str."""
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


@dataclass
class RunConfig:
    input: str | None = None
    gen: str | None = None
    seed: int = 0
    repetitions: int = DEFAULT_REPETITIONS
    mode: str = EXACT
    log_base: str = "e"
    emax: int | None = None
    out_dir: str | None = None
    largest_component: bool = False
    emit: frozenset = EMIT_ALL
    workers: int = 1
    name: str | None = None

    def validate(self):
        if (self.input is None) == (self.gen is None):
            raise ValueError("exactly one of input and gen must be given")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.log_base not in LOG_BASES:
            raise ValueError(f"log_base must be one of {LOG_BASES}")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        unknown = set(self.emit) - EMIT_ALL
        if unknown:
            raise ValueError(f"unknown emit flags {sorted(unknown)}")


class StageError(DengDimError):
    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[{stage}] {type(cause).__name__}: {cause}")


@dataclass
class RunResult:
    network: Network
    profile: EntropyProfile
    comparison: ModelComparison
    config: RunConfig
    artifacts: dict = field(default_factory=dict)

    @property
    def deng(self):
        return self.comparison.fit(DENG)

    @property
    def dsummable(self):
        return self.comparison.fit(DSUMMABLE)

    def table_row(self) -> dict:
        return {
            "name": self.network.name,
            "nodes": self.network.node_count,
            "edges": self.network.edge_count,
            "d_D": self.deng.d,
            "d_dD": self.dsummable.d,
            "nu": self.dsummable.nu,
            "seed": self.config.seed,
            "repetitions": self.config.repetitions,
            "mode": self.config.mode,
            "log_base": self.config.log_base,
        }

    def batch_row(self) -> dict:
        c = self.comparison
        row = self.table_row()
        row.update({
            "r2adj_D": self.deng.r2_adj, "r2adj_dD": self.dsummable.r2_adj,
            "aic_min": c.aic_min, "delta_aic_D": c.delta_aic_deng,
            "delta_aic_dD": c.delta_aic_dsummable, "selected": c.selected,
            "status": "ok", "error": "",
        })
        return row


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (DengDimError, ValueError, OSError) as exc:
        raise StageError(name, exc) from exc


def load_network(config: RunConfig) -> Network:
    if config.input is not None:
        g = _stage("ingest", read_edge_list, config.input, config.name)
    else:
        spec = _stage("generate", GenSpec.parse, config.gen, config.seed)
        g = _stage("generate", generate, spec)
    if config.largest_component:
        g = largest_component(g)
    _stage("ingest", require_connected, g)
    return g


def analyze(config: RunConfig) -> RunResult:
    """Run the pipeline without writing anything."""
    _stage("config", config.validate)
    g = load_network(config)
    profile = _stage("cover", build_profile, g, seed=config.seed,
                     repetitions=config.repetitions, mode=config.mode,
                     emax=config.emax, workers=config.workers)
    fd = _stage("fit", fit_deng, profile, config.log_base)
    fs = _stage("fit", fit_dsummable, profile, config.log_base)
    comparison = _stage("fit", compare, fd, fs)
    return RunResult(g, profile, comparison, config)


def run(config: RunConfig) -> RunResult:
    """Analyze and write the requested artifacts to ``config.out_dir``."""
    result = analyze(config)
    _stage("emit", write_artifacts, result)
    return result


def artifact_stem(result: RunResult) -> str:
    name = result.network.name or "network"
    safe = "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in name)
    return f"{safe}_s{result.config.seed}"


def profile_csv(result: RunResult) -> str:
    p = result.profile
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["epsilon", "n_boxes", "entropy_bits", "nonspecificity", "discord", "mode",
                "n_boxes_variance", "seed", "repetitions"])
    for i, eps in enumerate(p.epsilons):
        w.writerow([eps, p.n_boxes[i], fmt(p.entropies[i]), fmt(p.nonspecificity[i]),
                    fmt(p.discord[i]), p.mode, fmt(p.n_boxes_variance[i]), p.seed, p.repetitions])
    return buf.getvalue()


def fits_json(result: RunResult) -> str:
    report = fit_report(result.profile, result.comparison, result.config.log_base)
    report["nodes"] = result.network.node_count
    report["edges"] = result.network.edge_count
    report["delta"] = result.profile.delta
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def table_row_csv(result: RunResult, header: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = TABLE_COLUMNS + PROVENANCE_COLUMNS
    if header:
        w.writerow(cols)
    row = result.table_row()
    w.writerow([fmt(row[c]) for c in cols])
    return buf.getvalue()


def plot_svg(result: RunResult, path: str) -> None:
    import matplotlib
    from matplotlib.figure import Figure

    # fixed salt keeps SVG element ids, and so the file bytes, reproducible
    matplotlib.rcParams["svg.hashsalt"] = "dengdim"
    p = result.profile
    eps, y = p.arrays()
    grid = np.linspace(eps[0], eps[-1], 200)
    fig = Figure(figsize=(5, 4))
    ax = fig.add_subplot()
    ax.plot(eps, y, "o", color="k", label="Deng entropy")
    for f, style in ((result.deng, "--"), (result.dsummable, "-")):
        label = f"{f.model}: d={f.d:.4g}" + (f", nu={f.nu:.4g}" if f.nu is not None else "")
        ax.plot(grid, f.predict(grid), style, label=label)
    ax.set_xlabel("box diameter")
    ax.set_ylabel("Deng entropy (bits)")
    ax.set_title(f"{result.network.name} (seed {p.seed}, {p.mode}, log {result.config.log_base})")
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})


def write_artifacts(result: RunResult) -> dict:
    out = result.config.out_dir or default_out_dir()
    os.makedirs(out, exist_ok=True)
    stem = os.path.join(out, artifact_stem(result))
    emit = result.config.emit
    written = {}
    writers = {
        "profile": ("_profile.csv", profile_csv),
        "fits": ("_fits.json", fits_json),
        "row": ("_row.csv", table_row_csv),
    }
    for key, (suffix, render) in writers.items():
        if key in emit:
            path = stem + suffix
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(render(result))
            written[key] = path
    if "plot" in emit:
        path = stem + "_plot.svg"
        plot_svg(result, path)
        written["plot"] = path
    result.artifacts = written
    return written


def _error_row(config: RunConfig, exc: Exception) -> dict:
    row = {c: "" for c in BATCH_COLUMNS}
    row.update({
        "name": config.name or config.input or config.gen or "",
        "seed": config.seed, "repetitions": config.repetitions,
        "mode": config.mode, "log_base": config.log_base,
        "status": "error", "error": str(exc),
    })
    return row


def batch(configs: list[RunConfig], workers: int = 1, write: bool = True) -> list[dict]:
    """One row per config; a failing config yields an error row instead of aborting."""
    if not configs:
        raise ValueError("batch needs at least one config")

    def one(cfg):
        try:
            res = run(cfg) if write else analyze(cfg)
        except StageError as exc:
            log.warning("batch entry %s failed: %s", cfg.input or cfg.gen, exc)
            return _error_row(cfg, exc)
        return res.batch_row()

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, configs))
    return [one(c) for c in configs]


def batch_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BATCH_COLUMNS)
    for row in rows:
        w.writerow([fmt(row.get(c)) for c in BATCH_COLUMNS])
    return buf.getvalue()
