"""Batch experiments: generate an instance grid, solve it, tabulate timings."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field
from typing import Optional

from ..errors import ChimeraQuboError, InvalidParameterError
from ..generators import FAMILIES, GenSpec, generate
from ..rng import derive_seed
from ..solvers import (HeuristicParams, run_restarts, solve_brute_force, solve_chimera_dp)
from .stats import compute_stats

METHODS = ("brute", "dp", "heur")

DETERMINISTIC_COLUMNS = ["family", "k", "index", "seed", "nodes", "edges", "value",
                         "reference", "gap", "proven_optimal", "error"]
TIMING_COLUMNS = ["seconds", "reference_seconds"]


@dataclass(frozen=True)
class ExperimentSpec:
    family: str
    ks: tuple
    per_cell: int = 50
    method: str = "dp"
    reference: Optional[str] = None
    params: Optional[HeuristicParams] = None
    seed: int = 0
    range: Optional[tuple] = None
    subset: Optional[frozenset] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidParameterError(f"unknown family {self.family!r}")
        for m in (self.method, self.reference):
            if m is not None and m not in METHODS:
                raise InvalidParameterError(f"unknown method {m!r}")
        if self.per_cell < 0:
            raise InvalidParameterError("per_cell must be >= 0")
        if self.family == "uniform-int-range" and self.range is None:
            object.__setattr__(self, "range", (-100, 100))


def solve_with(method: str, inst, params: Optional[HeuristicParams] = None):
    if method == "brute":
        return solve_brute_force(inst)
    if method == "dp":
        return solve_chimera_dp(inst)
    if params is None:
        params = HeuristicParams(restarts=8, max_iters=20000)
    return run_restarts(inst, params)


@dataclass
class Report:
    rows: list = field(default_factory=list)

    def cells(self):
        out = {}
        for row in self.rows:
            out.setdefault((row["family"], row["k"]), []).append(row)
        return out

    def summary(self) -> list:
        """One row per ``(family, k)`` with node/edge counts and time statistics."""
        table = []
        for (family, k), rows in self.cells().items():
            ok = [r for r in rows if not r["error"]]
            entry = {"family": family, "k": k, "graph": f"C{k}",
                     "nodes": rows[0]["nodes"], "edges": rows[0]["edges"],
                     "solved": len(ok), "failed": len(rows) - len(ok), "time": None, "gap": None}
            times = [r["seconds"] for r in ok if r["seconds"] > 0]
            if times:
                entry["time"] = compute_stats(times)
            gaps = [r["gap"] for r in ok if r["gap"] != ""]
            if gaps:
                entry["gap"] = compute_stats(gaps, geometric=False)
            table.append(entry)
        return table

    def to_csv(self, include_timing: bool = True) -> str:
        cols = DETERMINISTIC_COLUMNS + (TIMING_COLUMNS if include_timing else [])
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            out = dict(row)
            for c in TIMING_COLUMNS:
                if c in out and out[c] != "":
                    out[c] = f"{out[c]:.6f}"
            writer.writerow(out)
        return buf.getvalue()

    def to_text(self) -> str:
        """Aligned table: graph, nodes, edges, then time and gap summaries."""
        header = ["Family", "Graph", "nodes", "edges", "solved",
                  "Mean", "G. Mean", "Min", "Max", "Std. Dev.", "Mean gap", "Max gap"]
        lines = [header]
        for e in self.summary():
            row = [e["family"], e["graph"], str(e["nodes"]), str(e["edges"]),
                   f"{e['solved']}/{e['solved'] + e['failed']}"]
            row += e["time"].as_row(3) if e["time"] else ["-"] * 5
            if e["gap"]:
                row += [f"{e['gap'].arithmetic_mean:.2f}", f"{e['gap'].max:g}"]
            else:
                row += ["-", "-"]
            lines.append(row)
        widths = [max(len(r[i]) for r in lines) for i in range(len(header))]
        text = []
        for r in lines:
            text.append("  ".join(c.ljust(w) if i < 2 else c.rjust(w)
                                  for i, (c, w) in enumerate(zip(r, widths))).rstrip())
        return "\n".join(text) + "\n"


def _solve_row(family, k, index, seed, inst, method, reference, params):
    row = {"family": family, "k": k, "index": index, "seed": seed,
           "nodes": inst.topology.num_nodes, "edges": inst.topology.num_edges,
           "value": "", "reference": "", "gap": "", "proven_optimal": "", "error": "",
           "seconds": "", "reference_seconds": ""}
    try:
        t0 = time.perf_counter()
        res = solve_with(method, inst, params)
        row["seconds"] = time.perf_counter() - t0
        row["value"] = res.best_value
        row["proven_optimal"] = int(res.proven_optimal)
        if reference:
            t0 = time.perf_counter()
            ref = solve_with(reference, inst, params)
            row["reference_seconds"] = time.perf_counter() - t0
            row["reference"] = ref.best_value
            row["gap"] = res.best_value - ref.best_value
    except ChimeraQuboError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def run_experiment(spec: ExperimentSpec) -> Report:
    """Solve ``spec.per_cell`` seeded instances for every ``k`` in ``spec.ks``.

    Instance ``i`` of size ``k`` uses seed ``derive_seed(spec.seed, k, i)``, so
    families run with the same base seed share their random streams.  Solver
    errors are recorded in the row's ``error`` column and do not stop the run.
    """
    report = Report()
    for k in spec.ks:
        for index in range(spec.per_cell):
            seed = derive_seed(spec.seed, k, index)
            inst = generate(GenSpec(spec.family, k, seed, spec.subset, spec.range))
            report.rows.append(_solve_row(spec.family, k, index, seed, inst,
                                          spec.method, spec.reference, spec.params))
    return report


def run_on_instances(named, method: str = "dp", reference: Optional[str] = None,
                     params: Optional[HeuristicParams] = None, label: str = "input") -> Report:
    """Same report for already loaded instances, ``named`` being ``(name, inst)`` pairs."""
    report = Report()
    for index, (name, inst) in enumerate(named):
        row = _solve_row(label, inst.topology.k, index, "", inst, method, reference, params)
        row["seed"] = name
        report.rows.append(row)
    return report
