"""Command line front end.

Exit status: 0 on success, 1 on a usage error, 2 on a data error (bad
instance file, infeasible parameters for the chosen solver, ...).
"""

from __future__ import annotations

import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

import click

from .bench import fileio
from .bench.experiment import METHODS, ExperimentSpec, run_experiment, run_on_instances
from .bench.stats import compute_stats
from .errors import ChimeraQuboError, InvalidParameterError
from .formulations import MILP_MODES, MIQP_REPAIRS, build_milp, build_miqp
from .generators import FAMILIES, GenSpec, generate
from .instances import IsingInstance, ising_to_qubo, qubo_to_ising, strip_fields
from .lpformat import emit_lp
from .solvers import HeuristicParams, run_restarts, solve_brute_force, solve_chimera_dp


def _read_subset(path):
    if path is None:
        return None
    return frozenset(int(tok) for tok in Path(path).read_text().split())


def _heuristic_params(restarts, budget_ms, max_iters, seed, pert, target=None):
    if budget_ms is None and max_iters is None:
        max_iters = 20000
    return HeuristicParams(
        restarts=restarts,
        perturbation_fraction=Fraction(pert),
        max_iters=max_iters,
        time_limit=None if budget_ms is None else budget_ms / 1000.0,
        seed=seed,
        target=target,
    )


def _emit(text, out):
    if out is None or out == "-":
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)


@click.group()
def cli():
    """Generate, convert, formulate and solve QUBO/Ising instances on Chimera graphs."""


@cli.command()
@click.option("--family", type=click.Choice(FAMILIES), required=True)
@click.option("--k", "k", type=int, required=True, help="Chimera grid size.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--count", type=int, default=1, show_default=True,
              help="Number of instances; seeds seed, seed+1, ...")
@click.option("--lo", type=int, default=-100, show_default=True)
@click.option("--hi", type=int, default=100, show_default=True)
@click.option("--subset", type=click.Path(exists=True, dir_okay=False),
              help="File of whitespace-separated node indices to keep.")
@click.option("--out-dir", type=click.Path(file_okay=False), default=".", show_default=True)
def gen(family, k, seed, count, lo, hi, subset, out_dir):
    """Write COUNT generated instance files to OUT_DIR."""
    Path(out_dir).mkdir(parents=True, exist_ok=True)
    keep = _read_subset(subset)
    rng = (lo, hi) if family == "uniform-int-range" else None
    for i in range(count):
        spec = GenSpec(family, k, seed + i, keep, rng)
        path = Path(out_dir) / f"{family}_k{k}_s{seed + i}.txt"
        fileio.write_instance(generate(spec), path,
                              comments=[f"family={family} k={k} seed={seed + i}"])
        click.echo(str(path))


@cli.command()
@click.argument("src", type=click.Path(exists=True, dir_okay=False))
@click.argument("dst", type=click.Path(dir_okay=False))
@click.option("--to", "to", type=click.Choice(["qubo", "ising"]))
@click.option("--strip-fields", "strip", is_flag=True, help="Zero all Ising fields.")
def convert(src, dst, to, strip):
    """Convert SRC between Ising and QUBO form and write DST."""
    inst = fileio.read_instance(src)
    comments = []
    if strip:
        if not isinstance(inst, IsingInstance):
            raise InvalidParameterError("--strip-fields needs an Ising instance")
        inst = strip_fields(inst)
    if to == "qubo" and isinstance(inst, IsingInstance):
        inst = ising_to_qubo(inst)
    elif to == "ising" and not isinstance(inst, IsingInstance):
        inst, offset = qubo_to_ising(inst)
        comments.append(f"4 * qubo(x) = ising(2x - 1) + {offset}")
    fileio.write_instance(inst, dst, comments)


@cli.command()
@click.argument("src", type=click.Path(exists=True, dir_okay=False))
@click.option("--form", type=click.Choice(["milp", "miqp"]), default="milp", show_default=True)
@click.option("--mode", type=click.Choice(MILP_MODES), default="full", show_default=True)
@click.option("--repair", type=click.Choice(MIQP_REPAIRS), default="none", show_default=True)
@click.option("--out", default="-", help="Output path, '-' for stdout.")
def emit(src, form, mode, repair, out):
    """Write the LP file of SRC (Ising inputs are converted to QUBO first)."""
    inst = fileio.read_instance(src)
    if isinstance(inst, IsingInstance):
        inst = ising_to_qubo(inst)
    model = build_milp(inst, mode) if form == "milp" else build_miqp(inst, repair)
    _emit(emit_lp(model), out)


@cli.command()
@click.argument("src", type=click.Path(exists=True, dir_okay=False))
@click.option("--method", type=click.Choice(METHODS), default="heur", show_default=True)
@click.option("--restarts", type=int, default=8, show_default=True)
@click.option("--budget-ms", type=float, help="Wall-clock budget per restart.")
@click.option("--max-iters", type=int, help="Move budget per restart.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--pert", default="1/30", show_default=True, help="Perturbation fraction.")
@click.option("--target", type=int, help="Stop a restart once this value is reached.")
@click.option("--cap", type=int, default=26, show_default=True, help="Brute-force node limit.")
@click.option("--max-k", type=int, default=4, show_default=True, help="DP grid limit.")
@click.option("--json", "as_json", is_flag=True, help="Print the full result as JSON.")
def solve(src, method, restarts, budget_ms, max_iters, seed, pert, target, cap, max_k, as_json):
    """Solve one instance file."""
    inst = fileio.read_instance(src)
    if method == "brute":
        res = solve_brute_force(inst, cap=cap)
    elif method == "dp":
        res = solve_chimera_dp(inst, max_k=max_k)
    else:
        try:
            params = _heuristic_params(restarts, budget_ms, max_iters, seed, pert, target)
        except (ValueError, ZeroDivisionError) as exc:
            raise click.UsageError(str(exc))
        res = run_restarts(inst, params)
    if as_json:
        click.echo(json.dumps({
            "value": res.best_value, "proven_optimal": res.proven_optimal,
            "iterations": res.iterations, "seconds": res.elapsed, "method": res.method,
            "assignment": {str(v): x for v, x in res.best_assignment.items()},
        }, indent=1))
    else:
        click.echo(f"value {res.best_value}")
        click.echo(f"proven_optimal {str(res.proven_optimal).lower()}")
        click.echo(f"seconds {res.elapsed:.6f}")


@cli.command()
@click.option("--family", type=click.Choice(FAMILIES))
@click.option("--k", "ks", type=int, multiple=True, help="Grid size; repeat for several.")
@click.option("--input", "inputs", type=click.Path(exists=True, dir_okay=False), multiple=True,
              help="Instance files to solve instead of generating.")
@click.option("--count", type=int, default=50, show_default=True, help="Instances per k.")
@click.option("--method", type=click.Choice(METHODS), default="dp", show_default=True)
@click.option("--reference", type=click.Choice(METHODS), help="Exact method for the gap column.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--restarts", type=int, default=8, show_default=True)
@click.option("--budget-ms", type=float)
@click.option("--max-iters", type=int)
@click.option("--pert", default="1/30", show_default=True)
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), help="Per-instance CSV output.")
@click.option("--no-timing", is_flag=True, help="Leave timing columns out of the CSV.")
def bench(family, ks, inputs, count, method, reference, seed, restarts, budget_ms, max_iters,
          pert, csv_path, no_timing):
    """Run an experiment grid and print a summary table."""
    try:
        params = _heuristic_params(restarts, budget_ms, max_iters, seed, pert)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.UsageError(str(exc))
    if inputs:
        named = [(p, fileio.read_instance(p)) for p in inputs]
        report = run_on_instances(named, method, reference, params)
    else:
        if family is None:
            raise click.UsageError("give --family or --input")
        report = run_experiment(ExperimentSpec(family, tuple(ks), count, method, reference,
                                               params, seed))
    if csv_path:
        Path(csv_path).write_text(report.to_csv(include_timing=not no_timing))
    click.echo(report.to_text(), nl=False)


@cli.command()
@click.argument("src", type=click.Path(exists=True, dir_okay=False))
@click.option("--column", default="seconds", show_default=True,
              help="CSV column to summarize; plain files hold one number per line.")
def stats(src, column):
    """Recompute summary statistics from a results file."""
    text = Path(src).read_text()
    groups = {}
    first = text.lstrip().split("\n", 1)[0]
    if "," in first:
        for row in csv.DictReader(text.splitlines()):
            if column not in row:
                raise InvalidParameterError(f"no column {column!r}")
            if row[column] in ("", None) or row.get("error"):
                continue
            key = (row.get("family", ""), row.get("k", ""))
            groups.setdefault(key, []).append(Fraction(row[column]))
    else:
        try:
            groups[("", "")] = [Fraction(tok) for tok in text.split()]
        except ValueError as exc:
            raise InvalidParameterError(str(exc)) from None
    click.echo("group,count,mean,geo_mean,min,max,std_dev")
    for (family, k), values in groups.items():
        positive = all(v > 0 for v in values)
        st = compute_stats(values, geometric=positive)
        gm = "" if st.geometric_mean is None else f"{st.geometric_mean:.6g}"
        label = f"{family} C{k}" if family else "all"
        click.echo(f"{label},{st.count},{st.arithmetic_mean:.6g},{gm},"
                   f"{st.min:.6g},{st.max:.6g},{st.std_dev:.6g}")


def main(argv=None):
    try:
        cli.main(args=argv, prog_name="chimera-qubo", standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except ChimeraQuboError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
