# Versch Forge - Verschiebung Equations Toolkit
# Copyright (C) 2025 Versch Forge Project
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""
Versch Forge command line.

    python cli.py kummer-eq --field 2^4/0x13 --curve 1,1,1
    python cli.py fiber-census --map hw1 --field 2^8 --samples 200 --seed 0
    python cli.py polar3 find --field 3^2 --seed 1
    python cli.py selftest --scale full

Reports go to stdout as canonical JSON (or --text); progress goes to stderr.
Exit status: 0 success, 1 usage or input error, 2 verification failure.
"""

import json
import logging
import os
import sys
from datetime import datetime, timezone

import click

from config import settings
from geometry.errors import VerificationFailure, VerschError
from utils import commands
from utils.reporting import STATUS_ERROR, STATUS_FAILED, STATUS_OK, Report, canonical_json, error_report

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2


def log(message):
    """Timestamped progress line on stderr."""
    timestamp = datetime.now(timezone.utc).strftime("%Y-%m-%d %H:%M:%S")
    click.echo(f"[{timestamp}] {message}", err=True)


def render_text(report):
    lines = [f"{report.command} [{report.status}]"]
    if report.field:
        lines.append(f"field: {report.field}")
    if report.seed is not None:
        lines.append(f"seed: {report.seed}")
    for key in sorted(report.outputs):
        value = report.outputs[key]
        if isinstance(value, (dict, list)):
            value = canonical_json(value).strip()
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def emit(report, fmt="json", timing=False):
    """Write the report unless running quietly; returns it for run()."""
    ctx = click.get_current_context()
    if not ctx.obj.get("quiet"):
        if fmt == "text":
            click.echo(render_text(report), nl=False)
        else:
            click.echo(report.to_json(timing=timing), nl=False)
        if report.wall_time is not None:
            log(f"{report.command} finished in {report.wall_time:.2f}s ({report.status})")
    return report


def output_options(f):
    f = click.option("--timing", is_flag=True, help="Include wall time in the report.")(f)
    f = click.option("--text", "fmt", flag_value="text", help="Plain text instead of JSON.")(f)
    f = click.option("--json", "fmt", flag_value="json", default=True, help="Canonical JSON (default).")(f)
    return f


def field_option(default=None):
    if default is None:
        return click.option("--field", required=True, help="Field spec p^n[/modulus].")
    return click.option("--field", default=default, show_default=True, help="Field spec p^n[/modulus].")


def seed_option(f):
    return click.option("--seed", type=int, default=None, help="PRNG seed (default VERSCH_DEFAULT_SEED).")(f)


def _seed(ctx, seed):
    return seed if seed is not None else ctx.obj["config"].get("VERSCH_DEFAULT_SEED", 0)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--threads", type=int, default=None, help="Worker threads (default VERSCH_THREADS).")
@click.option("-v", "--verbose", is_flag=True, help="Log library progress to stderr.")
@click.pass_context
def cli(ctx, threads, verbose):
    """Explicit Verschiebung equations for genus-2 curves."""
    ctx.ensure_object(dict)
    ctx.obj.setdefault("config", settings())
    ctx.obj["threads"] = threads if threads is not None else ctx.obj["config"].get("VERSCH_THREADS", 1)
    if verbose:
        logging.basicConfig(
            level=logging.INFO,
            stream=sys.stderr,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        )


@cli.command("kummer-eq")
@field_option()
@click.option("--curve", required=True, help="a,b,c")
@output_options
def kummer_eq(field, curve, fmt, timing):
    """Kummer quartic of the curve and its lambda^2 values."""
    return emit(commands.kummer_eq(field, curve), fmt, timing)


@cli.command("verify-kummer")
@field_option()
@click.option("--curve", required=True, help="a,b,c")
@click.option("--lambda-sq", default=None, help="Override lambda^2 as l0,l1,linf.")
@output_options
def verify_kummer(field, curve, lambda_sq, fmt, timing):
    """Abel-Jacobi certificate for the Kummer relation."""
    return emit(commands.verify_kummer(field, curve, lambda_sq), fmt, timing)


@cli.command("versch-eq")
@click.option("--case", type=click.Choice(["ordinary", "hw1"]), required=True)
@field_option()
@click.option("--curve", default=None, help="a,b,c (ordinary case).")
@click.option("--lambdas", default=None, help="l00,l01,l10,l11 (hw1 case).")
@output_options
def versch_eq(case, field, curve, lambdas, fmt, timing):
    """The four degree-2 forms of a Verschiebung map."""
    return emit(commands.versch_eq(case, field, curve, lambdas), fmt, timing)


@cli.command("fiber-census")
@click.option("--map", "case", type=click.Choice(["ordinary", "hw1"]), default="hw1", show_default=True)
@field_option()
@click.option("--samples", type=int, default=None, help="Targets per class (default VERSCH_CENSUS_SAMPLES).")
@click.option("--curve", default=None)
@click.option("--lambdas", default=None)
@seed_option
@output_options
@click.pass_context
def fiber_census(ctx, case, field, samples, curve, lambdas, seed, fmt, timing):
    """Exhaustive rational fibers over sampled targets."""
    config = ctx.obj["config"]
    samples = samples if samples is not None else config.get("VERSCH_CENSUS_SAMPLES", 200)
    report = commands.census(
        case,
        field,
        samples=samples,
        seed=_seed(ctx, seed),
        curve_text=curve,
        lambdas_text=lambdas,
        threads=ctx.obj["threads"],
        config=config,
    )
    return emit(report, fmt, timing)


@cli.command("specialize")
@field_option("2^6")
@click.option("--lambda", "lam", required=True)
@click.option("--mu", default="0", show_default=True)
@click.option("--nu", default="auto", show_default=True)
@output_options
@click.pass_context
def specialize(ctx, field, lam, mu, nu, fmt, timing):
    """Specialise the ordinary family to the Hasse-Witt one limit."""
    window = ctx.obj["config"].get("VERSCH_DEGEN_WINDOW", 40)
    return emit(commands.specialize_family(field, lam, mu, nu, window), fmt, timing)


@cli.group("polar3")
def polar3():
    """Characteristic-3 polar maps of Kummer quartics."""


@polar3.command("find")
@field_option("3^2")
@click.option("--budget", type=int, default=None, help="Parameter samples (default VERSCH_POLAR_BUDGET).")
@click.option("--strategy", type=click.Choice(["seeded", "random"]), default="seeded", show_default=True)
@seed_option
@output_options
@click.pass_context
def polar3_find(ctx, field, budget, strategy, seed, fmt, timing):
    """Search the Heisenberg family for a 16-nodal quartic."""
    budget = budget if budget is not None else ctx.obj["config"].get("VERSCH_POLAR_BUDGET", 100000)
    log(f"Searching {field} with budget {budget}")
    report = commands.polar3_find(field, budget, _seed(ctx, seed), strategy, ctx.obj["threads"])
    return emit(report, fmt, timing)


@polar3.command("analyze")
@field_option("3^2")
@click.option("--quartic", required=True, help="A,B,C,D,E")
@click.option("--targets", type=int, default=1, show_default=True)
@seed_option
@output_options
@click.pass_context
def polar3_analyze(ctx, field, quartic, targets, seed, fmt, timing):
    """Nodes, tropes, image Kummer and degree counts for one quartic."""
    report = commands.polar3_analyze(
        field,
        quartic,
        seed=_seed(ctx, seed),
        targets=targets,
        max_extension=ctx.obj["config"].get("VERSCH_MAX_EXTENSION", 12),
        threads=ctx.obj["threads"],
    )
    return emit(report, fmt, timing)


@cli.command("selftest")
@click.option("--scale", type=click.Choice(["quick", "full"]), default="full", show_default=True)
@click.option("--only", default=None, help="Comma-separated check numbers.")
@click.option("--corpus/--no-corpus", default=True, show_default=True, help="Also replay the regression corpus.")
@seed_option
@output_options
@click.pass_context
def selftest(ctx, scale, only, corpus, seed, fmt, timing):
    """Run the acceptance checks."""
    selected = commands.parse_codes(only, name="check list") if only else None
    report = commands.selftest(scale, _seed(ctx, seed), ctx.obj["threads"], selected, ctx.obj["config"])
    if corpus:
        replay = replay_corpus(ctx.obj["config"]["VERSCH_CORPUS_DIR"])
        report.outputs["corpus"] = replay
        if not replay["ok"]:
            report.status = STATUS_FAILED
    return emit(report, fmt, timing)


@cli.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=5000, show_default=True)
def serve(host, port):
    """Development server for the report API."""
    from app import create_app

    create_app().run(host=host, port=port, debug=False)


# ----------------------------------------------------------------------
# Regression corpus
# ----------------------------------------------------------------------


def _subset_mismatches(expected, actual, path=""):
    if isinstance(expected, dict):
        if not isinstance(actual, dict):
            return [path or "/"]
        out = []
        for key, value in expected.items():
            if key not in actual:
                out.append(f"{path}/{key}")
            else:
                out.extend(_subset_mismatches(value, actual[key], f"{path}/{key}"))
        return out
    return [] if expected == actual else [path or "/"]


def replay_corpus(directory):
    """Run every corpus entry and compare its expected keys."""
    results = []
    names = sorted(n for n in os.listdir(directory) if n.endswith(".json")) if os.path.isdir(directory) else []
    for name in names:
        with open(os.path.join(directory, name)) as handle:
            entry = json.load(handle)
        code, report = execute(entry["argv"])
        actual = json.loads(report.to_json())
        mismatches = _subset_mismatches(entry["expected"], actual)
        results.append({"entry": name, "exit": code, "mismatches": mismatches, "ok": code == entry.get("exit", 0) and not mismatches})
    return {"entries": len(results), "results": results, "ok": all(r["ok"] for r in results)}


def record_entry(directory, name, argv):
    """Run argv and store its full report as corpus entry NAME; returns (path, exit code)."""
    os.makedirs(directory, exist_ok=True)
    code, report = execute(list(argv))
    path = os.path.join(directory, f"{name}.json")
    entry = {"argv": list(argv), "exit": code, "expected": json.loads(report.to_json())}
    with open(path, "w") as handle:
        handle.write(json.dumps(entry, sort_keys=True, indent=2) + "\n")
    return path, code


@cli.group("corpus", context_settings={"ignore_unknown_options": True})
def corpus():
    """Regression corpus of command runs."""


@corpus.command("replay")
@click.option("--dir", "directory", default=None, help="Corpus directory (default VERSCH_CORPUS_DIR).")
@output_options
@click.pass_context
def corpus_replay(ctx, directory, fmt, timing):
    directory = directory or ctx.obj["config"]["VERSCH_CORPUS_DIR"]
    result = replay_corpus(directory)
    report = Report(command="corpus replay", outputs=result, status=STATUS_OK if result["ok"] else STATUS_FAILED)
    return emit(report, fmt, timing)


@corpus.command("record", context_settings={"ignore_unknown_options": True})
@click.argument("name")
@click.argument("argv", nargs=-1, type=click.UNPROCESSED)
@click.option("--dir", "directory", default=None)
@click.pass_context
def corpus_record(ctx, name, argv, directory):
    """Run a command and store its report as the expected output."""
    directory = directory or ctx.obj["config"]["VERSCH_CORPUS_DIR"]
    path, code = record_entry(directory, name, argv)
    log(f"Recorded {path} (exit {code})")
    return Report(command="corpus record", inputs={"name": name, "argv": list(argv)}, outputs={"path": path, "exit": code})


# ----------------------------------------------------------------------
# Entry points
# ----------------------------------------------------------------------


def _exit_code(report):
    return EXIT_OK if report.status == STATUS_OK else EXIT_VERIFICATION


def execute(argv, quiet=True):
    """
    Run one command line and return (exit code, Report).  Errors become error
    reports instead of exceptions.
    """
    argv = list(argv)
    command = " ".join(a for a in argv[:2] if not a.startswith("-")) or "versch"
    try:
        result = cli.main(args=argv, prog_name="versch", standalone_mode=False, obj={"quiet": quiet})
    except click.ClickException as e:
        return EXIT_USAGE, error_report(command, ValueError(e.format_message()))
    except click.exceptions.Abort:
        return EXIT_USAGE, error_report(command, ValueError("Aborted"))
    except VerificationFailure as e:
        return EXIT_VERIFICATION, error_report(command, e)
    except (VerschError, ValueError) as e:
        return EXIT_USAGE, error_report(command, e)
    if isinstance(result, Report):
        return _exit_code(result), result
    # --help and serve
    return int(result or 0), Report(command=command)


def run(argv=None):
    """CLI entry point: report on stdout, exit code returned."""
    argv = sys.argv[1:] if argv is None else argv
    code, report = execute(argv, quiet=False)
    if report.status == STATUS_ERROR:
        click.echo(report.to_json(), nl=False)
        log(f"{report.outputs.get('error')}: {report.outputs.get('message')}")
    return code


if __name__ == "__main__":
    sys.exit(run())
