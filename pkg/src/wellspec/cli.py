"""CLI entry point for wellspec."""

import functools
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple

import click
import numpy as np
from dotenv import load_dotenv
from pydantic import ValidationError

from . import __version__
from .config import Mode, RegressorKind, RunConfig, WellspecSettings
from .errors import InputError
from .indtest.hsic import HsicMethod
from .procedures.baseline import single_split_baseline
from .procedures.multisplit import run_multisplit
from .procedures.screening import screen_target
from .procedures.validation import validate_interventions
from .rankdep.codec import codec_t
from .rankdep.foci import foci_select
from .rankdep.transforms import TransformMode, transform_g
from .regressors.registry import get_registry
from .scmlab.experiment import simulate as run_simulation
from .scmlab.scm import ScmSpec
from .scmlab.suites import SUITE_NAMES
from .tabular.dataset import load_csv, read_header
from .tabular.rng import Stream, derive_rng
from .utils.logging import setup_logging

logger = logging.getLogger(__name__)

CODEC_MIN_ROWS = 2
CSV_FLOAT_FORMAT = "%.17g"


def handle_errors(func: Callable[..., Any]) -> Callable[..., Any]:
    """Map input errors to exit code 2 and anything else to exit code 1."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except click.ClickException:
            raise
        except (InputError, ValidationError) as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(2)
        except Exception as e:
            logger.error(f"Internal error: {e}", exc_info=True)
            click.echo(f"Internal error: {e}", err=True)
            sys.exit(1)

    return wrapper


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        click.echo(text)
    else:
        out.write_text(text + "\n", encoding="utf-8")
        logger.info(f"Wrote {out}")


def _settings() -> WellspecSettings:
    try:
        return WellspecSettings.from_env()
    except ValueError as e:
        raise InputError(f"invalid WELLSPEC_* environment: {e}") from e


def _run_config(settings: WellspecSettings, overrides: Dict[str, Any]) -> RunConfig:
    """Environment defaults with CLI overrides applied; ``None`` means not given."""
    data = settings.run.model_dump(mode="json")
    for key, value in overrides.items():
        if value is None:
            continue
        if isinstance(value, dict):
            data[key] = {**data[key], **{k: v for k, v in value.items() if v is not None}}
        else:
            data[key] = value
    return RunConfig.model_validate(data)


@click.group()
@click.version_option(version=__version__, prog_name="wellspec")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    help="Log level (default: WELLSPEC_LOG or INFO)",
)
def cli(log_level: Optional[str]) -> None:
    """Wellspec - causal well-specification of nonlinear noise models."""
    load_dotenv()
    setup_logging(log_level or os.getenv("WELLSPEC_LOG", "INFO"))


@cli.command()
@click.option("--input", "-i", "input_path", type=click.Path(path_type=Path), required=True, help="Input CSV with a header row")
@click.option("--target", "-t", required=True, help="Target column name")
@click.option("--mode", type=click.Choice([m.value for m in Mode]), help="Noise model (default: anm)")
@click.option("--splits", "-B", type=int, help="Number of random splits B (default: 25)")
@click.option("--alpha", type=float, help="Level of the global test (default: 0.05)")
@click.option("--alpha-tilde", type=float, help="Level of the proportion tests (default: 0.01)")
@click.option("--g", "g", type=click.Choice([t.value for t in TransformMode]), help="Residual transform (default depends on mode)")
@click.option("--seed", type=int, help="Master seed (default: 0)")
@click.option("--perms", type=int, help="HSIC permutations (default: 500)")
@click.option("--hsic-method", type=click.Choice([h.value for h in HsicMethod]), help="HSIC calibration")
@click.option("--regressor", type=click.Choice([k.value for k in RegressorKind]), help="Regression backend")
@click.option("--single-split", is_flag=True, help="Run the single-split comparison instead")
@click.option("--jobs", "-j", type=int, help="Parallel workers for split runs")
@click.option("--out", "-o", type=click.Path(path_type=Path), help="Write the JSON report here")
@click.option("--verbose", "-v", is_flag=True, help="Include per-split diagnostics")
@handle_errors
def analyze(
    input_path: Path,
    target: str,
    mode: Optional[str],
    splits: Optional[int],
    alpha: Optional[float],
    alpha_tilde: Optional[float],
    g: Optional[str],
    seed: Optional[int],
    perms: Optional[int],
    hsic_method: Optional[str],
    regressor: Optional[str],
    single_split: bool,
    jobs: Optional[int],
    out: Optional[Path],
    verbose: bool,
) -> None:
    """Estimate the set of well-specified predictors of TARGET."""
    settings = _settings()
    config = _run_config(
        settings,
        {
            "mode": mode,
            "splits": splits,
            "alpha": alpha,
            "alpha_tilde": alpha_tilde,
            "g": g,
            "master_seed": seed,
            "testing": {"n_permutations": perms, "hsic_method": hsic_method},
            "regressor": {"kind": regressor},
            "input_path": str(input_path),
            "target": target,
        },
    )
    ds = load_csv(input_path, target)
    if single_split:
        report = single_split_baseline(ds, config, verbose=verbose)
    else:
        report = run_multisplit(ds, config, jobs=jobs or settings.jobs, verbose=verbose).report
    _emit(report.to_json(), out)


def _parse_suite(suite: str) -> Tuple[str, Optional[ScmSpec]]:
    if suite.startswith("custom:"):
        return "custom", ScmSpec.from_file(suite[len("custom:"):])
    if suite not in SUITE_NAMES:
        raise InputError(f"unknown suite '{suite}'; expected one of {SUITE_NAMES} or custom:PATH")
    return suite, None


@cli.command()
@click.option("--suite", "-s", required=True, help=f"One of {', '.join(SUITE_NAMES)} or custom:PATH")
@click.option("--n", "n", type=int, default=500, show_default=True, help="Rows per dataset")
@click.option("--runs", type=int, default=10, show_default=True, help="Simulation runs")
@click.option("--seed", type=int, help="Master seed (default: 0)")
@click.option("--alpha-tilde", "alpha_tildes", type=float, multiple=True, help="Proportion-test level; repeat for a sweep")
@click.option("--single-split", is_flag=True, help="Also score the single-split comparison")
@click.option("--mode", type=click.Choice([m.value for m in Mode]), help="Noise model (default: lsnm for the lsnm suite)")
@click.option("--splits", "-B", type=int, help="Number of random splits B")
@click.option("--perms", type=int, help="HSIC permutations")
@click.option("--jobs", "-j", type=int, help="Parallel workers for split runs")
@click.option("--out", "-o", type=click.Path(path_type=Path), help="Write the metrics CSV here")
@handle_errors
def simulate(
    suite: str,
    n: int,
    runs: int,
    seed: Optional[int],
    alpha_tildes: Tuple[float, ...],
    single_split: bool,
    mode: Optional[str],
    splits: Optional[int],
    perms: Optional[int],
    jobs: Optional[int],
    out: Optional[Path],
) -> None:
    """Simulate a suite, analyze every dataset and score against the ground truth."""
    settings = _settings()
    name, custom = _parse_suite(suite)
    if mode is None and name == "lsnm":
        mode = Mode.LSNM.value
    config = _run_config(
        settings,
        {"mode": mode, "splits": splits, "master_seed": seed, "testing": {"n_permutations": perms}},
    )
    result = run_simulation(
        name,
        n,
        runs,
        config,
        alpha_tildes=list(alpha_tildes) or None,
        single_split=single_split,
        jobs=jobs or settings.jobs,
        custom=custom,
    )
    frame = result.to_frame()
    if out is None:
        click.echo(frame.to_csv(index=False, float_format=CSV_FLOAT_FORMAT), nl=False)
    else:
        frame.to_csv(out, index=False, float_format=CSV_FLOAT_FORMAT)
        logger.info(f"Wrote {len(frame)} rows to {out}")


@cli.command()
@click.option("--input", "-i", "input_path", type=click.Path(path_type=Path), required=True, help="Input CSV")
@click.option("--response", "-r", required=True, help="Response column")
@click.option("--predictors", "-p", help="Comma-separated predictor columns (default: all others)")
@click.option("--g", "g", type=click.Choice([t.value for t in TransformMode]), default=TransformMode.IDENTITY.value, show_default=True, help="Transform of the response")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for nearest-neighbour ties")
@click.option("--foci", is_flag=True, help="Also run forward selection")
@click.option("--standardize", is_flag=True, help="Standardize predictor columns first")
@handle_errors
def codec(
    input_path: Path,
    response: str,
    predictors: Optional[str],
    g: str,
    seed: int,
    foci: bool,
    standardize: bool,
) -> None:
    """Dependence coefficient of RESPONSE on the predictors."""
    ds = load_csv(input_path, response, min_rows=CODEC_MIN_ROWS)
    if predictors:
        ds = ds.select([name.strip() for name in predictors.split(",") if name.strip()])
    y = transform_g(ds.y, TransformMode(g))
    rng = derive_rng(seed, (Stream.CODEC,))
    result: Dict[str, Any] = codec_t(y, ds.x, rng.child(0), standardize=standardize).to_dict()
    result["response"] = ds.target_name
    result["predictors"] = list(ds.predictor_names)
    if foci:
        selection = foci_select(y, ds.x, rng.child(1), standardize=standardize)
        result["selected"] = [j + 1 for j in selection.selected]
        result["selected_names"] = [ds.predictor_names[j] for j in selection.selected]
        result["q_path"] = [str(q) for q in selection.q_path]
    click.echo(json.dumps(result, indent=2))


@cli.command()
@click.option("--input", "-i", "input_path", type=click.Path(path_type=Path), required=True, help="Input CSV")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for nearest-neighbour ties")
@click.option("--positive-only", is_flag=True, help="Only consider strictly positive columns")
@handle_errors
def screen(input_path: Path, seed: int, positive_only: bool) -> None:
    """Choose a target and its predictors from all columns."""
    headers = read_header(input_path)
    ds = load_csv(input_path, headers[-1])
    result = screen_target(ds, derive_rng(seed, (Stream.SCREENING,)), positive_only=positive_only)
    click.echo(json.dumps(result.to_dict(), indent=2))


def _parse_interventions(values: Tuple[str, ...]) -> Dict[str, Path]:
    parsed: Dict[str, Path] = {}
    for value in values:
        column, sep, path = (part.strip() for part in value.partition("="))
        if not sep or not column or not path:
            raise InputError(f"expected COLUMN=PATH, got '{value}'")
        if column in parsed:
            raise InputError(f"duplicate intervention on '{column}'")
        parsed[column] = Path(path)
    return parsed


@cli.command()
@click.option("--obs", "obs_path", type=click.Path(path_type=Path), required=True, help="Observational CSV")
@click.option("--target", "-t", required=True, help="Target column name")
@click.option("--interv", "interventions", multiple=True, required=True, help="COLUMN=PATH of a knock-down environment; repeatable")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed of the early-stopping holdout")
@click.option("--regressor", type=click.Choice([k.value for k in RegressorKind]), help="Regression backend")
@handle_errors
def validate(
    obs_path: Path,
    target: str,
    interventions: Tuple[str, ...],
    seed: int,
    regressor: Optional[str],
) -> None:
    """Compare observational data with interventional environments."""
    settings = _settings()
    config = _run_config(settings, {"regressor": {"kind": regressor}})
    obs = load_csv(obs_path, target)
    environments = {
        column: load_csv(path, target) for column, path in _parse_interventions(interventions).items()
    }
    result = validate_interventions(obs, environments, config.regressor, derive_rng(seed))
    click.echo(json.dumps(result.to_dict(), indent=2, default=_json_default))


def _json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"not JSON serializable: {type(value).__name__}")


@cli.command()
def list_regressors() -> None:
    """List available regression backends."""
    registry = get_registry()
    default = registry.get_default_backend()

    click.echo("Available regressors:")
    click.echo()
    for name in registry.list_backends():
        backend = registry.get_backend(name)
        if backend is None:
            continue
        marker = "*" if default is not None and default.get_name() == name else " "
        click.echo(f"{marker} {name:<15} - {backend.get_description()}")
        defaults = ", ".join(f"{k}={v}" for k, v in backend.get_defaults().items())
        if defaults:
            click.echo(f"    {defaults}")

    click.echo()
    if default is not None:
        click.echo(f"Default regressor: {default.get_name()}")


def main() -> None:
    """Main entry point."""
    cli()


if __name__ == "__main__":
    main()
