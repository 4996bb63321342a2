"""CLI interface for fcnet"""

import logging
import sys
from typing import Any, Dict, Optional

import click
from tabulate import tabulate

from . import __version__
from .annealing import hierarchical_search_space
from .config import ConfigManager
from .errors import ConfigError, FcnetError, PipelineError
from .models import SA_WARM_STARTS, PipelineConfig, SyntheticSpec
from .pipeline import run_pipeline, run_sweep, summarize_run
from .signal_io import generate_synthetic, save_recording


def _fail(e: Exception):
    """Report an error on stderr and exit with its code"""
    if isinstance(e, PipelineError):
        click.echo(f"Error: {e}", err=True)
        if e.manifest_path:
            click.echo(f"  Partial results manifest: {e.manifest_path}", err=True)
        sys.exit(e.exit_code)
    if isinstance(e, FcnetError):
        click.echo(f"Error: {e}", err=True)
        sys.exit(e.exit_code)
    click.echo(f"Error: unexpected {type(e).__name__}: {e}", err=True)
    sys.exit(1)


def _parse_ints(value: str, what: str):
    try:
        numbers = [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise ConfigError(f"{what} must be comma-separated integers, got '{value}'")
    if not numbers:
        raise ConfigError(f"{what} must not be empty")
    return numbers


# flag name -> config key; None means the flag was not given
FLAG_KEYS = {
    "fmt": "format",
    "channels": "channels",
    "header": "header",
    "sample_rate": "sample_rate",
    "window_size": "window_size",
    "kinds": "kinds",
    "methods": "methods",
    "threshold": "threshold",
    "seed": "seed",
    "out": "out",
    "plots": "plots",
    "anticorr_mode": "anticorr_mode",
    "sa_steps": "sa_steps",
    "sa_samples": "sa_samples",
    "sa_t0": "sa_t0",
    "sa_tf": "sa_tf",
    "sa_patience": "sa_patience",
    "band": "band",
    "segment_len": "segment_len",
    "overlap": "overlap",
    "workers": "workers",
    "k_max": "k_max",
    "betweenness": "betweenness",
    "modularity_weighting": "modularity_weighting",
    "sa_warm_start": "sa_warm_start",
    "save_matrices": "save_matrices",
    "dump_coords": "dump_coords",
    "verbose_traces": "verbose_traces",
}


def pipeline_options(f):
    """Options shared by `analyze` and `sweep`; flags override the config file"""
    options = [
        click.option("--input", "input_path", required=True, type=click.Path(), help="Recording file"),
        click.option("--config", "config_path", default="fcnet.conf", show_default=True, help="Config file"),
        click.option("--format", "fmt", type=click.Choice(["csv", "raw-f32"]), default=None, help="Recording format"),
        click.option("--channels", type=int, default=None, help="Channel count (raw-f32)"),
        click.option("--header/--no-header", default=None, help="CSV has a header row"),
        click.option("--sample-rate", type=float, default=None, help="Sampling rate in Hz"),
        click.option("--kinds", default=None, help="correlation, coherency or both"),
        click.option("--methods", default=None, help="Subset of A,B,C,D"),
        click.option("--threshold", type=float, default=None, help="Drop edges with |weight| <= threshold"),
        click.option("--seed", type=int, default=None, help="Master seed"),
        click.option("--out", default=None, help="Output directory"),
        click.option("--plots/--no-plots", default=None, help="Write SVG plots"),
        click.option("--anticorr-mode", type=click.Choice(["weighted", "count"]), default=None),
        click.option("--sa-steps", type=int, default=None, help="Annealing temperatures"),
        click.option("--sa-samples", type=int, default=None, help="Proposals per temperature"),
        click.option("--sa-t0", type=float, default=None, help="Initial temperature"),
        click.option("--sa-tf", type=float, default=None, help="Final temperature"),
        click.option("--sa-patience", type=int, default=None, help="Temperatures without improvement before stopping"),
        click.option("--band", default=None, help="Coherency band LOW:HIGH in Hz"),
        click.option("--segment-len", type=int, default=None, help="Spectral segment length"),
        click.option("--overlap", type=float, default=None, help="Spectral segment overlap fraction"),
        click.option("--workers", "-w", type=int, default=None, help="Worker processes"),
        click.option("--k-max", type=int, default=None, help="Largest k for methods B and D"),
        click.option("--betweenness", type=click.Choice(["weighted", "unweighted"]), default=None),
        click.option("--modularity-weighting", type=click.Choice(["weight", "count"]), default=None),
        click.option(
            "--sa-warm-start", type=click.Choice(SA_WARM_STARTS), default=None, help="Initial split per annealing bisection"
        ),
        click.option("--save-matrices/--no-save-matrices", default=None, help="Dump connectivity matrices"),
        click.option("--dump-coords/--no-dump-coords", default=None, help="Dump method B coordinates"),
        click.option("--verbose-traces/--no-verbose-traces", default=None, help="Removal and annealing traces"),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _build_config(input_path: str, config_path: str, flags: Dict[str, Any], **overrides) -> PipelineConfig:
    settings = ConfigManager(config_path).get_all()
    for name, key in FLAG_KEYS.items():
        if flags.get(name) is not None:
            settings[key] = flags[name]
    settings.update(overrides)
    settings["input"] = input_path
    return PipelineConfig.from_mapping(settings)


@click.group()
@click.version_option(version=__version__)
@click.option("--verbose", "-v", is_flag=True, help="Debug logging")
def cli(verbose: bool):
    """fcnet - community detection on signed functional-connectivity graphs"""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


@cli.command()
@pipeline_options
@click.option("--window-size", type=int, default=None, help="Samples per window")
def analyze(input_path: str, config_path: str, **flags):
    """
    Detect communities in every window of a recording.

    Examples:
        fcnet analyze --input rec.csv --window-size 10000 --out results
        fcnet analyze --input rec.f32 --format raw-f32 --channels 16 --kinds both --plots
    """
    try:
        cfg = _build_config(input_path, config_path, flags)
        click.echo(f"Analysing {cfg.input_path} (window {cfg.window_size}, methods {','.join(m.value for m in cfg.methods)})...")
        run = run_pipeline(cfg)
    except Exception as e:
        _fail(e)

    rows = []
    for kind in cfg.kinds:
        group = [r for r in run.results if r.kind == kind]
        for method in cfg.methods:
            values = [r.reports[method].chosen_q_s for r in group]
            rows.append([kind.value, method.value, len(values), min(values), sum(values) / len(values), max(values)])
    click.echo(tabulate(rows, headers=["Kind", "Method", "Windows", "Min q_s", "Mean q_s", "Max q_s"], floatfmt=".4f"))
    click.echo(f"[OK] Wrote {len(run.files)} file(s) to {run.out_dir}")


@cli.command()
@pipeline_options
@click.option("--window-sizes", required=True, help="Comma-separated window sizes, e.g. 10000,100000")
def sweep(input_path: str, config_path: str, window_sizes: str, **flags):
    """Compare per-window q_s statistics across window sizes"""
    try:
        sizes = _parse_ints(window_sizes, "--window-sizes")
        cfg = _build_config(input_path, config_path, flags, window_size=sizes[0])
        rows = run_sweep(cfg, sizes)
    except Exception as e:
        _fail(e)

    table = [
        [r["window_size"], r["kind"], r["method"], r["windows"], r["mean"], r["variance"], r["min"], r["max"]]
        for r in rows
    ]
    click.echo(tabulate(
        table,
        headers=["Window", "Kind", "Method", "Windows", "Mean q_s", "Var q_s", "Min q_s", "Max q_s"],
        floatfmt=".6g",
    ))
    click.echo(f"[OK] Sweep of {len(sizes)} window size(s) written under {cfg.output_dir}")


@cli.command()
@click.option("--out", required=True, type=click.Path(), help="Output directory of a finished run")
def summary(out: str):
    """Summarize the modularity traces and chosen k of a finished run"""
    try:
        rows = summarize_run(out)
    except Exception as e:
        _fail(e)

    table = [[r["kind"], r["method"], r["windows"], r["mean"], r["min"], r["max"], r["chosen_k"]] for r in rows]
    click.echo("\n=== Run Summary ===\n")
    click.echo(tabulate(
        table, headers=["Kind", "Method", "Windows", "Mean q_s", "Min q_s", "Max q_s", "Chosen k (k:count)"],
        floatfmt=".4f",
    ))
    click.echo()


@cli.command(name="search-space")
@click.argument("n", type=int)
def search_space(n: int):
    """Size of the hierarchical bisection search space for N vertices"""
    try:
        sizes = hierarchical_search_space(n)
    except Exception as e:
        _fail(e)
    table = [
        ["best case (balanced halving)", sizes.best_case],
        ["worst case (one vertex per split)", sizes.worst_case],
        ["all partitions (Bell number)", sizes.bell_reference],
    ]
    click.echo(tabulate(table, headers=[f"n = {n}", "Bisections"], tablefmt="simple"))


@cli.command()
@click.option("--out", required=True, type=click.Path(), help="Recording file to write")
@click.option("--channels", type=int, default=None, help="Channel count (defaults to the community total)")
@click.option("--samples", type=int, default=1000000, show_default=True)
@click.option("--communities", default="9,7", show_default=True, help="Community sizes in channel order")
@click.option("--strength", type=float, default=0.9, show_default=True, help="Shared-signal strength")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--noise", type=float, default=0.3, show_default=True, help="Noise level")
@click.option("--anticorrelation", type=float, default=0.0, show_default=True,
              help="Coupling to the paired community's negated latent (0 disables)")
@click.option("--drive", type=float, default=0.0, show_default=True, help="Shared broadband drive strength")
@click.option("--latent-band", default=None, help="Band-limit the latents to LOW:HIGH Hz")
@click.option("--sample-rate", type=float, default=1000.0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "raw-f32"]), default="csv", show_default=True)
def synth(out: str, channels: Optional[int], samples: int, communities: str, strength: float, seed: int,
          noise: float, anticorrelation: float, drive: float, latent_band: Optional[str],
          sample_rate: float, fmt: str):
    """
    Write a synthetic recording with planted communities.

    Example:
        fcnet synth --samples 1000000 --communities 9,7 --strength 0.9 --out rec.csv
    """
    try:
        sizes = _parse_ints(communities, "--communities")
        if channels is not None and channels != sum(sizes):
            raise ConfigError(f"--channels {channels} does not match community sizes totalling {sum(sizes)}")
        band = None
        if latent_band:
            parts = latent_band.split(":")
            try:
                band = (float(parts[0]), float(parts[1]))
            except (IndexError, ValueError):
                raise ConfigError(f"--latent-band must look like LOW:HIGH, got '{latent_band}'")
        spec = SyntheticSpec.from_sizes(
            sizes,
            n_samples=samples,
            sample_rate=sample_rate,
            shared_signal_strength=strength,
            anticorrelated_pairs=anticorrelation > 0,
            noise_level=noise,
            anticorrelation_strength=anticorrelation if anticorrelation > 0 else 0.5,
            drive_strength=drive,
            latent_band=band,
        )
        recording = generate_synthetic(spec, seed)
        save_recording(recording, out, fmt)
    except Exception as e:
        _fail(e)

    click.echo(f"[OK] Synthetic recording written: {out}")
    click.echo(f"  Channels: {recording.n_channels}  Samples: {recording.n_samples}  Communities: {communities}")


@cli.group()
@click.option("--file", "config_path", default="fcnet.conf", show_default=True, help="Config file")
@click.pass_context
def config(ctx, config_path: str):
    """Manage configuration"""
    ctx.obj = config_path


@config.command(name="show")
@click.pass_obj
def config_show(config_path: str):
    """Show current configuration"""
    try:
        cfg = ConfigManager(config_path).get_all()
    except Exception as e:
        _fail(e)

    click.echo("\n=== Configuration ===\n")
    table_data = [[k, "" if v is None else v] for k, v in cfg.items()]
    click.echo(tabulate(table_data, headers=["Setting", "Value"], tablefmt="simple"))
    click.echo()


@config.command(name="set")
@click.argument("key")
@click.argument("value")
@click.pass_obj
def config_set(config_path: str, key: str, value: str):
    """Set a configuration value"""
    try:
        config_mgr = ConfigManager(config_path)
        config_mgr.set(key, value)
    except Exception as e:
        _fail(e)
    click.echo(f"[OK] Configuration updated: {key} = {config_mgr.get(key)}")


@config.command(name="reset")
@click.confirmation_option(prompt="Are you sure you want to reset configuration to defaults?")
@click.pass_obj
def config_reset(config_path: str):
    """Reset configuration to defaults"""
    try:
        ConfigManager(config_path).reset()
    except Exception as e:
        _fail(e)
    click.echo("[OK] Configuration reset to defaults")


if __name__ == "__main__":
    cli()
