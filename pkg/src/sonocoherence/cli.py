"""
Command-line front end.

Usage:
    sonocoherence report                       # full pipeline, JSON
    sonocoherence geometry --format json
    sonocoherence stability --mu-range -1:0:0.01 --g2 0
    sonocoherence spectrum --domain lambda --grid 200:800:1 --out spec.csv
    sonocoherence flash

Exit codes: 0 success, 2 parameter error, 3 I/O error.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import sys

import click
import numpy as np

from . import coherence, flash, geometry, spectrum
from .config import DEFAULT_GRIDS, ConfigError, load_config, parse_grid
from .errors import DomainError, QuadratureError

PARAM_UNITS = {
    "bubble": {"R0_um": "um", "rho0": "cm^-3", "a_liquid_A": "angstrom",
               "ambient_pressure_atm": "atm", "vapour_temperature_K": "K"},
    "coherence": {"omega0": "eV", "g_squared": "1", "mu": "1", "mu_critical": "1",
                  "rho_critical": "cm^-3"},
    "spectrum": {"omega0": "eV", "omegaR": "eV", "gamma": "eV", "c1_squared": "1",
                 "form_factor_coeff": "1", "delta_E": "eV", "opacity_cutoff": "eV"},
    "flash": {"fluctuation_scale": "cm", "interface_speed": "cm/s"},
}


class StageError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def num(x):
    """Round to 9 significant digits for serialization."""
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    x = float(x)
    if not np.isfinite(x):
        return None
    return float(f"{x:.9g}")


def q(value, unit, **extra):
    out = {"value": num(value), "unit": unit}
    out.update(extra)
    return out


def fmt(x):
    return f"{float(x):.9g}"


def _guard(stage=None):
    """Map library exceptions onto the exit-code contract."""
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            prefix = f"{stage}: " if stage else ""
            try:
                return fn(*args, **kwargs)
            except StageError as exc:
                click.echo(f"error: {exc}", err=True)
                sys.exit(exc.code)
            except (DomainError, QuadratureError, ValueError) as exc:
                click.echo(f"error: {prefix}{exc}", err=True)
                sys.exit(2)
            except OSError as exc:
                click.echo(f"error: {prefix}I/O failure: {exc}", err=True)
                sys.exit(3)
        return wrapper
    return deco


def _config(config_path, overrides):
    try:
        return load_config(config_path, overrides)
    except OSError as exc:
        raise StageError(f"cannot read config: {exc}", 3) from None
    except ConfigError as exc:
        raise StageError(str(exc), 2) from None


def _emit(text, path):
    if path:
        try:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise StageError(f"cannot write {path}: {exc}", 3) from None
    else:
        click.echo(text, nl=False)


def _dumps(doc):
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _text(doc):
    lines = []
    for key, v in doc.items():
        if isinstance(v, dict) and "value" in v:
            val = v["value"]
            val = fmt(val) if isinstance(val, float) else str(val)
            lines.append(f"{key:<28s} {val} {v['unit']}")
    return "\n".join(lines) + "\n"


def _column(key, unit):
    unit = {"1": "", "cm^-3": "per_cm3", "cm/s": "cm_per_s", "bool": ""}.get(unit, unit)
    if not unit or key.endswith("_" + unit):
        return key
    return f"{key}_{unit}"


def _grid(spec):
    lo, hi, step = parse_grid(spec)
    n = int(np.floor((hi - lo) / step + 1e-9))
    return lo + step * np.arange(n + 1)


common = [
    click.option("--config", "config_path", type=click.Path(dir_okay=False),
                 help="JSON parameter file."),
    click.option("--out", "out", type=click.Path(dir_okay=False), help="Output path (default stdout)."),
    click.option("--format", "fmt_", type=click.Choice(["csv", "json", "text"]), help="Output format."),
]


def with_common(fn):
    for opt in reversed(common):
        fn = opt(fn)
    return fn


@click.group()
def cli():
    """Coherent-condensation model of single-bubble sonoluminescence."""


# -- geometry ---------------------------------------------------------------

def geometry_doc(cfg):
    b = cfg.bubble
    st = geometry.collapse_state(b)
    return {
        "R0": q(b.R0, "cm"),
        "rho0": q(b.rho0, "cm^-3"),
        "a_liquid": q(b.a_liquid, "cm"),
        "a0": q(st.a0, "cm"),
        "R_star": q(st.R_star, "cm"),
        "R_star_um": q(st.R_star * 1e4, "um"),
        "a_T_star": q(st.a_T_star, "cm"),
        "rho_star": q(st.rho_star, "cm^-3"),
        "shell_thickness": q(st.shell_thickness, "cm"),
        "R_star_over_thickness": q(st.R_star / st.shell_thickness, "1"),
        "N_molecules": q(st.N_molecules, "1"),
        "N_shell": q(st.N_shell, "1"),
    }, st


@cli.command("geometry")
@with_common
@_guard("geometry")
def cmd_geometry(config_path, out, fmt_):
    """Collapse geometry at the condensation point."""
    cfg = _config(config_path, {})
    doc, _ = geometry_doc(cfg)
    f = fmt_ or cfg.output.format or "text"
    if f == "json":
        text = _dumps(doc)
    elif f == "csv":
        header = [_column(k, v["unit"]) for k, v in doc.items()]
        text = _csv(header, [[fmt(v["value"]) for v in doc.values()]])
    else:
        text = _text(doc)
    _emit(text, out or cfg.output.path)


# -- stability --------------------------------------------------------------

def _mu_values(spec):
    parts = spec.split(":")
    try:
        vals = [float(x) for x in parts]
    except ValueError:
        raise ConfigError(f"mu range must be numbers, got {spec!r}") from None
    if len(vals) == 1:
        return np.array(vals)
    if len(vals) == 2:
        vals.append(0.01)
    if len(vals) != 3:
        raise ConfigError(f"mu range must be 'min[:max[:step]]', got {spec!r}")
    lo, hi, step = vals
    if hi < lo or not step > 0:
        raise ConfigError(f"empty mu range {spec!r}")
    if hi == lo:
        return np.array([lo])
    n = int(np.floor((hi - lo) / step + 1e-9))
    mus = lo + step * np.arange(n + 1)
    if mus[-1] < hi - 1e-12:
        mus = np.append(mus, hi)
    return mus


@cli.command("stability")
@with_common
@click.option("--mu-range", default="-1:0:0.01", show_default=True,
              help="min[:max[:step]] for mu.")
@click.option("--g2", type=float, default=None, help="Coupling g^2 (default from config).")
@_guard("stability")
def cmd_stability(config_path, out, fmt_, mu_range, g2):
    """Growth-rate table over mu and the located run-away threshold."""
    overrides = {} if g2 is None else {"coherence.g_squared": g2}
    cfg = _config(config_path, overrides)
    g2 = cfg.coherence.g_squared
    mus = _mu_values(mu_range)
    rows = []
    for mu in mus:
        rep = coherence.characteristic_roots(coherence.CoherenceParams(mu=float(mu), g_squared=g2))
        rows.append((float(mu), rep.max_growth_rate, rep.is_runaway))
    crit = None
    if len(mus) > 1 and rows[0][2] != rows[-1][2]:
        crit = coherence.critical_mu(g2, (mus[0], mus[-1]))

    f = fmt_ or cfg.output.format or "csv"
    if f == "json":
        doc = {
            "g_squared": q(g2, "1"),
            "rows": [{"mu": num(m), "max_growth": num(g), "is_runaway": r} for m, g, r in rows],
            "critical_mu": q(crit, "1") if crit is not None else None,
        }
        text = _dumps(doc)
    else:
        text = _csv(["mu", "max_growth", "is_runaway"],
                    [[fmt(m), fmt(g), str(r).lower()] for m, g, r in rows])
        text += f"# critical_mu,{fmt(crit) if crit is not None else 'none'}\n"
    _emit(text, out or cfg.output.path)


# -- spectrum ---------------------------------------------------------------

def spectrum_summary(sp):
    K = spectrum.calibrate_normalization(sp)
    total = K * spectrum.shape_integral(sp)
    detected = spectrum.detected_energy(sp)
    return {
        "normalization_K": q(K, "1"),
        "shape_integral": q(sp.delta_E / K, "eV"),
        "total_energy": q(total, "eV"),
        "detected_energy": q(detected, "eV"),
        "detected_fraction": q(detected / total, "1"),
        "opacity_cutoff": q(sp.opacity_cutoff, "eV"),
        "peak_omega": q(spectrum.peak_omega(sp), "eV"),
        "integration_upper_bound": q(spectrum.integration_upper_bound(sp), "eV"),
        "raw_prefactor": q(spectrum.raw_prefactor(sp), "eV^3"),
        "raw_energy_per_molecule": q(spectrum.raw_energy_per_molecule(sp), "eV"),
    }


@cli.command("spectrum")
@with_common
@click.option("--grid", "grid", default=None, help="min:max:step in eV (omega) or nm (lambda).")
@click.option("--domain", type=click.Choice(["omega", "lambda"]), default=None,
              help="Frequency or wavelength grid.")
@click.option("--cutoff", type=float, default=None, help="Water opacity cutoff in eV.")
@click.option("--summary", "summary_path", type=click.Path(dir_okay=False), default=None,
              help="Where to write the JSON summary in csv mode.")
@_guard("spectrum")
def cmd_spectrum(config_path, out, fmt_, grid, domain, cutoff, summary_path):
    """Per-molecule emission spectrum in omega or lambda."""
    overrides = {} if cutoff is None else {"spectrum.opacity_cutoff": cutoff}
    cfg = _config(config_path, overrides)
    sp = cfg.spectrum
    domain = domain or cfg.output.domain
    grid_spec = grid or cfg.output.grid or DEFAULT_GRIDS[domain]
    values = _grid(grid_spec)
    if domain == "omega":
        if values[0] < 0 or values[-1] > 3 * sp.omega0 + 1e-9:
            raise ConfigError(f"omega grid must lie within [0, {fmt(3 * sp.omega0)}] eV")
        table = spectrum.per_molecule_spectrum(values, sp)
        header, xs, ys = ["omega_ev", "dE_domega"], table.omega, table.s
    else:
        if values[0] <= 0:
            raise ConfigError("lambda grid must be positive")
        xs, ys = spectrum.spectrum_in_wavelength(values, sp)
        header = ["lambda_nm", "dE_dlambda"]
    summary = spectrum_summary(sp)

    f = fmt_ or cfg.output.format or "csv"
    out = out or cfg.output.path
    if f == "json":
        doc = dict(summary)
        doc["table"] = {"columns": header, "rows": [[num(x), num(y)] for x, y in zip(xs, ys)]}
        _emit(_dumps(doc), out)
        return
    _emit(_csv(header, [[fmt(x), fmt(y)] for x, y in zip(xs, ys)]), out)
    if summary_path is None and out:
        summary_path = out.rsplit(".", 1)[0] + ".summary.json"
    if summary_path:
        _emit(_dumps(summary), summary_path)
    else:
        click.echo(_dumps(summary), err=True, nl=False)


# -- flash ------------------------------------------------------------------

def flash_doc(cfg, state=None):
    state = state or geometry.collapse_state(cfg.bubble)
    w0 = cfg.coherence.omega0
    return {
        "cd_radius": q(flash.cd_radius(w0), "cm"),
        "cd_radius_angstrom": q(flash.cd_radius(w0) * 1e8, "angstrom"),
        "cd_wavelength": q(flash.cd_wavelength(w0), "cm"),
        "flash_width": q(flash.flash_width(cfg.flash), "ps"),
        "transition_time": q(coherence.transition_time(cfg.coherence), "s"),
        "cd_count_in_shell": q(flash.cd_count_in_shell(state, w0), "1"),
        "reference_cd_count": q(flash.REFERENCE_CD_COUNT, "1", note="quoted value, not derived"),
    }


@cli.command("flash")
@with_common
@_guard("flash")
def cmd_flash(config_path, out, fmt_):
    """Coherence-domain size, flash width and condensation time."""
    cfg = _config(config_path, {})
    doc = flash_doc(cfg)
    f = fmt_ or cfg.output.format or "text"
    if f == "json":
        text = _dumps(doc)
    elif f == "csv":
        text = _csv([_column(k, v["unit"]) for k, v in doc.items()],
                    [[fmt(v["value"]) for v in doc.values()]])
    else:
        text = _text(doc)
    _emit(text, out or cfg.output.path)


# -- report -----------------------------------------------------------------

def _stage(name, fn, *args):
    try:
        return fn(*args)
    except (DomainError, QuadratureError, ValueError) as exc:
        raise StageError(f"{name}: {exc}", 2) from None


def build_report(cfg):
    """Full pipeline: geometry -> stability at the onset and condensation densities -> spectrum -> flash."""
    constants = {}
    for section, unit_map in PARAM_UNITS.items():
        params = getattr(cfg, section)
        constants[section] = {
            k: q(getattr(params, k), u, source=cfg.source(section, k)) for k, u in unit_map.items()
        }

    geo, state = _stage("geometry", geometry_doc, cfg)

    def stability():
        cp = cfg.coherence
        out = {}
        for label, rho in (("onset", cfg.bubble.rho0), ("condensation", state.rho_star)):
            mu = coherence.mu_of_density(rho, cp)
            rep = coherence.characteristic_roots(
                coherence.CoherenceParams(cp.omega0, cp.g_squared, mu, cp.mu_critical, cp.rho_critical))
            out[f"mu_at_{label}"] = q(mu, "1")
            out[f"growth_rate_at_{label}"] = q(rep.max_growth_rate, "1/tau")
            out[f"runaway_at_{label}"] = q(rep.is_runaway, "bool")
        out["critical_mu"] = q(coherence.critical_mu(cp.g_squared, (-1.0, 0.0)), "1")
        out["transition_time"] = q(coherence.transition_time(cp), "s")
        return out

    stab = _stage("stability", stability)
    spec = _stage("spectrum", spectrum_summary, cfg.spectrum)

    def flash_stage():
        doc = flash_doc(cfg, state)
        budget = spectrum.flash_energy_budget(state.N_shell, cfg.spectrum)
        doc["flash_energy_total"] = q(budget["total_J"], "J")
        doc["flash_energy_detected"] = q(budget["detected_J"], "J")
        doc["flash_energy_total_eV"] = q(budget["total_eV"], "eV")
        doc["flash_energy_detected_eV"] = q(budget["detected_eV"], "eV")
        return doc

    fl = _stage("flash", flash_stage)
    return {"constants": constants, "geometry": geo, "stability": stab,
            "spectrum": spec, "flash": fl}


@cli.command("report")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), help="JSON parameter file.")
@click.option("--out", "out", type=click.Path(dir_okay=False), help="Output path (default stdout).")
@click.option("--format", "fmt_", type=click.Choice(["json"]), default="json", help="Output format.")
@click.option("--cutoff", type=float, default=None, help="Water opacity cutoff in eV.")
@_guard()
def cmd_report(config_path, out, fmt_, cutoff):
    """Run every stage and emit one JSON document."""
    overrides = {} if cutoff is None else {"spectrum.opacity_cutoff": cutoff}
    cfg = _config(config_path, overrides)
    _emit(_dumps(build_report(cfg)), out or cfg.output.path)


def main():
    cli()


if __name__ == "__main__":
    main()
