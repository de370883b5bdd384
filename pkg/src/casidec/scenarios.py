"""Scenario registry: canned parameter regimes with persisted results.

Every scenario resolves to a runner that returns a JSON-ready summary and,
when it evolves something, a fixed-column time series. run_scenario merges
user overrides into the scenario defaults (unknown keys rejected), executes
the runner, and writes summary.json, series.csv, and manifest.json into
<out>/<scenario>/. The numeric artifacts are deterministic: identical
config produces byte-identical summary and CSV; only the manifest carries
wall-clock timing.

Numbers are serialized with 17 significant digits so a reader can
round-trip them to the exact binary doubles the run produced.
"""

from __future__ import annotations

import copy
import math
import os
import time
import warnings
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__ as _version
from .errors import ConfigError, IoError, RegimeViolation, RegimeWarning, UnknownScenario
from .params import (
    CODATA,
    CatSpec,
    MirrorParams,
    PhysicalConstants,
    derived_quantities,
    ground_state_width,
    packet_velocity,
    separation_from_alpha,
    thermal_de_broglie,
)
from .spectra_damping import (
    CoefficientSet,
    characteristic_roots,
    coefficient_set,
    damping_rate,
    diffusion_asymptotic,
    gamma_vacuum_1d,
    gamma_vacuum_sphere,
    gamma_thermal_sphere,
)
from .decoherence_times import (
    td_cat_vacuum,
    td_from_diffusion,
    td_from_separation,
    td_high_T,
    td_relative_1d,
    td_relative_sphere,
    td_thermal_sphere_free,
)
from .gaussian_dynamics import (
    GaussianState,
    evolve,
    purity,
    secular_linear_entropy,
    sieve_search,
)
from .wigner_solver import (
    CatWignerSpec,
    SolverCoefficients,
    evolve_grid,
    fringe_visibility,
    grid_moments,
    grid_norm,
    grid_purity,
    init_cat,
    init_gaussian,
    marginals,
    measure_td,
    wmin_over_wmax,
)

__all__ = [
    "RunReport",
    "describe",
    "list_scenarios",
    "run_scenario",
    "scenario_defaults",
]

_SCHEMA_VERSION = 1
_OUT_DIR_ENV = "CASIDEC_OUT_DIR"
_CSV_COLUMNS = ("visibility", "purity", "mean_x", "mean_p",
                "cov_xx", "cov_xp", "cov_pp")


# ---------------------------------------------------------------------------
# deterministic serialization

def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"non-finite value {x!r} has no place in an output file")
    return format(x, ".17g")


def _json_render(obj, indent: int = 0) -> str:
    """Canonical JSON: sorted keys, floats at 17 significant digits."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = [f'{inner}"{k}": {_json_render(obj[k], indent + 1)}'
                 for k in sorted(obj)]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        parts = [f"{inner}{_json_render(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        escaped = obj.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        return f'"{escaped}"'
    if obj is None:
        return "null"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _write_atomic(path: Path, text: str):
    tmp = path.with_name(path.name + ".tmp")
    try:
        tmp.write_text(text)
        os.replace(tmp, path)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def _render_csv(time_label: str, rows: list[dict]) -> str:
    header = ",".join((time_label,) + _CSV_COLUMNS)
    lines = [header]
    for row in rows:
        cells = [format_float(row["time"])]
        for col in _CSV_COLUMNS:
            val = row.get(col)
            cells.append("" if val is None else format_float(val))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# config handling

def _merge_config(defaults: dict, overrides: dict, path: str = "") -> dict:
    merged = copy.deepcopy(defaults)
    for key, ov in overrides.items():
        where = f"{path}{key}"
        if key not in defaults:
            raise ConfigError(f"unknown config key '{where}'")
        dv = defaults[key]
        if isinstance(dv, dict):
            if not isinstance(ov, dict):
                raise ConfigError(f"'{where}' must be a mapping")
            merged[key] = _merge_config(dv, ov, where + ".")
        elif isinstance(dv, bool):
            if not isinstance(ov, bool):
                raise ConfigError(f"'{where}' must be a boolean")
            merged[key] = ov
        elif isinstance(dv, int):
            if isinstance(ov, bool) or not isinstance(ov, int):
                raise ConfigError(f"'{where}' must be an integer")
            merged[key] = ov
        elif isinstance(dv, float):
            if isinstance(ov, bool) or not isinstance(ov, (int, float)):
                raise ConfigError(f"'{where}' must be a number")
            merged[key] = float(ov)
        elif isinstance(dv, str):
            if not isinstance(ov, str):
                raise ConfigError(f"'{where}' must be a string")
            merged[key] = ov
        else:
            raise ConfigError(f"'{where}' has unsupported default type")
    return merged


# ---------------------------------------------------------------------------
# shared pieces

def _cat_series(td: float, n: int, cov_xx: float, cov_pp: float) -> list[dict]:
    """Analytic fringe decay of a frozen two-packet state.

    visibility exp(-t/td); purity of the balanced which-way reduction
    (1 + v^2)/2; second moments held at their (overlap-free) cat values.
    """
    rows = []
    for t in np.linspace(0.0, 5.0 * td, n):
        v = math.exp(-t / td)
        rows.append({"time": float(t), "visibility": v,
                     "purity": 0.5 * (1.0 + v * v),
                     "mean_x": 0.0, "mean_p": 0.0,
                     "cov_xx": cov_xx, "cov_xp": 0.0, "cov_pp": cov_pp})
    return rows


def _mirror_from_cfg(cfg: dict) -> MirrorParams:
    m = cfg["mirror"]
    return MirrorParams(mass=m.get("mass", 0.0), omega0=m.get("omega0", 0.0),
                        temperature=m.get("temperature", 0.0),
                        radius=m.get("radius", 0.0))


# ---------------------------------------------------------------------------
# scenario runners

def _run_1d_mirror_vacuum(cfg: dict):
    params = _mirror_from_cfg(cfg)
    cat = CatSpec(alpha_mag=cfg["cat"]["alpha_mag"], phase=cfg["cat"]["phase"])
    dq = derived_quantities(params, cat)
    gamma = damping_rate(params)
    roots = characteristic_roots(params)
    v_over_c = dq.packet_velocity / CODATA.c

    td_amp = td_cat_vacuum(dq.alpha_mag, gamma)
    td_sep = td_from_separation(dq.delta_x, dq.ground_width, gamma)
    td_rel = td_relative_1d(v_over_c, params.omega0)
    osc = roots.oscillatory[0]

    summary = {
        "scenario": "1d-mirror-vacuum",
        "units": "SI",
        "inputs": {"mass_kg": params.mass, "omega0_rad_per_s": params.omega0,
                   "alpha_mag": dq.alpha_mag},
        "derived": {
            "gamma_per_s": gamma,
            "ground_width_m": dq.ground_width,
            "delta_x_m": dq.delta_x,
            "packet_velocity_m_per_s": dq.packet_velocity,
            "v_over_c": v_over_c,
            "hbar_omega0_over_Mc2": CODATA.hbar * params.omega0 / (
                params.mass * CODATA.c**2),
            "td_routes_s": {
                "amplitude": td_amp.td,
                "separation": td_sep.td,
                "relative_weight": td_rel.td,
            },
            "characteristic_roots": {
                "oscillatory_re_per_s": osc.real,
                "oscillatory_im_per_s": osc.imag,
                "runaway_per_s": roots.runaway,
                "re_deviation_rel": roots.re_deviation_rel,
            },
        },
    }
    cov_xx = dq.delta_x**2 / 4.0 + dq.ground_width**2
    cov_pp = (CODATA.hbar / (2.0 * dq.ground_width)) ** 2
    rows = _cat_series(td_amp.td, cfg["series_points"], cov_xx, cov_pp)
    return summary, ("t_seconds", rows)


def _run_sphere_rayleigh_vacuum(cfg: dict):
    params = _mirror_from_cfg(cfg)
    cat = CatSpec(alpha_mag=cfg["cat"]["alpha_mag"], phase=cfg["cat"]["phase"])
    dq = derived_quantities(params, cat)
    gamma_sph = damping_rate(params)
    gamma_flat = gamma_vacuum_1d(params)
    size = params.omega0 * params.radius / CODATA.c
    v_over_c = dq.packet_velocity / CODATA.c
    td_amp = td_cat_vacuum(dq.alpha_mag, gamma_sph)

    derived = {
        "gamma_sphere_per_s": gamma_sph,
        "gamma_plane_per_s": gamma_flat,
        "rayleigh_suppression": gamma_sph / gamma_flat,
        "size_parameter": size,
        "v_over_c": v_over_c,
        "td_routes_s": {"amplitude": td_amp.td},
    }
    # the closed-form route holds only deep inside size < 324^(1/6) v/c
    if size < 324.0 ** (1.0 / 6.0) * v_over_c:
        derived["td_routes_s"]["relative_weight"] = td_relative_sphere(
            v_over_c, params.omega0, params.radius).td
    else:
        derived["relative_weight_note"] = (
            "skipped: size parameter exceeds the validity window of the "
            "closed-form relative-weight route")

    summary = {
        "scenario": "sphere-rayleigh-vacuum",
        "units": "SI",
        "inputs": {"mass_kg": params.mass, "omega0_rad_per_s": params.omega0,
                   "radius_m": params.radius, "alpha_mag": dq.alpha_mag},
        "derived": derived,
    }
    cov_xx = dq.delta_x**2 / 4.0 + dq.ground_width**2
    cov_pp = (CODATA.hbar / (2.0 * dq.ground_width)) ** 2
    rows = _cat_series(td_amp.td, cfg["series_points"], cov_xx, cov_pp)
    return summary, ("t_seconds", rows)


def _thermal_sphere_summary(name: str, cfg: dict):
    params = _mirror_from_cfg(cfg)
    delta_x = cfg["delta_x"]
    gamma = damping_rate(params)
    lam = thermal_de_broglie(params)
    d1 = diffusion_asymptotic(params, gamma)
    td_lam = td_high_T(lam, delta_x, gamma)
    td_all = td_thermal_sphere_free(params, delta_x)
    td_diff = td_from_diffusion(d1, delta_x, oscillatory=False)

    summary = {
        "scenario": name,
        "units": "SI",
        "inputs": {"mass_kg": params.mass, "temperature_K": params.temperature,
                   "radius_m": params.radius, "delta_x_m": delta_x},
        "derived": {
            "gamma_per_s": gamma,
            "thermal_length_m": lam,
            "d1_kg2_m2_per_s3": d1,
            "td_routes_s": {
                "thermal_length": td_lam.td,
                "combined": td_all.td,
                "diffusion": td_diff.td,
            },
            "td_times_dx2_s_m2": td_all.td * delta_x**2,
        },
    }
    cov_xx = delta_x**2 / 4.0 + lam**2
    cov_pp = params.mass * CODATA.k_boltzmann * params.temperature
    rows = _cat_series(td_all.td, cfg["series_points"], cov_xx, cov_pp)
    return summary, ("t_seconds", rows)


def _run_sphere_thermal_free(cfg: dict):
    return _thermal_sphere_summary("sphere-thermal-free", cfg)


def _run_cosmic_background_sphere(cfg: dict):
    return _thermal_sphere_summary("cosmic-background-sphere", cfg)


def _run_sieve_pointer_states(cfg: dict):
    params = _mirror_from_cfg(cfg)
    gamma = gamma_vacuum_1d(params)
    d1 = diffusion_asymptotic(params, gamma)
    coeffs = coefficient_set(params, gamma=gamma, d1=d1)
    res = sieve_search(params, coeffs, r_max=cfg["r_max"],
                       objective=cfg["objective"])

    landscape = [{"r": row[0], "theta": row[1], "rate_per_s": row[2],
                  "entropy_at_eval_times": list(row[3:])}
                 for row in res.landscape]
    summary = {
        "scenario": "sieve-pointer-states",
        "units": "SI",
        "inputs": {"mass_kg": params.mass, "omega0_rad_per_s": params.omega0,
                   "objective": cfg["objective"]},
        "derived": {
            "gamma_per_s": gamma,
            "d1_kg2_m2_per_s3": d1,
            "r_star": res.r_star,
            "theta_star": res.theta_star,
            "rate_at_optimum_per_s": res.rate_at_optimum,
            "eval_times_s": list(res.eval_times),
            "argmin_r_per_time": list(res.argmin_r_per_time),
            "stable": res.stable,
        },
        "landscape": landscape,
    }

    # time series: the selected pointer state, period-averaged closed form
    # (step-resolved integration to 0.5/gamma is unreachable at vacuum scale)
    n = cfg["series_points"]
    width = ground_state_width(params)
    state = GaussianState(mean_x=0.0, mean_p=0.0, cov_xx=width**2, cov_xp=0.0,
                          cov_pp=(CODATA.hbar / (2.0 * width)) ** 2)
    mw = params.mass * coeffs.omega_star
    occ0 = (mw * state.cov_xx + state.cov_pp / mw) / (2.0 * CODATA.hbar)
    occ_inf = coeffs.d1 / (2.0 * gamma * CODATA.hbar * mw)
    rows = []
    for t in np.linspace(0.0, 0.5 / gamma, n):
        ent = secular_linear_entropy(state, params, coeffs, float(t),
                                     coeffs.omega_star)
        occ = occ_inf + (occ0 - occ_inf) * math.exp(-2.0 * gamma * float(t))
        rows.append({"time": float(t), "visibility": None,
                     "purity": 1.0 - ent,
                     "mean_x": 0.0, "mean_p": 0.0,
                     "cov_xx": CODATA.hbar * occ / mw, "cov_xp": 0.0,
                     "cov_pp": CODATA.hbar * occ * mw})
    return summary, ("t_seconds", rows)


def _run_wigner_cat_hight(cfg: dict):
    spec = CatWignerSpec(alpha_mag=cfg["cat"]["alpha_mag"],
                         phase=cfg["cat"]["phase"],
                         orientation=cfg["cat"]["orientation"])
    sc = SolverCoefficients(mass=None, omega=0.0, gamma=cfg["coefficients"]["gamma"],
                            d1=cfg["coefficients"]["d1"])
    grid = init_cat(spec, nx=cfg["grid"]["nx"], n_p=cfg["grid"]["np"])
    k = spec.fringe_wavenumber
    td_plain = 1.0 / (sc.d1 * k**2)
    td_avg = 2.0 / (sc.d1 * k**2)
    t_end = cfg["t_end_over_td"] * td_avg

    n_samples = cfg["time"]["n_samples"]
    dt = cfg["time"]["dt"]
    times = [0.0]
    vis = [fringe_visibility(grid)]
    rows = [_wigner_row(grid, vis[0])]
    for i in range(1, n_samples + 1):
        t = t_end * i / n_samples
        grid = evolve_grid(grid, sc, t, dt)
        v = fringe_visibility(grid)
        times.append(t)
        vis.append(v)
        rows.append(_wigner_row(grid, v))

    fit = measure_td(times, vis)
    px, _ = marginals(grid)
    peaks = _marginal_peaks(grid.x_axis, px)
    summary = {
        "scenario": "wigner-cat-highT",
        "units": "nondimensional (thermal solver scales)",
        "inputs": {"alpha_mag": spec.alpha_mag, "separation": spec.separation,
                   "fringe_wavenumber": k, "d1": sc.d1, "gamma": sc.gamma,
                   "nx": grid.nx, "np": grid.np, "dt": dt},
        "derived": {
            "td_measured": fit.td,
            "td_frozen_formula": td_plain,
            "td_period_averaged_formula": td_avg,
            "measured_over_frozen": fit.td / td_plain,
            "fit_r_squared": fit.r_squared,
            "fit_points": fit.n_points,
            "final_visibility": vis[-1],
            "final_min_w_over_max": wmin_over_wmax(grid),
            "final_norm_drift": grid_norm(grid) - 1.0,
            "marginal_peaks": peaks,
            "expected_peaks": [-0.5 * spec.separation, 0.5 * spec.separation],
        },
    }
    return summary, ("t_nondim", rows)


def _run_wigner_gaussian_oracle(cfg: dict):
    co = cfg["coefficients"]
    init = cfg["initial"]
    sc = SolverCoefficients(mass=co["mass"], omega=co["omega"], gamma=co["gamma"],
                            d1=co["d1"], d2=co["d2"])
    grid = init_gaussian(init["mean_x"], init["mean_p"], init["cov_xx"],
                         init["cov_xp"], init["cov_pp"],
                         nx=cfg["grid"]["nx"], n_p=cfg["grid"]["np"],
                         x_half_width=cfg["grid"]["x_half_width"],
                         p_half_width=cfg["grid"]["p_half_width"])
    # twin problem for the moment integrator, natural units
    natural = PhysicalConstants.natural()
    params = MirrorParams(mass=co["mass"], omega0=co["omega"])
    coeffs = CoefficientSet(omega_star=co["omega"], gamma=co["gamma"],
                            d1=co["d1"], d2=co["d2"])
    state = GaussianState(mean_x=init["mean_x"], mean_p=init["mean_p"],
                          cov_xx=init["cov_xx"], cov_xp=init["cov_xp"],
                          cov_pp=init["cov_pp"])

    dt = cfg["time"]["dt_periods"] * 2.0 * math.pi / sc.omega
    # keep the reference integrator an order of magnitude inside the grid's
    # time error so the comparison measures the grid, not the oracle
    ode_dt = 1e-3 * min(2.0 * math.pi / sc.omega,
                        1.0 / sc.gamma if sc.gamma > 0 else math.inf)
    t_end = cfg["time"]["t_end"]
    n_samples = cfg["time"]["n_samples"]
    names = ("mean_x", "mean_p", "cov_xx", "cov_xp", "cov_pp")
    series_grid = {nm: [] for nm in names}
    series_ode = {nm: [] for nm in names}
    rows = []
    prev_t = 0.0
    for i in range(n_samples + 1):
        t = t_end * i / n_samples
        if i:
            grid = evolve_grid(grid, sc, t, dt)
            state = evolve(state, params, coeffs, t - prev_t, dt=ode_dt)
        prev_t = t
        gm = grid_moments(grid)
        for nm, val in zip(names, gm):
            series_grid[nm].append(val)
        for nm in names:
            series_ode[nm].append(getattr(state, nm))
        rows.append({"time": t, "visibility": None,
                     "purity": grid_purity(grid),
                     **dict(zip(names, gm))})

    errors = {}
    for nm in names:
        scale = max(abs(v) for v in series_ode[nm])
        errors[nm] = max(abs(a - b) for a, b in zip(series_grid[nm], series_ode[nm])) / scale
    summary = {
        "scenario": "wigner-gaussian-oracle",
        "units": "nondimensional (oscillator solver scales)",
        "inputs": {**co, **{f"init_{k}": v for k, v in init.items()},
                   "nx": grid.nx, "np": grid.np, "dt": dt, "t_end": t_end},
        "derived": {
            "max_rel_moment_errors": errors,
            "max_rel_moment_error_overall": max(errors.values()),
            "final_purity_grid": grid_purity(grid),
            "final_purity_ode": purity(state, natural),
            "final_norm_drift": grid_norm(grid) - 1.0,
        },
    }
    return summary, ("t_nondim", rows)


def _run_identity_suite(cfg: dict):
    rng = np.random.default_rng(cfg["seed"])
    n = cfg["draws"]
    r = cfg["ranges"]

    def loguniform(lo, hi, size):
        return 10.0 ** rng.uniform(math.log10(lo), math.log10(hi), size)

    mass = loguniform(*r["mass_kg"], n)
    omega0 = loguniform(*r["omega0_rad_per_s"], n)
    alpha = loguniform(*r["alpha"], n)
    temp = loguniform(*r["temperature_K"], n)
    radius = loguniform(*r["radius_m"], n)
    delta_x = loguniform(*r["delta_x_m"], n)
    size_frac = loguniform(1e-3, 1.0, n)

    dev = {"amplitude_vs_separation": 0.0, "amplitude_vs_relative_weight": 0.0,
           "sphere_vs_relative_weight": 0.0, "thermal_chain": 0.0}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        for i in range(n):
            osc = MirrorParams(mass=mass[i], omega0=omega0[i])
            gamma = gamma_vacuum_1d(osc)
            width = ground_state_width(osc)
            sep = separation_from_alpha(alpha[i], osc)
            v_over_c = packet_velocity(osc, alpha[i]) / CODATA.c

            a = td_cat_vacuum(alpha[i], gamma).td
            b = td_from_separation(sep, width, gamma).td
            dev["amplitude_vs_separation"] = max(
                dev["amplitude_vs_separation"], abs(a / b - 1.0))

            c = td_relative_1d(v_over_c, omega0[i]).td
            dev["amplitude_vs_relative_weight"] = max(
                dev["amplitude_vs_relative_weight"], abs(a / c - 1.0))

            r_sph = size_frac[i] * v_over_c * CODATA.c / omega0[i]
            sphere = MirrorParams(mass=mass[i], omega0=omega0[i], radius=r_sph)
            g_sph = gamma_vacuum_sphere(sphere)
            d = td_cat_vacuum(alpha[i], g_sph).td
            e = td_relative_sphere(v_over_c, omega0[i], r_sph).td
            dev["sphere_vs_relative_weight"] = max(
                dev["sphere_vs_relative_weight"], abs(d / e - 1.0))

            free = MirrorParams(mass=mass[i], temperature=temp[i], radius=radius[i])
            g_th = gamma_thermal_sphere(free)
            lam = thermal_de_broglie(free)
            f = td_high_T(lam, delta_x[i], g_th).td
            g = td_thermal_sphere_free(free, delta_x[i]).td
            dev["thermal_chain"] = max(dev["thermal_chain"], abs(f / g - 1.0))

    tol = cfg["tolerance"]
    summary = {
        "scenario": "identity-suite",
        "units": "dimensionless deviations",
        "inputs": {"draws": n, "seed": cfg["seed"], "tolerance": tol},
        "derived": {"max_relative_deviation": dev},
        "pass": all(v <= tol for v in dev.values()),
    }
    return summary, None


def _wigner_row(grid, vis) -> dict:
    gm = grid_moments(grid)
    return {"time": grid.time, "visibility": vis, "purity": grid_purity(grid),
            "mean_x": gm[0], "mean_p": gm[1], "cov_xx": gm[2],
            "cov_xp": gm[3], "cov_pp": gm[4]}


def _marginal_peaks(axis, density) -> list[float]:
    """Positions of interior local maxima above a tenth of the global peak."""
    top = float(np.max(density))
    peaks = [float(axis[i]) for i in range(1, len(density) - 1)
             if density[i] > density[i - 1] and density[i] >= density[i + 1]
             and density[i] > 0.1 * top]
    return peaks


# ---------------------------------------------------------------------------
# registry

@dataclass(frozen=True)
class _Scenario:
    name: str
    summary: str
    detail: str
    defaults: dict
    runner: object


_COMMON_OUTPUT = {"directory": "runs"}

_REGISTRY: dict[str, _Scenario] = {}


def _register(name, summary, detail, defaults, runner):
    defaults = dict(defaults)
    defaults["output"] = dict(_COMMON_OUTPUT)
    _REGISTRY[name] = _Scenario(name, summary, detail, defaults, runner)


_register(
    "1d-mirror-vacuum",
    "Plane mirror oscillating in vacuum: friction rate, cat lifetime by "
    "three routes, characteristic roots.",
    "A perfectly reflecting plane mirror on a spring radiates photon pairs\n"
    "when it moves, which damps it and destroys superpositions of motional\n"
    "states. Reports the T=0 friction rate, the lifetime of a two-packet\n"
    "superposition computed from the amplitude, from the separation, and\n"
    "from the emitted-weight argument (all three agree identically), and\n"
    "the roots of the radiation-reaction characteristic polynomial. The\n"
    "CSV holds the analytic fringe-overlap decay.",
    {
        "mirror": {"mass": 1e-21, "omega0": 1e10},
        "cat": {"alpha_mag": 10.0, "phase": 0.0},
        "series_points": 25,
    },
    _run_1d_mirror_vacuum,
)

_register(
    "sphere-rayleigh-vacuum",
    "Small dielectric sphere in vacuum: sixth-power size suppression of "
    "the friction and the cat lifetime.",
    "A sphere small against the oscillation wavelength couples to the\n"
    "vacuum like a Rayleigh scatterer: its friction rate is the plane\n"
    "value suppressed by (omega0 R / c)^6 / 108. Superpositions become\n"
    "practically indestructible by this channel. The closed-form\n"
    "relative-weight lifetime route is reported only inside its validity\n"
    "window (size parameter below ~2.6 v/c).",
    {
        "mirror": {"mass": 1e-21, "omega0": 1e10, "radius": 1e-5},
        "cat": {"alpha_mag": 10.0, "phase": 0.0},
        "series_points": 25,
    },
    _run_sphere_rayleigh_vacuum,
)

_register(
    "sphere-thermal-free",
    "Free sphere in thermal radiation: drag rate, thermal wavelength, and "
    "spatial-coherence lifetime by three routes.",
    "A free sphere of radius R in a photon bath at temperature T feels a\n"
    "drag -(M Gamma) v with Gamma proportional to T^4 R^2 / M, and the\n"
    "coherence between positions Delta-x apart dies in\n"
    "(lambda_T / Delta-x)^2 / Gamma, with lambda_T the thermal de Broglie\n"
    "length hbar / sqrt(2 M kB T). Inputs: temperature_K, radius_m,\n"
    "mass_kg, delta_x_m. The three routes (thermal-length, combined\n"
    "closed form, diffusion) agree identically; the mass cancels in the\n"
    "combined form.",
    {
        "mirror": {"mass": 1e-9, "temperature": 300.0, "radius": 1e-4},
        "delta_x": 1e-9,
        "series_points": 25,
    },
    _run_sphere_thermal_free,
)

_register(
    "cosmic-background-sphere",
    "Centimeter sphere in the 2.7 K cosmic photon background: coherence "
    "over a micron dies in nanoseconds.",
    "The flagship cold-and-empty estimate: a sphere with R = 1 cm sitting\n"
    "in the cosmic microwave background at T = 2.7 K. Even this feeble\n"
    "bath kills micron-scale superpositions in about 2.7 nanoseconds;\n"
    "the summary reports td and the mass-independent product\n"
    "td * delta_x^2 (about 2.7e-21 s m^2).",
    {
        "mirror": {"mass": 1.0, "temperature": 2.7, "radius": 1e-2},
        "delta_x": 1e-6,
        "series_points": 25,
    },
    _run_cosmic_background_sphere,
)

_register(
    "sieve-pointer-states",
    "Predictability sieve over squeezed Gaussians: the coherent states "
    "win.",
    "Minimizes the rotation-averaged entropy production rate over the\n"
    "family of pure squeezed states of the oscillator, then re-ranks the\n"
    "landscape at later times by actually evolving every candidate. The\n"
    "optimum sits at zero squeezing: coherent states are the pointer\n"
    "states of vacuum-friction decoherence. The CSV follows the selected\n"
    "state's purity under the full evolution (it stays pure: it is a\n"
    "fixed point of the covariance flow).",
    {
        "mirror": {"mass": 1e-21, "omega0": 1e10},
        "r_max": 2.0,
        "objective": "rotation_averaged",
        "series_points": 21,
    },
    _run_sieve_pointer_states,
)

_register(
    "wigner-cat-highT",
    "Grid solver, desk-scale units: fringe decay under pure momentum "
    "diffusion, measured against the closed formula.",
    "Evolves a two-packet state under momentum diffusion alone (thermal\n"
    "solver units: d1 = 1, no drift) and fits the decay of the\n"
    "interference-fringe amplitude. The fitted constant lands on\n"
    "1 / (d1 k^2) with k the fringe wavenumber; the run extends to five\n"
    "times the period-averaged formula so the end state is fringe-free:\n"
    "the final Wigner function is positive to 1e-3 of its peak and the\n"
    "position marginal keeps its two packets in place.",
    {
        "cat": {"alpha_mag": 2.0, "phase": 0.0, "orientation": "position"},
        "coefficients": {"d1": 1.0, "gamma": 0.0},
        "grid": {"nx": 256, "np": 256},
        "time": {"dt": 5e-4, "n_samples": 50},
        "t_end_over_td": 5.0,
    },
    _run_wigner_cat_hight,
)

_register(
    "wigner-gaussian-oracle",
    "Grid solver vs the exact Gaussian moment flow: five moments tracked "
    "through one damping time.",
    "Evolves a mixed Gaussian through one damping time with rotation,\n"
    "damping, and diffusion all on (oscillator solver units), and compares\n"
    "the grid's five moments against the closed moment ODEs at every\n"
    "sample. Errors are reported relative to each moment's peak magnitude\n"
    "over the run; the default grid keeps all five below 1e-3, and halving\n"
    "the momentum spacing at least halves them.",
    {
        "coefficients": {"mass": 0.5, "omega": 1.0, "gamma": 0.05,
                         "d1": 0.025, "d2": 0.0},
        "initial": {"mean_x": 2.0, "mean_p": 0.25, "cov_xx": 1.69,
                    "cov_xp": 0.05, "cov_pp": 0.16},
        "grid": {"nx": 256, "np": 256, "x_half_width": 14.0, "p_half_width": 7.0},
        "time": {"dt_periods": 0.005, "t_end": 20.0, "n_samples": 40},
    },
    _run_wigner_gaussian_oracle,
)

_register(
    "identity-suite",
    "Cross-route consistency: every lifetime identity checked over random "
    "parameter draws.",
    "Draws random valid parameters (seeded, reproducible) and checks that\n"
    "the independent lifetime routes agree to the stated tolerance:\n"
    "amplitude vs separation, amplitude vs relative emitted weight, the\n"
    "sphere chain, and the thermal chain. Exit code is nonzero when any\n"
    "deviation exceeds the tolerance.",
    {
        "draws": 1000,
        "seed": 20260819,
        "tolerance": 1e-12,
        "ranges": {
            "mass_kg": [1e-24, 1e3],
            "omega0_rad_per_s": [1e6, 1e15],
            "alpha": [3.0, 100.0],
            "temperature_K": [0.1, 1000.0],
            "radius_m": [1e-8, 1e-2],
            "delta_x_m": [1e-12, 1e-3],
        },
    },
    _run_identity_suite,
)


# ---------------------------------------------------------------------------
# public surface

@dataclass(frozen=True)
class RunReport:
    scenario: str
    summary: dict
    out_dir: Path
    artifacts: tuple[str, ...]
    wall_clock_seconds: float


def list_scenarios() -> list[tuple[str, str]]:
    return [(s.name, s.summary) for s in _REGISTRY.values()]


def scenario_defaults(name: str) -> dict:
    if name not in _REGISTRY:
        raise UnknownScenario(f"no scenario named {name!r}")
    return copy.deepcopy(_REGISTRY[name].defaults)


def describe(name: str) -> str:
    if name not in _REGISTRY:
        raise UnknownScenario(f"no scenario named {name!r}")
    s = _REGISTRY[name]
    return (f"{s.name}\n{'=' * len(s.name)}\n{s.summary}\n\n{s.detail}\n\n"
            f"defaults:\n{_json_render(s.defaults)}\n")


def run_scenario(name: str, overrides: dict | None = None,
                 out_base: str | None = None) -> RunReport:
    """Run a registered scenario and persist summary, series, manifest."""
    if name not in _REGISTRY:
        raise UnknownScenario(f"no scenario named {name!r}")
    sc = _REGISTRY[name]
    cfg = _merge_config(sc.defaults, overrides or {})

    started = datetime.now(timezone.utc).isoformat()
    t0 = time.perf_counter()
    summary, series = sc.runner(cfg)
    wall = time.perf_counter() - t0

    base = out_base or os.environ.get(_OUT_DIR_ENV) or cfg["output"]["directory"]
    out_dir = Path(base) / name
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create output directory {out_dir}: {exc}") from exc

    artifacts = ["summary.json"]
    _write_atomic(out_dir / "summary.json", _json_render(summary) + "\n")
    if series is not None:
        time_label, rows = series
        _write_atomic(out_dir / "series.csv", _render_csv(time_label, rows))
        artifacts.append("series.csv")

    manifest = {
        "schema_version": _SCHEMA_VERSION,
        "package_version": _version,
        "scenario": name,
        "config": cfg,
        "derived": summary.get("derived", {}),
        "artifacts": artifacts,
        "started_utc": started,
        "wall_clock_seconds": wall,
    }
    _write_atomic(out_dir / "manifest.json", _json_render(manifest) + "\n")
    return RunReport(scenario=name, summary=summary, out_dir=out_dir,
                     artifacts=tuple(artifacts), wall_clock_seconds=wall)
