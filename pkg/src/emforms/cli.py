"""Command-line front end: ``emforms <command> [--scenario NAME|PATH] [flags]``.

Every command builds a :class:`~emforms.report.RunReport`, prints it as JSON
(or writes it to ``--out``) and exits 0 iff every assertion passed.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import gridio, lorentz, topology
from .characteristic import WaveData, characteristic_vector, contraction_residuals, dispersion_check
from .dynamics import (
    IntegratorConfig,
    Method,
    charged_rhs,
    energy_theorem_residual,
    gyro_center,
    integrate,
    write_trajectory_csv,
)
from .errors import EMFormsError
from .fields import (
    EMFieldSample,
    SourceSample,
    dual_field,
    maxwell_residual_first,
    maxwell_residual_second,
    omega_f,
    omega_f_star,
    poynting_balance,
)
from .geometry import StencilConfig, det_2form, wedge_22
from .photon_flow import IndexField, cfl_limit, evolve, trace_ray
from .report import AT_LEAST, NEAR, RunReport
from .scenarios import Scenario, build, load
from .scenarios.schema import ParabolicIndex, PlaneWaveSpec, RampIndex

__all__ = [
    "main",
    "build_parser",
    "cmd_verify",
    "cmd_particle",
    "cmd_rays",
    "cmd_wave",
    "cmd_monopole",
    "cmd_lorentz",
    "cmd_characteristic",
    "Options",
]

# order estimates are only meaningful above this residual level
ORDER_FLOOR = 1e-10


@dataclass
class Options:
    """Numerical flags; None falls back to the scenario settings, then to defaults."""

    h: Optional[float] = None
    du: Optional[float] = None
    steps: Optional[int] = None
    tol: Optional[float] = None
    seed: Optional[int] = None
    method: str = "rk4"
    trials: Optional[int] = None


def _pick(flag, setting, default):
    if flag is not None:
        return flag
    if setting is not None:
        return setting
    return default


def _scenario(name_or_path: str, opts: Options) -> Scenario:
    spec = load(name_or_path)
    if opts.seed is not None:
        spec = spec.model_copy(update={"seed": int(opts.seed)})
    return build(spec)


def _order(coarse: float, fine: float) -> float:
    if coarse <= ORDER_FLOOR or fine <= 0:
        return float("nan")
    return float(np.log2(coarse / fine))


# verify --------------------------------------------------------------------


def cmd_verify(sc: Scenario, opts: Options = Options()) -> RunReport:
    st = sc.spec.settings
    h = _pick(opts.h, st.h, 1e-3)
    tol = _pick(opts.tol, st.tol, 1e-6)
    rep = RunReport("verify", sc.spec.name, {"h": h, "tol": tol, "probes": len(sc.probes), "c": sc.c})
    m, c = sc.medium, sc.c
    src = sc.source or (lambda x: SourceSample(0.0, np.zeros(3)))
    cfgs = (StencilConfig(h), StencilConfig(h).halved())
    worst = {"det": 0.0, "wedge": 0.0}
    res = {k: [0.0, 0.0] for k in ("first", "second", "poynting")}
    for x in sc.probes:
        f = sc.field(x)
        w, ws = omega_f(f), omega_f_star(f, m)
        scale = (f.E @ f.E + f.B @ f.B) ** 2 + 1e-300
        det_err = abs(det_2form(w) - (f.E @ f.B) ** 2) / scale
        wedge_err = abs(wedge_22(ws, w) - (m.eta * f.E @ f.E - f.B @ f.B)) / np.sqrt(scale)
        worst["det"] = max(worst["det"], det_err)
        worst["wedge"] = max(worst["wedge"], wedge_err)
        row = {"x": x, "det_rel_err": det_err, "wedge_rel_err": wedge_err}
        for j, cfg in enumerate(cfgs):
            r1 = maxwell_residual_first(sc.field, x, cfg).norm()
            r2 = maxwell_residual_second(sc.field, m, src, x, cfg, c).norm()
            rp = abs(poynting_balance(sc.field, m, src, x, cfg, c))
            for k, v in (("first", r1), ("second", r2), ("poynting", rp)):
                res[k][j] = max(res[k][j], v)
            if j == 0:
                row.update(first=r1, second=r2, poynting=rp)
        rep.add_row("probes", **row)
    rep.check("det(omega_f) = (E.B)^2", worst["det"], 1e-10)
    rep.check("omega_f* ^ omega_f = eta E^2 - B^2", worst["wedge"], 1e-10)
    labels = {"first": "first group d omega_f = 0", "second": "second group d omega_f* = mu_r J", "poynting": "Poynting balance"}
    for k, (coarse, fine) in res.items():
        rep.check(f"{labels[k]} max residual", coarse, tol)
        order = _order(coarse, fine)
        rep.add_row("convergence", residual=k, h=h, coarse=coarse, fine=fine, order=order)
        if sc.exact and np.isfinite(order):
            rep.check(f"{labels[k]} convergence order", order, 0.2, NEAR, 2.0)
    return rep


# particle ------------------------------------------------------------------


def _uniform_gyro(sc: Scenario, ch) -> Optional[float]:
    """B0 if the field is a pure uniform B along z and the charge is electric only."""
    u = sc.uniform_field
    if u is None or ch.q_m != 0 or ch.q_e == 0:
        return None
    if np.any(u.E != 0) or np.any(u.B[:2] != 0) or u.B[2] == 0:
        return None
    return float(u.B[2])


def cmd_particle(sc: Scenario, opts: Options = Options(), out: Optional[Path] = None) -> RunReport:
    st = sc.spec.settings
    cfg = IntegratorConfig(
        du=_pick(opts.du, st.du, 1e-3),
        steps=_pick(opts.steps, st.steps, 1000),
        method=Method.RK4 if opts.method == "rk4" else Method.RK45,
    )
    tol = _pick(opts.tol, st.tol, 1e-8)
    c = sc.c
    rep = RunReport("particle", sc.spec.name, {"du": cfg.du, "steps": cfg.steps, "method": cfg.method.value, "tol": tol})
    if not sc.particles:
        raise EMFormsError("scenario has no particles")
    for i, (s0, ch) in enumerate(sc.particles):
        traj = integrate(s0, charged_rhs(sc.field, ch, c), cfg, c=c)
        tag = f"particle {i}"
        drift = traj.hamiltonian_drift()
        rep.check(f"{tag} Hamiltonian drift", drift, tol)
        row = {"particle": i, "q_e": ch.q_e, "q_m": ch.q_m, "H0": traj.H[0], "H_drift": drift}
        if ch.q_e == 0 and ch.q_m == 0:
            dev = float(np.max(np.abs(traj.p - traj.p[0])))
            rep.check(f"{tag} momentum bitwise constant", dev, 0.0)
        else:
            et = energy_theorem_residual(traj, sc.field, ch)
            row["energy_theorem"] = et
            rep.check(f"{tag} energy theorem residual", et, 1e-8)
        B0 = _uniform_gyro(sc, ch)
        if B0 is not None:
            p_perp = np.linalg.norm(s0.p[1:3])
            radius = p_perp * c / abs(ch.q_e * B0)
            center = gyro_center(s0, B0, ch.q_e, c)
            r = np.linalg.norm(traj.q[:, 1:3] - center, axis=1)
            err = float(np.max(np.abs(r - radius)) / radius)
            row.update(radius=radius, radius_rel_err=err)
            rep.check(f"{tag} gyro radius relative error", err, 1e-6)
        if ch.q_m != 0:
            dual = integrate(s0, charged_rhs(dual_field(sc.field), ch.dual(), c), cfg, c=c)
            gap = float(np.max(np.abs(dual.states - traj.states)))
            row["duality_gap"] = gap
            rep.check(f"{tag} dyon duality pointwise match", gap, 1e-8)
        rep.add_row("particles", **row)
        if out is not None:
            path = out.with_name(f"{out.stem}_particle{i}.csv")
            write_trajectory_csv(traj, path)
            rep.files.append(str(path))
    return rep


# rays ----------------------------------------------------------------------


def _grin_period(z: np.ndarray, x: np.ndarray) -> float:
    """Mean spacing in z between upward zero crossings of x."""
    idx = np.nonzero((x[:-1] < 0) & (x[1:] >= 0))[0]
    if len(idx) < 2:
        return float("nan")
    zc = z[idx] - x[idx] * (z[idx + 1] - z[idx]) / (x[idx + 1] - x[idx])
    return float(np.mean(np.diff(zc)))


def cmd_rays(sc: Scenario, opts: Options = Options(), out: Optional[Path] = None) -> RunReport:
    st = sc.spec.settings
    steps = _pick(opts.steps, st.steps, 2000)
    t_end = _pick(None, st.t_end, 1.0)
    tol = _pick(opts.tol, st.tol, 1e-6)
    cfg = IntegratorConfig(du=t_end / steps, steps=steps, method=Method.RK4 if opts.method == "rk4" else Method.RK45)
    idx = sc.index or IndexField.uniform(sc.medium.eta)
    c = sc.c
    rep = RunReport("rays", sc.spec.name, {"t_end": t_end, "steps": steps, "tol": tol})
    if not sc.rays:
        raise EMFormsError("scenario has no rays")
    ispec = sc.spec.index
    for i, r0 in enumerate(sc.rays):
        path = trace_ray(r0, idx, t_end, cfg, c)
        tag = f"ray {i}"
        row = {"ray": i, "h_drift": path.hamiltonian_drift()}
        rep.check(f"{tag} Hamiltonian drift", path.hamiltonian_drift(), tol)
        if isinstance(ispec, RampIndex):
            ax = ispec.axis
            def sin_angle(p):
                return np.sqrt(max(1.0 - (p[ax] / np.linalg.norm(p)) ** 2, 0.0))
            eta_a = float(idx.value(path.q[0]))
            eta_b = float(idx.value(path.q[-1]))
            predicted = np.sqrt(eta_a / eta_b) * sin_angle(path.p[0])
            measured = sin_angle(path.p[-1])
            err = abs(measured - predicted) / predicted
            row.update(eta_start=eta_a, eta_end=eta_b, sin_in=sin_angle(path.p[0]), sin_out=measured, snell_rel_err=err)
            rep.check(f"{tag} Snell relative error", err, 1e-3)
        if isinstance(ispec, ParabolicIndex):
            a, b = ispec.transverse
            long_axis = 3 - a - b
            beta = path.p[0, long_axis] * c / path.h[0]
            analytic = 2 * np.pi * beta / (ispec.n0 * ispec.g)
            period = _grin_period(path.q[:, long_axis], path.q[:, a])
            err = abs(period - analytic) / analytic
            row.update(period=period, analytic_period=analytic, period_rel_err=err)
            rep.check(f"{tag} GRIN period relative error", err, 1e-2)
        rep.add_row("rays", **row)
        if out is not None:
            fp = out.with_name(f"{out.stem}_ray{i}.csv")
            data = np.column_stack((path.t, path.q, path.p, path.h))
            np.savetxt(fp, data, delimiter=",", header="t,q1,q2,q3,p1,p2,p3,h", comments="", fmt="%.17g")
            rep.files.append(str(fp))
    return rep


# wave ----------------------------------------------------------------------


def cmd_wave(sc: Scenario, opts: Options = Options(), out: Optional[Path] = None) -> RunReport:
    st = sc.spec.settings
    state = sc.grid_state
    if state is None:
        raise EMFormsError("scenario has no photon grid")
    idx = sc.index or IndexField.uniform(sc.medium.eta)
    c = sc.c
    eta_min = idx.eta_min if idx.eta_min is not None else float(idx.value(state.grid.positions()).min())
    dt = _pick(None, st.dt, cfl_limit(state.grid, eta_min, c))
    steps = _pick(opts.steps, st.steps, 1000)
    tol = _pick(opts.tol, st.tol, 1e-3)
    rep = RunReport("wave", sc.spec.name, {"dt": dt, "steps": steps, "shape": list(state.grid.shape), "tol": tol})
    final, series = evolve(state, idx, dt, steps, c=c, hbar=sc.spec.constants.hbar)
    rep.check("photon number max per-step relative change", series.max_step_change("mass"), 1e-12)
    rep.check("H[n, phi] relative drift", series.relative_drift("hamiltonian"), tol)
    rep.add_row(
        "summary",
        t_final=final.t,
        mass0=series.mass[0],
        mass_final=series.mass[-1],
        H0=series.hamiltonian[0],
        H_final=series.hamiltonian[-1],
    )
    if out is not None:
        mon = out.with_name(f"{out.stem}_monitors.csv")
        series.write_csv(mon)
        grid_path = out.with_name(f"{out.stem}_final.emfgrid")
        gridio.write_grid_state(final, grid_path)
        rep.files += [str(mon), str(grid_path)]
    return rep


# monopole ------------------------------------------------------------------


LOOP_LATITUDES = (np.pi / 4, np.pi / 2, 2 * np.pi / 3)


def cmd_monopole(sc: Scenario, opts: Options = Options()) -> RunReport:
    a = sc.monopole_strength()
    if a is None:
        raise EMFormsError("scenario defines no monopole strength")
    rep = RunReport("monopole", sc.spec.name, {"a": a})
    flux = topology.flux_integral(a)
    rep.check("|flux/(4 pi a) - 1|", abs(flux / (4 * np.pi * a) - 1), 1e-10)
    rep.add_row("flux", a=a, flux=flux, n_from_flux=flux)
    for theta in LOOP_LATITUDES:
        loop = topology.loop_integral(a, theta)
        rep.add_row("loops", theta=theta, loop=loop, flux=flux)
        rep.check(f"loop integral at theta={theta:.6f} vs flux", abs(loop - flux), 1e-9)
    k = sc.spec.constants
    f = sc.spec.field
    if sc.spec.field.type == "monopole_B" and sc.particles:
        q_e = sc.particles[0][1].q_e
        n, dist = topology.dirac_check(q_e, sc.medium.mu_r * f.q_m, k.h, k.c)
        rep.add_row("quantization", kind="dirac", n=n, distance=dist)
        rep.check("Dirac q_e q_m'/(h c) integer distance", dist, 1e-12)
    elif sc.spec.field.type == "coulomb":
        n, dist = topology.electric_quantization_check(f.q_e, k.e)
        rep.add_row("quantization", kind="electric", n=n, distance=dist)
        rep.check("q_e'/e integer distance", dist, 1e-12)
    return rep


# lorentz -------------------------------------------------------------------


def cmd_lorentz(sc: Scenario, opts: Options = Options()) -> RunReport:
    st = sc.spec.settings
    trials = _pick(opts.trials, st.trials, 1000)
    tol = _pick(opts.tol, st.tol, 1e-10)
    rng = np.random.default_rng(sc.spec.seed)
    rep = RunReport("lorentz", sc.spec.name, {"trials": trials, "tol": tol, "seed": sc.spec.seed})
    dual_max = det_max = wedge_max = 0.0
    for _ in range(trials):
        lam = lorentz.random_proper_lorentz(rng)
        f = EMFieldSample(rng.standard_normal(3), rng.standard_normal(3))
        dual_max = max(dual_max, lorentz.dual_invariance_residual(lam, f, 1.0))
        d, w = lorentz.scalar_invariants_check(lam, f)
        det_max, wedge_max = max(det_max, d), max(wedge_max, w)
    rep.add_row("max_residuals", dual=dual_max, det=det_max, wedge=wedge_max)
    rep.check("dual-form discrepancy at eta = 1", dual_max, tol)
    rep.check("|E.B| invariance", det_max, tol)
    rep.check("E^2 - B^2 invariance", wedge_max, tol)
    ce = lorentz.DUAL_COUNTEREXAMPLE
    r = lorentz.dual_invariance_residual(lorentz.boost(ce["beta"]), EMFieldSample(ce["E"], ce["B"]), ce["eta"])
    rep.add_row("counterexample", eta=ce["eta"], residual=r)
    rep.check("stored eta = 2 counterexample breaks invariance", r, 0.1, AT_LEAST)
    return rep


# characteristic ------------------------------------------------------------


def cmd_characteristic(sc: Scenario, opts: Options = Options()) -> RunReport:
    st = sc.spec.settings
    h = _pick(opts.h, st.h, 1e-3)
    m = sc.medium
    rep = RunReport("characteristic", sc.spec.name, {"h": h})
    null_seen = 0
    for x in sc.probes:
        f = sc.field(x)
        V = characteristic_vector(f, m)
        row = {"x": x, "null": V is not None}
        if V is not None:
            null_seen += 1
            a, b = contraction_residuals(V, f, m)
            norm = abs(V.V @ V.V - V.V0**2 / m.eta)
            row.update(V=V.V, i_omega=a, i_omega_star=b, norm_residual=norm)
            scale = np.sqrt(f.E @ f.E + f.B @ f.B)
            rep.check(f"contraction residuals at {np.round(x, 4).tolist()}", max(a, b) / scale, 1e-10)
            rep.check(f"V^2 - V0^2/eta at {np.round(x, 4).tolist()}", norm, 1e-10)
        rep.add_row("probes", **row)
    rng = np.random.default_rng(sc.spec.seed)
    spurious = 0
    for _ in range(20):
        f = EMFieldSample(rng.standard_normal(3), rng.standard_normal(3))
        spurious += characteristic_vector(f, m) is not None
    rep.check("random non-null fields yielding a characteristic vector", spurious, 0)
    if isinstance(sc.spec.field, PlaneWaveSpec):
        fs = sc.spec.field
        k = np.asarray(fs.k, dtype=float)
        k0 = np.linalg.norm(k) / np.sqrt(m.eta)
        pol = np.asarray(fs.polarization, dtype=float)
        pol = pol - (pol @ k) / (k @ k) * k

        # nonlinear profile of a null phase: the eikonal holds, differencing error does not vanish
        def phi(y):
            s = k @ y[1:] - k0 * y[0]
            return s + 0.5 * np.sin(s)

        wave = WaveData(phi, pol)
        res = []
        for cfg in (StencilConfig(h), StencilConfig(h).halved()):
            vals = [dispersion_check(wave, m, x, cfg, tol=1e-4) for x in sc.probes]
            res.append(max(max(abs(v[0]), abs(v[1])) for v in vals))
        order = _order(res[0], res[1])
        rep.add_row("dispersion", h=h, coarse=res[0], fine=res[1], order=order)
        rep.check("dispersion residual", res[0], 1e-4)
        if np.isfinite(order):
            rep.check("dispersion residual order", order, 0.2, NEAR, 2.0)
    return rep


# entry point ---------------------------------------------------------------

DEFAULT_SCENARIO = {
    "verify": "plane_wave",
    "particle": "gyro",
    "rays": "snell",
    "wave": "photon_grid",
    "monopole": "monopole_unit_flux",
    "lorentz": "lorentz",
    "characteristic": "plane_wave",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", help="scenario file or catalog name")
    common.add_argument("--h", type=float, help="finite-difference step")
    common.add_argument("--du", type=float, help="universal-time step")
    common.add_argument("--steps", type=int, help="number of steps")
    common.add_argument("--tol", type=float, help="primary assertion tolerance")
    common.add_argument("--seed", type=int, help="override the scenario seed")
    common.add_argument("--out", type=Path, help="write the JSON report here; data files go beside it")
    common.add_argument("--format", choices=("json", "csv"), default="json", help="tables inline (json) or as CSV files")
    common.add_argument("--method", choices=("rk4", "rk45"), default="rk4", help="integrator for particle and ray commands")
    common.add_argument("--trials", type=int, help="random trials for the lorentz suite")
    parser = argparse.ArgumentParser(prog="emforms", description="Electromagnetic 2-form identities and dynamics.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in DEFAULT_SCENARIO:
        sub.add_parser(name, parents=[common])
    return parser


def run(args: argparse.Namespace) -> RunReport:
    opts = Options(args.h, args.du, args.steps, args.tol, args.seed, args.method, args.trials)
    sc = _scenario(args.scenario or DEFAULT_SCENARIO[args.command], opts)
    cmd = args.command
    t0 = time.perf_counter()
    if cmd == "verify":
        rep = cmd_verify(sc, opts)
    elif cmd == "particle":
        rep = cmd_particle(sc, opts, args.out)
    elif cmd == "rays":
        rep = cmd_rays(sc, opts, args.out)
    elif cmd == "wave":
        rep = cmd_wave(sc, opts, args.out)
    elif cmd == "monopole":
        rep = cmd_monopole(sc, opts)
    elif cmd == "lorentz":
        rep = cmd_lorentz(sc, opts)
    else:
        rep = cmd_characteristic(sc, opts)
    rep.wall_time = time.perf_counter() - t0
    return rep


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "csv" and args.out is None:
        parser.error("--format csv needs --out")
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
    try:
        rep = run(args)
    except (EMFormsError, FileNotFoundError, ValueError) as exc:
        print(f"emforms {args.command}: {exc}", file=sys.stderr)
        return 2
    inline = args.format == "json"
    if not inline:
        rep.files += [str(p) for p in rep.write_tables_csv(args.out.with_suffix(""))]
    text = rep.to_json(include_tables=inline)
    if args.out is not None:
        args.out.write_text(text + "\n")
    else:
        print(text)
    return rep.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
