"""Time marching: three-stage strong-stability-preserving RK with limiting.

Each stage is one full-step forward-Euler update of averages and point values,
including ghost refill at the stage time, the mid-cell admissibility fix, flux
correction for the averages and companion blending for the points.  Stage
outputs are convexly recombined, so every safety property of a single stage
survives the full step.

When a stage reports a violated step-size precondition (or an inadmissible
intermediate/companion state), the whole step is retried from the saved state
with half the step; genuinely invalid states outside that protocol abort with
a negative-state error.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import boundary as bcmod
from . import semidiscrete as sd
from .errors import ConfigError, RetryExhaustedError, StepConstraintViolation
from .grid import DofField
from .limit_average import limit_fluxes_1d, limit_fluxes_2d
from .limit_point import fix_cell_centers, limit_points_1d, limit_points_2d
from .splitting import KINDS

BP_SCOPES = ("off", "global", "local")


@dataclass
class SchemeConfig:
    kind: str = "llf"
    cfl: float = 0.4
    average_bp: str = "off"
    point_bp: str = "off"
    kappa: float | None = None
    max_retries: int = 20

    def validate(self, system):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown point-update kind '{self.kind}'")
        if self.average_bp not in BP_SCOPES or self.point_bp not in BP_SCOPES:
            raise ConfigError("limiter scopes must be one of off/global/local")
        if not 0.0 < self.cfl:
            raise ConfigError("cfl must be positive")
        if self.kind == "vh" and not system.is_euler:
            raise ConfigError("the van Leer/Haenel splitting needs the Euler system")
        if self.kappa is not None:
            if not system.is_euler:
                raise ConfigError("the shock sensor is defined for the Euler system only")
            if self.average_bp == "off":
                raise ConfigError("the shock sensor scales the average flux correction; "
                                  "enable average_bp")
            if self.kappa < 0:
                raise ConfigError("kappa must be nonnegative")
        if self.max_retries < 0:
            raise ConfigError("max_retries must be nonnegative")


@dataclass
class RunStats:
    steps: int = 0
    retries: int = 0
    t: float = 0.0
    dt_last: float = 0.0
    dt_min: float = np.inf
    min_density: float = np.inf
    min_pressure: float = np.inf
    u_min: float = np.inf
    u_max: float = -np.inf
    theta_s_min: float = 1.0
    sensor_faces: int = 0


def _lincomb(ca, Va, cb, Vb):
    fields = {}
    for name, arr in Va.families():
        fields[name] = ca * arr + cb * getattr(Vb, name)
    return DofField(**fields)


class Solver:
    """Owns the state, the boundary description and the marching loop."""

    def __init__(self, grid, system, bc, config, state=None):
        config.validate(system)
        self.grid = grid
        self.system = system
        self.bc = bc
        self.config = config
        self.walls = bcmod.wall_flux_lines(grid, bc)
        self.t = 0.0
        self.stats = RunStats()
        # persistent dt throttle: cases whose limiter budget sits below the
        # CFL estimate would otherwise pay a rejected step every step
        self._throttle = 1.0
        self._masks = self._build_masks()
        if state is not None:
            self.set_state(state)
        else:
            self.state = None

    def _build_masks(self):
        g = self.grid
        if g.nd == 1:
            return {
                "avg": np.ones(g.n, dtype=bool),
                "face_x": np.ones(g.n + 1, dtype=bool),
            }
        return {
            "avg": g.mask_cells(),
            "face_x": g.mask_fx(),
            "face_y": g.mask_fy(),
            "corner": g.mask_corner(),
        }

    def _interior_views(self, V):
        g = self.grid
        ng = g.n_ghost
        if g.nd == 1:
            yield "avg", V.avg[ng:ng + g.n], self._masks["avg"]
            yield "face_x", V.face_x[ng:ng + g.n + 1], self._masks["face_x"]
            return
        sxf, syf = slice(ng, ng + g.nx + 1), slice(ng, ng + g.ny + 1)
        yield "avg", V.avg[g.scx, g.scy], self._masks["avg"]
        yield "face_x", V.face_x[sxf, g.scy], self._masks["face_x"]
        yield "face_y", V.face_y[g.scx, syf], self._masks["face_y"]
        yield "corner", V.corner[sxf, syf], self._masks["corner"]

    def set_state(self, V, t=0.0):
        self.state = V
        self.t = t
        self.stats.t = t
        self._fold_extrema(V)

    def _fold_extrema(self, V):
        st = self.stats
        if self.system.is_euler:
            for _, arr, mask in self._interior_views(V):
                vals = arr[mask]
                st.min_density = min(st.min_density, float(vals[..., 0].min()))
                st.min_pressure = min(st.min_pressure, float(self.system.pressure(vals).min()))
        else:
            for _, arr, mask in self._interior_views(V):
                vals = arr[mask]
                st.u_min = min(st.u_min, float(vals.min()))
                st.u_max = max(st.u_max, float(vals.max()))

    def _domain_reductions(self, V):
        if self.system.is_euler:
            rmin, pmin = np.inf, np.inf
            for _, arr, mask in self._interior_views(V):
                vals = arr[mask]
                rmin = min(rmin, float(vals[..., 0].min()))
                pmin = min(pmin, float(self.system.pressure(vals).min()))
            return {"eps_rho": rmin, "eps_p": pmin}
        umin, umax = np.inf, -np.inf
        for _, arr, mask in self._interior_views(V):
            vals = arr[mask]
            umin = min(umin, float(vals.min()))
            umax = max(umax, float(vals.max()))
        return {"u_min": umin, "u_max": umax}

    def cfl_dt(self, V=None):
        V = self.state if V is None else V
        g, sysm = self.grid, self.system
        speed = 0.0
        for _, arr, mask in self._interior_views(V):
            vals = arr[mask]
            if g.nd == 1:
                s = sysm.spectral_radius(vals, 0) / g.dx
            else:
                s = sysm.spectral_radius(vals, 0) / g.dx + sysm.spectral_radius(vals, 1) / g.dy
            speed = max(speed, float(s.max()))
        return self.config.cfl / max(speed, 1e-300)

    def _validate_interior(self, V):
        for name, arr, mask in self._interior_views(V):
            self.system.validate(arr[mask], where=name)

    def _validate_centers(self, centers):
        g, ng = self.grid, self.grid.n_ghost
        if g.nd == 1:
            block = centers[ng - 1:ng + g.n + 1]
            self.system.validate(block, where="cell centers")
            return
        block = centers[ng - 1:ng + g.nx + 1, ng - 1:ng + g.ny + 1]
        if g.solid is not None:
            keep = ~g.solid[ng - 1:ng + g.nx + 1, ng - 1:ng + g.ny + 1]
            block = block[keep]
        self.system.validate(block, where="cell centers")

    def _stage(self, V, t, dt):
        grid, sysm, cfg = self.grid, self.system, self.config
        g = grid.n_ghost
        bcmod.fill_ghosts(grid, V, sysm, self.bc, t)
        bp_avg = cfg.average_bp != "off"
        bp_pt = cfg.point_bp != "off"
        if sysm.is_euler and not (bp_avg and bp_pt):
            self._validate_interior(V)

        need_centers = grid.nd == 2 or cfg.kind != "js"
        centers = sd.cell_centers(grid, V) if need_centers else None
        if need_centers and sysm.is_euler:
            if bp_avg or bp_pt:
                centers = fix_cell_centers(sysm, V.avg, centers)
            else:
                self._validate_centers(centers)

        dom = self._domain_reductions(V) if (bp_avg or bp_pt) else None
        diag = {}
        out = V.copy()
        if grid.nd == 1:
            n = grid.n
            rhs_p = sd.point_rhs_1d(grid, V, sysm, cfg.kind, centers)
            F = sd.interface_flux_1d(grid, V, sysm, self.walls)
            if bp_avg:
                F, diag = limit_fluxes_1d(grid, V, sysm, F, dt, cfg.average_bp, cfg.kappa, dom)
            out.avg[g:g + n] = V.avg[g:g + n] + dt * sd.average_rhs_1d(grid, F)
            fe = V.face_x[g:g + n + 1] + dt * rhs_p
            if bp_pt:
                fe = limit_points_1d(grid, V, fe, sysm, dt, cfg.point_bp, dom)
            out.face_x[g:g + n + 1] = fe
            return out, diag

        nx, ny = grid.nx, grid.ny
        sxf, syf = slice(g, g + nx + 1), slice(g, g + ny + 1)
        rhs_fx, rhs_fy, rhs_co = sd.point_rhs_2d(grid, V, sysm, cfg.kind, centers)
        Fx, Fy = sd.quadrature_fluxes_2d(grid, V, sysm, self.walls)
        if bp_avg:
            Fx, Fy, diag = limit_fluxes_2d(grid, V, sysm, Fx, Fy, dt,
                                           cfg.average_bp, cfg.kappa, dom)
        # solid-covered cells keep their ghost-fill value; evolving them would
        # leak garbage into the reflective exterior fills that mirror them
        upd = V.avg[grid.scx, grid.scy] + dt * sd.average_rhs_2d(grid, Fx, Fy)
        cmask = self._masks["avg"]
        out.avg[grid.scx, grid.scy] = np.where(
            cmask[..., None], upd, V.avg[grid.scx, grid.scy])
        fe_fx = V.face_x[sxf, grid.scy] + dt * rhs_fx
        fe_fy = V.face_y[grid.scx, syf] + dt * rhs_fy
        fe_co = V.corner[sxf, syf] + dt * rhs_co
        if bp_pt:
            fe_fx, fe_fy, fe_co = limit_points_2d(
                grid, V, fe_fx, fe_fy, fe_co, sysm, dt, cfg.point_bp, dom, self._masks
            )
        # points with no adjacent fluid cell are boundary-fill property, not
        # evolved unknowns
        mfx, mfy, mco = (self._masks[k][..., None] for k in ("face_x", "face_y", "corner"))
        out.face_x[sxf, grid.scy] = np.where(mfx, fe_fx, V.face_x[sxf, grid.scy])
        out.face_y[grid.scx, syf] = np.where(mfy, fe_fy, V.face_y[grid.scx, syf])
        out.corner[sxf, syf] = np.where(mco, fe_co, V.corner[sxf, syf])
        return out, diag

    def _fold_diag(self, diags):
        st = self.stats
        for d in diags:
            if "theta_s_min" in d:
                st.theta_s_min = min(st.theta_s_min, d["theta_s_min"])
                st.sensor_faces += d["sensor_faces"]

    def step(self, t_end=None):
        """Advance one time step (with retries); returns the accepted dt."""
        V0 = self.state
        dt = self.cfl_dt(V0) * self._throttle
        if t_end is not None:
            dt = min(dt, t_end - self.t)
        if not dt > 0.0:
            raise ValueError("nonpositive time step requested")
        last = None
        for _ in range(self.config.max_retries + 1):
            try:
                s1, d1 = self._stage(V0, self.t, dt)
                s1s, d2 = self._stage(s1, self.t + dt, dt)
                s2 = _lincomb(0.75, V0, 0.25, s1s)
                s2s, d3 = self._stage(s2, self.t + 0.5 * dt, dt)
                out = _lincomb(1.0 / 3.0, V0, 2.0 / 3.0, s2s)
            except StepConstraintViolation as exc:
                last = exc
                self.stats.retries += 1
                dt *= 0.5
                self._throttle = max(0.5 * self._throttle, 2.0 ** -20)
                continue
            self.state = out
            self.t += dt
            self._throttle = min(1.0, 1.05 * self._throttle)
            st = self.stats
            st.steps += 1
            st.t = self.t
            st.dt_last = dt
            st.dt_min = min(st.dt_min, dt)
            self._fold_diag((d1, d2, d3))
            self._fold_extrema(out)
            return dt
        raise RetryExhaustedError(
            f"step at t={self.t:.6g} failed after {self.config.max_retries} halvings: {last}"
        )

    def run(self, t_end, callback=None, max_steps=None):
        """March to ``t_end``; returns the accumulated statistics."""
        tiny = 1e-14 * max(1.0, abs(t_end))
        while self.t < t_end - tiny:
            self.step(t_end)
            if callback is not None:
                callback(self)
            if max_steps is not None and self.stats.steps >= max_steps:
                break
        return self.stats
