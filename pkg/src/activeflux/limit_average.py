"""Convex flux correction for the cell-average update.

Each interior interface carries a provably safe two-state LLF flux built from
the adjacent cell averages.  The high-order flux is written as that safe flux
plus a correction; the correction is scaled so that the two intermediate
states the average update can be decomposed into stay admissible (Euler) or
inside local/global solution bounds (scalar).  An optional shock sensor
(pressure curvature combined with a dilatation/vorticity discriminator)
multiplies the surviving correction once more.

The corrected fluxes stay single-valued per interface, so conservation is
untouched.  A step-size precondition makes the decomposition convex; when it
fails a retry signal is raised so the driver can halve the step.
"""
from __future__ import annotations

import numpy as np

from .errors import StepConstraintViolation
from .splitting import pair_alpha

EPS_CAP = 1e-13  # admissibility floors are never looser than this
_CON_TOL = 1.0 + 1e-12


def _two_state(system, UL, UR, axis):
    """Viscosity, safe flux and intermediate state for neighbouring averages."""
    alpha = pair_alpha(system, UL, UR, axis)
    FL = system.flux(UL, axis)
    FR = system.flux(UR, axis)
    a = alpha[..., None]
    flow = 0.5 * (FL + FR) - 0.5 * a * (UR - UL)
    ubar = 0.5 * (UL + UR) + (FL - FR) / (2.0 * a)
    return alpha, flow, ubar


def _mp_clamp(dF, alpha, ubar, lo_L, hi_L, lo_R, hi_R):
    """Scalar bound-preserving clamp of the flux correction."""
    a = alpha[..., None]
    up = np.minimum.reduce([dF, a * (ubar - lo_L[..., None]), a * (hi_R[..., None] - ubar)])
    dn = np.maximum.reduce([dF, a * (lo_R[..., None] - ubar), a * (ubar - hi_L[..., None])])
    return np.where(dF >= 0.0, np.maximum(up, 0.0), np.minimum(dn, 0.0))


def _pressure_theta(system, dF, alpha, ubar, eps_p_face):
    """Largest safe fraction of the (density-clamped) correction.

    Derived from requiring nonnegative scaled internal energy of both
    intermediate states; quadratic-in-theta terms are bounded by their linear
    majorant on [0, 1].
    """
    nd = system.nd
    rho_b = ubar[..., 0]
    mom_b = ubar[..., 1:1 + nd]
    E_b = ubar[..., 1 + nd]
    d_rho = dF[..., 0]
    d_mom = dF[..., 1:1 + nd]
    d_E = dF[..., 1 + nd]
    etil = eps_p_face / (system.gamma - 1.0)
    A = 0.5 * np.sum(d_mom * d_mom, axis=-1) - d_rho * d_E
    B = alpha * (d_rho * E_b + rho_b * d_E - np.sum(d_mom * mom_b, axis=-1) - etil * d_rho)
    C = alpha ** 2 * (rho_b * E_b - 0.5 * np.sum(mom_b * mom_b, axis=-1) - etil * rho_b)
    C = np.maximum(C, 0.0)
    den = np.maximum(A, 0.0) + np.abs(B)
    with np.errstate(over="ignore", invalid="ignore"):
        return np.where(den > 0.0, np.minimum(1.0, C / np.maximum(den, 1e-300)), 1.0)


def _euler_face_limit(system, F_high, alpha, flow, ubar, ebar_rho, ebar_p):
    dF = F_high - flow
    room = np.maximum(alpha * (ubar[..., 0] - ebar_rho), 0.0)
    dF = dF.copy()
    dF[..., 0] = np.clip(dF[..., 0], -room, room)
    theta = _pressure_theta(system, dF, alpha, ubar, ebar_p)
    return flow + theta[..., None] * dF


def _sensor_cells_1d(grid, A, system, ce):
    p = system.pressure(A)
    v = A[..., 1] / A[..., 0]
    g, n = grid.n_ghost, grid.n
    pc, pp, pm = p[ce], p[g:g + n + 2], p[g - 2:g + n]
    phi1 = np.abs(pp - 2.0 * pc + pm) / np.abs(pp + 2.0 * pc + pm)
    dv = v[g:g + n + 2] - v[g - 2:g + n]
    phi2 = np.maximum(-dv / (np.abs(dv) + 1e-40), 0.0)
    return phi1 * phi2


def _sensor_cells_2d(grid, A, system):
    """Sensor value on the one-cell-extended interior block."""
    g, nx, ny = grid.n_ghost, grid.nx, grid.ny
    cex, cey = slice(g - 1, g + nx + 1), slice(g - 1, g + ny + 1)
    p = system.pressure(A)
    pc = p[cex, cey]
    phix = np.abs(p[g:g + nx + 2, cey] - 2.0 * pc + p[g - 2:g + nx, cey]) / np.abs(
        p[g:g + nx + 2, cey] + 2.0 * pc + p[g - 2:g + nx, cey]
    )
    phiy = np.abs(p[cex, g:g + ny + 2] - 2.0 * pc + p[cex, g - 2:g + ny]) / np.abs(
        p[cex, g:g + ny + 2] + 2.0 * pc + p[cex, g - 2:g + ny]
    )
    phi1 = np.maximum(phix, phiy)
    v1 = A[..., 1] / A[..., 0]
    v2 = A[..., 2] / A[..., 0]
    ddx = lambda q: (q[g:g + nx + 2, cey] - q[g - 2:g + nx, cey]) / (2.0 * grid.dx)
    ddy = lambda q: (q[cex, g:g + ny + 2] - q[cex, g - 2:g + ny]) / (2.0 * grid.dy)
    div = ddx(v1) + ddy(v2)
    curl = ddx(v2) - ddy(v1)
    phi2 = np.maximum(-div / np.sqrt(div * div + curl * curl + 1e-40), 0.0)
    return phi1 * phi2


def limit_fluxes_1d(grid, V, system, F, dt, scope, kappa, dom):
    g, n, dx = grid.n_ghost, grid.n, grid.dx
    A = V.avg
    ce = slice(g - 1, g + n + 1)  # one-cell-extended interior block
    UL = A[g - 2:g + n + 1]
    UR = A[g - 1:g + n + 2]
    alpha, flow, ubar = _two_state(system, UL, UR, 0)
    a_int = alpha[1:n + 2]
    flow_int = flow[1:n + 2]
    ubar_int = ubar[1:n + 2]

    cell_sum = a_int[:-1] + a_int[1:]
    worst = float(np.max(dt / dx * cell_sum))
    if worst > _CON_TOL:
        raise StepConstraintViolation("average step constraint", f"ratio {worst:.3g}")

    diag = {}
    if system.is_euler:
        ok = system.admissible(ubar)
        if not np.all(ok):
            raise StepConstraintViolation(
                "average intermediate state", f"{int(np.sum(~ok))} inadmissible"
            )
        rho_b = ubar[..., 0]
        p_b = system.pressure(ubar)
        cap = min(EPS_CAP, dom["eps_rho"])
        eps_r = np.minimum(cap, np.minimum(rho_b[:-1], rho_b[1:]))
        cap = min(EPS_CAP, dom["eps_p"])
        eps_p = np.minimum(cap, np.minimum(p_b[:-1], p_b[1:]))
        ebar_r = np.minimum(eps_r[:-1], eps_r[1:])
        ebar_p = np.minimum(eps_p[:-1], eps_p[1:])
        F_lim = _euler_face_limit(system, F, a_int, flow_int, ubar_int, ebar_r, ebar_p)
        if kappa is not None:
            s = _sensor_cells_1d(grid, A, system, ce)
            s_face = np.maximum(s[:-1], s[1:])
            theta_s = np.exp(-kappa * s_face)
            F_lim = flow_int + theta_s[..., None] * (F_lim - flow_int)
            diag = {"theta_s_min": float(theta_s.min()),
                    "sensor_faces": int(np.sum(theta_s < 0.999))}
        return F_lim, diag

    if scope == "local":
        slabs = [A[ce], ubar[:-1], ubar[1:], A[g - 2:g + n], A[g:g + n + 2]]
        lo = np.minimum.reduce(slabs)[..., 0]
        hi = np.maximum.reduce(slabs)[..., 0]
    else:
        lo = np.full(n + 2, dom["u_min"])
        hi = np.full(n + 2, dom["u_max"])
    dF = _mp_clamp(F - flow_int, a_int, ubar_int, lo[:-1], hi[:-1], lo[1:], hi[1:])
    return flow_int + dF, diag


def limit_fluxes_2d(grid, V, system, Fx, Fy, dt, scope, kappa, dom):
    g, nx, ny = grid.n_ghost, grid.nx, grid.ny
    dx, dy = grid.dx, grid.dy
    A = V.avg
    cex, cey = slice(g - 1, g + nx + 1), slice(g - 1, g + ny + 1)

    # one-cell-extended interface data in both directions
    ax, flow_x, ubx = _two_state(
        system, A[g - 2:g + nx + 1, cey], A[g - 1:g + nx + 2, cey], 0
    )
    ay, flow_y, uby = _two_state(
        system, A[cex, g - 2:g + ny + 1], A[cex, g - 1:g + ny + 2], 1
    )
    ax_int = ax[1:-1, 1:-1]
    ay_int = ay[1:-1, 1:-1]

    fluid = np.ones((grid.nx + 2 * g, grid.ny + 2 * g), dtype=bool)
    if grid.solid is not None:
        fluid &= ~grid.solid
    cells_fluid = fluid[grid.scx, grid.scy]

    rx = dt / dx * (ax_int[:-1, :] + ax_int[1:, :])
    ry = dt / dy * (ay_int[:, :-1] + ay_int[:, 1:])
    worst = max(float(np.max(rx[cells_fluid], initial=0.0)),
                float(np.max(ry[cells_fluid], initial=0.0)))
    if worst > 0.5 * _CON_TOL:
        raise StepConstraintViolation("average step constraint", f"ratio {worst:.3g} > 1/2")

    wmask_x = fluid[g - 1:g + nx, grid.scy] & fluid[g:g + nx + 1, grid.scy]
    wmask_y = fluid[grid.scx, g - 1:g + ny] & fluid[grid.scx, g:g + ny + 1]

    diag = {}
    if system.is_euler:
        okx = system.admissible(ubx)
        oky = system.admissible(uby)
        if not (np.all(okx) and np.all(oky)):
            bad = int(np.sum(~okx)) + int(np.sum(~oky))
            raise StepConstraintViolation("average intermediate state", f"{bad} inadmissible")
        cap_r = min(EPS_CAP, dom["eps_rho"])
        cap_p = min(EPS_CAP, dom["eps_p"])
        rbx, rby = ubx[..., 0], uby[..., 0]
        pbx, pby = system.pressure(ubx), system.pressure(uby)
        eps_r = np.minimum.reduce([np.full(rbx[:-1].shape, cap_r),
                                   rbx[:-1, :], rbx[1:, :], rby[:, :-1], rby[:, 1:]])
        eps_p = np.minimum.reduce([np.full(pbx[:-1].shape, cap_p),
                                   pbx[:-1, :], pbx[1:, :], pby[:, :-1], pby[:, 1:]])
        ebr_x = np.minimum(eps_r[:-1, 1:-1], eps_r[1:, 1:-1])
        ebp_x = np.minimum(eps_p[:-1, 1:-1], eps_p[1:, 1:-1])
        ebr_y = np.minimum(eps_r[1:-1, :-1], eps_r[1:-1, 1:])
        ebp_y = np.minimum(eps_p[1:-1, :-1], eps_p[1:-1, 1:])
        Fx_lim = _euler_face_limit(
            system, Fx, ax_int, flow_x[1:-1, 1:-1], ubx[1:-1, 1:-1], ebr_x, ebp_x
        )
        Fy_lim = _euler_face_limit(
            system, Fy, ay_int, flow_y[1:-1, 1:-1], uby[1:-1, 1:-1], ebr_y, ebp_y
        )
        if kappa is not None:
            s = _sensor_cells_2d(grid, A, system)
            tx = np.exp(-kappa * np.maximum(s[:-1, 1:-1], s[1:, 1:-1]))
            ty = np.exp(-kappa * np.maximum(s[1:-1, :-1], s[1:-1, 1:]))
            Fx_lim = flow_x[1:-1, 1:-1] + tx[..., None] * (Fx_lim - flow_x[1:-1, 1:-1])
            Fy_lim = flow_y[1:-1, 1:-1] + ty[..., None] * (Fy_lim - flow_y[1:-1, 1:-1])
            tmin = 1.0
            nact = 0
            if np.any(wmask_x):
                tmin = min(tmin, float(tx[wmask_x].min()))
                nact += int(np.sum(tx[wmask_x] < 0.999))
            if np.any(wmask_y):
                tmin = min(tmin, float(ty[wmask_y].min()))
                nact += int(np.sum(ty[wmask_y] < 0.999))
            diag = {"theta_s_min": tmin, "sensor_faces": nact}
    else:
        if scope == "local":
            slabs = [A[cex, cey], ubx[:-1, :], ubx[1:, :], uby[:, :-1], uby[:, 1:],
                     A[g - 2:g + nx, cey], A[g:g + nx + 2, cey],
                     A[cex, g - 2:g + ny], A[cex, g:g + ny + 2]]
            lo = np.minimum.reduce(slabs)[..., 0]
            hi = np.maximum.reduce(slabs)[..., 0]
        else:
            lo = np.full((nx + 2, ny + 2), dom["u_min"])
            hi = np.full((nx + 2, ny + 2), dom["u_max"])
        dFx = _mp_clamp(Fx - flow_x[1:-1, 1:-1], ax_int, ubx[1:-1, 1:-1],
                        lo[:-1, 1:-1], hi[:-1, 1:-1], lo[1:, 1:-1], hi[1:, 1:-1])
        dFy = _mp_clamp(Fy - flow_y[1:-1, 1:-1], ay_int, uby[1:-1, 1:-1],
                        lo[1:-1, :-1], hi[1:-1, :-1], lo[1:-1, 1:], hi[1:-1, 1:])
        Fx_lim = flow_x[1:-1, 1:-1] + dFx
        Fy_lim = flow_y[1:-1, 1:-1] + dFy

    Fx_out = np.where(wmask_x[..., None], Fx_lim, Fx)
    Fy_out = np.where(wmask_y[..., None], Fy_lim, Fy)
    return Fx_out, Fy_out, diag
