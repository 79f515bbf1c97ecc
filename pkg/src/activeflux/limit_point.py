"""Bound preservation for the independently evolved point values.

Every point value gets a provably safe companion update: a first-order LLF
step over its nearest same-line neighbours, taken with the full step size from
the stage input.  The high-order stage result is then blended toward that
companion just enough to restore local/global bounds (scalar) or the density
and pressure floors (Euler).  A step-size precondition keeps the companion a
convex combination of admissible states; its failure raises the retry signal.

The mid-cell reconstruction value feeds the point stencils but is not an
evolved unknown, so it gets its own two-stage blend toward the (admissible)
cell average instead of a companion update.
"""
from __future__ import annotations

import numpy as np

from .errors import StepConstraintViolation
from .splitting import llf_flux, pair_alpha

EPS_CAP = 1e-13
_TINY = 1e-300
_CON_TOL = 1.0 + 1e-12


def fix_cell_centers(system, avg, centers):
    """Blend reconstructed mid-cell values toward the cell average until the
    density and pressure clear per-cell floors.  Scalar systems need no fix."""
    if not system.is_euler:
        return centers
    rho_a = avg[..., 0]
    p_a = system.pressure(avg)
    eps_r = np.minimum(EPS_CAP, rho_a)
    eps_p = np.minimum(EPS_CAP, p_a)
    rho_c = centers[..., 0]
    with np.errstate(over="ignore", invalid="ignore"):
        th1 = np.where(rho_c < eps_r,
                       (rho_a - eps_r) / np.maximum(rho_a - rho_c, _TINY), 1.0)
        th1 = np.clip(th1, 0.0, 1.0)
        fixed = centers.copy()
        fixed[..., 0] = th1 * rho_c + (1.0 - th1) * rho_a
        p_c = system.pressure(fixed)
        th2 = np.where(p_c < eps_p,
                       (p_a - eps_p) / np.maximum(p_a - p_c, _TINY), 1.0)
        th2 = np.clip(th2, 0.0, 1.0)[..., None]
    return th2 * fixed + (1.0 - th2) * avg


def _scalar_blend(UL, UH, lo, hi):
    den = np.abs((UH - UL)[..., 0])
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        r1 = np.abs(UL[..., 0] - lo) / den
        r2 = np.abs(hi - UL[..., 0]) / den
        theta = np.minimum(1.0, np.minimum(r1, r2))
    theta = np.where(den < _TINY, 1.0, theta)
    theta = np.clip(theta, 0.0, 1.0)[..., None]
    return theta * UH + (1.0 - theta) * UL


def _euler_blend(system, UL, UH, eps_dom_rho, eps_dom_p):
    """Density blend (density component only), then pressure blend of the full
    vector; pressure concavity makes the second stage sufficient."""
    rho_L = UL[..., 0]
    rho_H = UH[..., 0]
    eps_r = np.minimum(np.minimum(EPS_CAP, eps_dom_rho), rho_L)
    with np.errstate(over="ignore", invalid="ignore"):
        th1 = np.where(rho_H < eps_r,
                       (rho_L - eps_r) / np.maximum(rho_L - rho_H, _TINY), 1.0)
        th1 = np.clip(th1, 0.0, 1.0)
        U1 = UH.copy()
        U1[..., 0] = th1 * rho_H + (1.0 - th1) * rho_L
        p_L = system.pressure(UL)
        p_1 = system.pressure(U1)
        eps_p = np.minimum(np.minimum(EPS_CAP, eps_dom_p), p_L)
        th2 = np.where(p_1 < eps_p,
                       (p_L - eps_p) / np.maximum(p_L - p_1, _TINY), 1.0)
        th2 = np.clip(th2, 0.0, 1.0)[..., None]
    return th2 * U1 + (1.0 - th2) * UL


def _check_constraint(ratio, mask, which):
    worst = float(np.max(ratio[mask], initial=0.0)) if mask is not None else float(np.max(ratio))
    if worst > 0.5 * _CON_TOL:
        raise StepConstraintViolation(which, f"ratio {worst:.3g} > 1/2")


def _check_admissible(system, UL, mask, which):
    ok = system.admissible(UL)
    if mask is not None:
        ok = ok | ~mask
    if not np.all(ok):
        raise StepConstraintViolation(which, f"{int(np.sum(~ok))} inadmissible companions")


def _blend(system, UL, UH, scope, dom, neighbours):
    if system.is_euler:
        return _euler_blend(system, UL, UH, dom["eps_rho"], dom["eps_p"])
    if scope == "local":
        lo = np.minimum.reduce(neighbours)[..., 0]
        hi = np.maximum.reduce(neighbours)[..., 0]
    else:
        lo = np.full(UL.shape[:-1], dom["u_min"])
        hi = np.full(UL.shape[:-1], dom["u_max"])
    return _scalar_blend(UL, UH, lo, hi)


def limit_points_1d(grid, V, fe, system, dt, scope, dom):
    """Limit the forward-Euler interface values; returns the (n+1, m) result."""
    g, n, dx = grid.n_ghost, grid.n, grid.dx
    P = V.face_x
    Pm, P0, Pp = P[g - 1:g + n], P[g:g + n + 1], P[g + 1:g + n + 2]
    al = pair_alpha(system, Pm, P0, 0)
    ar = pair_alpha(system, P0, Pp, 0)
    nu = dt / dx
    worst = float(np.max(nu * (al + ar)))
    if worst > _CON_TOL:
        raise StepConstraintViolation("point step constraint", f"ratio {worst:.3g}")
    Fl = llf_flux(system, Pm, P0, 0, al)
    Fr = llf_flux(system, P0, Pp, 0, ar)
    UL = P0 - nu * (Fr - Fl)
    if system.is_euler:
        _check_admissible(system, UL, None, "point companion state")
    return _blend(system, UL, fe, scope, dom, (Pm, P0, Pp))


def limit_points_2d(grid, V, fe_fx, fe_fy, fe_co, system, dt, scope, dom, masks):
    """Limit all three point families; inactive entries pass through."""
    g, nx, ny = grid.n_ghost, grid.nx, grid.ny
    nux, nuy = dt / grid.dx, dt / grid.dy
    fx, fy, co = V.face_x, V.face_y, V.corner
    sxf, syf = slice(g, g + nx + 1), slice(g, g + ny + 1)
    sxc, syc = slice(g, g + nx), slice(g, g + ny)

    def company(center, west, east, south, north):
        axw = pair_alpha(system, west, center, 0)
        axe = pair_alpha(system, center, east, 0)
        ays = pair_alpha(system, south, center, 1)
        ayn = pair_alpha(system, center, north, 1)
        return axw, axe, ays, ayn, (
            center
            - nux * (llf_flux(system, center, east, 0, axe)
                     - llf_flux(system, west, center, 0, axw))
            - nuy * (llf_flux(system, center, north, 1, ayn)
                     - llf_flux(system, south, center, 1, ays))
        )

    # corners: nearest corners along both face lines
    co0 = co[sxf, syf]
    coW, coE = co[g - 1:g + nx, syf], co[g + 1:g + nx + 2, syf]
    coS, coN = co[sxf, g - 1:g + ny], co[sxf, g + 1:g + ny + 2]
    axw, axe, ays, ayn, UL_co = company(co0, coW, coE, coS, coN)
    _check_constraint(nux * (axw + axe), masks["corner"], "corner step constraint (x)")
    _check_constraint(nuy * (ays + ayn), masks["corner"], "corner step constraint (y)")

    # x-faces: neighbouring x-faces along the line, straddling corners across
    fx0 = fx[sxf, syc]
    fxW, fxE = fx[g - 1:g + nx, syc], fx[g + 1:g + nx + 2, syc]
    cB, cT = co[sxf, syc], co[sxf, g + 1:g + ny + 1]
    axw, axe, ays, ayn, UL_fx = company(fx0, fxW, fxE, cB, cT)
    _check_constraint(nux * (axw + axe), masks["face_x"], "x-face step constraint (x)")
    _check_constraint(nuy * (ays + ayn), masks["face_x"], "x-face step constraint (y)")

    # y-faces
    fy0 = fy[sxc, syf]
    fyS, fyN = fy[sxc, g - 1:g + ny], fy[sxc, g + 1:g + ny + 2]
    cW, cE = co[sxc, syf], co[g + 1:g + nx + 1, syf]
    axw, axe, ays, ayn, UL_fy = company(fy0, cW, cE, fyS, fyN)
    _check_constraint(nux * (axw + axe), masks["face_y"], "y-face step constraint (x)")
    _check_constraint(nuy * (ays + ayn), masks["face_y"], "y-face step constraint (y)")

    if system.is_euler:
        _check_admissible(system, UL_co, masks["corner"], "corner companion state")
        _check_admissible(system, UL_fx, masks["face_x"], "x-face companion state")
        _check_admissible(system, UL_fy, masks["face_y"], "y-face companion state")

    with np.errstate(divide="ignore", invalid="ignore"):
        lim_co = _blend(system, UL_co, fe_co, scope, dom, (co0, coW, coE, coS, coN))
        lim_fx = _blend(system, UL_fx, fe_fx, scope, dom, (fx0, fxW, fxE, cB, cT))
        lim_fy = _blend(system, UL_fy, fe_fy, scope, dom, (fy0, fyS, fyN, cW, cE))
    out_co = np.where(masks["corner"][..., None], lim_co, fe_co)
    out_fx = np.where(masks["face_x"][..., None], lim_fx, fe_fx)
    out_fy = np.where(masks["face_y"][..., None], lim_fy, fe_fy)
    return out_fx, out_fy, out_co
