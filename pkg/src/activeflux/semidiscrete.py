"""High-order semidiscrete updates.

Cell averages evolve through shared interface fluxes (point flux in 1D,
Simpson quadrature of the point values along each face in 2D), so any later
flux correction conserves by construction.  Point values evolve through
upwind-biased three-point endpoint derivatives of the split flux (or, for the
Jacobian-splitting variant, of the state contracted with the split Jacobian)
along each mesh line through the point; face points add a central transverse
term from the two corners straddling them.
"""
from __future__ import annotations

import numpy as np

from .reconstruct import cell_center_1d, cell_center_2d, fvs_biased_minus, fvs_biased_plus
from .splitting import js_derivative_pair, wall_llf_flux


def cell_centers(grid, dofs):
    """Reconstructed mid-cell values on every ghost-inclusive cell."""
    if grid.nd == 1:
        fx = dofs.face_x
        return cell_center_1d(fx[:-1], dofs.avg, fx[1:])
    fx, fy, co = dofs.face_x, dofs.face_y, dofs.corner
    return cell_center_2d(
        dofs.avg,
        fx[:-1, :], fx[1:, :],
        fy[:, :-1], fy[:, 1:],
        co[:-1, :-1], co[1:, :-1], co[:-1, 1:], co[1:, 1:],
    )


def _axis_contraction(system, kind, slabs, axis, h):
    """D+~ of the upwind part plus D-~ of the downwind part along one line.

    ``slabs`` holds the five states in line order: previous point, midpoint of
    the left interval, the point itself, midpoint of the right interval, next
    point.  Spacing between consecutive points is ``h``.
    """
    s_m, s_cm, s_0, s_cp, s_p = slabs
    if kind == "js":
        dplus = (s_m - 4.0 * s_cm + 3.0 * s_0) / h
        dminus = (-3.0 * s_0 + 4.0 * s_cp - s_p) / h
        return js_derivative_pair(system, s_0, dplus, dminus, axis)
    if kind == "llf":
        alpha = np.maximum.reduce([system.spectral_radius(s, axis) for s in slabs])
        a = alpha[..., None]
        F = [system.flux(s, axis) for s in slabs]
        plus = fvs_biased_plus(
            0.5 * (F[0] + a * s_m), 0.5 * (F[1] + a * s_cm), 0.5 * (F[2] + a * s_0), h
        )
        minus = fvs_biased_minus(
            0.5 * (F[2] - a * s_0), 0.5 * (F[3] - a * s_cp), 0.5 * (F[4] - a * s_p), h
        )
        return plus + minus
    splitter = system.split_upwind if kind == "sw" else system.split_van_leer
    fp_m = splitter(s_m, axis)[0]
    fp_c = splitter(s_cm, axis)[0]
    fp_0, fm_0 = splitter(s_0, axis)
    fm_c = splitter(s_cp, axis)[1]
    fm_p = splitter(s_p, axis)[1]
    return fvs_biased_plus(fp_m, fp_c, fp_0, h) + fvs_biased_minus(fm_0, fm_c, fm_p, h)


def point_rhs_1d(grid, dofs, system, kind, centers=None):
    """Time derivative of the interior interface values; shape (n+1, m)."""
    g, n, dx = grid.n_ghost, grid.n, grid.dx
    P, A = dofs.face_x, dofs.avg
    Pm, P0, Pp = P[g - 1:g + n], P[g:g + n + 1], P[g + 1:g + n + 2]
    if kind == "js":
        # biased endpoint derivatives written through the two cell averages
        Am, Ap = A[g - 1:g + n], A[g:g + n + 1]
        dplus = (2.0 * Pm - 6.0 * Am + 4.0 * P0) / dx
        dminus = (-4.0 * P0 + 6.0 * Ap - 2.0 * Pp) / dx
        return -js_derivative_pair(system, P0, dplus, dminus, axis=0)
    C = centers
    slabs = (Pm, C[g - 1:g + n], P0, C[g:g + n + 1], Pp)
    return -_axis_contraction(system, kind, slabs, 0, dx)


def point_rhs_2d(grid, dofs, system, kind, centers):
    """Time derivatives of (face_x, face_y, corner) interior points."""
    g, nx, ny = grid.n_ghost, grid.nx, grid.ny
    dx, dy = grid.dx, grid.dy
    fx, fy, co = dofs.face_x, dofs.face_y, dofs.corner
    C = centers
    sxf, syf = slice(g, g + nx + 1), slice(g, g + ny + 1)
    sxc, syc = slice(g, g + nx), slice(g, g + ny)

    # corners: biased stencils along both face lines, midpoints are face values
    co0 = co[sxf, syf]
    x_slabs = (co[g - 1:g + nx, syf], fy[g - 1:g + nx, syf], co0, fy[sxf, syf],
               co[g + 1:g + nx + 2, syf])
    y_slabs = (co[sxf, g - 1:g + ny], fx[sxf, g - 1:g + ny], co0, fx[sxf, syf],
               co[sxf, g + 1:g + ny + 2])
    rhs_co = -(_axis_contraction(system, kind, x_slabs, 0, dx)
               + _axis_contraction(system, kind, y_slabs, 1, dy))

    # x-faces: biased normal stencil through cell centers, central transverse
    # term from the two straddling corners.  A face point sits mid-edge, so
    # both one-sided transverse derivatives collapse to the same central one;
    # Jacobian splitting therefore contracts the full Jacobian with the state
    # difference, while the split-flux kinds difference the transverse flux.
    fx0 = fx[sxf, syc]
    n_slabs = (fx[g - 1:g + nx, syc], C[g - 1:g + nx, syc], fx0, C[sxf, syc],
               fx[g + 1:g + nx + 2, syc])
    if kind == "js":
        d = (co[sxf, g + 1:g + ny + 1] - co[sxf, syc]) / dy
        trans = js_derivative_pair(system, fx0, d, d, 1)
    else:
        trans = (system.flux(co[sxf, g + 1:g + ny + 1], 1)
                 - system.flux(co[sxf, syc], 1)) / dy
    rhs_fx = -_axis_contraction(system, kind, n_slabs, 0, dx) - trans

    # y-faces
    fy0 = fy[sxc, syf]
    n_slabs = (fy[sxc, g - 1:g + ny], C[sxc, g - 1:g + ny], fy0, C[sxc, syf],
               fy[sxc, g + 1:g + ny + 2])
    if kind == "js":
        d = (co[g + 1:g + nx + 1, syf] - co[sxc, syf]) / dx
        trans = js_derivative_pair(system, fy0, d, d, 0)
    else:
        trans = (system.flux(co[g + 1:g + nx + 1, syf], 0)
                 - system.flux(co[sxc, syf], 0)) / dx
    rhs_fy = -_axis_contraction(system, kind, n_slabs, 1, dy) - trans

    return rhs_fx, rhs_fy, rhs_co


def interface_flux_1d(grid, dofs, system, walls=()):
    """Average-update fluxes at the n+1 interior interfaces."""
    g, n = grid.n_ghost, grid.n
    P = dofs.face_x
    F = system.flux(P[g:g + n + 1], 0).copy()
    for wl in walls:
        F[wl.face_idx - g] = wall_llf_flux(system, P[wl.face_idx], 0, wl.fluid_hi)
    return F


def quadrature_fluxes_2d(grid, dofs, system, walls=()):
    """Simpson fluxes through interior x-faces and y-faces.

    On wall lines every quadrature ingredient is replaced by the LLF flux
    against its own mirror state before the Simpson combination.
    """
    g, nx, ny = grid.n_ghost, grid.nx, grid.ny
    fx, fy, co = dofs.face_x, dofs.face_y, dofs.corner
    sxf, syf = slice(g, g + nx + 1), slice(g, g + ny + 1)
    sxc, syc = slice(g, g + nx), slice(g, g + ny)

    Fmid = system.flux(fx[sxf, syc], 0).copy()
    Fcor = system.flux(co[sxf, syf], 0).copy()
    Gmid = system.flux(fy[sxc, syf], 1).copy()
    Gcor = system.flux(co[sxf, syf], 1).copy()
    for wl in walls:
        k = wl.face_idx - g
        if wl.axis == 0:
            mm = wl.mid_mask[syc]
            cm = wl.corner_mask[syf]
            Fmid[k, mm] = wall_llf_flux(system, fx[wl.face_idx, syc][mm], 0, wl.fluid_hi)
            Fcor[k, cm] = wall_llf_flux(system, co[wl.face_idx, syf][cm], 0, wl.fluid_hi)
        else:
            mm = wl.mid_mask[sxc]
            cm = wl.corner_mask[sxf]
            Gmid[mm, k] = wall_llf_flux(system, fy[sxc, wl.face_idx][mm], 1, wl.fluid_hi)
            Gcor[cm, k] = wall_llf_flux(system, co[sxf, wl.face_idx][cm], 1, wl.fluid_hi)

    Fx = (Fcor[:, :-1] + 4.0 * Fmid + Fcor[:, 1:]) / 6.0
    Fy = (Gcor[:-1, :] + 4.0 * Gmid + Gcor[1:, :]) / 6.0
    return Fx, Fy


def average_rhs_1d(grid, F):
    return -(F[1:] - F[:-1]) / grid.dx


def average_rhs_2d(grid, Fx, Fy):
    return -(Fx[1:, :] - Fx[:-1, :]) / grid.dx - (Fy[:, 1:] - Fy[:, :-1]) / grid.dy
