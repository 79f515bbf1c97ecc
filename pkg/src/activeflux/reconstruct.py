"""Parabolic reconstruction pieces: cell-center values and biased derivatives.

Within a cell the solution is represented by the parabola matching the two
interface point values and the cell average; in 2D by the tensor-product
(bi-parabolic) analogue matching the four corners, four face midpoints and the
average.  Only the center value and one-sided endpoint derivatives of these
polynomials enter the scheme, so they are implemented directly as stencils.
All operators are exact for (bi-)quadratic data.
"""
from __future__ import annotations

import numpy as np


def cell_center_1d(u_left, u_avg, u_right):
    """Center value of the parabola: (-U_l + 6 ubar - U_r) / 4."""
    return 0.25 * (-u_left + 6.0 * u_avg - u_right)


def cell_center_2d(u_avg, f_w, f_e, f_s, f_n, c_sw, c_se, c_nw, c_ne):
    """Center value of the bi-parabola from the average, 4 face midpoints and
    4 corners: (36 ubar - 4 * faces - corners) / 16."""
    faces = f_w + f_e + f_s + f_n
    corners = c_sw + c_se + c_nw + c_ne
    return (36.0 * u_avg - 4.0 * faces - corners) / 16.0


def js_biased_derivatives(u_ll, u_avg_l, u_c, u_avg_r, u_rr, dx_l, dx_r):
    """One-sided derivatives at the interface between two cells.

    The left-biased derivative differentiates the left cell's parabola at its
    right edge, the right-biased one the right cell's parabola at its left
    edge:

        d+ = (2 U_{i-1/2} - 6 ubar_i + 4 U_{i+1/2}) / dx_i
        d- = (-4 U_{i+1/2} + 6 ubar_{i+1} - 2 U_{i+3/2}) / dx_{i+1}
    """
    dplus = (2.0 * u_ll - 6.0 * u_avg_l + 4.0 * u_c) / dx_l
    dminus = (-4.0 * u_c + 6.0 * u_avg_r - 2.0 * u_rr) / dx_r
    return dplus, dminus


def fvs_biased_plus(F_l, F_c, F_r, dx):
    """Left-biased endpoint derivative from values at {-dx, -dx/2, 0}:
    (F_l - 4 F_c + 3 F_r) / dx."""
    return (F_l - 4.0 * F_c + 3.0 * F_r) / dx


def fvs_biased_minus(F_l, F_c, F_r, dx):
    """Right-biased endpoint derivative from values at {0, +dx/2, +dx}:
    (-3 F_l + 4 F_c - F_r) / dx."""
    return (-3.0 * F_l + 4.0 * F_c - F_r) / dx


def parabola(u_left, u_avg, u_right, dx=1.0):
    """Full reconstruction polynomial on one cell; test helper.

    Returns a callable of the local coordinate x in [-dx/2, dx/2] measured
    from the cell center.  The polynomial matches u_left at -dx/2, u_right at
    +dx/2 and has mean u_avg.
    """

    def u(x):
        xi = np.asarray(x) / dx
        return (
            -3.0 * (2.0 * u_avg - u_left - u_right) * xi * xi
            + (u_right - u_left) * xi
            + 0.25 * (6.0 * u_avg - u_left - u_right)
        )

    return u
