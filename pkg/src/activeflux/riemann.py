"""Exact solver for the 1D Euler Riemann problem (ideal gas).

Classic two-branch pressure function with Newton iteration for the star
pressure, then self-similar sampling.  Used for reference profiles in tests
and demos; vacuum-generating data is rejected.
"""
from __future__ import annotations

import numpy as np


def _pressure_fn(p, rho_k, p_k, a_k, gamma):
    """f_K(p) and its derivative (shock branch for p > p_K, fan otherwise)."""
    A = 2.0 / ((gamma + 1.0) * rho_k)
    B = (gamma - 1.0) / (gamma + 1.0) * p_k
    shock = p > p_k
    sq = np.sqrt(A / (B + p))
    f_s = (p - p_k) * sq
    df_s = sq * (1.0 - 0.5 * (p - p_k) / (B + p))
    pr = p / p_k
    ex = (gamma - 1.0) / (2.0 * gamma)
    f_r = 2.0 * a_k / (gamma - 1.0) * (pr ** ex - 1.0)
    df_r = pr ** (-(gamma + 1.0) / (2.0 * gamma)) / (rho_k * a_k)
    return np.where(shock, f_s, f_r), np.where(shock, df_s, df_r)


def solve_star(left, right, gamma=1.4, tol=1e-12, max_iter=100):
    """Star-region pressure and velocity for primitive states (rho, v, p)."""
    rho_l, v_l, p_l = left
    rho_r, v_r, p_r = right
    a_l = np.sqrt(gamma * p_l / rho_l)
    a_r = np.sqrt(gamma * p_r / rho_r)
    dv = v_r - v_l
    if 2.0 * (a_l + a_r) / (gamma - 1.0) <= dv:
        raise ValueError("initial data generate vacuum")
    # two-rarefaction guess, positive by construction
    z = (gamma - 1.0) / (2.0 * gamma)
    p = ((a_l + a_r - 0.5 * (gamma - 1.0) * dv)
         / (a_l / p_l ** z + a_r / p_r ** z)) ** (1.0 / z)
    p = max(p, 1e-14 * min(p_l, p_r))
    for _ in range(max_iter):
        f_l, df_l = _pressure_fn(p, rho_l, p_l, a_l, gamma)
        f_r, df_r = _pressure_fn(p, rho_r, p_r, a_r, gamma)
        dp = (f_l + f_r + dv) / (df_l + df_r)
        p_new = max(p - dp, 1e-14 * p)
        if abs(p_new - p) < tol * max(p, 1.0e-300):
            p = p_new
            break
        p = p_new
    f_l, _ = _pressure_fn(p, rho_l, p_l, a_l, gamma)
    f_r, _ = _pressure_fn(p, rho_r, p_r, a_r, gamma)
    v = 0.5 * (v_l + v_r) + 0.5 * (f_r - f_l)
    return float(p), float(v)


def sample(xi, left, right, gamma=1.4):
    """Primitive solution (rho, v, p) at similarity coordinates ``xi = x/t``."""
    xi = np.asarray(xi, dtype=float)
    p_star, v_star = solve_star(left, right, gamma)
    rho = np.empty_like(xi)
    vel = np.empty_like(xi)
    prs = np.empty_like(xi)
    gm, gp = gamma - 1.0, gamma + 1.0

    for side in ("left", "right"):
        if side == "left":
            rho_k, v_k, p_k = left
            sgn = 1.0
            mask_side = xi <= v_star
        else:
            rho_k, v_k, p_k = right
            sgn = -1.0
            mask_side = xi > v_star
        a_k = np.sqrt(gamma * p_k / rho_k)
        if p_star > p_k:  # shock
            s = v_k - sgn * a_k * np.sqrt(gp / (2.0 * gamma) * p_star / p_k
                                          + gm / (2.0 * gamma))
            rho_star = rho_k * ((p_star / p_k + gm / gp)
                                / (gm / gp * p_star / p_k + 1.0))
            ahead = mask_side & (sgn * (xi - s) < 0.0)
            behind = mask_side & ~ahead
            rho[ahead], vel[ahead], prs[ahead] = rho_k, v_k, p_k
            rho[behind], vel[behind], prs[behind] = rho_star, v_star, p_star
        else:  # rarefaction
            a_star = a_k * (p_star / p_k) ** (gm / (2.0 * gamma))
            head = v_k - sgn * a_k
            tail = v_star - sgn * a_star
            ahead = mask_side & (sgn * (xi - head) < 0.0)
            inside = mask_side & ~ahead & (sgn * (xi - tail) < 0.0)
            star = mask_side & ~ahead & ~inside
            rho[ahead], vel[ahead], prs[ahead] = rho_k, v_k, p_k
            fac = 2.0 / gp + sgn * gm / (gp * a_k) * (v_k - xi[inside])
            rho[inside] = rho_k * fac ** (2.0 / gm)
            vel[inside] = 2.0 / gp * (sgn * a_k + gm / 2.0 * v_k + xi[inside])
            prs[inside] = p_k * fac ** (2.0 * gamma / gm)
            rho_star = rho_k * (p_star / p_k) ** (1.0 / gamma)
            rho[star], vel[star], prs[star] = rho_star, v_star, p_star
    return rho, vel, prs
