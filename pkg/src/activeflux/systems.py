"""Hyperbolic systems: linear advection, Burgers, compressible Euler.

States are stored with the component axis last, shape (..., m).  Every
operation is vectorized over the leading axes.  Euler components are
(rho, rho*v1, E) in 1D and (rho, rho*v1, rho*v2, E) in 2D with the ideal-gas
pressure p = (gamma-1) * (E - |rho v|^2 / (2 rho)).
"""
from __future__ import annotations

import numpy as np

from .errors import NegativeStateError

SCALAR_ADMISSIBLE_TOL = 1e-12  # slack for scalar bound checks


class System:
    """Common interface; subclasses fill in flux/eigen information."""

    m: int
    nd: int
    is_euler = False
    name = "system"

    def flux(self, U, axis=0):
        raise NotImplementedError

    def spectral_radius(self, U, axis=0):
        """Largest absolute characteristic speed along ``axis``, shape U.shape[:-1]."""
        raise NotImplementedError

    def mirror(self, U, axis=0):
        """Reflective-wall ghost state (flip the normal momentum for Euler)."""
        return U

    def validate(self, U, where=""):
        """Raise NegativeStateError if any state is unusable for flux evaluation."""
        if not np.isfinite(U).all():
            raise NegativeStateError(f"non-finite state encountered{': ' + where if where else ''}")

    def jacobian_apply_split(self, U, xp, xm, axis=0):
        """Return J+(U) @ xp + J-(U) @ xm with J+- = R diag(lambda+-) R^-1."""
        raise NotImplementedError

    def split_upwind(self, U, axis=0):
        """Steger-Warming style split F+- = (F(U) +- |J(U)| U) / 2."""
        raise NotImplementedError


# ---------------------------------------------------------------------------
# scalar laws


class ScalarSystem(System):
    m = 1

    def dflux(self, U, axis=0):
        """f'(u), shape U.shape[:-1]."""
        raise NotImplementedError

    def spectral_radius(self, U, axis=0):
        return np.abs(self.dflux(U, axis))

    def jacobian_apply_split(self, U, xp, xm, axis=0):
        lam = self.dflux(U, axis)[..., None]
        return np.maximum(lam, 0.0) * xp + np.minimum(lam, 0.0) * xm

    def split_upwind(self, U, axis=0):
        f = self.flux(U, axis)
        aju = np.abs(self.dflux(U, axis))[..., None] * U
        return 0.5 * (f + aju), 0.5 * (f - aju)


class Advection(ScalarSystem):
    """u_t + sum_l a_l u_{x_l} = 0."""

    name = "advection"

    def __init__(self, speeds=(1.0,)):
        self.speeds = tuple(float(a) for a in speeds)
        self.nd = len(self.speeds)

    def flux(self, U, axis=0):
        return self.speeds[axis] * U

    def dflux(self, U, axis=0):
        return np.full(U.shape[:-1], self.speeds[axis])


class Burgers(ScalarSystem):
    """u_t + sum_l (u^2/2)_{x_l} = 0."""

    name = "burgers"

    def __init__(self, nd=1):
        self.nd = int(nd)

    def flux(self, U, axis=0):
        return 0.5 * U * U

    def dflux(self, U, axis=0):
        return U[..., 0]


# ---------------------------------------------------------------------------
# Euler


class Euler(System):
    """Compressible Euler equations with ideal-gas EOS."""

    is_euler = True
    name = "euler"

    def __init__(self, gamma=1.4, nd=1):
        self.gamma = float(gamma)
        self.nd = int(nd)
        if self.nd not in (1, 2):
            raise ValueError("nd must be 1 or 2")
        self.m = 3 if self.nd == 1 else 4

    # -- thermodynamics ------------------------------------------------------

    def pressure(self, U):
        rho = U[..., 0]
        ke = U[..., 1] ** 2
        if self.nd == 2:
            ke = ke + U[..., 2] ** 2
        return (self.gamma - 1.0) * (U[..., -1] - 0.5 * ke / rho)

    def sound_speed(self, U):
        return np.sqrt(self.gamma * self.pressure(U) / U[..., 0])

    def velocity(self, U, axis=0):
        return U[..., 1 + axis] / U[..., 0]

    def primitive(self, U):
        """(rho, v..., p) with the same leading shape."""
        rho = U[..., 0]
        out = np.empty_like(U)
        out[..., 0] = rho
        for ax in range(self.nd):
            out[..., 1 + ax] = U[..., 1 + ax] / rho
        out[..., -1] = self.pressure(U)
        return out

    def conservative(self, W):
        """Inverse of :meth:`primitive`."""
        rho = W[..., 0]
        out = np.empty_like(W)
        out[..., 0] = rho
        ke = np.zeros(W.shape[:-1])
        for ax in range(self.nd):
            out[..., 1 + ax] = rho * W[..., 1 + ax]
            ke += W[..., 1 + ax] ** 2
        out[..., -1] = W[..., -1] / (self.gamma - 1.0) + 0.5 * rho * ke
        return out

    def admissible(self, U, eps_rho=0.0, eps_p=0.0):
        """Boolean mask: finite, rho >= eps_rho, p >= eps_p (strict when eps=0)."""
        finite = np.isfinite(U).all(axis=-1)
        rho = U[..., 0]
        p = self.pressure(U)
        if np.isscalar(eps_rho) and eps_rho == 0.0:
            ok_rho = rho > 0.0
        else:
            ok_rho = rho >= eps_rho
        if np.isscalar(eps_p) and eps_p == 0.0:
            ok_p = p > 0.0
        else:
            ok_p = p >= eps_p
        return finite & ok_rho & ok_p

    def validate(self, U, where=""):
        ok = self.admissible(U)
        if not ok.all():
            bad = np.argwhere(~ok)
            i = tuple(bad[0])
            state = U[i]
            raise NegativeStateError(
                f"non-admissible Euler state at index {i}"
                f"{' in ' + where if where else ''}: rho={state[0]:.6e}, "
                f"p={float(np.atleast_1d(self.pressure(U[i][None]))[0]):.6e}"
            )

    # -- fluxes and eigen information -----------------------------------------

    def flux(self, U, axis=0):
        rho = U[..., 0]
        vn = U[..., 1 + axis] / rho
        p = self.pressure(U)
        F = np.empty_like(U)
        F[..., 0] = U[..., 1 + axis]
        for ax in range(self.nd):
            F[..., 1 + ax] = U[..., 1 + ax] * vn
        F[..., 1 + axis] += p
        F[..., -1] = (U[..., -1] + p) * vn
        return F

    def spectral_radius(self, U, axis=0):
        return np.abs(self.velocity(U, axis)) + self.sound_speed(U)

    def mirror(self, U, axis=0):
        out = U.copy()
        out[..., 1 + axis] = -out[..., 1 + axis]
        return out

    def _swap(self, U):
        out = U.copy()
        out[..., 1] = U[..., 2]
        out[..., 2] = U[..., 1]
        return out

    def jacobian_apply_split(self, U, xp, xm, axis=0):
        # Rotational invariance: treat the y flux by swapping the momenta.
        if axis == 1:
            y = self.jacobian_apply_split(self._swap(U), self._swap(xp), self._swap(xm), axis=0)
            return self._swap(y)
        gamma = self.gamma
        rho = U[..., 0]
        v1 = U[..., 1] / rho
        v2 = U[..., 2] / rho if self.nd == 2 else np.zeros_like(v1)
        p = self.pressure(U)
        a = np.sqrt(gamma * p / rho)
        H = (U[..., -1] + p) / rho
        q2 = v1 * v1 + v2 * v2
        b1 = (gamma - 1.0) / (a * a)
        b2 = 0.5 * b1 * q2

        lam1 = v1 - a
        lam2 = v1
        lam4 = v1 + a

        def pos(x):
            return np.maximum(x, 0.0)

        def neg(x):
            return np.minimum(x, 0.0)

        def char_combo(x, l1, l2, l4):
            x0 = x[..., 0]
            x1 = x[..., 1]
            x2 = x[..., 2] if self.nd == 2 else np.zeros_like(x0)
            xE = x[..., -1]
            w1 = 0.5 * ((b2 + v1 / a) * x0 - (b1 * v1 + 1.0 / a) * x1 - b1 * v2 * x2 + b1 * xE)
            w2 = (1.0 - b2) * x0 + b1 * v1 * x1 + b1 * v2 * x2 - b1 * xE
            w4 = 0.5 * ((b2 - v1 / a) * x0 - (b1 * v1 - 1.0 / a) * x1 - b1 * v2 * x2 + b1 * xE)
            y = np.empty_like(x)
            y[..., 0] = l1 * w1 + l2 * w2 + l4 * w4
            y[..., 1] = l1 * w1 * (v1 - a) + l2 * w2 * v1 + l4 * w4 * (v1 + a)
            y[..., -1] = l1 * w1 * (H - v1 * a) + l2 * w2 * 0.5 * q2 + l4 * w4 * (H + v1 * a)
            if self.nd == 2:
                w3 = -v2 * x0 + x2  # shear wave, speed v1
                y[..., 2] = (l1 * w1 + l2 * w2 + l4 * w4) * v2 + l2 * w3
                y[..., -1] += l2 * w3 * v2
            return y

        return char_combo(xp, pos(lam1), pos(lam2), pos(lam4)) + char_combo(
            xm, neg(lam1), neg(lam2), neg(lam4)
        )

    def split_upwind(self, U, axis=0):
        """Steger-Warming splitting in its explicit eigenvalue form."""
        if axis == 1:
            Fp, Fm = self.split_upwind(self._swap(U), axis=0)
            return self._swap(Fp), self._swap(Fm)
        gamma = self.gamma
        rho = U[..., 0]
        v1 = U[..., 1] / rho
        v2 = U[..., 2] / rho if self.nd == 2 else np.zeros_like(v1)
        p = self.pressure(U)
        a = np.sqrt(gamma * p / rho)
        q2 = v1 * v1 + v2 * v2
        lam1 = v1
        lam2 = v1 + a
        lam3 = v1 - a
        out = []
        for part in (np.maximum, np.minimum):
            l1 = part(lam1, 0.0)
            l2 = part(lam2, 0.0)
            l3 = part(lam3, 0.0)
            alpha = 2.0 * (gamma - 1.0) * l1 + l2 + l3
            w = rho / (2.0 * gamma)
            F = np.empty_like(U)
            F[..., 0] = w * alpha
            F[..., 1] = w * (alpha * v1 + a * (l2 - l3))
            if self.nd == 2:
                F[..., 2] = w * alpha * v2
            F[..., -1] = w * (
                0.5 * alpha * q2 + a * v1 * (l2 - l3) + a * a * (l2 + l3) / (gamma - 1.0)
            )
            out.append(F)
        return out[0], out[1]

    def split_van_leer(self, U, axis=0):
        """Van Leer mass flux with enthalpy energy flux and pressure split
        p+- = (1 +- gamma M) p / 2.

        The quadratic polynomials are used at every Mach number, which keeps
        both halves smooth in the state; clipping them to the one-sided flux
        for |M| >= 1 would reintroduce a kink and cost accuracy in smooth
        transonic flow."""
        if axis == 1:
            Fp, Fm = self.split_van_leer(self._swap(U), axis=0)
            return self._swap(Fp), self._swap(Fm)
        gamma = self.gamma
        rho = U[..., 0]
        v1 = U[..., 1] / rho
        v2 = U[..., 2] / rho if self.nd == 2 else None
        p = self.pressure(U)
        a = np.sqrt(gamma * p / rho)
        H = (U[..., -1] + p) / rho
        M = v1 / a

        mass_p = 0.25 * rho * a * (M + 1.0) ** 2
        mass_m = -0.25 * rho * a * (M - 1.0) ** 2
        pp = 0.5 * (1.0 + gamma * M) * p
        pm = 0.5 * (1.0 - gamma * M) * p

        Fp = np.empty_like(U)
        Fm = np.empty_like(U)
        Fp[..., 0] = mass_p
        Fm[..., 0] = mass_m
        Fp[..., 1] = mass_p * v1 + pp
        Fm[..., 1] = mass_m * v1 + pm
        if self.nd == 2:
            Fp[..., 2] = mass_p * v2
            Fm[..., 2] = mass_m * v2
        Fp[..., -1] = mass_p * H
        Fm[..., -1] = mass_m * H
        return Fp, Fm


def make_system(name, nd, gamma=1.4, speeds=None):
    """Factory used by the case catalog and the CLI."""
    if name == "advection":
        return Advection(speeds if speeds is not None else (1.0,) * nd)
    if name == "burgers":
        return Burgers(nd)
    if name == "euler":
        return Euler(gamma, nd)
    raise ValueError(f"unknown system '{name}'")
