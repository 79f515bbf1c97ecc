"""Flux vector splittings used by the point-value updates.

Three splittings are provided:

* ``llf``: local Lax-Friedrichs, F+- = (F(U) +- alpha U) / 2 with a viscosity
  alpha that must dominate the spectral radius over the update stencil;
* ``sw``: Steger-Warming upwind splitting F+- = (F +- |J| U) / 2 (exactly the
  characteristic split J+- U for linear systems);
* ``vh``: van Leer / Haenel splitting (Euler only).

The Jacobian splitting scheme ("js") is not a flux splitting; its point update
contracts J+-(U) against one-sided derivatives, see :func:`js_derivative_pair`.
"""
from __future__ import annotations

import numpy as np

from .errors import ConfigError

KINDS = ("js", "llf", "sw", "vh")

# alpha may sit exactly on the spectral radius; allow roundoff slack only.
_ALPHA_SLACK = 1e-12


def llf_alpha(system, states, axis=0):
    """Stencil viscosity: max spectral radius over a sequence of state arrays."""
    rho = system.spectral_radius(states[0], axis)
    for U in states[1:]:
        rho = np.maximum(rho, system.spectral_radius(U, axis))
    return rho


def split_llf(system, U, alpha, axis=0):
    """Local Lax-Friedrichs splitting; ``alpha`` must dominate rho(U)."""
    alpha = np.asarray(alpha)
    rad = system.spectral_radius(U, axis)
    if np.any(alpha < rad * (1.0 - _ALPHA_SLACK) - _ALPHA_SLACK):
        raise ValueError("llf viscosity does not dominate the local spectral radius")
    F = system.flux(U, axis)
    aU = alpha[..., None] * U
    return 0.5 * (F + aU), 0.5 * (F - aU)


def split_sw(system, U, axis=0):
    """Steger-Warming (upwind) splitting."""
    return system.split_upwind(U, axis)


def split_vh(system, U, axis=0):
    """Van Leer / Haenel splitting; defined for Euler only."""
    if not system.is_euler:
        raise ConfigError("van Leer/Haenel splitting is only defined for the Euler equations")
    return system.split_van_leer(U, axis)


def split(system, kind, U, axis=0, alpha=None):
    """Dispatch helper used by tests and small drivers."""
    if kind == "llf":
        if alpha is None:
            alpha = system.spectral_radius(U, axis)
        return split_llf(system, U, alpha, axis)
    if kind == "sw":
        return split_sw(system, U, axis)
    if kind == "vh":
        return split_vh(system, U, axis)
    raise ConfigError(f"'{kind}' is not a flux splitting")


def js_derivative_pair(system, U, dplus, dminus, axis=0):
    """Upwind contraction J+(U) dplus + J-(U) dminus of one-sided derivatives."""
    return system.jacobian_apply_split(U, dplus, dminus, axis)


def pair_alpha(system, UL, UR, axis=0, floor=1e-300):
    """Viscosity for a two-state flux: max of the two spectral radii.

    A tiny floor keeps ratios that divide by alpha finite when both states
    are at rest; the matching numerators vanish there as well.
    """
    a = np.maximum(system.spectral_radius(UL, axis), system.spectral_radius(UR, axis))
    return np.maximum(a, floor)


def llf_flux(system, UL, UR, axis=0, alpha=None):
    """Two-state local Lax-Friedrichs flux."""
    if alpha is None:
        alpha = pair_alpha(system, UL, UR, axis)
    FL = system.flux(UL, axis)
    FR = system.flux(UR, axis)
    return 0.5 * (FL + FR) - 0.5 * np.asarray(alpha)[..., None] * (UR - UL)


def bar_state(system, UL, UR, axis=0, alpha=None):
    """Intermediate state of the two-state LLF flux.

    This is the state whose admissibility underwrites the flux-correction
    bounds; it equals the exact average of the LLF evolution over one step
    at the limiting time step.
    """
    if alpha is None:
        alpha = pair_alpha(system, UL, UR, axis)
    FL = system.flux(UL, axis)
    FR = system.flux(UR, axis)
    return 0.5 * (UL + UR) + (FL - FR) / (2.0 * np.asarray(alpha)[..., None])


def wall_llf_flux(system, U, axis=0, fluid_hi=True):
    """LLF flux between a boundary state and its wall mirror.

    ``fluid_hi`` orients the pair: with fluid above the wall the mirrored
    state sits on the low side.
    """
    M = system.mirror(U, axis)
    alpha = pair_alpha(system, U, M, axis)
    if fluid_hi:
        return llf_flux(system, M, U, axis, alpha)
    return llf_flux(system, U, M, axis, alpha)
