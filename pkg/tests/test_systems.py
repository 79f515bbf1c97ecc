import numpy as np
import pytest

from activeflux import Advection, Burgers, Euler, NegativeStateError, make_system
from conftest import random_euler_states


def euler_jacobian(U, gamma, axis, nd):
    """Dense flux Jacobian dF_axis/dU assembled from the analytic entries."""
    m = U.shape[-1]
    rho = U[..., 0]
    mom = U[..., 1:1 + nd]
    E = U[..., -1]
    v = mom / rho[..., None]
    q2 = np.sum(v * v, axis=-1)
    vn = v[..., axis]
    g = gamma
    J = np.zeros(U.shape[:-1] + (m, m))
    # d(rho v_n)/dU
    J[..., 0, 1 + axis] = 1.0
    for i in range(nd):
        for j in range(nd):
            J[..., 1 + i, 1 + j] = (i == j) * vn + (j == axis) * v[..., i]
        J[..., 1 + i, 0] = -v[..., i] * vn
        J[..., 1 + i, -1] = 0.0
    J[..., 1 + axis, 0] += 0.5 * (g - 1.0) * q2
    for j in range(nd):
        J[..., 1 + axis, 1 + j] += -(g - 1.0) * v[..., j]
    J[..., 1 + axis, -1] += g - 1.0
    H = (E + (g - 1.0) * (E - 0.5 * rho * q2)) / rho
    J[..., -1, 0] = vn * (0.5 * (g - 1.0) * q2 - H)
    for j in range(nd):
        J[..., -1, 1 + j] = (j == axis) * H - (g - 1.0) * vn * v[..., j]
    J[..., -1, -1] = g * vn
    return J


def split_by_eig(J, U, which):
    """R diag(lam+-) R^-1 U computed numerically; the reference for SW."""
    lam, R = np.linalg.eig(J)
    lam = np.where((lam > 0) if which == "+" else (lam < 0), lam, 0.0)
    out = np.einsum("...ij,...j->...i", R, lam * np.linalg.solve(R, U[..., None])[..., 0])
    return out.real


@pytest.mark.parametrize("nd", [1, 2])
def test_primitive_conservative_roundtrip(rng, nd):
    U = random_euler_states(rng, 300, nd=nd)
    sys = Euler(gamma=1.4, nd=nd)
    W = sys.primitive(U)
    back = sys.conservative(W)
    assert np.allclose(back, U, rtol=1e-13, atol=0)


def test_pressure_values():
    e1 = Euler(gamma=1.4, nd=1)
    assert np.isclose(e1.pressure(np.array([2.0, 4.0, 6.0])), 0.8)
    e2 = Euler(gamma=5.0 / 3.0, nd=2)
    assert np.isclose(e2.pressure(np.array([1.0, 0.0, 0.0, 2.5])), 5.0 / 3.0)


def test_flux_values_2d():
    sys = Euler(gamma=1.4, nd=2)
    U = np.array([1.0, 1.0, 0.0, 3.0])
    assert np.allclose(sys.flux(U, axis=0), [1.0, 2.0, 0.0, 4.0])
    # axis symmetry: F2 equals F1 with the momentum components swapped
    Us = U[[0, 2, 1, 3]]
    F2 = sys.flux(Us, axis=1)
    assert np.allclose(F2[[0, 2, 1, 3]], sys.flux(U, axis=0))


def test_spectral_radius_and_mirror(rng):
    sys = Euler(gamma=1.4, nd=2)
    U = random_euler_states(rng, 50, nd=2)
    W = sys.primitive(U)
    a = np.sqrt(1.4 * W[..., -1] / W[..., 0])
    assert np.allclose(sys.spectral_radius(U, 0), np.abs(W[..., 1]) + a)
    assert np.allclose(sys.spectral_radius(U, 1), np.abs(W[..., 2]) + a)
    M = sys.mirror(U, axis=1)
    assert np.allclose(M[..., 2], -U[..., 2])
    assert np.allclose(M[..., [0, 1, 3]], U[..., [0, 1, 3]])


def test_validate_raises():
    sys = Euler(gamma=1.4, nd=1)
    with pytest.raises(NegativeStateError):
        sys.validate(np.array([[1.0, 0.0, -1.0]]))
    with pytest.raises(NegativeStateError):
        sys.validate(np.array([[-1.0, 0.0, 1.0]]))
    sys.validate(np.array([[1.0, 0.0, 2.5]]))  # fine


def test_admissible_floors():
    sys = Euler(gamma=1.4, nd=1)
    U = np.array([[1e-14, 0.0, 1e-12], [1.0, 0.0, 2.5]])
    ok = sys.admissible(U, eps_rho=1e-13, eps_p=1e-13)
    assert list(ok) == [False, True]


def test_make_system():
    assert isinstance(make_system("advection", 1), Advection)
    assert isinstance(make_system("burgers", 2), Burgers)
    assert make_system("euler", 2, gamma=1.4).nd == 2
    with pytest.raises(ValueError):
        make_system("mhd", 1)


def test_scalar_fluxes():
    adv = Advection(speeds=(2.0, -0.5))
    u = np.array([1.0, -3.0])[:, None]
    assert np.allclose(adv.flux(u, 0), 2.0 * u)
    assert np.allclose(adv.flux(u, 1), -0.5 * u)
    bur = Burgers()
    assert np.allclose(bur.flux(u, 0), 0.5 * u * u)


@pytest.mark.parametrize("nd,axis", [(1, 0), (2, 0), (2, 1)])
def test_steger_warming_matches_eigendecomposition(rng, nd, axis):
    """SW split flux == R diag(lam+-) R^-1 U assembled independently."""
    gamma = 1.4
    sys = Euler(gamma=gamma, nd=nd)
    U = random_euler_states(rng, 400, nd=nd, gamma=gamma)
    J = euler_jacobian(U, gamma, axis, nd)
    # the Jacobian itself must reproduce the flux (homogeneity of degree one)
    JU = np.einsum("...ij,...j->...i", J, U)
    assert np.max(np.abs(JU - sys.flux(U, axis))) / np.max(np.abs(JU)) < 1e-12

    Fp, Fm = sys.split_upwind(U, axis=axis)
    ref_p = split_by_eig(J, U, "+")
    ref_m = split_by_eig(J, U, "-")
    scale = np.abs(sys.flux(U, axis)).max()
    assert np.max(np.abs(Fp - ref_p)) / scale < 1e-9
    assert np.max(np.abs(Fm - ref_m)) / scale < 1e-9


def test_steger_warming_at_rest():
    gamma = 1.4
    sys = Euler(gamma=gamma, nd=1)
    rho, p = 1.3, 0.7
    U = np.array([rho, 0.0, p / (gamma - 1.0)])
    a = np.sqrt(gamma * p / rho)
    Fp, _ = sys.split_upwind(U, axis=0)
    assert np.isclose(Fp[0], rho * a / (2.0 * gamma))


def test_van_leer_quadratic_form(rng):
    """Mass flux halves are the +-(rho a / 4)(M +- 1)^2 parabolas."""
    gamma = 1.4
    sys = Euler(gamma=gamma, nd=1)
    U = random_euler_states(rng, 200, nd=1, gamma=gamma)
    W = sys.primitive(U)
    rho, v, p = W[..., 0], W[..., 1], W[..., 2]
    a = np.sqrt(gamma * p / rho)
    M = v / a
    Fp, Fm = sys.split_van_leer(U, axis=0)
    assert np.allclose(Fp[..., 0], 0.25 * rho * a * (M + 1.0) ** 2, rtol=1e-12)
    assert np.allclose(Fm[..., 0], -0.25 * rho * a * (M - 1.0) ** 2, rtol=1e-12)
    # momentum carries the split pressure halves (1 +- gamma M) p / 2
    tol = 1e-12 * np.abs(Fp[..., 1]).max()
    assert np.allclose(Fp[..., 1], Fp[..., 0] * v + 0.5 * (1.0 + gamma * M) * p, atol=tol)
    assert np.allclose(Fm[..., 1], Fm[..., 0] * v + 0.5 * (1.0 - gamma * M) * p, atol=tol)
    # energy rides on the mass flux times total specific enthalpy
    H = (U[..., -1] + p) / rho
    assert np.allclose(Fp[..., -1], Fp[..., 0] * H, rtol=1e-12)
    assert np.allclose(Fm[..., -1], Fm[..., 0] * H, rtol=1e-12)


def test_van_leer_smooth_through_sonic():
    # the quadratics are used at every Mach number: no kink crossing |M|=1
    gamma = 1.4
    sys = Euler(gamma=gamma, nd=1)

    def state(M):
        rho, p = 1.0, 1.0
        a = np.sqrt(gamma * p / rho)
        return np.array([rho, rho * M * a, p / (gamma - 1.0) + 0.5 * rho * (M * a) ** 2])

    eps = 1e-7
    lo = sys.split_van_leer(state(1.0 - eps), 0)
    hi = sys.split_van_leer(state(1.0 + eps), 0)
    for a_, b_ in zip(lo, hi):
        assert np.max(np.abs(a_ - b_)) < 1e-5
    # and F- stays nonzero above Mach 1 (no hard supersonic switch)
    _, Fm = sys.split_van_leer(state(1.5), 0)
    assert np.abs(Fm).max() > 1e-3


@pytest.mark.parametrize("kind", ["split_upwind", "split_van_leer"])
@pytest.mark.parametrize("nd,axis", [(1, 0), (2, 1)])
def test_fvs_consistency(rng, kind, nd, axis):
    sys = Euler(gamma=1.4, nd=nd)
    U = random_euler_states(rng, 500, nd=nd)
    Fp, Fm = getattr(sys, kind)(U, axis=axis)
    F = sys.flux(U, axis=axis)
    err = np.abs(Fp + Fm - F).max(axis=-1)
    # relative to the split halves: at extreme Mach they dwarf their sum
    scale = np.maximum.reduce([np.abs(F), np.abs(Fp), np.abs(Fm)]).max(axis=-1)
    assert (err / scale).max() <= 1e-13


def test_jacobian_apply_split(rng):
    # J+ x + J- x must equal J x; checked against the dense Jacobian
    gamma = 1.4
    sys = Euler(gamma=gamma, nd=2)
    U = random_euler_states(rng, 100, nd=2, gamma=gamma)
    x = rng.standard_normal(U.shape)
    for axis in (0, 1):
        J = euler_jacobian(U, gamma, axis, 2)
        Jx = np.einsum("...ij,...j->...i", J, x)
        got = sys.jacobian_apply_split(U, x, x, axis=axis)
        scale = np.abs(Jx).max()
        assert np.max(np.abs(got - Jx)) / scale < 1e-9


def test_scalar_jacobian_split():
    adv = Advection(speeds=(-2.0,))
    xp = np.array([[1.0]])
    xm = np.array([[10.0]])
    u = np.array([[0.3]])
    # negative speed: only the downwind slope enters
    assert np.allclose(adv.jacobian_apply_split(u, xp, xm, 0), -2.0 * xm)
    bur = Burgers()
    u = np.array([[3.0]])
    assert np.allclose(bur.jacobian_apply_split(u, xp, xm, 0), 3.0 * xp)
