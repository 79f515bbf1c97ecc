import numpy as np
import pytest

from activeflux import (Burgers, Euler, Grid1D, StepConstraintViolation,
                        allocate_dofs, fill_ghosts, periodic)
from activeflux.limit_point import (_euler_blend, _scalar_blend, fix_cell_centers,
                                    limit_points_1d)
from conftest import random_euler_states


def test_scalar_blend_frozen():
    # UL=0.9, UH=1.2, bounds [0,1]: theta = min(1, 0.9/0.3, 0.1/0.3) = 1/3,
    # blended value 0.9 + (1/3)*0.3 = 1.0 exactly on the bound
    UL = np.array([[0.9]])
    UH = np.array([[1.2]])
    out = _scalar_blend(UL, UH, np.array([0.0]), np.array([1.0]))
    assert np.isclose(out[0, 0], 1.0)


def test_scalar_blend_degenerate_and_safe():
    UL = np.array([[0.5], [0.5]])
    UH = np.array([[0.5], [0.6]])  # first: UH == UL; second: well inside bounds
    out = _scalar_blend(UL, UH, np.zeros(2), np.ones(2))
    assert np.allclose(out[:, 0], [0.5, 0.6])


def test_scalar_blend_symmetric_cap():
    # the step size is capped by the distance to the NEAREST bound even when
    # moving away from it: theta = min(1, 0.2/0.5, 0.8/0.5) = 0.4
    out = _scalar_blend(np.array([[0.2]]), np.array([[0.7]]),
                        np.array([0.0]), np.array([1.0]))
    assert np.isclose(out[0, 0], 0.2 + 0.4 * 0.5)


def test_euler_blend_passthrough_and_repair(rng):
    sys = Euler(gamma=1.4, nd=1)
    UL = random_euler_states(rng, 40)
    # comfortable update: passthrough bit-exact
    UH = UL * 1.01
    out = _euler_blend(sys, UL, UH, 1e-13, 1e-13)
    assert np.array_equal(out, UH)
    # broken update: negative density / pressure gets pulled back until
    # admissible (moderate scales, where the 1e-13 floors beat roundoff)
    W = np.stack([rng.uniform(0.1, 10.0, 40), rng.uniform(-3.0, 3.0, 40),
                  rng.uniform(0.1, 10.0, 40)], axis=-1)
    UL = sys.conservative(W)
    UH = UL.copy()
    UH[::3, 0] *= -1.0
    UH[1::3, 2] = 0.0  # zero total energy => negative pressure
    out = _euler_blend(sys, UL, UH, 1e-13, 1e-13)
    assert np.all(out[..., 0] > 0.0)
    assert np.all(sys.pressure(out) > 0.0)


def test_fix_cell_centers_noop_and_repair():
    sys = Euler(gamma=1.4, nd=1)
    avg = sys.conservative(np.array([[1.0, 0.0, 1.0], [1.0, 0.0, 1.0]]))
    good = sys.conservative(np.array([[0.9, 0.1, 1.1], [1.2, -0.2, 0.8]]))
    assert np.array_equal(fix_cell_centers(sys, avg, good), good)
    bad = good.copy()
    bad[0, 0] = -0.5
    bad[1, 2] = 0.0
    fixed = fix_cell_centers(sys, avg, bad)
    assert np.all(fixed[..., 0] > 0.0)
    assert np.all(sys.pressure(fixed) > 0.0)
    # repair moves toward the (admissible) cell average, never past it
    assert fixed[0, 0] <= avg[0, 0] + 1e-15


def _burgers_setup(rng, n=24):
    sys = Burgers()
    g = Grid1D(n, 0.0, 1.0)
    V = allocate_dofs(g, 1)
    V.avg[g.sc, 0] = rng.uniform(0.0, 1.0, n)
    V.face_x[g.sf, 0] = rng.uniform(0.0, 1.0, n + 1)
    fill_ghosts(g, V, sys, periodic(1))
    return sys, g, V


def test_limit_points_scalar_bounds(rng):
    sys, g, V = _burgers_setup(rng)
    n = g.n
    fe = V.face_x[g.sf] + rng.uniform(-1.0, 1.0, (n + 1, 1))  # overshooting update
    dom = {"u_min": 0.0, "u_max": 1.0}
    dt = 0.2 * g.dx
    for scope in ("global", "local"):
        out = limit_points_1d(g, V, fe.copy(), sys, dt, scope, dom)
        assert out.shape == (n + 1, 1)
        assert out.min() >= -1e-12 and out.max() <= 1.0 + 1e-12


def test_limit_points_passthrough_constant(rng):
    sys, g, V = _burgers_setup(rng)
    V.avg[...] = 0.4
    V.face_x[...] = 0.4
    fe = np.full((g.n + 1, 1), 0.4)
    out = limit_points_1d(g, V, fe, sys, 0.2 * g.dx, "global",
                          {"u_min": 0.0, "u_max": 1.0})
    assert np.allclose(out, 0.4)


def test_limit_points_step_constraint(rng):
    sys, g, V = _burgers_setup(rng)
    V.face_x[...] = 1.0  # alpha = 1 on both sides of every point
    fe = V.face_x[g.sf].copy()
    with pytest.raises(StepConstraintViolation):
        limit_points_1d(g, V, fe, sys, 0.6 * g.dx, "global",
                        {"u_min": 0.0, "u_max": 1.0})


def test_limit_points_euler_repairs_bad_update():
    sys = Euler(gamma=1.4, nd=1)
    n = 16
    g = Grid1D(n, 0.0, 1.0)
    V = allocate_dofs(g, 3)
    W = np.ones((n, 3))
    W[:, 1] = 0.1
    V.avg[g.sc] = sys.conservative(W)
    V.face_x[g.sf] = sys.conservative(np.ones((n + 1, 3)) * [1.0, 0.1, 1.0])
    fill_ghosts(g, V, sys, periodic(3))
    fe = V.face_x[g.sf].copy()
    fe[5, 0] = -2.0  # high-order update went negative at one point
    dom = {"eps_rho": 1e-13, "eps_p": 1e-13}
    dt = 0.1 * g.dx / sys.spectral_radius(V.face_x, 0).max()
    out = limit_points_1d(g, V, fe, sys, dt, "global", dom)
    assert sys.admissible(out).all()
    # untouched points keep the high-order value
    assert np.allclose(out[:5], fe[:5]) and np.allclose(out[6:], fe[6:])
