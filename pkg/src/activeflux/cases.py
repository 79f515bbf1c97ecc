"""Ready-made benchmark setups.

Each factory builds the grid, system, boundary description, default scheme
configuration and initial data for one benchmark; ``CASES`` maps names to
factories.  Smooth data are averaged with cell-wise Simpson rules (one order
above the scheme), interface-aligned discontinuous data take the mid-cell
value, which is exact for them.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import boundary as bcmod
from . import riemann
from .boundary import BoundarySpec, InternalWall, Side
from .grid import Grid1D, Grid2D, allocate_dofs
from .march import SchemeConfig, Solver
from .systems import Advection, Burgers, Euler


# ---------------------------------------------------------------------------
# initialisation helpers


def _eval2(f, xs, ys):
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    return f(X, Y)


def init_1d(grid, m, f, average="simpson"):
    dofs = allocate_dofs(grid, m)
    xf, xc = grid.face_x(), grid.cell_x()
    dofs.face_x[:] = f(xf)
    if average == "simpson":
        dofs.avg[:] = (f(xf[:-1]) + 4.0 * f(xc) + f(xf[1:])) / 6.0
    else:
        dofs.avg[:] = f(xc)
    return dofs


def simpson_average_2d(f, grid):
    xf, xc = grid.face_x(), grid.cell_x()
    yf, yc = grid.face_y(), grid.cell_y()
    acc = 0.0
    for wx, xs in ((1.0, xf[:-1]), (4.0, xc), (1.0, xf[1:])):
        for wy, ys in ((1.0, yf[:-1]), (4.0, yc), (1.0, yf[1:])):
            acc = acc + wx * wy * _eval2(f, xs, ys)
    return acc / 36.0


def init_2d(grid, m, f, average="simpson"):
    dofs = allocate_dofs(grid, m)
    dofs.face_x[:] = _eval2(f, grid.face_x(), grid.cell_y())
    dofs.face_y[:] = _eval2(f, grid.cell_x(), grid.face_y())
    dofs.corner[:] = _eval2(f, grid.face_x(), grid.face_y())
    if average == "simpson":
        dofs.avg[:] = simpson_average_2d(f, grid)
    else:
        dofs.avg[:] = _eval2(f, grid.cell_x(), grid.cell_y())
    return dofs


@dataclass
class CaseSetup:
    name: str
    grid: object
    system: object
    bc: object
    config: SchemeConfig
    state: object
    t_end: float
    exact: object = None  # f(x[, y], t) -> conservative state at time t
    notes: str = ""
    full: dict | None = None  # full-scale {"n": ..., "t_end": ...}

    def solver(self):
        return Solver(self.grid, self.system, self.bc, self.config, self.state)


def l1_average_error(setup, state=None, component=0):
    """Volume-weighted l1 error of one cell-average component against the
    Simpson average of the exact solution."""
    if setup.exact is None:
        raise ValueError(f"case '{setup.name}' has no exact solution")
    grid = setup.grid
    st = setup.state if state is None else state
    t = setup.t_end
    if grid.nd == 1:
        xf, xc = grid.face_x(), grid.cell_x()
        ex = (setup.exact(xf[:-1], t) + 4.0 * setup.exact(xc, t)
              + setup.exact(xf[1:], t)) / 6.0
        diff = st.avg[grid.sc, component] - ex[grid.sc, component]
        return float(np.sum(np.abs(diff)) * grid.dx)
    ex = simpson_average_2d(lambda x, y: setup.exact(x, y, t), grid)
    diff = st.avg[grid.scx, grid.scy, component] - ex[grid.scx, grid.scy, component]
    return float(np.sum(np.abs(diff)) * grid.dx * grid.dy)


def total_conserved(grid, dofs):
    """Volume integral of the cell averages per component."""
    if grid.nd == 1:
        return dofs.avg[grid.sc].sum(axis=0) * grid.dx
    return dofs.avg[grid.scx, grid.scy].sum(axis=(0, 1)) * grid.dx * grid.dy


def _wrap(x, center, period):
    return (x - center + 0.5 * period) % period - 0.5 * period


# ---------------------------------------------------------------------------
# scalar cases


def make_advection(n=100, full=False):
    grid = Grid1D(n, 0.0, 1.0)
    system = Advection((1.0,))

    def f(x):
        return np.sin(2.0 * np.pi * x)[..., None]

    setup = CaseSetup(
        "advection", grid, system, bcmod.periodic(1),
        SchemeConfig(kind="llf", cfl=0.4),
        init_1d(grid, 1, f), 1.0,
        exact=lambda x, t: f(x - t),
        notes="smooth periodic transport; exact solution is the shifted profile",
    )
    return setup


def make_burgers_square(n=200, full=False):
    grid = Grid1D(n, -1.0, 1.0)
    system = Burgers()

    def f(x):
        return np.where(np.abs(x) < 0.2, 2.0, -1.0)[..., None]

    return CaseSetup(
        "burgers_square", grid, system, bcmod.periodic(1),
        SchemeConfig(kind="js", cfl=0.2),
        init_1d(grid, 1, f, average="center"), 0.5,
        notes="square pulse; exposes stagnating interface values of the "
              "Jacobian-splitting update at the leading jump",
    )


def make_advection2d(n=100, full=False):
    grid = Grid2D(n, n, 0.0, 1.0, 0.0, 1.0)
    system = Advection((1.0, 1.0))

    def f(x, y):
        cx, cy = _wrap(x, 0.3, 1.0), _wrap(y, 0.3, 1.0)
        r = np.sqrt(cx * cx + cy * cy)
        cone = np.maximum(1.0 - 5.0 * r, 0.0)
        sx, sy = _wrap(x, 0.7, 1.0), _wrap(y, 0.7, 1.0)
        square = np.where(np.maximum(np.abs(sx), np.abs(sy)) < 0.2, 1.0, 0.0)
        return (cone + square)[..., None]

    return CaseSetup(
        "advection2d", grid, system, bcmod.periodic(2),
        SchemeConfig(kind="llf", cfl=0.4),
        init_2d(grid, 1, f), 2.0,
        exact=lambda x, y, t: f(x - t, y - t),
        notes="cone and square patch transported diagonally through the "
              "periodic box; bounds are [0, 1]",
    )


def make_burgers2d(n=64, full=False):
    grid = Grid2D(n, n, 0.0, 1.0, 0.0, 1.0)
    system = Burgers(nd=2)

    def f(x, y):
        return (0.5 + np.sin(2.0 * np.pi * (x + y)))[..., None]

    return CaseSetup(
        "burgers2d", grid, system, bcmod.periodic(2),
        SchemeConfig(kind="llf", cfl=0.4, average_bp="local", point_bp="local"),
        init_2d(grid, 1, f), 0.3,
        notes="smooth data steepening into an oblique shock",
    )


# ---------------------------------------------------------------------------
# 1D Euler cases


def _riemann_case(name, left_prim, right_prim, n, t_end, gamma, config,
                  x_split=0.5, notes="", with_exact=True, full=None):
    grid = Grid1D(n, 0.0, 1.0)
    system = Euler(gamma=gamma, nd=1)

    def f(x):
        W = np.empty(x.shape + (3,))
        lft = x < x_split
        for k in range(3):
            W[..., k] = np.where(lft, left_prim[k], right_prim[k])
        return system.conservative(W)

    exact = None
    if with_exact:
        def exact(x, t):
            xi = (np.asarray(x) - x_split) / t
            rho, v, p = riemann.sample(xi, left_prim, right_prim, gamma)
            return system.conservative(np.stack([rho, v, p], axis=-1))

    return CaseSetup(
        name, grid, system, bcmod.outflow(1), config,
        init_1d(grid, 3, f, average="center"), t_end,
        exact=exact, notes=notes, full=full,
    )


def make_sod(n=200, full=False):
    return _riemann_case(
        "sod", (1.0, 0.0, 1.0), (0.125, 0.0, 0.1), n, 0.2, 1.4,
        SchemeConfig(kind="llf", cfl=0.4, average_bp="local", point_bp="local", kappa=1.0),
        notes="standard shock tube with exact reference",
    )


def make_leblanc(n=600, full=False):
    if full:
        n = 6000
    return _riemann_case(
        "leblanc", (2.0, 0.0, 1.0e9), (1.0e-3, 0.0, 1.0), n, 5.0e-6, 1.4,
        SchemeConfig(kind="llf", cfl=0.4, average_bp="local", point_bp="local", kappa=10.0),
        notes="nine-decade pressure ratio; positivity floors do the work",
        full={"n": 6000, "t_end": 5.0e-6},
    )


def make_double_rarefaction(n=400, full=False):
    return _riemann_case(
        "double_rarefaction", (7.0, -1.0, 0.2), (7.0, 1.0, 0.2), n, 0.3, 1.4,
        SchemeConfig(kind="llf", cfl=0.4, average_bp="local", point_bp="local"),
        notes="receding streams drive the centre toward vacuum",
    )


def make_blast(n=800, full=False):
    grid = Grid1D(n, 0.0, 1.0)
    system = Euler(gamma=1.4, nd=1)

    def f(x):
        p = np.where(x < 0.1, 1000.0, np.where(x < 0.9, 0.01, 100.0))
        W = np.stack([np.ones_like(x), np.zeros_like(x), p], axis=-1)
        return system.conservative(W)

    sides = {("x", "lo"): Side("reflective"), ("x", "hi"): Side("reflective")}
    return CaseSetup(
        "blast", grid, system, BoundarySpec(sides),
        SchemeConfig(kind="llf", cfl=0.4, average_bp="local", point_bp="local", kappa=1.0),
        init_1d(grid, 3, f, average="center"), 0.038,
        notes="interacting blast waves between reflecting walls",
    )


def gamma3_exact_state(x, t, zeta=1.0 - 1e-7):
    """Smooth flow with gamma = 3: both characteristic families are straight
    lines, so the state follows from two scalar Newton solves."""
    sqrt3 = np.sqrt(3.0)

    def rho0(s):
        return 1.0 + zeta * np.sin(np.pi * s)

    def foot(sign):
        xi = x + sign * sqrt3 * rho0(x) * t
        for _ in range(100):
            f = x + sign * sqrt3 * rho0(xi) * t - xi
            fp = sign * sqrt3 * zeta * np.pi * np.cos(np.pi * xi) * t - 1.0
            step = f / fp
            xi = xi - step
            if np.max(np.abs(step)) < 1e-13:
                break
        return xi

    x1 = foot(1.0)
    x2 = foot(-1.0)
    rho = 0.5 * (rho0(x1) + rho0(x2))
    v = sqrt3 * (rho - rho0(x1))
    p = rho ** 3
    return np.stack([rho, v, p], axis=-1)


def make_gamma3(n=80, full=False):
    grid = Grid1D(n, -1.0, 1.0)
    system = Euler(gamma=3.0, nd=1)

    def f(x):
        return system.conservative(gamma3_exact_state(np.asarray(x, float), 0.0))

    return CaseSetup(
        "gamma3", grid, system, bcmod.periodic(1),
        SchemeConfig(kind="llf", cfl=0.18, average_bp="local", point_bp="local"),
        init_1d(grid, 3, f), 0.1,
        exact=lambda x, t: system.conservative(gamma3_exact_state(np.asarray(x, float), t)),
        notes="near-vacuum smooth density wave; accuracy survives the limiter, "
              "the unlimited scheme must abort on a negative state",
    )


# ---------------------------------------------------------------------------
# 2D Euler cases


def make_vortex(n=64, eps=10.0828, full=False):
    grid = Grid2D(n, n, -5.0, 5.0, -5.0, 5.0)
    gamma = 1.4
    system = Euler(gamma=gamma, nd=2)

    def prim(x, y):
        xr, yr = _wrap(x, 0.0, 10.0), _wrap(y, 0.0, 10.0)
        r2 = xr * xr + yr * yr
        k0 = eps / (2.0 * np.pi) * np.exp(0.5 * (1.0 - r2))
        T0 = 1.0 - (gamma - 1.0) / (2.0 * gamma) * k0 * k0
        rho = T0 ** (1.0 / (gamma - 1.0))
        return np.stack([rho, 1.0 + k0 * yr, 1.0 - k0 * xr, T0 * rho], axis=-1)

    def f(x, y):
        return system.conservative(prim(x, y))

    return CaseSetup(
        "vortex", grid, system, bcmod.periodic(2),
        SchemeConfig(kind="llf", cfl=0.2, average_bp="local", point_bp="local"),
        init_2d(grid, 4, f), 1.0,
        exact=lambda x, y, t: f(x - t, y - t),
        notes="isentropic vortex a hair above vacuum at the core; exact "
              "solution is pure translation",
    )


def make_sod_quasi2d(n=100, full=False):
    grid = Grid2D(n, 2, 0.0, 1.0, 0.0, 1.0)
    system = Euler(gamma=1.4, nd=2)
    left = (1.0, 0.0, 1.0)
    right = (0.125, 0.0, 0.1)

    def f(x, y):
        lft = x < 0.5
        W = np.stack([
            np.where(lft, left[0], right[0]),
            np.where(lft, left[1], right[1]),
            np.zeros_like(x),
            np.where(lft, left[2], right[2]),
        ], axis=-1)
        return system.conservative(W)

    def exact(x, y, t):
        xi = (np.asarray(x) - 0.5) / t
        rho, v, p = riemann.sample(xi, left, right, 1.4)
        W = np.stack([rho, v, np.zeros_like(rho), p], axis=-1)
        return system.conservative(W)

    sides = {
        ("x", "lo"): Side("outflow"), ("x", "hi"): Side("outflow"),
        ("y", "lo"): Side("periodic"), ("y", "hi"): Side("periodic"),
    }
    return CaseSetup(
        "sod_quasi2d", grid, system, BoundarySpec(sides),
        SchemeConfig(kind="llf", cfl=0.4, average_bp="local", point_bp="local", kappa=1.0),
        init_2d(grid, 4, f, average="center"), 0.2, exact=exact,
        notes="x-aligned shock tube on a 2-cell-wide strip; a y-uniform "
              "solution must keep corner and face lines in sync",
    )


def make_sedov(n=101, full=False):
    if n % 2 == 0:
        n += 1  # keep one centre cell
    grid = Grid2D(n, n, -1.1, 1.1, -1.1, 1.1)
    system = Euler(gamma=1.4, nd=2)

    def f(x, y):
        U = np.zeros(x.shape + (4,))
        U[..., 0] = 1.0
        U[..., 3] = 1.0e-12
        return U

    state = init_2d(grid, 4, f, average="center")
    g = grid.n_ghost
    ic = g + (n - 1) // 2
    e0 = 0.979264 / (grid.dx * grid.dy)
    state.avg[ic, ic, 3] = e0
    state.face_x[ic, ic, 3] = e0
    state.face_x[ic + 1, ic, 3] = e0
    state.face_y[ic, ic, 3] = e0
    state.face_y[ic, ic + 1, 3] = e0
    return CaseSetup(
        "sedov", grid, system, bcmod.outflow(2),
        SchemeConfig(kind="llf", cfl=0.4, average_bp="local", point_bp="local", kappa=0.5),
        state, 1.0,
        notes="point blast into near-zero pressure; the self-similar shock "
              "ring reaches unit radius at the final time",
    )


def make_ffs(n=40, full=False):
    if full:
        n = 160
    nx, ny = 3 * n, n
    g = 2
    solid = np.zeros((nx + 2 * g, ny + 2 * g), dtype=bool)
    xc = np.linspace(0.0, 3.0, 2 * nx + 1)[1::2]
    yc = np.linspace(0.0, 1.0, 2 * ny + 1)[1::2]
    solid[g:g + nx, g:g + ny] = (xc[:, None] > 0.6) & (yc[None, :] < 0.2)
    # the step meets the channel floor: continue it through the ghost band so
    # edge points inside the body have solid neighbours on both sides
    solid[:, :g] = solid[:, g:g + 1]
    grid = Grid2D(nx, ny, 0.0, 3.0, 0.0, 1.0, solid=solid)
    system = Euler(gamma=1.4, nd=2)
    inflow = system.conservative(np.array([1.4, 3.0, 0.0, 1.0]))

    def f(x, y):
        return np.broadcast_to(inflow, x.shape + (4,)).copy()

    sides = {
        ("x", "lo"): Side("dirichlet", state=inflow),
        ("x", "hi"): Side("outflow"),
        ("y", "lo"): Side("reflective"),
        ("y", "hi"): Side("reflective"),
    }
    walls = [
        InternalWall(axis=0, pos=0.6, fluid_side="lo", span=(0.0, 0.2)),
        InternalWall(axis=1, pos=0.2, fluid_side="hi", span=(0.6, 3.0)),
    ]
    return CaseSetup(
        "ffs", grid, system, BoundarySpec(sides, walls, solid_fill=inflow),
        SchemeConfig(kind="llf", cfl=0.4, average_bp="local", point_bp="local", kappa=1.0),
        init_2d(grid, 4, f, average="center"), 1.0 if not full else 4.0,
        notes="Mach 3 wind tunnel with a step; the step is an embedded "
              "reflecting body",
        full={"n": 160, "t_end": 4.0},
    )


def _jet_case(name, inlet_prim, ambient_prim, box, n, t_end, kappa, gamma, full_cfg):
    nx, ny = 2 * n, n
    grid = Grid2D(nx, ny, box[0], box[1], box[2], box[3])
    system = Euler(gamma=gamma, nd=2)
    ambient = system.conservative(np.array(ambient_prim))
    inlet = system.conservative(np.array(inlet_prim))

    def f(x, y):
        return np.broadcast_to(ambient, x.shape + (4,)).copy()

    big = 1e9
    sides = {
        ("x", "lo"): Side("segmented", segments=[
            (-big, -0.05, Side("outflow")),
            (-0.05, 0.05, Side("dirichlet", state=inlet)),
            (0.05, big, Side("outflow")),
        ]),
        ("x", "hi"): Side("outflow"),
        ("y", "lo"): Side("outflow"),
        ("y", "hi"): Side("outflow"),
    }
    return CaseSetup(
        name, grid, system, BoundarySpec(sides),
        SchemeConfig(kind="llf", cfl=0.4, average_bp="local", point_bp="local", kappa=kappa),
        init_2d(grid, 4, f, average="center"), t_end,
        notes="astrophysical jet slot inflow into a quiescent ambient gas",
        full=full_cfg,
    )


def make_jet_m80(n=50, full=False):
    t_end = 0.07 if full else 0.02
    if full:
        n = 200
    return _jet_case(
        "jet_m80", (5.0, 30.0, 0.0, 0.4127), (0.5, 0.0, 0.0, 0.4127),
        (0.0, 2.0, -0.5, 0.5), n, t_end, 1.0, 5.0 / 3.0,
        {"n": 200, "t_end": 0.07},
    )


def make_jet_m2000(n=50, full=False):
    if full:
        n = 200
    return _jet_case(
        "jet_m2000", (5.0, 800.0, 0.0, 0.4127), (0.5, 0.0, 0.0, 0.4127),
        (0.0, 1.0, -0.25, 0.25), n, 0.001, 10.0, 5.0 / 3.0,
        {"n": 200, "t_end": 0.001},
    )


def make_dmr(n=80, full=False):
    if full:
        n = 240
    nx, ny = 3 * n, n
    grid = Grid2D(nx, ny, 0.0, 3.0, 0.0, 1.0)
    system = Euler(gamma=1.4, nd=2)
    c30, s30 = np.cos(np.pi / 6.0), np.sin(np.pi / 6.0)
    post = system.conservative(np.array([8.0, 8.25 * c30, -8.25 * s30, 116.5]))
    pre = system.conservative(np.array([1.4, 0.0, 0.0, 1.0]))

    def shocked(x, y, t):
        xs = 1.0 / 6.0 + (y + 20.0 * t) / np.sqrt(3.0)
        m = (x < xs)[..., None]
        return np.where(m, post, pre)

    def f(x, y):
        return shocked(x, y, 0.0)

    big = 1e9
    sides = {
        ("x", "lo"): Side("dirichlet", state=post),
        ("x", "hi"): Side("outflow"),
        ("y", "lo"): Side("segmented", segments=[
            (-big, 1.0 / 6.0, Side("dirichlet", state=post)),
            (1.0 / 6.0, big, Side("reflective")),
        ]),
        ("y", "hi"): Side("exact", fn=shocked),
    }
    return CaseSetup(
        "dmr", grid, system, BoundarySpec(sides),
        SchemeConfig(kind="llf", cfl=0.4, average_bp="local", point_bp="local", kappa=1.0),
        init_2d(grid, 4, f, average="center"), 0.05 if not full else 0.2,
        notes="Mach 10 shock hitting a ramp; the top boundary tracks the "
              "moving shock exactly",
        full={"n": 240, "t_end": 0.2},
    )


CASES = {
    "advection": make_advection,
    "advection2d": make_advection2d,
    "burgers_square": make_burgers_square,
    "burgers2d": make_burgers2d,
    "sod": make_sod,
    "leblanc": make_leblanc,
    "double_rarefaction": make_double_rarefaction,
    "blast": make_blast,
    "gamma3": make_gamma3,
    "vortex": make_vortex,
    "sod_quasi2d": make_sod_quasi2d,
    "sedov": make_sedov,
    "ffs": make_ffs,
    "jet_m80": make_jet_m80,
    "jet_m2000": make_jet_m2000,
    "dmr": make_dmr,
}


def make_case(name, n=None, full=False, **kw):
    if name not in CASES:
        raise KeyError(f"unknown case '{name}'; available: {', '.join(sorted(CASES))}")
    factory = CASES[name]
    if n is None:
        return factory(full=full, **kw)
    return factory(n=n, full=full, **kw)
