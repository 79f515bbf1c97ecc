"""Ghost filling for all DoF families and wall flux bookkeeping.

Supported side kinds: ``periodic``, ``outflow`` (zeroth-order copy),
``reflective`` (mirror with flipped normal momentum), ``dirichlet`` (fixed
state) and ``exact`` (time-dependent prescribed state).  A side may also be
``segmented`` along its transverse coordinate, e.g. an inflow slot embedded in
an otherwise free boundary.

Point values on a periodic axis share the two boundary locations; the high
copy is synchronized from the low one on every fill.  Dirichlet/exact sides
prescribe the boundary-line point values as well (strong imposition); for the
other kinds the boundary-line values evolve like interior DoFs.

Embedded solid bodies (the forward facing step) are handled with internal
reflective walls: fluid data is mirrored into the ghost layers inside the
body, deeper solid entries are overwritten with a fixed fill state, and the
wall lines are reported so the average update can replace its quadrature
fluxes by the mirrored-state LLF flux there.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

SIDE_KINDS = ("periodic", "outflow", "reflective", "dirichlet", "exact", "segmented")


@dataclass
class Side:
    kind: str
    state: np.ndarray | None = None  # dirichlet
    fn: object = None  # exact: fn(x[, y], t) -> (..., m)
    segments: list | None = None  # segmented: [(lo, hi, Side), ...]

    def __post_init__(self):
        if self.kind not in SIDE_KINDS:
            raise ConfigError(f"unknown boundary kind '{self.kind}'")
        if self.kind == "dirichlet" and self.state is None:
            raise ConfigError("dirichlet side needs a state")
        if self.kind == "exact" and self.fn is None:
            raise ConfigError("exact side needs a state function")
        if self.kind == "segmented" and not self.segments:
            raise ConfigError("segmented side needs segments")


@dataclass
class InternalWall:
    """Reflective wall inside the domain (face-aligned).

    ``axis`` is the wall normal; ``pos`` the wall coordinate; fluid sits on the
    ``fluid_side`` ("lo" = below/left of the wall).  ``span`` bounds the wall
    along the transverse coordinate.
    """

    axis: int
    pos: float
    fluid_side: str
    span: tuple


@dataclass
class BoundarySpec:
    sides: dict  # {("x","lo"): Side, ...}; 1D uses only the "x" keys
    internal_walls: list = field(default_factory=list)
    solid_fill: np.ndarray | None = None  # state written into deep solid entries

    def side(self, axis_name, which):
        return self.sides[(axis_name, which)]


def _ix(ndim, axis, idx):
    sl = [slice(None)] * ndim
    sl[axis] = idx
    return tuple(sl)


def _axis_type(name, axis):
    """'face' when the family is face-aligned along ``axis``, else 'cell'."""
    if name == "corner":
        return "face"
    if name == "face_x":
        return "face" if axis == 0 else "cell"
    if name == "face_y":
        return "face" if axis == 1 else "cell"
    return "cell"


def _family_coord(grid, name, axis):
    if grid.nd == 1:
        return grid.face_x() if name == "face_x" else grid.cell_x()
    if axis == 0:
        return grid.face_x() if _axis_type(name, 0) == "face" else grid.cell_x()
    return grid.face_y() if _axis_type(name, 1) == "face" else grid.cell_y()


def _interior_n(grid, axis):
    if grid.nd == 1:
        return grid.n
    return grid.nx if axis == 0 else grid.ny


def _fill_periodic_axis(grid, arr, name, axis):
    g = grid.n_ghost
    n = _interior_n(grid, axis)
    nd = arr.ndim - 1
    if _axis_type(name, axis) == "cell":
        arr[_ix(nd + 1, axis, slice(0, g))] = arr[_ix(nd + 1, axis, slice(n, n + g))]
        arr[_ix(nd + 1, axis, slice(n + g, n + 2 * g))] = arr[_ix(nd + 1, axis, slice(g, 2 * g))]
    else:
        # the two boundary faces are one DoF; keep the high copy in sync
        arr[_ix(nd + 1, axis, g + n)] = arr[_ix(nd + 1, axis, g)]
        arr[_ix(nd + 1, axis, slice(0, g))] = arr[_ix(nd + 1, axis, slice(n, n + g))]
        arr[_ix(nd + 1, axis, slice(n + g + 1, n + 2 * g + 1))] = arr[
            _ix(nd + 1, axis, slice(g + 1, 2 * g + 1))
        ]


def _ghost_targets(grid, name, axis, which):
    """(target indices, mirror sources, copy source, boundary-line index)."""
    g = grid.n_ghost
    n = _interior_n(grid, axis)
    facelike = _axis_type(name, axis) == "face"
    if which == "lo":
        if facelike:
            tgt = [g - t for t in range(1, g + 1)]
            mir = [g + t for t in range(1, g + 1)]
            near, line = g, g
        else:
            tgt = [g - 1 - t for t in range(g)]
            mir = [g + t for t in range(g)]
            near, line = g, None
    else:
        if facelike:
            tgt = [g + n + t for t in range(1, g + 1)]
            mir = [g + n - t for t in range(1, g + 1)]
            near, line = g + n, g + n
        else:
            tgt = [g + n + t for t in range(g)]
            mir = [g + n - 1 - t for t in range(g)]
            near, line = g + n - 1, None
    return tgt, mir, near, line


def _apply_side(grid, arr, name, axis, which, side, system, t, rows_mask=None):
    """Fill one side of one family array.  ``rows_mask`` restricts the
    transverse rows (segmented sides); None means all rows."""
    nd1 = arr.ndim
    tgt, mir, near, line = _ghost_targets(grid, name, axis, which)

    def assign(idx, values):
        loc = _ix(nd1, axis, idx)
        if rows_mask is None:
            arr[loc] = values
        else:
            tmp = arr[loc].copy()
            tmp[rows_mask] = np.broadcast_to(values, tmp.shape)[rows_mask]
            arr[loc] = tmp

    if side.kind == "outflow":
        for it in tgt:
            assign(it, arr[_ix(nd1, axis, near)])
    elif side.kind == "reflective":
        for it, im in zip(tgt, mir):
            assign(it, system.mirror(arr[_ix(nd1, axis, im)], axis))
    elif side.kind == "dirichlet":
        for it in tgt:
            assign(it, side.state)
        if line is not None:
            assign(line, side.state)
    elif side.kind == "exact":
        idxs = list(tgt) + ([line] if line is not None else [])
        for it in idxs:
            assign(it, _exact_values(grid, name, axis, it, side.fn, t))
    else:  # pragma: no cover - guarded in fill_ghosts
        raise ConfigError(f"cannot apply side kind '{side.kind}' here")


def _exact_values(grid, name, axis, idx, fn, t):
    if grid.nd == 1:
        x = _family_coord(grid, name, 0)[idx]
        return fn(np.asarray([x]), t)[0]
    cx = _family_coord(grid, name, 0)
    cy = _family_coord(grid, name, 1)
    if axis == 0:
        X = np.full(cy.shape, cx[idx])
        return fn(X, cy, t)
    Y = np.full(cx.shape, cy[idx])
    return fn(cx, Y, t)


def _segment_masks(grid, name, axis, segments):
    """Boolean row masks (over the transverse coordinate) per segment."""
    trans_axis = 1 - axis
    coord = _family_coord(grid, name, trans_axis)
    masks = []
    for lo, hi, sub in segments:
        masks.append(((coord >= lo) & (coord < hi), sub))
    return masks


def fill_ghosts(grid, dofs, system, spec, t=0.0):
    """Fill all ghost entries (and prescribed boundary-line values) in place."""
    axes = ("x",) if grid.nd == 1 else ("x", "y")
    for axis, axname in enumerate(axes):
        lo = spec.side(axname, "lo")
        hi = spec.side(axname, "hi")
        per_lo = lo.kind == "periodic"
        per_hi = hi.kind == "periodic"
        if per_lo != per_hi:
            raise ConfigError("periodic boundaries must be paired")
        for name, arr in dofs.families():
            if per_lo:
                _fill_periodic_axis(grid, arr, name, axis)
                continue
            for which, side in (("lo", lo), ("hi", hi)):
                if side.kind == "segmented":
                    for mask, sub in _segment_masks(grid, name, axis, side.segments):
                        _apply_side(grid, arr, name, axis, which, sub, system, t, rows_mask=mask)
                else:
                    _apply_side(grid, arr, name, axis, which, side, system, t)
    if spec.internal_walls:
        _fill_solid(grid, dofs, spec)
        for wall in spec.internal_walls:
            _fill_internal_wall(grid, dofs, system, wall)


# ---------------------------------------------------------------------------
# embedded walls


def _fluid_interior_gi(grid):
    """Ghost-inclusive mask: interior fluid cells (exterior counts as not fluid)."""
    g = grid.n_ghost
    fluid = np.zeros((grid.nx + 2 * g, grid.ny + 2 * g), dtype=bool)
    fluid[grid.scx, grid.scy] = True
    if grid.solid is not None:
        fluid &= ~grid.solid
    return fluid


def family_fluid_adjacent(grid, name):
    """Ghost-inclusive mask of entries with at least one fluid interior cell
    next to them; such entries are evolved/filled by the regular machinery and
    must never be overwritten by internal-wall fills."""
    fluid = _fluid_interior_gi(grid)
    if name == "avg":
        return fluid
    if name == "face_x":
        pad = np.pad(fluid, ((1, 1), (0, 0)))
        return pad[:-1, :] | pad[1:, :]
    if name == "face_y":
        pad = np.pad(fluid, ((0, 0), (1, 1)))
        return pad[:, :-1] | pad[:, 1:]
    pad = np.pad(fluid, 1)
    return pad[:-1, :-1] | pad[1:, :-1] | pad[:-1, 1:] | pad[1:, 1:]


def _touches_solid(grid, name):
    """Ghost-inclusive mask of entries adjacent to at least one solid cell."""
    g = grid.n_ghost
    solid = np.zeros((grid.nx + 2 * g, grid.ny + 2 * g), dtype=bool)
    if grid.solid is not None:
        solid |= grid.solid
    if name == "avg":
        return solid
    if name == "face_x":
        pad = np.pad(solid, ((1, 1), (0, 0)))
        return pad[:-1, :] | pad[1:, :]
    if name == "face_y":
        pad = np.pad(solid, ((0, 0), (1, 1)))
        return pad[:, :-1] | pad[:, 1:]
    pad = np.pad(solid, 1)
    return pad[:-1, :-1] | pad[1:, :-1] | pad[:-1, 1:] | pad[1:, 1:]


def _fill_solid(grid, dofs, spec):
    """Overwrite entries fully inside the body with the fill state so every
    later evaluation stays finite; mirrored layers are rewritten afterwards."""
    if spec.solid_fill is None or grid.solid is None:
        return
    for name, arr in dofs.families():
        writable = _touches_solid(grid, name) & ~family_fluid_adjacent(grid, name)
        arr[writable] = spec.solid_fill


def _wall_face_index(grid, wall):
    g = grid.n_ghost
    if wall.axis == 0:
        k = int(round((wall.pos - grid.x_lo) / grid.dx))
    else:
        k = int(round((wall.pos - grid.y_lo) / grid.dy))
    return g + k


def _fill_internal_wall(grid, dofs, system, wall):
    g = grid.n_ghost
    B = _wall_face_index(grid, wall)
    sgn = 1 if wall.fluid_side == "lo" else -1
    for name, arr in dofs.families():
        protected = family_fluid_adjacent(grid, name)
        facelike = _axis_type(name, wall.axis) == "face"
        nd1 = arr.ndim
        if facelike:
            pairs = [(B + sgn * t, B - sgn * t) for t in range(1, g + 1)]
        else:
            # first ghost cell index on the solid side of face B
            base = B if sgn == 1 else B - 1
            pairs = [(base + sgn * t, base - sgn * (t + 1)) for t in range(g)]
        for it, im in pairs:
            tloc = _ix(nd1, wall.axis, it)
            mirrored = system.mirror(arr[_ix(nd1, wall.axis, im)], wall.axis)
            keep = protected[_ix(protected.ndim, wall.axis, it)]
            arr[tloc] = np.where(keep[..., None], arr[tloc], mirrored)


# ---------------------------------------------------------------------------
# wall flux lines for the average update


@dataclass
class WallLine:
    """One face line where the quadrature fluxes use the mirrored-state LLF flux.

    ``axis`` is the flux direction, ``face_idx`` the ghost-inclusive face index,
    ``mid_mask``/``corner_mask`` select the transverse rows (cell-aligned points
    at face centers and face-aligned corner points respectively).  ``fluid_hi``
    says the fluid sits on the high-coordinate side of the line.
    """

    axis: int
    face_idx: int
    mid_mask: np.ndarray
    corner_mask: np.ndarray
    fluid_hi: bool = True


def _side_reflective_masks(grid, axis, side):
    """Transverse row masks where ``side`` behaves as a wall."""
    trans = 1 - axis
    cc = grid.cell_y() if trans == 1 else grid.cell_x()
    fc = grid.face_y() if trans == 1 else grid.face_x()
    if side.kind == "reflective":
        return np.ones(cc.shape, bool), np.ones(fc.shape, bool)
    if side.kind == "segmented":
        mid = np.zeros(cc.shape, bool)
        cor = np.zeros(fc.shape, bool)
        for lo, hi, sub in side.segments:
            if sub.kind == "reflective":
                mid |= (cc >= lo) & (cc < hi)
                cor |= (fc >= lo) & (fc <= hi)
        return mid, cor
    return None


def wall_flux_lines(grid, spec):
    """All wall lines (external reflective sides and internal walls)."""
    lines = []
    g = grid.n_ghost
    if grid.nd == 1:
        for which, idx in (("lo", g), ("hi", g + grid.n)):
            if spec.side("x", which).kind == "reflective":
                lines.append(WallLine(0, idx, np.ones(1, bool), np.ones(1, bool), which == "lo"))
        return lines
    for axis, axname in enumerate(("x", "y")):
        n = grid.nx if axis == 0 else grid.ny
        for which, idx in (("lo", g), ("hi", g + n)):
            masks = _side_reflective_masks(grid, axis, spec.side(axname, which))
            if masks is not None:
                lines.append(WallLine(axis, idx, masks[0], masks[1], which == "lo"))
    for wall in spec.internal_walls:
        B = _wall_face_index(grid, wall)
        trans = 1 - wall.axis
        cc = grid.cell_y() if trans == 1 else grid.cell_x()
        fc = grid.face_y() if trans == 1 else grid.face_x()
        lo, hi = wall.span
        lines.append(
            WallLine(
                wall.axis,
                B,
                (cc > lo) & (cc < hi),
                (fc >= lo) & (fc <= hi),
                wall.fluid_side == "hi",
            )
        )
    return lines


# convenience constructors ----------------------------------------------------


def periodic(nd):
    s = {("x", "lo"): Side("periodic"), ("x", "hi"): Side("periodic")}
    if nd == 2:
        s[("y", "lo")] = Side("periodic")
        s[("y", "hi")] = Side("periodic")
    return BoundarySpec(s)


def outflow(nd):
    s = {("x", "lo"): Side("outflow"), ("x", "hi"): Side("outflow")}
    if nd == 2:
        s[("y", "lo")] = Side("outflow")
        s[("y", "hi")] = Side("outflow")
    return BoundarySpec(s)
