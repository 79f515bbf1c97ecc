"""Structured Cartesian grids and the staggered degree-of-freedom storage.

The scheme evolves cell averages together with independent point values that
live on the cell boundaries: interface values in 1D; x-face, y-face and corner
values in 2D.  All arrays carry a ghost frame of depth ``n_ghost`` so that the
compact stencils and the LLF fallbacks never need special boundary branches.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

NGHOST = 2  # one ghost face + one ghost cell suffice for the stencils; 2 gives margin


@dataclass(frozen=True)
class Grid1D:
    """Uniform 1D grid. Per-cell widths are kept as arrays so non-uniform
    formulas stay written in their general form."""

    n: int
    x_lo: float
    x_hi: float
    n_ghost: int = NGHOST

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("need at least 3 cells")
        if not self.x_hi > self.x_lo:
            raise ValueError("empty extent")
        if self.n_ghost < 2:
            raise ValueError("ghost depth must be >= 2")

    @property
    def nd(self):
        return 1

    @property
    def dx(self) -> float:
        return (self.x_hi - self.x_lo) / self.n

    @property
    def dx_cells(self) -> np.ndarray:
        """Width of every cell including ghosts, shape (n + 2*n_ghost,)."""
        return np.full(self.n + 2 * self.n_ghost, self.dx)

    # ghost-inclusive coordinates
    def cell_x(self) -> np.ndarray:
        g = self.n_ghost
        return self.x_lo + (np.arange(self.n + 2 * g) - g + 0.5) * self.dx

    def face_x(self) -> np.ndarray:
        g = self.n_ghost
        return self.x_lo + (np.arange(self.n + 1 + 2 * g) - g) * self.dx

    # interior slices
    @property
    def sc(self) -> slice:
        return slice(self.n_ghost, self.n_ghost + self.n)

    @property
    def sf(self) -> slice:
        return slice(self.n_ghost, self.n_ghost + self.n + 1)


@dataclass(eq=False)
class Grid2D:
    """Uniform 2D grid; axis 0 is x, axis 1 is y.

    ``solid`` optionally marks cells inside an embedded body (forward facing
    step); it is a boolean array over the ghost-inclusive cell extent.
    """

    nx: int
    ny: int
    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float
    n_ghost: int = NGHOST
    solid: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError("need at least 2 cells per axis")
        if not (self.x_hi > self.x_lo and self.y_hi > self.y_lo):
            raise ValueError("empty extent")
        if self.n_ghost < 2:
            raise ValueError("ghost depth must be >= 2")
        if self.solid is not None:
            g = self.n_ghost
            if self.solid.shape != (self.nx + 2 * g, self.ny + 2 * g):
                raise ValueError("solid mask must cover the ghost-inclusive cell extent")

    @property
    def nd(self):
        return 2

    @property
    def dx(self) -> float:
        return (self.x_hi - self.x_lo) / self.nx

    @property
    def dy(self) -> float:
        return (self.y_hi - self.y_lo) / self.ny

    @property
    def dx_cells(self) -> np.ndarray:
        return np.full(self.nx + 2 * self.n_ghost, self.dx)

    @property
    def dy_cells(self) -> np.ndarray:
        return np.full(self.ny + 2 * self.n_ghost, self.dy)

    def cell_x(self) -> np.ndarray:
        g = self.n_ghost
        return self.x_lo + (np.arange(self.nx + 2 * g) - g + 0.5) * self.dx

    def cell_y(self) -> np.ndarray:
        g = self.n_ghost
        return self.y_lo + (np.arange(self.ny + 2 * g) - g + 0.5) * self.dy

    def face_x(self) -> np.ndarray:
        g = self.n_ghost
        return self.x_lo + (np.arange(self.nx + 1 + 2 * g) - g) * self.dx

    def face_y(self) -> np.ndarray:
        g = self.n_ghost
        return self.y_lo + (np.arange(self.ny + 1 + 2 * g) - g) * self.dy

    @property
    def scx(self) -> slice:
        return slice(self.n_ghost, self.n_ghost + self.nx)

    @property
    def scy(self) -> slice:
        return slice(self.n_ghost, self.n_ghost + self.ny)

    @property
    def sfx(self) -> slice:
        return slice(self.n_ghost, self.n_ghost + self.nx + 1)

    @property
    def sfy(self) -> slice:
        return slice(self.n_ghost, self.n_ghost + self.ny + 1)

    # ---- fluid masks over the *interior* extents -----------------------------
    # A point DoF is active when at least one adjacent cell is fluid; cells
    # outside the domain count as solid except that boundary faces inherit the
    # activity of their single interior neighbor.

    def _solid_interior(self) -> np.ndarray:
        g = self.n_ghost
        if self.solid is None:
            return np.zeros((self.nx, self.ny), dtype=bool)
        return self.solid[self.scx, self.scy]

    def mask_cells(self) -> np.ndarray:
        return ~self._solid_interior()

    def mask_fx(self) -> np.ndarray:
        s = self._solid_interior()
        pad = np.pad(s, ((1, 1), (0, 0)), constant_values=True)
        return ~(pad[:-1, :] & pad[1:, :])

    def mask_fy(self) -> np.ndarray:
        s = self._solid_interior()
        pad = np.pad(s, ((0, 0), (1, 1)), constant_values=True)
        return ~(pad[:, :-1] & pad[:, 1:])

    def mask_corner(self) -> np.ndarray:
        s = self._solid_interior()
        pad = np.pad(s, 1, constant_values=True)
        return ~(pad[:-1, :-1] & pad[1:, :-1] & pad[:-1, 1:] & pad[1:, 1:])


@dataclass
class DofField:
    """One field of unknowns: cell averages plus boundary point values.

    1D: ``avg`` has shape (n+2g, m), ``face_x`` holds the interface values with
    shape (n+1+2g, m); ``face_y``/``corner`` are None.
    2D: ``face_x`` are the values on vertical faces (x_{i+1/2}, y_j),
    ``face_y`` on horizontal faces (x_i, y_{j+1/2}) and ``corner`` the shared
    cell-corner values (x_{i+1/2}, y_{j+1/2}).
    """

    avg: np.ndarray
    face_x: np.ndarray
    face_y: np.ndarray | None = None
    corner: np.ndarray | None = None

    @property
    def nd(self) -> int:
        return 1 if self.face_y is None else 2

    @property
    def m(self) -> int:
        return self.avg.shape[-1]

    def families(self):
        """Yield (name, array) for every stored DoF family."""
        yield "avg", self.avg
        yield "face_x", self.face_x
        if self.face_y is not None:
            yield "face_y", self.face_y
        if self.corner is not None:
            yield "corner", self.corner

    def copy(self) -> "DofField":
        return DofField(
            self.avg.copy(),
            self.face_x.copy(),
            None if self.face_y is None else self.face_y.copy(),
            None if self.corner is None else self.corner.copy(),
        )

    def zeros_like(self) -> "DofField":
        return DofField(
            np.zeros_like(self.avg),
            np.zeros_like(self.face_x),
            None if self.face_y is None else np.zeros_like(self.face_y),
            None if self.corner is None else np.zeros_like(self.corner),
        )


def allocate_dofs(grid, m: int) -> DofField:
    """Zero-initialized DoF storage for ``grid`` with m conserved components."""
    g = grid.n_ghost
    if grid.nd == 1:
        return DofField(
            avg=np.zeros((grid.n + 2 * g, m)),
            face_x=np.zeros((grid.n + 1 + 2 * g, m)),
        )
    return DofField(
        avg=np.zeros((grid.nx + 2 * g, grid.ny + 2 * g, m)),
        face_x=np.zeros((grid.nx + 1 + 2 * g, grid.ny + 2 * g, m)),
        face_y=np.zeros((grid.nx + 2 * g, grid.ny + 1 + 2 * g, m)),
        corner=np.zeros((grid.nx + 1 + 2 * g, grid.ny + 1 + 2 * g, m)),
    )


def interior_counts(grid) -> dict:
    """Number of interior (evolved) DoFs per family."""
    if grid.nd == 1:
        return {"avg": grid.n, "face_x": grid.n + 1}
    return {
        "avg": grid.nx * grid.ny,
        "face_x": (grid.nx + 1) * grid.ny,
        "face_y": grid.nx * (grid.ny + 1),
        "corner": (grid.nx + 1) * (grid.ny + 1),
    }
