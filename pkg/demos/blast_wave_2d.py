"""Point blast into near-vacuum: positivity floors plus the shock sensor.

All the energy starts in one cell; pressure outside is 1e-12.  The run leans
on every safety device in the scheme: positivity floors on density and
pressure, limiter-budget step rejection, and the sensor (pressure curvature
times a compression switch) that strengthens the flux correction near the
front.  The self-similar shock ring reaches radius ~1 at t=1.

Default 51^2 keeps this under a minute; the acceptance test runs 101^2.
"""
import argparse

import numpy as np

from activeflux import make_case


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=51)
    ap.add_argument("--plot", default=None, help="write a density map here")
    args = ap.parse_args()

    setup = make_case("sedov", n=args.n)
    solver = setup.solver()
    solver.run(setup.t_end)
    g = setup.grid
    rho = solver.state.avg[g.scx, g.scy, 0]
    i, j = np.unravel_index(np.argmax(rho), rho.shape)
    r = np.hypot(g.cell_x()[g.scx][i], g.cell_y()[g.scy][j])
    s = solver.stats
    print(f"{s.steps} steps ({s.retries} rejected), dt_min={s.dt_min:.3e}")
    print(f"min density {s.min_density:.3e}, min pressure {s.min_pressure:.3e} "
          f"over the whole run")
    print(f"peak density {rho.max():.4f} at radius {r:.4f}")
    print(f"sensor: theta_s_min {s.theta_s_min:.4f}, active faces {s.sensor_faces}")

    if args.plot:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
        fig, ax = plt.subplots(figsize=(5.2, 4.4))
        x, y = g.cell_x()[g.scx], g.cell_y()[g.scy]
        im = ax.pcolormesh(x, y, rho.T, cmap="viridis", shading="nearest")
        ax.set_aspect("equal")
        fig.colorbar(im, ax=ax, label="density")
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)
        print(f"wrote {args.plot}")


if __name__ == "__main__":
    main()
