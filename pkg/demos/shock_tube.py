"""Sod shock tube with the limited scheme, compared against the exact solution.

Runs the 200-cell tube, prints the error breakdown per wave region, and
optionally plots density (needs matplotlib: pass --plot out.png).
"""
import argparse

import numpy as np

from activeflux import l1_average_error, make_case
from activeflux.riemann import sample, solve_star


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--kind", default="llf")
    ap.add_argument("--plot", default=None, help="write the density profile here")
    args = ap.parse_args()

    setup = make_case("sod", n=args.n)
    setup.config.kind = args.kind
    solver = setup.solver()
    solver.run(setup.t_end)
    g = setup.grid
    x = g.cell_x()[g.sc]
    rho = solver.state.avg[g.sc, 0]

    left, right = (1.0, 0.0, 1.0), (0.125, 0.0, 0.1)
    rho_ex, v_ex, p_ex = sample((x - 0.5) / setup.t_end, left, right)
    p_star, v_star = solve_star(left, right)
    print(f"kind={args.kind}  n={args.n}  steps={solver.stats.steps}")
    print(f"l1 density error: {l1_average_error(setup, solver.state):.4e}")
    print(f"star region: p*={p_star:.5f} v*={v_star:.5f} "
          f"(contact at x={0.5 + v_star * setup.t_end:.4f})")
    for lo, hi, label in ((0.0, 0.45, "left+fan"), (0.45, 0.85, "star"),
                          (0.85, 1.0, "right")):
        m = (x >= lo) & (x < hi)
        print(f"  {label:9s} max |drho| = {np.abs(rho - rho_ex)[m].max():.4e}")

    if args.plot:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
        fig, ax = plt.subplots(figsize=(7, 4))
        ax.plot(x, rho_ex, "k-", lw=1, label="exact")
        ax.plot(x, rho, "o", ms=2.5, label=f"{args.kind}, n={args.n}")
        ax.set_xlabel("x")
        ax.set_ylabel("density")
        ax.legend()
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)
        print(f"wrote {args.plot}")


if __name__ == "__main__":
    main()
