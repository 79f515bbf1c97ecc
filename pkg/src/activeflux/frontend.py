"""Command-line front end.

Subcommands:

* ``activeflux cases`` — list the bundled benchmark setups.
* ``activeflux run CASE`` — march one setup to its final time, print run
  statistics, optionally dump the fields to ``.npz``.
* ``activeflux convergence CASE`` — error/order table over a mesh sequence.
* ``activeflux verify`` — fast built-in sanity checks.
"""
from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import __version__
from .cases import CASES, l1_average_error, make_case, total_conserved
from .errors import ConfigError
from .march import BP_SCOPES
from .splitting import KINDS


def _add_scheme_flags(p):
    p.add_argument("--n", type=int, default=None, help="cells per direction")
    p.add_argument("--kind", choices=KINDS, default=None, help="point-update flux splitting")
    p.add_argument("--cfl", type=float, default=None)
    p.add_argument("--avg-bp", choices=BP_SCOPES, default=None, dest="avg_bp")
    p.add_argument("--point-bp", choices=BP_SCOPES, default=None, dest="point_bp")
    p.add_argument("--kappa", type=float, default=None, help="shock-sensor strength (gas dynamics only)")
    p.add_argument("--t-end", type=float, default=None, dest="t_end")
    p.add_argument("--max-steps", type=int, default=None, dest="max_steps")


def _configured_case(args):
    setup = make_case(args.case, n=args.n, full=getattr(args, "full", False))
    cfg = setup.config
    for attr, val in (("kind", args.kind), ("cfl", args.cfl),
                      ("average_bp", args.avg_bp), ("point_bp", args.point_bp),
                      ("kappa", args.kappa)):
        if val is not None:
            setattr(cfg, attr, val)
    if args.t_end is not None:
        setup.t_end = args.t_end
    return setup


def _save_npz(path, setup, solver):
    grid, st = setup.grid, solver.state
    data = {
        "t": solver.t,
        "case": setup.name,
        "kind": setup.config.kind,
    }
    if grid.nd == 1:
        data.update(
            x_center=grid.cell_x()[grid.sc], x_face=grid.face_x()[grid.sf],
            avg=st.avg[grid.sc], face_x=st.face_x[grid.sf],
        )
    else:
        data.update(
            x_center=grid.cell_x()[grid.scx], y_center=grid.cell_y()[grid.scy],
            x_face=grid.face_x()[grid.sfx], y_face=grid.face_y()[grid.sfy],
            avg=st.avg[grid.scx, grid.scy],
            face_x=st.face_x[grid.sfx, grid.scy],
            face_y=st.face_y[grid.scx, grid.sfy],
            corner=st.corner[grid.sfx, grid.sfy],
        )
        if grid.solid is not None:
            data["solid"] = grid.solid[grid.scx, grid.scy]
    np.savez(path, **data)


def cmd_run(args):
    setup = _configured_case(args)
    solver = setup.solver()
    t0 = time.perf_counter()
    solver.run(setup.t_end, max_steps=args.max_steps)
    wall = time.perf_counter() - t0
    s = solver.stats
    print(f"case={setup.name} kind={setup.config.kind} t={solver.t:.6g} "
          f"steps={s.steps} retries={s.retries} wall={wall:.2f}s")
    print(f"  dt_last={s.dt_last:.3e} dt_min={s.dt_min:.3e}")
    if setup.system.name == "euler":
        print(f"  min_density={s.min_density:.6e} min_pressure={s.min_pressure:.6e}")
        if setup.config.kappa is not None:
            print(f"  theta_s_min={s.theta_s_min:.6e} sensor_faces={s.sensor_faces}")
    else:
        print(f"  u_min={s.u_min:.6e} u_max={s.u_max:.6e}")
    tot = total_conserved(setup.grid, solver.state)
    print("  totals=" + " ".join(f"{v:.12e}" for v in tot))
    if setup.exact is not None:
        print(f"  l1_error={l1_average_error(setup, solver.state):.6e}")
    if args.output:
        _save_npz(args.output, setup, solver)
        print(f"  wrote {args.output}")
    return 0


def cmd_convergence(args):
    meshes = [int(v) for v in args.meshes.split(",")]
    errs = []
    for n in meshes:
        args.n = n
        setup = _configured_case(args)
        solver = setup.solver()
        solver.run(setup.t_end, max_steps=args.max_steps)
        errs.append(l1_average_error(setup, solver.state))
    print(f"case={args.case} kind={setup.config.kind}")
    print(f"{'n':>6} {'l1 error':>14} {'order':>7}")
    for i, (n, e) in enumerate(zip(meshes, errs)):
        if i == 0:
            print(f"{n:6d} {e:14.6e} {'-':>7}")
        else:
            p = np.log(errs[i - 1] / e) / np.log(meshes[i] / meshes[i - 1])
            print(f"{n:6d} {e:14.6e} {p:7.3f}")
    return 0


def cmd_cases(args):
    for name in sorted(CASES):
        setup = make_case(name)
        dims = f"{setup.grid.nx}x{setup.grid.ny}" if setup.grid.nd == 2 else f"{setup.grid.n}"
        print(f"{name:20s} {setup.system.name:10s} {dims:>9s}  t_end={setup.t_end:g}")
        if args.verbose and setup.notes:
            print(f"{'':20s} {setup.notes}")
    return 0


def cmd_verify(args):
    from .splitting import split
    from .systems import make_system

    rng = np.random.default_rng(0)
    sys1 = make_system("euler", 1)
    U = np.stack([rng.uniform(0.1, 5.0, 2000),
                  rng.uniform(-3.0, 3.0, 2000),
                  np.zeros(2000)], axis=-1)
    U[..., 2] = rng.uniform(0.1, 5.0, 2000) / 0.4 + 0.5 * U[..., 1] ** 2 / U[..., 0]
    ok = True
    for kind in ("llf", "sw", "vh"):
        fp, fm = split(sys1, kind, U)
        err = np.max(np.abs(fp + fm - sys1.flux(U)))
        line = f"split consistency [{kind}]: max |F+ + F- - F| = {err:.2e}"
        if err > 1e-11:
            ok = False
            line += "  FAIL"
        print(line)

    setup = make_case("advection", n=40)
    solver = setup.solver()
    before = total_conserved(setup.grid, solver.state)
    solver.run(0.1)
    drift = np.max(np.abs(total_conserved(setup.grid, solver.state) - before))
    line = f"conservation drift over {solver.stats.steps} steps: {drift:.2e}"
    if drift > 1e-12:
        ok = False
        line += "  FAIL"
    print(line)
    print("verify:", "OK" if ok else "FAILED")
    return 0 if ok else 1


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="activeflux",
        description="Active flux solver for 1D/2D hyperbolic conservation laws.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one benchmark case")
    p_run.add_argument("case", choices=sorted(CASES))
    _add_scheme_flags(p_run)
    p_run.add_argument("--full", action="store_true", help="full-scale resolution and final time")
    p_run.add_argument("--output", default=None, help="write final fields to this .npz file")
    p_run.set_defaults(fn=cmd_run)

    p_conv = sub.add_parser("convergence", help="mesh-refinement error table")
    p_conv.add_argument("case", choices=sorted(CASES))
    _add_scheme_flags(p_conv)
    p_conv.add_argument("--meshes", default="32,64,128", help="comma-separated cell counts")
    p_conv.set_defaults(fn=cmd_convergence, full=False)

    p_cases = sub.add_parser("cases", help="list bundled cases")
    p_cases.add_argument("-v", "--verbose", action="store_true")
    p_cases.set_defaults(fn=cmd_cases)

    p_verify = sub.add_parser("verify", help="quick self checks")
    p_verify.set_defaults(fn=cmd_verify)

    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as err:
        ap.exit(2, f"{ap.prog}: error: {err}\n")


if __name__ == "__main__":
    sys.exit(main())
