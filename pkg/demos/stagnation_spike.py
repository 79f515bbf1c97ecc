"""The stagnation failure of Jacobian-splitting point updates, and its cure.

A square pulse in Burgers' equation puts opposite-sign point values around the
leading shock.  The Jacobian-splitting update then sees a vanishing upwind
derivative there, the interface value freezes, and the neighbouring cell
average grows a spike that never stops.  Splitting the flux instead of the
Jacobian (here: local Lax-Friedrichs) removes the mechanism, and the local
maximum-principle limiter pins every degree of freedom into [-1, 2].
"""
import numpy as np

from activeflux import make_case


def run(kind, bp):
    setup = make_case("burgers_square", n=200)
    setup.config.kind = kind
    setup.config.average_bp = bp
    setup.config.point_bp = bp
    solver = setup.solver()
    out = []
    # watch the spike grow: record the max average every few hundred steps
    def watch(s):
        if s.stats.steps % 400 == 0:
            out.append((s.t, float(s.state.avg[setup.grid.sc, 0].max())))
    solver.run(setup.t_end, callback=watch)
    return solver, out


js, growth = run("js", "off")
print("unlimited js: max cell average over time")
for t, m in growth:
    print(f"  t={t:.3f}  max u = {m:8.3f}")
print(f"final spike: {js.state.avg[js.grid.sc, 0].max():.3f}  (data lives in [-1, 2])")

llf, _ = run("llf", "local")
print(f"\nllf + local limiting: u stayed in "
      f"[{llf.stats.u_min:.12f}, {llf.stats.u_max:.12f}] for the whole run")
