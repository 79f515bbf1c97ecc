"""Acceptance gate: one test per shipped guarantee, pinned tolerances.

Run with ``pytest tests/test_acceptance.py -v`` for one pass/fail line per
criterion.  The whole file takes roughly twenty minutes on a laptop; nothing
here is randomized.
"""
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from activeflux import (NegativeStateError, l1_average_error, make_case,
                        total_conserved)


def _eoc(errs):
    return [float(np.log2(errs[i] / errs[i + 1])) for i in range(len(errs) - 1)]


def _corner_l1_density_error(setup, state):
    """l1 density error sampled on the corner lattice (the full vertex set),
    the natural discrete norm for the point-value families."""
    g = setup.grid
    X, Y = np.meshgrid(g.face_x()[g.sfx], g.face_y()[g.sfy], indexing="ij")
    ex = setup.exact(X, Y, setup.t_end)[..., 0]
    return float(np.abs(state.corner[g.sfx, g.sfy, 0] - ex).sum() * g.dx * g.dy)


def test_criterion_01_vortex_third_order():
    """32/64/128 squared meshes, CFL 0.2, limiters on: corner-lattice density
    EOC >= 2.7 for js/llf/vh, in [1.6, 2.5] for sw."""
    eocs = {}
    for kind in ("js", "llf", "vh", "sw"):
        errs_c, errs_a = [], []
        for n in (32, 64, 128):
            setup = make_case("vortex", n=n)
            setup.config.kind = kind
            setup.config.cfl = 0.2
            setup.config.average_bp = "local"
            setup.config.point_bp = "local"
            s = setup.solver()
            s.run(setup.t_end)
            errs_c.append(_corner_l1_density_error(setup, s.state))
            errs_a.append(l1_average_error(setup, s.state))
        eocs[kind] = _eoc(errs_c)[-1]
        print(f"[1] {kind}: corner-l1 errors {errs_c} -> EOC {eocs[kind]:.3f} "
              f"(cell-average EOC {_eoc(errs_a)[-1]:.3f})")
    assert eocs["js"] >= 2.7
    assert eocs["llf"] >= 2.7
    assert eocs["vh"] >= 2.7
    assert 1.6 <= eocs["sw"] <= 2.5


def test_criterion_02_smooth_euler_accuracy_needs_limiters():
    """Near-vacuum smooth wave: third order with limiters on; aborts on a
    negative state without them."""
    for kind in ("js", "llf", "vh"):
        errs = []
        for n in (40, 80, 160, 320):
            setup = make_case("gamma3", n=n)
            setup.config.kind = kind
            s = setup.solver()
            s.run(setup.t_end)
            errs.append(l1_average_error(setup, s.state))
        eoc = _eoc(errs)[-1]
        print(f"[2] {kind}: density errors {errs} -> finest-pair EOC {eoc:.3f}")
        assert eoc >= 2.7
    setup = make_case("gamma3", n=80)
    setup.config.average_bp = "off"
    setup.config.point_bp = "off"
    with pytest.raises(NegativeStateError):
        setup.solver().run(setup.t_end)
    print("[2] unlimited run aborted with a negative state, as required")


def test_criterion_03_maximum_principle_table():
    """2D advection, 100^2, T=2: the solution stays in [0,1] exactly when both
    the average and the point limiters are active (9-combination table)."""
    table = {}
    for avg_bp in ("off", "global", "local"):
        for point_bp in ("off", "global", "local"):
            setup = make_case("advection2d", n=100)
            setup.config.average_bp = avg_bp
            setup.config.point_bp = point_bp
            s = setup.solver()
            s.run(setup.t_end)
            ok = s.stats.u_min >= -1e-12 and s.stats.u_max <= 1.0 + 1e-12
            table[avg_bp, point_bp] = ok
            print(f"[3] avg={avg_bp:6s} point={point_bp:6s} "
                  f"u in [{s.stats.u_min:+.3e}, {s.stats.u_max:.12f}] "
                  f"{'in bounds' if ok else 'VIOLATION'}")
    for combo, ok in table.items():
        assert ok == (combo[0] != "off" and combo[1] != "off"), combo


def test_criterion_04_stagnation_spike_and_its_cure():
    """Square pulse in Burgers: unlimited js grows a spike at the leading
    shock; llf with local limiting keeps every DoF inside [-1, 2]."""
    setup = make_case("burgers_square", n=200)  # defaults: js, cfl 0.2, no bp
    s = setup.solver()
    s.run(setup.t_end)
    spike = float(s.state.avg[setup.grid.sc, 0].max())
    print(f"[4] unlimited js: max cell average {spike:.3f}")
    assert spike > 2.05

    setup = make_case("burgers_square", n=200)
    setup.config.kind = "llf"
    setup.config.average_bp = "local"
    setup.config.point_bp = "local"
    s = setup.solver()
    s.run(setup.t_end)
    print(f"[4] limited llf: u in [{s.stats.u_min:.12f}, {s.stats.u_max:.12f}]")
    assert s.stats.u_min >= -1.0 - 1e-12
    assert s.stats.u_max <= 2.0 + 1e-12


def test_criterion_05_positivity_under_rarefaction_and_blast():
    for name in ("double_rarefaction", "leblanc"):
        setup = make_case(name)
        s = setup.solver()
        s.run(setup.t_end)
        print(f"[5] {name}: {s.stats.steps} steps, min rho {s.stats.min_density:.3e}, "
              f"min p {s.stats.min_pressure:.3e}")
        assert s.stats.min_density >= 1e-13
        assert s.stats.min_pressure >= 1e-13

        setup = make_case(name)
        setup.config.average_bp = "off"
        setup.config.point_bp = "off"
        setup.config.kappa = None
        with pytest.raises(NegativeStateError):
            setup.solver().run(setup.t_end)
        print(f"[5] {name}: unlimited run aborted with a negative state")


def test_criterion_06_grid_aligned_tube():
    """Quasi-2D shock tube: llf stays an accurate quasi-1D solution; the js
    update decouples the corner and x-face families by at least 5x more."""
    def run(kind):
        setup = make_case("sod_quasi2d")  # 100x2, llf, local bp, kappa=1
        setup.config.kind = kind
        s = setup.solver()
        s.run(setup.t_end)
        g = setup.grid
        co = s.state.corner[g.sfx, g.sfy, 0]
        fx = s.state.face_x[g.sfx, g.scy, 0]
        disc = float(np.abs(co[:, :, None] - fx[:, None, :]).max())
        return l1_average_error(setup, s.state), disc

    l1_llf, d_llf = run("llf")
    l1_js, d_js = run("js")
    print(f"[6] llf: l1 density error {l1_llf:.4e}, family discrepancy {d_llf:.4e}")
    print(f"[6] js : l1 density error {l1_js:.4e}, family discrepancy {d_js:.4e} "
          f"(ratio {d_js / d_llf:.2f})")
    assert l1_llf <= 1e-2
    assert d_js >= 5.0 * d_llf


def test_criterion_07_conservation():
    for name in ("burgers2d", "vortex"):
        setup = make_case(name)
        s = setup.solver()
        before = total_conserved(setup.grid, s.state)
        s.run(1e9, max_steps=100)
        after = total_conserved(setup.grid, s.state)
        rel = np.abs(after - before) / np.abs(before)
        print(f"[7] {name}: relative drift per variable {rel}")
        assert s.stats.steps == 100
        assert rel.max() <= 1e-12


def test_criterion_08_property_suites_standalone():
    path = Path(__file__).with_name("test_properties.py")
    t0 = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", str(path), "-q", "-p", "no:cacheprovider"],
        capture_output=True, text=True, cwd=str(path.parent.parent))
    elapsed = time.perf_counter() - t0
    print(f"[8] property suites: rc={proc.returncode}, {elapsed:.1f} s")
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert elapsed < 60.0


def test_criterion_09_point_blast():
    setup = make_case("sedov")  # 101^2, kappa 0.5, local bp
    s = setup.solver()
    s.run(setup.t_end)
    g = setup.grid
    rho = s.state.avg[g.scx, g.scy, 0]
    i, j = np.unravel_index(np.argmax(rho), rho.shape)
    r = float(np.hypot(g.cell_x()[g.scx][i], g.cell_y()[g.scy][j]))
    print(f"[9] {s.stats.steps} steps, min rho {s.stats.min_density:.3e}, "
          f"min p {s.stats.min_pressure:.3e}, max density {rho.max():.4f} "
          f"at radius {r:.4f}, theta_s_min {s.stats.theta_s_min:.3f}")
    assert s.stats.min_density >= 1e-13
    assert s.stats.min_pressure >= 1e-13
    assert 4.0 <= rho.max() <= 6.5
    assert 0.9 <= r <= 1.1


def test_criterion_10_obstacle_and_jet_smoke():
    for name in ("ffs", "jet_m80", "dmr"):
        setup = make_case(name)
        s = setup.solver()
        s.run(setup.t_end)
        print(f"[10] {name}: {s.stats.steps} steps ({s.stats.retries} retries), "
              f"min rho {s.stats.min_density:.4e}, min p {s.stats.min_pressure:.4e}, "
              f"theta_s_min {s.stats.theta_s_min:.4f}, "
              f"sensor-active faces {s.stats.sensor_faces}")
        assert s.stats.min_density >= 1e-13
        assert s.stats.min_pressure >= 1e-13
        assert 0.0 < s.stats.theta_s_min <= 1.0
        assert s.stats.sensor_faces > 0
