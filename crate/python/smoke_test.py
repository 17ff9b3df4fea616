#!/usr/bin/env python3
"""Build the bskyrme extension module and drive the main workflow through it.

Run from anywhere:  python3 python/smoke_test.py
"""
import math
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def build_module(workdir: Path) -> None:
    subprocess.run(["cargo", "build", "-p", "bskyrme-py"], cwd=ROOT, check=True)
    built = ROOT / "target" / "debug" / "libbskyrme.so"
    if not built.exists():  # e.g. macOS
        built = ROOT / "target" / "debug" / "libbskyrme.dylib"
    shutil.copy(built, workdir / "bskyrme.so")
    sys.path.insert(0, str(workdir))


def main() -> None:
    workdir = Path(tempfile.mkdtemp(prefix="bskyrme-smoke-"))
    build_module(workdir)
    import bskyrme

    model = bskyrme.Model(1.0, 10.0, 1.0, 1)
    assert model.n == 1 and model.lambda2 == 10.0

    # pointwise identities on random jets: rounding level or bust
    worst = bskyrme.check_tautology(model, "power:2", seed=3, count=500)
    assert worst < 1e-12, f"identity residual {worst:.3e}"

    # radial solve reaches vacuum and saturates the exact bound
    prof = bskyrme.solve_radial(model, "power:2")
    assert prof.termination == "vacuum-reached", prof.termination
    energy, bound, exact = bskyrme.energy_of_profile(prof, model, "power:2")
    assert abs(energy - 2.0 * math.pi) < 1e-6, energy
    assert abs(energy - bound) / energy < 1e-8
    assert abs(exact - 2.0 * math.pi) < 1e-12
    rel_2v, abs_inv = bskyrme.onshell_gaps(prof, model, "power:2")
    assert rel_2v < 1e-10 and abs_inv < 1e-8

    # profiles survive a file round trip
    saved = workdir / "profile.csv"
    prof.save(str(saved))
    again = bskyrme.Profile.load(str(saved))
    assert len(again) == len(prof) and again.termination == prof.termination

    # lifting to the plane keeps the topology and small residuals
    state = bskyrme.lift(prof, model, grid_size=96, half_extent=6.5)
    q = bskyrme.degree(state)
    assert abs(q - 1.0) < 1e-2, q
    sup, _ = bskyrme.bogomolny_residual(state, model, "power:2")
    assert sup < 0.05, sup
    e_region, i_region, _, gap = bskyrme.bound_report(state, model, "power:2")
    assert abs(e_region + i_region) / e_region < 1e-3
    assert gap < 1e-8

    # gradient flow from a stretched start goes downhill
    start = bskyrme.lift(prof.stretched(1.25), model, grid_size=48)
    e_start = bskyrme.total_energy(start, model, "power:2")
    relaxed, e_final, iters, _ = bskyrme.flow(start, model, "power:2", max_iters=80)
    assert e_final < e_start, (e_start, e_final)
    assert relaxed.nx == 48 and iters > 0

    # bad input surfaces as an exception, not a crash
    try:
        bskyrme.Model(-1.0, 1.0, 1.0, 1)
    except ValueError:
        pass
    else:
        raise AssertionError("negative coupling accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
