#!/usr/bin/env python3
"""Smoke test for the msar Python extension module.

Builds nothing itself: run `cargo build -p msar-py` (or `--release`) first,
then `python3 python/smoke_test.py`. The script locates the compiled cdylib
in target/, links it into a temp directory under the importable name, and
exercises the bound API end to end.
"""

import math
import os
import shutil
import sys
import tempfile

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def locate_library():
    candidates = [
        os.path.join(REPO_ROOT, "target", profile, name)
        for profile in ("release", "debug")
        for name in ("libmsar.so", "libmsar.dylib", "msar.dll")
    ]
    for path in candidates:
        if os.path.exists(path):
            return path
    sys.exit(
        "msar extension not found; build it first:\n"
        "    cargo build -p msar-py --release"
    )


def import_msar():
    lib = locate_library()
    stage = tempfile.mkdtemp(prefix="msar-py-")
    suffix = ".pyd" if lib.endswith(".dll") else ".so"
    shutil.copy2(lib, os.path.join(stage, "msar" + suffix))
    sys.path.insert(0, stage)
    import msar  # noqa: E402

    return msar


def approx(a, b, tol):
    return abs(a - b) <= tol


def main():
    msar = import_msar()
    checks = 0

    def ok(name, condition):
        nonlocal checks
        checks += 1
        if not condition:
            sys.exit(f"FAIL: {name}")
        print(f"ok {checks}: {name}")

    camera = msar.CameraSpec(25.0, 20.0, 640, 512, framerate_hz=50.0)
    target = msar.TargetModel()

    ok("johnson midpoint is one half", msar.johnson_probability(0.75, 0.75) == 0.5)
    ok(
        "gsd at 100 m matches the formula",
        approx(msar.gsd(camera, 100.0), 0.06817692654680095, 1e-12),
    )
    ok(
        "detection probability at 400 m",
        approx(msar.pod_at_altitude(camera, target, 400.0), 0.671232161673832, 1e-9),
    )
    fs_h, fs_v = msar.footprint(camera, 400.0)
    ok("footprint at 400 m", approx(fs_h, 174.533, 0.01) and approx(fs_v, 139.626, 0.01))
    ok(
        "coverage speed bound at 400 m and 50 Hz",
        approx(msar.max_coverage_speed(camera, 400.0), fs_v * 50.0, 1e-9),
    )

    curve = msar.pod_curve(camera, target, 10.0, 1000.0, 50)
    ok("pod curve has 50 rows", len(curve) == 50)
    ok(
        "pod curve ordered detection >= recognition >= identification",
        all(r[1] >= r[2] >= r[3] for r in curve),
    )

    best = msar.optimal_altitude(camera, target, 1200.0, 1200.0)
    ok("optimal altitude near 569 m for the 1200 m box", approx(best["altitude_m"], 569.4, 1.0))
    ok("optimal POS consistent", approx(best["pos"], best["poc"] * best["pod"], 1e-12))

    drift = msar.simulate_drift(seed=42)
    ok(
        "reference drift grows the square to ~1250 m",
        1080.0 <= drift["width_m"] <= 1320.0 and 1080.0 <= drift["height_m"] <= 1320.0,
    )
    drift2 = msar.simulate_drift(seed=42)
    ok("drift is seed-deterministic", drift == drift2)
    ok(
        "leeway advection moves the centroid east",
        approx(drift["centroid_m"][0], 0.7 * 1200.0, 25.0),
    )

    config = os.path.join(REPO_ROOT, "configs", "reference.toml")
    result = msar.evaluate_config(config, runs=30)
    ok("objective within [0, tf - t0]", 0.0 <= result["objective_j_s"] <= result["tf_s"])
    ok("constraints all pass", result["constraints"]["all_pass"])
    series = result["series"]
    ok(
        "saved series is monotone",
        all(
            a <= b
            for a, b in zip(series["expected_saved"], series["expected_saved"][1:])
        ),
    )
    result2 = msar.evaluate_config(config, runs=30)
    ok(
        "evaluation is reproducible",
        result["objective_j_s"] == result2["objective_j_s"],
    )
    ok(
        "pos curve rows multiply out",
        all(
            math.isclose(r[3], r[1] * r[2], rel_tol=0, abs_tol=1e-12)
            for r in msar.pos_curve(camera, target, 1200.0, 1200.0, samples=64)
        ),
    )

    print(f"\nsmoke test passed ({checks} checks)")


if __name__ == "__main__":
    main()
