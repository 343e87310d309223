"""Acceptance checks, one test per criterion.

Each test prints a ``criterion N: PASS/FAIL`` line; the lines are also
collected into a summary section at the end of the pytest run.
"""

from fractions import Fraction as F
from itertools import product
import io
import time

import numpy as np
import pytest

from limsup_annuli.cli import main
from limsup_annuli.cover import cover_sweep, critical_exponent, write_cover_csv
from limsup_annuli.formulas import ExponentProfile, dim_isotropic, dim_weighted
from limsup_annuli.geometry import cube_corner_certificate
from limsup_annuli.mtp import (
    classify_hf_series,
    consistency_sweep,
    oracle_sweep,
    random_profile,
    sweep_csv_text,
    trial_seeds,
)
from limsup_annuli.verify import decomposition_check, default_point, sandwich_check

GRID_VALUES = (F(1, 2), F(1), F(3, 2), F(2), F(3), F(5))


def isotropic_grid():
    for n in (1, 2, 3, 4):
        for tp, tf in product(GRID_VALUES, repeat=2):
            if tp >= F(1, n):
                yield n, tp, tf


def test_criterion_1_reduction(record):
    cases = list(isotropic_grid())
    bad = [(n, tp, tf) for n, tp, tf in cases
           if dim_weighted(ExponentProfile.uniform(n, tp, tf)).value != dim_isotropic(n, tp, tf).value]
    assert record(1, not bad, f"{len(cases)} isotropic cases, {len(bad)} mismatches (exact)")


def test_criterion_2_boundary(record):
    bad = []
    for n in range(2, 7):
        for tf in (F(1, 2), F(1), F(10), F(1000)):
            if dim_isotropic(n, F(2, n - 1), tf).value != n - 1:
                bad.append((n, tf))
    assert record(2, not bad, f"20 cases, {len(bad)} mismatches (exact)")


def test_criterion_3_mtp_consistency(record):
    start = time.perf_counter()
    rows = consistency_sweep(200, seed=7, dims=(2, 3, 4))
    elapsed = time.perf_counter() - start
    worst = max(float(r.abs_diff) for r in rows)
    ok = len(rows) == 200 and worst <= 1e-9 and elapsed < 10
    assert record(3, ok, f"200 profiles, max |diff| = {worst:.3e}, {elapsed:.2f} s")


def test_criterion_4_oracle(record):
    rows = oracle_sweep(100, seed=11)
    worst = max(float(abs(bound - oracle)) for _, bound, oracle in rows)
    assert record(4, len(rows) == 100 and worst <= 1e-9,
                  f"100 instances, max |diff| = {worst:.3e}")


SAMPLES = 10**5


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("q", [2, 3, 5])
def test_criterion_5_geometry_monte_carlo(n, q, record):
    seed = 1000 * n + q
    p = default_point(n, q)
    results = []
    for prof in (ExponentProfile.uniform(n, 1, 1),
                 ExponentProfile(n, tuple(range(1, n + 1)), tuple(range(n, 0, -1)))):
        dec = decomposition_check(prof, p, SAMPLES, seed)
        sand = sandwich_check(prof, p, SAMPLES, seed + 1)
        results.append((dec, sand))
    ok = all(d.clean and s.clean and d.details["area_union"] == d.details["area_annulus"]
             for d, s in results)
    viol = sum(d.violations + s.violations for d, s in results)
    assert record(5, ok, f"n={n} q={q}: decomposition + sandwich, {SAMPLES} samples each, "
                         f"{viol} violations, areas equal")


def test_criterion_5_cube(record):
    passed = all(cube_corner_certificate(n, rho).passed and
                 cube_corner_certificate(n, rho).tight_as_designed()
                 for n in (2, 3) for rho in (1, 2, 3))
    uncorrected = cube_corner_certificate(2, 2, "uncorrected")
    ok = passed and not uncorrected.inf_ok
    assert record(5, ok, "corrected cube passes all corners for n in {2,3}, rho in {1,2,3}; "
                         "uncorrected constants fail the max-norm check (expected)")


def test_criterion_6_cover(record):
    prof = ExponentProfile(2, (1, 1), (1, 1))
    start = time.perf_counter()
    reports = cover_sweep(prof, [2**e for e in range(4, 11)])
    elapsed = time.perf_counter() - start
    ratios = [F(r.measured) / F(r.predicted) for r in reports]
    ok = all(F(1, 8) <= x <= 8 for x in ratios) and elapsed < 30 and len(reports) == 28
    assert record(6, ok, f"{len(reports)} (q, j, k) cases, ratio in "
                         f"[{float(min(ratios)):.3f}, {float(max(ratios)):.3f}], {elapsed:.2f} s")


def test_criterion_7_critical_exponent(record):
    profiles = [ExponentProfile.uniform(n, tp, tf) for n, tp, tf in isotropic_grid()]
    for ts in trial_seeds(23, 50):
        rng = np.random.default_rng(ts)
        profiles.append(random_profile(rng, int(rng.integers(1, 5))))
    bad = [p for p in profiles if critical_exponent(p)[0] != dim_weighted(p).value]
    assert record(7, not bad, f"{len(profiles)} profiles, {len(bad)} mismatches (exact)")


def test_criterion_8_series(record):
    bad = 0
    for ts in trial_seeds(31, 50):
        rng = np.random.default_rng(ts)
        n = int(rng.integers(1, 6))
        tp = F(int(rng.integers(1, 101)), int(rng.integers(1, 21)))
        s = F(n + 1) / (1 + tp)
        bad += classify_hf_series(n, tp, s) != "divergent"
        bad += classify_hf_series(n, tp, s + F(1, 10**6)) != "convergent"
    assert record(8, bad == 0, f"50 cases, {bad} misclassified")


def test_criterion_9_determinism(tmp_path, record):
    a = sweep_csv_text(consistency_sweep(50, seed=99))
    b = sweep_csv_text(consistency_sweep(50, seed=99))
    buf1, buf2 = io.StringIO(), io.StringIO()
    prof = ExponentProfile(2, (1, 1), (1, 1))
    write_cover_csv(cover_sweep(prof, [16, 64]), buf1)
    write_cover_csv(cover_sweep(prof, [16, 64]), buf2)
    files = []
    for name in ("x.csv", "y.csv"):
        path = tmp_path / name
        main(["sweep", "--trials", "30", "--seed", "5", "--out", str(path)])
        files.append(path.read_bytes())
    ok = a == b and buf1.getvalue() == buf2.getvalue() and files[0] == files[1]
    assert record(9, ok, "sweep CSV (library and command line) and cover CSV byte-identical")
