"""One test per acceptance criterion; each prints a single PASS/FAIL line with timing."""

import time

import pytest

from dcscatter import verify

from conftest import ACCEPTANCE_LINES

# criterion -> (suite, rows, runtime limit in seconds or None)
CRITERIA = {
    1: ("coefficients", ["point_mirror_1_3pi"], 1.0),
    2: ("coefficients", ["modulated_mirror_1_6pi"], 1.0),
    3: ("coefficients", ["line_1_128"], 5.0),
    4: ("coefficients", ["waveguide_g_below_2pi", "waveguide_g_threshold",
                         "waveguide_g_large_nu"], 10.0),
    5: ("coefficients", ["plate_1_180pi2"], 10.0),
    6: ("coefficients", ["corrugated_2q", "corrugated_10q", "corrugated_threshold"], None),
    7: ("coefficients", ["sphere_small_1_30pi", "sphere_large_1_270pi",
                         "sphere_integral_1_360"], 60.0),
    8: ("coefficients", ["disk_ratio_3_8", "disk_exponent_4", "ellipse_exponent_6"], 10.0),
    9: ("coefficients", ["line_tail_3L_16", "waveguide_tail_2w0", "kk_kernel_24_pi"], None),
    10: ("invariants", ["superradiance_sign_violations", "rotating_power_positive",
                        "rotating_power_lossless_limit"], None),
    11: ("invariants", ["friction_zero_v0_equal_T", "friction_odd_in_v",
                        "zero_T_support_violations", "atom_plate_a3_ratio"], None),
    12: ("invariants", ["cyl_wronskian", "sph_wronskian", "hankel_conjugate_modulus",
                        "hankel_recurrence", "static_unimodularity"], 5.0),
}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    suite, names, limit = CRITERIA[number]
    t0 = time.perf_counter()
    rows = verify.evaluate(suite, names=names)
    elapsed = time.perf_counter() - t0
    assert sorted(r.name for r in rows) == sorted(names)
    fast = limit is None or elapsed < limit
    ok = all(r.passed for r in rows) and fast
    detail = "; ".join(f"{r.name} {'ok' if r.passed else 'FAILED'} err={r.error:.2e}"
                       f" tol={'exact' if r.mode == 'exact' else f'{r.tol:.0e}'}" for r in rows)
    budget = f"limit {limit:g} s" if limit is not None else "no limit"
    line = (f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {detail}  "
            f"[{elapsed:.2f} s, {budget}]")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line
