import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polarnorm.forms import COMPLEX, REAL, SpaceSpec, make_form, random_form, zero_form
from polarnorm.norms import (
    NormError,
    OptimizerConfig,
    dual_align,
    grid_oracle,
    lp_norm,
    mixed_norm,
    multilinear_norm,
    poly_norm,
    project_l1_sphere,
    ratio_report,
)

CFG = OptimizerConfig(restarts=16)


def product_form(m, d, field=REAL):
    alpha = tuple([1] * m + [0] * (d - m))
    return make_form(m, d, field, [(alpha, 1.0)])


# ---------------------------------------------------------------------------
# geometry helpers


def test_lp_norm_basics():
    x = np.array([3.0, -4.0])
    assert lp_norm(x, 2.0) == pytest.approx(5.0)
    assert lp_norm(x, 1.0) == pytest.approx(7.0)
    assert lp_norm(x, math.inf) == pytest.approx(4.0)


def test_project_l1_sphere():
    y = project_l1_sphere(np.array([2.0, 0.5, -0.1]))
    assert lp_norm(y, 1.0) == pytest.approx(1.0, abs=1e-12)
    # interior points move out radially
    y = project_l1_sphere(np.array([0.2, 0.2]))
    assert y == pytest.approx(np.array([0.5, 0.5]))


def test_dual_align_real():
    phi = np.array([3.0, -4.0, 0.0])
    y = dual_align(phi, 2.0, 3)
    assert y == pytest.approx(phi / 5.0)
    y = dual_align(phi, 1.0, 3)
    assert y == pytest.approx(np.array([0.0, -1.0, 0.0]))
    y = dual_align(phi, math.inf, 3)
    assert y == pytest.approx(np.array([1.0, -1.0, 0.0]))
    # ties at p = 1 break to the lowest index; zero functional returns e1
    y = dual_align(np.array([2.0, -2.0]), 1.0, 2)
    assert y == pytest.approx(np.array([1.0, 0.0]))
    y = dual_align(np.zeros(3), 1.0, 3)
    assert y == pytest.approx(np.array([1.0, 0.0, 0.0]))


def test_dual_align_complex():
    phi = np.array([1.0 + 1.0j, 0.0])
    y = dual_align(phi, 2.0, 2)
    assert abs(np.vdot(np.conj(phi), y)) == pytest.approx(lp_norm(phi, 2.0))
    assert lp_norm(y, 2.0) == pytest.approx(1.0, abs=1e-12)


def test_dual_align_is_exact_linear_maximizer():
    rng = np.random.default_rng(0)
    for p in [1.0, 1.5, 2.0, 3.0, math.inf]:
        phi = rng.standard_normal(4)
        y = dual_align(phi, p, 4)
        assert lp_norm(y, p) == pytest.approx(1.0, abs=1e-12)
        pprime = 1.0 if math.isinf(p) else (math.inf if p == 1.0 else p / (p - 1.0))
        assert float(phi @ y) == pytest.approx(lp_norm(phi, pprime), rel=1e-12)


# ---------------------------------------------------------------------------
# poly_norm


def test_poly_norm_product_l1():
    est = poly_norm(product_form(3, 3), SpaceSpec(1.0, 3), CFG)
    assert est.value == pytest.approx(1.0 / 27.0, abs=1e-6)
    assert est.method == "ascent"


def test_poly_norm_product_l2():
    est = poly_norm(product_form(3, 3), SpaceSpec(2.0, 3), CFG)
    assert est.value == pytest.approx(3.0**-1.5, abs=1e-6)


def test_poly_norm_square_univariate():
    f = make_form(2, 1, REAL, [((2,), 1.0)])
    est = poly_norm(f, SpaceSpec(2.0, 1), CFG)
    assert est.value == pytest.approx(1.0, abs=1e-12)


def test_poly_norm_product_am_gm_formula():
    # closed form m^{-m/p} for the product polynomial on its own dimension
    for p in (1.0, 1.5, 2.0, 3.0):
        est = poly_norm(product_form(3, 3), SpaceSpec(p, 3), CFG)
        assert est.value == pytest.approx(3.0 ** (-3.0 / p), abs=1e-5)


def test_poly_norm_validation():
    f = product_form(2, 2)
    with pytest.raises(NormError):
        poly_norm(f, SpaceSpec(2.0, 3), CFG)
    with pytest.raises(NormError):
        poly_norm(f, SpaceSpec(2.0, 2, COMPLEX), CFG)


def test_poly_norm_witness_feasible():
    rng = np.random.default_rng(5)
    for p in (1.0, 2.0, 3.5, math.inf):
        f = random_form(rng, 3, 3)
        est = poly_norm(f, SpaceSpec(p, 3), CFG)
        w = est.witnesses[0]
        assert abs(lp_norm(w, p) - 1.0) <= 1e-12
        assert abs(abs(f.eval_batch(w[None])[0]) - est.value) <= 1e-10 * (1 + est.value)


def test_poly_norm_zero_form():
    est = poly_norm(zero_form(2, 2), SpaceSpec(2.0, 2), CFG)
    assert est.value == 0.0
    assert abs(lp_norm(est.witnesses[0], 2.0) - 1.0) <= 1e-12


def test_poly_norm_complex_product():
    # complex product polynomial keeps the AM-GM norm
    est = poly_norm(product_form(2, 2, COMPLEX), SpaceSpec(2.0, 2, COMPLEX), CFG)
    assert est.value == pytest.approx(0.5, abs=1e-6)


# ---------------------------------------------------------------------------
# multilinear_norm


def test_multilinear_product_l1():
    est = multilinear_norm(product_form(3, 3), SpaceSpec(1.0, 3), CFG)
    assert est.value == pytest.approx(1.0 / 6.0, abs=1e-6)
    assert est.method == "alternating"


def test_multilinear_at_least_poly():
    rng = np.random.default_rng(11)
    for p in (1.0, 2.0, math.inf):
        f = random_form(rng, 3, 3)
        sp = SpaceSpec(p, 3)
        assert multilinear_norm(f, sp, CFG).value >= poly_norm(f, sp, CFG).value - 1e-9


def test_multilinear_hilbert_equality():
    rng = np.random.default_rng(13)
    for m, d in [(3, 3), (3, 3), (4, 2), (4, 3), (2, 3)]:
        f = random_form(rng, m, d)
        sp = SpaceSpec(2.0, d)
        ratio = multilinear_norm(f, sp, CFG).value / poly_norm(f, sp, CFG).value
        assert 0.98 <= ratio <= 1.02


def test_multilinear_witnesses():
    f = product_form(3, 3)
    est = multilinear_norm(f, SpaceSpec(1.0, 3), CFG)
    assert len(est.witnesses) == 3
    for w in est.witnesses:
        assert abs(lp_norm(w, 1.0) - 1.0) <= 1e-12


# ---------------------------------------------------------------------------
# mixed_norm


def test_mixed_single_block_is_poly():
    rng = np.random.default_rng(17)
    f = random_form(rng, 3, 2)
    sp = SpaceSpec(2.0, 2)
    a = mixed_norm(f, sp, (3,), CFG)
    b = poly_norm(f, sp, CFG)
    assert a.value == pytest.approx(b.value, rel=1e-12)
    assert a.method == "ascent"


def test_mixed_all_ones_matches_multilinear():
    rng = np.random.default_rng(19)
    f = random_form(rng, 3, 3)
    sp = SpaceSpec(2.0, 3)
    a = mixed_norm(f, sp, (1, 1, 1), CFG)
    b = multilinear_norm(f, sp, CFG)
    assert a.value == pytest.approx(b.value, rel=1e-10)


def test_mixed_product_21_l1():
    est = mixed_norm(product_form(3, 3), SpaceSpec(1.0, 3), (2, 1), CFG)
    assert est.value == pytest.approx(1.0 / 12.0, abs=1e-6)


def test_mixed_pattern_mismatch():
    f = product_form(3, 3)
    with pytest.raises(NormError):
        mixed_norm(f, SpaceSpec(2.0, 3), (2, 2), CFG)


def test_mixed_witnesses_feasible():
    rng = np.random.default_rng(23)
    f = random_form(rng, 4, 3)
    sp = SpaceSpec(1.5, 3)
    est = mixed_norm(f, sp, (2, 2), CFG)
    for w in est.witnesses:
        assert abs(lp_norm(w, 1.5) - 1.0) <= 1e-12


# ---------------------------------------------------------------------------
# grid oracle


def test_grid_oracle_product_l2():
    est = grid_oracle(product_form(2, 2), SpaceSpec(2.0, 2), resolution=3600)
    assert est.value == pytest.approx(0.5, abs=1e-3)
    assert est.method == "grid"


def test_grid_oracle_sup_norm_vertices():
    coeffs = [
        ((4, 0, 0, 0), 1.0), ((0, 4, 0, 0), 1.0), ((2, 2, 0, 0), -2.0),
        ((0, 0, 4, 0), -1.0), ((0, 0, 0, 4), -1.0), ((0, 0, 2, 2), 2.0),
    ]
    f = make_form(4, 4, REAL, coeffs)
    est = grid_oracle(f, SpaceSpec(math.inf, 4), resolution=64)
    assert est.value == pytest.approx(1.0, abs=1e-12)


def test_grid_oracle_refinement_monotone():
    rng = np.random.default_rng(29)
    f = random_form(rng, 3, 3)
    for p in (1.0, 2.0):
        sp = SpaceSpec(p, 3)
        lo = grid_oracle(f, sp, resolution=64).value
        hi = grid_oracle(f, sp, resolution=128).value
        assert hi >= lo


def test_grid_oracle_resolution_floor():
    with pytest.raises(NormError):
        grid_oracle(product_form(2, 2), SpaceSpec(2.0, 2), resolution=4)


def test_grid_oracle_dominated_by_ascent():
    rng = np.random.default_rng(31)
    for p in (1.0, 2.0, math.inf):
        f = random_form(rng, 3, 3)
        sp = SpaceSpec(p, 3)
        oracle = grid_oracle(f, sp, resolution=400)
        ascent = poly_norm(f, sp, CFG)
        assert ascent.value >= oracle.value - 1e-6


def test_grid_oracle_pattern_mode():
    f = product_form(3, 3)
    est = grid_oracle(f, SpaceSpec(1.0, 3), (2, 1), resolution=32)
    assert est.value == pytest.approx(1.0 / 12.0, abs=1e-9)


# ---------------------------------------------------------------------------
# determinism and structure


def test_determinism_same_seed():
    rng = np.random.default_rng(37)
    f = random_form(rng, 3, 3)
    sp = SpaceSpec(1.5, 3)
    a = poly_norm(f, sp, CFG)
    b = poly_norm(f, sp, CFG)
    assert a.value == b.value
    assert (a.witnesses[0] == b.witnesses[0]).all()


def test_serial_vs_parallel_identical():
    rng = np.random.default_rng(41)
    f = random_form(rng, 3, 3)
    sp = SpaceSpec(2.0, 3)
    serial = multilinear_norm(f, sp, OptimizerConfig(restarts=12, parallel=False))
    parallel = multilinear_norm(f, sp, OptimizerConfig(restarts=12, parallel=True))
    assert serial.value == parallel.value
    for a, b in zip(serial.witnesses, parallel.witnesses):
        assert (a == b).all()


def test_restart_monotonicity():
    rng = np.random.default_rng(43)
    f = random_form(rng, 4, 3)
    sp = SpaceSpec(3.0, 3)
    small = poly_norm(f, sp, OptimizerConfig(restarts=4))
    large = poly_norm(f, sp, OptimizerConfig(restarts=8))
    assert large.value >= small.value


def test_homogeneity_power_of_two_exact():
    rng = np.random.default_rng(47)
    f = random_form(rng, 3, 3)
    sp = SpaceSpec(2.0, 3)
    base = poly_norm(f, sp, CFG)
    scaled = poly_norm(f.scaled(2.0), sp, CFG)
    assert scaled.value == 2.0 * base.value
    assert (scaled.witnesses[0] == base.witnesses[0]).all()


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000), st.floats(0.1, 4.0))
def test_homogeneity_general_scale(seed, c):
    rng = np.random.default_rng(seed)
    f = random_form(rng, 2, 2)
    sp = SpaceSpec(2.0, 2)
    cfg = OptimizerConfig(restarts=4)
    base = poly_norm(f, sp, cfg)
    scaled = poly_norm(f.scaled(c), sp, cfg)
    assert scaled.value == pytest.approx(c * base.value, rel=1e-9)


# ---------------------------------------------------------------------------
# ratio_report


def test_ratio_report_product_21():
    rep = ratio_report(product_form(3, 3), SpaceSpec(1.0, 3), (2, 1), CFG)
    assert rep.ratio == pytest.approx(2.25, abs=1e-3)
    assert rep.passed
    names = {c.name for c in rep.checks}
    assert "banach_mazur" in names


def test_ratio_report_hilbert():
    rng = np.random.default_rng(53)
    f = random_form(rng, 3, 3)
    rep = ratio_report(f, SpaceSpec(2.0, 3), (1, 1, 1), CFG, slack=2e-2)
    assert rep.ratio <= 1.0 + 2e-2


def test_ratio_report_zero_form_raises():
    with pytest.raises(NormError):
        ratio_report(zero_form(2, 2), SpaceSpec(2.0, 2), (1, 1), CFG)
