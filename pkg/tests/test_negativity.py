import math
import warnings

import numpy as np
import pytest
from numpy.testing import assert_allclose

from wignerneg.negativity import (
    ConvergenceWarning,
    PhaseGrid,
    QuadratureConfig,
    Rectangle,
    delta_from_nu,
    delta_indicator,
    evaluate_grid,
    nu_from_delta,
    support_rectangle,
)
from wignerneg.states import Cat, Coherent, Fock, SqueezedDisplacedFock, SqueezedVacuum

# reference values from oracle.fock_delta_radial / oracle.cat_delta_1d
FOCK_REF = {0: 0.0, 1: 0.4261226388505335, 2: 0.728989257787134, 3: 0.9766733819917046,
            4: 1.191342482882697, 10: 2.1525231300088854}
CAT_REF = {(6, 0): 0.6365960039487005, (2, 0): 0.44757624299400917, (1, 4): 0.18253004404984788,
           (0.725, 4): 0.006462522311881842, (3, 1): 0.6001803755974776}


class TestSupportRectangle:
    def test_vacuum(self):
        assert support_rectangle(Fock(0), 6.0) == Rectangle(-7, 7, -7, 7)

    def test_cat(self):
        assert support_rectangle(Cat(3, 4), 6.0) == Rectangle(-9, 9, -2, 10)

    def test_squeezed_fock_half_width(self):
        r = support_rectangle(SqueezedDisplacedFock(3, 1.0), 6.0)
        assert_allclose(r.q_max, math.sqrt(7) * math.e + 6.0)
        assert_allclose(r.p_min, -(math.sqrt(7) * math.e + 6.0))

    def test_displaced_centre(self):
        r = support_rectangle(Coherent(2, -3), 1.0)
        assert_allclose(r, (0, 4, -5, -1))

    def test_tail_negligible(self):
        spec = SqueezedDisplacedFock(3, 1.0)
        tight = delta_indicator(spec, QuadratureConfig(padding=6.0, tolerance=1e-6))
        wide = delta_indicator(spec, QuadratureConfig(padding=10.0, tolerance=1e-6))
        assert abs(tight.delta - wide.delta) < 1e-5
        assert abs(tight.i_plus - wide.i_plus) < 1e-5


class TestEvaluateGrid:
    def test_vacuum_three_by_three(self):
        g = evaluate_grid(Fock(0), Rectangle(-7, 7, -7, 7), 3, 3)
        assert_allclose(g.values[1, 1], 1 / math.pi, rtol=1e-15)
        assert_allclose(g.values[0, 0], math.exp(-98) / math.pi, rtol=1e-12)

    def test_cat_zero_is_vacuum(self):
        rect = Rectangle(-4, 3, -2, 5)
        a = evaluate_grid(Cat(0, 0), rect, 41, 37).values
        b = evaluate_grid(Fock(0), rect, 41, 37).values
        assert np.max(np.abs(a - b)) < 1e-15

    def test_fock_one_normalized(self):
        g = evaluate_grid(Fock(1), Rectangle(-7, 7, -7, 7), 257, 257)
        assert abs(g.trapezoid() - 1.0) < 1e-6

    def test_values_match_closed_form(self):
        from wignerneg.states import wigner
        spec = SqueezedDisplacedFock(5, 0.4, 1.1, 0.5, -0.2)
        g = evaluate_grid(spec, Rectangle(-5, 6, -4, 4), 23, 19)
        qq, pp = np.meshgrid(g.q, g.p, indexing="ij")
        assert np.max(np.abs(g.values - wigner(spec, qq, pp))) < 1e-14

    def test_rejects_tiny_grid(self):
        with pytest.raises(ValueError):
            evaluate_grid(Fock(0), Rectangle(-1, 1, -1, 1), 1, 5)

    def test_phase_grid_invariants(self):
        with pytest.raises(ValueError):
            PhaseGrid(1, 0, 0, 1, 2, 2, np.zeros((2, 2)))
        with pytest.raises(ValueError):
            PhaseGrid(0, 1, 0, 1, 2, 3, np.zeros((2, 2)))


class TestDelta:
    @pytest.mark.parametrize("n", sorted(FOCK_REF))
    def test_fock_against_radial_oracle(self, n):
        res = delta_indicator(Fock(n))
        assert res.converged
        assert abs(res.delta - FOCK_REF[n]) < 1e-4
        assert abs(res.delta - FOCK_REF[n]) <= max(res.error_estimate, 1e-6) * 10

    def test_vacuum_exactly_zero(self):
        res = delta_indicator(Fock(0))
        assert res.delta == 0.0 and res.nu == 0.0

    def test_fock_one_closed_form(self):
        assert abs(delta_indicator(Fock(1)).delta - (4 * math.exp(-0.5) - 2)) < 1e-4

    @pytest.mark.parametrize("key", sorted(CAT_REF))
    def test_cat_against_1d_oracle(self, key):
        res = delta_indicator(Cat(*key))
        assert abs(res.delta - CAT_REF[key]) < 1e-5

    def test_cat_saturation(self):
        assert abs(delta_indicator(Cat(6, 0)).delta - 0.636) < 5e-3

    @pytest.mark.parametrize("spec", [Coherent(1, -2), SqueezedVacuum(1.2, 0.4, 1, 1), Cat(0, 3)])
    def test_gaussian_states_zero(self, spec):
        assert delta_indicator(spec).delta < 1e-6

    @pytest.mark.parametrize("spec", [Fock(2), Cat(1, 4), SqueezedDisplacedFock(3, 0.8, 0.5, 1, 1)])
    def test_result_invariants(self, spec):
        cfg = QuadratureConfig()
        r = delta_indicator(spec, cfg)
        assert r.delta == 2 * r.i_minus
        assert abs(r.nu - r.delta / (1 + r.delta)) < 1e-12
        assert abs(r.i_plus - r.i_minus - 1.0) < r.error_estimate + cfg.tolerance
        assert r.i_plus >= 1.0 and r.i_minus >= 0.0 and r.error_estimate >= 0.0
        assert 0 <= r.nu < 1

    def test_displacement_invariance(self):
        cfg = QuadratureConfig()
        vals = [delta_indicator(SqueezedDisplacedFock(2, 0, 0, q0, p0), cfg).delta
                for q0, p0 in ((0, 0), (3, -2), (10, 10), (-4.3, 0.7))]
        assert max(vals) - min(vals) < 2 * cfg.tolerance

    def test_squeezing_invariance(self):
        cfg = QuadratureConfig()
        vals = [delta_indicator(SqueezedDisplacedFock(3, s, math.pi / 6), cfg).delta for s in (0, 0.5, 1)]
        assert max(vals) - min(vals) < 2 * cfg.tolerance

    @pytest.mark.filterwarnings("ignore::wignerneg.negativity.ConvergenceWarning")
    def test_extrapolated_values_improve(self):
        res = delta_indicator(Fock(3), QuadratureConfig(tolerance=1e-9, max_refinements=4))
        history = [d for _, _, d in res.history]
        # history[0] is the raw base level; the rest are extrapolated values
        assert len(history) >= 3
        errs = [abs(d - FOCK_REF[3]) for d in history[1:]]
        assert errs[-1] < errs[0]

    def test_nonconvergence_flagged(self):
        with pytest.warns(ConvergenceWarning):
            res = delta_indicator(Fock(20), QuadratureConfig(base_cells_per_unit=1, max_refinements=2,
                                                             tolerance=1e-12))
        assert not res.converged
        assert res.error_estimate > 1e-12

    def test_ordering_matches_nu(self):
        ds = [delta_indicator(Fock(n)).delta for n in range(6)]
        nus = [nu_from_delta(d) for d in ds]
        assert np.argsort(ds).tolist() == np.argsort(nus).tolist() == list(range(6))

    def test_thread_count_does_not_change_result(self):
        spec = SqueezedDisplacedFock(4, 0.3, 0.2)
        a = delta_indicator(spec, QuadratureConfig(threads=1))
        b = delta_indicator(spec, QuadratureConfig(threads=3))
        assert a.delta == b.delta and a.i_plus == b.i_plus


class TestConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [dict(padding=-1), dict(base_cells_per_unit=0), dict(max_refinements=1), dict(tolerance=0),
         dict(base_cells_per_unit=2.5)],
    )
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            QuadratureConfig(**kwargs)


class TestNu:
    def test_values(self):
        assert nu_from_delta(0.0) == 0.0
        assert nu_from_delta(1.0) == 0.5
        assert_allclose(nu_from_delta(0.4261226), 0.4261226 / 1.4261226, rtol=1e-15)
        assert_allclose(nu_from_delta(0.4261226), 0.2987980135789167, rtol=1e-12)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            nu_from_delta(-1e-3)
        with pytest.raises(ValueError):
            delta_from_nu(1.0)

    def test_round_trip(self):
        for d in np.concatenate([[0.0], np.logspace(-8, 2, 200)]):
            assert abs(delta_from_nu(nu_from_delta(d)) - d) <= 1e-14 * max(1.0, d)
