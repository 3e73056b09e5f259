import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from wignerneg.negativity import delta_indicator
from wignerneg.oracle import (
    ResolutionError,
    cat_delta_1d,
    cat_delta_upper_bound,
    default_x_cutoff,
    fock_delta_radial,
    rotated_sdf_wavefunction,
    wigner_from_wavefunction,
    wigner_transform,
)
from wignerneg.states import (
    Cat,
    Coherent,
    Fock,
    SqueezedDisplacedFock,
    SqueezedVacuum,
    UnsupportedStateError,
    cat_normalization,
    wigner,
)


def test_vacuum_origin():
    assert_allclose(wigner_from_wavefunction(Fock(0), 0.0, 0.0), 1 / math.pi, atol=1e-8)


def test_fock3_point():
    from wignerneg.states import wigner_fock
    assert abs(wigner_from_wavefunction(Fock(3), 1.2, -0.5) - wigner_fock(3, 1.2, -0.5)) < 1e-8
    assert abs(wigner_from_wavefunction(Fock(3), 1.0, 1.0) - wigner_fock(3, 1.0, 1.0)) < 1e-8


def test_cat_point():
    from wignerneg.states import wigner_cat
    assert abs(wigner_from_wavefunction(Cat(2, 4), 0.0, 4.0) - wigner_cat(2, 4, 0.0, 4.0)) < 1e-8


ORACLE_STATES = (
    [Fock(n) for n in (0, 1, 2, 3, 5)]
    + [Cat(q0, p0) for q0, p0 in ((0, 0), (1, 4), (3, 0), (6, 2))]
    + [SqueezedVacuum(s) for s in (0.0, 0.5, 1.0)]
    + [Coherent(1.5, -0.5), SqueezedDisplacedFock(2, 0.4, 0.0, 1, 1)]
)


@pytest.mark.parametrize("spec", ORACLE_STATES, ids=str)
def test_grid_agreement_and_realness(spec):
    from wignerneg.negativity import support_rectangle
    rect = support_rectangle(spec, 1.0)
    qs = np.linspace(rect.q_min, rect.q_max, 33)
    ps = np.linspace(rect.p_min, rect.p_max, 33)
    psi_spec = spec
    from wignerneg.states import wavefunction
    worst = worst_imag = 0.0
    cut = default_x_cutoff(spec)
    for q in qs:
        closed = wigner(spec, q, ps)
        for p, c in zip(ps, closed):
            v = wigner_transform(lambda y: wavefunction(psi_spec, y), q, p, cut)
            worst = max(worst, abs(v.real - c))
            worst_imag = max(worst_imag, abs(v.imag))
    assert worst < 1e-6
    assert worst_imag < 1e-9


def test_rotated_squeezed_fock_matches_closed_form():
    spec = SqueezedDisplacedFock(3, 0.5, math.pi / 6)
    psi = rotated_sdf_wavefunction(spec)
    v = wigner_transform(psi, 0.7, -0.3, 30.0)
    assert abs(v.real - wigner(spec, 0.7, -0.3)) < 1e-6
    assert abs(v.imag) < 1e-9


def test_rotated_path_detects_wrong_angle():
    # guards against a sign convention that happens to be symmetric at the test point
    spec = SqueezedDisplacedFock(3, 0.5, math.pi / 6)
    mirrored = SqueezedDisplacedFock(3, 0.5, -math.pi / 6)
    v = wigner_transform(rotated_sdf_wavefunction(spec), 0.7, -0.3, 30.0).real
    assert abs(v - wigner(mirrored, 0.7, -0.3)) > 1e-3


def test_rotated_displaced():
    spec = SqueezedDisplacedFock(2, 0.8, 1.0, 1.0, -2.0)
    psi = rotated_sdf_wavefunction(spec)
    for q, p in ((1.7, -2.3), (0.0, 0.0), (2.5, -1.0)):
        assert abs(wigner_transform(psi, q, p, 40.0).real - wigner(spec, q, p)) < 1e-6


def test_unsupported_state():
    with pytest.raises(UnsupportedStateError):
        wigner_from_wavefunction(SqueezedDisplacedFock(1, 0.5, 0.3), 0.0, 0.0)


def test_resolution_error(monkeypatch):
    import wignerneg.oracle as oracle
    monkeypatch.setattr(oracle, "wigner_transform", lambda *a, **k: 0.1 + 1e-3j)
    with pytest.raises(ResolutionError):
        oracle.wigner_from_wavefunction(Cat(2, 4), 0.3, 4.1)


def test_nx_minimum():
    with pytest.raises(ValueError):
        wigner_transform(lambda y: np.exp(-y * y), 0, 0, 5.0, nx=10)


class TestUpperBound:
    def test_zero_separation(self):
        for p0 in (0.0, 1.0, 4.0, -7.5):
            assert cat_delta_upper_bound(0.0, p0) == 0.0

    def test_saturated_cat(self):
        ub = cat_delta_upper_bound(6.0, 0.0)
        n2 = cat_normalization(6.0, 0.0).N ** 2
        assert ub >= delta_indicator(Cat(6, 0)).delta
        assert ub <= 2 * n2 - 1 + 1e-9

    def test_gap_at_q0_2(self):
        ub = cat_delta_upper_bound(2.0, 0.0)
        delta = delta_indicator(Cat(2, 0)).delta
        assert ub >= delta
        # measured gap, from the upper bound and two independent delta routes
        assert abs((ub - delta) - 0.15960699) < 2e-6
        assert abs((ub - cat_delta_1d(2.0, 0.0)) - 0.15960699) < 1e-7

    def test_matches_direct_quadrature(self):
        from scipy import integrate
        q0, p0 = 1.3, 0.7
        n2 = cat_normalization(q0, p0).N ** 2
        f = lambda p: abs(math.cos(2 * p * q0)) * math.exp(-((p - p0) ** 2))
        total, _ = integrate.quad(f, p0 - 12, p0 + 12, limit=500, epsabs=1e-13)
        assert abs(cat_delta_upper_bound(q0, p0) - (n2 * (1 + total / math.sqrt(math.pi)) - 1)) < 1e-9

    def test_negative_q0(self):
        with pytest.raises(ValueError):
            cat_delta_upper_bound(-1.0, 0.0)


class TestReferenceOracles:
    def test_fock_reference_values(self):
        assert abs(fock_delta_radial(1) - (4 * math.exp(-0.5) - 2)) < 1e-12
        two = 4 * ((2 + math.sqrt(2)) * math.exp(-1 - 1 / math.sqrt(2))
                   + (-2 + math.sqrt(2)) * math.exp(-1 + 1 / math.sqrt(2)))
        assert abs(fock_delta_radial(2) - two) < 1e-12
        assert abs(fock_delta_radial(2) - 0.72899) < 1e-5
        assert abs(fock_delta_radial(3) - 0.97667) < 1e-5
        assert abs(fock_delta_radial(4) - 1.19138) < 5e-5

    def test_cat_limit_is_two_over_pi(self):
        # far-separated fringes average the negative part of the cosine: 2/pi
        assert abs(cat_delta_1d(8.0, 0.0) - 2 / math.pi) < 1e-6

    def test_cat_zero(self):
        assert cat_delta_1d(0.0, 3.0) == 0.0
