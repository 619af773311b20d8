import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lhtl.errors import DomainError
from lhtl.thermal import (
    SERIES_SWITCHOVER,
    BogoliubovParams,
    ThermalFockSpec,
    ThetaConvention,
    energy_ratio,
    thermal_photon_number,
    theta_from_n0,
)
from lhtl.units import NATURAL, SI

mpmath.mp.dps = 50


def bose_mp(x):
    return float(1 / (mpmath.exp(mpmath.mpf(x)) - 1))


class TestEnergyRatio:
    def test_high_temperature(self):
        assert energy_ratio(1.0, 1e30, SI) < 1e-20

    def test_natural(self):
        assert energy_ratio(2.0, 1.0, NATURAL) == 2.0

    def test_si_two_ghz(self):
        # hbar*2*pi*2e9/(k_B*100) at 50 digits with the CODATA literals
        assert energy_ratio(2 * math.pi * 2e9, 100.0, SI) == pytest.approx(
            9.5984861408512658e-4, rel=1e-7)

    def test_zero_temperature(self):
        assert energy_ratio(1.0, 0.0, SI) == math.inf

    @pytest.mark.parametrize("omega", [0.0, -1.0])
    def test_bad_omega(self, omega):
        with pytest.raises(DomainError):
            energy_ratio(omega, 1.0, SI)

    def test_bad_temperature(self):
        with pytest.raises(DomainError):
            energy_ratio(1.0, -1.0, SI)


class TestThermalPhotonNumber:
    def test_zero_temperature(self):
        assert thermal_photon_number(math.inf) == 0.0

    def test_ln2(self):
        assert thermal_photon_number(math.log(2)) == pytest.approx(1.0, rel=1e-15)

    def test_microwave_value(self):
        # 1/(exp(9.5969e-4) - 1) at 50 digits
        assert thermal_photon_number(9.5969e-4) == pytest.approx(1041.5032268236689, abs=0.01)

    @pytest.mark.parametrize("x", [1e-12, 1e-9, 5e-8, 1e-4, 0.3, 1.0, 7.0, 40.0, 700.0, 1e4])
    def test_against_high_precision(self, x):
        assert thermal_photon_number(x) == pytest.approx(bose_mp(x), rel=1e-14)

    def test_branches_agree_at_switchover(self):
        x = SERIES_SWITCHOVER
        series = 1 / x - 0.5 + x / 12
        direct = 1 / math.expm1(x)
        assert abs(series - direct) / direct <= 1e-12
        assert thermal_photon_number(x) == pytest.approx(bose_mp(x), rel=1e-15)

    @pytest.mark.parametrize("x", [0.0, -1.0, math.nan])
    def test_rejects(self, x):
        with pytest.raises(DomainError):
            thermal_photon_number(x)

    def test_strictly_decreasing_in_x(self):
        xs = np.geomspace(1e-10, 30, 400)
        n0 = [thermal_photon_number(x) for x in xs]
        assert all(a > b for a, b in zip(n0, n0[1:]))

    def test_strictly_increasing_in_temperature(self):
        temps = np.linspace(0.1, 400, 300)
        n0 = [thermal_photon_number(energy_ratio(2 * math.pi * 2e9, t, SI)) for t in temps]
        assert all(a < b for a, b in zip(n0, n0[1:]))


class TestTheta:
    @pytest.mark.parametrize("convention", list(ThetaConvention))
    def test_zero(self, convention):
        b = theta_from_n0(0.0, convention)
        assert (b.theta, b.mu, b.tau) == (0.0, 1.0, 0.0)

    def test_paper(self):
        assert theta_from_n0(3.0, "PAPER").theta == pytest.approx(1.8184464592320668, abs=1e-5)

    def test_standard(self):
        assert theta_from_n0(3.0, "STANDARD").theta == pytest.approx(1.3169578969248167, abs=1e-5)

    def test_negative(self):
        with pytest.raises(DomainError):
            theta_from_n0(-0.1)

    @settings(max_examples=200, deadline=None)
    @given(n0=st.floats(min_value=1e-6, max_value=1e6),
           convention=st.sampled_from(list(ThetaConvention)))
    def test_roundtrip_and_identity(self, n0, convention):
        b = theta_from_n0(n0, convention)
        assert b.n0 == pytest.approx(n0, rel=1e-12)
        assert (b.mu**2 - b.tau**2) == pytest.approx(1.0, rel=1e-12 * max(1.0, b.mu**2))
        assert b.theta >= 0 and b.mu >= 1 and b.tau >= 0

    def test_identity_moderate_theta(self):
        for theta in np.linspace(0, 5, 51):
            b = BogoliubovParams.from_theta(theta)
            assert abs(b.mu**2 - b.tau**2 - 1.0) <= 1e-12 * b.mu**2


class TestThermalFockSpec:
    def test_tilde_defaults_to_n(self):
        assert ThermalFockSpec(4, 1.0, 1.0).n_tilde == 4
        assert ThermalFockSpec(4, 1.0, 1.0, n_tilde=0).n_tilde == 0

    @pytest.mark.parametrize("kwargs", [
        dict(n=-1, temperature=1.0, omega=1.0),
        dict(n=1.5, temperature=1.0, omega=1.0),
        dict(n=1, temperature=-1.0, omega=1.0),
        dict(n=1, temperature=1.0, omega=0.0),
        dict(n=1, temperature=1.0, omega=1.0, n_tilde=-2),
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(DomainError):
            ThermalFockSpec(**kwargs)
