import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lhtl.classical import LineParams, WaveSolution, cell_length, line_quantities, wave_residual
from lhtl.errors import DomainError


class TestLineQuantities:
    def test_unit_case(self):
        q = line_quantities(LineParams(1.0, 1.0), 1.0)
        assert (q.beta, q.z_char, q.v_phase, q.v_group, q.mu_eff, q.eps_eff) == (
            -1.0, 1.0, -1.0, 1.0, -1.0, -1.0)
        assert q.gamma == -1j

    def test_omega_two(self):
        q = line_quantities(LineParams(1.0, 1.0), 2.0)
        assert q.beta == -0.5
        assert q.v_phase == -4.0 and q.v_group == 4.0
        assert q.mu_eff == -0.25 and q.eps_eff == -0.25

    @pytest.mark.parametrize("omega", [1e3, 2e9, 7.5e11])
    def test_fifty_ohm(self, omega):
        q = line_quantities(LineParams(1e-12, 2.5e-9), omega)
        assert q.z_char == pytest.approx(50.0, rel=1e-14)

    def test_series_and_shunt(self):
        q = line_quantities(LineParams(2.0, 3.0), 5.0)
        assert q.z_series == pytest.approx(1 / (1j * 5.0 * 2.0))
        assert q.y_shunt == pytest.approx(1 / (1j * 5.0 * 3.0))

    @pytest.mark.parametrize("omega", [0.0, -1.0, math.nan, math.inf])
    def test_bad_omega(self, omega):
        with pytest.raises(DomainError):
            line_quantities(LineParams(1.0, 1.0), omega)

    @pytest.mark.parametrize("c, l", [(0, 1), (1, -1), (math.nan, 1), (1, math.inf)])
    def test_bad_params(self, c, l):
        with pytest.raises(DomainError):
            LineParams(c, l)

    def test_per_length_bookkeeping(self):
        p = LineParams.from_per_length(2e-10, 5e-7, 1e-3)
        assert p.c_cell == pytest.approx(2e-13)
        assert p.l_cell == pytest.approx(5e-10)
        assert p.delta_z == 1e-3


positive = st.floats(min_value=1e-3, max_value=1e3)


@settings(max_examples=200, deadline=None)
@given(c=positive, l=positive, omega=positive)
def test_left_handed_invariants(c, l, omega):
    q = line_quantities(LineParams(c, l), omega)
    assert q.beta < 0 and q.v_phase < 0 and q.v_group > 0
    assert q.eps_eff < 0 and q.mu_eff < 0
    assert q.gamma == complex(0.0, q.beta)
    assert q.v_phase == -q.v_group
    assert q.refractive_index == pytest.approx(q.beta / omega, rel=1e-13)


@settings(max_examples=100, deadline=None)
@given(c=positive, l=positive, omega=positive, k=st.floats(min_value=0.01, max_value=100))
def test_scaling(c, l, omega, k):
    base = line_quantities(LineParams(c, l), omega)
    scaled = line_quantities(LineParams(k * c, k * l), omega)
    assert scaled.z_char == pytest.approx(base.z_char, rel=1e-13)
    assert scaled.beta == pytest.approx(base.beta / k, rel=1e-13)


class TestCellLength:
    def test_values(self):
        p = LineParams(1.0, 1.0)
        assert cell_length(1, 1.0, p) == pytest.approx(2 * math.pi)
        assert cell_length(3, 1.0, p) == pytest.approx(6 * math.pi)
        assert cell_length(1, 2.0, p) == pytest.approx(4 * math.pi)

    @pytest.mark.parametrize("m", [0, -1, 1.5])
    def test_bad_m(self, m):
        with pytest.raises(DomainError):
            cell_length(m, 1.0, LineParams(1.0, 1.0))


class TestWaveResidual:
    q = line_quantities(LineParams(1.0, 1.0), 1.0)  # gamma = -1j

    def grid(self, h):
        return np.linspace(0.0, 2 * math.pi, int(round(2 * math.pi / h)) + 1)

    def test_zero_field(self):
        assert wave_residual(self.q, WaveSolution(0, 0, self.grid(0.1))) == 0.0

    def test_small_at_fine_grid(self):
        assert self.q.gamma == -1j
        r = wave_residual(self.q, WaveSolution(1.0, 0.0, self.grid(1e-3)))
        assert r <= 1e-5

    @pytest.mark.parametrize("amp", [1.0, 0.3 - 2j])
    def test_second_order(self, amp):
        r1 = wave_residual(self.q, WaveSolution(amp, amp, self.grid(2e-2)))
        r2 = wave_residual(self.q, WaveSolution(amp, amp, self.grid(1e-2)))
        assert r1 / r2 == pytest.approx(4.0, rel=0.2)

    def test_short_grid(self):
        with pytest.raises(DomainError):
            WaveSolution(1.0, 1.0, [0, 1, 2, 3])

    def test_non_increasing_grid(self):
        with pytest.raises(DomainError):
            WaveSolution(1.0, 1.0, [0, 1, 1, 2, 3])
