"""
Tests for the boosted single particle.

Run with: pytest tests/test_single_particle.py -v
"""

import math
import pytest
import numpy as np
from pathlib import Path
import sys

from hypothesis import assume, given, settings, strategies as st

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from pydantic import ValidationError
from src.core.kinematics import BoostGeometry, gamma, tan_omega_sum, wigner_pair
from src.modules.single_particle import (
    SingleState,
    SpinOrientation,
    boost_single,
    boost_single_oracle,
    entanglement_entropy,
    entropy_closed_form,
    entropy_limit_formula,
    reduced_velocity_density,
    spin_axis,
    tilde_basis,
    tilde_frame,
)


geometries = st.builds(
    BoostGeometry.of,
    st.floats(min_value=0.05, max_value=0.95),
    st.floats(min_value=0.05, max_value=0.95),
    st.floats(min_value=0.05, max_value=math.pi - 0.05),
)
spins = st.builds(
    lambda phi, eta: SpinOrientation(phi=phi, eta=eta),
    st.floats(min_value=0.0, max_value=math.pi),
    st.floats(min_value=0.0, max_value=2 * math.pi),
)


class TestSpinOrientation:
    """Test angle folding and the tilde basis."""

    def test_defaults(self):
        s = SpinOrientation(phi=0.3)
        assert s.eta == 0.0

    def test_reflection_keeps_axis(self):
        folded = SpinOrientation(phi=2 * math.pi - 0.4, eta=0.2)
        assert folded.phi == pytest.approx(0.4)
        assert folded.eta == pytest.approx(0.2 + math.pi)
        np.testing.assert_allclose(
            spin_axis(folded),
            [math.sin(-0.4) * math.sin(0.2), math.sin(-0.4) * math.cos(0.2), math.cos(0.4)],
            atol=1e-15,
        )

    def test_eta_wraps(self):
        assert SpinOrientation(phi=1.0, eta=2 * math.pi + 0.5).eta == pytest.approx(0.5)

    def test_non_finite_rejected(self):
        with pytest.raises(ValidationError):
            SpinOrientation(phi=math.nan)

    def test_tilde_basis_is_orthonormal(self, generic_spin):
        frame = tilde_frame(generic_spin)
        np.testing.assert_allclose(frame.conj().T @ frame, np.eye(2), atol=1e-15)

    def test_tilde_up_points_along_spin_axis(self, generic_spin):
        up, _ = tilde_basis(generic_spin)
        a, b = up.amps
        bloch = [2 * (np.conj(a) * b).real, 2 * (np.conj(a) * b).imag, abs(a) ** 2 - abs(b) ** 2]
        np.testing.assert_allclose(bloch, spin_axis(generic_spin), atol=1e-15)

    def test_phi_zero_is_z_up(self):
        up, down = tilde_basis(SpinOrientation(phi=0.0))
        np.testing.assert_allclose(up.amps, [1, 0], atol=1e-16)
        np.testing.assert_allclose(down.amps, [0, 1j], atol=1e-16)


class TestBoostSingle:
    """Test boost_single against the first-principles oracle."""

    def test_matches_oracle(self, generic_geometry, generic_spin):
        closed = boost_single(generic_geometry, generic_spin)
        oracle = boost_single_oracle(generic_geometry, generic_spin)
        np.testing.assert_allclose(closed.amps, oracle.amps, atol=1e-12, rtol=0)

    @settings(max_examples=200, deadline=None)
    @given(g=geometries, s=spins)
    def test_matches_oracle_everywhere(self, g, s):
        diff = np.max(np.abs(boost_single(g, s).amps - boost_single_oracle(g, s).amps))
        assert diff < 1e-12

    def test_unit_norm(self, generic_geometry, generic_spin):
        assert boost_single(generic_geometry, generic_spin).is_normalized(1e-12)

    def test_trivial_boost_leaves_state(self, generic_spin):
        st_ = boost_single(BoostGeometry.of(0.0, 0.9, 1.0), generic_spin)
        np.testing.assert_allclose(st_.amps, np.array([1, 0, 1, 0]) / math.sqrt(2), atol=1e-16)

    def test_state_must_have_four_amplitudes(self, generic_geometry, generic_spin):
        with pytest.raises(ValidationError):
            SingleState(amps=[1, 0], geometry=generic_geometry, spin=generic_spin)

    def test_state_must_be_normalized(self, generic_geometry, generic_spin):
        with pytest.raises(ValidationError, match="normalized"):
            SingleState(amps=[1, 1, 0, 0], geometry=generic_geometry, spin=generic_spin)


class TestEntropy:
    """Test the velocity-spin entanglement entropy."""

    def test_spin_along_rotation_axis_is_not_entangled(self, generic_geometry):
        st_ = boost_single(generic_geometry, SpinOrientation(phi=0.0))
        assert entanglement_entropy(st_) == pytest.approx(0.0, abs=1e-12)

    def test_near_c_perpendicular_spin_is_maximal(self):
        g = BoostGeometry.of(0.9999999, 0.9999999, math.pi / 2)
        st_ = boost_single(g, SpinOrientation(phi=math.pi / 2))
        assert entanglement_entropy(st_) == pytest.approx(1.0, abs=1e-3)

    def test_reduced_density_off_diagonal(self, generic_geometry, generic_spin):
        w = wigner_pair(generic_geometry)
        rho = reduced_velocity_density(boost_single(generic_geometry, generic_spin)).entries
        expected = 0.5 * complex(math.cos(w.omega_sum), -math.cos(generic_spin.phi) * math.sin(w.omega_sum))
        assert rho[0, 1] == pytest.approx(expected, abs=1e-14)
        assert rho[0, 0] == pytest.approx(0.5, abs=1e-15)

    def test_closed_form_entropy(self, generic_geometry, generic_spin):
        w = wigner_pair(generic_geometry)
        measured = entanglement_entropy(boost_single(generic_geometry, generic_spin))
        assert entropy_closed_form(w.omega_sum, generic_spin.phi) == pytest.approx(measured, abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(eta=st.floats(min_value=0.0, max_value=2 * math.pi))
    def test_eta_independent(self, eta):
        g = BoostGeometry.of(0.7, 0.8, 1.2)
        base = entanglement_entropy(boost_single_oracle(g, SpinOrientation(phi=1.0)))
        rotated = entanglement_entropy(boost_single_oracle(g, SpinOrientation(phi=1.0, eta=eta)))
        assert rotated == pytest.approx(base, abs=1e-12)

    @settings(max_examples=100, deadline=None)
    @given(g=geometries, phi=st.floats(min_value=0.0, max_value=math.pi))
    def test_reflected_inclination_same_entropy(self, g, phi):
        direct = entanglement_entropy(boost_single(g, SpinOrientation(phi=phi)))
        reflected = entanglement_entropy(boost_single(g, SpinOrientation(phi=math.pi - phi)))
        assert reflected == pytest.approx(direct, abs=1e-12)

    @settings(max_examples=100, deadline=None)
    @given(
        g=geometries,
        b1=st.floats(min_value=0.3, max_value=0.99),
        b2=st.floats(min_value=0.3, max_value=0.99),
        phi=st.floats(min_value=0.0, max_value=math.pi),
    )
    def test_equal_rotation_sum_same_entropy(self, g, b1, b2, phi):
        # pick theta for (b1, b2) so that tan(w+ + w-) matches g
        g1, g2 = gamma(b1), gamma(b2)
        sin_theta = tan_omega_sum(g) * (g1 + g2) / (b1 * g1 * b2 * g2)
        assume(sin_theta <= 1.0)
        other = BoostGeometry.of(b1, b2, math.asin(sin_theta))
        assert wigner_pair(other).omega_sum == pytest.approx(wigner_pair(g).omega_sum, abs=1e-10)
        s = SpinOrientation(phi=phi)
        assert entanglement_entropy(boost_single(other, s)) == pytest.approx(
            entanglement_entropy(boost_single(g, s)), abs=1e-9
        )

    @pytest.mark.parametrize("phi,expected", [
        (0.0, 0.0),
        (math.pi, 0.0),
        (math.pi / 2, 1.0),
    ])
    def test_limit_formula_endpoints(self, phi, expected):
        assert entropy_limit_formula(phi) == pytest.approx(expected, abs=1e-12)

    def test_limit_formula_at_sixty_degrees(self):
        assert entropy_limit_formula(math.pi / 3) == pytest.approx(0.811278, abs=1e-6)

    def test_limit_formula_monotone_to_right_angle(self):
        values = [entropy_limit_formula(math.pi * i / 180) for i in range(91)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_finite_speed_approaches_limit(self):
        g = BoostGeometry.of(1 - 1e-8, 1 - 1e-8, math.pi / 3)
        s = SpinOrientation(phi=math.pi / 3)
        assert entanglement_entropy(boost_single(g, s)) == pytest.approx(entropy_limit_formula(s.phi), abs=1e-6)
