"""Tests for the symplectic algebra and entropy primitives."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaussian_core.entropy import f_entropy
from gaussian_core.states import (
    GeneralCM,
    SymmetricTwoModeCM,
    thermal_pair,
    two_mode_squeezed_vacuum,
)
from gaussian_core.symplectic import (
    BLOCK_TO_CAVITY,
    CAVITY_TO_BLOCK,
    partial_transpose,
    pt_min_symplectic_eig,
    reorder_modes,
    symplectic_eigs_numeric,
    symplectic_eigs_symmetric,
    symplectic_form,
    validate_physical,
    von_neumann_entropy,
)
from tests.conftest import physical_states
from utils.errors import DomainError, InvalidState, PhysicalityError


class TestEntropy:
    def test_vacuum_is_exactly_zero(self):
        assert f_entropy(0.5) == 0.0

    def test_value_at_one(self):
        assert f_entropy(1.0) == pytest.approx(0.954771, abs=1e-6)

    def test_rounding_below_half_is_clamped(self):
        assert f_entropy(0.5 - 1e-13) == 0.0

    def test_domain_error_below_half(self):
        with pytest.raises(DomainError):
            f_entropy(0.4)

    def test_domain_error_is_a_value_error(self):
        with pytest.raises(ValueError):
            f_entropy(0.5 - 1e-9)

    def test_increasing_and_concave_on_grid(self):
        xs = np.linspace(0.5, 20.0, 400)
        values = np.array([f_entropy(x) for x in xs])
        assert np.all(np.diff(values) > 0)
        assert np.all(np.diff(values, 2) < 0)
        assert f_entropy(2.0) > f_entropy(1.0)


class TestSymmetricTwoModeCM:
    def test_matrix_pattern(self):
        m = SymmetricTwoModeCM(1.0, 0.6).to_matrix()
        expected = np.array([
            [1.0, 0.0, 0.6, 0.0],
            [0.0, 1.0, 0.0, -0.6],
            [0.6, 0.0, 1.0, 0.0],
            [0.0, -0.6, 0.0, 1.0],
        ])
        np.testing.assert_array_equal(m, expected)

    def test_unphysical_state_is_rejected(self):
        with pytest.raises(PhysicalityError):
            SymmetricTwoModeCM(1.0, 0.99).check_physical()

    def test_correlation_larger_than_variance_is_rejected(self):
        assert not SymmetricTwoModeCM(1.0, 1.2).is_physical()

    def test_non_finite_entries_are_rejected(self):
        with pytest.raises(ValueError):
            SymmetricTwoModeCM(float("nan"), 0.0)

    def test_from_matrix_recovers_parameters(self):
        cm = SymmetricTwoModeCM(2.0, -0.7)
        assert SymmetricTwoModeCM.from_matrix(cm.embed()) == cm

    def test_from_matrix_rejects_other_families(self):
        with pytest.raises(InvalidState):
            SymmetricTwoModeCM.from_matrix(np.diag([0.7, 0.7, 0.9, 0.9]))

    def test_squeezed_vacuum_and_thermal_constructors(self):
        tmsv = two_mode_squeezed_vacuum(1.5)
        assert tmsv.s == pytest.approx(math.cosh(3.0) / 2)
        assert tmsv.k == pytest.approx(math.sinh(3.0) / 2)
        assert thermal_pair(2.0) == SymmetricTwoModeCM(2.5, 0.0)


class TestGeneralCM:
    def test_asymmetric_matrix_is_rejected(self):
        m = np.eye(4) * 0.5
        m[0, 1] = 0.1
        with pytest.raises(InvalidState):
            GeneralCM(m)

    def test_odd_dimension_is_rejected(self):
        with pytest.raises(InvalidState):
            GeneralCM(np.eye(3))

    def test_entries_are_read_only(self):
        cm = GeneralCM.vacuum(2)
        with pytest.raises(ValueError):
            cm.entries[0, 0] = 1.0

    def test_submatrix_and_block(self):
        cm = SymmetricTwoModeCM(1.0, 0.6).embed()
        np.testing.assert_array_equal(cm.block(0, 1), [[0.6, 0.0], [0.0, -0.6]])
        np.testing.assert_array_equal(cm.submatrix([1]).entries, np.eye(2))


class TestSymplecticForm:
    def test_squares_to_minus_identity(self):
        omega = symplectic_form(3)
        np.testing.assert_array_equal(omega @ omega, -np.eye(6))

    def test_per_mode_ordering(self):
        np.testing.assert_array_equal(symplectic_form(1), [[0.0, 1.0], [-1.0, 0.0]])


class TestReorderModes:
    def test_layout_permutation_is_an_involution(self):
        assert tuple(BLOCK_TO_CAVITY[i] for i in CAVITY_TO_BLOCK) == (0, 1, 2, 3)

    def test_moves_modes(self):
        cm = GeneralCM(np.diag([1.0, 1.0, 2.0, 2.0, 3.0, 3.0, 4.0, 4.0]))
        reordered = reorder_modes(cm, BLOCK_TO_CAVITY)
        np.testing.assert_array_equal(np.diag(reordered.entries), [1, 1, 3, 3, 2, 2, 4, 4])
        back = reorder_modes(reordered, CAVITY_TO_BLOCK)
        np.testing.assert_array_equal(back.entries, cm.entries)

    def test_rejects_non_permutations(self):
        with pytest.raises(InvalidState):
            reorder_modes(GeneralCM.vacuum(2), (0, 0))


class TestSymmetricSpectrum:
    def test_vacuum(self):
        spectrum = symplectic_eigs_symmetric(SymmetricTwoModeCM(0.5, 0.0))
        assert (spectrum.eta_plus, spectrum.eta_minus) == (0.5, 0.5)

    def test_degenerate_spectrum(self):
        spectrum = symplectic_eigs_symmetric(SymmetricTwoModeCM(1.0, 0.6))
        assert spectrum.eta_plus == pytest.approx(0.8, abs=1e-12)
        assert spectrum.eta_minus == pytest.approx(0.8, abs=1e-12)

    @pytest.mark.parametrize("r", [0.5, 1.0, 1.5])
    def test_pure_state_has_vacuum_spectrum(self, r):
        spectrum = symplectic_eigs_symmetric(two_mode_squeezed_vacuum(r))
        assert spectrum.eta_minus == pytest.approx(0.5, abs=1e-12)
        assert spectrum.is_physical()

    def test_unphysical_raises(self):
        with pytest.raises(PhysicalityError):
            symplectic_eigs_symmetric(SymmetricTwoModeCM(1.0, 0.99))

    @pytest.mark.parametrize("r", [2.5, 2.8, 3.0, 4.0])
    def test_large_pure_state_sits_on_the_vacuum_floor(self, r):
        spectrum = symplectic_eigs_symmetric(two_mode_squeezed_vacuum(r))
        assert spectrum.eta_minus == pytest.approx(0.5, abs=1e-9)
        assert spectrum.is_physical()

    def test_slack_grows_with_the_variance(self):
        assert SymmetricTwoModeCM(0.5, 0.0).slack(1e-12) == 1e-12
        assert SymmetricTwoModeCM(100.0, 0.0).slack(1e-12) == pytest.approx(1e-8)
        with pytest.raises(PhysicalityError):
            SymmetricTwoModeCM(100.0, 99.999).check_physical(1e-12)


class TestPartialTranspose:
    def test_vacuum_on_boundary(self):
        assert pt_min_symplectic_eig(SymmetricTwoModeCM(0.5, 0.0)) == 0.5

    def test_matches_numeric_spectrum_of_transposed_matrix(self):
        cm = SymmetricTwoModeCM(1.0, 0.6)
        numeric = symplectic_eigs_numeric(partial_transpose(cm.embed()))
        assert pt_min_symplectic_eig(cm) == pytest.approx(0.4, abs=1e-12)
        assert numeric[-1] == pytest.approx(0.4, abs=1e-10)

    @pytest.mark.parametrize("r", [0.5, 1.0, 1.5])
    def test_pure_state(self, r):
        assert pt_min_symplectic_eig(two_mode_squeezed_vacuum(r)) == pytest.approx(
            math.exp(-2 * r) / 2, abs=1e-12)

    @given(physical_states())
    def test_equals_s_minus_abs_k(self, cm):
        assert pt_min_symplectic_eig(cm) == pytest.approx(cm.s - abs(cm.k), abs=1e-12)

    @given(physical_states(max_s=5.0))
    def test_determinant_is_invariant(self, cm):
        m = cm.embed()
        det = np.linalg.det(m.entries)
        assert np.linalg.det(partial_transpose(m).entries) == pytest.approx(det, rel=1e-10)


class TestNumericSpectrum:
    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_vacuum(self, n):
        np.testing.assert_allclose(symplectic_eigs_numeric(GeneralCM.vacuum(n)), [0.5] * n, atol=1e-12)

    def test_embedded_symmetric_state(self):
        eigs = symplectic_eigs_numeric(SymmetricTwoModeCM(1.0, 0.6).embed())
        np.testing.assert_allclose(eigs, [0.8, 0.8], atol=1e-10)

    def test_uncoupled_thermal_modes_sorted_descending(self):
        eigs = symplectic_eigs_numeric(GeneralCM(np.diag([0.7, 0.7, 0.9, 0.9])))
        np.testing.assert_allclose(eigs, [0.9, 0.7], atol=1e-12)

    def test_not_positive_definite(self):
        with pytest.raises(InvalidState):
            symplectic_eigs_numeric(GeneralCM(np.diag([1.0, -1.0])))

    @settings(max_examples=50)
    @given(physical_states())
    def test_agrees_with_closed_form(self, cm):
        spectrum = symplectic_eigs_symmetric(cm)
        numeric = symplectic_eigs_numeric(cm.embed())
        np.testing.assert_allclose(numeric, [spectrum.eta_plus, spectrum.eta_minus], atol=1e-10)


class TestValidatePhysical:
    def test_vacuum(self):
        report = validate_physical(GeneralCM.vacuum(2))
        assert report.is_physical
        assert report.min_symplectic_eig == pytest.approx(0.5, abs=1e-12)

    def test_unphysical_state(self):
        report = validate_physical(SymmetricTwoModeCM(1.0, 0.99).embed())
        assert not report
        assert report.min_symplectic_eig == pytest.approx(math.sqrt(1 - 0.99 ** 2), abs=1e-10)

    def test_physical_state(self):
        report = validate_physical(SymmetricTwoModeCM(1.0, 0.6).embed())
        assert report
        assert report.min_symplectic_eig == pytest.approx(0.8, abs=1e-10)

    def test_indefinite_matrix_reports_instead_of_raising(self):
        assert not validate_physical(GeneralCM(np.diag([1.0, -1.0])))


class TestVonNeumannEntropy:
    def test_pure_state_has_no_entropy(self):
        assert von_neumann_entropy(two_mode_squeezed_vacuum(1.0)) == pytest.approx(0.0, abs=1e-12)

    def test_thermal_pair(self):
        assert von_neumann_entropy(thermal_pair(1.0)) == pytest.approx(2 * f_entropy(1.5))

    def test_numeric_path(self):
        cm = GeneralCM(np.diag([0.7, 0.7, 0.9, 0.9]))
        assert von_neumann_entropy(cm) == pytest.approx(f_entropy(0.7) + f_entropy(0.9), abs=1e-10)

    @given(st.floats(min_value=0.0, max_value=2.0))
    def test_reduced_state_entropy_of_squeezed_vacuum(self, r):
        reduced = two_mode_squeezed_vacuum(r).embed().submatrix([0])
        assert von_neumann_entropy(reduced) == pytest.approx(f_entropy(math.cosh(2 * r) / 2), abs=1e-9)
