"""Tests for the exactly-n-centered truncated block shifts."""

from __future__ import annotations

import numpy as np
import pytest

from polarops.classify import centered_order, is_n_centered_definitional
from polarops.core import commutes
from polarops.decomp import polar_decompose, verify_polar
from polarops.shifts import (
    BLOCK,
    ShiftSpec,
    angle_constants,
    block_t,
    build_truncated,
    expected_commutator_pattern,
    g_sequence,
    predicted_polar_parts,
    v_matrix,
    v_power_entries,
)

TIGHT = 1e-12


class TestAngleConstants:
    def test_pinned_values(self):
        c = angle_constants()
        assert c.theta == pytest.approx(0.7404805, abs=1e-6)
        assert c.cos_theta > 0.5
        assert 0.0 < c.sin_alpha < 1.0

    def test_trig_consistency(self):
        c = angle_constants()
        assert c.sin_alpha**2 + c.cos_alpha**2 == pytest.approx(1.0, abs=1e-15)
        assert c.sec_alpha * c.cos_alpha == pytest.approx(1.0, abs=1e-15)
        assert c.tan_alpha == pytest.approx(c.sin_alpha / c.cos_alpha, abs=1e-15)
        assert np.sin(c.alpha) == pytest.approx(c.sin_alpha, abs=1e-15)


class TestVMatrix:
    def test_unitary(self):
        v = v_matrix()
        assert np.allclose(v @ v.conj().T, np.eye(3), atol=1e-15)

    def test_determinant(self):
        assert np.linalg.det(v_matrix()) == pytest.approx(-1.0, abs=1e-12)

    def test_spectrum(self):
        c = angle_constants()
        expected = np.sort_complex(
            np.array([-1.0, np.exp(1j * c.theta), np.exp(-1j * c.theta)])
        )
        actual = np.sort_complex(np.linalg.eigvals(v_matrix()))
        assert np.max(np.abs(actual - expected)) < 1e-12


class TestVPowerEntries:
    def test_matches_numeric_powers(self):
        v = v_matrix()
        power = np.eye(3, dtype=complex)
        for k in range(1, 31):
            power = power @ v
            v13, v33 = v_power_entries(k)
            assert abs(power[0, 2] - v13) < 1e-10
            assert abs(power[2, 2] - v33) < 1e-10

    def test_first_power_corner_vanishes_exactly(self):
        assert v_power_entries(1)[1] == 0

    def test_shift_identity_is_exact(self):
        for k in range(1, 31):
            assert v_power_entries(k)[1] == v_power_entries(k + 1)[0]

    def test_corner_stays_away_from_zero_beyond_one(self):
        for k in range(2, 31):
            assert abs(v_power_entries(k)[1]) > 1e-8

    def test_rejects_bad_k(self):
        with pytest.raises(ValueError):
            v_power_entries(0)


class TestGSequence:
    def test_order_two_recipe(self):
        assert g_sequence(2, 6) == (1.0, 2.0, 3.0, 4.0, 1.0, 1.0)

    def test_order_three_recipe(self):
        assert g_sequence(3, 6) == (1.0, 2.0, 2.0, 2.0, 1.0, 1.0)

    def test_order_five_recipe(self):
        assert g_sequence(5, 8) == (1.0, 2.0, 2.0, 2.0, 2.0, 2.0, 1.0, 1.0)

    def test_values_in_range(self):
        for n in range(2, 9):
            assert all(0.0 < w <= 4.0 for w in g_sequence(n, n + 5))

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            g_sequence(1, 6)
        with pytest.raises(ValueError):
            g_sequence(3, 4)


class TestShiftSpec:
    def test_from_recipe_defaults(self):
        spec = ShiftSpec.from_recipe(2)
        assert spec.blocks == 5
        assert spec.dimension == 15
        assert spec.g == g_sequence(2, 5)

    def test_explicit_blocks(self):
        spec = ShiftSpec.from_recipe(4, blocks=7)
        assert spec.blocks == 7
        assert spec.dimension == 21

    def test_rejects_invalid(self):
        with pytest.raises(ValueError):
            ShiftSpec(n=1, blocks=5, g=(1.0,) * 5)
        with pytest.raises(ValueError):
            ShiftSpec(n=3, blocks=4, g=(1.0,) * 4)
        with pytest.raises(ValueError):
            ShiftSpec(n=2, blocks=5, g=(1.0,) * 4)
        with pytest.raises(ValueError):
            ShiftSpec(n=2, blocks=5, g=(1.0, 2.0, 3.0, 5.0, 1.0))
        with pytest.raises(ValueError):
            ShiftSpec(n=2, blocks=5, g=(0.0, 1.0, 1.0, 1.0, 1.0))


class TestBlockT:
    def test_polar_parts_are_v_and_diagonal(self):
        g = g_sequence(2, 5)
        for m in range(1, 5):
            block = block_t(m, g)
            parts = polar_decompose(block)
            assert np.allclose(parts.isometry, v_matrix(), atol=1e-10)
            c = angle_constants()
            expected = np.diag(
                [c.sec_alpha * g[m - 1], c.sec_alpha * g[m - 1], c.sec_alpha * g[m]]
            )
            assert np.allclose(parts.modulus, expected, atol=1e-10)
            assert verify_polar(block, parts).ok

    def test_gram_matrix_is_diagonal(self):
        block = block_t(1, g_sequence(3, 6))
        gram = block.conj().T @ block
        assert np.allclose(gram, np.diag(np.diag(gram)), atol=TIGHT)

    def test_modulus_splits_into_scalar_plus_corner(self):
        # diag(s*g(m), s*g(m), s*g(m+1)) = s*g(m)*I + diag(0, 0, s*(g(m+1)-g(m)))
        # exactly in floats for the recipe weights.
        c = angle_constants()
        for g in (g_sequence(2, 6), g_sequence(3, 6)):
            for m in range(1, len(g)):
                gm, gm1 = g[m - 1], g[m]
                scalar = c.sec_alpha * gm * np.eye(3)
                corner = np.diag([0.0, 0.0, c.sec_alpha * (gm1 - gm)])
                split = scalar + corner
                direct = np.diag(
                    [c.sec_alpha * gm, c.sec_alpha * gm, c.sec_alpha * gm1]
                )
                assert np.array_equal(split, direct)

    def test_rejects_out_of_range_index(self):
        g = g_sequence(2, 5)
        with pytest.raises(ValueError):
            block_t(0, g)
        with pytest.raises(ValueError):
            block_t(5, g)


class TestBuildTruncated:
    def test_shape_and_block_placement(self):
        spec = ShiftSpec.from_recipe(2)
        t = build_truncated(spec)
        assert t.shape == (15, 15)
        for m in range(1, spec.blocks):
            row, col = BLOCK * m, BLOCK * (m - 1)
            assert np.array_equal(
                t[row : row + BLOCK, col : col + BLOCK], block_t(m, spec.g)
            )
        # Everything off the first block subdiagonal is zero.
        mask = np.ones_like(t, dtype=bool)
        for m in range(1, spec.blocks):
            mask[BLOCK * m : BLOCK * (m + 1), BLOCK * (m - 1) : BLOCK * m] = False
        assert np.all(t[mask] == 0)

    def test_predicted_polar_parts_pass_contract(self):
        for n in (2, 3, 4):
            spec = ShiftSpec.from_recipe(n)
            t = build_truncated(spec)
            predicted = predicted_polar_parts(spec)
            check = verify_polar(t, predicted)
            assert check.ok
            assert check.worst() < 1e-12
            computed = polar_decompose(t)
            assert computed.rank == predicted.rank

    def test_exact_centered_order(self):
        for n in (2, 3, 4, 5):
            t = build_truncated(ShiftSpec.from_recipe(n))
            report = centered_order(t, n + 2)
            assert report.verified_order == n
            assert report.oracle_agrees
            assert is_n_centered_definitional(t, n).ok
            assert not is_n_centered_definitional(t, n + 1).ok

    def test_truncation_depth_does_not_change_order(self):
        for blocks in (5, 6, 8):
            t = build_truncated(ShiftSpec.from_recipe(3, blocks=blocks))
            assert centered_order(t, 5).verified_order == 3

    def test_constant_weights_center_at_every_order(self):
        spec = ShiftSpec(n=2, blocks=6, g=(1.0,) * 6)
        report = centered_order(build_truncated(spec), 8)
        assert report.verified_order == 8


class TestExpectedCommutatorPattern:
    def test_order_three_recipe_pattern(self):
        spec = ShiftSpec.from_recipe(3, blocks=6)
        assert expected_commutator_pattern(spec, 2)
        assert not expected_commutator_pattern(spec, 3)

    def test_constant_weights_always_commute(self):
        spec = ShiftSpec(n=2, blocks=6, g=(1.0,) * 6)
        for k in range(2, 6):
            assert expected_commutator_pattern(spec, k)

    def test_matches_numeric_commutators(self):
        for n in (2, 3, 4):
            spec = ShiftSpec.from_recipe(n)
            parts = polar_decompose(build_truncated(spec))
            u_pow = parts.isometry
            for k in range(1, spec.blocks - 1):
                conjugated = u_pow @ parts.modulus @ u_pow.conj().T
                predicted = True if k == 1 else expected_commutator_pattern(spec, k)
                assert commutes(conjugated, parts.modulus) == predicted
                u_pow = u_pow @ parts.isometry

    def test_rejects_k_below_two(self):
        with pytest.raises(ValueError):
            expected_commutator_pattern(ShiftSpec.from_recipe(2), 1)
