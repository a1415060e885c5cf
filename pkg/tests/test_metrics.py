import numpy as np
import pytest

from coneq import (
    ConePoint,
    CVector,
    MetricMatrix,
    NondegeneracyError,
    Signature,
    TangencyError,
    UnsupportedFrameError,
    adapted_frame,
    basis_vector,
    conformal_factor,
    cotangent_metric_qtilde,
    dualize_degenerate,
    form_eval,
    induced_metric,
    metric_signature,
    quotient_coefficients,
    sample_cone_point,
    sample_split,
    skew_form,
    standard_split,
    tangency_residual,
)

SIG11 = Signature(1, 1)
SIG22 = Signature(2, 2)


def vec(sig, *values):
    return CVector(np.array(values, dtype=complex), sig)


def null22():
    return ConePoint(basis_vector(SIG22, 0) + basis_vector(SIG22, 3))


class TestMetricMatrix:
    def test_diagonal_signature(self):
        g = MetricMatrix.from_entries(np.diag([1.0, -1.0]), ("a", "b"))
        assert g.signature == (1, 1, 0)
        assert g.rank == 2 and g.dim == 2
        assert g.radical_basis.shape == (0, 2)

    def test_hyperbolic_block(self):
        g = MetricMatrix.from_entries([[0.0, 2.0], [2.0, 0.0]], ("f2", "f3"))
        assert g.signature == (1, 1, 0)

    def test_zero_matrix(self):
        g = MetricMatrix.from_entries([[0.0]], ("z",))
        assert g.signature == (0, 0, 1)
        np.testing.assert_array_equal(g.radical_basis, [[1.0]])

    def test_scale_pins_threshold(self):
        # a lone 1e-15 entry is full rank against its own scale but sits in
        # the radical once the threshold is pinned to an external scale
        loose = MetricMatrix.from_entries([[1e-15]], ("z",))
        assert loose.signature == (1, 0, 0)
        pinned = MetricMatrix.from_entries([[1e-15]], ("z",), scale=1.0)
        assert pinned.signature == (0, 0, 1)
        assert pinned.scale == 1.0

    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError):
            MetricMatrix.from_entries([[0.0, 1.0], [0.0, 0.0]], ("a", "b"))

    def test_label_count_checked(self):
        with pytest.raises(ValueError):
            MetricMatrix.from_entries(np.eye(2), ("a",))

    def test_json(self):
        g = MetricMatrix.from_entries(np.diag([2.0, 0.0]), ("a", "b"))
        data = g.to_json()
        assert data["signature"] == [1, 0, 1]
        assert data["basis_labels"] == ["a", "b"]
        assert len(data["radical_basis"]) == 1

    def test_metric_signature_helper(self):
        assert metric_signature(np.diag([3.0, -2.0, 0.0])) == (1, 1, 1)
        g = MetricMatrix.from_entries(np.eye(2), ("a", "b"))
        assert metric_signature(g) == (2, 0, 0)


class TestAdaptedFrame:
    def test_structure_at_standard_point(self):
        fr = adapted_frame(null22())
        assert len(fr.witt_basis) == 4
        assert len(fr.tangent_basis) == 7
        assert len(fr.quotient_basis) == 6
        assert fr.quotient_labels == ("f2", "f3", "e2", "ie2", "e3", "ie3")
        np.testing.assert_array_equal(
            fr.tangent_basis[0].components, fr.x.components
        )
        np.testing.assert_allclose(
            fr.quotient_basis[0].components, 1j * fr.x.components, atol=1e-15
        )

    def test_members_are_tangent(self):
        for sig in (SIG11, Signature(1, 2), SIG22, Signature(3, 2)):
            x = sample_cone_point(sig, 12)
            fr = adapted_frame(x)
            for v in fr.tangent_basis:
                assert tangency_residual(x, v) <= 1e-10

    def test_tangency_residual_detects_normal_direction(self):
        x = null22()
        assert tangency_residual(x, basis_vector(SIG22, 0)) > 0.1


class TestInducedMetric:
    def test_adapted_pinned_matrix(self):
        x = ConePoint(vec(SIG11, 1, 1))
        g = induced_metric(x)
        np.testing.assert_allclose(g.entries, [[0.0, 2.0], [2.0, 0.0]],
                                   atol=1e-14)
        assert g.signature == (1, 1, 0)
        assert g.basis_labels == ("f2", "f3")

    def test_adapted_block_structure(self):
        g = induced_metric(null22())
        want = np.zeros((6, 6))
        want[0, 1] = want[1, 0] = 2.0
        want[2, 2] = want[3, 3] = 1.0
        want[4, 4] = want[5, 5] = -1.0
        np.testing.assert_allclose(g.entries, want, atol=1e-12)
        assert g.signature == (3, 3, 0)

    def test_epsilon_frame(self):
        x = ConePoint(vec(SIG11, 1, 1))
        g = induced_metric(x, frame="epsilon")
        np.testing.assert_allclose(g.entries, np.diag([1.0, -1.0]),
                                   atol=1e-14)
        assert g.basis_labels == ("eps1", "eps2")

    def test_epsilon_frame_off_axis(self):
        g = induced_metric(sample_cone_point(SIG11, 31), frame="epsilon")
        np.testing.assert_allclose(g.entries, np.diag([1.0, -1.0]),
                                   atol=1e-12)

    def test_epsilon_requires_dimension_two(self):
        with pytest.raises(UnsupportedFrameError):
            induced_metric(null22(), frame="epsilon")

    def test_unknown_frame_name(self):
        with pytest.raises(ValueError):
            induced_metric(null22(), frame="nope")

    def test_full_tangent_basis_is_degenerate(self):
        fr = adapted_frame(null22())
        g = induced_metric(fr.x, basis=fr.tangent_basis)
        assert g.signature == (3, 3, 1)

    def test_non_tangent_basis_rejected(self):
        x = ConePoint(vec(SIG11, 1, 1))
        with pytest.raises(TangencyError):
            induced_metric(x, basis=(basis_vector(SIG11, 0),))


class TestSkewForm:
    def test_pairs_ray_with_phase_direction(self):
        x = ConePoint(vec(SIG11, 1, 1))
        fr = adapted_frame(x)
        e1 = fr.witt_basis[0]
        value = skew_form(x, x.vector, 1j * e1)
        assert value == -1.0

    def test_unit_pairing_at_sampled_points(self):
        # f(x, e1) = 1 for the Witt basis at any x, so the pairing of the
        # ray direction with i e1 is -1 regardless of scale
        for seed in range(20):
            x = sample_cone_point(SIG22, seed)
            fr = adapted_frame(x)
            value = skew_form(x, x.vector, 1j * fr.witt_basis[0])
            assert abs(value + 1.0) <= 1e-9

    def test_antisymmetric(self):
        x = sample_cone_point(SIG22, 4)
        fr = adapted_frame(x)
        a, b = fr.quotient_basis[0], fr.quotient_basis[2]
        assert skew_form(x, a, b) == -skew_form(x, b, a)

    def test_non_tangent_rejected(self):
        x = ConePoint(vec(SIG11, 1, 1))
        with pytest.raises(TangencyError):
            skew_form(x, basis_vector(SIG11, 0), 1j * x.vector)


class TestCotangentMetric:
    def test_rank_zero_in_dimension_two(self):
        g = cotangent_metric_qtilde(ConePoint(vec(SIG11, 1, 1)))
        assert g.dim == 1
        assert g.signature == (0, 0, 1)
        assert abs(g.entries[0, 0]) <= 1e-10
        assert g.basis_labels == ("f3*",)

    def test_rank_and_radical_in_dimension_four(self):
        g = cotangent_metric_qtilde(null22())
        assert g.dim == 5
        assert g.rank == 4
        assert g.signature == (2, 2, 1)
        assert g.radical_basis.shape == (1, 5)
        # radical is the f3* direction at the standard point
        np.testing.assert_allclose(
            np.abs(g.radical_basis[0]), [1, 0, 0, 0, 0], atol=1e-12
        )

    def test_inverse_square_scaling(self):
        x = sample_cone_point(SIG22, 6)
        fr = adapted_frame(x)
        lam = 1.7
        g = cotangent_metric_qtilde(x, basis=fr.quotient_basis,
                                    labels=fr.quotient_labels)
        x2 = ConePoint(lam * x.vector)
        scaled_basis = tuple(lam * v for v in fr.quotient_basis)
        g2 = cotangent_metric_qtilde(x2, basis=scaled_basis,
                                     labels=fr.quotient_labels)
        np.testing.assert_allclose(
            g2.entries, g.entries / lam**2, atol=1e-10 * g.scale
        )

    def test_matches_abstract_dualization_exactly(self):
        g = cotangent_metric_qtilde(null22())
        inclusion = np.vstack([np.zeros(4), np.eye(4)])
        dual = dualize_degenerate(inclusion, np.diag([1.0, 1.0, -1.0, -1.0]))
        np.testing.assert_allclose(g.entries, dual.entries, atol=1e-14)
        assert dual.signature == g.signature


class TestDualizeDegenerate:
    def test_pinned_example(self):
        out = dualize_degenerate([[1.0], [0.0]], [[1.0]])
        np.testing.assert_array_equal(out.entries, [[1.0, 0.0], [0.0, 0.0]])
        assert out.signature == (1, 0, 1)
        assert out.basis_labels == ("w0*", "w1*")

    def test_singular_core_rejected(self):
        with pytest.raises(NondegeneracyError):
            dualize_degenerate([[1.0], [0.0]], [[0.0]])

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            dualize_degenerate(np.eye(2), np.eye(3))

    def test_empty_core_gives_zero_form(self):
        out = dualize_degenerate(np.zeros((2, 0)), np.zeros((0, 0)))
        np.testing.assert_array_equal(out.entries, np.zeros((2, 2)))
        assert out.signature == (0, 0, 2)


class TestQuotientCoefficients:
    def test_recovers_frame_member(self):
        x = null22()
        fr = adapted_frame(x)
        coeffs, residual = quotient_coefficients(
            x, fr.quotient_basis, [fr.quotient_basis[1]]
        )
        want = np.zeros((6, 1))
        want[1, 0] = 1.0
        np.testing.assert_allclose(coeffs, want, atol=1e-12)
        assert residual <= 1e-12

    def test_ray_direction_projects_out(self):
        x = null22()
        fr = adapted_frame(x)
        coeffs, residual = quotient_coefficients(x, fr.quotient_basis,
                                                 [x.vector])
        np.testing.assert_allclose(coeffs, np.zeros((6, 1)), atol=1e-12)
        assert residual <= 1e-12


class TestConformalFactor:
    def test_same_split_gives_unit_factor(self):
        x = sample_cone_point(SIG22, 3)
        split = standard_split(SIG22)
        factor, residual = conformal_factor(x, split, split)
        assert abs(factor - 1.0) <= 1e-10
        assert residual <= 1e-10

    def test_transported_split_positive_factor(self):
        x = sample_cone_point(SIG22, 3)
        factor, residual = conformal_factor(
            x, standard_split(SIG22), sample_split(SIG22, 19)
        )
        assert factor > 0
        assert residual <= 1e-8

    def test_factor_is_norm_ratio_squared(self):
        from coneq import canonicalize_ray

        x = sample_cone_point(Signature(2, 3), 8)
        sa = standard_split(Signature(2, 3))
        sb = sample_split(Signature(2, 3), 2)
        factor, residual = conformal_factor(x, sa, sb)
        mu = canonicalize_ray(x, sb).point.vector.norm() \
            / canonicalize_ray(x, sa).point.vector.norm()
        assert abs(factor - mu**2) <= 1e-8 * mu**2
        assert residual <= 1e-8
