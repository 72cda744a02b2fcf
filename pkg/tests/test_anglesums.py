"""Angle-sum evaluator tests against closed forms and frozen references."""

import math

import pytest

from sylvester.anglesums import (
    AngleSumQuery,
    beta_angle_sum,
    beta_prime_angle_sum,
    evaluate_angle_sum,
    gaussian_angle_sum,
)
from sylvester.errors import DomainError
from sylvester.quad import QuadratureConfig

# angle sums of the regular simplex on 4 and 5 vertices
J4_REGULAR = 0.5 - (3.0 / math.pi) * math.asin(1.0 / 3.0)
J5_REGULAR = 0.25 - (5.0 / (2.0 * math.pi)) * math.asin(0.25)

# mpmath dps=40 value of the n=4 beta angle sum at parameter 1/2
# (equals half the d=2 linear-weight probability)
J4_BETA_HALF = 0.16127558165355681


class TestGaussianAngleSum:
    def test_segment(self):
        res = gaussian_angle_sum(2)
        assert res.value == pytest.approx(1.0, abs=1e-10)

    def test_triangle(self):
        assert gaussian_angle_sum(3).value == pytest.approx(0.5, abs=1e-10)

    def test_tetrahedron(self):
        res = gaussian_angle_sum(4)
        assert res.value == pytest.approx(J4_REGULAR, abs=1e-9)
        assert abs(res.value - J4_REGULAR) <= 3.0 * res.abs_error_estimate

    def test_four_dimensional_simplex(self):
        res = gaussian_angle_sum(5)
        assert res.value == pytest.approx(J5_REGULAR, abs=1e-9)

    def test_large_n_carries_inflated_estimate(self):
        res = gaussian_angle_sum(25)
        assert 0.0 < res.value < 12.5
        assert res.abs_error_estimate > 0.0

    def test_n_bounds(self):
        with pytest.raises(DomainError):
            gaussian_angle_sum(1)
        with pytest.raises(DomainError):
            gaussian_angle_sum(41)


class TestBetaAngleSum:
    def test_uniform_ball_case(self):
        # equals half of Kingman's d=2 value, 35/(24*pi^2)
        res = beta_angle_sum(4, -0.5)
        assert res.value == pytest.approx(35.0 / (24.0 * math.pi**2), abs=1e-8)

    def test_arcsine_case(self):
        assert beta_angle_sum(4, -1.0).value == pytest.approx(0.125, abs=1e-8)

    def test_linear_weight_case(self):
        assert beta_angle_sum(4, 0.5).value == pytest.approx(J4_BETA_HALF, abs=1e-7)

    def test_sphere_limit_vanishes(self):
        # continuation endpoint: the integral is evaluated as written and
        # comes out zero without special-casing
        res = beta_angle_sum(4, -1.5)
        assert abs(res.value) <= 1e-8

    @pytest.mark.parametrize("beta", [-1.0, -0.5, 0.0, 1.0, 5.0])
    def test_triangle_identity(self, beta):
        # internal angles of any triangle sum to a half-sphere
        assert beta_angle_sum(3, beta).value == pytest.approx(0.5, abs=1e-9)

    def test_domain(self):
        with pytest.raises(DomainError):
            beta_angle_sum(3, -1.0001)
        with pytest.raises(DomainError):
            beta_angle_sum(4, -1.5001)
        with pytest.raises(DomainError):
            beta_angle_sum(2, 0.0)


class TestBetaPrimeAngleSum:
    def test_heavy_tail_special_n4(self):
        assert beta_prime_angle_sum(4, 2.5).value == pytest.approx(0.2, abs=1e-8)

    def test_heavy_tail_special_n5(self):
        assert beta_prime_angle_sum(5, 3.0).value == pytest.approx(1.0 / 14.0, abs=1e-8)

    def test_segment(self):
        assert beta_prime_angle_sum(2, 2.0).value == pytest.approx(1.0, abs=1e-9)

    def test_approaches_regular_simplex(self):
        res = beta_prime_angle_sum(4, 100.0)
        assert abs(res.value - J4_REGULAR) < 0.01

    def test_convergence_threshold(self):
        threshold = 1.5 + 0.125  # (n-1)/2 + 1/(2n) at n = 4
        with pytest.raises(DomainError, match="does not converge"):
            beta_prime_angle_sum(4, threshold)
        assert beta_prime_angle_sum(4, threshold + 0.05).value > 0.0


class TestSharedProperties:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_gaussian_limit_gap_shrinks(self, n):
        target = gaussian_angle_sum(n).value
        beta_gaps = [abs(beta_angle_sum(n, b).value - target) for b in (1.0, 10.0, 100.0)]
        # the beta-prime parameter grid starts above its validity threshold
        prime_gaps = [
            abs(beta_prime_angle_sum(n, b).value - target) for b in (3.0, 10.0, 100.0)
        ]
        if n == 3:
            # every triangle has angle sum exactly 1/2, so the gaps are
            # roundoff noise rather than a decreasing sequence
            assert all(gap <= 1e-9 for gap in beta_gaps + prime_gaps)
        else:
            assert beta_gaps[0] > beta_gaps[1] > beta_gaps[2]
            assert prime_gaps[0] > prime_gaps[1] > prime_gaps[2]

    @pytest.mark.parametrize(
        "query",
        [
            AngleSumQuery(4, "gaussian_limit"),
            AngleSumQuery(4, "beta", beta=0.5),
            AngleSumQuery(5, "beta", beta=-0.5),
            AngleSumQuery(4, "beta_prime", beta=2.5),
        ],
        ids=["gaussian", "beta", "beta-kingman", "beta-prime"],
    )
    def test_imaginary_part_cancels(self, query):
        evaluation = evaluate_angle_sum(query)
        assert abs(evaluation.imaginary_part) < 10.0 * query.cfg.abs_tol
        result = evaluation.result
        assert -result.abs_error_estimate <= result.value <= query.n / 2 + result.abs_error_estimate

    def test_query_dispatch_matches_direct_calls(self):
        cfg = QuadratureConfig(rel_tol=1e-9, abs_tol=1e-11)
        assert (
            evaluate_angle_sum(AngleSumQuery(4, "gaussian_limit", cfg=cfg)).result
            == gaussian_angle_sum(4, cfg)
        )
        assert (
            evaluate_angle_sum(AngleSumQuery(4, "beta", beta=-0.5, cfg=cfg)).result
            == beta_angle_sum(4, -0.5, cfg)
        )
        assert (
            evaluate_angle_sum(AngleSumQuery(4, "beta_prime", beta=2.5, cfg=cfg)).result
            == beta_prime_angle_sum(4, 2.5, cfg)
        )

    def test_substitution_round_trip(self):
        # the cosh-kernel parameter alpha = 2*beta + n - 1 round-trips
        n = 4
        for alpha in (2.0, 5.0, 9.0):
            beta = 0.5 * (alpha - n + 1)
            direct = beta_angle_sum(n, beta)
            again = beta_angle_sum(n, 0.5 * (2.0 * beta + n - 1.0) - 0.5 * (n - 1.0))
            assert direct == again

    def test_query_validation(self):
        with pytest.raises(DomainError):
            AngleSumQuery(4, "gaussian_limit", beta=1.0)
        with pytest.raises(DomainError):
            AngleSumQuery(4, "beta")
        with pytest.raises(DomainError):
            AngleSumQuery(4, "cauchy")
