import math
from fractions import Fraction

import pytest

from ellentropy.asymptotics import (
    COMPACT_III,
    COMPACT_IV,
    CRITICAL_II,
    NONCOMPACT_A,
    NONCOMPACT_B,
    canonical_band,
    classify,
    effective_dimension,
    entropy_estimator,
    gamma_pqb,
    hilbert_leading,
    hilbert_second_order,
    invert_series,
    sum_expansion_check,
)
from ellentropy.constants import gamma_pq
from ellentropy.errors import EntropyError, NonCompactRegime, UnsupportedCorner
from ellentropy.sequences import Canonical, TwoTermPolynomial

INF = math.inf
LN2 = math.log(2.0)


class TestClassify:
    def test_hilbert_case(self):
        r = classify(2, 2, 1)
        assert r.case == COMPACT_III
        assert r.b_star == 1.0
        assert r.lower_const == pytest.approx(1 / LN2)
        assert r.upper_const == pytest.approx(1 / LN2 + 1)
        assert r.exact_const == pytest.approx(1 / LN2)

    def test_noncompact_strict(self):
        assert classify(2, 1, Fraction(3, 10)).case == NONCOMPACT_A

    def test_p_below_q(self):
        r = classify(1, 2, 1)
        assert r.case == COMPACT_IV
        assert r.upper_const is None
        assert r.lower_const is not None

    def test_critical_canonical_is_noncompact(self):
        # p = inf convention: critical value is 1/b
        assert classify("inf", 2, Fraction(1, 2)).case == NONCOMPACT_B

    def test_critical_summable(self):
        r = classify("inf", 2, Fraction(1, 2), tail_summable_inv_b=True, liminf_n_mu_pos=False)
        assert r.case == CRITICAL_II
        assert r.lower_const == pytest.approx(gamma_pq(INF, 2))
        assert r.upper_const == 1.0
        assert r.lower_const <= r.upper_const

    def test_exact_rational_boundary(self):
        # q = p/(pb+1) held exactly: p=4, b=1/2 gives critical q = 4/3
        assert classify(4, Fraction(4, 3), Fraction(1, 2)).case == NONCOMPACT_B
        assert classify(4, Fraction(4, 3) + Fraction(1, 10**9), Fraction(1, 2)).case == COMPACT_III
        assert classify(4, Fraction(4, 3) - Fraction(1, 10**9), Fraction(1, 2)).case == NONCOMPACT_A

    def test_unsupported_corner(self):
        with pytest.raises(UnsupportedCorner):
            classify(4, Fraction(4, 3), Fraction(1, 2), tail_summable_inv_b=False, liminf_n_mu_pos=False)

    def test_inconsistent_flags(self):
        with pytest.raises(EntropyError):
            classify(4, Fraction(4, 3), Fraction(1, 2), tail_summable_inv_b=True, liminf_n_mu_pos=True)

    def test_totality_on_grid(self):
        grid = [Fraction(n, 2) for n in range(2, 11)] + [None]  # 1..5 step .5, inf
        bs = [Fraction(n, 4) for n in (1, 2, 4, 8, 12)]
        cases = set()
        for p in grid:
            for q in grid:
                for b in bs:
                    pv = "inf" if p is None else p
                    qv = "inf" if q is None else q
                    r = classify(pv, qv, b)  # canonical flags: liminf positive
                    cases.add(r.case)
                    # cross-check against float inequality away from boundary
                    rp = 0.0 if p is None else 1.0 / float(p)
                    rq = 0.0 if q is None else 1.0 / float(q)
                    margin = rq - rp - float(b)
                    if margin > 1e-9:
                        assert r.case == NONCOMPACT_A
                    elif abs(margin) <= 1e-12:
                        assert r.case == NONCOMPACT_B
                    elif rq >= rp:
                        assert r.case == COMPACT_III
                    else:
                        assert r.case == COMPACT_IV
        assert NONCOMPACT_A in cases and COMPACT_III in cases and COMPACT_IV in cases


class TestCanonicalBand:
    def test_hilbert_example(self):
        band = canonical_band(2, 2, 1.0, 1.0, 1e-2)
        assert band.lower_bits == pytest.approx(100 / LN2)
        assert band.upper_bits == pytest.approx(100 * (1 / LN2 + 1))
        assert not band.upper_constant_unconfirmed

    def test_edges_tighten_in_b(self):
        ratios = []
        for b in (1.0, 2.0, 4.0, 8.0):
            band = canonical_band(2, 2, b, 1.0, 1e-3)
            ratios.append(band.upper_bits / band.lower_bits)
        assert all(a > b for a, b in zip(ratios, ratios[1:]))

    def test_c_scaling(self):
        p, q, b = 3.0, 2.0, 1.5
        bst = b + 1 / 3 - 1 / 2
        one = canonical_band(p, q, b, 1.0, 1e-2)
        lam = canonical_band(p, q, b, 3.0, 1e-2)
        assert lam.lower_bits == pytest.approx(3 ** (1 / bst) * one.lower_bits, rel=1e-12)
        assert lam.upper_bits == pytest.approx(3 ** (1 / bst) * one.upper_bits, rel=1e-12)

    def test_p_below_q_flags_upper(self):
        band = canonical_band(1, 2, 1.0, 1.0, 1e-3)
        assert band.upper_constant_unconfirmed
        assert band.lower_bits <= band.upper_bits

    def test_noncompact_rejected(self):
        with pytest.raises(NonCompactRegime):
            canonical_band(2, 1, 0.3, 1.0, 1e-2)

    def test_band_ordered_across_two_sided_regime(self):
        for p in (1.0, 1.5, 2.0, 3.0, INF):
            for q in (1.0, 1.5, 2.0, 3.0, INF):
                for b in (0.4, 1.0, 2.5):
                    if classify(p if p != INF else "inf", q if q != INF else "inf", Fraction(b)).case != COMPACT_III:
                        continue
                    band = canonical_band(p, q, b, 1.0, 1e-2)
                    assert band.lower_bits <= band.upper_bits


class TestHilbert:
    def test_leading_values(self):
        assert hilbert_leading(1, 1, 1e-4) == pytest.approx(1e4 / LN2)
        assert hilbert_leading(2, 1, 1e-4) == pytest.approx(200 / LN2)

    def test_c_scaling(self):
        assert hilbert_leading(2, 4, 1e-3) == pytest.approx(2 * hilbert_leading(2, 1, 1e-3))

    def test_second_order_reduces_to_leading(self):
        assert hilbert_second_order(1.0, 1.3, 2.0, 0.0, 1e-3) == hilbert_leading(1.0, 2.0, 1e-3)

    def test_second_order_value(self):
        expected = 1000 / LN2 + 1000**0.75 / (0.75 * LN2)
        assert hilbert_second_order(1.0, 1.25, 1.0, 1.0, 1e-3) == pytest.approx(expected)

    def test_negative_correction_lowers(self):
        hi = hilbert_second_order(1.0, 1.25, 1.0, 0.5, 1e-3)
        lo = hilbert_second_order(1.0, 1.25, 1.0, -0.5, 1e-3)
        assert lo < hi

    def test_constraint(self):
        with pytest.raises(EntropyError):
            hilbert_second_order(1.0, 1.6, 1.0, 1.0, 1e-3)


class TestEstimator:
    def test_leading_constant_b1(self):
        est = entropy_estimator(Canonical(1, 1), 1e-4)
        assert est == pytest.approx(hilbert_leading(1, 1, 1e-4), rel=0.02)

    def test_zero_above_mu1(self):
        assert entropy_estimator(Canonical(1, 1), 2.0) == 0.0

    def test_second_order_residual_shrinks(self):
        model = TwoTermPolynomial(1.0, 1.0, 1.0, 1.25)
        resid = []
        for eps in (1e-3, 1e-4):
            r = abs(entropy_estimator(model, eps) - hilbert_second_order(1.0, 1.25, 1.0, 1.0, eps))
            resid.append(r / eps**-0.75)
        assert resid[1] < resid[0]


class TestEffectiveDimension:
    def test_p_equals_q(self):
        assert effective_dimension(Canonical(1, 1), 2, 2, 0.25) == 3

    def test_surrogate_never_exceeds(self):
        assert effective_dimension(Canonical(1, 1), INF, 2, 1.0) == 0

    def test_monotone_in_eps(self):
        m = Canonical(1.3, 2.0)
        assert effective_dimension(m, 2, 2, 0.05) >= effective_dimension(m, 2, 2, 0.1)

    def test_rising_surrogate(self):
        # 1/q - 1/p = 1/2 > 0 makes the surrogate sqrt(d) mu_d hump-shaped
        m = Canonical(1, 1)
        d = effective_dimension(m, INF, 2, 0.3)
        assert math.sqrt(d) / d > 0.3 >= math.sqrt(d + 1) / (d + 1)


class TestSumExpansion:
    def test_single_axis(self):
        exact, _ = sum_expansion_check(1.0, 1.25, 1.0, 1.0, 1)
        assert exact == 0.0

    def test_pure_power_stirling(self):
        rel = []
        for d in (100, 1000, 10000):
            exact, approx = sum_expansion_check(1.0, 1.5, 1.0, 0.0, d)
            assert approx == pytest.approx(d / LN2)
            rel.append(abs(exact - approx) / d)
        assert rel[0] > rel[1] > rel[2]

    def test_second_term_rate(self):
        vals = []
        for d in (10**3, 10**4, 10**5):
            exact, approx = sum_expansion_check(1.0, 1.25, 1.0, 1.0, d)
            vals.append(abs(exact - approx) / d**0.75)
        assert vals[0] > vals[1] > vals[2]

    def test_exponent_guard(self):
        with pytest.raises(EntropyError):
            sum_expansion_check(1.0, 2.5, 1.0, 1.0, 10)


class TestInvertSeries:
    def test_pure_power_exact_inverse(self):
        # g = c1 u^-a1 inverts exactly
        u = invert_series(2.0, 3.0, 5.0, 0.0, 0.01)
        assert 5.0 * u**-2.0 == pytest.approx(0.01, rel=1e-12)

    def test_round_trip_residual_shrinks(self):
        a1, a2, c1, c2 = 1.0, 1.4, 1.0, 0.7

        def forward(u):
            return c1 * u**-a1 + c2 * u**-a2

        rel = []
        for g in (1e-2, 1e-3, 1e-4):
            u = invert_series(a1, a2, c1, c2, g)
            rel.append(abs(forward(u) - g) / g)
        assert rel[0] > rel[1] > rel[2]

    def test_correction_sign(self):
        base = invert_series(1.0, 1.5, 1.0, 0.0, 1e-3)
        assert invert_series(1.0, 1.5, 1.0, 0.5, 1e-3) > base
        assert invert_series(1.0, 1.5, 1.0, -0.5, 1e-3) < base


def test_gamma_pqb_unit_when_p_equals_q():
    assert gamma_pqb(2, 2, 1.7) == 1.0
    # p = inf, q = 2, b = 1: (b / (b + 1/p - 1/q))^(1/q - 1/p) = 2^(1/2)
    assert gamma_pqb(INF, 2, 1.0) == pytest.approx(math.sqrt(2.0), rel=1e-14)
