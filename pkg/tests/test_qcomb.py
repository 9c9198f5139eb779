"""Carry sets, (q-)binomials, q-Lucas reduction, valuations, totient."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qaltsum.cyclo import CycloFactorization, cyclotomic, expand
from qaltsum.polycore import ONE, ZERO, IntPoly, InvalidArgument, divexact
from qaltsum.qcomb import (
    binom,
    dset,
    euler_phi,
    nu_p_binom,
    nu_p_int,
    qbinom,
    qbinom_factored,
    qlucas_check,
)

from oracles import legendre_nu, pascal_binom, phi_brute, qbinom_qpascal


class TestDSet:
    def test_examples(self):
        assert dset(4, 2).members == (3, 4)
        assert dset(9, 0).members == ()
        assert dset(6, 3).members == (2, 4, 5, 6)

    def test_out_of_range_k(self):
        assert dset(5, -1).members == ()
        assert dset(5, 7).members == ()
        assert dset(5, 5).members == ()

    @given(st.integers(0, 120), st.integers(-5, 125))
    def test_membership_definition(self, n, k):
        ds = dset(n, k)
        expected = {
            d
            for d in range(2, n + 1)
            if 0 < k < n and n // d > k // d + (n - k) // d
        }
        assert set(ds.members) == expected
        assert list(ds.members) == sorted(ds.members)

    @given(st.integers(0, 120), st.integers(0, 120))
    def test_symmetry(self, n, k):
        assert dset(n, k).members == dset(n, n - k).members

    @given(st.integers(0, 80), st.integers(0, 80))
    def test_totient_degree_sum(self, n, k):
        # sum of phi over the carry set equals the q-binomial degree k(n-k)
        if 0 <= k <= n:
            assert sum(euler_phi(d) for d in dset(n, k)) == k * (n - k)

    def test_contains_and_str(self):
        ds = dset(6, 3)
        assert 4 in ds and 3 not in ds
        assert str(ds) == "{2, 4, 5, 6}"

    def test_negative_n_rejected(self):
        with pytest.raises(InvalidArgument):
            dset(-1, 0)


class TestBinom:
    def test_examples(self):
        assert binom(4, 2) == 6
        assert binom(2, -1) == 0
        assert binom(8, 3) == 56

    def test_against_pascal_oracle(self):
        for n in range(15):
            for k in range(-2, n + 3):
                assert binom(n, k) == pascal_binom(n, k), (n, k)

    def test_rejects_negative_n(self):
        with pytest.raises(InvalidArgument):
            binom(-1, 0)


class TestQBinom:
    def test_examples(self):
        assert qbinom(2, 1) == IntPoly("1 + q")
        assert qbinom(4, 2) == IntPoly("1 + q + 2*q^2 + q^3 + q^4")
        assert qbinom(3, 5) == ZERO
        assert qbinom(7, 0) == ONE
        assert qbinom(3, -2) == ZERO

    def test_against_qpascal_oracle(self):
        for n in range(16):
            for k in range(n + 1):
                assert list(qbinom(n, k).coeffs) == qbinom_qpascal(n, k), (n, k)

    def test_degree(self):
        for n in range(25):
            for k in range(n + 1):
                assert qbinom(n, k).degree == k * (n - k) or (
                    k * (n - k) == 0 and qbinom(n, k) == ONE
                )

    def test_eval_at_one_is_binom(self):
        for n in range(30):
            for k in range(n + 1):
                assert qbinom(n, k).evaluate(1) == binom(n, k)

    def test_symmetry(self):
        for n in range(25):
            for k in range(n + 1):
                assert qbinom(n, k) == qbinom(n, n - k)

    def test_q_pascal_recurrence(self):
        for n in range(1, 41):
            for k in range(n + 1):
                rhs = qbinom(n - 1, k - 1) + qbinom(n - 1, k).shifted(k)
                assert qbinom(n, k) == rhs, (n, k)

    def test_coefficients_nonnegative_unimodal_sample(self):
        cs = qbinom(12, 5).coeffs
        assert min(cs) >= 1
        peak = cs.index(max(cs))
        assert all(cs[i] <= cs[i + 1] for i in range(peak))
        assert all(cs[i] >= cs[i + 1] for i in range(peak, len(cs) - 1))


class TestQBinomFactored:
    def test_examples(self):
        assert qbinom_factored(4, 2) == CycloFactorization({3: 1, 4: 1})
        assert qbinom_factored(9, 0) == CycloFactorization({})
        f = qbinom_factored(6, 3)
        assert f == CycloFactorization({2: 1, 4: 1, 5: 1, 6: 1})
        assert expand(f).evaluate(1) == 20

    def test_rejects_out_of_range(self):
        with pytest.raises(InvalidArgument):
            qbinom_factored(4, 5)
        with pytest.raises(InvalidArgument):
            qbinom_factored(4, -1)

    def test_expansion_equals_product_formula(self):
        for n in range(31):
            for k in range(n + 1):
                assert expand(qbinom_factored(n, k)) == qbinom(n, k), (n, k)


class TestQLucas:
    def test_examples(self):
        assert qlucas_check(3, 1, 2, 0, 2)
        assert qlucas_check(2, 2, 0, 1, 0)
        assert qlucas_check(5, 0, 4, 0, 2)

    def test_rejects(self):
        with pytest.raises(InvalidArgument):
            qlucas_check(1, 0, 0, 0, 0)
        with pytest.raises(InvalidArgument):
            qlucas_check(3, 1, 3, 0, 0)
        with pytest.raises(InvalidArgument):
            qlucas_check(3, -1, 0, 0, 0)

    def test_against_direct_polynomial_route(self):
        # the residue recurrence must agree with literal divisibility of
        # qb(x1 d + x2, y1 d + y2) - C(x1, y1) qb(x2, y2) by Phi_d
        for d in range(2, 7):
            for x1 in range(4):
                for y1 in range(4):
                    for x2 in range(d):
                        for y2 in range(d):
                            delta = qbinom(x1 * d + x2, y1 * d + y2) - binom(
                                x1, y1
                            ) * qbinom(x2, y2)
                            direct = _divides(delta, cyclotomic(d))
                            assert qlucas_check(d, x1, x2, y1, y2) == direct

    def test_small_sweep_holds(self):
        assert all(
            qlucas_check(d, x1, x2, y1, y2)
            for d in range(2, 9)
            for x1 in range(5)
            for y1 in range(5)
            for x2 in range(d)
            for y2 in range(d)
        )


def _divides(a, b):
    if not a:
        return True
    try:
        divexact(a, b)
    except Exception:
        return False
    return True


class TestValuations:
    def test_nu_p_binom_examples(self):
        assert nu_p_binom(10, 5, 3).value == 2
        assert nu_p_binom(4, 2, 5).value == 0
        assert nu_p_binom(4, 2, 2).value == 1

    def test_nu_p_binom_rejects_composite(self):
        with pytest.raises(InvalidArgument):
            nu_p_binom(10, 5, 6)

    def test_against_legendre_oracle(self):
        for n in range(61):
            for k in range(n + 1):
                for p in (2, 3, 5, 7, 11):
                    assert nu_p_binom(n, k, p).value == legendre_nu(n, k, p), (n, k, p)

    def test_against_actual_factorization(self):
        for n in range(1, 40):
            for k in range(n + 1):
                c = math.comb(n, k)
                for p in (2, 3, 5):
                    e = 0
                    while c % p ** (e + 1) == 0:
                        e += 1
                    assert nu_p_binom(n, k, p).value == e

    def test_nu_p_int_examples(self):
        assert nu_p_int(90, 3).value == 2
        assert nu_p_int(0, 7).is_infinite
        assert nu_p_int(1, 2).value == 0
        assert nu_p_int(-24, 2).value == 3

    def test_nu_p_int_rejects_composite(self):
        with pytest.raises(InvalidArgument):
            nu_p_int(10, 4)

    def test_infinity_comparisons(self):
        assert nu_p_int(0, 5).value > 10**9


class TestEulerPhi:
    def test_examples(self):
        assert euler_phi(1) == 1
        assert euler_phi(12) == 4
        assert euler_phi(70) == 24

    def test_against_coprime_count(self):
        for n in range(1, 201):
            assert euler_phi(n) == phi_brute(n), n

    def test_rejects_zero(self):
        with pytest.raises(InvalidArgument):
            euler_phi(0)


@settings(max_examples=60)
@given(st.integers(0, 60), st.integers(0, 60))
def test_qbinom_eval_matches_binom_property(n, k):
    assert qbinom(n, k).evaluate(1) == binom(n, k)
