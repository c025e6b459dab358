from fractions import Fraction

import numpy as np
import pytest

from slcount import engine
from slcount.bounds import BoundKind
from slcount.engine import (
    ConeReport,
    adjoint_weight,
    admissible_weights,
    bound_exponent,
    central_index_condition,
    cone_report,
    exponent_report,
    kappa0,
    sigma,
    verify_range,
    volume_exponent,
)

OH = BoundKind.OH
HC = BoundKind.HARISH_CHANDRA
HT = BoundKind.HOWE_TAN


def test_volume_exponent_examples():
    assert volume_exponent((1, 0, 1), 3) == (Fraction(1, 4), frozenset({2}))
    assert volume_exponent((1, 1), 2) == (Fraction(1, 2), frozenset({1, 2}))
    assert volume_exponent((1, 0), 2) == (Fraction(1, 6), frozenset({2}))


def test_volume_exponent_rejects_zero_weight():
    with pytest.raises(ValueError):
        volume_exponent((0, 0, 0), 3)


def test_bound_exponent_examples():
    assert bound_exponent((1, 0, 1), OH, 3) == (Fraction(1, 3), frozenset({2}))
    assert bound_exponent((1, 1), OH, 2) == (Fraction(2, 3), frozenset({1, 2}))


def test_bound_exponent_zero_theta_is_volume_exponent():
    for n, q in [(3, (1, 0, 1)), (4, (0, 2, 1, 0)), (2, (3, 1))]:
        zero = tuple(Fraction(0) for _ in range(n))
        assert bound_exponent(q, zero, n) == volume_exponent(q, n)


def test_kappa_examples():
    rep = exponent_report((1, 0, 1), OH, 3)
    assert rep.kappa == Fraction(1, 40)
    assert rep.kappa_ratio == Fraction(3, 2)

    rep = exponent_report((1, 1), OH, 2)
    assert rep.kappa == kappa0(2) == Fraction(1, 24)

    rep = exponent_report((1, 0, 0, 1), OH, 4)
    assert rep.kappa_ratio == Fraction(4, 3)


def test_kappa_harish_chandra_always_kappa0():
    rng = np.random.default_rng(3)
    for n in (2, 3, 7, 16):
        for _ in range(20):
            q = rng.integers(0, 6, size=n)
            q[int(rng.integers(0, n))] += 1
            rep = exponent_report(tuple(q), HC, n)
            assert rep.kappa == kappa0(n)
            # report invariant: kappa = 2n(1 - m1/m1') kappa0 exactly
            assert rep.kappa == 2 * n * (1 - rep.m1 / rep.m1_prime) * rep.kappa0


def test_kappa_howe_tan_at_most_kappa0():
    rng = np.random.default_rng(4)
    for n in (2, 5, 12):
        for _ in range(30):
            q = rng.integers(0, 6, size=n)
            q[int(rng.integers(0, n))] += 1
            assert exponent_report(tuple(q), HT, n).kappa <= kappa0(n)


def test_cone_report_examples():
    rep = cone_report((1, 0, 1), 3)
    assert rep.cones == frozenset({2})
    assert rep.sigma[2] == Fraction(3, 2)

    assert cone_report((1, 0, 0), 3).cones == frozenset()


def test_cone_report_central_fundamental_weight_rank5():
    # lambda_3 at rank 5 minimizes lambda/psi at the edge indices {1,5}:
    # ratios are (1/9, 1/7, 1/5, 1/7, 1/9), so it lies in no interior cone.
    m1p, argmin = bound_exponent((0, 0, 1, 0, 0), OH, 5)
    assert m1p == Fraction(1, 9)
    assert argmin == frozenset({1, 5})
    assert cone_report((0, 0, 1, 0, 0), 5).cones == frozenset()
    # the adjoint weight is the interior witness at the central index
    assert cone_report(adjoint_weight(5), 5).cones == frozenset({3})


def test_sigma_symmetry():
    for n in (4, 9, 10):
        rep = cone_report(adjoint_weight(n), n)
        for i in range(2, n):
            assert rep.sigma[i] == rep.sigma[n + 1 - i] == sigma(i, n)


def test_admissible_weights():
    assert admissible_weights(3) == [(1, 0, 1)]
    assert admissible_weights(7) == [(1, 0, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 1, 0)]
    assert admissible_weights(4) == [(1, 0, 0, 1)]
    assert admissible_weights(2) == []


def test_central_index_condition_examples():
    assert central_index_condition((1, 0, 1), 3) == (True, 2)
    assert central_index_condition((1, 1), 2) == (True, 2)
    ok, witness = central_index_condition((1, 0, 0), 3)
    assert not ok
    assert witness["min_indices"] == [3]


def test_scaling_invariance():
    rng = np.random.default_rng(5)
    for n in (2, 4, 9):
        for _ in range(10):
            q = rng.integers(0, 5, size=n)
            q[int(rng.integers(0, n))] += 1
            c = int(rng.integers(2, 9))
            base = exponent_report(tuple(q), OH, n)
            scaled = exponent_report(tuple(c * q), OH, n)
            assert scaled.m1 == c * base.m1
            assert scaled.min_set == base.min_set
            assert scaled.min_set_prime == base.min_set_prime
            assert scaled.kappa == base.kappa


def test_flip_symmetry_of_kappa():
    rng = np.random.default_rng(6)
    for n in (3, 6, 11):
        for _ in range(10):
            q = rng.integers(0, 5, size=n)
            q[int(rng.integers(0, n))] += 1
            a = exponent_report(tuple(q), OH, n)
            b = exponent_report(tuple(q[::-1]), OH, n)
            assert a.kappa == b.kappa
            assert {n + 1 - i for i in a.min_set} == set(b.min_set)


def test_kappa_upper_bound():
    rng = np.random.default_rng(7)
    for n in (3, 4, 8, 13):
        cap = Fraction(2 * n, n + 1 if n % 2 else n + 2) * kappa0(n)
        for _ in range(40):
            q = rng.integers(0, 7, size=n)
            q[int(rng.integers(0, n))] += 1
            assert exponent_report(tuple(q), OH, n).kappa <= cap


def test_report_json_rationals_are_p_over_q():
    d = exponent_report((1, 0, 1), OH, 3).to_json()
    assert d["kappa"] == "1/40"
    assert d["kappa_over_kappa0"] == "3/2"
    assert d["m1"] == "1/4"
    assert d["min_indices"] == [2]
    d = exponent_report((1, 1), OH, 2).to_json()
    assert d["kappa_over_kappa0"] == "1/1"


def test_bulk_matches_scalar():
    rng = np.random.default_rng(8)
    for n in (2, 5, 14, 23):
        Q = rng.integers(0, 51, size=(40, n), dtype=np.int64)
        Q[Q.sum(axis=1) == 0, 0] = 1
        bulk = engine._BulkExponents(Q, OH, n)
        for r in range(len(Q)):
            _, I = volume_exponent(tuple(Q[r]), n)
            _, Ip = bound_exponent(tuple(Q[r]), OH, n)
            assert {j + 1 for j in np.nonzero(bulk.mask_I[r])[0]} == set(I)
            assert {j + 1 for j in np.nonzero(bulk.mask_Ip[r])[0]} == set(Ip)


def test_verify_range_smoke_all_pass():
    results = verify_range(8, samples=50, seed=0)
    assert results
    bad = [r for r in results if r.status != "PASS"]
    assert bad == []


def test_verify_family_reports_adjoint_at_rank_two():
    results = verify_range(2, samples=10, seed=0)
    fam = [r for r in results if r.statement == "paired_weight_family"][0]
    assert fam.detail["adjoint"]["weight"] == [1, 1]
    assert fam.detail["adjoint"]["kappa_over_kappa0"] == "1/1"
