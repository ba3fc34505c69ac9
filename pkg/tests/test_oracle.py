import random

import pytest

from chordtri.decompose import ALGORITHMS, TriangularSystem, decompose
from chordtri.errors import DomainError, ResourceError
from chordtri.oracle import (check_systems, enumerate_zeros, reduce_mod, verify_decomposition,
                             zeros_of_system)
from gen_systems import random_system
from helpers import ILLUSTRATIVE, X4, poly, polys, ring_of


def points(ps):
    return list(ps.points)


class TestEnumeration:
    def test_single_variable_equation(self):
        R = ring_of(["x1", "x2"], 3)
        assert points(enumerate_zeros([poly("x1", R)], 3)) == [(0, 0), (0, 1), (0, 2)]

    def test_hyperbola(self):
        R = ring_of(["x1", "x2"], 3)
        assert points(enumerate_zeros([poly("x1*x2 - 1", R)], 3)) == [(1, 1), (2, 2)]

    def test_empty_system_is_everything(self):
        assert len(enumerate_zeros([], 3, 2)) == 9

    def test_empty_system_needs_dimension(self):
        with pytest.raises(DomainError):
            enumerate_zeros([], 3)

    def test_sum_of_squares_mod_5(self):
        R = ring_of(["x1"], 5)
        assert points(enumerate_zeros([poly("x1^2 + 1", R)], 5)) == [(2,), (3,)]

    def test_cap(self):
        R = ring_of(X4, 13)
        with pytest.raises(ResourceError):
            enumerate_zeros([poly("x1", R)], 13, cap=1000)

    def test_field_mismatch(self):
        with pytest.raises(DomainError):
            enumerate_zeros([poly("x1", ring_of(["x1"]))], 5)

    def test_union_of_systems_is_intersection(self):
        rng = random.Random(31)
        for _ in range(100):
            F, R, p = random_system(rng)
            cut = rng.randint(0, len(F))
            A, B = F[:cut], F[cut:]
            assert enumerate_zeros(F, p) == enumerate_zeros(A, p, R.n) & enumerate_zeros(B, p, R.n)


class TestSystemZeros:
    def test_with_inequation(self):
        R = ring_of(["x1", "x2"], 3)
        S = TriangularSystem((poly("x1", R),), (poly("x2", R),))
        assert points(zeros_of_system(S, 3)) == [(0, 1), (0, 2)]

    def test_regular_example(self):
        R = ring_of(["x1", "x2"], 5)
        S = TriangularSystem((poly("x2 + x1", R),), (poly("x2 - x1", R),))
        assert points(zeros_of_system(S, 5)) == [(1, 4), (2, 3), (3, 2), (4, 1)]

    def test_zero_inequation_kills_everything(self):
        R = ring_of(["x1", "x2"], 5)
        S = TriangularSystem((poly("x1", R),), (R.zero(),))
        assert len(zeros_of_system(S, 5)) == 0


class TestVerify:
    @pytest.mark.parametrize("alg", ALGORITHMS)
    def test_illustrative_passes(self, alg):
        rep = verify_decomposition(polys(ILLUSTRATIVE, X4), alg)
        assert rep.status == "pass"
        assert [c.p for c in rep.checks] == [5, 7, 11, 13]
        assert all(not c.missing and not c.extra for c in rep.checks)

    def test_dropping_a_system_is_caught(self):
        rep = verify_decomposition(polys(ILLUSTRATIVE, X4), "wang", mutate=lambda s: s[1:])
        assert rep.status == "fail"
        assert any(c.missing for c in rep.checks)

    def test_extra_system_is_caught(self):
        F = polys("x1^2 + 1", ["x1"])

        def bogus(systems):
            return systems + [TriangularSystem((poly("x1", systems[0].T[0].ring),), ())]

        rep = verify_decomposition(F, "regser", mutate=bogus)
        assert rep.status == "fail" and rep.checks[0].extra == [(0,)]

    @pytest.mark.parametrize("alg", ALGORITHMS)
    def test_sum_of_squares_mod_5(self, alg):
        R = ring_of(["x1"], 5)
        F = [poly("x1^2 + 1", R)]
        res = decompose(F, alg)
        check = check_systems(F, res.systems, 5)
        assert check.status == "pass" and check.zeros == 2

    def test_all_primes_skipped_is_inconclusive(self):
        F = polys("1/35*x1 + 1", ["x1"])
        with pytest.warns(RuntimeWarning):
            rep = verify_decomposition(F, "wang", primes=[5, 7])
        assert rep.status == "inconclusive" and not rep.passed

    def test_one_prime_skipped(self):
        F = polys("1/5*x1 + 1", ["x1"])
        with pytest.warns(RuntimeWarning):
            rep = verify_decomposition(F, "srs", primes=[5, 7])
        assert [c.status for c in rep.checks] == ["skipped", "pass"]
        assert rep.status == "pass"

    def test_report_json_shape(self):
        d = verify_decomposition(polys(ILLUSTRATIVE, X4), "wang", primes=[5]).to_dict()
        assert d["status"] == "pass" and d["primes"][0]["p"] == 5

    def test_reduce_mod(self):
        (f,) = reduce_mod(polys("1/2*x1 + 6", ["x1"]), 7)
        assert f == poly("4*x1 - 1", ring_of(["x1"], 7))


@pytest.mark.parametrize("alg", ALGORITHMS)
def test_random_systems_small_primes(alg):
    rng = random.Random(32)
    done = 0
    for _ in range(80):
        F, R, p = random_system(rng, primes=(3, 5, 7))
        try:
            res = decompose(F, alg, ring=R, record=False, time_limit=5)
        except ResourceError:
            continue
        check = check_systems(F, res.systems, p)
        assert check.status == "pass", (F, check.missing, check.extra)
        done += 1
    assert done >= 75
