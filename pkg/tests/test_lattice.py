import hypothesis.strategies as st
import pytest
from hypothesis import given

from triplepoint import lattice as L
from triplepoint.lattice import F0, F1, SurfaceClass

EXCLUDED = {(3, 1), (4, 1)}
PAIRS = [(p, n) for p in range(3, 13) for n in range(1, 5) if (p, n) not in EXCLUDED]

classes = st.builds(SurfaceClass, st.sampled_from([F0, F1]),
                    st.integers(-6, 6), st.integers(-6, 6))


def same_kind(kind):
    return st.builds(SurfaceClass, st.just(kind), st.integers(-6, 6), st.integers(-6, 6))


class TestIntersection:
    def test_examples(self):
        assert L.intersect(L.sigma(F1), L.sigma(F1)) == -1
        E0 = L.anticanonical(F0)
        for l in range(1, 6):
            H = SurfaceClass(F0, 1, l)
            assert L.intersect(H, E0) == 2 * l + 2
        assert L.intersect(E0, E0) == 8
        assert L.intersect(L.anticanonical(F1), L.anticanonical(F1)) == 8

    def test_kind_mismatch(self):
        with pytest.raises(ValueError):
            L.intersect(L.sigma(F0), L.sigma(F1))

    @given(st.sampled_from([F0, F1]).flatmap(lambda k: st.tuples(same_kind(k), same_kind(k), same_kind(k))),
           st.integers(-4, 4))
    def test_symmetric_bilinear(self, abc, k):
        a, b, c = abc
        assert L.intersect(a, b) == L.intersect(b, a)
        assert L.intersect(a + b, c) == L.intersect(a, c) + L.intersect(b, c)
        assert L.intersect(k * a, b) == k * L.intersect(a, b)


class TestGenus:
    def test_examples(self):
        assert L.arithmetic_genus(L.anticanonical(F0)) == 1
        assert L.arithmetic_genus(L.anticanonical(F1)) == 1
        assert L.arithmetic_genus(L.sigma(F0)) == 0
        for l in range(1, 6):
            assert L.arithmetic_genus(SurfaceClass(F0, 1, l)) == 0
            assert L.arithmetic_genus(SurfaceClass(F1, 1, l)) == 0

    @given(classes)
    def test_integral(self, c):
        assert isinstance(L.arithmetic_genus(c), int)


class TestScrolls:
    def test_decomposition_examples(self):
        assert L.decomposition_check(5, 2).ok
        assert L.decomposition_check(5, 2).data["classes"] == {"C": (1, 0), "D": (0, 1), "L": (1, 3)}
        assert L.decomposition_check(4, 2).data["classes"] == {"C": (1, 1), "D": (0, 1), "L": (1, 2)}
        assert L.decomposition_check(7, 1).ok

    def test_degree_examples(self):
        r = L.degree_on_E_check(5, 1)
        assert r.ok and r.checks[0].lhs == 4
        r = L.degree_on_E_check(4, 1, allow_excluded=True)
        assert r.ok and r.checks[0].lhs == 3 and r.data["tacnode_order"] == 0

    @pytest.mark.parametrize("p, n", PAIRS)
    def test_all_pairs(self, p, n):
        assert L.decomposition_check(p, n).ok
        assert L.degree_on_E_check(p, n).ok

    @pytest.mark.parametrize("p, n", sorted(EXCLUDED))
    def test_excluded(self, p, n):
        with pytest.raises(L.ExcludedPairError, match="n >= 2"):
            L.decomposition_check(p, n)


class TestCounts:
    def test_pa_dim(self):
        assert L.pa_dim_nH(5, 1) == {"pa": 5, "dim": 5}
        assert L.pa_dim_nH(4, 2)["dim"] == 13
        assert L.pa_dim_nH(2, 1)["dim"] == 2

    def test_targets(self):
        assert L.tuple_targets(5, 1) == 0
        assert L.tuple_targets(6, 1) == 1
        assert L.tuple_targets(3, 2) == 0
        with pytest.raises(L.ExcludedPairError):
            L.tuple_targets(4, 1)

    def test_negative_target(self):
        with pytest.raises(ValueError):
            L.tuple_targets(3, 1)

    def test_genus_five_budget(self):
        (b,) = L.enumerate_budgets(5, 1, 2)
        assert b.d == (0,)
        assert b.count(L.TRIPLE) == 1 and b.count(L.NODE) == 1
        assert L.es_expected_dim(5, b) == 0

    def test_partitions(self):
        assert [b.d for b in L.enumerate_budgets(6, 1, 2)] == [(1,)]
        assert sorted(b.d for b in L.enumerate_budgets(5, 2, 3)) == [(0, 2), (2, 1), (4, 0)]

    def test_expected_dim_trivial(self):
        assert L.es_expected_dim(7, []) == 7
        assert L.es_expected_dim(1, [(L.NODE, 1)]) == 0
        with pytest.raises(ValueError):
            L.es_expected_dim(9, [(L.Sing("quadruple"), 1)])

    @pytest.mark.parametrize("p, n", [pn for pn in PAIRS if pn != (3, 1)])
    def test_budgets_regular(self, p, n):
        dim = L.pa_dim_nH(p, n)["dim"]
        prev = 0
        for m in range(2, 6):
            budgets = L.enumerate_budgets(p, n, m)
            assert len(budgets) >= prev
            prev = len(budgets)
            for b in budgets:
                assert sum((k - 1) * dk for k, dk in zip(range(2, m + 1), b.d)) == L.tuple_targets(p, n)
                assert L.es_expected_dim(dim, b) == 0


class TestLedger:
    def test_chain_steps(self):
        chains = L.claimed_chains()
        first, second = chains["surjectivity"]
        assert first.identity
        assert not second.identity
        assert str(second.difference) == "2*n*l - 4"
        assert all(s.identity for s in chains["T_prime"])

    def test_five_two(self):
        r = L.proof_ledger(5, 2)
        assert r.ok
        assert r.total == 14 and r.dim_nH + 1 == 18
        assert r.total_with_tacnode == 19
        assert len(r.discrepancies) == 1

    def test_n_one(self):
        for l in range(2, 7):
            r = L.proof_ledger(2 * l + 1, 1)
            assert r.total == 6
            assert (r.total == r.dim_nH + 1) == (l == 2)

    def test_even_is_report_only(self):
        r = L.proof_ledger(6, 2)
        assert r.parity == "even" and r.chains == {} and r.discrepancies == []
        assert r.inventory["nodes off E (L_i meets C_i^j)"] == 2 * 1 * (2 * 3 - 2)

    @pytest.mark.parametrize("n", range(1, 7))
    @pytest.mark.parametrize("l", range(1, 7))
    def test_expansion(self, n, l):
        if (2 * l + 1, n) == (3, 1):
            return
        r = L.proof_ledger(2 * l + 1, n)
        assert r.ok
        assert r.total == 2 * n * n * l - 2 * n * l + 6
        assert (r.total == 2 * n * n * l + 2) == (n * l == 2)


class TestBlowup:
    def test_values(self):
        r = L.blowup_restriction(2)
        assert (r.cls.s, r.cls.f, r.effective, r.minimal) == (2, 1, True, True)
        fixed, moving = r.decomposition
        assert (fixed.s, fixed.f) == (1, 0) and (moving.s, moving.f) == (1, 1)
        assert not L.blowup_restriction(1).effective
        assert L.blowup_restriction(0).cls.f == -3 and not L.blowup_restriction(0).effective
        assert L.blowup_restriction(3).effective and not L.blowup_restriction(3).minimal

    def test_zero_class_effective(self):
        assert L.effective(SurfaceClass(F1, 0, 0))
