import math

import pytest

from colim.confluence import SearchBudget, search_confluence
from colim.diagrams import SequenceDiagram
from colim.invariants import (
    CONCLUSIVE,
    INDICATIVE,
    SupernaturalNumber,
    colimit_rank,
    noniso_evidence,
    steinitz,
)
from colim.matrices import Matrix

from conftest import rank1

INF = math.inf


class TestSteinitz:
    def test_constant_ones(self):
        assert steinitz(rank1([1, 1])).as_dict() == {}
        assert str(steinitz(rank1([1, 1]))) == "1"

    def test_doubling_periodic(self):
        assert steinitz(rank1([2, 2], period=(0, 1))).as_dict() == {2: INF}

    def test_prefix_and_period(self):
        got = steinitz(rank1([12, 5], period=(1, 1)))
        assert got.as_dict() == {2: 2, 3: 1, 5: INF}

    def test_prefix_only_sums_valuations(self):
        assert steinitz(rank1([4, 6])).as_dict() == {2: 3, 3: 1}

    def test_sign_ignored(self):
        assert steinitz(rank1([-2, 2])).as_dict() == {2: 2}

    def test_rejects_higher_rank(self):
        seq = SequenceDiagram("plain", [2, 2], [Matrix.identity(2)])
        with pytest.raises(ValueError):
            steinitz(seq)

    def test_rejects_zero_multiplier(self):
        with pytest.raises(ValueError):
            steinitz(rank1([0]))

    def test_additive_under_concatenation(self, rng):
        for _ in range(20):
            ms1 = [rng.randint(1, 30) for _ in range(rng.randint(1, 3))]
            ms2 = [rng.randint(1, 30) for _ in range(rng.randint(1, 3))]
            s1 = steinitz(rank1(ms1)).as_dict()
            s2 = steinitz(rank1(ms2)).as_dict()
            both = steinitz(rank1(ms1 + ms2)).as_dict()
            merged = dict(s1)
            for p, e in s2.items():
                merged[p] = merged.get(p, 0) + e
            assert both == merged


class TestEquivalence:
    def test_is_equivalence_relation(self, rng):
        pool = []
        for _ in range(12):
            d = {}
            for p in (2, 3, 5):
                kind = rng.randint(0, 2)
                if kind == 1:
                    d[p] = rng.randint(1, 4)
                elif kind == 2:
                    d[p] = INF
            pool.append(SupernaturalNumber.from_dict(d))
        for a in pool:
            assert a.equivalent(a)
            for b in pool:
                assert a.equivalent(b) == b.equivalent(a)
                for c in pool:
                    if a.equivalent(b) and b.equivalent(c):
                        assert a.equivalent(c)

    def test_finite_differences_do_not_matter(self):
        a = SupernaturalNumber.from_dict({2: 3, 3: INF})
        b = SupernaturalNumber.from_dict({2: 1, 3: INF, 7: 2})
        assert a.equivalent(b)
        c = SupernaturalNumber.from_dict({2: INF, 3: INF})
        assert not a.equivalent(c)


class TestColimitRank:
    def test_rank_growth_then_identity_period(self):
        seq = SequenceDiagram(
            "plain", [1, 2, 2], [Matrix([[1], [0]]), Matrix.identity(2)], True, (1, 1)
        )
        assert colimit_rank(seq) == (2, True)

    def test_doubling(self):
        assert colimit_rank(rank1([2, 2], period=(0, 1))) == (1, True)

    def test_prefix_only_not_stabilized(self):
        seq = SequenceDiagram(
            "plain", [1, 2], [Matrix([[1], [0]])], True, None
        )
        assert colimit_rank(seq) == (2, False)

    def test_refuses_non_mono(self):
        with pytest.raises(ValueError):
            colimit_rank(rank1([2, 2], mono=False))


class TestNonIsoEvidence:
    def test_x2_vs_x3_conclusive(self):
        report = noniso_evidence(rank1([2, 2], period=(0, 1)), rank1([3, 3], period=(0, 1)))
        assert report.conclusive
        assert any("2^inf" in e.message and "3^inf" in e.message for e in report.entries)

    def test_x2_vs_x4_empty(self):
        report = noniso_evidence(rank1([2, 2], period=(0, 1)), rank1([4, 4], period=(0, 1)))
        assert report.empty

    def test_stabilized_rank_mismatch(self):
        one = rank1([1, 1], period=(0, 1))
        two = SequenceDiagram(
            "plain", [2, 2], [Matrix.identity(2)], True, (0, 1)
        )
        report = noniso_evidence(one, two)
        assert any(e.strength == CONCLUSIVE and "rank" in e.message for e in report.entries)

    def test_prefix_divergence_is_only_indicative(self):
        report = noniso_evidence(rank1([4, 4]), rank1([3, 3]))
        assert not report.conclusive
        assert any(e.strength == INDICATIVE for e in report.entries)
        assert all("cannot refute" in e.message for e in report.entries if e.strength == INDICATIVE)

    def test_consistent_with_found_certificates(self):
        pairs = [
            (rank1([2, 2], period=(0, 1)), rank1([4, 4], period=(0, 1))),
            (rank1([6, 6], period=(0, 1)), rank1([6, 6], period=(0, 1))),
        ]
        for a, b in pairs:
            cert = search_confluence(a, b, SearchBudget(3, 8, 12, 200000))
            assert cert is not None
            assert not noniso_evidence(a, b).conclusive
