import pytest

from colim.colimit import (
    ColimitElement,
    Trilean,
    cone_member,
    divisible,
    equal_at,
    eventual_equalizer,
    factor_through_stage,
    pushforward,
)
from colim.diagrams import SequenceDiagram, transition
from colim.matrices import Matrix

from conftest import random_diagram, rank1

FIB = SequenceDiagram("simplicial", [2, 2], [Matrix([[1, 1], [1, 0]])], False, (0, 1))
X2 = rank1([2, 2], period=(0, 1))


class TestEqualAt:
    def test_doubling_identification(self):
        assert equal_at(X2, ColimitElement(1, [1]), ColimitElement(2, [2]), 3) == Trilean.yes(2)

    def test_mono_distinct_at_same_stage(self):
        assert equal_at(X2, ColimitElement(1, [1]), ColimitElement(1, [2]), 3) == Trilean.no()

    def test_zero_map_identifies(self):
        seq = SequenceDiagram("plain", [1, 1], [Matrix([[0]])])
        assert equal_at(seq, ColimitElement(1, [1]), ColimitElement(1, [0]), 2) == Trilean.yes(2)

    def test_unknown_without_injectivity(self):
        seq = rank1([2, 2], mono=False)
        got = equal_at(seq, ColimitElement(1, [1]), ColimitElement(1, [0]), 3)
        assert got == Trilean.unknown(3)

    def test_pushforward_coherence(self, rng):
        for _ in range(25):
            seq = random_diagram(rng, stages=4)
            i = rng.randint(1, 4)
            j = rng.randint(i, 4)
            x = [rng.randint(-3, 3) for _ in range(seq.ranks[i - 1])]
            e = ColimitElement(i, x)
            assert equal_at(seq, e, pushforward(seq, e, j), j).is_yes

    def test_symmetry(self, rng):
        for _ in range(25):
            seq = random_diagram(rng, stages=4)
            e1 = ColimitElement(1, [rng.randint(-2, 2) for _ in range(seq.ranks[0])])
            e2 = ColimitElement(2, [rng.randint(-2, 2) for _ in range(seq.ranks[1])])
            assert equal_at(seq, e1, e2, 4) == equal_at(seq, e2, e1, 4)

    def test_vector_length_checked(self):
        with pytest.raises(ValueError):
            equal_at(X2, ColimitElement(1, [1, 2]), ColimitElement(1, [1]), 2)


class TestEventualEqualizer:
    def test_transition_itself(self):
        assert eventual_equalizer(X2, 1, 2, transition(X2, 1, 2), 5) == Trilean.yes(2)

    def test_zero_transitions_equalize(self):
        seq = SequenceDiagram("plain", [1, 1, 1], [Matrix([[0]]), Matrix([[0]])])
        assert eventual_equalizer(seq, 1, 1, Matrix([[3]]), 3) == Trilean.yes(2)

    def test_mono_definitive_no(self):
        assert eventual_equalizer(X2, 1, 1, Matrix([[5]]), 10) == Trilean.no()

    def test_shape_checked(self):
        with pytest.raises(ValueError):
            eventual_equalizer(X2, 1, 2, Matrix([[1, 2]]), 5)

    def test_yes_witness_rechecks(self, rng):
        for _ in range(25):
            seq = random_diagram(rng, stages=5, mono=True)
            i = rng.randint(1, 3)
            j = rng.randint(i, 4)
            got = eventual_equalizer(seq, i, j, transition(seq, i, j), 5)
            assert got == Trilean.yes(j)
            assert transition(seq, j, got.stage) * transition(seq, i, j) == transition(seq, i, got.stage)


class TestFactorThroughStage:
    def test_already_at_common_stage(self):
        seq = rank1([2, 2, 2], period=(0, 1))
        got = factor_through_stage(seq, [ColimitElement(3, [5])], 4)
        assert got == (3, Matrix([[5]]))

    def test_pushes_to_common_stage(self):
        got = factor_through_stage(X2, [ColimitElement(2, [1]), ColimitElement(3, [4])], 5)
        assert got == (3, Matrix([[2, 4]]))

    def test_simplicial_waits_for_nonnegative(self):
        got = factor_through_stage(FIB, [ColimitElement(1, [1, -1])], 5)
        assert got == (2, Matrix([[0], [1]]))

    def test_exhausted_returns_none(self):
        x2s = SequenceDiagram("simplicial", [1, 1], [Matrix([[2]])], False, (0, 1))
        assert factor_through_stage(x2s, [ColimitElement(1, [-1])], 6) is None

    def test_result_reproduces_images(self, rng):
        for _ in range(25):
            seq = random_diagram(rng, stages=4)
            images = [
                ColimitElement(s, [rng.randint(-3, 3) for _ in range(seq.ranks[s - 1])])
                for s in (rng.randint(1, 4), rng.randint(1, 4))
            ]
            i0, g = factor_through_stage(seq, images, 4)
            for k, e in enumerate(images):
                assert equal_at(seq, ColimitElement(i0, g.col(k)), e, 4).is_yes


class TestConeAndDivisible:
    def test_cone_examples(self):
        x2s = SequenceDiagram("simplicial", [1, 1], [Matrix([[2]])], False, (0, 1))
        assert cone_member(x2s, ColimitElement(1, [1]), 5) == Trilean.yes(1)
        assert cone_member(x2s, ColimitElement(1, [-1]), 5) == Trilean.unknown(5)
        assert cone_member(FIB, ColimitElement(1, [1, -1]), 5) == Trilean.yes(2)

    def test_cone_requires_simplicial(self):
        with pytest.raises(ValueError):
            cone_member(X2, ColimitElement(1, [1]), 3)

    def test_divisible_examples(self):
        assert divisible(X2, ColimitElement(1, [7]), 1, 5) == Trilean.yes(1)
        assert divisible(X2, ColimitElement(1, [1]), 2, 5) == Trilean.yes(2)
        x3 = rank1([3, 3], period=(0, 1))
        assert divisible(x3, ColimitElement(1, [1]), 2, 10) == Trilean.unknown(10)

    def test_divisible_rejects_zero_modulus(self):
        with pytest.raises(ValueError):
            divisible(X2, ColimitElement(1, [1]), 0, 5)

    def test_divisibility_witness_quotient(self):
        got = divisible(X2, ColimitElement(1, [3]), 4, 6)
        assert got == Trilean.yes(3)  # 3 * 2^2 = 12 = 4 * 3
