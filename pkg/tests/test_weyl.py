import pytest
from hypothesis import given
from hypothesis import strategies as st

from flagdivisor.weyl import (
    FlagType,
    Permutation,
    all_flags,
    all_permutations,
    boundary_p_elements,
    bruhat_leq,
    bruhat_leq_subword,
    check_reduced_suffixes,
    closed_form_atoms,
    closed_form_coatoms,
    coset_rep,
    gamma,
    gamma_by_bruhat,
    is_minimal_rep,
    length,
    longest_elements,
    lower_covers,
    lower_interval,
    minimal_reps,
    p_bruhat_leq,
    reduced_words,
    simple_reflection,
    top_element,
    upper_covers,
    word_name,
)


def perm(*window):
    return Permutation(window)


class TestPermutation:
    def test_invalid_window(self):
        with pytest.raises(ValueError):
            Permutation((1, 1, 2))
        with pytest.raises(ValueError):
            Permutation.parse("1,x")

    def test_composition_convention(self):
        s1, s2 = simple_reflection(3, 1), simple_reflection(3, 2)
        assert (s1 * s2).window == (2, 3, 1)
        assert (s2 * s1).window == (3, 1, 2)
        assert s1.compose(s2) == s1 * s2

    def test_mismatched_sizes(self):
        with pytest.raises(ValueError):
            perm(2, 1) * perm(1, 2, 3)
        with pytest.raises(ValueError):
            bruhat_leq(perm(2, 1), perm(1, 2, 3))

    @pytest.mark.parametrize("w, expected", [(perm(1, 2, 3), 0), (perm(2, 1, 3), 1), (perm(3, 2, 1), 3)])
    def test_length(self, w, expected):
        assert length(w) == expected

    @given(st.permutations(range(1, 6)))
    def test_inverse(self, window):
        w = Permutation(tuple(window))
        assert (w * w.inverse()).is_identity()
        assert length(w.inverse()) == length(w)

    def test_parse_and_str(self):
        assert str(Permutation.parse("3,1,4,2")) == "3,1,4,2"


class TestFlagType:
    def test_parse(self):
        flag = FlagType.parse("n=7;steps=3,6")
        assert flag == FlagType(7, (3, 6))
        assert str(flag) == "n=7;steps=3,6"
        assert flag.block_sizes == (3, 3, 1)
        assert flag.parabolic_indices == frozenset({1, 2, 4, 5})
        assert flag.label == "Fl(3,6;7)"

    @pytest.mark.parametrize("n, steps", [(4, ()), (4, (0, 2)), (4, (2, 4)), (5, (3, 2))])
    def test_invalid(self, n, steps):
        with pytest.raises(ValueError):
            FlagType(n, steps)

    def test_all_flags_count(self):
        assert len(all_flags(4)) == 7
        assert len(all_flags(7)) == 63


class TestLongestElements:
    def test_full_flag_s3(self):
        w0, wp = longest_elements(FlagType(3, (1, 2)))
        assert w0 == perm(3, 2, 1)
        assert wp.is_identity()

    def test_grassmannian(self):
        _, wp = longest_elements(FlagType(4, (2,)))
        assert wp == perm(2, 1, 4, 3)

    def test_length_of_top(self):
        flag = FlagType(7, (3, 6))
        w0, wp = longest_elements(flag)
        assert length(wp) == 3 + 3 + 0
        assert length(top_element(flag)) == 15


class TestBruhat:
    def test_identity_is_minimum(self):
        for v in all_permutations(4):
            assert bruhat_leq(Permutation.identity(4), v)

    def test_s1_below_s1s2(self):
        assert bruhat_leq(perm(2, 1, 3), perm(2, 3, 1))
        assert not bruhat_leq(perm(2, 3, 1), perm(2, 1, 3))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_subword_oracle(self, n):
        perms = all_permutations(n)
        for u in perms:
            for v in perms:
                assert bruhat_leq(u, v) == bruhat_leq_subword(u, v)

    @pytest.mark.slow
    def test_matches_subword_oracle_s5(self):
        perms = all_permutations(5)
        pairs = 0
        for u in perms:
            for v in perms:
                assert bruhat_leq(u, v) == bruhat_leq_subword(u, v)
                pairs += 1
        assert pairs == 14400

    def test_lower_interval(self):
        s1, s2 = simple_reflection(3, 1), simple_reflection(3, 2)
        assert lower_interval(s1 * s2) == {Permutation.identity(3), s1, s2, s1 * s2}
        assert len(lower_interval(perm(3, 2, 1))) == 6
        assert lower_interval(Permutation.identity(4)) == {Permutation.identity(4)}

    def test_covers_change_length_by_one(self):
        for w in all_permutations(4):
            for u in upper_covers(w):
                assert length(u) == length(w) + 1
                assert w in lower_covers(u)


class TestWords:
    def test_s3_names_in_order(self):
        assert [word_name(w) for w in all_permutations(3)] == ["id", "s1", "s2", "s1s2", "s2s1", "s1s2s1"]

    def test_reduced_words_multiply_back(self):
        w = perm(3, 1, 4, 2)
        words = reduced_words(w)
        assert words
        for word in words:
            assert len(word) == length(w)
            product = Permutation.identity(4)
            for letter in word:
                product = product * simple_reflection(4, letter)
            assert product == w

    def test_longest_element_of_s4_has_sixteen_words(self):
        assert len(reduced_words(perm(4, 3, 2, 1))) == 16

    def test_cap(self):
        assert len(reduced_words(perm(4, 3, 2, 1), cap=5)) == 5


class TestParabolic:
    def test_coset_rep_sorts_blocks(self):
        flag = FlagType(4, (2,))
        assert coset_rep(perm(4, 3, 2, 1), flag) == perm(3, 4, 1, 2)
        assert coset_rep(perm(4, 3, 2, 1), flag) == top_element(flag)

    def test_minimal_reps_count(self):
        # 4! / (2! 2!)
        assert len(minimal_reps(FlagType(4, (2,)))) == 6

    def test_p_order_refines_bruhat(self):
        flag = FlagType(3, (1,))
        perms = all_permutations(3)
        for u in perms:
            for v in perms:
                if p_bruhat_leq(u, v, flag):
                    assert bruhat_leq(u, v)

    def test_p_order_skips_steps_inside_a_block(self):
        flag = FlagType(3, (1,))
        # s2 only permutes inside the block {2, 3}
        assert not p_bruhat_leq(Permutation.identity(3), simple_reflection(3, 2), flag)
        assert p_bruhat_leq(Permutation.identity(3), simple_reflection(3, 1), flag)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_boundary_closed_forms(self, n):
        for flag in all_flags(n):
            atoms, coatoms = boundary_p_elements(flag)
            assert atoms == closed_form_atoms(flag)
            assert coatoms == closed_form_coatoms(flag)

    @pytest.mark.slow
    def test_boundary_closed_forms_n5(self):
        for flag in all_flags(5):
            atoms, coatoms = boundary_p_elements(flag)
            assert atoms == closed_form_atoms(flag)
            assert coatoms == closed_form_coatoms(flag)

    def test_coset_rep_example(self):
        flag = FlagType(4, (2,))
        assert coset_rep(perm(3, 1, 4, 2), flag) == perm(1, 3, 2, 4)
        assert not is_minimal_rep(perm(3, 1, 4, 2), flag)
        assert is_minimal_rep(perm(1, 3, 2, 4), flag)

    @given(st.permutations(range(1, 7)), st.sets(st.integers(1, 5), min_size=1))
    def test_coset_rep_splits_length(self, window, steps):
        w = Permutation(tuple(window))
        flag = FlagType(6, tuple(sorted(steps)))
        p = coset_rep(w, flag)
        assert length(w) == length(p) + length(p.inverse() * w)
        assert is_minimal_rep(p, flag)
        assert coset_rep(p, flag) == p
        for block in flag.blocks:
            values = [p(i) for i in block]
            assert values == sorted(values)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_coset_rep_splits_length_exhaustive(self, n):
        for flag in all_flags(n):
            for w in all_permutations(n):
                p = coset_rep(w, flag)
                assert length(w) == length(p) + length(p.inverse() * w)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_coset_rep_is_shortest_in_coset(self, n):
        for flag in all_flags(n):
            parabolic = [x for x in all_permutations(n) if all({x(i) for i in b} == set(b) for b in flag.blocks)]
            for w in all_permutations(n):
                coset = [w * x for x in parabolic]
                shortest = min(length(u) for u in coset)
                assert [u for u in coset if length(u) == shortest] == [coset_rep(w, flag)]
                assert is_minimal_rep(w, flag) == (length(w) == shortest)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_coset_rep_fixes_identity(self, n):
        for flag in all_flags(n):
            w0, _ = longest_elements(flag)
            assert coset_rep(Permutation.identity(n), flag).is_identity()
            assert coset_rep(w0, flag) == top_element(flag)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_parabolic_reflections_below_top(self, n):
        for flag in all_flags(n):
            identity = Permutation.identity(n)
            for beta in flag.parabolic_indices:
                s = simple_reflection(n, beta)
                assert p_bruhat_leq(s, top_element(flag), flag)
                assert not p_bruhat_leq(identity, s, flag)

    def test_reduced_suffixes(self):
        flag = FlagType(4, (1, 3))
        for w in minimal_reps(flag):
            assert check_reduced_suffixes(w, flag)
        with pytest.raises(ValueError):
            check_reduced_suffixes(perm(1, 3, 2, 4), FlagType(4, (1,)))


class TestGamma:
    @pytest.mark.parametrize(
        "window, expected",
        [
            ((1, 2, 3), set()),
            ((2, 1, 3), {1}),
            ((1, 3, 2), {2}),
            ((2, 3, 1), {1, 2}),
            ((3, 1, 2), {1, 2}),
            ((3, 2, 1), {1, 2}),
        ],
    )
    def test_s3(self, window, expected):
        assert gamma(Permutation(window)) == expected

    def test_matches_bruhat_definition(self):
        for w in all_permutations(4):
            assert gamma(w) == gamma_by_bruhat(w)

    @pytest.mark.parametrize("n", range(2, 8))
    def test_top_element_is_full(self, n):
        for flag in all_flags(n):
            assert gamma(top_element(flag)) == frozenset(range(1, n))
