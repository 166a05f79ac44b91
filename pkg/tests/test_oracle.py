"""Flag oracle: enumeration, positions, chain counts, class sizes."""

import doctest
import random
from fractions import Fraction

import numpy as np
import pytest

import braidcount.oracle as oracle
from braidcount.oracle import (
    chain_count,
    flag_enumeration,
    generator_matrices,
    gl_order,
    jordan_type,
    position_matrices,
    relative_position,
    stack_count_bruteforce,
    unipotent_class_size,
    unipotent_rep,
)
from braidcount.chars import partitions


def test_doctests():
    failed, attempted = doctest.testmod(oracle)
    assert failed == 0 and attempted > 0


def test_flag_counts_match_bruhat_sum():
    for n, q in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3)]:
        fe = flag_enumeration(n, q)
        expected = 1
        for i in range(2, n + 1):
            expected *= sum(q ** j for j in range(i))
        assert fe.count == expected


def test_flag_budget_guard():
    with pytest.raises(ValueError, match='budget'):
        flag_enumeration(5, 3)


def test_unsupported_q():
    with pytest.raises(ValueError, match='not supported'):
        flag_enumeration(2, 4)


def test_rref_canonical():
    rng = random.Random(1)
    q = 3
    for _ in range(50):
        rows = tuple(tuple(rng.randrange(q) for _ in range(4))
                     for _ in range(rng.randrange(1, 4)))
        r1 = oracle._rref(rows, q)
        assert oracle._rref(r1, q) == r1
        shuffled = list(rows)
        rng.shuffle(shuffled)
        assert oracle._rref(tuple(shuffled), q) == r1


def test_relative_position_identity_and_w0():
    for n, q in [(2, 2), (3, 2), (3, 3), (4, 2)]:
        fe = flag_enumeration(n, q)
        std = tuple(
            tuple(tuple(1 if c == r else 0 for c in range(n))
                  for r in range(j + 1)) for j in range(n - 1))
        anti = tuple(
            oracle._rref(tuple(tuple(1 if c == n - 1 - r else 0
                                     for c in range(n))
                               for r in range(j + 1)), q)
            for j in range(n - 1))
        assert std in fe.index and anti in fe.index
        assert relative_position(std, std, q) == tuple(range(1, n + 1))
        assert relative_position(std, anti, q) == tuple(range(n, 0, -1))


def test_generator_matrices_match_relative_position():
    for n, q in [(2, 3), (3, 2)]:
        fe = flag_enumeration(n, q)
        gens = generator_matrices(n, q)
        for i in range(1, n):
            si = tuple(range(1, i)) + (i + 1, i) + tuple(range(i + 2, n + 1))
            for x in range(fe.count):
                for y in range(fe.count):
                    want = relative_position(fe.flags[x], fe.flags[y], q) == si
                    assert bool(gens[i - 1][x, y]) == want


def test_position_matrices_partition_pairs():
    for n, q in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)]:
        fe = flag_enumeration(n, q)
        pm = position_matrices(n, q)
        total = sum(pm.values())
        assert (total == 1.0).all()
        ident = tuple(range(1, n + 1))
        assert (pm[ident] == np.eye(fe.count)).all()
        bruhat = 0
        for w, m in pm.items():
            sums = m.sum(axis=1)
            assert (sums == sums[0]).all(), 'row sums must be constant'
            bruhat += int(sums[0])
        assert bruhat == fe.count


def test_position_row_sum_is_q_to_inversions():
    q = 2
    pm = position_matrices(3, q)
    for w, m in pm.items():
        inv = sum(1 for a in range(3) for b in range(a + 1, 3)
                  if w[a] > w[b])
        assert m.sum(axis=1)[0] == q ** inv


def test_chain_count_examples():
    # the calibration cases that pin the twist-side convention
    assert chain_count(2, 2, ((1, 1), (0, 1)), (1,)) == 2
    assert chain_count(2, 3, ((1, 1), (0, 1)), (1,)) == 3
    assert chain_count(2, 2, ((1, 0), (0, 1)), (1,)) == 0
    assert chain_count(2, 2, ((1, 0), (0, 1)), ()) == 3
    # a regular unipotent lies in exactly one Borel: one fixed flag
    assert chain_count(3, 2, unipotent_rep((3,)), ()) == 1
    assert chain_count(3, 3, unipotent_rep((3,)), ()) == 1


def test_chain_count_conjugation_invariant():
    n, q = 3, 2
    rng = random.Random(9)
    u = unipotent_rep((2, 1))
    words = [(1,), (1, 2), (2, 1, 2), (1, 2, 1, 2)]
    base = [chain_count(n, q, u, w) for w in words]
    for _ in range(5):
        while True:
            h = tuple(tuple(rng.randrange(q) for _ in range(n))
                      for _ in range(n))
            if oracle._rank(h, q) == n:
                break
        hinv = _invert_mod(h, q)
        conj = oracle._mat_mul_modq(oracle._mat_mul_modq(h, u, q), hinv, q)
        assert [chain_count(n, q, conj, w) for w in words] == base


def _invert_mod(m, q):
    n = len(m)
    aug = [list(m[i]) + [1 if i == j else 0 for j in range(n)]
           for i in range(n)]
    r = 0
    for c in range(n):
        piv = next(i for i in range(r, n) if aug[i][c] % q)
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], q - 2, q)
        aug[r] = [x * inv % q for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] % q:
                f = aug[i][c]
                aug[i] = [(x - f * y) % q for x, y in zip(aug[i], aug[r])]
        r += 1
    return tuple(tuple(row[n:]) for row in aug)


def test_chain_count_cyclic_shift():
    n, q = 3, 2
    u = unipotent_rep((2, 1))
    rng = random.Random(2)
    for _ in range(10):
        word = tuple(rng.randrange(1, n) for _ in range(rng.randrange(1, 7)))
        shifted = word[1:] + word[:1]
        assert chain_count(n, q, u, word) == chain_count(n, q, u, shifted)


def test_jordan_type_random_conjugation():
    n, q = 4, 2
    rng = random.Random(7)
    for mu in partitions(n):
        u = unipotent_rep(mu)
        for _ in range(3):
            while True:
                h = tuple(tuple(rng.randrange(q) for _ in range(n))
                          for _ in range(n))
                if oracle._rank(h, q) == n:
                    break
            conj = oracle._mat_mul_modq(
                oracle._mat_mul_modq(h, u, q), _invert_mod(h, q), q)
            assert jordan_type(conj, q) == mu


def test_jordan_type_rejects_nonunipotent():
    with pytest.raises(ValueError, match='unipotent'):
        jordan_type(((0, 1), (1, 0)), 3)


def test_class_sizes_enumeration_vs_formula():
    for n, q in [(2, 2), (2, 3), (3, 2), (3, 3)]:
        for mu in partitions(n):
            enum = unipotent_class_size(n, q, mu, method='enumerate')
            form = unipotent_class_size(n, q, mu, method='formula')
            assert enum == form, (n, q, mu)


def test_class_sizes_gl4_f2_enumeration_vs_formula():
    for mu in partitions(4):
        enum = unipotent_class_size(4, 2, mu, method='enumerate')
        form = unipotent_class_size(4, 2, mu, method='formula')
        assert enum == form, mu


def test_class_sizes_sum_to_steinberg():
    # total number of unipotent elements is q^(n(n-1))
    for n, q in [(2, 2), (3, 3), (4, 2), (4, 3)]:
        total = sum(unipotent_class_size(n, q, mu, method='formula')
                    for mu in partitions(n))
        assert total == q ** (n * (n - 1))


def test_known_class_sizes():
    # |C_(2)| in GL_2 is q^2-1; |C_(2,1)| in GL_3 is (q^3-1)(q^2-1)/(q-1)
    assert unipotent_class_size(2, 2, (2,)) == 3
    assert unipotent_class_size(2, 3, (2,)) == 8
    assert unipotent_class_size(3, 2, (2, 1)) == 21
    assert unipotent_class_size(3, 3, (2, 1)) == 104


def test_stack_count_gl2_pins():
    # the worked example that fixes every orientation at once:
    # nu = 1/2 on the regular class gives 1/(q-1)
    for q in (2, 3):
        assert stack_count_bruteforce(2, q, (1,), (2,)) == \
            Fraction(1, q - 1)
        assert stack_count_bruteforce(2, q, (1,), (1, 1)) == 0


def test_stack_count_empty_word():
    # empty word: (1/|G|) sum over class of #fixed flags... for the
    # identity class every flag is fixed
    for q in (2, 3):
        fe = flag_enumeration(2, q)
        assert stack_count_bruteforce(2, q, (), (1, 1)) == \
            Fraction(fe.count, gl_order(2, q))


def test_word_letter_validation():
    with pytest.raises(ValueError, match='letters'):
        chain_count(2, 2, ((1, 0), (0, 1)), (2,))
