"""Tests for Garside normal forms and twist-root machinery."""

import doctest
import random

import pytest

from braidcount import braid
from braidcount.braid import (
    ChamberCheckUnavailable,
    SlopeSpec,
    braid_equal,
    contains_full_twist,
    cyclic_shift,
    find_root_elements,
    full_twist_word,
    normal_form,
    power,
    springer_braid,
    springer_chamber_check,
)
from braidcount.rootsystem import build_root_system


def test_doctests():
    assert doctest.testmod(braid).failed == 0


def test_slope_spec():
    s = SlopeSpec(7, 6)
    assert s.nu > 1 and str(s) == '7/6'
    with pytest.raises(ValueError):
        SlopeSpec(2, 6)
    with pytest.raises(ValueError):
        SlopeSpec(0, 3)
    with pytest.raises(ValueError, match='at least 2'):
        SlopeSpec(3, 1)


def test_normal_form_small():
    rs = build_root_system('A1')
    nf = normal_form(rs, (1, 1))
    assert [s.reduced_word() for s in nf.simples] == [(1,), (1,)]
    assert normal_form(rs, ()).simples == ()

    a2 = build_root_system('A2')
    assert braid_equal(a2, (1, 2, 1), (2, 1, 2))
    assert not braid_equal(a2, (1, 2), (2, 1))
    # normal form of a braid-relation word is the half twist
    assert normal_form(a2, (1, 2, 1)).simples == (a2.w0,)


def test_normal_form_idempotent():
    rs = build_root_system('A3')
    rng = random.Random(5)
    for _ in range(50):
        word = tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 12)))
        nf = normal_form(rs, word)
        again = normal_form(rs, nf.word())
        assert nf.simples == again.simples
        # left-greedy adjacency condition
        for u, v in zip(nf.simples, nf.simples[1:]):
            assert v.left_descents() <= u.right_descents()
        # no identity simples, product matches
        total = rs.identity
        for s in nf.simples:
            assert not s.is_identity()
            total = total * s
        assert total == rs.element_from_word(word)


def _random_rewrite(rs, word, rng):
    """Apply one random positive braid-relation rewrite, if any applies."""
    word = list(word)
    sites = []
    for k in range(len(word) - 1):
        i, j = word[k], word[k + 1]
        if i == j:
            continue
        mij = _coxeter_exponent(rs, i, j)
        if mij == 2:
            sites.append((k, [j, i]))
        elif k + mij <= len(word):
            chunk = word[k:k + mij]
            if chunk == [i, j] * (mij // 2) + ([i] if mij % 2 else []):
                repl = [j, i] * (mij // 2) + ([j] if mij % 2 else [])
                sites.append((k, repl))
    if not sites:
        return tuple(word)
    k, repl = rng.choice(sites)
    word[k:k + len(repl)] = repl
    return tuple(word)


def _coxeter_exponent(rs, i, j):
    order = (rs.simple_reflection(i) * rs.simple_reflection(j)).order()
    return order


def test_normal_form_rewrite_invariance():
    for label in ('A3', 'G2'):
        rs = build_root_system(label)
        rng = random.Random(hash(label) & 0xFFFF)
        word = tuple(rng.randint(1, rs.rank) for _ in range(10))
        base = normal_form(rs, word).simples
        w = word
        for _ in range(250):
            w = _random_rewrite(rs, w, rng)
            assert normal_form(rs, w).simples == base


def test_power_and_shift():
    assert power((1, 2), 3) == (1, 2, 1, 2, 1, 2)
    assert power((1,), 0) == ()
    assert cyclic_shift(()) == ()
    with pytest.raises(ValueError):
        power((1,), -1)


def test_full_twist():
    g2 = build_root_system('G2')
    pi = full_twist_word(g2)
    assert braid_equal(g2, (1, 2, 1, 2) * 3, pi)
    assert contains_full_twist(g2, pi + (1, 2))
    assert not contains_full_twist(g2, (1, 2, 1, 2) * 2)
    a2 = build_root_system('A2')
    # full twist is central: commutes with every generator
    assert braid_equal(a2, full_twist_word(a2) + (1,),
                       (1,) + full_twist_word(a2))


# expected = divisors of the regular degrees that also divide |Phi|
@pytest.mark.parametrize('label,expected', [
    ('A1', {2}),
    ('A2', {2, 3}),
    ('A3', {2, 3, 4}),
    ('A4', {2, 4, 5}),
    ('G2', {2, 3, 6}),
    ('F4', {2, 3, 4, 6, 8, 12}),
])
def test_regular_numbers(label, expected):
    rs = build_root_system(label)
    found = {m for m in range(2, 2 * rs.num_positive + 1)
             if 2 * rs.num_positive % m == 0 and find_root_elements(rs, m)}
    assert found == expected


def test_root_elements_g2():
    rs = build_root_system('G2')
    words = [w.reduced_word() for w in find_root_elements(rs, 3)]
    assert (1, 2, 1, 2) in words
    assert find_root_elements(rs, 5) == []


def test_root_element_power_lengths():
    # l(w^d) = d * |Phi|/m for d < m/2
    for label, ms in [('G2', (3, 6)), ('F4', (3, 4, 6, 8, 12)), ('A3', (4,))]:
        rs = build_root_system(label)
        for m in ms:
            for w in find_root_elements(rs, m):
                for d in range(1, (m + 1) // 2):
                    wd = rs.identity
                    for _ in range(d):
                        wd = wd * w
                    assert wd.length == d * 2 * rs.num_positive // m


def test_root_elements_cyclic_shift_closure():
    # all m-th roots of the full twist are connected by length-preserving
    # conjugation moves w -> s w s with s a left descent
    for label, m in [('G2', 3), ('G2', 6), ('F4', 8), ('A3', 4)]:
        rs = build_root_system(label)
        roots = find_root_elements(rs, m)
        index = {w: k for k, w in enumerate(roots)}
        adj = {k: set() for k in range(len(roots))}
        for w, k in index.items():
            for i in w.left_descents():
                s = rs.simple_reflection(i)
                conj = s * w * s
                if conj.length == w.length:
                    assert conj in index, 'shift left the root-element set'
                    adj[k].add(index[conj])
        seen = {0}
        stack = [0]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        assert seen == set(range(len(roots)))


def test_chamber_check_s4():
    rs = build_root_system('A3')
    assert springer_chamber_check(rs.element_from_word([1, 3, 2]), 4)
    assert not springer_chamber_check(rs.element_from_word([1, 2, 3]), 4)


def test_chamber_check_g2_coxeter():
    rs = build_root_system('G2')
    assert springer_chamber_check(rs.element_from_word([1, 2]), 6) or \
        springer_chamber_check(rs.element_from_word([2, 1]), 6)


def test_chamber_check_unavailable():
    rs = build_root_system('A3')
    # w0 in A3 has -1-eigenspace of dimension 2
    with pytest.raises(ChamberCheckUnavailable):
        springer_chamber_check(rs.w0, 2)


def test_chamber_eigenvalue_absent():
    rs = build_root_system('A3')
    with pytest.raises(ChamberCheckUnavailable, match='absent'):
        springer_chamber_check(rs.element_from_word([1]), 4)


def test_springer_braid():
    g2 = build_root_system('G2')
    assert springer_braid(g2, SlopeSpec(2, 3)) == (1, 2, 1, 2) * 2
    assert springer_braid(g2, (1, 2)) == g2.w0.reduced_word()
    with pytest.raises(ValueError, match='not a regular number'):
        springer_braid(g2, SlopeSpec(1, 4))


def test_contains_full_twist_springer_powers():
    rs = build_root_system('G2')
    word = (1, 2, 1, 2)
    for d in range(1, 5):
        assert contains_full_twist(rs, power(word, d)) == (d >= 3)
