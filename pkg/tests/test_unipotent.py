"""Unipotent class catalog, closure order, and value totals (type A)."""

import doctest
import itertools

import pytest

import braidcount.unipotent as unipotent
from braidcount.chars import fake_degrees, partitions
from braidcount.oracle import unipotent_class_size, unipotent_rep
from braidcount.poly import Poly
from braidcount.rootsystem import build_root_system
from braidcount.unipotent import (
    AssetMissingError,
    ClosureOrder,
    class_size,
    classes,
    gl_order_poly,
    kostka_foulkes,
    load_asset,
    modified_kostka,
    parse_partition_label,
    partition_label,
    rho_total,
    validate_assets,
)

q = Poly.monomial(1)


def test_doctests():
    failed, attempted = doctest.testmod(unipotent)
    assert failed == 0 and attempted > 0


def test_label_round_trip():
    for n in range(1, 7):
        for mu in partitions(n):
            assert parse_partition_label(partition_label(mu)) == mu


# ---------------------------------------------------------------------
# Kostka-Foulkes / charge

def test_kostka_foulkes_classical_table():
    # the n=3 table from the classical Hall-Littlewood expansion
    assert kostka_foulkes((3,), (1, 1, 1)) == q ** 3
    assert kostka_foulkes((2, 1), (1, 1, 1)) == q + q ** 2
    assert kostka_foulkes((1, 1, 1), (1, 1, 1)) == Poly.one()
    assert kostka_foulkes((3,), (2, 1)) == q
    assert kostka_foulkes((2, 1), (2, 1)) == Poly.one()
    assert kostka_foulkes((1, 1, 1), (2, 1)) == Poly.zero()
    assert kostka_foulkes((3,), (3,)) == Poly.one()
    assert kostka_foulkes((2, 1), (3,)) == Poly.zero()


def test_kostka_foulkes_general_properties():
    for n in range(2, 7):
        for lam in partitions(n):
            for mu in partitions(n):
                kf = kostka_foulkes(lam, mu)
                if lam == mu:
                    assert kf == Poly.one()
                elif not unipotent._dominates(lam, mu):
                    assert kf.is_zero()
                else:
                    assert not kf.is_zero()
                    assert all(c >= 0 for c in kf.coeffs)
                    nmu = sum(i * p for i, p in enumerate(mu))
                    assert kf.degree <= nmu


def test_kostka_at_one_counts_tableaux():
    # K_{lam,mu}(1) is the plain Kostka number; spot-check a known row
    assert kostka_foulkes((2, 2), (1, 1, 1, 1))(1) == 2
    assert kostka_foulkes((3, 1), (1, 1, 1, 1))(1) == 3
    assert kostka_foulkes((2, 1, 1), (2, 1, 1))(1) == 1


def test_modified_kostka_identity_column_is_fake_degree():
    # Ktilde_{lam,(1^n)} must reproduce the coinvariant-algebra
    # fake degrees computed by the independent Molien route
    for n in range(2, 7):
        fakes = fake_degrees(build_root_system(f'A{n - 1}'))
        for lam in partitions(n):
            assert modified_kostka(lam, (1,) * n) == fakes[lam], (n, lam)


# ---------------------------------------------------------------------
# catalog and closure order

def test_type_a_catalog_shape():
    rs = build_root_system('A3')
    cls, order = classes(rs)
    assert [c.label for c in cls] == \
        ['(1,1,1,1)', '(2,1,1)', '(2,2)', '(3,1)', '(4)']
    assert [c.dim for c in cls] == [0, 6, 8, 10, 12]
    assert order.minimum() == '(1,1,1,1)'
    assert order.maximum() == '(4)'
    for c in cls:
        assert c.dim + c.centralizer_order.degree == 16


def test_closure_vs_rank_conditions():
    # dominance must agree with the matrix-rank degeneration criterion:
    # mu covers lam in the closure iff rank((u-1)^k) never increases
    def ranks(mu, n, qv):
        u = unipotent_rep(mu)
        m = [[u[i][j] % qv for j in range(n)] for i in range(n)]
        for i in range(n):
            m[i][i] = (m[i][i] - 1) % qv
        out = []
        acc = [row[:] for row in m]
        for _ in range(n):
            out.append(_rank_mod(acc, qv))
            acc = _mat_mul_mod(acc, m, qv)
        return out

    for n in range(2, 5):
        rs = build_root_system(f'A{n - 1}')
        _, order = classes(rs)
        for qv in (2, 3):
            table = {mu: ranks(mu, n, qv) for mu in partitions(n)}
            for lo, hi in itertools.product(partitions(n), repeat=2):
                expected = all(a <= b
                               for a, b in zip(table[lo], table[hi]))
                assert order.leq(partition_label(lo),
                                 partition_label(hi)) == expected


def _rank_mod(rows, p):
    m = [row[:] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [(x * inv) % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def _mat_mul_mod(a, b, p):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) % p
             for j in range(n)] for i in range(n)]


def test_closure_order_api():
    order = ClosureOrder.from_edges(
        ('a', 'b', 'c', 'd'), (('a', 'b'), ('a', 'c'), ('b', 'd'),
                               ('c', 'd')))
    assert order.leq('a', 'd') and not order.leq('d', 'a')
    assert not order.leq('b', 'c') and not order.leq('c', 'b')
    assert order.up_set('b') == {'b', 'd'}
    assert order.minimum() == 'a' and order.maximum() == 'd'
    assert sorted(order.minimal_elements({'b', 'c', 'd'})) == ['b', 'c']
    with pytest.raises(ValueError, match='cycle'):
        ClosureOrder.from_edges(('x', 'y'), (('x', 'y'), ('y', 'x')))


# ---------------------------------------------------------------------
# sizes and totals

def test_class_sizes_match_oracle():
    for n in range(2, 5):
        rs = build_root_system(f'A{n - 1}')
        for mu in partitions(n):
            poly = class_size(rs, partition_label(mu))
            for qv in (2, 3):
                assert poly(qv) == unipotent_class_size(n, qv, mu), (n, mu)


def test_class_sizes_sum_to_full_unipotent_variety():
    for n in range(2, 6):
        rs = build_root_system(f'A{n - 1}')
        total = Poly.zero()
        for mu in partitions(n):
            total = total + class_size(rs, partition_label(mu))
        assert total == Poly.monomial(n * (n - 1))


def test_gl2_value_pins():
    rs = build_root_system('A1')
    assert rho_total(rs, (1, 1), '(2)') == Poly.zero()
    assert rho_total(rs, (1, 1), '(1,1)') == q
    assert rho_total(rs, (2,), '(2)') == q ** 2 - 1
    assert rho_total(rs, (2,), '(1,1)') == Poly.one()


def test_trivial_row_equals_class_sizes():
    for n in range(2, 6):
        rs = build_root_system(f'A{n - 1}')
        for mu in partitions(n):
            lab = partition_label(mu)
            assert rho_total(rs, (n,), lab) == class_size(rs, lab)


def test_steinberg_row_supported_on_identity_only():
    # the sign partition pairs with the regular class alone... dually,
    # its value vanishes off the identity class
    for n in range(2, 6):
        rs = build_root_system(f'A{n - 1}')
        for mu in partitions(n):
            total = rho_total(rs, (1,) * n, partition_label(mu))
            if mu == (1,) * n:
                assert total == Poly.monomial(n * (n - 1) // 2)
            else:
                assert total.is_zero()


def test_totals_are_integral_and_plausible():
    rs = build_root_system('A3')
    for lam in partitions(4):
        for mu in partitions(4):
            total = rho_total(rs, lam, partition_label(mu))
            assert total.is_integral()
            # per-element values are bounded by the character degree
            bound = modified_kostka(lam, (1,) * 4)(2) \
                * class_size(rs, partition_label(mu))(2)
            assert abs(total(2)) <= bound


def test_validate_assets_type_a():
    for t in ('A1', 'A2', 'A3'):
        report = validate_assets(build_root_system(t))
        assert report.ok, str(report)
        assert 'ok' in str(report)


def test_gl_order_poly_values():
    assert gl_order_poly(2)(2) == 6
    assert gl_order_poly(3)(2) == 168
    assert gl_order_poly(3)(3) == 11232


def test_missing_asset_raises():
    with pytest.raises(AssetMissingError, match='E6'):
        load_asset('E6')
