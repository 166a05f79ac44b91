"""Pins for the shipped exceptional class tables.

These are the published G2/F4 facts the package exists to reproduce:
the worked-example column, the minimal class of every tabulated slope,
the rigid cases, class sizes, and the closure order.  The expected
values are frozen here on purpose — regenerating the data files must
reproduce them bit for bit.
"""

import pytest

from braidcount import count, unipotent
from braidcount.braid import SlopeSpec, contains_full_twist
from braidcount.poly import Poly, RatFunc
from braidcount.rootsystem import build_root_system

G2_MINIMAL = {
    (1, 6): 'G2',
    (1, 3): 'G2(a1)',
    (1, 2): 'A~1',
    (2, 3): 'A1',
    (5, 6): 'A1',
}

F4_MINIMAL = {
    (1, 12): 'F4',
    (5, 12): 'A2+A~1',
    (7, 12): 'A1+A~1',
    (11, 12): 'A1',
    (1, 8): 'F4(a1)',
    (3, 8): 'A2+A~1',
    (5, 8): 'A~1',
    (7, 8): 'A1',
    (1, 6): 'F4(a2)',
    (5, 6): 'A1',
    (1, 4): 'F4(a3)',
    (3, 4): 'A1',
    (1, 3): 'A~2+A1',
    (2, 3): 'A~1',
    (1, 2): 'A1+A~1',
}

RIGID = (
    ('G2', 2, 3, 'A1'),
    ('F4', 3, 8, 'A2+A~1'),
    ('F4', 5, 8, 'A~1'),
    ('F4', 3, 4, 'A1'),
)

G2_CHAIN = ('1', 'A1', 'A~1', 'G2(a1)', 'G2')

_q6 = Poly.monomial(6) - Poly.one()
_q2 = Poly.monomial(2) - Poly.one()
G2_SIZES = {
    '1': Poly.one(),
    'A1': _q6,
    'A~1': Poly.monomial(2) * _q6,
    'G2(a1)': Poly.monomial(2) * _q6 * _q2,
    'G2': Poly.monomial(4) * _q6 * _q2,
}


@pytest.mark.parametrize('label', ('G2', 'F4'))
def test_shipped_assets_validate(label):
    report = unipotent.validate_assets(build_root_system(label))
    bad = [name for name, ok, _ in report.checks if not ok]
    assert report.ok, f'{label} asset failed checks: {bad}'


def test_g2_worked_example_column():
    rs = build_root_system('G2')
    table = dict(count.count_table(rs, (1, 2, 1, 2), power=2))
    expected = {
        '1': RatFunc.zero(),
        'A1': RatFunc.one(),
        'A~1': RatFunc(Poly.monomial(2), Poly.one()),
        'G2(a1)': RatFunc(Poly.monomial(4), Poly.one()),
        'G2': RatFunc(Poly.monomial(6), Poly.one()),
    }
    assert set(table) == set(expected)
    for label, want in expected.items():
        assert table[label] == want, label


@pytest.mark.parametrize('slope,want', sorted(G2_MINIMAL.items()))
def test_g2_minimal_classes(slope, want):
    rs = build_root_system('G2')
    word = count.slope_word(rs, SlopeSpec(*slope))
    assert count.minimal_class(rs, word) == want


@pytest.mark.parametrize('slope,want', sorted(F4_MINIMAL.items()))
def test_f4_minimal_classes(slope, want):
    rs = build_root_system('F4')
    word = count.slope_word(rs, SlopeSpec(*slope))
    assert count.minimal_class(rs, word) == want


@pytest.mark.parametrize('type_label,d,m,cls', RIGID)
def test_rigid_slopes(type_label, d, m, cls):
    rs = build_root_system(type_label)
    word = count.slope_word(rs, SlopeSpec(d, m))
    report = count.is_rigid(rs, word)
    assert report.minimal == cls
    assert report.is_one, f'count is {report.count}, not 1'
    assert report.elliptic


@pytest.mark.parametrize('type_label,slopes', (
    ('G2', tuple(G2_MINIMAL)), ('F4', tuple(F4_MINIMAL))))
def test_identity_class_empty_at_fractional_slopes(type_label, slopes):
    rs = build_root_system(type_label)
    for slope in slopes:
        word = count.slope_word(rs, SlopeSpec(*slope))
        assert count.count_points(rs, word, '1').is_zero(), slope


def test_g2_class_sizes():
    rs = build_root_system('G2')
    cats, _ = unipotent.classes(rs)
    sizes = {c.label: unipotent.class_size(rs, c.label) for c in cats}
    assert sizes == G2_SIZES


def test_g2_closure_is_a_chain():
    rs = build_root_system('G2')
    _, order = unipotent.classes(rs)
    for lo, hi in zip(G2_CHAIN, G2_CHAIN[1:]):
        assert order.leq(lo, hi)
        assert not order.leq(hi, lo)


def test_f4_closure_pins():
    rs = build_root_system('F4')
    cats, order = unipotent.classes(rs)
    assert order.minimum() == '1'
    assert order.maximum() == 'F4'
    dims = {c.label: c.dim for c in cats}
    same_dim = {}
    for lab, dim in dims.items():
        same_dim.setdefault(dim, []).append(lab)
    for labs in same_dim.values():
        for a in labs:
            for b in labs:
                if a != b:
                    assert not order.leq(a, b), (a, b)
    assert not order.leq('A~2', 'B2')
    assert not order.leq('B2', 'A~2')


@pytest.mark.parametrize('type_label', ('G2', 'F4'))
def test_integer_slope_shortcut(type_label):
    rs = build_root_system(type_label)
    word = count.slope_word(rs, SlopeSpec(7, 6))
    assert contains_full_twist(rs, word)
    assert count.minimal_class(rs, word) == '1'
    assert count.minimal_class(rs, word, shortcut=False) == '1'
