"""Smoke harness for the orthogonality solver.

Runs the factorisation on small type-A groups where the class totals
are independently computable (charge statistic route), then on the
dihedral rank-2 group where the support map has a two-way ambiguity,
and reports which candidate survives.
"""

from __future__ import annotations

import sys
import time

from braidcount import unipotent
from braidcount.poly import Poly
from braidcount.rootsystem import RootSystem

from shoji import SolveError, SupportMap, solve_support


def check_type_a(n):
    rs = RootSystem(f'A{n - 1}')
    cat, _ = unipotent.classes(rs)
    class_labels = tuple(c.label for c in cat)
    class_dims = {c.label: c.dim for c in cat}
    block_of = {unipotent.parse_partition_label(lab): lab
                for lab in class_labels}
    phi1 = frozenset(block_of)
    sup = SupportMap(class_labels=class_labels, class_dims=class_dims,
                     block_of=block_of, phi1=phi1)
    dec = solve_support(rs, sup)
    for irrep in block_of:
        for lab in class_labels:
            want = unipotent.rho_total(rs, irrep, lab)
            got = dec.totals[(irrep, lab)]
            assert got == want, (n, irrep, lab, str(got), str(want))
    for lab in class_labels:
        assert dec.sizes[lab] == unipotent.class_size(rs, lab)
    print(f'A{n - 1}: totals match the charge-statistic route '
          f'({len(block_of)} irreps x {len(class_labels)} classes)')


def check_g2():
    rs = RootSystem('G2')
    class_labels = ('1', 'A1', 'A1t', 'G2(a1)', 'G2')
    class_dims = {'1': 0, 'A1': 6, 'A1t': 8, 'G2(a1)': 10, 'G2': 12}
    expected_sizes = {
        '1': Poly.one(),
        'A1': Poly.monomial(6) - 1,
        'A1t': Poly.monomial(2) * (Poly.monomial(6) - 1),
        'G2(a1)': Poly.monomial(2) * (Poly.monomial(6) - 1)
                  * (Poly.monomial(2) - 1),
        'G2': Poly.monomial(4) * (Poly.monomial(6) - 1)
              * (Poly.monomial(2) - 1),
    }
    survivors = []
    for a1_slot, extra in (('1_3a', '1_3b'), ('1_3b', '1_3a')):
        block_of = {'1_6': '1', a1_slot: 'A1', '2_2': 'A1t',
                    '2_1': 'G2(a1)', extra: 'G2(a1)', '1_0': 'G2'}
        phi1 = frozenset({'1_6', a1_slot, '2_2', '2_1', '1_0'})
        sup = SupportMap(class_labels=class_labels, class_dims=class_dims,
                         block_of=block_of, phi1=phi1)
        try:
            dec = solve_support(rs, sup)
        except SolveError as exc:
            print(f'G2 candidate A1<-{a1_slot}: rejected ({exc})')
            continue
        survivors.append((a1_slot, dec))
        print(f'G2 candidate A1<-{a1_slot}: solved')
        for lab in class_labels:
            ok = dec.sizes[lab] == expected_sizes[lab]
            print(f'  |{lab}^F| = {dec.sizes[lab]}  '
                  f'{"ok" if ok else "MISMATCH"}')
    print(f'G2 survivors: {[s for s, _ in survivors]}')
    return survivors


def main():
    for n in (2, 3, 4):
        t0 = time.time()
        check_type_a(n)
        print(f'  ({time.time() - t0:.2f}s)')
    t0 = time.time()
    check_g2()
    print(f'  ({time.time() - t0:.2f}s)')


if __name__ == '__main__':
    sys.exit(main())
