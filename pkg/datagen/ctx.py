"""Disk cache for the per-type solver context.

The exceptional character tables take minutes to build, so datagen
caches (labels, values, fake degrees, pairing matrix) under .cache/.
A fingerprint of the conjugacy-class data guards against stale files.
"""

from __future__ import annotations

import pickle
from pathlib import Path

from braidcount.chars import CharacterTable
from braidcount.poly import Poly

import shoji

CACHE = Path(__file__).resolve().parent / '.cache'


def _fingerprint(rs):
    cc = rs.conjugacy_classes()
    return (rs.type_label, tuple(cc.sizes),
            tuple(rep.length for rep in cc.reps),
            tuple(tuple(rep.char_poly().coeffs) for rep in cc.reps))


def cached_context(rs):
    """(table, fakes, omega) as from shoji.make_context, disk-cached."""
    CACHE.mkdir(exist_ok=True)
    path = CACHE / f'{rs.type_label.lower()}_ctx.pkl'
    fp = _fingerprint(rs)
    if path.exists():
        with path.open('rb') as fh:
            blob = pickle.load(fh)
        if blob['fingerprint'] == fp:
            table = CharacterTable(rs=rs, labels=blob['labels'],
                                   values=blob['values'],
                                   classes=rs.conjugacy_classes())
            fakes = {lab: Poly(c) for lab, c in blob['fakes']}
            omega = [[Poly(c) for c in row] for row in blob['omega']]
            return table, fakes, omega
    table, fakes, omega = shoji.make_context(rs)
    blob = {
        'fingerprint': fp,
        'labels': table.labels,
        'values': table.values,
        'fakes': tuple((lab, p.coeffs) for lab, p in fakes.items()),
        'omega': tuple(tuple(p.coeffs for p in row) for row in omega),
    }
    with path.open('wb') as fh:
        pickle.dump(blob, fh)
    return table, fakes, omega
