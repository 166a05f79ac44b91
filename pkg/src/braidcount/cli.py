"""Command-line surface for the point-count machinery.

Subcommands
-----------
count          full class/count table for a braid word (or slope)
interval       minimal and maximal class when the support is an interval
count-min      count at the minimal class, summed over its closure
springer       regular numbers of a type, with root elements
oracle         brute-force stack count over GL_n (small q)
validate-data  run the shipped-table validation battery
coxeter        principal-nilpotent cross-check of the minimal class

Exit codes: 0 success, 1 usage error or failed verification,
2 unsupported tier or unusable data.  ``--data-dir`` overrides the
bundled class tables (equivalent to setting ``BRAIDCOUNT_DATA``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from math import gcd

from . import braid, count, coxeter, oracle, unipotent
from .poly import factored
from .rootsystem import build_root_system

__all__ = ['main']


class _Usage(Exception):
    """Bad invocation detected after argparse."""


def _parse_word(text):
    try:
        word = tuple(int(part) for part in text.split(','))
    except ValueError:
        raise _Usage(f'cannot parse braid word {text!r}; expected '
                     'comma-separated generator indices like 1,2,1,2')
    if not word or any(i < 1 for i in word):
        raise _Usage('braid word letters must be positive integers')
    return word


def _parse_slope(text):
    try:
        num, _, den = text.partition('/')
        d, m = int(num), int(den)
    except ValueError:
        raise _Usage(f'cannot parse slope {text!r}; expected d/m')
    try:
        return braid.SlopeSpec(d, m)
    except ValueError as ex:
        raise _Usage(str(ex))


def _root_system(args):
    label = getattr(args, 'type', None)
    n = getattr(args, 'gl', None)
    if n is not None:
        if n < 2:
            raise _Usage('--gl needs n >= 2')
        gl_label = f'A{n - 1}'
        if label is not None and label != gl_label:
            raise _Usage(f'--gl {n} means type {gl_label}, '
                         f'not {label}')
        label = gl_label
    if label is None:
        raise _Usage('missing --type (or --gl)')
    try:
        return build_root_system(label)
    except ValueError as ex:
        raise _Usage(str(ex))


def _braid_input(rs, args):
    """(word, power) from either --word/--power or --slope."""
    has_word = getattr(args, 'word', None) is not None
    has_slope = getattr(args, 'slope', None) is not None
    if has_word == has_slope:
        raise _Usage('give exactly one of --word or --slope')
    if has_word:
        return _parse_word(args.word), args.power
    if getattr(args, 'power', 1) != 1:
        raise _Usage('--power only combines with --word')
    return count.slope_word(rs, _parse_slope(args.slope)), 1


def _class_dims(rs):
    cats, _ = unipotent.classes(rs)
    return {c.label: c.dim for c in cats}


def _render_rows(rows, fmt, header):
    if fmt == 'json':
        return json.dumps({'columns': list(header), 'rows': rows},
                          indent=2, sort_keys=True)
    lines = []
    if fmt == 'csv':
        lines.append(','.join(header))
        for row in rows:
            lines.append(','.join(str(row[h]) for h in header))
        return '\n'.join(lines)
    widths = [max(len(str(h)), *(len(str(r[h])) for r in rows))
              if rows else len(str(h)) for h in header]
    lines.append('  '.join(str(h).ljust(w)
                           for h, w in zip(header, widths)).rstrip())
    for row in rows:
        lines.append('  '.join(str(row[h]).ljust(w)
                               for h, w in zip(header, widths)).rstrip())
    return '\n'.join(lines)


def cmd_count(args):
    rs = _root_system(args)
    word, power = _braid_input(rs, args)
    table = count.count_table(rs, word, power)
    dims = _class_dims(rs)
    counts = dict(table)
    rows = [{'class': lab, 'dim': dims[lab],
             'count': factored(counts.get(lab, count.RatFunc.zero()))}
            for lab in sorted(dims, key=lambda c: (dims[c], c))]
    print(_render_rows(rows, args.format, ('class', 'dim', 'count')))
    return 0


def cmd_interval(args):
    rs = _root_system(args)
    word, power = _braid_input(rs, args)
    try:
        lo, hi = count.interval_reps(rs, word, power)
    except ValueError as ex:
        print(f'not an interval: {ex}')
        return 0
    print(f'({lo}, {hi})')
    return 0


def cmd_count_min(args):
    rs = _root_system(args)
    word, power = _braid_input(rs, args)
    minimal = count.minimal_class(rs, word, power)
    value = count.count_points_lower(rs, word, minimal, power)
    rows = [{'class': minimal, 'count': factored(value)}]
    print(_render_rows(rows, args.format, ('class', 'count')))
    return 0


def cmd_springer(args):
    rs = _root_system(args)
    # m = 1 is degenerate: the braid for an integer slope is a plain
    # full-twist power and the underlying Weyl element is the identity
    rows = [{'m': 1, 'root_element': '-', 'elliptic': 'no'}]
    for m in range(2, rs.coxeter_number + 1):
        elements = braid.find_root_elements(rs, m)
        if not elements:
            continue
        w = elements[0]
        rows.append({'m': m,
                     'root_element': ','.join(str(i)
                                              for i in w.reduced_word()),
                     'elliptic': 'yes' if w.is_elliptic() else 'no'})
    print(_render_rows(rows, args.format, ('m', 'root_element',
                                           'elliptic')))
    return 0


def cmd_oracle(args):
    if args.gl is None:
        raise _Usage('oracle needs --gl n')
    if args.q not in oracle.SUPPORTED_Q:
        raise _Usage(f'--q must be one of {oracle.SUPPORTED_Q}')
    word = _parse_word(args.word)
    if any(i >= args.gl for i in word):
        raise _Usage(f'word letters must be < {args.gl} for GL_{args.gl}')
    mu = unipotent.parse_partition_label(args.cls)
    if sum(mu) != args.gl:
        raise _Usage(f'partition {mu} is not a partition of {args.gl}')
    value = oracle.stack_count_bruteforce(args.gl, args.q, word, mu)
    print(value)
    return 0


def cmd_validate(args):
    rs = _root_system(args)
    report = unipotent.validate_assets(rs)
    for name, ok, detail in report.checks:
        flag = 'PASS' if ok else 'FAIL'
        line = f'{flag} {name}'
        if detail and not ok:
            line += f': {detail}'
        print(line)
    if report.ok:
        print(f'{rs.type_label}: PASS')
        return 0
    print(f'{rs.type_label}: FAIL')
    return 2


def _coxeter_row(type_label, d):
    rs = build_root_system(type_label)
    nilp = coxeter.build_Nd(rs, d)
    word = count.slope_word(rs, braid.SlopeSpec(d, rs.coxeter_number))
    minimal = count.minimal_class(rs, word)
    return {'d': d, 'jordan': nilp.jordan_or_label, 'minimal': minimal,
            'verdict': 'agree' if nilp.jordan_or_label == minimal
            else 'DISAGREE'}


def cmd_coxeter(args):
    if args.gl is None:
        raise _Usage('coxeter needs --gl n')
    rs = _root_system(args)
    h = rs.coxeter_number
    ds = [d for d in range(1, h) if gcd(d, h) == 1]
    if args.d is not None:
        if args.d not in ds:
            raise _Usage(f'--d must be coprime to {h} and in (0, {h})')
        ds = [args.d]
    jobs = max(1, args.jobs or 1)
    if jobs > 1 and len(ds) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(min(jobs, len(ds))) as pool:
            rows = list(pool.map(_coxeter_row,
                                 [rs.type_label] * len(ds), ds))
    else:
        rows = [_coxeter_row(rs.type_label, d) for d in ds]
    all_ok = all(row['verdict'] == 'agree' for row in rows)
    print(_render_rows(rows, args.format, ('d', 'jordan', 'minimal',
                                           'verdict')))
    return 0 if all_ok else 1


def _build_parser():
    parser = argparse.ArgumentParser(
        prog='braidcount',
        description='Point counts of braid-power stacks over finite '
                    'fields.')
    sub = parser.add_subparsers(dest='subcommand', required=True)

    def common(p, braid_spec=True):
        p.add_argument('--type', help='root-system label (A1..A6, G2, F4)')
        p.add_argument('--gl', type=int,
                       help='GL_n semantics for type A (n >= 2)')
        p.add_argument('--format', choices=('table', 'json', 'csv'),
                       default='table')
        p.add_argument('--data-dir', help='override the bundled tables')
        p.add_argument('--jobs', type=int, default=os.cpu_count(),
                       help='parallelism degree for sweep subcommands')
        if braid_spec:
            p.add_argument('--word', help='braid word, e.g. 1,2,1,2')
            p.add_argument('--power', type=int, default=1,
                           help='repeat the word this many times')
            p.add_argument('--slope', help='slope d/m in lowest terms')

    p = sub.add_parser('count', help='full class/count table')
    common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser('interval', help='support interval of a braid')
    common(p)
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser('count-min', help='count at the minimal class')
    common(p)
    p.set_defaults(func=cmd_count_min)

    p = sub.add_parser('springer', help='regular numbers and root '
                                        'elements')
    common(p, braid_spec=False)
    p.set_defaults(func=cmd_springer)

    p = sub.add_parser('oracle', help='brute-force GL_n stack count')
    common(p)
    p.add_argument('--q', type=int, default=2,
                   help='field size (2 or 3)')
    p.add_argument('--class', dest='cls', required=True,
                   help='unipotent class as a partition, e.g. 2,1')
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser('validate-data', help='validate the shipped '
                                             'class tables')
    common(p, braid_spec=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser('coxeter', help='principal-nilpotent cross-check')
    common(p, braid_spec=False)
    p.add_argument('--d', type=int, help='restrict to a single d')
    p.set_defaults(func=cmd_coxeter)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        # argparse exits 2 on usage problems; the documented contract
        # reserves 2 for tier/data gaps, so remap
        return 0 if ex.code == 0 else 1
    if getattr(args, 'data_dir', None):
        os.environ['BRAIDCOUNT_DATA'] = args.data_dir
    try:
        return args.func(args)
    except _Usage as ex:
        print(f'error: {ex}', file=sys.stderr)
        return 1
    except count.TierError as ex:
        print(f'unsupported tier: {ex}', file=sys.stderr)
        return 2
    except braid.ChamberCheckUnavailable as ex:
        print(f'unsupported tier: {ex}', file=sys.stderr)
        return 2
    except (FileNotFoundError, unipotent.AssetMissingError) as ex:
        print(f'data unavailable: {ex}', file=sys.stderr)
        return 2
    except ValueError as ex:
        print(f'error: {ex}', file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
