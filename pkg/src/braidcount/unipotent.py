"""Unipotent class data: catalogs, closure order, sizes, value totals.

Type A is computed from scratch: partitions with the dominance order,
centralizer orders by the multiplicity formula, and class-total
unipotent-character values |C^F| * Ktilde_{lambda,mu}(q) via the charge
statistic on semistandard tableaux.  The charge normalisation is pinned
three ways at once (trivial row = class size, identity column = fake
degree, and exact agreement with the brute-force flag oracle) — the
test suite exercises all three.

G2 and F4 use bundled data files instead (value tables for the
exceptional types are frozen artifacts, re-derivable by the scripts
under datagen/).  The loader is deliberately paranoid: every
cross-reference, closure property, degree bound and specialisation is
checked before a table can be used, and `validate_assets` exposes the
same checks as a report.

Class labels follow the tables they reproduce: partitions like "(2,1)"
in type A, Bala-Carter labels in machine form otherwise ("A~1" stands
for the decorated A1, "A2+A~1" for sums, "F4(a1)" as printed).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .poly import Poly, parse_rational

__all__ = [
    'AssetMissingError',
    'ClosureOrder',
    'TypeDataAsset',
    'UnipotentClass',
    'ValidationReport',
    'class_size',
    'classes',
    'gl_order_poly',
    'kostka_foulkes',
    'load_asset',
    'modified_kostka',
    'rho_total',
    'validate_assets',
]

SCHEMA_VERSION = 1
_CHECK_PRIMES = (2, 3, 4, 5, 7, 8, 9)


class AssetMissingError(RuntimeError):
    """No bundled value table for the requested type."""


# ---------------------------------------------------------------------
# partitions, dominance, type-A class data

def _conjugate(mu):
    if not mu:
        return ()
    return tuple(sum(1 for p in mu if p > j) for j in range(mu[0]))


def _dominates(lam, mu):
    """lam >= mu in dominance order (both partitions of the same n)."""
    acc_l = acc_m = 0
    for i in range(max(len(lam), len(mu))):
        acc_l += lam[i] if i < len(lam) else 0
        acc_m += mu[i] if i < len(mu) else 0
        if acc_l < acc_m:
            return False
    return True


def partition_label(mu):
    """Canonical display label, e.g. (2, 1) -> "(2,1)"."""
    return '(' + ','.join(str(p) for p in mu) + ')'


def parse_partition_label(text):
    """Inverse of partition_label; accepts "2,1" with or without parens.

    >>> parse_partition_label('(2,1)')
    (2, 1)
    >>> parse_partition_label('3')
    (3,)
    """
    body = text.strip().lstrip('(').rstrip(')')
    parts = tuple(int(p) for p in body.split(',') if p.strip())
    if not parts or any(p <= 0 for p in parts):
        raise ValueError(f'not a partition label: {text!r}')
    return tuple(sorted(parts, reverse=True))


def gl_order_poly(n):
    """|GL_n(F_q)| as a polynomial in q.

    >>> gl_order_poly(2)(2)
    6
    """
    out = Poly.monomial(n * (n - 1) // 2)
    for i in range(1, n + 1):
        out = out * (Poly.monomial(i) - 1)
    return out


def _centralizer_poly(mu):
    """Centralizer order of a type-mu unipotent in GL_n, as a polynomial."""
    conj = _conjugate(mu)
    mult = {}
    for part in mu:
        mult[part] = mult.get(part, 0) + 1
    out = Poly.monomial(sum(c * c for c in conj)
                        - sum(m * m for m in mult.values()))
    for m in mult.values():
        out = out * gl_order_poly(m)
    return out


# ---------------------------------------------------------------------
# charge and Kostka-Foulkes

def _ssyt(shape, content):
    """Semistandard tableaux of the shape with the given content,
    as row tuples."""
    rows = len(shape)
    results = []

    def rec(r, c, grid, remaining):
        if r == rows:
            results.append(tuple(tuple(row) for row in grid))
            return
        if c == shape[r]:
            rec(r + 1, 0, grid, remaining)
            return
        lo = grid[r][c - 1] if c else 1
        for v in range(lo, len(remaining) + 1):
            if not remaining[v - 1]:
                continue
            if r and grid[r - 1][c] >= v:
                continue
            grid[r].append(v)
            remaining[v - 1] -= 1
            rec(r, c + 1, grid, remaining)
            remaining[v - 1] += 1
            grid[r].pop()

    rec(0, 0, [[] for _ in range(rows)], list(content))
    return results


def _reading_word(tab):
    """Rows left to right, bottom row first."""
    out = []
    for row in reversed(tab):
        out.extend(row)
    return out


def _charge(word):
    """Lascoux-Schutzenberger charge of a word with partition content."""
    word = list(word)
    total = 0
    while word:
        # extract one standard subword: rightmost 1, then for each next
        # letter the rightmost occurrence to the left, wrapping around
        pos = max(i for i, x in enumerate(word) if x == 1)
        positions = [pos]
        target = 2
        while any(x == target for x in word):
            left = [i for i, x in enumerate(word) if x == target and i < pos]
            if left:
                pos = max(left)
            else:
                pos = max(i for i, x in enumerate(word) if x == target)
            positions.append(pos)
            target += 1
        # charge of the standard subword, in word order
        order = sorted(range(len(positions)), key=lambda k: positions[k])
        place = {k + 1: order.index(k) for k in range(len(positions))}
        c = 0
        val = 0
        for k in range(2, len(positions) + 1):
            if place[k] > place[k - 1]:
                val += 1
            c += val
        total += c
        for i in sorted(positions, reverse=True):
            word.pop(i)
    return total


@lru_cache(maxsize=None)
def kostka_foulkes(lam, mu):
    """K_{lam,mu}(t) as a polynomial via the charge statistic.

    >>> kostka_foulkes((2,), (1, 1))
    Poly(q)
    >>> kostka_foulkes((1, 1), (2,))
    Poly(0)
    >>> kostka_foulkes((2, 1), (1, 1, 1))
    Poly(q^2 + q)
    """
    total = Poly.zero()
    for tab in _ssyt(lam, mu):
        total = total + Poly.monomial(_charge(_reading_word(tab)))
    return total


def _n_stat(mu):
    return sum(i * p for i, p in enumerate(mu))


@lru_cache(maxsize=None)
def modified_kostka(lam, mu):
    """Ktilde_{lam,mu}(q) = q^{n(mu)} K_{lam,mu}(1/q).

    These are the per-element unipotent-character values: the value of
    rho_lam at a type-mu unipotent element of GL_n(F_q).

    >>> modified_kostka((1, 1), (1, 1))
    Poly(q)
    >>> modified_kostka((2,), (2,))
    Poly(1)
    """
    kf = kostka_foulkes(lam, mu)
    return kf.reversed_to(_n_stat(mu))


# ---------------------------------------------------------------------
# catalog types

@dataclass(frozen=True)
class UnipotentClass:
    label: str
    dim: int
    centralizer_order: Poly


@dataclass(frozen=True)
class ClosureOrder:
    """Partial order on class labels from Hasse edges (lower, upper)."""

    labels: tuple
    edges: tuple
    _reach: dict = field(compare=False, repr=False)

    @staticmethod
    def from_edges(labels, edges):
        reach = {lab: {lab} for lab in labels}
        adj = {lab: [] for lab in labels}
        for lo, hi in edges:
            adj[lo].append(hi)
        # transitive closure by repeated expansion (tiny posets)
        changed = True
        while changed:
            changed = False
            for lab in labels:
                for nxt in adj[lab]:
                    new = reach[nxt] - reach[lab]
                    if new:
                        reach[lab] |= new
                        changed = True
        for lab in labels:
            for other in labels:
                if lab != other and other in reach[lab] \
                        and lab in reach[other]:
                    raise ValueError('closure order contains a cycle')
        return ClosureOrder(labels=tuple(labels), edges=tuple(edges),
                            _reach=reach)

    def leq(self, a, b):
        """a <= b, i.e. b's closure contains a... order runs upward."""
        return b in self._reach[a]

    def up_set(self, a):
        return frozenset(self._reach[a])

    def minimum(self):
        bottoms = [lab for lab in self.labels
                   if all(self.leq(lab, x) for x in self.labels)]
        return bottoms[0] if len(bottoms) == 1 else None

    def maximum(self):
        tops = [lab for lab in self.labels
                if all(self.leq(x, lab) for x in self.labels)]
        return tops[0] if len(tops) == 1 else None

    def minimal_elements(self, subset):
        subset = list(subset)
        return [a for a in subset
                if not any(b != a and self.leq(b, a) for b in subset)]


@dataclass(frozen=True)
class TypeDataAsset:
    type_label: str
    schema: int
    irrep_keys: tuple
    irrep_dims: dict
    b_values: dict
    a_values: dict
    big_a_values: dict
    class_labels: tuple
    class_dims: dict
    centralizers: dict
    hasse: tuple
    values: dict


# ---------------------------------------------------------------------
# asset parsing

def _data_dir(override=None):
    if override:
        return override
    env = os.environ.get('BRAIDCOUNT_DATA')
    if env:
        return env
    return os.path.join(os.path.dirname(__file__), 'data')


def _parse_coeff_list(text):
    body = text.strip()
    if not (body.startswith('[') and body.endswith(']')):
        raise ValueError(f'expected [coeff,...], got {text!r}')
    body = body[1:-1].strip()
    if not body:
        return Poly.zero()
    return Poly(tuple(parse_rational(p) for p in body.split(',')))


@lru_cache(maxsize=None)
def load_asset(type_label, data_dir=None):
    """Parse and fully validate the bundled table for G2 or F4.

    Raises AssetMissingError when no file exists (E6 counts are not
    bundled) and ValueError on any malformed or inconsistent content.
    """
    path = os.path.join(_data_dir(data_dir), f'{type_label.lower()}.txt')
    if not os.path.exists(path):
        raise AssetMissingError(
            f'no unipotent value table bundled for type {type_label} '
            f'(searched {path}); exceptional counts need their data file')
    with open(path, encoding='utf-8') as fh:
        lines = [ln.strip() for ln in fh]
    header = {}
    section = None
    irreps, classes_rows, hasse, value_rows = [], [], [], []
    for ln in lines:
        if not ln or ln.startswith('#'):
            continue
        if ln.startswith('[') and ln.endswith(']') and ' ' not in ln:
            section = ln[1:-1]
            continue
        if section is None:
            key, _, val = ln.partition(' ')
            header[key] = val.strip()
        elif section == 'irreps':
            irreps.append(ln.split())
        elif section == 'classes':
            label, dim, coeffs = ln.split(None, 2)
            classes_rows.append((label, int(dim), _parse_coeff_list(coeffs)))
        elif section == 'hasse':
            lo, hi = ln.split()
            hasse.append((lo, hi))
        elif section == 'values':
            key, _, rest = ln.partition(' ')
            cells = [c for c in rest.split(']') if c.strip()]
            value_rows.append(
                (key, [_parse_coeff_list(c + ']') for c in cells]))
        else:
            raise ValueError(f'unknown section [{section}]')
    if header.get('type') != type_label:
        raise ValueError(f'type mismatch in {path}: {header.get("type")}')
    if int(header.get('schema', -1)) != SCHEMA_VERSION:
        raise ValueError(f'unsupported schema version in {path}')
    irrep_keys = tuple(row[0] for row in irreps)
    asset = TypeDataAsset(
        type_label=type_label,
        schema=SCHEMA_VERSION,
        irrep_keys=irrep_keys,
        irrep_dims={r[0]: int(r[1]) for r in irreps},
        b_values={r[0]: int(r[2]) for r in irreps},
        a_values={r[0]: int(r[3]) for r in irreps},
        big_a_values={r[0]: int(r[4]) for r in irreps},
        class_labels=tuple(r[0] for r in classes_rows),
        class_dims={r[0]: r[1] for r in classes_rows},
        centralizers={r[0]: r[2] for r in classes_rows},
        hasse=tuple(hasse),
        values={(key, lab): cell
                for key, cells in value_rows
                for lab, cell in zip((r[0] for r in classes_rows), cells)},
    )
    _validate_asset_or_raise(asset)
    return asset


def _validate_asset_or_raise(asset):
    report = _run_asset_checks(asset)
    if not report.ok:
        bad = '; '.join(f'{name}: {detail}'
                        for name, ok, detail in report.checks if not ok)
        raise ValueError(
            f'invalid {asset.type_label} data: {bad}')


# ---------------------------------------------------------------------
# the public catalog API

def classes(rs):
    """(tuple of UnipotentClass, ClosureOrder) for the reductive group.

    Type A (GL_n): partitions of n under dominance; otherwise loaded
    from the bundled asset, in the row order of the tables it feeds.
    """
    if rs.type_label.startswith('A'):
        return _type_a_classes(rs.rank + 1)
    asset = load_asset(rs.type_label)
    cls = tuple(UnipotentClass(label=lab, dim=asset.class_dims[lab],
                               centralizer_order=asset.centralizers[lab])
                for lab in asset.class_labels)
    order = ClosureOrder.from_edges(asset.class_labels, asset.hasse)
    return cls, order


@lru_cache(maxsize=None)
def _type_a_classes(n):
    from .chars import partitions
    parts = sorted(partitions(n),
                   key=lambda mu: (n * n - sum(c * c
                                               for c in _conjugate(mu)), mu))
    cls = []
    for mu in parts:
        dim = n * n - sum(c * c for c in _conjugate(mu))
        cls.append(UnipotentClass(label=partition_label(mu), dim=dim,
                                  centralizer_order=_centralizer_poly(mu)))
    labels = [c.label for c in cls]
    edges = []
    for lo in parts:
        for hi in parts:
            if lo == hi or not _dominates(hi, lo):
                continue
            # cover: nothing strictly between
            if not any(mid != lo and mid != hi and _dominates(hi, mid)
                       and _dominates(mid, lo) for mid in parts):
                edges.append((partition_label(lo), partition_label(hi)))
    return tuple(cls), ClosureOrder.from_edges(labels, edges)


def _group_order_poly(rs):
    if rs.type_label.startswith('A'):
        return gl_order_poly(rs.rank + 1)
    out = Poly.monomial(rs.num_positive)
    for d in rs.degrees:
        out = out * (Poly.monomial(d) - 1)
    return out


def class_size(rs, label):
    """|C^F| as a polynomial in q: |G^F| / centralizer order, exactly.

    >>> from .rootsystem import build_root_system
    >>> class_size(build_root_system('A1'), '(2)')
    Poly(q^2 - 1)
    >>> class_size(build_root_system('A1'), '(1,1)')
    Poly(1)
    """
    cls, _ = classes(rs)
    for c in cls:
        if c.label == label:
            return _group_order_poly(rs).exact_div(c.centralizer_order)
    raise KeyError(f'unknown unipotent class {label!r} for {rs.type_label}')


def rho_total(rs, irrep, label):
    """T_{E,C}(q) = sum over C^F of tr(g, rho_E), as a polynomial.

    Type A: |C^F| * Ktilde_{lambda,mu}(q); exceptional: from the asset.

    >>> from .rootsystem import build_root_system
    >>> rs = build_root_system('A1')
    >>> rho_total(rs, (1, 1), '(2)')
    Poly(0)
    >>> rho_total(rs, (1, 1), '(1,1)')
    Poly(q)
    >>> rho_total(rs, (2,), '(2)')
    Poly(q^2 - 1)
    """
    if rs.type_label.startswith('A'):
        mu = parse_partition_label(label)
        return class_size(rs, partition_label(mu)) \
            * modified_kostka(tuple(irrep), mu)
    asset = load_asset(rs.type_label)
    try:
        return asset.values[(irrep, label)]
    except KeyError:
        raise KeyError(
            f'no value for irrep {irrep!r}, class {label!r} '
            f'in the {rs.type_label} table') from None


# ---------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class ValidationReport:
    type_label: str
    checks: tuple  # (name, ok, detail)

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.checks)

    def __str__(self):
        lines = [f'data checks for {self.type_label}:']
        for name, ok, detail in self.checks:
            mark = 'ok  ' if ok else 'FAIL'
            lines.append(f'  [{mark}] {name}' + (f' — {detail}'
                                                 if detail else ''))
        return '\n'.join(lines)


def validate_assets(rs):
    """Run every data invariant and return a per-check report."""
    if rs.type_label.startswith('A'):
        return _validate_type_a(rs)
    try:
        asset = load_asset(rs.type_label)
    except AssetMissingError as exc:
        return ValidationReport(rs.type_label,
                                (('asset present', False, str(exc)),))
    except ValueError as exc:
        return ValidationReport(rs.type_label,
                                (('asset well-formed', False, str(exc)),))
    return _run_asset_checks(asset)


def _run_asset_checks(asset):
    checks = []

    def add(name, ok, detail=''):
        checks.append((name, bool(ok), detail if not ok else ''))

    from .rootsystem import build_root_system
    from .chars import char_table, fake_degrees
    rs = build_root_system(asset.type_label)
    table = char_table(rs)
    fakes = fake_degrees(rs)
    two_n = 2 * rs.num_positive

    add('irrep keys match the character table',
        set(asset.irrep_keys) == set(table.labels),
        f'{sorted(set(asset.irrep_keys) ^ set(table.labels))} differ')
    dims_ok = all(asset.irrep_dims.get(lab) == table.values[i][0]
                  for i, lab in enumerate(table.labels))
    add('irrep dims match', dims_ok)
    add('b equals fake-degree valuation',
        all(asset.b_values.get(lab) == fakes[lab].valuation
            for lab in table.labels))
    add('a <= b and A within bounds',
        all(0 <= asset.a_values[k] <= asset.b_values[k]
            <= asset.big_a_values[k] <= two_n for k in asset.irrep_keys))

    value_cells = len(asset.values)
    add('dense value matrix',
        value_cells == len(asset.irrep_keys) * len(asset.class_labels),
        f'{value_cells} cells')

    gorder = _group_order_poly(rs)
    sizes = {}
    size_ok = True
    for lab in asset.class_labels:
        cent = asset.centralizers[lab]
        try:
            sizes[lab] = gorder.exact_div(cent)
        except ValueError:
            size_ok = False
            break
    add('centralizer orders divide |G^F|', size_ok)
    if not size_ok:
        return ValidationReport(asset.type_label, tuple(checks))

    add('class dims match size degrees',
        all(sizes[lab].degree == asset.class_dims[lab]
            for lab in asset.class_labels))
    total = Poly.zero()
    for lab in asset.class_labels:
        total = total + sizes[lab]
    add('class sizes sum to q^2N', total == Poly.monomial(two_n),
        f'got {total}')

    triv = next(lab for i, lab in enumerate(table.labels)
                if all(v == 1 for v in table.values[i]))
    add('trivial row equals class sizes',
        all(asset.values[(triv, lab)] == sizes[lab]
            for lab in asset.class_labels))

    ident = asset.class_labels[0]
    add('identity class first with dim 0',
        asset.class_dims[ident] == 0 and sizes[ident] == Poly.one())
    col_ok = all(
        asset.values[(k, ident)].valuation == asset.a_values[k]
        and asset.values[(k, ident)].degree == asset.big_a_values[k]
        for k in asset.irrep_keys)
    add('identity column has (a, A) as valuation/degree', col_ok)
    add('identity column positive at q=2',
        all(asset.values[(k, ident)](2) > 0 for k in asset.irrep_keys))

    try:
        order = ClosureOrder.from_edges(asset.class_labels, asset.hasse)
        add('closure order acyclic', True)
        add('closure has unique minimum and maximum',
            order.minimum() == ident and order.maximum() is not None)
        add('dims strictly increase along edges',
            all(asset.class_dims[lo] < asset.class_dims[hi]
                for lo, hi in asset.hasse))
    except ValueError as exc:
        add('closure order acyclic', False, str(exc))

    integral = True
    bad = ''
    for (key, lab), val in asset.values.items():
        for q0 in _CHECK_PRIMES:
            got = val(q0)
            if got.denominator != 1:
                integral = False
                bad = f'{key}@{lab} at q={q0}: {got}'
                break
        if not integral:
            break
    add('values integral at prime powers', integral, bad)
    return ValidationReport(asset.type_label, tuple(checks))


def _validate_type_a(rs):
    """Type A has no asset; report the convention pins instead."""
    from .chars import partitions, fake_degrees
    n = rs.rank + 1
    checks = []

    def add(name, ok, detail=''):
        checks.append((name, bool(ok), detail if not ok else ''))

    cls, order = classes(rs)
    labels = [c.label for c in cls]
    triv = (n,)
    add('trivial row equals class sizes',
        all(rho_total(rs, triv, lab) == class_size(rs, lab)
            for lab in labels))
    fakes = fake_degrees(rs)
    add('identity column equals fake degrees',
        all(rho_total(rs, lam, partition_label((1,) * n)) == fakes[lam]
            for lam in partitions(n)))
    total = Poly.zero()
    for lab in labels:
        total = total + class_size(rs, lab)
    add('class sizes sum to q^2N',
        total == Poly.monomial(2 * rs.num_positive))
    add('closure order bottom/top',
        order.minimum() == partition_label((1,) * n)
        and order.maximum() == partition_label((n,)))
    if n <= 3:
        from . import oracle
        ok = True
        for q0 in (2, 3):
            for mu in partitions(n):
                if class_size(rs, partition_label(mu))(q0) != \
                        oracle.unipotent_class_size(n, q0, mu):
                    ok = False
        add('class sizes match oracle enumeration', ok)
    return ValidationReport(rs.type_label, tuple(checks))
