"""Positive braid monoid over a Weyl group: Garside normal forms,
full-twist divisibility, and m-th roots of the full twist.

A braid word is a plain tuple of 1-based generator indices.  Braid
equality and divisibility are decided through the left-greedy (Garside)
normal form, a sequence of Weyl-group "simples" with the adjacency
condition that each factor absorbs every possible letter from its right
neighbour.

The elements found by `find_root_elements(rs, m)` — length |Phi|/m,
order m, with m-th braid power equal to the full twist — are exactly
the good twist roots this package's slope counts are built on;
`springer_chamber_check` refines the search by the dominant-chamber
eigenvector criterion, in exact cyclotomic arithmetic.

>>> rs = build_root_system('G2')
>>> braid_equal(rs, (1, 2, 1), (2, 1, 2))
False
>>> nf = normal_form(rs, (1, 2, 1, 2) * 3)
>>> [s.reduced_word() for s in nf.simples] == [rs.w0.reduced_word()] * 2
True
>>> contains_full_twist(rs, (1, 2, 1, 2) * 2)
False
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath

from .poly import Poly, cyclotomic
from .rootsystem import build_root_system

__all__ = [
    'GarsideNormalForm',
    'SlopeSpec',
    'normal_form',
    'power',
    'cyclic_shift',
    'braid_equal',
    'full_twist_word',
    'contains_full_twist',
    'find_root_elements',
    'springer_chamber_check',
    'springer_braid',
    'ChamberCheckUnavailable',
]

ENUMERATION_BUDGET = 10 ** 7


@dataclass(frozen=True)
class GarsideNormalForm:
    """Left-greedy factorisation into Weyl simples (identity dropped)."""

    simples: tuple

    def word(self):
        """Flatten back to a braid word."""
        return tuple(itertools.chain.from_iterable(
            s.reduced_word() for s in self.simples))

    def __len__(self):
        return len(self.simples)

    def __repr__(self):
        inner = ' | '.join(
            ','.join(map(str, s.reduced_word())) for s in self.simples)
        return f'GarsideNormalForm({inner})'


@dataclass(frozen=True)
class SlopeSpec:
    """An isoclinic slope nu = d/m in lowest terms, m >= 2.

    >>> SlopeSpec(2, 3).nu
    Fraction(2, 3)
    >>> SlopeSpec(2, 4)
    Traceback (most recent call last):
        ...
    ValueError: slope 2/4 not in lowest terms
    """

    d: int
    m: int

    def __post_init__(self):
        if self.d < 1 or self.m < 1:
            raise ValueError('slope numerator and denominator must be positive')
        if gcd(self.d, self.m) != 1:
            raise ValueError(f'slope {self.d}/{self.m} not in lowest terms')
        if self.m < 2:
            raise ValueError(
                'denominator m must be at least 2 (no order-m twist root '
                'of the required length exists for m = 1)')

    @property
    def nu(self):
        return Fraction(self.d, self.m)

    def __str__(self):
        return f'{self.d}/{self.m}'


def _fix_pair(u, v):
    """Slide letters of v leftward into u until (u, v) is left-greedy.

    Returns the fixed pair and whether anything moved.
    """
    moved = False
    while True:
        candidates = v.left_descents() - u.right_descents()
        for i in sorted(candidates):
            s = u.rs.simple_reflection(i)
            u, v = u * s, s * v
            moved = True
            break
        else:
            return u, v, moved


def normal_form(rs, word):
    """Left-greedy normal form of a positive braid word.

    >>> rs = build_root_system('A2')
    >>> normal_form(rs, (1, 1, 2))
    GarsideNormalForm(1 | 1,2)
    >>> normal_form(rs, ())
    GarsideNormalForm()
    """
    simples = [rs.simple_reflection(i) for i in word]
    i = 0
    while i + 1 < len(simples):
        u, v, moved = _fix_pair(simples[i], simples[i + 1])
        if moved:
            if v.is_identity():
                simples[i] = u
                del simples[i + 1]
            else:
                simples[i], simples[i + 1] = u, v
            i = max(i - 1, 0)
        else:
            i += 1
    total = sum(s.length for s in simples)
    assert total == len(word), 'Garside normalisation lost letters'
    return GarsideNormalForm(tuple(simples))


def power(word, d):
    """The braid word repeated d times."""
    if d < 0:
        raise ValueError('negative braid powers are not defined')
    return tuple(word) * d

def cyclic_shift(word):
    """First generator moved to the end.

    >>> cyclic_shift((1, 2, 3))
    (2, 3, 1)
    """
    word = tuple(word)
    return word[1:] + word[:1] if word else word


def braid_equal(rs, a, b):
    """Monoid equality via normal forms."""
    return normal_form(rs, a).simples == normal_form(rs, b).simples


def full_twist_word(rs):
    """The full twist: the lift of w0, squared."""
    return rs.w0.reduced_word() * 2


def contains_full_twist(rs, word):
    """True iff the full twist left-divides the braid.

    The full twist is central, so left-divisibility is equivalent to
    two-sided containment; in the left-greedy form it shows up as the
    first two simples both being w0.

    >>> rs = build_root_system('G2')
    >>> contains_full_twist(rs, full_twist_word(rs))
    True
    >>> contains_full_twist(rs, (1,))
    False
    """
    nf = normal_form(rs, word).simples
    return len(nf) >= 2 and nf[0] == rs.w0 and nf[1] == rs.w0


def find_root_elements(rs, m):
    """All w with l(w) = |Phi|/m, order m, and (lift of w)^m = full twist.

    Empty exactly when m is not a regular number (in the operational
    sense this package uses).  Results are sorted by reduced word.

    >>> rs = build_root_system('A1')
    >>> [w.reduced_word() for w in find_root_elements(rs, 2)]
    [(1,)]
    """
    if m < 1:
        raise ValueError('m must be positive')
    two_n = 2 * rs.num_positive
    if two_n % m:
        return []
    target_len = two_n // m
    if target_len > rs.num_positive:
        return []  # longer than w0: impossible (covers m = 1)
    candidates = rs.elements_of_length(target_len)
    if len(candidates) > ENUMERATION_BUDGET:
        raise RuntimeError(
            f'root-element search budget exceeded: {len(candidates)} '
            f'candidates of length {target_len}')
    pi = full_twist_word(rs)
    found = [w for w in candidates
             if w.order() == m and braid_equal(rs, w.reduced_word() * m, pi)]
    found.sort(key=lambda w: w.reduced_word())
    return found


class ChamberCheckUnavailable(Exception):
    """Raised when the eigenvector chamber test cannot be applied."""


# ---------------------------------------------------------------------
# Exact arithmetic in Q(zeta_m): dense polynomials in zeta reduced mod
# the m-th cyclotomic polynomial, Fraction coefficients.

class _Cyclotomic:
    def __init__(self, m):
        self.m = m
        self.mod = cyclotomic(m)
        self.deg = self.mod.degree

    def of(self, coeffs):
        p = Poly(tuple(coeffs)) % self.mod
        return tuple(Fraction(p[i]) for i in range(self.deg))

    def const(self, c):
        return self.of((c,))

    @property
    def zeta(self):
        return self.of((0, 1))

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def mul(self, a, b):
        prod = Poly(a) * Poly(b)
        return self.of(prod.coeffs)

    def is_zero(self, a):
        return all(x == 0 for x in a)

    def inv(self, a):
        """Inverse by extended Euclid against the modulus."""
        r0, r1 = self.mod, Poly(a)
        t0, t1 = Poly.zero(), Poly.one()
        while not r1.is_zero():
            quo, rem = divmod(r0, r1)
            r0, r1 = r1, rem
            t0, t1 = t1, t0 - quo * t1
        if r0.degree != 0:
            raise ZeroDivisionError('non-invertible cyclotomic element')
        scale = Fraction(1) / Fraction(r0.leading())
        return self.of((t0 * scale).coeffs)

    def conj(self, a):
        """Complex conjugation: zeta -> zeta^(m-1)."""
        out = Poly.zero()
        zpow = Poly.one()
        zbar = Poly.monomial(self.m - 1) % self.mod
        for c in a:
            out = (out + zpow * c) % self.mod
            zpow = (zpow * zbar) % self.mod
        return self.of(out.coeffs)

    def to_mpc(self, a, dps):
        with mpmath.workdps(dps):
            z = mpmath.exp(2j * mpmath.pi / self.m)
            acc = mpmath.mpc(0)
            for c in reversed(a):
                acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
            return acc


def _eigenvector(field, mat):
    """Kernel of (mat - zeta*I) over Q(zeta); None unless 1-dimensional."""
    n = len(mat)
    rows = [[field.sub(field.const(mat[i][j]),
                       field.zeta if i == j else field.const(0))
             for j in range(n)] for i in range(n)]
    # Gaussian elimination over the field
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, n)
                      if not field.is_zero(rows[i][c])), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(n):
            if i != r and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [field.sub(x, field.mul(f, y))
                           for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) == 0:
        raise ChamberCheckUnavailable('eigenvalue absent')
    if len(free) > 1:
        raise ChamberCheckUnavailable(
            f'eigenspace dimension {len(free)} > 1; chamber test undefined')
    fc = free[0]
    vec = [field.const(0)] * n
    vec[fc] = field.const(1)
    for ri, c in enumerate(pivots):
        vec[c] = field.sub(field.const(0), field.mul(rows[ri][fc],
                                                     field.const(1)))
    return vec


def _symmetrizer(rs):
    """Diagonal d_i with d_i * cartan[i][j] symmetric (root lengths)."""
    n = rs.rank
    d = [Fraction(1)] * n
    # propagate along edges of the Coxeter diagram
    fixed = {0}
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if i in fixed and j not in fixed and rs.cartan[i][j] != 0:
                    d[j] = d[i] * rs.cartan[i][j] / rs.cartan[j][i]
                    fixed.add(j)
                    changed = True
    scale = 1
    for x in d:
        scale = scale * x.denominator // gcd(scale, x.denominator)
    return [x * scale for x in d]


def springer_chamber_check(w, m):
    """Dominant-chamber test for the e^{2 pi i/m}-eigenvector of w.

    True iff the eigenvector x (unique up to scalar) can be scaled so
    that Re(alpha(x)) > 0 for every positive root alpha.  Equivalently:
    the complex numbers alpha(x) all lie in one open half-plane, which
    holds iff none vanishes, no two are antiparallel, and the largest
    angular gap between their directions exceeds pi.

    Zero and antiparallel detection is exact (cyclotomic arithmetic);
    the gap comparison runs at escalating mpmath precision and only the
    sign of quantities bounded away from zero is consumed.

    Raises ChamberCheckUnavailable when the eigenspace is not a line
    (then the arc formalism does not apply).

    >>> rs = build_root_system('A3')
    >>> springer_chamber_check(rs.element_from_word([1, 3, 2]), 4)
    True
    >>> springer_chamber_check(rs.element_from_word([1, 2, 3]), 4)
    False
    """
    rs = w.rs
    mat = w.matrix()
    if m == 2 and all(mat[i][j] == -(i == j) for i in range(rs.rank)
                      for j in range(rs.rank)):
        # w = -1: any interior dominant vector works
        return True
    field = _Cyclotomic(m)
    x = _eigenvector(field, mat)
    d = _symmetrizer(rs)
    # bilinear form B[i][j] = d_i * cartan[i][j] (up to global scale)
    values = []
    for k in rs.positive_roots:
        coords = rs.roots[k]
        z = field.const(0)
        for i in range(rs.rank):
            if coords[i]:
                for j in range(rs.rank):
                    if rs.cartan[i][j] and not field.is_zero(x[j]):
                        z = field.add(z, field.mul(
                            field.const(coords[i] * d[i] * rs.cartan[i][j]),
                            x[j]))
        if field.is_zero(z):
            return False
        values.append(z)
    # exact antiparallel test: z1 * conj(z2) real negative
    reduced = []
    for z in values:
        reduced.append(z)
    for a, b in itertools.combinations(reduced, 2):
        prod = field.mul(a, field.conj(b))
        if field.is_zero(field.sub(prod, field.conj(prod))):
            # product is real; sign decides parallel vs antiparallel
            if _real_sign(field, prod) < 0:
                return False
    # numeric gap comparison with precision escalation
    for dps in (50, 100, 200, 400, 800, 1600):
        with mpmath.workdps(dps):
            angles = sorted(mpmath.arg(field.to_mpc(z, dps))
                            for z in reduced)
            gaps = [b - a for a, b in zip(angles, angles[1:])]
            gaps.append(angles[0] + 2 * mpmath.pi - angles[-1])
            margin = mpmath.mpf(10) ** (-dps // 2)
            top = max(gaps)
            if top > mpmath.pi + margin:
                return True
            if top < mpmath.pi - margin:
                return False
    raise RuntimeError('chamber check did not converge; escalate precision')


def _real_sign(field, a):
    """Sign of a real cyclotomic element, by escalating evaluation."""
    for dps in (50, 100, 200, 400, 800, 1600):
        v = field.to_mpc(a, dps).real
        with mpmath.workdps(dps):
            if abs(v) > mpmath.mpf(10) ** (-dps // 2):
                return 1 if v > 0 else -1
    raise RuntimeError('sign determination did not converge')


def springer_braid(rs, slope):
    """Canonical slope braid: (reduced word of the chosen twist root)^d.

    The canonical root element is the lexicographically least one that
    passes the chamber check; if the check is unavailable for this
    eigenspace, the lexicographically least root element is used (all
    downstream counts are invariant under the choice).

    >>> rs = build_root_system('G2')
    >>> springer_braid(rs, SlopeSpec(2, 3))
    (1, 2, 1, 2, 1, 2, 1, 2)
    """
    if not isinstance(slope, SlopeSpec):
        slope = SlopeSpec(*slope)
    roots = find_root_elements(rs, slope.m)
    if not roots:
        raise ValueError(
            f'{slope.m} is not a regular number for {rs.type_label}')
    chosen = None
    for w in roots:
        try:
            if springer_chamber_check(w, slope.m):
                chosen = w
                break
        except ChamberCheckUnavailable:
            chosen = roots[0]
            break
    if chosen is None:
        chosen = roots[0]
    return chosen.reduced_word() * slope.d
