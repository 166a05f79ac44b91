"""Root systems and exact Weyl-group arithmetic.

Supported types: A1..A6, G2, F4, E6 (E7/E8 are rejected: their Weyl
groups exceed the enumeration budget this package is designed for).
Elements are permutations of the root set, so multiplication, lengths
and descent sets are exact integer computations throughout.

Conventions:
  * roots are integer coordinate vectors in the simple-root basis;
  * cartan[i][j] = <alpha_j, alpha_i-dual>, so the reflection s_i acts
    by v |-> v - (sum_j cartan[i][j] v_j) alpha_i;
  * for G2 this file picks alpha1 long / alpha2 short, for F4
    alpha1, alpha2 long / alpha3, alpha4 short;
  * generator indices are 1-based everywhere in the public API, to
    match the serialized braid-word format "1,2,1,2".

>>> rs = build_root_system('G2')
>>> rs.num_positive, rs.degrees, rs.weyl_order
(6, (2, 6), 12)
>>> w = rs.element_from_word([1, 2, 1, 2])
>>> w.length, w.order()
(4, 3)
>>> rs.w0.is_elliptic()
True
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .poly import Poly, cyclotomic

__all__ = [
    'RootSystem',
    'WeylElement',
    'ConjugacyClassSet',
    'build_root_system',
    'multiply',
    'length',
    'left_descents',
    'right_descents',
    'order',
    'conjugacy_classes',
    'reflection_char_poly',
    'fixed_space_dim',
    'is_elliptic',
]

_SUPPORTED = ('A1', 'A2', 'A3', 'A4', 'A5', 'A6', 'G2', 'F4', 'E6')


def _cartan_matrix(label):
    m = re.fullmatch(r'A([1-6])', label)
    if m:
        n = int(m.group(1))
        return [[2 if i == j else (-1 if abs(i - j) == 1 else 0)
                 for j in range(n)] for i in range(n)]
    if label == 'G2':
        return [[2, -1], [-3, 2]]
    if label == 'F4':
        return [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    if label == 'E6':
        # Bourbaki numbering: chain 1-3-4-5-6 with 2 attached to 4.
        edges = {(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)}
        cart = [[2 if i == j else 0 for j in range(6)] for i in range(6)]
        for a, b in edges:
            cart[a - 1][b - 1] = cart[b - 1][a - 1] = -1
        return cart
    if label in ('E7', 'E8'):
        raise ValueError(
            f'{label} is not supported: |W| is beyond the exact-enumeration '
            f'budget of this package (supported: {", ".join(_SUPPORTED)})')
    raise ValueError(f'unknown type label {label!r}; '
                     f'supported: {", ".join(_SUPPORTED)}')


def _det_int(mat):
    """Fraction-free Bareiss determinant of a small integer matrix."""
    m = [row[:] for row in mat]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _interpolate(points):
    """Lagrange interpolation through (x, y) pairs; exact Poly result."""
    total = Poly.zero()
    for i, (xi, yi) in enumerate(points):
        term = Poly.const(Fraction(yi))
        for j, (xj, _) in enumerate(points):
            if i != j:
                term = term * Poly((Fraction(-xj, 1), Fraction(1))) \
                    * Fraction(1, xi - xj)
        total = total + term
    return total


class WeylElement:
    """A Weyl-group element, stored as a permutation of root indices.

    perm[k] is the index of w(roots[k]); length counts positive roots
    sent negative.  Instances are immutable and hash/compare by
    (root system, perm).
    """

    __slots__ = ('rs', 'perm', 'length', '_inv', '_word')

    def __init__(self, rs, perm):
        self.rs = rs
        self.perm = perm
        n = rs.num_positive
        self.length = sum(1 for k in range(n) if perm[k] >= n)
        self._inv = None
        self._word = None

    def __eq__(self, other):
        return (isinstance(other, WeylElement)
                and self.rs is other.rs and self.perm == other.perm)

    def __hash__(self):
        return hash((id(self.rs), self.perm))

    def __mul__(self, other):
        if self.rs is not other.rs:
            raise ValueError('elements from different root systems')
        sp, op = self.perm, other.perm
        return self.rs._element(tuple(sp[op[k]] for k in range(len(sp))))

    def inverse(self):
        if self._inv is None:
            inv = [0] * len(self.perm)
            for k, v in enumerate(self.perm):
                inv[v] = k
            self._inv = self.rs._element(tuple(inv))
        return self._inv

    def is_identity(self):
        return self.length == 0

    def order(self):
        w, k = self, 1
        while not w.is_identity():
            w, k = w * self, k + 1
        return k

    def right_descents(self):
        """1-based simple indices i with l(w s_i) < l(w)."""
        rs = self.rs
        return frozenset(i + 1 for i in range(rs.rank)
                         if self.perm[rs._simple_idx[i]] >= rs.num_positive)

    def left_descents(self):
        return self.inverse().right_descents()

    def reduced_word(self):
        """Lexicographically least reduced word (1-based indices).

        >>> rs = build_root_system('A2')
        >>> rs.w0.reduced_word()
        (1, 2, 1)
        """
        if self._word is None:
            w, word = self, []
            while not w.is_identity():
                i = min(w.left_descents())
                word.append(i)
                w = self.rs.simple_reflection(i) * w
            self._word = tuple(word)
        return self._word

    def matrix(self):
        """Integer matrix on the reflection representation.

        Column j holds the simple-basis coordinates of w(alpha_j).
        """
        rs = self.rs
        cols = [rs.roots[self.perm[rs._simple_idx[j]]] for j in range(rs.rank)]
        return [[cols[j][i] for j in range(rs.rank)] for i in range(rs.rank)]

    def char_poly(self):
        """det(x*I - w) on the reflection representation, exact.

        >>> rs = build_root_system('A2')
        >>> rs.element_from_word([1, 2]).char_poly()
        Poly(q^2 + q + 1)
        """
        m = self.matrix()
        n = self.rs.rank
        pts = []
        for x in range(n + 1):
            shifted = [[x * (1 if i == j else 0) - m[i][j] for j in range(n)]
                       for i in range(n)]
            pts.append((x, _det_int(shifted)))
        p = _interpolate(pts)
        assert p.is_integral() and p.leading() == 1
        return p

    def fixed_space_dim(self):
        """Multiplicity of eigenvalue 1 on the reflection representation."""
        p, d = self.char_poly(), 0
        qm1 = Poly.var() - 1
        while not p.is_zero() and p(1) == 0:
            p, d = p.exact_div(qm1), d + 1
        return d

    def is_elliptic(self):
        return self.fixed_space_dim() == 0

    def apply_root(self, k):
        """Image index of root k under w."""
        return self.perm[k]

    def __repr__(self):
        word = ''.join(str(i) for i in self.reduced_word())
        return f'WeylElement({self.rs.type_label}:{word or "e"})'


@dataclass(frozen=True)
class ConjugacyClassSet:
    """Conjugacy classes of W with canonical representatives.

    Classes are ordered by (rep word length, rep word); representatives
    are the lexicographically least reduced words in their class.
    """

    reps: tuple
    sizes: tuple
    class_of: dict = field(compare=False, repr=False)

    def __len__(self):
        return len(self.reps)

    def index_of(self, w):
        return self.class_of[w.perm]


class RootSystem:
    """Immutable root-system container; build via build_root_system()."""

    def __init__(self, type_label):
        self.type_label = type_label
        cartan = _cartan_matrix(type_label)
        self.cartan = tuple(tuple(row) for row in cartan)
        self.rank = len(cartan)
        self._build_roots()
        self._element_cache = {}
        self._enumerate_group()
        self._compute_degrees()
        self._classes = None

    # -- construction ------------------------------------------------

    def _build_roots(self):
        rank = self.rank
        simples = [tuple(1 if j == i else 0 for j in range(rank))
                   for i in range(rank)]
        seen = set(simples)
        frontier = list(simples)
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(rank):
                    pairing = sum(self.cartan[i][j] * v[j]
                                  for j in range(rank))
                    img = tuple(v[j] - (pairing if j == i else 0)
                                for j in range(rank))
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        pos = [v for v in seen if all(c >= 0 for c in v)]
        neg = [tuple(-c for c in v) for v in pos]
        assert set(neg) == seen - set(pos), 'roots not closed under negation'
        pos.sort(key=lambda v: (sum(v), v))
        self.roots = tuple(pos + [tuple(-c for c in v) for v in pos])
        self.num_positive = len(pos)
        self.positive_roots = tuple(range(self.num_positive))
        self._root_idx = {v: k for k, v in enumerate(self.roots)}
        self._simple_idx = tuple(self._root_idx[s] for s in simples)
        self.simple_roots = self._simple_idx

    def _reflection_perm(self, i):
        rank, out = self.rank, []
        for v in self.roots:
            pairing = sum(self.cartan[i][j] * v[j] for j in range(rank))
            img = tuple(v[j] - (pairing if j == i else 0)
                        for j in range(rank))
            out.append(self._root_idx[img])
        return tuple(out)

    def _element(self, perm):
        w = self._element_cache.get(perm)
        if w is None:
            w = WeylElement(self, perm)
            self._element_cache[perm] = w
        return w

    def _enumerate_group(self):
        self._gens = tuple(self._element(self._reflection_perm(i))
                           for i in range(self.rank))
        ident = tuple(range(len(self.roots)))
        perms = {ident: 0}
        frontier = [ident]
        depth = 0
        while frontier:
            nxt = []
            depth += 1
            for p in frontier:
                for g in self._gens:
                    gp = g.perm
                    # right multiplication w * s_i permutes via s_i first
                    newp = tuple(p[gp[k]] for k in range(len(p)))
                    if newp not in perms:
                        # BFS depth in the Cayley graph equals length
                        perms[newp] = depth
                        nxt.append(newp)
            frontier = nxt
        self._all_perms = perms  # perm -> length
        self.weyl_order = len(perms)
        longest = max(perms, key=perms.get)
        assert perms[longest] == self.num_positive
        self.w0 = self._element(longest)

    def _compute_degrees(self):
        cox = self.identity
        for i in range(1, self.rank + 1):
            cox = cox * self.simple_reflection(i)
        h = cox.order()
        cp = cox.char_poly()
        exps = []
        for d in range(1, h + 1):
            if h % d:
                continue
            phi = cyclotomic(d)
            while (cp % phi).is_zero():
                cp = cp.exact_div(phi)
                exps.extend(h * k // d for k in range(1, d + 1)
                            if _gcd(k, d) == 1)
        assert cp.degree == 0, 'non-root-of-unity eigenvalue on a Coxeter element'
        degrees = tuple(sorted(e + 1 for e in exps))
        assert len(degrees) == self.rank
        prod = 1
        for d in degrees:
            prod *= d
        assert prod == self.weyl_order, 'degree product != |W|'
        assert sum(d - 1 for d in degrees) == self.num_positive
        self.degrees = degrees
        self.coxeter_number = h

    # -- public API --------------------------------------------------

    @property
    def identity(self):
        return self._element(tuple(range(len(self.roots))))

    def simple_reflection(self, i):
        """Generator s_i, 1-based."""
        if not 1 <= i <= self.rank:
            raise ValueError(f'generator index {i} out of range 1..{self.rank}')
        return self._gens[i - 1]

    def element_from_word(self, word):
        """Product s_{i1} s_{i2} ... s_{ik} of the 1-based word."""
        w = self.identity
        for i in word:
            w = w * self.simple_reflection(i)
        return w

    def all_elements(self):
        """Every element, in increasing-length BFS order (deterministic)."""
        items = sorted(self._all_perms.items(), key=lambda kv: (kv[1], kv[0]))
        return [self._element(p) for p, _ in items]

    def elements_of_length(self, k):
        return [self._element(p) for p, l in sorted(self._all_perms.items())
                if l == k]

    def length_distribution(self):
        """Counts of elements by length, as a Poly in q."""
        counts = [0] * (self.num_positive + 1)
        for l in self._all_perms.values():
            counts[l] += 1
        return Poly(tuple(counts))

    def poincare_polynomial(self):
        """Product over degrees of (1 + q + ... + q^{d-1})."""
        out = Poly.one()
        for d in self.degrees:
            out = out * Poly((1,) * d)
        return out

    def conjugacy_classes(self):
        """Orbit partition of W under conjugation, canonically ordered.

        >>> build_root_system('A2').conjugacy_classes().sizes
        (1, 3, 2)
        """
        if self._classes is not None:
            return self._classes
        perms = self._all_perms
        assigned = {}
        raw_classes = []
        for p in sorted(perms, key=lambda p: (perms[p], p)):
            if p in assigned:
                continue
            idx = len(raw_classes)
            orbit = [p]
            assigned[p] = idx
            head = 0
            while head < len(orbit):
                cur = orbit[head]
                head += 1
                for g in self._gens:
                    gp, n = g.perm, len(cur)
                    # conjugate s_i w s_i
                    conj = tuple(gp[cur[gp[k]]] for k in range(n))
                    if conj not in assigned:
                        assigned[conj] = idx
                        orbit.append(conj)
            raw_classes.append(orbit)
        reps = []
        for orbit in raw_classes:
            min_len = min(perms[p] for p in orbit)
            candidates = [self._element(p) for p in orbit
                          if perms[p] == min_len]
            reps.append(min(candidates, key=lambda w: w.reduced_word()))
        order_key = sorted(
            range(len(raw_classes)),
            key=lambda i: (len(reps[i].reduced_word()),
                           reps[i].reduced_word()))
        remap = {old: new for new, old in enumerate(order_key)}
        class_of = {p: remap[i] for p, i in assigned.items()}
        self._classes = ConjugacyClassSet(
            reps=tuple(reps[i] for i in order_key),
            sizes=tuple(len(raw_classes[i]) for i in order_key),
            class_of=class_of)
        assert sum(self._classes.sizes) == self.weyl_order
        return self._classes

    def __repr__(self):
        return f'RootSystem({self.type_label})'


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def build_root_system(type_label):
    """Build (and cache) the root system for a supported type label.

    >>> build_root_system('F4').weyl_order
    1152
    >>> build_root_system('E7')
    Traceback (most recent call last):
        ...
    ValueError: E7 is not supported: |W| is beyond the exact-enumeration budget of this package (supported: A1, A2, A3, A4, A5, A6, G2, F4, E6)
    """
    return RootSystem(type_label)


# Thin functional aliases for the operation names used elsewhere.

def multiply(u, v):
    return u * v


def length(w):
    return w.length


def left_descents(w):
    return w.left_descents()


def right_descents(w):
    return w.right_descents()


def order(w):
    return w.order()


def conjugacy_classes(rs):
    return rs.conjugacy_classes()


def reflection_char_poly(w):
    return w.char_poly()


def fixed_space_dim(w):
    return w.fixed_space_dim()


def is_elliptic(w):
    return w.is_elliptic()
