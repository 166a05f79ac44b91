"""Nonabelian Fourier matrices for the symmetric groups S2, S3, S4.

Slots are pairs (x, sigma): a conjugacy-class representative x and an
irreducible character sigma of its centralizer.  The pairing is

  {(x,s),(y,t)} = 1/(|C(x)||C(y)|) * sum over g with [x, gyg^-1] = 1
                  of s(g y g^-1) * conj(t(g^-1 x g))

computed exactly over the cyclotomic field Q(zeta_12), which contains
every character value that appears (orders 1..4).  The resulting
matrix is checked to be rational, symmetric, and involutive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from braidcount.chars import murnaghan_nakayama, partitions

# ---------------------------------------------------------------------
# exact arithmetic in Q(zeta_12); basis 1, z, z^2, z^3 with z^4 = z^2 - 1


class Cyc:
    __slots__ = ('c',)

    def __init__(self, c):
        self.c = tuple(Fraction(x) for x in c)

    @staticmethod
    def of(rat):
        return Cyc((rat, 0, 0, 0))

    ZERO = None
    ONE = None

    def __add__(self, other):
        return Cyc(tuple(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other):
        return Cyc(tuple(a - b for a, b in zip(self.c, other.c)))

    def __mul__(self, other):
        prod = [Fraction(0)] * 7
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(other.c):
                prod[i + j] += a * b
        # reduce with z^4 = z^2 - 1 from the top down
        for k in (6, 5, 4):
            if prod[k]:
                prod[k - 2] += prod[k]
                prod[k - 4] -= prod[k]
                prod[k] = Fraction(0)
        return Cyc(prod[:4])

    def __eq__(self, other):
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def conj(self):
        # complex conjugation sends z to z^-1 = z^11
        out = Cyc.ZERO
        for k, a in enumerate(self.c):
            if a:
                out = out + Cyc.of(a) * _zpow((12 - k) % 12)
        return out

    def rational(self):
        if any(self.c[1:]):
            raise ValueError(f'not rational: {self.c}')
        return self.c[0]

    def __repr__(self):
        return f'Cyc{self.c}'


Cyc.ZERO = Cyc((0, 0, 0, 0))
Cyc.ONE = Cyc((1, 0, 0, 0))


@lru_cache(maxsize=None)
def _zpow(k):
    out = Cyc.ONE
    z = Cyc((0, 1, 0, 0))
    for _ in range(k % 12):
        out = out * z
    return out


def root_of_unity(order, power):
    """zeta_order ** power inside Q(zeta_12); order must divide 12."""
    assert 12 % order == 0
    return _zpow((12 // order) * power % 12)


# ---------------------------------------------------------------------
# symmetric-group machinery on tuples

def _compose(a, b):
    return tuple(a[i] for i in b)


def _inverse(a):
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def _cycle_type(perm):
    n = len(perm)
    seen, out = [False] * n, []
    for i in range(n):
        if seen[i]:
            continue
        ln, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            ln += 1
        out.append(ln)
    return tuple(sorted(out, reverse=True))


def _elements(n):
    return list(permutations(range(n)))


def _centralizer(elems, x):
    return [g for g in elems if _compose(g, x) == _compose(x, g)]


def _order(x):
    e = tuple(range(len(x)))
    k, p = 1, x
    while p != e:
        p = _compose(p, x)
        k += 1
    return k


def _power(x, k):
    e = tuple(range(len(x)))
    out = e
    for _ in range(k):
        out = _compose(out, x)
    return out


# ---------------------------------------------------------------------
# irreducible characters of the centralizers that occur

def _cyclic_chars(x):
    """Characters of <x>: sigma_k(x^j) = zeta^(jk)."""
    m = _order(x)
    names = {1: ('1',), 2: ('1', '-1'), 3: ('1', 'w', 'w2'),
             4: ('1', 'i', '-1', '-i')}[m]
    out = []
    for k, name in enumerate(names):
        vals = {_power(x, j): root_of_unity(m, j * k) for j in range(m)}
        out.append((name, vals))
    return out


def _klein_chars(gens, elems):
    a, b = gens
    out = []
    for name, (sa, sb) in (('++', (1, 1)), ('+-', (1, -1)),
                           ('-+', (-1, 1)), ('--', (-1, -1))):
        vals = {}
        for i in range(2):
            for j in range(2):
                g = _compose(_power(a, i), _power(b, j))
                vals[g] = Cyc.of(sa ** i * sb ** j)
        assert set(vals) == set(elems)
        out.append((name, vals))
    return out


def _d8_chars(elems, center_nontriv):
    """Dihedral of order 8: four linears plus the 2-dim character."""
    # linear characters factor through the quotient by {e, z}
    cosets = {}
    for g in elems:
        key = frozenset((g, _compose(center_nontriv, g)))
        cosets.setdefault(key, []).append(g)
    coset_list = list(cosets.values())
    assert len(coset_list) == 4
    ident_coset = next(c for c in coset_list if tuple(range(4)) in c)
    others = [c for c in coset_list if c is not ident_coset]
    out = [('l1', {g: Cyc.ONE for g in elems})]
    for idx, kernel_extra in enumerate(others):
        name = 'l' + 'abc'[idx]
        kernel = set(ident_coset) | set(kernel_extra)
        vals = {g: (Cyc.ONE if g in kernel else Cyc.of(-1)) for g in elems}
        out.append((name, vals))
    two = {g: Cyc.ZERO for g in elems}
    two[tuple(range(4))] = Cyc.of(2)
    two[center_nontriv] = Cyc.of(-2)
    out.append(('chi2', two))
    return out


def _symmetric_chars(n, elems):
    out = []
    for lam in partitions(n):
        vals = {g: Cyc.of(murnaghan_nakayama(lam, _cycle_type(g)))
                for g in elems}
        out.append((str(lam), vals))
    return out


def _centralizer_chars(n, x, cent):
    if x == tuple(range(n)):
        return _symmetric_chars(n, cent)
    ctype = _cycle_type(x)
    if n == 4 and ctype == (2, 2):
        return _d8_chars(cent, x)
    if n == 4 and ctype == (2, 1, 1):
        other = tuple(i for i in range(n) if x[i] == i)
        swap = list(range(n))
        swap[other[0]], swap[other[1]] = swap[other[1]], swap[other[0]]
        return _klein_chars((x, tuple(swap)), cent)
    # remaining cases are cyclic: <x> = centralizer
    assert len(cent) == _order(x), (n, x)
    return _cyclic_chars(x)


# ---------------------------------------------------------------------
# the pairing

@dataclass(frozen=True)
class Slot:
    x_name: str
    sigma: str
    dim: int          # sigma(1)
    central_sign: int  # sigma(x)/sigma(1) when it is +-1, else 0


@dataclass
class Family:
    gamma: int
    slots: tuple          # of Slot
    matrix: tuple         # F[i][j] as Fraction

    def index(self, x_name, sigma):
        for i, s in enumerate(self.slots):
            if s.x_name == x_name and s.sigma == sigma:
                return i
        raise KeyError((x_name, sigma))


_X_NAMES = {
    (): '1', (1, 1): '1', (1, 1, 1): '1', (1, 1, 1, 1): '1',
    (2,): 'g2', (2, 1): 'g2', (2, 1, 1): 'g2',
    (2, 2): 'g2x2',
    (3,): 'g3', (3, 1): 'g3',
    (4,): 'g4',
}


@lru_cache(maxsize=None)
def family(n):
    """The Fourier family of S_n for n in {2, 3, 4}."""
    elems = _elements(n)
    order = len(elems)
    reps = {}
    for g in elems:
        reps.setdefault(_cycle_type(g), g)
    # deterministic class order: identity first, then by cycle type
    xs = [reps[t] for t in sorted(reps, reverse=True)]
    slot_defs = []
    for x in xs:
        cent = _centralizer(elems, x)
        for sigma, vals in _centralizer_chars(n, x, cent):
            slot_defs.append((x, cent, sigma, vals))

    def pair(xa, centa, va, xb, centb, vb):
        acc = Cyc.ZERO
        for g in elems:
            gy = _compose(_compose(g, xb), _inverse(g))
            if _compose(xa, gy) != _compose(gy, xa):
                continue
            gx = _compose(_compose(_inverse(g), xa), g)
            acc = acc + va[gy] * vb[gx].conj()
        return acc

    k = len(slot_defs)
    mat = [[None] * k for _ in range(k)]
    for i, (xa, centa, sa, va) in enumerate(slot_defs):
        for j, (xb, centb, sb, vb) in enumerate(slot_defs):
            val = pair(xa, centa, va, xb, centb, vb).rational()
            mat[i][j] = val / (len(centa) * len(centb))

    # involution and symmetry
    for i in range(k):
        for j in range(k):
            assert mat[i][j] == mat[j][i], (i, j)
            acc = sum(mat[i][t] * mat[t][j] for t in range(k))
            assert acc == (1 if i == j else 0), ('F^2', i, j)

    slots = []
    for x, cent, sigma, vals in slot_defs:
        ident = tuple(range(n))
        dim = vals[ident].rational()
        vx = vals[x]
        sign = 0
        if vx == Cyc.of(dim):
            sign = 1
        elif vx == Cyc.of(-dim):
            sign = -1
        slots.append(Slot(x_name=_X_NAMES[_cycle_type(x)], sigma=sigma,
                          dim=int(dim), central_sign=sign))
    # the special slot is (1, trivial); make sure it is first
    triv = str((n,))
    first = next(i for i, s in enumerate(slots)
                 if s.x_name == '1' and s.sigma == triv)
    perm = [first] + [i for i in range(k) if i != first]
    slots = tuple(slots[i] for i in perm)
    mat = tuple(tuple(mat[i][j] for j in perm) for i in perm)
    return Family(gamma=n, slots=slots, matrix=mat)


if __name__ == '__main__':
    for n in (2, 3, 4):
        fam = family(n)
        print(f'S{n}: {len(fam.slots)} slots')
        for s, row in zip(fam.slots, fam.matrix):
            print(f'  ({s.x_name},{s.sigma}) dim={s.dim} '
                  f'sign={s.central_sign}: '
                  + ' '.join(str(v) for v in row))
