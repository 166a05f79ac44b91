"""Brute-force flag-chain counting for GL_n over F_2 and F_3.

Everything here is elementary linear algebra over a small prime field:
enumerate all complete flags, record which pairs sit in which relative
position, and count chains of flags closing up under a unipotent twist.
No character theory enters, which is the point — these counts are the
ground truth that pins the sign, transpose, and normalisation
conventions of every other module.

The per-generator adjacency matrices have row sums q, so entries of a
length-k chain product are bounded by q^k and the float64 BLAS products
are exact far beyond any supported size (guarded anyway, with an exact
object-dtype fallback).
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import product as iproduct
from math import factorial

import numpy as np

__all__ = [
    'FlagEnumeration',
    'chain_count',
    'flag_enumeration',
    'generator_matrices',
    'gl_order',
    'jordan_type',
    'position_matrices',
    'relative_position',
    'stack_count_bruteforce',
    'unipotent_class_size',
    'unipotent_rep',
]

SUPPORTED_Q = (2, 3)
FLAG_BUDGET = 3000  # largest supported enumeration is GL_4(F_3): 2080 flags
_CACHE_VERSION = 1


def _check_q(q):
    if q not in SUPPORTED_Q:
        raise ValueError(
            f'q={q} not supported (prime fields q in {SUPPORTED_Q} only)')


# ---------------------------------------------------------------------
# linear algebra over F_q

def _rref(rows, q):
    """Canonical reduced row-echelon form, nonzero rows only."""
    mat = [list(r) for r in rows]
    n = len(mat[0]) if mat else 0
    out = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] % q), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][c], q - 2, q)
        mat[r] = [x * inv % q for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] % q:
                f = mat[i][c]
                mat[i] = [(x - f * y) % q for x, y in zip(mat[i], mat[r])]
        r += 1
    for row in mat[:r]:
        out.append(tuple(row))
    return tuple(out)


def _reduce_vector(rref_rows, v, q):
    """Remainder of v after reduction by RREF rows (zero iff in span)."""
    v = list(v)
    for row in rref_rows:
        lead = next(i for i, x in enumerate(row) if x)
        if v[lead]:
            f = v[lead]
            v = [(x - f * y) % q for x, y in zip(v, row)]
    return tuple(v)


def _rank(rows, q):
    return len(_rref(rows, q))


def _mat_mul_modq(a, b, q):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) % q
                       for j in range(n)) for i in range(n))


# ---------------------------------------------------------------------
# flags

@dataclass(frozen=True)
class FlagEnumeration:
    """All complete flags in F_q^n.

    Each flag is a tuple of n-1 levels; level j is the RREF basis
    (tuple of row vectors) of the (j+1)-dimensional subspace.
    """

    n: int
    q: int
    flags: tuple
    index: dict = field(compare=False, repr=False)

    @property
    def count(self):
        return len(self.flags)


@lru_cache(maxsize=None)
def flag_enumeration(n, q):
    """Enumerate the complete flags of F_q^n.

    >>> flag_enumeration(2, 2).count
    3
    >>> flag_enumeration(3, 2).count
    21
    >>> flag_enumeration(4, 3).count
    2080
    """
    _check_q(q)
    expected = 1
    for i in range(2, n + 1):
        expected *= sum(q ** j for j in range(i))
    if expected > FLAG_BUDGET:
        raise ValueError(
            f'{expected} flags for GL_{n}(F_{q}) exceeds the oracle '
            f'budget of {FLAG_BUDGET}')
    vectors = [v for v in iproduct(range(q), repeat=n) if any(v)]
    partial = [()]
    for _level in range(n - 1):
        nxt = set()
        for flag in partial:
            base = flag[-1] if flag else ()
            for v in vectors:
                if any(_reduce_vector(base, v, q)):
                    nxt.add(flag + (_rref(base + (v,), q),))
        partial = sorted(nxt)
    flags = tuple(partial)
    assert len(flags) == expected, 'flag count mismatch'
    return FlagEnumeration(n=n, q=q, flags=flags,
                           index={f: i for i, f in enumerate(flags)})


def _apply_matrix_to_flag(g, flag, q):
    return tuple(
        _rref(tuple(tuple(sum(g[i][j] * v[j] for j in range(len(v))) % q
                          for i in range(len(v))) for v in level), q)
        for level in flag)


def relative_position(f1, f2, q):
    """The permutation w with dim(F_i ∩ F'_j) = #{k <= j : w(k) <= i}.

    Flags are as produced by flag_enumeration; the result is in
    one-line notation, 1-based: w = (w(1), ..., w(n)).  Flags differing
    at exactly one level i are at position s_i.

    >>> fe = flag_enumeration(3, 2)
    >>> relative_position(fe.flags[0], fe.flags[0], 2)
    (1, 2, 3)
    """
    n = len(f1) + 1
    levels1 = [()] + list(f1)
    levels2 = [()] + list(f2)
    full = tuple(tuple(1 if i == j else 0 for j in range(n))
                 for i in range(n))
    levels1.append(full)
    levels2.append(full)
    d = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        for j in range(n + 1):
            stacked = levels1[i] + levels2[j]
            d[i][j] = i + j - _rank(stacked, q)
    w = [0] * n
    for j in range(1, n + 1):
        for i in range(1, n + 1):
            if d[i][j] - d[i - 1][j] - d[i][j - 1] + d[i - 1][j - 1] == 1:
                w[j - 1] = i
                break
        else:
            raise ValueError('malformed flags: no position found')
    return tuple(w)


@lru_cache(maxsize=None)
def generator_matrices(n, q):
    """Adjacency matrices A_i: A_i[F,F'] = 1 iff positions differ at
    exactly level i (relative position s_i).  float64, exact 0/1.
    """
    fe = flag_enumeration(n, q)
    mats = []
    for i in range(1, n):
        m = np.zeros((fe.count, fe.count))
        groups = {}
        for idx, flag in enumerate(fe.flags):
            key = flag[:i - 1] + flag[i:]
            groups.setdefault(key, []).append(idx)
        for members in groups.values():
            assert len(members) == q + 1, 'pencil size must be q+1'
            for x in members:
                for y in members:
                    if x != y:
                        m[x, y] = 1.0
        assert (m.sum(axis=1) == q).all(), 'row sums must equal q'
        mats.append(m)
    return tuple(mats)


@lru_cache(maxsize=None)
def position_matrices(n, q):
    """P_w for every w in S_n, keyed by one-line notation.

    Built by BFS products of the generator matrices: a product that
    stays 0/1-valued is a longer position matrix, and each matrix is
    labelled from a witness pair via relative_position, so no
    composition convention can be silently flipped.  Cached on disk —
    construction multiplies #flags-square matrices n!(n-1) times.
    """
    fe = flag_enumeration(n, q)
    cached = _load_position_cache(n, q, fe.count)
    if cached is not None:
        return cached
    gens = generator_matrices(n, q)
    ident = tuple(range(1, n + 1))
    found = {ident: np.eye(fe.count)}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for a in gens:
                prod = found[w] @ a
                if prod.max() != 1.0:
                    continue  # length went down: q P_{ws} + (q-1) P_w
                x, y = np.argwhere(prod == 1.0)[0]
                key = relative_position(fe.flags[x], fe.flags[y], q)
                if key not in found:
                    found[key] = prod
                    nxt.append(key)
        frontier = nxt
    assert len(found) == factorial(n), 'missing relative positions'
    total = sum(found.values())
    assert (total == 1.0).all(), 'positions must partition flag pairs'
    _store_position_cache(n, q, found)
    return found


def _cache_dir():
    base = os.environ.get('BRAIDCOUNT_CACHE')
    if base is None:
        base = os.path.join(tempfile.gettempdir(), 'braidcount-oracle')
    os.makedirs(base, exist_ok=True)
    return base


def _cache_path(n, q):
    return os.path.join(_cache_dir(), f'positions_{n}_{q}_v{_CACHE_VERSION}.npz')


def _load_position_cache(n, q, count):
    path = _cache_path(n, q)
    if not os.path.exists(path):
        return None
    try:
        data = np.load(path)
        perms = data['perms']
        stack = data['stack']
        if stack.shape != (len(perms), count, count):
            return None
        return {tuple(int(x) for x in perms[i]): stack[i].astype(float)
                for i in range(len(perms))}
    except Exception:
        return None


def _store_position_cache(n, q, found):
    perms = np.array(sorted(found), dtype=np.int8)
    stack = np.stack([found[tuple(int(x) for x in p)].astype(np.uint8)
                      for p in perms])
    try:
        np.savez_compressed(_cache_path(n, q), perms=perms, stack=stack)
    except OSError:
        pass  # cache is an optimisation, never a requirement


# ---------------------------------------------------------------------
# unipotent elements

def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n))
                 for i in range(n))


def unipotent_rep(mu):
    """Canonical Jordan matrix with unit eigenvalue and block sizes mu.

    >>> unipotent_rep((2, 1))
    ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    """
    n = sum(mu)
    rows = [[0] * n for _ in range(n)]
    pos = 0
    for part in mu:
        for i in range(part):
            rows[pos + i][pos + i] = 1
            if i + 1 < part:
                rows[pos + i][pos + i + 1] = 1
        pos += part
    return tuple(tuple(r) for r in rows)


def _is_unipotent(u, q):
    n = len(u)
    nilp = tuple(tuple((u[i][j] - (1 if i == j else 0)) % q
                       for j in range(n)) for i in range(n))
    power = nilp
    for _ in range(n - 1):
        if all(all(x == 0 for x in row) for row in power):
            return True
        power = _mat_mul_modq(power, nilp, q)
    return all(all(x == 0 for x in row) for row in power)


def jordan_type(u, q):
    """Partition of Jordan block sizes, from ranks of (u-1)^k.

    >>> jordan_type(((1, 0), (0, 1)), 2)
    (1, 1)
    >>> jordan_type(unipotent_rep((4,)), 3)
    (4,)
    >>> jordan_type(((1,0,1,0),(0,1,0,1),(0,0,1,0),(0,0,0,1)), 2)
    (2, 2)
    """
    n = len(u)
    if not _is_unipotent(u, q):
        raise ValueError('matrix is not unipotent over F_q')
    nilp = tuple(tuple((u[i][j] - (1 if i == j else 0)) % q
                       for j in range(n)) for i in range(n))
    ranks = [n]
    power = nilp
    while True:
        r = _rank(power, q)
        ranks.append(r)
        if r == 0:
            break
        power = _mat_mul_modq(power, nilp, q)
    blocks = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    # blocks[k-1] = number of Jordan blocks of size >= k; conjugate it
    mu = []
    for size in range(len(blocks), 0, -1):
        count = blocks[size - 1] - (blocks[size] if size < len(blocks) else 0)
        mu.extend([size] * count)
    assert sum(mu) == n
    return tuple(sorted(mu, reverse=True))


def gl_order(n, q):
    """|GL_n(F_q)|.

    >>> gl_order(2, 2), gl_order(2, 3), gl_order(3, 2)
    (6, 48, 168)
    """
    total = q ** (n * (n - 1) // 2)
    for i in range(1, n + 1):
        total *= q ** i - 1
    return total


def _conjugate_partition(mu):
    if not mu:
        return ()
    return tuple(sum(1 for p in mu if p > j) for j in range(mu[0]))


def unipotent_class_size(n, q, mu, method='auto'):
    """#{unipotent u in GL_n(F_q) with Jordan type mu}.

    method 'enumerate' scans all q^(n^2) matrices (n <= 4 at q=2,
    n <= 3 at q=3); 'formula' uses the centralizer order
    q^(sum mu'_i^2 - sum m_i^2) * prod |GL_{m_i}(q)| over multiplicities
    m_i of the parts.  'auto' enumerates for n <= 3 and otherwise uses
    the formula; the test suite checks the two agree wherever both run.

    >>> unipotent_class_size(2, 2, (2,))
    3
    >>> unipotent_class_size(2, 3, (2,))
    8
    >>> unipotent_class_size(3, 2, (2, 1))
    21
    """
    _check_q(q)
    mu = tuple(sorted(mu, reverse=True))
    if sum(mu) != n:
        raise ValueError(f'{mu} is not a partition of {n}')
    if method == 'auto':
        method = 'enumerate' if n <= 3 else 'formula'
    if method == 'formula':
        conj = _conjugate_partition(mu)
        mult = {}
        for part in mu:
            mult[part] = mult.get(part, 0) + 1
        cent = q ** (sum(c * c for c in conj)
                     - sum(m * m for m in mult.values()))
        for m in mult.values():
            cent *= gl_order(m, q)
        assert gl_order(n, q) % cent == 0
        return gl_order(n, q) // cent
    if method == 'enumerate':
        if q ** (n * n) > 100_000:
            raise ValueError('enumeration over q^(n^2) matrices too large')
        count = 0
        for entries in iproduct(range(q), repeat=n * n):
            u = tuple(entries[i * n:(i + 1) * n] for i in range(n))
            if _is_unipotent(u, q) and jordan_type(u, q) == mu:
                count += 1
        return count
    raise ValueError(f'unknown method {method!r}')


# ---------------------------------------------------------------------
# chain counting

def chain_count(n, q, g, word):
    """#{(F_1,...,F_{k+1}) : pos(F_i, F_{i+1}) = s_{word_i}, F_{k+1} = g F_1}.

    >>> chain_count(2, 2, ((1, 1), (0, 1)), (1,))
    2
    >>> chain_count(2, 2, ((1, 0), (0, 1)), (1,))
    0
    >>> chain_count(2, 2, ((1, 0), (0, 1)), ())
    3
    """
    _check_q(q)
    g = tuple(tuple(x % q for x in row) for row in g)
    if not _is_unipotent(g, q):
        raise ValueError('twist matrix must be unipotent')
    if any(not 1 <= i <= n - 1 for i in word):
        raise ValueError(f'word letters must be in 1..{n - 1}')
    fe = flag_enumeration(n, q)
    gperm = np.array([fe.index[_apply_matrix_to_flag(g, f, q)]
                      for f in fe.flags])
    if not word:
        return int(np.sum(gperm == np.arange(fe.count)))
    gens = generator_matrices(n, q)
    if fe.count * q ** len(word) < 2 ** 53:
        prod = reduce(lambda m, i: m @ gens[i - 1],
                      word[1:], gens[word[0] - 1])
        total = float(prod[np.arange(fe.count), gperm].sum())
        assert total == int(total)
        return int(total)
    exact = [[int(x) for x in row] for row in gens[word[0] - 1]]
    exact = np.array(exact, dtype=object)
    for i in word[1:]:
        exact = exact @ np.array(
            [[int(x) for x in row] for row in gens[i - 1]], dtype=object)
    return int(sum(exact[j, gperm[j]] for j in range(fe.count)))


def stack_count_bruteforce(n, q, word, mu):
    """Exact rational stack count: |C_mu^F| * chain_count(u_mu) / |GL_n|.

    >>> stack_count_bruteforce(2, 2, (1,), (2,))
    Fraction(1, 1)
    >>> stack_count_bruteforce(2, 3, (1,), (2,))
    Fraction(1, 2)
    >>> stack_count_bruteforce(2, 2, (1,), (1, 1))
    Fraction(0, 1)
    """
    size = unipotent_class_size(n, q, mu)
    chains = chain_count(n, q, unipotent_rep(tuple(sorted(mu, reverse=True))),
                         tuple(word))
    return Fraction(size * chains, gl_order(n, q))
