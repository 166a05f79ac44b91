"""Orthogonality solver for unipotent class-total tables.

Input: the character table of a Weyl group, the unipotent class list
(labels and dimensions), and a "support map" assigning to every irrep
a class (with one irrep per class flagged as carrying the trivial
local-system slot).  Output: the matrix S of almost-character class
totals, obtained by factoring the graded pairing

    omega[E][E'] = q^(2N) * Rbar_{E ox E'}(1/q)

as P^T Lambda P with P block-triangular for the class order and
Lambda block-diagonal per class.  Rbar is the graded multiplicity of
E ox E' in the coinvariant algebra.  The factorisation is solved
block-by-block in ascending class dimension; every division must be
exact, same-dimension blocks must decouple, and any failure raises
SolveError — which is what lets a search over candidate support maps
reject wrong ones.

The class sizes come out as the row of S belonging to the trivial
character, and the full decomposition is validated against Steinberg's
count (sizes sum to q^(2N)) and the identity column (S[E][1] equals
the fake degree of E).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from braidcount.poly import Poly
from braidcount.chars import char_table, fake_degrees


class SolveError(ValueError):
    """The candidate support map is inconsistent with the pairing."""


# ---------------------------------------------------------------------
# graded pairing via truncated power series

def _series_inverse(coeffs, order):
    """1/p as a power series to the given order; p[0] must be 1."""
    assert coeffs[0] == 1
    inv = [Fraction(0)] * (order + 1)
    inv[0] = Fraction(1)
    for k in range(1, order + 1):
        acc = Fraction(0)
        for j in range(1, min(k, len(coeffs) - 1) + 1):
            acc += Fraction(coeffs[j]) * inv[k - j]
        inv[k] = -acc
    return inv


def _char_poly_series(rs, order):
    """Per class: series of 1/det(1 - q w) to the given order."""
    cc = rs.conjugacy_classes()
    out = []
    for rep in cc.reps:
        det = rep.char_poly().reversed_to(rs.rank)
        coeffs = list(det.coeffs) + [0] * (rs.rank + 1 - len(det.coeffs))
        out.append(_series_inverse(coeffs, order))
    return out


def omega_matrix(rs, table):
    """Symmetric matrix of pairings, indexed like the character table.

    omega[i][j] = q^(2N) * R_{E_i ox E_j}(1/q) where R is the graded
    coinvariant-algebra multiplicity of the product character.
    """
    two_n = 2 * rs.num_positive
    big_n = rs.num_positive
    cc = rs.conjugacy_classes()
    # guard order: true multiplicities are polynomials of degree <= N,
    # so coefficients N+1..2N of the series must vanish
    order = two_n
    inv_series = _char_poly_series(rs, order)
    shell = Poly.one()
    for d in rs.degrees:
        shell = shell * (1 - Poly.monomial(d))
    shell_coeffs = list(shell.coeffs) + [0] * (order + 1 - len(shell.coeffs))
    k = len(table.labels)
    size = [Fraction(s, rs.weyl_order) for s in cc.sizes]
    rows = table.values
    out = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            acc = [Fraction(0)] * (order + 1)
            for c in range(len(size)):
                w = size[c] * rows[i][c] * rows[j][c]
                if w == 0:
                    continue
                series = inv_series[c]
                for t in range(order + 1):
                    acc[t] += w * series[t]
            # multiply by prod (1 - q^{d_i}), truncated
            poly = [Fraction(0)] * (order + 1)
            for t in range(order + 1):
                if shell_coeffs[t] == 0:
                    continue
                s = shell_coeffs[t]
                for u in range(order + 1 - t):
                    poly[t + u] += s * acc[u]
            assert all(c.denominator == 1 for c in poly), 'non-integer pairing'
            assert all(c == 0 for c in poly[big_n + 1:]), \
                'pairing series does not terminate'
            rbar = Poly(tuple(int(c) for c in poly[:big_n + 1]))
            val = rbar.reversed_to(two_n)
            out[i][j] = val
            out[j][i] = val
    return out


# ---------------------------------------------------------------------
# support maps

@dataclass(frozen=True)
class SupportMap:
    """Assignment of irreps to unipotent classes.

    class_labels: classes in ascending closure-compatible order
    class_dims: label -> dimension of the class
    block_of: irrep label -> class label
    phi1: irrep labels owning the trivial-local-system slot, one per class
    """

    class_labels: tuple
    class_dims: dict
    block_of: dict
    phi1: frozenset

    def blocks(self):
        out = {lab: [] for lab in self.class_labels}
        for irrep, cls in self.block_of.items():
            out[cls].append(irrep)
        return out


def _mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    out = [[Poly.zero()] * p for _ in range(n)]
    for i in range(n):
        for k in range(m):
            if a[i][k].is_zero():
                continue
            for j in range(p):
                if not b[k][j].is_zero():
                    out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out


def _transpose(a):
    return [list(col) for col in zip(*a)]


def _adjugate_parts(lam):
    """(det, adjugate) of a square block, for repeated exact solves."""
    s = len(lam)
    det = _determinant(lam)
    if det.is_zero():
        raise SolveError('singular class block')
    adj = [[_cofactor(lam, j, i) for j in range(s)] for i in range(s)]
    return det, adj


def _apply_adjugate(det, adj, rhs):
    prod = _mat_mul(adj, rhs)
    out = []
    for row in prod:
        try:
            out.append([cell.exact_div(det) for cell in row])
        except ValueError as exc:
            raise SolveError(f'non-polynomial block entry: {exc}') from None
    return out


def _adjugate_solve(lam, rhs):
    """Solve lam * X = rhs exactly over the polynomial ring.

    lam is s x s, rhs is s x t; every entry of X must come out
    polynomial, else SolveError.
    """
    det, adj = _adjugate_parts(lam)
    return _apply_adjugate(det, adj, rhs)


def _determinant(a):
    s = len(a)
    if s == 0:
        return Poly.one()
    if s == 1:
        return a[0][0]
    total = Poly.zero()
    for j in range(s):
        term = a[0][j] * _minor_det(a, 0, j)
        total = total + term if j % 2 == 0 else total - term
    return total


def _minor_det(a, i, j):
    minor = [row[:j] + row[j + 1:] for k, row in enumerate(a) if k != i]
    return _determinant(minor)


def _cofactor(a, i, j):
    sign = 1 if (i + j) % 2 == 0 else -1
    d = _minor_det(a, i, j)
    return d if sign == 1 else -d


@dataclass
class Decomposition:
    support: SupportMap
    irrep_index: dict
    p_matrix: list
    lam_matrix: list
    totals: dict        # (irrep label, class label) -> Poly
    sizes: dict         # class label -> Poly |C^F|


def make_context(rs):
    """Precompute (table, fakes, omega) shared across candidate solves."""
    table = char_table(rs)
    fakes = fake_degrees(rs)
    return table, fakes, omega_matrix(rs, table)


def solve_support(rs, support, ctx=None):
    """Factor the pairing for one candidate support map.

    Raises SolveError when the candidate is inconsistent.  On success
    returns the Decomposition with class sizes and class totals of the
    almost characters.
    """
    table, fakes, omega = ctx if ctx is not None else make_context(rs)
    labels = list(table.labels)
    idx = {lab: i for i, lab in enumerate(labels)}
    k = len(labels)
    blocks = support.blocks()
    for cls, members in blocks.items():
        if not members:
            raise SolveError(f'class {cls} has no irreps')
        if sum(1 for e in members if e in support.phi1) != 1:
            raise SolveError(f'class {cls} needs exactly one plain slot')

    two_n = 2 * rs.num_positive
    levels = {}
    for cls in support.class_labels:
        levels.setdefault(support.class_dims[cls], []).append(cls)
    level_dims = sorted(levels)

    d_of = {cls: (two_n - support.class_dims[cls]) // 2
            for cls in support.class_labels}
    p_mat = [[Poly.zero()] * k for _ in range(k)]
    lam = [[Poly.zero()] * k for _ in range(k)]
    done = []                        # classes already processed

    def sub_matrix(rows, cols, m):
        return [[m[idx[r]][idx[c]] for c in cols] for r in rows]

    def lower_contribution(rows_cls, cols_cls):
        rows = blocks[rows_cls]
        cols = blocks[cols_cls]
        acc = [[Poly.zero()] * len(cols) for _ in rows]
        for m_cls in done:
            mem = blocks[m_cls]
            p_rk = sub_matrix(mem, rows, p_mat)
            if all(cell.is_zero() for row in p_rk for cell in row):
                continue
            p_cj = sub_matrix(mem, cols, p_mat)
            lam_m = sub_matrix(mem, mem, lam)
            part = _mat_mul(_transpose(p_rk), _mat_mul(lam_m, p_cj))
            for a in range(len(rows)):
                for b in range(len(cols)):
                    acc[a][b] = acc[a][b] + part[a][b]
        return acc

    for dim in level_dims:
        for cls in levels[dim]:
            members = blocks[cls]
            low = lower_contribution(cls, cls)
            om = sub_matrix(members, members, omega)
            lam_block = []
            for a in range(len(members)):
                row = []
                for b in range(len(members)):
                    rem = om[a][b] - low[a][b]
                    try:
                        row.append(rem.exact_div(
                            Poly.monomial(2 * d_of[cls])))
                    except ValueError:
                        raise SolveError(
                            f'diagonal block {cls} not divisible') from None
                lam_block.append(row)
            for a, ea in enumerate(members):
                p_mat[idx[ea]][idx[ea]] = Poly.monomial(d_of[cls])
                for b, eb in enumerate(members):
                    lam[idx[ea]][idx[eb]] = lam_block[a][b]
        # same-dimension classes must not see each other
        for cls in levels[dim]:
            for other in levels[dim]:
                if cls >= other:
                    continue
                low = lower_contribution(cls, other)
                om = sub_matrix(blocks[cls], blocks[other], omega)
                for a in range(len(blocks[cls])):
                    for b in range(len(blocks[other])):
                        if om[a][b] != low[a][b]:
                            raise SolveError(
                                f'blocks {cls} and {other} do not decouple')
        for cls in levels[dim]:
            done.append(cls)
        # columns in strictly higher classes
        for higher_dim in level_dims:
            if higher_dim <= dim:
                continue
            for cls in levels[dim]:
                members = blocks[cls]
                lam_block = sub_matrix(members, members, lam)
                for target in levels[higher_dim]:
                    cols = blocks[target]
                    low = lower_contribution(cls, target)
                    om = sub_matrix(members, cols, omega)
                    rhs = [[om[a][b] - low[a][b] for b in range(len(cols))]
                           for a in range(len(members))]
                    solved = _adjugate_solve(lam_block, rhs)
                    qd = Poly.monomial(d_of[cls])
                    for a, ea in enumerate(members):
                        for b, eb in enumerate(cols):
                            try:
                                p_mat[idx[ea]][idx[eb]] = \
                                    solved[a][b].exact_div(qd)
                            except ValueError:
                                raise SolveError(
                                    f'P[{ea}][{eb}] not divisible '
                                    f'by q^{d_of[cls]}') from None

    # the wrong-direction contributions were never subtracted for the
    # columns, so the definition must now be re-checked globally
    lam_p = _mat_mul(lam, p_mat)
    recon = _mat_mul(_transpose(p_mat), lam_p)
    for i in range(k):
        for j in range(k):
            if recon[i][j] != omega[i][j]:
                raise SolveError('reconstruction failed '
                                 f'at {labels[i]}, {labels[j]}')

    # stalk conditions: strictly-lower entries of P carry nonnegative
    # coefficients and degree below d of the row class
    for er in labels:
        for ec in labels:
            if er == ec:
                continue
            p = p_mat[idx[er]][idx[ec]]
            if p.is_zero():
                continue
            if any(c < 0 for c in p.coeffs):
                raise SolveError(f'negative entry P[{er}][{ec}] = {p}')
            if p.degree >= d_of[support.block_of[er]]:
                raise SolveError(
                    f'P[{er}][{ec}] = {p} too large for '
                    f'd={d_of[support.block_of[er]]}')

    totals = {}
    sizes = {}
    phi1_of = {support.block_of[e]: e for e in support.phi1}
    for e in labels:
        for cls in support.class_labels:
            plain = phi1_of[cls]
            acc = Poly.zero()
            for member in blocks[cls]:
                acc = acc + p_mat[idx[member]][idx[e]] \
                    * lam[idx[member]][idx[plain]]
            totals[(e, cls)] = acc
    triv = next(lab for i, lab in enumerate(labels)
                if all(v == 1 for v in table.values[i]))
    for cls in support.class_labels:
        sizes[cls] = totals[(triv, cls)]

    total = Poly.zero()
    for cls in support.class_labels:
        if sizes[cls].degree != support.class_dims[cls]:
            raise SolveError(
                f'size degree {sizes[cls].degree} != dim for {cls}')
        total = total + sizes[cls]
    if total != Poly.monomial(two_n):
        raise SolveError('class sizes do not sum to q^2N')
    for e in labels:
        ident = support.class_labels[0]
        if totals[(e, ident)] != fakes[e]:
            raise SolveError(f'identity column of {e} is not the '
                             'fake degree')
    return Decomposition(support=support, irrep_index=idx, p_matrix=p_mat,
                         lam_matrix=lam, totals=totals, sizes=sizes)
