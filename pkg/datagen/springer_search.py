"""Search for the irrep-to-class support map of the rank-2/rank-4 groups.

The map is pinned by structural constraints and verified by the
orthogonality factorisation:

* every class C owns exactly one "plain" slot, an irrep whose fake
  degree has valuation equal to d_C = (2N - dim C)/2;
* every remaining irrep is an extra slot of some class with d_C
  strictly below its fake-degree valuation;
* a class carries at most one extra slot, except the big class (the
  one with the largest symmetry group), which carries up to its slot
  budget;
* the pairing matrix must factor as P^T Lambda P with P block
  triangular, every division exact, same-dimension blocks decoupled,
  and the strict-lower entries of P nonnegative of degree < d_row.

The factorisation does not pin down where the extra slots live: a
consistent placement usually stays consistent when an extra moves to
another legal class, so enumerating placements multiplies the leaf
count without adding information.  The driver therefore enumerates
the plain-slot assignments (the choices that do change the solution),
and for each assignment runs a depth-first search over placements
that stops after a couple of complete solutions.  Classes are walked
in ascending dimension and the factorisation is solved incrementally,
pruning a branch at the first failed division; each processed block
caches its adjugate and its Lambda * P products.  Downstream
validation is expected to treat solutions that differ only in
placement as interchangeable and to abort if they ever disagree on an
observable quantity.
"""

from __future__ import annotations

import time

from braidcount.poly import Poly

from shoji import (SolveError, SupportMap, _adjugate_parts, _apply_adjugate,
                   _mat_mul, _transpose, make_context, solve_support)

G2_CLASSES = (
    ('1', 0), ('A1', 6), ('A~1', 8), ('G2(a1)', 10), ('G2', 12),
)
G2_BIG_CLASS = 'G2(a1)'
G2_BIG_EXTRAS = 2          # symmetry group S3: three slots, one plain

F4_CLASSES = (
    ('1', 0), ('A1', 16), ('A~1', 22), ('A1+A~1', 28),
    ('A~2', 30), ('A2', 30), ('A2+A~1', 34), ('A~2+A1', 36), ('B2', 36),
    ('C3(a1)', 38), ('F4(a3)', 40), ('C3', 42), ('B3', 42),
    ('F4(a2)', 44), ('F4(a1)', 46), ('F4', 48),
)
F4_BIG_CLASS = 'F4(a3)'
F4_BIG_EXTRAS = 4          # symmetry group S4: five slots, one plain


def profiles(rs):
    if rs.type_label == 'G2':
        return G2_CLASSES, G2_BIG_CLASS, G2_BIG_EXTRAS
    if rs.type_label == 'F4':
        return F4_CLASSES, F4_BIG_CLASS, F4_BIG_EXTRAS
    raise ValueError(rs.type_label)


class _Node:
    __slots__ = ('label', 'd', 'dim', 'members', 'plain', 'lam',
                 'lam_det', 'lam_adj')

    def __init__(self, label, d, dim, members, plain, lam):
        self.label = label
        self.d = d
        self.dim = dim
        self.members = members
        self.plain = plain
        self.lam = lam
        self.lam_det, self.lam_adj = _adjugate_parts(lam)


class _ComboDone(Exception):
    """Enough complete solutions found for this plain assignment."""


class _ComboBudget(Exception):
    """Node budget exhausted for this plain assignment."""


def _subsets(seq, max_size):
    out = [()]
    for size in range(1, max_size + 1):
        def rec(start, chosen):
            if len(chosen) == size:
                out.append(tuple(chosen))
                return
            for i in range(start, len(seq)):
                chosen.append(seq[i])
                rec(i + 1, chosen)
                chosen.pop()
        rec(0, [])
    return out


def _all_zero(block):
    return all(cell.is_zero() for row in block for cell in row)


def plain_assignments(labels, d_of, b_of):
    """Every way to give each class a distinct irrep with b == d."""
    cands = {lab: sorted(e for e, b in b_of.items() if b == d_of[lab])
             for lab in labels}
    out = []

    def rec(i, used, acc):
        if i == len(labels):
            out.append(dict(acc))
            return
        lab = labels[i]
        for e in cands[lab]:
            if e in used:
                continue
            used.add(e)
            acc[lab] = e
            rec(i + 1, used, acc)
            used.discard(e)
            del acc[lab]

    rec(0, set(), {})
    return out


def tree_search(rs, ctx=None, leaf_cap=4, combo_budget=30_000,
                verbose=True):
    """Support maps whose factorisation is fully consistent.

    Returns one or two solved placements per consistent plain-slot
    assignment (``leaf_cap`` many), which is enough for downstream
    validation to compare the genuinely distinct candidates.
    """
    table, fakes, omega = ctx if ctx is not None else make_context(rs)
    class_specs, big_class, big_extras = profiles(rs)
    idx = {lab: i for i, lab in enumerate(table.labels)}
    b_of = {lab: f.valuation for lab, f in fakes.items()}
    two_n = 2 * rs.num_positive

    labels = [lab for lab, _ in class_specs]
    dims = dict(class_specs)
    d_of = {lab: (two_n - dim) // 2 for lab, dim in class_specs}
    triv = next(e for e, b in b_of.items() if b == 0)
    q2n = Poly.monomial(two_n)

    survivors = []
    agg = {'nodes': 0, 'leaves': 0, 'sized': 0, 'dead': 0}
    t0 = time.time()

    def om(r, c):
        return omega[idx[r]][idx[c]]

    combos = plain_assignments(labels, d_of, b_of)
    if verbose:
        print(f'{rs.type_label}: {len(combos)} plain assignments',
              flush=True)

    for ci, combo in enumerate(combos):
        done = []           # _Node list, processing order
        pcols = {}          # (row irrep, col irrep) -> Poly
        stats = {'nodes': 0, 'sized': 0, 'dead': 0, 'found': 0}

        def column_solve(node_members, cls_label):
            """P columns from every processed class into the new block.

            Returns list of (node, p_block, lam_p) on success, None on
            inconsistency; lam_p = node.lam * p_block (None when zero).
            """
            solved = []
            for node in done:
                rows = node.members
                rhs = [[om(r, c) for c in node_members] for r in rows]
                for prev, p_prev, lam_p in solved:
                    if lam_p is None:
                        continue
                    prk = [[pcols.get((rp, r), Poly.zero()) for r in rows]
                           for rp in prev.members]
                    if _all_zero(prk):
                        continue
                    part = _mat_mul(_transpose(prk), lam_p)
                    for a in range(len(rows)):
                        for b in range(len(node_members)):
                            rhs[a][b] = rhs[a][b] - part[a][b]
                if node.dim == dims[cls_label]:
                    if not _all_zero(rhs):
                        return None
                    solved.append((node, None, None))
                    continue
                try:
                    x = _apply_adjugate(node.lam_det, node.lam_adj, rhs)
                except SolveError:
                    return None
                qd = Poly.monomial(node.d)
                p_block = []
                for a in range(len(rows)):
                    prow = []
                    for b in range(len(node_members)):
                        try:
                            p = x[a][b].exact_div(qd)
                        except ValueError:
                            return None
                        if not p.is_zero():
                            if any(cf < 0 for cf in p.coeffs):
                                return None
                            if p.degree >= node.d:
                                return None
                        prow.append(p)
                    p_block.append(prow)
                if _all_zero(p_block):
                    solved.append((node, None, None))
                else:
                    solved.append((node, p_block,
                                   _mat_mul(node.lam, p_block)))
            return solved

        def diagonal_solve(node_members, cls_label, solved):
            dlab = d_of[cls_label]
            k = len(node_members)
            lam_block = [[om(node_members[a], node_members[b])
                          for b in range(k)] for a in range(k)]
            for node, p_block, lam_p in solved:
                if lam_p is None:
                    continue
                part = _mat_mul(_transpose(p_block), lam_p)
                for a in range(k):
                    for b in range(k):
                        lam_block[a][b] = lam_block[a][b] - part[a][b]
            q2d = Poly.monomial(2 * dlab)
            out = []
            for a in range(k):
                row = []
                for b in range(k):
                    try:
                        row.append(lam_block[a][b].exact_div(q2d))
                    except ValueError:
                        return None
                out.append(row)
            return out

        def feasible_remaining(pool, next_i):
            future = labels[next_i:]
            caps = sum(big_extras if lab == big_class else 1
                       for lab in future)
            if len(pool) > caps:
                return False
            for e in pool:
                if not any(d_of[lab] < b_of[e] for lab in future):
                    return False
            return True

        def leaf():
            # Cheap gate before the full re-solve: class sizes are the
            # trivial-irrep row of the totals, and every piece of that
            # row already sits in the search state.
            total = Poly.zero()
            for node in done:
                size = Poly.zero()
                for a, m in enumerate(node.members):
                    pm = pcols.get((m, triv))
                    if pm is None:
                        continue
                    lv = node.lam[a][0]
                    if not lv.is_zero():
                        size = size + pm * lv
                if size.degree != node.dim:
                    return
                total = total + size
            if total != q2n:
                return
            stats['sized'] += 1
            block_of = {}
            phi1 = set()
            for node in done:
                phi1.add(node.plain)
                for e in node.members:
                    block_of[e] = node.label
            sup = SupportMap(class_labels=tuple(labels), class_dims=dims,
                             block_of=block_of, phi1=frozenset(phi1))
            try:
                survivors.append(solve_support(rs, sup,
                                               (table, fakes, omega)))
                stats['found'] += 1
            except SolveError:
                # incremental pass accepted what the full solve
                # rejects: treat as a plain dead leaf
                return
            if stats['found'] >= leaf_cap:
                raise _ComboDone

        def descend(i, pool):
            stats['nodes'] += 1
            if stats['nodes'] > combo_budget:
                raise _ComboBudget
            if i == len(labels):
                if not pool:
                    leaf()
                return
            cls = labels[i]
            dlab = d_of[cls]
            plain = combo[cls]
            cap = big_extras if cls == big_class else 1
            rest = [e for e in pool if b_of[e] > dlab]
            subs = _subsets(rest, cap)
            if cls == big_class:
                # fill the big class first: its block usually carries
                # the full slot budget, so the earliest leaves found
                # this way are the ones later stages care about
                subs.sort(key=len, reverse=True)
            for extras in subs:
                members = (plain,) + extras
                new_pool = [e for e in pool if e not in extras]
                if not feasible_remaining(new_pool, i + 1):
                    continue
                solved = column_solve(members, cls)
                if solved is None:
                    stats['dead'] += 1
                    continue
                lam_block = diagonal_solve(members, cls, solved)
                if lam_block is None:
                    stats['dead'] += 1
                    continue
                try:
                    node = _Node(cls, dlab, dims[cls], members, plain,
                                 lam_block)
                except SolveError:
                    stats['dead'] += 1
                    continue
                for nd, p_block, _ in solved:
                    if p_block is None:
                        continue
                    for a, r in enumerate(nd.members):
                        for b, c in enumerate(members):
                            if not p_block[a][b].is_zero():
                                pcols[(r, c)] = p_block[a][b]
                qd = Poly.monomial(dlab)
                for c in members:
                    pcols[(c, c)] = qd
                done.append(node)
                descend(i + 1, new_pool)
                done.pop()
                for nd, p_block, _ in solved:
                    if p_block is None:
                        continue
                    for a, r in enumerate(nd.members):
                        for b, c in enumerate(members):
                            pcols.pop((r, c), None)
                for c in members:
                    pcols.pop((c, c), None)

        plains = set(combo.values())
        pool = sorted(e for e in b_of if e not in plains)
        outcome = 'done'
        try:
            descend(0, pool)
        except _ComboDone:
            outcome = 'capped'
        except _ComboBudget:
            outcome = 'budget'
        agg['nodes'] += stats['nodes']
        agg['sized'] += stats['sized']
        agg['dead'] += stats['dead']
        agg['leaves'] += stats['found']
        if verbose and (stats['found'] or outcome == 'budget'
                        or (ci + 1) % 50 == 0):
            print(f'  combo {ci + 1}/{len(combos)}: {stats["found"]} '
                  f'found, {stats["nodes"]} nodes, {stats["dead"]} dead '
                  f'({outcome}), total {agg["nodes"]} nodes '
                  f'{time.time() - t0:.0f}s', flush=True)
        if outcome == 'budget' and not stats['found']:
            print(f'  WARNING combo {ci + 1} inconclusive: budget '
                  f'exhausted with no solution; assignment {combo}',
                  flush=True)

    if verbose:
        print(f'{rs.type_label}: {agg["nodes"]} nodes, '
              f'{agg["leaves"]} solutions '
              f'({agg["sized"]} sized leaves), '
              f'{agg["dead"]} dead branches, '
              f'{len(survivors)} survivors, {time.time() - t0:.1f}s',
              flush=True)
    return survivors


if __name__ == '__main__':
    from braidcount.rootsystem import build_root_system

    from ctx import cached_context

    for name in ('G2', 'F4'):
        rs = build_root_system(name)
        decs = tree_search(rs, cached_context(rs))
        for dec in decs[:8]:
            sup = dec.support
            extras = {e: c for e, c in sup.block_of.items()
                      if e not in sup.phi1}
            plain = {c: e for e, c in sup.block_of.items()
                     if e in sup.phi1}
            print('  plain:', plain, flush=True)
            print('  extras:', extras, flush=True)
        if len(decs) > 8:
            print(f'  ... and {len(decs) - 8} more', flush=True)
