"""Assign irreps to Fourier-family slots and assemble the totals table.

Input: one solved support map (shoji.Decomposition).  Each group has a
fixed partition of its irreps into families; a family is either a
singleton or carries the Fourier matrix of S2, S3 or S4.  The search
places the family's irreps on matrix slots subject to:

* the family member of minimal fake-degree valuation sits at the
  special slot (identity element, trivial character);
* a plain-slot irrep (phi = 1 in the support map) needs a slot whose
  character is positive on its central element; an extra slot at a
  two-slot class needs a negative one; extras of the big class are
  unconstrained;
* for the rank-4 group, members tied to specific classes are confined
  to prescribed x-rows of the S4 matrix (see _F4_XROWS);
* every slot value of D = F * (fake degrees, zero off the assigned
  slots) must be a positive rational times a power of q times a
  product of cyclotomic polynomials, with valuation and degree
  constant across the family.

Survivors yield the class-totals table T = F * S on assigned slots,
the identity column of which must reproduce D, and the per-irrep
valuation/degree pair feeding the twist-power trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from braidcount.poly import Poly, cyclotomic

from fourier import family

# families keyed by (dim, fake-valuation) buckets; tied labels share a
# bucket, so the partition does not depend on tie-breaking letters
G2_FAMILIES = (
    (('1_0',), None),
    (('2_1', '2_2', '1_3a', '1_3b'), 3),
    (('1_6',), None),
)

F4_FAMILIES = (
    (('1_0',), None),
    (('4_1',), None),
    (('9_2', '2_4a', '2_4b'), 2),
    (('8_3a',), None),
    (('8_3b',), None),
    (('12_4', '16_5', '9_6a', '9_6b', '6_6a', '6_6b',
      '4_7a', '4_7b', '4_8', '1_12a', '1_12b'), 4),
    (('8_9a',), None),
    (('8_9b',), None),
    (('9_10', '2_16a', '2_16b'), 2),
    (('4_13',), None),
    (('1_24',), None),
)

# x-row confinement inside the big S4 family, by support class of the
# member: the two order-2 rows host the C3(a1)/B2 slot pairs (one row
# each, either way), the two singles take the order-3/order-4 rows,
# and the slots of the big class itself sit over x = 1.
_F4_PAIRED_ROWS = ('g2x2', 'g2')
_F4_SINGLE_ROWS = ('g3', 'g4')


def families_for(rs):
    if rs.type_label == 'G2':
        return G2_FAMILIES
    if rs.type_label == 'F4':
        return F4_FAMILIES
    raise ValueError(rs.type_label)


def is_nice(p):
    """c * q^a * product of cyclotomics with c > 0."""
    if p.is_zero():
        return False
    core = p.exact_div(Poly.monomial(p.valuation))
    lead = core.coeffs[-1]
    if lead <= 0:
        return False
    mono = core * Poly((Fraction(1, 1) / lead,))
    k = 1
    while mono.degree > 0:
        if k > 2 * mono.degree + 2:
            return False
        phi = cyclotomic(k)
        while True:
            quo, rem = divmod(mono, phi)
            if rem.is_zero():
                mono = quo
            else:
                break
        k += 1
    return mono == Poly.one()


@dataclass
class FamilyPlan:
    members: tuple            # irrep labels
    slot_of: dict             # label -> slot index (None for singleton)
    gamma: int | None


@dataclass
class DataCandidate:
    support: object           # SupportMap
    plans: tuple              # of FamilyPlan
    totals: dict              # (irrep, class) -> Poly, rho-totals
    degrees: dict             # irrep -> D polynomial
    sizes: dict


class EmbedError(ValueError):
    pass


def _member_constraint(sup, big_class, label, special):
    """(required central sign, allowed x-rows or None)."""
    cls = sup.block_of[label]
    if label == special:
        return None, None       # pinned to the special slot directly
    plain = label in sup.phi1
    sign = 0
    if plain:
        sign = 1
    elif cls != big_class:
        sign = -1
    return sign, cls


def _enumerate_plans(rs, sup, fam_members, gamma, fakes, big_class):
    """Yield slot assignments {label: slot index} obeying constraints."""
    fmat = family(gamma)
    slots = fmat.slots
    special = min(fam_members, key=lambda e: fakes[e].valuation)
    assert sum(1 for e in fam_members
               if fakes[e].valuation == fakes[special].valuation) == 1
    rest = [e for e in fam_members if e != special]

    sign_of = {}
    cls_of = {}
    for e in rest:
        sign_of[e], cls_of[e] = _member_constraint(sup, big_class, e, special)

    def slot_ok(e, i):
        s = slots[i]
        if i == 0:
            return False
        # the sign constraint reads the character at the central element
        # x of the slot's row, so it only says anything when x != 1
        if s.x_name != '1' and sign_of[e] \
                and s.central_sign != sign_of[e]:
            return False
        if rs.type_label == 'F4' and gamma == 4:
            cls = cls_of[e]
            if cls == big_class:
                return s.x_name == '1'
            if cls in ('C3(a1)', 'B2'):
                return s.x_name in _F4_PAIRED_ROWS
            if cls in ('A~2+A1', 'A2+A~1'):
                return (s.x_name in _F4_SINGLE_ROWS
                        and s.dim == 1 and s.central_sign == 1)
        return True

    def paired_rows_consistent(assign):
        if rs.type_label != 'F4' or gamma != 4:
            return True
        rows = {}
        for e, i in assign.items():
            cls = cls_of.get(e)
            if cls in ('C3(a1)', 'B2'):
                rows.setdefault(cls, set()).add(slots[i].x_name)
        if any(len(v) > 1 for v in rows.values()):
            return False
        if len(rows) == 2 and rows['C3(a1)'] == rows['B2']:
            return False
        singles = {}
        for e, i in assign.items():
            cls = cls_of.get(e)
            if cls in ('A~2+A1', 'A2+A~1'):
                singles[cls] = slots[i].x_name
        if len(singles) == 2 and len(set(singles.values())) == 1:
            return False
        return True

    def rec(i, assign, used):
        if i == len(rest):
            if paired_rows_consistent(assign):
                yield dict(assign)
            return
        e = rest[i]
        for j in range(1, len(slots)):
            if j in used or not slot_ok(e, j):
                continue
            assign[e] = j
            used.add(j)
            if paired_rows_consistent(assign):
                yield from rec(i + 1, assign, used)
            used.remove(j)
            del assign[e]

    for assign in rec(0, {}, set()):
        yield {special: 0, **assign}


def _family_d_and_t(fmat, slot_of, fakes, totals, class_labels):
    """(D per member, T rows per member) or raise EmbedError."""
    k = len(fmat.slots)
    rhat = [Poly.zero()] * k
    for e, i in slot_of.items():
        rhat[i] = fakes[e]
    d_all = []
    for i in range(k):
        acc = Poly.zero()
        for j in range(k):
            f = fmat.matrix[i][j]
            if f and not rhat[j].is_zero():
                acc = acc + Poly((f,)) * rhat[j]
        d_all.append(acc)
    for i, d in enumerate(d_all):
        if not is_nice(d):
            raise EmbedError(f'slot {i}: D = {d} not nice')
    vals = {d.valuation for d in d_all}
    degs = {d.degree for d in d_all}
    if len(vals) != 1 or len(degs) != 1:
        raise EmbedError('valuation/degree not family-constant')
    d_of = {e: d_all[i] for e, i in slot_of.items()}
    t_of = {}
    for e, i in slot_of.items():
        row = {}
        for cls in class_labels:
            acc = Poly.zero()
            for e2, j in slot_of.items():
                f = fmat.matrix[i][j]
                if f:
                    acc = acc + Poly((f,)) * totals[(e2, cls)]
            row[cls] = acc
        t_of[e] = row
    return d_of, t_of


def candidates(rs, dec, fakes):
    """All embedding candidates for one solved support map."""
    sup = dec.support
    fam_specs = families_for(rs)
    big_members = max((m for m, _ in fam_specs), key=len)
    big_special = min(big_members, key=lambda e: fakes[e].valuation)
    big_class = sup.block_of[big_special]
    per_family = []
    for members, gamma in fam_specs:
        if gamma is None:
            e = members[0]
            per_family.append([FamilyPlan(members=members,
                                          slot_of={e: None}, gamma=None)])
            continue
        plans = []
        for slot_of in _enumerate_plans(rs, sup, members, gamma,
                                        fakes, big_class):
            try:
                _family_d_and_t(family(gamma), slot_of, fakes,
                                dec.totals, sup.class_labels)
            except EmbedError:
                continue
            plans.append(FamilyPlan(members=members, slot_of=slot_of,
                                    gamma=gamma))
        if not plans:
            return
        per_family.append(plans)

    def rec(i, chosen):
        if i == len(per_family):
            yield tuple(chosen)
            return
        for plan in per_family[i]:
            chosen.append(plan)
            yield from rec(i + 1, chosen)
            chosen.pop()

    for plans in rec(0, []):
        totals = {}
        degrees = {}
        ok = True
        for plan in plans:
            if plan.gamma is None:
                e = plan.members[0]
                degrees[e] = fakes[e]
                for cls in sup.class_labels:
                    totals[(e, cls)] = dec.totals[(e, cls)]
                continue
            d_of, t_of = _family_d_and_t(family(plan.gamma), plan.slot_of,
                                         fakes, dec.totals,
                                         sup.class_labels)
            degrees.update(d_of)
            for e, row in t_of.items():
                for cls, v in row.items():
                    totals[(e, cls)] = v
        # identity column of T must be the generic degree
        ident = sup.class_labels[0]
        for e, d in degrees.items():
            if totals[(e, ident)] != d:
                ok = False
                break
        if not ok:
            continue
        yield DataCandidate(support=sup, plans=plans, totals=totals,
                            degrees=degrees, sizes=dict(dec.sizes))
