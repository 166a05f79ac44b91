"""Stack point counts for twisted flag chains.

The number of F_q-points of the chain stack attached to a positive
braid word beta and a unipotent class C is

    #(beta, C) = (1 / |G^F|) * sum_E tr(T_beta on E_q) * T_{E,C}(q),

an exact rational function of q; T_{E,C} is the class total of the
unipotent principal-series character indexed by E (see `unipotent`).
Two trace routes feed the sum:

* Springer route (every supported type): beta is braid-equal to
  w~^d for a twist root w of order m, and the trace collapses to
  q^((d/m) c(E)) chi_E(w^d); powers of the full twist count the same
  way with chi replaced by the dimension.
* general route (type A only): seminormal matrices evaluate
  tr(T_beta) for arbitrary words.  Outside type A a general word
  raises TierError.

The general route is pinned against the brute-force flag oracle and
against the Springer route wherever both apply; the test suite
exercises both comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import braid, chars, unipotent
from .poly import Poly, RatFunc, _factor_poly
from fractions import Fraction

__all__ = [
    'FullTwistDatum',
    'NicenessVerdict',
    'RigidityReport',
    'SpringerDatum',
    'TierError',
    'braid_traces',
    'count_at_minimal',
    'count_points',
    'count_points_lower',
    'count_table',
    'detect_route',
    'group_order',
    'interval_reps',
    'is_rigid',
    'minimal_class',
    'slope_word',
]


class TierError(NotImplementedError):
    """General-word counts are implemented for type A only."""


@dataclass(frozen=True)
class SpringerDatum:
    """beta ~ w~^d with w a twist root of order m."""

    w: object
    d: int
    m: int

    def power_element(self):
        rs = self.w.rs
        wd = rs.identity
        for _ in range(self.d % self.m):
            wd = wd * self.w
        return wd


@dataclass(frozen=True)
class FullTwistDatum:
    """beta ~ (full twist)^k, the integer-slope degenerate case."""

    k: int


@dataclass(frozen=True)
class NicenessVerdict:
    """Whether a count is a positive scalar times q-power times
    cyclotomics; `witness` names the offending factor otherwise."""

    nice: bool
    witness: str = ''


@dataclass(frozen=True)
class RigidityReport:
    minimal: str
    count: object            # RatFunc at the minimal class
    is_one: bool
    elliptic: bool | None    # None when the route has no Weyl element


def group_order(rs):
    """|G^F| as a polynomial in q: GL_n in type A (central torus
    included, matching the flag oracle), reflection-degree product
    otherwise.

    >>> from .rootsystem import build_root_system
    >>> group_order(build_root_system('A1'))(2)
    6
    """
    if rs.type_label.startswith('A'):
        return unipotent.gl_order_poly(rs.rank + 1)
    out = Poly.monomial(rs.num_positive)
    for deg in rs.degrees:
        out = out * (Poly.monomial(deg) - 1)
    return out


def slope_word(rs, slope):
    """Canonical braid word of an isoclinic slope (see springer_braid)."""
    return braid.springer_braid(rs, slope)


def _validate_word(rs, word):
    word = tuple(word)
    for i in word:
        if not 1 <= i <= rs.rank:
            raise ValueError(
                f'word letter {i} outside 1..{rs.rank} for {rs.type_label}')
    return word


def detect_route(rs, word, power=1):
    """SpringerDatum, FullTwistDatum or None (= general word).

    >>> from .rootsystem import build_root_system
    >>> rs = build_root_system('G2')
    >>> detect_route(rs, (1, 2, 1, 2), 2)
    SpringerDatum(w=WeylElement(G2:1212), d=2, m=3)
    >>> detect_route(rs, (1, 2, 1, 2, 1, 2), 2)
    FullTwistDatum(k=1)
    >>> rs3 = build_root_system('A2')
    >>> detect_route(rs3, (1, 1)) is None
    True
    """
    tau = _validate_word(rs, word) * power
    two_n = 2 * rs.num_positive
    ft = braid.full_twist_word(rs)
    if len(tau) % len(ft) == 0:
        k = len(tau) // len(ft)
        if braid.braid_equal(rs, tau, ft * k):
            return FullTwistDatum(k=k)
    if tau:
        for m in range(2, two_n + 1):
            if two_n % m:
                continue
            ell = two_n // m
            if len(tau) % ell:
                continue
            d = len(tau) // ell
            if gcd(d, m) != 1:
                continue
            for w in braid.find_root_elements(rs, m):
                if braid.braid_equal(rs, tau, w.reduced_word() * d):
                    return SpringerDatum(w=w, d=d, m=m)
    return None


def braid_traces(rs, word, power=1):
    """(route, {irrep label: tr(T_beta) as Poly}); TierError when the
    word is general and the type is not A."""
    table = chars.char_table(rs)
    route = detect_route(rs, word, power)
    if isinstance(route, SpringerDatum):
        traces = {lab: chars.springer_trace(rs, route.w, route.d, route.m,
                                            lab)
                  for lab in table.labels}
    elif isinstance(route, FullTwistDatum):
        cont = chars.contents(rs)
        traces = {lab: Poly.monomial(route.k * cont[lab].c,
                                     table.values[i][0])
                  for i, lab in enumerate(table.labels)}
    elif rs.type_label.startswith('A'):
        tau = _validate_word(rs, word) * power
        traces = {lab: chars.hecke_trace_general(rs, tau, lab)
                  for lab in table.labels}
    else:
        raise TierError(
            f'the word is not a twist-root power, and general-word '
            f'traces are not implemented for type {rs.type_label}')
    return route, traces


def count_table(rs, word, power=1):
    """[(class label, count RatFunc)] in catalog order."""
    cat, _ = unipotent.classes(rs)
    _, traces = braid_traces(rs, word, power)
    table = chars.char_table(rs)
    gorder = group_order(rs)
    out = []
    for c in cat:
        acc = Poly.zero()
        for lab in table.labels:
            t = traces[lab]
            if t.is_zero():
                continue
            tot = unipotent.rho_total(rs, lab, c.label)
            if not tot.is_zero():
                acc = acc + t * tot
        out.append((c.label, RatFunc(acc, gorder)))
    return out


def count_points(rs, word, class_label, power=1):
    """The count at one class.

    >>> from .rootsystem import build_root_system
    >>> rs = build_root_system('A1')
    >>> count_points(rs, (1,), '(2)')
    RatFunc((1) / (q - 1))
    >>> count_points(rs, (1,), '(1,1)')
    RatFunc(0)
    """
    for lab, cnt in count_table(rs, word, power):
        if lab == class_label:
            return cnt
    raise KeyError(f'unknown class {class_label!r} for {rs.type_label}')


def count_points_lower(rs, word, class_label, power=1):
    """Count summed over the closure: all classes <= the given one.

    >>> from .rootsystem import build_root_system
    >>> rs = build_root_system('A1')
    >>> count_points_lower(rs, (1,), '(2)')
    RatFunc((1) / (q - 1))
    """
    _, closure = unipotent.classes(rs)
    if class_label not in closure.labels:
        raise KeyError(f'unknown class {class_label!r} for {rs.type_label}')
    total = RatFunc.zero()
    for lab, cnt in count_table(rs, word, power):
        if closure.leq(lab, class_label):
            total = total + cnt
    return total


def _support(rs, word, power):
    """(closure, nonzero class labels) via the full table."""
    _, closure = unipotent.classes(rs)
    nonzero = [lab for lab, cnt in count_table(rs, word, power)
               if not cnt.is_zero()]
    return closure, nonzero


def minimal_class(rs, word, power=1, shortcut=True):
    """The unique closure-minimal class with nonzero count.

    When the braid contains the full twist every class supports
    points, so the answer is the identity class without any character
    sums (`shortcut=False` forces the formula route; both are tested
    against each other).
    """
    cat, closure = unipotent.classes(rs)
    tau = _validate_word(rs, word) * power
    if shortcut and braid.contains_full_twist(rs, tau):
        return cat[0].label
    closure, nonzero = _support(rs, word, power)
    if not nonzero:
        raise ValueError('the count vanishes on every class')
    mins = closure.minimal_elements(nonzero)
    if len(mins) != 1:
        raise ValueError(f'no unique minimal class: {sorted(mins)}')
    return mins[0]


def interval_reps(rs, word, power=1):
    """(lowest, highest) class of the support, which is checked to be
    the full closure interval between them.

    >>> from .rootsystem import build_root_system
    >>> rs = build_root_system('A1')
    >>> interval_reps(rs, (1,))
    ('(2)', '(2)')
    """
    closure, nonzero = _support(rs, word, power)
    if not nonzero:
        raise ValueError('the count vanishes on every class')
    mins = closure.minimal_elements(nonzero)
    maxes = [a for a in nonzero
             if not any(b != a and closure.leq(a, b) for b in nonzero)]
    if len(mins) != 1 or len(maxes) != 1:
        raise ValueError(
            f'support is not an interval: minimals {sorted(mins)}, '
            f'maximals {sorted(maxes)}')
    lo, hi = mins[0], maxes[0]
    expected = {lab for lab in closure.labels
                if closure.leq(lo, lab) and closure.leq(lab, hi)}
    if set(nonzero) != expected:
        raise ValueError(
            f'support {sorted(nonzero)} is not the interval '
            f'[{lo}, {hi}]')
    return lo, hi


def _nice_verdict(count):
    if count.is_zero():
        return NicenessVerdict(False, 'count is zero')
    sn, _, _, leftn = _factor_poly(count.num)
    sd, _, _, leftd = _factor_poly(count.den)
    if leftn is not None:
        return NicenessVerdict(
            False, f'non-cyclotomic numerator factor ({leftn})')
    if leftd is not None:
        return NicenessVerdict(
            False, f'non-cyclotomic denominator factor ({leftd})')
    if Fraction(sn) / Fraction(sd) <= 0:
        return NicenessVerdict(False, 'negative leading scalar')
    return NicenessVerdict(True)


def count_at_minimal(rs, word, power=1):
    """(minimal class, its count, NicenessVerdict)."""
    label = minimal_class(rs, word, power)
    count = count_points(rs, word, label, power)
    return label, count, _nice_verdict(count)


def is_rigid(rs, word, power=1):
    """RigidityReport: count 1 at the minimal class, plus whether the
    underlying Weyl power is elliptic (None for general words)."""
    route, _ = braid_traces(rs, word, power)
    label, count, _ = count_at_minimal(rs, word, power)
    elliptic = None
    if isinstance(route, SpringerDatum):
        elliptic = route.power_element().is_elliptic()
    return RigidityReport(minimal=label, count=count,
                          is_one=(count == RatFunc.one()),
                          elliptic=elliptic)
