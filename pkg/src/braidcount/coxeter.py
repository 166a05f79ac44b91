"""Principal-nilpotent cross-check for the Coxeter slope family.

For type A and 0 < d < h coprime to the Coxeter number h = n, the
matrix N_d with ones on the d-th subdiagonal of gl_n is nilpotent and
its Jordan type names a unipotent class.  Independently, the braid
attached to the slope d/h selects a minimal class through the point
counts.  The two must agree; :func:`verify_coxeter_minimal` checks
exactly that, with the two answers produced by disjoint code paths
(linear algebra over F_q on one side, character sums on the other).

>>> from .rootsystem import build_root_system
>>> rs = build_root_system('A3')
>>> build_Nd(rs, 3).jordan_or_label
'(2,1,1)'
>>> verify_coxeter_minimal(rs, 1)
True
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .count import TierError, minimal_class, slope_word
from .braid import SlopeSpec
from .oracle import jordan_type
from .unipotent import partition_label

__all__ = ['PrincipalNilpotent', 'build_Nd', 'verify_coxeter_minimal']


@dataclass(frozen=True)
class PrincipalNilpotent:
    """A height-homogeneous nilpotent N_d plus its class name."""

    d: int
    matrix: tuple
    jordan_or_label: str


def build_Nd(rs, d):
    """The nilpotent with ones on the d-th subdiagonal of gl_n.

    >>> from .rootsystem import build_root_system
    >>> build_Nd(build_root_system('A1'), 1).matrix
    ((0, 0), (1, 0))
    >>> build_Nd(build_root_system('A4'), 2).jordan_or_label
    '(3,2)'
    """
    if not rs.type_label.startswith('A'):
        raise TierError(
            'principal-nilpotent construction is implemented for the '
            'defining representation of gl_n only')
    n = rs.rank + 1
    h = rs.coxeter_number
    if not (0 < d < h and gcd(d, h) == 1):
        raise ValueError(f'd must lie in (0, {h}) and be coprime to {h}')
    mat = tuple(tuple(1 if i == j + d else 0 for j in range(n))
                for i in range(n))
    # Jordan type of the nilpotent from (1 + N_d) over F_2: all powers
    # of N_d are 0/1 matrices, so ranks over F_2 equal rational ranks
    # and no information is lost by reducing.
    unip = tuple(tuple((1 if i == j else 0) + mat[i][j] for j in range(n))
                 for i in range(n))
    mu = jordan_type(unip, 2)
    return PrincipalNilpotent(d=d, matrix=mat,
                              jordan_or_label=partition_label(mu))


def verify_coxeter_minimal(rs, d):
    """True when the Jordan type of N_d names the slope-d/h minimal class.

    The left side is plain matrix rank bookkeeping; the right side runs
    the braid attached to the slope d/h through the point-count
    machinery.  Agreement ties the two pipelines together.
    """
    nilp = build_Nd(rs, d)
    word = slope_word(rs, SlopeSpec(d, rs.coxeter_number))
    return nilp.jordan_or_label == minimal_class(rs, word)
