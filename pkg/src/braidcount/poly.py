"""Exact univariate polynomial and rational-function arithmetic over Q.

All point counts produced by this package are rational functions of the
field-size variable q, so this module is the numeric bedrock: dense
polynomials with int/Fraction coefficients, gcd-reduced rational
functions, cyclotomic polynomials, and a factored display that writes
values the way the tables do (a q-power times cyclotomic factors).

>>> q = Poly.var()
>>> (q + 1) * (q - 1)
Poly(q^2 - 1)
>>> cyclotomic(6)
Poly(q^2 - q + 1)
>>> factored(q**4 * cyclotomic(3) * cyclotomic(6))
'q^4*Phi3*Phi6'
>>> r = RatFunc(Poly.one(), q - 1)
>>> r + r
RatFunc((2) / (q - 1))
>>> factored(r)
'Phi1^-1'
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    'Poly',
    'RatFunc',
    'cyclotomic',
    'factored',
    'parse_rational',
]


def _norm_scalar(c):
    """Collapse Fractions with denominator 1 to plain ints.

    The exact type check (rather than isinstance) sidesteps the abc
    machinery on Fraction, which dominates profiles otherwise.
    """
    if type(c) is Fraction and c.denominator == 1:
        return int(c)
    return c


def _trim(coeffs):
    norm = None
    for i, c in enumerate(coeffs):
        if type(c) is Fraction and c.denominator == 1:
            if norm is None:
                norm = list(coeffs)
            norm[i] = int(c)
    if norm is not None:
        while norm and norm[-1] == 0:
            norm.pop()
        return tuple(norm)
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    if n != len(coeffs):
        coeffs = coeffs[:n]
    return coeffs if type(coeffs) is tuple else tuple(coeffs)


@dataclass(frozen=True)
class Poly:
    """A polynomial in q, coefficients lowest-degree first.

    Coefficients are exact (int or Fraction); trailing zeros are
    trimmed so equality and hashing are structural.

    >>> Poly((1, 0, 3))
    Poly(3*q^2 + 1)
    >>> Poly((1, 0, 3)).degree
    2
    >>> Poly(()).degree
    -1
    """

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, 'coeffs', _trim(self.coeffs))

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero():
        return _ZERO

    @staticmethod
    def one():
        return _ONE

    @staticmethod
    def var():
        """The polynomial q itself."""
        return Poly((0, 1))

    @staticmethod
    def const(c):
        return Poly((c,))

    @staticmethod
    @lru_cache(maxsize=None)
    def monomial(k, c=1):
        """c * q^k.

        >>> Poly.monomial(3)
        Poly(q^3)
        """
        return Poly((0,) * k + (c,))

    @staticmethod
    def coerce(x):
        if type(x) is Poly or isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly.const(x)
        raise TypeError(f'cannot coerce {x!r} to Poly')

    # -- basic queries -----------------------------------------------

    @property
    def degree(self):
        """Degree, with the convention deg 0 = -1."""
        return len(self.coeffs) - 1

    @property
    def valuation(self):
        """Lowest degree with nonzero coefficient (0 for the zero poly).

        >>> (Poly.var()**3 + Poly.var()**5).valuation
        3
        """
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return 0

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def is_integral(self):
        """True when every coefficient is an integer."""
        return all(isinstance(c, int) for c in self.coeffs)

    # -- ring operations ---------------------------------------------

    def __add__(self, other):
        if type(other) is not Poly:
            other = Poly.coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        if not b:
            return self if a is self.coeffs else other
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        if type(other) is not Poly:
            other = Poly.coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) >= len(b):
            if not b:
                return self
            out = list(a)
            for i, c in enumerate(b):
                out[i] = out[i] - c
        else:
            out = [-c for c in b]
            for i, c in enumerate(a):
                out[i] = out[i] + c
        return Poly(out)

    def __rsub__(self, other):
        return Poly.coerce(other).__sub__(self)

    def __mul__(self, other):
        if type(other) is not Poly:
            other = Poly.coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError('negative power of a Poly; use RatFunc')
        result, base = Poly.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        """Exact long division over Q.

        >>> divmod(Poly.var()**2 - 1, Poly.var() - 1)
        (Poly(q + 1), Poly(0))
        """
        if type(other) is not Poly:
            other = Poly.coerce(other)
        oc = other.coeffs
        if not oc:
            raise ZeroDivisionError('polynomial division by zero')
        sc = self.coeffs
        dq, dr = len(oc) - 1, len(sc) - 1
        if dr < dq:
            return _ZERO, self
        if oc[dq] == 1 and not any(oc[:dq]):
            # monic monomial divisor: quotient and remainder by slicing
            if dq == 0:
                return self, _ZERO
            return Poly(sc[dq:]), Poly(sc[:dq])
        rem = list(sc)
        quot = [0] * (dr - dq + 1)
        if oc[dq] == 1:
            for k in range(dr - dq, -1, -1):
                c = rem[dq + k]
                quot[k] = c
                if c != 0:
                    for j, b in enumerate(oc):
                        rem[j + k] -= c * b
        else:
            inv_lead = Fraction(1, 1) / Fraction(oc[dq])
            for k in range(dr - dq, -1, -1):
                c = _norm_scalar(Fraction(rem[dq + k]) * inv_lead)
                quot[k] = c
                if c != 0:
                    for j, b in enumerate(oc):
                        rem[j + k] -= c * b
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        """Division that must leave no remainder.

        >>> (Poly.var()**6 - 1).exact_div(cyclotomic(6))
        Poly(q^4 + q^3 - q - 1)
        """
        quo, rem = divmod(self, other)
        if not rem.is_zero():
            raise ValueError(f'inexact division: {self} by {other}')
        return quo

    @staticmethod
    def gcd(a, b):
        """Monic gcd by the Euclidean algorithm.

        >>> Poly.gcd(Poly.var()**4 - 1, Poly.var()**6 - 1)
        Poly(q^2 - 1)
        """
        a, b = Poly.coerce(a), Poly.coerce(b)
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        lead = Fraction(a.leading())
        return Poly(tuple(_norm_scalar(Fraction(c) / lead) for c in a.coeffs))

    # -- evaluation and reshaping ------------------------------------

    def __call__(self, x):
        """Exact Horner evaluation (int/Fraction in, int/Fraction out)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return _norm_scalar(acc)

    def shifted(self, k):
        """Multiply by q^k; k may be negative if the valuation allows.

        >>> Poly.monomial(3).shifted(-2)
        Poly(q)
        """
        if k >= 0:
            if self.is_zero():
                return self
            return Poly((0,) * k + self.coeffs)
        if self.valuation < -k and not self.is_zero():
            raise ValueError('negative shift below valuation')
        return Poly(self.coeffs[-k:])

    def reversed_to(self, n):
        """q^n * p(1/q): coefficient list reversed into degree n.

        Requires n >= deg(p) so the result is a polynomial.

        >>> (1 + 2 * Poly.var()).reversed_to(3)
        Poly(q^3 + 2*q^2)
        """
        if n < self.degree:
            raise ValueError('reversal degree below polynomial degree')
        out = [0] * (n + 1)
        for i, c in enumerate(self.coeffs):
            out[n - i] = c
        return Poly(tuple(out))

    # -- display -----------------------------------------------------

    def __str__(self):
        if self.is_zero():
            return '0'
        parts = []
        for k in range(self.degree, -1, -1):
            c = self[k]
            if c == 0:
                continue
            sign = '-' if c < 0 else '+'
            mag = -c if c < 0 else c
            if k == 0:
                body = _coeff_str(mag)
            else:
                var = 'q' if k == 1 else f'q^{k}'
                body = var if mag == 1 else f'{_coeff_str(mag)}*{var}'
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in parts[1:]:
            text += f' {sign} {body}'
        return text

    def __repr__(self):
        return f'Poly({self})'


_ZERO = Poly(())
_ONE = Poly((1,))


def _coeff_str(c):
    if isinstance(c, Fraction) and c.denominator != 1:
        return f'{c.numerator}/{c.denominator}'
    return str(c)


def parse_rational(token):
    """Parse 'p' or 'p/q' into an int or Fraction.

    >>> parse_rational('-3'), parse_rational('1/3')
    (-3, Fraction(1, 3))
    """
    token = token.strip()
    if '/' in token:
        num, den = token.split('/')
        return _norm_scalar(Fraction(int(num), int(den)))
    return int(token)


@lru_cache(maxsize=None)
def cyclotomic(n):
    """The n-th cyclotomic polynomial Phi_n, exactly.

    Computed as (q^n - 1) divided by the product of Phi_d over proper
    divisors d of n.

    >>> cyclotomic(1), cyclotomic(2), cyclotomic(12)
    (Poly(q - 1), Poly(q + 1), Poly(q^4 - q^2 + 1))
    """
    if n < 1:
        raise ValueError('cyclotomic index must be positive')
    num = Poly.monomial(n) - 1
    for d in range(1, n):
        if n % d == 0:
            num = num.exact_div(cyclotomic(d))
    return num


_FACTOR_BOUND = 30  # largest Phi index tried during display factoring


def _factor_poly(p):
    """Split p into (scalar, q-power, {k: multiplicity of Phi_k}, leftover)."""
    v = p.valuation
    p = p.shifted(-v)
    phis = {}
    for k in range(1, _FACTOR_BOUND + 1):
        phi = cyclotomic(k)
        if phi.degree > p.degree:
            continue
        while p.degree >= phi.degree:
            quo, rem = divmod(p, phi)
            if not rem.is_zero():
                break
            p = quo
            phis[k] = phis.get(k, 0) + 1
    if p.degree == 0:
        return p.leading(), v, phis, None
    # Non-cyclotomic residue: pull out the leading scalar anyway.
    return 1, v, phis, p


def factored(x):
    """Human-readable factored form: scalar * q-power * Phi factors.

    Works for Poly and RatFunc; denominator factors show up with
    negative exponents, matching the table typography.

    >>> factored(Poly.zero())
    '0'
    >>> factored(Poly.monomial(6))
    'q^6'
    >>> factored(RatFunc(Poly.monomial(3), cyclotomic(1) * cyclotomic(2)))
    'q^3*Phi1^-1*Phi2^-1'
    >>> factored(Poly((1, 1, 1, 1)))  # 1+q+q^2+q^3 = Phi2*Phi4
    'Phi2*Phi4'
    """
    if isinstance(x, Poly):
        x = RatFunc.from_poly(x)
    if x.num.is_zero():
        return '0'
    sn, vn, pn, leftn = _factor_poly(x.num)
    sd, vd, pd, leftd = _factor_poly(x.den)
    scalar = _norm_scalar(Fraction(sn) / Fraction(sd))
    v = vn - vd
    phis = dict(pn)
    for k, e in pd.items():
        phis[k] = phis.get(k, 0) - e
        if phis[k] == 0:
            del phis[k]
    parts = []
    if v:
        parts.append('q' if v == 1 else f'q^{v}')
    for k in sorted(phis):
        e = phis[k]
        parts.append(f'Phi{k}' if e == 1 else f'Phi{k}^{e}')
    if leftn is not None:
        parts.append(f'({leftn})')
    if leftd is not None:
        parts.append(f'({leftd})^-1')
    neg = scalar < 0
    mag = -scalar if neg else scalar
    if mag != 1 or not parts:
        text = _coeff_str(mag)
        if isinstance(mag, Fraction) and parts:
            text = f'({text})'
        parts.insert(0, text)
    out = '*'.join(parts)
    return '-' + out if neg else out


@dataclass(frozen=True)
class RatFunc:
    """Reduced rational function num/den in q.

    Canonical form: gcd(num, den) = 1 and den has coprime integer
    coefficients with positive leading coefficient; this makes equality
    and hashing structural.

    >>> q = Poly.var()
    >>> RatFunc(q**2 - 1, q - 1)
    RatFunc(q + 1)
    >>> RatFunc(q, 3 * q**2)
    RatFunc((1/3) / (q))
    """

    num: Poly
    den: Poly

    def __post_init__(self):
        num, den = Poly.coerce(self.num), Poly.coerce(self.den)
        if den.is_zero():
            raise ZeroDivisionError('rational function with zero denominator')
        if num.is_zero():
            num, den = Poly.zero(), Poly.one()
        else:
            g = Poly.gcd(num, den)
            num, den = num.exact_div(g), den.exact_div(g)
            # Scale so den is integer, primitive, positive-leading.
            from math import gcd as igcd, lcm
            mult = lcm(*(Fraction(c).denominator for c in den.coeffs)) \
                if den.coeffs else 1
            den, num = den * mult, num * mult
            content = 0
            for c in den.coeffs:
                content = igcd(content, abs(int(c)))
            if den.leading() < 0:
                content = -content
            if content not in (0, 1):
                den = Poly(tuple(_norm_scalar(Fraction(c, content))
                                 for c in den.coeffs))
                num = num * Fraction(1, content)
        object.__setattr__(self, 'num', num)
        object.__setattr__(self, 'den', den)

    # -- constructors ------------------------------------------------

    @staticmethod
    def from_poly(p):
        return RatFunc(Poly.coerce(p), Poly.one())

    @staticmethod
    def zero():
        return RatFunc(Poly.zero(), Poly.one())

    @staticmethod
    def one():
        return RatFunc(Poly.one(), Poly.one())

    @staticmethod
    def coerce(x):
        if isinstance(x, RatFunc):
            return x
        return RatFunc.from_poly(Poly.coerce(x))

    # -- field operations --------------------------------------------

    def __add__(self, other):
        other = RatFunc.coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other):
        return RatFunc.coerce(other) + (-self)

    def __mul__(self, other):
        other = RatFunc.coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFunc.coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError('division by zero rational function')
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / self

    def __pow__(self, e):
        if e < 0:
            return (RatFunc.one() / self) ** (-e)
        return RatFunc(self.num ** e, self.den ** e)

    # -- queries -----------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den == Poly.one()

    def as_poly(self):
        """The underlying Poly; raises if the denominator is not 1.

        >>> RatFunc(Poly.var()**2 - 1, Poly.var() + 1).as_poly()
        Poly(q - 1)
        """
        if not self.is_polynomial():
            raise ValueError(f'not a polynomial: {self}')
        return self.num

    def __call__(self, x):
        """Evaluate at x; exact Fraction result. None if x is a pole."""
        d = self.den(x)
        if d == 0:
            return None
        return _norm_scalar(Fraction(self.num(x)) / Fraction(d))

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f'({self.num}) / ({self.den})'

    def __repr__(self):
        return f'RatFunc({self})'
