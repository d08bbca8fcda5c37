"""Exact integer Laurent polynomials in one variable t.

Coefficients and exponents are Python ints, so arithmetic never wraps. A
polynomial is a sparse map {exponent: coefficient} with no zero entries; the
zero polynomial is the empty map.
"""

from fractions import Fraction
from math import gcd
from types import MappingProxyType


class NotDivisible(ArithmeticError):
    """Raised when no exact quotient over the integer Laurent ring exists."""


class LaurentZeroDivision(ZeroDivisionError):
    pass


class GcdOfZeros(ValueError):
    pass


class LaurentPoly:
    """
    An integer Laurent polynomial.

    >>> str(LaurentPoly({0: 1, 1: -1, 2: 1}))
    '1 - t + t^2'
    >>> str(LaurentPoly({-8: 1, -5: 1}))
    't^-8 + t^-5'
    """
    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        terms = {} if terms is None else terms
        self._terms = {int(e): int(c) for e, c in terms.items() if c != 0}

    @classmethod
    def _wrap(cls, terms):
        # terms must already map int -> nonzero int; the dict is taken over, not copied
        poly = cls.__new__(cls)
        poly._terms = terms
        return poly

    # construction

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls({exp: coeff})

    @classmethod
    def constant(cls, value):
        return cls({0: value})

    @classmethod
    def from_exponents(cls, exponents):
        """Sum of t^e over the given exponents, repeated exponents accumulate."""
        if hasattr(exponents, "tolist"):
            exponents = exponents.tolist()
        terms = {}
        for e in exponents:
            e = int(e)
            terms[e] = terms.get(e, 0) + 1
        return cls._wrap(terms)

    @classmethod
    def from_dense(cls, min_exp, coeffs):
        """Polynomial with coefficient coeffs[i] at t^(min_exp + i); accepts lists and numpy arrays."""
        if hasattr(coeffs, "tolist"):
            coeffs = coeffs.tolist()
        min_exp = int(min_exp)
        return cls._wrap({min_exp + i: int(c) for i, c in enumerate(coeffs) if c})

    @classmethod
    def from_struct(cls, obj):
        """Inverse of to_struct: {"min_exp": m, "coeffs": [c_m, c_{m+1}, ...]}."""
        return cls.from_dense(obj["min_exp"], obj["coeffs"])

    # inspection

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def is_zero(self):
        return not self._terms

    def is_unit(self):
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def min_exp(self):
        assert self._terms, "the zero polynomial has no lowest exponent"
        return min(self._terms)

    def max_exp(self):
        assert self._terms, "the zero polynomial has no highest exponent"
        return max(self._terms)

    def span(self):
        return self.max_exp() - self.min_exp()

    def coefficient(self, exp):
        return self._terms.get(exp, 0)

    def exponents(self):
        return sorted(self._terms)

    def evaluate(self, x):
        """Value at a nonzero integer or Fraction x (exact)."""
        if any(e < 0 for e in self._terms):
            x = Fraction(x)
        return sum(c * x ** e for e, c in self._terms.items())

    # unit operations

    def shift(self, n):
        """Multiply by t^n."""
        return LaurentPoly._wrap({e + n: c for e, c in self._terms.items()})

    def reciprocal(self):
        """Substitute t -> t^-1."""
        return LaurentPoly._wrap({-e: c for e, c in self._terms.items()})

    # ring structure

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            total = terms.get(e, 0) + c
            if total:
                terms[e] = total
            else:
                del terms[e]
        return LaurentPoly._wrap(terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._wrap({e: c * other for e, c in self._terms.items()})
        if isinstance(other, LaurentPoly):
            return mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __reduce__(self):
        return (LaurentPoly, (self._terms,))

    # rendering

    def to_text(self):
        """Ascending exponent order, e.g. '1 - t + t^3 - t^4'."""
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms):
            c = self._terms[e]
            if e == 0:
                body = str(abs(c))
            else:
                power = "t" if e == 1 else f"t^{e}"
                body = power if abs(c) == 1 else f"{abs(c)}{power}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(parts)

    def to_struct(self):
        """Dense form {"min_exp": m, "coeffs": [...]} from min_exp upward."""
        if not self._terms:
            return {"min_exp": 0, "coeffs": []}
        lo, hi = self.min_exp(), self.max_exp()
        return {"min_exp": lo, "coeffs": [self._terms.get(e, 0) for e in range(lo, hi + 1)]}

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"LaurentPoly('{self.to_text()}')"


def _coerce(value):
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly.constant(value)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
T = LaurentPoly.monomial(1)


def mul(a, b):
    """Exact product; zero coefficients are dropped."""
    terms = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            e = ea + eb
            terms[e] = terms.get(e, 0) + ca * cb
    return LaurentPoly._wrap({e: c for e, c in terms.items() if c})


def exact_divide(num, den):
    """
    Return q with num == den * q, or raise NotDivisible.

    Long division on the dense coefficient list of num, working down from the
    top exponent; only the nonzero terms of den are visited, so dividing by a
    binomial is linear in the span of num.
    """
    if den.is_zero():
        raise LaurentZeroDivision("division by the zero Laurent polynomial")
    if num.is_zero():
        return ZERO

    n_lo, d_lo = num.min_exp(), den.min_exp()
    lead = den.span()
    lead_coeff = den.coefficient(den.max_exp())
    den_terms = [(e - d_lo, c) for e, c in den.terms.items()]

    rem = [0] * (num.span() + 1)
    for e, c in num.terms.items():
        rem[e - n_lo] = c
    if len(rem) <= lead:
        raise NotDivisible(f"({num}) / ({den}): divisor spans more than the dividend")

    quotient = {}
    for pos in range(len(rem) - 1, lead - 1, -1):
        c = rem[pos]
        if c == 0:
            continue
        if c % lead_coeff:
            raise NotDivisible(f"({num}) / ({den}): coefficient {c} not divisible by {lead_coeff}")
        qc = c // lead_coeff
        base = pos - lead
        quotient[base] = qc
        for off, dc in den_terms:
            rem[base + off] -= qc * dc

    if any(rem[:lead]):
        raise NotDivisible(f"({num}) / ({den}): nonzero remainder")
    return LaurentPoly._wrap({e + n_lo - d_lo: c for e, c in quotient.items()})


def canonicalize(a):
    """Representative of a up to units +-t^n: lowest exponent 0, lowest coefficient positive."""
    if a.is_zero():
        return a
    lo = a.min_exp()
    shifted = a.shift(-lo)
    return -shifted if shifted.coefficient(0) < 0 else shifted


def equivalent(a, b):
    """a ≐ b, i.e. equal up to multiplication by a unit +-t^n."""
    return canonicalize(a) == canonicalize(b)


def bracket(h, n=1):
    """[h]^n = t^((h-1)n) + ... + t^n + 1."""
    assert h >= 1 and n >= 1, f"bracket needs h >= 1 and n >= 1, got h={h}, n={n}"
    return LaurentPoly({j * n: 1 for j in range(h)})


def divide_bracket(poly, h):
    """Exact poly / [h], through [h](t - 1) = t^h - 1."""
    assert h >= 1, f"bracket size must be positive, got {h}"
    try:
        return exact_divide(poly * (T - 1), LaurentPoly({h: 1, 0: -1}))
    except NotDivisible:
        raise NotDivisible(f"[{h}] does not divide {poly}") from None


def content(a):
    """gcd of the coefficients (0 for the zero polynomial)."""
    g = 0
    for c in a.terms.values():
        g = gcd(g, c)
    return g


def _primitive(coeffs):
    # ints, low to high, not all zero; divides out the content
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    return coeffs if g == 1 else [c // g for c in coeffs]


def _rem(a, b):
    # pseudo-remainder of a by b: a nonzero integer multiple of the remainder over Q.
    # dense int lists low to high, b[-1] != 0
    r = list(a)
    lead = b[-1]
    b_terms = [(i, c) for i, c in enumerate(b) if c]
    while len(r) >= len(b):
        top = r[-1]
        g = gcd(top, lead)
        scale, factor = lead // g, top // g
        if scale != 1:
            r = [c * scale for c in r]
        shift = len(r) - len(b)
        for i, c in b_terms:
            r[shift + i] -= factor * c
        while r and r[-1] == 0:
            r.pop()
        if scale != 1 and r:
            r = _primitive(r)
    return r


def _dense(a):
    lo = a.min_exp()
    out = [0] * (a.span() + 1)
    for e, c in a.terms.items():
        out[e - lo] = c
    return out


def gcd_primitive(a, b):
    """
    Canonical primitive gcd of a and b in Z[t, t^-1].

    Euclid's algorithm on the unit-stripped inputs with integer
    pseudo-remainders, taking the primitive part after every step to keep
    coefficients small.
    """
    if a.is_zero() and b.is_zero():
        raise GcdOfZeros("gcd of two zero polynomials is undefined")
    if b.is_zero():
        a, b = b, a
    if a.is_zero():
        g = content(b)
        return canonicalize(LaurentPoly({e: c // g for e, c in b.terms.items()}))

    x, y = _dense(a), _dense(b)
    if len(x) < len(y):
        x, y = y, x
    x, y = _primitive(x), _primitive(y)
    while y:
        r = _rem(x, y)
        x, y = y, (_primitive(r) if r else [])
    return canonicalize(LaurentPoly.from_dense(0, x))
