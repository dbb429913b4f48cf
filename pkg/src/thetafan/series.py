"""Truncated monoid-ring arithmetic.

A Series is a finite sum  z^base * sum_q c_q z^q  with q running over
nonnegative integer offset tuples (exponents in the basis E relative to
the base point) and rational coefficients.  Terms whose offset exceeds
the truncation order (coordinate sum) are discarded everywhere, so a
Series is an element of z^base * k[N^+]/m^(k+1).

Wall functions are the univariate specialization  f = 1 + sum c_j z^(j n)
with a fixed primitive direction exponent n; they know how to raise
themselves to arbitrary integer powers by truncated binomials.
"""

from fractions import Fraction

from .errors import DomainError, InputError
from .linalg import vec_add, vec_gcd


def _zero_tuple(rank):
    return (0,) * rank


class Series:
    """Truncated series with a tracked base exponent.

    terms maps offset tuples (all entries >= 0, coordinate sum <= order)
    to nonzero Fractions.
    """

    __slots__ = ("rank", "base", "order", "terms")

    def __init__(self, rank, base=None, order=0, terms=None):
        self.rank = rank
        self.base = tuple(base) if base is not None else _zero_tuple(rank)
        self.order = order
        self.terms = {}
        if terms:
            for q, c in terms.items():
                c = Fraction(c)
                if c == 0 or sum(q) > order:
                    continue
                self.terms[tuple(q)] = c

    # -- constructors --------------------------------------------------

    @classmethod
    def monomial(cls, rank, exponent, order, coeff=1):
        return cls(rank, base=exponent, order=order, terms={_zero_tuple(rank): coeff})

    @classmethod
    def one(cls, rank, order):
        return cls.monomial(rank, _zero_tuple(rank), order)

    def copy(self):
        s = Series(self.rank, self.base, self.order)
        s.terms = dict(self.terms)
        return s

    # -- predicates -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return (self.base == _zero_tuple(self.rank)
                and self.terms == {_zero_tuple(self.rank): Fraction(1)})

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.order == other.order
        return (self.base == other.base and self.order == other.order
                and self.terms == other.terms)

    def __hash__(self):
        raise TypeError("Series is mutable in construction; not hashable")

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        self._check_compat(other)
        s = self.copy()
        for q, c in other.terms.items():
            new = s.terms.get(q, Fraction(0)) + c
            if new == 0:
                s.terms.pop(q, None)
            else:
                s.terms[q] = new
        return s

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, c):
        c = Fraction(c)
        s = Series(self.rank, self.base, self.order)
        if c != 0:
            s.terms = {q: v * c for q, v in self.terms.items()}
        return s

    def __mul__(self, other):
        if not isinstance(other, Series):
            return self.scaled(other)
        if other.rank != self.rank:
            raise InputError("rank mismatch")
        if other.order != self.order:
            raise InputError("truncation order mismatch")
        out = Series(self.rank, vec_add(self.base, other.base), self.order)
        k = self.order
        terms = {}
        for q1, c1 in self.terms.items():
            s1 = sum(q1)
            for q2, c2 in other.terms.items():
                if s1 + sum(q2) > k:
                    continue
                q = vec_add(q1, q2)
                prev = terms.get(q)
                terms[q] = c1 * c2 if prev is None else prev + c1 * c2
        out.terms = {q: c for q, c in terms.items() if c != 0}
        return out

    __rmul__ = __mul__

    def shifted(self, delta):
        """Multiply by the monomial z^delta (delta in N, any sign)."""
        s = self.copy()
        s.base = vec_add(self.base, delta)
        return s

    def rebased(self, new_base):
        """Re-express relative to new_base <= base + offsets (componentwise).

        Only legal when every shifted offset stays nonnegative and within
        the truncation order; used when accumulating series against a
        common reference exponent.
        """
        diff = tuple(b - nb for b, nb in zip(self.base, new_base))
        if any(x < 0 for x in diff):
            raise DomainError("new base must be componentwise <= old base")
        s = Series(self.rank, new_base, self.order)
        for q, c in self.terms.items():
            q2 = vec_add(q, diff)
            if sum(q2) <= self.order:
                s.terms[q2] = c
        return s

    def truncated(self, new_order):
        if new_order > self.order:
            raise DomainError("cannot extend a truncated series")
        s = Series(self.rank, self.base, new_order)
        s.terms = {q: c for q, c in self.terms.items() if sum(q) <= new_order}
        return s

    def min_order_term(self):
        """(offset, coeff) of the minimal term in (order, lex) position."""
        if not self.terms:
            return None
        q = min(self.terms, key=lambda t: (sum(t), t))
        return q, self.terms[q]

    def exponents(self):
        """Full exponents base + offset of all terms, sorted."""
        return sorted(vec_add(self.base, q) for q in self.terms)

    def coefficient(self, exponent):
        """Coefficient of the full exponent z^exponent."""
        q = tuple(e - b for e, b in zip(exponent, self.base))
        if any(x < 0 for x in q):
            return Fraction(0)
        return self.terms.get(q, Fraction(0))

    def _check_compat(self, other):
        if self.rank != other.rank:
            raise InputError("rank mismatch")
        if self.order != other.order:
            raise InputError("truncation order mismatch")
        if self.base != other.base:
            raise InputError("series bases differ; rebase explicitly")

    # -- io ---------------------------------------------------------------

    def to_json(self):
        out = []
        for q in sorted(self.terms, key=lambda t: vec_add(self.base, t)):
            c = self.terms[q]
            out.append({"exp": list(vec_add(self.base, q)),
                        "num": c.numerator, "den": c.denominator})
        return out

    def __repr__(self):
        if self.is_zero():
            return "Series(0)"
        bits = []
        for q in sorted(self.terms, key=lambda t: (sum(t), t)):
            bits.append("%s*z%r" % (self.terms[q], list(vec_add(self.base, q))))
        return "Series(" + " + ".join(bits) + " mod m^%d)" % (self.order + 1)


def series_multiply(a, b):
    """Product in A_k; spec-level entry point."""
    return a * b


class WallFunction:
    """f = 1 + sum_j coeffs[j-1] * z^(j*n) with n a primitive exponent.

    Stores only the coefficient list; expansion to a Series and integer
    powers (negative allowed, by truncated geometric inversion) are
    computed on demand and cached per truncation order.
    """

    __slots__ = ("rank", "n", "coeffs", "_pow_cache")

    def __init__(self, rank, n, coeffs):
        if all(x == 0 for x in n):
            raise InputError("wall function needs a nonzero direction exponent")
        if vec_gcd(n) != 1:
            raise InputError("direction exponent must be primitive in N")
        self.rank = rank
        self.n = tuple(n)
        self.coeffs = [Fraction(c) for c in coeffs]
        while self.coeffs and self.coeffs[-1] == 0:
            self.coeffs.pop()
        self._pow_cache = {}

    @classmethod
    def from_single_term(cls, rank, n, coeff):
        """1 + coeff * z^n; n may be a multiple of a primitive exponent."""
        g = vec_gcd(n)
        n0 = tuple(x // g for x in n)
        coeffs = [Fraction(0)] * g
        coeffs[g - 1] = Fraction(coeff)
        return cls(rank, n0, coeffs)

    @classmethod
    def from_binomial(cls, rank, n, exponent, order):
        """(1 + z^n)^exponent truncated; n need not be primitive here."""
        g = vec_gcd(n)
        n0 = tuple(x // g for x in n)
        step = sum(n0)
        jmax = order // (step * g) if step else 0
        coeffs = []
        c = Fraction(1)
        for j in range(1, jmax + 1):
            c = c * Fraction(exponent - j + 1, j)
            coeffs.append(c)
        if g == 1:
            return cls(rank, n0, coeffs)
        spread = []
        for j in range(1, jmax * g + 1):
            spread.append(coeffs[j // g - 1] if j % g == 0 else Fraction(0))
        return cls(rank, n0, spread)

    def is_trivial(self, order=None):
        if order is None:
            return not self.coeffs
        step = sum(self.n)
        return all(c == 0 for j, c in enumerate(self.coeffs, start=1)
                   if j * step <= order)

    def unit_coeffs(self, order):
        """Coefficient list c_1..c_J relevant below the truncation order."""
        step = sum(self.n)
        jmax = order // step
        out = self.coeffs[:jmax]
        return out + [Fraction(0)] * (jmax - len(out))

    def multiplied(self, other, order):
        """Product of two wall functions with the same direction exponent."""
        if other.n != self.n:
            raise InputError("wall functions have different direction exponents")
        a = [Fraction(1)] + self.unit_coeffs(order)
        b = [Fraction(1)] + other.unit_coeffs(order)
        jmax = max(len(a), len(b)) - 1
        a += [Fraction(0)] * (jmax + 1 - len(a))
        b += [Fraction(0)] * (jmax + 1 - len(b))
        prod = [Fraction(0)] * (jmax + 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                if i + j <= jmax and cb != 0:
                    prod[i + j] += ca * cb
        return WallFunction(self.rank, self.n, prod[1:])

    def power(self, exponent, order):
        """f^exponent as a Series (base 0), truncated at `order`."""
        key = (exponent, order)
        cached = self._pow_cache.get(key)
        if cached is not None:
            return cached
        step = sum(self.n)
        jmax = order // step
        base = [Fraction(1)] + self.unit_coeffs(order)
        base += [Fraction(0)] * (jmax + 1 - len(base))
        out = _univariate_power(base, exponent, jmax)
        s = Series(self.rank, order=order)
        for j, c in enumerate(out):
            if c != 0:
                q = tuple(j * x for x in self.n)
                if sum(q) <= order:
                    s.terms[q] = c
        self._pow_cache[key] = s
        return s

    def to_series(self, order):
        return self.power(1, order)

    def to_json(self, order):
        return {"n": list(self.n),
                "coeffs": [[c.numerator, c.denominator]
                           for c in self.unit_coeffs(order)]}


def _univariate_power(coeffs, exponent, jmax):
    """coeffs = [1, c1, c2, ...] -> (sum c_j t^j)^exponent mod t^(jmax+1)."""
    one = [Fraction(1)] + [Fraction(0)] * jmax

    def mul(a, b):
        out = [Fraction(0)] * (jmax + 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j in range(0, jmax + 1 - i):
                if b[j] != 0:
                    out[i + j] += ca * b[j]
        return out

    def inv(a):
        # a[0] must be 1
        out = [Fraction(0)] * (jmax + 1)
        out[0] = Fraction(1)
        for j in range(1, jmax + 1):
            acc = Fraction(0)
            for i in range(1, j + 1):
                acc += a[i] * out[j - i]
            out[j] = -acc
        return out

    if exponent < 0:
        coeffs = inv(coeffs)
        exponent = -exponent
    result = one
    powed = coeffs[: jmax + 1] + [Fraction(0)] * max(0, jmax + 1 - len(coeffs))
    e = exponent
    while e:
        if e & 1:
            result = mul(result, powed)
        e >>= 1
        if e:
            powed = mul(powed, powed)
    return result


def wall_power(f, exponent, order):
    """Spec-level alias: f^exponent truncated at `order`."""
    return f.power(exponent, order)
