"""Exact arithmetic in Q(i) and factorization over the Gaussian integers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from numbers import Rational

from sympy import factorint
from sympy.ntheory import sqrt_mod

_UNITS = {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 3}


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a reduced Fraction."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, str):
        s = text.strip()
        if s and "." not in s and "e" not in s.lower():
            return Fraction(s)
    raise ValueError(f"not an exact rational: {text!r}")


@dataclass(frozen=True)
class GaussianRational:
    """An element re + im*i of Q(i), stored as two reduced fractions."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Rational)) and not isinstance(x, bool):
            return cls(Fraction(x))
        if isinstance(x, str):
            return cls(parse_rational(x))
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")

    @classmethod
    def from_json(cls, obj) -> GaussianRational:
        if isinstance(obj, dict):
            extra = set(obj) - {"re", "im"}
            if extra:
                raise ValueError(f"unexpected keys {sorted(extra)}")
            return cls(parse_rational(obj.get("re", "0")), parse_rational(obj.get("im", "0")))
        return cls(parse_rational(obj))

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}

    # arithmetic

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> GaussianRational:
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("Gaussian rational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = GaussianRational(1)
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        # agrees with hash(Fraction) for real values
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        im = abs(self.im)
        tail = "i" if im == 1 else f"{im}i"
        if self.re == 0:
            return ("-" if self.im < 0 else "") + tail
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{tail}"

    def __repr__(self):
        return f"GaussianRational({self})"


GR = GaussianRational
I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# Gaussian integers as (a, b) int pairs


def _gi_mul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _gi_exact_div(x, y):
    """x / y if y divides x in Z[i], else None."""
    n = y[0] * y[0] + y[1] * y[1]
    re = x[0] * y[0] + x[1] * y[1]
    im = x[1] * y[0] - x[0] * y[1]
    if re % n or im % n:
        return None
    return (re // n, im // n)


def _gi_gcd(x, y):
    while y != (0, 0):
        n = y[0] * y[0] + y[1] * y[1]
        re = x[0] * y[0] + x[1] * y[1]
        im = x[1] * y[0] - x[0] * y[1]
        # nearest-integer quotient
        q = ((2 * re + n) // (2 * n), (2 * im + n) // (2 * n))
        qy = _gi_mul(q, y)
        x, y = y, (x[0] - qy[0], x[1] - qy[1])
    return x


def normalize_associate(z) -> tuple[tuple[int, int], int]:
    """Return (p, k) with z = i^k * p and p in the first quadrant (re > 0, im >= 0)."""
    if z == (0, 0):
        raise ValueError("zero has no normalized associate")
    p = z
    for k in range(4):
        if p[0] > 0 and p[1] >= 0:
            return p, k
        p = (p[1], -p[0])  # multiply by -i
    raise AssertionError("unreachable")


def _split_prime(p: int):
    """Normalized Gaussian prime above a rational prime p = 1 mod 4."""
    x = sqrt_mod(-1, p)
    return normalize_associate(_gi_gcd((p, 0), (x, 1)))[0]


def _factor_gaussian_integer(z) -> tuple[int, dict]:
    norm = z[0] * z[0] + z[1] * z[1]
    factors: dict[tuple[int, int], int] = {}
    for p in factorint(norm):
        if p == 2:
            primes = [(1, 1)]
        elif p % 4 == 3:
            primes = [(p, 0)]
        else:
            pi = _split_prime(p)
            primes = [pi, normalize_associate((pi[0], -pi[1]))[0]]
        for prime in primes:
            while True:
                q = _gi_exact_div(z, prime)
                if q is None:
                    break
                z = q
                factors[prime] = factors.get(prime, 0) + 1
    if z not in _UNITS:
        raise ArithmeticError(f"leftover non-unit {z} after factoring")
    return _UNITS[z], factors


@dataclass(frozen=True)
class GaussianFactorization:
    """x = i**unit_exp * prod(p**e) with first-quadrant primes p."""

    unit_exp: int
    factors: tuple[tuple[tuple[int, int], int], ...]

    def recompose(self) -> GaussianRational:
        x = I ** self.unit_exp
        for (a, b), e in self.factors:
            x = x * GaussianRational(a, b) ** e
        return x

    def exponent(self, prime) -> int:
        for p, e in self.factors:
            if p == tuple(prime):
                return e
        return 0

    @property
    def primes(self):
        return tuple(p for p, _ in self.factors)


def gaussian_factor(x) -> GaussianFactorization:
    """Factor a nonzero Gaussian rational over Z[i].

    The rational is written as num/den with num in Z[i] and den a positive
    integer; both are factored through their integer norms and the exponents
    subtracted.
    """
    x = GaussianRational.coerce(x)
    if not x:
        raise ValueError("cannot factor zero")
    den = lcm(x.re.denominator, x.im.denominator)
    num = (int(x.re * den), int(x.im * den))
    u_num, f_num = _factor_gaussian_integer(num)
    u_den, f_den = _factor_gaussian_integer((den, 0))
    exps = dict(f_num)
    for p, e in f_den.items():
        exps[p] = exps.get(p, 0) - e
    items = sorted(
        ((p, e) for p, e in exps.items() if e),
        key=lambda pe: (pe[0][0] ** 2 + pe[0][1] ** 2, pe[0]),
    )
    return GaussianFactorization((u_num - u_den) % 4, tuple(items))
