"""Exact arithmetic in finite fields and rational-function fields over them.

A tower is a rational-function field L = F(s) with a discrete valuation
normalized on the base field K: omega(s) = 1/e. Four shapes are provided:

* rational: K = L = F_p(t), s = t.
* inseparable: L = F_p(s) with s^p = t, so L = K^{1/p}.
* unramified: L = F_{p^2}(t), sigma acting on coefficients.
* ramified: L = F_p(s) with s^2 = t, sigma(s) = -s (p odd).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class FieldError(ValueError):
    pass


class PrimeField:
    """Z/p; elements are ints in [0, p)."""

    def __init__(self, p: int) -> None:
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.q = p
        self.zero = 0
        self.one = 1

    def __repr__(self) -> str:
        return f"F{self.p}"

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def from_int(self, n: int):
        return n % self.p

    def sigma(self, a):
        return a

    def elements(self):
        return list(range(self.p))

    def random(self, rng: random.Random):
        return rng.randrange(self.p)

    def fmt(self, a) -> str:
        return str(a)


class QuadraticField:
    """F_{p^2} = F_p[theta] with theta^2 = A theta + B; sigma(theta) = A - theta."""

    def __init__(self, p: int, A: int, B: int) -> None:
        self.base = PrimeField(p)
        self.p = p
        self.q = p * p
        self.A, self.B = A % p, B % p
        # x^2 - A x - B must be irreducible
        if any((x * x - self.A * x - self.B) % p == 0 for x in range(p)):
            raise FieldError(f"x^2 - {A}x - {B} is reducible over F{p}")
        self.zero = (0, 0)
        self.one = (1, 0)
        self.theta = (0, 1)

    @classmethod
    def standard(cls, p: int) -> QuadraticField:
        if p == 2:
            return cls(2, 1, 1)
        n = next(n for n in range(2, p) if pow(n, (p - 1) // 2, p) == p - 1)
        return cls(p, 0, n)

    def __repr__(self) -> str:
        return f"F{self.q}"

    def add(self, a, b):
        return ((a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p)

    def sub(self, a, b):
        return ((a[0] - b[0]) % self.p, (a[1] - b[1]) % self.p)

    def neg(self, a):
        return (-a[0] % self.p, -a[1] % self.p)

    def mul(self, a, b):
        x0, x1 = a
        y0, y1 = b
        t = x1 * y1
        return ((x0 * y0 + self.B * t) % self.p, (x0 * y1 + x1 * y0 + self.A * t) % self.p)

    def sigma(self, a):
        x0, x1 = a
        return ((x0 + self.A * x1) % self.p, -x1 % self.p)

    def norm(self, a) -> int:
        n = self.mul(a, self.sigma(a))
        assert n[1] == 0
        return n[0]

    def inv(self, a):
        n = self.norm(a)
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        ni = pow(n, -1, self.p)
        s = self.sigma(a)
        return (s[0] * ni % self.p, s[1] * ni % self.p)

    def from_int(self, n: int):
        return (n % self.p, 0)

    def elements(self):
        return [(a, b) for b in range(self.p) for a in range(self.p)]

    def random(self, rng: random.Random):
        return (rng.randrange(self.p), rng.randrange(self.p))

    def fmt(self, a) -> str:
        x0, x1 = a
        if x1 == 0:
            return str(x0)
        th = "th" if x1 == 1 else f"{x1}th"
        return th if x0 == 0 else f"{x0}+{th}"


# ---------------------------------------------------------------------------
# Polynomials: tuples of coefficients, lowest degree first, no trailing zeros


def _trim(F, c: list) -> tuple:
    while c and c[-1] == F.zero:
        c.pop()
    return tuple(c)


def padd(F, a, b):
    n = max(len(a), len(b))
    return _trim(F, [F.add(a[i] if i < len(a) else F.zero, b[i] if i < len(b) else F.zero) for i in range(n)])


def pneg(F, a):
    return tuple(F.neg(x) for x in a)


def pmul(F, a, b):
    if not a or not b:
        return ()
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == F.zero:
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _trim(F, out)


def pscale(F, a, c):
    return _trim(F, [F.mul(x, c) for x in a])


def pdivmod(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    q = [F.zero] * max(len(a) - len(b) + 1, 0)
    lead_inv = F.inv(b[-1])
    while len(rem) >= len(b) and rem:
        c = F.mul(rem[-1], lead_inv)
        k = len(rem) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            rem[k + i] = F.sub(rem[k + i], F.mul(c, y))
        rem = list(_trim(F, rem))
    return _trim(F, q), tuple(rem)


def pgcd(F, a, b):
    while b:
        a, b = b, pdivmod(F, a, b)[1]
    if not a:
        return a
    return pscale(F, a, F.inv(a[-1]))


def pord(F, a) -> int:
    """Order of vanishing at 0."""
    return next(i for i, x in enumerate(a) if x != F.zero)


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Tower:
    """L = F(s) over K, with omega(s) = 1/e and an automorphism sigma of L/K."""

    kind: str
    F: object
    e: int
    p: int

    @classmethod
    def rational(cls, p: int) -> Tower:
        return cls("rational", PrimeField(p), 1, p)

    @classmethod
    def inseparable(cls, p: int) -> Tower:
        return cls("inseparable", PrimeField(p), p, p)

    @classmethod
    def unramified(cls, p: int) -> Tower:
        return cls("unramified", QuadraticField.standard(p), 1, p)

    @classmethod
    def ramified(cls, p: int) -> Tower:
        if p == 2:
            raise FieldError("ramified quadratic towers are only realized in odd characteristic")
        return cls("ramified", PrimeField(p), 2, p)

    def __repr__(self) -> str:
        p = self.p
        return {
            "rational": f"F{p}(t)",
            "inseparable": f"F{p}(t^(1/{p}))/F{p}(t)",
            "unramified": f"{self.F!r}(t)/F{p}(t)",
            "ramified": f"F{p}(t^(1/2))/F{p}(t)",
        }[self.kind]

    # -- elements -----------------------------------------------------
    def make(self, num: Sequence, den: Sequence = None) -> RatFunc:
        F = self.F
        num = _trim(F, list(num))
        den = _trim(F, list(den)) if den is not None else (F.one,)
        if not den:
            raise ZeroDivisionError("zero denominator")
        return RatFunc.reduced(self, num, den)

    def const(self, c) -> RatFunc:
        if isinstance(c, int):
            c = self.F.from_int(c)
        return self.make((c,))

    @property
    def zero(self) -> RatFunc:
        return self.make(())

    @property
    def one(self) -> RatFunc:
        return self.const(1)

    @property
    def s(self) -> RatFunc:
        return self.make((self.F.zero, self.F.one))

    @property
    def t(self) -> RatFunc:
        return self.s ** self.e if self.kind != "unramified" else self.s

    def monomial(self, n: int, c=None) -> RatFunc:
        c = self.F.one if c is None else c
        if n >= 0:
            return self.make([self.F.zero] * n + [c])
        return self.make((c,), [self.F.zero] * (-n) + [self.F.one])

    def random_poly(self, rng: random.Random, degree: int, base: bool = False):
        F = self.F
        step = self.e if base and self.kind in ("inseparable", "ramified") else 1
        coeffs = [F.zero] * (degree * step + 1)
        for i in range(0, degree * step + 1, step):
            c = F.random(rng)
            if base and self.kind == "unramified":
                c = F.from_int(c[0])
            coeffs[i] = c
        return coeffs

    def random(self, rng: random.Random, degree: int = 2, base: bool = False, nonzero: bool = False) -> RatFunc:
        """A pseudorandom low-degree element; of K when base is set."""
        while True:
            num = self.random_poly(rng, degree, base)
            den = self.random_poly(rng, degree, base)
            if not any(x != self.F.zero for x in den):
                continue
            shift = rng.randint(-2, 2) * (self.e if base and self.kind != "unramified" else 1)
            x = self.make(num, den) * self.monomial(shift)
            if nonzero and x.is_zero():
                continue
            return x

    def in_base(self, x: RatFunc) -> bool:
        """Membership in K."""
        if self.kind == "rational":
            return True
        if self.kind == "unramified":
            return all(c[1] == 0 for c in x.num + x.den)
        # K = F_p(s^e): in reduced form only exponents divisible by e occur
        return all(
            c == self.F.zero or i % self.e == 0 for poly in (x.num, x.den) for i, c in enumerate(poly)
        )

    def sigma(self, x: RatFunc) -> RatFunc:
        F = self.F
        if self.kind in ("rational", "inseparable"):
            return x
        if self.kind == "unramified":
            return self.make([F.sigma(c) for c in x.num], [F.sigma(c) for c in x.den])
        flip = lambda poly: [c if i % 2 == 0 else F.neg(c) for i, c in enumerate(poly)]
        return self.make(flip(x.num), flip(x.den))

    def trace_one(self) -> RatFunc:
        """An element lambda with lambda + sigma(lambda) = 1 and omega(lambda) = 0."""
        if self.kind in ("rational", "inseparable"):
            raise FieldError("trace is only defined for separable quadratic towers")
        if self.p != 2:
            return self.const(1) / self.const(2)
        F = self.F
        return self.const(F.inv(F.from_int(F.A)) if F.A else F.one) * self.const(F.theta)


class RatFunc:
    """num/den in lowest terms with monic den."""

    __slots__ = ("tower", "num", "den")

    def __init__(self, tower: Tower, num: tuple, den: tuple) -> None:
        self.tower = tower
        self.num = num
        self.den = den

    @classmethod
    def reduced(cls, tower: Tower, num: tuple, den: tuple) -> RatFunc:
        F = tower.F
        if not num:
            return cls(tower, (), (F.one,))
        g = pgcd(F, num, den)
        if len(g) > 1:
            num = pdivmod(F, num, g)[0]
            den = pdivmod(F, den, g)[0]
        lead = F.inv(den[-1])
        return cls(tower, pscale(F, num, lead), pscale(F, den, lead))

    def _coerce(self, other) -> RatFunc:
        if isinstance(other, RatFunc):
            if other.tower is not self.tower:
                raise FieldError("elements of different towers")
            return other
        if isinstance(other, int):
            return self.tower.const(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        F = self.tower.F
        num = padd(F, pmul(F, self.num, o.den), pmul(F, o.num, self.den))
        return RatFunc.reduced(self.tower, num, pmul(F, self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.tower, pneg(self.tower.F, self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        F = self.tower.F
        return RatFunc.reduced(self.tower, pmul(F, self.num, o.num), pmul(F, self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc.reduced(self.tower, self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __pow__(self, n: int) -> RatFunc:
        base = self if n >= 0 else self.inverse()
        out = self.tower.one
        for _ in range(abs(n)):
            out = out * base
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.tower is other.tower and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return not self.num

    def sigma(self) -> RatFunc:
        return self.tower.sigma(self)

    def omega(self) -> Fraction | float:
        """Normalized valuation; +inf for zero."""
        if self.is_zero():
            return math.inf
        F = self.tower.F
        return Fraction(pord(F, self.num) - pord(F, self.den), self.tower.e)

    def __repr__(self) -> str:
        F = self.tower.F
        var = "t" if self.tower.kind in ("rational", "unramified") else "s"

        def show(poly):
            terms = []
            for i, c in enumerate(poly):
                if c == F.zero:
                    continue
                cs = F.fmt(c)
                if i == 0:
                    terms.append(cs)
                else:
                    mono = var if i == 1 else f"{var}^{i}"
                    terms.append(mono if cs == "1" else f"({cs}){mono}" if "+" in cs else f"{cs}{mono}")
            return " + ".join(terms) if terms else "0"

        if self.den == (F.one,):
            return show(self.num)
        return f"({show(self.num)})/({show(self.den)})"


def omega(x: RatFunc, tower: Tower | None = None) -> Fraction | float:
    """omega(x), checking membership in the given tower."""
    if not isinstance(x, RatFunc) or (tower is not None and x.tower is not tower):
        raise FieldError("element does not belong to the tower")
    return x.omega()
