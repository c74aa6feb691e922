"""Exact discrete value sets: finite unions of arithmetic progressions in Q,
optionally with a finite union of progressions removed.

Every set handled here is periodic, so equality, successor and membership
are all decided on one period.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator

Rational = Fraction | int


def _q(x: Rational | str) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def qlcm(a: Fraction, b: Fraction) -> Fraction:
    """Least positive common multiple of two positive rationals."""
    a, b = _q(a), _q(b)
    num = a.numerator * b.numerator // math.gcd(a.numerator, b.numerator)
    return Fraction(num, math.gcd(a.denominator, b.denominator))


def qgcd(*xs: Fraction) -> Fraction:
    """Positive generator of the subgroup of Q spanned by the arguments (not all zero)."""
    qs = [_q(x) for x in xs if x]
    den = math.lcm(*(x.denominator for x in qs))
    return Fraction(math.gcd(*(int(x * den) for x in qs)), den)


def fmt_q(x: Rational) -> str:
    x = _q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ArithProg:
    """The progression {offset + n*step : n in Z}, stored with 0 <= offset < step."""

    offset: Fraction
    step: Fraction

    def __post_init__(self) -> None:
        step = _q(self.step)
        if step <= 0:
            raise ValueError("progression step must be positive")
        object.__setattr__(self, "step", step)
        object.__setattr__(self, "offset", _q(self.offset) % step)

    def __contains__(self, x: Rational) -> bool:
        return ((_q(x) - self.offset) / self.step).denominator == 1

    def least_geq(self, x: Rational) -> Fraction:
        n = math.ceil((_q(x) - self.offset) / self.step)
        return self.offset + n * self.step

    def members(self, lo: Rational, hi: Rational) -> Iterator[Fraction]:
        v = self.least_geq(lo)
        while v <= hi:
            yield v
            v += self.step

    def image(self, c: Fraction, d: Fraction) -> ArithProg:
        return ArithProg(c * self.offset + d, abs(c) * self.step)

    def __str__(self) -> str:
        head = "Z" if self.step == 1 else f"{fmt_q(self.step)}*Z"
        if self.offset == 0:
            return head
        return f"{head} + {fmt_q(self.offset)}"


@dataclass(frozen=True, eq=False)
class ValueSet:
    """(union of `include`) minus (union of `exclude`).

    Every excluded step must be an integer multiple of some included step.
    Equality and hashing are semantic: two value sets are equal when they
    denote the same subset of Q.
    """

    include: tuple[ArithProg, ...] = ()
    exclude: tuple[ArithProg, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "include", tuple(self.include))
        object.__setattr__(self, "exclude", tuple(self.exclude))
        for ex in self.exclude:
            if not any((ex.step / inc.step).denominator == 1 for inc in self.include):
                raise ValueError(
                    f"excluded step {fmt_q(ex.step)} is not a multiple of any included step"
                )

    # -- constructors -------------------------------------------------
    @classmethod
    def lattice(cls, step: Rational, offset: Rational = 0) -> ValueSet:
        return cls((ArithProg(_q(offset), _q(step)),))

    @classmethod
    def difference_of(cls, keep: ArithProg, drop: ArithProg) -> ValueSet:
        return cls((keep,), (drop,))

    @classmethod
    def empty(cls) -> ValueSet:
        return cls()

    @classmethod
    def from_periodic(cls, period: Fraction, residues: Iterable[Fraction]) -> ValueSet:
        return cls(tuple(ArithProg(r, period) for r in sorted(set(residues))))

    # -- canonical periodic form --------------------------------------
    @cached_property
    def period(self) -> Fraction | None:
        """A (not necessarily minimal) period; None for the empty set."""
        steps = [p.step for p in self.include + self.exclude]
        if not self.include:
            return None
        per = steps[0]
        for s in steps[1:]:
            per = qlcm(per, s)
        return per

    @cached_property
    def canonical(self) -> tuple[Fraction, tuple[Fraction, ...]] | None:
        """(minimal period P, sorted residues in [0, P)), or None when empty."""
        per = self.period
        if per is None:
            return None
        res: set[Fraction] = set()
        for inc in self.include:
            for v in inc.members(0, per):
                if v < per and not any(v in ex for ex in self.exclude):
                    res.add(v)
        if not res:
            return None
        ordered = sorted(res)
        n = len(ordered)
        for m in range(n, 0, -1):
            if n % m:
                continue
            d = per / m
            if all(((r + d) % per) in res for r in ordered):
                return d, tuple(r for r in ordered if r < d)
        raise AssertionError("unreachable: m = 1 always works")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ValueSet):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash(self.canonical)

    def is_empty(self) -> bool:
        return self.canonical is None

    def _require(self) -> tuple[Fraction, tuple[Fraction, ...]]:
        can = self.canonical
        if can is None:
            raise ValueError("empty value set")
        return can

    # -- queries --------------------------------------------------------
    def member(self, x: Rational) -> bool:
        x = _q(x)
        return any(x in p for p in self.include) and not any(x in p for p in self.exclude)

    __contains__ = member

    def least_geq(self, x: Rational) -> Fraction:
        per, res = self._require()
        x = _q(x)
        return min(r + per * math.ceil((x - r) / per) for r in res)

    def least_gt(self, x: Rational) -> Fraction:
        per, res = self._require()
        x = _q(x)
        return min(r + per * (math.floor((x - r) / per) + 1) for r in res)

    def greatest_leq(self, x: Rational) -> Fraction:
        return -self.negate().least_geq(-_q(x))

    def greatest_lt(self, x: Rational) -> Fraction:
        return -self.negate().least_gt(-_q(x))

    def members(self, lo: Rational, hi: Rational) -> list[Fraction]:
        """Sorted members in the closed interval [lo, hi]."""
        can = self.canonical
        if can is None:
            return []
        per, res = can
        out = []
        for r in res:
            out.extend(ArithProg(r, per).members(lo, hi))
        return sorted(out)

    def count_open(self, lo: Rational, hi: Rational) -> int:
        """Number of members strictly between lo and hi (in either order)."""
        lo, hi = sorted((_q(lo), _q(hi)))
        can = self.canonical
        if can is None or lo == hi:
            return 0
        per, res = can
        total = 0
        for r in res:
            first = math.floor((lo - r) / per) + 1
            last = math.ceil((hi - r) / per) - 1
            total += max(0, last - first + 1)
        return total

    # -- transformations ----------------------------------------------
    def affine_image(self, c: Rational, d: Rational = 0) -> ValueSet:
        """{c*s + d : s in self}."""
        c, d = _q(c), _q(d)
        if c == 0:
            raise ValueError("affine_image needs a nonzero scale")
        return ValueSet(
            tuple(p.image(c, d) for p in self.include),
            tuple(p.image(c, d) for p in self.exclude),
        )

    def negate(self) -> ValueSet:
        return self.affine_image(-1, 0)

    def union(self, *others: ValueSet) -> ValueSet:
        sets = [self, *others]
        live = [s for s in sets if not s.is_empty()]
        if not live:
            return ValueSet.empty()
        per = live[0].canonical[0]
        for s in live[1:]:
            per = qlcm(per, s.canonical[0])
        residues = set()
        for s in live:
            residues.update(v for v in s.members(0, per) if v < per)
        return ValueSet.from_periodic(per, residues).simplified()

    def __or__(self, other: ValueSet) -> ValueSet:
        return self.union(other)

    def simplified(self) -> ValueSet:
        can = self.canonical
        if can is None:
            return ValueSet.empty()
        return ValueSet.from_periodic(*can)

    # -- text -----------------------------------------------------------
    def __str__(self) -> str:
        if not self.include:
            return "{}"
        text = " | ".join(str(p) for p in self.include)
        if self.exclude:
            text += " minus " + " | ".join(str(p) for p in self.exclude)
        return text

    def __repr__(self) -> str:
        return f"ValueSet({self})"

    def canonical_text(self) -> str:
        return str(self.simplified())

    @classmethod
    def parse(cls, text: str) -> ValueSet:
        """Parse the textual form, e.g. ``1/4*Z minus 1/2*Z`` or ``Z + 1/3 | 1/2*Z``."""
        text = text.strip()
        if text in ("{}", ""):
            return cls.empty()
        parts = re.split(r"\bminus\b", text)
        if len(parts) > 2:
            raise ValueError(f"more than one 'minus' in value set {text!r}")
        inc = tuple(_parse_prog(p) for p in parts[0].split("|"))
        exc = tuple(_parse_prog(p) for p in parts[1].split("|")) if len(parts) == 2 else ()
        return cls(inc, exc)


_PROG = re.compile(
    r"^\s*(?:(?P<step>-?\d+(?:/\d+)?)\s*\*\s*)?Z\s*(?:(?P<sign>[+-])\s*(?P<off>\d+(?:/\d+)?))?\s*$"
)


def _parse_prog(text: str) -> ArithProg:
    m = _PROG.match(text)
    if not m:
        raise ValueError(f"cannot parse progression {text.strip()!r}")
    step = Fraction(m.group("step") or 1)
    off = Fraction(m.group("off") or 0)
    if m.group("sign") == "-":
        off = -off
    return ArithProg(off, step)
