"""Root groups of the rank-one cases with their valuations phi_a.

* SL2 over a tower L/K: U_a = {x_a(r) : r in L}, phi_a(x_a(r)) = omega(r).
* SU3 for a separable quadratic L/L2: U_a = H(L, L2) = {(u, v) : v + sigma(v) = u sigma(u)},
  with (u1, v1)(u2, v2) = (u1 + u2, v1 + v2 + sigma(u1) u2) and phi_a(u, v) = omega(v)/2.
* BC1 over K = F_2(t): U_a = K^{1/2} x K with the additive law and
  phi_a(x, y) = omega(alpha x^2 + y)/2, where omega(alpha) is not in omega(K^x).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..echelonnage import RayCase, ray_value_sets
from ..valueset import fmt_q
from .fields import FieldError, RatFunc, Tower

INF = math.inf


class NotInGroup(ValueError):
    pass


def _fmt(v) -> str:
    return "inf" if v == INF else fmt_q(v)


# ---------------------------------------------------------------------------
# SU3 unipotent groups


def in_H(tower: Tower, p: tuple[RatFunc, RatFunc]) -> bool:
    u, v = p
    return v + v.sigma() == u * u.sigma()


def su3_mul(tower: Tower, p, q):
    if not in_H(tower, p) or not in_H(tower, q):
        raise NotInGroup("not in H(L,L2)")
    u1, v1 = p
    u2, v2 = q
    return (u1 + u2, v1 + v2 + u1.sigma() * u2)


def su3_inv(tower: Tower, p):
    if not in_H(tower, p):
        raise NotInGroup("not in H(L,L2)")
    u, v = p
    return (-u, v.sigma())


def _check_trace_one(lam: RatFunc) -> None:
    if lam + lam.sigma() != lam.tower.one:
        raise FieldError("lambda must have trace 1")


def in_H_lambda(tower: Tower, p) -> bool:
    _, y = p
    return (y + y.sigma()).is_zero()


def h_lambda_mul(tower: Tower, lam: RatFunc, p, q):
    """(x1, y1)(x2, y2) = (x1 + x2, y1 + y2 - lam x1 sigma(x2) + sigma(lam x1) x2)."""
    _check_trace_one(lam)
    if not in_H_lambda(tower, p) or not in_H_lambda(tower, q):
        raise NotInGroup("not in H^lambda")
    x1, y1 = p
    x2, y2 = q
    return (x1 + x2, y1 + y2 - lam * x1 * x2.sigma() + (lam * x1).sigma() * x2)


def j_lambda(tower: Tower, lam: RatFunc, p):
    """(u, v) -> (u, v - lam u sigma(u)), from H(L, L2) to H^lambda."""
    _check_trace_one(lam)
    if not in_H(tower, p):
        raise NotInGroup("not in H(L,L2)")
    u, v = p
    return (u, v - lam * u * u.sigma())


# ---------------------------------------------------------------------------
# Realizations


@dataclass(frozen=True, eq=False)
class Realization:
    """A root group U_a with its valuation, torus action and sampling."""

    name: str
    tower: Tower
    case: RayCase

    # group structure, overridden per case
    def identity(self):
        raise NotImplementedError

    def mul(self, p, q):
        raise NotImplementedError

    def inv(self, p):
        raise NotImplementedError

    def contains(self, p) -> bool:
        raise NotImplementedError

    def phi(self, p):
        raise NotImplementedError

    def conjugate(self, z: RatFunc, p):
        """z p z^-1 for the torus element with parameter z."""
        raise NotImplementedError

    def a_of_z(self, z: RatFunc) -> RatFunc:
        raise NotImplementedError

    def random_torus(self, rng: random.Random) -> RatFunc:
        raise NotImplementedError

    def random_point(self, rng: random.Random):
        raise NotImplementedError

    def monomial_points(self, window: Fraction) -> list:
        raise NotImplementedError

    def is_in_divisible(self, p) -> bool:
        """p lies in U_2a, which is trivial unless overridden."""
        return p == self.identity()

    def coset_probes(self, p, rng: random.Random, n: int) -> list:
        """Further elements of p U_2a."""
        return []

    def maximal_in_coset(self, p):
        """The element of p U_2a where phi attains its sup."""
        return p

    def fmt_point(self, p) -> str:
        return repr(p)


class SL2Realization(Realization):
    def __init__(self, tower: Tower) -> None:
        e = 1 if tower.kind == "rational" else tower.e
        if tower.kind not in ("rational", "inseparable"):
            raise FieldError("SL2 realizations use a rational or purely inseparable tower")
        label = f"SL2/{tower!r}" if e == 1 else f"Res SL2 {tower!r}"
        super().__init__(label, tower, RayCase("RES_SL2", e))

    def identity(self):
        return self.tower.zero

    def mul(self, p, q):
        return p + q

    def inv(self, p):
        return -p

    def contains(self, p) -> bool:
        return isinstance(p, RatFunc) and p.tower is self.tower

    def phi(self, p):
        return p.omega()

    def conjugate(self, z, p):
        return z * z * p

    def a_of_z(self, z):
        return z * z

    def random_torus(self, rng):
        return self.tower.random(rng, degree=1, base=True, nonzero=True)

    def random_point(self, rng):
        return self.tower.random(rng, degree=2)

    def monomial_points(self, window):
        e = self.tower.e if self.tower.kind == "inseparable" else 1
        n = int(window * e)
        return [self.tower.monomial(k) for k in range(-n, n + 1)]

    def fmt_point(self, p) -> str:
        return f"x_a({p!r})"

    def m_check(self, r: RatFunc, s: RatFunc) -> tuple[bool, str]:
        """m(x_a(r)) = x_-a(-1/r) x_a(r) x_-a(-1/r) is antidiagonal and reflects in a(x) + omega(r) = 0.

        The reflection is observed on levels: phi_-a(m x_a(s) m^-1) = phi_a(x_a(s)) - 2 phi_a(x_a(r)).
        """
        T = self.tower
        one, zero = T.one, T.zero

        def mat(a, b, c, d):
            return ((a, b), (c, d))

        def mm(x, y):
            return tuple(
                tuple(x[i][0] * y[0][j] + x[i][1] * y[1][j] for j in range(2)) for i in range(2)
            )

        ri = r.inverse()
        xa = lambda v: mat(one, v, zero, one)
        xma = lambda v: mat(one, zero, v, one)
        m = mm(mm(xma(-ri), xa(r)), xma(-ri))
        if m != mat(zero, r, -ri, zero):
            return False, f"m(x_a(r)) = {m!r} is not antidiagonal"
        minv = mat(zero, -r, ri, zero)
        conj = mm(mm(m, xa(s)), minv)
        if conj[0][0] != one or conj[0][1] != zero or conj[1][1] != one:
            return False, "m x_a(s) m^-1 is not in U_-a"
        lhs = conj[1][0].omega()
        rhs = s.omega() - 2 * r.omega()
        return lhs == rhs, f"phi_-a = {_fmt(lhs)}, expected {_fmt(rhs)}"


class SU3Realization(Realization):
    def __init__(self, tower: Tower, lam: RatFunc | None = None) -> None:
        if tower.kind not in ("unramified", "ramified"):
            raise FieldError("SU3 realizations need a separable quadratic tower")
        lam = tower.trace_one() if lam is None else lam
        _check_trace_one(lam)
        gamma = -lam.omega() / 2
        case = "SU3_UNRAM" if tower.kind == "unramified" else "SU3_RAM"
        object.__setattr__(self, "lam", lam)
        super().__init__(f"SU3 {tower!r}", tower, RayCase(case, 1, gamma))

    def identity(self):
        return (self.tower.zero, self.tower.zero)

    def contains(self, p) -> bool:
        return in_H(self.tower, p)

    def mul(self, p, q):
        return su3_mul(self.tower, p, q)

    def inv(self, p):
        return su3_inv(self.tower, p)

    def phi(self, p):
        return p[1].omega() / 2

    def conjugate(self, z, p):
        u, v = p
        zs = z.sigma()
        return (zs * zs / z * u, z * zs * v)

    def a_of_z(self, z):
        return z

    def random_torus(self, rng):
        return self.tower.random(rng, degree=1, nonzero=True)

    def _trace_zero(self, x: RatFunc) -> RatFunc:
        return x - x.sigma()

    def point_over(self, u: RatFunc, w: RatFunc | None = None):
        v = self.lam * u * u.sigma()
        if w is not None:
            v = v + self._trace_zero(w)
        return (u, v)

    def random_point(self, rng):
        u = self.tower.random(rng, degree=1) if rng.random() < 0.8 else self.tower.zero
        return self.point_over(u, self.tower.random(rng, degree=2))

    def monomial_points(self, window):
        e = self.tower.e
        n = int(2 * window * e) + 2
        pts = [self.point_over(self.tower.monomial(k)) for k in range(-n, n + 1)]
        # U_2a: (0, v) with v of trace zero
        gen = self.tower.s if self.tower.kind == "ramified" else self.tower.const(self.tower.F.theta)
        for k in range(-n, n + 1):
            pts.append((self.tower.zero, self._trace_zero(gen * self.tower.monomial(k))))
        return pts

    def is_in_divisible(self, p) -> bool:
        return p[0].is_zero()

    def coset_probes(self, p, rng, n):
        u, v = p
        return [(u, v + self._trace_zero(self.tower.random(rng, degree=2))) for _ in range(n)]

    def maximal_in_coset(self, p):
        return self.point_over(p[0])

    def fmt_point(self, p) -> str:
        return f"({p[0]!r}, {p[1]!r})"


class BC1Realization(Realization):
    def __init__(self, tower: Tower, alpha: RatFunc | None = None) -> None:
        if tower.kind != "inseparable" or tower.p != 2:
            raise FieldError("BC1 realizations use the tower F2(t^(1/2))/F2(t)")
        alpha = tower.s if alpha is None else alpha
        if alpha.is_zero() or (alpha.omega()).denominator == 1:
            raise FieldError("alpha must have valuation outside omega(K^x)")
        object.__setattr__(self, "alpha", alpha)
        super().__init__(f"BC1 {tower!r}", tower, RayCase("BC1", 1, -alpha.omega() / 2))

    def identity(self):
        return (self.tower.zero, self.tower.zero)

    def contains(self, p) -> bool:
        return self.tower.in_base(p[1])

    def mul(self, p, q):
        for r in (p, q):
            if not self.contains(r):
                raise NotInGroup("second coordinate must lie in K")
        return (p[0] + q[0], p[1] + q[1])

    def inv(self, p):
        return (-p[0], -p[1])

    def phi(self, p):
        x, y = p
        w = (self.alpha * x * x + y).omega()
        expected = min(self.alpha.omega() + 2 * x.omega(), y.omega())
        assert w == expected, "valuation of alpha x^2 + y is not a minimum"
        return w / 2

    def conjugate(self, z, p):
        return (z * p[0], z * z * p[1])

    def a_of_z(self, z):
        return z

    def random_torus(self, rng):
        return self.tower.random(rng, degree=1, nonzero=True)

    def random_point(self, rng):
        x = self.tower.random(rng, degree=1) if rng.random() < 0.8 else self.tower.zero
        return (x, self.tower.random(rng, degree=1, base=True))

    def monomial_points(self, window):
        n = int(4 * window) + 2
        T = self.tower
        pts = [(T.monomial(k), T.zero) for k in range(-n, n + 1)]
        pts += [(T.zero, T.monomial(2 * k)) for k in range(-n, n + 1)]
        return pts

    def is_in_divisible(self, p) -> bool:
        return p[0].is_zero()

    def coset_probes(self, p, rng, n):
        return [(p[0], p[1] + self.tower.random(rng, degree=1, base=True)) for _ in range(n)]

    def maximal_in_coset(self, p):
        return (p[0], self.tower.zero)

    def fmt_point(self, p) -> str:
        return f"({p[0]!r}, {p[1]!r})"


def realize(case: RayCase, residue_char: int) -> Realization:
    """The shipped realization of a ray case, when one exists."""
    p = residue_char
    if case.case == "RES_SL2":
        if case.e2 == 1:
            return SL2Realization(Tower.rational(p))
        if case.e2 == p:
            return SL2Realization(Tower.inseparable(p))
    elif case.e2 == 1 and not (case.case == "SU3_RAM" and p == 2):
        g = case.effective_gamma(p)
        if case.case == "SU3_UNRAM" and g == 0:
            return SU3Realization(Tower.unramified(p))
        if case.case == "SU3_RAM" and g == 0:
            return SU3Realization(Tower.ramified(p))
        if case.case == "BC1" and p == 2 and g == Fraction(-1, 4):
            return BC1Realization(Tower.inseparable(2))
    raise FieldError(f"no realization shipped for {case} in residue characteristic {p}")


# ---------------------------------------------------------------------------
# Axiom report


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str


@dataclass
class AxiomReport:
    realization: str
    case: RayCase
    checks: list[Check] = field(default_factory=list)
    attained: list = field(default_factory=list)
    expected_prime: list = field(default_factory=list)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict[str, tuple[int, int]]:
        out: dict[str, tuple[int, int]] = {}
        for c in self.checks:
            n, bad = out.get(c.name, (0, 0))
            out[c.name] = (n + 1, bad + (not c.ok))
        return out


def axiom_report(
    real: Realization, samples: int = 100, seed: int = 0, window: Fraction = Fraction(2)
) -> AxiomReport:
    """Exact checks of the group law, the filtration, torus compatibility and the value sets."""
    rng = random.Random(seed)
    gp, gamma, _ = ray_value_sets(real.case, real.tower.p)
    rep = AxiomReport(real.name, real.case)
    add = lambda name, ok, detail: rep.checks.append(Check(name, bool(ok), detail))
    pts = [real.random_point(rng) for _ in range(samples)]
    e = real.identity()
    for i in range(samples):
        p, q, r = pts[i], pts[(i + 1) % samples], pts[(i + 2) % samples]
        pq = real.mul(p, q)
        add("closed", real.contains(pq), real.fmt_point(pq))
        add("associative", real.mul(pq, r) == real.mul(p, real.mul(q, r)), "")
        add("identity", real.mul(e, p) == p and real.mul(p, e) == p, "")
        pinv = real.inv(p)
        add("inverse", real.mul(p, pinv) == e and real.contains(pinv), "")
        fp, fq, fpq = real.phi(p), real.phi(q), real.phi(pq)
        add("filtration", fpq >= min(fp, fq), f"phi(pq) = {_fmt(fpq)}, phi(p) = {_fmt(fp)}, phi(q) = {_fmt(fq)}")
        add("phi(p^-1)", real.phi(pinv) == fp, f"{_fmt(real.phi(pinv))} vs {_fmt(fp)}")
        z = real.random_torus(rng)
        zp = real.conjugate(z, p)
        shift = real.a_of_z(z).omega()
        if fp == INF:
            ok = real.phi(zp) == INF
            detail = "phi = inf on both sides"
        else:
            ok = real.phi(zp) - fp == shift
            detail = f"phi(zpz^-1) - phi(p) = {_fmt(real.phi(zp) - fp)}, omega(a(z)) = {_fmt(shift)}"
        add("torus", ok and real.contains(zp), detail)
        if not real.is_in_divisible(p):
            top = real.phi(real.maximal_in_coset(p))
            probes = [p] + real.coset_probes(p, rng, 3)
            best = max(real.phi(c) for c in probes)
            add(
                "sup over pU_2a",
                best <= top and top in gp,
                f"sup = {_fmt(top)}, best probe {_fmt(best)}",
            )
    if isinstance(real, SL2Realization):
        for i in range(min(samples, 20)):
            r = real.tower.random(rng, degree=1, nonzero=True)
            s = real.tower.random(rng, degree=1, nonzero=True)
            ok, detail = real.m_check(r, s)
            add("m(u) wall", ok, detail)
    attained_all = set()
    attained_prime = set()
    for p in real.monomial_points(window):
        v = real.phi(p)
        if v == INF:
            continue
        attained_all.add(v)
        if not real.is_in_divisible(p):
            attained_prime.add(v)
    for p in pts:
        v = real.phi(p)
        if v != INF:
            attained_all.add(v)
    for v in sorted(attained_all):
        add("value in Gamma_a", v in gamma, _fmt(v))
    for v in sorted(attained_prime):
        add("value in Gamma'_a", v in gp, _fmt(v))
    want = gp.members(-window, window)
    for v in want:
        add("Gamma'_a attained", v in attained_prime, _fmt(v))
    rep.attained = sorted(v for v in attained_prime if -window <= v <= window)
    rep.expected_prime = want
    return rep


def attained_value_set(real: Realization, window: Fraction = Fraction(2)) -> tuple[list, list]:
    """(values of phi on points maximal in their U_2a coset, values on U_2a) in the window."""
    prime, div = set(), set()
    for p in real.monomial_points(window):
        v = real.phi(p)
        if v == INF or not -window <= v <= window:
            continue
        (div if real.is_in_divisible(p) else prime).add(v)
    return sorted(prime), sorted(div)
