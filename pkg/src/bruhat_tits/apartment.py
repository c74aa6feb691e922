"""The apartment as exact rational geometry.

Points are rational vectors in fundamental-coweight coordinates. The walls
are the hyperplanes a(x) + k = 0 for a in Phi and k in Gamma'_a. A facet is
recorded root by root: Wall(k) when -a is constant equal to k on it, or
Gap(lo, hi) when -a takes values strictly between consecutive elements of
Gamma'_a.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import linalg, rootdata
from .echelonnage import ValuedRootDatum
from .valueset import fmt_q

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class Wall:
    k: Fraction

    def contains(self, v: Fraction) -> bool:
        return v == self.k

    def closed_contains(self, v: Fraction) -> bool:
        return v == self.k

    def mirror(self) -> Wall:
        return Wall(-self.k)

    def __str__(self) -> str:
        return f"Wall({fmt_q(self.k)})"


@dataclass(frozen=True)
class Gap:
    lo: Fraction
    hi: Fraction

    def contains(self, v: Fraction) -> bool:
        return self.lo < v < self.hi

    def closed_contains(self, v: Fraction) -> bool:
        return self.lo <= v <= self.hi

    def mirror(self) -> Gap:
        return Gap(-self.hi, -self.lo)

    def __str__(self) -> str:
        return f"Gap({fmt_q(self.lo)}, {fmt_q(self.hi)})"


Cell = Union[Wall, Gap]


@dataclass(frozen=True)
class Facet:
    """One Wall/Gap entry per root, indexed like the root system."""

    cells: tuple[Cell, ...]

    def __getitem__(self, i: int) -> Cell:
        return self.cells[i]

    def walls(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.cells) if isinstance(c, Wall))

    def in_closure_of(self, other: Facet) -> bool:
        """True when self lies in the closure of other."""
        for mine, theirs in zip(self.cells, other.cells):
            if isinstance(mine, Wall):
                if not theirs.closed_contains(mine.k):
                    return False
            else:
                if isinstance(theirs, Wall):
                    return False
                if not (theirs.lo <= mine.lo and mine.hi <= theirs.hi):
                    return False
        return True

    def sort_key(self) -> tuple:
        return tuple(
            (0, c.k, c.k) if isinstance(c, Wall) else (1, c.lo, c.hi) for c in self.cells
        )


@dataclass(frozen=True)
class ConcaveFn:
    values: tuple[Fraction, ...]

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)

    def __ge__(self, other: ConcaveFn) -> bool:
        return all(a >= b for a, b in zip(self.values, other.values))


# ---------------------------------------------------------------------------
# Facets


def locate_facet(vrd: ValuedRootDatum, x: Sequence) -> Facet:
    rs = vrd.rs
    x = tuple(Fraction(c) for c in x)
    if len(x) != rs.rank:
        raise ValueError(f"point has dimension {len(x)}, expected {rs.rank}")
    cells: list[Cell] = []
    for i in range(len(rs.roots)):
        v = -rs.evaluate(i, x)
        gp = vrd.gp(i)
        if v in gp:
            cells.append(Wall(v))
        else:
            cells.append(Gap(gp.greatest_lt(v), gp.least_gt(v)))
    return Facet(tuple(cells))


def _constraints(vrd: ValuedRootDatum, cells: dict[int, Cell]):
    """Linear system of a (partial) facet: equalities and strict inequalities on x."""
    rs = vrd.rs
    eqs, strict = [], []
    for i, c in cells.items():
        a = [Fraction(v) for v in rs.roots[i]]
        neg = [-v for v in a]
        if isinstance(c, Wall):
            eqs.append((a, -c.k))
        else:
            # lo < -a(x) < hi
            strict.append((a, -c.lo))
            strict.append((neg, c.hi))
    return eqs, strict


def facet_point(vrd: ValuedRootDatum, facet: Facet | dict[int, Cell]) -> Point | None:
    """A rational point of the (partial) facet, or None if it is empty."""
    cells = facet if isinstance(facet, dict) else _positive_cells(vrd, facet)
    eqs, strict = _constraints(vrd, cells)
    return linalg.interior_point(eqs, strict, vrd.rs.rank)


def _positive_cells(vrd: ValuedRootDatum, facet: Facet) -> dict[int, Cell]:
    return {i: facet[i] for i in range(vrd.rs.n_positive)}


def complete_facet(vrd: ValuedRootDatum, positive: dict[int, Cell]) -> Facet:
    rs = vrd.rs
    cells: list[Cell | None] = [None] * len(rs.roots)
    for i, c in positive.items():
        cells[i] = c
        cells[rs.neg(i)] = c.mirror()
    return Facet(tuple(cells))


def is_valid_facet(vrd: ValuedRootDatum, facet: Facet) -> bool:
    rs = vrd.rs
    for i, c in enumerate(facet.cells):
        if facet[rs.neg(i)] != c.mirror():
            return False
        gp = vrd.gp(i)
        if isinstance(c, Wall) and c.k not in gp:
            return False
        if isinstance(c, Gap) and (
            c.lo not in gp or c.hi not in gp or gp.least_gt(c.lo) != c.hi
        ):
            return False
    return facet_point(vrd, facet) is not None


def dimension(vrd: ValuedRootDatum, facet: Facet) -> int:
    rows = [vrd.rs.roots[i] for i in facet.walls()]
    return vrd.rs.rank - linalg.rank(rows)


def sample_points(
    vrd: ValuedRootDatum, facet: Facet, n: int, rng: random.Random
) -> list[Point]:
    """Random rational points of the open facet by exact hit-and-run."""
    rs = vrd.rs
    cells = _positive_cells(vrd, facet)
    eqs, strict = _constraints(vrd, cells)
    p = linalg.interior_point(eqs, strict, rs.rank)
    if p is None:
        raise ValueError("facet is empty")
    dirs = linalg.nullspace([g for g, _ in eqs], rs.rank) if eqs else linalg.nullspace([], rs.rank)
    out = []
    for _ in range(n):
        if dirs:
            d = [Fraction(0)] * rs.rank
            for b in dirs:
                c = Fraction(rng.randint(-6, 6), rng.randint(1, 6))
                d = [x + c * y for x, y in zip(d, b)]
            lo, hi = None, None
            for g, h in strict:
                gd = linalg.dot(g, d)
                if gd == 0:
                    continue
                t = (h - linalg.dot(g, p)) / gd
                if gd > 0:
                    hi = t if hi is None else min(hi, t)
                else:
                    lo = t if lo is None else max(lo, t)
            lo = Fraction(-1) if lo is None else lo
            hi = Fraction(1) if hi is None else hi
            frac = Fraction(rng.randint(1, 99), 100)
            t = lo + frac * (hi - lo)
            p = tuple(x + t * y for x, y in zip(p, d))
        out.append(tuple(p))
    return out


def enumerate_patterns(
    vrd: ValuedRootDatum,
    choices: dict[int, list[Cell]],
) -> list[Facet]:
    """All nonempty facets obtained by picking one cell per positive root.

    Depth-first with a feasibility check after every choice.
    """
    order = sorted(choices)
    found: list[Facet] = []

    def rec(pos: int, chosen: dict[int, Cell]) -> None:
        if pos == len(order):
            found.append(complete_facet(vrd, chosen))
            return
        i = order[pos]
        for c in choices[i]:
            chosen[i] = c
            if len(choices[i]) == 1 or facet_point(vrd, chosen) is not None:
                rec(pos + 1, chosen)
            del chosen[i]

    rec(0, {})
    return sorted(found, key=lambda f: (-dimension(vrd, f), f.sort_key()))


def star_of_facet(vrd: ValuedRootDatum, facet: Facet) -> list[Facet]:
    """Facets whose closure contains the given facet, the facet itself included."""
    choices: dict[int, list[Cell]] = {}
    for i in range(vrd.rs.n_positive):
        c = facet[i]
        if isinstance(c, Wall):
            gp = vrd.gp(i)
            choices[i] = [c, Gap(gp.greatest_lt(c.k), c.k), Gap(c.k, gp.least_gt(c.k))]
        else:
            choices[i] = [c]
    return enumerate_patterns(vrd, choices)


def faces_of(vrd: ValuedRootDatum, facet: Facet) -> list[Facet]:
    """Facets contained in the closure of the given facet."""
    choices: dict[int, list[Cell]] = {}
    for i in range(vrd.rs.n_positive):
        c = facet[i]
        choices[i] = [c] if isinstance(c, Wall) else [c, Wall(c.lo), Wall(c.hi)]
    return enumerate_patterns(vrd, choices)


# ---------------------------------------------------------------------------
# Concave functions


def f_omega(vrd: ValuedRootDatum, omega: Iterable[Sequence]) -> ConcaveFn:
    """f_Omega(a) = max over psi in Omega of -a(psi)."""
    pts = [tuple(Fraction(c) for c in p) for p in omega]
    if not pts:
        raise ValueError("Omega must be nonempty")
    rs = vrd.rs
    return ConcaveFn(tuple(max(-rs.evaluate(i, p) for p in pts) for i in range(len(rs.roots))))


def facet_function(vrd: ValuedRootDatum, facet: Facet) -> ConcaveFn:
    """f_F(a) = sup of -a over the facet, by exact linear programming on its closure."""
    rs = vrd.rs
    eqs, strict = _constraints(vrd, _positive_cells(vrd, facet))
    a_ub = [g for g, _ in strict]
    b_ub = [h for _, h in strict]
    a_eq = [g for g, _ in eqs]
    b_eq = [h for _, h in eqs]
    vals = []
    for i in range(len(rs.roots)):
        c = facet[i]
        if isinstance(c, Wall):
            vals.append(c.k)
            continue
        obj = [-Fraction(v) for v in rs.roots[i]]
        val, _ = linalg.lp_maximize(obj, a_ub, b_ub, a_eq, b_eq)
        vals.append(val)
    return ConcaveFn(tuple(vals))


def optimize(vrd: ValuedRootDatum, f: ConcaveFn) -> ConcaveFn:
    """f'(a) = least k in Gamma'_a with k >= f(a), or k >= 2 f(a/2) when a/2 is a root."""
    rs = vrd.rs
    out = []
    for i in range(len(rs.roots)):
        gp = vrd.gp(i)
        k = gp.least_geq(f[i])
        h = rs.half(i)
        if h is not None:
            k = min(k, gp.least_geq(2 * f[h]))
        out.append(k)
    return ConcaveFn(tuple(out))


def star_fn(vrd: ValuedRootDatum, f: ConcaveFn) -> ConcaveFn:
    """f*: the strict successor in Gamma'_a on roots with f(a) + f(-a) = 0."""
    rs = vrd.rs
    return ConcaveFn(
        tuple(
            vrd.gp(i).least_gt(f[i]) if f[i] + f[rs.neg(i)] == 0 else f[i]
            for i in range(len(rs.roots))
        )
    )


@dataclass(frozen=True)
class Violation:
    rule: str
    roots: tuple[int, ...]
    detail: str


@dataclass(frozen=True)
class ConcavityReport:
    mode: str
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def concavity_check(vrd: ValuedRootDatum, f: ConcaveFn, mode: str = "rounded") -> ConcavityReport:
    """Check C0: f(a) + f(-a) >= 0; C1: f(a+b) <= f(a) + f(b); C2: f(2a) <= 2 f(a).

    In "rounded" mode the right-hand sides of C1 and C2 are first raised to
    the next element of Gamma' of the left-hand root, which is the form in
    which Gamma'-valued functions such as f* are concave. "exact" mode
    compares the raw sums.
    """
    if mode not in ("rounded", "exact"):
        raise ValueError(f"unknown concavity mode {mode!r}")
    rs = vrd.rs
    n = len(rs.roots)
    out: list[Violation] = []

    def bound(i: int, v: Fraction) -> Fraction:
        return vrd.gp(i).least_geq(v) if mode == "rounded" else v

    for i in range(rs.n_positive):
        s = f[i] + f[rs.neg(i)]
        if s < 0:
            out.append(Violation("C0", (i, rs.neg(i)), f"f(a)+f(-a) = {fmt_q(s)} < 0"))
    for i in range(n):
        for j in range(i, n):
            k = rs.find(x + y for x, y in zip(rs.roots[i], rs.roots[j]))
            if k is None or i == j:
                continue
            b = bound(k, f[i] + f[j])
            if f[k] > b:
                out.append(
                    Violation(
                        "C1",
                        (i, j, k),
                        f"f(a+b) = {fmt_q(f[k])} > {fmt_q(b)} from f(a)+f(b) = {fmt_q(f[i] + f[j])}",
                    )
                )
    for i in range(n):
        d = rs.double(i)
        if d is None:
            continue
        b = bound(d, 2 * f[i])
        if f[d] > b:
            out.append(Violation("C2", (i, d), f"f(2a) = {fmt_q(f[d])} > {fmt_q(b)} from 2f(a) = {fmt_q(2 * f[i])}"))
    return ConcavityReport(mode, tuple(out))


# ---------------------------------------------------------------------------
# Phi_f and the parabolic correspondence


@dataclass(frozen=True)
class LeviDescriptor:
    roots: frozenset[int]
    factors: tuple[tuple[str, int], ...]
    torus_rank: int

    def __str__(self) -> str:
        parts = [lab for lab, _ in self.factors]
        if self.torus_rank:
            parts.append(f"T{self.torus_rank}")
        return " x ".join(parts) if parts else "T0"


def phi_f(vrd: ValuedRootDatum, f: ConcaveFn) -> LeviDescriptor:
    rs = vrd.rs
    roots = frozenset(i for i in range(len(rs.roots)) if f[i] + f[rs.neg(i)] == 0)
    comps = rootdata.components(rs, roots)
    r = linalg.rank([rs.roots[i] for i in roots]) if roots else 0
    return LeviDescriptor(roots, tuple((lab, rk) for lab, rk, _ in comps), rs.rank - r)


def facet_concave(vrd: ValuedRootDatum, facet: Facet) -> ConcaveFn:
    return optimize(vrd, facet_function(vrd, facet))


@dataclass
class CorrespondenceReport:
    facet: Facet
    levi: LeviDescriptor
    star: list[Facet]
    parabolics: list[frozenset[int]]
    expected: list[frozenset[int]]
    bijective: bool
    order_reversing: bool
    failures: list[str]

    @property
    def ok(self) -> bool:
        return self.bijective and self.order_reversing and not self.failures


def parabolic_correspondence(vrd: ValuedRootDatum, facet: Facet) -> CorrespondenceReport:
    """Map each F' in the star of F to {a in Phi_F : f_F'(a) = f_F(a)} and verify the theorem."""
    f = facet_concave(vrd, facet)
    levi = phi_f(vrd, f)
    star = star_of_facet(vrd, facet)
    images = []
    for g in star:
        fg = facet_concave(vrd, g)
        images.append(frozenset(a for a in levi.roots if fg[a] == f[a]))
    expected = [p.roots for p in rootdata.parabolic_subsets(vrd.rs, levi.roots)]
    failures = []
    bijective = len(set(images)) == len(images) and set(images) == set(expected)
    if not bijective:
        failures.append(
            f"{len(star)} facets map to {len(set(images))} distinct subsets; "
            f"{len(expected)} parabolic subsets expected"
        )
    order = True
    for g1, p1 in zip(star, images):
        for g2, p2 in zip(star, images):
            if g2.in_closure_of(g1) != (p1 <= p2):
                order = False
    if not order:
        failures.append("closure order is not reversed by the map")
    return CorrespondenceReport(facet, levi, star, images, expected, bijective, order, failures)


def fundamental_point(vrd: ValuedRootDatum) -> Point:
    """eps * rho^vee with eps small enough to stay in the alcove touching the origin."""
    rs = vrd.rs
    firsts = []
    for i in range(rs.n_positive):
        w = vrd.wall_values(i)
        firsts.append(w.least_gt(0))
    top = max(sum(rs.roots[i]) for i in range(rs.n_positive))
    eps = min(firsts) / (2 * top)
    return tuple(eps for _ in range(rs.rank))


def fundamental_alcove(vrd: ValuedRootDatum) -> Facet:
    return locate_facet(vrd, fundamental_point(vrd))
