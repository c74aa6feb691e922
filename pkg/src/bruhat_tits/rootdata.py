"""Finite root systems, reduced or of type BC, in exact coordinates.

Roots are integer vectors in the basis of simple roots. Points of the
apartment are rational vectors in the basis of fundamental coweights, so
that a root evaluates on a point by a plain dot product. Coroots are stored
in coweight coordinates (entry j is <alpha_j, a^vee>), which makes the
reflection of a point  x - a(x) a^vee.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg

LABELS = ("A", "B", "C", "D", "E", "F", "G", "BC")
PARABOLIC_RANK_BOUND = 4

F = Fraction


def _e(n: int, *entries: tuple[int, Fraction | int]) -> tuple[Fraction, ...]:
    v = [F(0)] * n
    for i, c in entries:
        v[i] = F(c)
    return tuple(v)


def _ambient_simple(label: str, n: int) -> list[tuple[Fraction, ...]]:
    """Bourbaki-style simple roots in an orthonormal ambient space."""
    if label == "A":
        return [_e(n + 1, (i, 1), (i + 1, -1)) for i in range(n)]
    if label in ("B", "BC"):
        return [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 1, 1))]
    if label == "C":
        return [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 1, 2))]
    if label == "D":
        return [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [
            _e(n, (n - 2, 1), (n - 1, 1))
        ]
    if label == "G":
        return [_e(3, (0, 1), (1, -1)), _e(3, (0, -2), (1, 1), (2, 1))]
    if label == "F":
        h = F(1, 2)
        return [
            _e(4, (1, 1), (2, -1)),
            _e(4, (2, 1), (3, -1)),
            _e(4, (3, 1)),
            _e(4, (0, h), (1, -h), (2, -h), (3, -h)),
        ]
    if label == "E":
        h = F(1, 2)
        e8 = [
            _e(8, (0, h), (7, h), *((k, -h) for k in range(1, 7))),
            _e(8, (0, 1), (1, 1)),
            _e(8, (0, -1), (1, 1)),
            _e(8, (1, -1), (2, 1)),
            _e(8, (2, -1), (3, 1)),
            _e(8, (3, -1), (4, 1)),
            _e(8, (4, -1), (5, 1)),
            _e(8, (5, -1), (6, 1)),
        ]
        return e8[:n]
    raise ValueError(f"unsupported root system label {label!r}")


def _valid(label: str, n: int) -> bool:
    return {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 1,
        "D": n >= 3,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
        "BC": n >= 1,
    }.get(label, False)


def _amb_reflect(v: Sequence[Fraction], a: Sequence[Fraction]) -> tuple[Fraction, ...]:
    c = 2 * linalg.dot(v, a) / linalg.dot(a, a)
    return tuple(x - c * y for x, y in zip(v, a))


@dataclass(frozen=True, eq=False)
class RootSystem:
    label: str
    rank: int
    roots: tuple[tuple[int, ...], ...]
    coroots: tuple[tuple[int, ...], ...]
    simple: tuple[int, ...]
    pairing: tuple[tuple[int, ...], ...]
    gram: tuple[tuple[Fraction, ...], ...]
    ambient_simple: tuple[tuple[Fraction, ...], ...]

    @property
    def name(self) -> str:
        return f"{self.label}{self.rank}"

    def __repr__(self) -> str:
        return f"RootSystem({self.name}, {len(self.roots)} roots)"

    def __len__(self) -> int:
        return len(self.roots)

    # -- indexing -------------------------------------------------------
    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def n_positive(self) -> int:
        return len(self.roots) // 2

    def is_positive(self, i: int) -> bool:
        return i < self.n_positive

    def neg(self, i: int) -> int:
        n = self.n_positive
        return i + n if i < n else i - n

    def find(self, vec: Iterable) -> int | None:
        key = tuple(vec)
        if any(Fraction(x).denominator != 1 for x in key):
            return None
        return self.index.get(tuple(int(x) for x in key))

    def double(self, i: int) -> int | None:
        return self.find(2 * x for x in self.roots[i])

    def half(self, i: int) -> int | None:
        r = self.roots[i]
        if any(x % 2 for x in r):
            return None
        return self.find(x // 2 for x in r)

    def multipliable(self, i: int) -> bool:
        return self.double(i) is not None

    def divisible(self, i: int) -> bool:
        return self.half(i) is not None

    @cached_property
    def nondivisible(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.roots)) if not self.divisible(i))

    # -- geometry -------------------------------------------------------
    def inner(self, u: Sequence, v: Sequence) -> Fraction:
        return linalg.dot(u, linalg.matvec(self.gram, v))

    def norm2(self, i: int) -> Fraction:
        r = self.roots[i]
        return self.inner(r, r)

    def pair(self, v: Sequence, j: int) -> Fraction:
        """<v, a_j^vee> for a root-space vector v in simple-root coordinates."""
        return linalg.dot(v, self.coroots[j])

    def evaluate(self, i: int, x: Sequence) -> Fraction:
        """a_i(x) for a point x in coweight coordinates."""
        return linalg.dot(self.roots[i], x)

    def reflect(self, i: int, v: Sequence) -> tuple[Fraction, ...]:
        """s_a(v) = v - <v, a^vee> a on the root space."""
        c = self.pair(v, i)
        return tuple(Fraction(x) - c * y for x, y in zip(v, self.roots[i]))

    def reflect_point(self, i: int, x: Sequence) -> tuple[Fraction, ...]:
        c = self.evaluate(i, x)
        return tuple(Fraction(p) - c * q for p, q in zip(x, self.coroots[i]))

    @cached_property
    def reflection_perms(self) -> tuple[tuple[int, ...], ...]:
        """For each root a, the permutation of root indices induced by s_a."""
        perms = []
        for i in range(len(self.roots)):
            perm = []
            for r in self.roots:
                j = self.find(self.reflect(i, r))
                assert j is not None, "root system not closed under reflections"
                perm.append(j)
            perms.append(tuple(perm))
        return tuple(perms)

    @cached_property
    def weyl_group(self) -> tuple[tuple[int, ...], ...]:
        """The finite Weyl group as permutations of root indices (closure of simple reflections)."""
        gens = [self.reflection_perms[s] for s in self.simple]
        return tuple(sorted(_closure(gens, len(self.roots))))

    @cached_property
    def orbits(self) -> dict[str, tuple[int, ...]]:
        """Weyl orbits of non-divisible roots, named for descriptor use."""
        seen: set[int] = set()
        groups: list[tuple[int, ...]] = []
        for i in self.nondivisible:
            if i in seen:
                continue
            orb = {i}
            frontier = [i]
            while frontier:
                j = frontier.pop()
                for s in self.simple:
                    k = self.reflection_perms[s][j]
                    if k not in orb:
                        orb.add(k)
                        frontier.append(k)
            seen |= orb
            groups.append(tuple(sorted(orb)))
        if self.label == "BC":
            return {
                ("multipliable" if self.multipliable(g[0]) else "nonmultipliable"): g
                for g in groups
            }
        if len(groups) == 1:
            return {"all": groups[0]}
        groups.sort(key=lambda g: self.norm2(g[0]))
        return {"short": groups[0], "long": groups[1]}

    def orbit_of(self, i: int) -> str:
        base = self.half(i) if self.divisible(i) else i
        for name, members in self.orbits.items():
            if base in members:
                return name
        raise KeyError(i)

    def root_text(self, i: int) -> str:
        r = self.roots[i]
        return "(" + ",".join(str(c) for c in r) + ")"


def _closure(gens: Sequence[tuple[int, ...]], n: int) -> set[tuple[int, ...]]:
    ident = tuple(range(n))
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(s[g[k]] for k in range(n))
                if h not in group:
                    group.add(h)
                    nxt.append(h)
        frontier = nxt
    return group


def _coords(basis: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    aug = [list(col) + [x] for col, x in zip(zip(*basis), v)]
    red, piv = linalg.rref(aug)
    n = len(basis)
    if n in piv:
        raise ValueError("vector not in the span of the basis")
    out = [F(0)] * n
    for row, p in zip(red, piv):
        out[p] = row[-1]
    return tuple(out)


def build(label: str, rank: int) -> RootSystem:
    """Standard realization of the irreducible root system of the given type."""
    label = label.upper()
    if label not in LABELS or not _valid(label, rank):
        raise ValueError(f"unsupported root system {label}{rank}")
    simple_amb = _ambient_simple(label, rank)
    roots_amb = set(simple_amb)
    frontier = list(simple_amb)
    while frontier:
        nxt = []
        for v in frontier:
            for s in simple_amb:
                w = _amb_reflect(v, s)
                if w not in roots_amb:
                    roots_amb.add(w)
                    nxt.append(w)
        frontier = nxt
    roots_amb |= {tuple(-x for x in v) for v in roots_amb}
    if label == "BC":
        short = min(linalg.dot(v, v) for v in roots_amb)
        roots_amb |= {tuple(2 * x for x in v) for v in roots_amb if linalg.dot(v, v) == short}

    coords = {}
    for v in roots_amb:
        c = _coords(simple_amb, v)
        if any(x.denominator != 1 for x in c):
            raise AssertionError("non-integral root coordinates")
        coords[tuple(int(x) for x in c)] = v
    positives = sorted((c for c in coords if sum(c) > 0), key=lambda c: (sum(c), c))
    roots = tuple(positives) + tuple(tuple(-x for x in c) for c in positives)
    amb = [coords[r] for r in roots]

    def pair_amb(u, w):
        return 2 * linalg.dot(u, w) / linalg.dot(w, w)

    coroots = []
    for w in amb:
        row = []
        for s in simple_amb:
            p = pair_amb(s, w)
            assert p.denominator == 1
            row.append(int(p))
        coroots.append(tuple(row))
    pairing = []
    for u in amb:
        row = []
        for w in amb:
            p = pair_amb(u, w)
            assert p.denominator == 1
            row.append(int(p))
        pairing.append(tuple(row))
    gram = tuple(tuple(linalg.dot(s, t) for t in simple_amb) for s in simple_amb)
    index = {r: i for i, r in enumerate(roots)}
    simple = tuple(index[tuple(int(i == j) for j in range(rank))] for i in range(rank))
    return RootSystem(
        label=label,
        rank=rank,
        roots=roots,
        coroots=tuple(coroots),
        simple=simple,
        pairing=tuple(pairing),
        gram=gram,
        ambient_simple=tuple(simple_amb),
    )


# ---------------------------------------------------------------------------
# Subsystems and parabolic subsets


@dataclass(frozen=True)
class ParabolicSubset:
    roots: frozenset[int]

    def __le__(self, other: ParabolicSubset) -> bool:
        return self.roots <= other.roots

    def sort_key(self) -> tuple:
        return (len(self.roots), tuple(sorted(self.roots)))


def is_closed(rs: RootSystem, subset: Iterable[int], ambient: Iterable[int] | None = None) -> bool:
    """a, b in P and a+b a root of the ambient set implies a+b in P (a = b allowed)."""
    sub = set(subset)
    amb = set(range(len(rs.roots))) if ambient is None else set(ambient)
    for i in sub:
        for j in sub:
            k = rs.find(x + y for x, y in zip(rs.roots[i], rs.roots[j]))
            if k is not None and k in amb and k not in sub:
                return False
    return True


def subsystem_base(rs: RootSystem, subset: Iterable[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(positive roots, simple roots) of a subsystem, positivity inherited from rs."""
    sub = sorted(set(subset))
    pos = [i for i in sub if rs.is_positive(i)]
    posset = set(pos)
    decomposable = set()
    for i in pos:
        for j in pos:
            k = rs.find(x + y for x, y in zip(rs.roots[i], rs.roots[j]))
            if k is not None and k in posset:
                decomposable.add(k)
    simple = tuple(i for i in pos if i not in decomposable)
    # drop positive combinations that are not sums of two roots (non-closed subsystems)
    base = []
    for i in simple:
        others = [rs.roots[j] for j in base]
        if others and _in_cone(rs.roots[i], others):
            continue
        base.append(i)
    return tuple(pos), tuple(base)


def _in_cone(v, gens) -> bool:
    try:
        c = _coords_any(gens, v)
    except ValueError:
        return False
    return c is not None and all(x >= 0 for x in c)


def _coords_any(gens, v):
    aug = [list(col) + [F(x)] for col, x in zip(zip(*[[F(y) for y in g] for g in gens]), v)]
    red, piv = linalg.rref(aug)
    n = len(gens)
    if n in piv:
        raise ValueError
    if len(piv) < n:
        return None
    out = [F(0)] * n
    for row, p in zip(red, piv):
        out[p] = row[-1]
    return out


def span_roots(rs: RootSystem, generators: Sequence[int], within: Iterable[int]) -> frozenset[int]:
    """Roots of `within` lying in the Q-span of the given roots."""
    within = list(within)
    if not generators:
        return frozenset()
    gens = [rs.roots[g] for g in generators]
    r0 = linalg.rank(gens)
    return frozenset(i for i in within if linalg.rank(gens + [rs.roots[i]]) == r0)


def parabolic_subsets(rs: RootSystem, subset: Iterable[int] | None = None) -> list[ParabolicSubset]:
    """All parabolic subsets of rs (or of a root subsystem given by indices).

    Enumerated as w(Phi^+ u Phi_J) over the Weyl group of the subsystem and
    subsets J of the transported base.
    """
    sub = frozenset(range(len(rs.roots))) if subset is None else frozenset(subset)
    if not sub:
        return [ParabolicSubset(frozenset())]
    pos, base = subsystem_base(rs, sub)
    if len(base) > PARABOLIC_RANK_BOUND:
        raise ValueError("enumeration bound exceeded")
    gens = [rs.reflection_perms[s] for s in base]
    weyl = _closure_restricted(gens, sub)
    levis = []
    for k in range(len(base) + 1):
        for j in itertools.combinations(base, k):
            levis.append(span_roots(rs, list(j), sub))
    found: set[frozenset[int]] = set()
    for w in weyl:
        wpos = frozenset(w[i] for i in pos)
        for levi in levis:
            found.add(wpos | frozenset(w[i] for i in levi))
    return sorted((ParabolicSubset(p) for p in found), key=ParabolicSubset.sort_key)


def _closure_restricted(gens, sub: frozenset[int]) -> list[dict[int, int]]:
    ident = {i: i for i in sub}
    seen = {tuple(sorted(ident.items()))}
    out = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = {i: s[g[i]] for i in sub}
                key = tuple(sorted(h.items()))
                if key not in seen:
                    seen.add(key)
                    out.append(h)
                    nxt.append(h)
        frontier = nxt
    return out


def brute_force_parabolics(rs: RootSystem, subset: Iterable[int] | None = None) -> list[ParabolicSubset]:
    """Reference enumeration over all subsets; exponential, for small systems only."""
    sub = sorted(range(len(rs.roots)) if subset is None else set(subset))
    subs = set(sub)
    out = []
    for mask in range(1 << len(sub)):
        p = {sub[k] for k in range(len(sub)) if mask >> k & 1}
        if any(i not in p and rs.neg(i) not in p for i in sub):
            continue
        if is_closed(rs, p, subs):
            out.append(ParabolicSubset(frozenset(p)))
    return sorted(out, key=ParabolicSubset.sort_key)


def components(rs: RootSystem, subset: Iterable[int]) -> list[tuple[str, int, frozenset[int]]]:
    """Irreducible components of a root subsystem with their Cartan labels."""
    sub = frozenset(subset)
    if not sub:
        return []
    _, base = subsystem_base(rs, sub)
    # connected components of the Dynkin graph on the base
    comp_of = {b: b for b in base}

    def find(b):
        while comp_of[b] != b:
            b = comp_of[b]
        return b

    for b1, b2 in itertools.combinations(base, 2):
        if rs.pairing[b1][b2] != 0:
            comp_of[find(b1)] = find(b2)
    groups: dict[int, list[int]] = {}
    for b in base:
        groups.setdefault(find(b), []).append(b)
    out = []
    for members in groups.values():
        roots = span_roots(rs, members, sub)
        out.append((_classify(rs, roots, len(members)), len(members), roots))
    out.sort(key=lambda t: (t[0], -t[1], min(t[2])))
    return out


def _classify(rs: RootSystem, roots: frozenset[int], r: int) -> str:
    n = len(roots)
    if any(rs.double(i) in roots for i in roots):
        return f"BC{r}"
    if n == r * (r + 1):
        return f"A{r}"
    if n == 12 and r == 2:
        return "G2"
    if n == 48 and r == 4:
        return "F4"
    if n == 2 * r * r:
        if r == 2:
            return "B2" if rs.label == "B" else "C2"
        lengths = sorted(rs.norm2(i) for i in roots)
        n_long = sum(1 for x in lengths if x == lengths[-1])
        return f"B{r}" if n_long == 2 * r * (r - 1) else f"C{r}"
    if n == 2 * r * (r - 1):
        return f"D{r}"
    if (r, n) in ((6, 72), (7, 126), (8, 240)):
        return f"E{r}"
    raise ValueError(f"cannot classify subsystem of rank {r} with {n} roots")
