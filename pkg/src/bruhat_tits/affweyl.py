"""The affine Weyl group realized as wall-preserving affine maps of the apartment."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .apartment import Facet, Gap, fundamental_alcove, fundamental_point, _constraints, _positive_cells
from .echelonnage import ValuedRootDatum
from .valueset import fmt_q, qgcd

ENUMERATION_BOUND = 14
COSET_BOUND = 5000


@dataclass(frozen=True)
class AffineElement:
    """x -> linear x + translation, in coweight coordinates."""

    linear: tuple[tuple[int, ...], ...]
    translation: tuple[Fraction, ...]

    @classmethod
    def identity(cls, n: int) -> AffineElement:
        return cls(
            tuple(tuple(int(i == j) for j in range(n)) for i in range(n)),
            tuple(Fraction(0) for _ in range(n)),
        )

    def apply(self, x: Sequence) -> tuple[Fraction, ...]:
        return tuple(linalg.dot(row, x) + t for row, t in zip(self.linear, self.translation))

    def compose(self, other: AffineElement) -> AffineElement:
        """self after other."""
        m = linalg.matmul(self.linear, other.linear)
        t = self.apply(other.translation)
        return AffineElement(tuple(tuple(int(v) for v in row) for row in m), t)

    __mul__ = compose

    def inverse(self) -> AffineElement:
        inv = linalg.inverse(self.linear)
        t = tuple(-v for v in linalg.matvec(inv, self.translation))
        return AffineElement(tuple(tuple(int(v) for v in row) for row in inv), t)

    def is_identity(self) -> bool:
        return self == AffineElement.identity(len(self.translation))


def reflection(vrd: ValuedRootDatum, i: int, k: Fraction) -> AffineElement:
    """Reflection in the wall a_i(x) + k = 0: x - (a(x) + k) a^vee."""
    rs = vrd.rs
    a = rs.roots[i]
    c = rs.coroots[i]
    n = rs.rank
    lin = tuple(tuple(int(r == s) - c[r] * a[s] for s in range(n)) for r in range(n))
    return AffineElement(lin, tuple(-Fraction(k) * c[r] for r in range(n)))


def _hyperplane_key(g: Sequence, h: Fraction) -> tuple:
    lead = next(v for v in g if v != 0)
    return (tuple(Fraction(v) / lead for v in g), Fraction(h) / lead)


@dataclass(frozen=True)
class Generator:
    root: int
    k: Fraction
    element: AffineElement

    def wall_text(self, vrd: ValuedRootDatum) -> str:
        return f"a{vrd.rs.root_text(self.root)}(x) + {fmt_q(self.k)} = 0"


@dataclass(frozen=True, eq=False)
class CoxeterDatum:
    vrd: ValuedRootDatum
    alcove: Facet
    base_point: tuple[Fraction, ...]
    generators: tuple[Generator, ...]
    matrix: tuple[tuple[int | None, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.generators)

    def identity(self) -> AffineElement:
        return AffineElement.identity(self.vrd.rs.rank)

    @cached_property
    def _rays(self) -> list[tuple[int, object]]:
        rs = self.vrd.rs
        return [(i, self.vrd.wall_values(i)) for i in range(rs.n_positive) if not rs.divisible(i)]

    @cached_property
    def translation_index(self) -> Fraction:
        """Index of the translations of W_af among all wall-preserving translations.

        Reflections in two parallel walls a(x) = -k, -k' compose to the
        translation by (k - k') a^vee, so W_af translates by the lattice of
        delta_a a^vee, delta_a generating the differences of wall values. A
        translation t preserves the walls iff a(t) lies in the period of
        every ray.
        """
        rs = self.vrd.rs
        n = rs.rank
        moved, dual = [], []
        for i, walls in self._rays:
            per, res = walls.canonical
            delta = qgcd(per, *(r - res[0] for r in res))
            moved.append([delta * c for c in rs.coroots[i]])
            dual.append([Fraction(a) / per for a in rs.roots[i]])
        # the wall-preserving lattice is dual to the span of the a / period
        return linalg.lattice_covolume(moved, n) * linalg.lattice_covolume(dual, n)

    @property
    def extended(self) -> bool:
        """Whether W_af may be properly extended by wall-preserving translations.

        The torsion of Z(K)_b / Z^0(O) is not modelled, so this is only the
        translation-lattice part of the Iwahori-Weyl extension.
        """
        return self.translation_index > 1

    def evaluate(self, word: Iterable[int]) -> AffineElement:
        w = self.identity()
        for s in word:
            w = w.compose(self.generators[s].element)
        return w

    def preserves_walls(self, w: AffineElement) -> bool:
        rs = self.vrd.rs
        inv = w.inverse()
        for i, walls in self._rays:
            # {a(x) = v} is sent to {(a o w^-1)(x) = v}
            g = [linalg.dot(rs.roots[i], [row[j] for row in inv.linear]) for j in range(rs.rank)]
            c = linalg.dot(rs.roots[i], inv.translation)
            j = rs.find(g)
            if j is None:
                return False
            if rs.divisible(j):
                return False
            if rs.is_positive(j):
                image = walls.affine_image(1, -c)
                target = self.vrd.wall_values(j)
            else:
                image = walls.affine_image(-1, c)
                target = self.vrd.wall_values(rs.neg(j))
            if image != target:
                return False
        return True

    def length(self, w: AffineElement, check: bool = True) -> int:
        """Number of walls separating the base point from its image."""
        if check and not self.preserves_walls(w):
            raise ValueError("element does not preserve the wall arrangement")
        rs = self.vrd.rs
        p = self.base_point
        q = w.apply(p)
        return sum(walls.count_open(rs.evaluate(i, p), rs.evaluate(i, q)) for i, walls in self._rays)

    def left_descents(self, w: AffineElement) -> list[int]:
        n = self.length(w, check=False)
        return [
            s for s, g in enumerate(self.generators) if self.length(g.element * w, check=False) < n
        ]

    def reduced_word(self, w: AffineElement) -> tuple[int, ...]:
        """Lexicographically smallest reduced word, by peeling off the smallest left descent."""
        if not self.preserves_walls(w):
            raise ValueError("element does not preserve the wall arrangement")
        word = []
        n = self.length(w, check=False)
        while n:
            for s, g in enumerate(self.generators):
                v = g.element * w
                m = self.length(v, check=False)
                if m < n:
                    word.append(s)
                    w, n = v, m
                    break
            else:
                raise AssertionError("no descent found for a nontrivial element")
        return tuple(word)

    def enumerate(self, bound: int) -> list[AffineElement]:
        """All elements of length <= bound, sorted by (length, reduced word)."""
        if bound > ENUMERATION_BOUND:
            raise ValueError("enumeration bound exceeded")
        return [e for e, _ in self.enumerate_with_words(bound)]

    def enumerate_with_words(self, bound: int) -> list[tuple[AffineElement, tuple[int, ...]]]:
        if bound > ENUMERATION_BOUND:
            raise ValueError("enumeration bound exceeded")
        ident = self.identity()
        seen = {ident: ()}
        level = [ident]
        for _ in range(bound):
            nxt = []
            for w in level:
                for s, g in enumerate(self.generators):
                    v = g.element * w
                    if v not in seen:
                        seen[v] = (s,) + seen[w]
                        nxt.append(v)
            level = nxt
        # BFS words are minimal; rewrite as lexicographically smallest reduced words
        items = [(w, self.reduced_word(w)) for w in seen]
        items.sort(key=lambda t: (len(t[1]), t[1]))
        return items

    def parabolic_elements(self, subset: Sequence[int]) -> list[AffineElement]:
        """Elements of the standard parabolic subgroup W_J (must be finite)."""
        gens = [self.generators[s].element for s in subset]
        ident = self.identity()
        group = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for w in frontier:
                for g in gens:
                    v = g * w
                    if v not in group:
                        group.add(v)
                        nxt.append(v)
                        if len(group) > COSET_BOUND:
                            raise ValueError(f"W_J for J = {list(subset)} is not finite")
            frontier = nxt
        return list(group)


def alcove_basis(vrd: ValuedRootDatum) -> CoxeterDatum:
    """Simple reflections in the walls of the alcove touching the origin on the dominant side."""
    rs = vrd.rs
    alcove = fundamental_alcove(vrd)
    p0 = fundamental_point(vrd)
    cells = _positive_cells(vrd, alcove)
    _, strict = _constraints(vrd, cells)
    candidates: dict[tuple, tuple[int, Fraction]] = {}
    for i in range(len(rs.roots)):
        c = alcove[i]
        assert isinstance(c, Gap)
        # the upper end: -a(x) = hi, i.e. a(x) + hi = 0
        key = _hyperplane_key(rs.roots[i], -c.hi)
        candidates.setdefault(key, (i, c.hi))
    walls = []
    for key, (i, k) in candidates.items():
        eq = [([Fraction(v) for v in rs.roots[i]], -k)]
        others = [(g, h) for g, h in strict if _hyperplane_key(g, h) != key]
        if linalg.interior_point(eq, others, rs.rank) is not None:
            walls.append((i, k))
    # walls off the origin first, then by root index
    walls.sort(key=lambda t: (t[1] == 0, t[0]))
    gens = tuple(Generator(i, k, reflection(vrd, i, k)) for i, k in walls)
    n = len(gens)
    matrix = [[1] * n for _ in range(n)]
    for s, t in itertools.combinations(range(n), 2):
        a, b = rs.roots[gens[s].root], rs.roots[gens[t].root]
        cos2 = rs.inner(a, b) ** 2 / (rs.inner(a, a) * rs.inner(b, b))
        m = {Fraction(0): 2, Fraction(1, 4): 3, Fraction(1, 2): 4, Fraction(3, 4): 6, Fraction(1): None}[cos2]
        matrix[s][t] = matrix[t][s] = m
    return CoxeterDatum(vrd, alcove, p0, gens, tuple(tuple(r) for r in matrix))


@dataclass(frozen=True)
class DoubleCoset:
    representative: AffineElement
    word: tuple[int, ...]
    length: int
    size: int
    members_enumerated: int
    truncated: bool


def double_cosets(
    cd: CoxeterDatum, left: Sequence[int], right: Sequence[int], bound: int
) -> list[DoubleCoset]:
    """Minimal-length representatives of W_J \\ W / W_J' among elements of length <= bound."""
    for s in list(left) + list(right):
        if not 0 <= s < cd.rank:
            raise ValueError(f"generator index {s} out of range 0..{cd.rank - 1}")
    wl = cd.parabolic_elements(sorted(set(left)))
    wr = cd.parabolic_elements(sorted(set(right)))
    items = cd.enumerate_with_words(bound)
    index = {w: n for n, (w, _) in enumerate(items)}
    assigned = [False] * len(items)
    out = []
    for n, (w, word) in enumerate(items):
        if assigned[n]:
            continue
        coset = {x * w * y for x in wl for y in wr}
        inside = 0
        for v in coset:
            m = index.get(v)
            if m is not None:
                assigned[m] = True
                inside += 1
        out.append(DoubleCoset(w, word, len(word), len(coset), inside, inside < len(coset)))
    return out


@dataclass(frozen=True)
class DemazureResult:
    dimension: int
    reduced: bool


def demazure_dim(cd: CoxeterDatum, word: Sequence[int]) -> DemazureResult:
    """Dimension of the Schubert cell reached by the word: the length of its product."""
    for s in word:
        if not 0 <= s < cd.rank:
            raise ValueError(f"generator index {s} out of range 0..{cd.rank - 1}")
    n = cd.length(cd.evaluate(word), check=False)
    return DemazureResult(n, n == len(word))


def word_text(word: Sequence[int]) -> str:
    return " ".join(f"s{s}" for s in word) if word else "e"
