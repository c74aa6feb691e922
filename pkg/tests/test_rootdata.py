from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from bruhat_tits import linalg
from bruhat_tits.rootdata import build, is_closed, parabolic_subsets


def ambient(rs, i):
    return tuple(
        sum(Fraction(c) * rs.ambient_simple[j][k] for j, c in enumerate(rs.roots[i]))
        for k in range(len(rs.ambient_simple[0]))
    )


def brute_parabolics(rs) -> set[frozenset[int]]:
    """All subsets P with P closed under sums and P u -P = Phi."""
    n = len(rs.roots)
    index = {r: i for i, r in enumerate(rs.roots)}
    sums = {}
    for i in range(n):
        for j in range(n):
            k = index.get(tuple(x + y for x, y in zip(rs.roots[i], rs.roots[j])))
            if k is not None:
                sums[(i, j)] = k
    out = set()
    for mask in range(1 << n):
        p = {i for i in range(n) if mask >> i & 1}
        if any(i not in p and rs.neg(i) not in p for i in range(n)):
            continue
        if all(k in p for (i, j), k in sums.items() if i in p and j in p):
            out.add(frozenset(p))
    return out


def weyl_order(rs) -> int:
    """Close the simple reflection matrices (acting on root coordinates) under products."""
    n = rs.rank

    def refl(s):
        cols = []
        for j in range(n):
            e = [int(j == c) for c in range(n)]
            cols.append(rs.reflect(s, e))
        return tuple(tuple(cols[j][r] for j in range(n)) for r in range(n))

    gens = [refl(s) for s in rs.simple]
    ident = tuple(tuple(Fraction(int(r == c)) for c in range(n)) for r in range(n))
    seen, frontier = {ident}, [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(tuple(v) for v in linalg.matmul(s, g))
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return len(seen)


@pytest.mark.parametrize(
    "label,rank,count",
    [
        ("A", 1, 2), ("A", 2, 6), ("A", 3, 12), ("B", 2, 8), ("B", 3, 18), ("C", 2, 8), ("C", 3, 18),
        ("D", 4, 24), ("G", 2, 12), ("F", 4, 48), ("E", 6, 72), ("BC", 1, 4), ("BC", 2, 12), ("BC", 3, 24),
    ],
)
def test_root_counts(label, rank, count):
    rs = build(label, rank)
    assert len(rs.roots) == count
    if label == "BC":
        assert count == 2 * rank * rank + 2 * rank


@pytest.mark.parametrize("label,rank", [("A", 2), ("B", 3), ("C", 2), ("G", 2), ("F", 4), ("BC", 2)])
def test_root_system_axioms(label, rank):
    rs = build(label, rank)
    for i in range(len(rs.roots)):
        assert rs.pairing[i][i] == 2
        for j in range(len(rs.roots)):
            assert rs.find(rs.reflect(j, rs.roots[i])) is not None
    # pairing agrees with the Euclidean form of the ambient realization
    for i, j in itertools.product(range(len(rs.roots)), repeat=2):
        u, v = ambient(rs, i), ambient(rs, j)
        dot = lambda x, y: sum(a * b for a, b in zip(x, y))
        assert rs.pairing[i][j] == 2 * dot(u, v) / dot(v, v)


def test_bc_structure():
    rs = build("BC", 1)
    assert sorted(rs.roots) == [(-2,), (-1,), (1,), (2,)]
    rs = build("BC", 2)
    # oracle: C2 roots in e-coordinates plus halves of the long roots
    c2 = {(s * 1, t * 1) for s in (1, -1) for t in (1, -1)} | {(2, 0), (-2, 0), (0, 2), (0, -2)}
    bc2 = c2 | {(x // 2, y // 2) for x, y in c2 if x % 2 == 0 and y % 2 == 0}
    assert len(bc2) == len(rs.roots) == 12
    amb = {ambient(rs, i) for i in range(len(rs.roots))}
    scale = min(abs(v) for r in amb for v in r if v)
    assert {tuple(v / scale for v in r) for r in amb} == {tuple(Fraction(v) for v in r) for r in bc2}
    for i in range(len(rs.roots)):
        if rs.multipliable(i):
            assert rs.double(i) is not None and rs.half(rs.double(i)) == i
    assert len(rs.nondivisible) == 8


def test_unsupported():
    with pytest.raises(ValueError, match="unsupported root system"):
        build("H", 3)
    with pytest.raises(ValueError, match="unsupported root system"):
        build("G", 3)
    with pytest.raises(ValueError):
        build("A", 0)


@pytest.mark.parametrize("label,rank,order", [("A", 2, 6), ("C", 2, 8), ("BC", 2, 8), ("G", 2, 12), ("B", 3, 48)])
def test_weyl_group_order(label, rank, order):
    rs = build(label, rank)
    assert weyl_order(rs) == order
    assert len(rs.weyl_group) == order


def test_reflect_examples():
    a1 = build("A", 1)
    assert a1.reflect(0, (0,)) == (0,)
    a2 = build("A", 2)
    for i in range(6):
        assert a2.reflect(i, a2.roots[i]) == tuple(-x for x in a2.roots[i])
    bc2 = build("BC", 2)
    short = bc2.find((0, 1))
    for j in range(len(bc2.roots)):
        want = tuple(b - bc2.pairing[j][short] * a for a, b in zip(bc2.roots[short], bc2.roots[j]))
        assert bc2.reflect(short, bc2.roots[j]) == want
        assert bc2.reflect(short, bc2.reflect(short, bc2.roots[j])) == bc2.roots[j]


@pytest.mark.parametrize("label,rank,count", [("A", 1, 3), ("A", 2, 13), ("BC", 1, 3), ("C", 2, 17), ("BC", 2, 17), ("G", 2, 25)])
def test_parabolic_subsets_match_brute_force(label, rank, count):
    rs = build(label, rank)
    got = parabolic_subsets(rs)
    assert len(got) == count
    assert {p.roots for p in got} == brute_parabolics(rs)
    assert [p.sort_key() for p in got] == sorted(p.sort_key() for p in got)
    for p in got:
        assert is_closed(rs, p.roots)


def test_a1_parabolics_explicit():
    rs = build("A", 1)
    assert {p.roots for p in parabolic_subsets(rs)} == {frozenset({0}), frozenset({1}), frozenset({0, 1})}


@pytest.mark.parametrize("label,rank", [("A", 2), ("C", 2), ("BC", 2), ("G", 2)])
def test_parabolics_weyl_stable(label, rank):
    rs = build(label, rank)
    ps = {p.roots for p in parabolic_subsets(rs)}
    for w in rs.weyl_group:
        assert {frozenset(w[i] for i in p) for p in ps} == ps


def test_bc_parabolics_respect_divisibility():
    rs = build("BC", 2)
    for p in parabolic_subsets(rs):
        for i in range(len(rs.roots)):
            if rs.multipliable(i):
                assert (i in p.roots) == (rs.double(i) in p.roots)


def test_enumeration_bound():
    with pytest.raises(ValueError, match="enumeration bound exceeded"):
        parabolic_subsets(build("A", 5))
