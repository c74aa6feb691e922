from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bruhat_tits.apartment import (
    ConcaveFn,
    Gap,
    Wall,
    concavity_check,
    dimension,
    f_omega,
    facet_concave,
    facet_function,
    faces_of,
    fundamental_alcove,
    is_valid_facet,
    locate_facet,
    optimize,
    parabolic_correspondence,
    phi_f,
    sample_points,
    star_fn,
    star_of_facet,
)
from bruhat_tits.rootdata import parabolic_subsets
from conftest import SHIPPED, bc, corpus, split

Q = Fraction


def brute_star(vrd, x, radius: Fraction, steps: int) -> set:
    """Distinct facets met by a grid of points in a small box around x."""
    n = vrd.rs.rank
    out = set()
    for off in itertools.product(range(-steps, steps + 1), repeat=n):
        p = tuple(Q(c) + radius * o / steps for c, o in zip(x, off))
        out.add(locate_facet(vrd, p))
    return out


def fn(vrd, table: dict) -> ConcaveFn:
    return ConcaveFn(tuple(Q(table.get(r, 0)) for r in vrd.rs.roots))


# -- locate_facet ----------------------------------------------------------


def test_locate_split_a1(a1):
    f = locate_facet(a1, (0,))
    assert f[0] == Wall(0) and f[1] == Wall(0)
    f = locate_facet(a1, (Q(1, 2),))
    a = a1.rs.find((1,))
    assert f[a] == Gap(-1, 0)
    assert f[a1.rs.neg(a)] == Gap(0, 1)


def test_locate_bc1(bc1):
    rs = bc1.rs
    f = locate_facet(bc1, (Q(1, 4),))
    assert f[rs.find((1,))] == Wall(Q(-1, 4))
    assert f[rs.find((2,))] == Gap(-1, 0)
    assert f[rs.find((-1,))] == Wall(Q(1, 4))


def test_locate_dimension_error(a2):
    with pytest.raises(ValueError):
        locate_facet(a2, (0,))


def test_facets_mirror_consistent(a2, bc2):
    rng = random.Random(1)
    for vrd in (a2, bc2):
        for _ in range(30):
            x = tuple(Q(rng.randint(-12, 12), rng.choice([1, 2, 3, 4, 6, 8])) for _ in range(vrd.rs.rank))
            f = locate_facet(vrd, x)
            assert is_valid_facet(vrd, f)
            for i in range(len(vrd.rs.roots)):
                assert f[vrd.rs.neg(i)] == f[i].mirror()


@pytest.mark.parametrize("name", ["split_a2", "bc2", "exotic_g2"])
def test_locate_constant_on_sampled_points(name):
    vrd = corpus(name)
    rng = random.Random(7)
    origin = tuple(Q(0) for _ in range(vrd.rs.rank))
    for facet in star_of_facet(vrd, locate_facet(vrd, origin)):
        for p in sample_points(vrd, facet, 100 if dimension(vrd, facet) else 1, rng):
            assert locate_facet(vrd, p) == facet


# -- concave functions -------------------------------------------------------


def test_f_omega_examples(a1):
    assert f_omega(a1, [(0,)]).values == (0, 0)
    a = a1.rs.find((1,))
    f = f_omega(a1, [(Q(1, 2),)])
    assert f[a] == Q(-1, 2) and f[a1.rs.neg(a)] == Q(1, 2)
    f = f_omega(a1, [(0,), (1,)])
    assert f[a] == 0 and f[a1.rs.neg(a)] == 1
    with pytest.raises(ValueError):
        f_omega(a1, [])


def test_optimize_examples(a1, bc1):
    a = a1.rs.find((1,))
    f = fn(a1, {(1,): Q(-1, 2), (-1,): Q(1, 2)})
    assert optimize(a1, f)[a] == 0
    g = fn(a1, {(1,): 0, (-1,): 1})
    assert optimize(a1, g) == g
    h = fn(bc1, {(1,): Q(1, 4), (2,): Q(1, 2), (-1,): Q(-1, 4), (-2,): Q(-1, 2)})
    opt = optimize(bc1, h)
    assert opt[bc1.rs.find((2,))] == 1
    assert opt[bc1.rs.find((1,))] == Q(1, 4)


def test_star_fn_examples(a1, bc1):
    assert star_fn(a1, fn(a1, {})).values == (1, 1)
    alcove = fn(a1, {(1,): 0, (-1,): 1})
    assert star_fn(a1, alcove) == alcove
    v = fn(bc1, {(1,): Q(1, 4), (-1,): Q(-1, 4), (2,): 1, (-2,): 0})
    assert star_fn(bc1, v)[bc1.rs.find((1,))] == Q(3, 4)


def test_concavity_examples(a2, bc2):
    assert concavity_check(a2, fn(a2, {})).ok
    assert concavity_check(bc2, fn(bc2, {})).ok
    bad = fn(a2, {(1, 1): 1})
    for mode in ("rounded", "exact"):
        rep = concavity_check(a2, bad, mode)
        assert not rep.ok
        assert any(v.rule == "C1" and a2.rs.find((1, 1)) == v.roots[2] for v in rep.violations)
    with pytest.raises(ValueError):
        concavity_check(a2, bad, "loose")


def test_concavity_c0_and_c2_detected(bc1):
    rep = concavity_check(bc1, fn(bc1, {(1,): -1, (-1,): 0, (2,): 0, (-2,): 0}), "exact")
    assert {"C0", "C2"} <= {v.rule for v in rep.violations}


def test_optimized_needs_rounding_at_bc_vertex(bc1):
    f = facet_concave(bc1, locate_facet(bc1, (Q(-1, 4),)))
    assert f.values == (Q(1, 4), 1, Q(-1, 4), 0)
    assert concavity_check(bc1, f, "rounded").ok
    assert concavity_check(bc1, star_fn(bc1, f), "rounded").ok
    # f(-2a) = 0 exceeds 2 f(-a) = -1/2, the next Gamma'_{2a} level above it
    exact = concavity_check(bc1, f, "exact").violations
    assert any(v.rule == "C2" and v.roots == (2, 3) for v in exact)


points = st.lists(
    st.tuples(
        st.fractions(min_value=-3, max_value=3, max_denominator=8),
        st.fractions(min_value=-3, max_value=3, max_denominator=8),
    ),
    min_size=1,
    max_size=5,
)


@given(points)
def test_f_omega_concave_bc2(omega):
    vrd = bc(2)
    f = f_omega(vrd, omega)
    assert concavity_check(vrd, f, "exact").ok
    opt = optimize(vrd, f)
    assert opt >= f and optimize(vrd, opt) == opt
    fs = star_fn(vrd, opt)
    assert fs >= opt and concavity_check(vrd, fs).ok


@given(points)
def test_f_omega_is_max_of_values(omega):
    vrd = split("G", 2)
    f = f_omega(vrd, omega)
    for i, r in enumerate(vrd.rs.roots):
        assert f[i] == max(-vrd.rs.evaluate(i, p) for p in omega)


# -- Phi_f ---------------------------------------------------------------------


def test_phi_f_examples(a1, a2, bc1):
    levi = phi_f(a2, fn(a2, {}))
    assert levi.roots == frozenset(range(6)) and levi.factors == (("A2", 2),) and levi.torus_rank == 0
    levi = phi_f(a1, fn(a1, {(1,): 0, (-1,): 1}))
    assert levi.roots == frozenset() and levi.torus_rank == 1
    rs = bc1.rs
    f = facet_concave(bc1, locate_facet(bc1, (Q(-1, 4),)))
    levi = phi_f(bc1, f)
    assert levi.roots == {rs.find((1,)), rs.find((-1,))} and levi.factors == (("A1", 1),)
    f = facet_concave(bc1, locate_facet(bc1, (Q(-1, 2),)))
    levi = phi_f(bc1, f)
    assert levi.roots == {rs.find((2,)), rs.find((-2,))} and levi.factors == (("A1", 1),)


@pytest.mark.parametrize("name", SHIPPED)
def test_phi_f_alcove_empty_and_origin(name):
    vrd = corpus(name)
    alcove = fundamental_alcove(vrd)
    assert phi_f(vrd, facet_concave(vrd, alcove)).roots == frozenset()
    origin = locate_facet(vrd, tuple(Q(0) for _ in range(vrd.rs.rank)))
    f = facet_concave(vrd, origin)
    levi = phi_f(vrd, f)
    nondiv = {i for i in range(len(vrd.rs.roots)) if not vrd.rs.divisible(i)}
    # every ray is represented at the origin, by a or by 2a
    for i in nondiv:
        d = vrd.rs.double(i)
        assert i in levi.roots or (d is not None and d in levi.roots)


def test_facet_function_is_sup(a2):
    alcove = fundamental_alcove(a2)
    f = facet_function(a2, alcove)
    verts = [p for p in [(0, 0), (1, 0), (0, 1)]]
    for i in range(6):
        assert f[i] == max(-a2.rs.evaluate(i, v) for v in verts)


# -- star and the parabolic correspondence -------------------------------------


def test_star_split_a1(a1):
    v = locate_facet(a1, (0,))
    assert len(star_of_facet(a1, v)) == 3
    assert set(star_of_facet(a1, v)) == brute_star(a1, (0,), Q(1, 4), 4)


def test_star_split_a2_origin(a2):
    v = locate_facet(a2, (0, 0))
    star = star_of_facet(a2, v)
    assert len(star) == 13
    assert set(star) == brute_star(a2, (0, 0), Q(1, 4), 8)
    dims = sorted(dimension(a2, f) for f in star)
    assert dims == [0] + [1] * 6 + [2] * 6


@pytest.mark.parametrize("name,x,radius", [("split_c2", (0, 0), Q(1, 8)), ("split_g2", (0, 0), Q(1, 12)), ("bc2", (0, 0), Q(1, 12))])
def test_star_matches_grid(name, x, radius):
    vrd = corpus(name)
    assert set(star_of_facet(vrd, locate_facet(vrd, x))) == brute_star(vrd, x, radius, 12)


def test_star_of_alcove_is_itself(a2, bc2):
    for vrd in (a2, bc2):
        alcove = fundamental_alcove(vrd)
        assert star_of_facet(vrd, alcove) == [alcove]


def test_faces_of_alcove(a2):
    faces = faces_of(a2, fundamental_alcove(a2))
    assert sorted(dimension(a2, f) for f in faces) == [0, 0, 0, 1, 1, 1, 2]


def test_correspondence_a2_origin(a2):
    rep = parabolic_correspondence(a2, locate_facet(a2, (0, 0)))
    assert rep.ok and len(rep.star) == 13
    assert {p for p in rep.parabolics} == {p.roots for p in parabolic_subsets(a2.rs)}
    by_dim = {}
    for facet, p in zip(rep.star, rep.parabolics):
        by_dim.setdefault(dimension(a2, facet), []).append(p)
    assert sorted(len(p) for p in by_dim[2]) == [3] * 6
    assert by_dim[0] == [frozenset(range(6))]


def test_correspondence_alcove(a2):
    rep = parabolic_correspondence(a2, fundamental_alcove(a2))
    assert rep.ok and rep.parabolics == [frozenset()]


def test_correspondence_bc1_vertex(bc1):
    rep = parabolic_correspondence(bc1, locate_facet(bc1, (Q(-1, 4),)))
    assert rep.ok and len(rep.star) == 3 and len(rep.expected) == 3


@pytest.mark.parametrize("name", ["split_a1", "split_a2", "bc1", "bc2", "su3_unram", "su3_ram", "exotic_c2"])
def test_correspondence_at_alcove_faces(name):
    vrd = corpus(name)
    for face in faces_of(vrd, fundamental_alcove(vrd)):
        rep = parabolic_correspondence(vrd, face)
        assert rep.ok, rep.failures
