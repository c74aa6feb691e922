from __future__ import annotations

import random
from fractions import Fraction

import pytest

from bruhat_tits.echelonnage import RayCase, ray_value_sets
from bruhat_tits.rank1 import (
    BC1Realization,
    SL2Realization,
    SU3Realization,
    Tower,
    attained_value_set,
    axiom_report,
    h_lambda_mul,
    j_lambda,
    omega,
    realize,
    su3_inv,
    su3_mul,
)
from bruhat_tits.rank1.fields import FieldError, PrimeField, QuadraticField
from bruhat_tits.rank1.realizations import NotInGroup, in_H

Q = Fraction
INF = float("inf")


# -- fields ---------------------------------------------------------------------


def test_finite_fields():
    F = PrimeField(7)
    assert all(F.mul(a, F.inv(a)) == 1 for a in range(1, 7))
    with pytest.raises(FieldError):
        PrimeField(6)
    for p in (2, 3, 5, 7):
        K = QuadraticField.standard(p)
        nonzero = [a for a in K.elements() if a != K.zero]
        assert len(nonzero) == p * p - 1
        assert all(K.mul(a, K.inv(a)) == K.one for a in nonzero)
        assert all(K.sigma(K.sigma(a)) == a for a in K.elements())
        fixed = [a for a in K.elements() if K.sigma(a) == a]
        assert len(fixed) == p
    with pytest.raises(FieldError):
        QuadraticField(5, 0, 4)


def test_omega_examples():
    T = Tower.rational(3)
    t = T.t
    x = t * t * (1 + t) / (1 - t)
    assert omega(x) == 2
    S = Tower.inseparable(2)
    assert omega(S.s) == Q(1, 2)
    assert omega(S.t) == 1
    assert omega(T.zero) == INF
    with pytest.raises(FieldError):
        omega(S.s, T)
    with pytest.raises(FieldError):
        omega(3)
    with pytest.raises(FieldError):
        T.t + S.t


@pytest.mark.parametrize("tower", [Tower.rational(3), Tower.inseparable(2), Tower.unramified(5), Tower.ramified(3), Tower.unramified(2)], ids=repr)
def test_omega_additive(tower):
    rng = random.Random(11)
    for _ in range(200):
        x = tower.random(rng, nonzero=True)
        y = tower.random(rng, nonzero=True)
        assert omega(x * y) == omega(x) + omega(y)
        assert omega(x + y) >= min(omega(x), omega(y))
        assert x * x.inverse() == tower.one


@pytest.mark.parametrize("tower", [Tower.unramified(5), Tower.ramified(3), Tower.unramified(2)], ids=repr)
def test_sigma(tower):
    rng = random.Random(5)
    for _ in range(50):
        x, y = tower.random(rng), tower.random(rng)
        assert x.sigma().sigma() == x
        assert (x * y).sigma() == x.sigma() * y.sigma()
        assert (x + y).sigma() == x.sigma() + y.sigma()
        assert tower.in_base(x + x.sigma())
        assert tower.in_base(x * x.sigma())
    lam = tower.trace_one()
    assert lam + lam.sigma() == tower.one and omega(lam) == 0


def test_in_base():
    S = Tower.inseparable(2)
    assert S.in_base(S.t) and not S.in_base(S.s)
    U = Tower.unramified(5)
    assert U.in_base(U.t) and not U.in_base(U.const(U.F.theta))


# -- SU3 ---------------------------------------------------------------------------


def su3_example():
    T = Tower.unramified(5)
    root2 = T.const(T.F.theta)
    assert root2 * root2 == T.const(2)
    return T, (root2 * T.t, -(T.t * T.t))


def test_su3_example_point():
    T, p = su3_example()
    u, v = p
    assert v + v.sigma() == -2 * T.t * T.t == u * u.sigma()
    pp = su3_mul(T, p, p)
    assert pp[0] == 2 * u
    assert pp[1] == -4 * T.t * T.t
    assert in_H(T, pp)
    assert SU3Realization(T).phi(p) == 1


def test_su3_group_law():
    T, p = su3_example()
    zero = (T.zero, T.zero)
    assert su3_mul(T, zero, p) == p == su3_mul(T, p, zero)
    assert su3_mul(T, p, su3_inv(T, p)) == zero
    with pytest.raises(NotInGroup, match=r"not in H\(L,L2\)"):
        su3_mul(T, (T.one, T.zero), p)
    real = SU3Realization(T)
    rng = random.Random(2)
    pts = [real.random_point(rng) for _ in range(100)]
    for i in range(100):
        a, b, c = pts[i], pts[(i + 1) % 100], pts[(i + 2) % 100]
        assert su3_mul(T, su3_mul(T, a, b), c) == su3_mul(T, a, su3_mul(T, b, c))
        assert in_H(T, su3_mul(T, a, b)) and in_H(T, su3_inv(T, a))


@pytest.mark.parametrize("tower", [Tower.unramified(5), Tower.ramified(3)], ids=repr)
def test_j_lambda(tower):
    real = SU3Realization(tower)
    lam = tower.const(1) / tower.const(2)
    rng = random.Random(4)
    w = tower.random(rng)
    v0 = w - w.sigma()
    assert j_lambda(tower, lam, (tower.zero, v0)) == (tower.zero, v0)
    pts = [real.random_point(rng) for _ in range(100)]
    for i in range(100):
        p, q = pts[i], pts[(i + 1) % 100]
        jp, jq = j_lambda(tower, lam, p), j_lambda(tower, lam, q)
        assert (jp[1] + jp[1].sigma()).is_zero()
        assert j_lambda(tower, lam, su3_mul(tower, p, q)) == h_lambda_mul(tower, lam, jp, jq)
    with pytest.raises(FieldError):
        j_lambda(tower, tower.one, pts[0])


# -- valuations ---------------------------------------------------------------------


def test_phi_examples():
    T = Tower.rational(3)
    assert SL2Realization(T).phi(T.t * T.t) == 2
    S = Tower.inseparable(2)
    bc1 = BC1Realization(S)
    assert bc1.phi((S.t, S.t ** 3)) == Q(5, 4)
    with pytest.raises(FieldError):
        BC1Realization(S, S.t)


def test_torus_shift_sl2():
    T = Tower.rational(3)
    real = SL2Realization(T)
    r = T.t + T.t ** 3
    assert real.phi(real.conjugate(T.t, r)) - real.phi(r) == 2 == omega(real.a_of_z(T.t))


def test_m_check_sl2():
    T = Tower.rational(3)
    real = SL2Realization(T)
    rng = random.Random(9)
    for _ in range(20):
        ok, _ = real.m_check(T.random(rng, nonzero=True), T.random(rng, nonzero=True))
        assert ok


@pytest.mark.parametrize(
    "real",
    [
        SL2Realization(Tower.rational(3)),
        SL2Realization(Tower.inseparable(2)),
        SL2Realization(Tower.inseparable(3)),
        SU3Realization(Tower.unramified(5)),
        SU3Realization(Tower.unramified(2)),
        SU3Realization(Tower.ramified(3)),
        BC1Realization(Tower.inseparable(2)),
    ],
    ids=lambda r: r.name,
)
def test_axiom_report_passes(real):
    rep = axiom_report(real, samples=60, seed=1)
    assert rep.ok, [(c.name, c.detail) for c in rep.failures[:5]]
    names = set(rep.summary())
    assert {"filtration", "torus", "phi(p^-1)", "associative"} <= names


def test_sl2_attained_values():
    real = SL2Realization(Tower.rational(3))
    prime, div = attained_value_set(real, Q(2))
    assert prime == [-2, -1, 0, 1, 2] and div == []


def test_bc1_attained_values():
    real = BC1Realization(Tower.inseparable(2))
    prime, div = attained_value_set(real, Q(1))
    assert prime == [Q(n, 4) for n in (-3, -1, 1, 3)]
    # phi(0, y) = omega(y)/2 runs over half of Gamma_2a = Z
    assert div == [Q(n, 2) for n in range(-2, 3)]


@pytest.mark.parametrize(
    "case,p",
    [
        (RayCase("RES_SL2", 1), 3),
        (RayCase("RES_SL2", 2), 2),
        (RayCase("RES_SL2", 3), 3),
        (RayCase("SU3_UNRAM", 1), 5),
        (RayCase("SU3_RAM", 1), 3),
        (RayCase("BC1", 1), 2),
    ],
    ids=str,
)
def test_attained_values_match_value_sets(case, p):
    real = realize(case, p)
    gp, gamma, g2 = ray_value_sets(real.case, p)
    prime, div = attained_value_set(real, Q(2))
    assert prime == gp.members(-2, 2)
    if g2 is None:
        assert div == []
    else:
        assert div == g2.affine_image(Q(1, 2)).members(-2, 2)
    assert all(gamma.member(v) for v in prime + div)


def test_realize_errors():
    with pytest.raises(FieldError):
        realize(RayCase("SU3_RAM", 1, Q(-1, 4)), 2)
    with pytest.raises(FieldError):
        realize(RayCase("RES_SL2", 4), 2)
    with pytest.raises(FieldError):
        Tower.ramified(2)
