"""Comparison isomorphisms between valued root data, checked on wall arrangements.

* exotic_transport rescales each ray by its degree d = [K_a : K]: the new
  root is d a and its values are d Gamma'_a, so every wall stays in place.
* bc_transport reads a BC_n datum over K as a C_n datum over K^{1/2}: the
  long roots are the divisible roots 2a with values 2 Gamma_a, and all
  values are then doubled for the normalization omega(K^{1/2 x}) = Z.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg, rootdata
from .echelonnage import EchelonnageError, RayCase, ValuedRootDatum, assemble
from .valueset import ValueSet, fmt_q, qlcm

DEFAULT_WINDOW = Fraction(4)


@dataclass(frozen=True, eq=False)
class Transport:
    """A transported datum together with the map x -> L x between the apartments."""

    source: ValuedRootDatum
    target: ValuedRootDatum
    identification: tuple[tuple[Fraction, ...], ...]
    description: str


def _labels(label: str, dual_first: bool) -> list[str]:
    pair = {"B": ["C", "B"], "C": ["B", "C"]}.get(label, [label])
    return pair if dual_first else pair[::-1]


def _cartan(rs: rootdata.RootSystem, vecs: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[2 * rs.inner(u, v) / rs.inner(v, v) for v in vecs] for u in vecs]


def _match_system(
    rs: rootdata.RootSystem, new_base: list[tuple[Fraction, ...]], labels: list[str]
) -> tuple[rootdata.RootSystem, tuple[int, ...]]:
    """Find a built root system whose simple roots have the Cartan matrix of new_base."""
    target = _cartan(rs, new_base)
    n = len(new_base)
    perms = itertools.permutations(range(n)) if n <= 4 else [tuple(range(n))]
    for label in labels:
        try:
            cand = rootdata.build(label, n)
        except ValueError:
            continue
        cm = [[Fraction(cand.pairing[cand.simple[i]][cand.simple[j]]) for j in range(n)] for i in range(n)]
        for perm in perms if isinstance(perms, list) else list(perms):
            if all(cm[i][j] == target[perm[i]][perm[j]] for i in range(n) for j in range(n)):
                return cand, perm
    raise EchelonnageError("transported roots do not form a root system of a known type")


def _transport(
    vrd: ValuedRootDatum,
    scale: Fraction,
    base_vectors: list[tuple[Fraction, ...]],
    labels: list[str],
    value_of,
) -> tuple[rootdata.RootSystem, tuple, dict]:
    """The new simple roots are base_vectors, written in old root coordinates.

    Returns the new root system, the identification x -> L x, and per new
    orbit the old vector of its first root together with value_of(that vector).
    """
    rs = vrd.rs
    new_rs, perm = _match_system(rs, base_vectors, labels)
    rows = [base_vectors[perm[j]] for j in range(new_rs.rank)]
    ident = tuple(tuple(scale * v for v in row) for row in rows)
    per_orbit = {}
    for name, members in new_rs.orbits.items():
        b = new_rs.roots[members[0]]
        old = tuple(sum(Fraction(b[j]) * rows[j][c] for j in range(new_rs.rank)) for c in range(rs.rank))
        per_orbit[name] = value_of(old)
    return new_rs, ident, per_orbit


def _old_root(rs: rootdata.RootSystem, vec: Sequence[Fraction], degrees: Mapping[str, Fraction]):
    for name, members in rs.orbits.items():
        d = degrees[name]
        for i in members:
            if all(d * a == v for a, v in zip(rs.roots[i], vec)):
                return i, name
    raise EchelonnageError("transported root has no preimage")


def exotic_transport(vrd: ValuedRootDatum, degrees: Mapping[str, Fraction | int]) -> Transport:
    """Rescale ray a to d a with values d Gamma'_a, d = degrees[orbit of a]."""
    rs = vrd.rs
    if rs.label == "BC":
        raise EchelonnageError("exotic transport needs a reduced root system")
    if set(degrees) != set(rs.orbits):
        raise EchelonnageError(
            f"degrees given for {sorted(degrees)}, expected orbits {sorted(rs.orbits)}"
        )
    degrees = {k: Fraction(v) for k, v in degrees.items()}
    for name, d in degrees.items():
        if d <= 0:
            raise EchelonnageError(f"degree on orbit {name!r} must be positive")
        if vrd.cases is not None:
            rc = vrd.cases[name]
            if rc.case != "RES_SL2" or (rc.e2 / d).denominator != 1:
                raise EchelonnageError(
                    f"degree {fmt_q(d)} does not match {rc} on orbit {name!r}"
                )
    base = [tuple(degrees[rs.orbit_of(s)] * v for v in rs.roots[s]) for s in rs.simple]

    def value_of(old):
        i, name = _old_root(rs, old, degrees)
        return name, vrd.gp(i).affine_image(degrees[name])

    new_rs, ident, per_orbit = _transport(vrd, Fraction(1), base, _labels(rs.label, len(set(degrees.values())) > 1), value_of)
    if vrd.cases is not None:
        cases = {
            new: RayCase("RES_SL2", int(vrd.cases[old].e2 / degrees[old]))
            for new, (old, _) in per_orbit.items()
        }
        target = assemble(new_rs, cases, vrd.residue_char)
    else:
        target = ValuedRootDatum.from_value_sets(
            new_rs, {new: (g, g, None) for new, (_, g) in per_orbit.items()}, residue_char=vrd.residue_char
        )
    origin = ", ".join(f"{new} <- {old} x {fmt_q(degrees[old])}" for new, (old, _) in sorted(per_orbit.items()))
    return Transport(vrd, target, ident, f"a -> d a, Gamma' -> d Gamma' ({origin})")


def bc_transport(vrd: ValuedRootDatum) -> Transport:
    """BC_n over K as C_n over K^{1/2}, with values in the K^{1/2} normalization."""
    rs = vrd.rs
    if rs.label != "BC":
        raise EchelonnageError("bc_transport needs a BC_n valued root datum")
    if vrd.cases is not None and vrd.cases.get("multipliable", RayCase("BC1")).case != "BC1":
        raise EchelonnageError("bc_transport needs the BC1 case on multipliable rays")
    n = rs.rank
    base = []
    for j, s in enumerate(rs.simple):
        d = rs.double(s)
        vec = rs.roots[d] if d is not None else rs.roots[s]
        base.append(tuple(Fraction(v) for v in vec))

    def value_of(old):
        i = rs.find(old)
        if i is None:
            raise EchelonnageError("transported root has no preimage")
        h = rs.half(i)
        if h is not None:
            g = vrd.gamma[h].affine_image(4)
        else:
            g = vrd.gp(i).affine_image(2)
        return g, g, None

    new_rs, ident, per_orbit = _transport(vrd, Fraction(2), base, ["C"], value_of)
    target = ValuedRootDatum.from_value_sets(
        new_rs, per_orbit, residue_char=vrd.residue_char, normalization="K^(1/2)"
    )
    return Transport(
        vrd,
        target,
        ident,
        "long root 2a gets 2 Gamma_a, short root b gets Gamma'_b, then omega is doubled",
    )


# ---------------------------------------------------------------------------


@dataclass
class WallComparison:
    equal: bool
    window: Fraction
    period: Fraction
    counted: int
    discrepancy: str | None
    rays: list[str]


def _normalize(g: Sequence[Fraction]) -> tuple[Fraction, tuple[Fraction, ...]]:
    lead = next(v for v in g if v != 0)
    return lead, tuple(v / lead for v in g)


def _ray_families(vrd: ValuedRootDatum, transform) -> list[tuple[tuple[Fraction, ...], ValueSet]]:
    """Per non-divisible positive ray: (normalized functional, normalized wall values)."""
    rs = vrd.rs
    out = []
    for i in range(rs.n_positive):
        if rs.divisible(i):
            continue
        g = transform(rs.roots[i])
        lead, key = _normalize(g)
        out.append((key, vrd.wall_values(i).affine_image(1 / lead)))
    return out


def walls_equal(
    vrd1: ValuedRootDatum,
    identification: Sequence[Sequence],
    vrd2: ValuedRootDatum,
    window: Fraction = DEFAULT_WINDOW,
) -> WallComparison:
    """Compare the wall sets of vrd1 (moved by x -> L x) and vrd2.

    A wall g.x = h is keyed by g and h scaled so the first nonzero entry of g
    is 1. Every ray family is periodic, so the window is widened to cover one
    common period plus a margin of one period.
    """
    L = [[Fraction(v) for v in row] for row in identification]
    Linv = linalg.inverse(L)
    fam1 = _ray_families(vrd1, lambda a: tuple(linalg.dot(a, [row[j] for row in Linv]) for j in range(len(L))))
    fam2 = _ray_families(vrd2, lambda a: tuple(Fraction(v) for v in a))
    period = Fraction(1)
    first = True
    for _, ws in fam1 + fam2:
        per = ws.canonical[0]
        period = per if first else qlcm(period, per)
        first = False
    win = max(Fraction(window), 2 * period)

    def walls(fams):
        c = Counter()
        for key, ws in fams:
            for v in ws.members(-win, win):
                c[(key, v)] += 1
        return c

    w1, w2 = walls(fam1), walls(fam2)
    diff = sorted(set(w1.elements()) ^ set(w2.elements()), key=lambda kv: (abs(kv[1]), kv[1] < 0, kv[0]))
    diff += sorted(k for k in (set(w1) & set(w2)) if w1[k] != w2[k])
    disc = None
    if diff:
        key, v = diff[0]
        side = "first" if w1[(key, v)] > w2[(key, v)] else "second"
        normal = "(" + ",".join(fmt_q(x) for x in key) + ")"
        disc = f"wall {normal}.x = {fmt_q(v)} only in the {side} arrangement"
    rays = sorted({"(" + ",".join(fmt_q(x) for x in k) + ")" for k, _ in fam1 + fam2})
    return WallComparison(not diff, win, period, sum(w1.values()), disc, rays)


def identity_map(n: int) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def split_cousin(rs: rootdata.RootSystem) -> ValuedRootDatum:
    """All rays RES_SL2(1)."""
    return assemble(rs, {o: RayCase("RES_SL2", 1) for o in rs.orbits})
