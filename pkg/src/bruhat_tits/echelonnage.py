"""Per-ray arithmetic data and the value sets of a valued root datum.

Each Weyl orbit of non-divisible roots carries a rank-one case. The case
determines Gamma'_a (the levels at which the filtration jumps, indexing the
walls), Gamma_a (all attained levels) and, for multipliable rays,
Gamma_{2a}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .rootdata import RootSystem
from .valueset import ValueSet, fmt_q

CASES = ("RES_SL2", "SU3_UNRAM", "SU3_RAM", "BC1")
MULTIPLIABLE_CASES = ("SU3_UNRAM", "SU3_RAM", "BC1")


class EchelonnageError(ValueError):
    pass


@dataclass(frozen=True)
class RayCase:
    """Rank-one type of a ray.

    e2 is the ramification index of K_{2a}/K (of K_a/K for RES_SL2).
    gamma is None for the default choice.
    """

    case: str
    e2: int = 1
    gamma: Fraction | None = None

    def __post_init__(self) -> None:
        if self.case not in CASES:
            raise EchelonnageError(f"unknown ray case {self.case!r}")
        if not isinstance(self.e2, int) or self.e2 < 1:
            raise EchelonnageError("e2 must be a positive integer")
        if self.gamma is not None:
            object.__setattr__(self, "gamma", Fraction(self.gamma))

    @property
    def multipliable(self) -> bool:
        return self.case in MULTIPLIABLE_CASES

    def value_group(self) -> ValueSet:
        """omega(K_a^x) as a lattice."""
        if self.case in ("RES_SL2", "SU3_UNRAM"):
            return ValueSet.lattice(Fraction(1, self.e2))
        return ValueSet.lattice(Fraction(1, 2 * self.e2))

    def effective_gamma(self, residue_char: int | None = None) -> Fraction:
        if self.case == "RES_SL2":
            return Fraction(0)
        if self.gamma is not None:
            return self.gamma
        if self.case == "BC1":
            return Fraction(-1, 4 * self.e2)
        if self.case == "SU3_RAM" and residue_char == 2:
            raise EchelonnageError(
                "SU3_RAM in residue characteristic 2 requires an explicit gamma"
            )
        return Fraction(0)

    def validate(self, residue_char: int | None = None) -> None:
        if self.case == "BC1" and residue_char != 2:
            raise EchelonnageError("BC case requires characteristic 2")
        g = self.effective_gamma(residue_char)
        if self.case == "BC1":
            quarter = Fraction(1, 4 * self.e2)
            if (g / quarter).denominator != 1 or (g / (2 * quarter)).denominator == 1:
                raise EchelonnageError(
                    f"gamma = {fmt_q(g)} must lie in (1/{4 * self.e2})Z but not in "
                    f"(1/{2 * self.e2})Z, since omega(alpha) is not a value of K_2a"
                )
        elif self.case.startswith("SU3"):
            half = self.value_group().affine_image(Fraction(1, 2))
            if g not in half:
                raise EchelonnageError(
                    f"gamma = {fmt_q(g)} must lie in {half.canonical_text()} "
                    "(half the value group of K_a)"
                )

    def __str__(self) -> str:
        text = f"{self.case}(e2={self.e2}"
        if self.gamma is not None:
            text += f", gamma={fmt_q(self.gamma)}"
        return text + ")"


def ray_value_sets(
    rc: RayCase, residue_char: int | None = None
) -> tuple[ValueSet, ValueSet, ValueSet | None]:
    """(Gamma'_a, Gamma_a, Gamma_{2a} or None) for one ray."""
    rc.validate(residue_char)
    e = rc.e2
    if rc.case == "RES_SL2":
        lat = ValueSet.lattice(Fraction(1, e))
        return lat, lat, None
    g = rc.effective_gamma(residue_char)
    if rc.case == "SU3_UNRAM":
        gp = ValueSet.lattice(Fraction(1, e), -g)
        g2 = ValueSet.lattice(Fraction(1, e))
    elif rc.case == "SU3_RAM":
        gp = ValueSet.lattice(Fraction(1, 2 * e), -g)
        g2 = ValueSet.lattice(Fraction(1, e), Fraction(1, 2 * e))
    else:
        gp = ValueSet.difference_of(
            ValueSet.lattice(Fraction(1, 4 * e)).include[0],
            ValueSet.lattice(Fraction(1, 2 * e)).include[0],
        )
        g2 = ValueSet.lattice(Fraction(1, e))
    gamma = gp.union(g2.affine_image(Fraction(1, 2)))
    return gp, gamma, g2


@dataclass(frozen=True, eq=False)
class ValuedRootDatum:
    """A root system with Gamma'_a and Gamma_a attached to every root."""

    rs: RootSystem
    gamma_prime: tuple[ValueSet, ...]
    gamma: tuple[ValueSet, ...]
    cases: Mapping[str, RayCase] | None = None
    residue_char: int | None = None
    normalization: str = "K"
    notes: tuple[str, ...] = field(default=())

    def gp(self, i: int) -> ValueSet:
        return self.gamma_prime[i]

    def wall_values(self, i: int) -> ValueSet:
        """Values of a_i(x) on the walls perpendicular to a_i, counting 2a_i."""
        walls = self.gamma_prime[i].negate()
        d = self.rs.double(i)
        if d is not None:
            walls = walls.union(self.gamma_prime[d].negate().affine_image(Fraction(1, 2)))
        return walls.simplified()

    @property
    def name(self) -> str:
        return self.rs.name

    def orbit_value_sets(self) -> dict[str, tuple[ValueSet, ValueSet, ValueSet | None]]:
        out = {}
        for name, members in self.rs.orbits.items():
            i = members[0]
            d = self.rs.double(i)
            out[name] = (
                self.gamma_prime[i],
                self.gamma[i],
                self.gamma_prime[d] if d is not None else None,
            )
        return out

    @classmethod
    def from_value_sets(
        cls,
        rs: RootSystem,
        sets: Mapping[str, tuple[ValueSet, ValueSet, ValueSet | None]],
        **meta,
    ) -> ValuedRootDatum:
        """Attach (Gamma', Gamma, Gamma_2a) per orbit name; checks orbit coverage."""
        if set(sets) != set(rs.orbits):
            raise EchelonnageError(
                f"value sets given for {sorted(sets)}, expected orbits {sorted(rs.orbits)}"
            )
        gp: list[ValueSet | None] = [None] * len(rs.roots)
        gm: list[ValueSet | None] = [None] * len(rs.roots)
        for name, members in rs.orbits.items():
            gpa, ga, g2 = sets[name]
            for i in members:
                gp[i] = gpa
                gm[i] = ga
                d = rs.double(i)
                if d is not None:
                    if g2 is None:
                        raise EchelonnageError(f"orbit {name!r} is multipliable but has no Gamma_2a")
                    gp[d] = g2
                    gm[d] = g2
                elif g2 is not None:
                    raise EchelonnageError(f"orbit {name!r} is not multipliable but has Gamma_2a")
        for i, (p, g) in enumerate(zip(gp, gm)):
            if p is None:
                raise AssertionError(f"root {i} has no value set")
            if p.negate() != p:
                raise EchelonnageError(
                    f"Gamma' on orbit {rs.orbit_of(i)!r} is not symmetric under negation"
                )
            if any(v not in g for v in p.members(-4, 4)):
                raise EchelonnageError("Gamma' must be contained in Gamma")
        return cls(rs, tuple(gp), tuple(gm), **meta)


def assemble(
    rs: RootSystem, cases: Mapping[str, RayCase], residue_char: int | None = None
) -> ValuedRootDatum:
    """Build the valued root datum from one rank-one case per orbit of rays."""
    missing = set(rs.orbits) - set(cases)
    extra = set(cases) - set(rs.orbits)
    if missing:
        raise EchelonnageError(f"no case given for orbit(s) {', '.join(sorted(missing))}")
    if extra:
        raise EchelonnageError(
            f"unknown orbit(s) {', '.join(sorted(extra))} for {rs.name}; "
            f"orbits are {', '.join(rs.orbits)}"
        )
    sets = {}
    for name, members in rs.orbits.items():
        rc = cases[name]
        mult = rs.multipliable(members[0])
        if rc.multipliable and not mult:
            raise EchelonnageError(f"case {rc.case} needs a multipliable ray, orbit {name!r} is not")
        if not rc.multipliable and mult:
            raise EchelonnageError(f"case {rc.case} needs a non-multipliable ray, orbit {name!r} is multipliable")
        sets[name] = ray_value_sets(rc, residue_char)
    return ValuedRootDatum.from_value_sets(
        rs, sets, cases=dict(cases), residue_char=residue_char
    )
