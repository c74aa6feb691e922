"""Small exact linear algebra over Q: elimination and a dense simplex.

Sizes here are tiny (dimension <= 8, a few dozen constraints), so clarity
wins over speed. Bland's rule keeps the simplex from cycling.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Vec = tuple[Fraction, ...]
Mat = list[list[Fraction]]


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def matvec(m: Sequence[Sequence], v: Sequence) -> Vec:
    return tuple(dot(row, v) for row in m)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Mat:
    cols = list(zip(*b))
    return [[dot(row, col) for col in cols] for row in a]


def transpose(m: Sequence[Sequence]) -> Mat:
    return [list(c) for c in zip(*m)]


def identity(n: int) -> Mat:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def rref(m: Sequence[Sequence]) -> tuple[Mat, list[int]]:
    a = [[Fraction(x) for x in row] for row in m]
    pivots: list[int] = []
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def inverse(m: Sequence[Sequence]) -> Mat:
    n = len(m)
    aug = [list(map(Fraction, row)) + ident for row, ident in zip(m, identity(n))]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def solve(m: Sequence[Sequence], b: Sequence) -> Vec:
    return matvec(inverse(m), b)


def nullspace(m: Sequence[Sequence], ncols: int) -> list[Vec]:
    if not m:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, piv = rref(m)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def lattice_covolume(gens: Sequence[Sequence], n: int) -> Fraction:
    """Covolume of the full-rank lattice in Q^n spanned by the given vectors."""
    den = math.lcm(*(Fraction(x).denominator for v in gens for x in v))
    rest = [[int(Fraction(x) * den) for x in v] for v in gens]
    det = 1
    for c in range(n):
        # Euclid down column c, then retire the pivot row
        while True:
            live = [r for r in rest if r[c]]
            if not live:
                raise ValueError("vectors do not span a full-rank lattice")
            piv = min(live, key=lambda r: abs(r[c]))
            for r in live:
                if r is not piv:
                    q = r[c] // piv[c]
                    for j in range(n):
                        r[j] -= q * piv[j]
            if all(r is piv or not r[c] for r in rest):
                break
        det *= abs(piv[c])
        rest = [r for r in rest if r is not piv]
    return Fraction(det, den**n)


class Infeasible(Exception):
    pass


def _simplex(tab: Mat, basis: list[int], ncols: int) -> None:
    """Maximize the objective stored in the last row (as -c), in place."""
    obj = tab[-1]
    while True:
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            return
        best = None
        leave = None
        for i, row in enumerate(tab[:-1]):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise ArithmeticError("unbounded linear program")
        _pivot(tab, leave, enter)
        basis[leave] = enter
        obj = tab[-1]


def _pivot(tab: Mat, r: int, c: int) -> None:
    inv = 1 / tab[r][c]
    tab[r] = [x * inv for x in tab[r]]
    for i in range(len(tab)):
        if i != r and tab[i][c] != 0:
            f = tab[i][c]
            tab[i] = [x - f * y for x, y in zip(tab[i], tab[r])]


def lp_maximize(
    c: Sequence,
    a_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    a_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> tuple[Fraction, Vec]:
    """Maximize c.x over free x subject to a_ub x <= b_ub, a_eq x = b_eq.

    Raises Infeasible, or ArithmeticError when unbounded.
    """
    n = len(c)
    rows: list[tuple[list[Fraction], Fraction, bool]] = []
    for g, h in zip(a_ub, b_ub):
        rows.append(([Fraction(x) for x in g], Fraction(h), False))
    for g, h in zip(a_eq, b_eq):
        rows.append(([Fraction(x) for x in g], Fraction(h), True))
    m = len(rows)
    n_slack = sum(1 for r in rows if not r[2])
    # columns: x+ (n), x- (n), slacks, artificials (m), rhs
    nvar = 2 * n + n_slack
    width = nvar + m + 1
    tab: Mat = []
    basis: list[int] = []
    s = 0
    for i, (g, h, is_eq) in enumerate(rows):
        row = [Fraction(0)] * width
        row[:n] = g
        row[n : 2 * n] = [-x for x in g]
        if not is_eq:
            row[2 * n + s] = Fraction(1)
            s += 1
        row[-1] = h
        if h < 0:
            row = [-x for x in row]
        row[nvar + i] = Fraction(1)
        tab.append(row)
        basis.append(nvar + i)
    # phase 1: maximize -sum(artificials)
    phase1 = [Fraction(0)] * width
    for i in range(m):
        phase1[nvar + i] = Fraction(1)
    for row in tab:
        phase1 = [p - x for p, x in zip(phase1, row)]
    tab.append(phase1)
    _simplex(tab, basis, nvar + m)
    if tab[-1][-1] != 0:
        raise Infeasible("no feasible point")
    # drive remaining artificials out of the basis
    for i, b in enumerate(basis):
        if b >= nvar:
            j = next((j for j in range(nvar) if tab[i][j] != 0), None)
            if j is not None:
                _pivot(tab, i, j)
                basis[i] = j
    tab.pop()
    keep = [i for i, b in enumerate(basis) if b < nvar]
    tab = [tab[i][:nvar] + [tab[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    obj = [Fraction(0)] * (nvar + 1)
    for j in range(n):
        obj[j] = -Fraction(c[j])
        obj[n + j] = Fraction(c[j])
    for i, b in enumerate(basis):
        if obj[b] != 0:
            f = obj[b]
            obj = [o - f * x for o, x in zip(obj, tab[i])]
    tab.append(obj)
    _simplex(tab, basis, nvar)
    z = [Fraction(0)] * nvar
    for i, b in enumerate(basis):
        z[b] = tab[i][-1]
    x = tuple(z[j] - z[n + j] for j in range(n))
    return tab[-1][-1], x


def interior_point(
    equalities: Sequence[tuple[Sequence, Fraction]],
    strict: Sequence[tuple[Sequence, Fraction]],
    dim: int,
) -> Vec | None:
    """A point with g.x = h on `equalities` and g.x < h on `strict`, or None.

    Maximizes a common slack t (capped at 1); the set is nonempty iff t > 0.
    """
    c = [Fraction(0)] * dim + [Fraction(1)]
    a_ub = [list(g) + [Fraction(1)] for g, _ in strict]
    b_ub = [h for _, h in strict]
    a_ub.append([Fraction(0)] * dim + [Fraction(1)])
    b_ub.append(Fraction(1))
    a_eq = [list(g) + [Fraction(0)] for g, _ in equalities]
    b_eq = [h for _, h in equalities]
    try:
        t, sol = lp_maximize(c, a_ub, b_ub, a_eq, b_eq)
    except Infeasible:
        return None
    if strict and t <= 0:
        return None
    return sol[:dim]
