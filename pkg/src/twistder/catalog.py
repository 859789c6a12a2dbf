"""Built-in bialgebras and Lie algebras."""

from __future__ import annotations

import itertools
from fractions import Fraction

from .bialgebra import Bialgebra
from .lie.algebra import LieAlgebra
from .linalg import Matrix


def group_algebra(elements, product, inverse, names, name="") -> Bialgebra:
    """``k[G]`` for a finite group given by its multiplication table."""
    index = {g: i for i, g in enumerate(elements)}
    n = len(elements)
    mult = {(index[a], index[b]): {index[product(a, b)]: 1} for a in elements for b in elements}
    comult = {i: {(i, i): 1} for i in range(n)}
    identity = next(g for g in elements if all(product(g, h) == h for h in elements))
    antipode = Matrix(n, n, {index[inverse(g)]: {index[g]: 1} for g in elements})
    return Bialgebra(
        dim=n,
        basis_names=tuple(names),
        mult=mult,
        unit={index[identity]: 1},
        comult=comult,
        counit=tuple([1] * n),
        antipode=antipode,
        name=name,
        description=f"group algebra of a group of order {n}",
    )


def cyclic_group_algebra(order: int) -> Bialgebra:
    names = ["1"] + ["g" if k == 1 else f"g^{k}" for k in range(1, order)]
    return group_algebra(
        list(range(order)),
        lambda a, b: (a + b) % order,
        lambda a: (-a) % order,
        names,
        name=f"group_Z{order}",
    )


def _cycle_name(p: tuple[int, ...]) -> str:
    seen, cycles = set(), []
    for s in range(len(p)):
        if s in seen or p[s] == s:
            seen.add(s)
            continue
        c, i = [], s
        while i not in seen:
            seen.add(i)
            c.append(str(i + 1))
            i = p[i]
        cycles.append("(" + "".join(c) + ")")
    return "".join(cycles) or "1"


def symmetric_group_algebra(k: int = 3) -> Bialgebra:
    elements = list(itertools.permutations(range(k)))

    def compose(a, b):
        return tuple(a[b[i]] for i in range(k))

    def inverse(a):
        inv = [0] * k
        for i, x in enumerate(a):
            inv[x] = i
        return tuple(inv)

    return group_algebra(elements, compose, inverse, [_cycle_name(p) for p in elements], name=f"group_S{k}")


def sweedler_h4() -> Bialgebra:
    """Sweedler's algebra: g^2=1, x^2=0, gx+xg=0, Δg=g⊗g, Δx=1⊗x+x⊗g."""
    one, g, x, gx = range(4)
    m = {}
    for i in range(4):
        m[(one, i)] = {i: 1}
        m[(i, one)] = {i: 1}
    m[(g, g)] = {one: 1}
    m[(g, x)] = {gx: 1}
    m[(g, gx)] = {x: 1}
    m[(x, g)] = {gx: -1}
    m[(gx, g)] = {x: -1}
    comult = {
        one: {(one, one): 1},
        g: {(g, g): 1},
        x: {(one, x): 1, (x, g): 1},
        gx: {(g, gx): 1, (gx, one): 1},
    }
    # S(x) = -xg = gx is forced by Δ(x) = 1⊗x + x⊗g; then S(gx) = S(x)S(g) = -x.
    antipode = Matrix(4, 4, {one: {one: 1}, g: {g: 1}, gx: {x: 1}, x: {gx: -1}})
    return Bialgebra(
        dim=4,
        basis_names=("1", "g", "x", "gx"),
        mult=m,
        unit={one: 1},
        comult=comult,
        counit=(Fraction(1), Fraction(1), Fraction(0), Fraction(0)),
        antipode=antipode,
        name="h4_sweedler",
        description="Sweedler's four-dimensional Hopf algebra",
    )


def lie_ab2() -> LieAlgebra:
    return LieAlgebra(2, ("x", "y"), {}, name="lie_ab2", description="two-dimensional abelian Lie algebra")


def lie_heis3() -> LieAlgebra:
    return LieAlgebra(3, ("x", "y", "z"), {(0, 1): {2: 1}}, name="lie_heis3", description="Heisenberg algebra [x,y]=z")


def lie_sl2() -> LieAlgebra:
    e, h, f = range(3)
    return LieAlgebra(
        3,
        ("e", "h", "f"),
        {(e, f): {h: 1}, (h, e): {e: 2}, (h, f): {f: -2}},
        name="lie_sl2",
        description="sl2 with [e,f]=h, [h,e]=2e, [h,f]=-2f",
    )


def lie_nonab2() -> LieAlgebra:
    return LieAlgebra(2, ("a", "b"), {(0, 1): {1: 1}}, name="lie_nonab2", description="non-abelian two-dimensional Lie algebra [a,b]=b")


BIALGEBRAS = {
    "h4_sweedler": sweedler_h4,
    "group_Z2": lambda: cyclic_group_algebra(2),
    "group_Z3": lambda: cyclic_group_algebra(3),
    "group_S3": lambda: symmetric_group_algebra(3),
}

LIE_ALGEBRAS = {
    "lie_ab2": lie_ab2,
    "lie_heis3": lie_heis3,
    "lie_sl2": lie_sl2,
    "lie_nonab2": lie_nonab2,
}

NAMES = tuple(BIALGEBRAS) + tuple(LIE_ALGEBRAS)


def get(name: str):
    if name in BIALGEBRAS:
        return BIALGEBRAS[name]()
    if name in LIE_ALGEBRAS:
        return LIE_ALGEBRAS[name]()
    raise KeyError(f"unknown catalog entry {name!r}; choose from {', '.join(NAMES)}")
