"""Irreducible-map quivers of finite categories and the AR quiver of a Nakayama algebra."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .algebra import Algebra
from .linalg import row_echelon
from .lincat import LinCat, make_category
from .modules import Module, ar_translate, iso_test
from .nakayama import enumerate_indecomposables


@dataclass
class Quiver:
    """Vertices in a fixed order, ``arrows[(a, b)]`` = multiplicity, ``tau`` pairs ``(M, τM)``."""

    name: str
    vertices: list
    arrows: dict = field(default_factory=dict)
    tau: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"name": self.name, "vertices": list(self.vertices),
                "arrows": [[a, b, m] for (a, b), m in sorted(self.arrows.items(), key=self._key)],
                "tau": [list(p) for p in self.tau]}

    def _key(self, item):
        (a, b), _ = item
        return self.vertices.index(a), self.vertices.index(b)


def _radical_coords(cat: LinCat, x: int, y: int) -> list:
    # the identity is the first quotient coordinate of an endomorphism space
    n = cat.hom_dim(x, y)
    basis = cat.basis(x, y)
    return basis[1:] if x == y else basis[:n]


def irreducible_dims(cat: LinCat) -> dict:
    """``dim rad(X,Y) / rad²(X,Y)`` for all object pairs of ``cat``."""
    F = cat.alg.field
    n = len(cat)
    rad = {(x, y): _radical_coords(cat, x, y) for x in range(n) for y in range(n)}
    out = {}
    for x in range(n):
        for y in range(n):
            r = rad[(x, y)]
            if not r:
                continue
            vecs = []
            for z in range(n):
                for a in rad[(x, z)]:
                    for b in rad[(z, y)]:
                        vecs.append(cat.compose(b, a).coords)
            sq = len(row_echelon(vecs, cat.hom_dim(x, y), F)[0]) if vecs else 0
            if len(r) - sq:
                out[(cat.labels[x], cat.labels[y])] = len(r) - sq
    return out


def category_quiver(cat: LinCat, name: str = "") -> Quiver:
    return Quiver(name or cat.name, list(cat.labels), irreducible_dims(cat))


def ar_quiver(alg: Algebra, modules: Optional[Sequence[Module]] = None, name: str = "") -> Quiver:
    """AR quiver: irreducible maps between indecomposables plus the τ-pairs.

    Without ``modules`` the indecomposables are enumerated (Nakayama algebras only).
    """
    mods = list(modules) if modules is not None else enumerate_indecomposables(alg)
    cat = make_category(alg, mods, name=name or alg.name)
    q = category_quiver(cat, name or alg.name)
    for M, lab in zip(mods, cat.labels):
        tM = ar_translate(M)
        if tM.is_zero():
            continue
        for N, other in zip(mods, cat.labels):
            if iso_test(tM, N):
                q.tau.append((lab, other))
                break
    return q
