"""Finite k-linear categories, ideal quotients and their functor categories.

A :class:`LinCat` is a view on a *root* category whose objects are modules over
an algebra and whose Hom spaces come from :func:`~abcat.modules.hom_space`.  A
view selects a subset of the root objects and carries an ideal (per pair of
root objects, a subspace of root Hom coordinates), so full subcategories and
quotients by ``[ω]`` are cheap and share all Hom computations.

The functor category of a view is realised as modules over its category
algebra Γ: the basis of Γ is the union of the Hom bases; a map ``a: X -> Y``
lies in ``e_Y Γ e_X`` and ``a * b = a ∘ b``.  Right Γ-modules are then exactly
contravariant functors, with ``F(X) = F e_X``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence, Union

from .algebra import Algebra
from .linalg import InputError, Mat, kernel_rows, reduce_vector, row_echelon, solve
from .modules import (DimReport, Module, Morphism, cokernel, decompose, direct_sum, dual_module,
                      element_matrix, from_sum, hom_space, injective, injective_envelope,
                      iso_test, kernel, local_end, map_of_projectives, projective,
                      projective_cover, right_approximation, simple)


class WeakKernelError(InputError):
    """The kernel in the weak-kernel construction left the object list."""


class _RootHom:
    """Hom basis between two root objects with a coordinate map."""

    def __init__(self, basis: list, cols: list, inv: Optional[Mat]):
        self.basis = basis
        self.cols = cols
        self.inv = inv

    @property
    def dim(self):
        return len(self.basis)

    def coords(self, f: Morphism) -> list:
        v = f.flat()
        w = [v[c] for c in self.cols]
        if self.inv is None:
            return w
        F = f.field
        return (Mat._raw(F, [w], len(w)) @ self.inv).rows[0] if w else []


class _Root:
    def __init__(self, alg: Algebra, objects: Sequence[Module], labels: Sequence[str]):
        self.alg = alg
        self.objects = list(objects)
        self.labels = list(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self._homs: dict = {}
        self._comp: dict = {}

    def hom(self, x: int, y: int) -> _RootHom:
        key = (x, y)
        if key not in self._homs:
            X, Y = self.objects[x], self.objects[y]
            if x == y:
                e = local_end(X)
                basis = [Morphism.identity(X)] + list(e.radical)
                F = X.field
                n = len(basis[0].flat())
                rows = [b.flat() for b in basis]
                _, piv = row_echelon(rows, n, F)
                B = Mat._raw(F, [[r[c] for c in piv] for r in rows], len(piv))
                self._homs[key] = _RootHom(basis, piv, B.inverse())
            else:
                H = hom_space(X, Y)
                self._homs[key] = _RootHom(H.basis, H.free, None)
        return self._homs[key]

    def comp(self, x: int, y: int, z: int) -> list:
        """``T[s][t]`` = root coordinates of ``basis_yz[t] ∘ basis_xy[s]``."""
        key = (x, y, z)
        if key not in self._comp:
            hxy, hyz, hxz = self.hom(x, y), self.hom(y, z), self.hom(x, z)
            self._comp[key] = [[hxz.coords(b @ a) for b in hyz.basis] for a in hxy.basis]
        return self._comp[key]


@dataclass
class CatMorphism:
    """A morphism between two objects of a view, in quotient coordinates."""

    source: str
    target: str
    coords: list


class LinCat:
    """A full subcategory of a quotient of a root category of modules."""

    def __init__(self, root: _Root, objects: Sequence[int], ideal: Optional[dict] = None,
                 omega: Sequence[int] = (), name: str = ""):
        self.root = root
        self.obj = list(objects)
        self.ideal = ideal if ideal is not None else {}
        self.omega = tuple(omega)
        self.name = name
        self._q: dict = {}
        self._gamma = None

    # -- objects -----------------------------------------------------------------
    @property
    def labels(self) -> list[str]:
        return [self.root.labels[i] for i in self.obj]

    @property
    def modules(self) -> list[Module]:
        return [self.root.objects[i] for i in self.obj]

    @property
    def alg(self) -> Algebra:
        return self.root.alg

    def __len__(self):
        return len(self.obj)

    def __repr__(self):
        return f"<LinCat {self.name or '?'} objects={self.labels}>"

    def pos(self, label: Union[str, int]) -> int:
        """Position of an object in this view."""
        if isinstance(label, int):
            return label
        r = self.root.index.get(label)
        if r is None or r not in self.obj:
            raise InputError(f"unknown object label {label!r}")
        return self.obj.index(r)

    def module(self, label) -> Module:
        return self.root.objects[self.obj[self.pos(label)]]

    # -- Hom spaces in quotient coordinates ----------------------------------------------
    def _qdata(self, rx: int, ry: int):
        key = (rx, ry)
        if key not in self._q:
            h = self.root.hom(rx, ry)
            rows, piv = self.ideal.get(key, ([], []))
            pset = set(piv)
            comp = [c for c in range(h.dim) if c not in pset]
            self._q[key] = (rows, piv, comp)
        return self._q[key]

    def hom_dim(self, x, y) -> int:
        rx, ry = self.obj[self.pos(x)], self.obj[self.pos(y)]
        return len(self._qdata(rx, ry)[2])

    def _reduce(self, rx: int, ry: int, vec: list) -> list:
        rows, piv, comp = self._qdata(rx, ry)
        if rows:
            vec = reduce_vector(vec, rows, piv, self.alg.field)
        return [vec[c] for c in comp]

    def _lift(self, rx: int, ry: int, q: Sequence) -> list:
        rows, piv, comp = self._qdata(rx, ry)
        F = self.alg.field
        v = [F.zero] * self.root.hom(rx, ry).dim
        for c, x in zip(comp, q):
            v[c] = x
        return v

    def representative(self, x, y, q: Sequence) -> Morphism:
        """A module map representing quotient coordinates ``q`` in Hom(x, y)."""
        rx, ry = self.obj[self.pos(x)], self.obj[self.pos(y)]
        h = self.root.hom(rx, ry)
        from .modules import combine
        return combine(h.basis, self._lift(rx, ry, q), self.root.objects[rx], self.root.objects[ry])

    def _compose_root(self, rx, ry, rz, a_root, b_root) -> list:
        """Root coordinates of b ∘ a."""
        F = self.alg.field
        T = self.root.comp(rx, ry, rz)
        out = [F.zero] * self.root.hom(rx, rz).dim
        for s, x in enumerate(a_root):
            if not x:
                continue
            for t, y in enumerate(b_root):
                if not y:
                    continue
                for c, z in enumerate(T[s][t]):
                    if z:
                        out[c] = F.reduce(out[c] + x * y * z)
        return out

    def compose(self, g: CatMorphism, f: CatMorphism) -> CatMorphism:
        """``g ∘ f`` in this category."""
        if f.target != g.source:
            raise InputError("compose: morphisms are not composable")
        rx, ry, rz = (self.obj[self.pos(f.source)], self.obj[self.pos(f.target)],
                      self.obj[self.pos(g.target)])
        v = self._compose_root(rx, ry, rz, self._lift(rx, ry, f.coords), self._lift(ry, rz, g.coords))
        return CatMorphism(f.source, g.target, self._reduce(rx, rz, v))

    def basis(self, x, y) -> list[CatMorphism]:
        F = self.alg.field
        n = self.hom_dim(x, y)
        lx, ly = self.labels[self.pos(x)], self.labels[self.pos(y)]
        out = []
        for t in range(n):
            q = [F.zero] * n
            q[t] = F.one
            out.append(CatMorphism(lx, ly, q))
        return out

    def identity(self, x) -> CatMorphism:
        F = self.alg.field
        n = self.hom_dim(x, x)
        lx = self.labels[self.pos(x)]
        return CatMorphism(lx, lx, [F.one] + [F.zero] * (n - 1))

    def is_zero_map(self, f: CatMorphism) -> bool:
        return not any(f.coords)

    def check(self):
        """Associativity and unitality of composition on all basis triples."""
        labs = self.labels
        for x in labs:
            for y in labs:
                for f in self.basis(x, y):
                    if self.compose(self.identity(y), f).coords != f.coords:
                        raise InputError(f"left unit fails on Hom({x},{y})")
                    if self.compose(f, self.identity(x)).coords != f.coords:
                        raise InputError(f"right unit fails on Hom({x},{y})")
                    for z in labs:
                        for g in self.basis(y, z):
                            gf = self.compose(g, f)
                            for w in labs:
                                for h in self.basis(z, w):
                                    if self.compose(h, gf).coords != self.compose(self.compose(h, g), f).coords:
                                        raise InputError(f"associativity fails on ({x},{y},{z},{w})")
        return self

    # -- category algebra ------------------------------------------------------------
    def category_algebra(self) -> "CategoryAlgebra":
        if self._gamma is None:
            self._gamma = _build_gamma(self)
        return self._gamma


@dataclass
class CategoryAlgebra:
    gamma: Algebra
    cat: LinCat
    element: dict  # (x_pos, y_pos, t) -> basis index of Γ
    back: list  # basis index -> (x_pos, y_pos, t)

    @property
    def dim(self):
        return self.gamma.dim


def _build_gamma(cat: LinCat) -> CategoryAlgebra:
    F = cat.alg.field
    labs = cat.labels
    n = len(labs)
    element = {}
    back = []
    labels, src, tgt = [], [], []
    for x in range(n):
        for y in range(n):
            for t in range(cat.hom_dim(x, y)):
                element[(x, y, t)] = len(back)
                back.append((x, y, t))
                labels.append(f"{labs[y]}<-{labs[x]}#{t}")
                src.append(y)
                tgt.append(x)
    idem = [element[(x, x, 0)] for x in range(n)]
    products = {}
    for x in range(n):
        for y in range(n):
            dxy = cat.hom_dim(x, y)
            if not dxy:
                continue
            for w in range(n):
                dwx = cat.hom_dim(w, x)
                dwy = cat.hom_dim(w, y)
                if not dwx or not dwy:
                    continue
                rw, rx, ry = cat.obj[w], cat.obj[x], cat.obj[y]
                T = cat.root.comp(rw, rx, ry)
                for s in range(dwx):
                    bs = cat._lift(rw, rx, _unit(F, dwx, s))
                    for t in range(dxy):
                        at = cat._lift(rx, ry, _unit(F, dxy, t))
                        v = [F.zero] * cat.root.hom(rw, ry).dim
                        for i, p in enumerate(bs):
                            if not p:
                                continue
                            for j, q in enumerate(at):
                                if not q:
                                    continue
                                for c, z in enumerate(T[i][j]):
                                    if z:
                                        v[c] = F.reduce(v[c] + p * q * z)
                        red = cat._reduce(rw, ry, v)
                        terms = [(element[(w, y, c)], val) for c, val in enumerate(red) if val]
                        if terms:
                            products[(element[(x, y, t)], element[(w, x, s)])] = terms
    gamma = Algebra(F, labels, idem, src, tgt, products, vertex_labels=labs,
                    name=f"Γ({cat.name or 'cat'})")
    return CategoryAlgebra(gamma, cat, element, back)


def _unit(F, n, t):
    v = [F.zero] * n
    v[t] = F.one
    return v


# -- constructing categories ------------------------------------------------------------------


def make_category(alg: Algebra, objects: Sequence[Module], labels: Optional[Sequence[str]] = None,
                  name: str = "", check: bool = True) -> LinCat:
    """Category with the given pairwise non-isomorphic indecomposable modules as objects."""
    objects = list(objects)
    if not objects:
        raise InputError("make_category: object list is empty")
    if labels is None:
        labels = [M.label or f"X{i}" for i, M in enumerate(objects)]
    labels = list(labels)
    if len(set(labels)) != len(labels):
        raise InputError("make_category: duplicate object labels")
    for M in objects:
        if M.alg is not alg:
            raise InputError(f"make_category: {M!r} is not a module over {alg!r}")
    if check:
        for i, M in enumerate(objects):
            if local_end(M) is None:
                raise InputError(f"make_category: {labels[i]} is not indecomposable with End/rad = k")
        for i in range(len(objects)):
            for j in range(i):
                if iso_test(objects[i], objects[j]):
                    raise InputError(f"make_category: objects {labels[j]} and {labels[i]} are isomorphic")
    root = _Root(alg, objects, labels)
    return LinCat(root, range(len(objects)), name=name or "root")


def full_subcategory(cat: LinCat, labels: Sequence, name: str = "") -> LinCat:
    keep = [cat.obj[cat.pos(x)] for x in labels]
    return LinCat(cat.root, keep, cat.ideal, cat.omega, name=name or f"{cat.name}|sub")


def quotient_by(cat: LinCat, omega: Sequence, name: str = "") -> LinCat:
    """``cat / [ω]``: objects of ω are dropped and maps factoring through add ω become zero."""
    root = cat.root
    om = []
    for w in omega:
        if isinstance(w, str):
            if w not in root.index or root.index[w] not in cat.obj:
                raise InputError(f"quotient_by: {w!r} is not an object of the category")
            om.append(root.index[w])
        else:
            om.append(cat.obj[w])
    F = root.alg.field
    new_ideal = {}
    keep = [x for x in cat.obj if x not in om]
    all_omega = tuple(dict.fromkeys(cat.omega + tuple(om)))
    for rx in keep:
        for ry in keep:
            rows, _ = cat.ideal.get((rx, ry), ([], []))
            vecs = list(rows)
            d = root.hom(rx, ry).dim
            if not d:
                continue
            for w in om:
                T = root.comp(rx, w, ry)
                for row in T:
                    vecs.extend(row)
            basis, piv = row_echelon(vecs, d, F)
            if basis:
                new_ideal[(rx, ry)] = (basis, piv)
    return LinCat(root, keep, new_ideal, all_omega, name=name or f"{cat.name}/[{','.join(root.labels[w] for w in om)}]")


# -- functor modules --------------------------------------------------------------------------


@dataclass
class FunctorModule:
    carrier: Module
    provenance: tuple
    cat: LinCat

    @property
    def dim(self):
        return self.carrier.dim

    def value_dims(self) -> dict:
        return dict(zip(self.cat.labels, self.carrier.dims))

    def __repr__(self):
        return f"<FunctorModule {self.provenance} dims={list(self.carrier.dims)}>"


def _ideal_through(cat: LinCat, rX: int, M: Module, H) -> tuple[list, list]:
    """Subspace of Hom(X, M) (coords of H) factoring through the removed objects."""
    F = cat.alg.field
    vecs = []
    X = cat.root.objects[rX]
    for w in cat.omega:
        W = cat.root.objects[w]
        for a in hom_space(X, W).basis:
            for b in hom_space(W, M).basis:
                vecs.append(H.coords(b @ a))
    return row_echelon(vecs, H.dim, F)


@dataclass
class _HomFunctorData:
    spaces: list
    ideals: list
    comps: list


def hom_functor(cat: LinCat, M: Module, label: Optional[str] = None) -> FunctorModule:
    """The functor ``X ↦ Hom(X, M)`` modulo maps through removed objects, on ``cat``."""
    G = cat.category_algebra()
    gam = G.gamma
    F = gam.field
    spaces, ideals, comps = [], [], []
    for x, rx in enumerate(cat.obj):
        H = hom_space(cat.root.objects[rx], M)
        rows, piv = _ideal_through(cat, rx, M, H)
        pset = set(piv)
        spaces.append(H)
        ideals.append((rows, piv))
        comps.append([c for c in range(H.dim) if c not in pset])
    dims = [len(c) for c in comps]
    blocks = {}
    for b in gam.radical:
        x, y, t = G.back[b]
        if not dims[x] or not dims[y]:
            continue
        a = cat.representative(x, y, _unit(F, cat.hom_dim(x, y), t))
        rows = []
        for r in comps[y]:
            phi = spaces[y].basis[r]
            v = spaces[x].coords(phi @ a)
            if ideals[x][0]:
                v = reduce_vector(v, ideals[x][0], ideals[x][1], F)
            rows.append([v[c] for c in comps[x]])
        blocks[b] = Mat._raw(F, rows, dims[x])
    carrier = Module(gam, dims, blocks, label=label or f"Hom(-,{M.label})")
    fm = FunctorModule(carrier, ("hom", M.label), cat)
    fm._data = _HomFunctorData(spaces, ideals, comps)
    return fm


def hom_functor_map(cat: LinCat, u: Morphism, FM: FunctorModule, FN: FunctorModule) -> Morphism:
    """The natural transformation Hom(-, M) -> Hom(-, N) given by post-composition with ``u``."""
    F = cat.alg.field
    dM, dN = FM._data, FN._data
    blocks = []
    for x in range(len(cat)):
        rows = []
        for r in dM.comps[x]:
            v = dN.spaces[x].coords(u @ dM.spaces[x].basis[r])
            if dN.ideals[x][0]:
                v = reduce_vector(v, dN.ideals[x][0], dN.ideals[x][1], F)
            rows.append([v[c] for c in dN.comps[x]])
        blocks.append(Mat._raw(F, rows, len(dN.comps[x])))
    return Morphism(FM.carrier, FN.carrier, blocks)


def ext_functor(cat: LinCat, M: Module, label: Optional[str] = None) -> FunctorModule:
    """``X ↦ Ext^1(X, M) = Hom(X, C) / π∘Hom(X, I)`` for ``0 -> M -> I -> C -> 0``."""
    from .modules import ext_dim
    for w in cat.omega:
        if ext_dim(1, cat.root.objects[w], M):
            raise InputError(f"Ext^1(-, {M.label}) does not vanish on the removed object "
                             f"{cat.root.labels[w]}; it is not a functor on the quotient")
    G = cat.category_algebra()
    gam = G.gamma
    F = gam.field
    I, iota = injective_envelope(M)
    C, pi = cokernel(iota)
    spaces, subs, comps = [], [], []
    for rx in cat.obj:
        X = cat.root.objects[rx]
        H = hom_space(X, C)
        vecs = [H.coords(pi @ g) for g in hom_space(X, I).basis]
        rows, piv = row_echelon(vecs, H.dim, F)
        pset = set(piv)
        spaces.append(H)
        subs.append((rows, piv))
        comps.append([c for c in range(H.dim) if c not in pset])
    dims = [len(c) for c in comps]
    blocks = {}
    for b in gam.radical:
        x, y, t = G.back[b]
        if not dims[x] or not dims[y]:
            continue
        a = cat.representative(x, y, _unit(F, cat.hom_dim(x, y), t))
        rows = []
        for r in comps[y]:
            v = spaces[x].coords(spaces[y].basis[r] @ a)
            if subs[x][0]:
                v = reduce_vector(v, subs[x][0], subs[x][1], F)
            rows.append([v[c] for c in comps[x]])
        blocks[b] = Mat._raw(F, rows, dims[x])
    carrier = Module(gam, dims, blocks, label=label or f"Ext1(-,{M.label})")
    return FunctorModule(carrier, ("ext", 1, M.label), cat)


def presentation_module(cat: LinCat, src: Sequence, tgt: Sequence, matrix) -> FunctorModule:
    """Cokernel of ``⊕_t C(-, src_t) -> ⊕_s C(-, tgt_s)`` given by maps ``matrix[t][s]: src_t -> tgt_s``
    (lists of quotient coordinates, or None for zero)."""
    G = cat.category_algebra()
    sv = [cat.pos(x) for x in src]
    tv = [cat.pos(y) for y in tgt]
    elems = []
    for t, x in enumerate(sv):
        row = []
        for s, y in enumerate(tv):
            q = matrix[t][s]
            el = {}
            if q is not None:
                for c, val in enumerate(q):
                    if val:
                        el[G.element[(x, y, c)]] = val
            row.append(el)
        elems.append(row)
    f = map_of_projectives(G.gamma, sv, tv, elems)
    C, _ = cokernel(f)
    return FunctorModule(C, ("cokernel", tuple(cat.labels[i] for i in sv), tuple(cat.labels[i] for i in tv)), cat)


def functor_module(cat: LinCat, kind: str, data=None) -> FunctorModule:
    """Functor modules by kind: representable, simple, injective, restricted, hom, ext, cokernel."""
    G = cat.category_algebra()
    gam = G.gamma
    if kind in ("representable", "simple", "injective"):
        x = cat.pos(data)
        lab = cat.labels[x]
        if kind == "representable":
            M = projective(gam, x).relabel(f"P{lab}")
        elif kind == "simple":
            M = simple(gam, x).relabel(f"S{lab}")
        else:
            M = injective(gam, x).relabel(f"I{lab}")
        return FunctorModule(M, (kind, lab), cat)
    if kind in ("restricted", "hom"):
        M = data if isinstance(data, Module) else cat.root.objects[cat.root.index[data]]
        fm = hom_functor(cat, M)
        fm.provenance = (kind, M.label)
        return fm
    if kind == "ext":
        M = data if isinstance(data, Module) else cat.root.objects[cat.root.index[data]]
        return ext_functor(cat, M)
    if kind == "cokernel":
        src, tgt, matrix = data
        return presentation_module(cat, src, tgt, matrix)
    raise InputError(f"unknown functor kind {kind!r}")


# -- resolutions over the category algebra -----------------------------------------------------------


@dataclass
class ResolutionTrace:
    target: FunctorModule
    terms: list = dc_field(default_factory=list)  # list of lists of object labels
    syzygies: list = dc_field(default_factory=list)  # Ω^0 = target, Ω^1, ...
    covers: list = dc_field(default_factory=list)  # π_k: P_k -> Ω^k
    inclusions: list = dc_field(default_factory=list)  # ι_k: Ω^k -> P_{k-1}, k >= 1
    status: str = "truncated"
    period: Optional[tuple] = None
    period_witness: Optional[Morphism] = None
    cutoff: int = 0

    @property
    def length(self) -> Optional[int]:
        return len(self.terms) - 1 if self.status == "finite" else None

    @property
    def pd(self):
        if self.status == "finite":
            return max(len(self.terms) - 1, 0)
        return "infinite" if self.status == "periodic" else "unknown"

    def differential(self, k: int) -> Morphism:
        """d_k: P_k -> P_{k-1} for k >= 1."""
        return self.inclusions[k] @ self.covers[k]

    def is_minimal(self) -> bool:
        """Every differential entry lies in the radical of Γ (no idempotent components)."""
        gam = self.target.carrier.alg
        idem = set(gam.idempotents)
        for k in range(1, len(self.terms)):
            lam = element_matrix(self.differential(k))
            for row in lam:
                for el in row:
                    if any(b in idem for b in el):
                        return False
        return True

    def is_exact(self) -> bool:
        for k in range(len(self.covers)):
            pi = self.covers[k]
            if not pi.is_surjective():
                return False
            if k + 1 < len(self.inclusions):
                inc = self.inclusions[k + 1]
                if not inc.is_injective() or not (pi @ inc).is_zero():
                    return False
                if inc.rank() + pi.rank() != pi.source.dim:
                    return False
        return True

    def to_json(self) -> dict:
        out = {"terms": self.terms, "status": self.status,
               "syzygy_dims": [list(S.dims) for S in self.syzygies], "cutoff": self.cutoff}
        if self.period:
            out["period"] = list(self.period)
        return out


def minimal_resolution(F: FunctorModule, cutoff: int = 200, min_terms: int = 0) -> ResolutionTrace:
    """Minimal projective resolution over Γ, stopping at a zero syzygy, at the first
    syzygy isomorphic to an earlier one (recorded with an explicit isomorphism), or at
    ``cutoff`` terms.  ``min_terms`` keeps computing terms past a detected period."""
    if cutoff < 1:
        raise InputError("cutoff must be >= 1")
    labs = F.cat.labels
    tr = ResolutionTrace(F, cutoff=cutoff)
    tr.inclusions.append(None)
    cur = F.carrier
    k = 0
    while True:
        tr.syzygies.append(cur)
        if cur.is_zero():
            if tr.period is None:
                tr.status = "finite"
            break
        if tr.period is None:
            for i, prev in enumerate(tr.syzygies[:-1]):
                if prev.dims == cur.dims:
                    ok, w = iso_test(prev, cur, witness=True)
                    if ok:
                        tr.period = (i, k)
                        tr.period_witness = w
                        tr.status = "periodic"
                        break
        if tr.period is not None and len(tr.terms) >= min_terms:
            break
        if len(tr.terms) >= cutoff:
            break
        P, pi = projective_cover(cur)
        tr.terms.append([labs[v] for v in P.proj_verts])
        tr.covers.append(pi)
        K, inc = kernel(pi)
        tr.inclusions.append(inc)
        cur = K
        k += 1
    return tr


def functor_pd(F: FunctorModule, cutoff: int = 200) -> DimReport:
    tr = minimal_resolution(F, cutoff)
    return DimReport(tr.pd, [S.dim for S in tr.syzygies], tr.period, tr.period_witness, cutoff)


def functor_iso_test(A, B) -> bool:
    a = A.carrier if isinstance(A, FunctorModule) else A
    b = B.carrier if isinstance(B, FunctorModule) else B
    return iso_test(a, b)


def _op_trace(M: Module, cat: LinCat, cutoff: int) -> ResolutionTrace:
    return minimal_resolution(FunctorModule(M, ("op",), cat), cutoff)


def homological_report(cat: LinCat, cutoff: int = 200) -> dict:
    """gd (max pd of simple functors) and the Iwanaga-Gorenstein verdict.

    id of the projective at X is computed as pd of its dual over Γ^op; the id of the
    projectives of Γ^op is pd of the injective functors over Γ.  Infinite values
    always come from a detected syzygy isomorphism.
    """
    G = cat.category_algebra()
    gam = G.gamma
    labs = cat.labels
    simples = {}
    for x, lab in enumerate(labs):
        tr = minimal_resolution(FunctorModule(simple(gam, x), ("simple", lab), cat), cutoff)
        simples[lab] = tr
    proj_id, inj_pd = {}, {}
    for x, lab in enumerate(labs):
        proj_id[lab] = _op_trace(dual_module(projective(gam, x)), cat, cutoff)
        inj_pd[lab] = minimal_resolution(FunctorModule(injective(gam, x), ("injective", lab), cat), cutoff)

    def agg(traces):
        vals = [t.pd for t in traces]
        if "infinite" in vals:
            return "infinite"
        if "unknown" in vals:
            return "unknown"
        return max(vals) if vals else 0

    gd = agg(simples.values())
    right = agg(proj_id.values())
    left = agg(inj_pd.values())
    if right == "infinite" or left == "infinite":
        ig = False
    elif right == "unknown" or left == "unknown":
        ig = None
    else:
        ig = True
    return {"gd": gd, "ig": ig, "simples": simples, "proj_id": proj_id, "inj_pd": inj_pd,
            "id_projectives": right, "pd_injectives": left}


def witness_of(report: dict) -> Optional[tuple]:
    """(kind, object, trace) of an infinite-dimension witness in a homological report."""
    for kind in ("inj_pd", "proj_id", "simples"):
        for lab, tr in report[kind].items():
            if tr.status == "periodic":
                return kind, lab, tr
    return None


# -- weak kernels ---------------------------------------------------------------------------------


@dataclass
class WeakKernel:
    """Components ``γ_k: N_k -> M`` (quotient coordinates) of a weak kernel of ``f: M -> L``."""

    f: CatMorphism
    components: list  # CatMorphism list
    kernel: Module
    kernel_summands: list  # root labels of the summands of the ambient kernel
    in_objects: bool  # the ambient kernel already lay in add(objects ∪ B)


def weak_kernel(cat: LinCat, f: CatMorphism, approx_base: Optional[Sequence] = None,
                approximate: bool = True) -> WeakKernel:
    """Weak kernel of ``f`` in ``cat`` (a full subcategory of root/[B]).

    ``γ`` is the ``M``-component of the kernel of ``(α β): M ⊕ B_L -> L``, where ``α``
    represents ``f`` and ``β`` is a minimal right ``B``-approximation of ``L``.  Kernel
    summands outside ``cat`` and ``B`` make it leave the object list; with
    ``approximate`` they are replaced by right approximations from ``cat``, which keeps
    the weak-kernel property inside the subcategory.
    """
    root = cat.root
    B = list(cat.omega) if approx_base is None else [root.index[b] if isinstance(b, str) else b for b in approx_base]
    Mmod, Lmod = cat.module(f.source), cat.module(f.target)
    alpha = cat.representative(f.source, f.target, f.coords)
    bmods = [root.objects[b] for b in B]
    beta = right_approximation(bmods, Lmod)
    ds = direct_sum([Mmod, beta.sum.module], Mmod.alg)
    g = from_sum(ds, Lmod, [alpha, beta.map])
    K, iota = kernel(g)
    gamma = ds.projections[0] @ iota
    dec = decompose(K, root.objects)
    if not dec.complete:
        raise WeakKernelError(f"kernel of dimension {K.dim} is not a sum of the known objects "
                              f"(found summands {[root.labels[i] for i in dec.indices()]})")
    summands = [root.labels[i] for i in dec.indices()]
    comps = []
    inside = True
    cat_set = set(cat.obj)
    bset = set(B)
    ml = f.source
    for idx, u in dec.parts:
        if idx in bset:
            continue
        piece = gamma @ u
        if idx in cat_set:
            comps.append(CatMorphism(root.labels[idx], ml, _cat_coords(cat, idx, cat.obj[cat.pos(ml)], piece)))
            continue
        inside = False
        if not approximate:
            raise WeakKernelError(f"kernel summand {root.labels[idx]} is not an object of {cat.name}")
        xs = [root.objects[i] for i in cat.obj]
        ap = right_approximation(xs, root.objects[idx])
        for j, comp in zip(ap.indices, ap.components):
            comps.append(CatMorphism(cat.labels[j], ml,
                                     _cat_coords(cat, cat.obj[j], cat.obj[cat.pos(ml)], piece @ comp)))
    return WeakKernel(f, comps, K, summands, inside)


def _cat_coords(cat: LinCat, rx: int, ry: int, h: Morphism) -> list:
    return cat._reduce(rx, ry, cat.root.hom(rx, ry).coords(h))


def check_weak_kernel(cat: LinCat, wk: WeakKernel) -> dict:
    """Universal-property test: every basis map ``h: W -> M`` with ``f∘h = 0`` factors
    as ``Σ γ_k ∘ s_k``; also ``f ∘ γ_k = 0``.  Solved exactly in quotient coordinates."""
    F = cat.alg.field
    f = wk.f
    tested = 0
    for g in wk.components:
        if any(cat.compose(f, g).coords):
            return {"ok": False, "reason": f"f∘γ != 0 on component from {g.source}", "tested": tested}
    for w in cat.labels:
        hb = cat.basis(w, f.source)
        if not hb:
            continue
        dl = cat.hom_dim(w, f.target)
        # kernel of h ↦ f∘h on Hom(w, M)
        cols = [cat.compose(f, h).coords for h in hb]
        if dl:
            vecs, _ = kernel_rows([list(r) for r in zip(*cols)], len(hb), F)
        else:
            vecs = [_unit(F, len(hb), t) for t in range(len(hb))]
        # spanning set of Σ γ_k ∘ Hom(w, N_k)
        gens = []
        for g in wk.components:
            for s in cat.basis(w, g.source):
                gens.append(cat.compose(g, s).coords)
        dm = len(hb)
        for v in vecs:
            tested += 1
            if not gens:
                if any(v):
                    return {"ok": False, "reason": f"no factorization for a map from {w}", "tested": tested}
                continue
            A = Mat._raw(F, [list(r) for r in zip(*gens)], len(gens))
            Bm = Mat._raw(F, [[x] for x in v], 1)
            if dm and solve(A, Bm) is None:
                return {"ok": False, "reason": f"no factorization for a map from {w}", "tested": tested}
    return {"ok": True, "tested": tested}
