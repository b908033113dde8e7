"""Right modules over an :class:`~abcat.algebra.Algebra` and their morphisms.

Conventions.  A module ``M`` is the sum of its vertex spaces ``M e_i``; vectors
are rows and an algebra element acts on the right, so a basis element
``b = e_i b e_j`` acts by a ``d_i x d_j`` block ``A_b`` and ``A_a A_b`` is the
action of ``a*b``.  A morphism ``f: M -> N`` is a list of per-vertex blocks
``F_i`` (``d_i(M) x d_i(N)``) with ``A^M_b F_j = F_i A^N_b``.  Only blocks of
non-idempotent basis elements are stored; missing blocks are zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .algebra import Algebra
from .linalg import (Field, InputError, Mat, SparseSystem, find_invertible_combination,
                     generic_invertibility, kernel_rows, reduce_vector, row_echelon, solve)


def _zeros(F: Field, r: int, c: int) -> Mat:
    return Mat.zeros(F, r, c)


def _cache(alg: Algebra) -> dict:
    return alg.__dict__.setdefault("_cache", {})


class Module:
    """A finite-dimensional right module given by per-vertex dimensions and action blocks."""

    def __init__(self, alg: Algebra, dims: Sequence[int], blocks: Optional[dict] = None,
                 label: Optional[str] = None):
        self.alg = alg
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != alg.nvert:
            raise InputError(f"module needs {alg.nvert} vertex dimensions, got {len(self.dims)}")
        self.blocks = {}
        for b, m in (blocks or {}).items():
            if alg.is_idempotent[b]:
                continue
            if m.shape != (self.dims[alg.src[b]], self.dims[alg.tgt[b]]):
                raise InputError(f"action block of {alg.labels[b]!r} has shape {m.shape}")
            if not m.is_zero():
                self.blocks[b] = m
        self.label = label
        self._memo: dict = {}

    def __getstate__(self):
        # memoized duals and covers refer to algebra objects that do not survive pickling
        state = self.__dict__.copy()
        state["_memo"] = {}
        return state

    @property
    def field(self) -> Field:
        return self.alg.field

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def __repr__(self):
        tag = f" {self.label}" if self.label else ""
        return f"<Module{tag} dims={list(self.dims)}>"

    def act(self, b: int) -> Mat:
        alg = self.alg
        i, j = alg.src[b], alg.tgt[b]
        if alg.is_idempotent[b]:
            return Mat.identity(self.field, self.dims[i])
        m = self.blocks.get(b)
        return m if m is not None else _zeros(self.field, self.dims[i], self.dims[j])

    def relabel(self, label: Optional[str]) -> "Module":
        out = Module.__new__(Module)
        out.__dict__.update(self.__dict__)
        out.label = label
        out._memo = self._memo
        return out

    def same_as(self, other: "Module") -> bool:
        """Literal equality of the presentation (not isomorphism)."""
        return (self.alg is other.alg and self.dims == other.dims
                and self.blocks.keys() == other.blocks.keys()
                and all(self.blocks[b] == other.blocks[b] for b in self.blocks))

    def check(self):
        """Verify the module axioms on all composable pairs of radical basis elements."""
        alg = self.alg
        rad = alg.radical
        for a in rad:
            for b in rad:
                if alg.tgt[a] != alg.src[b]:
                    continue
                lhs = self.act(a) @ self.act(b)
                rhs = _zeros(self.field, lhs.nrows, lhs.ncols)
                for c, x in alg.products.get((a, b), ()):
                    rhs = rhs + self.act(c).scale(x)
                if lhs != rhs:
                    raise InputError(f"module relation fails for {alg.labels[a]}*{alg.labels[b]}")
        return self

    # radical / top data, cached
    def _rad(self, j: int):
        key = ("rad", j)
        if key not in self._memo:
            vecs = []
            for a in self.alg.arrows:
                if self.alg.tgt[a] == j and a in self.blocks:
                    vecs.extend(self.blocks[a].rows)
            rows, piv = row_echelon(vecs, self.dims[j], self.field)
            pset = set(piv)
            top = [c for c in range(self.dims[j]) if c not in pset]
            self._memo[key] = (rows, piv, top)
        return self._memo[key]

    def top_dims(self) -> tuple[int, ...]:
        return tuple(len(self._rad(j)[2]) for j in range(self.alg.nvert))


class Morphism:
    """Module homomorphism stored as per-vertex blocks (row-vector convention)."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: Module, target: Module, blocks: Sequence[Mat]):
        if source.alg is not target.alg:
            raise InputError("morphism between modules over different algebras")
        self.source = source
        self.target = target
        self.blocks = list(blocks)
        for i, m in enumerate(self.blocks):
            if m.shape != (source.dims[i], target.dims[i]):
                raise InputError(f"morphism block {i} has shape {m.shape}")

    @classmethod
    def zero(cls, M: Module, N: Module) -> "Morphism":
        return cls(M, N, [_zeros(M.field, a, b) for a, b in zip(M.dims, N.dims)])

    @classmethod
    def identity(cls, M: Module) -> "Morphism":
        return cls(M, M, [Mat.identity(M.field, d) for d in M.dims])

    def __repr__(self):
        return f"<Morphism {self.source!r} -> {self.target!r}>"

    @property
    def field(self) -> Field:
        return self.source.field

    @property
    def matrix(self) -> Mat:
        """Block-diagonal matrix on the concatenated vertex bases."""
        F = self.field
        out = _zeros(F, self.source.dim, self.target.dim)
        r0 = c0 = 0
        for blk in self.blocks:
            for r, row in enumerate(blk.rows):
                out.rows[r0 + r][c0:c0 + blk.ncols] = row
            r0 += blk.nrows
            c0 += blk.ncols
        return out

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """Composition ``self ∘ other``."""
        if other.target.dims != self.source.dims or other.target.alg is not self.source.alg:
            raise InputError("composition of non-composable morphisms")
        return Morphism(other.source, self.target, [a @ b for a, b in zip(other.blocks, self.blocks)])

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, [a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self) -> "Morphism":
        return Morphism(self.source, self.target, [-a for a in self.blocks])

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target, [a.scale(c) for a in self.blocks])

    def retarget(self, source: Optional[Module] = None, target: Optional[Module] = None) -> "Morphism":
        return Morphism(source or self.source, target or self.target, self.blocks)

    def flat(self) -> list:
        return [x for blk in self.blocks for row in blk.rows for x in row]

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def rank(self) -> int:
        return sum(b.rank() for b in self.blocks)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    def inverse(self) -> "Morphism":
        return Morphism(self.target, self.source, [b.inverse() for b in self.blocks])

    def check(self) -> bool:
        """Intertwining identity on every non-idempotent basis element."""
        M, N = self.source, self.target
        alg = M.alg
        for b in alg.radical:
            i, j = alg.src[b], alg.tgt[b]
            if M.act(b) @ self.blocks[j] != self.blocks[i] @ N.act(b):
                return False
        return True


def combine(morphs: Sequence[Morphism], coeffs: Sequence, M: Module, N: Module) -> Morphism:
    F = M.field
    blocks = [_zeros(F, a, b) for a, b in zip(M.dims, N.dims)]
    for c, f in zip(coeffs, morphs):
        if c:
            blocks = [x + y.scale(c) for x, y in zip(blocks, f.blocks)]
    return Morphism(M, N, blocks)


# -- construction helpers -------------------------------------------------------


def zero_module(alg: Algebra) -> Module:
    return Module(alg, [0] * alg.nvert, label="0")


def projective(alg: Algebra, i: int) -> Module:
    """The indecomposable projective ``e_i A``; its basis at vertex k is ``e_i A e_k``."""
    key = ("proj", i)
    cache = _cache(alg)
    if key not in cache:
        F = alg.field
        basis = {k: alg.basis_between(i, k) for k in range(alg.nvert)}
        pos = {k: {b: t for t, b in enumerate(basis[k])} for k in basis}
        blocks = {}
        for a in alg.radical:
            k, l = alg.src[a], alg.tgt[a]
            if not basis[k] or not basis[l]:
                continue
            m = _zeros(F, len(basis[k]), len(basis[l]))
            for r, b in enumerate(basis[k]):
                for c, x in alg.products.get((b, a), ()):
                    m.rows[r][pos[l][c]] = F.reduce(m.rows[r][pos[l][c]] + x)
            blocks[a] = m
        P = Module(alg, [len(basis[k]) for k in range(alg.nvert)], blocks, label=f"P({alg.vertex_labels[i]})")
        P.proj_verts = (i,)
        cache[key] = P
    return cache[key]


def simple(alg: Algebra, i: int) -> Module:
    dims = [0] * alg.nvert
    dims[i] = 1
    return Module(alg, dims, label=f"S({alg.vertex_labels[i]})")


def injective(alg: Algebra, i: int) -> Module:
    """The indecomposable injective with socle at vertex ``i``: ``D(e_i A^op)``."""
    key = ("inj", i)
    cache = _cache(alg)
    if key not in cache:
        I = dual_module(projective(alg.opposite(), i))
        cache[key] = I.relabel(f"I({alg.vertex_labels[i]})")
    return cache[key]


@dataclass
class DirectSum:
    module: Module
    parts: list
    inclusions: list
    projections: list


def direct_sum(mods: Sequence[Module], alg: Optional[Algebra] = None, label: Optional[str] = None) -> DirectSum:
    if not mods and alg is None:
        raise InputError("direct sum of nothing needs the algebra")
    alg = alg or mods[0].alg
    F = alg.field
    nv = alg.nvert
    dims = [sum(M.dims[i] for M in mods) for i in range(nv)]
    blocks = {}
    for b in alg.radical:
        i, j = alg.src[b], alg.tgt[b]
        if not any(b in M.blocks for M in mods):
            continue
        m = _zeros(F, dims[i], dims[j])
        r0 = c0 = 0
        for M in mods:
            blk = M.blocks.get(b)
            if blk is not None:
                for r, row in enumerate(blk.rows):
                    m.rows[r0 + r][c0:c0 + len(row)] = row
            r0 += M.dims[i]
            c0 += M.dims[j]
        blocks[b] = m
    S = Module(alg, dims, blocks, label=label)
    verts = []
    for M in mods:
        pv = getattr(M, "proj_verts", None)
        if pv is None:
            verts = None
            break
        verts.extend(pv)
    if verts is not None:
        S.proj_verts = tuple(verts)
    incs, projs = [], []
    offs = [0] * nv
    for M in mods:
        ib, pb = [], []
        for i in range(nv):
            a = _zeros(F, M.dims[i], dims[i])
            for r in range(M.dims[i]):
                a.rows[r][offs[i] + r] = F.one
            ib.append(a)
            pb.append(a.T)
            offs[i] += M.dims[i]
        incs.append(Morphism(M, S, ib))
        projs.append(Morphism(S, M, pb))
    return DirectSum(S, list(mods), incs, projs)


def projective_sum(alg: Algebra, verts: Sequence[int]) -> Module:
    S = direct_sum([projective(alg, v) for v in verts], alg).module
    S.proj_verts = tuple(verts)
    return S


def matrix_morphism(srcs: DirectSum, tgts: DirectSum, comps) -> Morphism:
    """Morphism between direct sums from components ``comps[s][t]: srcs[s] -> tgts[t]`` (None = 0)."""
    total = Morphism.zero(srcs.module, tgts.module)
    for s, row in enumerate(comps):
        for t, f in enumerate(row):
            if f is not None:
                total = total + (tgts.inclusions[t] @ f @ srcs.projections[s])
    return total


def from_sum(src: DirectSum, target: Module, comps: Sequence[Morphism]) -> Morphism:
    """The map ``⊕ X_s -> target`` with the given components."""
    F = target.field
    blocks = []
    for i in range(target.alg.nvert):
        rows = []
        for f in comps:
            rows.extend(f.blocks[i].rows)
        blocks.append(Mat._raw(F, [list(r) for r in rows], target.dims[i]))
    return Morphism(src.module, target, blocks)


def to_sum(source: Module, tgt: DirectSum, comps: Sequence[Morphism]) -> Morphism:
    """The map ``source -> ⊕ Y_t`` with the given components."""
    F = source.field
    blocks = []
    for i in range(source.alg.nvert):
        rows = [[] for _ in range(source.dims[i])]
        for f in comps:
            for r, row in enumerate(f.blocks[i].rows):
                rows[r].extend(row)
        blocks.append(Mat._raw(F, rows, tgt.module.dims[i]))
    return Morphism(source, tgt.module, blocks)


# -- sub- and quotient modules ------------------------------------------------------


def _sub_from_basis(M: Module, bases: Sequence[list], cols: Sequence[list], label=None) -> tuple[Module, Morphism]:
    """Submodule with the given per-vertex bases; ``cols[j]`` are columns on which
    ``bases[j]`` restricts to the identity (so coordinates are read off there)."""
    alg, F = M.alg, M.field
    dims = [len(b) for b in bases]
    incl = [Mat._raw(F, [list(r) for r in bases[i]], M.dims[i]) for i in range(alg.nvert)]
    blocks = {}
    for b, A in M.blocks.items():
        i, j = alg.src[b], alg.tgt[b]
        if not dims[i] or not dims[j]:
            continue
        img = incl[i] @ A
        blocks[b] = img.select(cols=cols[j])
    K = Module(alg, dims, blocks, label=label)
    return K, Morphism(K, M, incl)


def submodule(M: Module, spans: Sequence[Sequence], label=None) -> tuple[Module, Morphism]:
    """Submodule spanned (per vertex) by the given vectors, which must be closed under the action."""
    bases, cols = [], []
    for j in range(M.alg.nvert):
        rows, piv = row_echelon(spans[j], M.dims[j], M.field)
        bases.append(rows)
        cols.append(piv)
    return _sub_from_basis(M, bases, cols, label)


def quotient(M: Module, spans: Sequence[Sequence], label=None) -> tuple[Module, Morphism]:
    """``M / K`` for the submodule ``K`` spanned by ``spans``; returns the projection."""
    alg, F = M.alg, M.field
    proj = []
    comps = []
    for j in range(alg.nvert):
        d = M.dims[j]
        rows, piv = row_echelon(spans[j], d, F)
        pset = set(piv)
        comp = [c for c in range(d) if c not in pset]
        comps.append(comp)
        m = _zeros(F, d, len(comp))
        for r in range(d):
            e = [F.zero] * d
            e[r] = F.one
            red = reduce_vector(e, rows, piv, F)
            m.rows[r] = [red[c] for c in comp]
        proj.append(m)
    dims = [len(c) for c in comps]
    blocks = {}
    for b, A in M.blocks.items():
        i, j = alg.src[b], alg.tgt[b]
        if not dims[i] or not dims[j]:
            continue
        blocks[b] = A.select(rows=comps[i]) @ proj[j]
    Q = Module(alg, dims, blocks, label=label)
    return Q, Morphism(M, Q, proj)


def kernel(f: Morphism, label=None) -> tuple[Module, Morphism]:
    M = f.source
    bases, cols = [], []
    for i, blk in enumerate(f.blocks):
        vecs, free = kernel_rows(blk.T.rows, M.dims[i], M.field)
        bases.append(vecs)
        cols.append(free)
    return _sub_from_basis(M, bases, cols, label)


def image(f: Morphism, label=None) -> tuple[Module, Morphism]:
    return submodule(f.target, [blk.rows for blk in f.blocks], label)


def cokernel(f: Morphism, label=None) -> tuple[Module, Morphism]:
    return quotient(f.target, [blk.rows for blk in f.blocks], label)


def radical_submodule(M: Module) -> tuple[Module, Morphism]:
    return _sub_from_basis(M, [M._rad(j)[0] for j in range(M.alg.nvert)],
                           [M._rad(j)[1] for j in range(M.alg.nvert)])


def top(M: Module) -> tuple[Module, Morphism]:
    return quotient(M, [M._rad(j)[0] for j in range(M.alg.nvert)])


def socle_dims(M: Module) -> tuple[int, ...]:
    alg, F = M.alg, M.field
    out = []
    for j in range(alg.nvert):
        cols = []
        for a in alg.arrows:
            if alg.src[a] == j and a in M.blocks:
                cols.append(M.blocks[a])
        if not cols:
            out.append(M.dims[j])
            continue
        stacked = cols[0]
        for c in cols[1:]:
            stacked = stacked.hstack(c)
        out.append(M.dims[j] - stacked.rank())
    return tuple(out)


def loewy_length(M: Module) -> int:
    n = 0
    while not M.is_zero():
        M, _ = radical_submodule(M)
        n += 1
    return n


# -- projective covers and syzygies -----------------------------------------------------


def projective_hom(P: Module, N: Module, images: Sequence[list]) -> Morphism:
    """The map from a sum of indecomposable projectives sending generator ``t`` to ``images[t]``."""
    alg, F = P.alg, P.field
    verts = P.proj_verts
    blocks = []
    for k in range(alg.nvert):
        rows = []
        for t, v in enumerate(verts):
            img = Mat._raw(F, [list(images[t])], N.dims[v])
            for b in alg.basis_between(v, k):
                rows.append((img @ N.act(b)).rows[0])
        blocks.append(Mat._raw(F, rows, N.dims[k]))
    return Morphism(P, N, blocks)


def generator_positions(P: Module) -> list[tuple[int, int]]:
    """(vertex, row index in that vertex block) of each generator of a projective sum."""
    alg = P.alg
    offs = [0] * alg.nvert
    out = []
    for v in P.proj_verts:
        for k in range(alg.nvert):
            for b in alg.basis_between(v, k):
                if b == alg.idempotents[v]:
                    out.append((v, offs[k]))
                offs[k] += 1
    return out


def projective_cover(M: Module) -> tuple[Module, Morphism]:
    """Minimal projective cover; summands ordered by vertex, then by top coordinate."""
    if "cover" in M._memo:
        return M._memo["cover"]
    alg, F = M.alg, M.field
    verts, images = [], []
    for j in range(alg.nvert):
        for c in M._rad(j)[2]:
            v = [F.zero] * M.dims[j]
            v[c] = F.one
            verts.append(j)
            images.append(v)
    P = projective_sum(alg, verts)
    pi = projective_hom(P, M, images)
    M._memo["cover"] = (P, pi)
    return P, pi


def is_projective(M: Module) -> bool:
    P, _ = projective_cover(M)
    return P.dim == M.dim


def is_injective(M: Module) -> bool:
    return is_projective(dual_module(M))


@dataclass
class ExactSequence:
    """A chain ``terms[0] -> terms[1] -> ...`` with ``maps[k]: terms[k] -> terms[k+1]``."""

    terms: list
    maps: list

    def homology_dims(self) -> list[int]:
        """Homology at each interior term."""
        out = []
        for k in range(1, len(self.terms) - 1):
            rin = self.maps[k - 1].rank()
            rout = self.maps[k].rank()
            out.append(self.terms[k].dim - rout - rin)
        return out

    def is_complex(self) -> bool:
        return all((self.maps[k + 1] @ self.maps[k]).is_zero() for k in range(len(self.maps) - 1))

    def is_exact(self, left_end_zero: bool = True, right_end_zero: bool = True) -> bool:
        if not self.is_complex() or any(self.homology_dims()):
            return False
        if left_end_zero and self.maps and not self.maps[0].is_injective():
            return False
        if right_end_zero and self.maps and not self.maps[-1].is_surjective():
            return False
        return True


FiniteResolution = ExactSequence


def syzygy(M: Module, k: int = 1, witness: bool = False):
    """``k``-fold syzygy (``k < 0``: cosyzygy) along minimal covers/envelopes.

    With ``witness=True`` also returns the exact sequence
    ``0 -> Ω^k M -> P_{k-1} -> ... -> P_0 -> M -> 0`` (dually for ``k < 0``).
    """
    if k == 0:
        return (M, ExactSequence([M], [])) if witness else M
    if k < 0:
        D = dual_module(M)
        out = syzygy(D, -k, witness)
        if not witness:
            return dual_module(out)
        Om, seq = out
        terms = [dual_module(t) for t in reversed(seq.terms)]
        terms[0] = M
        maps = []
        for idx, f in enumerate(reversed(seq.maps)):
            g = dual_morphism(f)
            maps.append(Morphism(terms[idx], terms[idx + 1], g.blocks))
        return terms[-1], ExactSequence(terms, maps)
    cur = M
    ps, incs, pis = [], [], []
    for _ in range(k):
        P, pi = projective_cover(cur)
        K, inc = kernel(pi)
        ps.append(P)
        pis.append(pi)
        incs.append(inc)
        cur = K
    if not witness:
        return cur
    terms = [cur] + list(reversed(ps)) + [M]
    maps = [incs[-1]]
    for t in range(k - 1, 0, -1):
        maps.append(incs[t - 1] @ pis[t])
    maps.append(pis[0])
    return cur, ExactSequence(terms, maps)


def dual_module(M: Module) -> Module:
    """``D M = Hom_k(M, k)`` as a right module over the opposite algebra."""
    if "dual" in M._memo:
        return M._memo["dual"]
    op = M.alg.opposite()
    D = Module(op, M.dims, {b: A.T for b, A in M.blocks.items()},
               label=f"D{M.label}" if M.label else None)
    D._memo["dual"] = M
    M._memo["dual"] = D
    return D


def dual_morphism(f: Morphism) -> Morphism:
    return Morphism(dual_module(f.target), dual_module(f.source), [b.T for b in f.blocks])


def injective_envelope(M: Module) -> tuple[Module, Morphism]:
    P, pi = projective_cover(dual_module(M))
    I = dual_module(P)
    return I, Morphism(M, I, [b.T for b in pi.blocks])


def cosyzygy(M: Module) -> Module:
    I, iota = injective_envelope(M)
    return cokernel(iota)[0]


# -- Hom spaces ---------------------------------------------------------------------------


class HomSpace:
    """Basis of Hom(M, N); ``coords`` reads coordinates off the free columns."""

    def __init__(self, M: Module, N: Module, basis: list, free: list):
        self.source = M
        self.target = N
        self.basis = basis
        self.free = free

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, k):
        return self.basis[k]

    def coords(self, f: Morphism) -> list:
        v = f.flat()
        return [v[c] for c in self.free]

    def element(self, coeffs: Sequence) -> Morphism:
        return combine(self.basis, coeffs, self.source, self.target)


def _unflatten(v: Sequence, M: Module, N: Module) -> Morphism:
    F = M.field
    blocks = []
    pos = 0
    for dm, dn in zip(M.dims, N.dims):
        rows = []
        for _ in range(dm):
            rows.append(list(v[pos:pos + dn]))
            pos += dn
        blocks.append(Mat._raw(F, rows, dn))
    return Morphism(M, N, blocks)


def hom_space(M: Module, N: Module) -> HomSpace:
    if M.alg is not N.alg:
        raise InputError("hom between modules over different algebras")
    alg, F = M.alg, M.field
    offs, total = [], 0
    for dm, dn in zip(M.dims, N.dims):
        offs.append(total)
        total += dm * dn
    system = SparseSystem(total, F)
    for a in alg.arrows:
        i, j = alg.src[a], alg.tgt[a]
        dmi, dni, dnj = M.dims[i], N.dims[i], N.dims[j]
        if not dmi or not dnj:
            continue
        Am = M.blocks.get(a)
        An = N.blocks.get(a)
        if Am is None and An is None:
            continue
        for r in range(dmi):
            arow = Am.rows[r] if Am is not None else ()
            for c in range(dnj):
                row: dict = {}
                for s, x in enumerate(arow):
                    if x:
                        key = offs[j] + s * dnj + c
                        row[key] = row.get(key, 0) + x
                if An is not None:
                    for t in range(dni):
                        y = An.rows[t][c]
                        if y:
                            key = offs[i] + r * dni + t
                            row[key] = row.get(key, 0) - y
                if row:
                    system.add(row)
    vecs, free = system.kernel()
    return HomSpace(M, N, [_unflatten(v, M, N) for v in vecs], free)


def hom_basis(M: Module, N: Module) -> list[Morphism]:
    return hom_space(M, N).basis


def factor_right(h: Morphism, f: Morphism, space: Optional[HomSpace] = None) -> Optional[Morphism]:
    """Some ``s`` with ``f ∘ s = h`` (``h: X -> M``, ``f: Y -> M``), or None."""
    space = space or hom_space(h.source, f.source)
    if not space.dim:
        return Morphism.zero(h.source, f.source) if h.is_zero() else None
    F = h.field
    cols = [(f @ s).flat() for s in space.basis]
    A = Mat._raw(F, [list(r) for r in zip(*cols)], len(cols))
    B = Mat._raw(F, [[x] for x in h.flat()], 1)
    if A.nrows == 0:
        return space.element([F.zero] * space.dim)
    X = solve(A, B)
    return None if X is None else space.element([r[0] for r in X.rows])


def factor_left(h: Morphism, g: Morphism, space: Optional[HomSpace] = None) -> Optional[Morphism]:
    """Some ``s`` with ``s ∘ g = h`` (``g: M -> Y``, ``h: M -> X``), or None."""
    space = space or hom_space(g.target, h.target)
    if not space.dim:
        return Morphism.zero(g.target, h.target) if h.is_zero() else None
    F = h.field
    cols = [(s @ g).flat() for s in space.basis]
    A = Mat._raw(F, [list(r) for r in zip(*cols)], len(cols))
    B = Mat._raw(F, [[x] for x in h.flat()], 1)
    if A.nrows == 0:
        return space.element([F.zero] * space.dim)
    X = solve(A, B)
    return None if X is None else space.element([r[0] for r in X.rows])


def span_rank(morphs: Sequence[Morphism]) -> int:
    if not morphs:
        return 0
    F = morphs[0].field
    n = len(morphs[0].flat())
    rows, _ = row_echelon([m.flat() for m in morphs], n, F)
    return len(rows)


def factoring_dim(M: Module, N: Module, through: Sequence[Module]) -> int:
    """Dimension of the subspace of Hom(M, N) of maps factoring through ``add(through)``."""
    prods = []
    for W in through:
        for a in hom_basis(M, W):
            for b in hom_basis(W, N):
                prods.append(b @ a)
    return span_rank(prods)


def stable_hom_dim(M: Module, N: Module, modulo: str = "projective") -> int:
    """dim of Hom modulo maps factoring through projectives ("projective") or injectives."""
    H = hom_space(M, N)
    if modulo == "projective":
        P, pi = projective_cover(N)
        prods = [pi @ a for a in hom_basis(M, P)]
    elif modulo == "injective":
        I, iota = injective_envelope(M)
        prods = [b @ iota for b in hom_basis(I, N)]
    else:
        raise InputError(f"unknown stable quotient {modulo!r}")
    return H.dim - span_rank(prods)


def ext_dim(i: int, M: Module, N: Module) -> int:
    """dim Ext^i(M, N) as the cokernel of Hom(P_{i-1}, N) -> Hom(Ω^i M, N)."""
    if i < 0:
        raise InputError("ext degree must be >= 0")
    if i == 0:
        return hom_space(M, N).dim
    K = syzygy(M, i - 1)
    P, pi = projective_cover(K)
    Om, inc = kernel(pi)
    H = hom_space(Om, N)
    if not H.dim:
        return 0
    F = M.field
    restricted = []
    for t, v in enumerate(P.proj_verts):
        for c in range(N.dims[v]):
            imgs = [[F.zero] * N.dims[w] for w in P.proj_verts]
            imgs[t][c] = F.one
            phi = projective_hom(P, N, imgs)
            restricted.append(H.coords(phi @ inc))
    rank = len(row_echelon(restricted, H.dim, F)[0]) if restricted else 0
    return H.dim - rank


# -- homological dimensions, isomorphism ----------------------------------------------------


def _top_block(f: Morphism, j: int) -> Mat:
    M, N = f.source, f.target
    F = M.field
    rows_n, piv_n, top_n = N._rad(j)
    out = []
    for c in M._rad(j)[2]:
        v = reduce_vector(f.blocks[j].rows[c], rows_n, piv_n, F)
        out.append([v[t] for t in top_n])
    return Mat._raw(F, out, len(top_n))


def _top_matrix(f: Morphism) -> Mat:
    """Block-diagonal matrix of the induced map on tops."""
    F = f.field
    blocks = [_top_block(f, j) for j in range(f.source.alg.nvert)]
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    out = _zeros(F, n, m)
    r0 = c0 = 0
    for b in blocks:
        for r, row in enumerate(b.rows):
            out.rows[r0 + r][c0:c0 + b.ncols] = row
        r0 += b.nrows
        c0 += b.ncols
    return out


def iso_test(M: Module, N: Module, witness: bool = False):
    """Decide ``M ≅ N`` exactly.

    A map is an isomorphism iff it induces an isomorphism on tops (Nakayama's
    lemma, once the dimension vectors agree), so the question is whether some
    combination of the top blocks of a Hom basis is invertible.
    """
    if M.alg is not N.alg:
        raise InputError("iso_test: modules over different algebras")
    no = (False, None) if witness else False
    if M.dims != N.dims or M.top_dims() != N.top_dims():
        return no
    if M.dim == 0:
        return (True, Morphism.zero(M, N)) if witness else True
    H = hom_space(M, N)
    if not H.dim:
        return no
    tops = [_top_matrix(f) for f in H.basis]
    if not generic_invertibility(tops):
        return no
    if not witness:
        return True
    for seed in range(64):
        coeffs = find_invertible_combination(tops, seed=seed, tries=8)
        if coeffs is None:
            continue
        f = H.element(coeffs)
        if f.is_iso():
            return True, f
    raise RuntimeError("iso_test: invertible combination exists but no witness found by sampling")


@dataclass
class DimReport:
    """pd (or id) with evidence: ``value`` is an int, "infinite" or "unknown"."""

    value: object
    syzygy_dims: list = dc_field(default_factory=list)
    period: Optional[tuple] = None
    witness: Optional[Morphism] = None
    cutoff: int = 0

    @property
    def finite(self) -> bool:
        return isinstance(self.value, int)

    def to_json(self):
        out = {"value": self.value, "syzygy_dims": self.syzygy_dims, "cutoff": self.cutoff}
        if self.period:
            out["period"] = list(self.period)
        return out


def projective_dimension(M: Module, cutoff: int = 200) -> DimReport:
    """pd via minimal syzygies; infinite only with an isomorphism Ω^i ≅ Ω^j (i < j) as witness."""
    if cutoff < 1:
        raise InputError("cutoff must be >= 1")
    seen: list[Module] = []
    cur = M
    dims = []
    for k in range(cutoff + 1):
        dims.append(cur.dim)
        if cur.is_zero():
            return DimReport(max(k - 1, 0) if k else 0, dims, cutoff=cutoff)
        for i, prev in enumerate(seen):
            if prev.dims == cur.dims:
                ok, w = iso_test(prev, cur, witness=True)
                if ok:
                    return DimReport("infinite", dims, (i, k), w, cutoff)
        seen.append(cur)
        if k == cutoff:
            break
        cur = syzygy(cur, 1)
    return DimReport("unknown", dims, cutoff=cutoff)


def injective_dimension(M: Module, cutoff: int = 200) -> DimReport:
    return projective_dimension(dual_module(M), cutoff)


def homological_dims(M: Module, cutoff: int = 200) -> dict:
    pd = projective_dimension(M, cutoff)
    idim = injective_dimension(M, cutoff)
    return {"pd": pd.value, "id": idim.value, "evidence": {"pd": pd, "id": idim}}


def global_dimension(alg: Algebra, cutoff: int = 200) -> DimReport:
    """max pd of the simples; "infinite" carries the witness of the offending simple."""
    best: DimReport = DimReport(0, cutoff=cutoff)
    unknown = None
    for i in range(alg.nvert):
        r = projective_dimension(simple(alg, i), cutoff)
        if r.value == "infinite":
            return r
        if r.value == "unknown":
            unknown = r
        elif r.value > best.value:
            best = r
    return unknown or best


# -- local endomorphism rings, multiplicities, decompositions -------------------------------


def _trace(f: Morphism):
    F = f.field
    t = F.zero
    for b in f.blocks:
        for i in range(b.nrows):
            t += b.rows[i][i]
    return F.reduce(t)


def _power(f: Morphism, q: int) -> Morphism:
    result = Morphism.identity(f.source)
    base = f
    while q:
        if q & 1:
            result = base @ result
        base = base @ base
        q >>= 1
    return result


def residue(f: Morphism):
    """The scalar ``c`` with ``f - c·1`` nilpotent, assuming End is local with residue field k.

    Returns None if ``f`` is not of that form (detected in positive characteristic,
    or later by :func:`is_indecomposable`).
    """
    M = f.source
    F = M.field
    n = M.dim
    if not F.p:
        return _trace(f) / n
    q = F.p
    while q < n:
        q *= F.p
    g = _power(f, q)
    c = g.blocks[next(i for i, d in enumerate(M.dims) if d)].rows[0][0]
    if not _eq(g, Morphism.identity(M).scale(c)):
        return None
    return c


def _eq(f: Morphism, g: Morphism) -> bool:
    return all(a == b for a, b in zip(f.blocks, g.blocks))


@dataclass
class EndData:
    """End(X) as [identity] + a basis of its radical, for a local X."""

    space: HomSpace
    radical: list


def local_end(X: Module) -> Optional[EndData]:
    """End(X) data if End(X) is local with residue field k; otherwise None."""
    if "end" in X._memo:
        return X._memo["end"]
    res = None
    if X.dim:
        E = hom_space(X, X)
        F = X.field
        chis = []
        for f in E.basis:
            c = residue(f)
            if c is None:
                break
            chis.append(c)
        else:
            vecs, _ = kernel_rows([chis], E.dim, F)
            rad = [E.element(v) for v in vecs]
            if all(_residue_zero(b @ a) for a in rad for b in rad) and _nilpotent_span(rad, E):
                res = EndData(E, rad)
    X._memo["end"] = res
    return res


def _residue_zero(f: Morphism) -> bool:
    c = residue(f)
    return c is not None and not c


def _nilpotent_span(rad: list, E: HomSpace) -> bool:
    F = E.source.field
    cur = rad
    for _ in range(E.source.dim + 1):
        if not cur:
            return True
        prods = [a @ b for a in cur for b in rad]
        rows, _ = row_echelon([E.coords(p) for p in prods], E.dim, F)
        cur = [E.element(r) for r in rows]
    return not cur


def is_indecomposable(X: Module) -> bool:
    return local_end(X) is not None


def _pairing(X: Module, N: Module):
    """Hom(X,N), Hom(N,X) and the matrix of residues of v∘u."""
    U = hom_space(X, N)
    V = hom_space(N, X)
    F = X.field
    P = [[residue(v @ u) for v in V.basis] for u in U.basis]
    if any(x is None for row in P for x in row):
        raise InputError("multiplicity: endomorphism ring is not local with residue field k")
    return U, V, Mat._raw(F, P, V.dim)


def multiplicity(X: Module, N: Module) -> int:
    """Number of summands isomorphic to the indecomposable ``X`` in ``N``."""
    if local_end(X) is None:
        raise InputError("multiplicity: first argument must be indecomposable with End/rad = k")
    U, V, P = _pairing(X, N)
    return P.rank() if U.dim and V.dim else 0


@dataclass
class Decomposition:
    """``parts[s] = (index, u)`` with ``u: X_index -> N``; ``complete`` iff ⊕u is an isomorphism."""

    parts: list
    complete: bool
    iso: Optional[Morphism] = None
    source: Optional[DirectSum] = None

    def indices(self) -> list[int]:
        return [i for i, _ in self.parts]


def decompose(N: Module, candidates: Sequence[Module]) -> Decomposition:
    """Split off summands of ``N`` from a list of pairwise non-isomorphic indecomposables."""
    parts = []
    F = N.field
    for idx, X in enumerate(candidates):
        if X.is_zero() or N.is_zero():
            continue
        if local_end(X) is None:
            raise InputError(f"decompose: candidate {X!r} is not indecomposable with End/rad = k")
        U, V, P = _pairing(X, N)
        if not U.dim or not V.dim:
            continue
        _, piv = row_echelon(P.T.rows, P.nrows, F)
        for r in piv:
            parts.append((idx, U.basis[r]))
    total = sum(candidates[i].dim for i, _ in parts)
    if total != N.dim:
        return Decomposition(parts, False)
    ds = direct_sum([candidates[i] for i, _ in parts], N.alg)
    iso = from_sum(ds, N, [u for _, u in parts])
    if not iso.is_iso():
        raise RuntimeError("decompose: summand maps do not assemble to an isomorphism")
    return Decomposition(parts, True, iso, ds)


def in_add(N: Module, members: Sequence[Module]) -> bool:
    return N.is_zero() or decompose(N, members).complete


# -- approximations -------------------------------------------------------------------------


@dataclass
class Approximation:
    """``map: ⊕ X_{indices[s]} -> M`` (right) or ``M -> ⊕ X_{indices[s]}`` (left)."""

    indices: list
    map: Morphism
    components: list
    sum: DirectSum
    side: str


def _radical_maps(Xs: Sequence[Module], i: int, j: int, spaces: dict) -> list:
    """A spanning set of rad(X_i, X_j) for pairwise non-isomorphic indecomposables."""
    if i == j:
        e = local_end(Xs[i])
        if e is None:
            raise InputError(f"approximation: {Xs[i]!r} is not indecomposable")
        return e.radical
    return _hom(Xs[i], Xs[j], spaces).basis


def _hom(M, N, spaces: dict) -> HomSpace:
    key = (id(M), id(N))
    if key not in spaces:
        spaces[key] = (hom_space(M, N), M, N)
    return spaces[key][0]


def right_approximation(Xs: Sequence[Module], M: Module, minimal: bool = True,
                        spaces: Optional[dict] = None) -> Approximation:
    """Right add(Xs)-approximation of ``M``.

    Non-minimal: one summand per Hom basis element.  Minimal: for each ``X_i`` keep
    a basis of Hom(X_i, M) modulo the maps that factor through radical maps
    ``X_i -> X_j``.
    """
    spaces = {} if spaces is None else spaces
    F = M.field
    chosen = []
    for i, X in enumerate(Xs):
        H = _hom(X, M, spaces)
        if not H.dim:
            continue
        if not minimal:
            chosen.extend((i, h) for h in H.basis)
            continue
        vecs = []
        for j, Y in enumerate(Xs):
            rad = _radical_maps(Xs, i, j, spaces)
            if not rad:
                continue
            for h in _hom(Y, M, spaces).basis:
                for r in rad:
                    vecs.append(H.coords(h @ r))
        rows, piv = row_echelon(vecs, H.dim, F)
        pset = set(piv)
        chosen.extend((i, H.basis[t]) for t in range(H.dim) if t not in pset)
    ds = direct_sum([Xs[i] for i, _ in chosen], M.alg)
    f = from_sum(ds, M, [h for _, h in chosen])
    return Approximation([i for i, _ in chosen], f, [h for _, h in chosen], ds, "right")


def left_approximation(Xs: Sequence[Module], M: Module, minimal: bool = True,
                       spaces: Optional[dict] = None) -> Approximation:
    spaces = {} if spaces is None else spaces
    F = M.field
    chosen = []
    for i, X in enumerate(Xs):
        H = _hom(M, X, spaces)
        if not H.dim:
            continue
        if not minimal:
            chosen.extend((i, h) for h in H.basis)
            continue
        vecs = []
        for j, Y in enumerate(Xs):
            rad = _radical_maps(Xs, j, i, spaces)
            if not rad:
                continue
            for h in _hom(M, Y, spaces).basis:
                for r in rad:
                    vecs.append(H.coords(r @ h))
        rows, piv = row_echelon(vecs, H.dim, F)
        pset = set(piv)
        chosen.extend((i, H.basis[t]) for t in range(H.dim) if t not in pset)
    ds = direct_sum([Xs[i] for i, _ in chosen], M.alg)
    f = to_sum(M, ds, [h for _, h in chosen])
    return Approximation([i for i, _ in chosen], f, [h for _, h in chosen], ds, "left")


def is_right_approximation(f: Morphism, Xs: Sequence[Module]) -> bool:
    for X in Xs:
        for h in hom_basis(X, f.target):
            if factor_right(h, f) is None:
                return False
    return True


def is_left_approximation(f: Morphism, Xs: Sequence[Module]) -> bool:
    for X in Xs:
        for h in hom_basis(f.source, X):
            if factor_left(h, f) is None:
                return False
    return True


# -- transpose and the Auslander-Reiten translate ----------------------------------------------


def element_matrix(d: Morphism) -> list:
    """For a map between projective sums, ``lam[t][s]``: the component of the image of
    generator ``s`` of the source in summand ``t`` of the target, as a sparse element."""
    P1, P0 = d.source, d.target
    alg = P1.alg
    # coordinates of P0 at vertex k: concatenated e_v A e_k over summands
    layout = []
    for k in range(alg.nvert):
        lay = []
        for t, v in enumerate(P0.proj_verts):
            for b in alg.basis_between(v, k):
                lay.append((t, b))
        layout.append(lay)
    lam = [[{} for _ in P1.proj_verts] for _ in P0.proj_verts]
    for s, (k, row) in enumerate(generator_positions(P1)):
        vec = d.blocks[k].rows[row]
        for pos, x in enumerate(vec):
            if x:
                t, b = layout[k][pos]
                lam[t][s][b] = x
    return lam


def map_of_projectives(alg: Algebra, src_verts: Sequence[int], tgt_verts: Sequence[int], elems) -> Morphism:
    """Map ``⊕ e_{src_t} A -> ⊕ e_{tgt_s} A`` sending generator ``t`` to ``Σ_s elems[t][s]``,
    where ``elems[t][s] ∈ e_{tgt_s} A e_{src_t}`` is a sparse dict."""
    P = projective_sum(alg, src_verts)
    Q = projective_sum(alg, tgt_verts)
    F = alg.field
    images = []
    # generator t sits at vertex src_t; its image in Q at vertex src_t
    for t, v in enumerate(src_verts):
        vec = []
        for s, w in enumerate(tgt_verts):
            el = elems[t][s] if elems[t][s] else {}
            for b in alg.basis_between(w, v):
                vec.append(F(el.get(b, 0)))
        images.append(vec)
    return projective_hom(P, Q, images)


def transpose(M: Module) -> Module:
    """Tr M over the opposite algebra, from the minimal projective presentation."""
    alg = M.alg
    P0, pi = projective_cover(M)
    K, inc = kernel(pi)
    P1, pi1 = projective_cover(K)
    d = inc @ pi1
    lam = element_matrix(d)  # lam[t][s] ∈ e_{P0_t} A e_{P1_s}
    # dual map ⊕ e_{P0_t} A^op -> ⊕ e_{P1_s} A^op: generator t ↦ Σ_s lam[t][s]
    op = alg.opposite()
    f = map_of_projectives(op, P0.proj_verts, P1.proj_verts, lam)
    return cokernel(f)[0]


def ar_translate(M: Module, direction: str = "forward") -> Module:
    """τ M = D Tr M (forward) or τ⁻ M = Tr D M (inverse)."""
    if direction == "forward":
        return dual_module(transpose(M))
    if direction == "inverse":
        return transpose(dual_module(M))
    raise InputError(f"unknown direction {direction!r}")
