"""Approximation machinery: subcategories given by finite member lists, right/left
approximations, relative syzygies, finite resolutions by a subcategory, the three
approximation conditions on a chain ``A ⊇ X ⊇ ω``, cotilting checks, perpendicular
categories, the right adjoint of ``X/[ω] -> A/[ω]``, the two resolution
constructions for functors vanishing on a subcategory, and the Gorenstein
mapping-cone approximation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .algebra import Algebra
from .linalg import InputError, Mat, row_echelon, reduce_vector
from .lincat import (FunctorModule, LinCat, ResolutionTrace, _unit, hom_functor, hom_functor_map,
                     minimal_resolution, quotient_by)
from .modules import (Approximation, DimReport, ExactSequence, Module, Morphism, cokernel, decompose,
                      direct_sum, element_matrix, ext_dim, factor_left, factor_right, from_sum,
                      hom_space, image, in_add, injective_dimension, is_right_approximation, iso_test,
                      injective, kernel, left_approximation, matrix_morphism, projective, projective_cover,
                      projective_dimension, right_approximation, syzygy, to_sum)


class NotGorensteinError(InputError):
    """The algebra could not be certified Iwanaga-Gorenstein."""

    def __init__(self, message: str, report: dict):
        super().__init__(message)
        self.report = report


# -- subcategories ----------------------------------------------------------------------


@dataclass
class SubcatSpec:
    """add of finitely many pairwise non-isomorphic indecomposables.

    ``complete`` marks a member list that exhausts the indecomposables of the
    module category (so every module lies in add of it).
    """

    members: list
    name: str = ""
    complete: bool = False

    @property
    def labels(self) -> list:
        return [M.label for M in self.members]

    def __len__(self):
        return len(self.members)

    def find(self, M: Module) -> Optional[int]:
        for i, X in enumerate(self.members):
            if iso_test(X, M):
                return i
        return None

    def contains(self, M: Module) -> bool:
        if self.complete:
            return True
        return in_add(M, self.members)

    def sub(self, labels: Sequence[str], name: str = "") -> "SubcatSpec":
        return subcat(self.members, labels, name)


def subcat(universe: Sequence[Module], labels: Sequence[str], name: str = "") -> SubcatSpec:
    by = {M.label: M for M in universe}
    out = []
    for lab in labels:
        if lab not in by:
            raise InputError(f"unknown module label {lab!r}")
        out.append(by[lab])
    return SubcatSpec(out, name or ",".join(labels))


def projectives_of(alg: Algebra, universe: Sequence[Module]) -> SubcatSpec:
    ps = [projective(alg, i) for i in range(alg.nvert)]
    mem = [M for M in universe if any(iso_test(M, P) for P in ps)]
    return SubcatSpec(mem, "proj")


def injectives_of(alg: Algebra, universe: Sequence[Module]) -> SubcatSpec:
    ins = [injective(alg, i) for i in range(alg.nvert)]
    mem = [M for M in universe if any(iso_test(M, I) for I in ins)]
    return SubcatSpec(mem, "inj")


# -- approximations and relative syzygies ----------------------------------------------------------


def right_approx(X: SubcatSpec, M: Module, minimal: bool = True) -> Approximation:
    """Right add(X)-approximation; the factorization property is verified before returning."""
    ap = right_approximation(X.members, M, minimal)
    if not is_right_approximation(ap.map, X.members):
        raise RuntimeError("right_approx: constructed map is not an approximation")
    return ap


def relative_syzygy(B: SubcatSpec, M: Module, k: int = 1) -> Module:
    """``Ω_B^k(M)``: iterated kernels of minimal right B-approximations."""
    if k < 1:
        raise InputError("relative_syzygy: k >= 1 required")
    cur = M
    for _ in range(k):
        ap = right_approximation(B.members, cur)
        cur, _ = kernel(ap.map)
    return cur


@dataclass
class OmegaHatResolution:
    """``0 -> W_n -> ... -> W_0 -> M -> 0`` with every ``W_k`` in add(ω)."""

    target: Module
    steps: list  # Approximation per step
    sequence: ExactSequence

    @property
    def length(self) -> int:
        return max(len(self.steps) - 1, 0)

    def summands(self) -> list:
        return [[self_lab for self_lab in ap.indices] for ap in self.steps]


def omega_hat_resolve(omega: SubcatSpec, M: Module, bound: int) -> Optional[OmegaHatResolution]:
    """Finite resolution of ``M`` by add(ω) of length at most ``bound``, or None."""
    if bound < 0:
        raise InputError("omega_hat_resolve: bound >= 0 required")
    if M.is_zero():
        return OmegaHatResolution(M, [], ExactSequence([M], []))
    steps, incs = [], []
    cur = M
    for _ in range(bound + 1):
        ap = right_approximation(omega.members, cur)
        if not ap.map.is_surjective():
            return None
        K, inc = kernel(ap.map)
        steps.append(ap)
        incs.append(inc)
        if K.is_zero():
            break
        cur = K
    else:
        return None
    n = len(steps)
    terms = [steps[k].sum.module for k in range(n - 1, -1, -1)] + [M]
    maps = []
    for k in range(n - 1, 0, -1):
        maps.append(incs[k - 1] @ steps[k].map)
    maps.append(steps[0].map)
    seq = ExactSequence(terms, maps)
    if not seq.is_exact():
        raise RuntimeError("omega_hat_resolve: resolution is not exact")
    return OmegaHatResolution(M, steps, seq)


@dataclass
class ApproxTriple:
    """``0 -> Y -> X_M -> M`` with ``X_M -> M`` a right approximation."""

    target: Module
    approx: Approximation
    kernel: Module
    inclusion: Morphism
    resolution: Optional[OmegaHatResolution]
    surjective: bool

    @property
    def ok(self) -> bool:
        return self.resolution is not None

    def to_json(self) -> dict:
        out = {"target": self.target.label, "X": [self.approx.sum.parts[i].label for i in range(len(self.approx.indices))],
               "kernel_dim": self.kernel.dim, "surjective": self.surjective,
               "omega_hat": self.resolution is not None}
        if self.resolution is not None:
            out["omega_hat_length"] = self.resolution.length
        return out


def ab3_triple(X: SubcatSpec, omega: SubcatSpec, M: Module, bound: int) -> ApproxTriple:
    ap = right_approx(X, M)
    K, inc = kernel(ap.map)
    res = omega_hat_resolve(omega, K, bound)
    return ApproxTriple(M, ap, K, inc, res, ap.map.is_surjective())


# -- the three conditions --------------------------------------------------------------------


def _max_id(mods: Sequence[Module], cutoff: int):
    vals = [injective_dimension(I, cutoff) for I in mods]
    if all(v.finite for v in vals):
        return max([v.value for v in vals] + [0]), vals
    return None, vals


@dataclass
class ABReport:
    ab1: dict
    ab2: dict
    ab3: dict
    params: dict

    @property
    def ok(self) -> bool:
        return (self.ab1["status"] in ("vacuous", "certified on family")
                and self.ab2["status"] == "holds" and self.ab3["status"] == "holds")

    def to_json(self) -> dict:
        ab3 = {k: v for k, v in self.ab3.items() if k != "triples"}
        ab3["triples"] = [t.to_json() for t in self.ab3["triples"]]
        return {"ab1": self.ab1, "ab2": self.ab2, "ab3": ab3, "params": self.params, "ok": self.ok}


def _check_chain(A: SubcatSpec, X: SubcatSpec, omega: SubcatSpec):
    for w in omega.members:
        if not X.contains(w):
            raise InputError(f"check_conditions: {w.label} is in omega but not in X")
    for x in X.members:
        if not A.contains(x):
            raise InputError(f"check_conditions: {x.label} is in X but not in A")


def check_conditions(A: SubcatSpec, X: SubcatSpec, omega: SubcatSpec, ext_bound: Optional[int] = None,
                     hat_bound: Optional[int] = None, ab1_family: bool = True, cutoff: int = 200) -> ABReport:
    """Check the kernel-closure, Ext-orthogonality and approximation conditions on ``A ⊇ X ⊇ ω``.

    The kernel-closure condition quantifies over all ω-epimorphisms; it is
    certified on the maps ``(α β): M ⊕ W_L -> L`` built from every Hom basis element
    ``α: M -> L`` of A, which is the family the weak-kernel construction uses.
    """
    _check_chain(A, X, omega)
    mid, _ = _max_id(omega.members, cutoff)
    complete = mid is not None and (ext_bound is None or ext_bound >= mid)
    bound = ext_bound if ext_bound is not None else max(mid if mid is not None else 1, 1)
    ab2 = {"status": "holds", "bound": bound, "complete": complete}
    for Xm in X.members:
        for I in omega.members:
            for i in range(1, bound + 1):
                if ext_dim(i, Xm, I):
                    ab2 = {"status": "violation", "bound": bound, "complete": complete,
                           "witness": [Xm.label, I.label, i]}
                    break
            if ab2["status"] != "holds":
                break
        if ab2["status"] != "holds":
            break

    hb = hat_bound if hat_bound is not None else (mid if mid is not None else 0) + 2
    triples, failures = [], []
    for M in A.members:
        t = ab3_triple(X, omega, M, hb)
        triples.append(t)
        if not t.ok:
            failures.append(M.label)
    ab3 = {"status": "holds" if not failures else "failure", "failures": failures,
           "triples": triples, "hat_bound": hb}

    if A.complete:
        ab1 = {"status": "vacuous", "tested": 0, "note": "A is the whole module category"}
    elif not ab1_family:
        ab1 = {"status": "not checked", "tested": 0}
    else:
        ab1 = {"status": "certified on family", "tested": 0}
        for L in A.members:
            beta = right_approximation(omega.members, L)
            for M in A.members:
                for alpha in hom_space(M, L).basis:
                    ds = direct_sum([M, beta.sum.module], M.alg)
                    K, _ = kernel(from_sum(ds, L, [alpha, beta.map]))
                    ab1["tested"] += 1
                    if not K.is_zero() and not decompose(K, A.members).complete:
                        ab1 = {"status": "counterexample", "tested": ab1["tested"],
                               "witness": [M.label, L.label, K.dim]}
                        break
                if ab1["status"] == "counterexample":
                    break
            if ab1["status"] == "counterexample":
                break
    return ABReport(ab1, ab2, ab3, {"ext_bound": bound, "hat_bound": hb, "cutoff": cutoff})


# -- cotilting and perpendicular categories ------------------------------------------------------


def perp(alg: Algebra, T: SubcatSpec, universe: Sequence[Module], bound: Optional[int] = None,
         cutoff: int = 200) -> SubcatSpec:
    """Members ``M`` of ``universe`` with ``Ext^i(M, T) = 0`` for ``1 <= i <= bound``."""
    if bound is None:
        bound, _ = _max_id(T.members, cutoff)
        if bound is None:
            raise InputError("perp: T has infinite injective dimension; give an explicit bound")
    out = [M for M in universe
           if all(not ext_dim(i, M, t) for t in T.members for i in range(1, bound + 1))]
    return SubcatSpec(out, f"perp({T.name})")


@dataclass
class CotiltingReport:
    ok: bool
    id_bound: Optional[int]
    ids: dict
    ext_violations: list
    coresolutions: dict
    failures: list
    perp: Optional[SubcatSpec]

    def to_json(self) -> dict:
        return {"ok": self.ok, "id_bound": self.id_bound, "ids": self.ids,
                "ext_violations": self.ext_violations, "coresolutions": self.coresolutions,
                "failures": self.failures, "perp": self.perp.labels if self.perp else None}


def cotilting_check(alg: Algebra, T: SubcatSpec, universe: Sequence[Module], cutoff: int = 200) -> CotiltingReport:
    """Uniform id bound, Ext self-orthogonality, and the coresolving property on ``⊥T``."""
    mid, vals = _max_id(T.members, cutoff)
    ids = {t.label: v.value for t, v in zip(T.members, vals)}
    if mid is None:
        return CotiltingReport(False, None, ids, [], {}, ["injective dimension not finite"], None)
    viol = []
    for a in T.members:
        for b in T.members:
            for i in range(1, mid + 1):
                if ext_dim(i, a, b):
                    viol.append([a.label, b.label, i])
    X = perp(alg, T, universe, mid)
    cores, failures = {}, []
    for M in X.members:
        ap = left_approximation(T.members, M)
        C, _ = cokernel(ap.map)
        mono = ap.map.is_injective()
        good = mono and all(not ext_dim(i, C, t) for t in T.members for i in range(1, mid + 1))
        cores[M.label] = {"T": [T.members[i].label for i in ap.indices], "mono": mono,
                          "cokernel_dims": list(C.dims), "cokernel_in_perp": good}
        if not good:
            failures.append(M.label)
    ok = not viol and not failures
    return CotiltingReport(ok, mid, ids, viol, cores, failures, X)


# -- quotient Hom spaces between arbitrary modules ----------------------------------------------------


@dataclass
class BarSpace:
    """Hom(X, N) modulo the maps factoring through add(ω)."""

    hom: object
    rows: list
    piv: list
    comp: list

    @property
    def dim(self) -> int:
        return len(self.comp)

    def coords(self, f: Morphism) -> list:
        v = self.hom.coords(f)
        if self.rows:
            v = reduce_vector(v, self.rows, self.piv, f.field)
        return [v[c] for c in self.comp]

    def element(self, t: int) -> Morphism:
        return self.hom.basis[self.comp[t]]


def bar_space(Xm: Module, N: Module, omega: SubcatSpec) -> BarSpace:
    H = hom_space(Xm, N)
    F = N.field
    vecs = []
    if H.dim and omega.members:
        beta = right_approximation(omega.members, N)
        for a in hom_space(Xm, beta.sum.module).basis:
            vecs.append(H.coords(beta.map @ a))
    rows, piv = row_echelon(vecs, H.dim, F) if vecs else ([], [])
    pset = set(piv)
    return BarSpace(H, rows, piv, [c for c in range(H.dim) if c not in pset])


@dataclass
class AdjointReport:
    target: Module
    R: Module
    counit: Morphism
    dims: dict  # label -> (dim X̄(X, RM), dim Ā(X, M))
    bijective: dict  # label -> bool
    triple: ApproxTriple

    @property
    def ok(self) -> bool:
        return all(self.bijective.values())

    @property
    def zero_in_quotient(self) -> bool:
        return all(a == 0 for a, _ in self.dims.values())


def adjoint_R(X: SubcatSpec, omega: SubcatSpec, M: Module, hat_bound: int = 3) -> AdjointReport:
    """``R(M) = X_M`` from the approximation triple, and the check that composing with the
    counit ``X_M -> M`` is bijective on quotient Hom spaces out of every member of X."""
    t = ab3_triple(X, omega, M, hat_bound)
    if not t.ok:
        raise InputError(f"adjoint_R: kernel of the approximation of {M.label} has no finite omega-resolution")
    RM = t.approx.sum.module
    f = t.approx.map
    F = M.field
    dims, bij = {}, {}
    for Xm in X.members:
        left = bar_space(Xm, RM, omega)
        right = bar_space(Xm, M, omega)
        dims[Xm.label] = (left.dim, right.dim)
        if left.dim != right.dim:
            bij[Xm.label] = False
            continue
        if not left.dim:
            bij[Xm.label] = True
            continue
        mat = Mat._raw(F, [right.coords(f @ left.element(s)) for s in range(left.dim)], right.dim)
        bij[Xm.label] = mat.is_invertible()
    return AdjointReport(M, RM, f, dims, bij, t)


# -- functors vanishing on a subcategory ---------------------------------------------------------


def inflate(F: FunctorModule, A: LinCat) -> FunctorModule:
    """A functor on a quotient ``A/[B]`` viewed as a functor on ``A`` (zero on B)."""
    if F.cat is A:
        return F
    Q = F.cat
    if Q.root is not A.root or not set(Q.obj) <= set(A.obj):
        raise InputError("inflate: the functor does not live on a quotient of this category")
    GA = A.category_algebra()
    GQ = Q.category_algebra()
    gam = GA.gamma
    Fd = gam.field
    qpos = {r: i for i, r in enumerate(Q.obj)}
    dims = [F.carrier.dims[qpos[r]] if r in qpos else 0 for r in A.obj]
    blocks = {}
    for b in gam.radical:
        x, y, t = GA.back[b]
        rx, ry = A.obj[x], A.obj[y]
        if rx not in qpos or ry not in qpos or not dims[x] or not dims[y]:
            continue
        vec = A._lift(rx, ry, _unit(Fd, A.hom_dim(x, y), t))
        red = Q._reduce(rx, ry, vec)
        acc = Mat.zeros(Fd, dims[y], dims[x])
        for c, val in enumerate(red):
            if val and not (rx == ry and c == 0):
                acc = acc + F.carrier.act(GQ.element[(qpos[rx], qpos[ry], c)]).scale(val)
        if not acc.is_zero():
            blocks[b] = acc
    carrier = Module(gam, dims, blocks, label=F.carrier.label)
    return FunctorModule(carrier, ("inflated",) + tuple(F.provenance), A)


def _lift_presentation(A: LinCat, d: Morphism):
    """Module map ⊕X_{P1} -> ⊕X_{P0} realising a map of representables over Γ_A."""
    G = A.category_algebra()
    P1, P0 = d.source, d.target
    lam = element_matrix(d)
    src = [A.modules[v] for v in P1.proj_verts]
    tgt = [A.modules[v] for v in P0.proj_verts]
    dsrc = direct_sum(src, A.alg)
    dtgt = direct_sum(tgt, A.alg)
    comps = [[None] * len(tgt) for _ in src]
    for t, y in enumerate(P0.proj_verts):
        for s, x in enumerate(P1.proj_verts):
            el = lam[t][s]
            if not el:
                continue
            coords = [A.alg.field.zero] * A.hom_dim(x, y)
            for b, val in el.items():
                bx, by, c = G.back[b]
                coords[c] = val
            comps[s][t] = A.representative(x, y, coords)
    return dsrc, dtgt, matrix_morphism(dsrc, dtgt, comps)


@dataclass
class LengthTwoResult:
    """``0 -> N -> M -> L`` in A whose Yoneda image resolves F."""

    F: FunctorModule
    g: Morphism
    f: Morphism
    b_epi: bool
    yoneda: ExactSequence
    cokernel_iso: bool
    length: int
    minimal: ResolutionTrace
    kernel_in_A: bool

    @property
    def ok(self) -> bool:
        return (self.b_epi and self.cokernel_iso and self.kernel_in_A and self.length <= 2
                and not any(self.yoneda.homology_dims()) and self.yoneda.maps[0].is_injective())


def is_b_epi(f: Morphism, B: Sequence[Module]) -> Optional[tuple]:
    """None if every map from add(B) to the target lifts through ``f``; otherwise a witness."""
    for W in B:
        for t, h in enumerate(hom_space(W, f.target).basis):
            if factor_right(h, f) is None:
                return (W.label, t)
    return None


def length_two_resolution(A: LinCat, B: Sequence[str], F: FunctorModule) -> LengthTwoResult:
    """Length-two resolution ``0 -> A(-,N) -> A(-,M) -> A(-,L) -> F -> 0`` of a functor
    vanishing on ``B``, read off from a projective presentation over A."""
    if A.ideal:
        raise InputError("length_two_resolution: A must be a category of modules (no ideal)")
    bpos = [A.pos(b) for b in B]
    FA = inflate(F, A)
    for x in bpos:
        if FA.carrier.dims[x]:
            raise InputError(f"length_two_resolution: the functor does not vanish on {A.labels[x]}")
    Bm = [A.modules[x] for x in bpos]
    alg = A.alg
    C = FA.carrier
    if C.is_zero():
        Z = Module(alg, [0] * alg.nvert, {})
        zf = Morphism.zero(Z, Z)
        seq = ExactSequence([], [])
        tr = minimal_resolution(FA, 4)
        return LengthTwoResult(F, zf, zf, True, seq, True, 0, tr, True)
    P0, pi = projective_cover(C)
    K, inc = kernel(pi)
    if K.is_zero():
        Lsum = direct_sum([A.modules[v] for v in P0.proj_verts], alg)
        Z = Module(alg, [0] * alg.nvert, {})
        f = Morphism.zero(Z, Lsum.module)
        g = Morphism.zero(Z, Z)
    else:
        P1, pi1 = projective_cover(K)
        _, Lsum, f = _lift_presentation(A, inc @ pi1)
        N, g = kernel(f)
    L, M = f.target, f.source
    N = g.source
    b_epi = is_b_epi(f, Bm) is None
    kin = N.is_zero() or decompose(N, A.modules).complete
    hN, hM, hL = hom_functor(A, N), hom_functor(A, M), hom_functor(A, L)
    gs = hom_functor_map(A, g, hN, hM)
    fs = hom_functor_map(A, f, hM, hL)
    seq = ExactSequence([hN.carrier, hM.carrier, hL.carrier], [gs, fs])
    Cf, _ = cokernel(fs)
    ciso = iso_test(Cf, C)
    length = 2 if not N.is_zero() else (1 if not M.is_zero() else 0)
    tr = minimal_resolution(FA, 8)
    return LengthTwoResult(F, g, f, b_epi, seq, ciso, length, tr, kin)


@dataclass
class LadderTrace:
    """Resolution of F over A/[B] built from iterated relative syzygies of ``0 -> N -> M -> L``.

    ``stages[k] = (N_k, M_k, L_k)``; ``functors`` lists the terms in homological order
    ``Ā(-,L_0), Ā(-,M_0), Ā(-,N_0), Ā(-,L_1), ...`` and ``maps[i]`` goes from
    ``functors[i+1]`` to ``functors[i]``.
    """

    F: Optional[Module]
    stages: list
    functors: list
    maps: list
    status: str
    cokernel: Module

    def homology(self) -> list:
        """Homology of the complex at each interior term (positions 1..)."""
        out = []
        for i in range(1, len(self.functors)):
            if i >= len(self.maps):
                break
            inn = self.maps[i].rank()
            outr = self.maps[i - 1].rank()
            out.append(self.functors[i].dim - inn - outr)
        return out

    @property
    def length(self) -> Optional[int]:
        if self.status != "finite":
            return None
        nz = [i for i, Fm in enumerate(self.functors) if Fm.dim]
        return nz[-1] if nz else -1

    def exact(self) -> bool:
        if any(self.homology()):
            return False
        if self.status == "finite" and self.maps:
            last = max((i for i, Fm in enumerate(self.functors) if Fm.dim), default=None)
            if last is not None and last >= 1 and not self.maps[last - 1].is_injective():
                return False
        return all((self.maps[i] @ self.maps[i + 1]).is_zero() for i in range(len(self.maps) - 1))


def ladder_resolution(A: LinCat, B: Sequence[str], g: Morphism, f: Morphism, stages: int = 6,
                      Q: Optional[LinCat] = None) -> LadderTrace:
    """Projective resolution over ``A/[B]`` of ``coker(Ā(-,M) -> Ā(-,L))`` from the ladder of
    right B-approximations of ``0 -> N -> M -> L`` (``f`` a B-epimorphism)."""
    Bm = [A.module(b) for b in B]
    w = is_b_epi(f, Bm)
    if w is not None:
        raise InputError(f"ladder_resolution: f is not a B-epimorphism (map #{w[1]} from {w[0]} does not lift)")
    if not (f @ g).is_zero() or not g.is_injective() or g.rank() + f.rank() != f.source.dim:
        raise InputError("ladder_resolution: 0 -> N -> M -> L is not exact")
    Q = Q if Q is not None else quotient_by(A, B)
    alg = A.alg
    hL, hM = hom_functor(Q, f.target), hom_functor(Q, f.source)
    f0 = hom_functor_map(Q, f, hM, hL)
    Ccok, _ = cokernel(f0)
    if Ccok.is_zero():
        return LadderTrace(Ccok, [], [], [], "finite", Ccok)
    functors, maps, st = [], [], []
    prev_N = None
    status = "truncated"
    for k in range(stages):
        N, M, L = g.source, f.source, f.target
        st.append((N, M, L))
        hN, hM, hL = hom_functor(Q, N), hom_functor(Q, M), hom_functor(Q, L)
        if prev_N is not None:
            maps.append(hom_functor_map(Q, delta, hL, prev_N))
        functors.extend([hL, hM, hN])
        maps.append(hom_functor_map(Q, f, hM, hL))
        maps.append(hom_functor_map(Q, g, hN, hM))
        cut = _first_injective(maps)
        if cut is not None:
            functors, maps = functors[:cut + 1], maps[:cut]
            status = "finite"
            break
        aL = right_approximation(Bm, L)
        aN = right_approximation(Bm, N)
        beta_ = []
        for comp in aL.components:
            s = factor_right(comp, f)
            if s is None:
                raise RuntimeError("ladder_resolution: approximation does not lift through f")
            beta_.append(s)
        beta = from_sum(aL.sum, M, beta_) if aL.components else Morphism.zero(aL.sum.module, M)
        parts = aL.sum.parts + aN.sum.parts
        BM = direct_sum(parts, alg)
        nL = len(aL.sum.parts)
        comps_M = list(beta_) + [g @ c for c in aN.components]
        alpha_M = from_sum(BM, M, comps_M)
        OL, iL = kernel(aL.map)
        ON, iN = kernel(aN.map)
        OM, iM = kernel(alpha_M)
        # Ω g: x ↦ (0, x), Ω f: (a, b) ↦ a
        projL = _project(BM, aL.sum, range(nL))
        inclN = _include(BM, aN.sum, range(nL, len(parts)))
        Og = factor_right(inclN @ iN, iM)
        Of = factor_right(projL @ iM, iL)
        d = factor_right(beta @ iL, g)
        if Og is None or Of is None or d is None:
            raise RuntimeError("ladder_resolution: ladder maps do not factor")
        delta = d
        prev_N = hN
        g, f = Og, Of
    return LadderTrace(Ccok, st, functors, maps, status, Ccok)


def _first_injective(maps: list) -> Optional[int]:
    """Least position whose outgoing map is injective (position 0: the map to F is zero),
    beyond which the complex only resolves zero."""
    if maps and maps[0].is_zero():
        return 0
    for i in range(1, len(maps)):
        if maps[i].source.is_zero() or maps[i - 1].is_injective():
            return i
    return None


def _project(big, small, idx) -> Morphism:
    comps = [big.projections[i] for i in idx]
    return to_sum(big.module, small, comps) if comps else Morphism.zero(big.module, small.module)


def _include(big, small, idx) -> Morphism:
    comps = [big.inclusions[i] for i in idx]
    return from_sum(small, big.module, comps) if comps else Morphism.zero(small.module, big.module)


# -- syzygy stabilization and torsion classes --------------------------------------------------------


def syzygy_stabilization(X: SubcatSpec, L: Module, bound: int) -> Optional[int]:
    """Least ``n <= bound`` with ``Ω_X^n(L)`` in add(X), or None."""
    cur = L
    for n in range(bound + 1):
        if X.contains(cur):
            return n
        ap = right_approximation(X.members, cur)
        cur, _ = kernel(ap.map)
    return None


@dataclass
class TorsionReport:
    ok: bool
    quotient_closed: bool
    extension_closed: bool
    ext_vanishing: bool
    witness: Optional[list]
    triples: list

    def to_json(self) -> dict:
        return {"ok": self.ok, "quotient_closed": self.quotient_closed,
                "extension_closed": self.extension_closed, "ext_vanishing": self.ext_vanishing,
                "witness": self.witness, "triples": [t.to_json() for t in self.triples]}


def extension_middles(M: Module, N: Module) -> list:
    """Middle terms ``E`` of ``0 -> N -> E -> M -> 0`` for a basis of Ext^1(M, N)."""
    P, pi = projective_cover(M)
    K, inc = kernel(pi)
    H = hom_space(K, N)
    if not H.dim:
        return []
    F = M.field
    restricted = [H.coords(phi @ inc) for phi in hom_space(P, N).basis]
    rows, piv = row_echelon(restricted, H.dim, F) if restricted else ([], [])
    pset = set(piv)
    out = []
    for t in range(H.dim):
        if t in pset:
            continue
        phi = H.basis[t]
        # pushout: E = (P ⊕ N) / {(inc(k), -phi(k))}
        ds = direct_sum([P, N], M.alg)
        emb = to_sum(K, ds, [inc, -phi])
        E, _ = cokernel(emb)
        out.append(E)
    return out


def torsion_ab_check(universe: Sequence[Module], X: SubcatSpec, omega: SubcatSpec, bound: int = 3) -> TorsionReport:
    """Torsion-class test of X on ``universe`` plus Ext-orthogonality against ω; on success
    the approximation triples come from the torsion submodules."""
    allX = SubcatSpec(list(X.members), X.name)
    uni = list(universe)
    quot_ok, ext_ok, ev_ok = True, True, True
    witness = None
    for Xm in X.members:
        for Y in uni:
            for h in hom_space(Xm, Y).basis:
                Im, _ = image(h)
                if not Im.is_zero() and not decompose(Im, allX.members).complete:
                    quot_ok = False
                    witness = ["quotient", Xm.label, Y.label]
                    break
            if not quot_ok:
                break
        if not quot_ok:
            break
    if quot_ok:
        for a in X.members:
            for b in X.members:
                for E in extension_middles(a, b):
                    if not decompose(E, allX.members).complete:
                        ext_ok = False
                        witness = ["extension", a.label, b.label]
                        break
                if not ext_ok:
                    break
            if not ext_ok:
                break
    for Xm in X.members:
        for I in omega.members:
            for i in range(1, bound + 1):
                if ext_dim(i, Xm, I):
                    ev_ok = False
                    witness = witness or ["ext", Xm.label, I.label, i]
    triples = []
    ok = quot_ok and ext_ok and ev_ok
    if ok:
        for M in uni:
            ap = right_approximation(X.members, M, minimal=False)
            tM, tinc = image(ap.map)
            # the torsion submodule is in add X and its inclusion is the approximation
            dec = decompose(tM, X.members) if not tM.is_zero() else None
            ds = dec.source if dec else direct_sum([], M.alg)
            f = tinc @ dec.iso if dec else Morphism.zero(ds.module, M)
            K, kinc = kernel(f)
            res = omega_hat_resolve(omega, K, 0)
            fake = Approximation(dec.indices() if dec else [], f,
                                 [f @ i for i in ds.inclusions], ds, "right")
            triples.append(ApproxTriple(M, fake, K, kinc, res, f.is_surjective()))
        ok = all(t.ok for t in triples) and all(is_right_approximation(t.approx.map, X.members) for t in triples)
    return TorsionReport(ok, quot_ok, ext_ok, ev_ok, witness, triples)


# -- Iwanaga-Gorenstein certification and the mapping-cone approximation ----------------------------------


def ig_certificate(alg: Algebra, cutoff: int = 200) -> dict:
    """id of the regular module on both sides."""
    right = [injective_dimension(projective(alg, i), cutoff) for i in range(alg.nvert)]
    left = [projective_dimension(injective(alg, i), cutoff) for i in range(alg.nvert)]

    def agg(rs):
        vals = [r.value for r in rs]
        if "infinite" in vals:
            return "infinite"
        if "unknown" in vals:
            return "unknown"
        return max(vals)

    r, l = agg(right), agg(left)
    ig = isinstance(r, int) and isinstance(l, int)
    if not ig and "unknown" in (r, l) and "infinite" not in (r, l):
        ig = None
    return {"ig": ig, "id_right": r, "id_left": l}


@dataclass
class ConeResult:
    triple: ApproxTriple
    cone: ExactSequence
    G: Module
    cosyzygy: Module


def gp_mapping_cone_ab3(alg: Algebra, M: Module, n: int, universe: Optional[Sequence[Module]] = None,
                        cutoff: int = 200) -> ConeResult:
    """Approximation ``Ω^{-n}(Ω^n M) ⊕ P_0 -> M`` with kernel of finite projective dimension,
    from the mapping cone of the comparison between the projective resolution of M and the
    projective coresolution of ``G = Ω^n M``."""
    cert = ig_certificate(alg, cutoff)
    if cert["ig"] is not True:
        raise NotGorensteinError("gp_mapping_cone_ab3: algebra not certified Iwanaga-Gorenstein", cert)
    if n < max(cert["id_right"], cert["id_left"]):
        raise InputError(f"gp_mapping_cone_ab3: n = {n} is below the injective dimension of the algebra")
    F = M.field
    proj = [projective(alg, i) for i in range(alg.nvert)]
    projS = SubcatSpec(proj, "proj")
    if n == 0:
        idm = Morphism.identity(M)
        ds = direct_sum([M], alg)
        f = from_sum(ds, M, [idm])
        K, kinc = kernel(f)
        ap = Approximation([0], f, [idm], ds, "right")
        tr = ApproxTriple(M, ap, K, kinc, omega_hat_resolve(projS, K, 0), True)
        return ConeResult(tr, ExactSequence([ds.module, M], [f]), M, M)
    # projective resolution 0 -> G -> P_{n-1} -> ... -> P_0 -> M -> 0
    G, seq = syzygy(M, n, witness=True)
    Ps = seq.terms[1:-1][::-1]  # Ps[k] = P_k
    dP = {}  # dP[k]: P_k -> P_{k-1} (k >= 1), dP[0]: P_0 -> M
    maps = seq.maps  # G->P_{n-1}, P_{n-1}->P_{n-2}, ..., P_0->M
    iota_G = maps[0]
    for k in range(n):
        dP[k] = maps[n - k]
    # coresolution 0 -> G -> Q_{n-1} -> ... -> Q_0 -> Ω^{-n}G -> 0 by left projective approximations
    Qs, dQ, emb, q = {}, {}, {}, {}
    cur = G
    for k in range(n - 1, -1, -1):
        ap = left_approximation(proj, cur)
        if not ap.map.is_injective():
            raise RuntimeError("gp_mapping_cone_ab3: left approximation is not injective")
        Cn, qk = cokernel(ap.map)
        Qs[k], emb[k], q[k] = ap.sum.module, ap.map, qk
        if k + 1 in q:
            dQ[k + 1] = ap.map @ q[k + 1]
        cur = Cn
    Om = cur
    dQ[0] = q[0]
    # chain map h_k: Q_k -> P_k extending G -> P_{n-1}, then φ: Ω^{-n}G -> M
    h = {}
    hk = factor_left(iota_G, emb[n - 1])
    if hk is None:
        raise RuntimeError("gp_mapping_cone_ab3: comparison map does not exist")
    h[n - 1] = hk
    for k in range(n - 1, 0, -1):
        ubar = _descend(dP[k] @ h[k], q[k])
        hk = factor_left(ubar, emb[k - 1])
        if hk is None:
            raise RuntimeError("gp_mapping_cone_ab3: comparison map does not extend")
        h[k - 1] = hk
    phi = _descend(dP[0] @ h[0], q[0])
    # spliced sequence 0 -> Q_{n-1} -> Q_{n-2}⊕P_{n-1} -> ... -> Ω^{-n}G ⊕ P_0 -> M -> 0
    Qx = dict(Qs)
    Qx[-1] = Om
    hx = dict(h)
    hx[-1] = phi
    terms, cmaps = [], []
    sums = {}
    for j in range(n, -1, -1):
        if j == n:
            sums[j] = direct_sum([Qx[n - 1]], alg)
        else:
            sums[j] = direct_sum([Qx[j - 1], Ps[j]], alg)
    for j in range(n, 0, -1):
        S, T = sums[j], sums[j - 1]
        qd = -dQ[j - 1] if j - 1 >= 0 else None
        comps = [[qd, hx[j - 1]]]
        if j != n:
            comps.append([None, dP[j]])
        cmaps.append(matrix_morphism(S, T, comps))
    f = from_sum(sums[0], M, [phi, dP[0]])
    cmaps.append(f)
    terms = [sums[j].module for j in range(n, -1, -1)] + [M]
    cone = ExactSequence(terms, cmaps)
    if not cone.is_exact():
        raise RuntimeError("gp_mapping_cone_ab3: spliced sequence is not exact")
    K, kinc = kernel(f)
    res = omega_hat_resolve(projS, K, n + 1)
    ap = Approximation([], f, [phi, dP[0]], sums[0], "right")
    triple = ApproxTriple(M, ap, K, kinc, res, f.is_surjective())
    if universe is not None:
        gp = perp(alg, projS, universe, max(cert["id_right"], 1))
        if not is_right_approximation(f, gp.members):
            raise RuntimeError("gp_mapping_cone_ab3: map is not a right approximation by ⊥Λ")
    return ConeResult(triple, cone, G, Om)


def _descend(u: Morphism, q: Morphism) -> Morphism:
    """The map ``ū`` with ``ū ∘ q = u`` for a surjection ``q``."""
    s = factor_left(u, q)
    if s is None:
        raise RuntimeError("map does not vanish on the kernel of the quotient")
    return s
