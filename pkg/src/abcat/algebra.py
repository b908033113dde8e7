"""Finite-dimensional basic algebras given by structure constants.

An algebra is stored the way a path algebra presents itself: the basis contains
one primitive idempotent per vertex, every basis element ``b`` is homogeneous
(``b = e_i b e_j`` for exactly one pair of vertices) and the remaining basis
elements span the Jacobson radical.  Nakayama algebras, category algebras of
finite Krull-Schmidt categories and their opposites all have this shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .linalg import Field, InputError, QQ, reduce_vector, row_echelon


class ValidationError(InputError):
    """Structure constants that do not define a valid basic algebra."""


@dataclass(frozen=True)
class NakayamaData:
    kupisch: tuple[int, ...]
    shape: str  # "linear" or "cyclic"


class Algebra:
    """A basic algebra with an idempotent-homogeneous basis.

    ``products[(a, b)]`` lists ``(c, coeff)`` with ``b_a * b_b = sum coeff * b_c``;
    missing keys are zero products.  ``src[b]``/``tgt[b]`` are the vertices with
    ``b = e_src b e_tgt``.
    """

    def __init__(self, field: Field, labels: Sequence[str], idempotents: Sequence[int],
                 src: Sequence[int], tgt: Sequence[int], products: dict,
                 vertex_labels: Optional[Sequence[str]] = None, name: str = "",
                 nakayama: Optional[NakayamaData] = None):
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.idempotents = tuple(idempotents)
        self.nvert = len(self.idempotents)
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.products = {k: tuple((c, field(x)) for c, x in v) for k, v in products.items() if v}
        self.vertex_labels = tuple(vertex_labels) if vertex_labels else tuple(str(i + 1) for i in range(self.nvert))
        self.name = name
        self.nakayama = nakayama
        self._opposite: Optional[Algebra] = None
        self.index = {lab: i for i, lab in enumerate(self.labels)}

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, vertices={self.nvert}, field={self.field.name})"

    def __getstate__(self):
        state = self.__dict__.copy()
        for k in ("between", "radical", "arrows", "is_idempotent", "_cache"):
            state.pop(k, None)
        state["_opposite"] = None
        return state

    @cached_property
    def is_idempotent(self) -> tuple[bool, ...]:
        s = set(self.idempotents)
        return tuple(b in s for b in range(self.dim))

    @cached_property
    def between(self) -> dict[tuple[int, int], tuple[int, ...]]:
        out: dict[tuple[int, int], list[int]] = {}
        for b in range(self.dim):
            out.setdefault((self.src[b], self.tgt[b]), []).append(b)
        return {k: tuple(v) for k, v in out.items()}

    def basis_between(self, i: int, j: int) -> tuple[int, ...]:
        return self.between.get((i, j), ())

    @cached_property
    def radical(self) -> tuple[int, ...]:
        return tuple(b for b in range(self.dim) if not self.is_idempotent[b])

    @cached_property
    def arrows(self) -> tuple[int, ...]:
        """Basis elements lifting a basis of rad/rad^2 (generators besides idempotents)."""
        rad2: dict[tuple[int, int], list] = {}
        rad = set(self.radical)
        for (a, b), terms in self.products.items():
            if a in rad and b in rad:
                key = (self.src[a], self.tgt[b])
                vec = {c: x for c, x in terms}
                rad2.setdefault(key, []).append(vec)
        chosen = []
        for key, elems in sorted(self.between.items()):
            elems = [b for b in elems if b in rad]
            if not elems:
                continue
            pos = {b: t for t, b in enumerate(elems)}
            vecs = []
            for vec in rad2.get(key, []):
                v = [self.field.zero] * len(elems)
                for c, x in vec.items():
                    v[pos[c]] = x
                vecs.append(v)
            basis, piv = row_echelon(vecs, len(elems), self.field)
            for t, b in enumerate(elems):
                unit = [self.field.zero] * len(elems)
                unit[t] = self.field.one
                if any(reduce_vector(unit, basis, piv, self.field)):
                    chosen.append(b)
                    basis, piv = row_echelon(basis + [unit], len(elems), self.field)
        return tuple(sorted(chosen))

    def mul(self, u: dict, v: dict) -> dict:
        """Product of two elements given as sparse coefficient dicts."""
        out: dict = {}
        p = self.field.p
        for a, x in u.items():
            for b, y in v.items():
                for c, z in self.products.get((a, b), ()):
                    val = out.get(c, 0) + x * y * z
                    if p:
                        val %= p
                    if val:
                        out[c] = val
                    else:
                        out.pop(c, None)
        return out

    def opposite(self) -> "Algebra":
        if self._opposite is None:
            prods = {(b, a): v for (a, b), v in self.products.items()}
            op = Algebra(self.field, self.labels, self.idempotents, self.tgt, self.src, prods,
                         self.vertex_labels, name=f"({self.name})^op")
            op._opposite = self
            self._opposite = op
        return self._opposite

    def validate(self):
        """Check the basic-algebra axioms; raise :class:`ValidationError` naming the culprit."""
        F = self.field
        if len(set(self.idempotents)) != self.nvert:
            raise ValidationError("idempotent list has repeats")
        e = self.idempotents
        for b in range(self.dim):
            i, j = self.src[b], self.tgt[b]
            if self.mul({e[i]: 1}, {b: 1}) != {b: F.one} or self.mul({b: 1}, {e[j]: 1}) != {b: F.one}:
                raise ValidationError(f"basis element {self.labels[b]!r} is not homogeneous "
                                      f"(expected e{i + 1}*b = b = b*e{j + 1})")
            for k in range(self.nvert):
                if k != i and self.mul({e[k]: 1}, {b: 1}):
                    raise ValidationError(f"e{k + 1}*{self.labels[b]} != 0")
                if k != j and self.mul({b: 1}, {e[k]: 1}):
                    raise ValidationError(f"{self.labels[b]}*e{k + 1} != 0")
        for i in range(self.nvert):
            if self.src[e[i]] != i or self.tgt[e[i]] != i:
                raise ValidationError(f"idempotent {self.labels[e[i]]!r} sits at the wrong vertex")
            for j in range(self.nvert):
                want = {e[i]: F.one} if i == j else {}
                if self.mul({e[i]: 1}, {e[j]: 1}) != want:
                    raise ValidationError(f"idempotents {self.labels[e[i]]!r}, {self.labels[e[j]]!r} "
                                          f"are not orthogonal idempotents")
        for (a, b) in self.products:
            if self.tgt[a] != self.src[b]:
                raise ValidationError(f"nonzero product {self.labels[a]}*{self.labels[b]} "
                                      f"of non-composable elements")
        for a in range(self.dim):
            for b in range(self.dim):
                if self.tgt[a] != self.src[b]:
                    continue
                ab = self.mul({a: 1}, {b: 1})
                for c in range(self.dim):
                    if self.tgt[b] != self.src[c]:
                        continue
                    if self.mul(ab, {c: 1}) != self.mul({a: 1}, self.mul({b: 1}, {c: 1})):
                        raise ValidationError(f"associativity fails on ({self.labels[a]}, "
                                              f"{self.labels[b]}, {self.labels[c]})")
        rad = set(self.radical)
        for (a, b), terms in self.products.items():
            if (a in rad or b in rad) and any(c not in rad for c, _ in terms):
                raise ValidationError(f"non-idempotent basis elements do not span an ideal: "
                                      f"{self.labels[a]}*{self.labels[b]} has an idempotent component")
        # nilpotency of the radical: rad^(dim+1) = 0
        power = [{b: F.one} for b in self.radical]
        for _ in range(self.dim + 1):
            if not power:
                break
            nxt = []
            for u in power:
                for a in self.arrows_or_radical():
                    w = self.mul(u, {a: 1})
                    if w:
                        nxt.append(w)
            power = _span_basis(nxt, self.dim, F)
        if power:
            raise ValidationError("non-idempotent basis elements are not nilpotent")
        return self

    def arrows_or_radical(self):
        return self.radical


def _span_basis(vecs: list[dict], n: int, F: Field) -> list[dict]:
    dense = []
    for v in vecs:
        d = [F.zero] * n
        for c, x in v.items():
            d[c] = x
        dense.append(d)
    rows, _ = row_echelon(dense, n, F)
    return [{c: x for c, x in enumerate(r) if x} for r in rows]


def build_algebra(field: Field, labels: Sequence[str], idempotents: Sequence[str],
                  table: dict[tuple[str, str], dict[str, object]], name: str = "") -> Algebra:
    """Validated algebra from a multiplication table keyed by label pairs.

    ``table[(a, b)]`` maps labels to coefficients of ``a*b``; absent pairs are
    zero.  Products with the idempotents must be listed explicitly.
    """
    labels = list(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise ValidationError("duplicate basis labels")
    try:
        idem = [index[x] for x in idempotents]
    except KeyError as exc:
        raise ValidationError(f"unknown idempotent label {exc.args[0]!r}") from None
    if not idem:
        raise ValidationError("at least one idempotent is required")
    products = {}
    for (a, b), combo in table.items():
        if a not in index or b not in index:
            raise ValidationError(f"unknown label in product {a}*{b}")
        terms = []
        for c, x in combo.items():
            if c not in index:
                raise ValidationError(f"unknown label {c!r} in value of {a}*{b}")
            x = field(x)
            if x:
                terms.append((index[c], x))
        if terms:
            products[(index[a], index[b])] = sorted(terms)
    prods_d = {k: {c: x for c, x in v} for k, v in products.items()}
    src, tgt = [], []
    one = field.one
    for b in range(len(labels)):
        left = [i for i, e in enumerate(idem) if prods_d.get((e, b)) == {b: one}]
        right = [j for j, e in enumerate(idem) if prods_d.get((b, e)) == {b: one}]
        if len(left) != 1 or len(right) != 1:
            raise ValidationError(f"basis element {labels[b]!r} is not homogeneous: need exactly one "
                                  f"idempotent e with e*{labels[b]} = {labels[b]} and one on the right")
        src.append(left[0])
        tgt.append(right[0])
    alg = Algebra(field, labels, idem, src, tgt, products, name=name)
    return alg.validate()


def nakayama(kupisch: Sequence[int], shape: str = "cyclic", field: Field = QQ) -> Algebra:
    """Basic Nakayama algebra with the given Kupisch series.

    Vertices ``1..v`` with arrows ``i -> i+1`` (wrapping around when cyclic).  The
    basis is the set of nonzero paths; the path of length ``L`` from vertex ``i``
    is nonzero iff ``L < kupisch[i]``, so the projective ``e_i A`` has Loewy
    length ``kupisch[i]``.
    """
    c = [int(x) for x in kupisch]
    v = len(c)
    if v == 0:
        raise InputError("kupisch series must be nonempty")
    if any(x < 1 for x in c):
        raise InputError("kupisch entries >= 1 required")
    if shape == "linear":
        if c[-1] != 1:
            raise InputError("linear Nakayama: the last kupisch entry must be 1")
        for i in range(v - 1):
            if c[i] < 2:
                raise InputError(f"linear Nakayama: entry {i + 1} must be >= 2 (arrow {i + 1}->{i + 2} would vanish)")
            if c[i] > c[i + 1] + 1:
                raise InputError(f"inadmissible kupisch series: entry {i + 1} exceeds entry {i + 2} by more than 1")
    elif shape == "cyclic":
        for i in range(v):
            if c[i] < 2:
                raise InputError("cyclic Nakayama: kupisch entries >= 2 required")
            if c[i] > c[(i + 1) % v] + 1:
                raise InputError(f"inadmissible kupisch series: entry {i + 1} exceeds entry "
                                 f"{(i + 1) % v + 1} by more than 1")
    else:
        raise InputError(f"unknown Nakayama shape {shape!r}")

    def end(i, L):
        return (i + L) % v

    paths = [(i, L) for i in range(v) for L in range(c[i])]
    idx = {p: t for t, p in enumerate(paths)}
    labels = []
    for i, L in paths:
        if L == 0:
            labels.append(f"e{i + 1}")
        else:
            labels.append("".join(f"a{end(i, s) + 1}" for s in range(L)))
    products = {}
    for (i, L) in paths:
        for (j, M) in paths:
            if end(i, L) != j:
                continue
            if L + M < c[i]:
                products[(idx[(i, L)], idx[(j, M)])] = [(idx[(i, L + M)], 1)]
    src = [i for i, L in paths]
    tgt = [end(i, L) for i, L in paths]
    idem = [idx[(i, 0)] for i in range(v)]
    name = f"Nakayama({shape}, {list(c)})"
    alg = Algebra(field, labels, idem, src, tgt, products, name=name,
                  nakayama=NakayamaData(tuple(c), shape))
    alg.path_length = tuple(L for _, L in paths)
    return alg


def path_algebra_linear(n: int, field: Field = QQ) -> Algebra:
    """Path algebra of the linearly oriented A_n quiver (hereditary, gd 1 for n >= 2)."""
    return nakayama(list(range(n, 0, -1)), "linear", field)
