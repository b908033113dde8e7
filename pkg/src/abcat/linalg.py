"""Exact linear algebra over the rationals and prime fields.

Everything here is exact: rationals are ``gmpy2.mpq`` values, prime-field
elements are Python ints reduced into ``range(p)``.  Pivoting is deterministic
(leftmost nonzero column, topmost row), so bases come out identical across runs.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Optional, Sequence

import gmpy2
from gmpy2 import mpq


class InputError(ValueError):
    """Malformed input: dimension mismatch, bad field spec, and so on."""


class Field:
    """The exact base field: ``Field()`` is Q, ``Field(p)`` is F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p and not gmpy2.is_prime(p):
            raise InputError(f"field characteristic {p} is not prime")
        self.p = int(p)

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip()
        if text in ("Q", "QQ"):
            return cls()
        if text.startswith("Fp:"):
            try:
                return cls(int(text[3:]))
            except ValueError:
                raise InputError(f"bad field spec {text!r}") from None
        raise InputError(f"bad field spec {text!r} (expected 'Q' or 'Fp:<p>')")

    @property
    def char(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return f"Fp:{self.p}" if self.p else "Q"

    def __repr__(self):
        return f"Field({self.name})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __reduce__(self):
        return (Field, (self.p,))

    def __call__(self, x):
        if self.p:
            if isinstance(x, int):
                return x % self.p
            x = mpq(x)
            return int(x.numerator) * pow(int(x.denominator), -1, self.p) % self.p
        return mpq(x)

    @property
    def zero(self):
        return 0 if self.p else mpq(0)

    @property
    def one(self):
        return 1 if self.p else mpq(1)

    def inv(self, x):
        if self.p:
            return pow(x, -1, self.p)
        return 1 / x

    def reduce(self, x):
        return x % self.p if self.p else x

    def to_json(self, x):
        """Integers stay integers; non-integral rationals become 'a/b' strings."""
        if self.p:
            return int(x)
        x = mpq(x)
        if x.denominator == 1:
            return int(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def sample(self, rng: random.Random):
        """A pseudo-random element from a large subset of the field."""
        if self.p:
            return rng.randrange(self.p)
        return mpq(rng.randrange(1, 1 << 30))


QQ = Field()


def _rref_rows(rows: list[list], ncols: int, field: Field) -> list[int]:
    """Reduce ``rows`` in place to reduced row echelon form; return pivot columns.

    Zero rows are moved to the bottom.
    """
    p = field.p
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        sel = None
        for i in range(r, nrows):
            if rows[i][c]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        prow = rows[r]
        inv = field.inv(prow[c])
        if p:
            prow[:] = [x * inv % p for x in prow]
        else:
            prow[:] = [x * inv for x in prow]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            a = row[c]
            if not a:
                continue
            if p:
                row[:] = [(x - a * y) % p for x, y in zip(row, prow)]
            else:
                row[:] = [x - a * y if y else x for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
    return pivots


class Mat:
    """Dense immutable matrix over a :class:`Field` (row-major lists)."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows: Sequence[Sequence], ncols: Optional[int] = None):
        self.field = field
        self.rows = [[field(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        for row in self.rows:
            if len(row) != ncols:
                raise InputError("ragged matrix rows")

    @classmethod
    def _raw(cls, field: Field, rows: list[list], ncols: int) -> "Mat":
        m = object.__new__(cls)
        m.field = field
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        return m

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Mat":
        z = field.zero
        return cls._raw(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"Mat({self.nrows}x{self.ncols}: [{body}])"

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.shape == other.shape
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.shape, tuple(tuple(int(x) if self.field.p else (int(x.numerator), int(x.denominator))
                                             for x in r) for r in self.rows)))

    def tolist(self) -> list[list]:
        return [[self.field.to_json(x) for x in row] for row in self.rows]

    def copy_rows(self) -> list[list]:
        return [list(r) for r in self.rows]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    @property
    def T(self) -> "Mat":
        return Mat._raw(self.field, [list(c) for c in zip(*self.rows)] if self.nrows else
                        [[] for _ in range(self.ncols)], self.nrows)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
        p = self.field.p
        z = self.field.zero
        n = other.ncols
        orows = other.rows
        out = []
        for row in self.rows:
            acc = [z] * n
            for k, a in enumerate(row):
                if not a:
                    continue
                for j, b in enumerate(orows[k]):
                    if b:
                        acc[j] += a * b
            if p:
                acc = [x % p for x in acc]
            out.append(acc)
        return Mat._raw(self.field, out, n)

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} + {other.shape}")
        f = self.field.reduce
        return Mat._raw(self.field, [[f(a + b) for a, b in zip(r, s)]
                                     for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} - {other.shape}")
        f = self.field.reduce
        return Mat._raw(self.field, [[f(a - b) for a, b in zip(r, s)]
                                     for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> "Mat":
        f = self.field.reduce
        return Mat._raw(self.field, [[f(-a) for a in r] for r in self.rows], self.ncols)

    def scale(self, c) -> "Mat":
        c = self.field(c)
        f = self.field.reduce
        return Mat._raw(self.field, [[f(c * a) for a in r] for r in self.rows], self.ncols)

    def hstack(self, other: "Mat") -> "Mat":
        if self.nrows != other.nrows:
            raise InputError("hstack row mismatch")
        return Mat._raw(self.field, [r + s for r, s in zip(self.rows, other.rows)],
                        self.ncols + other.ncols)

    def vstack(self, other: "Mat") -> "Mat":
        if self.ncols != other.ncols:
            raise InputError("vstack column mismatch")
        return Mat._raw(self.field, self.copy_rows() + other.copy_rows(), self.ncols)

    def select(self, rows: Optional[Sequence[int]] = None, cols: Optional[Sequence[int]] = None) -> "Mat":
        rr = range(self.nrows) if rows is None else rows
        if cols is None:
            return Mat._raw(self.field, [list(self.rows[i]) for i in rr], self.ncols)
        return Mat._raw(self.field, [[self.rows[i][j] for j in cols] for i in rr], len(cols))

    def rref(self) -> tuple["Mat", list[int]]:
        rows = self.copy_rows()
        piv = _rref_rows(rows, self.ncols, self.field)
        return Mat._raw(self.field, rows, self.ncols), piv

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self):
        if self.nrows != self.ncols:
            raise InputError("det of non-square matrix")
        rows = self.copy_rows()
        n = self.nrows
        field = self.field
        p = field.p
        d = field.one
        for c in range(n):
            sel = next((i for i in range(c, n) if rows[i][c]), None)
            if sel is None:
                return field.zero
            if sel != c:
                rows[c], rows[sel] = rows[sel], rows[c]
                d = field.reduce(-d)
            piv = rows[c][c]
            d = field.reduce(d * piv)
            inv = field.inv(piv)
            for i in range(c + 1, n):
                a = rows[i][c]
                if a:
                    m = field.reduce(a * inv)
                    rows[i] = [field.reduce(x - m * y) for x, y in zip(rows[i], rows[c])]
        return d

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> "Mat":
        if self.nrows != self.ncols:
            raise InputError("inverse of non-square matrix")
        n = self.nrows
        aug = self.hstack(Mat.identity(self.field, n))
        r, piv = aug.rref()
        if piv[:n] != list(range(n)):
            raise InputError("matrix is singular")
        return r.select(cols=range(n, 2 * n))


def zero_vector(field: Field, n: int) -> list:
    return [field.zero] * n


def row_echelon(vectors: Iterable[Sequence], ncols: int, field: Field) -> tuple[list[list], list[int]]:
    """RREF basis (nonzero rows only) of the span of ``vectors`` plus pivots."""
    rows = [list(v) for v in vectors]
    piv = _rref_rows(rows, ncols, field)
    return rows[:len(piv)], piv


def reduce_vector(v: Sequence, basis: list[list], pivots: list[int], field: Field) -> list:
    """Remainder of ``v`` modulo an RREF basis (zero iff ``v`` lies in the span)."""
    w = list(v)
    f = field.reduce
    for row, c in zip(basis, pivots):
        a = w[c]
        if a:
            w = [f(x - a * y) for x, y in zip(w, row)]
    return w


def kernel_rows(rows: list[list], ncols: int, field: Field) -> tuple[list[list], list[int]]:
    """Null space {x : R x = 0} of a row list, as vectors, plus the free columns.

    The returned basis is the standard one read off the RREF: vector ``t`` has a
    one in free column ``free[t]`` and zeros in the other free columns, so the
    coordinates of any kernel vector are its entries at the free columns.
    """
    work = [list(r) for r in rows]
    piv = _rref_rows(work, ncols, field)
    pivset = set(piv)
    free = [c for c in range(ncols) if c not in pivset]
    out = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for i, c in enumerate(piv):
            a = work[i][f]
            if a:
                v[c] = field.reduce(-a)
        out.append(v)
    return out, free


class SparseSystem:
    """Incremental homogeneous linear system with sparse rows (dict col -> val).

    Rows are kept fully reduced, which keeps the final null-space extraction
    cheap; the systems arising from intertwining equations are very sparse.
    """

    def __init__(self, ncols: int, field: Field):
        self.ncols = ncols
        self.field = field
        self.piv: dict[int, dict] = {}

    def add(self, row: dict):
        f = self.field
        p = f.p
        row = {c: v for c, v in row.items() if (v % p if p else v)}
        if p:
            row = {c: v % p for c, v in row.items()}
        while True:
            hit = [c for c in row if c in self.piv]
            if not hit:
                break
            for c in hit:
                a = row.get(c)
                if not a:
                    continue
                for cc, vv in self.piv[c].items():
                    nv = row.get(cc, 0) - a * vv
                    if p:
                        nv %= p
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
        if not row:
            return
        c0 = min(row)
        inv = f.inv(row[c0])
        row = {c: (v * inv % p if p else v * inv) for c, v in row.items()}
        for prow in self.piv.values():
            a = prow.get(c0)
            if a:
                for cc, vv in row.items():
                    nv = prow.get(cc, 0) - a * vv
                    if p:
                        nv %= p
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        self.piv[c0] = row

    @property
    def rank(self) -> int:
        return len(self.piv)

    def kernel(self) -> tuple[list[list], list[int]]:
        f = self.field
        free = [c for c in range(self.ncols) if c not in self.piv]
        out = []
        for fc in free:
            v = [f.zero] * self.ncols
            v[fc] = f.one
            for c, prow in self.piv.items():
                a = prow.get(fc)
                if a:
                    v[c] = f.reduce(-a)
            out.append(v)
        return out, free


# -- the three public operations ---------------------------------------------------


def solve(A: Mat, B: Mat) -> Optional[Mat]:
    """Solve ``A X = B``; ``None`` when inconsistent.

    Free variables are set to zero, giving the reduced-echelon particular
    solution.
    """
    if A.nrows != B.nrows:
        raise InputError(f"solve: A has {A.nrows} rows but B has {B.nrows}")
    field = A.field
    aug = A.hstack(B)
    r, piv = aug.rref()
    n = A.ncols
    if any(c >= n for c in piv):
        return None
    X = Mat.zeros(field, n, B.ncols)
    for i, c in enumerate(piv):
        X.rows[c] = list(r.rows[i][n:])
    return X


def subspace(M: Mat, which: str) -> Mat:
    """Basis of ``ker M`` or ``im M`` as the columns of a matrix, in reduced echelon form."""
    field = M.field
    if which == "kernel":
        vecs, _ = kernel_rows(M.rows, M.ncols, field)
        rows, _ = row_echelon(vecs, M.ncols, field)
        n = M.ncols
    elif which == "image":
        rows, _ = row_echelon(M.T.rows, M.nrows, field)
        n = M.nrows
    else:
        raise InputError(f"subspace: unknown selector {which!r}")
    if not rows:
        return Mat._raw(field, [[] for _ in range(n)], 0)
    return Mat._raw(field, rows, n).T


_GRID_LIMIT = 4096
_TRIALS = 6


def _combination(mats: Sequence[Mat], coeffs: Sequence) -> Mat:
    field = mats[0].field
    n = mats[0].nrows
    acc = [[field.zero] * n for _ in range(n)]
    for c, m in zip(coeffs, mats):
        if not c:
            continue
        for i in range(n):
            ai, mi = acc[i], m.rows[i]
            for j in range(n):
                if mi[j]:
                    ai[j] += c * mi[j]
    if field.p:
        acc = [[x % field.p for x in r] for r in acc]
    return Mat._raw(field, acc, n)


def _independent(mats: Sequence[Mat]) -> list[Mat]:
    """A sub-list spanning the same space (greedy, order preserving)."""
    if not mats:
        return []
    field = mats[0].field
    n = mats[0].nrows * mats[0].ncols
    basis: list[list] = []
    piv: list[int] = []
    keep = []
    for m in mats:
        flat = [x for r in m.rows for x in r]
        rem = reduce_vector(flat, basis, piv, field)
        if any(rem):
            keep.append(m)
            basis, piv = row_echelon(basis + [rem], n, field)
    return keep


def _check_square_family(mats: Sequence[Mat]):
    if not mats:
        return
    n = mats[0].nrows
    for m in mats:
        if m.nrows != n or m.ncols != n:
            raise InputError("generic_invertibility: matrices must be square of equal size")


def find_invertible_combination(mats: Sequence[Mat], seed: int = 0, tries: int = _TRIALS) -> Optional[list]:
    """Deterministic pseudo-random search for coefficients giving an invertible combination."""
    _check_square_family(mats)
    if not mats:
        return None
    field = mats[0].field
    if mats[0].nrows == 0:
        return [field.zero] * len(mats)
    rng = random.Random(seed)
    for _ in range(tries):
        coeffs = [field.sample(rng) for _ in mats]
        if _combination(mats, coeffs).is_invertible():
            return coeffs
    return None


def _symbolic_det_nonzero(mats: Sequence[Mat]) -> bool:
    from sympy import Rational, symbols
    from sympy.polys.domains import GF, QQ as SQQ
    from sympy.polys.matrices import DomainMatrix

    field = mats[0].field
    n = mats[0].nrows
    dom = (GF(field.p) if field.p else SQQ)[symbols(f"x0:{len(mats)}")]

    def coeff(a):
        return dom.from_sympy(Rational(int(a)) if field.p else Rational(int(a.numerator), int(a.denominator)))

    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            e = dom.zero
            for g, m in zip(dom.gens, mats):
                if m.rows[i][j]:
                    e += coeff(m.rows[i][j]) * g
            row.append(e)
        entries.append(row)
    return not dom.is_zero(DomainMatrix(entries, (n, n), dom).det())


def generic_invertibility(mats: Sequence[Mat]) -> bool:
    """True iff some linear combination of ``mats`` is invertible.

    The determinant of ``sum x_k M_k`` is a polynomial of total degree at most
    ``n``.  Deterministic sample points settle the common positive case.  The
    negative case is settled exactly: by exhausting a grid ``S^h`` with
    ``|S| = n + 1`` when that grid is small, and otherwise by expanding the
    determinant symbolically.
    """
    mats = list(mats)
    _check_square_family(mats)
    if not mats:
        return False
    field = mats[0].field
    n = mats[0].nrows
    if n == 0:
        return True
    mats = _independent(mats)
    if not mats:
        return False
    # a common left or right kernel vector rules out invertibility outright
    stacked = Mat._raw(field, [x for m in mats for x in m.copy_rows()], n)
    if stacked.rank() < n:
        return False
    side = Mat._raw(field, [r for m in mats for r in m.T.copy_rows()], n)
    if side.rank() < n:
        return False
    if find_invertible_combination(mats) is not None:
        return True
    h = len(mats)
    if field.p and field.p <= n:
        # a grid larger than the degree does not exist inside F_p; decide over F_p itself
        if field.p ** h <= _GRID_LIMIT * 16:
            return any(_combination(mats, pt).is_invertible()
                       for pt in itertools.product(range(field.p), repeat=h))
        return _symbolic_det_nonzero(mats)
    if (n + 1) ** h <= _GRID_LIMIT:
        pts = [field(i) for i in range(n + 1)]
        return any(_combination(mats, pt).is_invertible() for pt in itertools.product(pts, repeat=h))
    return _symbolic_det_nonzero(mats)
