"""Uniserial modules over Nakayama algebras and the [m]_l labelling.

``[m]_l`` is the indecomposable with socle at vertex ``m`` and Loewy length ``l``.
Its top sits at ``t = m - (l - 1)`` (mod the number of vertices); it is the
quotient of ``e_t A`` by the paths of length ``>= l``.
"""

from __future__ import annotations

from typing import Sequence

from .algebra import Algebra
from .linalg import InputError, Mat
from .modules import (Module, iso_test, loewy_length, projective, quotient, radical_submodule,
                      socle_dims)


class UnsupportedError(InputError):
    """Operation needs a Nakayama algebra (or an explicit module list)."""


def _data(alg: Algebra):
    nk = alg.nakayama
    if nk is None:
        raise UnsupportedError(f"{alg!r} is not a Nakayama algebra built by nakayama(); "
                               "supply an explicit list of indecomposable modules instead")
    return nk


def uniserial_label(alg: Algebra, m: int, l: int) -> str:
    return f"[{alg.vertex_labels[m]}]_{l}"


def uniserial(alg: Algebra, m: int, l: int) -> Module:
    """``[m]_l`` for a vertex index ``m`` (0-based) and length ``l >= 1``."""
    nk = _data(alg)
    v = len(nk.kupisch)
    t = m - (l - 1)
    if nk.shape == "linear":
        if t < 0:
            raise InputError(f"no module with socle {m + 1} and length {l}")
    else:
        t %= v
    if l < 1 or l > nk.kupisch[t]:
        raise InputError(f"no module with socle {alg.vertex_labels[m]} and length {l}")
    F = alg.field
    # paths (t, L), L < l; path (t, L) ends at vertex t + L
    ends = [(t + L) % v for L in range(l)]
    dims = [0] * v
    pos = {}
    for L, k in enumerate(ends):
        pos[L] = dims[k]
        dims[k] += 1
    blocks = {}
    for b in alg.radical:
        j, M = alg.src[b], alg.path_length[b]
        k2 = alg.tgt[b]
        rows = [[F.zero] * dims[k2] for _ in range(dims[j])]
        hit = False
        for L, k in enumerate(ends):
            if k == j and L + M < l:
                rows[pos[L]][pos[L + M]] = F.one
                hit = True
        if hit:
            blocks[b] = Mat._raw(F, rows, dims[k2])
    return Module(alg, dims, blocks, label=uniserial_label(alg, m, l))


def enumerate_indecomposables(alg: Algebra) -> list[Module]:
    """All ``[m]_l``, ordered by socle vertex then length."""
    nk = _data(alg)
    v = len(nk.kupisch)
    out = []
    for m in range(v):
        for l in range(1, max(nk.kupisch) + 1):
            t = m - (l - 1)
            if nk.shape == "linear":
                if t < 0:
                    continue
            else:
                t %= v
            if l <= nk.kupisch[t]:
                out.append(uniserial(alg, m, l))
    return out


def describe(M: Module) -> tuple[int, int]:
    """(socle vertex, Loewy length) of a uniserial module, computed from the module itself."""
    soc = socle_dims(M)
    if sum(soc) != 1:
        raise InputError(f"{M!r} does not have a simple socle")
    return soc.index(1), loewy_length(M)


def brute_force_indecomposables(alg: Algebra) -> list[Module]:
    """Independent enumeration: every quotient ``P / rad^k P`` of an indecomposable
    projective, deduplicated by exact isomorphism tests."""
    found: list[Module] = []
    for t in range(alg.nvert):
        P = projective(alg, t)
        # rad^k P as submodules of P, via composed inclusions
        subs = []
        R = P
        inc_total = None
        while not R.is_zero():
            R, inc = radical_submodule(R)
            inc_total = inc if inc_total is None else inc_total @ inc
            subs.append(inc_total)
        for inc in subs:
            Q, _ = quotient(P, [b.rows for b in inc.blocks])
            if Q.is_zero():
                continue
            if not any(iso_test(Q, X) for X in found):
                found.append(Q)
    return found
