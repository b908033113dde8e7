import functools

import pytest

from abcat.algebra import nakayama, path_algebra_linear
from abcat.lincat import full_subcategory, make_category, quotient_by
from abcat.nakayama import enumerate_indecomposables


@functools.lru_cache(maxsize=None)
def family(n):
    """Kupisch [2n+1, 2n+2] cyclic algebra with its module category and both quotients by T."""
    alg = nakayama([2 * n + 1, 2 * n + 2], "cyclic")
    mods = enumerate_indecomposables(alg)
    T = ["[1]_1", f"[1]_{2 * n + 2}"]
    perp = [f"[1]_{l}" for l in range(1, 2 * n + 3)]
    A = make_category(alg, mods, name="mod")
    Abar = quotient_by(A, T, name="mod/[T]")
    Xbar = quotient_by(full_subcategory(A, perp), T, name="perp/[T]")
    return {"alg": alg, "mods": mods, "T": T, "perp": perp, "A": A, "Abar": Abar, "Xbar": Xbar,
            "by": {M.label: M for M in mods}}


@pytest.fixture(scope="session")
def fam():
    return family


@pytest.fixture(scope="session")
def a3():
    alg = path_algebra_linear(3)
    return alg, enumerate_indecomposables(alg)


def random_presentation(Q, rng, max_tries=50):
    """Cokernel of a random map of representables over Q, retried until nonzero."""
    from abcat.lincat import presentation_module
    F = Q.alg.field
    labs = Q.labels
    for _ in range(max_tries):
        src = [rng.choice(labs) for _ in range(rng.randint(1, 2))]
        tgt = [rng.choice(labs) for _ in range(rng.randint(1, 2))]
        mat = [[[F(rng.randint(-2, 2)) for _ in range(Q.hom_dim(s, t))] for t in tgt] for s in src]
        Fm = presentation_module(Q, src, tgt, mat)
        if not Fm.carrier.is_zero():
            return Fm
    raise RuntimeError("no nonzero presentation found")


def random_b_epi(C, B, rng):
    """``0 -> N -> M ⊕ B_L -> L`` with ``(α β)``, α random and β a right B-approximation."""
    from abcat.modules import Morphism, combine, direct_sum, from_sum, hom_space, kernel, right_approximation
    F = C.alg.field
    M = C.module(rng.choice(C.labels))
    L = C.module(rng.choice(C.labels))
    H = hom_space(M, L)
    alpha = combine(H.basis, [F(rng.randint(-2, 2)) for _ in H.basis], M, L) if H.dim else Morphism.zero(M, L)
    beta = right_approximation([C.module(b) for b in B], L)
    ds = direct_sum([M, beta.sum.module], C.alg)
    f = from_sum(ds, L, [alpha, beta.map])
    _, g = kernel(f)
    return g, f


@functools.lru_cache(maxsize=None)
def b_instances():
    """(name, full category, B labels, quotient) for the prop-3.4/3.5 style suites."""
    from abcat.modules import is_projective
    out = []
    for n in (1, 2):
        f = family(n)
        out.append((f"n={n}", f["A"], tuple(f["T"]), f["Abar"]))
    alg = path_algebra_linear(3)
    mods = enumerate_indecomposables(alg)
    A = make_category(alg, mods, name="mod")
    B = tuple(M.label for M in mods if is_projective(M))
    out.append(("A3", A, B, quotient_by(A, B, name="stable")))
    return out


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        ok, detail = results[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
