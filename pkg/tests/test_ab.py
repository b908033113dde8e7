import random

import pytest
from hypothesis import given, settings, strategies as st

from abcat.ab import (NotGorensteinError, SubcatSpec, adjoint_R, check_conditions, cotilting_check,
                      extension_middles, gp_mapping_cone_ab3, ig_certificate, injectives_of, is_b_epi, perp,
                      projectives_of, length_two_resolution, ladder_resolution, relative_syzygy, right_approx,
                      subcat, syzygy_stabilization, torsion_ab_check)
from abcat.algebra import nakayama, path_algebra_linear
from abcat.linalg import InputError
from abcat.lincat import functor_module, hom_functor, hom_functor_map, minimal_resolution
from abcat.modules import (cokernel, ext_dim, hom_basis, image, in_add, is_right_approximation, iso_test,
                           kernel, syzygy)
from abcat.nakayama import enumerate_indecomposables

from conftest import b_instances, family, random_b_epi, random_presentation


def _spec(f, labels, name="S"):
    return subcat(f["mods"], labels, name)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_perp_matches_direct_ext_scan(fam, n):
    f = fam(n)
    T = _spec(f, f["T"], "T")
    X = perp(f["alg"], T, f["mods"])
    assert X.labels == f["perp"]
    # independent scan: Ext^i(M, T) for i up to the number of indecomposables
    direct = [M.label for M in f["mods"]
              if all(not ext_dim(i, M, t) for t in T.members for i in range(1, 4))]
    assert direct == f["perp"]


@pytest.mark.parametrize("n", [1, 2])
def test_family_T_is_cotilting(fam, n):
    f = fam(n)
    rep = cotilting_check(f["alg"], _spec(f, f["T"]), f["mods"])
    assert rep.ok and rep.id_bound == 1
    assert rep.ids == {"[1]_1": 1, f"[1]_{2 * n + 2}": 0}


def test_non_cotilting_detected(fam):
    f = fam(1)
    # the simple at vertex 2 has infinite injective dimension
    rep = cotilting_check(f["alg"], _spec(f, ["[2]_1"]), f["mods"])
    assert not rep.ok and rep.id_bound is None
    # [1]_1 alone: self-orthogonal of id 1 but it does not coresolve its perp
    rep = cotilting_check(f["alg"], _spec(f, ["[1]_1"]), f["mods"])
    assert not rep.ok and rep.failures


def test_perp_needs_bound_for_infinite_id(fam):
    f = fam(1)
    with pytest.raises(InputError):
        perp(f["alg"], _spec(f, ["[2]_1"]), f["mods"])
    assert perp(f["alg"], _spec(f, ["[2]_1"]), f["mods"], bound=1).labels


def test_right_approx_is_approximation(fam):
    f = fam(2)
    X = _spec(f, f["perp"])
    for M in f["mods"]:
        ap = right_approx(X, M)
        assert is_right_approximation(ap.map, X.members)
        assert ap.map.is_surjective()  # X contains the projectives


def test_relative_syzygy_over_projectives_is_syzygy(fam):
    f = fam(1)
    P = projectives_of(f["alg"], f["mods"])
    assert P.labels == ["[1]_3", "[1]_4"]
    assert injectives_of(f["alg"], f["mods"]).labels == ["[1]_4", "[2]_3"]
    for M in f["mods"]:
        a, b = relative_syzygy(P, M), syzygy(M)
        assert a.dim == b.dim and (a.is_zero() or iso_test(a, b))


@pytest.mark.parametrize("n", [1, 2])
def test_cotilting_triple_conditions(fam, n):
    f = fam(n)
    A = SubcatSpec(list(f["mods"]), "mod", complete=True)
    rep = check_conditions(A, _spec(f, f["perp"]), _spec(f, f["T"]))
    assert rep.ok
    assert rep.ab1["status"] == "vacuous"
    assert rep.ab2["status"] == "holds" and rep.ab2["complete"]
    assert all(t.ok for t in rep.ab3["triples"])


def test_ext_orthogonality_violation_reported(fam):
    f = fam(1)
    A = SubcatSpec(list(f["mods"]), "mod", complete=True)
    # X = all modules, omega = T: [2]_1 has Ext^1 into [1]_1
    rep = check_conditions(A, _spec(f, [M.label for M in f["mods"]]), _spec(f, f["T"]))
    assert not rep.ok
    assert rep.ab2["status"] == "violation"
    assert rep.ab2["witness"][1] == "[1]_1"


def test_chain_must_be_nested(fam):
    f = fam(1)
    A = SubcatSpec(list(f["mods"]), "mod", complete=True)
    with pytest.raises(InputError, match="not in X"):
        check_conditions(A, _spec(f, ["[1]_2"]), _spec(f, f["T"]))


def test_kernel_closure_on_family(fam):
    f = fam(1)
    A = _spec(f, f["perp"], "perp")
    rep = check_conditions(A, A, _spec(f, f["T"]))
    assert rep.ab1["status"] == "certified on family" and rep.ab1["tested"] > 0


@pytest.mark.parametrize("n", [1, 2])
def test_adjoint_counit_bijective(fam, n):
    f = fam(n)
    X, w = _spec(f, f["perp"]), _spec(f, f["T"])
    for M in f["mods"]:
        rep = adjoint_R(X, w, M)
        assert rep.ok, M.label
        if M.label in f["perp"]:
            # X-objects are their own approximations up to summands in omega
            assert rep.dims[M.label][0] == rep.dims[M.label][1]


def test_syzygy_stabilization(fam):
    f = fam(1)
    X = _spec(f, f["perp"])
    for M in f["mods"]:
        k = syzygy_stabilization(X, M, 3)
        assert k is not None
        assert (k == 0) == (M.label in f["perp"])


def test_extension_middles_count_matches_ext(fam):
    f = fam(1)
    for M in f["mods"]:
        for N in f["mods"]:
            mids = extension_middles(M, N)
            assert len(mids) == ext_dim(1, M, N)
            for E in mids:
                assert E.dim == M.dim + N.dim


def _gen(alg, mods, M):
    # Gen(M): indecomposable quotients of sums of M, via images of maps from M
    out = []
    for Y in mods:
        if any(iso_test(image(h)[0], Y) for h in hom_basis(M, Y) if image(h)[0].dim == Y.dim):
            out.append(Y.label)
    return out


def test_torsion_classes_of_a3(a3):
    alg, mods = a3
    w = SubcatSpec([], "zero")
    for M in mods:
        labels = _gen(alg, mods, M)
        X = subcat(mods, labels, f"Gen({M.label})")
        rep = torsion_ab_check(mods, X, w)
        assert rep.quotient_closed and rep.extension_closed, labels
        assert rep.ok


def test_torsion_check_rejects_non_torsion(a3):
    alg, mods = a3
    # the projective-injective alone is not closed under quotients
    X = subcat(mods, ["[3]_3"], "P1")
    rep = torsion_ab_check(mods, X, SubcatSpec([], "zero"))
    assert not rep.quotient_closed and rep.witness[0] == "quotient"


def test_ig_certificate_values():
    assert ig_certificate(nakayama([3, 4])) == {"ig": False, "id_right": "infinite", "id_left": "infinite"}
    assert ig_certificate(nakayama([3, 3])) == {"ig": True, "id_right": 0, "id_left": 0}
    assert ig_certificate(nakayama([2, 2, 1], "linear")) == {"ig": True, "id_right": 2, "id_left": 2}


def test_mapping_cone_refuses_non_gorenstein(fam):
    f = fam(1)
    with pytest.raises(NotGorensteinError) as exc:
        gp_mapping_cone_ab3(f["alg"], f["mods"][0], 3)
    assert exc.value.report["ig"] is False


@pytest.mark.parametrize("kup", [[2, 3], [3, 3, 4], [2, 2, 3]])
def test_mapping_cone_approximations(kup):
    alg = nakayama(kup)
    mods = enumerate_indecomposables(alg)
    d = ig_certificate(alg)["id_right"]
    with pytest.raises(InputError):
        gp_mapping_cone_ab3(alg, mods[0], d - 1)
    for M in mods:
        res = gp_mapping_cone_ab3(alg, M, d, universe=mods)
        assert res.cone.is_exact()
        assert res.triple.ok and res.triple.surjective


@pytest.mark.parametrize("idx", [0, 1, 2])
def test_length_two_random_presentations(idx):
    name, A, B, Q = b_instances()[idx]
    rng = random.Random(100 + idx)
    for _ in range(4):
        F = random_presentation(Q, rng)
        r = length_two_resolution(A, list(B), F)
        assert r.ok and r.length <= 2
        assert r.minimal.pd != "infinite" and r.minimal.pd <= 2


def test_length_two_rejects_functor_not_vanishing(fam):
    f = fam(1)
    A = f["A"]
    F = functor_module(A, "simple", f["T"][0])
    with pytest.raises(InputError, match="does not vanish"):
        length_two_resolution(A, f["T"], F)


@pytest.mark.parametrize("idx", [0, 1, 2])
def test_ladder_random_b_epis(idx):
    name, A, B, Q = b_instances()[idx]
    rng = random.Random(200 + idx)
    for _ in range(4):
        g, f = random_b_epi(A, B, rng)
        tr = ladder_resolution(A, list(B), g, f, stages=6, Q=Q)
        assert tr.status in ("finite", "truncated") and tr.exact()
        if tr.cokernel.is_zero():
            continue
        from abcat.lincat import FunctorModule
        mr = minimal_resolution(FunctorModule(tr.cokernel, ("ladder",), Q), cutoff=3)
        assert mr.is_exact()
        # both complexes present the same functor
        ladder_coker = cokernel(tr.maps[0])[0] if tr.maps else tr.functors[0].carrier
        direct_coker, _ = cokernel(mr.differential(1)) if len(mr.terms) > 1 else (mr.covers[0].source, None)
        assert iso_test(ladder_coker, direct_coker)


def test_ladder_rejects_non_b_epi(fam):
    f = fam(1)
    A = f["A"]
    L = A.module("[1]_2")
    # the zero map out of [1]_2 does not lift maps from T
    from abcat.modules import Morphism
    z = Morphism.zero(A.module("[2]_2"), L)
    assert is_b_epi(z, [A.module(t) for t in f["T"]]) is not None
    K, g = kernel(z)
    with pytest.raises(InputError, match="B-epimorphism"):
        ladder_resolution(A, f["T"], g, z)
