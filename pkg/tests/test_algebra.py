import pytest

from abcat.algebra import ValidationError, build_algebra, nakayama, path_algebra_linear
from abcat.linalg import Field, InputError


def test_nakayama_dimension_is_kupisch_sum():
    for kup, shape in (([3, 4], "cyclic"), ([5, 6], "cyclic"), ([3, 3], "cyclic"), ([2, 2, 1], "linear")):
        alg = nakayama(kup, shape)
        assert alg.dim == sum(kup)
        assert alg.nvert == len(kup)
        alg.validate()


def test_linear_path_algebra_a4():
    alg = path_algebra_linear(4)
    assert alg.dim == 10
    assert len(alg.arrows) == 3


@pytest.mark.parametrize("kup,shape,msg", [
    ([0, 2], "cyclic", ">= 1"),
    ([4, 2], "cyclic", "exceeds"),
    ([2, 2], "linear", "last kupisch"),
    ([3, 1], "linear", "exceeds"),
    ([2, 2], "moebius", "unknown"),
    ([], "cyclic", "nonempty"),
])
def test_nakayama_rejects(kup, shape, msg):
    with pytest.raises(InputError, match=msg):
        nakayama(kup, shape)


def test_build_algebra_a2():
    alg = build_algebra(Field(0), ["e1", "e2", "a"], ["e1", "e2"], {
        ("e1", "e1"): {"e1": 1}, ("e2", "e2"): {"e2": 1},
        ("e1", "a"): {"a": 1}, ("a", "e2"): {"a": 1}})
    assert alg.dim == 3
    assert alg.radical == (2,)


def test_build_algebra_non_homogeneous():
    with pytest.raises(ValidationError, match="homogeneous"):
        build_algebra(Field(0), ["e1", "e2", "a"], ["e1", "e2"], {
            ("e1", "e1"): {"e1": 1}, ("e2", "e2"): {"e2": 1}, ("e1", "a"): {"a": 1}})


def test_build_algebra_non_orthogonal():
    with pytest.raises(ValidationError):
        build_algebra(Field(0), ["e1", "e2"], ["e1", "e2"], {
            ("e1", "e1"): {"e1": 1}, ("e2", "e2"): {"e2": 1}, ("e1", "e2"): {"e1": 1}})


def test_build_algebra_non_nilpotent_radical():
    # a loop x with x*x = x at a single vertex
    with pytest.raises(ValidationError):
        build_algebra(Field(0), ["e", "x"], ["e"], {
            ("e", "e"): {"e": 1}, ("e", "x"): {"x": 1}, ("x", "e"): {"x": 1}, ("x", "x"): {"x": 1}})


def test_opposite_is_involutive():
    alg = nakayama([3, 4])
    op = alg.opposite()
    assert op.dim == alg.dim
    assert op.opposite() is alg or op.opposite().dim == alg.dim
    op.validate()


def test_products_over_fp():
    alg = nakayama([3, 4], field=Field(3))
    alg.validate()
    assert alg.field.p == 3
