import pytest

from abcat.arquiver import Quiver, ar_quiver, category_quiver
from abcat.dot import emit_dot
from abcat.algebra import nakayama
from abcat.singeq import family_algebra

from conftest import family


def _expected_arrows(n):
    """Irreducible maps of the two-vertex cyclic family by hand: the inclusion [m]_l -> [m]_{l+1}
    and the quotient by the socle [m]_l -> [m']_{l-1}, m' the other vertex."""
    kup = {1: 2 * n + 2, 2: 2 * n + 1}  # largest length with socle at each vertex
    have = {(m, l) for m in (1, 2) for l in range(1, kup[m] + 1)}
    out = set()
    for m, l in have:
        if (m, l + 1) in have:
            out.add((f"[{m}]_{l}", f"[{m}]_{l + 1}"))
        if l >= 2:
            out.add((f"[{m}]_{l}", f"[{3 - m}]_{l - 1}"))
    return out


@pytest.mark.parametrize("n", [1, 2])
def test_ar_quiver_matches_hand_rules(n):
    q = ar_quiver(family_algebra(n))
    assert len(q.vertices) == 4 * n + 3
    assert set(q.arrows) == _expected_arrows(n)
    assert set(q.arrows.values()) == {1}
    # τ swaps the socle vertex and keeps the length on non-projectives
    for a, b in q.tau:
        assert a[1] != b[1] and a.split("_")[1] == b.split("_")[1]


def test_dot_isolated_vertices():
    text = emit_dot(Quiver("iso", ["a", "b"]))
    assert text.count(";") == 4  # rankdir, node style, two vertices
    assert "->" not in text


def test_dot_family_n1():
    text = emit_dot(ar_quiver(family_algebra(1), name="n1"))
    assert text.startswith('digraph "n1" {')
    assert text.rstrip().endswith("}")
    nodes = [ln for ln in text.splitlines() if ln.strip().startswith('"') and "->" not in ln]
    assert len(nodes) == 7
    assert text.count('[label="1"]') == 10
    # five τ-pairs, two of them mutual, give three undirected mesh edges
    assert len(ar_quiver(family_algebra(1)).tau) == 5
    assert text.count("style=dashed") == 3


def test_dot_quotient_perp_n2():
    q = category_quiver(family(2)["Xbar"], "perp/[T]")
    text = emit_dot(q)
    assert q.vertices == ["[1]_2", "[1]_3", "[1]_4", "[1]_5"]
    assert sum(1 for ln in text.splitlines() if ln.strip().startswith('"') and "->" not in ln) == 4


def test_dot_deterministic_and_escaped():
    a = emit_dot(ar_quiver(family_algebra(2)))
    b = emit_dot(ar_quiver(family_algebra(2)))
    assert a == b
    assert emit_dot(Quiver('we"ird', ['x"y'])).count('\\"') == 2
