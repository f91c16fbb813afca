import pytest
from hypothesis import given, settings, strategies as st

from hh2.presentation import parse_presentation
from hh2.quotient import QuotientError, build_quotient, relation_in_ideal

LOOP = "field rational\nvertices 1\narrows x: 1 -> 1\nrelations\n  x.x.x\n"
TWO = """field rational
vertices 1 2
arrows a: 1 -> 2  b: 2 -> 1
relations
  a.b.a
  b.a.b
"""


def test_truncated_polynomial():
    A = build_quotient(parse_presentation(LOOP))
    assert A.dimension == 3
    assert A.nilpotency == 3
    x = A.quiver.make_path(["x"])
    assert A.mul_paths(x, (0, 0)) == {}


def test_two_cycle_dimension():
    A = build_quotient(parse_presentation(TWO))
    assert A.dimension == 6
    assert A.nontip_count_by_pair() == {("1", "1"): 2, ("1", "2"): 1, ("2", "1"): 1, ("2", "2"): 2}


def test_not_admissible():
    p = parse_presentation("field rational\nvertices 1\narrows x: 1 -> 1  y: 1 -> 1\nrelations\n  x.y - y.x\n")
    with pytest.raises(QuotientError):
        build_quotient(p, cap=5)


def test_commutativity_normal_form():
    p = parse_presentation("field rational\nvertices 1\narrows x: 1 -> 1  y: 1 -> 1\n"
                           "relations\n  x.y - y.x\n  x.x\n  y.y\n")
    A = build_quotient(p)
    assert A.dimension == 4
    xy = A.quiver.make_path(["x", "y"])
    yx = A.quiver.make_path(["y", "x"])
    assert A.path_nf(xy) == A.path_nf(yx)


def test_relation_in_ideal():
    p = parse_presentation(TWO)
    A = build_quotient(p)
    r = A.quiver.make_path(["a", "b", "a", "b"])
    from hh2.quiver import FreeElement
    elem = FreeElement.path(A.quiver, A.field, r)
    assert relation_in_ideal(p, elem, p.relations)
    assert not relation_in_ideal(p, p.relations[0], p.relations[1:])


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 6), st.integers(1, 4))
def test_nakayama_dimension(k, verts):
    # cyclic quiver with every path of length k zero: dimension verts * k
    vs = " ".join(str(i) for i in range(verts))
    arrows = "  ".join(f"a{i}: {i} -> {(i + 1) % verts}" for i in range(verts))
    rels = []
    for i in range(verts):
        rels.append(".".join(f"a{(i + j) % verts}" for j in range(k)))
    if k < 2:
        return
    text = f"field rational\nvertices {vs}\narrows {arrows}\nrelations\n" + "\n".join(rels) + "\n"
    A = build_quotient(parse_presentation(text))
    assert A.dimension == verts * k


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 5))
def test_multiplication_associative(k):
    p = parse_presentation(f"field rational\nvertices 1\narrows x: 1 -> 1  y: 1 -> 1\nrelations\n"
                           f"  x.y - y.x\n  {'.'.join(['x'] * k)}\n  y.y\n")
    A = build_quotient(p)
    basis = A.nontips
    for u in basis:
        for v in basis:
            for w in basis:
                left = A.multiply(A.mul_paths(u, v), {w: A.field.one})
                right = A.multiply({u: A.field.one}, A.mul_paths(v, w))
                assert left == right
