import pytest

from hh2.families import family_spec, vanishing_grid
from hh2.presentation import parse_presentation
from hh2.quotient import build_quotient
from hh2.resolution import build_front, minimalize_relations
from hh2.vanishing import (boundary_set, coboundary_preimages, g2_set, l_layers, preimages_span_hom2,
                           vanishing_check)

from conftest import pipeline


def verdict(spec):
    _, A, f2, _, _ = pipeline(spec)
    return vanishing_check(A, f2)


def test_d4_s2_witnesses():
    spec = family_spec("D", n=4, s=2, t=2)
    v = verdict(spec)
    assert v.applicable
    q = pipeline(spec)[1].quiver
    names = [q.arrows[w.arrow].name for w in v.witnesses]
    assert names == ["g0_0", "a2_0", "g0_1", "a2_1"]


@pytest.mark.parametrize("spec", [s for s in vanishing_grid() if s.get("s") == 1], ids=str)
def test_s1_not_applicable(spec):
    v = verdict(spec)
    assert not v.applicable
    assert v.hypothesis == 1
    assert "dim vΛw > 1" in v.reason


@pytest.mark.parametrize("spec", [s for s in vanishing_grid() if s.get("s") == 2], ids=str)
def test_soundness_and_witness(spec):
    _, A, f2, front, rep = pipeline(spec)
    v = vanishing_check(A, f2)
    if v.applicable:
        assert rep.hh2 == 0
        assert preimages_span_hom2(front, v)
        assert len(coboundary_preimages(front, v)) == len(v.witnesses)


def test_e6_s3_applicable():
    assert verdict(family_spec("E", n=6, s=3, t=1)).applicable


def test_layers():
    X = [(0, 1), (2, 3), (1, 2)]
    an = l_layers(X)
    assert an.layers[0] == [(0, 1), (2, 3)]
    assert an.layers[1] == [(1, 2)]
    assert an.separated
    assert not l_layers([(0, 1), (1, 0)]).separated


def test_hypothesis_two_failure():
    # a one-dimensional corner where the relation is p - 2q
    text = """field rational
vertices 1 2 3 4
arrows a: 1 -> 2  b: 2 -> 4  c: 1 -> 3  d: 3 -> 4
relations
  a.b - 2*c.d
"""
    A = build_quotient(parse_presentation(text))
    p = parse_presentation(text)
    f2 = minimalize_relations(A, p.relations, p.labels)
    v = vanishing_check(A, f2)
    assert not v.applicable and v.hypothesis == 2
    assert boundary_set(f2) == [(0, 3)]
    assert len(g2_set(A, f2)) == 1


def test_commutative_square_applies():
    text = """field rational
vertices 1 2 3 4
arrows a: 1 -> 2  b: 2 -> 4  c: 1 -> 3  d: 3 -> 4
relations
  a.b - c.d
"""
    p = parse_presentation(text)
    A = build_quotient(p)
    f2 = minimalize_relations(A, p.relations, p.labels)
    v = vanishing_check(A, f2)
    assert v.applicable
    from hh2.cohomology import hh_report
    front = build_front(A, f2)
    assert hh_report(A, front).hh2 == 0
    assert preimages_span_hom2(front, v)
