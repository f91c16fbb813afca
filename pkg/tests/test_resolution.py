import pytest

from hh2.families import acceptance_grid, make_family, vanishing_grid
from hh2.presentation import parse_presentation
from hh2.quotient import build_quotient
from hh2.resolution import (build_front, check_exactness, compute_f3, make_relation_set,
                            minimalize_relations)

from conftest import pipeline


@pytest.mark.parametrize("spec", acceptance_grid() + vanishing_grid(), ids=str)
def test_front_is_exact(spec):
    _, A, _, front, _ = pipeline(spec)
    rep = check_exactness(front)
    assert rep.ok, rep.failures


@pytest.mark.parametrize("spec", acceptance_grid(), ids=str)
def test_f3_elements_balance(spec):
    _, A, f2, front, _ = pipeline(spec)
    for g in front.f3:
        assert g.right_sum(f2) == g.y
        if g.exact:
            assert g.left_sum(f2) == g.y
        else:
            assert not A.normal_form((g.left_sum(f2) - g.y).terms)
        assert g.y.is_uniform()


def test_truncated_polynomial_front():
    p = parse_presentation("field rational\nvertices 1\narrows x: 1 -> 1\nrelations\n  x.x.x\n")
    A = build_quotient(p)
    f2 = minimalize_relations(A, p.relations, p.labels)
    f3 = compute_f3(A, f2)
    assert len(f3) == 1
    assert f3[0].y.to_str() == "x.x.x.x"
    assert check_exactness(build_front(A, f2, f3)).ok


def test_minimalize_drops_consequence():
    p = parse_presentation("field rational\nvertices 1\narrows x: 1 -> 1\nrelations\n"
                           "  x.x.x.x\n  x.x.x\n")
    A = build_quotient(p)
    f2 = minimalize_relations(A, p.relations, p.labels)
    assert f2.labels == ["r2"]


def test_non_minimal_front_still_exact():
    # the printed NonStd(2) set carries a redundant generator; the front over it is still exact
    pres = make_family("nonstd:m=2")
    A = build_quotient(pres)
    f2 = make_relation_set(pres.relations, pres.labels)
    front = build_front(A, f2, minimal=False)
    assert check_exactness(front).ok


def test_summand_counts_d5():
    _, _, f2, front, _ = pipeline(acceptance_grid()[1])
    assert [len(s) for s in front.summands] == [5, 7, len(f2), len(front.f3)]
