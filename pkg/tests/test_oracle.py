import pytest

from hh2.families import acceptance_grid
from hh2.oracle import OracleLimitError, bar_complex, bar_hh
from hh2.presentation import parse_presentation
from hh2.quotient import build_quotient
from hh2.linalg import Matrix

from conftest import pipeline


def algebra(text):
    return build_quotient(parse_presentation(text))


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_truncated_polynomial_char0(k):
    # HH^2 of K[x]/(x^k) is K[x]/(x^k, k x^(k-1)), of dimension k - 1
    A = algebra(f"field rational\nvertices 1\narrows x: 1 -> 1\nrelations\n  {'.'.join(['x'] * k)}\n")
    r = bar_hh(A)
    assert (r.hh0, r.hh1, r.hh2) == (k, k - 1, k - 1)


def test_truncated_polynomial_char_divides():
    # in characteristic p with p | k the derivative vanishes and HH^2 is everything
    A = algebra("field prime 3\nvertices 1\narrows x: 1 -> 1\nrelations\n  x.x.x\n")
    assert bar_hh(A).hh2 == 3


def test_differentials_square_to_zero():
    A = pipeline(acceptance_grid()[0])[1]
    _, deltas = bar_complex(A)
    for d0, d1 in zip(deltas, deltas[1:]):
        assert (d1 @ d0).is_zero()


def test_limit():
    A = pipeline(acceptance_grid()[0])[1]
    with pytest.raises(OracleLimitError):
        bar_hh(A, limit=5)


@pytest.mark.parametrize("spec", [s for s in acceptance_grid() if pipeline(s)[1].dimension <= 20], ids=str)
def test_agrees_with_resolution(spec):
    *_, rep = pipeline(spec)
    r = bar_hh(pipeline(spec)[1])
    assert (r.hh0, r.hh1, r.hh2) == (rep.hh0, rep.hh1, rep.hh2)
