import pytest

from hh2.linalg import Field
from hh2.quiver import FreeElement, Quiver, path_length, vertex_path

QQ = Field(0)


@pytest.fixture
def cyc():
    return Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])


def test_paths_compose_left_to_right(cyc):
    ab = cyc.make_path(["a", "b"])
    assert cyc.origin(ab) == 0 and cyc.terminus(ab) == 0
    assert cyc.path_str(ab) == "a.b"
    with pytest.raises(ValueError):
        cyc.make_path(["a", "a"])


def test_trivial_paths(cyc):
    e = vertex_path(1)
    assert path_length(e) == 0
    assert cyc.path_str(e) == "e_2"
    assert cyc.path_by_name("2") == e


def test_default_order_is_declaration_order_descending(cyc):
    a, b = (0,), (1,)
    assert cyc.lenlex_less(b, a)
    cyc.set_order(["b", "a"])
    assert cyc.lenlex_less(a, b)


def test_lenlex_length_first(cyc):
    assert cyc.lenlex_less((0,), (1, 0))


def test_set_order_must_be_complete(cyc):
    with pytest.raises(ValueError):
        cyc.set_order(["a"])


def test_duplicate_names_rejected():
    with pytest.raises(ValueError):
        Quiver(["1", "1"], [])
    with pytest.raises(ValueError):
        Quiver(["1"], [("a", "1", "2")])


def test_paths_of_length(cyc):
    assert len(cyc.paths_of_length(3)) == 2
    assert len(cyc.enumerate_paths(2)) == 2 + 2 + 2


def test_free_element_arithmetic(cyc):
    a = FreeElement.path(cyc, QQ, cyc.make_path(["a"]))
    b = FreeElement.path(cyc, QQ, cyc.make_path(["b"]))
    ab = a * b
    assert ab.to_str() == "a.b"
    assert (ab - ab).is_zero()
    assert not (a * a).terms
    x = ab + (b * a).scale(2)
    assert not x.is_uniform()
