import pytest
from hypothesis import given, strategies as st

from pinbrauer.core.diagrams import (
    ALIASES,
    DiagramExpr,
    GBDiagram,
    count_gb,
    diagram_from_parts,
    enumerate_gb,
    identity_diagram,
    permutation_diagram,
    read_diagram,
    relabel,
    resolve_diagram,
    temperley_lieb_generator,
    through_count,
)
from pinbrauer.core.errors import InvalidInputError
from pinbrauer.core.scalars import QSqrt2, X


@st.composite
def diagrams(draw, max_k=3, max_l=3):
    k = draw(st.integers(min_value=0, max_value=max_k))
    l = draw(st.integers(min_value=0, max_value=max_l))
    return draw(st.sampled_from(enumerate_gb(k, l)))


@pytest.mark.parametrize("k,l", [(0, 0), (1, 0), (2, 1), (2, 2), (3, 2), (3, 3)])
def test_count_matches_enumeration(k, l):
    found = enumerate_gb(k, l)
    assert len(found) == count_gb(k, l)
    assert len(set(found)) == len(found)
    assert found == sorted(found)


def test_known_counts():
    assert count_gb(2, 2) == 10
    assert count_gb(3, 3) == 76
    assert count_gb(1, 0) == 1


def test_vertex_validation():
    with pytest.raises(InvalidInputError):
        GBDiagram(1, 1, ((("U", 1), ("L", 2)),))
    with pytest.raises(InvalidInputError):
        GBDiagram(2, 1, ((("U", 1), ("L", 1)), (("U", 2), ("L", 1))))
    with pytest.raises(InvalidInputError):
        GBDiagram.from_dict({"k": 1, "l": 1, "edges": [["U1", "X1"]]})
    with pytest.raises(InvalidInputError):
        GBDiagram.from_dict({"l": 1})


def test_edges_are_normalized():
    a = GBDiagram(2, 2, ((("L", 1), ("U", 2)),))
    b = GBDiagram.from_dict({"k": 2, "l": 2, "edges": [["U2", "L1"]]})
    assert a == b
    assert a.to_dict() == {"k": 2, "l": 2, "edges": [["U2", "L1"]]}
    assert str(a) == "y7"


@given(diagrams())
def test_dict_form_inverts(d):
    assert GBDiagram.from_dict(d.to_dict()) == d


def test_reading():
    reading = read_diagram(ALIASES["y8"])
    assert reading.upper_pairs == ((1, 2),)
    assert reading.lower_isolated == (1, 2)
    assert reading.upper_isolated == ()
    d = diagram_from_parts(3, 3, caps=[(1, 3)], through=[(2, 1)])
    reading = read_diagram(d)
    assert reading.through == ((2, 1),)
    assert reading.lower_isolated == (2, 3)
    assert through_count(d) == 1


def test_aliases():
    assert len(set(ALIASES.values())) == 10
    assert set(ALIASES.values()) == set(enumerate_gb(2, 2))
    assert resolve_diagram(" Y3 ") == temperley_lieb_generator(2, 1)
    assert resolve_diagram("y1") == identity_diagram(2)
    assert resolve_diagram("y2") == permutation_diagram([2, 1])
    with pytest.raises(InvalidInputError):
        resolve_diagram("y11")


def test_generators_and_relabel():
    e1 = temperley_lieb_generator(3, 1)
    e2 = temperley_lieb_generator(3, 2)
    assert relabel(e1, [3, 2, 1], [3, 2, 1]) == e2
    with pytest.raises(InvalidInputError):
        temperley_lieb_generator(2, 2)
    with pytest.raises(InvalidInputError):
        permutation_diagram([1, 1])


def test_expression_arithmetic():
    y3, y8 = ALIASES["y3"], ALIASES["y8"]
    a = DiagramExpr(2, 2, {y8: X - 1, y3: 1})
    b = DiagramExpr.of(y3, -1)
    total = a + b
    assert total == DiagramExpr.of(y8, X - 1)
    assert (a - a).is_zero()
    assert str(total) == "(X - 1) y8"
    assert total.specialize(1) == {}
    assert total.specialize(5) == {y8: QSqrt2(4)}
    with pytest.raises(InvalidInputError):
        a + DiagramExpr(2, 2, param="inv")
    with pytest.raises(InvalidInputError):
        a.add_term(identity_diagram(3), 1)


def test_expression_json():
    expr = DiagramExpr(2, 2, {ALIASES["y5"]: X * X - 2, ALIASES["y10"]: QSqrt2(0, 1)})
    data = expr.to_json()
    assert data["param"] == "rt"
    assert {t["alias"] for t in data["terms"]} == {"y5", "y10"}
    assert DiagramExpr.from_json(data) == expr
    wide = DiagramExpr.of(ALIASES["y3"], X * QSqrt2(0, 12) - QSqrt2(10, 15))
    assert DiagramExpr.from_json(wide.to_json()) == wide


def test_expressions_are_unhashable():
    with pytest.raises(TypeError):
        hash(DiagramExpr.of(ALIASES["y1"]))
