import pytest

from pinbrauer.core.algebra import (
    ideal_filtration_check,
    multiply,
    multiply_diagrams,
    structure_constants,
    structure_table_records,
    top_quotient_check,
    top_quotient_dimension,
    unit_check,
)
from pinbrauer.core.diagrams import (
    ALIASES,
    DiagramExpr,
    GBDiagram,
    enumerate_gb,
    identity_diagram,
    permutation_diagram,
    temperley_lieb_generator,
)
from pinbrauer.core.errors import DegreeMismatchError, InvalidInputError
from pinbrauer.core.scalars import X


def test_projection_after_immersion_pair():
    y3, y5, y8 = ALIASES["y3"], ALIASES["y5"], ALIASES["y8"]
    product = multiply_diagrams(y5, y8, "odd")
    assert product == DiagramExpr(2, 2, {y8: X - 1, y3: X - 1})


def test_temperley_lieb_generator_squares_to_loop_value():
    e1 = temperley_lieb_generator(3, 1)
    for family in ("odd", "even"):
        assert multiply_diagrams(e1, e1, family) == DiagramExpr.of(e1, X)


def test_temperley_lieb_braid_like_relation():
    e1 = DiagramExpr.of(temperley_lieb_generator(3, 1))
    e2 = DiagramExpr.of(temperley_lieb_generator(3, 2))
    assert multiply(e1, multiply(e2, e1, "odd"), "odd") == e1


def test_permutations_compose():
    s = permutation_diagram([2, 1, 3])
    t = permutation_diagram([1, 3, 2])
    product = multiply_diagrams(s, t, "odd")
    assert product == DiagramExpr.of(permutation_diagram([2, 3, 1]))
    assert multiply_diagrams(s, s, "even") == DiagramExpr.of(identity_diagram(3))


def test_composition_shapes():
    with pytest.raises(DegreeMismatchError):
        multiply_diagrams(identity_diagram(2), identity_diagram(3), "odd")
    with pytest.raises(InvalidInputError):
        multiply_diagrams(identity_diagram(2), identity_diagram(2), "spin")
    with pytest.raises(InvalidInputError):
        multiply(DiagramExpr.of(identity_diagram(1), param="inv"), DiagramExpr.of(identity_diagram(1)), "odd")


def test_products_of_non_square_diagrams():
    pr = GBDiagram(1, 0)
    inj = GBDiagram(0, 1)
    product = multiply_diagrams(pr, inj, "odd")
    assert (product.k, product.l) == (0, 0)
    assert multiply_diagrams(inj, pr, "odd") == DiagramExpr.of(GBDiagram(1, 1))


@pytest.mark.parametrize("family", ["odd", "even"])
@pytest.mark.parametrize("k", [0, 1, 2])
def test_unit(family, k):
    assert unit_check(k, family)


@pytest.mark.parametrize("family", ["odd", "even"])
def test_filtration_and_top_quotient(family):
    assert ideal_filtration_check(2, family)
    assert top_quotient_check(2, family)
    assert top_quotient_dimension(3) == 6


def test_structure_table():
    table = structure_constants(2, "odd")
    assert len(table) == 100
    records = structure_table_records(table)
    assert len(records) == 100
    assert set(records[0]) == {"left", "right", "product"}
    with pytest.raises(InvalidInputError):
        structure_constants(4, "odd")


def test_structure_table_is_ordered_by_left_then_right():
    basis = sorted(enumerate_gb(1, 1))
    records = structure_table_records(structure_constants(1, "even"))
    assert [(r["left"], r["right"]) for r in records] == [(a.to_dict(), b.to_dict()) for a in basis for b in basis]


@pytest.mark.slow
@pytest.mark.parametrize("family", ["odd", "even"])
def test_associativity_on_two_factors(family):
    basis = [DiagramExpr.of(d) for d in enumerate_gb(2, 2)]
    for a in basis:
        for b in basis:
            ab = multiply(a, b, family)
            for c in basis:
                assert multiply(ab, c, family) == multiply(a, multiply(b, c, family), family)


@pytest.mark.slow
@pytest.mark.parametrize("family", ["odd", "even"])
def test_three_factor_checks(family):
    assert unit_check(3, family)
    assert ideal_filtration_check(3, family)
    assert top_quotient_check(3, family)
