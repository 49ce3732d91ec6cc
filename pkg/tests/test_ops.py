import pytest

from pinbrauer.core import ops
from pinbrauer.core.clifford import SpaceSpec
from pinbrauer.core.diagrams import ALIASES, DiagramExpr, GBDiagram, enumerate_gb
from pinbrauer.core.errors import InvalidInputError, OutOfRangeError, UnsupportedError
from pinbrauer.core.linalg import SparseLinearMap
from pinbrauer.core.scalars import ONE, SQRT2, QSqrt2

RANK_ONE = SpaceSpec(1, 3)
SMALL = [SpaceSpec(1, 2), SpaceSpec(1, 3), SpaceSpec(2, 4), SpaceSpec(2, 5)]
HALF = QSqrt2(1) / 2


def test_tensor_basis_size():
    assert len(ops.tensor_basis(SpaceSpec(2, 5), 2)) == 4 * 25
    assert ops.tensor_basis(RANK_ONE, 0) == (((), ()), ((1,), ()))
    assert ops.tensor_key_label(((1,), (0, -1))) == "[1] x u0' x u1bar"
    with pytest.raises(InvalidInputError):
        ops.tensor_basis(RANK_ONE, -1)


def test_immersion_of_one_leg():
    inj = ops.word_operator(RANK_ONE, 0, 1, inj_legs=(1,))
    assert inj.column(((), ())) == {((1,), (1,)): SQRT2, ((), (0,)): ONE}
    assert inj.column(((1,), ())) == {((1,), (0,)): -ONE, ((), (-1,)): SQRT2}


def test_projection_of_one_leg():
    pr = ops.word_operator(RANK_ONE, 1, 0, pr_legs=(1,))
    assert pr.column(((1,), (1,))) == {((), ()): SQRT2}
    assert pr.column(((), (0,))) == {((), ()): ONE}
    assert pr.column(((1,), (0,))) == {((1,), ()): -ONE}
    assert pr.column(((), (1,))) == {}


def test_single_operators_on_vectors():
    v = {((), (1, -1)): ONE}
    assert ops.cont(RANK_ONE, 2, 1, 2, v) == {((), ()): ONE}
    assert ops.alt((1, 2), v) == {((), (1, -1)): HALF, ((), (-1, 1)): -HALF}
    idv = ops.insert_idV(RANK_ONE, 0, 1, 2, {((), ()): ONE})
    assert idv == {((), (1, -1)): ONE, ((), (0, 0)): ONE, ((), (-1, 1)): ONE}
    assert ops.pr_T(RANK_ONE, 2, (2,), {((), (1, 0)): ONE}) == {((), (1,)): ONE}
    assert ops.inj_T(RANK_ONE, 0, (1,), {((), ()): ONE}) == {((1,), (1,)): SQRT2, ((), (0,)): ONE}
    swapped = ops.partial_perm(RANK_ONE, 2, 2, {1: 2, 2: 1}, v)
    assert swapped == {((), (-1, 1)): ONE}


def test_leg_limits():
    with pytest.raises(OutOfRangeError):
        ops.word_operator(RANK_ONE, 2, 0, pr_legs=(1, 2))
    with pytest.raises(InvalidInputError):
        ops.word_operator(RANK_ONE, 2, 0, pr_legs=(1,))
    with pytest.raises(OutOfRangeError):
        ops.psi_operator(RANK_ONE, 4, 0, upper=(1, 2, 3, 4))
    with pytest.raises(InvalidInputError):
        ops.partial_perm(RANK_ONE, 1, 2, {1: 1}, {})


def test_parity_forced_zero():
    m = ops.psi_operator(RANK_ONE, 0, 1, lower=(1,), target=RANK_ONE)
    assert m.is_zero()
    assert not ops.psi_operator(RANK_ONE, 0, 1, lower=(1,)).is_zero()


@pytest.mark.parametrize("p,q", [(0, 1), (1, 0), (1, 1)])
def test_psi_closed_form_matches_invariant_construction(p, q):
    assert ops.psi_map(RANK_ONE, p, q) == ops.psi_oracle_map(RANK_ONE, p, q)


def test_psi_with_one_output_equals_immersion():
    assert ops.psi_map(RANK_ONE, 0, 1) == ops.word_operator(RANK_ONE, 0, 1, inj_legs=(1,))
    assert ops.psi_map(RANK_ONE, 1, 0) == ops.word_operator(RANK_ONE, 1, 0, pr_legs=(1,))


@pytest.mark.slow
@pytest.mark.parametrize("spec", SMALL)
def test_psi_closed_form_sweep(spec):
    for r in range(min(spec.N, 3) + 1):
        for p in range(r + 1):
            assert ops.psi_map(spec, p, r - p) == ops.psi_oracle_map(spec, p, r - p), (p, r - p)


@pytest.mark.slow
def test_psi_for_more_inputs_than_rank():
    assert ops.psi_high_input_map(RANK_ONE, 2, 0) == ops.psi_map(RANK_ONE, 2, 0)
    assert ops.psi_high_input_map(RANK_ONE, 2, 1) == ops.psi_map(RANK_ONE, 2, 1)
    v = {((1,), (1, -1)): ONE, ((), (0, 1)): SQRT2}
    assert ops.psi_high_input(RANK_ONE, 2, 1, v) == ops.psi_map(RANK_ONE, 2, 1).apply(v)
    with pytest.raises(OutOfRangeError):
        ops.psi_high_input_map(RANK_ONE, 1, 0)


@pytest.mark.slow
@pytest.mark.parametrize("N,p,q", [(5, 3, 0), (5, 3, 1), (5, 3, 2), (4, 3, 0), (4, 3, 1)])
def test_psi_for_more_inputs_than_rank_two(N, p, q):
    spec = SpaceSpec(2, N)
    assert ops.psi_high_input_map(spec, p, q) == ops.psi_map(spec, p, q)


def test_iphi_terms():
    terms = ops.iphi_terms((1, 2), (1, 2), 1)
    assert len(terms) == 4
    assert (1, (2,), ((1, 1),), (2,)) in terms
    assert (-1, (2,), ((1, 2),), (1,)) in terms
    assert len(ops.iphi_terms((1, 2), (1, 2), 2)) == 2


@pytest.mark.parametrize("spec", SMALL)
@pytest.mark.parametrize("number", [1, 2, 3, 4])
def test_relations_within_rank(spec, number):
    for p in range(spec.n + 1):
        for q in range(spec.n + 1 - p):
            assert ops.relation_check(spec, number, p, q), (number, p, q)


@pytest.mark.slow
@pytest.mark.parametrize("spec", SMALL)
def test_relations_with_mixed_legs(spec):
    n = spec.n
    for p in range(n + 1):
        for q in range(n + 1 - p):
            assert ops.relation_check(spec, 6, p, q), (6, p, q)
            assert ops.relation_check(spec, 7, p, q), (7, p, q)
        for t in range(p + 1):
            for q in range(n - t + 1):
                assert ops.relation_check(spec, 5, p, q, t), (5, p, q, t)


def test_relation_bounds():
    with pytest.raises(OutOfRangeError):
        ops.relation_check(RANK_ONE, 1, 1, 1)
    with pytest.raises(OutOfRangeError):
        ops.relation_check(RANK_ONE, 5, 0, 0, 1)
    with pytest.raises(InvalidInputError):
        ops.relation_check(RANK_ONE, 8, 0, 0)


@pytest.mark.parametrize("spec", [SpaceSpec(1, 3), SpaceSpec(2, 4)])
def test_easy_relations(spec):
    report = ops.easy_relations_report(spec, 1)
    assert all(report.values()), report
    assert ops.easy_relations_check(spec)
    if spec.n >= 2:
        assert "pr_of_idV" in report


def test_temperley_lieb_relations_on_three_factors():
    report = ops.easy_relations_report(RANK_ONE, 3)
    assert report["e_square"] and report["e1_e2_e1"] and report["e2_e1_e2"]


def test_basis_change_of_one_isolated_pair():
    y1, y4 = ALIASES["y1"], ALIASES["y4"]
    assert ops.basis_change(y4, "inv", "odd") == DiagramExpr(2, 2, {y4: -1, y1: 1}, param="rt")
    assert ops.basis_change(y4, "rt", "odd") == DiagramExpr(2, 2, {y4: -1, y1: 1}, param="inv")
    assert ops.basis_change(y4, "inv", "even") == DiagramExpr(2, 2, {y4: 1, y1: 1}, param="rt")
    assert ops.basis_change(y1, "rt", "even") == DiagramExpr.of(y1, param="inv")


def test_basis_change_of_all_isolated_diagram():
    expr = ops.basis_change(GBDiagram(2, 2), "inv", "odd")
    assert len(expr.terms) == 7
    with pytest.raises(UnsupportedError):
        ops.basis_change(GBDiagram(2, 2), "inv", "odd", n=1)
    with pytest.raises(InvalidInputError):
        ops.basis_change(GBDiagram(2, 2), "xx", "odd")


@pytest.mark.parametrize("family", ["odd", "even"])
@pytest.mark.parametrize("k,l", [(2, 2), (3, 1), (2, 3)])
def test_basis_change_round_trip(family, k, l):
    for d in enumerate_gb(k, l):
        forward = ops.basis_change(d, "rt", family)
        back = DiagramExpr(k, l, param="rt")
        for image, c in forward.terms.items():
            back = back + ops.basis_change(image, "inv", family).scale(c)
        assert back == DiagramExpr.of(d), str(d)


def test_inv_realization_matches_expansion():
    y4 = ALIASES["y4"]
    lhs = ops.realize(RANK_ONE, y4, "inv")
    rhs = ops.realize_expr(RANK_ONE, ops.basis_change(y4, "inv", "odd"))
    assert lhs == rhs


@pytest.mark.parametrize("spec", [SpaceSpec(1, 3), SpaceSpec(2, 5), SpaceSpec(2, 4)])
def test_small_diagrams_realize_equivariantly(spec):
    for k, l in [(1, 0), (0, 1), (1, 1)]:
        for d in enumerate_gb(k, l):
            assert ops.realize_equivariant(spec, d), str(d)


@pytest.mark.slow
@pytest.mark.parametrize("spec", [SpaceSpec(1, 3), SpaceSpec(2, 4)])
def test_two_factor_diagrams_realize_equivariantly(spec):
    for d in enumerate_gb(2, 2):
        assert ops.realize_equivariant(spec, d, "rt"), str(d)
        assert ops.realize_equivariant(spec, d, "inv"), str(d)


def test_realize_rejects_unknown_parametrization():
    with pytest.raises(InvalidInputError):
        ops.realize(RANK_ONE, ALIASES["y1"], "xyz")


def test_dual_pair_subspaces():
    assert len(ops.t0_subspace(SpaceSpec(2, 5), 1, 1)) == 16
    assert len(ops.t0_subspace(RANK_ONE, 1, 1)) == 4
    with pytest.raises(InvalidInputError):
        ops.t0_constraints(RANK_ONE, 2, 2)


@pytest.mark.slow
def test_dual_pair_subspaces_on_two_factors():
    spec = SpaceSpec(2, 5)
    assert len(ops.t0_subspace(spec, 2, 2)) == 60
    basis = ops.t0_subspace(spec, 2, 1)
    assert len(basis) == 40
    assert ops.subspace_stable(spec, basis, 2)


@pytest.mark.slow
def test_dual_pair_subspace_on_three_factors_at_rank_three():
    assert len(ops.t0_subspace(SpaceSpec(3, 7), 3, 3)) == 1584


def test_associator_split():
    spec = SpaceSpec(2, 4)
    plus, minus = ops.a_split(spec, ops.t0_subspace(spec, 1, 1))
    assert (len(plus), len(minus)) == (6, 6)
    assert ops.associator(spec, {((1,), (1,)): ONE}) == {((1,), (1,)): -ONE}
    with pytest.raises(InvalidInputError):
        ops.associator(RANK_ONE, {})


def test_commutant_on_one_factor():
    assert ops.commutant_dimension(RANK_ONE, 1) == 2
    assert ops.rt_span_rank(RANK_ONE, 1) == 2


@pytest.mark.slow
def test_rt_diagrams_are_independent_in_the_stable_range():
    assert ops.rt_span_rank(SpaceSpec(2, 5), 2) == 10


def test_realize_expr_of_zero_is_zero():
    m = ops.realize_expr(RANK_ONE, DiagramExpr(1, 1))
    assert isinstance(m, SparseLinearMap)
    assert m.is_zero()


def test_psi_oracle_on_vectors():
    v = {((), (1,)): ONE, ((1,), (0,)): HALF}
    assert ops.psi_oracle(RANK_ONE, 1, 1, v) == ops.psi_map(RANK_ONE, 1, 1).apply(v)
    assert ops.psi_oracle(RANK_ONE, 1, 0, {}) == {}
