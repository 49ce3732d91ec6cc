from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from pinbrauer.core.characters import (
    IrrepKind,
    IrrepLabel,
    character_of,
    decompose_character,
    dim_cpk,
    iterated_vector_multiplicities,
    laurent_mul,
    lr_coefficient,
    partitions_of,
    spin_irrep_dimension,
    sp_tensor_coefficient,
    standard_tableaux_count,
    symplectic_character,
    tensor_rule,
    updown_multiplicity,
    updown_walks,
    weyl_character,
)
from pinbrauer.core.diagrams import count_gb
from pinbrauer.core.errors import InvalidInputError, UnsupportedError


def label(kind, parts, n, N, pin_sign=None):
    return IrrepLabel(IrrepKind(kind), tuple(parts), n, N, pin_sign)


@st.composite
def small_partitions(draw, max_size=3):
    total = draw(st.integers(min_value=0, max_value=max_size))
    options = list(partitions_of(total))
    return draw(st.sampled_from(options))


def test_partitions_of():
    assert list(partitions_of(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert list(partitions_of(4, max_len=2)) == [(4,), (3, 1), (2, 2)]
    assert list(partitions_of(0)) == [()]


@pytest.mark.parametrize("m", range(1, 7))
def test_standard_tableaux_square_sum(m):
    assert sum(standard_tableaux_count(lam) ** 2 for lam in partitions_of(m)) == factorial(m)


def test_lr_coefficient_examples():
    assert lr_coefficient((2, 1), (1,), (1, 1)) == 1
    assert lr_coefficient((2, 1), (1,), (1,)) == 0
    assert lr_coefficient((3, 2, 1), (2, 1), (2, 1)) == 2


@given(small_partitions(), small_partitions())
def test_lr_coefficients_induce_correctly(mu, nu):
    m, k = sum(mu), sum(nu)
    total = sum(lr_coefficient(lam, mu, nu) * standard_tableaux_count(lam) for lam in partitions_of(m + k))
    assert total == comb(m + k, m) * standard_tableaux_count(mu) * standard_tableaux_count(nu)


def test_dim_cpk_matches_diagram_count():
    assert [dim_cpk(k) for k in range(4)] == [1, 2, 10, 76]
    for k in range(4):
        assert count_gb(k, k) == dim_cpk(k)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_walk_counts_square_to_algebra_dimension(k):
    walks = updown_walks(k, 2 * k + 1, k)
    assert sum(m * m for m in walks.values()) == dim_cpk(k)


def test_walks_for_two_steps():
    assert updown_walks(2, 5, 2) == {(2,): 1, (1, 1): 1, (): 2, (1,): 2}


@pytest.mark.parametrize("n,N", [(2, 5), (2, 4), (3, 7)])
def test_iterated_tensor_rule_agrees_with_walks(n, N):
    for k in range(4):
        assert iterated_vector_multiplicities(n, N, k) == updown_walks(n, N, k)


@pytest.mark.parametrize(
    "kind,parts,n,N,dim",
    [
        ("DELTA", (), 2, 5, 4),
        ("DELTA", (1,), 2, 5, 16),
        ("SO", (1,), 2, 5, 5),
        ("SO", (1, 1), 2, 5, 10),
        ("DELTA", (), 2, 4, 4),
        ("SPIN_PLUS", (), 2, 4, 2),
        ("SO", (1, 1), 2, 4, 3),
        ("SO_MINUS", (1, 1), 2, 4, 3),
        ("DELTA", (), 3, 7, 8),
    ],
)
def test_dimensions(kind, parts, n, N, dim):
    assert spin_irrep_dimension(label(kind, parts, n, N)) == dim


def test_label_validation():
    with pytest.raises(InvalidInputError):
        label("SPIN_PLUS", (), 2, 5)
    with pytest.raises(InvalidInputError):
        label("SO", (1, 1, 1), 2, 5)
    with pytest.raises(InvalidInputError):
        label("SO", (1,), 2, 6)
    with pytest.raises(InvalidInputError):
        label("DELTA", (), 2, 4, pin_sign=1)


def test_label_dict_form():
    lab = label("DELTA", (1,), 2, 5, pin_sign=-1)
    assert IrrepLabel.from_dict(lab.to_dict()) == lab
    assert str(lab) == "DELTA[1]_-"
    with pytest.raises(InvalidInputError):
        IrrepLabel.from_dict({"kind": "NOPE", "n": 2, "N": 5})


@pytest.mark.parametrize(
    "a,b",
    [
        (("DELTA", (), 2, 5), ("SO", (1,), 2, 5)),
        (("DELTA", (), 2, 5), ("DELTA", (), 2, 5)),
        (("DELTA", (1,), 2, 5), ("SO", (1,), 2, 5)),
        (("SPIN_PLUS", (), 2, 4), ("SPIN_PLUS", (), 2, 4)),
        (("SPIN_PLUS", (), 2, 4), ("SPIN_MINUS", (), 2, 4)),
        (("SPIN_PLUS", (), 2, 4), ("SO", (1,), 2, 4)),
    ],
)
def test_tensor_rule_matches_characters(a, b):
    la, lb = label(*a), label(*b)
    rule = tensor_rule(la, lb)
    assert character_of(la.n, la.N, rule) == laurent_mul(weyl_character(la), weyl_character(lb))


@pytest.mark.parametrize("kind", ["DELTA", "DELTA_PRIME"])
@pytest.mark.parametrize("delta", [(), (1,), (2,)])
@pytest.mark.parametrize("mu", [(1, 1), (2, 1), (2, 2)])
def test_spinor_times_difference_character(kind, delta, mu):
    a, b = label(kind, delta, 2, 4), label("DIFF_CHAR", mu, 2, 4)
    rule = tensor_rule(a, b)
    assert character_of(2, 4, rule) == laurent_mul(weyl_character(a), weyl_character(b))
    assert tensor_rule(b, a) == rule


def test_delta_times_vector_rule():
    rule = tensor_rule(label("DELTA", (), 2, 5), label("SO", (1,), 2, 5))
    assert rule == {label("DELTA", (), 2, 5): 1, label("DELTA", (1,), 2, 5): 1}


def test_decompose_character_recovers_rule():
    delta, vector = label("DELTA", (), 2, 5), label("SO", (1,), 2, 5)
    product = laurent_mul(weyl_character(delta), weyl_character(vector))
    assert decompose_character(2, 5, product) == tensor_rule(delta, vector)


def test_tensor_rule_failures():
    with pytest.raises(UnsupportedError):
        tensor_rule(label("SO", (2,), 2, 5), label("SO", (2,), 2, 5))
    with pytest.raises(InvalidInputError):
        tensor_rule(label("DELTA", (), 2, 5), label("SO", (1,), 3, 7))


def test_updown_multiplicity():
    assert updown_multiplicity(2, 5, 2, (1,)) == 2
    assert updown_multiplicity(2, 5, 2, (3,)) == 0
    with pytest.raises(InvalidInputError):
        updown_multiplicity(2, 5, 2, (1, 1, 1))


def test_symplectic_characters_and_products():
    assert sum(symplectic_character(2, (1,)).values()) == 4
    assert sum(symplectic_character(1, (1,)).values()) == 2
    for lam in [(2,), (1, 1), ()]:
        assert sp_tensor_coefficient(2, (1,), (1,), lam) == 1
    assert sp_tensor_coefficient(1, (1,), (1,), (2,)) == 1
    assert sp_tensor_coefficient(1, (1,), (1,), ()) == 1
    with pytest.raises(InvalidInputError):
        sp_tensor_coefficient(1, (1,), (1,), (1, 1))
