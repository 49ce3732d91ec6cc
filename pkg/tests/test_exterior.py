from math import comb

import pytest
from hypothesis import given, strategies as st

from pinbrauer.core.clifford import Generator, GenKind, SpaceSpec, v_basis
from pinbrauer.core.errors import DegreeMismatchError, InvalidInputError
from pinbrauer.core.exterior import (
    ExtElement,
    act_on_ext,
    en_element,
    en_split,
    ext_basis,
    ext_from_sequence,
    iota_ext,
    iota_ext_inverse,
    iota_prime,
    r_ell,
    wedge_normalize,
)
from pinbrauer.core.linalg import vec_add_into
from pinbrauer.core.scalars import ONE, SQRT2

SPEC = SpaceSpec(2, 5)


def test_canonical_sequence_order():
    elem = ExtElement(J=(2,), W=(1,), I=(), has0=True)
    assert elem.canonical_sequence() == (2, 1, 0, -1)
    assert ExtElement(I=(1, 2)).canonical_sequence() == (-2, -1)
    assert str(ExtElement()) == "1"
    assert elem.degree == 4


def test_element_rejects_overlaps():
    with pytest.raises(InvalidInputError):
        ExtElement(J=(1,), I=(1,))
    with pytest.raises(InvalidInputError):
        ExtElement(J=(0,))


def test_wedge_normalize():
    assert wedge_normalize((-1, 1)) == (-1, ExtElement(W=(1,)))
    assert wedge_normalize((2, 1)) == (-1, ExtElement(J=(1, 2)))
    assert wedge_normalize((1, 0, 1)) == (0, None)
    assert ext_from_sequence((0, 0)) == {}


@given(st.permutations(v_basis(2, True)).map(lambda p: p[:3]))
def test_wedge_normalize_sign_is_alternating(seq):
    sign, elem = wedge_normalize(seq)
    swapped = (seq[1], seq[0]) + tuple(seq[2:])
    sign2, elem2 = wedge_normalize(swapped)
    assert elem == elem2
    assert sign == -sign2


@pytest.mark.parametrize("spec", [SpaceSpec(1, 3), SpaceSpec(2, 4), SpaceSpec(2, 5)])
def test_basis_sizes(spec):
    for ell in range(spec.N + 1):
        basis = ext_basis(spec, ell)
        assert len(basis) == comb(spec.N, ell)
        assert len(set(basis)) == len(basis)
        assert all(e.degree == ell for e in basis)


@pytest.mark.parametrize("spec", [SpaceSpec(1, 3), SpaceSpec(2, 4), SpaceSpec(2, 5)])
def test_complementation_is_an_involution(spec):
    for ell in range(spec.N + 1):
        for e in ext_basis(spec, ell):
            image = r_ell(spec, ell, {e: ONE})
            assert len(image) == 1
            assert r_ell(spec, spec.N - ell, image) == {e: ONE}


def test_complementation_checks_degree():
    with pytest.raises(DegreeMismatchError):
        r_ell(SPEC, 2, {ExtElement(J=(1,)): ONE})


def test_central_element_acts_by_parity():
    z = Generator(GenKind.Z)
    for ell in range(SPEC.N + 1):
        for e in ext_basis(SPEC, ell):
            assert act_on_ext(SPEC, z, {e: ONE}) == {e: ONE * (-1) ** ell}


def test_reflection_swaps_last_pair():
    spec = SpaceSpec(2, 4)
    refl = Generator(GenKind.REFLECTION)
    assert act_on_ext(spec, refl, {ExtElement(J=(2,)): ONE}) == {ExtElement(I=(2,)): ONE}
    assert act_on_ext(spec, refl, {ExtElement(W=(2,)): ONE}) == {ExtElement(W=(2,)): -ONE}


def test_lie_action_is_a_derivation():
    h1 = Generator(GenKind.H, 1)
    elem = ExtElement(J=(1, 2))
    assert act_on_ext(SPEC, h1, {elem: ONE}) == {elem: ONE}
    assert act_on_ext(SPEC, h1, {ExtElement(W=(1,)): ONE}) == {}


def test_en_split_recombines():
    spec = SpaceSpec(2, 4)
    for e in ext_basis(spec, 2):
        plus, minus = en_split(spec, {e: ONE})
        total = dict(plus)
        vec_add_into(total, minus)
        assert total == {e: ONE}
    plus_part = en_element(spec, ExtElement(W=(1,)), 1)
    assert plus_part == {ExtElement(W=(1,)): SQRT2 / 2, ExtElement(W=(2,)): SQRT2 / 2}
    with pytest.raises(InvalidInputError):
        en_element(SPEC, ExtElement(J=(1, 2)), 1)


def test_iota_ext_inverts():
    v = {ExtElement(J=(1,), I=(2,)): ONE}
    assert iota_ext_inverse(SPEC, 2, iota_ext(SPEC, 2, v)) == v


def test_iota_prime_exchanges_roles():
    assert iota_prime({ExtElement(J=(1,)): ONE}) == {ExtElement(I=(1,)): ONE}
    v = {ExtElement(J=(1,), W=(2,), I=(3,)): SQRT2}
    assert iota_prime(iota_prime(v)) == v
