"""Exterior powers of V in the canonical wedge basis.

A basis wedge is <J, W, (0'), Wbar, Ibar>: the plain indices of J ascending,
then W ascending, then u_0', then the barred W and I, each block in the
declared index order (so the barred blocks run with decreasing index).
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from pinbrauer.core.clifford import (
    Generator,
    GenKind,
    SpaceSpec,
    VIndex,
    arrangement_sign,
    is_lie_generator,
    v_action,
    v_basis,
    v_label,
)
from pinbrauer.core.errors import DegreeMismatchError, InvalidInputError
from pinbrauer.core.linalg import vec_add_into, vec_add_term
from pinbrauer.core.scalars import ONE, SQRT2, QSqrt2

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class ExtElement:
    J: Tuple[int, ...] = ()
    W: Tuple[int, ...] = ()
    I: Tuple[int, ...] = ()
    has0: bool = False

    def __post_init__(self) -> None:
        for name in ("J", "W", "I"):
            object.__setattr__(self, name, tuple(sorted(getattr(self, name))))
        seen = list(self.J) + list(self.W) + list(self.I)
        if len(set(seen)) != len(seen) or any(i < 1 for i in seen):
            raise InvalidInputError(f"J, W, I must be disjoint subsets of 1..n, got {self.J}, {self.W}, {self.I}")

    @property
    def degree(self) -> int:
        return len(self.J) + len(self.I) + 2 * len(self.W) + int(self.has0)

    def canonical_sequence(self) -> Tuple[VIndex, ...]:
        return (
            self.J
            + self.W
            + ((0,) if self.has0 else ())
            + tuple(-w for w in reversed(self.W))
            + tuple(-i for i in reversed(self.I))
        )

    def swapped(self) -> "ExtElement":
        """The element with the roles of J and I exchanged."""
        return ExtElement(self.I, self.W, self.J, self.has0)

    def check(self, spec: SpaceSpec) -> None:
        if self.has0 and not spec.odd:
            raise InvalidInputError("u_0' only exists for N = 2n+1")
        if any(i > spec.n for i in self.J + self.W + self.I):
            raise InvalidInputError(f"index out of range 1..{spec.n} in {self}")

    def __str__(self) -> str:
        seq = self.canonical_sequence()
        return "^".join(v_label(a) for a in seq) if seq else "1"


ExtVector = Dict[ExtElement, QSqrt2]


def wedge_normalize(seq: Sequence[VIndex]) -> Tuple[int, Optional[ExtElement]]:
    """Bring u_{a_1} ^ ... ^ u_{a_r} to sign * canonical wedge, or (0, None)."""
    if len(set(seq)) != len(seq):
        return 0, None
    s = set(seq)
    J = tuple(a for a in seq if a > 0 and -a not in s)
    W = tuple(a for a in seq if a > 0 and -a in s)
    I = tuple(-a for a in seq if a < 0 and -a not in s)
    elem = ExtElement(J, W, I, 0 in s)
    return arrangement_sign(elem.canonical_sequence(), seq), elem


def ext_from_sequence(seq: Sequence[VIndex], coeff: QSqrt2 = ONE) -> ExtVector:
    sign, elem = wedge_normalize(seq)
    if elem is None:
        return {}
    return {elem: coeff * sign}


def ext_basis(spec: SpaceSpec, ell: int) -> List[ExtElement]:
    """Canonical basis of the ell-th exterior power, in lexicographic order of the declared V basis."""
    out = []
    for combo in itertools.combinations(v_basis(spec.n, spec.odd), ell):
        _, elem = wedge_normalize(combo)
        out.append(elem)
    return out


def check_degree(v: Mapping[ExtElement, QSqrt2], ell: int) -> None:
    for elem in v:
        if elem.degree != ell:
            raise DegreeMismatchError(f"{elem} has degree {elem.degree}, expected {ell}")


# ---------------------------------------------------------------- actions

def so_action_on_ext(spec: SpaceSpec, g: Generator, v: Mapping[ExtElement, QSqrt2]) -> ExtVector:
    """Lie generators act as derivations of the wedge product."""
    if not is_lie_generator(g):
        raise InvalidInputError(f"{g} is not a Lie algebra generator")
    out: ExtVector = {}
    for elem, c in v.items():
        seq = list(elem.canonical_sequence())
        for pos, a in enumerate(seq):
            for b, coef in v_action(spec, g, a).items():
                sign, new = wedge_normalize(seq[:pos] + [b] + seq[pos + 1:])
                if new is not None:
                    vec_add_term(out, new, c * coef * sign)
    return out


def group_action_on_ext(spec: SpaceSpec, g: Generator, v: Mapping[ExtElement, QSqrt2]) -> ExtVector:
    """Group elements (reflection, z) act on every leg at once."""
    if g.kind not in (GenKind.REFLECTION, GenKind.Z):
        raise InvalidInputError(f"{g} does not act on the exterior powers as a group element")
    out: ExtVector = {}
    for elem, c in v.items():
        terms: List[Tuple[List[VIndex], QSqrt2]] = [([], c)]
        for a in elem.canonical_sequence():
            image = v_action(spec, g, a)
            terms = [(seq + [b], coef * val) for seq, coef in terms for b, val in image.items()]
        for seq, coef in terms:
            sign, new = wedge_normalize(seq)
            if new is not None:
                vec_add_term(out, new, coef * sign)
    return out


def act_on_ext(spec: SpaceSpec, g: Generator, v: Mapping[ExtElement, QSqrt2]) -> ExtVector:
    if is_lie_generator(g):
        return so_action_on_ext(spec, g, v)
    return group_action_on_ext(spec, g, v)


# ---------------------------------------------------------------- r_ell and e_n

def _complement_W(n: int, elem: ExtElement) -> Tuple[int, ...]:
    used = set(elem.J) | set(elem.I) | set(elem.W)
    return tuple(k for k in range(1, n + 1) if k not in used)


def _r_on_basis(spec: SpaceSpec, elem: ExtElement) -> Tuple[int, ExtElement]:
    Wc = _complement_W(spec.n, elem)
    if spec.odd:
        if elem.has0:
            return (-1) ** len(Wc), ExtElement(elem.J, Wc, elem.I, False)
        return (-1) ** len(elem.W), ExtElement(elem.J, Wc, elem.I, True)
    return (-1) ** len(elem.I), ExtElement(elem.J, Wc, elem.I, False)


def r_ell(spec: SpaceSpec, ell: int, v: Mapping[ExtElement, QSqrt2]) -> ExtVector:
    """The equivariant complementation from degree ell to degree N - ell."""
    check_degree(v, ell)
    out: ExtVector = {}
    for elem, c in v.items():
        elem.check(spec)
        sign, image = _r_on_basis(spec, elem)
        vec_add_term(out, image, c * sign)
    return out


def en_element(spec: SpaceSpec, elem: ExtElement, sign: int) -> ExtVector:
    """<J, W, Wbar, Ibar>^(+/-) as a combination of plain wedges (N = 2n, degree n)."""
    if spec.odd or elem.degree != spec.n:
        raise InvalidInputError("e_n^+/- elements need N = 2n and degree n")
    if sign not in (1, -1):
        raise InvalidInputError("the e_n sign must be +1 or -1")
    out: ExtVector = {elem: SQRT2 / 2}
    r_sign, partner = _r_on_basis(spec, elem)
    vec_add_term(out, partner, SQRT2 / 2 * (sign * r_sign))
    return out


def en_split(spec: SpaceSpec, v: Mapping[ExtElement, QSqrt2]) -> Tuple[ExtVector, ExtVector]:
    """Split a degree-n vector into its r_n = +1 and r_n = -1 parts (they add up to v)."""
    if spec.odd:
        raise InvalidInputError("e_n^+/- only exist for N = 2n")
    check_degree(v, spec.n)
    rv = r_ell(spec, spec.n, v)
    half = QSqrt2(Fraction(1, 2))
    plus: ExtVector = {}
    minus: ExtVector = {}
    vec_add_into(plus, v, half)
    vec_add_into(plus, rv, half)
    vec_add_into(minus, v, half)
    vec_add_into(minus, rv, -half)
    return plus, minus


# ---------------------------------------------------------------- dualities

def iota_ext(spec: SpaceSpec, k: int, v: Mapping[ExtElement, QSqrt2]) -> ExtVector:
    """<J, W, (0'), Wbar, Ibar> -> (1/k!) <I, W, (0'), Wbar, Jbar>*; dual vectors use the same keys."""
    check_degree(v, k)
    scale = QSqrt2(Fraction(1, factorial(k)))
    return {elem.swapped(): c * scale for elem, c in v.items()}


def iota_ext_inverse(spec: SpaceSpec, k: int, f: Mapping[ExtElement, QSqrt2]) -> ExtVector:
    check_degree(f, k)
    return {elem.swapped(): c * factorial(k) for elem, c in f.items()}


def iota_prime(v: Mapping[ExtElement, QSqrt2]) -> ExtVector:
    return {elem.swapped(): c for elem, c in v.items()}
