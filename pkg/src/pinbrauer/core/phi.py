"""Equivariant embeddings of the exterior powers into Delta x Delta*.

All variants share one kernel: for a wedge <J, W, (0'), Wbar, Ibar> the image
is a signed sum over K in [1,n] - J - I of [I, K] x [J, K]*, scaled by a power
of sqrt2. The variants only differ in the sign rule, the scale and which K
are kept.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from pinbrauer.core.clifford import (
    DeltaTensorDual,
    Fock,
    Generator,
    SpaceSpec,
    act_on_delta_tensor_dual,
    bracket_union,
    delta_tensor_dual_basis,
    group_generators,
    lie_generators,
)
from pinbrauer.core.errors import InvalidInputError
from pinbrauer.core.exterior import (
    ExtElement,
    ExtVector,
    act_on_ext,
    check_degree,
    en_element,
    ext_basis,
    r_ell,
)
from pinbrauer.core.linalg import inner, rank_of, vec_add_into, vec_add_term
from pinbrauer.core.scalars import ONE, QSqrt2, pow2_half

logger = logging.getLogger(__name__)

SignRule = Callable[[ExtElement, Tuple[int, ...]], int]


def _subsets(ground: Sequence[int]) -> List[Tuple[int, ...]]:
    """Subsets of a sorted ground set in binary-counter order."""
    return [
        tuple(ground[i] for i in range(len(ground)) if mask >> i & 1)
        for mask in range(1 << len(ground))
    ]


def _free_indices(n: int, elem: ExtElement) -> Tuple[int, ...]:
    used = set(elem.J) | set(elem.I)
    return tuple(k for k in range(1, n + 1) if k not in used)


def _minus_count(A: Iterable[int], B: Iterable[int]) -> int:
    """|A - A n B|"""
    b = set(B)
    return sum(1 for a in A if a not in b)


def _pair(I: Sequence[int], J: Sequence[int], K: Sequence[int]) -> Tuple[int, Tuple[Fock, Fock]]:
    """[I, K] x [J, K]* as sign * [sorted] x [sorted]*."""
    s1, left = bracket_union(I, K)
    s2, right = bracket_union(J, K)
    return s1 * s2, (left, right)


def _kernel(
    n: int,
    v: Mapping[ExtElement, QSqrt2],
    sign_rule: SignRule,
    scale_exp: Callable[[int], int],
    keep: Callable[[ExtElement, Tuple[int, ...]], bool] = lambda e, K: True,
) -> DeltaTensorDual:
    out: DeltaTensorDual = {}
    for elem, c in v.items():
        free = _free_indices(n, elem)
        scale = pow2_half(scale_exp(len(free)))
        for K in _subsets(free):
            if not keep(elem, K):
                continue
            s, key = _pair(elem.I, elem.J, K)
            vec_add_term(out, key, c * scale * (s * sign_rule(elem, K)))
    return out


def _plain_sign(elem: ExtElement, K: Tuple[int, ...]) -> int:
    if elem.has0:
        return (-1) ** _minus_count(K, elem.W)
    return (-1) ** _minus_count(elem.W, K)


def phi_odd(spec: SpaceSpec, k: int, v: Mapping[ExtElement, QSqrt2]) -> DeltaTensorDual:
    if not spec.odd:
        raise InvalidInputError("phi_odd needs N = 2n+1")
    check_degree(v, k)
    return _kernel(spec.n, v, _plain_sign, lambda m: -m)


def legal_even_signs(n: int, ell: int) -> List[Tuple[int, int]]:
    """The (eps1, eps2) for which Delta^eps1 x (Delta^eps2)* contains the ell-th exterior power."""
    t = (-1) ** ((n - ell) % 2) * (1 if n % 2 == 0 else -1)
    return [(e2 * t, e2) for e2 in (1, -1)]


def phi_even(spec: SpaceSpec, ell: int, eps1: int, eps2: int, v: Mapping[ExtElement, QSqrt2]) -> DeltaTensorDual:
    """phi^{eps1 eps2}_ell into Delta^eps1 x (Delta^eps2)*.

    For ell = n a plain wedge x = (x^(+) + x^(-))/sqrt2 is mapped through its
    e_n^eps1 component only.
    """
    if spec.odd:
        raise InvalidInputError("phi_even needs N = 2n")
    if (eps1, eps2) not in legal_even_signs(spec.n, ell):
        raise InvalidInputError(f"(eps1, eps2) = ({eps1}, {eps2}) does not occur in degree {ell} for n = {spec.n}")
    check_degree(v, ell)
    extra = -1 if ell == spec.n else 0

    def keep(elem: ExtElement, K: Tuple[int, ...]) -> bool:
        return (-1) ** (len(elem.I) + len(K)) == eps1 and (-1) ** (len(elem.J) + len(K)) == eps2

    return _kernel(spec.n, v, _plain_sign, lambda m: 1 - m + extra, keep)


def phi_pin(spec: SpaceSpec, ell: int, v: Mapping[ExtElement, QSqrt2]) -> DeltaTensorDual:
    """The Pin(2n)-equivariant isometric embedding of the ell-th exterior power."""
    if spec.odd:
        raise InvalidInputError("phi_pin needs N = 2n; use phi_odd for N = 2n+1")
    check_degree(v, ell)
    if ell % 2 == 0:
        return _kernel(spec.n, v, _plain_sign, lambda m: -m)
    return _kernel(
        spec.n,
        v,
        lambda e, K: _plain_sign(e, K) * (-1) ** (len(e.I) + len(K)),
        lambda m: -m,
    )


def phi(spec: SpaceSpec, ell: int, v: Mapping[ExtElement, QSqrt2]) -> DeltaTensorDual:
    """phi_odd or phi_pin according to the parity of N."""
    return phi_odd(spec, ell, v) if spec.odd else phi_pin(spec, ell, v)


def phi_spin_block(spec: SpaceSpec, eps1: int, eps2: int, v: Mapping[ExtElement, QSqrt2]) -> DeltaTensorDual:
    """Sum of phi^{eps1 eps2}_ell over the degrees present in v."""
    out: DeltaTensorDual = {}
    for ell in sorted({e.degree for e in v}):
        part = {e: c for e, c in v.items() if e.degree == ell}
        vec_add_into(out, phi_even(spec, ell, eps1, eps2, part))
    return out


# ---------------------------------------------------------------- inverses

def _split_key(n: int, A: Fock, B: Fock) -> Tuple[int, Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]:
    K = tuple(sorted(set(A) & set(B)))
    I = tuple(a for a in A if a not in K)
    J = tuple(b for b in B if b not in K)
    s, _ = _pair(I, J, K)
    return s, I, J, K


def _inverse_on_basis(spec: SpaceSpec, A: Fock, B: Fock, split: bool) -> ExtVector:
    n = spec.n
    s, I, J, K = _split_key(n, A, B)
    free = tuple(k for k in range(1, n + 1) if k not in I and k not in J)
    m, i, j = len(free), len(I), len(J)
    out: ExtVector = {}
    if spec.odd:
        has0 = (i + j) % 2 == 1
        scale = pow2_half(-m)
        for W in _subsets(free):
            elem = ExtElement(J, W, I, has0)
            vec_add_term(out, elem, scale * (s * _plain_sign(elem, K)))
        return out
    if not split:
        twist = (-1) ** (i + len(K)) if (i + j) % 2 else 1
        scale = pow2_half(-m)
        for W in _subsets(free):
            elem = ExtElement(J, W, I)
            vec_add_term(out, elem, scale * (s * twist * _plain_sign(elem, K)))
        return out
    eps1 = (-1) ** len(A)
    eps2 = (-1) ** len(B)
    middle = eps2 == (-1) ** n * eps1
    for W in _subsets(free):
        elem = ExtElement(J, W, I)
        deg = elem.degree
        sign = s * _plain_sign(elem, K)
        if middle and deg == n:
            vec_add_into(out, en_element(spec, elem, eps1), pow2_half(-(m + 1)) * sign)
        elif deg <= n - (2 if middle else 1):
            vec_add_term(out, elem, pow2_half(1 - m) * sign)
    return out


def phi_inverse(spec: SpaceSpec, x: Mapping[Tuple[Fock, Fock], QSqrt2], split: bool = False) -> ExtVector:
    """Expand an element of Delta x Delta* in wedges.

    N odd: into the even exterior powers. N even: into all exterior powers
    (inverse of phi_pin), or with split=True into the Spin(2n) pieces of
    degree at most n, e_n^eps1 components included.
    """
    if split and spec.odd:
        raise InvalidInputError("split inverses are defined for N = 2n")
    out: ExtVector = {}
    for (A, B), c in x.items():
        vec_add_into(out, _inverse_on_basis(spec, A, B, split), c)
    return out


# ---------------------------------------------------------------- Hadamard blocks

@dataclass(frozen=True)
class HadamardBlock:
    J: Tuple[int, ...]
    I: Tuple[int, ...]
    subsets: Tuple[Tuple[int, ...], ...]
    matrix: Tuple[Tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.subsets)

    def is_hadamard(self) -> bool:
        m = self.size
        for r1 in range(m):
            for r2 in range(m):
                dot = sum(a * b for a, b in zip(self.matrix[r1], self.matrix[r2]))
                if dot != (m if r1 == r2 else 0):
                    return False
        return True


def hadamard_block(n: int, J: Sequence[int], I: Sequence[int]) -> HadamardBlock:
    if set(J) & set(I):
        raise InvalidInputError(f"J={tuple(J)} and I={tuple(I)} must be disjoint")
    ground = tuple(k for k in range(1, n + 1) if k not in J and k not in I)
    subs = tuple(_subsets(ground))
    rows = tuple(tuple((-1) ** _minus_count(W, K) for K in subs) for W in subs)
    return HadamardBlock(tuple(sorted(J)), tuple(sorted(I)), subs, rows)


# ---------------------------------------------------------------- identities

def phirl_check(spec: SpaceSpec, ell: int) -> bool:
    """phi composed with r_ell against phi itself, for every basis wedge of degree ell."""
    basis = ext_basis(spec, ell)
    if spec.odd:
        return all(phi_odd(spec, spec.N - ell, r_ell(spec, ell, {e: ONE})) == phi_odd(spec, ell, {e: ONE}) for e in basis)
    for eps1, eps2 in legal_even_signs(spec.n, ell):
        factor = eps2 * (-1) ** spec.n
        for e in basis:
            lhs = phi_even(spec, spec.N - ell, eps1, eps2, r_ell(spec, ell, {e: ONE}))
            rhs = {key: c * factor for key, c in phi_even(spec, ell, eps1, eps2, {e: ONE}).items()}
            if lhs != rhs:
                return False
    return True


PhiMap = Callable[[Mapping[ExtElement, QSqrt2]], DeltaTensorDual]


def phi_variants(spec: SpaceSpec, ell: int) -> Dict[str, Tuple[PhiMap, SpaceSpec, SpaceSpec]]:
    """Every embedding of degree ell with the left and right spin modules it lands in."""
    if spec.odd:
        out = {}
        for eps1 in (1, -1):
            eps2 = eps1 * (-1) ** ell
            left = replace(spec, delta_sign=eps1)
            right = replace(spec, delta_sign=eps2)
            out[f"odd{eps1:+d}{eps2:+d}"] = (lambda v, s=left: phi_odd(s, ell, v), left, right)
        return out
    out = {"pin": (lambda v: phi_pin(spec, ell, v), spec, spec)}
    for eps1, eps2 in legal_even_signs(spec.n, ell):
        out[f"spin{eps1:+d}{eps2:+d}"] = (
            lambda v, a=eps1, b=eps2: phi_even(spec, ell, a, b, v),
            spec,
            spec,
        )
    return out


def phi_equivariant(spec: SpaceSpec, ell: int, name: str, generators: Optional[Iterable[Generator]] = None) -> bool:
    fn, left, right = phi_variants(spec, ell)[name]
    gens = list(generators) if generators is not None else lie_generators(spec) + (
        group_generators(spec) if spec.odd or name == "pin" else []
    )
    for g in gens:
        for e in ext_basis(spec, ell):
            lhs = act_on_delta_tensor_dual(left, g, fn({e: ONE}), right_spec=right)
            rhs = fn(act_on_ext(spec, g, {e: ONE}))
            if lhs != rhs:
                logger.debug("phi %s degree %d fails for %s on %s", name, ell, g, e)
                return False
    return True


def isometry_sources(spec: SpaceSpec, ell: int, name: str) -> List[ExtVector]:
    """Orthogonal inputs whose images should keep their inner products."""
    basis = ext_basis(spec, ell)
    if spec.odd or name == "pin" or ell != spec.n:
        return [{e: ONE} for e in basis]
    eps1 = 1 if "spin+" in name else -1
    seen, out = set(), []
    for e in basis:
        v = en_element(spec, e, eps1)
        key = frozenset(v)
        if v and key not in seen:
            seen.add(key)
            out.append(v)
    return out


def phi_isometric(spec: SpaceSpec, ell: int, name: str) -> bool:
    fn = phi_variants(spec, ell)[name][0]
    sources = isometry_sources(spec, ell, name)
    images = [fn(v) for v in sources]
    for a in range(len(sources)):
        for b in range(a, len(sources)):
            if inner(images[a], images[b]) != inner(sources[a], sources[b]):
                return False
    return True


def phi_image_rank(spec: SpaceSpec) -> int:
    """Rank of the combined images: even degrees for N odd, all degrees for N even."""
    degrees = range(0, spec.N + 1, 2) if spec.odd else range(spec.N + 1)
    images = [phi(spec, ell, {e: ONE}) for ell in degrees for e in ext_basis(spec, ell)]
    return rank_of(images)


def roundtrip_delta(spec: SpaceSpec, split: bool = False) -> bool:
    """phi after phi_inverse is the identity on every bracket pair."""
    for A, B in delta_tensor_dual_basis(spec.n):
        x = {(A, B): ONE}
        ext = phi_inverse(spec, x, split)
        if split:
            back = phi_spin_block(spec, (-1) ** len(A), (-1) ** len(B), ext)
        else:
            back = {}
            for ell in sorted({e.degree for e in ext}):
                vec_add_into(back, phi(spec, ell, {e: c for e, c in ext.items() if e.degree == ell}))
        if back != x:
            logger.debug("round trip fails on %s x %s*", A, B)
            return False
    return True


def roundtrip_ext(spec: SpaceSpec) -> bool:
    """phi_inverse after phi is the identity on the exterior powers it is inverse to."""
    degrees = range(0, spec.N + 1, 2) if spec.odd else range(spec.N + 1)
    for ell in degrees:
        for e in ext_basis(spec, ell):
            if phi_inverse(spec, phi(spec, ell, {e: ONE})) != {e: ONE}:
                return False
    return True
