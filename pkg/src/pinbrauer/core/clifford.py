"""The Fock model of the spin module and the generator actions on it.

Delta is spanned by brackets [I], I a sorted subset of 1..n, listed in
binary-counter order. V is spanned by u_1..u_n, u_0' (N odd) and the barred
vectors, encoded as the ints 1..n, 0 and -n..-1 in that declared order.
For N = 2n+1 and delta_sign = -1 the module Delta_- is stored rebased so
that the Lie algebra acts by the same matrices as on Delta_+.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from pinbrauer.core.errors import InvalidInputError
from pinbrauer.core.linalg import SparseLinearMap, vec_add_into, vec_add_term
from pinbrauer.core.scalars import ONE, SQRT2, QSqrt2

Fock = Tuple[int, ...]
VIndex = int
DeltaVector = Dict[Fock, QSqrt2]
DeltaTensorDual = Dict[Tuple[Fock, Fock], QSqrt2]

HALF = QSqrt2(1, 0) / 2


@dataclass(frozen=True)
class SpaceSpec:
    """Rank data of a spin module: n, N and the Delta_+/- choice for odd N."""

    n: int
    N: int
    delta_sign: Optional[int] = None
    dual: bool = False

    def __post_init__(self) -> None:
        if self.n < 1 or self.N not in (2 * self.n, 2 * self.n + 1):
            raise InvalidInputError(f"N={self.N} must be 2n or 2n+1 for n={self.n} >= 1")
        if self.N % 2:
            if self.delta_sign is None:
                object.__setattr__(self, "delta_sign", 1)
            elif self.delta_sign not in (1, -1):
                raise InvalidInputError("delta_sign must be +1 or -1")
        elif self.delta_sign is not None:
            raise InvalidInputError("delta_sign only applies to N = 2n+1")

    @property
    def odd(self) -> bool:
        return self.N % 2 == 1

    def flipped(self, times: int = 1) -> "SpaceSpec":
        """The spec after an operator of the given arity (odd N flips Delta_+/-)."""
        if not self.odd or times % 2 == 0:
            return self
        return replace(self, delta_sign=-self.delta_sign)


class GenKind(str, Enum):
    U = "u"
    UBAR = "ubar"
    U0 = "u0"
    X = "X"
    Y = "Y"
    H = "h"
    REFLECTION = "reflection"
    Z = "z"
    A = "A"


@dataclass(frozen=True)
class Generator:
    kind: GenKind
    index: int = 0

    def __str__(self) -> str:
        return f"{self.kind.value}{self.index or ''}"


def lie_generators(spec: SpaceSpec) -> List[Generator]:
    gens = []
    for i in range(1, spec.n + 1):
        # so(2) has no root vectors
        if spec.odd or spec.n > 1:
            gens.extend([Generator(GenKind.X, i), Generator(GenKind.Y, i)])
        gens.append(Generator(GenKind.H, i))
    return gens


def group_generators(spec: SpaceSpec) -> List[Generator]:
    return [Generator(GenKind.Z)] if spec.odd else [Generator(GenKind.REFLECTION)]


# ---------------------------------------------------------------- bases

@lru_cache(maxsize=None)
def fock_basis(n: int) -> Tuple[Fock, ...]:
    return tuple(tuple(i + 1 for i in range(n) if mask >> i & 1) for mask in range(1 << n))


def half_spin_basis(n: int, eps: int) -> Tuple[Fock, ...]:
    return tuple(I for I in fock_basis(n) if (-1) ** len(I) == eps)


@lru_cache(maxsize=None)
def v_basis(n: int, odd: bool) -> Tuple[VIndex, ...]:
    return tuple(range(1, n + 1)) + ((0,) if odd else ()) + tuple(-k for k in range(n, 0, -1))


def bar(a: VIndex) -> VIndex:
    return -a


def form(a: VIndex, b: VIndex) -> int:
    """The symmetric form S: (u_k, u_kbar) = 1, (u_0', u_0') = 1."""
    return 1 if a == -b else 0


def v_label(a: VIndex) -> str:
    if a > 0:
        return f"u{a}"
    if a == 0:
        return "u0'"
    return f"u{-a}bar"


def sort_sign(seq: Sequence, key=None) -> int:
    """Sign of the permutation sorting seq (entries distinct)."""
    keys = [key(x) if key else x for x in seq]
    sign = 1
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            if keys[i] > keys[j]:
                sign = -sign
    return sign


def arrangement_sign(reference: Sequence, arrangement: Sequence) -> int:
    """Sign of the permutation carrying reference to arrangement."""
    pos = {x: i for i, x in enumerate(reference)}
    return sort_sign([pos[x] for x in arrangement])


def normalize_bracket(seq: Sequence[int]) -> Tuple[int, Fock]:
    """Alternating normalization: (sign, sorted) or (0, ()) on a repeat."""
    if len(set(seq)) != len(seq):
        return 0, ()
    return sort_sign(seq), tuple(sorted(seq))


def bracket_union(I: Sequence[int], K: Sequence[int]) -> Tuple[int, Fock]:
    """[I, K] = sign * [I u K] for sorted I, K."""
    return normalize_bracket(tuple(I) + tuple(K))


# ---------------------------------------------------------------- Clifford action

def _clifford_on_basis(spec: SpaceSpec, g: Generator, I: Fock) -> DeltaVector:
    rebase = -1 if spec.odd and spec.delta_sign == -1 else 1
    k = g.index
    if g.kind is GenKind.U:
        if k not in I:
            return {}
        s = I.index(k) + 1
        return {tuple(i for i in I if i != k): QSqrt2((-1) ** (s - 1) * rebase)}
    if g.kind is GenKind.UBAR:
        if k in I:
            return {}
        new = tuple(sorted(I + (k,)))
        s = new.index(k) + 1
        return {new: QSqrt2((-1) ** (s - 1) * rebase)}
    if g.kind is GenKind.U0:
        if not spec.odd:
            raise InvalidInputError("u_0 only exists for N = 2n+1")
        return {I: QSqrt2(spec.delta_sign * (-1) ** len(I))}
    raise InvalidInputError(f"{g} is not a Clifford generator")


def _apply_on_basis(fn, v: Mapping[Fock, QSqrt2]) -> DeltaVector:
    out: DeltaVector = {}
    for I, c in v.items():
        vec_add_into(out, fn(I), c)
    return out


def normalize_delta(v: Mapping[Sequence[int], QSqrt2]) -> DeltaVector:
    """Rewrite unsorted brackets as signed sorted ones; brackets with a repeat vanish."""
    out: DeltaVector = {}
    for seq, c in v.items():
        sign, I = normalize_bracket(seq)
        if sign:
            vec_add_term(out, I, c * sign)
    return out


def clifford_action(spec: SpaceSpec, g: Generator, v: Mapping[Fock, QSqrt2]) -> DeltaVector:
    v = normalize_delta(v)
    return _apply_on_basis(lambda I: _clifford_on_basis(spec, g, I), v)


def _word(spec: SpaceSpec, gens: Sequence[Generator], I: Fock) -> DeltaVector:
    """Apply gens right to left to [I]."""
    v: DeltaVector = {I: ONE}
    for g in reversed(gens):
        v = clifford_action(spec, g, v)
    return v


def _U(k: int) -> Generator:
    return Generator(GenKind.U, k)


def _Ub(k: int) -> Generator:
    return Generator(GenKind.UBAR, k)


_U0 = Generator(GenKind.U0)


def _lie_on_basis(spec: SpaceSpec, g: Generator, I: Fock) -> DeltaVector:
    n, k = spec.n, g.index
    if not 1 <= k <= n:
        raise InvalidInputError(f"generator index {k} out of range 1..{n}")
    if g.kind is GenKind.H:
        out = _word(spec, [_U(k), _Ub(k)], I)
        vec_add_into(out, _word(spec, [_Ub(k), _U(k)], I), -1)
        return {key: c * HALF for key, c in out.items()}
    if k < n:
        if g.kind is GenKind.X:
            return _word(spec, [_U(k), _Ub(k + 1)], I)
        return _word(spec, [_U(k + 1), _Ub(k)], I)
    if spec.odd:
        if g.kind is GenKind.X:
            return _word(spec, [_U(n), _U0], I)
        return _word(spec, [_U0, _Ub(n)], I)
    if g.kind is GenKind.X:
        return _word(spec, [_U(n - 1), _U(n)], I)
    return _word(spec, [_Ub(n), _Ub(n - 1)], I)


def so_action_on_delta(spec: SpaceSpec, g: Generator, v: Mapping[Fock, QSqrt2]) -> DeltaVector:
    if g.kind not in (GenKind.X, GenKind.Y, GenKind.H):
        raise InvalidInputError(f"{g} is not a Lie algebra generator")
    return _apply_on_basis(lambda I: _lie_on_basis(spec, g, I), v)


def _group_on_basis(spec: SpaceSpec, g: Generator, I: Fock) -> DeltaVector:
    n = spec.n
    if g.kind is GenKind.REFLECTION:
        if spec.odd:
            raise InvalidInputError("the reflection u_n - u_nbar is used for N = 2n")
        out = _clifford_on_basis(spec, _U(n), I)
        vec_add_into(out, _clifford_on_basis(spec, _Ub(n), I), -1)
        return out
    if g.kind is GenKind.Z:
        if not spec.odd:
            raise InvalidInputError("the central element z is used for N = 2n+1")
        return {I: QSqrt2(spec.delta_sign)}
    if g.kind is GenKind.A:
        if spec.odd:
            raise InvalidInputError("the associator A is defined for N = 2n")
        return {I: QSqrt2((-1) ** len(I))}
    raise InvalidInputError(f"{g} is not a group generator")


@lru_cache(maxsize=None)
def _delta_columns(spec: SpaceSpec, g: Generator) -> Tuple[Tuple[Fock, Tuple[Tuple[Fock, QSqrt2], ...]], ...]:
    base = replace(spec, dual=False)
    if g.kind in (GenKind.X, GenKind.Y, GenKind.H):
        fn = lambda I: _lie_on_basis(base, g, I)  # noqa: E731
    elif g.kind in (GenKind.U, GenKind.UBAR, GenKind.U0):
        fn = lambda I: _clifford_on_basis(base, g, I)  # noqa: E731
    else:
        fn = lambda I: _group_on_basis(base, g, I)  # noqa: E731
    return tuple((I, tuple(fn(I).items())) for I in fock_basis(spec.n))


def delta_matrix(spec: SpaceSpec, g: Generator) -> SparseLinearMap:
    """Matrix of g on Delta, or on Delta* when spec.dual is set."""
    basis = fock_basis(spec.n)
    cols = {I: dict(col) for I, col in _delta_columns(replace(spec, dual=False), g)}
    m = SparseLinearMap(basis, basis, cols)
    if not spec.dual:
        return m
    if g.kind in (GenKind.Z, GenKind.A):
        return m
    return m.transpose().scale(-1)


def act_on_delta(spec: SpaceSpec, g: Generator, v: Mapping[Fock, QSqrt2]) -> DeltaVector:
    return delta_matrix(spec, g).apply(v)


def dual_action(spec: SpaceSpec, g: Generator, f: Mapping[Fock, QSqrt2]) -> DeltaVector:
    """rho*(g) = -rho(g)^T on the dual brackets [I]* (z and A are self-dual)."""
    return delta_matrix(replace(spec, dual=True), g).apply(f)


def pin_extra_action(spec: SpaceSpec, g: Generator, v: Mapping[Fock, QSqrt2]) -> DeltaVector:
    if g.kind not in (GenKind.REFLECTION, GenKind.Z, GenKind.A):
        raise InvalidInputError(f"{g} is not one of reflection, z, A")
    if g.kind is GenKind.REFLECTION and spec.odd:
        raise InvalidInputError("the reflection u_n - u_nbar is used for N = 2n")
    if g.kind is GenKind.Z and not spec.odd:
        raise InvalidInputError("the central element z is used for N = 2n+1")
    if g.kind is GenKind.A and spec.odd:
        raise InvalidInputError("the associator A is defined for N = 2n")
    return act_on_delta(spec, g, v)


# ---------------------------------------------------------------- action on V

def v_action(spec: SpaceSpec, g: Generator, a: VIndex) -> Dict[VIndex, QSqrt2]:
    """Image of the basis vector u_a under g (Lie generators act by ad)."""
    n, k = spec.n, g.index
    kind = g.kind
    if kind is GenKind.H:
        if a == k:
            return {a: ONE}
        if a == -k:
            return {a: -ONE}
        return {}
    if kind is GenKind.Z:
        if not spec.odd:
            raise InvalidInputError("the central element z is used for N = 2n+1")
        return {a: -ONE}
    if kind is GenKind.REFLECTION:
        if spec.odd:
            raise InvalidInputError("the reflection u_n - u_nbar is used for N = 2n")
        if a == n:
            return {-n: ONE}
        if a == -n:
            return {n: ONE}
        return {a: ONE}
    if kind not in (GenKind.X, GenKind.Y):
        raise InvalidInputError(f"{g} does not act on V")
    if k < n:
        if kind is GenKind.X:
            if a == k + 1:
                return {k: ONE}
            if a == -k:
                return {-(k + 1): -ONE}
            return {}
        if a == k:
            return {k + 1: ONE}
        if a == -(k + 1):
            return {-k: -ONE}
        return {}
    if spec.odd:
        if kind is GenKind.X:
            if a == 0:
                return {n: SQRT2}
            if a == -n:
                return {0: -SQRT2}
            return {}
        if a == n:
            return {0: SQRT2}
        if a == 0:
            return {-n: -SQRT2}
        return {}
    if kind is GenKind.X:
        if a == -n:
            return {n - 1: ONE}
        if a == -(n - 1):
            return {n: -ONE}
        return {}
    if a == n - 1:
        return {-n: ONE}
    if a == n:
        return {-(n - 1): -ONE}
    return {}


def so_action_on_V(spec: SpaceSpec, g: Generator) -> SparseLinearMap:
    basis = v_basis(spec.n, spec.odd)
    return SparseLinearMap.from_function(basis, basis, lambda a: v_action(spec, g, a))


def is_lie_generator(g: Generator) -> bool:
    return g.kind in (GenKind.X, GenKind.Y, GenKind.H)


# ---------------------------------------------------------------- duality

def iota_delta_sign(spec: SpaceSpec, I: Fock) -> int:
    n, r, total = spec.n, len(I), sum(I)
    if spec.odd:
        return (-1) ** ((n + 1) * r - total)
    sign = (-1) ** total
    if n % 2 == 1 and r % 2 == 1:
        sign = -sign
    return sign


def complement(n: int, I: Sequence[int]) -> Fock:
    s = set(I)
    return tuple(i for i in range(1, n + 1) if i not in s)


def iota_delta(spec: SpaceSpec, v: Mapping[Fock, QSqrt2]) -> DeltaVector:
    """The invariant pairing Delta -> Delta*: [I] -> sign * [I^c]*."""
    out: DeltaVector = {}
    for I, c in v.items():
        vec_add_term(out, complement(spec.n, I), c * iota_delta_sign(spec, I))
    return out


def act_on_delta_tensor_dual(
    spec: SpaceSpec,
    g: Generator,
    x: Mapping[Tuple[Fock, Fock], QSqrt2],
    right_spec: Optional[SpaceSpec] = None,
) -> DeltaTensorDual:
    """rho x 1 + 1 x rho* for Lie generators, rho(g) x rho*(g) for group elements.

    right_spec selects a different Delta_+/- for the dual factor (odd N).
    """
    left = delta_matrix(replace(spec, dual=False), g)
    right = delta_matrix(replace(right_spec or spec, dual=True), g)
    out: DeltaTensorDual = {}
    if is_lie_generator(g):
        for (A, B), c in x.items():
            for A2, a in left.column(A).items():
                vec_add_term(out, (A2, B), c * a)
            for B2, b in right.column(B).items():
                vec_add_term(out, (A, B2), c * b)
        return out
    for (A, B), c in x.items():
        for A2, a in left.column(A).items():
            for B2, b in right.column(B).items():
                vec_add_term(out, (A2, B2), c * a * b)
    return out


def delta_tensor_dual_basis(n: int) -> List[Tuple[Fock, Fock]]:
    return [(A, B) for A in fock_basis(n) for B in fock_basis(n)]


def iota_prime_delta(x: Mapping[Tuple[Fock, Fock], QSqrt2]) -> DeltaTensorDual:
    """[I] x [J]* -> [J] x [I]*."""
    return {(B, A): c for (A, B), c in x.items()}
