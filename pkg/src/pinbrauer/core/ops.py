"""Equivariant operators on Delta x V^k and the realization of diagrams.

Tensor positions are 1-based. Basis keys of Delta x V^k are pairs
(bracket, tuple of V indices). An exterior element in the output of an
immersion is placed as k!<seq>, i.e. the signed sum over all orderings of
its canonical sequence, with the first factor at the first listed position.
Ordered leg lists carry their sign: op(list) = sign(sort) * op(sorted).
"""
from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from pinbrauer.core.clifford import (
    Fock,
    Generator,
    SpaceSpec,
    VIndex,
    arrangement_sign,
    bracket_union,
    delta_matrix,
    fock_basis,
    form,
    group_generators,
    is_lie_generator,
    lie_generators,
    normalize_bracket,
    sort_sign,
    v_action,
    v_basis,
    v_label,
)
from pinbrauer.core.diagrams import (
    DiagramExpr,
    GBDiagram,
    diagram_from_parts,
    enumerate_gb,
    read_diagram,
    temperley_lieb_generator,
)
from pinbrauer.core.errors import InvalidInputError, OutOfRangeError, UnsupportedError
from pinbrauer.core.exterior import ExtElement, ext_basis, r_ell, wedge_normalize
from pinbrauer.core.linalg import (
    SparseLinearMap,
    joint_kernel,
    nullspace,
    rank_of,
    span_basis,
    vec_add_into,
    vec_add_term,
    vec_scale,
)
from pinbrauer.core.phi import phi
from pinbrauer.core.scalars import ONE, QSqrt2, lower_factorial, pow2_half

logger = logging.getLogger(__name__)

TensorKey = Tuple[Fock, Tuple[VIndex, ...]]
TensorVector = Dict[TensorKey, QSqrt2]
Pair = Tuple[int, int]
BlockTerms = List[Tuple[Fock, Tuple[VIndex, ...], QSqrt2]]
Block = Callable[[Fock, Tuple[VIndex, ...]], BlockTerms]

FAMILIES = ("odd", "even")


def family_of(spec: SpaceSpec) -> str:
    return "odd" if spec.odd else "even"


def _check_family(family: str) -> bool:
    if family not in FAMILIES:
        raise InvalidInputError(f"family must be 'odd' or 'even', got {family!r}")
    return family == "odd"


# ---------------------------------------------------------------- bases

@lru_cache(maxsize=None)
def _tensor_basis(n: int, odd: bool, k: int) -> Tuple[TensorKey, ...]:
    vb = v_basis(n, odd)
    return tuple((F, seq) for F in fock_basis(n) for seq in itertools.product(vb, repeat=k))


def tensor_basis(spec: SpaceSpec, k: int) -> Tuple[TensorKey, ...]:
    if k < 0:
        raise InvalidInputError("k must be nonnegative")
    return _tensor_basis(spec.n, spec.odd, k)


def tensor_key_label(key: TensorKey) -> str:
    F, seq = key
    legs = " x ".join(v_label(a) for a in seq)
    bracket = "[" + ",".join(map(str, F)) + "]"
    return f"{bracket} x {legs}" if legs else bracket


@lru_cache(maxsize=None)
def _signed_perms(m: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    return tuple((perm, sort_sign(perm)) for perm in itertools.permutations(range(m)))


def _placements(seq: Sequence[VIndex]) -> List[Tuple[Tuple[VIndex, ...], int]]:
    """All orderings of seq with the sign of the reordering."""
    return [(tuple(seq[i] for i in perm), s) for perm, s in _signed_perms(len(seq))]


def _subsets(ground: Sequence[int]) -> List[Tuple[int, ...]]:
    return [
        tuple(ground[i] for i in range(len(ground)) if mask >> i & 1)
        for mask in range(1 << len(ground))
    ]


def _outside(A: Iterable[int], B: Iterable[int]) -> int:
    """|A - A n B|"""
    b = set(B)
    return sum(1 for a in A if a not in b)


def _positions(k: int, legs: Sequence[int], what: str) -> None:
    if len(set(legs)) != len(legs) or any(not 1 <= t <= k for t in legs):
        raise InvalidInputError(f"{what} positions {list(legs)} are not distinct positions in 1..{k}")


# ---------------------------------------------------------------- Alt

def alt(T: Sequence[int], v: TensorVector) -> TensorVector:
    """Signed average over the permutations of the tensor factors at positions T."""
    T = list(T)
    p = len(T)
    if p <= 1:
        return dict(v)
    scale = QSqrt2(Fraction(1, factorial(p)))
    out: TensorVector = {}
    for (F, seq), c in v.items():
        _positions(len(seq), T, "Alt")
        vals = [seq[t - 1] for t in T]
        for perm, s in _signed_perms(p):
            new = list(seq)
            for t, idx in zip(T, perm):
                new[t - 1] = vals[idx]
            vec_add_term(out, (F, tuple(new)), c * scale * s)
    return out


def alt_map(spec: SpaceSpec, k: int, T: Sequence[int]) -> SparseLinearMap:
    basis = tensor_basis(spec, k)
    return SparseLinearMap.from_function(basis, basis, lambda key: alt(T, {key: ONE}))


# ---------------------------------------------------------------- pr and inj on wedges

@lru_cache(maxsize=None)
def pr_ext(spec: SpaceSpec, F: Fock, elem: ExtElement) -> Tuple[Tuple[Fock, QSqrt2], ...]:
    """The projection of [F] x <elem> onto Delta."""
    if not set(elem.J) <= set(F):
        return ()
    K = tuple(t for t in F if t not in elem.J)
    sign = arrangement_sign(F, elem.J + K)
    if elem.has0:
        sign *= (-1) ** _outside(K, elem.W)
    else:
        sign *= (-1) ** _outside(elem.W, K)
    if not spec.odd and elem.degree % 2:
        sign *= (-1) ** (len(K) + len(elem.I))
    s, out = bracket_union(elem.I, K)
    if s == 0:
        return ()
    return ((out, pow2_half(len(elem.J) + len(elem.I)) * (sign * s)),)


@lru_cache(maxsize=None)
def inj_ext(spec: SpaceSpec, q: int, F: Fock) -> Tuple[Tuple[Fock, ExtElement, QSqrt2], ...]:
    """The immersion of [F] into Delta x (q-th exterior power), as terms [bracket] x q!<elem>."""
    n = spec.n
    out: Dict[Tuple[Fock, ExtElement], QSqrt2] = {}
    outside_F = tuple(j for j in range(1, n + 1) if j not in F)
    for I in _subsets(F):
        K = tuple(t for t in F if t not in I)
        eps = arrangement_sign(F, I + K)
        for J in _subsets(outside_F):
            base = len(J) + len(I)
            if base > q:
                continue
            s, bracket = bracket_union(J, K)
            rest = tuple(w for w in range(1, n + 1) if w not in I and w not in J)
            scale = pow2_half(base)
            for W in _subsets(rest):
                size = base + 2 * len(W)
                if size == q:
                    sign, has0 = (-1) ** _outside(W, K), False
                elif spec.odd and size + 1 == q:
                    sign, has0 = (-1) ** _outside(K, W), True
                else:
                    continue
                if not spec.odd and q % 2:
                    sign *= (-1) ** (len(J) + len(K))
                vec_add_term(out, (bracket, ExtElement(J, W, I, has0)), scale * (eps * s * sign))
    return tuple((B, e, c) for (B, e), c in out.items())


@lru_cache(maxsize=None)
def psi_ext(spec: SpaceSpec, q: int, F: Fock, elem: ExtElement) -> Tuple[Tuple[Fock, ExtElement, QSqrt2], ...]:
    """psi^p_q of [F] x <elem> in closed form, p = deg elem, as terms [bracket] x q!<elem'>."""
    n = spec.n
    p = elem.degree
    I, J, S2 = elem.J, elem.I, elem.W
    in_T = set(F)
    used = set(I) | set(J) | set(S2)
    out: Dict[Tuple[Fock, ExtElement], QSqrt2] = {}
    J_ref = tuple(-j for j in reversed(J))
    for I1 in _subsets(tuple(i for i in I if i in in_T)):
        S3 = tuple(i for i in I if i not in I1)
        e_I = arrangement_sign(I, I1 + S3)
        for J1 in _subsets(tuple(j for j in J if j not in in_T)):
            S1 = tuple(j for j in J if j not in J1)
            e_J = arrangement_sign(J_ref, tuple(-s for s in reversed(S1)) + tuple(-j for j in reversed(J1)))
            for I2 in _subsets(tuple(t for t in F if t not in used)):
                K = tuple(t for t in F if t not in I1 and t not in I2)
                e_T = arrangement_sign(F, I1 + I2 + K)
                outside_T = tuple(j for j in range(1, n + 1) if j not in in_T and j not in used)
                for J2 in _subsets(outside_T):
                    s_b, bracket = normalize_bracket(J1 + J2 + K)
                    if s_b == 0:
                        continue
                    common = pow2_half(len(I1) + len(J1) + len(I2) + len(J2)) * (e_T * e_I * e_J * s_b)
                    free4 = tuple(s for s in range(1, n + 1) if s not in used and s not in J2 and s not in I2)
                    for S4 in _subsets(free4):
                        _psi_term(spec, p, q, elem.has0, I1, J1, I2, J2, S1, S2, S3, S4, K, bracket, common, out)
    return tuple((B, e, c) for (B, e), c in out.items())


def _psi_term(spec, p, q, has0_in, I1, J1, I2, J2, S1, S2, S3, S4, K, bracket, common, out) -> None:
    i1, j1, j2, k = len(I1), len(J1), len(J2), len(K)
    s1, s2, s3, s4 = len(S1), len(S2), len(S3), len(S4)
    plain = len(I2) + j2 + s1 + s3 + 2 * s4
    union = set(S1) | set(S2) | set(S3) | set(S4)
    inside = _outside(S1, K) + _outside(S2, K) + _outside(S3, K) + _outside(S4, K)
    sign_a = (-1) ** (inside + j2 * s1 + s3 * j2 + s3 + i1 * q)
    has0_out = False
    if spec.odd and not has0_in:
        if plain == q:
            sign = sign_a
        elif plain + 1 == q:
            sign = (-1) ** (_outside(K, union) + j2 * (s1 + s3) + s2 + i1 * q)
            has0_out = True
        else:
            return
    elif spec.odd:
        if plain != q:
            return
        sign = (-1) ** (_outside(K, union) + j2 * (s1 + s3 + 1) + s4 + i1 * q)
    else:
        if plain != q:
            return
        sign = sign_a
        if (p + q) % 2:
            sign *= (-1) ** (j1 + j2 + k)
    seq = (
        J2
        + S3
        + S4
        + ((0,) if has0_out else ())
        + tuple(-s for s in reversed(S4))
        + tuple(-s for s in reversed(S1))
        + tuple(-i for i in reversed(I2))
    )
    ws, e = wedge_normalize(seq)
    if e is None:
        return
    vec_add_term(out, (bracket, e), common * (sign * ws))


# ---------------------------------------------------------------- assembly

def _rt_block(spec: SpaceSpec, p: int, q: int) -> Block:
    mid = spec.flipped(p)

    def block(F: Fock, vals: Tuple[VIndex, ...]) -> BlockTerms:
        sign, elem = wedge_normalize(vals)
        if elem is None:
            return []
        terms: BlockTerms = []
        for F1, c1 in pr_ext(spec, F, elem):
            for F2, e2, c2 in inj_ext(mid, q, F1):
                for placed, s in _placements(e2.canonical_sequence()):
                    terms.append((F2, placed, c1 * c2 * (sign * s)))
        return terms

    return block


def _psi_block(spec: SpaceSpec, q: int) -> Block:
    def block(F: Fock, vals: Tuple[VIndex, ...]) -> BlockTerms:
        sign, elem = wedge_normalize(vals)
        if elem is None:
            return []
        terms: BlockTerms = []
        for F2, e2, c in psi_ext(spec, q, F, elem):
            for placed, s in _placements(e2.canonical_sequence()):
                terms.append((F2, placed, c * (sign * s)))
        return terms

    return block


def _check_partition(
    k: int, l: int, upper: Sequence[int], caps: Sequence[Pair], throughs: Sequence[Pair], cups: Sequence[Pair], lower: Sequence[int]
) -> None:
    top = list(upper) + [a for c in caps for a in c] + [a for a, _ in throughs]
    bottom = list(lower) + [b for c in cups for b in c] + [b for _, b in throughs]
    if sorted(top) != list(range(1, k + 1)):
        raise InvalidInputError(f"input positions {top} do not partition 1..{k}")
    if sorted(bottom) != list(range(1, l + 1)):
        raise InvalidInputError(f"output positions {bottom} do not partition 1..{l}")


def _assemble(
    spec: SpaceSpec,
    k: int,
    l: int,
    upper: Sequence[int],
    caps: Sequence[Pair],
    throughs: Sequence[Pair],
    cups: Sequence[Pair],
    lower: Sequence[int],
    block: Block,
    out_spec: SpaceSpec,
) -> SparseLinearMap:
    _check_partition(k, l, upper, caps, throughs, cups, lower)
    vb = v_basis(spec.n, spec.odd)
    cup_fills = list(itertools.product(vb, repeat=len(cups)))
    domain = tensor_basis(spec, k)
    codomain = tensor_basis(out_spec, l)
    columns: Dict[TensorKey, TensorVector] = {}
    for key in domain:
        F, seq = key
        weight = 1
        for a, b in caps:
            weight *= form(seq[a - 1], seq[b - 1])
            if not weight:
                break
        if not weight:
            continue
        col: TensorVector = {}
        for F2, placed, c in block(F, tuple(seq[i - 1] for i in upper)):
            base = [0] * l
            for i, j in throughs:
                base[j - 1] = seq[i - 1]
            for pos, val in zip(lower, placed):
                base[pos - 1] = val
            for fill in cup_fills:
                for (a, b), val in zip(cups, fill):
                    base[a - 1] = val
                    base[b - 1] = -val
                vec_add_term(col, (F2, tuple(base)), c * weight)
        if col:
            columns[key] = col
    return SparseLinearMap(domain, codomain, columns)


def word_operator(
    spec: SpaceSpec,
    k: int,
    l: int,
    pr_legs: Sequence[int] = (),
    caps: Sequence[Pair] = (),
    throughs: Sequence[Pair] = (),
    cups: Sequence[Pair] = (),
    inj_legs: Sequence[int] = (),
) -> SparseLinearMap:
    """inj_{inj_legs} o (caps, throughs, cups) o pr_{pr_legs} from Delta x V^k to Delta x V^l."""
    p, q = len(pr_legs), len(inj_legs)
    if p > spec.n or q > spec.n:
        raise OutOfRangeError(f"pr/inj are defined for at most n={spec.n} legs, got {p} and {q}")
    return _assemble(spec, k, l, pr_legs, caps, throughs, cups, inj_legs, _rt_block(spec, p, q), spec.flipped(p + q))


def psi_operator(
    spec: SpaceSpec,
    k: int,
    l: int,
    upper: Sequence[int] = (),
    caps: Sequence[Pair] = (),
    throughs: Sequence[Pair] = (),
    cups: Sequence[Pair] = (),
    lower: Sequence[int] = (),
    target: Optional[SpaceSpec] = None,
) -> SparseLinearMap:
    """psi^{upper}_{lower} tensored with the Brauer part, Delta x V^k -> Delta x V^l.

    With target set to a Delta_+/- tag the parity rule can not reach, the
    result is the zero map.
    """
    p, q = len(upper), len(lower)
    if p + q > spec.N:
        raise OutOfRangeError(f"psi needs at most N={spec.N} isolated vertices, got {p + q}")
    out_spec = spec.flipped(p + q)
    if target is not None and target != out_spec:
        logger.debug("psi %d -> %d into %s is forced to zero by parity", p, q, target)
        return SparseLinearMap.zero(tensor_basis(spec, k), tensor_basis(target, l))
    return _assemble(spec, k, l, upper, caps, throughs, cups, lower, _psi_block(spec, q), out_spec)


# ---------------------------------------------------------------- single operators on vectors

def pr_T(spec: SpaceSpec, k: int, T: Sequence[int], v: TensorVector) -> TensorVector:
    _positions(k, T, "pr")
    rest = [i for i in range(1, k + 1) if i not in T]
    m = word_operator(spec, k, k - len(T), pr_legs=T, throughs=[(i, j + 1) for j, i in enumerate(rest)])
    return m.apply(v)


def inj_T(spec: SpaceSpec, k: int, T: Sequence[int], v: TensorVector) -> TensorVector:
    """Insert the immersion at output positions T of Delta x V^(k+|T|)."""
    l = k + len(T)
    _positions(l, T, "inj")
    rest = [j for j in range(1, l + 1) if j not in T]
    m = word_operator(spec, k, l, inj_legs=T, throughs=[(i + 1, j) for i, j in enumerate(rest)])
    return m.apply(v)


def cont(spec: SpaceSpec, k: int, i: int, j: int, v: TensorVector) -> TensorVector:
    _positions(k, (i, j), "contraction")
    rest = [a for a in range(1, k + 1) if a not in (i, j)]
    m = word_operator(spec, k, k - 2, caps=[(i, j)], throughs=[(a, b + 1) for b, a in enumerate(rest)])
    return m.apply(v)


def insert_idV(spec: SpaceSpec, k: int, i: int, j: int, v: TensorVector) -> TensorVector:
    """Place sum_b u_b x u_bbar at output positions i, j of Delta x V^(k+2)."""
    l = k + 2
    _positions(l, (i, j), "insertion")
    rest = [b for b in range(1, l + 1) if b not in (i, j)]
    m = word_operator(spec, k, l, cups=[(i, j)], throughs=[(a + 1, b) for a, b in enumerate(rest)])
    return m.apply(v)


def partial_perm(spec: SpaceSpec, k: int, l: int, mapping: Dict[int, int], v: TensorVector) -> TensorVector:
    """Send input factor i to output position mapping[i]; needs k = l = len(mapping)."""
    if k != l or len(mapping) != k:
        raise InvalidInputError("a partial permutation of the factors must be a bijection here")
    return word_operator(spec, k, l, throughs=sorted(mapping.items())).apply(v)


def psi(spec: SpaceSpec, p: int, q: int, T_u: Sequence[int], T_l: Sequence[int], v: TensorVector) -> TensorVector:
    """psi^{T_u}_{T_l} on Delta x V^k with the other factors passing through in order."""
    if (len(T_u), len(T_l)) != (p, q):
        raise InvalidInputError("the index sets must have p and q elements")
    if not v:
        return {}
    k = len(next(iter(v))[1])
    l = k - p + q
    _positions(k, T_u, "psi input")
    _positions(l, T_l, "psi output")
    rest_u = [i for i in range(1, k + 1) if i not in T_u]
    rest_l = [j for j in range(1, l + 1) if j not in T_l]
    m = psi_operator(spec, k, l, upper=T_u, throughs=list(zip(rest_u, rest_l)), lower=T_l)
    return m.apply(v)


# ---------------------------------------------------------------- the invariant-element construction

@lru_cache(maxsize=None)
def _phi_rows(spec: SpaceSpec, r: int) -> Dict[ExtElement, Dict[Fock, Tuple[Tuple[Fock, QSqrt2], ...]]]:
    """For each wedge e of degree r: column bracket T -> [(A, coefficient of [A] x [T]*)] in phi(e swapped)."""
    table: Dict[ExtElement, Dict[Fock, List[Tuple[Fock, QSqrt2]]]] = {}
    for e in ext_basis(spec, r):
        by_T: Dict[Fock, List[Tuple[Fock, QSqrt2]]] = {}
        for (A, B), c in phi(spec, r, {e.swapped(): ONE}).items():
            by_T.setdefault(B, []).append((A, c))
        table[e] = by_T
    return {e: {T: tuple(rows) for T, rows in by_T.items()} for e, by_T in table.items()}


def psi_oracle_map(spec: SpaceSpec, p: int, q: int) -> SparseLinearMap:
    """psi^p_q rebuilt from the invariant element of degree p + q and phi."""
    r = p + q
    if r > spec.N:
        raise OutOfRangeError(f"p + q = {r} exceeds N = {spec.N}")
    rows = _phi_rows(spec, r)
    scale = pow2_half(spec.n)
    vb = v_basis(spec.n, spec.odd)
    domain = tensor_basis(spec, p)
    columns: Dict[TensorKey, TensorVector] = {}
    for key in domain:
        T, x = key
        head = tuple(-a for a in reversed(x))
        if len(set(head)) != p:
            continue
        col: TensorVector = {}
        spare = [a for a in vb if a not in head]
        for tail_set in itertools.combinations(spare, q):
            _, e = wedge_normalize(head + tail_set)
            hits = rows[e].get(T)
            if not hits:
                continue
            canonical = e.canonical_sequence()
            for tail, _ in _placements(tail_set):
                s = arrangement_sign(canonical, head + tail)
                for A, c in hits:
                    vec_add_term(col, (A, tail), scale * c * s)
        if col:
            columns[key] = col
    logger.debug("psi oracle %d -> %d: %d nonzero columns", p, q, len(columns))
    return SparseLinearMap(domain, tensor_basis(spec.flipped(r), q), columns)


def psi_oracle(spec: SpaceSpec, p: int, q: int, v: TensorVector) -> TensorVector:
    return psi_oracle_map(spec, p, q).apply(v)


def psi_map(spec: SpaceSpec, p: int, q: int) -> SparseLinearMap:
    """The closed form of psi^p_q from Delta x V^p to Delta x V^q."""
    return psi_operator(spec, p, q, upper=range(1, p + 1), lower=range(1, q + 1))


# ---------------------------------------------------------------- independent intertwiners

IphiTerm = Tuple[int, Tuple[int, ...], Tuple[Pair, ...], Tuple[int, ...]]


def iphi_terms(upper: Sequence[int], lower: Sequence[int], i: int) -> List[IphiTerm]:
    """(sign, remaining upper, pairs, remaining lower) for every i-subset pairing of the two lists."""
    upper, lower = tuple(upper), tuple(lower)
    out: List[IphiTerm] = []
    for A in itertools.combinations(upper, i):
        rest_u = tuple(u for u in upper if u not in A)
        s_u = arrangement_sign(upper, A + rest_u)
        for B in itertools.combinations(lower, i):
            rest_l = tuple(b for b in lower if b not in B)
            for image in itertools.permutations(B):
                s_l = arrangement_sign(lower, image + rest_l)
                out.append((s_u * s_l, rest_u, tuple(zip(A, image)), rest_l))
    return out


def iphi(spec: SpaceSpec, k: int, l: int, i: int) -> SparseLinearMap:
    """The i-th independent intertwiner from Delta x V^k to Delta x V^l: sum of inj o pairs o pr words."""
    total: Optional[SparseLinearMap] = None
    for sign, rest_u, pairs, rest_l in iphi_terms(range(1, k + 1), range(1, l + 1), i):
        term = word_operator(spec, k, l, pr_legs=rest_u, throughs=pairs, inj_legs=rest_l).scale(sign)
        total = term if total is None else total + term
    if total is None:
        return SparseLinearMap.zero(tensor_basis(spec, k), tensor_basis(spec.flipped(k + l), l))
    return total


# ---------------------------------------------------------------- realization

@lru_cache(maxsize=4096)
def realize(spec: SpaceSpec, d: GBDiagram, param: str = "rt") -> SparseLinearMap:
    """The exact matrix of a diagram in the rt or the inv parametrization."""
    reading = read_diagram(d)
    T_u, T_l = reading.upper_isolated, reading.lower_isolated
    parts = (reading.upper_pairs, reading.through, reading.lower_pairs)
    if param == "rt":
        return word_operator(spec, d.k, d.l, T_u, *parts, T_l)
    if param == "inv":
        return psi_operator(spec, d.k, d.l, T_u, *parts, T_l)
    raise InvalidInputError(f"parametrization must be 'rt' or 'inv', got {param!r}")


def realize_expr(spec: SpaceSpec, expr: DiagramExpr) -> SparseLinearMap:
    """The combination of realized diagrams with X specialized to N."""
    total = SparseLinearMap.zero(
        tensor_basis(spec, expr.k), tensor_basis(spec.flipped(expr.k + expr.l), expr.l)
    )
    for d, c in expr.specialize(spec.N).items():
        total = total + realize(spec, d, expr.param).scale(c)
    return total


def basis_change(d: GBDiagram, source: str, family: str, n: Optional[int] = None) -> DiagramExpr:
    """Expand d, read in the source parametrization, in the other one."""
    odd = _check_family(family)
    if source not in ("rt", "inv"):
        raise InvalidInputError(f"parametrization must be 'rt' or 'inv', got {source!r}")
    reading = read_diagram(d)
    U, L = reading.upper_isolated, reading.lower_isolated
    p, q = len(U), len(L)
    if n is not None and (p > n or q > n):
        raise UnsupportedError(f"basis change needs at most n={n} isolated vertices per row, got {p} and {q}")
    out = DiagramExpr(d.k, d.l, param="rt" if source == "inv" else "inv")
    for i in range(min(p, q) + 1):
        if source == "inv":
            eps = (-1) ** ((p - i) * (q - i)) if odd else 1
        else:
            eps = (-1) ** (i + p * q) if odd else (-1) ** i
        for sign, _, pairs, _ in iphi_terms(U, L, i):
            image = diagram_from_parts(d.k, d.l, reading.upper_pairs, reading.lower_pairs, reading.through + pairs)
            out.add_term(image, eps * sign)
    return out


def psi_high_input_map(spec: SpaceSpec, p: int, q: int) -> SparseLinearMap:
    """psi^p_q for p > n through the associator and the complementation of degree p."""
    n, N = spec.n, spec.N
    if p <= n or p + q > N:
        raise OutOfRangeError(f"this route needs n < p and p + q <= N, got p={p}, q={q}")
    m = N - p
    mid = spec.flipped(1) if spec.odd else spec
    scale = QSqrt2(Fraction(1, factorial(m)))
    domain = tensor_basis(spec, p)
    columns: Dict[TensorKey, TensorVector] = {}
    for key in domain:
        F, seq = key
        sign, elem = wedge_normalize(seq)
        if elem is None:
            continue
        a = 1 if spec.odd else (-1) ** len(F)
        col: TensorVector = {}
        for e2, c in r_ell(spec, p, {elem: ONE}).items():
            for placed, s in _placements(e2.canonical_sequence()):
                vec_add_term(col, (F, placed), c * scale * (sign * a * s))
        if col:
            columns[key] = col
    complement = SparseLinearMap(domain, tensor_basis(mid, m), columns)
    eps = 1 if spec.odd else (-1) ** (q + n)
    total: Optional[SparseLinearMap] = None
    for s, rest_u, pairs, _ in iphi_terms(range(1, m + 1), range(1, q + 1), q):
        term = word_operator(mid, m, q, pr_legs=rest_u, throughs=pairs).scale(s * eps)
        total = term if total is None else total + term
    return total @ complement


def psi_high_input(spec: SpaceSpec, p: int, q: int, v: TensorVector) -> TensorVector:
    return psi_high_input_map(spec, p, q).apply(v)


# ---------------------------------------------------------------- group actions on tensors

@lru_cache(maxsize=None)
def tensor_action(spec: SpaceSpec, g: Generator, k: int) -> SparseLinearMap:
    """g on Delta x V^k: derivation for Lie generators, diagonal action for group elements."""
    basis = tensor_basis(spec, k)
    dm = delta_matrix(spec, g)
    images = {a: v_action(spec, g, a) for a in v_basis(spec.n, spec.odd)}
    lie = is_lie_generator(g)
    columns: Dict[TensorKey, TensorVector] = {}
    for key in basis:
        F, seq = key
        col: TensorVector = {}
        if lie:
            for F2, c in dm.column(F).items():
                vec_add_term(col, (F2, seq), c)
            for pos, a in enumerate(seq):
                for b, c in images[a].items():
                    vec_add_term(col, (F, seq[:pos] + (b,) + seq[pos + 1:]), c)
        else:
            legs: List[Tuple[Tuple[VIndex, ...], QSqrt2]] = [((), ONE)]
            for a in seq:
                legs = [(t + (b,), c * val) for t, c in legs for b, val in images[a].items()]
            for F2, c in dm.column(F).items():
                for t, val in legs:
                    vec_add_term(col, (F2, t), c * val)
        if col:
            columns[key] = col
    return SparseLinearMap(basis, basis, columns)


def all_generators(spec: SpaceSpec) -> List[Generator]:
    return lie_generators(spec) + group_generators(spec)


def is_equivariant(
    spec: SpaceSpec, m: SparseLinearMap, k: int, l: int, out_spec: Optional[SpaceSpec] = None
) -> bool:
    """m commutes with every generator, acting on its domain by spec and on its codomain by out_spec."""
    target = out_spec or spec
    for g in all_generators(spec):
        if tensor_action(target, g, l) @ m != m @ tensor_action(spec, g, k):
            logger.debug("not equivariant under %s", g)
            return False
    return True


def realize_equivariant(spec: SpaceSpec, d: GBDiagram, param: str = "rt") -> bool:
    reading = read_diagram(d)
    flips = len(reading.upper_isolated) + len(reading.lower_isolated)
    return is_equivariant(spec, realize(spec, d, param), d.k, d.l, spec.flipped(flips))


# ---------------------------------------------------------------- relations

def _relation_maps(spec: SpaceSpec, number: int, p: int, q: int, t: int) -> Tuple[SparseLinearMap, SparseLinearMap]:
    n, N, odd = spec.n, spec.N, spec.odd
    W = word_operator
    r1 = lambda a, b: range(a, b + 1)  # noqa: E731
    if number in (1, 2):
        if p + q > n:
            raise OutOfRangeError(f"relation {number} needs p + q <= n")
        eps = 1 if odd else (-1) ** ((p + q) * q)
        scalar = lower_factorial(N - p, q) * eps
        if number == 1:
            first = W(spec, p, q + p, throughs=[(j, q + j) for j in r1(1, p)], inj_legs=r1(1, q))
            second = W(spec.flipped(q), q + p, 0, pr_legs=r1(1, q + p))
            return second @ first, W(spec, p, 0, pr_legs=r1(1, p)).scale(scalar)
        first = W(spec, 0, q + p, inj_legs=r1(1, q + p))
        second = W(spec.flipped(q + p), q + p, p, pr_legs=r1(1, q), throughs=[(q + j, j) for j in r1(1, p)])
        return second @ first, W(spec, 0, p, inj_legs=r1(1, p)).scale(scalar)
    if number in (3, 4):
        if p + q > n:
            raise OutOfRangeError(f"relation {number} needs p + q <= n")
        rhs = None
        for i in range(min(p, q) + 1):
            if number == 3:
                eps = (-1) ** (q * i + comb(i + 1, 2) + (0 if odd else p * q))
            else:
                eps = (-1) ** ((q * p if odd else 0) + q * i + comb(i, 2))
            for s, rest_a, pairs, rest_b in iphi_terms(r1(1, q), r1(q + 1, q + p), i):
                if number == 3:
                    term = W(spec, 0, p + q, cups=pairs, inj_legs=rest_a + rest_b)
                else:
                    term = W(spec, p + q, 0, caps=pairs, pr_legs=rest_a + rest_b)
                term = term.scale(s * eps)
                rhs = term if rhs is None else rhs + term
        if number == 3:
            first = W(spec, 0, p, inj_legs=r1(1, p))
            second = W(spec.flipped(p), p, p + q, throughs=[(j, q + j) for j in r1(1, p)], inj_legs=r1(1, q))
        else:
            first = W(spec, p + q, q, pr_legs=r1(q + 1, q + p), throughs=[(j, j) for j in r1(1, q)])
            second = W(spec.flipped(p), q, 0, pr_legs=r1(1, q))
        return second @ first, rhs
    if number == 5:
        if t > p or p > n or q + t > n:
            raise OutOfRangeError("relation 5 needs t <= p <= n and q + t <= n")
        k = p - t
        first = W(spec, k, q + p, throughs=[(j, q + t + j) for j in r1(1, k)], inj_legs=r1(1, q + t))
        second = W(spec.flipped(q + t), q + p, q, pr_legs=r1(q + 1, q + p), throughs=[(j, j) for j in r1(1, q)])
        rhs = None
        for i in range(min(k, q) + 1):
            eps = (-1) ** ((q - i) * (p - i) + i * t) if odd else (-1) ** (p * q + t * (p + q))
            c = sum(comb(i, u) * lower_factorial(N - p - q + t + i - u, t) for u in range(i + 1))
            term = iphi(spec, k, q, i).scale(eps * c)
            rhs = term if rhs is None else rhs + term
        return second @ first, rhs
    if number in (6, 7):
        if p + q > n:
            raise OutOfRangeError(f"relation {number} needs p + q <= n")
        if number == 6:
            first = W(spec, q, p + 2 * q, throughs=[(j, p + q + j) for j in r1(1, q)], inj_legs=r1(1, q + p))
            second = W(
                spec.flipped(q + p),
                p + 2 * q,
                p,
                caps=[(i, p + q + i) for i in r1(1, q)],
                throughs=[(q + j, j) for j in r1(1, p)],
            )
        else:
            first = W(spec, q, q + 2 * p, throughs=[(j, j) for j in r1(1, q)], cups=[(q + i, p + q + i) for i in r1(1, p)])
            second = W(spec, q + 2 * p, p, pr_legs=r1(1, q + p), throughs=[(p + q + i, i) for i in r1(1, p)])
        rhs = None
        for i in range(min(p, q) + 1):
            if number == 6:
                eps = (-1) ** (p * q + comb(q, 2) + i * (p + q - 1)) if odd else (-1) ** comb(q, 2)
            else:
                eps = (-1) ** (comb(p, 2) + i * (p + q + 1)) if odd else (-1) ** (comb(p, 2) + p * q)
            term = iphi(spec, q, p, i).scale(eps)
            rhs = term if rhs is None else rhs + term
        return second @ first, rhs
    raise InvalidInputError(f"relations are numbered 1..7, got {number}")


def relation_check(spec: SpaceSpec, number: int, p: int, q: int, t: int = 0) -> bool:
    """Whether the composition relation of the given number holds as an exact matrix identity."""
    lhs, rhs = _relation_maps(spec, number, p, q, t)
    ok = lhs == rhs
    logger.debug("relation %d (p=%d, q=%d, t=%d) at N=%d: %s", number, p, q, t, spec.N, ok)
    return ok


def easy_relations_report(spec: SpaceSpec, k: int = 1) -> Dict[str, bool]:
    """The contraction/insertion identities, each as an exact matrix identity on Delta x V^k."""
    W = word_operator
    report: Dict[str, bool] = {}
    ins = W(spec, k, k + 2, cups=[(1, 2)], throughs=[(j, j + 2) for j in range(1, k + 1)])
    con = W(spec, k + 2, k, caps=[(1, 2)], throughs=[(j + 2, j) for j in range(1, k + 1)])
    report["cont_idV_same_pair"] = con @ ins == SparseLinearMap.identity(tensor_basis(spec, k)).scale(spec.N)
    ins3 = W(spec, 1, 3, throughs=[(1, 1)], cups=[(2, 3)])
    con3 = W(spec, 3, 1, caps=[(1, 2)], throughs=[(3, 1)])
    report["cont_idV_chain"] = con3 @ ins3 == SparseLinearMap.identity(tensor_basis(spec, 1))
    if spec.n >= 2:
        inj2 = W(spec, 0, 2, inj_legs=(1, 2))
        report["cont_of_inj_legs"] = (W(spec.flipped(2), 2, 0, caps=[(1, 2)]) @ inj2).is_zero()
        idv = W(spec, 0, 2, cups=[(1, 2)])
        report["pr_of_idV"] = (W(spec, 2, 0, pr_legs=(1, 2)) @ idv).is_zero()
    if k >= 3:
        e1 = realize(spec, temperley_lieb_generator(k, 1))
        e2 = realize(spec, temperley_lieb_generator(k, 2))
        report["e_square"] = e1 @ e1 == e1.scale(spec.N)
        report["e1_e2_e1"] = e1 @ e2 @ e1 == e1
        report["e2_e1_e2"] = e2 @ e1 @ e2 == e2
    return report


def easy_relations_check(spec: SpaceSpec, k: int = 1) -> bool:
    return all(easy_relations_report(spec, k).values())


# ---------------------------------------------------------------- dual pair subspaces

def _drop_map(spec: SpaceSpec, k: int, caps: Sequence[Pair] = (), pr_legs: Sequence[int] = ()) -> SparseLinearMap:
    gone = set(pr_legs) | {a for c in caps for a in c}
    rest = [i for i in range(1, k + 1) if i not in gone]
    return word_operator(spec, k, len(rest), pr_legs=pr_legs, caps=caps, throughs=[(a, b + 1) for b, a in enumerate(rest)])


def t0_constraints(spec: SpaceSpec, k: int, s: int) -> List[SparseLinearMap]:
    if not 0 <= s <= min(k, spec.n):
        raise InvalidInputError(f"s must satisfy 0 <= s <= min(k, n) = {min(k, spec.n)}")
    positions = range(1, k + 1)
    maps = [_drop_map(spec, k, caps=[c]) for c in itertools.combinations(positions, 2)]
    for size in range(1, min(spec.n, k) + 1):
        maps += [_drop_map(spec, k, pr_legs=T) for T in itertools.combinations(positions, size)]
    if not (spec.n >= k and s == k):
        for size in range(s + 1, k + 1):
            maps += [alt_map(spec, k, T) for T in itertools.combinations(positions, size)]
    return maps


def t0_subspace(spec: SpaceSpec, k: int, s: int) -> List[TensorVector]:
    """Basis of the joint kernel of contractions, projections and the alternators above degree s."""
    maps = t0_constraints(spec, k, s)
    logger.info("T0(k=%d, s=%d) at n=%d, N=%d: %d constraint maps", k, s, spec.n, spec.N, len(maps))
    basis = joint_kernel(maps, tensor_basis(spec, k))
    logger.info("T0(k=%d, s=%d): dimension %d", k, s, len(basis))
    return basis


def associator(spec: SpaceSpec, v: TensorVector) -> TensorVector:
    """A x id: the degree sign on Delta, identity on the V factors (N = 2n)."""
    if spec.odd:
        raise InvalidInputError("the associator is defined for N = 2n")
    return {(F, seq): c * (-1) ** len(F) for (F, seq), c in v.items()}


def a_split(spec: SpaceSpec, subspace: Sequence[TensorVector]) -> Tuple[List[TensorVector], List[TensorVector]]:
    """Bases of the +1 and -1 eigenspaces of A x id inside an A-stable subspace."""
    if spec.odd:
        raise InvalidInputError("the A x id split needs N = 2n")
    half = QSqrt2(Fraction(1, 2))
    plus, minus = [], []
    for v in subspace:
        av = associator(spec, v)
        p = vec_scale(v, half)
        m = vec_scale(v, half)
        vec_add_into(p, av, half)
        vec_add_into(m, av, -half)
        plus.append(p)
        minus.append(m)
    return span_basis(plus), span_basis(minus)


def subspace_stable(spec: SpaceSpec, basis: Sequence[TensorVector], k: int) -> bool:
    """The span of basis is mapped into itself by all generators and all adjacent transpositions."""
    rank = rank_of(basis)
    movers = [tensor_action(spec, g, k) for g in all_generators(spec)]
    for i in range(1, k):
        swap = list(range(1, k + 1))
        swap[i - 1], swap[i] = swap[i], swap[i - 1]
        movers.append(word_operator(spec, k, k, throughs=[(a, swap[a - 1]) for a in range(1, k + 1)]))
    for m in movers:
        images = [m.apply(v) for v in basis]
        if rank_of(list(basis) + images) != rank:
            return False
    return True


# ---------------------------------------------------------------- commutant

def commutant_dimension(spec: SpaceSpec, k: int) -> int:
    """Dimension of the operators on Delta x V^k commuting with every generator."""
    basis = tensor_basis(spec, k)
    unknowns = [(r, c) for r in basis for c in basis]
    rows = []
    for g in all_generators(spec):
        G = tensor_action(spec, g, k)
        G_rows = G.transpose().columns
        for r in basis:
            left = G_rows.get(r, {})
            for c in basis:
                row: Dict[Tuple[TensorKey, TensorKey], QSqrt2] = {}
                for j, val in G.column(c).items():
                    vec_add_term(row, (r, j), val)
                for j, val in left.items():
                    vec_add_term(row, (j, c), -val)
                if row:
                    rows.append(row)
    dim = len(nullspace(rows, unknowns))
    logger.info("commutant on Delta x V^%d at n=%d, N=%d: %d constraints, dimension %d", k, spec.n, spec.N, len(rows), dim)
    return dim


def rt_span_rank(spec: SpaceSpec, k: int, l: Optional[int] = None) -> int:
    """Rank of the rt realizations of all diagrams in GB(k, l)."""
    l = k if l is None else l
    flat = []
    for d in enumerate_gb(k, l):
        m = realize(spec, d, "rt")
        flat.append({(row, col): v for row, col, v in m.entries()})
    return rank_of(flat)
