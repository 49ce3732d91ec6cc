"""Partition combinatorics, Weyl characters and the tensor-product rules.

Characters are Laurent polynomials in y_1..y_n with x_i = y_i^2, so every
weight of a spin or vector representation has integer y-exponents. The
closed-form decomposition rules for Spin(2n+1), Spin(2n) and their Pin
covers are cross-checked against brute-force Weyl characters.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from pinbrauer.core.errors import InvalidInputError, OutOfRangeError, UnsupportedError

logger = logging.getLogger(__name__)

Partition = Tuple[int, ...]
Exponent = Tuple[int, ...]
LaurentChar = Dict[Exponent, int]

MAX_RANK = 4


# ---------------------------------------------------------------- partitions

def make_partition(parts: Iterable[int]) -> Partition:
    ps = tuple(int(p) for p in parts)
    if any(p < 0 for p in ps):
        raise InvalidInputError(f"negative part in {ps}")
    ps = tuple(p for p in ps if p > 0)
    if any(ps[i] < ps[i + 1] for i in range(len(ps) - 1)):
        raise InvalidInputError(f"parts of {ps} are not weakly decreasing")
    return ps


def size(lam: Partition) -> int:
    return sum(lam)


def part(lam: Partition, i: int) -> int:
    return lam[i] if i < len(lam) else 0


def contains(outer: Partition, inner: Partition) -> bool:
    return len(inner) <= len(outer) and all(part(outer, i) >= p for i, p in enumerate(inner))


def partitions_of(total: int, max_len: Optional[int] = None, max_part: Optional[int] = None) -> Iterator[Partition]:
    """Partitions of total in reverse lexicographic order."""
    cap = total if max_part is None else min(max_part, total)
    if total == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(cap, 0, -1):
        for rest in partitions_of(total - first, None if max_len is None else max_len - 1, first):
            yield (first,) + rest


def vertical_strips_removed(lam: Partition) -> Iterator[Partition]:
    """All mu with lam/mu a vertical strip (mu = lam included)."""
    for drop in itertools.product((0, 1), repeat=len(lam)):
        mu = tuple(p - d for p, d in zip(lam, drop))
        if all(mu[i] >= mu[i + 1] for i in range(len(mu) - 1)):
            yield make_partition(mu)


def vertical_strips_added(lam: Partition, max_len: int) -> Iterator[Partition]:
    """All kappa with kappa/lam a vertical strip and at most max_len rows."""
    rows = max_len
    base = [part(lam, i) for i in range(rows)]
    for add in itertools.product((0, 1), repeat=rows):
        kappa = [b + a for b, a in zip(base, add)]
        if all(kappa[i] >= kappa[i + 1] for i in range(rows - 1)):
            yield make_partition(kappa)


def add_box(lam: Partition, max_len: int) -> List[Partition]:
    out = []
    for i in range(min(len(lam) + 1, max_len)):
        if i == 0 or part(lam, i - 1) > part(lam, i):
            mu = list(lam) + [0]
            mu[i] += 1
            out.append(make_partition(mu))
    return out


def remove_box(lam: Partition) -> List[Partition]:
    out = []
    for i in range(len(lam)):
        if i == len(lam) - 1 or lam[i] > lam[i + 1]:
            mu = list(lam)
            mu[i] -= 1
            out.append(make_partition(mu))
    return out


def standard_tableaux_count(lam: Partition) -> int:
    """f^lambda by the hook length formula."""
    if not lam:
        return 1
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])]
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return factorial(size(lam)) // hooks


@lru_cache(maxsize=None)
def lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
    """Number of Littlewood-Richardson tableaux of shape lam/mu and content nu."""
    lam, mu, nu = make_partition(lam), make_partition(mu), make_partition(nu)
    if size(lam) != size(mu) + size(nu) or not contains(lam, mu):
        return 0
    if not contains(lam, nu):
        return 0
    cells = [(i, j) for i in range(len(lam)) for j in range(part(lam, i) - 1, part(mu, i) - 1, -1)]
    filling: Dict[Tuple[int, int], int] = {}
    counts = [0] * (len(nu) + 1)

    def fill(pos: int) -> int:
        if pos == len(cells):
            return 1
        i, j = cells[pos]
        upper = filling.get((i, j + 1), len(nu))
        total = 0
        for v in range(1, upper + 1):
            above = filling.get((i - 1, j))
            if above is not None and v <= above:
                continue
            if counts[v] >= nu[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            filling[(i, j)] = v
            counts[v] += 1
            total += fill(pos + 1)
            counts[v] -= 1
            del filling[(i, j)]
        return total

    return fill(0)


# ---------------------------------------------------------------- root data

class RootType(str, Enum):
    B = "B"
    C = "C"
    D = "D"


@dataclass(frozen=True)
class _RootSystem:
    kind: RootType
    n: int
    positive_roots: Tuple[Exponent, ...]
    weyl_group: Tuple[Tuple[Tuple[int, ...], Tuple[int, ...], int], ...]
    rho_y: Exponent


def _perm_sign(perm: Tuple[int, ...]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def root_system(kind: RootType, n: int) -> _RootSystem:
    def unit(i: int, c: int = 1) -> List[int]:
        v = [0] * n
        v[i] = c
        return v

    roots: List[Exponent] = []
    for i in range(n):
        for j in range(i + 1, n):
            a, b = unit(i), unit(i)
            a[j], b[j] = -1, 1
            roots.extend([tuple(a), tuple(b)])
        if kind is RootType.B:
            roots.append(tuple(unit(i)))
        elif kind is RootType.C:
            roots.append(tuple(unit(i, 2)))
    group = []
    for perm in itertools.permutations(range(n)):
        psign = _perm_sign(perm)
        for signs in itertools.product((1, -1), repeat=n):
            flips = signs.count(-1)
            if kind is RootType.D and flips % 2:
                continue
            det = psign * (-1) ** flips
            group.append((perm, signs, det))
    if kind is RootType.B:
        rho = tuple(2 * (n - i) - 1 for i in range(n))
    elif kind is RootType.C:
        rho = tuple(2 * (n - i) for i in range(n))
    else:
        rho = tuple(2 * (n - i - 1) for i in range(n))
    return _RootSystem(kind, n, tuple(roots), tuple(group), rho)


def laurent_add(target: LaurentChar, source: LaurentChar, factor: int = 1) -> LaurentChar:
    for e, c in source.items():
        v = target.get(e, 0) + factor * c
        if v:
            target[e] = v
        else:
            target.pop(e, None)
    return target


def laurent_mul(p: LaurentChar, q: LaurentChar) -> LaurentChar:
    out: LaurentChar = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e)
    return out


def _divide_by_root(p: LaurentChar, alpha: Exponent) -> LaurentChar:
    """Exact quotient of p by (y^alpha - y^-alpha)."""
    rest = dict(p)
    if not rest:
        return {}
    floor = min(rest)
    quotient: LaurentChar = {}
    while rest:
        e = max(rest)
        c = rest.pop(e)
        low = tuple(a - 2 * b for a, b in zip(e, alpha))
        if low < floor:
            raise InvalidInputError("Laurent polynomial is not divisible by the Weyl denominator")
        quotient[tuple(a - b for a, b in zip(e, alpha))] = c
        v = rest.get(low, 0) + c
        if v:
            rest[low] = v
        else:
            rest.pop(low, None)
    return quotient


@lru_cache(maxsize=None)
def _irreducible(kind: RootType, n: int, hw_y: Exponent) -> Tuple[Tuple[Exponent, int], ...]:
    rs = root_system(kind, n)
    shifted = tuple(a + b for a, b in zip(hw_y, rs.rho_y))
    alternant: LaurentChar = {}
    for perm, signs, det in rs.weyl_group:
        e = tuple(signs[i] * shifted[perm[i]] for i in range(n))
        v = alternant.get(e, 0) + det
        if v:
            alternant[e] = v
        else:
            alternant.pop(e)
    for alpha in rs.positive_roots:
        alternant = _divide_by_root(alternant, alpha)
    return tuple(sorted(alternant.items()))


def irreducible_character(kind: RootType, n: int, hw_y: Exponent) -> LaurentChar:
    if n > MAX_RANK:
        raise OutOfRangeError(f"Weyl characters are limited to rank <= {MAX_RANK}")
    return dict(_irreducible(kind, n, tuple(hw_y)))


def weyl_dimension(kind: RootType, n: int, hw_y: Exponent) -> int:
    rs = root_system(kind, n)
    num, den = 1, 1
    for alpha in rs.positive_roots:
        num *= sum((a + r) * b for a, r, b in zip(hw_y, rs.rho_y, alpha))
        den *= sum(r * b for r, b in zip(rs.rho_y, alpha))
    return num // den


# ---------------------------------------------------------------- irrep labels

class IrrepKind(str, Enum):
    SO = "SO"
    SO_MINUS = "SO_MINUS"
    O = "O"
    SPIN_PLUS = "SPIN_PLUS"
    SPIN_MINUS = "SPIN_MINUS"
    DELTA = "DELTA"
    DELTA_PRIME = "DELTA_PRIME"
    SUM_CHAR = "SUM_CHAR"
    DIFF_CHAR = "DIFF_CHAR"
    DET = "DET"


_EVEN_ONLY = {
    IrrepKind.SO_MINUS,
    IrrepKind.SPIN_PLUS,
    IrrepKind.SPIN_MINUS,
    IrrepKind.DELTA_PRIME,
    IrrepKind.SUM_CHAR,
    IrrepKind.DIFF_CHAR,
}


@dataclass(frozen=True)
class IrrepLabel:
    """A (possibly virtual) representation of Spin/Pin(N) named by a partition."""

    kind: IrrepKind
    partition: Partition
    n: int
    N: int
    pin_sign: Optional[int] = field(default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", IrrepKind(self.kind))
        object.__setattr__(self, "partition", make_partition(self.partition))
        if self.N not in (2 * self.n, 2 * self.n + 1) or self.n < 1:
            raise InvalidInputError(f"N={self.N} is not 2n or 2n+1 for n={self.n}")
        if len(self.partition) > self.n:
            raise InvalidInputError(f"partition {self.partition} longer than n={self.n}")
        if self.kind in _EVEN_ONLY and self.N % 2:
            raise InvalidInputError(f"{self.kind.value} requires N = 2n")
        if self.kind is IrrepKind.SO_MINUS and len(self.partition) != self.n:
            raise InvalidInputError("SO_MINUS needs a partition of length n")
        if self.kind is IrrepKind.DIFF_CHAR and len(self.partition) != self.n:
            raise InvalidInputError("DIFF_CHAR needs a partition of length n")
        if self.pin_sign is not None:
            if self.N % 2 == 0 or self.pin_sign not in (1, -1):
                raise InvalidInputError("pin_sign is a sign and only applies to N = 2n+1")

    @property
    def odd(self) -> bool:
        return self.N % 2 == 1

    def to_dict(self) -> dict:
        data = {"kind": self.kind.value, "parts": list(self.partition), "n": self.n, "N": self.N}
        if self.pin_sign is not None:
            data["pin_sign"] = self.pin_sign
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "IrrepLabel":
        try:
            return cls(IrrepKind(data["kind"]), tuple(data.get("parts", ())), int(data["n"]), int(data["N"]),
                       data.get("pin_sign"))
        except (KeyError, ValueError) as e:
            if isinstance(e, InvalidInputError):
                raise
            raise InvalidInputError(f"malformed irrep label {data!r}: {e}") from e

    def sort_key(self) -> tuple:
        return (self.kind.value, self.partition, self.pin_sign or 0)

    def __str__(self) -> str:
        sign = "" if self.pin_sign is None else ("_+" if self.pin_sign > 0 else "_-")
        return f"{self.kind.value}{list(self.partition)}{sign}"


MultiplicityMap = Dict[IrrepLabel, int]


def mm_add(target: MultiplicityMap, label: IrrepLabel, mult: int = 1) -> None:
    v = target.get(label, 0) + mult
    if v:
        target[label] = v
    else:
        target.pop(label, None)


def _family(N: int) -> RootType:
    return RootType.B if N % 2 else RootType.D


def _base_components(label: IrrepLabel) -> List[Tuple[Exponent, int]]:
    """Highest weights (y units) with signs whose sum is the label's character."""
    n, lam = label.n, label.partition
    twice = [2 * part(lam, i) for i in range(n)]
    half = [2 * part(lam, i) + 1 for i in range(n)]
    minus_half = half[:-1] + [-half[-1]]
    kind = label.kind
    if kind is IrrepKind.DET:
        return [(tuple([0] * n), 1)]
    if label.odd:
        if kind in (IrrepKind.SO, IrrepKind.O):
            return [(tuple(twice), 1)]
        if kind is IrrepKind.DELTA:
            return [(tuple(half), 1)]
        raise InvalidInputError(f"{kind.value} is not a Spin(2n+1) label")
    flipped = twice[:-1] + [-twice[-1]]
    full = len(lam) == n
    if kind is IrrepKind.SO:
        return [(tuple(twice), 1)]
    if kind is IrrepKind.SO_MINUS:
        return [(tuple(flipped), 1)]
    if kind in (IrrepKind.O, IrrepKind.SUM_CHAR):
        if full:
            return [(tuple(twice), 1), (tuple(flipped), 1)]
        return [(tuple(twice), 1 if kind is IrrepKind.O else 2)]
    if kind is IrrepKind.DIFF_CHAR:
        return [(tuple(twice), 1), (tuple(flipped), -1)]
    if kind is IrrepKind.SPIN_PLUS:
        return [(tuple(half), 1)]
    if kind is IrrepKind.SPIN_MINUS:
        return [(tuple(minus_half), 1)]
    if kind is IrrepKind.DELTA:
        return [(tuple(half), 1), (tuple(minus_half), 1)]
    if kind is IrrepKind.DELTA_PRIME:
        return [(tuple(half), 1), (tuple(minus_half), -1)]
    raise InvalidInputError(f"unknown kind {kind}")


def weyl_character(label: IrrepLabel) -> LaurentChar:
    if label.n > MAX_RANK:
        raise OutOfRangeError(f"Weyl characters are limited to rank <= {MAX_RANK}")
    out: LaurentChar = {}
    for hw, c in _base_components(label):
        laurent_add(out, irreducible_character(_family(label.N), label.n, hw), c)
    return out


def character_of(n: int, N: int, mm: MultiplicityMap) -> LaurentChar:
    out: LaurentChar = {}
    for label, mult in mm.items():
        if (label.n, label.N) != (n, N):
            raise InvalidInputError(f"label {label} does not live at n={n}, N={N}")
        laurent_add(out, weyl_character(label), mult)
    return out


def spin_irrep_dimension(label: IrrepLabel) -> int:
    return sum(c * weyl_dimension(_family(label.N), label.n, hw) for hw, c in _base_components(label))


def _label_for_weight(n: int, N: int, hw: Exponent) -> IrrepLabel:
    if len({e % 2 for e in hw}) != 1:
        raise InvalidInputError(f"weight {hw} mixes integral and half-integral coordinates")
    tail = abs(hw[-1]) if N % 2 == 0 else hw[-1]
    if tail < 0 or any(hw[i] < hw[i + 1] for i in range(n - 2)) or (n > 1 and hw[n - 2] < tail):
        raise InvalidInputError(f"leading weight {hw} is not dominant: not a character")
    if all(e % 2 for e in hw):
        parts = [(abs(e) - 1) // 2 for e in hw]
        if N % 2:
            return IrrepLabel(IrrepKind.DELTA, tuple(parts), n, N)
        kind = IrrepKind.SPIN_PLUS if hw[-1] > 0 else IrrepKind.SPIN_MINUS
        return IrrepLabel(kind, tuple(parts), n, N)
    parts = tuple(abs(e) // 2 for e in hw)
    if N % 2 == 0 and hw[-1] < 0:
        return IrrepLabel(IrrepKind.SO_MINUS, parts, n, N)
    return IrrepLabel(IrrepKind.SO, parts, n, N)


def decompose_character(n: int, N: int, c: LaurentChar) -> MultiplicityMap:
    """Peel off highest weights, lexicographically largest first."""
    rest = dict(c)
    out: MultiplicityMap = {}
    while rest:
        hw = max(rest)
        mult = rest[hw]
        if mult < 0:
            raise InvalidInputError(f"negative multiplicity {mult} at weight {hw}: not a character")
        label = _label_for_weight(n, N, hw)
        out[label] = mult
        laurent_add(rest, weyl_character(label), -mult)
    return out


# ---------------------------------------------------------------- Sp(2n) coefficients

def symplectic_character(n: int, lam: Partition) -> LaurentChar:
    return irreducible_character(RootType.C, n, tuple(2 * part(lam, i) for i in range(n)))


@lru_cache(maxsize=None)
def _sp_product(n: int, mu: Partition, nu: Partition) -> Tuple[Tuple[Partition, int], ...]:
    rest = laurent_mul(symplectic_character(n, mu), symplectic_character(n, nu))
    out: Dict[Partition, int] = {}
    while rest:
        hw = max(rest)
        mult = rest[hw]
        lam = make_partition(e // 2 for e in hw)
        out[lam] = mult
        laurent_add(rest, symplectic_character(n, lam), -mult)
    return tuple(sorted(out.items()))


@lru_cache(maxsize=None)
def sp_tensor_coefficient(n: int, mu: Partition, nu: Partition, lam: Partition) -> int:
    """Multiplicity of lam in mu x nu for Sp(2n)."""
    mu, nu, lam = make_partition(mu), make_partition(nu), make_partition(lam)
    if max(len(mu), len(nu), len(lam)) > n:
        raise InvalidInputError(f"partitions longer than n={n}")
    if len(mu) + len(nu) <= n:
        total = 0
        for d in range(min(size(mu), size(nu)) + 1):
            for delta in partitions_of(d):
                for alpha in partitions_of(size(mu) - d):
                    a = lr_coefficient(mu, delta, alpha)
                    if not a:
                        continue
                    for beta in partitions_of(size(nu) - d):
                        b = lr_coefficient(nu, delta, beta)
                        if b:
                            total += a * b * lr_coefficient(lam, alpha, beta)
        return total
    return dict(_sp_product(n, mu, nu)).get(lam, 0)


def sp_tensor_decomposition(n: int, mu: Partition, nu: Partition) -> Dict[Partition, int]:
    return dict(_sp_product(n, make_partition(mu), make_partition(nu)))


# ---------------------------------------------------------------- closed forms

def _so(n: int, N: int, lam: Partition) -> IrrepLabel:
    return IrrepLabel(IrrepKind.SO, lam, n, N)


def _exterior(n: int, N: int, i: int) -> IrrepLabel:
    return _so(n, N, (1,) * i)


def _spin(n: int, N: int, eps: int, lam: Partition) -> IrrepLabel:
    return IrrepLabel(IrrepKind.SPIN_PLUS if eps > 0 else IrrepKind.SPIN_MINUS, lam, n, N)


def _spin_sign(label: IrrepLabel) -> int:
    return 1 if label.kind is IrrepKind.SPIN_PLUS else -1


def _vector_sign(label: IrrepLabel) -> int:
    return -1 if label.kind is IrrepKind.SO_MINUS else 1


def _odd_rule(a: IrrepLabel, b: IrrepLabel) -> Optional[MultiplicityMap]:
    n, N = a.n, a.N
    out: MultiplicityMap = {}
    if a.kind is IrrepKind.DELTA and b.kind is IrrepKind.DELTA and not a.partition and not b.partition:
        for i in range(n + 1):
            mm_add(out, _exterior(n, N, i))
        return out
    if a.kind is IrrepKind.DELTA and b.kind in (IrrepKind.SO, IrrepKind.O):
        eps = a.pin_sign
        sign = None if eps is None else eps * (-1) ** size(b.partition)

        def delta(lam: Partition) -> IrrepLabel:
            return IrrepLabel(IrrepKind.DELTA, lam, n, N, sign)

        if b.partition == (1,):
            mm_add(out, delta(a.partition))
            for mu in add_box(a.partition, n):
                mm_add(out, delta(mu))
            for mu in remove_box(a.partition):
                mm_add(out, delta(mu))
            return out
        if not a.partition:
            for mu in vertical_strips_removed(b.partition):
                mm_add(out, delta(mu))
            return out
    return None


def _even_rule(a: IrrepLabel, b: IrrepLabel) -> Optional[MultiplicityMap]:
    n, N = a.n, a.N
    out: MultiplicityMap = {}
    spins = (IrrepKind.SPIN_PLUS, IrrepKind.SPIN_MINUS)
    vectors = (IrrepKind.SO, IrrepKind.SO_MINUS)
    if a.kind in spins and b.kind in spins and not a.partition and not b.partition:
        ea, eb = _spin_sign(a), _spin_sign(b)
        if ea == eb:
            top = IrrepLabel(IrrepKind.SO if ea > 0 else IrrepKind.SO_MINUS, (1,) * n, n, N)
            mm_add(out, top)
            for i in range(1, n // 2 + 1):
                mm_add(out, _exterior(n, N, n - 2 * i))
        else:
            for i in range(0, (n - 1) // 2 + 1):
                mm_add(out, _exterior(n, N, n - 1 - 2 * i))
        return out
    if a.kind in spins and b.kind is IrrepKind.SO and b.partition == (1,):
        eps = _spin_sign(a)
        if len(a.partition) < n:
            mm_add(out, _spin(n, N, -eps, a.partition))
        for mu in add_box(a.partition, n):
            mm_add(out, _spin(n, N, eps, mu))
        for mu in remove_box(a.partition):
            mm_add(out, _spin(n, N, eps, mu))
        return out
    if a.kind is IrrepKind.DELTA and b.kind is IrrepKind.SO and b.partition == (1,):
        if len(a.partition) < n:
            mm_add(out, a)
        for mu in add_box(a.partition, n) + remove_box(a.partition):
            mm_add(out, IrrepLabel(IrrepKind.DELTA, mu, n, N))
        return out
    if a.kind in spins and not a.partition and b.kind in vectors:
        eps1 = _spin_sign(a)
        mu = b.partition
        if len(mu) < n:
            if b.kind is IrrepKind.SO_MINUS:
                return None
            for nu in vertical_strips_removed(mu):
                strip = size(mu) - size(nu)
                mm_add(out, _spin(n, N, eps1 if strip % 2 == 0 else -eps1, nu))
            return out
        eps2 = _vector_sign(b)
        for nu in vertical_strips_removed(mu):
            if (-1) ** (size(mu) - size(nu)) == eps1 * eps2:
                mm_add(out, _spin(n, N, eps2, nu))
        return out
    if a.kind in vectors and b.kind in vectors and a.partition == (1,) * n and b.partition == (1,) * n:
        ea, eb = _vector_sign(a), _vector_sign(b)
        if ea == eb == 1:
            for s in range(n % 2, n + 1, 2):
                for t in range(0, n - s + 1, 2):
                    mm_add(out, _so(n, N, (2,) * s + (1,) * t))
        elif ea != eb:
            for s in range((n - 1) % 2, n, 2):
                for t in range(0, n - 1 - s + 1, 2):
                    mm_add(out, _so(n, N, (2,) * s + (1,) * t))
        else:
            mm_add(out, IrrepLabel(IrrepKind.SO_MINUS, (2,) * n, n, N))
            for s in range(n % 2, n - 1, 2):
                mm_add(out, IrrepLabel(IrrepKind.SO_MINUS, (2,) * s + (1,) * (n - s), n, N))
            for s in range(n % 2, n - 1, 2):
                for t in range(0, n - 2 - s + 1, 2):
                    mm_add(out, _so(n, N, (2,) * s + (1,) * t))
        return out
    if a.kind is IrrepKind.DELTA_PRIME and b.kind is IrrepKind.DELTA_PRIME and not a.partition and not b.partition:
        mm_add(out, IrrepLabel(IrrepKind.SUM_CHAR, (1,) * n, n, N))
        for j in range(n):
            mm_add(out, _exterior(n, N, j), 2 * (-1) ** (n - j))
        return out
    if a.kind in (IrrepKind.DELTA, IrrepKind.DELTA_PRIME) and b.kind is IrrepKind.DIFF_CHAR:
        shifted = tuple(p - 1 for p in b.partition)
        prime = a.kind is IrrepKind.DELTA_PRIME
        for nu in vertical_strips_removed(a.partition):
            if prime:
                sign = (-1) ** (size(b.partition) + size(nu))
            else:
                sign = (-1) ** (size(a.partition) - size(nu))
            for lam, c in sp_tensor_decomposition(n, nu, shifted).items():
                for kappa in vertical_strips_added(lam, n):
                    if prime:
                        mm_add(out, IrrepLabel(IrrepKind.DELTA, kappa, n, N), sign * c * (-1) ** size(kappa))
                    else:
                        mm_add(out, IrrepLabel(IrrepKind.DELTA_PRIME, kappa, n, N), sign * c)
        return out
    return None


def tensor_rule(label: IrrepLabel, factor: IrrepLabel) -> MultiplicityMap:
    """Closed-form decomposition of label x factor."""
    if (label.n, label.N) != (factor.n, factor.N):
        raise InvalidInputError(f"{label} and {factor} live at different ranks")
    rule = _odd_rule if label.odd else _even_rule
    for a, b in ((label, factor), (factor, label)):
        result = rule(a, b)
        if result is not None:
            return result
    raise UnsupportedError(f"no closed form for {label} x {factor}")


# ---------------------------------------------------------------- walks

def updown_walks(n: int, N: int, k: int) -> Dict[Partition, int]:
    """Endpoint counts of k-step walks from the empty diagram.

    Steps add or remove a cell (length stays <= n) or stay put; for N = 2n a
    stay is only allowed at diagrams of length < n.
    """
    odd = N % 2 == 1
    counts: Dict[Partition, int] = {(): 1}
    for _ in range(k):
        nxt: Dict[Partition, int] = {}
        for lam, c in counts.items():
            steps = add_box(lam, n) + remove_box(lam)
            if odd or len(lam) < n:
                steps.append(lam)
            for mu in steps:
                nxt[mu] = nxt.get(mu, 0) + c
        counts = nxt
    return counts


def updown_multiplicity(n: int, N: int, k: int, lam: Partition) -> int:
    lam = make_partition(lam)
    if len(lam) > n:
        raise InvalidInputError(f"partition {lam} longer than n={n}")
    return updown_walks(n, N, k).get(lam, 0)


def double_factorial(m: int) -> int:
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def dim_cpk(k: int) -> int:
    """Number of generalized Brauer diagrams on k + k vertices."""
    if k < 0:
        raise InvalidInputError("k must be nonnegative")
    return sum(comb(2 * k, 2 * j) * double_factorial(2 * k - 2 * j - 1) for j in range(k + 1))


def iterated_vector_multiplicities(n: int, N: int, k: int) -> Dict[Partition, int]:
    """Multiplicities of [Delta, lam] in Delta x V^k via repeated tensor_rule."""
    vector = _so(n, N, (1,))
    current: MultiplicityMap = {IrrepLabel(IrrepKind.DELTA, (), n, N): 1}
    for _ in range(k):
        nxt: MultiplicityMap = {}
        for label, mult in current.items():
            for res, c in tensor_rule(label, vector).items():
                mm_add(nxt, res, mult * c)
        current = nxt
    return {label.partition: mult for label, mult in current.items()}
