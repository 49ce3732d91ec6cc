"""Sparse exact linear algebra over Q(sqrt2).

Vectors are plain dicts from hashable basis keys to nonzero QSqrt2 values.
Linear maps keep an ordered domain and codomain basis plus one sparse column
per domain key.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from pinbrauer.core.scalars import ONE, ZERO, QSqrt2, ScalarLike

logger = logging.getLogger(__name__)

Key = Hashable
Vector = Dict[Key, QSqrt2]


def vec_add_into(target: Vector, source: Mapping[Key, QSqrt2], factor: ScalarLike = 1) -> Vector:
    """target += factor * source, dropping entries that cancel."""
    f = QSqrt2.coerce(factor)
    if f.is_zero():
        return target
    for key, val in source.items():
        new = target.get(key, ZERO) + val * f
        if new.is_zero():
            target.pop(key, None)
        else:
            target[key] = new
    return target


def vec_add_term(target: Vector, key: Key, value: ScalarLike) -> None:
    new = target.get(key, ZERO) + value
    if new.is_zero():
        target.pop(key, None)
    else:
        target[key] = new


def vec_scale(v: Mapping[Key, QSqrt2], factor: ScalarLike) -> Vector:
    f = QSqrt2.coerce(factor)
    if f.is_zero():
        return {}
    return {k: c * f for k, c in v.items()}


def inner(u: Mapping[Key, QSqrt2], v: Mapping[Key, QSqrt2]) -> QSqrt2:
    """Standard bilinear pairing in which the basis keys are orthonormal."""
    if len(u) > len(v):
        u, v = v, u
    acc = ZERO
    for key, val in u.items():
        other = v.get(key)
        if other is not None:
            acc = acc + val * other
    return acc


class RowEchelon:
    """Incremental reduced row echelon form of sparse rows.

    Pivot rows are normalized and fully reduced. ``nonzero_cols`` maps a
    column to the pivots whose rows are nonzero there.
    """

    def __init__(self, order: Optional[Mapping[Key, int]] = None) -> None:
        self.order = order
        self.pivot_rows: Dict[Key, Vector] = {}
        self.nonzero_cols: Dict[Key, Set[Key]] = defaultdict(set)

    def _rank_key(self, col: Key):
        if self.order is not None:
            return self.order[col]
        return col

    def reduce(self, row: Mapping[Key, QSqrt2]) -> Vector:
        r: Vector = dict(row)
        for p in [c for c in r if c in self.pivot_rows]:
            coef = r.get(p)
            if coef is not None:
                vec_add_into(r, self.pivot_rows[p], -coef)
        return r

    def add_row(self, row: Mapping[Key, QSqrt2]) -> Optional[Key]:
        """Insert a row; return its new pivot column or None if dependent."""
        r = self.reduce(row)
        if not r:
            return None
        pivot = min(r, key=self._rank_key)
        r = vec_scale(r, r[pivot].inverse())
        for q in list(self.nonzero_cols.get(pivot, ())):
            row_q = self.pivot_rows[q]
            c = row_q[pivot]
            for col, val in r.items():
                new = row_q.get(col, ZERO) - c * val
                if new.is_zero():
                    row_q.pop(col, None)
                    self.nonzero_cols[col].discard(q)
                else:
                    row_q[col] = new
                    self.nonzero_cols[col].add(q)
        self.pivot_rows[pivot] = r
        for col in r:
            self.nonzero_cols[col].add(pivot)
        return pivot

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def contains(self, row: Mapping[Key, QSqrt2]) -> bool:
        return not self.reduce(row)

    def nullspace(self, columns: Sequence[Key]) -> List[Vector]:
        """Basis of the solution space of the stored rows, one vector per free column."""
        basis: List[Vector] = []
        for j in columns:
            if j in self.pivot_rows:
                continue
            vec: Vector = {j: ONE}
            for p in self.nonzero_cols.get(j, ()):
                if p == j:
                    continue
                vec[p] = -self.pivot_rows[p][j]
            basis.append(vec)
        return basis


def rref(rows: Iterable[Mapping[Key, QSqrt2]], order: Optional[Mapping[Key, int]] = None) -> RowEchelon:
    ech = RowEchelon(order)
    for row in rows:
        ech.add_row(row)
    return ech


def rank_of(vectors: Iterable[Mapping[Key, QSqrt2]]) -> int:
    return rref(vectors).rank


def span_basis(vectors: Iterable[Mapping[Key, QSqrt2]]) -> List[Vector]:
    """Reduced basis of the span of the given vectors."""
    ech = rref(vectors)
    return [dict(r) for _, r in sorted(ech.pivot_rows.items(), key=lambda kv: repr(kv[0]))]


def nullspace(rows: Iterable[Mapping[Key, QSqrt2]], columns: Sequence[Key]) -> List[Vector]:
    order = {c: i for i, c in enumerate(columns)}
    return rref(rows, order).nullspace(columns)


class SparseLinearMap:
    """Exact sparse linear map between two ordered bases."""

    def __init__(
        self,
        domain: Sequence[Key],
        codomain: Sequence[Key],
        columns: Optional[Mapping[Key, Mapping[Key, QSqrt2]]] = None,
    ) -> None:
        self.domain: Tuple[Key, ...] = tuple(domain)
        self.codomain: Tuple[Key, ...] = tuple(codomain)
        self.columns: Dict[Key, Vector] = {}
        for key, col in (columns or {}).items():
            clean = {r: v for r, v in col.items() if not v.is_zero()}
            if clean:
                self.columns[key] = clean

    @classmethod
    def from_function(
        cls,
        domain: Sequence[Key],
        codomain: Sequence[Key],
        fn: Callable[[Key], Mapping[Key, QSqrt2]],
    ) -> "SparseLinearMap":
        return cls(domain, codomain, {key: fn(key) for key in domain})

    @classmethod
    def identity(cls, basis: Sequence[Key]) -> "SparseLinearMap":
        return cls(basis, basis, {key: {key: ONE} for key in basis})

    @classmethod
    def zero(cls, domain: Sequence[Key], codomain: Sequence[Key]) -> "SparseLinearMap":
        return cls(domain, codomain, {})

    def column(self, key: Key) -> Vector:
        return self.columns.get(key, {})

    def apply(self, v: Mapping[Key, QSqrt2]) -> Vector:
        out: Vector = {}
        for key, c in v.items():
            col = self.columns.get(key)
            if col:
                vec_add_into(out, col, c)
        return out

    def compose(self, other: "SparseLinearMap") -> "SparseLinearMap":
        """self after other."""
        cols = {key: self.apply(col) for key, col in other.columns.items()}
        return SparseLinearMap(other.domain, self.codomain, cols)

    def __matmul__(self, other: "SparseLinearMap") -> "SparseLinearMap":
        return self.compose(other)

    def _combine(self, other: "SparseLinearMap", factor: int) -> "SparseLinearMap":
        cols: Dict[Key, Vector] = {k: dict(c) for k, c in self.columns.items()}
        for key, col in other.columns.items():
            vec_add_into(cols.setdefault(key, {}), col, factor)
        return SparseLinearMap(self.domain, self.codomain, cols)

    def __add__(self, other: "SparseLinearMap") -> "SparseLinearMap":
        return self._combine(other, 1)

    def __sub__(self, other: "SparseLinearMap") -> "SparseLinearMap":
        return self._combine(other, -1)

    def scale(self, factor: ScalarLike) -> "SparseLinearMap":
        return SparseLinearMap(
            self.domain, self.codomain, {k: vec_scale(c, factor) for k, c in self.columns.items()}
        )

    def is_zero(self) -> bool:
        return not self.columns

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseLinearMap):
            return NotImplemented
        return self.columns == other.columns

    __hash__ = None

    def transpose(self) -> "SparseLinearMap":
        cols: Dict[Key, Vector] = defaultdict(dict)
        for key, col in self.columns.items():
            for row, val in col.items():
                cols[row][key] = val
        return SparseLinearMap(self.codomain, self.domain, cols)

    def rows(self) -> List[Vector]:
        return list(self.transpose().columns.values())

    def entries(self) -> List[Tuple[Key, Key, QSqrt2]]:
        """Coordinate list (row key, column key, value) in basis order."""
        row_pos = {k: i for i, k in enumerate(self.codomain)}
        out: List[Tuple[Key, Key, QSqrt2]] = []
        for key in self.domain:
            col = self.columns.get(key, {})
            for row in sorted(col, key=lambda r: row_pos.get(r, len(row_pos))):
                out.append((row, key, col[row]))
        return out

    def to_coo(self) -> List[Tuple[int, int, str]]:
        row_pos = {k: i for i, k in enumerate(self.codomain)}
        col_pos = {k: i for i, k in enumerate(self.domain)}
        return [(row_pos[r], col_pos[c], str(v)) for r, c, v in self.entries()]

    def rank(self) -> int:
        return rank_of(self.columns.values())

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns.values())

    def __repr__(self) -> str:
        return f"SparseLinearMap({len(self.codomain)}x{len(self.domain)}, nnz={self.nnz()})"


def joint_kernel(maps: Sequence[SparseLinearMap], domain: Sequence[Key]) -> List[Vector]:
    """Basis of the common kernel of maps sharing one domain."""
    order = {c: i for i, c in enumerate(domain)}
    ech = RowEchelon(order)
    for m in maps:
        for row in m.rows():
            ech.add_row(row)
    basis = ech.nullspace(domain)
    logger.debug("joint kernel: %d constraints of rank %d, kernel dim %d", len(maps), ech.rank, len(basis))
    return basis
