"""Generalized Brauer diagrams and formal combinations of them.

A diagram on k upper and l lower vertices is a partial matching; vertices
that are not matched are isolated. Upper vertices are the inputs and lower
vertices the outputs of the operator the diagram stands for.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from pinbrauer.core.errors import InvalidInputError
from pinbrauer.core.scalars import PolyX, QSqrt2, ScalarLike

logger = logging.getLogger(__name__)

Vertex = Tuple[str, int]
Edge = Tuple[Vertex, Vertex]

_VERTEX_RE = re.compile(r"^\s*([UL])\s*(\d+)\s*$")
PARAMETRIZATIONS = ("rt", "inv")


def vertex_key(v: Vertex) -> Tuple[int, int]:
    return (0 if v[0] == "U" else 1, v[1])


def vertex_label(v: Vertex) -> str:
    return f"{v[0]}{v[1]}"


def parse_vertex(text: str) -> Vertex:
    m = _VERTEX_RE.match(str(text))
    if not m:
        raise InvalidInputError(f"vertex {text!r} is not of the form U<i> or L<j>")
    return (m.group(1), int(m.group(2)))


def _edge(a: Vertex, b: Vertex) -> Edge:
    return (a, b) if vertex_key(a) <= vertex_key(b) else (b, a)


@dataclass(frozen=True)
class GBDiagram:
    """A partial matching on U1..Uk and L1..Ll."""

    k: int
    l: int
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.k < 0 or self.l < 0:
            raise InvalidInputError("k and l must be nonnegative")
        norm = []
        seen = set()
        for a, b in self.edges:
            a, b = tuple(a), tuple(b)
            for v in (a, b):
                if v[0] not in ("U", "L") or not 1 <= v[1] <= (self.k if v[0] == "U" else self.l):
                    raise InvalidInputError(f"vertex {v} out of range for a ({self.k}, {self.l}) diagram")
                if v in seen:
                    raise InvalidInputError(f"vertex {vertex_label(v)} has more than one edge")
                seen.add(v)
            if a == b:
                raise InvalidInputError(f"loop at {vertex_label(a)}")
            norm.append(_edge(a, b))
        object.__setattr__(self, "edges", tuple(sorted(norm, key=self._edge_key)))

    @staticmethod
    def _edge_key(e: Edge) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        return (vertex_key(e[0]), vertex_key(e[1]))

    def sort_key(self) -> tuple:
        return (self.k, self.l, tuple(self._edge_key(e) for e in self.edges))

    def __lt__(self, other: "GBDiagram") -> bool:
        return self.sort_key() < other.sort_key()

    def vertices(self) -> List[Vertex]:
        return [("U", i) for i in range(1, self.k + 1)] + [("L", j) for j in range(1, self.l + 1)]

    def partner(self) -> Dict[Vertex, Vertex]:
        out: Dict[Vertex, Vertex] = {}
        for a, b in self.edges:
            out[a] = b
            out[b] = a
        return out

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "l": self.l,
            "edges": [[vertex_label(a), vertex_label(b)] for a, b in self.edges],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "GBDiagram":
        try:
            edges = tuple((parse_vertex(a), parse_vertex(b)) for a, b in data.get("edges", []))
            return cls(int(data["k"]), int(data["l"]), edges)
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, InvalidInputError):
                raise
            raise InvalidInputError(f"malformed diagram {data!r}: {e}") from e

    def __str__(self) -> str:
        alias = alias_of(self)
        if alias:
            return alias
        body = ",".join(f"{vertex_label(a)}-{vertex_label(b)}" for a, b in self.edges)
        return f"GB{self.k}_{self.l}[{body}]"


# ---------------------------------------------------------------- enumeration

def _matchings(vertices: Sequence[Vertex]) -> List[List[Edge]]:
    if not vertices:
        return [[]]
    first, rest = vertices[0], vertices[1:]
    out = [m for m in _matchings(rest)]
    for idx, other in enumerate(rest):
        remaining = rest[:idx] + rest[idx + 1:]
        out.extend([[(first, other)] + m for m in _matchings(remaining)])
    return out


def enumerate_gb(k: int, l: int) -> List[GBDiagram]:
    """All generalized Brauer diagrams with k upper and l lower vertices, in canonical order."""
    if k < 0 or l < 0:
        raise InvalidInputError("k and l must be nonnegative")
    verts = [("U", i) for i in range(1, k + 1)] + [("L", j) for j in range(1, l + 1)]
    diagrams = sorted(GBDiagram(k, l, tuple(m)) for m in _matchings(verts))
    logger.debug("GB(%d, %d): %d diagrams", k, l, len(diagrams))
    return diagrams


def count_gb(k: int, l: int) -> int:
    total = 0
    for i in range((k + l) // 2 + 1):
        pairs = 1
        for m in range(2 * i - 1, 0, -2):
            pairs *= m
        total += comb(k + l, 2 * i) * pairs
    return total


# ---------------------------------------------------------------- structure

@dataclass(frozen=True)
class DiagramReading:
    upper_isolated: Tuple[int, ...]
    lower_isolated: Tuple[int, ...]
    upper_pairs: Tuple[Tuple[int, int], ...]
    lower_pairs: Tuple[Tuple[int, int], ...]
    through: Tuple[Tuple[int, int], ...]

    def to_dict(self) -> dict:
        return {
            "T_u": list(self.upper_isolated),
            "T_l": list(self.lower_isolated),
            "upper_pairs": [list(p) for p in self.upper_pairs],
            "lower_pairs": [list(p) for p in self.lower_pairs],
            "through": [list(p) for p in self.through],
        }


def read_diagram(d: GBDiagram) -> DiagramReading:
    caps, cups, through = [], [], []
    matched = set()
    for a, b in d.edges:
        matched.update((a, b))
        if a[0] == "U" and b[0] == "U":
            caps.append((a[1], b[1]))
        elif a[0] == "L" and b[0] == "L":
            cups.append((a[1], b[1]))
        else:
            through.append((a[1], b[1]))
    return DiagramReading(
        tuple(i for i in range(1, d.k + 1) if ("U", i) not in matched),
        tuple(j for j in range(1, d.l + 1) if ("L", j) not in matched),
        tuple(sorted(caps)),
        tuple(sorted(cups)),
        tuple(sorted(through)),
    )


def diagram_from_parts(
    k: int,
    l: int,
    caps: Iterable[Tuple[int, int]] = (),
    cups: Iterable[Tuple[int, int]] = (),
    through: Iterable[Tuple[int, int]] = (),
) -> GBDiagram:
    edges = [(("U", a), ("U", b)) for a, b in caps]
    edges += [(("L", a), ("L", b)) for a, b in cups]
    edges += [(("U", a), ("L", b)) for a, b in through]
    return GBDiagram(k, l, tuple(edges))


def through_count(d: GBDiagram) -> int:
    return sum(1 for a, b in d.edges if a[0] != b[0])


def relabel(d: GBDiagram, upper: Sequence[int], lower: Sequence[int]) -> GBDiagram:
    """Move vertex Ui to U(upper[i-1]) and Lj to L(lower[j-1])."""
    if sorted(upper) != list(range(1, d.k + 1)) or sorted(lower) != list(range(1, d.l + 1)):
        raise InvalidInputError("relabelings must be permutations of the vertex rows")

    def move(v: Vertex) -> Vertex:
        return ("U", upper[v[1] - 1]) if v[0] == "U" else ("L", lower[v[1] - 1])

    return GBDiagram(d.k, d.l, tuple((move(a), move(b)) for a, b in d.edges))


def identity_diagram(k: int) -> GBDiagram:
    return diagram_from_parts(k, k, through=[(i, i) for i in range(1, k + 1)])


def permutation_diagram(perm: Sequence[int]) -> GBDiagram:
    """Ui joined to L(perm[i-1])."""
    k = len(perm)
    if sorted(perm) != list(range(1, k + 1)):
        raise InvalidInputError(f"{list(perm)} is not a permutation")
    return diagram_from_parts(k, k, through=[(i, perm[i - 1]) for i in range(1, k + 1)])


def temperley_lieb_generator(k: int, i: int) -> GBDiagram:
    """e_i: the cap on Ui, Ui+1 over the cup on Li, Li+1, all other strands straight."""
    if not 1 <= i < k:
        raise InvalidInputError(f"e_{i} needs 1 <= i < k = {k}")
    others = [(j, j) for j in range(1, k + 1) if j not in (i, i + 1)]
    return diagram_from_parts(k, k, caps=[(i, i + 1)], cups=[(i, i + 1)], through=others)


# ---------------------------------------------------------------- y aliases

ALIASES: Dict[str, GBDiagram] = {
    "y1": diagram_from_parts(2, 2, through=[(1, 1), (2, 2)]),
    "y2": diagram_from_parts(2, 2, through=[(1, 2), (2, 1)]),
    "y3": diagram_from_parts(2, 2, caps=[(1, 2)], cups=[(1, 2)]),
    "y4": diagram_from_parts(2, 2, through=[(1, 1)]),
    "y5": diagram_from_parts(2, 2, through=[(2, 2)]),
    "y6": diagram_from_parts(2, 2, through=[(1, 2)]),
    "y7": diagram_from_parts(2, 2, through=[(2, 1)]),
    "y8": diagram_from_parts(2, 2, caps=[(1, 2)]),
    "y9": diagram_from_parts(2, 2, cups=[(1, 2)]),
    "y10": GBDiagram(2, 2),
}
_ALIAS_OF = {d: name for name, d in ALIASES.items()}


def alias_of(d: GBDiagram) -> Optional[str]:
    return _ALIAS_OF.get(d)


def resolve_diagram(spec: Union[str, Mapping, GBDiagram]) -> GBDiagram:
    """A diagram from an alias name, a JSON dict or a diagram."""
    if isinstance(spec, GBDiagram):
        return spec
    if isinstance(spec, str):
        try:
            return ALIASES[spec.strip().lower()]
        except KeyError:
            raise InvalidInputError(f"unknown diagram alias {spec!r}; known: {', '.join(ALIASES)}") from None
    return GBDiagram.from_dict(spec)


# ---------------------------------------------------------------- combinations

Coefficient = Union[PolyX, ScalarLike]


class DiagramExpr:
    """A finite combination of diagrams of one shape with coefficients in Q(sqrt2)[X]."""

    def __init__(self, k: int, l: int, terms: Optional[Mapping[GBDiagram, Coefficient]] = None, param: str = "rt"):
        if param not in PARAMETRIZATIONS:
            raise InvalidInputError(f"parametrization must be one of {PARAMETRIZATIONS}, got {param!r}")
        self.k, self.l, self.param = k, l, param
        self.terms: Dict[GBDiagram, PolyX] = {}
        for d, c in (terms or {}).items():
            self.add_term(d, c)

    @classmethod
    def of(cls, d: GBDiagram, coeff: Coefficient = 1, param: str = "rt") -> "DiagramExpr":
        return cls(d.k, d.l, {d: coeff}, param)

    def add_term(self, d: GBDiagram, coeff: Coefficient) -> None:
        if (d.k, d.l) != (self.k, self.l):
            raise InvalidInputError(f"diagram of shape ({d.k}, {d.l}) in an expression of shape ({self.k}, {self.l})")
        new = self.terms.get(d, PolyX()) + PolyX.coerce(coeff)
        if new.is_zero():
            self.terms.pop(d, None)
        else:
            self.terms[d] = new

    def _check(self, other: "DiagramExpr") -> None:
        if (self.k, self.l, self.param) != (other.k, other.l, other.param):
            raise InvalidInputError("expressions differ in shape or parametrization")

    def __add__(self, other: "DiagramExpr") -> "DiagramExpr":
        self._check(other)
        out = self.copy()
        for d, c in other.terms.items():
            out.add_term(d, c)
        return out

    def __sub__(self, other: "DiagramExpr") -> "DiagramExpr":
        return self + other.scale(-1)

    def scale(self, factor: Coefficient) -> "DiagramExpr":
        f = PolyX.coerce(factor)
        return DiagramExpr(self.k, self.l, {d: c * f for d, c in self.terms.items()}, self.param)

    def copy(self) -> "DiagramExpr":
        return DiagramExpr(self.k, self.l, dict(self.terms), self.param)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, d: GBDiagram) -> PolyX:
        return self.terms.get(d, PolyX())

    def specialize(self, N: int) -> Dict[GBDiagram, QSqrt2]:
        """Coefficients at X = N, zeros dropped."""
        out = {}
        for d, c in self.terms.items():
            v = c.eval(N)
            if not v.is_zero():
                out[d] = v
        return out

    def sorted_terms(self) -> List[Tuple[GBDiagram, PolyX]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiagramExpr):
            return NotImplemented
        return (self.k, self.l, self.param, self.terms) == (other.k, other.l, other.param, other.terms)

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "l": self.l,
            "param": self.param,
            "terms": [
                {"diagram": d.to_dict(), "alias": alias_of(d), "coefficient": c.to_list(), "text": str(c)}
                for d, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "DiagramExpr":
        out = cls(int(data["k"]), int(data["l"]), param=data.get("param", "rt"))
        for term in data.get("terms", []):
            out.add_term(GBDiagram.from_dict(term["diagram"]), PolyX.from_list(term["coefficient"]))
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for d, c in self.sorted_terms():
            text = str(c)
            if text == "1":
                parts.append(str(d))
            elif text == "-1":
                parts.append(f"-{d}")
            elif len(c.coeffs) > 1 or " " in text:
                parts.append(f"({text}) {d}")
            else:
                parts.append(f"{text} {d}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"DiagramExpr({self.k}, {self.l}, {self.param}: {self})"
