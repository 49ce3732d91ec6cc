"""The generic diagram algebra over Q(sqrt2)[X].

A product of two rt diagrams is written as a word of projections and
immersions joined by strands, then rewritten with the composition
relations until a single projection sits above a single immersion. Each
closed strand contributes a factor X.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Tuple

from pinbrauer.core.clifford import arrangement_sign, sort_sign
from pinbrauer.core.diagrams import (
    DiagramExpr,
    GBDiagram,
    diagram_from_parts,
    enumerate_gb,
    identity_diagram,
    permutation_diagram,
    read_diagram,
    through_count,
)
from pinbrauer.core.errors import DegreeMismatchError, InvalidInputError, PinBrauerError
from pinbrauer.core.ops import FAMILIES, iphi_terms
from pinbrauer.core.scalars import X, PolyX, lower_factorial

logger = logging.getLogger(__name__)

PR = "PR"
INJ = "INJ"
MAX_STEPS = 200_000

End = Tuple[str, int]
Op = Tuple[str, Tuple[int, ...]]


@dataclass
class OpWord:
    """coeff * (ops applied left to right), legs joined by links between ends.

    Ends are ("U", i) inputs, ("L", j) outputs and ("S", s) slots of the ops.
    """

    coeff: PolyX
    ops: List[Op]
    links: Dict[End, End] = field(default_factory=dict)

    def copy(self) -> "OpWord":
        return OpWord(self.coeff, list(self.ops), dict(self.links))

    def link(self, a: End, b: End) -> None:
        self.links[a] = b
        self.links[b] = a

    def join(self, s: int, t: int) -> None:
        """Fuse the strands through slots s and t into one."""
        x, y = ("S", s), ("S", t)
        px, py = self.links.pop(x), self.links.pop(y)
        if px == y:
            self.coeff = self.coeff * X
            return
        self.links.pop(px, None)
        self.links.pop(py, None)
        self.link(px, py)

    def drop(self, s: int) -> None:
        partner = self.links.pop(("S", s))
        self.links.pop(partner, None)

    def times(self) -> Dict[int, Tuple[int, str]]:
        return {s: (j, kind) for j, (kind, slots) in enumerate(self.ops) for s in slots}


def _source_before(end: End, j: int, times: Dict[int, Tuple[int, str]]) -> bool:
    if end[0] == "U":
        return True
    if end[0] == "S":
        t, kind = times[end[1]]
        return kind == INJ and t < j
    return False


# ---------------------------------------------------------------- signs of the relations

def _eps3(odd: bool, p: int, q: int, i: int) -> int:
    return (-1) ** (q * i + comb(i + 1, 2) + (0 if odd else p * q))


def _eps4(odd: bool, p: int, q: int, i: int) -> int:
    return (-1) ** ((q * p if odd else 0) + q * i + comb(i, 2))


def _eps5(odd: bool, p: int, q: int, t: int, i: int) -> int:
    if odd:
        return (-1) ** ((q - i) * (p - i) + i * t)
    return (-1) ** (p * q + t * (p + q))


def _eps6(odd: bool, p: int, q: int, i: int) -> int:
    if odd:
        return (-1) ** (p * q + comb(q, 2) + i * (p + q - 1))
    return (-1) ** comb(q, 2)


def _eps7(odd: bool, p: int, q: int, i: int) -> int:
    if odd:
        return (-1) ** (comb(p, 2) + i * (p + q + 1))
    return (-1) ** (comb(p, 2) + p * q)


def _shared_factor(p: int, q: int, t: int, i: int) -> PolyX:
    total = PolyX()
    for u in range(i + 1):
        total = total + lower_factorial(X - (p + q - t - i + u), t) * comb(i, u)
    return total


# ---------------------------------------------------------------- rewriting rules

def _split(w: OpWord, j: int, upper: Tuple[int, ...], lower: Tuple[int, ...], sign: int, eps, extra=None) -> List[OpWord]:
    """Replace op j by the independent intertwiners from upper to lower slots."""
    out = []
    for i in range(min(len(upper), len(lower)) + 1):
        factor = sign * eps(i)
        scale = extra(i) if extra else None
        for s, rest_u, pairs, rest_l in iphi_terms(upper, lower, i):
            nw = w.copy()
            nw.coeff = nw.coeff * (factor * s)
            if scale is not None:
                nw.coeff = nw.coeff * scale
            for a, b in pairs:
                nw.join(a, b)
            nw.ops[j : j + 1] = [(PR, rest_u), (INJ, rest_l)]
            out.append(nw)
    return out


def _contracted_inj(w: OpWord, j: int, C: Tuple[int, ...], odd: bool) -> List[OpWord]:
    slots = w.ops[j][1]
    R = tuple(s for s in slots if s not in C)
    q, p = len(C), len(R)
    sign = arrangement_sign(slots, C + R)
    return _split(w, j, C, R, sign, lambda i: _eps6(odd, p, q, i))


def _fed_pr(w: OpWord, j: int, C: Tuple[int, ...], odd: bool) -> List[OpWord]:
    slots = w.ops[j][1]
    N = tuple(s for s in slots if s not in C)
    q, p = len(N), len(C)
    sign = arrangement_sign(slots, N + C)
    return _split(w, j, N, C, sign, lambda i: _eps7(odd, p, q, i))


def _pr_after_inj(w: OpWord, j: int, odd: bool) -> List[OpWord]:
    Li, Lp = w.ops[j][1], w.ops[j + 1][1]
    shared: List[Tuple[int, int]] = []
    for sp in Lp:
        kind, s = w.links[("S", sp)]
        if kind == "S" and s in Li:
            shared.append((s, sp))
    S_i = tuple(a for a, _ in shared)
    S_p = tuple(b for _, b in shared)
    NS = tuple(s for s in Li if s not in S_i)
    O = tuple(s for s in Lp if s not in S_p)
    sign = arrangement_sign(Li, NS + S_i) * arrangement_sign(Lp, S_p + O)
    p, q, t = len(Lp), len(NS), len(shared)
    base = w.copy()
    for s in S_i:
        base.drop(s)
    base.ops[j : j + 2] = [(PR, O)]
    return _split(
        base, j, O, NS, sign, lambda i: _eps5(odd, p, q, t, i), lambda i: _shared_factor(p, q, t, i)
    )


def _merge(w: OpWord, j: int, odd: bool) -> List[OpWord]:
    """Two adjacent ops of one kind become one, the later slots listed first."""
    kind, earlier = w.ops[j]
    later = w.ops[j + 1][1]
    p, q = len(earlier), len(later)
    out = []
    for i in range(min(p, q) + 1):
        eps = _eps3(odd, p, q, i) if kind == INJ else _eps4(odd, p, q, i)
        for s, rest_l, pairs, rest_e in iphi_terms(later, earlier, i):
            nw = w.copy()
            nw.coeff = nw.coeff * (eps * s)
            for a, b in pairs:
                nw.join(a, b)
            nw.ops[j : j + 2] = [(kind, rest_l + rest_e)]
            out.append(nw)
    return out


def _step(w: OpWord, odd: bool) -> Optional[List[OpWord]]:
    """One rewriting step, or None when w is in normal form."""
    w.ops = [op for op in w.ops if op[1]]
    times = w.times()
    for j, (_, slots) in enumerate(w.ops):
        for s in slots:
            other = w.links[("S", s)]
            if other[0] == "S" and times[other[1]][0] == j:
                return []
    for j, (kind, slots) in enumerate(w.ops):
        if kind == INJ:
            C = tuple(s for s in slots if _source_before(w.links[("S", s)], j, times))
            if C:
                return _contracted_inj(w, j, C, odd)
    for j, (kind, slots) in enumerate(w.ops):
        if kind == PR:
            C = tuple(s for s in slots if not _source_before(w.links[("S", s)], j, times))
            if C:
                return _fed_pr(w, j, C, odd)
    for j in range(len(w.ops) - 1):
        if w.ops[j][0] == INJ and w.ops[j + 1][0] == PR:
            return _pr_after_inj(w, j, odd)
    for j in range(len(w.ops) - 1):
        if w.ops[j][0] == w.ops[j + 1][0]:
            return _merge(w, j, odd)
    return None


def _normal_form(w: OpWord, k: int, l: int) -> Tuple[int, GBDiagram]:
    pr_slots: Tuple[int, ...] = ()
    inj_slots: Tuple[int, ...] = ()
    for kind, slots in w.ops:
        if kind == PR:
            pr_slots = slots
        else:
            inj_slots = slots
    upper = [w.links[("S", s)][1] for s in pr_slots]
    lower = [w.links[("S", s)][1] for s in inj_slots]
    caps, cups, through = [], [], []
    for a, b in w.links.items():
        if a[0] == "S" or b[0] == "S" or a > b:
            continue
        if a[0] == "U" and b[0] == "U":
            caps.append((a[1], b[1]))
        elif a[0] == "L" and b[0] == "L":
            cups.append((a[1], b[1]))
        else:
            u, v = (a, b) if a[0] == "U" else (b, a)
            through.append((u[1], v[1]))
    return sort_sign(upper) * sort_sign(lower), diagram_from_parts(k, l, caps, cups, through)


# ---------------------------------------------------------------- building the word of a product

def _product_word(a: GBDiagram, b: GBDiagram) -> OpWord:
    """The word of a o b: b's projection and immersion, then a's."""
    ra, rb = read_diagram(a), read_diagram(b)
    adj: Dict[End, List[End]] = {}

    def edge(x: End, y: End) -> None:
        adj.setdefault(x, []).append(y)
        adj.setdefault(y, []).append(x)

    counter = itertools.count(1)
    ops: List[Op] = []
    for kind, row, verts in (
        (PR, "U", rb.upper_isolated),
        (INJ, "M", rb.lower_isolated),
        (PR, "M", ra.upper_isolated),
        (INJ, "L", ra.lower_isolated),
    ):
        slots = tuple(next(counter) for _ in verts)
        for s, v in zip(slots, verts):
            edge(("S", s), (row, v))
        ops.append((kind, slots))
    for x, y in rb.upper_pairs:
        edge(("U", x), ("U", y))
    for x, y in rb.through:
        edge(("U", x), ("M", y))
    for x, y in rb.lower_pairs:
        edge(("M", x), ("M", y))
    for x, y in ra.upper_pairs:
        edge(("M", x), ("M", y))
    for x, y in ra.through:
        edge(("M", x), ("L", y))
    for x, y in ra.lower_pairs:
        edge(("L", x), ("L", y))

    word = OpWord(PolyX.constant(1), ops)
    seen = set()
    for start in adj:
        if start[0] == "M" or start in seen:
            continue
        prev, cur = start, adj[start][0]
        while cur[0] == "M":
            seen.add(cur)
            first, second = adj[cur]
            prev, cur = cur, second if first == prev else first
        seen.update((start, cur))
        word.link(start, cur)
    loops = 0
    for node in adj:
        if node[0] != "M" or node in seen:
            continue
        loops += 1
        stack = [node]
        while stack:
            m = stack.pop()
            if m in seen:
                continue
            seen.add(m)
            stack.extend(adj[m])
    word.coeff = word.coeff * (X ** loops)
    return word


# ---------------------------------------------------------------- public operations

def _check_family(family: str) -> bool:
    if family not in FAMILIES:
        raise InvalidInputError(f"family must be 'odd' or 'even', got {family!r}")
    return family == "odd"


def multiply_diagrams(a: GBDiagram, b: GBDiagram, family: str) -> DiagramExpr:
    """a o b, with b applied first, in the rt basis over Q(sqrt2)[X]."""
    odd = _check_family(family)
    if a.k != b.l:
        raise DegreeMismatchError(f"cannot compose GB({a.k}, {a.l}) after GB({b.k}, {b.l})")
    result = DiagramExpr(b.k, a.l)
    pending = [_product_word(a, b)]
    steps = 0
    while pending:
        steps += 1
        if steps > MAX_STEPS:
            raise PinBrauerError(f"rewriting of {a} * {b} did not terminate")
        w = pending.pop()
        if w.coeff.is_zero():
            continue
        nxt = _step(w, odd)
        if nxt is None:
            sign, d = _normal_form(w, b.k, a.l)
            result.add_term(d, w.coeff * sign)
        else:
            pending.extend(nxt)
    logger.debug("%s * %s (%s): %d rewriting steps, %d terms", a, b, family, steps, len(result.terms))
    return result


def multiply(a: DiagramExpr, b: DiagramExpr, family: str) -> DiagramExpr:
    """The product a * b = a o b of two rt combinations."""
    if a.param != "rt" or b.param != "rt":
        raise InvalidInputError("multiplication works in the rt parametrization")
    if a.k != b.l:
        raise DegreeMismatchError(f"cannot compose shape ({a.k}, {a.l}) after ({b.k}, {b.l})")
    out = DiagramExpr(b.k, a.l)
    for da, ca in a.terms.items():
        for db, cb in b.terms.items():
            out = out + multiply_diagrams(da, db, family).scale(ca * cb)
    return out


def structure_constants(k: int, family: str) -> Dict[Tuple[GBDiagram, GBDiagram], DiagramExpr]:
    """The full multiplication table of GB(k, k)."""
    if not 0 <= k <= 3:
        raise InvalidInputError("structure constants are tabulated for k <= 3")
    basis = enumerate_gb(k, k)
    table = {(a, b): multiply_diagrams(a, b, family) for a in basis for b in basis}
    logger.info("structure constants for k=%d (%s): %d products", k, family, len(table))
    return table


def structure_table_records(table: Dict[Tuple[GBDiagram, GBDiagram], DiagramExpr]) -> List[dict]:
    return [
        {"left": a.to_dict(), "right": b.to_dict(), "product": expr.to_json()}
        for (a, b), expr in sorted(table.items(), key=lambda item: (item[0][0].sort_key(), item[0][1].sort_key()))
    ]


def ideal_filtration_check(k: int, family: str = "odd") -> bool:
    """Products never have more through strands than either factor."""
    for (a, b), expr in structure_constants(k, family).items():
        bound = min(through_count(a), through_count(b))
        for d in expr.terms:
            if through_count(d) > bound:
                logger.warning("%s * %s contains %s with more through strands", a, b, d)
                return False
    return True


def top_quotient_dimension(k: int) -> int:
    """Dimension of GB(k, k) modulo the diagrams with fewer than k through strands."""
    return sum(1 for d in enumerate_gb(k, k) if through_count(d) == k)


def top_quotient_check(k: int, family: str = "odd") -> bool:
    """Modulo fewer through strands, permutation diagrams multiply like S_k."""
    perms = list(itertools.permutations(range(1, k + 1)))
    if top_quotient_dimension(k) != len(perms):
        return False
    for s in perms:
        for t in perms:
            product = multiply_diagrams(permutation_diagram(s), permutation_diagram(t), family)
            top = {d: c for d, c in product.terms.items() if through_count(d) == k}
            # t first, then s
            composed = permutation_diagram([s[t[i] - 1] for i in range(k)])
            if top != {composed: PolyX.constant(1)}:
                return False
    return True


def unit_check(k: int, family: str = "odd") -> bool:
    one = identity_diagram(k)
    for d in enumerate_gb(k, k):
        single = DiagramExpr.of(d)
        if multiply_diagrams(one, d, family) != single or multiply_diagrams(d, one, family) != single:
            return False
    return True
