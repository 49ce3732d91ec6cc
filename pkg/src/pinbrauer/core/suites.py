"""Named verification suites.

Each suite is a generator of (case, passed, detail) triples for one (n, N).
Every comparison is exact; the seed only drives the sampled checks.
"""
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

from pinbrauer.core import algebra, ops
from pinbrauer.core.characters import (
    IrrepKind,
    IrrepLabel,
    character_of,
    dim_cpk,
    iterated_vector_multiplicities,
    laurent_mul,
    partitions_of,
    spin_irrep_dimension,
    standard_tableaux_count,
    tensor_rule,
    updown_walks,
    weyl_character,
)
from pinbrauer.core.clifford import SpaceSpec
from pinbrauer.core.diagrams import ALIASES, DiagramExpr, GBDiagram, count_gb, enumerate_gb, temperley_lieb_generator
from pinbrauer.core.errors import InvalidInputError, OutOfRangeError, UnsupportedError, VerificationError
from pinbrauer.core.phi import (
    hadamard_block,
    phi_equivariant,
    phi_isometric,
    phi_variants,
    phirl_check,
    roundtrip_delta,
    roundtrip_ext,
)
from pinbrauer.core.scalars import X

logger = logging.getLogger(__name__)

Case = Tuple[str, bool, Dict[str, Any]]
Suite = Callable[[SpaceSpec, random.Random], Iterator[Case]]


@dataclass
class SuiteReport:
    suite: str
    n: int
    N: int
    seed: int
    cases: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.cases)

    def failures(self) -> List[Dict[str, Any]]:
        return [c for c in self.cases if not c["passed"]]

    def raise_on_failure(self) -> None:
        for c in self.failures():
            raise VerificationError(self.suite, c["case"], c.get("detail"))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "n": self.n,
            "N": self.N,
            "seed": self.seed,
            "passed": self.passed,
            "cases": self.cases,
        }


def _family(spec: SpaceSpec) -> str:
    return ops.family_of(spec)


# ---------------------------------------------------------------- suites

def dimensions_suite(spec: SpaceSpec, rng: random.Random) -> Iterator[Case]:
    yield "gb_2_2_count", count_gb(2, 2) == dim_cpk(2) == 10, {"count": count_gb(2, 2)}
    yield "gb_3_3_count", count_gb(3, 3) == dim_cpk(3) == 76, {"count": count_gb(3, 3)}
    for k in range(1, min(2, spec.n) + 1):
        rank = ops.rt_span_rank(spec, k)
        yield f"rt_independent_k{k}", rank == count_gb(k, k), {"rank": rank, "diagrams": count_gb(k, k)}
    dim = ops.commutant_dimension(spec, 1)
    yield "commutant_k1", dim == dim_cpk(1), {"dimension": dim}


def equivariance_suite(spec: SpaceSpec, rng: random.Random) -> Iterator[Case]:
    for ell in range(spec.N + 1):
        for name in phi_variants(spec, ell):
            ok = phi_equivariant(spec, ell, name) and phi_isometric(spec, ell, name)
            yield f"phi_{ell}_{name}", ok, {}
        yield f"phirl_{ell}", phirl_check(spec, ell), {}
    top_k = 2 if spec.n == 2 else 1
    for k in range(1, top_k + 1):
        for d in enumerate_gb(k, k):
            for param in ("rt", "inv"):
                yield f"realize_{param}_{d}", ops.realize_equivariant(spec, d, param), {}


def hadamard_suite(spec: SpaceSpec, rng: random.Random) -> Iterator[Case]:
    n = spec.n
    for roles in itertools.product((0, 1, 2), repeat=n):
        J = tuple(i + 1 for i, r in enumerate(roles) if r == 1)
        I = tuple(i + 1 for i, r in enumerate(roles) if r == 2)
        block = hadamard_block(n, J, I)
        yield f"block_J{list(J)}_I{list(I)}", block.is_hadamard(), {"size": block.size}
    if n <= 3:
        yield "phi_inverse_after_phi", roundtrip_ext(spec), {}
        yield "phi_after_phi_inverse", roundtrip_delta(spec), {}
        if not spec.odd:
            yield "phi_after_phi_inverse_split", roundtrip_delta(spec, split=True), {}


def psi_suite(spec: SpaceSpec, rng: random.Random) -> Iterator[Case]:
    top = min(4, spec.N)
    for r in range(top + 1):
        for p in range(r + 1):
            q = r - p
            ok = ops.psi_map(spec, p, q) == ops.psi_oracle_map(spec, p, q)
            yield f"psi_{p}_{q}_oracle", ok, {}
            if p > spec.n:
                ok = ops.psi_map(spec, p, q) == ops.psi_high_input_map(spec, p, q)
                yield f"psi_{p}_{q}_complement", ok, {}


def relations_suite(spec: SpaceSpec, rng: random.Random) -> Iterator[Case]:
    for number in range(1, 8):
        for p, q in itertools.product(range(3), repeat=2):
            for t in range(3) if number == 5 else (0,):
                try:
                    ok = ops.relation_check(spec, number, p, q, t)
                except OutOfRangeError:
                    continue
                name = f"relation{number}_p{p}_q{q}" + (f"_t{t}" if number == 5 else "")
                yield name, ok, {"p": p, "q": q, "t": t}
    for name, ok in ops.easy_relations_report(spec, 3).items():
        yield f"easy_{name}", ok, {}


def basis_change_suite(spec: SpaceSpec, rng: random.Random) -> Iterator[Case]:
    family = _family(spec)
    k = min(2, spec.n)
    for d in enumerate_gb(k, k):
        to_rt = ops.basis_change(d, "inv", family, spec.n)
        yield f"inv_to_rt_{d}", ops.realize(spec, d, "inv") == ops.realize_expr(spec, to_rt), {"terms": len(to_rt.terms)}
        to_inv = ops.basis_change(d, "rt", family, spec.n)
        yield f"rt_to_inv_{d}", ops.realize(spec, d, "rt") == ops.realize_expr(spec, to_inv), {"terms": len(to_inv.terms)}
    terms = len(ops.basis_change(GBDiagram(2, 2), "inv", family).terms)
    yield "all_isolated_expansion", terms == 7, {"terms": terms}


def generic_algebra_suite(spec: SpaceSpec, rng: random.Random) -> Iterator[Case]:
    family = _family(spec)
    if spec.odd:
        got = algebra.multiply_diagrams(ALIASES["y5"], ALIASES["y8"], family)
        want = DiagramExpr(2, 2, {ALIASES["y8"]: X - 1, ALIASES["y3"]: X - 1})
        yield "y5_y8", got == want, {"product": str(got)}
    e1, e2 = temperley_lieb_generator(3, 1), temperley_lieb_generator(3, 2)
    e2e1 = algebra.multiply_diagrams(e2, e1, family)
    yield "e1_e2_e1", algebra.multiply(DiagramExpr.of(e1), e2e1, family) == DiagramExpr.of(e1), {}
    yield "e1_squared", algebra.multiply_diagrams(e1, e1, family) == DiagramExpr(3, 3, {e1: X}), {}
    yield "ideal_filtration", algebra.ideal_filtration_check(2, family), {}
    yield "top_quotient", algebra.top_quotient_check(2, family), {"dimension": algebra.top_quotient_dimension(2)}
    yield "unit", algebra.unit_check(2, family), {}
    k = min(2, spec.n)
    basis = enumerate_gb(k, k)
    for a in basis:
        for b in basis:
            product = algebra.multiply_diagrams(a, b, family)
            ok = ops.realize_expr(spec, product) == ops.realize(spec, a) @ ops.realize(spec, b)
            yield f"specialize_{a}_{b}", ok, {"product": str(product)}
    basis2 = enumerate_gb(2, 2)
    for _ in range(50):
        a, b, c = (DiagramExpr.of(rng.choice(basis2)) for _ in range(3))
        left = algebra.multiply(algebra.multiply(a, b, family), c, family)
        right = algebra.multiply(a, algebra.multiply(b, c, family), family)
        yield f"associative_{a}_{b}_{c}", left == right, {}


def _delta(spec: SpaceSpec, lam) -> IrrepLabel:
    return IrrepLabel(IrrepKind.DELTA, lam, spec.n, spec.N)


def dual_pair_suite(spec: SpaceSpec, rng: random.Random) -> Iterator[Case]:
    for k in range(1, min(3, spec.n) + 1):
        for s in range(1, k + 1):
            shapes = [lam for lam in partitions_of(k) if len(lam) <= s]
            basis = ops.t0_subspace(spec, k, s)
            want = sum(standard_tableaux_count(lam) * spin_irrep_dimension(_delta(spec, lam)) for lam in shapes)
            yield f"t0_k{k}_s{s}", len(basis) == want, {"dimension": len(basis), "expected": want}
            if not spec.odd:
                plus, minus = ops.a_split(spec, basis)
                halves = []
                for kind in (IrrepKind.SPIN_PLUS, IrrepKind.SPIN_MINUS):
                    halves.append(sum(
                        standard_tableaux_count(lam) * spin_irrep_dimension(IrrepLabel(kind, lam, spec.n, spec.N))
                        for lam in shapes
                    ))
                got = sorted((len(plus), len(minus)))
                yield f"a_split_k{k}_s{s}", got == sorted(halves), {"split": [len(plus), len(minus)], "expected": halves}


def _rule_cases(spec: SpaceSpec) -> Iterator[Tuple[IrrepLabel, IrrepLabel]]:
    n, N = spec.n, spec.N
    small = [lam for total in range(4) for lam in partitions_of(total) if len(lam) <= n]
    vec = IrrepLabel(IrrepKind.SO, (1,), n, N)
    if spec.odd:
        yield _delta(spec, ()), _delta(spec, ())
        for lam in small:
            yield _delta(spec, lam), vec
            if lam:
                yield _delta(spec, ()), IrrepLabel(IrrepKind.SO, lam, n, N)
        return
    spins = (IrrepKind.SPIN_PLUS, IrrepKind.SPIN_MINUS)
    for a, b in itertools.product(spins, repeat=2):
        yield IrrepLabel(a, (), n, N), IrrepLabel(b, (), n, N)
    for kind in spins:
        for lam in small:
            yield IrrepLabel(kind, lam, n, N), vec
            if lam:
                yield IrrepLabel(kind, (), n, N), IrrepLabel(IrrepKind.SO, lam, n, N)
                if len(lam) == n:
                    yield IrrepLabel(kind, (), n, N), IrrepLabel(IrrepKind.SO_MINUS, lam, n, N)
    for lam in small:
        yield _delta(spec, lam), vec
    column = (1,) * n
    for a, b in itertools.product((IrrepKind.SO, IrrepKind.SO_MINUS), repeat=2):
        yield IrrepLabel(a, column, n, N), IrrepLabel(b, column, n, N)
    yield IrrepLabel(IrrepKind.DELTA_PRIME, (), n, N), IrrepLabel(IrrepKind.DELTA_PRIME, (), n, N)
    full = [lam for total in range(n, n + 3) for lam in partitions_of(total) if len(lam) == n]
    for delta in (lam for lam in small if len(lam) < n):
        for mu in full:
            for kind in (IrrepKind.DELTA, IrrepKind.DELTA_PRIME):
                yield IrrepLabel(kind, delta, n, N), IrrepLabel(IrrepKind.DIFF_CHAR, mu, n, N)


def tensor_rules_suite(spec: SpaceSpec, rng: random.Random) -> Iterator[Case]:
    for a, b in _rule_cases(spec):
        try:
            rule = tensor_rule(a, b)
        except UnsupportedError:
            continue
        ok = character_of(spec.n, spec.N, rule) == laurent_mul(weyl_character(a), weyl_character(b))
        yield f"{a}_x_{b}", ok, {"terms": len(rule)}


def walks_suite(spec: SpaceSpec, rng: random.Random) -> Iterator[Case]:
    for k in range(min(spec.n, 4) + 1):
        walks = updown_walks(spec.n, spec.N, k)
        squares = sum(m * m for m in walks.values())
        yield f"squares_k{k}", squares == dim_cpk(k), {"sum": squares, "dim_cpk": dim_cpk(k)}
        iterated = iterated_vector_multiplicities(spec.n, spec.N, k)
        yield f"iterated_k{k}", iterated == walks, {}


SUITES: Dict[str, Suite] = {
    "dimensions": dimensions_suite,
    "equivariance": equivariance_suite,
    "hadamard": hadamard_suite,
    "psi": psi_suite,
    "relations": relations_suite,
    "basis_change": basis_change_suite,
    "generic_algebra": generic_algebra_suite,
    "dual_pair": dual_pair_suite,
    "tensor_rules": tensor_rules_suite,
    "walks": walks_suite,
}


def run_suite(name: str, n: int, N: int, seed: int = 0, delta_sign: Optional[int] = None) -> SuiteReport:
    """Run one named suite at (n, N) and collect every case."""
    try:
        suite = SUITES[name]
    except KeyError:
        raise InvalidInputError(f"unknown suite {name!r}; known: {', '.join(SUITES)}") from None
    spec = SpaceSpec(n, N, delta_sign)
    report = SuiteReport(name, n, N, seed)
    logger.info("suite %s at n=%d, N=%d (seed %d)", name, n, N, seed)
    for case, passed, detail in suite(spec, random.Random(seed)):
        report.cases.append({"case": case, "passed": bool(passed), "detail": detail})
        if not passed:
            logger.warning("suite %s: case %s failed", name, case)
    logger.info("suite %s: %d cases, %d failed", name, len(report.cases), len(report.failures()))
    return report
