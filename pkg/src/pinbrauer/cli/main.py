import argparse
import json
import logging
import os
import sys
from typing import Any, Dict, Optional

from pydantic import ValidationError

from pinbrauer.core import algebra, ops
from pinbrauer.core.characters import (
    character_of,
    decompose_character,
    dim_cpk,
    iterated_vector_multiplicities,
    laurent_mul,
    spin_irrep_dimension,
    tensor_rule,
    updown_walks,
    weyl_character,
)
from pinbrauer.core.diagrams import DiagramExpr, count_gb, enumerate_gb, read_diagram, resolve_diagram
from pinbrauer.core.errors import PinBrauerError, VerificationError
from pinbrauer.core.exporter import counts_records, matrix_record, multiplicity_records, to_json, to_table
from pinbrauer.core.suites import SUITES, run_suite
from pinbrauer.schemas import IrrepLabelModel, RunConfig

logger = logging.getLogger(__name__)

COMMANDS = ("dims", "enumerate", "multiply", "realize", "verify", "decompose", "t0")


def parse_args(argv: Optional[list[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="pinbrauer",
        description="Exact computations in the centralizer algebras of Pin(N) and Spin(N) on spinors times vectors.",
    )
    parser.add_argument("command", choices=COMMANDS, help="What to compute")
    parser.add_argument("--n", type=int, default=2, help="Rank n (default: 2)")
    parser.add_argument("--N", type=int, help="Dimension N = 2n or 2n+1 (default: 2n+1)")
    parser.add_argument("--k", type=int, default=2, help="Number of upper vertices / tensor factors (default: 2)")
    parser.add_argument("--l", type=int, help="Number of lower vertices (default: k)")
    parser.add_argument("--s", type=int, help="Alternation bound of the dual-pair subspace (default: min(k, n))")
    parser.add_argument("--family", choices=("odd", "even"), help="Sign family of the generic algebra (default: parity of N)")
    parser.add_argument("--param", dest="parametrization", choices=("rt", "inv"), default="rt", help="Diagram parametrization")
    parser.add_argument("--delta-sign", type=int, choices=(1, -1), help="Delta_+ or Delta_- for N = 2n+1")
    parser.add_argument("--lhs", help="Left factor or diagram: alias y1..y10 or JSON {k, l, edges}")
    parser.add_argument("--rhs", help="Right factor (applied first)")
    parser.add_argument("--suite", choices=sorted(SUITES), help="Verification suite")
    parser.add_argument("--left", help="Irrep label as JSON, e.g. '{\"kind\": \"DELTA\", \"parts\": [1], \"n\": 2, \"N\": 5}'")
    parser.add_argument("--right", help="Second irrep label as JSON")
    parser.add_argument("--seed", type=int, default=0, help="Seed for sampled checks (default: 0)")
    parser.add_argument("--table", action="store_true", help="Human-readable table instead of JSON where available")
    parser.add_argument(
        "-o", "--output",
        help="Write the report to a file (relative paths go under env PINBRAUER_OUT_DIR)",
    )
    parser.add_argument(
        "--log-level",
        default=os.environ.get("PINBRAUER_LOG_LEVEL", "INFO"),
        help="Logging level (default: env PINBRAUER_LOG_LEVEL or INFO)",
    )
    return parser.parse_args(argv)


def _diagram_arg(text: Optional[str], what: str):
    if not text:
        raise PinBrauerError(f"{what} is required for this command")
    text = text.strip()
    return resolve_diagram(json.loads(text) if text.startswith("{") else text)


def _label_arg(text: Optional[str], what: str):
    if not text:
        raise PinBrauerError(f"{what} is required for this command")
    return IrrepLabelModel.model_validate_json(text).to_label()


def cmd_dims(cfg: RunConfig) -> Dict[str, Any]:
    walks = updown_walks(cfg.n, cfg.N, cfg.k)
    return {
        "k": cfg.k,
        "dim_cpk": dim_cpk(cfg.k),
        "gb_count": count_gb(cfg.k, cfg.k),
        "walks": counts_records(walks),
        "sum_of_squares": sum(m * m for m in walks.values()),
    }


def cmd_enumerate(cfg: RunConfig) -> Dict[str, Any]:
    diagrams = enumerate_gb(cfg.k, cfg.l)
    return {
        "k": cfg.k,
        "l": cfg.l,
        "count": len(diagrams),
        "diagrams": [dict(d.to_dict(), name=str(d), **read_diagram(d).to_dict()) for d in diagrams],
    }


def cmd_multiply(cfg: RunConfig, args: argparse.Namespace) -> Dict[str, Any]:
    a, b = _diagram_arg(args.lhs, "--lhs"), _diagram_arg(args.rhs, "--rhs")
    product = algebra.multiply(DiagramExpr.of(a), DiagramExpr.of(b), cfg.family)
    return {"lhs": str(a), "rhs": str(b), "family": cfg.family, "product": product.to_json(), "text": str(product)}


def cmd_realize(cfg: RunConfig, args: argparse.Namespace) -> Dict[str, Any]:
    d = _diagram_arg(args.lhs, "--lhs")
    m = ops.realize(cfg.space_spec(), d, cfg.parametrization)
    return {"diagram": str(d), "n": cfg.n, "N": cfg.N, "param": cfg.parametrization, "matrix": matrix_record(m)}


def cmd_decompose(cfg: RunConfig, args: argparse.Namespace) -> Dict[str, Any]:
    a, b = _label_arg(args.left, "--left"), _label_arg(args.right, "--right")
    rule = tensor_rule(a, b)
    product = laurent_mul(weyl_character(a), weyl_character(b))
    report: Dict[str, Any] = {
        "left": str(a),
        "right": str(b),
        "rule": multiplicity_records(rule),
        "agrees_with_characters": character_of(a.n, a.N, rule) == product,
    }
    if all(m > 0 for m in rule.values()):
        report["oracle"] = multiplicity_records(decompose_character(a.n, a.N, product))
        report["dimensions"] = {str(label): spin_irrep_dimension(label) for label in rule}
    return report


def cmd_t0(cfg: RunConfig) -> Dict[str, Any]:
    spec = cfg.space_spec()
    basis = ops.t0_subspace(spec, cfg.k, cfg.s)
    report: Dict[str, Any] = {
        "n": cfg.n,
        "N": cfg.N,
        "k": cfg.k,
        "s": cfg.s,
        "dimension": len(basis),
        "multiplicities": counts_records(iterated_vector_multiplicities(cfg.n, cfg.N, cfg.k)),
    }
    if not spec.odd:
        plus, minus = ops.a_split(spec, basis)
        report["a_split"] = {"plus": len(plus), "minus": len(minus)}
    return report


def _write(text: str, output: Optional[str]) -> None:
    if output:
        path = output if os.path.isabs(output) else os.path.join(os.environ.get("PINBRAUER_OUT_DIR", "."), output)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info("report written to %s", path)
    else:
        print(text)


def main(argv: Optional[list[str]] = None) -> int:
    args = parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    try:
        cfg = RunConfig(
            command=args.command,
            n=args.n,
            N=args.N,
            k=args.k,
            l=args.l,
            s=args.s,
            family=args.family,
            parametrization=args.parametrization,
            delta_sign=args.delta_sign,
            output=args.output,
            seed=args.seed,
        )
    except ValidationError as e:
        print(to_json({"error": "invalid configuration", "detail": str(e)}))
        return 2

    try:
        if cfg.command == "verify":
            if not args.suite:
                raise PinBrauerError("--suite is required for verify")
            report = run_suite(args.suite, cfg.n, cfg.N, cfg.seed, cfg.delta_sign)
            data = report.to_dict()
            try:
                report.raise_on_failure()
            except VerificationError as failure:
                data["failure"] = failure.to_record()
            text = to_table(data["cases"], ["case", "passed"]) if args.table else to_json(data)
            _write(text, cfg.output)
            return 0 if report.passed else 1
        if cfg.command == "dims":
            data = cmd_dims(cfg)
        elif cfg.command == "enumerate":
            data = cmd_enumerate(cfg)
        elif cfg.command == "multiply":
            data = cmd_multiply(cfg, args)
        elif cfg.command == "realize":
            data = cmd_realize(cfg, args)
        elif cfg.command == "decompose":
            data = cmd_decompose(cfg, args)
        else:
            data = cmd_t0(cfg)
    except (PinBrauerError, ValidationError, ValueError) as e:
        logger.error("%s failed: %s", cfg.command, e)
        print(to_json({"error": type(e).__name__, "detail": str(e)}))
        return 1

    if args.table and cfg.command == "dims":
        text = to_table(data["walks"])
    elif args.table and cfg.command == "enumerate":
        text = to_table(data["diagrams"], ["name", "T_u", "T_l", "through"])
    else:
        text = to_json(data)
    _write(text, cfg.output)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
