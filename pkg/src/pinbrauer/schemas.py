from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from pinbrauer.core.characters import IrrepKind, IrrepLabel
from pinbrauer.core.clifford import SpaceSpec
from pinbrauer.core.diagrams import GBDiagram, resolve_diagram
from pinbrauer.core.suites import SUITES

Family = Literal["odd", "even"]
Parametrization = Literal["rt", "inv"]
DiagramRef = Union[str, Dict[str, Any]]


class RunConfig(BaseModel):
    """Validated parameters of one harness run.

    N defaults to 2n+1, l to k, s to min(k, n) and the family to the parity of N.
    """
    command: str
    n: int = Field(2, ge=1, le=4)
    N: Optional[int] = None
    k: int = Field(2, ge=0, le=4)
    l: Optional[int] = Field(None, ge=0, le=4)
    s: Optional[int] = Field(None, ge=0)
    family: Optional[Family] = None
    parametrization: Parametrization = "rt"
    delta_sign: Optional[Literal[1, -1]] = None
    output: Optional[str] = None
    seed: int = 0

    @model_validator(mode="after")
    def _fill_defaults(self) -> "RunConfig":
        if self.N is None:
            self.N = 2 * self.n + 1
        if self.N not in (2 * self.n, 2 * self.n + 1):
            raise ValueError(f"N={self.N} must be 2n or 2n+1 for n={self.n}")
        if self.l is None:
            self.l = self.k
        if self.s is None:
            self.s = min(self.k, self.n)
        if self.s > self.k:
            raise ValueError("s must not exceed k")
        if self.family is None:
            self.family = "odd" if self.N % 2 else "even"
        if self.delta_sign is not None and self.N % 2 == 0:
            raise ValueError("delta_sign only applies to N = 2n+1")
        return self

    def space_spec(self) -> SpaceSpec:
        return SpaceSpec(self.n, self.N, self.delta_sign)


class IrrepLabelModel(BaseModel):
    kind: IrrepKind
    parts: List[int] = []
    n: int = Field(..., ge=1, le=4)
    N: int
    pin_sign: Optional[Literal[1, -1]] = None

    def to_label(self) -> IrrepLabel:
        return IrrepLabel(self.kind, tuple(self.parts), self.n, self.N, self.pin_sign)


class MultiplyRequest(BaseModel):
    """Product lhs * rhs in the generic algebra.

    Args:
        lhs: Alias (y1..y10) or diagram dict {k, l, edges}.
        rhs: Same encoding; applied first.
        family: Sign family, 'odd' for N = 2n+1 and 'even' for N = 2n.
    """
    lhs: DiagramRef
    rhs: DiagramRef
    family: Family = "odd"

    def diagrams(self) -> List[GBDiagram]:
        return [resolve_diagram(self.lhs), resolve_diagram(self.rhs)]


class DecomposeRequest(BaseModel):
    left: IrrepLabelModel
    right: IrrepLabelModel


class VerifyRequest(BaseModel):
    suite: str
    n: int = Field(2, ge=1, le=4)
    N: Optional[int] = None
    seed: int = 0

    @field_validator("suite")
    @classmethod
    def _known_suite(cls, v: str) -> str:
        if v not in SUITES:
            raise ValueError(f"unknown suite {v!r}; known: {', '.join(SUITES)}")
        return v

    @model_validator(mode="after")
    def _default_N(self) -> "VerifyRequest":
        if self.N is None:
            self.N = 2 * self.n + 1
        if self.N not in (2 * self.n, 2 * self.n + 1):
            raise ValueError(f"N={self.N} must be 2n or 2n+1 for n={self.n}")
        return self


class TaskResponse(BaseModel):
    task_id: str
    status: str


class ResultResponse(BaseModel):
    task_id: str
    status: str
    result: Optional[dict] = None


class CaseRecord(BaseModel):
    case: str
    passed: bool
    detail: Dict[str, Any] = {}


class SuiteReportModel(BaseModel):
    suite: str
    n: int
    N: int
    seed: int
    passed: bool
    cases: List[CaseRecord]
