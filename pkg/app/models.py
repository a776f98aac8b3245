import time
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

Status = Literal["pass", "fail"]
SUITES = ("laurent", "connectivity", "bijection", "denominator", "exchange", "kronecker")


class CheckReport(BaseModel):
    """Outcome of one verified instance"""
    check: str = Field(..., description="Name of the check and the instance it ran on")
    status: Status = Field(..., description="'pass' or 'fail'")
    witnesses: Dict = Field(default_factory=dict, description="Values supporting the verdict, or a counterexample")
    timing: float = Field(0.0, description="Wall time in seconds; not part of the deterministic payload")

    @classmethod
    def from_outcome(cls, check: str, passed: bool, started: float, **witnesses) -> "CheckReport":
        """started is a time.perf_counter() reading taken before the check ran"""
        return cls(check=check, status="pass" if passed else "fail", witnesses=witnesses,
                   timing=time.perf_counter() - started)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    class Config:
        json_schema_extra = {
            "example": {
                "check": "denominator[a2:M(1, 1)]",
                "status": "pass",
                "witnesses": {"dims": [1, 1], "denominator": [1, 1]},
                "timing": 0.01,
            }
        }


class SuiteReport(BaseModel):
    """All checks of a verification suite"""
    suite: str = Field(..., description="Suite name")
    status: Status = Field(..., description="'pass' iff every check passed")
    checks: List[CheckReport] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list, description="Documented remarks emitted by the suite")

    @classmethod
    def collect(cls, suite: str, checks: List[CheckReport], notes: Optional[List[str]] = None) -> "SuiteReport":
        status = "pass" if all(c.passed for c in checks) else "fail"
        return cls(suite=suite, status=status, checks=checks, notes=notes or [])

    def deterministic(self) -> dict:
        data = self.model_dump()
        for check in data["checks"]:
            check.pop("timing")
        return data


class SeedModel(BaseModel):
    """A seed as printed: each cluster variable in closed form and serialized"""
    cluster: List[str] = Field(..., description="Cluster variables as reduced fractions")
    terms: List[List[List]] = Field(..., description="Sorted [coefficient, exponent-vector] pairs per variable")
    matrix: List[List[int]] = Field(..., description="Exchange matrix")

    class Config:
        json_schema_extra = {
            "example": {
                "cluster": ["x1", "(x1**2 + 1)/x2"],
                "terms": [[["1", [1, 0]]], [["1", [0, -1]], ["1", [2, -1]]]],
                "matrix": [[0, -2], [2, 0]],
            }
        }


class GraphSummary(BaseModel):
    """Exchange graph counts"""
    nodes: int = Field(..., description="Seeds up to simultaneous relabeling")
    edges: int = Field(..., description="Undirected mutation edges")
    variables: int = Field(..., description="Distinct cluster variables")
    labeled_seeds: Optional[int] = Field(None, description="Seeds without identification up to relabeling")
    complete: bool = Field(..., description="False when a cap truncated the exploration")
    depth: int = Field(..., description="Largest breadth-first depth reached")


class CCResultModel(BaseModel):
    """Caldero-Chapoton image of a cluster object"""
    object: Dict = Field(..., description="Module dimension vector and shifted projectives")
    polynomial: str = Field(..., description="X as a reduced fraction")
    terms: List[List] = Field(..., description="Serialized Laurent polynomial")
    denominator: List[int] = Field(..., description="Denominator vector d with X = P / x^d")
    chi_table: List[List] = Field(..., description="[e, chi(Gr_e)] pairs")


class RunConfig(BaseModel):
    """Validated options of one command invocation"""
    command: Literal["mutate", "explore", "ccmap", "verify"]
    quiver: Optional[str] = Field(None, description="Preset name")
    file: Optional[str] = Field(None, description="Path of a quiver JSON file")
    max_seeds: int = Field(100_000, gt=0)
    max_depth: int = Field(64, gt=0)
    budget: int = Field(10_000_000, gt=0)
    primes: Optional[List[int]] = Field(None, description="Explicit interpolation primes")
    prime: int = Field(101, gt=1, description="Prime for structural linear algebra")
    seed: int = Field(0, description="Sampling seed")
    attempts: int = Field(200, gt=0)
    format: Literal["json", "text"] = "json"
    parallel: bool = False
    n_max: int = Field(10, ge=0)
    n_max_cc: int = Field(3, ge=0)

    @model_validator(mode="after")
    def one_quiver_source(self):
        if self.command == "verify" and self.quiver is None and self.file is None:
            return self
        if (self.quiver is None) == (self.file is None):
            raise ValueError("give exactly one of a preset name or a quiver file")
        return self


class MutateRequest(BaseModel):
    """Input model for /mutate"""
    quiver: str = Field(..., description="Preset name")
    directions: List[int] = Field(default_factory=list, description="1-based mutation directions")

    class Config:
        json_schema_extra = {"example": {"quiver": "kronecker", "directions": [2]}}


class ExploreRequest(BaseModel):
    """Input model for /explore"""
    quiver: str = Field(..., description="Preset name")
    max_seeds: int = Field(100_000, gt=0)
    max_depth: int = Field(64, gt=0)

    class Config:
        json_schema_extra = {"example": {"quiver": "a3", "max_seeds": 1000, "max_depth": 64}}


class CCMapRequest(BaseModel):
    """Input model for /ccmap: an object spec or a root"""
    quiver: str = Field(..., description="Preset name")
    object: Optional[str] = Field(None, description="Object spec such as 'SP:1', 'P:2' or 'kronecker:W:1'")
    root: Optional[List[int]] = Field(None, description="Dimension vector of a real root")

    @model_validator(mode="after")
    def one_object(self):
        if (self.object is None) == (self.root is None):
            raise ValueError("give exactly one of object or root")
        return self

    class Config:
        json_schema_extra = {"example": {"quiver": "kronecker", "object": "kronecker:W:1"}}


class VerifyRequest(BaseModel):
    """Input model for /verify"""
    suite: Literal[SUITES]
    quiver: Optional[str] = Field(None, description="Preset name; suites have their own defaults")
    n_max: int = Field(10, ge=0)
    n_max_cc: int = Field(3, ge=0)

    class Config:
        json_schema_extra = {"example": {"suite": "denominator", "quiver": "a3"}}
