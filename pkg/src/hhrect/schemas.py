"""Pydantic request/response models shared by the HTTP service and the CLI."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .quadrature import QuadratureSpec, Rectangle


class RectModel(BaseModel):
    a: float = 0.0
    b: float = 1.0
    c: float = 0.0
    d: float = 1.0

    @model_validator(mode="after")
    def _ordered(self):
        if not (self.a < self.b and self.c < self.d):
            raise ValueError("rectangle needs a < b and c < d")
        return self

    def to_rectangle(self) -> Rectangle:
        return Rectangle(self.a, self.b, self.c, self.d)


class QuadratureOptions(BaseModel):
    panels_1d: int = Field(default=64, ge=1)
    panels_2d_per_axis: int = Field(default=64, ge=1)
    nodes_per_panel: int = Field(default=8, ge=1)

    def to_spec(self) -> QuadratureSpec:
        return QuadratureSpec(self.panels_1d, self.panels_2d_per_axis,
                              self.nodes_per_panel)


class ComputeRequest(BaseModel):
    function: str
    rect: RectModel = RectModel()
    quadrature: QuadratureOptions = QuadratureOptions()


class ChainRequest(ComputeRequest):
    slack: float = 1e-9


class IdentityRequest(ComputeRequest):
    tolerance: float = 1e-8


class BoundsRequest(ComputeRequest):
    p_list: list[float] = [2.0]
    check_hypothesis: bool = False
    samples: int = Field(default=2000, ge=1)
    seed: int = 42

    @model_validator(mode="after")
    def _p_valid(self):
        if any(p <= 1.0 for p in self.p_list):
            raise ValueError("every Holder exponent must satisfy p > 1")
        return self


class ConvexityRequest(ComputeRequest):
    kind: Literal["coordinated", "partial", "hypothesis"] = "coordinated"
    q: float = Field(default=1.0, ge=1.0)
    samples: int = Field(default=10_000, ge=1)
    lines: int = Field(default=16, ge=1)
    seed: int = 42


class IntegrateRequest(ComputeRequest):
    m: int = Field(default=4, ge=1)
    n: int = Field(default=4, ge=1)
    check_hypothesis: bool = False
    samples_per_tile: int = Field(default=500, ge=1)
    seed: int = 42
    levels: int | None = Field(default=None, ge=1,
                               description="emit a convergence table instead")


class SweepPRequest(ComputeRequest):
    p_grid: list[float] = [1.1, 1.5, 2.0, 3.0, 10.0]

    @model_validator(mode="after")
    def _p_valid(self):
        if any(p <= 1.0 for p in self.p_grid):
            raise ValueError("every sweep exponent must satisfy p > 1")
        return self


class Verdict(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    passed: bool = Field(alias="pass")
    lhs: float
    rhs: float
    slack: float


class Meta(BaseModel):
    version: str
    timestamp: str


class Report(BaseModel):
    command: str
    config: dict[str, Any]
    results: dict[str, Any]
    verdicts: list[Verdict]
    meta: Meta

    def all_pass(self, strict: bool = False) -> bool:
        """Overall verdict; hypothesis checks only count under strict."""
        for v in self.verdicts:
            if not v.passed and (strict or not v.name.startswith("hypothesis")):
                return False
        return True
