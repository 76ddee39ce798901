"""Pydantic request/response models for the HTTP service.

Exact values always travel as ``"p/q"`` strings; floats never appear in
payloads.  Report bodies keep their native JSON shapes (see the core
modules' ``to_json`` methods) inside typed envelopes.
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field


class AtomModel(BaseModel):
    label: str
    weight: str


class SpaceModel(BaseModel):
    atoms: list[AtomModel]
    events: dict[str, list[str]] = Field(default_factory=dict)

    def as_payload(self) -> dict:
        return {
            "atoms": [{"label": a.label, "weight": a.weight} for a in self.atoms],
            "events": self.events,
        }


class TargetModel(BaseModel):
    a: str
    b: str
    pAB: str


class ScheduleModel(BaseModel):
    epsilon: str = "1/64"
    shrink: str = "1/2"
    max_retries: int = 64


class ForkVerifyRequest(BaseModel):
    space: SpaceModel
    a: str
    b: str
    cause: str


class RccsVerifyRequest(BaseModel):
    space: SpaceModel
    a: str
    b: str
    partition: list[str]


class ConstructRequest(BaseModel):
    target: TargetModel
    n: int
    mode: Literal["literal", "realizable"] = "realizable"
    schedule: ScheduleModel = ScheduleModel()


class ExtendRequest(BaseModel):
    space: SpaceModel
    a: str
    b: str
    n: int
    mode: Literal["literal", "realizable"] = "realizable"
    schedule: ScheduleModel = ScheduleModel()


class DiagnoseRequest(BaseModel):
    space: SpaceModel
    x: str
    y: str
    partition: list[str]


class BudgetModel(BaseModel):
    max_atoms: int = 10
    max_partition_size: int = 5
    max_partitions: int = 200_000


class OracleSearchRequest(BaseModel):
    space: SpaceModel
    a: str
    b: str
    n: int
    budget: BudgetModel = BudgetModel()


class IdentitiesRequest(BaseModel):
    space: SpaceModel
    x: str
    y: str
    partition: list[str] | None = None
    seed: int = 0
    samples: int = 20


class VerdictResponse(BaseModel):
    verdict: bool
    report: dict[str, Any]


class ConstructResponse(BaseModel):
    verdict: bool
    set: dict[str, Any]
    report: dict[str, Any]


class ExtendResponse(BaseModel):
    verdict: bool
    set: dict[str, Any]
    extension: dict[str, Any]
    system_report: dict[str, Any]
    homomorphism_report: dict[str, Any]


class CounterexampleResponse(BaseModel):
    space: dict[str, Any]
    partition: list[list[str]]
    diagnosis: dict[str, Any]
    conclusion: str


class OracleSearchResponse(BaseModel):
    systems: list[list[list[str]]]
    count: int
    examined: int
    agreement_with_verifier: bool


class IdentitiesResponse(BaseModel):
    checks: list[dict[str, Any]]
    all_hold: bool
    note: str


class ErrorBody(BaseModel):
    kind: str
    detail: str


class ErrorResponse(BaseModel):
    error: ErrorBody
