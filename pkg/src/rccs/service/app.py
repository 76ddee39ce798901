"""FastAPI service exposing the toolkit's operations over JSON.

Every endpoint is a stateless wrapper around the core package: requests carry
spaces and event names, responses carry exact reports.  Domain errors map to
HTTP 400 with a machine-readable kind so thin clients can translate them.
"""

from __future__ import annotations

import random

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..admissibility import (
    check_admissible_star,
    diagnose_cancellation,
    realize_counterexample,
)
from ..construct import ConstructionRequest, Schedule, construct_admissible_star
from ..errors import RccsError
from ..extend import extend_with_rccs, verify_homomorphism
from ..forks import (
    DECOMPOSITION_NOTE,
    correlation_decomposition,
    verify_fork,
    verify_rccs,
)
from ..oracle import SearchBudget, enumerate_rccs, stirling2, verify_by_enumeration
from ..rationals import parse_rational
from ..spaces import (
    CorrelationSummary,
    Event,
    ProbSpace,
    correlation_summary,
    resolve_event,
    space_from_json,
    space_to_json,
    validate_partition,
)
from .schemas import (
    ConstructRequest,
    ConstructResponse,
    CounterexampleResponse,
    DiagnoseRequest,
    ExtendRequest,
    ExtendResponse,
    ForkVerifyRequest,
    IdentitiesRequest,
    IdentitiesResponse,
    OracleSearchRequest,
    OracleSearchResponse,
    RccsVerifyRequest,
    SpaceModel,
    VerdictResponse,
)

CONCLUSION = (
    "the aggregate joint condition (defect terms summing to zero) is necessary "
    "but not sufficient for cell-wise screening-off"
)

app = FastAPI(title="rccs", version=__version__)


@app.exception_handler(RccsError)
async def rccs_error_handler(_: Request, exc: RccsError) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"error": {"kind": type(exc).__name__, "detail": str(exc)}},
    )


def _load(space_model: SpaceModel) -> tuple[ProbSpace, dict[str, Event]]:
    return space_from_json(space_model.as_payload())


def _events(space, table, names):
    return [resolve_event(space, table, name) for name in names]


def _schedule(model) -> Schedule:
    return Schedule(
        epsilon=parse_rational(model.epsilon),
        shrink=parse_rational(model.shrink),
        max_retries=model.max_retries,
    )


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/verify/fork", response_model=VerdictResponse)
def verify_fork_endpoint(request: ForkVerifyRequest) -> VerdictResponse:
    space, table = _load(request.space)
    a, b, cause = _events(space, table, (request.a, request.b, request.cause))
    report = verify_fork(space, a, b, cause)
    return VerdictResponse(verdict=report.verdict, report=report.to_json())


@app.post("/verify/rccs", response_model=VerdictResponse)
def verify_rccs_endpoint(request: RccsVerifyRequest) -> VerdictResponse:
    space, table = _load(request.space)
    a, b = _events(space, table, (request.a, request.b))
    cells = _events(space, table, request.partition)
    report = verify_rccs(space, a, b, validate_partition(space, cells))
    return VerdictResponse(verdict=report.verdict, report=report.to_json())


@app.post("/construct", response_model=ConstructResponse)
def construct_endpoint(request: ConstructRequest) -> ConstructResponse:
    target = CorrelationSummary.from_marginals(
        parse_rational(request.target.a),
        parse_rational(request.target.b),
        parse_rational(request.target.pAB),
    )
    star = construct_admissible_star(
        ConstructionRequest(
            target=target, n=request.n, mode=request.mode, schedule=_schedule(request.schedule)
        )
    )
    report = check_admissible_star(star)
    return ConstructResponse(verdict=report.verdict, set=star.to_json(), report=report.to_json())


@app.post("/extend", response_model=ExtendResponse)
def extend_endpoint(request: ExtendRequest) -> ExtendResponse:
    space, table = _load(request.space)
    a, b = _events(space, table, (request.a, request.b))
    target = correlation_summary(space, a, b)
    star = construct_admissible_star(
        ConstructionRequest(
            target=target, n=request.n, mode=request.mode, schedule=_schedule(request.schedule)
        )
    )
    result = extend_with_rccs(space, a, b, star)
    image_a, image_b = result.image(a), result.image(b)
    system_report = verify_rccs(result.new_space, image_a, image_b, result.cells)
    hom_report = verify_homomorphism(result, space)
    named = {request.a: image_a, request.b: image_b}
    named.update({f"C{i}": cell for i, cell in enumerate(result.cells.cells, start=1)})
    return ExtendResponse(
        verdict=system_report.verdict and hom_report.verdict,
        set=star.to_json(),
        extension=result.to_json(named),
        system_report=system_report.to_json(),
        homomorphism_report=hom_report.to_json(),
    )


@app.post("/diagnose", response_model=VerdictResponse)
def diagnose_endpoint(request: DiagnoseRequest) -> VerdictResponse:
    space, table = _load(request.space)
    x, y = _events(space, table, (request.x, request.y))
    cells = _events(space, table, request.partition)
    report = diagnose_cancellation(space, x, y, validate_partition(space, cells))
    return VerdictResponse(verdict=report.screening_verdict, report=report.to_json())


@app.get("/counterexample", response_model=CounterexampleResponse)
def counterexample_endpoint() -> CounterexampleResponse:
    config = realize_counterexample()
    diagnosis = diagnose_cancellation(
        config.space, config.event_a, config.event_b, config.partition
    )
    named = {"A": config.event_a, "B": config.event_b}
    named.update({f"C{i}": cell for i, cell in enumerate(config.partition.cells, start=1)})
    return CounterexampleResponse(
        space=space_to_json(config.space, named),
        partition=[sorted(cell.members) for cell in config.partition.cells],
        diagnosis=diagnosis.to_json(),
        conclusion=CONCLUSION,
    )


@app.post("/oracle/search", response_model=OracleSearchResponse)
def oracle_search_endpoint(request: OracleSearchRequest) -> OracleSearchResponse:
    space, table = _load(request.space)
    a, b = _events(space, table, (request.a, request.b))
    budget = SearchBudget(
        max_atoms=request.budget.max_atoms,
        max_partition_size=request.budget.max_partition_size,
        max_partitions=request.budget.max_partitions,
    )
    systems = enumerate_rccs(space, a, b, request.n, budget)
    agreement = all(
        verify_by_enumeration(space, a, b, part) == verify_rccs(space, a, b, part).verdict
        for part in systems
    )
    return OracleSearchResponse(
        systems=[[sorted(cell.members) for cell in part.cells] for part in systems],
        count=len(systems),
        examined=stirling2(len(space.labels), request.n),
        agreement_with_verifier=agreement,
    )


def _random_partitions(space: ProbSpace, seed: int, samples: int):
    """Deterministic positive-mass partitions of the atoms for identity sweeps."""
    labels = list(space.labels)
    rng = random.Random(seed)
    produced = 0
    guard = 0
    while produced < samples and guard < samples * 50:
        guard += 1
        n = rng.randint(1, min(4, len(labels)))
        code = [0] * len(labels)
        for j in range(1, len(labels)):
            code[j] = rng.randint(0, n - 1)
        blocks: list[set[str]] = [set() for _ in range(n)]
        for label, idx in zip(labels, code):
            blocks[idx].add(label)
        cells = [space.event(b) for b in blocks if b]
        if any(sum((space.weight(l) for l in cell.members), start=0) == 0 for cell in cells):
            continue
        produced += 1
        yield validate_partition(space, cells)


@app.post("/identities", response_model=IdentitiesResponse)
def identities_endpoint(request: IdentitiesRequest) -> IdentitiesResponse:
    space, table = _load(request.space)
    x, y = _events(space, table, (request.x, request.y))
    checks = []
    if request.partition is not None:
        partitions = [
            validate_partition(space, _events(space, table, request.partition))
        ]
    else:
        partitions = list(_random_partitions(space, request.seed, request.samples))
    for part in partitions:
        deco = correlation_decomposition(space, x, y, part)
        payload = deco.to_json()
        payload["cells"] = [sorted(cell.members) for cell in part.cells]
        del payload["note"]
        checks.append(payload)
    return IdentitiesResponse(
        checks=checks,
        all_hold=all(c["identity_holds"] for c in checks),
        note=DECOMPOSITION_NOTE,
    )
