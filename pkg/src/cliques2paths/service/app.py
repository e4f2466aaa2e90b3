"""FastAPI service wrapping the solver toolkit.

Run with ``uvicorn cliques2paths.service.app:app``. Errors map to HTTP
status codes the CLI translates into exit codes: 400 for usage-level
problems (unparseable file, solver applied outside its regime, bad
parameters), 422 for instances that parse but violate a structural
invariant.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import formats
from ..errors import (
    C2PError,
    EmptyFormula,
    EvenChain,
    FormatError,
    ForeignPart,
    HTooLarge,
    InconsistentGadget,
    InvariantError,
    NotOnePlane,
    ParamConflict,
    TooLarge,
    Underconstrained,
)
from ..exact import solve_exact
from ..generator import GenParams, random_formula, random_instance
from ..model import Instance, max_crossings_per_edge, Solution
from ..oneplane import solve_one_plane
from ..reduction import extract_assignment, oracle_1in3, reduce_formula
from ..twosat import solve_with_2sat
from ..verify import verify_solution
from . import schemas

_USAGE_ERRORS = (
    FormatError,
    HTooLarge,
    NotOnePlane,
    EvenChain,
    EmptyFormula,
    TooLarge,
    Underconstrained,
    ParamConflict,
    ForeignPart,
)


class _InvalidSolution(C2PError):
    pass


def _stats(instance: Instance) -> schemas.InstanceStats:
    link_link = any(
        instance.edge_part[a] is None and instance.edge_part[b] is None
        for a, b in instance.crossings
    )
    return schemas.InstanceStats(
        n=instance.n,
        edges=len(instance.edges),
        crossings=len(instance.crossings),
        parts=len(instance.parts),
        h=instance.h,
        max_crossings_per_edge=max_crossings_per_edge(instance),
        part_sizes=[len(p) for p in instance.parts],
        link_link_crossing=link_link,
    )


def _run_solver(instance: Instance, algorithm: str) -> tuple[str, Solution | None, list[str]]:
    if algorithm == "auto":
        if max_crossings_per_edge(instance) <= 1:
            algorithm = "1plane"
        elif instance.h <= 3:
            algorithm = "2sat"
        else:
            algorithm = "exact"
    if algorithm == "1plane":
        outcome = solve_one_plane(instance)
        if outcome.status == "not-one-plane":
            raise NotOnePlane(outcome.offending_edge)
        return "1plane", outcome.solution, outcome.warnings
    if algorithm == "2sat":
        return "2sat", solve_with_2sat(instance), []
    return "exact", solve_exact(instance), []


def create_app() -> FastAPI:
    app = FastAPI(title="cliques2paths", version="0.1.0")

    @app.exception_handler(C2PError)
    async def c2p_error(request: Request, err: C2PError):
        if isinstance(err, InvariantError):
            body = schemas.ErrorBody(kind=err.kind, message=str(err))
            return JSONResponse(status_code=422, content=body.model_dump())
        kind = "InvalidSolution" if isinstance(err, (_InvalidSolution, InconsistentGadget)) else type(err).__name__
        body = schemas.ErrorBody(kind=kind, message=str(err))
        status = 400 if isinstance(err, _USAGE_ERRORS + (_InvalidSolution, InconsistentGadget)) else 500
        return JSONResponse(status_code=status, content=body.model_dump())

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/solve", response_model=schemas.SolveResponse)
    def solve(req: schemas.SolveRequest):
        instance = formats.parse_instance(req.instance)
        algorithm, solution, warnings = _run_solver(instance, req.algorithm)
        return schemas.SolveResponse(
            status="feasible" if solution is not None else "infeasible",
            algorithm=algorithm,
            solution=formats.serialize_solution(solution) if solution is not None else None,
            warnings=warnings,
        )

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def verify(req: schemas.VerifyRequest):
        instance = formats.parse_instance(req.instance)
        solution = formats.parse_solution(req.solution)
        violations = verify_solution(instance, solution)
        return schemas.VerifyResponse(
            valid=not violations,
            violations=[
                schemas.ViolationModel(kind=v.kind, part=v.part, edges=v.edges)
                for v in violations
            ],
        )

    @app.post("/stats", response_model=schemas.InstanceStats)
    def stats(req: schemas.StatsRequest):
        return _stats(formats.parse_instance(req.instance))

    @app.post("/reduce", response_model=schemas.ReduceResponse)
    def reduce(req: schemas.ReduceRequest):
        formula = formats.parse_formula(req.formula)
        instance, witness = reduce_formula(formula, chain_len=req.chain_len)
        return schemas.ReduceResponse(
            instance=formats.serialize_instance(instance),
            witness=formats.serialize_witness(witness),
            stats=_stats(instance),
        )

    @app.post("/extract", response_model=schemas.ExtractResponse)
    def extract(req: schemas.ExtractRequest):
        instance = formats.parse_instance(req.instance)
        witness = formats.parse_witness(req.witness)
        solution = formats.parse_solution(req.solution)
        violations = verify_solution(instance, solution)
        if violations:
            raise _InvalidSolution(f"solution has {len(violations)} violations; nothing to extract")
        assignment = extract_assignment(instance, witness, solution)
        return schemas.ExtractResponse(assignment=list(assignment))

    @app.post("/oracle", response_model=schemas.OracleResponse)
    def oracle(req: schemas.OracleRequest):
        formula = formats.parse_formula(req.formula)
        assignment = oracle_1in3(formula)
        return schemas.OracleResponse(
            satisfiable=assignment is not None,
            assignment=list(assignment) if assignment is not None else None,
        )

    @app.post("/generate/instance", response_model=schemas.GenInstanceResponse)
    def generate_instance(req: schemas.GenInstanceRequest):
        params = GenParams(
            seed=req.seed,
            parts=req.parts,
            size_min=req.size_min,
            size_max=req.size_max,
            density=req.density,
            cap=req.cap,
            links=req.links,
            realizable=req.realizable,
        )
        return schemas.GenInstanceResponse(instance=formats.serialize_instance(random_instance(params)))

    @app.post("/generate/formula", response_model=schemas.GenFormulaResponse)
    def generate_formula(req: schemas.GenFormulaRequest):
        formula = random_formula(req.seed, req.nvars, req.nclauses)
        return schemas.GenFormulaResponse(formula=formats.serialize_formula(formula))

    return app


app = create_app()
