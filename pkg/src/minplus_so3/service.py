"""HTTP facade over the run pipeline and stateful filter sessions.

Batch endpoints (``/runs``) resolve a settings body exactly like a config
file, run the scenario, and return records or CSV.  Filter sessions
(``/filters``) hold a live expansion server-side so a client can feed
measurements one step at a time.
"""

from __future__ import annotations

import itertools
import logging
import threading
from typing import Literal, Optional

import numpy as np
from fastapi import FastAPI, HTTPException, Response
from pydantic import BaseModel, ConfigDict, Field

from .config import ConfigError, resolve_run
from .csvio import render_csv
from .expansion import DisturbanceSet, Weights, extract_estimate
from .runner import run
from .runtime import FilterConfig, FilterState, filter_init, filter_step
from .simulate import PRESET_NAMES, StepRecord
from .so3 import expm, hat

logger = logging.getLogger(__name__)

Matrix3 = list[list[float]]


def _matrix(values: Matrix3, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.shape != (3, 3):
        raise HTTPException(status_code=400, detail=f"{what} must be a 3x3 matrix")
    return arr


class RunRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scenario: Optional[str] = None
    dt: Optional[float] = None
    steps: Optional[int] = None
    seed: Optional[int] = None
    window_len: Optional[int] = None
    prune_cap: Optional[int] = None
    k_inv_diag: Optional[list[float]] = None
    l_inv_diag: Optional[list[float]] = None
    drift_coeffs: Optional[list[float]] = None
    process_noise_kind: Optional[Literal["gaussian", "uniform"]] = None
    process_noise_dirs: Optional[list[int]] = None
    process_noise_scale: Optional[float] = None
    meas_noise_kind: Optional[Literal["gaussian", "uniform"]] = None
    meas_noise_dirs: Optional[list[int]] = None
    meas_noise_scale: Optional[float] = None
    init_error_coeffs: Optional[list[float]] = None
    z_magnitudes: Optional[list[float]] = None
    swap_case3_dirs: Optional[bool] = None

    def settings(self) -> dict:
        return self.model_dump(exclude_none=True)


class StepModel(BaseModel):
    t: float
    meas_noise: float
    tracking_error: float
    value: float
    term_count: int
    rhat: Matrix3
    rtrue: Matrix3
    y: Matrix3

    @classmethod
    def from_record(cls, rec: StepRecord) -> "StepModel":
        return cls(
            t=rec.t,
            meas_noise=rec.meas_noise,
            tracking_error=rec.tracking_error,
            value=rec.value,
            term_count=rec.term_count,
            rhat=rec.r_hat.tolist(),
            rtrue=rec.r_true.tolist(),
            y=rec.y.tolist(),
        )


class SummaryModel(BaseModel):
    mean_tracking_error: float
    max_tracking_error: float
    mean_meas_noise: float
    final_tracking_error: float
    steps: int


class RunResponse(BaseModel):
    scenario: str
    summary: SummaryModel
    records: list[StepModel]


class FilterCreateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dt: float
    window_len: int = 10
    prune_cap: int = 500
    k_inv_diag: list[float] = Field(default=[1.0, 1.0, 1.0])
    l_inv_diag: list[float] = Field(default=[1.0, 1.0, 1.0])
    z_magnitudes: list[float] = Field(default=[0.5, 1.0])
    rhat0: Optional[Matrix3] = None
    init_error_coeffs: Optional[list[float]] = None


class FilterStepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    y: Matrix3
    drift_coeffs: list[float] = Field(default=[0.0, 0.0, 0.0])


class FilterStepResponse(BaseModel):
    rhat: Matrix3
    value: float
    term_count: int


class FilterInfo(BaseModel):
    id: str
    dt: float
    window_len: int
    prune_cap: int
    term_count: int
    rhat: Matrix3


class _Session:
    def __init__(self, cfg: FilterConfig, state: FilterState):
        self.cfg = cfg
        self.state = state


def create_app() -> FastAPI:
    app = FastAPI(title="minplus-so3")
    sessions: dict[str, _Session] = {}
    ids = itertools.count(1)
    lock = threading.Lock()

    def _get(filter_id: str) -> _Session:
        session = sessions.get(filter_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"no filter session {filter_id!r}")
        return session

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/presets")
    def presets() -> dict:
        return {"presets": list(PRESET_NAMES)}

    @app.post("/runs", response_model=RunResponse)
    def runs(req: RunRequest) -> RunResponse:
        try:
            setup = resolve_run(req.settings())
            records, summary = run(setup)
        except ConfigError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        logger.info("ran scenario %s: %d steps", setup.name, summary.steps)
        return RunResponse(
            scenario=setup.name,
            summary=SummaryModel(
                mean_tracking_error=summary.mean_te,
                max_tracking_error=summary.max_te,
                mean_meas_noise=summary.mean_meas_noise,
                final_tracking_error=summary.final_te,
                steps=summary.steps,
            ),
            records=[StepModel.from_record(rec) for rec in records],
        )

    @app.post("/runs/csv")
    def runs_csv(req: RunRequest) -> Response:
        try:
            setup = resolve_run(req.settings())
            records, _ = run(setup)
        except ConfigError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        logger.info("ran scenario %s for csv export", setup.name)
        return Response(content=render_csv(records), media_type="text/csv")

    @app.post("/filters", response_model=FilterInfo, status_code=201)
    def create_filter(req: FilterCreateRequest) -> FilterInfo:
        if req.rhat0 is not None and req.init_error_coeffs is not None:
            raise HTTPException(
                status_code=400, detail="give either rhat0 or init_error_coeffs, not both"
            )
        try:
            cfg = FilterConfig(
                dt=req.dt,
                window_len=req.window_len,
                prune_cap=req.prune_cap,
                weights=Weights(np.diag(req.k_inv_diag), np.diag(req.l_inv_diag)),
                zset=DisturbanceSet.signed_grid(tuple(req.z_magnitudes)),
            )
            if req.rhat0 is not None:
                r_hat0 = _matrix(req.rhat0, "rhat0")
            elif req.init_error_coeffs is not None:
                r_hat0 = expm(hat(req.init_error_coeffs))
            else:
                r_hat0 = np.eye(3)
            state = filter_init(cfg, r_hat0)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        with lock:
            filter_id = f"f{next(ids)}"
            sessions[filter_id] = _Session(cfg, state)
        logger.info("created filter session %s", filter_id)
        return _info(filter_id, sessions[filter_id])

    @app.get("/filters/{filter_id}", response_model=FilterInfo)
    def get_filter(filter_id: str) -> FilterInfo:
        with lock:
            return _info(filter_id, _get(filter_id))

    @app.post("/filters/{filter_id}/steps", response_model=FilterStepResponse)
    def step_filter(filter_id: str, req: FilterStepRequest) -> FilterStepResponse:
        y = _matrix(req.y, "y")
        drift = hat(req.drift_coeffs)
        with lock:
            session = _get(filter_id)
            try:
                state, r_hat, value = filter_step(session.state, y, drift, session.cfg)
            except ValueError as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
            session.state = state
        return FilterStepResponse(
            rhat=r_hat.tolist(), value=value, term_count=state.last_term_count
        )

    @app.delete("/filters/{filter_id}", status_code=204)
    def delete_filter(filter_id: str) -> Response:
        with lock:
            _get(filter_id)
            del sessions[filter_id]
        logger.info("deleted filter session %s", filter_id)
        return Response(status_code=204)

    def _info(filter_id: str, session: _Session) -> FilterInfo:
        return FilterInfo(
            id=filter_id,
            dt=session.cfg.dt,
            window_len=session.cfg.window_len,
            prune_cap=session.cfg.prune_cap,
            term_count=session.state.last_term_count,
            rhat=extract_estimate(session.state.expansion)[0].tolist(),
        )

    return app


app = create_app()
