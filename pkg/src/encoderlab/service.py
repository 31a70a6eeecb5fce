"""Session-based HTTP service: catalogs, on-demand analysis, streaming training.

Each training session owns one background thread (single writer) plus an
append-only log of serialized epoch records. Clients steer it through a
strict state machine (created→running, running↔paused, {running,paused}→
stopped, running→finished) and follow it over an SSE stream that replays
the full backlog on connect, then stays live. Illegal control actions
return 409 and never mutate state; pause-on-paused and resume-on-running
are explicit no-ops.

Sessions live in memory. Idle expiry (default 30 minutes) reclaims sessions
in terminal or never-started states only; running and paused sessions are
kept alive indefinitely. An optional snapshot directory makes every run
dump its config and records as JSON when it ends.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from contextlib import asynccontextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from fastapi import Body, FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, StreamingResponse

from . import __version__, analysis, datasets, encoders, training
from .errors import ConfigurationError, ContractError, EncoderLabError, NotFoundError

DEFAULT_PORT = 8642

RUN_STATES = ("created", "running", "paused", "stopped", "finished")
ACTIONS = ("start", "pause", "resume", "stop")

_TRANSITIONS = {
    ("created", "start"): "running",
    ("running", "pause"): "paused",
    ("paused", "resume"): "running",
    ("running", "stop"): "stopped",
    ("paused", "stop"): "stopped",
}
_NO_OPS = {("paused", "pause"), ("running", "resume")}


class IllegalTransition(EncoderLabError):
    def __init__(self, state: str, action: str):
        super().__init__(f"cannot {action} a session in state {state!r}")
        self.state = state
        self.action = action


def transition(state: str, action: str) -> tuple[str, bool]:
    """(next_state, is_no_op) for a legal pair; raises IllegalTransition otherwise."""
    if action not in ACTIONS:
        raise ContractError(f"unknown action {action!r}")
    if (state, action) in _NO_OPS:
        return state, True
    try:
        return _TRANSITIONS[(state, action)], False
    except KeyError:
        raise IllegalTransition(state, action) from None


@dataclass
class Session:
    """One training run: config, control handle, state, and its event log."""

    session_id: str
    config: training.TrainingConfig
    control: training.RunControl = field(default_factory=training.RunControl)
    run_state: str = "created"
    current_epoch: int = 0
    event_log: list[str] = field(default_factory=list)
    cond: threading.Condition = field(default_factory=threading.Condition)
    thread: threading.Thread | None = None
    done: bool = False
    done_payload: str = ""
    touched: float = 0.0

    def summary(self) -> dict:
        with self.cond:
            return {
                "session_id": self.session_id,
                "config": self.config.to_json(),
                "run_state": self.run_state,
                "current_epoch": self.current_epoch,
                "num_events": len(self.event_log),
            }


class SessionRegistry:
    """In-memory session store with lazy idle expiry."""

    def __init__(self, ttl_seconds: float, clock: Callable[[], float], snapshot_dir: str | None):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._ttl = ttl_seconds
        self._clock = clock
        self._snapshot_dir = snapshot_dir

    def create(self, config: training.TrainingConfig) -> Session:
        config.validate()
        encoders.get_encoder(config.encoder_id)  # unknown ids fail here, before a session exists
        datasets.generate(config.dataset_id, config.resolution)
        session = Session(session_id=uuid.uuid4().hex, config=config, touched=self._clock())
        with self._lock:
            self._purge_idle()
            self._sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            self._purge_idle()
            session = self._sessions.get(session_id)
            if session is None:
                raise NotFoundError(f"unknown session {session_id!r}")
            session.touched = self._clock()
            return session

    def _purge_idle(self) -> None:
        if self._ttl <= 0:
            return
        cutoff = self._clock() - self._ttl
        for sid in [
            sid
            for sid, s in self._sessions.items()
            if s.touched < cutoff and s.run_state in ("created", "stopped", "finished")
        ]:
            del self._sessions[sid]

    def start(self, session: Session) -> None:
        session.thread = threading.Thread(target=self._run, args=(session,), daemon=True)
        session.thread.start()

    def _run(self, session: Session) -> None:
        def emit(record: training.EpochRecord) -> None:
            payload = json.dumps(record.to_json())
            with session.cond:
                session.event_log.append(payload)
                session.current_epoch = record.epoch
                session.cond.notify_all()

        error: str | None = None
        final: training.EpochRecord | None = None
        try:
            final = training.train(session.config, control=session.control, emit=emit)
        except Exception as exc:  # defensive: a crashed run must still terminate the stream
            error = str(exc)
        with session.cond:
            if session.run_state == "running":
                session.run_state = "stopped" if error else "finished"
            summary = {
                "run_state": session.run_state,
                "epochs_run": session.current_epoch,
                "final_loss": None if final is None else final.loss,
                "final_accuracy": None if final is None else final.accuracy,
            }
            if error:
                summary["error"] = error
            session.done_payload = json.dumps(summary)
            session.done = True
            session.cond.notify_all()
        if self._snapshot_dir:
            self._dump_snapshot(session)

    def _dump_snapshot(self, session: Session) -> None:
        try:
            path = Path(self._snapshot_dir)
            path.mkdir(parents=True, exist_ok=True)
            with session.cond:
                doc = {
                    "session_id": session.session_id,
                    "config": session.config.to_json(),
                    "run_state": session.run_state,
                    "records": [json.loads(line) for line in session.event_log],
                }
            (path / f"{session.session_id}.json").write_text(json.dumps(doc))
        except OSError:  # snapshots are best-effort; never kill the runner
            pass

    def shutdown_all(self) -> None:
        with self._lock:
            sessions = list(self._sessions.values())
        for session in sessions:
            with session.cond:
                if session.run_state in ("running", "paused"):
                    session.run_state = "stopped"
                    session.control.request_stop()
        for session in sessions:
            if session.thread is not None:
                session.thread.join(timeout=5.0)


def _error_body(code: str, message: str, **extra) -> dict:
    err = {"code": code, "message": message}
    err.update(extra)
    return {"error": err}


def _parse_config(payload: dict) -> training.TrainingConfig:
    if not isinstance(payload, dict):
        raise ContractError("request body must be a JSON object")
    missing = [k for k in ("dataset_id", "encoder_id") if k not in payload]
    if missing:
        raise ContractError(f"missing required fields: {', '.join(missing)}")
    try:
        return training.TrainingConfig(
            dataset_id=str(payload["dataset_id"]),
            encoder_id=str(payload["encoder_id"]),
            epochs=int(payload.get("epochs", 100)),
            learning_rate=float(payload.get("learning_rate", 0.5)),
            seed=int(payload.get("seed", 7)),
            resolution=int(payload.get("resolution", datasets.DEFAULT_RESOLUTION)),
        )
    except (TypeError, ValueError) as exc:
        raise ContractError(f"malformed training config: {exc}") from exc


def create_app(
    heartbeat_seconds: float = 15.0,
    session_ttl_seconds: float = 1800.0,
    snapshot_dir: str | None = None,
    ui_dir: str | None = None,
    clock: Callable[[], float] = time.monotonic,
) -> FastAPI:
    """Build the service app; every knob is injectable for tests."""
    registry = SessionRegistry(session_ttl_seconds, clock, snapshot_dir)

    @asynccontextmanager
    async def lifespan(_: FastAPI):
        yield
        registry.shutdown_all()  # stop active runs so streams end with a done event

    app = FastAPI(title="encoderlab", version=__version__, lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.registry = registry
    app.state.heartbeat_seconds = heartbeat_seconds

    # static catalogs, computed once so responses are byte-identical
    dataset_catalog = []
    for entry in datasets.list_datasets():
        grid = datasets.generate(entry["id"])
        dataset_catalog.append({**entry, **grid.to_json()})
    encoder_catalog = encoders.list_encoders()

    @app.exception_handler(NotFoundError)
    def _not_found(request: Request, exc: NotFoundError):
        return JSONResponse(_error_body("not-found", str(exc)), status_code=404)

    @app.exception_handler(ConfigurationError)
    def _bad_config(request: Request, exc: ConfigurationError):
        return JSONResponse(_error_body("configuration", str(exc)), status_code=400)

    @app.exception_handler(ContractError)
    def _bad_request(request: Request, exc: ContractError):
        return JSONResponse(_error_body("bad-request", str(exc)), status_code=400)

    @app.exception_handler(IllegalTransition)
    def _conflict(request: Request, exc: IllegalTransition):
        return JSONResponse(
            _error_body("illegal-transition", str(exc), run_state=exc.state, action=exc.action),
            status_code=409,
        )

    @app.exception_handler(RequestValidationError)
    def _validation(request: Request, exc: RequestValidationError):
        return JSONResponse(_error_body("bad-request", str(exc)), status_code=400)

    @app.get("/api/datasets")
    def get_datasets():
        return dataset_catalog

    @app.get("/api/encoders")
    def get_encoders():
        return encoder_catalog

    def _resolution(value: int) -> int:
        if not datasets.MIN_RESOLUTION <= value <= datasets.MAX_RESOLUTION:
            raise ContractError(
                f"resolution must be in [{datasets.MIN_RESOLUTION}, {datasets.MAX_RESOLUTION}]"
            )
        return value

    @app.get("/api/encoder-map")
    def get_encoder_map(
        encoder: str = Query(...),
        dataset: str | None = Query(None),
        resolution: int = Query(datasets.DEFAULT_RESOLUTION),
    ):
        template = encoders.get_encoder(encoder)
        if dataset is not None:
            datasets.generate(dataset, _resolution(resolution))
        grid_doc = encoders.encoder_map(template, _resolution(resolution)).to_json()
        return {"encoder_id": encoder, "dataset_id": dataset, **grid_doc}

    @app.get("/api/evolution")
    def get_evolution(
        encoder: str = Query(...),
        dataset: str | None = Query(None),
        resolution: int = Query(datasets.DEFAULT_RESOLUTION),
    ):
        template = encoders.get_encoder(encoder)
        if dataset is not None:
            datasets.generate(dataset, _resolution(resolution))
        frames = encoders.evolution(template, _resolution(resolution))
        return {
            "encoder_id": encoder,
            "resolution": resolution,
            "frames": [f.to_json() for f in frames],
        }

    @app.get("/api/comparison-map")
    def get_comparison_map(
        encoder: str = Query(...),
        dataset: str = Query(...),
        resolution: int = Query(datasets.DEFAULT_RESOLUTION),
    ):
        template = encoders.get_encoder(encoder)
        grid = datasets.generate(dataset, _resolution(resolution))
        model, points = analysis.comparison_map(template, grid)
        return {
            "encoder_id": encoder,
            "dataset_id": dataset,
            "resolution": resolution,
            **analysis.comparison_to_json(model, points),
        }

    @app.post("/api/sessions", status_code=201)
    def create_session(payload: dict = Body(...)):
        session = registry.create(_parse_config(payload))
        return {
            "session_id": session.session_id,
            "run_state": session.run_state,
            "current_epoch": session.current_epoch,
        }

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        return registry.get(session_id).summary()

    @app.post("/api/sessions/{session_id}/control")
    def control_session(session_id: str, payload: dict = Body(...)):
        session = registry.get(session_id)
        action = payload.get("action") if isinstance(payload, dict) else None
        if action not in ACTIONS:
            raise ContractError(f"action must be one of {', '.join(ACTIONS)}")
        with session.cond:
            new_state, no_op = transition(session.run_state, action)
            if not no_op:
                if action == "start":
                    session.run_state = new_state
                    registry.start(session)
                elif action == "pause":
                    session.control.request_pause()
                    session.run_state = new_state
                elif action == "resume":
                    session.control.request_resume()
                    session.run_state = new_state
                elif action == "stop":
                    session.control.request_stop()
                    session.run_state = new_state
            return {
                "session_id": session.session_id,
                "run_state": session.run_state,
                "current_epoch": session.current_epoch,
                "no_op": no_op,
            }

    @app.get("/api/sessions/{session_id}/events")
    def session_events(session_id: str):
        session = registry.get(session_id)
        heartbeat = app.state.heartbeat_seconds

        def stream():
            cursor = 0
            while True:
                chunk: str | None = None
                done_payload: str | None = None
                timed_out = False
                with session.cond:
                    if cursor < len(session.event_log):
                        chunk = session.event_log[cursor]
                        cursor += 1
                    elif session.done:
                        done_payload = session.done_payload
                    else:
                        timed_out = not session.cond.wait(timeout=heartbeat)
                if chunk is not None:
                    yield f"event: epoch\ndata: {chunk}\n\n"
                elif done_payload is not None:
                    yield f"event: done\ndata: {done_payload}\n\n"
                    return
                elif timed_out:
                    yield ": heartbeat\n\n"

        return StreamingResponse(stream(), media_type="text/event-stream")

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
