"""HTTP JSON API for interactive teaching sessions.

A human (or scripted client) plays the learner: the server holds the hidden
target, reveals one labeled cell per round, and validates each declared
hypothesis against everything revealed so far.  Elicitation sessions skip
the teacher and instead collect two consistent hypotheses over an evolving
cell configuration.

Sessions are kept in memory, serialized per session id, and mirrored to an
append-only JSONL file per session when a store directory is configured
(``VSTEACH_STORE`` or the ``serve --store`` flag).
"""

from __future__ import annotations

import json
import math
import os
import random
import threading
import uuid

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from .core import LabeledExample
from .experiments import sample_scenario
from .lattice import LatticeClass
from .learner import INFINITE_COST
from .teachers import make_teacher
from .tworec import TwoRecClass

_TEACHERS = ("sc", "rand", "myopic", "ada-r", "non-r", "ada-l", "non-l",
             "optimal")
_OPTIMAL_CAP = 15


class _DStarTeacher:
    """Plays the exact minimax policy; only viable on tiny classes."""

    def __init__(self, domain, h_star):
        from .optimal import _instance_arrays, _tie_set, dstar
        import numpy as np
        self.domain = domain
        self.h_star = h_star
        self._np = np
        self._tie_set = _tie_set
        self._examples, self._cols = _instance_arrays(domain, h_star)
        self._keys = {i: domain.key_table(domain.hypothesis(i))
                      for i in range(len(domain.all_hypotheses()))}
        dstar(domain, h_star, h_star)  # cap check via a trivial call
        self._memo: dict = {}

    def _value(self, hi, vs_ids):
        if hi == self.domain.index(self.h_star):
            return 0.0
        mk = (hi, vs_ids.tobytes())
        if mk in self._memo:
            return self._memo[mk]
        self._memo[mk] = INFINITE_COST
        best = INFINITE_COST
        for col in self._cols:
            vs2 = vs_ids[col[vs_ids]]
            if len(vs2) == len(vs_ids):
                continue
            ties = self._tie_set(self._keys[hi], vs2)
            worst = max((1 + self._value(int(h2), vs2) for h2 in ties),
                        default=INFINITE_COST)
            best = min(best, worst)
        self._memo[mk] = best
        return best

    def next_example(self, h_t, shown):
        np = self._np
        vs_ids = np.arange(len(self.domain.all_hypotheses()), dtype=np.int64)
        for z in shown:
            for cand, col in zip(self._examples, self._cols):
                if tuple(cand.location) == tuple(z.location):
                    vs_ids = vs_ids[col[vs_ids]]
                    break
        hi = self.domain.index(h_t)
        best, best_z = INFINITE_COST, None
        for z, col in zip(self._examples, self._cols):
            vs2 = vs_ids[col[vs_ids]]
            if len(vs2) in (0, len(vs_ids)):
                continue
            ties = self._tie_set(self._keys[hi], vs2)
            worst = max((1 + self._value(int(h2), vs2) for h2 in ties),
                        default=INFINITE_COST)
            if worst < best:
                best, best_z = worst, z
        return best_z


class _SessionState:
    def __init__(self, sid, mode, klass, grid, teacher_id, domain, h0,
                 h_star, teacher, budget, elicit_reveals=None):
        self.id = sid
        self.mode = mode
        self.klass = klass
        self.grid = grid
        self.teacher_id = teacher_id
        self.domain = domain
        self.h0 = h0
        self.h_star = h_star
        self.teacher = teacher
        self.budget = budget                # max distinct revealed cells
        self.revealed: list[LabeledExample] = []
        self.hypotheses: list = []          # declared by the client, in order
        self.status = "active"
        self.lock = threading.Lock()
        self.elicit_reveals = elicit_reveals or []  # [(phase examples)]
        self.elicit_phase = 0

    def revealed_cells(self):
        return {tuple(z.location) for z in self.revealed}

    def reveal(self, z: LabeledExample) -> bool:
        """Add an example; False when the distinct-cell budget is spent."""
        if tuple(z.location) not in self.revealed_cells() \
                and len(self.revealed_cells()) >= self.budget:
            return False
        self.revealed.append(z)
        return True

    def view(self) -> dict:
        out = {
            "id": self.id,
            "mode": self.mode,
            "class": self.klass,
            "grid": self.grid,
            "teacher": self.teacher_id,
            "status": self.status,
            "budget": self.budget,
            "revealed": [z.to_json() for z in self.revealed],
            "hypotheses": [self.domain.hyp_to_json(h)
                           for h in self.hypotheses],
            "h0": self.domain.hyp_to_json(self.h0)
            if self.mode == "teach" else None,
        }
        if self.status != "active":
            # the target stays hidden while the session can still be played
            out["target"] = self.domain.hyp_to_json(self.h_star)
        return out


class SessionStore:
    """In-memory session registry with optional JSONL mirroring."""

    def __init__(self, store_dir=None):
        self.sessions: dict[str, _SessionState] = {}
        self.store_dir = store_dir
        self._registry_lock = threading.Lock()
        if store_dir:
            os.makedirs(store_dir, exist_ok=True)

    def add(self, state: _SessionState) -> None:
        with self._registry_lock:
            self.sessions[state.id] = state

    def get(self, sid: str) -> _SessionState:
        state = self.sessions.get(sid)
        if state is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return state

    def log(self, state: _SessionState, record: dict) -> None:
        if not self.store_dir:
            return
        path = os.path.join(self.store_dir, f"{state.id}.jsonl")
        with open(path, "a") as fh:
            fh.write(json.dumps(record, sort_keys=True,
                                separators=(",", ":")) + "\n")


_domain_cache: dict = {}


def _build_domain(klass: str, grid: int):
    # domains are immutable; share one instance (and its lazily built
    # enumeration tables) across sessions
    key = (klass, grid)
    if key in _domain_cache:
        return _domain_cache[key]
    if klass == "lattice":
        dom = LatticeClass(grid)
    elif klass == "tworec":
        dom = TwoRecClass(grid)
    else:
        raise HTTPException(status_code=400, detail=f"unknown class {klass!r}")
    _domain_cache[key] = dom
    return dom


def _violating_cells(domain, h, revealed) -> list[dict]:
    out = []
    for z in revealed:
        if domain.label(h, tuple(z.location)) != z.label:
            out.append({"x": int(z.location[0]), "y": int(z.location[1])})
    return out


def _elicit_phases(domain, h_star, grid, seed):
    """Two cell configurations labeled by the target: an initial reveal and
    an updated one (cells added), per the two-step elicitation protocol."""
    rng = random.Random(seed)
    cells = list(domain.example_locations())
    rng.shuffle(cells)
    k1 = max(3, (grid * grid) // 8)
    k2 = max(2, (grid * grid) // 10)
    first = [LabeledExample(c, domain.label(h_star, c)) for c in cells[:k1]]
    second = [LabeledExample(c, domain.label(h_star, c))
              for c in cells[k1:k1 + k2]]
    return [first, second]


def create_app(store_dir=None) -> FastAPI:
    app = FastAPI(title="vsteach session service")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    store = SessionStore(store_dir or os.environ.get("VSTEACH_STORE"))
    app.state.store = store

    @app.post("/sessions", status_code=201)
    def create_session(body: dict):
        mode = body.get("mode", "teach")
        klass = body.get("class", "tworec")
        grid = int(body.get("grid", 8))
        scenario = body.get("scenario", "H2to1" if klass == "tworec"
                            else "random")
        seed = int(body.get("seed", 0))
        teacher_id = body.get("teacher", "ada-r")
        if mode not in ("teach", "elicit"):
            raise HTTPException(status_code=400, detail="mode must be "
                                "'teach' or 'elicit'")
        if mode == "teach" and teacher_id not in _TEACHERS:
            raise HTTPException(status_code=400,
                                detail=f"unknown teacher {teacher_id!r}")
        domain = _build_domain(klass, grid)
        try:
            h0, h_star = sample_scenario(klass, scenario, grid, seed)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        budget = math.ceil(0.6 * grid * grid)
        sid = uuid.uuid4().hex

        if mode == "elicit":
            phases = _elicit_phases(domain, h_star, grid, seed)
            state = _SessionState(sid, mode, klass, grid, None, domain, h0,
                                  h_star, None, budget,
                                  elicit_reveals=phases)
            for z in phases[0]:
                state.reveal(z)
            state.elicit_phase = 1
            store.add(state)
            store.log(state, {"event": "created", "mode": mode,
                              "class": klass, "grid": grid, "seed": seed})
            return state.view()

        if teacher_id == "optimal":
            if len_cap_exceeded(domain):
                raise HTTPException(
                    status_code=400,
                    detail=f"optimal teacher is capped at {_OPTIMAL_CAP} "
                    "hypotheses; choose a smaller grid")
            teacher = _DStarTeacher(domain, h_star)
        else:
            teacher = make_teacher(teacher_id, domain, h0, h_star, seed=seed)
        state = _SessionState(sid, mode, klass, grid, teacher_id, domain,
                              h0, h_star, teacher, budget)
        z = teacher.next_example(h0, ())
        if z is None or not state.reveal(z):
            raise HTTPException(status_code=400,
                                detail="teacher produced no first example")
        store.add(state)
        store.log(state, {"event": "created", "mode": mode, "class": klass,
                          "grid": grid, "teacher": teacher_id, "seed": seed})
        store.log(state, {"event": "reveal", "example": z.to_json()})
        out = state.view()
        out["example"] = z.to_json()
        return out

    def len_cap_exceeded(domain) -> bool:
        try:
            return len(domain.all_hypotheses()) > _OPTIMAL_CAP
        except Exception:
            return True

    @app.get("/sessions/{sid}")
    def get_session(sid: str):
        return store.get(sid).view()

    @app.post("/sessions/{sid}/hypothesis")
    def submit_hypothesis(sid: str, body: dict):
        state = store.get(sid)
        with state.lock:
            if state.status != "active":
                raise HTTPException(status_code=409,
                                    detail=f"session is {state.status}")
            try:
                h = state.domain.hyp_from_json(body)
            except Exception as exc:
                raise HTTPException(status_code=422,
                                    detail={"error": f"malformed: {exc}"})
            bad = _violating_cells(state.domain, h, state.revealed)
            if bad:
                raise HTTPException(
                    status_code=422,
                    detail={"error": "hypothesis conflicts with revealed "
                            "cells", "violating_cells": bad})
            state.hypotheses.append(h)
            store.log(state, {"event": "hypothesis",
                              "hypothesis": state.domain.hyp_to_json(h)})
            if state.mode == "elicit":
                if state.elicit_phase < len(state.elicit_reveals):
                    for z in state.elicit_reveals[state.elicit_phase]:
                        state.reveal(z)
                        store.log(state, {"event": "reveal",
                                          "example": z.to_json()})
                    state.elicit_phase += 1
                    out = state.view()
                    out["verdict"] = "continue"
                    return out
                state.status = "reached"
                store.log(state, {"event": "done", "status": state.status})
                out = state.view()
                out["verdict"] = "done"
                return out
            if h == state.h_star:
                state.status = "reached"
                store.log(state, {"event": "done", "status": state.status})
                out = state.view()
                out["verdict"] = "reached"
                return out
            z = state.teacher.next_example(h, tuple(state.revealed))
            if z is None or not state.reveal(z):
                state.status = "exhausted"
                store.log(state, {"event": "done", "status": state.status})
                out = state.view()
                out["verdict"] = "exhausted"
                return out
            store.log(state, {"event": "reveal", "example": z.to_json()})
            out = state.view()
            out["verdict"] = "continue"
            out["example"] = z.to_json()
            return out

    @app.get("/sessions/{sid}/trace")
    def get_trace(sid: str):
        state = store.get(sid)
        with state.lock:
            steps = []
            for i, z in enumerate(state.revealed):
                after = (state.domain.hyp_to_json(state.hypotheses[i])
                         if i < len(state.hypotheses) else None)
                steps.append({"t": i, "example": z.to_json(),
                              "learner": after, "vs_size": None})
            return {"id": state.id, "status": state.status, "steps": steps}

    return app
