import random

import pytest
from fastapi.testclient import TestClient

from vsteach.core import LabeledExample, TieBreakPolicy, choice_set
from vsteach.learner import resolve_tie
from vsteach.lattice import LatticeClass
from vsteach.service import create_app
from vsteach.tworec import Rect, TwoRec, TwoRecClass


@pytest.fixture()
def client(tmp_path):
    return TestClient(create_app(store_dir=str(tmp_path)))


def _drive_sigma_learner(client, session, domain, tie_seed=0, max_steps=60):
    """Scripted noise-free preference-following learner over the API."""
    h = domain.hyp_from_json(session["h0"])
    shown = []
    rng = random.Random(tie_seed)
    trace = []
    while True:
        z = session.get("example")
        if z is None:
            break
        shown.append(LabeledExample((z["x"], z["y"]), bool(z["label"])))
        cands = choice_set(domain, h, shown)
        h = resolve_tie(domain, cands, TieBreakPolicy.seeded(tie_seed), rng)
        trace.append((tuple(shown[-1].location), shown[-1].label, h))
        r = client.post(f"/sessions/{session['id']}/hypothesis",
                        json=domain.hyp_to_json(h))
        assert r.status_code == 200, r.text
        session = r.json()
        if session["verdict"] != "continue" or len(trace) >= max_steps:
            break
    return session, trace


def test_create_teach_session(client):
    r = client.post("/sessions", json={
        "class": "tworec", "mode": "teach", "teacher": "ada-r", "grid": 8,
        "scenario": "H2to1", "seed": 7})
    assert r.status_code == 201
    s = r.json()
    assert s["status"] == "active"
    assert s["h0"] is not None and s["example"] is not None
    assert "target" not in s  # hidden while active


def test_create_session_invalid_config(client):
    assert client.post("/sessions", json={"mode": "bogus"}).status_code == 400
    assert client.post("/sessions", json={
        "mode": "teach", "teacher": "bogus"}).status_code == 400
    assert client.post("/sessions", json={
        "class": "tworec", "mode": "teach", "teacher": "ada-r", "grid": 2,
        "scenario": "H2to1"}).status_code == 400


def test_optimal_teacher_cap(client):
    r = client.post("/sessions", json={
        "class": "tworec", "mode": "teach", "teacher": "optimal", "grid": 8,
        "scenario": "H2to1", "seed": 0})
    assert r.status_code == 400
    r = client.post("/sessions", json={
        "class": "lattice", "mode": "teach", "teacher": "optimal", "grid": 3,
        "scenario": "random", "seed": 2})
    assert r.status_code == 201


def test_unknown_session_404(client):
    assert client.get("/sessions/nope").status_code == 404
    assert client.get("/sessions/nope/trace").status_code == 404
    assert client.post("/sessions/nope/hypothesis",
                       json={"rects": []}).status_code == 404


def test_inconsistent_hypothesis_422_with_cells(client):
    r = client.post("/sessions", json={
        "class": "tworec", "mode": "teach", "teacher": "sc", "grid": 6,
        "scenario": "H1to1", "seed": 1})
    s = r.json()
    z = s["example"]
    if z["label"]:
        # a far-away singleton misses the revealed positive cell
        bad = TwoRec((Rect((z["x"] + 1) % 6, (z["y"] + 1) % 6,
                           (z["x"] + 1) % 6, (z["y"] + 1) % 6),))
    else:
        bad = TwoRec((Rect(0, 0, 5, 5),))  # covers the revealed negative
    dom = TwoRecClass(6)
    r2 = client.post(f"/sessions/{s['id']}/hypothesis",
                     json=dom.hyp_to_json(bad))
    assert r2.status_code == 422
    cells = r2.json()["detail"]["violating_cells"]
    assert {"x": z["x"], "y": z["y"]} in cells


def test_target_revealed_only_after_completion(client):
    r = client.post("/sessions", json={
        "class": "lattice", "mode": "teach", "teacher": "ada-l", "grid": 5,
        "scenario": "random", "seed": 4})
    s = r.json()
    dom = LatticeClass(5)
    final, trace = _drive_sigma_learner(client, s, dom)
    assert final["verdict"] in ("reached", "exhausted")
    assert "target" in final
    view = client.get(f"/sessions/{s['id']}").json()
    assert view["status"] == final["verdict"] \
        if final["verdict"] == "reached" else "exhausted"


def test_scripted_learner_matches_in_process_trace(client):
    # secondary acceptance: HTTP-driven sigma-learner reproduces the
    # in-process simulator example-for-example
    from vsteach.experiments import _derive_seed, sample_scenario
    from vsteach.learner import run_session
    from vsteach.teachers import make_teacher

    dom = TwoRecClass(8)
    for teacher_id in ("ada-r", "sc", "rand"):
        for seed in range(10):
            r = client.post("/sessions", json={
                "class": "tworec", "mode": "teach", "teacher": teacher_id,
                "grid": 8, "scenario": "H2to1", "seed": seed})
            assert r.status_code == 201, r.text
            s = r.json()
            final, api_trace = _drive_sigma_learner(client, s, dom,
                                                    tie_seed=0)
            h0, h_star = sample_scenario("tworec", "H2to1", 8, seed)
            teacher = make_teacher(teacher_id, dom, h0, h_star, seed=seed)
            ref = run_session(dom, teacher, h0, h_star, len(api_trace),
                              tie_break=TieBreakPolicy.seeded(0))
            ref_steps = [(tuple(st.example.location), st.example.label,
                          st.learner_after) for st in ref.steps]
            assert api_trace == ref_steps, (teacher_id, seed)


def test_elicit_session_flow(client):
    r = client.post("/sessions", json={
        "class": "tworec", "mode": "elicit", "grid": 6, "scenario": "H1to1",
        "seed": 9})
    assert r.status_code == 201
    s = r.json()
    assert s["teacher"] is None and len(s["revealed"]) > 0
    dom = TwoRecClass(6)

    def consistent_h(revealed):
        shown = [LabeledExample((z["x"], z["y"]), bool(z["label"]))
                 for z in revealed]
        return next(h for h in dom.all_hypotheses()
                    if all(dom.label(h, tuple(z.location)) == z.label
                           for z in shown))

    r1 = client.post(f"/sessions/{s['id']}/hypothesis",
                     json=dom.hyp_to_json(consistent_h(s["revealed"])))
    assert r1.status_code == 200
    s1 = r1.json()
    assert s1["verdict"] == "continue"
    assert len(s1["revealed"]) > len(s["revealed"])  # configuration updated
    r2 = client.post(f"/sessions/{s['id']}/hypothesis",
                     json=dom.hyp_to_json(consistent_h(s1["revealed"])))
    s2 = r2.json()
    assert s2["verdict"] == "done"
    assert len(s2["hypotheses"]) == 2  # the two-step protocol, exactly
    # session is closed now
    r3 = client.post(f"/sessions/{s['id']}/hypothesis",
                     json=dom.hyp_to_json(consistent_h(s1["revealed"])))
    assert r3.status_code == 409


def test_trace_endpoint(client):
    r = client.post("/sessions", json={
        "class": "lattice", "mode": "teach", "teacher": "rand", "grid": 4,
        "scenario": "random", "seed": 5})
    s = r.json()
    dom = LatticeClass(4)
    final, api_trace = _drive_sigma_learner(client, s, dom)
    tr = client.get(f"/sessions/{s['id']}/trace").json()
    assert len(tr["steps"]) == len(api_trace) \
        or len(tr["steps"]) == len(api_trace) + 1  # exhausted last reveal
    for i, step in enumerate(tr["steps"][:len(api_trace)]):
        assert (step["example"]["x"], step["example"]["y"]) \
            == api_trace[i][0]
        assert step["t"] == i


def test_budget_limits_distinct_cells(client):
    r = client.post("/sessions", json={
        "class": "lattice", "mode": "teach", "teacher": "rand", "grid": 4,
        "scenario": "random", "seed": 6})
    s = r.json()
    dom = LatticeClass(4)
    final, _ = _drive_sigma_learner(client, s, dom, max_steps=100)
    view = client.get(f"/sessions/{s['id']}").json()
    distinct = {(z["x"], z["y"]) for z in view["revealed"]}
    assert len(distinct) <= view["budget"]


def test_store_writes_jsonl(client, tmp_path):
    import json as _json
    import os
    r = client.post("/sessions", json={
        "class": "lattice", "mode": "teach", "teacher": "sc", "grid": 4,
        "scenario": "random", "seed": 1})
    sid = r.json()["id"]
    files = [f for f in os.listdir(tmp_path) if f.startswith(sid)]
    assert files == [f"{sid}.jsonl"]
    with open(tmp_path / files[0]) as fh:
        events = [_json.loads(line) for line in fh]
    assert events[0]["event"] == "created"
    assert any(e["event"] == "reveal" for e in events)
