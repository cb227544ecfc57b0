/** Application wiring: session flow, submission, feedback, replay. */

import { ApiError, Client } from "./api.js";
import {
  GridState,
  attachEditing,
  hypothesisOf,
  render,
  renderOverlay,
} from "./grid.js";
import {
  SessionView,
  cellsFrom422,
  drawingProblems,
  isLattice,
  validateTrace,
  violatingCells,
} from "./model.js";
import { Replay } from "./replay.js";

const $ = (id: string) => document.getElementById(id)!;

const client = new Client(
  (window as unknown as { VSTEACH_API?: string }).VSTEACH_API
  ?? "http://localhost:8000",
);

let session: SessionView | null = null;
let state: GridState | null = null;
let replay: Replay | null = null;

function setStatus(text: string, tone: "info" | "warn" | "ok" = "info") {
  const el = $("status");
  el.textContent = text;
  el.className = tone;
}

function redraw() {
  if (!state) return;
  const canvas = $("grid") as HTMLCanvasElement;
  render(canvas, state);
  if (session?.target) renderOverlay(canvas, session.target);
  // advisory preview: warn before submitting an inconsistent hypothesis
  const h = hypothesisOf(state);
  if (h && session?.status === "active") {
    const bad = violatingCells(h, state.revealed);
    const shape = isLattice(h) ? [] : drawingProblems(h.rects);
    if (bad.length > 0) {
      setStatus(`warning: your drawing disagrees with ${bad.length} revealed`
        + " cell(s)", "warn");
    } else if (shape.length > 0) {
      setStatus(`warning: ${shape.join("; ")}`, "warn");
    } else {
      setStatus("looks consistent - submit when ready", "info");
    }
  }
}

function syncFromSession(view: SessionView) {
  session = view;
  if (!state || state.n !== view.grid) {
    state = {
      n: view.grid,
      klass: view.class,
      revealed: [],
      rects: [],
      node: null,
      violations: [],
      ghost: null,
    };
    attachEditing($("grid") as HTMLCanvasElement, state, redraw);
  }
  state.revealed = view.revealed;
  state.violations = [];
  redraw();
}

async function startSession() {
  const klass = ($("class") as HTMLSelectElement).value as
    "tworec" | "lattice";
  const mode = ($("mode") as HTMLSelectElement).value as "teach" | "elicit";
  const req = {
    class: klass,
    mode,
    teacher: ($("teacher") as HTMLSelectElement).value,
    grid: parseInt(($("gridsize") as HTMLInputElement).value, 10),
    scenario: ($("scenario") as HTMLInputElement).value,
    seed: parseInt(($("seed") as HTMLInputElement).value, 10),
  };
  try {
    const view = await client.createSession(req);
    syncFromSession(view);
    setStatus(mode === "teach"
      ? "session started - move your hypothesis to match the revealed cells"
      : "session started - draw a hypothesis consistent with every cell");
    ($("replay-panel")).hidden = true;
  } catch (err) {
    if (err instanceof ApiError) {
      setStatus(`could not start session: ${JSON.stringify(err.body)}`,
                "warn");
    } else {
      setStatus(`network error: ${err}`, "warn");
    }
  }
}

async function submit() {
  if (!session || !state) return;
  const h = hypothesisOf(state);
  if (!h) {
    setStatus("draw a hypothesis first", "warn");
    return;
  }
  try {
    const view = await client.submitHypothesis(session.id, h);
    syncFromSession(view);
    if (view.verdict === "reached") {
      setStatus("you reached the target!", "ok");
      await showReplay();
    } else if (view.verdict === "exhausted" || view.verdict === "done") {
      setStatus(`session over (${view.verdict})`, "ok");
      await showReplay();
    } else {
      setStatus("accepted - a new cell was revealed");
    }
  } catch (err) {
    if (err instanceof ApiError && err.status === 422) {
      state.violations = cellsFrom422(err.body);
      redraw();
      setStatus(`inconsistent with ${state.violations.length} revealed`
        + " cell(s) - highlighted in red", "warn");
    } else if (err instanceof ApiError) {
      setStatus(`rejected (${err.status}): ${JSON.stringify(err.body)}`,
                "warn");
    } else {
      setStatus(`network error: ${err}`, "warn");
    }
  }
}

async function showReplay() {
  if (!session || !state) return;
  const trace = await client.getTrace(session.id);
  if (!validateTrace(trace)) {
    setStatus("trace failed schema validation", "warn");
    return;
  }
  replay = new Replay(trace, session.h0);
  const panel = $("replay-panel");
  panel.hidden = false;
  const slider = $("replay-slider") as HTMLInputElement;
  slider.max = String(trace.steps.length - 1);
  slider.value = "-1";
  renderReplayFrame();
}

function renderReplayFrame() {
  if (!replay || !state || !session) return;
  const frame = replay.frame();
  const canvas = $("replay") as HTMLCanvasElement;
  render(canvas, {
    ...state,
    revealed: frame.revealed,
    rects: frame.learner && !isLattice(frame.learner)
      ? frame.learner.rects : [],
    node: frame.learner && isLattice(frame.learner)
      ? frame.learner.node : null,
    violations: [],
    ghost: null,
  });
  if (session.target) renderOverlay(canvas, session.target);
  $("replay-step").textContent =
    `step ${frame.index + 1} / ${replay.length}`;
}

function wire() {
  $("start").addEventListener("click", () => void startSession());
  $("submit").addEventListener("click", () => void submit());
  $("replay-next").addEventListener("click", () => {
    replay?.next();
    renderReplayFrame();
  });
  $("replay-prev").addEventListener("click", () => {
    replay?.prev();
    renderReplayFrame();
  });
  ($("replay-slider") as HTMLInputElement).addEventListener("input", (ev) => {
    replay?.seek(parseInt((ev.target as HTMLInputElement).value, 10));
    renderReplayFrame();
  });
}

wire();
