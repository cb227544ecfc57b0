/** Canvas grid rendering and pointer interaction for drawing hypotheses. */

import {
  Hypothesis,
  RectShape,
  RevealedCell,
  isLattice,
  normalizeRect,
  rectContains,
} from "./model.js";

export const CELL = 44;
export const PAD = 12;

export interface GridState {
  n: number;
  klass: "tworec" | "lattice";
  revealed: RevealedCell[];
  rects: RectShape[];
  node: [number, number] | null;
  violations: Array<{ x: number; y: number }>;
  ghost: RectShape | null; // rectangle being dragged right now
}

export function cellAt(px: number, py: number, n: number):
    [number, number] | null {
  const x = Math.floor((px - PAD) / CELL);
  const y = Math.floor((py - PAD) / CELL);
  if (x < 0 || y < 0 || x >= n || y >= n) return null;
  return [x, y];
}

export function hypothesisOf(state: GridState): Hypothesis | null {
  if (state.klass === "lattice") {
    return state.node ? { node: state.node } : null;
  }
  return state.rects.length > 0 ? { rects: state.rects } : null;
}

export function render(
  canvas: HTMLCanvasElement, state: GridState,
): void {
  const n = state.n;
  canvas.width = n * CELL + 2 * PAD;
  canvas.height = n * CELL + 2 * PAD;
  const ctx = canvas.getContext("2d")!;
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, canvas.width, canvas.height);

  // revealed cells: green = positive, blue = negative
  for (const z of state.revealed) {
    ctx.fillStyle = z.label ? "#7fce8a" : "#7fa6e8";
    ctx.fillRect(PAD + z.x * CELL, PAD + z.y * CELL, CELL, CELL);
  }
  // violating cells flash red on top
  for (const v of state.violations) {
    ctx.fillStyle = "rgba(220, 60, 60, 0.65)";
    ctx.fillRect(PAD + v.x * CELL, PAD + v.y * CELL, CELL, CELL);
  }

  // grid lines
  ctx.strokeStyle = "#999";
  ctx.lineWidth = 1;
  for (let i = 0; i <= n; i++) {
    ctx.beginPath();
    ctx.moveTo(PAD + i * CELL, PAD);
    ctx.lineTo(PAD + i * CELL, PAD + n * CELL);
    ctx.stroke();
    ctx.beginPath();
    ctx.moveTo(PAD, PAD + i * CELL);
    ctx.lineTo(PAD + n * CELL, PAD + i * CELL);
    ctx.stroke();
  }

  const drawRect = (r: RectShape, color: string, dashed: boolean) => {
    ctx.strokeStyle = color;
    ctx.lineWidth = 3;
    ctx.setLineDash(dashed ? [6, 4] : []);
    ctx.strokeRect(
      PAD + r.x1 * CELL, PAD + r.y1 * CELL,
      (r.x2 - r.x1 + 1) * CELL, (r.y2 - r.y1 + 1) * CELL,
    );
    ctx.setLineDash([]);
  };
  for (const r of state.rects) drawRect(r, "#d2711f", false);
  if (state.ghost) drawRect(state.ghost, "#d2711f", true);

  if (state.klass === "lattice" && state.node) {
    ctx.fillStyle = "#d2711f";
    ctx.beginPath();
    ctx.arc(
      PAD + state.node[0] * CELL + CELL / 2,
      PAD + state.node[1] * CELL + CELL / 2,
      CELL / 4, 0, 2 * Math.PI,
    );
    ctx.fill();
  }
}

/** Overlay a reference hypothesis (e.g. the revealed target) in green. */
export function renderOverlay(
  canvas: HTMLCanvasElement, h: Hypothesis,
): void {
  const ctx = canvas.getContext("2d")!;
  ctx.strokeStyle = "#2d8a3e";
  ctx.lineWidth = 3;
  if (isLattice(h)) {
    ctx.strokeRect(
      PAD + h.node[0] * CELL + 4, PAD + h.node[1] * CELL + 4,
      CELL - 8, CELL - 8,
    );
    return;
  }
  for (const r of h.rects) {
    ctx.setLineDash([3, 3]);
    ctx.strokeRect(
      PAD + r.x1 * CELL, PAD + r.y1 * CELL,
      (r.x2 - r.x1 + 1) * CELL, (r.y2 - r.y1 + 1) * CELL,
    );
    ctx.setLineDash([]);
  }
}

/** Wire click/drag editing onto a canvas; calls onChange after edits. */
export function attachEditing(
  canvas: HTMLCanvasElement,
  state: GridState,
  onChange: () => void,
): void {
  let dragStart: [number, number] | null = null;

  canvas.addEventListener("pointerdown", (ev) => {
    const rect = canvas.getBoundingClientRect();
    const cell = cellAt(ev.clientX - rect.left, ev.clientY - rect.top,
                        state.n);
    if (!cell) return;
    if (state.klass === "lattice") {
      state.node = cell;
      onChange();
      return;
    }
    // click inside an existing rectangle deletes it for redrawing
    const hit = state.rects.findIndex((r) =>
      rectContains(r, cell[0], cell[1]));
    if (hit >= 0) {
      state.rects.splice(hit, 1);
      onChange();
      return;
    }
    dragStart = cell;
    state.ghost = normalizeRect(cell[0], cell[1], cell[0], cell[1], state.n);
    onChange();
  });

  canvas.addEventListener("pointermove", (ev) => {
    if (!dragStart) return;
    const rect = canvas.getBoundingClientRect();
    const cell = cellAt(ev.clientX - rect.left, ev.clientY - rect.top,
                        state.n);
    if (!cell) return;
    state.ghost = normalizeRect(
      dragStart[0], dragStart[1], cell[0], cell[1], state.n);
    onChange();
  });

  canvas.addEventListener("pointerup", () => {
    if (!dragStart || !state.ghost) return;
    if (state.rects.length < 2) state.rects.push(state.ghost);
    dragStart = null;
    state.ghost = null;
    onChange();
  });
}
