/**
 * Pure domain logic shared by the UI and tests: hypothesis shapes,
 * labeling, advisory consistency checks, and trace-schema validation.
 * The server remains the source of truth; everything here is a preview.
 */

export interface RectShape {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface TwoRecHyp {
  rects: RectShape[];
}

export interface LatticeHyp {
  node: [number, number];
}

export type Hypothesis = TwoRecHyp | LatticeHyp;

export interface RevealedCell {
  x: number;
  y: number;
  label: number; // 1 = positive (green), 0 = negative (blue)
}

export interface SessionView {
  id: string;
  mode: "teach" | "elicit";
  class: "tworec" | "lattice";
  grid: number;
  teacher: string | null;
  status: "active" | "reached" | "exhausted" | "done";
  budget: number;
  revealed: RevealedCell[];
  hypotheses: Hypothesis[];
  h0: Hypothesis | null;
  target?: Hypothesis;
  example?: RevealedCell;
  verdict?: string;
}

export interface TraceStep {
  t: number;
  example: RevealedCell;
  learner: Hypothesis | null;
  vs_size: number | null;
}

export interface Trace {
  id: string;
  status: string;
  steps: TraceStep[];
}

export function isLattice(h: Hypothesis): h is LatticeHyp {
  return (h as LatticeHyp).node !== undefined;
}

/** Put drag endpoints into x1<=x2, y1<=y2 order, clamped to the grid. */
export function normalizeRect(
  ax: number, ay: number, bx: number, by: number, n: number,
): RectShape {
  const clamp = (v: number) => Math.max(0, Math.min(n - 1, Math.round(v)));
  return {
    x1: clamp(Math.min(ax, bx)),
    y1: clamp(Math.min(ay, by)),
    x2: clamp(Math.max(ax, bx)),
    y2: clamp(Math.max(ay, by)),
  };
}

export function rectContains(r: RectShape, x: number, y: number): boolean {
  return r.x1 <= x && x <= r.x2 && r.y1 <= y && y <= r.y2;
}

/** Two rectangles must keep a one-cell gap on some axis. */
export function gapDisjoint(a: RectShape, b: RectShape): boolean {
  const gapX = Math.max(a.x1, b.x1) - Math.min(a.x2, b.x2);
  const gapY = Math.max(a.y1, b.y1) - Math.min(a.y2, b.y2);
  return gapX >= 2 || gapY >= 2;
}

/** The label the drawn hypothesis assigns to a cell. */
export function labelOf(h: Hypothesis, x: number, y: number): boolean {
  if (isLattice(h)) {
    // a positive example flags a node as "not the target", so the
    // hypothesis node itself would label its own cell negative
    return !(h.node[0] === x && h.node[1] === y);
  }
  return h.rects.some((r) => rectContains(r, x, y));
}

/** Advisory preview of the server's consistency rule. */
export function violatingCells(
  h: Hypothesis, revealed: RevealedCell[],
): RevealedCell[] {
  return revealed.filter((z) => labelOf(h, z.x, z.y) !== Boolean(z.label));
}

/** Shape check for a drawn two-rectangle hypothesis before submission. */
export function drawingProblems(rects: RectShape[]): string[] {
  const problems: string[] = [];
  if (rects.length === 0) problems.push("draw at least one rectangle");
  if (rects.length > 2) problems.push("at most two rectangles");
  if (rects.length === 2 && !gapDisjoint(rects[0], rects[1])) {
    problems.push("rectangles must be separated by at least one empty cell");
  }
  return problems;
}

/** Extract highlighted cells from a server 422 response body. */
export function cellsFrom422(body: unknown): Array<{ x: number; y: number }> {
  const detail = (body as { detail?: { violating_cells?: unknown } })?.detail;
  const cells = detail?.violating_cells;
  if (!Array.isArray(cells)) return [];
  return cells.filter(
    (c): c is { x: number; y: number } =>
      typeof c === "object" && c !== null &&
      typeof (c as { x: unknown }).x === "number" &&
      typeof (c as { y: unknown }).y === "number",
  );
}

/** Validate a replayed trace against the core trace schema. */
export function validateTrace(obj: unknown): obj is Trace {
  const t = obj as Trace;
  if (typeof t !== "object" || t === null) return false;
  if (typeof t.id !== "string" || typeof t.status !== "string") return false;
  if (!Array.isArray(t.steps)) return false;
  return t.steps.every((s, i) => {
    if (s.t !== i) return false;
    const z = s.example;
    if (typeof z?.x !== "number" || typeof z?.y !== "number") return false;
    if (z.label !== 0 && z.label !== 1) return false;
    if (s.learner !== null && typeof s.learner !== "object") return false;
    return true;
  });
}
