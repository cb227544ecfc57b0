/** Stepper over a finished session's trace for the replay animation. */

import type { Hypothesis, RevealedCell, Trace } from "./model.js";

export interface ReplayFrame {
  index: number; // -1 = before the first example
  revealed: RevealedCell[];
  learner: Hypothesis | null;
  done: boolean;
}

export class Replay {
  private index = -1;

  constructor(
    private trace: Trace,
    private h0: Hypothesis | null,
  ) {}

  get length(): number {
    return this.trace.steps.length;
  }

  frame(): ReplayFrame {
    const upto = this.trace.steps.slice(0, this.index + 1);
    const last = upto[upto.length - 1];
    return {
      index: this.index,
      revealed: upto.map((s) => s.example),
      learner: last ? last.learner : this.h0,
      done: this.index >= this.length - 1,
    };
  }

  next(): ReplayFrame {
    this.index = Math.min(this.index + 1, this.length - 1);
    return this.frame();
  }

  prev(): ReplayFrame {
    this.index = Math.max(this.index - 1, -1);
    return this.frame();
  }

  seek(i: number): ReplayFrame {
    this.index = Math.max(-1, Math.min(i, this.length - 1));
    return this.frame();
  }
}
