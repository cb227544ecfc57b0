"""Exact teaching-cost evaluators for tiny instances.

``dstar`` solves the minimax Bellman recursion for the optimal adaptive
teacher, with the worst case taken over every resolution of learner ties.
``nonadaptive_opt`` finds the shortest fixed example sequence whose
worst-case trajectory ends at the target.  Both enumerate the class and are
capped accordingly; they serve as ground truth for the heuristic teachers.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .core import EnumerationCapError
from .learner import INFINITE_COST


def _instance_arrays(domain, h_star):
    """Label columns and example list for the teacher's legal examples."""
    labels = domain.label_matrix()
    if hasattr(domain, "all_teaching_examples"):
        pool = domain.all_teaching_examples()
    else:
        pool = domain.teaching_examples(h_star)
    si = domain.index(h_star)
    examples = []
    cols = []
    for z in pool:
        col = labels[:, domain.cell_index(tuple(z.location))] == z.label
        if not col[si]:
            continue  # inconsistent with the target; the teacher may not show it
        examples.append(z)
        cols.append(col)
    return examples, cols


def _tie_set(key_table: np.ndarray, vs_ids: np.ndarray) -> np.ndarray:
    km = key_table[vs_ids]
    order = np.lexsort((km[:, 2], km[:, 1], km[:, 0]))
    best = km[order[0]]
    return vs_ids[(km == best).all(axis=1)]


def dstar(domain, h0, h_star, cap: int = 15) -> float:
    """Optimal worst-case adaptive teaching cost from h0 to h_star.

    Bellman recursion over states (learner hypothesis, version space),
    minimizing over examples and maximizing over the learner's sigma-tie
    set.  Examples that do not shrink the version space cannot move the
    learner and are skipped, so the recursion depth is bounded by |H|.
    """
    hyps = domain.all_hypotheses()
    if len(hyps) > cap:
        raise EnumerationCapError(
            f"exact evaluation capped at {cap} hypotheses, class has {len(hyps)}")
    examples, cols = _instance_arrays(domain, h_star)
    si = domain.index(h_star)
    key_tables = {i: domain.key_table(domain.hypothesis(i))
                  for i in range(len(hyps))}
    memo: dict = {}

    def rec(hi: int, vs_ids: np.ndarray) -> float:
        if hi == si:
            return 0.0
        key = (hi, vs_ids.tobytes())
        if key in memo:
            return memo[key]
        memo[key] = INFINITE_COST  # cycle guard; shrinkage makes it moot
        best = INFINITE_COST
        for col in cols:
            vs2 = vs_ids[col[vs_ids]]
            if len(vs2) == len(vs_ids):
                continue
            ties = _tie_set(key_tables[hi], vs2)
            worst = 0.0
            for h2 in ties:
                c = rec(int(h2), vs2)
                if c == INFINITE_COST or 1 + c >= best:
                    worst = INFINITE_COST
                    break
                worst = max(worst, 1 + c)
            best = min(best, worst)
        memo[key] = best
        return best

    full = np.arange(len(hyps), dtype=np.int64)
    out = rec(domain.index(h0), full)
    assert out != INFINITE_COST, "target unreachable under consistent teaching"
    return out


def nonadaptive_opt(domain, h0, h_star, cap: int = 12,
                    example_cap: int = 12) -> float:
    """Minimal length of a fixed example sequence whose trajectory reaches
    the target under every resolution of learner ties.

    Breadth-first search over (version space, set of possible learner
    positions); the pair fully determines future behavior, so revisits are
    pruned and the first hit is the optimum.
    """
    hyps = domain.all_hypotheses()
    if len(hyps) > cap:
        raise EnumerationCapError(
            f"non-adaptive search capped at {cap} hypotheses, class has {len(hyps)}")
    examples, cols = _instance_arrays(domain, h_star)
    if len(examples) > example_cap:
        raise EnumerationCapError(
            f"non-adaptive search capped at {example_cap} examples, "
            f"instance has {len(examples)}")
    si = domain.index(h_star)
    key_tables = [domain.key_table(domain.hypothesis(i))
                  for i in range(len(hyps))]
    full = np.arange(len(hyps), dtype=np.int64)
    start = (full.tobytes(), frozenset([domain.index(h0)]))
    if start[1] == frozenset([si]):
        return 0.0
    seen = {start}
    queue = deque([(full, start[1], 0)])
    while queue:
        vs_ids, positions, depth = queue.popleft()
        for col in cols:
            vs2 = vs_ids[col[vs_ids]]
            if len(vs2) == 0:
                continue
            pos2 = frozenset(
                int(h2)
                for hi in positions
                for h2 in _tie_set(key_tables[hi], vs2))
            if pos2 == frozenset([si]):
                return depth + 1
            state = (vs2.tobytes(), pos2)
            if state not in seen:
                seen.add(state)
                queue.append((vs2, pos2, depth + 1))
    return INFINITE_COST


@dataclass
class CostReport:
    """Side-by-side exact and heuristic worst-case costs for one instance."""

    adaptive_opt: float
    nonadaptive_opt: float
    greedy: float
    notes: dict = field(default_factory=dict)

    def to_json(self) -> str:
        def enc(v):
            return "inf" if v == INFINITE_COST else v
        return json.dumps({
            "adaptive_opt": enc(self.adaptive_opt),
            "nonadaptive_opt": enc(self.nonadaptive_opt),
            "greedy": enc(self.greedy),
            "notes": self.notes,
        }, sort_keys=True)


def cost_report(domain, h0, h_star, cap: int = 15, nonadaptive_cap: int = 12,
                example_cap: int = 12, budget: int | None = None) -> CostReport:
    """Exact adaptive/non-adaptive optima plus the rank-greedy teacher's
    worst-case cost on one instance."""
    from .learner import worst_case_cost
    from .teachers import MyopicTeacher

    notes: dict = {}
    adaptive = dstar(domain, h0, h_star, cap=cap)
    try:
        nonadaptive = nonadaptive_opt(domain, h0, h_star, cap=nonadaptive_cap,
                                      example_cap=example_cap)
    except EnumerationCapError as exc:
        nonadaptive = INFINITE_COST
        notes["nonadaptive"] = str(exc)
    if budget is None:
        budget = 4 * len(domain.all_hypotheses())
    greedy = worst_case_cost(domain, MyopicTeacher(domain, h_star), h0,
                             h_star, budget)
    return CostReport(adaptive, nonadaptive, greedy, notes)
