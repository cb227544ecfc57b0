"""Learner dynamics: preference-minimizing steps, tie-breaking, jump noise,
full teaching sessions and worst-case (adversarial-tie) evaluation.

On each example the learner moves to a preference-minimal hypothesis of the
updated version space, relative to its current hypothesis.  Genuine key ties
are resolved by a TieBreakPolicy; with jump probability epsilon the learner
instead re-draws uniformly from the updated version space.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .core import (
    EnumerationCapError,
    InconsistentTeachingError,
    LabeledExample,
    TeachingTrace,
    Terminal,
    TieBreakMode,
    TieBreakPolicy,
    UnsupportedConfigurationError,
    choice_set,
)

INFINITE_COST = float("inf")


@dataclass(frozen=True)
class NoiseModel:
    """Uniform version-space jumps with probability epsilon per step."""

    epsilon: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError("epsilon must lie in [0, 1]")


def choice_set_bruteforce(domain, h_cur, examples) -> list:
    """Explicit-scan reference for the learner's candidate set.

    Scans the full enumeration through the class's vectorized label and key
    tables; used to validate the structured updates.
    """
    labels = domain.label_matrix()
    mask = np.ones(labels.shape[0], dtype=bool)
    for z in examples:
        col = labels[:, domain.cell_index(tuple(z.location))] \
            if hasattr(domain, "cell_index") else \
            np.array([domain.label(h, z.location) for h in domain.all_hypotheses()])
        mask &= (col == z.label)
    if not mask.any():
        raise InconsistentTeachingError("no consistent hypothesis survives")
    keys = domain.key_table(h_cur)
    idx = np.nonzero(mask)[0]
    km = keys[idx]
    order = np.lexsort((km[:, 2], km[:, 1], km[:, 0]))
    best = km[order[0]]
    sel = idx[(km == best).all(axis=1)]
    return [domain.hypothesis(int(i)) for i in sel]


def resolve_tie(domain, candidates: list, policy: TieBreakPolicy, rng) -> object:
    """Pick one hypothesis from a key-tie set.

    Seeded-random draws from ``rng``; adversarial stepping is deterministic
    here (largest canonical key) -- true worst cases are evaluated by
    :func:`worst_case_cost`, which branches over the whole set.
    """
    if len(candidates) == 1:
        return candidates[0]
    ordered = sorted(candidates, key=domain.canonical_key)
    if policy.mode is TieBreakMode.ADVERSARIAL:
        return ordered[-1]
    return ordered[rng.randrange(len(ordered))]


class Session:
    """Mutable single-learner teaching session.

    The vectorized backend keeps a boolean version-space mask over the full
    enumeration, which makes jump noise and version-space sizes cheap; the
    structured backend never enumerates and scales to large grids.
    """

    def __init__(self, domain, h0, tie_break: TieBreakPolicy | None = None,
                 noise: NoiseModel | None = None, vectorized: bool = False):
        self.domain = domain
        self.h = h0
        self.examples: list[LabeledExample] = []
        self.tie_break = tie_break or TieBreakPolicy.seeded(0)
        self.noise = noise or NoiseModel()
        self._tie_rng = random.Random(self.tie_break.seed)
        self._noise_rng = None
        if self.noise.epsilon > 0.0:
            # only instantiated when noise can fire, so eps=0 runs are
            # bit-identical to noise-free ones
            self._noise_rng = random.Random(self.noise.seed)
        self._vectorized = vectorized or self.noise.epsilon > 0.0
        self._mask = None
        if self._vectorized:
            try:
                self._labels = domain.label_matrix()
            except (AttributeError, EnumerationCapError) as exc:
                raise UnsupportedConfigurationError(
                    "jump noise and vectorized stepping need an enumerable "
                    "hypothesis class") from exc
            self._mask = np.ones(self._labels.shape[0], dtype=bool)

    def vs_size(self) -> int | None:
        if self._mask is not None:
            return int(self._mask.sum())
        return None

    def step(self, z: LabeledExample) -> object:
        """Feed one example and return the learner's new hypothesis."""
        self.examples.append(z)
        if self._mask is not None:
            col = self._labels[:, self.domain.cell_index(tuple(z.location))]
            self._mask &= (col == z.label)
            if not self._mask.any():
                raise InconsistentTeachingError("no consistent hypothesis survives")
        if self._noise_rng is not None and self._noise_rng.random() < self.noise.epsilon:
            idx = np.nonzero(self._mask)[0]
            self.h = self.domain.hypothesis(int(idx[self._noise_rng.randrange(len(idx))]))
            return self.h
        if self._mask is not None:
            cands = self._masked_choice_set()
        else:
            cands = choice_set(self.domain, self.h, self.examples)
        self.h = resolve_tie(self.domain, cands, self.tie_break, self._tie_rng)
        return self.h

    def _masked_choice_set(self) -> list:
        keys = self.domain.key_table(self.h)
        idx = np.nonzero(self._mask)[0]
        km = keys[idx]
        order = np.lexsort((km[:, 2], km[:, 1], km[:, 0]))
        best = km[order[0]]
        sel = idx[(km == best).all(axis=1)]
        return [self.domain.hypothesis(int(i)) for i in sel]


def run_session(domain, teacher, h0, h_star, budget: int,
                tie_break: TieBreakPolicy | None = None,
                noise: NoiseModel | None = None,
                record_vs_size: bool = False,
                vectorized: bool = False) -> TeachingTrace:
    """Drive a teacher against a learner until the target is reached or the
    example budget runs out.

    ``teacher`` exposes ``next_example(h_t, shown) -> LabeledExample | None``
    where ``shown`` is the tuple of examples revealed so far; None means the
    teacher has nothing further to show.
    """
    sess = Session(domain, h0, tie_break=tie_break, noise=noise,
                   vectorized=vectorized or record_vs_size)
    trace = TeachingTrace(domain)
    for _ in range(budget):
        if sess.h == h_star:
            break
        z = teacher.next_example(sess.h, tuple(sess.examples))
        if z is None:
            break
        h = sess.step(z)
        trace.append(z, h, sess.vs_size() if record_vs_size else None)
    trace.terminal = (Terminal.REACHED_TARGET if sess.h == h_star
                      else Terminal.BUDGET_EXHAUSTED)
    return trace


def worst_case_cost(domain, teacher, h0, h_star, budget: int) -> float:
    """Maximum number of examples until the learner holds the target, over
    every resolution of preference ties.

    ``teacher.next_example`` must be a pure function of the learner state and
    the set of shown examples (no mutable internals): states are memoized on
    (hypothesis, example set).  Returns INFINITE_COST when some tie branch
    exceeds the budget or strands the teacher.
    """
    memo: dict = {}

    def rec(h, shown: tuple) -> float:
        if h == h_star:
            return 0
        key = (h, frozenset(shown))
        if key in memo:
            return memo[key]
        if len(shown) >= budget:
            return INFINITE_COST
        memo[key] = INFINITE_COST  # cycle guard
        z = teacher.next_example(h, shown)
        if z is None:
            return INFINITE_COST
        shown2 = shown + (z,)
        cands = choice_set(domain, h, list(shown2))
        worst = 0.0
        for h2 in cands:
            c = rec(h2, shown2)
            if c == INFINITE_COST:
                worst = INFINITE_COST
                break
            worst = max(worst, 1 + c)
        memo[key] = worst
        return worst

    return rec(h0, ())
