"""Explicit finite hypothesis classes for exact-evaluator experiments.

Hypotheses are integer ids; each teaching example is identified by the set
of hypotheses it removes from the version space.  Preferences are given as
a key matrix (row = current hypothesis), a single global vector, or omitted
for the uniform preference.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from .core import LabeledExample


class TabularClass:
    """A finite class over ids 0..m-1 with an explicit example structure.

    ``removal_sets[e]`` lists the hypotheses inconsistent with example e;
    showing e (positively) keeps the complement.  Example locations are
    (e, 0) so the class fits the generic grid-shaped plumbing.
    """

    def __init__(self, m: int, removal_sets, sigma=None):
        if m < 1:
            raise ValueError("need at least one hypothesis")
        self.m = m
        self.removal_sets = [frozenset(r) for r in removal_sets]
        for r in self.removal_sets:
            if any(not 0 <= h < m for h in r):
                raise ValueError("removal set out of range")
        # bounds checks use a square domain; examples live in column 0
        self.n = max(len(self.removal_sets), 1)
        if sigma is None:
            self._sigma = np.zeros((m, m), dtype=np.int64)
        else:
            sig = np.asarray(sigma, dtype=np.int64)
            if sig.ndim == 1:
                sig = np.tile(sig, (m, 1))
            if sig.shape != (m, m):
                raise ValueError("sigma must be (m,) or (m, m)")
            self._sigma = sig

    # -- generic class interface -------------------------------------------
    def label(self, h: int, loc) -> bool:
        return h not in self.removal_sets[loc[0]]

    def example_locations(self):
        return [(e, 0) for e in range(len(self.removal_sets))]

    def all_hypotheses(self):
        return list(range(self.m))

    def index(self, h: int) -> int:
        return int(h)

    def hypothesis(self, idx: int) -> int:
        return int(idx)

    def canonical_key(self, h: int):
        return int(h)

    def pref_key(self, h_next: int, h_cur: int):
        return (0, int(self._sigma[h_cur, h_next]), 0)

    def key_table(self, h_cur: int) -> np.ndarray:
        out = np.zeros((self.m, 3), dtype=np.int64)
        out[:, 1] = self._sigma[h_cur]
        return out

    def cell_index(self, loc) -> int:
        return loc[0]

    def label_matrix(self) -> np.ndarray:
        out = np.ones((self.m, len(self.removal_sets)), dtype=bool)
        for e, r in enumerate(self.removal_sets):
            for h in r:
                out[h, e] = False
        return out

    def hyp_to_json(self, h: int) -> dict:
        return {"id": int(h)}

    def hyp_from_json(self, obj: dict) -> int:
        return int(obj["id"])

    def teaching_examples(self, h_star: int):
        return [LabeledExample((e, 0), True)
                for e, r in enumerate(self.removal_sets) if h_star not in r]

    def all_teaching_examples(self):
        return [LabeledExample((e, 0), True)
                for e in range(len(self.removal_sets))]

    def is_state_independent(self) -> bool:
        return bool((self._sigma == self._sigma[0]).all())


def subset_removal_class(m: int, k: int, sigma=None) -> TabularClass:
    """A class whose example structure removes every subset of size <= k
    (including the empty set), which satisfies the free-subset-removal
    condition by construction."""
    sets = [frozenset(c)
            for s in range(0, k + 1)
            for c in itertools.combinations(range(m), s)]
    return TabularClass(m, sets, sigma=sigma)


def random_state_independent_class(m: int, seed: int,
                                   uniform: bool = False) -> TabularClass:
    """A random instance with a global (or uniform) preference and a random
    example structure rich enough to isolate any target: all singleton
    removals plus a few random larger ones."""
    rng = random.Random(seed)
    sets = [frozenset([h]) for h in range(m)]
    for _ in range(m):
        size = rng.randrange(2, max(3, m // 2 + 1))
        sets.append(frozenset(rng.sample(range(m), min(size, m - 1))))
    if uniform:
        sigma = None
    else:
        vals = list(range(m))
        rng.shuffle(vals)
        sigma = vals
    return TabularClass(m, sets, sigma=sigma)
