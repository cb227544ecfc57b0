"""The lattice hypothesis class.

Hypotheses and example locations both correspond to nodes of an n x n
integer lattice.  An example at node v is labeled negative iff the target
sits at v, so teaching proceeds with positive-only examples: each positive
removes exactly the flagged node from the version space.

The learner prefers close-by hypotheses in L1 distance and, among equally
distant ones, those with a larger coordinate sum.  Remaining ties are
genuine sigma-ties.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    ForbiddenExampleError,
    LabeledExample,
    check_bounds,
)

Node = tuple[int, int]


class LatticeClass:
    def __init__(self, n: int):
        if n < 2:
            raise ValueError("lattice needs n >= 2")
        self.n = n
        self._hyps = [(i, j) for i in range(n) for j in range(n)]
        self._index = {h: k for k, h in enumerate(self._hyps)}
        self._coords = np.array(self._hyps, dtype=np.int64)

    # -- generic class interface -------------------------------------------
    def label(self, h: Node, loc: Node) -> bool:
        # positive everywhere except at the hypothesis's own node
        return h != tuple(loc)

    def example_locations(self) -> list[Node]:
        return list(self._hyps)

    def all_hypotheses(self) -> list[Node]:
        return list(self._hyps)

    def index(self, h: Node) -> int:
        return self._index[tuple(h)]

    def hypothesis(self, idx: int) -> Node:
        return self._hyps[idx]

    def canonical_key(self, h: Node):
        return h

    def pref_key(self, h_next: Node, h_cur: Node):
        d = abs(h_next[0] - h_cur[0]) + abs(h_next[1] - h_cur[1])
        return (0, d, -(h_next[0] + h_next[1]))

    def key_table(self, h_cur: Node) -> np.ndarray:
        """(N, 3) array of preference keys for every hypothesis."""
        hs = self._coords
        d = np.abs(hs[:, 0] - h_cur[0]) + np.abs(hs[:, 1] - h_cur[1])
        out = np.zeros((len(self._hyps), 3), dtype=np.int64)
        out[:, 1] = d
        out[:, 2] = -(hs[:, 0] + hs[:, 1])
        return out

    def dist_table(self, h: Node) -> np.ndarray:
        """(N,) L1 distances from every node to h."""
        hs = self._coords
        return np.abs(hs[:, 0] - h[0]) + np.abs(hs[:, 1] - h[1])

    def hyp_to_json(self, h: Node) -> dict:
        return {"node": [int(h[0]), int(h[1])]}

    def hyp_from_json(self, obj: dict) -> Node:
        i, j = obj["node"]
        return (int(i), int(j))

    def teaching_examples(self, h_star: Node) -> list[LabeledExample]:
        # positive-only teaching: the target node itself is off limits
        return [LabeledExample(v, True) for v in self._hyps if v != tuple(h_star)]

    def neighbors(self, h: Node) -> list[Node]:
        i, j = h
        out = [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)]
        return [(a, b) for a, b in out if 0 <= a < self.n and 0 <= b < self.n]

    def cell_index(self, loc: Node) -> int:
        return loc[0] * self.n + loc[1]

    def label_matrix(self) -> np.ndarray:
        """(N, n*n) boolean consistency table, nodes in i*n+j order."""
        return ~np.eye(len(self._hyps), dtype=bool)

    # -- structured learner update -----------------------------------------
    def choice_set_structured(self, h_cur: Node, examples) -> list[Node]:
        flagged = set()
        pinned = None
        for z in examples:
            loc = tuple(z.location)
            if z.label:
                flagged.add(loc)
            else:
                pinned = loc  # a negative identifies the target outright
        if pinned is not None:
            return [] if pinned in flagged else [pinned]
        mask = np.ones(len(self._hyps), dtype=bool)
        for f in flagged:
            mask[self._index[f]] = False
        if not mask.any():
            return []
        kt = self.key_table(tuple(h_cur))
        idx = np.nonzero(mask)[0]
        km = kt[idx]
        order = np.lexsort((km[:, 2], km[:, 1], km[:, 0]))
        best = km[order[0]]
        sel = idx[(km == best).all(axis=1)]
        return [self._hyps[int(i)] for i in sel]


def positive_example_at(domain: LatticeClass, v: Node, h_star: Node) -> LabeledExample:
    """The positive example flagging node v as "not the target"."""
    check_bounds(domain, v)
    if tuple(v) == tuple(h_star):
        raise ForbiddenExampleError(
            f"flagging {v} would be a negative example at the target")
    return LabeledExample(tuple(v), True)


@dataclass(frozen=True)
class LatticeConfig:
    """A diagonal teaching instance h0=(a,a), h*=(b,b) on an n-lattice."""

    n: int
    h0: Node
    h_star: Node

    def __post_init__(self):
        if tuple(self.h0) == tuple(self.h_star):
            raise ValueError("h0 must differ from the target")

    @staticmethod
    def diagonal(a: int, b: int, n: int) -> "LatticeConfig":
        if not (0 < a < n - 1 and 0 < b < n - 1 and a < b):
            raise ValueError("need 0 < a < b < n-1")
        return LatticeConfig(n, (a, a), (b, b))
