"""The two-rectangle hypothesis class on an n x n grid.

A hypothesis is one axis-aligned rectangle of cells (subclass H1) or two
cell-disjoint rectangles whose boundaries do not touch (subclass H2).  Two
special H2 subsets act as shortcuts between the subclasses:

* S1 -- an H1 rectangle union a singleton cell ("delete a rectangle"),
* S2 -- a pair of rectangles tiling their minimal enclosing rectangle up
  to a one-cell-wide full-length gap ("merge two rectangles").

The learner's local preference is realized as a lexicographic key
(tier, dist, subkey) per current hypothesis; dist is the number of edge
coordinates that differ between same-subclass hypotheses (min over the two
rectangle pairings for H2).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import EnumerationCapError, UnsupportedConfigurationError

Cell = tuple[int, int]


@dataclass(frozen=True, order=True)
class Rect:
    x1: int
    y1: int
    x2: int
    y2: int

    def __post_init__(self):
        if self.x1 > self.x2 or self.y1 > self.y2:
            raise ValueError(f"degenerate rectangle {self}")

    @property
    def coords(self) -> tuple[int, int, int, int]:
        return (self.x1, self.y1, self.x2, self.y2)

    def size(self) -> int:
        return (self.x2 - self.x1 + 1) * (self.y2 - self.y1 + 1)

    def contains(self, cell: Cell) -> bool:
        x, y = cell
        return self.x1 <= x <= self.x2 and self.y1 <= y <= self.y2

    def cells(self):
        for x in range(self.x1, self.x2 + 1):
            for y in range(self.y1, self.y2 + 1):
                yield (x, y)

    def overlaps(self, other: "Rect") -> bool:
        return not (self.x2 < other.x1 or other.x2 < self.x1 or
                    self.y2 < other.y1 or other.y2 < self.y1)


def gap_disjoint(a: Rect, b: Rect) -> bool:
    """Cell-disjoint with a >=1-cell gap along some axis (edges never touch)."""
    return (a.x2 + 1 < b.x1 or b.x2 + 1 < a.x1 or
            a.y2 + 1 < b.y1 or b.y2 + 1 < a.y1)


@dataclass(frozen=True)
class TwoRec:
    rects: tuple[Rect, ...]

    def __post_init__(self):
        if len(self.rects) not in (1, 2):
            raise ValueError("hypothesis needs one or two rectangles")
        if len(self.rects) == 2:
            a, b = self.rects
            if not gap_disjoint(a, b):
                raise ValueError(f"rectangles not gap-disjoint: {a}, {b}")
            if b.coords < a.coords:
                object.__setattr__(self, "rects", (b, a))

    @staticmethod
    def one(x1, y1, x2, y2) -> "TwoRec":
        return TwoRec((Rect(x1, y1, x2, y2),))

    @staticmethod
    def two(r1: Rect, r2: Rect) -> "TwoRec":
        return TwoRec((r1, r2))

    def is_two(self) -> bool:
        return len(self.rects) == 2

    def contains(self, cell: Cell) -> bool:
        return any(r.contains(cell) for r in self.rects)

    def bbox(self) -> Rect:
        return Rect(min(r.x1 for r in self.rects), min(r.y1 for r in self.rects),
                    max(r.x2 for r in self.rects), max(r.y2 for r in self.rects))

    def max_side(self) -> int:
        return max(max(r.x2 - r.x1 + 1, r.y2 - r.y1 + 1) for r in self.rects)


def dist_e(h: TwoRec, g: TwoRec) -> int:
    """Number of differing edge coordinates between same-subclass hypotheses."""
    if h.is_two() != g.is_two():
        raise ValueError("edge distance is only defined within a subclass")
    if not h.is_two():
        return _mismatch(h.rects[0], g.rects[0])
    a1, a2 = h.rects
    b1, b2 = g.rects
    return min(_mismatch(a1, b1) + _mismatch(a2, b2),
               _mismatch(a1, b2) + _mismatch(a2, b1))


def _mismatch(a: Rect, b: Rect) -> int:
    return sum(x != y for x, y in zip(a.coords, b.coords))


def _l1_disp(h: TwoRec, g: TwoRec) -> int:
    if not h.is_two():
        return sum(abs(x - y) for x, y in zip(h.rects[0].coords, g.rects[0].coords))
    a1, a2 = h.rects
    b1, b2 = g.rects

    def s(a, b):
        return sum(abs(x - y) for x, y in zip(a.coords, b.coords))

    return min(s(a1, b1) + s(a2, b2), s(a1, b2) + s(a2, b1))


def is_s1(h: TwoRec) -> bool:
    return h.is_two() and min(r.size() for r in h.rects) == 1


def is_s2(h: TwoRec) -> bool:
    """True iff h tiles its enclosing rectangle up to a 1-wide full gap."""
    if not h.is_two():
        return False
    a, b = h.rects
    e = h.bbox()
    if (a.y1 == b.y1 == e.y1 and a.y2 == b.y2 == e.y2):
        left, right = (a, b) if a.x1 < b.x1 else (b, a)
        if left.x1 == e.x1 and right.x2 == e.x2 and right.x1 - left.x2 == 2:
            return True
    if (a.x1 == b.x1 == e.x1 and a.x2 == b.x2 == e.x2):
        lo, hi = (a, b) if a.y1 < b.y1 else (b, a)
        if lo.y1 == e.y1 and hi.y2 == e.y2 and hi.y1 - lo.y2 == 2:
            return True
    return False


def is_split_of(h: TwoRec, target: Rect) -> bool:
    """True iff h is a split pair whose enclosing rectangle is ``target``."""
    return is_s2(h) and h.bbox() == target


def splits_of(target: Rect):
    """All split pairs (1-wide full-length gap) of a rectangle."""
    for c in range(target.x1 + 1, target.x2):
        yield TwoRec((Rect(target.x1, target.y1, c - 1, target.y2),
                      Rect(c + 1, target.y1, target.x2, target.y2)))
    for c in range(target.y1 + 1, target.y2):
        yield TwoRec((Rect(target.x1, target.y1, target.x2, c - 1),
                      Rect(target.x1, c + 1, target.x2, target.y2)))


def membership(h: TwoRec) -> str:
    """Subclass tag: H1, S1, S2 or H2_other (S1 reported before S2)."""
    if not h.is_two():
        return "H1"
    if is_s1(h):
        return "S1"
    if is_s2(h):
        return "S2"
    return "H2_other"


def delete_targets(h: TwoRec) -> list[TwoRec]:
    """H1 hypotheses obtained by deleting a singleton rectangle of h."""
    if not is_s1(h):
        return []
    a, b = h.rects
    out = []
    if b.size() == 1:
        out.append(TwoRec((a,)))
    if a.size() == 1:
        out.append(TwoRec((b,)))
    return out


def merge_target(h: TwoRec) -> TwoRec | None:
    """The enclosing H1 rectangle, for split hypotheses."""
    if not is_s2(h):
        return None
    return TwoRec((h.bbox(),))


@dataclass(frozen=True)
class TwoRecPrefConfig:
    """Flagged variants of the preference structure (defaults match the model
    used throughout the experiments)."""

    l1_tiebreak: bool = False          # secondary L1-displacement key
    overlap_before_h2: bool = False    # rank overlapping H1 above distant H2 in C-2


_L1_SCALE = 1 << 12


class TwoRecClass:
    """Grid-size-bound class object: enumeration tables, preference keys and
    the structured (non-enumerating) learner update."""

    def __init__(self, n: int, enumeration_cap: int = 8,
                 pref: TwoRecPrefConfig = TwoRecPrefConfig(),
                 fallback_cap: int = 12, combo_budget: int = 300_000):
        if n < 2:
            raise ValueError("grid needs n >= 2")
        self.n = n
        self.enumeration_cap = enumeration_cap
        self.fallback_cap = fallback_cap
        self.combo_budget = combo_budget
        self.pref = pref
        self._tables = None

    # -- preference --------------------------------------------------------
    def _dist(self, hn: TwoRec, hc: TwoRec) -> int:
        d = dist_e(hn, hc)
        if self.pref.l1_tiebreak:
            return d * _L1_SCALE + _l1_disp(hn, hc)
        return d

    def pref_key(self, hn: TwoRec, hc: TwoRec):
        if not hc.is_two():  # C-1
            if not hn.is_two():
                return (0, self._dist(hn, hc), 0)
            if is_s1(hn):
                return (1, 0, 0)
            return (2, 0, 0)
        s1, s2 = is_s1(hc), is_s2(hc)
        if s1 or s2:  # C-2
            if hn == hc:
                return (0, 0, 0)
            if not hn.is_two():
                if s1 and hn in delete_targets(hc):
                    return (1, 0, 0)
                if s2 and hn == merge_target(hc):
                    return (1, 1 if s1 else 0, 0)
                overlap = any(hn.rects[0].overlaps(r) for r in hc.rects)
                if self.pref.overlap_before_h2:
                    return (2, 0, 0) if overlap else (4, 0, 0)
                return (3, 0, 0) if overlap else (4, 0, 0)
            tier = 3 if self.pref.overlap_before_h2 else 2
            return (tier, self._dist(hn, hc), 0)
        # C-3
        if hn.is_two():
            return (0, self._dist(hn, hc), 0)
        return (1, 0, 0)

    def canonical_key(self, h: TwoRec):
        return (len(h.rects),) + tuple(r.coords for r in h.rects)

    # -- labeling / examples ----------------------------------------------
    def label(self, h: TwoRec, loc: Cell) -> bool:
        return h.contains(tuple(loc))

    def example_locations(self) -> list[Cell]:
        return [(x, y) for x in range(self.n) for y in range(self.n)]

    def hyp_to_json(self, h: TwoRec) -> dict:
        return {"rects": [{"x1": r.x1, "y1": r.y1, "x2": r.x2, "y2": r.y2}
                          for r in h.rects]}

    def hyp_from_json(self, obj: dict) -> TwoRec:
        rects = tuple(Rect(r["x1"], r["y1"], r["x2"], r["y2"]) for r in obj["rects"])
        return TwoRec(rects)

    def teaching_examples(self, h_star: TwoRec) -> list:
        from .core import LabeledExample
        return [LabeledExample(loc, h_star.contains(loc))
                for loc in self.example_locations()]

    # -- enumeration -------------------------------------------------------
    def all_rects(self) -> list[Rect]:
        n = self.n
        xs = [(a, b) for a in range(n) for b in range(a, n)]
        return [Rect(x1, y1, x2, y2) for (x1, x2) in xs for (y1, y2) in xs]

    def all_hypotheses(self) -> list[TwoRec]:
        return self._build_tables().hyps

    def index(self, h: TwoRec) -> int:
        return self._build_tables().index[h]

    def hypothesis(self, idx: int) -> TwoRec:
        return self._build_tables().hyps[idx]

    def _build_tables(self):
        if self._tables is None:
            if self.n > self.enumeration_cap:
                raise EnumerationCapError(
                    f"2-Rec enumeration disabled for n={self.n} "
                    f"(cap {self.enumeration_cap})")
            self._tables = _Tables(self)
        return self._tables

    def label_matrix(self) -> np.ndarray:
        """(N, n*n) boolean consistency table, cells in x*n+y order."""
        return self._build_tables().labels

    def cell_index(self, loc: Cell) -> int:
        return loc[0] * self.n + loc[1]

    def key_table(self, hc: TwoRec) -> np.ndarray:
        """(N, 3) preference keys of every hypothesis relative to hc."""
        if self.pref != TwoRecPrefConfig():
            raise UnsupportedConfigurationError(
                "vectorized keys only support the default preference config")
        t = self._build_tables()
        N = len(t.hyps)
        tier = np.zeros(N, dtype=np.int64)
        dist = np.zeros(N, dtype=np.int64)
        sub = np.zeros(N, dtype=np.int64)
        hc8 = np.array([c for r in hc.rects for c in r.coords] * (1 if hc.is_two() else 2),
                       dtype=np.int64)
        mm_id = (t.arr8 != hc8).sum(axis=1)
        hc8sw = np.concatenate([hc8[4:], hc8[:4]])
        mm_sw = (t.arr8 != hc8sw).sum(axis=1)
        d2 = np.minimum(mm_id, mm_sw)
        d1 = (t.arr8[:, :4] != hc8[:4]).sum(axis=1)
        if not hc.is_two():  # C-1
            tier[t.is_two & ~t.s1] = 2
            tier[t.s1] = 1
            dist[~t.is_two] = d1[~t.is_two]
        elif is_s1(hc) or is_s2(hc):  # C-2
            h1_rows = ~t.is_two
            ov = np.zeros(N, dtype=bool)
            for r in hc.rects:
                ov |= (h1_rows &
                       (t.arr8[:, 0] <= r.x2) & (r.x1 <= t.arr8[:, 2]) &
                       (t.arr8[:, 1] <= r.y2) & (r.y1 <= t.arr8[:, 3]))
            tier[h1_rows] = 4
            tier[ov] = 3
            tier[t.is_two] = 2
            dist[t.is_two] = d2[t.is_two]
            for g in delete_targets(hc):
                i = t.index[g]
                tier[i], dist[i] = 1, 0
            mt = merge_target(hc)
            if mt is not None:
                i = t.index[mt]
                tier[i], dist[i] = 1, (1 if is_s1(hc) else 0)
            i = t.index[hc]
            tier[i], dist[i] = 0, 0
        else:  # C-3
            tier[~t.is_two] = 1
            dist[t.is_two] = d2[t.is_two]
        return np.stack([tier, dist, sub], axis=1)

    # -- structured learner update -----------------------------------------
    def choice_set_structured(self, hc: TwoRec, examples) -> list[TwoRec]:
        P = [tuple(z.location) for z in examples if z.label]
        Nn = [tuple(z.location) for z in examples if not z.label]
        P = sorted(set(P))
        Nn = sorted(set(Nn))
        if not hc.is_two():
            return self._choice_c1(hc, P, Nn)
        if is_s1(hc) or is_s2(hc):
            return self._choice_c2(hc, P, Nn)
        return self._choice_c3(hc, P, Nn)

    def _choice_c1(self, hc, P, Nn):
        h1 = self._consistent_h1_min_dist(hc.rects[0], P, Nn)
        if h1:
            return h1
        s1 = self._consistent_s1(P, Nn)
        if s1:
            return s1
        rest = [h for h in self._all_consistent_h2(P, Nn) if not is_s1(h)]
        return rest

    def _choice_c2(self, hc, P, Nn):
        if self._hyp_consistent(hc, P, Nn):
            return [hc]
        tier1 = [g for g in delete_targets(hc) if self._hyp_consistent(g, P, Nn)]
        if tier1:
            return tier1
        mt = merge_target(hc)
        if mt is not None and self._hyp_consistent(mt, P, Nn):
            return [mt]
        h2 = self._consistent_h2_min_dist(hc, P, Nn, exclude_self=True)
        if h2:
            return h2
        h1 = self._all_consistent_h1(P, Nn)
        skip = set(delete_targets(hc))
        if mt is not None:
            skip.add(mt)
        h1 = [g for g in h1 if g not in skip]
        overlap = [g for g in h1 if any(g.rects[0].overlaps(r) for r in hc.rects)]
        if overlap:
            return overlap
        return h1

    def _choice_c3(self, hc, P, Nn):
        h2 = self._consistent_h2_min_dist(hc, P, Nn, exclude_self=False)
        if h2:
            return h2
        return self._all_consistent_h1(P, Nn)

    # -- consistency helpers -----------------------------------------------
    def _hyp_consistent(self, h: TwoRec, P, Nn) -> bool:
        return (all(h.contains(p) for p in P) and
                not any(h.contains(q) for q in Nn))

    def _iter_covering_rects(self, P, Nn):
        """Rectangles covering every cell of P and containing no cell of Nn."""
        n = self.n
        if P:
            bx1 = min(p[0] for p in P); bx2 = max(p[0] for p in P)
            by1 = min(p[1] for p in P); by2 = max(p[1] for p in P)
            x1s, x2s = range(0, bx1 + 1), range(bx2, n)
            y1s, y2s = range(0, by1 + 1), range(by2, n)
        else:
            x1s = x2s = y1s = y2s = range(n)
        for x1 in x1s:
            for x2 in x2s:
                if x2 < x1:
                    continue
                for y1 in y1s:
                    for y2 in y2s:
                        if y2 < y1:
                            continue
                        if any(x1 <= q[0] <= x2 and y1 <= q[1] <= y2 for q in Nn):
                            continue
                        yield Rect(x1, y1, x2, y2)

    def _all_consistent_h1(self, P, Nn) -> list[TwoRec]:
        return [TwoRec((r,)) for r in self._iter_covering_rects(P, Nn)]

    def _consistent_h1_min_dist(self, rc: Rect, P, Nn) -> list[TwoRec]:
        """The min-edge-distance consistent H1 set relative to rectangle rc."""
        if P:
            best_d, best = None, []
            for r in self._iter_covering_rects(P, Nn):
                h = TwoRec((r,))
                d = self._dist(h, TwoRec((rc,)))
                if best_d is None or d < best_d:
                    best_d, best = d, [h]
                elif d == best_d:
                    best.append(h)
            return best
        # no positives: grow outward by number of moved edges
        hc = TwoRec((rc,))
        for d in range(5):
            found = {}
            for combo in itertools.combinations(range(4), d):
                for vals in itertools.product(range(self.n), repeat=d):
                    c = list(rc.coords)
                    ok = True
                    for pos, v in zip(combo, vals):
                        if v == c[pos]:
                            ok = False
                            break
                        c[pos] = v
                    if not ok or c[0] > c[2] or c[1] > c[3]:
                        continue
                    r = Rect(*c)
                    if any(r.contains(q) for q in Nn):
                        continue
                    h = TwoRec((r,))
                    found[self.canonical_key(h)] = h
            if found:
                if self.pref.l1_tiebreak:
                    hs = list(found.values())
                    dd = [self._dist(h, hc) for h in hs]
                    m = min(dd)
                    return [h for h, x in zip(hs, dd) if x == m]
                return list(found.values())
        return []

    def _consistent_s1(self, P, Nn) -> list[TwoRec]:
        """All consistent (rectangle, singleton) hypotheses."""
        out = {}
        nset = set(Nn)
        pset = set(P)
        for cx in range(self.n):
            for cy in range(self.n):
                c = (cx, cy)
                if c in nset:
                    continue
                sing = Rect(cx, cy, cx, cy)
                prest = [p for p in pset if p != c]
                for r in self._iter_covering_rects(prest, Nn):
                    if not gap_disjoint(r, sing):
                        continue
                    h = TwoRec((r, sing))
                    out[self.canonical_key(h)] = h
        return list(out.values())

    def _consistent_h2_min_dist(self, hc: TwoRec, P, Nn, exclude_self: bool):
        """Min-edge-distance consistent H2 set relative to hc, by ascending
        candidate generation; falls back to full enumeration when the combo
        space explodes."""
        base = [c for r in hc.rects for c in r.coords]
        n = self.n
        for d in range(9):
            est = _ncombos(8, d) * max(1, (n - 1)) ** d
            if est > self.combo_budget:
                return self._h2_min_dist_fallback(hc, P, Nn, exclude_self)
            found = {}
            for combo in itertools.combinations(range(8), d):
                for vals in itertools.product(range(n), repeat=d):
                    c = list(base)
                    ok = True
                    for pos, v in zip(combo, vals):
                        if v == c[pos]:
                            ok = False
                            break
                        c[pos] = v
                    if not ok:
                        continue
                    if c[0] > c[2] or c[1] > c[3] or c[4] > c[6] or c[5] > c[7]:
                        continue
                    ra, rb = Rect(*c[:4]), Rect(*c[4:])
                    if not gap_disjoint(ra, rb):
                        continue
                    h = TwoRec((ra, rb))
                    if exclude_self and h == hc:
                        continue
                    if not self._hyp_consistent(h, P, Nn):
                        continue
                    found[self.canonical_key(h)] = h
            if found:
                hs = list(found.values())
                if self.pref.l1_tiebreak:
                    dd = [self._dist(h, hc) for h in hs]
                    m = min(dd)
                    hs = [h for h, x in zip(hs, dd) if x == m]
                return hs
        return []

    def _h2_min_dist_fallback(self, hc, P, Nn, exclude_self):
        best_d, best = None, []
        for h in self._all_consistent_h2(P, Nn):
            if exclude_self and h == hc:
                continue
            d = self._dist(h, hc)
            if best_d is None or d < best_d:
                best_d, best = d, [h]
            elif d == best_d:
                best.append(h)
        return best

    def _all_consistent_h2(self, P, Nn) -> list[TwoRec]:
        if self.n > self.fallback_cap:
            raise UnsupportedConfigurationError(
                f"full H2 enumeration unavailable for n={self.n}")
        rects = [r for r in self.all_rects()
                 if not any(r.contains(q) for q in Nn)]
        out = []
        for i, a in enumerate(rects):
            for b in rects[i + 1:]:
                if not gap_disjoint(a, b):
                    continue
                if all(a.contains(p) or b.contains(p) for p in P):
                    out.append(TwoRec((a, b)))
        return out


@lru_cache(maxsize=None)
def _ncombos(k: int, d: int) -> int:
    out = 1
    for i in range(d):
        out = out * (k - i) // (i + 1)
    return out


class _Tables:
    """Enumeration tables shared read-only across sessions."""

    def __init__(self, cls: TwoRecClass):
        n = cls.n
        rects = cls.all_rects()
        R = np.array([r.coords for r in rects], dtype=np.int64)  # (M, 4)
        M = len(rects)
        gap = ((R[:, None, 2] + 1 < R[None, :, 0]) |
               (R[None, :, 2] + 1 < R[:, None, 0]) |
               (R[:, None, 3] + 1 < R[None, :, 1]) |
               (R[None, :, 3] + 1 < R[:, None, 1]))
        ii, jj = np.nonzero(np.triu(gap, k=1))
        hyps: list[TwoRec] = [TwoRec((r,)) for r in rects]
        hyps.extend(TwoRec((rects[i], rects[j])) for i, j in zip(ii, jj))
        self.hyps = hyps
        self.index = {h: k for k, h in enumerate(hyps)}
        N = len(hyps)
        arr8 = np.empty((N, 8), dtype=np.int64)
        arr8[:M, :4] = R
        arr8[:M, 4:] = R
        pair_a = np.array([hyps[M + k].rects[0].coords for k in range(N - M)],
                          dtype=np.int64).reshape(-1, 4)
        pair_b = np.array([hyps[M + k].rects[1].coords for k in range(N - M)],
                          dtype=np.int64).reshape(-1, 4)
        arr8[M:, :4] = pair_a
        arr8[M:, 4:] = pair_b
        self.arr8 = arr8
        self.is_two = np.zeros(N, dtype=bool)
        self.is_two[M:] = True
        self.s1 = np.array([is_s1(h) for h in hyps])
        self.s2 = np.array([is_s2(h) for h in hyps])
        labels = np.empty((N, n * n), dtype=bool)
        for x in range(n):
            for y in range(n):
                in1 = ((arr8[:, 0] <= x) & (x <= arr8[:, 2]) &
                       (arr8[:, 1] <= y) & (y <= arr8[:, 3]))
                in2 = ((arr8[:, 4] <= x) & (x <= arr8[:, 6]) &
                       (arr8[:, 5] <= y) & (y <= arr8[:, 7]))
                labels[:, x * n + y] = in1 | (self.is_two & in2)
        self.labels = labels
