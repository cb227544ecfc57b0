"""Class-agnostic teaching substrate.

Examples, version spaces, preference keys, learner-state bookkeeping and
teaching traces.  Hypothesis classes (grids of rectangles, lattices,
tabular toy classes) plug in through a small duck-typed interface:

    n                      -- grid side length (bounds for example locations)
    label(h, loc)          -- boolean labeling predicate
    example_locations()    -- ground set of unlabeled example locations
    pref_key(h_next, h_cur)-- lexicographic preference key (tier, dist, subkey)
    all_hypotheses()       -- explicit enumeration (may raise EnumerationCapError)
    canonical_key(h)       -- deterministic total order over hypotheses
    hyp_to_json / hyp_from_json

Classes that support a non-enumerating learner update additionally provide
``choice_set_structured(h_cur, examples)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence


class TeachingError(Exception):
    pass


class OutOfBoundsError(TeachingError):
    """Example location outside the declared domain bounds."""


class InconsistentTeachingError(TeachingError):
    """A teaching example emptied the version space (teacher bug)."""


class ForbiddenExampleError(TeachingError):
    """The teacher tried to emit an example inconsistent with the target."""


class UnsupportedConfigurationError(TeachingError):
    """Requested operation exceeds an enumeration / search cap."""


class EnumerationCapError(UnsupportedConfigurationError):
    """Explicit enumeration of the hypothesis class was disabled or too big."""


@dataclass(frozen=True, order=True)
class LabeledExample:
    """A ground-set element with the boolean label the target assigns to it."""

    location: tuple[int, int]
    label: bool

    def to_json(self) -> dict:
        return {"x": int(self.location[0]), "y": int(self.location[1]),
                "label": 1 if self.label else 0}

    @staticmethod
    def from_json(obj: dict) -> "LabeledExample":
        return LabeledExample((int(obj["x"]), int(obj["y"])), bool(obj["label"]))


class TieBreakMode(Enum):
    SEEDED_RANDOM = "seeded-random"
    ADVERSARIAL = "adversarial"


@dataclass(frozen=True)
class TieBreakPolicy:
    """How genuine sigma-ties in the learner's choice set are resolved.

    ADVERSARIAL is never sampled: worst-case evaluators branch over the
    whole tie set instead.
    """

    mode: TieBreakMode = TieBreakMode.SEEDED_RANDOM
    seed: int = 0

    @staticmethod
    def seeded(seed: int) -> "TieBreakPolicy":
        return TieBreakPolicy(TieBreakMode.SEEDED_RANDOM, seed)

    @staticmethod
    def adversarial() -> "TieBreakPolicy":
        return TieBreakPolicy(TieBreakMode.ADVERSARIAL, 0)


def check_bounds(domain, loc) -> None:
    n = domain.n
    x, y = loc
    if not (0 <= x < n and 0 <= y < n):
        raise OutOfBoundsError(f"location {loc} outside {n}x{n} domain")


def consistent(domain, h, z: LabeledExample) -> bool:
    """True iff hypothesis h assigns z's label to z's location."""
    check_bounds(domain, z.location)
    return bool(domain.label(h, z.location)) == z.label


class VersionSpace:
    """The subset of a hypothesis class consistent with received examples.

    Membership is implicit (the example list plus the class descriptor);
    explicit id enumeration is available through :meth:`members` when the
    class itself is enumerable.
    """

    def __init__(self, domain, examples: Sequence[LabeledExample] = ()):
        self.domain = domain
        self.examples: tuple[LabeledExample, ...] = tuple(examples)

    def update(self, z: LabeledExample) -> "VersionSpace":
        check_bounds(self.domain, z.location)
        return VersionSpace(self.domain, self.examples + (z,))

    def contains(self, h) -> bool:
        return all(consistent(self.domain, h, z) for z in self.examples)

    def members(self) -> list:
        return [h for h in self.domain.all_hypotheses() if self.contains(h)]

    def size(self):
        """Number of surviving hypotheses, or None when enumeration is off."""
        try:
            return len(self.members())
        except EnumerationCapError:
            return None


def choice_set(domain, h_cur, examples: Sequence[LabeledExample]):
    """The learner's candidate set: argmin of the preference key over the
    version space induced by ``examples``, relative to ``h_cur``.

    Uses the class's structured search when available, otherwise scans the
    explicit enumeration.  Raises InconsistentTeachingError when nothing
    survives.
    """
    structured = getattr(domain, "choice_set_structured", None)
    if structured is not None:
        out = structured(h_cur, examples)
    else:
        vs = VersionSpace(domain, examples)
        survivors = vs.members()
        out = argmin_by_key(domain, h_cur, survivors)
    if not out:
        raise InconsistentTeachingError("no consistent hypothesis survives")
    return out


def argmin_by_key(domain, h_cur, candidates: Iterable):
    best_key = None
    best = []
    for h in candidates:
        k = domain.pref_key(h, h_cur)
        if best_key is None or k < best_key:
            best_key, best = k, [h]
        elif k == best_key:
            best.append(h)
    return best


@dataclass(frozen=True)
class TraceStep:
    t: int
    example: LabeledExample
    learner_after: object
    vs_size: int | None


class Terminal(Enum):
    REACHED_TARGET = "reached"
    BUDGET_EXHAUSTED = "exhausted"


@dataclass
class TeachingTrace:
    """Ordered record of a teaching session, the unit of experiment output."""

    domain: object
    steps: list[TraceStep] = field(default_factory=list)
    terminal: Terminal | None = None

    def append(self, example: LabeledExample, learner_after, vs_size) -> None:
        self.steps.append(TraceStep(len(self.steps), example, learner_after, vs_size))

    def cost(self) -> int:
        return len(self.steps)

    def reached_target(self) -> bool:
        return self.terminal is Terminal.REACHED_TARGET

    def to_jsonl(self) -> str:
        lines = []
        for s in self.steps:
            lines.append(json.dumps({
                "t": s.t,
                "example": s.example.to_json(),
                "learner": self.domain.hyp_to_json(s.learner_after),
                "vs_size": s.vs_size,
            }, separators=(",", ":"), sort_keys=True))
        return "\n".join(lines) + ("\n" if lines else "")

    @staticmethod
    def from_jsonl(domain, text: str) -> "TeachingTrace":
        trace = TeachingTrace(domain)
        for line in text.splitlines():
            if not line.strip():
                continue
            obj = json.loads(line)
            trace.append(LabeledExample.from_json(obj["example"]),
                         domain.hyp_from_json(obj["learner"]),
                         obj["vs_size"])
        # re-number defensively
        trace.steps = [TraceStep(i, s.example, s.learner_after, s.vs_size)
                       for i, s in enumerate(trace.steps)]
        return trace
