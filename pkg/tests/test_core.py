import json

import pytest

from vsteach.core import (
    ForbiddenExampleError,
    InconsistentTeachingError,
    LabeledExample,
    OutOfBoundsError,
    TeachingTrace,
    Terminal,
    TieBreakMode,
    TieBreakPolicy,
    check_bounds,
    choice_set,
    consistent,
)
from vsteach.lattice import LatticeClass, positive_example_at


def test_labeled_example_json_roundtrip():
    z = LabeledExample((3, 5), True)
    obj = z.to_json()
    assert obj == {"x": 3, "y": 5, "label": 1}
    assert LabeledExample.from_json(obj) == z
    neg = LabeledExample((0, 0), False)
    assert neg.to_json()["label"] == 0
    assert LabeledExample.from_json(neg.to_json()) == neg


def test_labeled_example_immutable():
    z = LabeledExample((1, 2), False)
    with pytest.raises(Exception):
        z.label = True


def test_check_bounds():
    dom = LatticeClass(4)
    check_bounds(dom, (0, 0))
    check_bounds(dom, (3, 3))
    with pytest.raises(OutOfBoundsError):
        check_bounds(dom, (4, 0))
    with pytest.raises(OutOfBoundsError):
        check_bounds(dom, (0, -1))


def test_tie_break_policy():
    assert TieBreakPolicy.seeded(7).mode is TieBreakMode.SEEDED_RANDOM
    assert TieBreakPolicy.seeded(7).seed == 7
    assert TieBreakPolicy.adversarial().mode is TieBreakMode.ADVERSARIAL


def test_consistent():
    dom = LatticeClass(4)
    z = LabeledExample((2, 2), True)
    assert consistent(dom, (1, 1), z)
    assert not consistent(dom, (2, 2), z)


def test_choice_set_empty_version_space():
    dom = LatticeClass(2)
    zs = [LabeledExample((i, j), True) for i in range(2) for j in range(2)]
    with pytest.raises(InconsistentTeachingError):
        choice_set(dom, (0, 0), zs)


def test_positive_example_at_target_forbidden():
    dom = LatticeClass(4)
    with pytest.raises(ForbiddenExampleError):
        positive_example_at(dom, (2, 2), (2, 2))
    z = positive_example_at(dom, (1, 2), (2, 2))
    assert z.label is True and tuple(z.location) == (1, 2)


def test_trace_jsonl_roundtrip():
    dom = LatticeClass(4)
    trace = TeachingTrace(dom)
    trace.append(LabeledExample((0, 1), True), (1, 1), 15)
    trace.append(LabeledExample((1, 1), True), (2, 2), 14)
    trace.terminal = Terminal.REACHED_TARGET
    text = trace.to_jsonl()
    assert len(text.splitlines()) == 2
    for line in text.splitlines():
        json.loads(line)  # every line is standalone JSON
    back = TeachingTrace.from_jsonl(dom, text)
    assert [s.learner_after for s in back.steps] == [(1, 1), (2, 2)]
    assert [s.example for s in back.steps] == [s.example for s in trace.steps]
    assert back.to_jsonl() == text


def test_empty_trace():
    dom = LatticeClass(4)
    trace = TeachingTrace(dom)
    assert trace.cost() == 0
    assert trace.to_jsonl() == ""
    assert TeachingTrace.from_jsonl(dom, "").steps == []
