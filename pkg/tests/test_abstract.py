import math

import pytest

from vsteach.abstract import (
    TabularClass,
    random_state_independent_class,
    subset_removal_class,
)
from vsteach.core import LabeledExample, choice_set


def test_tabular_basics():
    c = TabularClass(3, [frozenset([0]), frozenset([1, 2])])
    assert c.label(0, (0, 0)) is False
    assert c.label(1, (0, 0)) is True
    assert c.label(2, (1, 0)) is False
    lm = c.label_matrix()
    assert lm.shape == (3, 2)
    assert not lm[0, 0] and lm[0, 1] and not lm[2, 1]


def test_tabular_validation():
    with pytest.raises(ValueError):
        TabularClass(0, [])
    with pytest.raises(ValueError):
        TabularClass(2, [frozenset([5])])
    with pytest.raises(ValueError):
        TabularClass(2, [frozenset()], sigma=[[0, 1]])  # wrong shape


def test_sigma_forms():
    uniform = TabularClass(3, [frozenset([0])])
    assert uniform.is_state_independent()
    glob = TabularClass(3, [frozenset([0])], sigma=[2, 0, 1])
    assert glob.is_state_independent()
    assert glob.pref_key(1, 0) < glob.pref_key(2, 0) < glob.pref_key(0, 0)
    dep = TabularClass(2, [frozenset([0])], sigma=[[0, 1], [1, 0]])
    assert not dep.is_state_independent()
    assert dep.pref_key(0, 0) < dep.pref_key(1, 0)
    assert dep.pref_key(1, 1) < dep.pref_key(0, 1)


def test_choice_set_follows_global_sigma():
    c = TabularClass(4, [frozenset([h]) for h in range(4)],
                     sigma=[3, 0, 2, 1])
    # remove the globally most preferred hypothesis (id 1): next best is 3
    z = LabeledExample((1, 0), True)
    assert choice_set(c, 0, [z]) == [3]


def test_teaching_examples_exclude_target_inconsistent():
    c = TabularClass(3, [frozenset([0]), frozenset([1]), frozenset([0, 2])])
    zs = c.teaching_examples(2)
    assert [z.location for z in zs] == [(0, 0), (1, 0)]
    assert len(c.all_teaching_examples()) == 3


def test_subset_removal_counts():
    for m, k in [(4, 2), (5, 5), (6, 1)]:
        c = subset_removal_class(m, k)
        expect = sum(math.comb(m, s) for s in range(k + 1))
        assert len(c.removal_sets) == expect
    # realized removal sets are exactly the <=k subsets
    c = subset_removal_class(4, 2)
    sizes = sorted(len(r) for r in c.removal_sets)
    assert sizes == [0, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2]


def test_random_state_independent_instances():
    for seed in range(5):
        c = random_state_independent_class(6, seed)
        assert c.is_state_independent()
        # all singleton removals present, so any target is teachable
        singles = {r for r in c.removal_sets if len(r) == 1}
        assert len(singles) == 6
    u = random_state_independent_class(6, 0, uniform=True)
    assert (u._sigma == 0).all()


def test_json_roundtrip():
    c = TabularClass(3, [frozenset([0])])
    assert c.hyp_from_json(c.hyp_to_json(2)) == 2
