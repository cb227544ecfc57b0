import json

import numpy as np
import pytest

from vsteach.abstract import TabularClass, random_state_independent_class
from vsteach.core import EnumerationCapError, TieBreakPolicy
from vsteach.lattice import LatticeClass
from vsteach.learner import INFINITE_COST, run_session, worst_case_cost
from vsteach.optimal import CostReport, cost_report, dstar, nonadaptive_opt
from vsteach.teachers import AdaLTeacher


def test_dstar_trivial_singleton():
    c = TabularClass(1, [])
    assert dstar(c, 0, 0) == 0
    assert nonadaptive_opt(c, 0, 0) == 0


def test_dstar_uniform_singletons_is_m_minus_1():
    for m in (3, 5, 8):
        c = TabularClass(m, [frozenset([h]) for h in range(m)])
        assert dstar(c, 0, m - 1) == m - 1
        assert nonadaptive_opt(c, 0, m - 1) == m - 1


def test_dstar_cap():
    dom = LatticeClass(5)  # 25 hypotheses
    with pytest.raises(EnumerationCapError):
        dstar(dom, (0, 0), (4, 4))
    with pytest.raises(EnumerationCapError):
        nonadaptive_opt(dom, (0, 0), (4, 4))


def test_dstar_matches_ada_l_adversarial_3x3():
    dom = LatticeClass(3)
    v = dstar(dom, (0, 0), (2, 2))
    tr = run_session(dom, AdaLTeacher(dom, (2, 2)), (0, 0), (2, 2), 40,
                     tie_break=TieBreakPolicy.adversarial())
    assert tr.reached_target()
    assert v == tr.cost() == 4


def test_dstar_lower_bounds_heuristics_3x3():
    dom = LatticeClass(3)
    v = dstar(dom, (0, 0), (2, 2))
    wc = worst_case_cost(dom, AdaLTeacher(dom, (2, 2)), (0, 0), (2, 2), 40)
    assert v <= wc


def test_state_independent_equality():
    for seed in range(6):
        c = random_state_independent_class(6, seed)
        assert dstar(c, 0, 3) == nonadaptive_opt(c, 0, 3, example_cap=20)


def test_adaptivity_gap_small_lattice():
    dom = LatticeClass(3)
    a = dstar(dom, (0, 0), (2, 2))
    n = nonadaptive_opt(dom, (0, 0), (2, 2))
    assert a < n  # state-dependent preference: adaptivity strictly helps
    assert (a, n) == (4, 6)


def test_dstar_invariant_under_relabeling():
    base = TabularClass(5, [frozenset([0]), frozenset([1]), frozenset([2]),
                            frozenset([3]), frozenset([4]),
                            frozenset([1, 2])], sigma=[2, 0, 4, 1, 3])
    v = dstar(base, 0, 3)
    perm = [3, 0, 4, 1, 2]  # new id of old id i
    inv = np.argsort(perm)
    sets = [frozenset(perm[h] for h in r) for r in base.removal_sets]
    sigma = [0] * 5
    for old, new in enumerate(perm):
        sigma[new] = base._sigma[0][old]
    relabeled = TabularClass(5, sets, sigma=sigma)
    assert dstar(relabeled, perm[0], perm[3]) == v


def test_cost_report_invariants_and_json():
    dom = LatticeClass(3)
    rep = cost_report(dom, (0, 0), (2, 2))
    assert rep.adaptive_opt <= rep.nonadaptive_opt
    assert rep.adaptive_opt <= rep.greedy
    obj = json.loads(rep.to_json())
    assert set(obj) == {"adaptive_opt", "nonadaptive_opt", "greedy", "notes"}


def test_cost_report_notes_on_cap():
    dom = LatticeClass(4)  # 16 hypotheses: over the non-adaptive default cap
    rep = cost_report(dom, (0, 0), (3, 3), cap=16)
    assert rep.nonadaptive_opt == INFINITE_COST
    assert "nonadaptive" in rep.notes
    assert json.loads(rep.to_json())["nonadaptive_opt"] == "inf"
