"""Simulation harness: scenario sampling, factorial sweeps, CSV output.

A spec names a hypothesis class, a scenario family, the algorithms, noise
levels, grid sizes and trial count; the harness samples one (h0, h*) pair
per (scenario, grid, trial) cell -- independent of algorithm and noise so
every policy faces the same instances -- runs each teaching session, and
writes one CSV row per run.  Everything is derived from the master seed, so
re-running a spec reproduces the CSV byte for byte.
"""

from __future__ import annotations

import csv
import hashlib
import math
import random
from dataclasses import dataclass, field

from .core import TieBreakPolicy
from .lattice import LatticeClass
from .learner import NoiseModel, run_session
from .teachers import make_teacher
from .tworec import Rect, TwoRec, TwoRecClass

CSV_HEADER = ["class", "scenario", "grid_size", "algorithm", "epsilon",
              "trial", "seed", "examples_used", "reached"]

#: teachers that enumerate the class up front and so respect enumeration caps
_ENUMERATING = {"sc", "rand", "myopic"}


@dataclass
class ExperimentSpec:
    klass: str                      # "tworec" | "lattice"
    scenario: str                   # tworec: H1to1/H1to2/H2to1/H2to2/H2to1-strip
    algorithms: list                # lattice: diag or diag:a:b
    grid_sizes: list
    epsilons: list = field(default_factory=lambda: [0.0])
    trials: int = 50
    master_seed: int = 0
    budget_rule: str = "default"

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        for e in self.epsilons:
            if not 0.0 <= e <= 1.0:
                raise ValueError("epsilon must lie in [0, 1]")
        if self.klass not in ("tworec", "lattice"):
            raise ValueError(f"unknown class {self.klass!r}")

    @staticmethod
    def from_json(obj: dict) -> "ExperimentSpec":
        return ExperimentSpec(
            klass=obj["class"],
            scenario=obj["scenario"],
            algorithms=list(obj["algorithms"]),
            grid_sizes=list(obj["grid_sizes"]),
            epsilons=[float(e) for e in obj.get("epsilons", [0.0])],
            trials=int(obj.get("trials", 50)),
            master_seed=int(obj.get("master_seed", 0)),
            budget_rule=obj.get("budget_rule", "default"),
        )


def _derive_seed(*parts) -> int:
    """Stable 63-bit seed from a tuple of labels."""
    text = "|".join(str(p) for p in parts)
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8],
                          "big") >> 1


def _sample_rect(rng: random.Random, n: int) -> Rect:
    """Uniform over all axis-aligned cell rectangles in an n-grid."""
    intervals = [(a, b) for a in range(n) for b in range(a, n)]
    x1, x2 = rng.choice(intervals)
    y1, y2 = rng.choice(intervals)
    return Rect(x1, y1, x2, y2)


def _sample_two(rng: random.Random, n: int) -> TwoRec:
    from .tworec import gap_disjoint
    while True:
        a, b = _sample_rect(rng, n), _sample_rect(rng, n)
        if gap_disjoint(a, b):
            return TwoRec.two(a, b)


def sample_scenario(klass: str, kind: str, grid: int, seed: int):
    """One (h0, h*) pair for the given scenario cell, uniform over the
    designated subclasses (rejection sampling enforces 2-Rec disjointness)."""
    rng = random.Random(seed)
    if klass == "lattice":
        if kind.startswith("diag"):
            if kind == "diag":
                a, b = 2, grid - 2
            else:
                _, a, b = kind.split(":")
                a, b = int(a), int(b)
            if not 0 < a < b <= grid - 2:
                raise ValueError(f"diagonal {a},{b} invalid on {grid}-lattice")
            return (a, a), (b, b)
        if kind == "random":
            nodes = [(i, j) for i in range(grid) for j in range(grid)]
            h0 = rng.choice(nodes)
            h_star = rng.choice([v for v in nodes if v != h0])
            return h0, h_star
        raise ValueError(f"unknown lattice scenario {kind!r}")
    if kind == "H2to1-strip":
        # adaptivity-gap construction: h0 adds a 1-row strip of length
        # `grid` two rows below the target rectangle
        k = grid
        r1 = Rect(0, 0, k - 1, 0)
        r2 = Rect(0, 2, k - 1, 2)
        return TwoRec.two(r1, r2), TwoRec((r1,))
    if kind not in ("H1to1", "H1to2", "H2to1", "H2to2"):
        raise ValueError(f"unknown 2-Rec scenario {kind!r}")
    if grid < 4 and "2" in kind:
        raise ValueError(f"no disjoint pairs fit a {grid}x{grid} grid")
    samp = {"1": lambda: TwoRec((_sample_rect(rng, grid),)),
            "2": lambda: _sample_two(rng, grid)}
    while True:
        h0 = samp[kind[1]]()
        h_star = samp[kind[4]]()
        if h0 != h_star:
            return h0, h_star


def default_budget(klass: str, grid: int) -> int:
    if klass == "tworec":
        return math.ceil(0.6 * grid * grid)
    return 2 * grid * grid


def _make_domain(spec: ExperimentSpec, grid: int):
    if spec.klass == "lattice":
        return LatticeClass(grid)
    n = max(grid, 4) if spec.scenario == "H2to1-strip" else grid
    cap = 6 if spec.scenario == "H2to1-strip" else 8
    return TwoRecClass(n, enumeration_cap=cap)


def run_experiment(spec: ExperimentSpec, out_path=None, log=None):
    """Full factorial sweep; returns result rows and optionally writes CSV.

    Rows appear in deterministic spec order (grid, algorithm, epsilon,
    trial).  Cells whose teacher needs an enumeration the class caps out of
    are reported via ``log`` and skipped; the sweep continues.
    """
    rows = []
    for grid in spec.grid_sizes:
        domain = _make_domain(spec, grid)
        budget = default_budget(spec.klass, grid)
        for algo in spec.algorithms:
            for eps in spec.epsilons:
                needs_enum = eps > 0.0 or algo in _ENUMERATING
                if needs_enum and spec.klass == "tworec" \
                        and grid > domain.enumeration_cap:
                    if log is not None:
                        log(f"skip class={spec.klass} grid={grid} "
                            f"algorithm={algo} epsilon={eps}: enumeration "
                            f"cap {domain.enumeration_cap} exceeded")
                    continue
                for trial in range(spec.trials):
                    scen_seed = _derive_seed(spec.master_seed, spec.klass,
                                             spec.scenario, grid, trial)
                    run_seed = _derive_seed(spec.master_seed, spec.klass,
                                            spec.scenario, grid, algo, eps,
                                            trial)
                    h0, h_star = sample_scenario(spec.klass, spec.scenario,
                                                 grid, scen_seed)
                    teacher = make_teacher(algo, domain, h0, h_star,
                                           seed=run_seed,
                                           strict=(eps == 0.0))
                    noise = NoiseModel(eps, seed=run_seed + 1) if eps > 0.0 \
                        else None
                    trace = run_session(domain, teacher, h0, h_star, budget,
                                        tie_break=TieBreakPolicy.seeded(run_seed),
                                        noise=noise)
                    rows.append({
                        "class": spec.klass,
                        "scenario": spec.scenario,
                        "grid_size": grid,
                        "algorithm": algo,
                        "epsilon": eps,
                        "trial": trial,
                        "seed": run_seed,
                        "examples_used": len(trace.steps),
                        "reached": trace.reached_target(),
                    })
    if out_path is not None:
        write_csv(rows, out_path)
    return rows


def write_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_HEADER, lineterminator="\n")
        w.writeheader()
        for row in rows:
            out = dict(row)
            out["reached"] = "true" if row["reached"] else "false"
            w.writerow(out)
