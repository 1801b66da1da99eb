"""Bundled example problems and known-good (and known-bad) point sequences.

``xlnx``: a sum of x*ln(x)-shaped terms against a third one on [0, 0.04],
with both increasing. ``lncubes``: sums of ln(k)^3 / k^s terms on [0, 1],
with both sides decreasing; ``lncubes_alt`` regroups the same inequality so a
much shorter point sequence suffices. The ``gap17``/``gap19`` sequences for
``xlnx`` differ in a single point; one verifies and the other fails its
second chain comparison, which makes the pair a useful regression fixture.
"""

from __future__ import annotations

import json
from importlib import resources

from ..dif_core import DifProblem, TauSequence

PROBLEMS = ("xlnx", "lncubes", "lncubes_alt")
TAU_SEQUENCES = (
    "xlnx_six_point",
    "xlnx_grid5",
    "xlnx_gap17",
    "xlnx_gap19",
    "lncubes_grid02",
    "lncubes_alt_six_point",
)

# Which problem each sequence belongs to, and whether it verifies.
TAU_INDEX = {
    "xlnx_six_point": ("xlnx", True),
    "xlnx_grid5": ("xlnx", True),
    "xlnx_gap17": ("xlnx", True),
    "xlnx_gap19": ("xlnx", False),
    "lncubes_grid02": ("lncubes", True),
    "lncubes_alt_six_point": ("lncubes_alt", True),
}


def _root():
    return resources.files(__package__)


def problem_path(name: str) -> str:
    if name not in PROBLEMS:
        raise KeyError(f"unknown problem fixture {name!r}")
    return str(_root() / f"{name}.json")


def tau_path(name: str) -> str:
    if name not in TAU_SEQUENCES:
        raise KeyError(f"unknown tau fixture {name!r}")
    return str(_root() / "tau" / f"{name}.json")


def load_problem(name: str, **options) -> DifProblem:
    data = json.loads((_root() / f"{name}.json").read_text(encoding="utf-8"))
    merged = dict(data.get("options", {}))
    merged.update(options)
    return DifProblem.from_text(
        data["g1"], data["g2"], tuple(data["interval"]), var=data.get("var"), **merged
    )


def load_tau(name: str) -> TauSequence:
    values = json.loads((_root() / "tau" / f"{name}.json").read_text(encoding="utf-8"))
    return TauSequence.of(values)
