"""Bundled example tables.

Three small data sets ship with the package: fatal police shootings
cross-classified by race and gender, a two-arm vaccine trial classified
by infection status, and paired quality-of-life / physical-health survey
responses on five ordered levels.
"""

from __future__ import annotations

import dataclasses
from importlib import resources
from pathlib import Path

from .io import parse_counts_csv
from .table import ContingencyTable

__all__ = [
    "fixture_path",
    "police_shootings",
    "vaccine_trial",
    "life_quality_survey",
]

_FIXTURES = ("police_shootings", "vaccine_trial", "life_quality_survey")


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled CSV fixture."""
    if name not in _FIXTURES:
        raise ValueError(f"unknown fixture {name!r}; available: {_FIXTURES}")
    return Path(str(resources.files("cattab").joinpath("data", f"{name}.csv")))


def police_shootings() -> ContingencyTable:
    """2x2 counts of fatal police shootings, race (Non-White/White) by
    gender (Woman/Man); nothing fixed by design (Poisson sampling)."""
    return parse_counts_csv(fixture_path("police_shootings"))


def vaccine_trial() -> ContingencyTable:
    """2x2 counts from a two-arm vaccine trial, treatment group by
    infection status; equal row totals fixed by the randomized design."""
    return parse_counts_csv(fixture_path("vaccine_trial"))


def life_quality_survey() -> ContingencyTable:
    """5x5 counts of quality-of-life by physical-health survey ratings;
    both axes ordinal (Excellent .. Poor)."""
    table = parse_counts_csv(fixture_path("life_quality_survey"))
    return dataclasses.replace(table, row_ordinal=True, col_ordinal=True)
