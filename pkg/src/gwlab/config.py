"""Tunable limits. Change them with :func:`configure` or the ``settings`` object."""

from __future__ import annotations

import contextlib
import dataclasses
from collections.abc import Iterator


@dataclasses.dataclass
class Settings:
    max_tower_height: int = 3
    max_torsion_exponent: int = 8
    max_vars: int = 12
    # square-root tests spent when hunting for an isometry witness over number-field towers
    witness_budget: int = 2000
    trial_division_bound: int = 10_000


settings = Settings()


def configure(**changes: int) -> None:
    for key, value in changes.items():
        if not hasattr(settings, key):
            raise AttributeError(f"unknown setting {key!r}")
        setattr(settings, key, value)


@contextlib.contextmanager
def override(**changes: int) -> Iterator[Settings]:
    saved = dataclasses.asdict(settings)
    configure(**changes)
    try:
        yield settings
    finally:
        configure(**saved)
