"""Search and memory bounds.

Every bound can be overridden through an environment variable named
``TRIFACT_BOUND_<FIELD>`` (upper case), e.g. ``TRIFACT_BOUND_AUTOMORPHISM=200``.
"""
from __future__ import annotations

import dataclasses
import os


@dataclasses.dataclass(frozen=True)
class Bounds:
    associativity_full: int = 512
    dense_table: int = 2048
    automorphism: int = 120
    isomorphism: int = 256
    normal_subgroups: int = 128
    all_subgroups: int = 256
    enumeration: int = 8
    decomposition_cache: int = 4096
    sample_triples: int = 1000

    def __post_init__(self):
        for field in dataclasses.fields(self):
            if getattr(self, field.name) <= 0:
                raise ValueError(f"bound {field.name} must be positive")

    @classmethod
    def from_env(cls, environ=None) -> "Bounds":
        environ = os.environ if environ is None else environ
        kwargs = {}
        for field in dataclasses.fields(cls):
            key = "TRIFACT_BOUND_" + field.name.upper()
            if key in environ:
                kwargs[field.name] = int(environ[key])
        return cls(**kwargs)


BOUNDS = Bounds.from_env()


def set_bounds(**overrides) -> Bounds:
    """Replace the process-wide bounds; returns the previous value."""
    global BOUNDS
    previous = BOUNDS
    BOUNDS = dataclasses.replace(BOUNDS, **overrides)
    return previous
