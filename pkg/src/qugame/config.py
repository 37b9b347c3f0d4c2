"""Run configuration shared by the CLI and the report builders."""
from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field

DEFAULT_SEED = 1729
SEED_ENV = "QUGAME_SEED"


def default_seed():
    """``QUGAME_SEED`` if set, else :data:`DEFAULT_SEED`."""
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_SEED
    try:
        return int(raw, 0)
    except ValueError:
        raise ValueError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


@dataclass
class RunConfig:
    subcommand: str
    inputs: dict = field(default_factory=dict)
    norm_tol: float = 1e-9
    convergence_tol: float = 1e-8
    reconstruction_tol: float = 1e-10
    max_iter: int = 1000
    grid_density: int | None = None
    seeds: int | None = None
    seed: int = DEFAULT_SEED
    output: str | None = None

    def __post_init__(self):
        for name in ("norm_tol", "convergence_tol", "reconstruction_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    def to_dict(self):
        return asdict(self)
