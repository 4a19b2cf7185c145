# utils/config.py

import os
from dataclasses import dataclass
from dotenv import load_dotenv

load_dotenv()


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"Environment variable {name} must be an integer, got '{raw}'")


@dataclass(frozen=True)
class Settings:
    threads: int
    max_arity: int
    max_basis: int
    max_degree: int
    curvature_cutoff: int


def get_settings() -> Settings:
    """Reads the workbench settings from the environment (and .env, if present)."""
    return Settings(
        threads=max(1, _int_env("WORKBENCH_THREADS", 4)),
        max_arity=_int_env("WORKBENCH_MAX_ARITY", 7),
        max_basis=_int_env("WORKBENCH_MAX_BASIS", 20000),
        max_degree=_int_env("WORKBENCH_MAX_DEGREE", 8),
        curvature_cutoff=_int_env("WORKBENCH_CURVATURE_CUTOFF", 6),
    )
