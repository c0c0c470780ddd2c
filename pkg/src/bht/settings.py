from dataclasses import dataclass


@dataclass(frozen=True)
class Settings:
    """Numerical tolerances shared across the package."""

    sum_tol: float = 1e-9
    bisection_tol: float = 1e-12
    level_merge_tol: float = 1e-12
    enumeration_cap: int = 5_000_000


DEFAULT_SETTINGS = Settings()
