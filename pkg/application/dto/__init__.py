from .run_config import TOLERANCE_KEYS, RunConfig, default_tolerances

__all__ = ["TOLERANCE_KEYS", "RunConfig", "default_tolerances"]
