from .residual_report import FAIL, INCONCLUSIVE, PASS, ResidualReport

__all__ = ["FAIL", "INCONCLUSIVE", "PASS", "ResidualReport"]
