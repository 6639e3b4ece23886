from .lab_run_service import LabRunService, RunOutcome
from .oracle_service import OracleService
from .report_service import ReportService
from .sweep_service import SweepService
from .verification_service import VerificationService
