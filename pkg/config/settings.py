import math
import os
from pathlib import Path

from decouple import config

# ==================== RUTAS BASE ====================
BASE_DIR = Path(__file__).resolve().parent.parent

# ==================== SECRETOS & DEBUG ====================
# Django lo exige aunque el laboratorio no sirva peticiones
SECRET_KEY = config("SECRET_KEY", default="pseudolab-local-key")
DEBUG = config("DEBUG", default=False, cast=bool)
ALLOWED_HOSTS = []

# ==================== APLICACIONES ====================
# Solo la capa de presentación: aporta el comando `lab`
INSTALLED_APPS = [
    "presentation",
]

# Sin base de datos: todo el estado vive en los informes que se escriben
DATABASES = {}

# ==================== LOCALIZACIÓN ====================
LANGUAGE_CODE = "es-pe"
TIME_ZONE = "America/Lima"
USE_I18N = True
USE_TZ = True

# ==================== LABORATORIO ====================
LAB_OUTPUT_DIR = config("LAB_OUTPUT_DIR", default=str(BASE_DIR / "reports"))
LAB_DEFAULT_SEED = config("LAB_DEFAULT_SEED", default=20240601, cast=int)

# Red de modos por defecto (caja de longitud 2π, un modo por unidad de momento)
LAB_NUM_MODES = config("LAB_NUM_MODES", default=16, cast=int)
LAB_BOX_LENGTH = config("LAB_BOX_LENGTH", default=2 * math.pi, cast=float)
LAB_MASS = config("LAB_MASS", default=1.0, cast=float)
LAB_HBAR = config("LAB_HBAR", default=1.0, cast=float)
LAB_TIME = config("LAB_TIME", default=1.0, cast=float)

# Tolerancias
LAB_TOL_COEFF = config("LAB_TOL_COEFF", default=1e-12, cast=float)
LAB_TOL_SECOND_ORDER = config("LAB_TOL_SECOND_ORDER", default=1e-10, cast=float)
LAB_TOL_NUMERIC = config("LAB_TOL_NUMERIC", default=1e-6, cast=float)
LAB_TOL_SPREAD = config("LAB_TOL_SPREAD", default=1e-9, cast=float)
LAB_TOL_RELATION5 = config("LAB_TOL_RELATION5", default=1e-2, cast=float)

# Malla del oráculo QM
LAB_QM_Q_MIN = config("LAB_QM_Q_MIN", default=-12.0, cast=float)
LAB_QM_Q_MAX = config("LAB_QM_Q_MAX", default=12.0, cast=float)
LAB_QM_POINTS = config("LAB_QM_POINTS", default=1024, cast=int)
LAB_QM_DT = config("LAB_QM_DT", default=1e-3, cast=float)

# ==================== LOGGING ====================
LOG_DIR = BASE_DIR / "logs"

DISABLE_FILE_LOGGING = os.getenv("DISABLE_FILE_LOGGING") == "1"
if not DISABLE_FILE_LOGGING:
    os.makedirs(LOG_DIR, exist_ok=True)

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {module} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
        **(
            {}
            if DISABLE_FILE_LOGGING
            else {
                "file": {
                    "class": "logging.handlers.RotatingFileHandler",
                    "filename": LOG_DIR / "pseudolab.log",
                    "maxBytes": 1024 * 1024 * 5,
                    "backupCount": 5,
                    "formatter": "verbose",
                }
            }
        ),
    },
    "root": {
        "handlers": ["console"] if DISABLE_FILE_LOGGING else ["console", "file"],
        "level": config("LAB_LOG_LEVEL", default="INFO"),
    },
}

if os.getenv("PYTEST_CURRENT_TEST"):
    LOGGING_CONFIG = None
