import os
from typing import Dict, Optional

from dotenv import dotenv_values, load_dotenv

# Загружаем переменные из config/.env
dotenv_path = os.path.join(os.path.dirname(__file__), '.env')
load_dotenv(dotenv_path=dotenv_path)


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    return float(raw) if raw not in (None, "") else default


# --- Каталоги ---
OUTPUT_DIR = os.getenv("FRACLAB_OUTPUT_DIR", "output")
LOG_DIR = os.getenv("FRACLAB_LOG_DIR", "logs")

# --- Логирование ---
LOG_LEVEL = os.getenv("FRACLAB_LOG_LEVEL", "INFO").upper()
LOG_JSON = os.getenv("FRACLAB_LOG_JSON", "False").lower() == "true"

# --- Параллелизм sweep ---
THREADS = int(os.getenv("FRACLAB_THREADS", "0") or 0) or (os.cpu_count() or 1)

# --- Допуски по умолчанию ---
QUAD_TOL = _env_float("FRACLAB_QUAD_TOL", 1e-10)
PROFILE_TOL = _env_float("FRACLAB_PROFILE_TOL", 1e-10)
CROSS_CHECK_TOL = _env_float("FRACLAB_CROSS_CHECK_TOL", 1e-3)
CONORMAL_RTOL = _env_float("FRACLAB_CONORMAL_RTOL", 1e-6)
NEWTON_TOL = _env_float("FRACLAB_NEWTON_TOL", 1e-8)

# --- Сетки по умолчанию ---
PROFILE_GRID = int(os.getenv("FRACLAB_PROFILE_GRID", "128"))
CYLINDER_NT = int(os.getenv("FRACLAB_CYLINDER_NT", "64"))
CYLINDER_NPHI = int(os.getenv("FRACLAB_CYLINDER_NPHI", "64"))
DIRAC_NODES = int(os.getenv("FRACLAB_DIRAC_NODES", "400"))

TOOL_VERSION = "0.1.0"


def load_run_config(path: Optional[str]) -> Dict[str, str]:
    """
    Читает файл запуска со строками `key = value` (формат .env).
    Ключи приводятся к виду флагов CLI: нижний регистр, '_' вместо '-'.
    """
    if not path:
        return {}
    if not os.path.exists(path):
        raise FileNotFoundError(f"config file not found: {path}")
    values = dotenv_values(path)
    return {key.strip().lower().replace("-", "_"): value for key, value in values.items() if value is not None}
