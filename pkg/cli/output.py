"""
Модуль output.py

Машиночитаемые выходы CLI: CSV (заголовок, ',', LF, 17 значащих цифр) и JSON
(UTF-8, отсортированные ключи, неконечные числа как null).
"""

import json
import math
import os
from enum import Enum
from typing import Any

import numpy as np
import pandas as pd
from pydantic import BaseModel

FLOAT_FORMAT = "%.17g"


def to_jsonable(obj: Any) -> Any:
    """Приводит pydantic-модели, массивы numpy и Enum к типам json; nan/inf → None."""
    if isinstance(obj, BaseModel):
        return to_jsonable(obj.model_dump(by_alias=True))
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(key): to_jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(value) for value in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return value if math.isfinite(value) else None
    return obj


def dumps_json(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, ensure_ascii=False, allow_nan=False, indent=2)


def write_json(obj: Any, out_dir: str, name: str) -> str:
    """Пишет JSON в out_dir/name и возвращает путь."""
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dumps_json(obj))
        f.write("\n")
    return path


def write_csv(df: pd.DataFrame, out_dir: str, name: str) -> str:
    """Пишет таблицу без индекса с round-trip форматом чисел."""
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    df.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n", na_rep="nan")
    return path
