from typing import Any, Dict, List

from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    """Результат одного случая проверки."""
    check: str
    passed: bool
    residual: float
    tolerance: float
    details: Dict[str, Any] = Field(default_factory=dict)


class SuiteReport(BaseModel):
    suite: str
    passed: bool
    params: Dict[str, Any] = Field(default_factory=dict)
    qc_results: List[CheckResult] = Field(default_factory=list)
    inconsistencies: List[Dict[str, str]] = Field(default_factory=list)
