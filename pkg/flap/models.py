"""
Модуль models.py

Радиальные функции на ℝ^N с метаданными о степенном поведении у нуля и на
бесконечности. Метаданные задают класс интегрируемости L¹_{μ_s} и критерий
усечения дальнего поля.
"""

import math
from typing import Callable, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from core.errors import MetadataError
from params.models import ProblemParams
from params.self_similar import c_p
from specfun.models import DimPair

# допустимый рост |v|/r^τ между пробными радиусами
SPOT_CHECK_GROWTH = 1e3
ORIGIN_SAMPLES = (1e-2, 1e-4, 1e-6)
INFINITY_SAMPLES = (1e2, 1e4, 1e6)


class RadialFunction(BaseModel):
    """
    v(|x|) с метаданными: |v| ≲ r^{tau_origin} у нуля, |v| ≲ r^{tau_infty} на ∞.
    При заданном cutoff функция равна нулю при r > cutoff; breaks: радиусы
    разрывов внутри носителя.
    Необязательные first/second: аналитические v', v''.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    evaluate: Callable[[float], float]
    tau_origin: float
    tau_infty: float
    cutoff: Optional[float] = None
    breaks: Tuple[float, ...] = ()
    first: Optional[Callable[[float], float]] = None
    second: Optional[Callable[[float], float]] = None
    label: str = ""

    def value(self, r: float) -> float:
        if self.cutoff is not None and r > self.cutoff:
            return 0.0
        return float(self.evaluate(r))

    def derivatives(self, r: float):
        """(v'(r), v''(r)): аналитические, иначе центральные разности с шагом max(1e−5, 1e−5·r)."""
        if self.first is not None and self.second is not None:
            return float(self.first(r)), float(self.second(r))
        h = max(1e-5, 1e-5 * r)
        if h >= 0.5 * r:
            h = 0.25 * r
        plus, mid, minus = self.value(r + h), self.value(r), self.value(r - h)
        return (plus - minus) / (2.0 * h), (plus - 2.0 * mid + minus) / (h * h)

    def scaled(self, factor: float) -> "RadialFunction":
        return self.model_copy(update={
            "evaluate": lambda r, f=self.evaluate: factor * f(r),
            "first": None if self.first is None else (lambda r, f=self.first: factor * f(r)),
            "second": None if self.second is None else (lambda r, f=self.second: factor * f(r)),
            "label": f"{factor:g}*{self.label}",
        })

    def dilated(self, ell: float) -> "RadialFunction":
        """v_ℓ(r) = v(ℓr)."""
        return self.model_copy(update={
            "evaluate": lambda r, f=self.evaluate: f(ell * r),
            "first": None if self.first is None else (lambda r, f=self.first: ell * f(ell * r)),
            "second": None if self.second is None else (lambda r, f=self.second: ell * ell * f(ell * r)),
            "cutoff": None if self.cutoff is None else self.cutoff / ell,
            "breaks": tuple(b / ell for b in self.breaks),
            "label": f"{self.label}({ell:g}r)",
        })


def combine(alpha: float, u: RadialFunction, beta: float, v: RadialFunction) -> RadialFunction:
    """αu + βv с метаданными худшего из слагаемых."""
    cutoffs = [u.cutoff, v.cutoff]
    cutoff = None if None in cutoffs else max(cutoffs)
    breaks = tuple(sorted(set(u.breaks) | set(v.breaks) | {c for c in cutoffs if c is not None}))
    return RadialFunction(
        evaluate=lambda r: alpha * u.value(r) + beta * v.value(r),
        tau_origin=min(u.tau_origin, v.tau_origin),
        tau_infty=max(u.tau_infty, v.tau_infty),
        cutoff=cutoff,
        breaks=breaks,
        label=f"{alpha:g}*{u.label}+{beta:g}*{v.label}",
    )


def _ratios(v: RadialFunction, radii, tau: float):
    out = []
    for r in radii:
        value = abs(v.value(r))
        if not math.isfinite(value):
            raise MetadataError(f"{v.label or 'v'} is not finite at r={r}")
        out.append(value / r ** tau)
    return out


def check_metadata(d: DimPair, v: RadialFunction) -> None:
    """
    Проверяет tau_origin > −N и tau_infty < 2s (если нет усечения), затем
    сверяет заявленные показатели с пробными значениями.
    """
    if not v.tau_origin > -d.N:
        raise MetadataError(f"tau_origin={v.tau_origin} must exceed -N={-d.N}")
    if v.cutoff is None and not v.tau_infty < 2.0 * d.s:
        raise MetadataError(f"tau_infty={v.tau_infty} must be below 2s={2.0 * d.s}")
    inside = [r for r in ORIGIN_SAMPLES if v.cutoff is None or r < v.cutoff]
    if inside:
        ratios = _ratios(v, inside, v.tau_origin)
        if ratios[-1] > SPOT_CHECK_GROWTH * max(ratios[0], 1e-300):
            raise MetadataError(f"{v.label or 'v'} grows faster than r^{v.tau_origin} at the origin")
    if v.cutoff is None:
        ratios = _ratios(v, INFINITY_SAMPLES, v.tau_infty)
        if ratios[-1] > SPOT_CHECK_GROWTH * max(ratios[0], 1e-300):
            raise MetadataError(f"{v.label or 'v'} decays slower than r^{v.tau_infty} at infinity")


def constant_function(value: float = 1.0, cutoff: Optional[float] = None) -> RadialFunction:
    return RadialFunction(
        evaluate=lambda r: value, first=lambda r: 0.0, second=lambda r: 0.0,
        tau_origin=0.0, tau_infty=0.0, cutoff=cutoff, label=f"const({value:g})",
    )


def zero_function() -> RadialFunction:
    return RadialFunction(evaluate=lambda r: 0.0, first=lambda r: 0.0, second=lambda r: 0.0,
                          tau_origin=0.0, tau_infty=-1.0, label="0")


def power_function(tau: float, coefficient: float = 1.0, cutoff: Optional[float] = None) -> RadialFunction:
    """coefficient·r^τ, при необходимости обрезанная за cutoff."""
    return RadialFunction(
        evaluate=lambda r: coefficient * r ** tau,
        first=lambda r: coefficient * tau * r ** (tau - 1.0),
        second=lambda r: coefficient * tau * (tau - 1.0) * r ** (tau - 2.0),
        tau_origin=tau, tau_infty=tau, cutoff=cutoff, label=f"r^{tau:g}",
    )


def capped_power_function(tau: float, cap: float) -> RadialFunction:
    """min(r^τ, cap) для τ < 0: ограниченный след с заданной степенной оценкой."""
    return RadialFunction(
        evaluate=lambda r: min(r ** tau, cap),
        tau_origin=0.0, tau_infty=tau, breaks=(cap ** (1.0 / tau),), label=f"min(r^{tau:g},{cap:g})",
    )


def u_p_function(pp: ProblemParams, scale: float = 1.0, cutoff: Optional[float] = None) -> RadialFunction:
    """scale·U_p = scale·c_p r^{τ_p}."""
    f = power_function(pp.tau_p, coefficient=scale * c_p(pp), cutoff=cutoff)
    return f.model_copy(update={"label": f"{scale:g}*U_p"})


def smooth_step(t: np.ndarray) -> np.ndarray:
    """C^∞ переход от 1 (t ≤ 0) к 0 (t ≥ 1)."""
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        left = np.where(t < 1.0, np.exp(-1.0 / np.maximum(1.0 - t, 1e-300)), 0.0)
        right = np.where(t > 0.0, np.exp(-1.0 / np.maximum(t, 1e-300)), 0.0)
    return left / (left + right)
