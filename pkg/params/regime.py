"""
Классификация режима (N, s, p, ε) по структуре множества положительных
автомодельных решений.
"""

from fractions import Fraction

from params.exponents import critical_fractions
from params.models import ProblemParams, Regime

# Формулировки утверждений, которые CLI печатает при отказе
CLAUSES = {
    "ef_supercritical": "E_1^+ = {0}: eps=+1 with p >= N/(N-2s) admits only the trivial solution",
    "ef_weak": "E_1^+ = {0}: eps=+1 with p <= 1+2s/N admits only the trivial solution",
    "le_subcritical": "E_-1^+ = {0}: eps=-1 with p < N/(N-2s) admits only the trivial solution",
    "serrin": "p = N/(N-2s): C_s(tau_p) = 0, the only self-similar solutions are constants on the half-sphere",
    "sobolev": "p = (N+2s)/(N-2s): conformal case, not treated",
    "dirac_serrin": "p >= N/(N-2s): the Dirac mass problem admits only the trivial solution",
}


def compare_exponent(p: float, critical: Fraction) -> int:
    """
    Сравнение p с критическим значением: 0, если p совпадает с float(critical)
    бит-в-бит, иначе знак точной разности.
    """
    if p == float(critical):
        return 0
    diff = Fraction(p) - critical
    return 1 if diff > 0 else -1


def regime(pp: ProblemParams) -> Regime:
    crit = critical_fractions(pp.d)
    serrin = compare_exponent(pp.p, crit["p_serrin"])
    sobolev = compare_exponent(pp.p, crit["p_sobolev"])
    if serrin == 0:
        return Regime.SERRIN_CRITICAL
    if sobolev == 0:
        return Regime.SOBOLEV_CRITICAL
    if pp.eps == 1:
        if serrin > 0 or compare_exponent(pp.p, crit["p_weak"]) <= 0:
            return Regime.TRIVIAL_ONLY
        return Regime.UNIQUE_PROFILE_EF
    if serrin < 0:
        return Regime.TRIVIAL_ONLY
    return Regime.UNIQUE_PROFILE_LE


def regime_clause(pp: ProblemParams) -> str:
    """Текст утверждения, объясняющего отсутствие профиля (пустая строка, если профиль есть)."""
    label = regime(pp)
    if label == Regime.SERRIN_CRITICAL:
        return CLAUSES["serrin"]
    if label == Regime.SOBOLEV_CRITICAL:
        return CLAUSES["sobolev"]
    if label != Regime.TRIVIAL_ONLY:
        return ""
    if pp.eps == -1:
        return CLAUSES["le_subcritical"]
    if compare_exponent(pp.p, critical_fractions(pp.d)["p_weak"]) <= 0:
        return CLAUSES["ef_weak"]
    return CLAUSES["ef_supercritical"]
