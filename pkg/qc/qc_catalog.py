from enum import Enum


class Inconsistency(str, Enum):
    """
    Справочник расхождений печатных формул с вычисляемыми величинами.
    Значения попадают в ключ `inconsistencies` JSON-отчётов.
    """
    # c_{N,s} без множителя s; пример 1/√π при N=1, s=1/2, а сама печатная формула даёт 2/π
    C_FRAC_NORMALIZATION = "C_FRAC_NORMALIZATION"
    # −lim z^{1−2s}u_z нормированного продолжения равен κ_s(−Δ)^s v
    EXTENSION_CONSTANT = "EXTENSION_CONSTANT"
    # знак граничного члена энергии: +εκ_s/(p+1), не −ε/(p+1)
    ENERGY_BOUNDARY_SIGN = "ENERGY_BOUNDARY_SIGN"
    # печатная ветвь c_p берёт дробную степень отрицательного числа
    C_P_SIGN_BRANCH = "C_P_SIGN_BRANCH"
    # печатная формула p* не совпадает с корнем Q(X)
    P_STAR_PRINTED = "P_STAR_PRINTED"
    # печатная константа ядра Пуассона не нормирует его массу
    POISSON_CONSTANT = "POISSON_CONSTANT"
    # при Λ < 0 профиль Лейна–Эмдена убывает по φ к оси, а не возрастает
    MONOTONICITY_WORDING = "MONOTONICITY_WORDING"

    def __str__(self) -> str:
        return self.value


DESCRIPTIONS = {
    Inconsistency.C_FRAC_NORMALIZATION: "printed c_{N,s} lacks the factor s; the normalizing constant is used",
    Inconsistency.EXTENSION_CONSTANT: "weighted conormal limit equals kappa_s times the fractional Laplacian",
    Inconsistency.ENERGY_BOUNDARY_SIGN: "energy boundary term enters as +eps*kappa_s/(p+1)|w(t,0)|^(p+1)",
    Inconsistency.C_P_SIGN_BRANCH: "printed c_p branch is undefined; c_p^(p-1) = -eps*C_s(tau_p) is used",
    Inconsistency.P_STAR_PRINTED: "printed p* differs from the positive root of Q(X)",
    Inconsistency.POISSON_CONSTANT: "printed Poisson constant does not give unit kernel mass",
    Inconsistency.MONOTONICITY_WORDING: "Lane-Emden profiles decrease in phi when Lambda < 0",
}


def describe(items) -> list:
    """Список {'code', 'description'} для JSON-отчёта."""
    return [{"code": str(item), "description": DESCRIPTIONS[item]} for item in items]
