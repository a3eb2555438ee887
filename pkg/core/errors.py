class FraclabError(Exception):
    """Базовое исключение для ошибок численной лаборатории."""
    pass

class DomainError(FraclabError):
    """Аргумент вне математической области определения."""
    pass

class MetadataError(DomainError):
    """Метаданные RadialFunction (показатели на 0 и ∞) недопустимы."""
    pass

class UnsupportedDimensionError(DomainError):
    """Размерность N не поддерживается данной операцией."""
    pass

class SingularityError(DomainError):
    """Ядро вычисляется на своей диагонали."""
    pass

class RegimeError(FraclabError):
    """В данном режиме параметров объект не существует."""

    def __init__(self, message: str, clause: str = ""):
        super().__init__(message)
        self.clause = clause

class ConvergenceError(FraclabError):
    """Исчерпан бюджет итераций или квадратурных панелей."""
    pass

class ConsistencyError(FraclabError):
    """Два независимых пути вычисления расходятся сильнее допуска."""
    pass
