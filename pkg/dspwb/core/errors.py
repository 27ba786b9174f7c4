class WorkbenchError(Exception):
    """Базовая ошибка рабочего места"""


class ParameterError(WorkbenchError, ValueError):
    pass


class ConfigurationError(WorkbenchError):
    pass


class ShapeError(WorkbenchError, ValueError):
    pass


class DegenerateSignalError(WorkbenchError):
    pass


class DesignError(WorkbenchError, ValueError):
    """Недопустимые параметры проектирования фильтра"""


class UnsupportedRuleError(WorkbenchError):
    pass


class DivergentProductError(WorkbenchError):
    """Произведение двух импульсов на одной частоте"""


class NoPeakError(WorkbenchError):
    pass


class InsufficientPeriodicityError(WorkbenchError):
    pass


class UndefinedFeatureError(WorkbenchError):
    def __init__(self, feature: str, reason: str):
        self.feature = feature
        super().__init__(f"{feature} is undefined: {reason}")


class InsufficientLabelsError(WorkbenchError):
    pass


class ParseError(WorkbenchError):
    """Ошибка разбора файла; сообщение указывает смещение или строку"""

    def __init__(self, source: str, location: str, reason: str):
        self.source = source
        self.location = location
        super().__init__(f"{source}: {location}: {reason}")
