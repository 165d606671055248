"""Error handling utilities."""

import logging
import sys
from functools import wraps
from typing import Callable

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


class MultBoundError(Exception):
    """Base exception for all domain errors."""

    exit_code = EXIT_CHECK_FAILED

    def __init__(self, message: str, user_message: str = "❌ Произошла ошибка"):
        self.message = message
        self.user_message = user_message
        super().__init__(message)


class ValidationError(MultBoundError):
    """Input validation failed."""

    exit_code = EXIT_USAGE

    def __init__(self, message: str, user_message: str | None = None):
        super().__init__(message, user_message or f"❌ Некорректные параметры: {message}")


class InfeasibleStateError(ValidationError):
    """Bound state (i, M, a, b) violates the stratum constraints."""

    def __init__(self, i: int, M: int, a: int, b: int):
        self.state = (i, M, a, b)
        super().__init__(
            f"infeasible state (i={i}, M={M}, a={a}, b={b})",
            f"❌ Состояние (i={i}, M={M}, a={a}, b={b}) недопустимо: "
            f"нужно 1 ≤ i ≤ M, 0 ≤ b ≤ i, a ≤ M и b(M+b−i) ≤ a",
        )


class SingularMatrixError(ValidationError):
    """Transformation matrix is not invertible over the active field."""

    def __init__(self, message: str = "matrix is singular"):
        super().__init__(message, "❌ Матрица вырождена над выбранным полем")


class ParseError(MultBoundError):
    """System JSON could not be parsed."""

    exit_code = EXIT_USAGE

    def __init__(self, message: str):
        super().__init__(message, f"❌ Не удалось разобрать систему: {message}")


class SamplingError(MultBoundError):
    """No generic draw was found within the retry budget."""

    def __init__(self, message: str):
        super().__init__(message, f"❌ Не удалось получить общую систему: {message}")


class OracleError(MultBoundError):
    """Multiplicity oracle was called outside its contract."""

    def __init__(self, message: str):
        super().__init__(message, f"❌ Ошибка вычисления кратности: {message}")


class OptimizerDisagreementError(MultBoundError):
    """Two independent omega optimizers disagree beyond tolerance."""

    def __init__(self, message: str):
        super().__init__(message, f"❌ Оптимизаторы ω расходятся: {message}")


class CheckFailedError(MultBoundError):
    """A verification check found a counterexample."""

    def __init__(self, check: str, counterexample: str):
        self.check = check
        self.counterexample = counterexample
        super().__init__(
            f"check {check} failed: {counterexample}",
            f"❌ Проверка {check} не пройдена: {counterexample}",
        )


def handle_errors(func: Callable[..., int]) -> Callable[..., int]:
    """Decorator turning domain errors of a CLI handler into exit codes."""

    @wraps(func)
    def wrapper(*args, **kwargs) -> int:
        try:
            return func(*args, **kwargs)
        except MultBoundError as e:
            logger.error(f"{type(e).__name__} in {func.__name__}: {e.message}")
            print(e.user_message, file=sys.stderr)
            return e.exit_code
        except Exception as e:
            logger.exception(f"Unexpected error in {func.__name__}: {e}")
            print("❌ Произошла непредвиденная ошибка", file=sys.stderr)
            return EXIT_CHECK_FAILED

    return wrapper
