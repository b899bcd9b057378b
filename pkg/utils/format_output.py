"""Строковое представление скаляров и параметров для отчётов."""

from fractions import Fraction
from typing import Dict, Optional

import mpmath

from utils.scalars import ScalarLike, is_exact, to_mpf


def format_scalar(value: ScalarLike, digits: int, as_float: bool = False) -> str:
    """Форматирует скаляр: "p/q" для точных значений, nstr(x, digits) для вещественных."""
    if is_exact(value) and not as_float:
        q = Fraction(value)
        if q.denominator == 1:
            return str(q.numerator)
        return f"{q.numerator}/{q.denominator}"
    return mpmath.nstr(to_mpf(value), digits)


def format_optional(value: Optional[ScalarLike], digits: int) -> Optional[str]:
    if value is None:
        return None
    return format_scalar(value, digits)


def format_params(params: Dict[str, str]) -> str:
    """Параметры в виде k=v;k=v (для CSV)."""
    return ";".join(f"{key}={value}" for key, value in params.items())
