from __future__ import annotations

from typing import Any

import numpy as np
from django.core.exceptions import ValidationError


def frozen_array(values: Any, dtype: Any, shape: tuple[int, ...], name: str) -> np.ndarray:
    """Copy values into a read-only array of the given shape, rejecting NaN and infinities."""
    try:
        arr = np.array(values, dtype=dtype)
    except (TypeError, ValueError) as e:
        msg = f"{name} is not numeric: {e}"
        raise ValidationError(msg) from e
    if arr.shape != shape:
        msg = f"{name} must have shape {shape}, got {arr.shape}"
        raise ValidationError(msg)
    if not np.all(np.isfinite(arr)):
        msg = f"{name} contains non-finite values"
        raise ValidationError(msg)
    arr.setflags(write=False)
    return arr


def finite_float(value: Any, name: str) -> float:
    try:
        number = float(value)
    except (TypeError, ValueError) as e:
        msg = f"{name} is not a real number: {value!r}"
        raise ValidationError(msg) from e
    if not np.isfinite(number):
        msg = f"{name} must be finite, got {number}"
        raise ValidationError(msg)
    return number
