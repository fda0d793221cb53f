import math
from typing import Any

import numpy as np
from rest_framework import serializers

from spinor.domain import Spinor


def real_list(values: Any) -> Any:
    """Nested Python floats from an array; negative zero is rendered as 0.0."""
    arr = np.asarray(values, dtype=float)
    return (arr + 0.0).tolist()


def complex_pairs(values: Any) -> Any:
    """Nested [re, im] pairs from a complex array or scalar."""
    arr = np.asarray(values, dtype=complex)
    stacked = np.stack([arr.real + 0.0, arr.imag + 0.0], axis=-1)
    return stacked.tolist()


class FiniteFloatField(serializers.FloatField):
    default_error_messages = {
        "non_finite": "A finite number is required.",
    }

    def to_internal_value(self, data: Any) -> float:
        if isinstance(data, bool):
            self.fail("invalid")
        value = super().to_internal_value(data)
        if not math.isfinite(value):
            self.fail("non_finite")
        return value


class ComplexField(serializers.Field):
    default_error_messages = {
        "invalid": "Expected a complex number as a two-element array [re, im].",
        "non_finite": "Complex components must be finite.",
    }

    def to_internal_value(self, data: Any) -> complex:
        if not isinstance(data, (list, tuple)) or len(data) != 2:
            self.fail("invalid")
        if any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in data):
            self.fail("invalid")
        re, im = (float(v) for v in data)
        if not (math.isfinite(re) and math.isfinite(im)):
            self.fail("non_finite")
        return complex(re, im)

    def to_representation(self, value: Any) -> list[float]:
        return complex_pairs(value)


class FixedLengthListField(serializers.ListField):
    """List with an exact length, checked before conversion of the items."""

    length = 4

    def __init__(self, length: int | None = None, **kwargs: Any) -> None:
        if length is not None:
            self.length = length
        super().__init__(**kwargs)

    def to_internal_value(self, data: Any) -> Any:
        values = super().to_internal_value(data)
        if len(values) != self.length:
            msg = f"Expected exactly {self.length} items, got {len(values)}."
            raise serializers.ValidationError(msg)
        return values


class SpinorComponentsField(FixedLengthListField):
    """Four [re, im] pairs, returned as a Spinor."""

    def __init__(self, **kwargs: Any) -> None:
        super().__init__(length=4, child=ComplexField(), **kwargs)

    def to_internal_value(self, data: Any) -> Spinor:
        return Spinor(np.array(super().to_internal_value(data), dtype=complex))

    def to_representation(self, value: Any) -> Any:
        return complex_pairs(Spinor.coerce(value).components)


class RealVectorField(FixedLengthListField):
    """Fixed-length list of finite floats, returned as a numpy array."""

    def __init__(self, length: int = 4, **kwargs: Any) -> None:
        super().__init__(length=length, child=FiniteFloatField(), **kwargs)

    def to_internal_value(self, data: Any) -> np.ndarray:
        return np.array(super().to_internal_value(data), dtype=float)

    def to_representation(self, value: Any) -> Any:
        return real_list(value)
