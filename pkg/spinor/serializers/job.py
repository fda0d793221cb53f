from typing import Any

import numpy as np
from rest_framework import serializers

from spinor.domain import ConnectionField, GaugeData, LounestoLabel, Path, Spinor
from spinor.domain.connection import tensor_from_dense, tensor_from_entries
from spinor.serializers.fields import FiniteFloatField, RealVectorField, SpinorComponentsField


COMMANDS = ("classify", "bilinears", "fierz", "polar", "dirac-check", "flagpole-matrix", "expand")
SPINOR_COMMANDS = ("classify", "bilinears", "fierz", "polar")


class TensorEntrySerializer(serializers.Serializer):
    """One (i, j, μ) component of an antisymmetric tensor; the (j, i, μ) partner is implied."""

    i = serializers.IntegerField(min_value=0, max_value=3)
    j = serializers.IntegerField(min_value=0, max_value=3)
    mu = serializers.IntegerField(min_value=0, max_value=3)
    value = FiniteFloatField()

    def validate(self, attrs: dict[str, Any]) -> dict[str, Any]:
        if attrs["i"] == attrs["j"]:
            msg = f"Entry ({attrs['i']}, {attrs['j']}, {attrs['mu']}) lies on the diagonal of an antisymmetric tensor"
            raise serializers.ValidationError(msg)
        return attrs


def _tensor(attrs: dict[str, Any], dense_key: str, entries_key: str) -> np.ndarray:
    if dense_key in attrs:
        return tensor_from_dense(attrs[dense_key])
    entries = attrs.get(entries_key, [])
    return tensor_from_entries((e["i"], e["j"], e["mu"], e["value"]) for e in entries)


class ConnectionSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=["constant", "linear"], default="constant")
    P = RealVectorField(required=False)
    R = RealVectorField(length=24, required=False)
    R_entries = TensorEntrySerializer(many=True, required=False)
    P_gradient = serializers.ListField(child=RealVectorField(), min_length=4, max_length=4, required=False)
    R_gradient = serializers.ListField(child=RealVectorField(), min_length=24, max_length=24, required=False)

    def validate(self, attrs: dict[str, Any]) -> dict[str, Any]:
        if "R" in attrs and "R_entries" in attrs:
            msg = "Give either the dense R components or R_entries, not both"
            raise serializers.ValidationError(msg)
        has_gradient = "P_gradient" in attrs or "R_gradient" in attrs
        if attrs["kind"] == "constant" and has_gradient:
            msg = "Gradient coefficients need kind 'linear'"
            raise serializers.ValidationError(msg)
        return attrs

    @staticmethod
    def build(attrs: dict[str, Any]) -> ConnectionField:
        p = attrs.get("P", np.zeros(4))
        r = _tensor(attrs, "R", "R_entries")
        if attrs["kind"] == "constant":
            return ConnectionField.constant(p, r)
        p_gradient = np.array(attrs.get("P_gradient", np.zeros((4, 4))), dtype=float)
        rows = np.array(attrs.get("R_gradient", np.zeros((24, 4))), dtype=float)
        r_gradient = np.stack([tensor_from_dense(rows[:, nu]) for nu in range(4)], axis=-1)
        return ConnectionField.linear(p, p_gradient, r, r_gradient)


class GaugeSerializer(serializers.Serializer):
    """Constant spin connection C and gauge potential A."""

    C = RealVectorField(length=24, required=False)
    C_entries = TensorEntrySerializer(many=True, required=False)
    A = RealVectorField(required=False)
    charge = FiniteFloatField(default=0.0)

    def validate(self, attrs: dict[str, Any]) -> dict[str, Any]:
        if "C" in attrs and "C_entries" in attrs:
            msg = "Give either the dense C components or C_entries, not both"
            raise serializers.ValidationError(msg)
        return attrs

    @staticmethod
    def build(attrs: dict[str, Any]) -> GaugeData:
        return GaugeData.constant(_tensor(attrs, "C", "C_entries"), attrs.get("A", np.zeros(4)), attrs["charge"])


class PathSerializer(serializers.Serializer):
    start = RealVectorField()
    end = RealVectorField()
    steps = serializers.IntegerField(min_value=1, default=1)

    @staticmethod
    def build(attrs: dict[str, Any]) -> Path:
        return Path(start=attrs["start"], end=attrs["end"], steps=attrs["steps"])


class SpinorFieldSerializer(serializers.Serializer):
    """A closed-form spinor field: constant, plane wave, or the expansion of `spinor` from `origin`."""

    kind = serializers.ChoiceField(choices=["constant", "plane-wave", "expansion"])
    spinor = SpinorComponentsField()
    momentum = RealVectorField(required=False)
    origin = RealVectorField(required=False)
    steps = serializers.IntegerField(min_value=1, default=1)


class ExpectSerializer(serializers.Serializer):
    label = serializers.ChoiceField(choices=[label.value for label in LounestoLabel], required=False)
    spinor = SpinorComponentsField(required=False)


class JobDocumentSerializer(serializers.Serializer):
    """Input document of one CLI job; the command comes from the serializer context."""

    spinor = SpinorComponentsField(required=False)
    spinors = serializers.ListField(child=SpinorComponentsField(), required=False, allow_empty=False)
    mass = FiniteFloatField(default=0.0)
    charge = FiniteFloatField(required=False)
    connection = ConnectionSerializer(required=False)
    gauge = GaugeSerializer(required=False)
    path = PathSerializer(required=False)
    spinor_field = SpinorFieldSerializer(required=False)
    points = serializers.ListField(child=RealVectorField(), required=False, allow_empty=False)
    R_mu = RealVectorField(required=False)
    B_mu = RealVectorField(required=False)
    expect = ExpectSerializer(required=False)

    REQUIRED = {
        "dirac-check": ("spinor_field", "points"),
        "expand": ("spinor", "path", "connection"),
    }

    def validate(self, attrs: dict[str, Any]) -> dict[str, Any]:
        command = self.context.get("command")
        if command not in COMMANDS:
            msg = f"Unknown command {command!r}; expected one of {', '.join(COMMANDS)}"
            raise serializers.ValidationError(msg)

        missing = [key for key in self.REQUIRED.get(command, ()) if key not in attrs]
        if command in SPINOR_COMMANDS and "spinor" not in attrs and "spinors" not in attrs:
            missing.append("spinor")
        if command == "flagpole-matrix" and "connection" not in attrs and "R_mu" not in attrs:
            missing.append("connection")
        if missing:
            msg = f"Command '{command}' needs: {', '.join(missing)}"
            raise serializers.ValidationError(msg)

        wave = attrs.get("spinor_field")
        if wave and wave["kind"] == "plane-wave" and "momentum" not in wave:
            msg = "A plane-wave spinor_field needs a momentum"
            raise serializers.ValidationError(msg)
        if wave and wave["kind"] == "expansion" and "connection" not in attrs:
            msg = "An expansion spinor_field needs a connection"
            raise serializers.ValidationError(msg)
        if "charge" in attrs and "gauge" not in attrs:
            msg = "A charge needs a gauge with the potential A it couples to"
            raise serializers.ValidationError(msg)
        return attrs

    @staticmethod
    def spinor_list(attrs: dict[str, Any]) -> list[Spinor]:
        spinors = [attrs["spinor"]] if "spinor" in attrs else []
        return spinors + list(attrs.get("spinors", []))
