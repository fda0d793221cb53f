import math

import numpy as np
import pytest

from spinor.domain import Spinor
from spinor.serializers import (
    ComplexField,
    ConnectionSerializer,
    GaugeSerializer,
    JobDocumentSerializer,
    PathSerializer,
    SpinorComponentsField,
    TensorEntrySerializer,
    complex_pairs,
    real_list,
)


MAJORANA = [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]
ALONG_Z = {"start": [0.0, 0.0, 0.0, 0.0], "end": [0.0, 1.0, 0.0, 0.0], "steps": 2}


def job(command: str, **document) -> JobDocumentSerializer:
    return JobDocumentSerializer(data=document, context={"command": command})


class TestFields:
    def test_complex_pair(self):
        assert ComplexField().to_internal_value([1.5, -2]) == complex(1.5, -2.0)
        assert ComplexField().to_representation(1 + 2j) == [1.0, 2.0]

    @pytest.mark.parametrize("value", [[1.0], [1.0, 2.0, 3.0], "1+2j", [1.0, "2"], [True, 0.0], None])
    def test_malformed_complex_rejected(self, value):
        serializer = job("classify", spinor=[value, [0, 0], [0, 0], [0, 0]])
        assert not serializer.is_valid()
        assert "spinor" in serializer.errors

    def test_non_finite_complex_rejected(self):
        serializer = job("classify", spinor=[[float("nan"), 0.0], [0, 0], [0, 0], [1, 0]])
        assert not serializer.is_valid()

    def test_spinor_components(self):
        spinor = SpinorComponentsField().to_internal_value([[1, 0], [0, 1], [0, 0], [2, -1]])
        assert isinstance(spinor, Spinor)
        assert np.array_equal(spinor.components, [1.0, 1j, 0.0, 2.0 - 1j])

    @pytest.mark.parametrize("count", [3, 5])
    def test_spinor_length_rejected(self, count):
        serializer = job("classify", spinor=[[1, 0]] * count)
        assert not serializer.is_valid()

    def test_negative_zero_is_rendered_positive(self):
        assert all(math.copysign(1.0, v) == 1.0 for v in real_list(np.array([-0.0, 0.0])))
        assert complex_pairs(complex(-0.0, -0.0)) == [0.0, 0.0]
        assert math.copysign(1.0, complex_pairs(complex(-0.0, 1.0))[0]) == 1.0

    def test_boolean_mass_rejected(self):
        serializer = job("classify", spinor=MAJORANA, mass=True)
        assert not serializer.is_valid()
        assert "mass" in serializer.errors

    def test_infinite_mass_rejected(self):
        serializer = job("classify", spinor=MAJORANA, mass=float("inf"))
        assert not serializer.is_valid()


class TestJobDocument:
    def test_classify_with_spinor_list(self):
        serializer = job("classify", spinor=MAJORANA, spinors=[[[1, 0], [0, 0], [1, 0], [0, 0]]])
        assert serializer.is_valid(), serializer.errors
        spinors = JobDocumentSerializer.spinor_list(serializer.validated_data)
        assert [s.components.tolist() for s in spinors] == [[1, 0, 0, 1], [1, 0, 1, 0]]

    def test_unknown_command(self):
        serializer = job("transmogrify", spinor=MAJORANA)
        assert not serializer.is_valid()
        assert "Unknown command" in str(serializer.errors["non_field_errors"][0])

    @pytest.mark.parametrize(
        ("command", "document", "missing"),
        [
            ("classify", {}, "spinor"),
            ("expand", {"spinor": MAJORANA}, "path, connection"),
            ("dirac-check", {"points": [[0, 0, 0, 0]]}, "spinor_field"),
            ("flagpole-matrix", {"mass": 1.0}, "connection"),
        ],
    )
    def test_missing_keys(self, command, document, missing):
        serializer = job(command, **document)
        assert not serializer.is_valid()
        assert missing in str(serializer.errors["non_field_errors"][0])

    def test_flagpole_matrix_accepts_contracted_vectors(self):
        serializer = job("flagpole-matrix", mass=1.0, R_mu=[0, 0, 2, 0])
        assert serializer.is_valid(), serializer.errors

    def test_plane_wave_needs_momentum(self):
        serializer = job(
            "dirac-check",
            spinor_field={"kind": "plane-wave", "spinor": MAJORANA},
            points=[[0, 0, 0, 0]],
        )
        assert not serializer.is_valid()
        assert "momentum" in str(serializer.errors)

    def test_expansion_field_needs_connection(self):
        serializer = job(
            "dirac-check",
            spinor_field={"kind": "expansion", "spinor": MAJORANA},
            points=[[0, 0, 0, 0]],
        )
        assert not serializer.is_valid()
        assert "connection" in str(serializer.errors)

    def test_charge_needs_gauge(self):
        document = {
            "mass": 1.0,
            "spinor_field": {"kind": "constant", "spinor": MAJORANA},
            "points": [[0, 0, 0, 0]],
            "charge": 0.5,
        }
        serializer = job("dirac-check", **document)
        assert not serializer.is_valid()
        assert "gauge" in str(serializer.errors["non_field_errors"][0])

        serializer = job("dirac-check", **document, gauge={"A": [0.1, 0, 0, 0]})
        assert serializer.is_valid(), serializer.errors

    def test_unknown_expected_label_rejected(self):
        serializer = job("classify", spinor=MAJORANA, expect={"label": "Tachyonic"})
        assert not serializer.is_valid()
        assert "expect" in serializer.errors

    def test_empty_points_rejected(self):
        serializer = job(
            "dirac-check",
            spinor_field={"kind": "constant", "spinor": MAJORANA},
            points=[],
        )
        assert not serializer.is_valid()


class TestConnection:
    def test_dense_and_sparse_tensor_conflict(self):
        serializer = ConnectionSerializer(
            data={"R": [0.0] * 24, "R_entries": [{"i": 2, "j": 1, "mu": 1, "value": -2.0}]}
        )
        assert not serializer.is_valid()

    def test_gradient_needs_linear_kind(self):
        serializer = ConnectionSerializer(data={"P_gradient": [[0.0] * 4] * 4})
        assert not serializer.is_valid()

    def test_diagonal_entry_rejected(self):
        serializer = TensorEntrySerializer(data={"i": 1, "j": 1, "mu": 0, "value": 1.0})
        assert not serializer.is_valid()

    def test_sparse_entries_build_flagpole(self):
        serializer = ConnectionSerializer(data={"R_entries": [{"i": 2, "j": 1, "mu": 1, "value": -2.0}]})
        assert serializer.is_valid(), serializer.errors
        conn = ConnectionSerializer.build(serializer.validated_data)
        tensor = conn.tensor(np.zeros(4))
        assert tensor[2, 1, 1] == -2.0
        assert tensor[1, 2, 1] == 2.0
        assert np.count_nonzero(tensor) == 2
        assert np.array_equal(conn.momentum(np.zeros(4)), np.zeros(4))

    def test_dense_tensor_uses_pair_order(self):
        dense = [0.0] * 24
        dense[3 * 4 + 1] = 1.5
        serializer = ConnectionSerializer(data={"R": dense})
        assert serializer.is_valid(), serializer.errors
        tensor = ConnectionSerializer.build(serializer.validated_data).tensor(np.zeros(4))
        assert tensor[1, 2, 1] == 1.5
        assert tensor[2, 1, 1] == -1.5

    def test_linear_connection(self):
        p_gradient = [[0.0, 0.5, 0.0, 0.0], [0.0] * 4, [0.0] * 4, [0.0] * 4]
        r_gradient = [[0.0] * 4 for _ in range(24)]
        r_gradient[3 * 4 + 1][1] = 1.0
        serializer = ConnectionSerializer(
            data={"kind": "linear", "P": [1.0, 0.0, 0.0, 0.0], "P_gradient": p_gradient, "R_gradient": r_gradient}
        )
        assert serializer.is_valid(), serializer.errors
        conn = ConnectionSerializer.build(serializer.validated_data)
        x = np.array([0.0, 2.0, 0.0, 0.0])
        assert np.array_equal(conn.momentum(x), [2.0, 0.0, 0.0, 0.0])
        assert conn.tensor(x)[1, 2, 1] == 2.0
        assert conn.tensor(x)[2, 1, 1] == -2.0
        assert np.count_nonzero(conn.tensor(np.zeros(4))) == 0

    def test_gauge_defaults(self):
        serializer = GaugeSerializer(data={"A": [0.3, 0.0, 0.0, 0.0]})
        assert serializer.is_valid(), serializer.errors
        gauge = GaugeSerializer.build(serializer.validated_data)
        assert gauge.q == 0.0
        assert np.array_equal(gauge.potential(np.zeros(4)), [0.3, 0.0, 0.0, 0.0])
        assert np.count_nonzero(gauge.spin_connection(np.zeros(4))) == 0


class TestPath:
    def test_default_steps(self):
        serializer = PathSerializer(data={"start": [0, 0, 0, 0], "end": [0, 1, 0, 0]})
        assert serializer.is_valid(), serializer.errors
        assert PathSerializer.build(serializer.validated_data).steps == 1

    def test_build(self):
        serializer = PathSerializer(data=ALONG_Z)
        assert serializer.is_valid(), serializer.errors
        path = PathSerializer.build(serializer.validated_data)
        assert path.steps == 2
        assert np.array_equal(path.midpoint, [0.0, 0.5, 0.0, 0.0])

    @pytest.mark.parametrize("steps", [0, -3])
    def test_non_positive_steps_rejected(self, steps):
        serializer = PathSerializer(data={**ALONG_Z, "steps": steps})
        assert not serializer.is_valid()
        assert "steps" in serializer.errors
