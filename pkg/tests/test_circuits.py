"""Tests for netlists, the .pqc format and unitary assembly."""

import math
from pathlib import Path
from typing import Tuple

import numpy as np
import pytest

from photonchip.circuits import (
    CNOT_ENCODING,
    LOWER_THIRD_A,
    CnotEtas,
    Convention,
    CouplerSpec,
    DirectionalCoupler,
    LogicalEncoding,
    Netlist,
    NetlistParseError,
    PhaseShifter,
    assemble_unitary,
    cnot_from_etas,
    coupler_unitary,
    default_encoding,
    load_netlist,
    parse_netlist,
    save_netlist,
    serialize_netlist,
)
from photonchip.fock import unitarity_deviation

Circuit = Tuple[Netlist, LogicalEncoding]


class TestParser:
    """Reading and writing the netlist text format."""

    @pytest.mark.parametrize("name", ["cnot.pqc", "cnot_measured.pqc"])
    def test_shipped_netlists_round_trip(self, data_dir: Path, name: str) -> None:
        netlist = load_netlist(data_dir / name)
        assert netlist.n_modes == 6
        assert len(netlist.couplers) == 5
        assert parse_netlist(serialize_netlist(netlist)) == netlist

    def test_shipped_netlist_matches_builder(self, data_dir: Path) -> None:
        from_file = assemble_unitary(load_netlist(data_dir / "cnot_measured.pqc"))
        built, _ = cnot_from_etas(CnotEtas.measured())
        np.testing.assert_allclose(from_file, assemble_unitary(built), atol=1e-12)

    def test_labels_and_uncertainties(self) -> None:
        text = (
            "# pqc v1\n"
            "modes 3\n"
            "dc 1 2 0.25 ±0.01 #left\n"
            "ph 3 1.5\n"
            "dc 2 3 0.5 +/-0.002 # right\n"
        )
        netlist = parse_netlist(text)
        assert netlist.labels == ("left", "right")
        left = netlist.element("left")
        assert isinstance(left, DirectionalCoupler)
        assert left.modes == (0, 1)
        assert left.coupler == CouplerSpec(0.25, 0.01)
        assert isinstance(netlist.elements[1], PhaseShifter)
        assert netlist.elements[1].mode == 2

    def test_serialize_format(self) -> None:
        coupler = DirectionalCoupler(0, 1, CouplerSpec(1.0 / 3.0, 0.0009), "c")
        text = serialize_netlist(Netlist(2, (coupler,)))
        assert text == "# pqc v1\nmodes 2\ndc 1 2 0.333333333333 ±0.0009 #c\n"

    @pytest.mark.parametrize(
        "text, line, fragment",
        [
            ("modes 2\ndc 1 3 0.5\n", 2, "out of range"),
            ("modes 2\n\ndc 1 2 1.5\n", 3, "reflectivity"),
            ("modes 2\ndc 1 1 0.5\n", 2, "itself"),
            ("modes 2\nbs 1 2 0.5\n", 2, "unknown directive"),
            ("dc 1 2 0.5\nmodes 2\n", 1, "modes"),
            ("modes 2\nmodes 3\n", 2, "duplicate"),
            ("modes 2\ndc 1 2 0.5 #a\ndc 1 2 0.5 #a\n", 3, "duplicate label"),
            ("modes 2\nph 1\n", 2, "ph"),
            ("modes 2\ndc 1 2 0.5 ±-0.1\n", 2, "uncertainty"),
            ("# only a comment\n", 1, "missing"),
        ],
    )
    def test_parse_errors_carry_line_numbers(
        self, text: str, line: int, fragment: str
    ) -> None:
        with pytest.raises(NetlistParseError, match=fragment) as excinfo:
            parse_netlist(text)
        assert excinfo.value.line_number == line
        assert str(excinfo.value).startswith(f"line {line}:")

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(FileNotFoundError):
            load_netlist(tmp_path / "absent.pqc")

    def test_save_and_load(self, tmp_path: Path, measured_cnot: Circuit) -> None:
        netlist, _ = measured_cnot
        path = save_netlist(netlist, tmp_path / "out" / "gate.pqc")
        assert load_netlist(path) == netlist


class TestNetlist:
    """Netlist editing and validation."""

    def test_with_eta(self, nominal_cnot: Circuit) -> None:
        netlist, _ = nominal_cnot
        changed = netlist.with_eta(LOWER_THIRD_A, 0.3)
        assert changed.element(LOWER_THIRD_A).eta == 0.3
        assert netlist.element(LOWER_THIRD_A).eta == pytest.approx(1.0 / 3.0)
        with pytest.raises(KeyError):
            netlist.with_eta("no-such-coupler", 0.3)

    def test_with_eta_rejects_phase(self) -> None:
        netlist = Netlist(2, (PhaseShifter(0, 0.1, "p"),))
        with pytest.raises(ValueError):
            netlist.with_eta("p", 0.5)

    def test_invalid_elements(self) -> None:
        with pytest.raises(ValueError):
            Netlist(2, (DirectionalCoupler(0, 2, CouplerSpec(0.5)),))
        with pytest.raises(ValueError):
            CouplerSpec(1.2)
        with pytest.raises(ValueError):
            Netlist(0)

    def test_reversed_order(self, measured_cnot: Circuit) -> None:
        netlist, _ = measured_cnot
        flipped = netlist.reversed()
        assert flipped.elements[0] == netlist.elements[-1]
        assert flipped.reversed() == netlist
        # real coupler and phase matrices are symmetric
        np.testing.assert_allclose(
            assemble_unitary(flipped), assemble_unitary(netlist).T, atol=1e-12
        )

    def test_encodings(self) -> None:
        assert default_encoding(6) == CNOT_ENCODING
        with pytest.raises(ValueError):
            LogicalEncoding((0, 1), (1, 2))
        with pytest.raises(ValueError):
            CNOT_ENCODING.validate(4)


class TestUnitary:
    """Coupler matrices and netlist assembly."""

    @pytest.mark.parametrize("convention", list(Convention))
    @pytest.mark.parametrize("eta", [0.0, 0.3078, 0.5, 1.0])
    def test_coupler_is_unitary_with_reflectivity(
        self, convention: Convention, eta: float
    ) -> None:
        u = coupler_unitary(CouplerSpec(eta), convention)
        assert unitarity_deviation(u) < 1e-12
        assert abs(u[0, 0]) ** 2 == pytest.approx(eta, abs=1e-12)

    def test_real_convention_signs(self) -> None:
        u = coupler_unitary(CouplerSpec(0.25), Convention.REAL)
        np.testing.assert_allclose(u, [[0.5, math.sqrt(0.75)], [math.sqrt(0.75), -0.5]])

    def test_empty_netlist_is_identity(self) -> None:
        np.testing.assert_array_equal(assemble_unitary(Netlist(4)), np.eye(4))

    def test_element_order(self) -> None:
        phase = PhaseShifter(0, math.pi / 2)
        coupler = DirectionalCoupler(0, 1, CouplerSpec(0.5))
        u = assemble_unitary(Netlist(2, (phase, coupler)))
        expected = coupler_unitary(CouplerSpec(0.5)) @ np.diag([1j, 1.0])
        np.testing.assert_allclose(u, expected, atol=1e-12)
        assert not np.allclose(u, assemble_unitary(Netlist(2, (coupler, phase))))

    def test_random_netlists_are_unitary(self, rng: np.random.Generator) -> None:
        for _ in range(20):
            elements = []
            for _ in range(12):
                a, b = rng.choice(6, size=2, replace=False)
                if rng.random() < 0.7:
                    spec = CouplerSpec(float(rng.random()))
                    elements.append(DirectionalCoupler(int(a), int(b), spec))
                else:
                    phase = float(rng.uniform(-math.pi, math.pi))
                    elements.append(PhaseShifter(int(a), phase))
            u = assemble_unitary(Netlist(6, tuple(elements)))
            assert unitarity_deviation(u) < 1e-12

    def test_symmetric_cnot_matches_real(self) -> None:
        real, _ = cnot_from_etas(CnotEtas.measured(), Convention.REAL)
        symmetric, _ = cnot_from_etas(CnotEtas.measured(), Convention.SYMMETRIC)
        assert len(symmetric) == 3 * len(real)
        np.testing.assert_allclose(
            assemble_unitary(symmetric, Convention.SYMMETRIC),
            assemble_unitary(real, Convention.REAL),
            atol=1e-12,
        )
