"""Tests for visibilities, accidental correction and the dip model."""

from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from photonchip.interference import (
    AccidentalCorrectionError,
    DipCurve,
    DipParams,
    classical_coincidence,
    correct_accidentals,
    delay_um_to_seconds,
    dip_fwhm_from_filter,
    dip_jacobian,
    dip_minimum_for_eta,
    dip_model,
    quantum_coincidence,
    v_ideal,
    visibility,
    visibility_record,
)


class TestVisibility:
    """Ideal visibility and its measured counterparts."""

    @pytest.mark.parametrize(
        "eta, expected", [(0.5, 1.0), (1.0 / 3.0, 0.8), (0.0, 0.0), (1.0, 0.0)]
    )
    def test_v_ideal_values(self, eta: float, expected: float) -> None:
        assert v_ideal(eta) == pytest.approx(expected, abs=1e-12)

    def test_v_ideal_near_balanced(self) -> None:
        value = v_ideal(0.5267)
        assert value == pytest.approx(0.9943, abs=1e-4)
        assert 0.997 <= 0.995 / value <= 1.005

    @pytest.mark.parametrize("eta", np.linspace(0.0, 1.0, 11))
    def test_closed_form_identity(self, eta: float) -> None:
        c_class = classical_coincidence(eta)
        from_rates = 1.0 - quantum_coincidence(eta) / c_class
        assert from_rates == pytest.approx(v_ideal(eta), abs=1e-12)

    @pytest.mark.parametrize("eta", np.linspace(0.0, 1.0, 101))
    def test_v_ideal_mirror_symmetry(self, eta: float) -> None:
        assert v_ideal(eta) == pytest.approx(v_ideal(1.0 - eta), abs=1e-12)

    @pytest.mark.parametrize("eta", [-0.1, 1.5])
    def test_rejects_out_of_range(self, eta: float) -> None:
        with pytest.raises(ValueError):
            v_ideal(eta)

    def test_visibility(self) -> None:
        assert visibility(1000.0, 51.0) == pytest.approx(0.949)
        assert visibility(100.0, 120.0) == pytest.approx(-0.2)
        with pytest.raises(ValueError):
            visibility(0.0, 1.0)

    def test_accidental_correction(self) -> None:
        cc, cq = correct_accidentals(1000.0, 54.7, 50.0)
        corrected = visibility(cc, cq)
        assert corrected == pytest.approx(1.0 - 4.7 / 950.0, abs=1e-12)
        assert corrected == pytest.approx(0.99505, abs=1e-5)
        assert corrected > visibility(1000.0, 54.7)

    @pytest.mark.parametrize("rates", [(1000.0, 54.7), (100.0, 0.0), (100.0, -3.0)])
    def test_zero_accidentals_leave_rates_alone(self, rates: tuple) -> None:
        assert correct_accidentals(*rates, 0.0) == rates

    @pytest.mark.parametrize("c_acc", [-1.0, 60.0, 1000.0])
    def test_accidental_correction_errors(self, c_acc: float) -> None:
        with pytest.raises(AccidentalCorrectionError):
            correct_accidentals(1000.0, 54.7, c_acc)

    def test_record(self) -> None:
        record = visibility_record(1000.0, 54.7, 50.0, eta=0.5267)
        assert record.v_raw == pytest.approx(0.9453)
        assert record.v_corrected == pytest.approx(1.0 - 4.7 / 950.0)
        assert record.v_rel == pytest.approx(record.v_corrected / v_ideal(0.5267))
        assert record.v_corrected_err > record.v_raw_err > 0
        assert not record.anti_dip
        assert record.to_dict()["method"] == "poisson-first-order"

    def test_record_above_unit_visibility(self) -> None:
        # A fit with v slightly above 1 puts the dip rate below zero
        record = visibility_record(1000.0, -1.44)
        assert record.v_raw == pytest.approx(1.00144)
        assert record.v_corrected == record.v_raw
        assert np.isfinite(record.v_raw_err)
        assert record.v_raw_err > 0
        assert record.v_corrected_err == pytest.approx(record.v_raw_err)

    def test_dip_minimum_for_eta(self) -> None:
        assert dip_minimum_for_eta(1000.0, 0.5) == pytest.approx(0.0)
        assert dip_minimum_for_eta(1000.0, 0.5, 50.0) == pytest.approx(50.0)
        assert dip_minimum_for_eta(1000.0, 1.0 / 3.0) == pytest.approx(200.0)


class TestDipModel:
    """Dip model, Jacobian and conversions."""

    @pytest.fixture
    def params(self) -> DipParams:
        """Parameters with a width taken from a 249.4 um FWHM."""
        return DipParams.from_fwhm(a=1000.0, b=0.05, v=0.95, x0=12.0, fwhm=249.4)

    def test_model_shape(self, params: DipParams) -> None:
        assert dip_model(params.x0, params) == pytest.approx(params.a * (1 - params.v))
        far = dip_model(params.x0 + 100 * params.w, params)
        assert far == pytest.approx(params.a + params.b * 100 * params.w)
        offset = params.fwhm / 2
        slope_part = params.b * offset * (1 - params.v / 2)
        half = dip_model(params.x0 + offset, params) - slope_part
        assert half == pytest.approx(params.a * (1 - params.v / 2))

    def test_zero_visibility_is_the_baseline(self, params: DipParams) -> None:
        flat = DipParams(a=params.a, b=params.b, v=0.0, x0=params.x0, w=params.w)
        delays = np.linspace(-800.0, 800.0, 33)
        baseline = params.a + params.b * (delays - params.x0)
        np.testing.assert_array_equal(dip_model(delays, flat), baseline)

    def test_fwhm_round_trip(self, params: DipParams) -> None:
        assert params.fwhm == pytest.approx(249.4)

    def test_jacobian_matches_finite_differences(
        self, rng: np.random.Generator
    ) -> None:
        delays = np.linspace(-600.0, 600.0, 41)
        for _ in range(20):
            p = DipParams(
                a=rng.uniform(500.0, 5000.0),
                b=rng.uniform(-0.5, 0.5),
                v=rng.uniform(0.2, 1.0),
                x0=rng.uniform(-100.0, 100.0),
                w=rng.uniform(30.0, 300.0),
            )
            analytic = dip_jacobian(delays, p)
            base = p.to_array()
            numeric = np.empty_like(analytic)
            for k in range(5):
                h = 1e-4 * max(1.0, abs(base[k]))
                up, down = base.copy(), base.copy()
                up[k] += h
                down[k] -= h
                high = dip_model(delays, DipParams.from_array(up))
                low = dip_model(delays, DipParams.from_array(down))
                numeric[:, k] = (high - low) / (2 * h)
            scale = np.max(np.abs(numeric), axis=0)
            assert np.all(np.abs(analytic - numeric) <= 1e-5 * scale)

    def test_filter_prediction(self) -> None:
        assert dip_fwhm_from_filter(804.0, 2.0) == pytest.approx(142.6, abs=0.1)
        with pytest.raises(ValueError):
            dip_fwhm_from_filter(804.0, 0.0)

    def test_delay_conversion(self) -> None:
        assert delay_um_to_seconds(299.792458) == pytest.approx(1e-12)
        seconds = delay_um_to_seconds(np.array([0.0, 299792.458]))
        np.testing.assert_allclose(seconds, [0.0, 1e-9])


class TestDipCurve:
    """Measured dip curves and their CSV form."""

    def test_csv_round_trip(self, tmp_path: Path) -> None:
        curve = DipCurve.from_arrays([-10.0, 0.0, 10.0], [100.0, 5.0, 98.0])
        path = curve.to_csv(tmp_path / "dip.csv")
        loaded = DipCurve.from_csv(path)
        np.testing.assert_array_equal(loaded.delays, curve.delays)
        np.testing.assert_array_equal(loaded.counts, curve.counts)
        assert list(pd.read_csv(path).columns) == ["delay_um", "counts"]

    def test_errors_are_poisson(self) -> None:
        curve = DipCurve.from_arrays([0.0, 1.0, 2.0], [0.0, 4.0, 100.0])
        np.testing.assert_allclose(curve.errors, [1.0, 2.0, 10.0])

    def test_validation(self, tmp_path: Path) -> None:
        with pytest.raises(ValueError, match="increasing"):
            DipCurve.from_arrays([0.0, 0.0, 1.0], [1.0, 2.0, 3.0])
        with pytest.raises(ValueError):
            DipCurve.from_arrays([0.0, 1.0], [1.0, -2.0])
        bad = tmp_path / "bad.csv"
        pd.DataFrame({"delay": [0.0], "counts": [1.0]}).to_csv(bad, index=False)
        with pytest.raises(ValueError, match="delay_um"):
            DipCurve.from_csv(bad)
        with pytest.raises(FileNotFoundError):
            DipCurve.from_csv(tmp_path / "absent.csv")
