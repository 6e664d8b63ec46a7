import json

import numpy as np
import pytest

from maskbias.analysis import CorrelationMatrix
from maskbias.report import (
    FigureSpec,
    ReportError,
    export_report,
    normalize_series,
    render_frequency_rank,
    render_heatmap,
    render_scatter_with_marginals,
    render_trajectory,
)

from conftest import make_matrix_set


class TestNormalizeSeries:
    def test_divides_by_own_max(self):
        np.testing.assert_allclose(normalize_series([2.0, 4.0, 8.0]), [0.25, 0.5, 1.0])

    def test_constant_series_becomes_flat_one(self):
        np.testing.assert_allclose(normalize_series([3.0, 3.0, 3.0]), [1.0, 1.0, 1.0])

    def test_all_zero_rejected(self):
        with pytest.raises(ReportError, match="all-zero"):
            normalize_series([0.0, 0.0])


class TestTrajectory:
    def test_writes_panels_for_prior_and_profession(self, tmp_path, tiny_professions):
        mset = make_matrix_set(tiny_professions)
        paths = render_trajectory(
            mset, ["prior", "nurse"], normalize_by_max=True,
            out_base=tmp_path / "traj", formats=("svg",),
        )
        assert [p.name for p in paths] == ["traj.svg"]
        assert paths[0].stat().st_size > 0

    def test_empty_selection_rejected(self, tmp_path, tiny_professions):
        mset = make_matrix_set(tiny_professions)
        with pytest.raises(ReportError, match="empty"):
            render_trajectory(mset, [], True, tmp_path / "traj")

    def test_unknown_profession_raises(self, tmp_path, tiny_professions):
        mset = make_matrix_set(tiny_professions)
        with pytest.raises(KeyError):
            render_trajectory(mset, ["made-up"], False, tmp_path / "traj")

    def test_raw_probabilities_without_normalization(self, tmp_path, tiny_professions):
        mset = make_matrix_set(tiny_professions)
        paths = render_trajectory(
            mset, ["doctor"], normalize_by_max=False,
            out_base=tmp_path / "raw", formats=("svg", "png"),
        )
        assert sorted(p.suffix for p in paths) == [".png", ".svg"]

    def test_all_zero_series_with_normalization_rejected(self, tmp_path, tiny_professions):
        mset = make_matrix_set(
            tiny_professions,
            score_of=lambda step, spec: (0.3, 0.3) if spec.is_prior else (0.0, 0.3),
        )
        with pytest.raises(ReportError, match="all-zero"):
            render_trajectory(mset, ["nurse"], True, tmp_path / "zero")


class TestScatter:
    def test_histogram_counts_conserve_mass(self, tmp_path):
        rng = np.random.default_rng(1)
        x, y = rng.uniform(0, 1, 923), rng.uniform(0, 1, 923)
        result = render_scatter_with_marginals(
            x, y, out_base=tmp_path / "scatter", prior_point=(0.5, 0.2)
        )
        assert sum(result.x_counts) == 923
        assert sum(result.y_counts) == 923
        assert result.paths[0].stat().st_size > 0

    def test_single_point_is_valid(self, tmp_path):
        result = render_scatter_with_marginals(
            np.array([0.4]), np.array([0.6]), out_base=tmp_path / "one"
        )
        assert sum(result.x_counts) == 1

    def test_length_mismatch(self, tmp_path):
        with pytest.raises(ReportError, match="mismatch"):
            render_scatter_with_marginals(
                np.array([1.0, 2.0]), np.array([1.0]), out_base=tmp_path / "bad"
            )


class TestHeatmap:
    def _cm(self):
        values = np.array(
            [[1.0, 0.3, 0.9], [0.3, 1.0, 0.7], [0.9, 0.7, 1.0]], dtype=np.float64
        )
        return CorrelationMatrix(labels=(10, 20, 30), values=values, kind="checkpoint-pair")

    def test_clamping_is_colour_only(self, tmp_path):
        cm = self._cm()
        before = cm.values.copy()
        paths = render_heatmap(cm, out_base=tmp_path / "hm", floor=0.6)
        np.testing.assert_array_equal(cm.values, before)
        assert paths[0].stat().st_size > 0

    def test_no_floor_renders(self, tmp_path):
        paths = render_heatmap(self._cm(), out_base=tmp_path / "hm2", floor=-1.0)
        assert paths[0].exists()


def test_frequency_rank_figure(tmp_path):
    f = np.array([5.0, 1.0, 0.0, 100.0])
    paths = render_frequency_rank(f, out_base=tmp_path / "rank", case_mode="lowercase")
    assert paths[0].stat().st_size > 0


class TestFigureSpec:
    def test_known_kinds(self):
        FigureSpec(kind="heatmap", inputs={"matrix": "rq4"})
        with pytest.raises(ReportError, match="kind"):
            FigureSpec(kind="pie", inputs={})


class TestExportReport:
    def test_bundle_layout_and_determinism(self, tmp_path):
        document = {"tool": {"name": "maskbias"}, "runs": [{"rq2": 0.25}]}
        tables = {"fluct": (("a", "b"), [(1, 0.5), (2, 0.25)])}
        out1, out2 = tmp_path / "one", tmp_path / "two"
        paths1 = export_report(document, tables, out1)
        paths2 = export_report(document, tables, out2)
        rel1 = [p.relative_to(out1) for p in paths1]
        assert rel1 == [p.relative_to(out2) for p in paths2]
        for a, b in zip(paths1, paths2):
            assert a.read_bytes() == b.read_bytes()
        loaded = json.loads((out1 / "report" / "report.json").read_text())
        assert loaded["runs"][0]["rq2"] == 0.25
        table_text = (out1 / "report" / "tables" / "fluct.csv").read_text()
        assert table_text == "a,b\n1,0.5\n2,0.25\n"

    def test_empty_report_rejected(self, tmp_path):
        with pytest.raises(ReportError, match="empty"):
            export_report({}, {}, tmp_path)

    def test_non_finite_values_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            export_report({"runs": [float("nan")]}, {}, tmp_path)
