import numpy as np
import pytest

from lqu_lab.figures import FIGURE_IDS, UnknownFigureId, figure_csvs, run_figure
from lqu_lab.lqu import lqu_closed_xstate
from lqu_lab.model import TemperatureOutOfRange, thermal_xstate
from lqu_lab.sweep import (
    InvalidSweepSpec,
    SweepAxis,
    SweepSpec,
    evaluate_point,
    run_sweep,
)


def simple_spec(**kw):
    base = dict(
        axes=(SweepAxis("t", 0.05, 1.0, 5),),
        fixed={"ej": 1.0, "em": 1.0},
    )
    base.update(kw)
    return SweepSpec(**base)


class TestSweepSpecValidation:
    def test_accepts_basic(self):
        simple_spec().validate()

    def test_rejects_duplicate_axes(self):
        spec = simple_spec(axes=(SweepAxis("t", 0.05, 1.0, 5), SweepAxis("t", 0.05, 1.0, 5)))
        with pytest.raises(InvalidSweepSpec):
            spec.validate()

    def test_rejects_unknown_variable(self):
        with pytest.raises(InvalidSweepSpec):
            simple_spec(axes=(SweepAxis("zz", 0.0, 1.0, 5),)).validate()

    def test_rejects_reversed_range(self):
        with pytest.raises(InvalidSweepSpec):
            simple_spec(axes=(SweepAxis("t", 1.0, 0.5, 5),)).validate()

    def test_rejects_single_step(self):
        with pytest.raises(InvalidSweepSpec):
            simple_spec(axes=(SweepAxis("t", 0.05, 1.0, 1),)).validate()

    def test_rejects_log_from_zero(self):
        with pytest.raises(InvalidSweepSpec):
            simple_spec(
                axes=(SweepAxis("ej", 0.0, 1.0, 5, "log"),),
                fixed={"t": 0.5, "em": 1.0},
            ).validate()

    def test_rejects_missing_fixed_value(self):
        with pytest.raises(InvalidSweepSpec, match="missing"):
            simple_spec(fixed={"ej": 1.0}).validate()

    def test_rejects_p_without_channel(self):
        with pytest.raises(InvalidSweepSpec):
            simple_spec(fixed={"ej": 1.0, "em": 1.0, "p": 0.5}).validate()

    def test_rejects_diagnostics_with_bruteforce(self):
        with pytest.raises(InvalidSweepSpec):
            simple_spec(method="bruteforce", diagnostics=True).validate()

    def test_cold_temperature_is_domain_error(self):
        with pytest.raises(TemperatureOutOfRange):
            simple_spec(axes=(SweepAxis("t", 1e-6, 1.0, 5),)).validate()


class TestRunSweep:
    def test_row_count_and_order_1d(self):
        res = run_sweep(simple_spec())
        assert len(res.rows) == 5
        ts = [row[0] for row in res.rows]
        assert ts == sorted(ts)
        assert res.columns == ("t", "ej", "em", "lqu", "fallback")

    def test_row_major_order_2d(self):
        spec = SweepSpec(
            axes=(SweepAxis("ej", 0.5, 1.0, 2), SweepAxis("t", 0.05, 1.0, 3)),
            fixed={"em": 1.0},
        )
        res = run_sweep(spec)
        assert len(res.rows) == 6
        ej_col = [row[1] for row in res.rows]
        assert ej_col == [0.5, 0.5, 0.5, 1.0, 1.0, 1.0]

    def test_thread_count_does_not_change_bytes(self):
        spec = SweepSpec(
            axes=(SweepAxis("p", 0.0, 1.0, 7),),
            fixed={"t": 0.2, "ej": 1.0, "em": 1.0},
            channel="ad",
        )
        serial = run_sweep(spec, max_workers=1).to_csv()
        threaded = run_sweep(spec, max_workers=4).to_csv()
        again = run_sweep(spec, max_workers=1).to_csv()
        assert serial == threaded == again

    def test_ad_endpoint_sweep(self):
        spec = SweepSpec(
            axes=(SweepAxis("p", 0.0, 1.0, 2),),
            fixed={"t": 0.5, "ej": 1.0, "em": 1.0},
            channel="ad",
        )
        rows = run_sweep(spec).rows
        thermal_value = lqu_closed_xstate(thermal_xstate(1.0, 1.0, 0.5)).lqu
        p_col = rows[0][3], rows[1][3]
        assert p_col == (0.0, 1.0)
        assert abs(rows[0][4] - thermal_value) <= 1e-14
        assert rows[1][4] <= 1e-12

    def test_csv_shape(self):
        text = run_sweep(simple_spec(diagnostics=True)).to_csv()
        lines = text.split("\n")
        assert lines[0].startswith("# lqu-lab ")
        assert lines[1].startswith("# sweep ")
        assert lines[2] == "t,ej,em,lqu,lambda1,lambda2,lambda3,fallback"
        assert len(lines) == 3 + 5 + 1  # metadata, header, rows, trailing LF
        assert text.endswith("\n") and "\r" not in text
        first = lines[3].split(",")
        assert first[0] == "0.05" and first[-1] in ("0", "1")
        # shortest round-trip rendering reparses exactly
        assert float(first[3]) == run_sweep(simple_spec(diagnostics=True)).rows[0][3]


class TestMethods:
    def test_methods_agree_at_point(self):
        closed = evaluate_point(t=0.2, ej=1.0, em=1.0)["lqu"]
        numeric = evaluate_point(t=0.2, ej=1.0, em=1.0, method="numeric")["lqu"]
        brute = evaluate_point(t=0.2, ej=1.0, em=1.0, method="bruteforce")["lqu"]
        assert abs(closed - numeric) <= 1e-9
        assert abs(closed - brute) <= 2e-6

    def test_channel_point_matches_kraus(self):
        closed = evaluate_point(t=0.2, ej=1.0, em=1.0, channel="pd", p=0.4)["lqu"]
        numeric = evaluate_point(t=0.2, ej=1.0, em=1.0, channel="pd", p=0.4, method="numeric")["lqu"]
        assert abs(closed - numeric) <= 1e-9


class TestFigurePresets:
    def test_all_ids_render(self):
        for fig_id in ("fig1a", "fig4a", "fig9a"):
            files = figure_csvs(fig_id)
            assert files
            for text in files.values():
                assert text.startswith("# lqu-lab ")

    def test_unknown_id(self):
        with pytest.raises(UnknownFigureId):
            figure_csvs("fig99")

    def test_run_figure_writes_files(self, tmp_path):
        paths = run_figure("fig1a", str(tmp_path))
        assert [p.endswith("fig1a.csv") for p in paths] == [True]
        body = (tmp_path / "fig1a.csv").read_text()
        lines = [l for l in body.strip().split("\n") if not l.startswith("#")]
        assert lines[0] == "t,ej,em,lqu,fallback"
        assert len(lines) == 1 + 3 * 201  # three curves

    def test_fig3_emits_two_files(self, tmp_path):
        paths = run_figure("fig3", str(tmp_path))
        names = sorted(p.rsplit("/", 1)[-1] for p in paths)
        assert names == ["fig3_blue.csv", "fig3_red.csv"]

    def test_fig9_emits_one_file_per_channel(self, tmp_path):
        paths = run_figure("fig9a", str(tmp_path))
        names = sorted(p.rsplit("/", 1)[-1] for p in paths)
        assert names == ["fig9a_ad.csv", "fig9a_pd.csv", "fig9a_pf.csv"]

    def test_deterministic_bytes(self):
        assert figure_csvs("fig5a") == figure_csvs("fig5a")

    def _rows(self, text):
        lines = [l for l in text.strip().split("\n") if not l.startswith("#")]
        header = lines[0].split(",")
        return header, [list(map(float, l.split(","))) for l in lines[1:]]

    def test_fig4a_lambda1_approaches_one(self):
        header, rows = self._rows(figure_csvs("fig4a")["fig4a.csv"])
        i_t, i_l1, i_l3 = header.index("t"), header.index("lambda1"), header.index("lambda3")
        last = rows[-1]
        assert last[i_t] == 1.0
        assert last[i_l1] > 0.95  # lambda1 -> 1 as T -> 1 at (ej, em) = (0.5, 1)
        assert last[i_l1] > last[i_l3]

    def test_fig5a_lambda3_dominates_throughout(self):
        header, rows = self._rows(figure_csvs("fig5a")["fig5a.csv"])
        i_l1, i_l3 = header.index("lambda1"), header.index("lambda3")
        assert all(r[i_l1] < r[i_l3] for r in rows)

    def test_fig9b_ad_has_interior_maximum(self):
        header, rows = self._rows(figure_csvs("fig9b")["fig9b_ad.csv"])
        i_lqu = header.index("lqu")
        vals = [r[i_lqu] for r in rows]
        peak = max(vals)
        assert peak > vals[0] + 1e-6 and peak > vals[-1] + 1e-6
        k = vals.index(peak)
        assert 0 < k < len(vals) - 1

    def test_fig6_surface_row_count(self):
        header, rows = self._rows(figure_csvs("fig6b")["fig6b.csv"])
        assert len(rows) == 101 * 101
        assert header == ["t", "ej", "em", "p", "lqu", "fallback"]

    def test_fig3_argmax_anchors_at_cold_row(self):
        files = figure_csvs("fig3")
        header, red = self._rows(files["fig3_red.csv"])
        i_t, i_ej = header.index("t"), header.index("ej")
        row = min(red, key=lambda r: abs(r[i_t] - 0.05))
        assert abs(row[i_ej] - 1.728) <= 0.05
        header, blue = self._rows(files["fig3_blue.csv"])
        i_t, i_em = header.index("t"), header.index("em")
        row = min(blue, key=lambda r: abs(r[i_t] - 0.05))
        assert abs(row[i_em] - 3.95) <= 0.05

    def test_every_preset_listed(self):
        assert len(FIGURE_IDS) == 20
