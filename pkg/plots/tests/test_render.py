import numpy as np
import pytest

from rabiplots import InputError, load_csv, render


class TestReader:
    def test_loads_columns(self, sweep_csv):
        data = load_csv(sweep_csv, "sweep")
        assert len(data["g"]) == 22
        assert data["level"].dtype.kind == "i"
        assert np.isnan(data["d2e"][0])

    def test_missing_column_named(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("g,g_over_gc,level\n1,0.5,0\n")
        with pytest.raises(InputError, match="missing column 'energy'"):
            load_csv(path, "sweep")

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(InputError, match="empty CSV"):
            load_csv(path, "sweep")

    def test_header_only(self, tmp_path, sweep_csv):
        path = tmp_path / "headeronly.csv"
        path.write_text(sweep_csv.read_text().splitlines()[0] + "\n")
        with pytest.raises(InputError, match="no data rows"):
            load_csv(path, "sweep")

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError, match="not found"):
            load_csv(tmp_path / "nope.csv", "sweep")


class TestRenderKinds:
    @pytest.mark.parametrize("suffix", [".svg", ".png"])
    def test_levels(self, sweep_csv, tmp_path, suffix):
        out = tmp_path / f"levels{suffix}"
        render("levels", sweep_csv, None, out)
        assert out.stat().st_size > 1000

    def test_transition(self, sweep_csv, tmp_path):
        out = tmp_path / "transition.svg"
        render("transition", sweep_csv, None, out)
        assert out.stat().st_size > 1000

    def test_patterns_via_either_flag(self, patterns_csv, tmp_path):
        out1 = tmp_path / "patterns1.svg"
        render("patterns", patterns_csv, None, out1)
        out2 = tmp_path / "patterns2.svg"
        render("patterns", tmp_path / "ignored.csv", patterns_csv, out2)
        assert out1.stat().st_size > 1000
        assert out2.stat().st_size > 1000

    def test_wavefunction(self, wavefunction_csv, tmp_path):
        out = tmp_path / "wavefunction.svg"
        render("wavefunction", wavefunction_csv, None, out)
        assert out.stat().st_size > 1000

    def test_decomposition(self, sweep_csv, tmp_path):
        out = tmp_path / "decomposition.png"
        render("decomposition", sweep_csv, None, out)
        assert out.stat().st_size > 1000

    def test_unknown_kind(self, sweep_csv, tmp_path):
        with pytest.raises(InputError, match="unknown plot kind"):
            render("surface", sweep_csv, None, tmp_path / "x.svg")

    def test_error_leaves_no_file(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        out = tmp_path / "should_not_exist.svg"
        with pytest.raises(InputError):
            render("levels", empty, None, out)
        assert not out.exists()

    def test_zero_energy_components_omitted_with_warning(self, tmp_path, capsys):
        path = tmp_path / "wavefunction.csv"
        lines = ["g_over_gc,level,m,psi_up,w1_up,w2_up,w3_up,energy"]
        for m in range(8):
            lines.append(f"1,0,{m},0.3,0,0,0,1e-12")
        path.write_text("\n".join(lines) + "\n")
        out = tmp_path / "wf.svg"
        render("wavefunction", path, None, out)
        assert out.stat().st_size > 1000
        assert "pattern components omitted" in capsys.readouterr().err
