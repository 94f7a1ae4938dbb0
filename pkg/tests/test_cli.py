"""CLI surface: subcommands, exit codes, output files."""

import pytest

from vlclink.cli import EXIT_CONFIG, EXIT_OK, main

FAST = """
frame.payload_len = 512
frame.pilot_len = 16
sweep.positions.start = 0
sweep.positions.stop = 0
sweep.payload_bits = 4000
"""


@pytest.fixture()
def fast_config(tmp_path):
    path = tmp_path / "fast.cfg"
    path.write_text(FAST)
    return str(path)


class TestCalibrateCommand:
    def test_writes_parseable_output(self, fast_config, tmp_path, capsys):
        out = tmp_path / "cal.txt"
        assert main(["calibrate", "--config", fast_config, "--out", str(out)]) == EXIT_OK
        text = out.read_text()
        values = dict(line.split("=") for line in text.strip().splitlines())
        assert float(values["p_total_db"]) == pytest.approx(
            10 * __import__("math").log10(float(values["p_total_linear"])), abs=1e-6
        )

    def test_stdout_default(self, fast_config, capsys):
        assert main(["calibrate", "--config", fast_config]) == EXIT_OK
        assert "p_total_db=" in capsys.readouterr().out


class TestBlockageSweepCommand:
    def test_runs_and_is_deterministic(self, fast_config, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["blockage-sweep", "--config", fast_config, "--out", str(out1)]) == EXIT_OK
        assert main(["blockage-sweep", "--config", fast_config, "--out", str(out2)]) == EXIT_OK
        assert out1.read_bytes() == out2.read_bytes()

    def test_seed_override_changes_output(self, fast_config, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["blockage-sweep", "--config", fast_config, "--seed", "1", "--out", str(out1)])
        main(["blockage-sweep", "--config", fast_config, "--seed", "2", "--out", str(out2)])
        assert out1.read_bytes() != out2.read_bytes()


class TestBerSweepCommand:
    def test_runs_small_grid(self, tmp_path):
        cfg = tmp_path / "bs.cfg"
        cfg.write_text(
            FAST
            + "bersweep.snr_start = 15\nbersweep.snr_stop = 15\nbersweep.snr_step = 1\n"
            + "bersweep.max_bits = 4000\nbersweep.min_errors = 10\n"
        )
        out = tmp_path / "ber.csv"
        assert main(["ber-sweep", "--config", str(cfg), "--out", str(out)]) == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0].startswith("scheme,order,snr_db")
        assert len(lines) == 1 + 8


class TestErrors:
    def test_missing_config_file(self, capsys):
        assert main(["calibrate", "--config", "/nonexistent.cfg"]) == EXIT_CONFIG
        assert "config error" in capsys.readouterr().err

    def test_bad_key(self, tmp_path, capsys):
        path = tmp_path / "bad.cfg"
        path.write_text("bogus = 1\n")
        assert main(["calibrate", "--config", str(path)]) == EXIT_CONFIG

    def test_bad_value(self, tmp_path, capsys):
        path = tmp_path / "bad.cfg"
        path.write_text("ber_tgt = 2.0\n")
        assert main(["blockage-sweep", "--config", str(path)]) == EXIT_CONFIG

    def test_negative_seed(self, fast_config):
        assert main(["calibrate", "--config", fast_config, "--seed", "-1"]) == EXIT_CONFIG
