import json
import os
import stat

import pytest

from vlspeed import SIMULATED_CHANNEL_FIT, log_distance_power
from vlspeed.cli import main

STRAIGHT_CONFIG = {
    "scenario": {"kind": "straight", "d": 0.5, "r0": 15.0, "speed": "72 km/h"},
    "channel": {"model": "simulated", "k_db": -49.32, "gamma": 1.21},
    "sampling": {"dt": 0.001, "duration": 0.3},
}

CURVED_CONFIG = {
    "scenario": {"kind": "curved", "r_c": 40.0, "w": 1.0, "beta0_deg": 90.0},
    "channel": {"model": "simulated", "k_db": -49.32, "gamma": 1.21, "phi_half_deg": 40.0},
    "sampling": {"dt": 0.001, "duration": 0.3},
}


def _write_config(tmp_path, cfg, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return path


class TestSimulate:
    def test_minimal_straight_trace(self, tmp_path, capsys):
        cfg = _write_config(tmp_path, STRAIGHT_CONFIG)
        rc = main(["simulate", "--config", str(cfg), "--out", str(tmp_path / "out")])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        lines = (tmp_path / "out" / "trace.csv").read_text().splitlines()
        assert lines[0] == "t_s,power_w"
        assert len(lines) == 301  # header + 300 samples
        assert out["samples"] == 300

    def test_missing_curved_field_names_path(self, tmp_path, capsys):
        cfg_data = json.loads(json.dumps(CURVED_CONFIG))
        del cfg_data["scenario"]["r_c"]
        cfg = _write_config(tmp_path, cfg_data)
        rc = main(["simulate", "--config", str(cfg), "--out", str(tmp_path / "out")])
        assert rc == 2
        assert "scenario.r_c" in capsys.readouterr().err

    def test_out_of_segment_window(self, tmp_path, capsys):
        cfg_data = json.loads(json.dumps(STRAIGHT_CONFIG))
        cfg_data["sampling"]["t_start"] = 0.7
        cfg = _write_config(tmp_path, cfg_data)
        rc = main(["simulate", "--config", str(cfg), "--out", str(tmp_path / "out")])
        assert rc == 3

    def test_unwritable_output_dir(self, tmp_path):
        if os.geteuid() == 0:
            pytest.skip("running as root; directory permissions are not enforced")
        cfg = _write_config(tmp_path, STRAIGHT_CONFIG)
        blocked = tmp_path / "blocked"
        blocked.mkdir()
        blocked.chmod(stat.S_IRUSR | stat.S_IXUSR)
        rc = main(["simulate", "--config", str(cfg), "--out", str(blocked / "sub")])
        assert rc == 4

    def test_invalid_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        rc = main(["simulate", "--config", str(bad), "--out", str(tmp_path)])
        assert rc == 2

    def test_speed_requires_unit_suffix(self, tmp_path, capsys):
        cfg_data = json.loads(json.dumps(STRAIGHT_CONFIG))
        cfg_data["scenario"]["speed"] = "20"
        cfg = _write_config(tmp_path, cfg_data)
        rc = main(["simulate", "--config", str(cfg), "--out", str(tmp_path / "out")])
        assert rc == 2

    def test_noise_block_and_seed_flag(self, tmp_path, capsys):
        cfg_data = json.loads(json.dumps(STRAIGHT_CONFIG))
        cfg_data["noise"] = {"snr0_db": 30.0, "seed": 9}
        cfg = _write_config(tmp_path, cfg_data)
        for out_name in ("a", "b"):
            rc = main([
                "simulate", "--config", str(cfg), "--out", str(tmp_path / out_name), "--seed", "77",
            ])
            assert rc == 0
        assert (tmp_path / "a" / "trace.csv").read_bytes() == (
            tmp_path / "b" / "trace.csv"
        ).read_bytes()


class TestEstimate:
    def _simulate(self, tmp_path, cfg_data, out_name="out"):
        cfg = _write_config(tmp_path, cfg_data, name=f"{out_name}.json")
        rc = main(["simulate", "--config", str(cfg), "--out", str(tmp_path / out_name)])
        assert rc == 0
        return tmp_path / out_name / "trace.csv"

    def test_straight_roundtrip(self, tmp_path, capsys):
        trace = self._simulate(tmp_path, STRAIGHT_CONFIG)
        capsys.readouterr()
        rc = main(["estimate", str(trace)])
        assert rc == 0
        result = json.loads(capsys.readouterr().out)
        assert abs(result["v_hat_mps"] - 20.0) < 1e-9
        assert result["model"] == "simulated"

    def test_curved_roundtrip(self, tmp_path, capsys):
        trace = self._simulate(tmp_path, CURVED_CONFIG)
        capsys.readouterr()
        rc = main(["estimate", str(trace)])
        assert rc == 0
        result = json.loads(capsys.readouterr().out)
        assert abs(result["v_hat_mps"] - 40.0) < 4e-5
        assert abs(result["w_hat_rad_per_s"] - 1.0) < 1e-6

    def test_zero_power_row_exits_3(self, tmp_path, capsys):
        trace = self._simulate(tmp_path, STRAIGHT_CONFIG)
        lines = trace.read_text().splitlines()
        parts = lines[5].split(",")
        lines[5] = parts[0] + ",0.0"
        trace.write_text("\n".join(lines) + "\n")
        capsys.readouterr()
        rc = main(["estimate", str(trace)])
        assert rc == 3
        assert "sample 4" in capsys.readouterr().err

    def test_malformed_trace_row_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("t_s,power_w\n0.0,1e-6\n0.001,xyz\n")
        rc = main(["estimate", str(bad), "--k-db", "-49.32", "--gamma", "1.21",
                   "--scenario", "straight", "--d", "0.5"])
        assert rc == 2

    def test_lambertian_modes_echoed(self, tmp_path, capsys):
        cfg_data = json.loads(json.dumps(STRAIGHT_CONFIG))
        cfg_data["channel"] = {
            "model": "lambertian", "k_db": -41.39, "gamma": 1.673, "phi_half_deg": 40.0,
        }
        trace = self._simulate(tmp_path, cfg_data)
        capsys.readouterr()
        for mode in ("exact", "shortcut"):
            rc = main(["estimate", str(trace), "--model", "lambertian", "--mode", mode])
            assert rc == 0
            result = json.loads(capsys.readouterr().out)
            assert result["mode"] == mode
            assert result["model"] == "lambertian"
            tolerance = 1e-6 if mode == "exact" else 0.02
            assert abs(result["v_hat_mps"] - 20.0) / 20.0 < tolerance

    def test_flags_without_sidecar(self, tmp_path, capsys):
        trace = self._simulate(tmp_path, STRAIGHT_CONFIG)
        sidecar = trace.with_name("trace.csv.meta.json")
        sidecar.unlink()
        capsys.readouterr()
        rc = main(["estimate", str(trace)])
        assert rc == 2  # scenario kind unknown
        rc = main([
            "estimate", str(trace), "--scenario", "straight",
            "--k-db", "-49.32", "--gamma", "1.21", "--d", "0.5",
        ])
        assert rc == 0
        result = json.loads(capsys.readouterr().out.splitlines()[-1])
        assert abs(result["v_hat_mps"] - 20.0) < 1e-6


class TestFit:
    @staticmethod
    def _make_manifest(tmp_path, k, distances):
        rows = []
        for i, dist in enumerate(distances):
            gain = float(log_distance_power(k, dist))
            fname = f"rays_{i}.csv"
            (tmp_path / fname).write_text(
                "ray_id,power_w,path_length_m\n"
                f"0,{gain * 0.5!r},{dist!r}\n"
                f"1,{gain * 0.5!r},{dist * 1.1!r}\n"
            )
            rows.append(f"{dist!r},{fname}")
        manifest = tmp_path / "manifest.csv"
        manifest.write_text("distance_m,file\n" + "\n".join(rows) + "\n")
        return manifest

    def test_exact_recovery(self, tmp_path, capsys):
        manifest = self._make_manifest(tmp_path, SIMULATED_CHANNEL_FIT, (1.0, 2.0, 5.0, 10.0))
        rc = main(["fit", str(manifest)])
        assert rc == 0
        result = json.loads(capsys.readouterr().out)
        assert abs(result["k_db"] - (-49.32)) < 1e-9
        assert abs(result["gamma"] - 1.21) < 1e-9

    def test_single_distance_exits_3(self, tmp_path):
        manifest = self._make_manifest(tmp_path, SIMULATED_CHANNEL_FIT, (5.0,))
        assert main(["fit", str(manifest)]) == 3

    def test_energy_violation_exits_2(self, tmp_path):
        manifest = self._make_manifest(tmp_path, SIMULATED_CHANNEL_FIT, (1.0, 2.0))
        (tmp_path / "rays_0.csv").write_text(
            "ray_id,power_w,path_length_m\n0,0.7,1.0\n1,0.6,1.2\n"
        )
        assert main(["fit", str(manifest)]) == 2

    def test_malformed_ray_row_exits_2(self, tmp_path, capsys):
        manifest = self._make_manifest(tmp_path, SIMULATED_CHANNEL_FIT, (1.0, 2.0))
        (tmp_path / "rays_1.csv").write_text(
            "ray_id,power_w,path_length_m\n0,0.001,bad\n"
        )
        rc = main(["fit", str(manifest)])
        assert rc == 2
        assert "rays_1.csv:2" in capsys.readouterr().err


class TestFigureCommand:
    def test_deterministic_kinematics_table(self, tmp_path, capsys):
        for name in ("x", "y"):
            rc = main(["figure", "6", "--out", str(tmp_path / name)])
            assert rc == 0
        assert (tmp_path / "x" / "fig6.csv").read_bytes() == (
            tmp_path / "y" / "fig6.csv"
        ).read_bytes()

    def test_seeded_runs_are_identical(self, tmp_path):
        for name in ("a", "b"):
            rc = main([
                "figure", "7", "--trials", "5", "--seed", "42", "--out", str(tmp_path / name),
            ])
            assert rc == 0
        assert (tmp_path / "a" / "fig7.csv").read_bytes() == (
            tmp_path / "b" / "fig7.csv"
        ).read_bytes()

    def test_zero_trials_exits_2(self, tmp_path):
        assert main(["figure", "7", "--trials", "0", "--out", str(tmp_path)]) == 2

    def test_unknown_id_exits_2(self, tmp_path):
        assert main(["figure", "99", "--out", str(tmp_path)]) == 2

    def test_svg_flag(self, tmp_path):
        rc = main(["figure", "6", "--out", str(tmp_path), "--svg"])
        assert rc == 0
        assert (tmp_path / "fig6.svg").exists()
