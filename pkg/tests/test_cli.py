import math

from twomodebec.cli import main
from twomodebec.output import read_csv_columns


def _evolve_args(out, *extra):
    return ["evolve", "--out", str(out),
            "--set", "model.delta0=0.2",
            "--set", "evolve.model=lab",
            "--set", "evolve.t_final=20",
            "--set", "evolve.s0=-1", *extra]


def test_evolve_writes_trajectory_and_meta(tmp_path):
    out = tmp_path / "run"
    assert main(_evolve_args(out)) == 0
    cols = read_csv_columns(out / "trajectory.csv")
    assert cols["t"][0] == "0"
    # Rabi oscillation starting from mode a
    t_end = float(cols["t"][-1])
    assert abs(float(cols["pop_a"][-1])
               - math.cos(0.1 * t_end) ** 2) < 1e-6
    meta = (out / "meta").read_text()
    assert "command = evolve" in meta
    assert "config.evolve.t_final = 20" in meta


def test_config_error_exit_code(tmp_path):
    assert main(_evolve_args(tmp_path, "--set", "model.c=-1")) == 2
    assert main(_evolve_args(tmp_path, "--set", "model.bogus=1")) == 2
    assert main(["evolve", "--config", str(tmp_path / "none.ini"),
                 "--out", str(tmp_path)]) == 2
    # lz without the sweep section is a config error
    assert main(["lz", "--out", str(tmp_path)]) == 2
    # quantum without n_particles is a config error
    assert main(["quantum", "--out", str(tmp_path)]) == 2


def test_numerical_failure_exit_code(tmp_path):
    # coarse step + strict norm tolerance must fail as a numerical error
    code = main(_evolve_args(tmp_path / "x",
                             "--set", "model.c=1",
                             "--set", "evolve.s0=0",
                             "--set", "evolve.phi0=1.0",
                             "--set", "integrator.dt=2.0",
                             "--set", "integrator.norm_tol=1e-14"))
    assert code == 3


def test_io_error_exit_code(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("occupied")
    assert main(_evolve_args(blocker / "sub")) == 4


def test_config_file_with_override(tmp_path):
    ini = tmp_path / "run.ini"
    ini.write_text("[model]\ndelta0 = 0.2\n[evolve]\nmodel = effective\n"
                   "t_final = 5\ns0 = 0.3\n")
    out = tmp_path / "out"
    assert main(["evolve", "--config", str(ini), "--out", str(out),
                 "--set", "evolve.t_final=7"]) == 0
    cols = read_csv_columns(out / "trajectory.csv")
    assert float(cols["t"][-1]) == 7.0


def test_validity_command(tmp_path):
    out = tmp_path / "v"
    assert main(["validity", "--out", str(out),
                 "--set", "model.delta0=0.2", "--set", "model.c=1",
                 "--set", "model.A=28.4", "--set", "model.omega=20",
                 "--set", "validity.multipliers=10,20",
                 "--set", "validity.t_final=40"]) == 0
    cols = read_csv_columns(out / "validity.csv")
    errs = [float(x) for x in cols["max_error"]]
    assert errs[1] < errs[0] < 0.1


def test_quantum_command(tmp_path):
    out = tmp_path / "q"
    assert main(["quantum", "--out", str(out),
                 "--set", "model.delta0=0.2", "--set", "model.c=1",
                 "--set", "quantum.n_particles=8",
                 "--set", "grid.n=3"]) == 0
    cols = read_csv_columns(out / "quantum_spectrum.csv")
    assert len(cols["gamma"]) == 3 * 9
    assert cols["n_particles"][0] == "8"


def test_seed_flag_recorded(tmp_path):
    out = tmp_path / "s"
    assert main(_evolve_args(out, "--seed", "42")) == 0
    assert "seed = 42" in (out / "meta").read_text()
