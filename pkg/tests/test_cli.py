import json
import os
import pathlib
import subprocess
import sys

import pytest

from halg import cli

DATA = pathlib.Path(__file__).parent / "data"


def args_for(command, **kw):
    argv = [command, "-"]
    for k, v in kw.items():
        argv += ["--" + k.replace("_", "-"), str(v)]
    return cli.build_parser().parse_args(argv)


def run(command, name, **kw):
    text = (DATA / name).read_text()
    return cli.run(command, text, args_for(command, **kw))


def test_profile_of_node():
    rep, code = run("profile", "node.halg")
    assert code == 0
    r = rep["result"]
    assert (r["dim"], r["depth"], r["type"], r["cm"], r["gorenstein"]) == (1, 1, 1, True, True)


def test_gb_of_empty_ideal():
    rep, code = cli.run("gb", "ring R\nvars x:1 y:1\nend\n", args_for("gb"))
    assert code == 0
    assert rep["result"]["basis"] == []
    assert rep["result"]["ring"] == rep["result"]["ambient"]


def test_verify_main_on_semigroup_ring():
    rep, code = run("verify-main", "semigroup_345.halg")
    r = rep["result"]
    assert code == 0 and r["lambda"] == 2 and r["u"] <= 2 and r["inequality_holds"]
    assert r["message"] == "dim R = 1 <= 1"
    assert rep["bound"] == 6


def test_verify_main_flags_non_canonical_choice():
    rep, code = run("verify-main", "fat_point.halg", C="R")
    assert code == 2
    assert "not Gorenstein" in rep["result"]["message"]
    assert rep["result"]["inequality_holds"] is None


@pytest.mark.parametrize("command", sorted(cli.HANDLERS))
def test_every_subcommand_runs_on_node(command):
    extra = {"module": "M"} if command in ("gc-check", "gc-dim", "depth") else {}
    rep, code = run(command, "node.halg", **extra)
    assert code in (0, 2), rep.get("error")
    assert rep["command"] == command and rep["status"] in ("passed", "refuted")


def test_refutation_exit_code():
    rep, code = run("semidualizing-check", "node.halg", C="k")
    assert code == 2 and rep["result"]["stage"] == "end"


def test_error_exit_codes():
    rep, code = cli.run("frobnicate", "ring R\nvars x:1\nend", args_for("gb"))
    assert code == 1 and rep["status"] == "error"
    rep, code = cli.run("gb", "ring R\nvars x:0\nend", args_for("gb"))
    assert code == 1 and "line 2, column 6" in rep["error"]
    rep, code = run("gc-check", "node.halg")
    assert code == 1 and "missing --module" in rep["error"]


def test_reports_with_verified_verdicts_carry_bound():
    for command, kw in [("semidualizing-check", {}), ("gc-check", {"module": "R"}),
                        ("koszul", {}), ("level-bound", {})]:
        rep, _ = run(command, "fat_point.halg", **kw)
        text = cli.render(rep)
        if "verified-to-bound" in text:
            assert isinstance(rep["bound"], int)


def test_bound_flag_is_respected():
    rep, _ = run("semidualizing-check", "fat_point.halg", bound=3)
    assert rep["bound"] == 3 and rep["result"]["bound"] == 3


def test_report_bytes_are_deterministic():
    for command in ("profile", "res", "koszul", "verify-reiten"):
        a = cli.render(run(command, "axes.halg")[0])
        b = cli.render(run(command, "axes.halg")[0])
        assert a == b
        assert json.loads(a)["wall_time"] is None


def test_timing_flag_adds_wall_time():
    text = (DATA / "node.halg").read_text()
    argv = cli.build_parser().parse_args(["dim", "-", "--timing"])
    rep, _ = cli.run("dim", text, argv)
    assert isinstance(rep["wall_time"], float)


def _subprocess(*argv, env=None):
    return subprocess.run([sys.executable, "-m", "halg.cli", *argv], capture_output=True,
                          text=True, env=env)


def test_entry_point_streams_and_exit_codes():
    p = _subprocess("profile", str(DATA / "node.halg"))
    assert p.returncode == 0 and json.loads(p.stdout)["status"] == "passed"
    assert p.stderr.startswith("halg profile:")
    p = _subprocess("nonsense", str(DATA / "node.halg"))
    assert p.returncode == 1
    p = _subprocess("profile")
    assert p.returncode == 1


def test_default_characteristic_from_environment(tmp_path):
    env = dict(os.environ, HALG_DEFAULT_CHAR="101")
    path = tmp_path / "nochar.halg"
    path.write_text("ring R\nvars x:1\nideal x^2\nend\n")
    p = _subprocess("gb", str(path), env=env)
    assert p.returncode == 0
    assert json.loads(p.stdout)["result"]["ring"].startswith("F_101[")
    # an explicit char line wins over the environment
    p = _subprocess("gb", str(DATA / "node.halg"), env=env)
    assert json.loads(p.stdout)["result"]["ring"].startswith("F_32003[")
