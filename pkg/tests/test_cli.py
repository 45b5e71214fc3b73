import json
import subprocess
import sys

import pytest

from pntlab import cli


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_zeta_eval_json(capsys):
    code, out, _ = run(["zeta-eval", "--s", "2"], capsys)
    assert code == 0
    d = json.loads(out)
    assert d["schema"] == 1
    assert set(d) == {"schema", "s_re", "s_im", "value_re", "value_im", "err", "method"}
    assert abs(d["value_re"] - 1.6449340668) < 1e-10


def test_zeta_eval_methods_and_csv(capsys):
    code, out, _ = run(["zeta-eval", "--s", "0.5+14.134725i", "--method", "eta", "--format", "csv"], capsys)
    assert code == 0
    header, row = out.splitlines()
    assert header == "s_re,s_im,value_re,value_im,err,method"
    assert row.endswith("eta_series")


def test_pi_table(capsys):
    code, out, _ = run(["pi-table", "--max", "1e6"], capsys)
    assert code == 0
    assert out.splitlines()[-1] == "1000000,78498,78627,72382"
    code, out, _ = run(["pi-table", "--max", "1e4", "--format", "json"], capsys)
    assert json.loads(out)["rows"][1]["li_rounded"] == 1245


def test_pi_table_checkpoint_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("PNTLAB_CHECKPOINTS", str(tmp_path))
    code, _, _ = run(["pi-table", "--max", "1e8"], capsys)
    assert code == 0
    assert "100000000\t5761455\tsublinear" in (tmp_path / "pi_checkpoints.tsv").read_text()


def test_zeros(capsys, tmp_path):
    out_file = tmp_path / "z.csv"
    code, _, _ = run(["zeros", "--count", "5", "--out", str(out_file)], capsys)
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert lines[0] == "index,t,residual" and len(lines) == 6
    assert [round(float(l.split(",")[1]), 4) for l in lines[1:]] == [14.1347, 21.0220, 25.0109, 30.4249, 32.9351]


def test_outputs_are_byte_identical(capsys):
    a = run(["zeros", "--count", "3"], capsys)[1]
    b = run(["zeros", "--count", "3"], capsys)[1]
    assert a == b
    a = run(["pnt-tail", "--max", "1e5"], capsys)[1]
    b = run(["pnt-tail", "--max", "1e5"], capsys)[1]
    assert a == b and a.startswith("x,I(x)\n100,")


def test_euler_product(capsys):
    code, out, _ = run(["euler-product", "--s", "2", "--max", "2"], capsys)
    assert code == 0 and abs(json.loads(out)["value_re"] - 4 / 3) < 1e-15


def test_series_commands(capsys):
    code, out, _ = run(["theta-ratio", "--max", "1e4", "--count", "5"], capsys)
    assert code == 0 and out.splitlines()[0] == "x,theta_over_x,pi_logx_over_x"
    code, out, _ = run(["tauber-demo", "--max", "1e5", "--count", "3", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["columns"] == ["T", "abs_error"]


@pytest.mark.parametrize(
    "argv,code",
    [
        (["bogus"], cli.EXIT_USAGE),
        (["zeta-eval"], cli.EXIT_USAGE),
        (["zeta-eval", "--s", "abc"], cli.EXIT_USAGE),
        (["zeta-eval", "--s", "1", "--method", "floor"], cli.EXIT_USAGE),
        (["zeta-eval", "--s", "0.5", "--method", "direct"], cli.EXIT_USAGE),
        (["zeros", "--count", "21"], cli.EXIT_USAGE),
        (["pi-table", "--max", "1e14"], cli.EXIT_RESOURCE),
        (["euler-product", "--s", "2", "--max", "1e20"], cli.EXIT_RESOURCE),
        (["pnt-tail", "--max", "1e10"], cli.EXIT_RESOURCE),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert cli.main(argv) == code


def test_exit_codes_distinct():
    codes = {cli.EXIT_OK, cli.EXIT_ACCEPTANCE, cli.EXIT_USAGE, cli.EXIT_RESOURCE, cli.EXIT_NUMERIC}
    assert len(codes) == 5


def test_verify_all_failure_exit(monkeypatch, capsys):
    from pntlab import acceptance

    fake = [acceptance.CriterionResult(1, "table", False, "forced", 0.0)]
    monkeypatch.setattr(acceptance, "run_all", lambda *a, **k: fake)
    assert cli.main(["verify-all", "--max", "1e3"]) == cli.EXIT_ACCEPTANCE
    assert "0/1 criteria passed" in capsys.readouterr().out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "pntlab", "zeta-eval", "--s", "3"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["method"] == "direct_series"
