import json
import subprocess
import sys

import pytest

from sdbounds.cli import RunConfig, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_constants_code(capsys):
    code, out, _ = run(capsys, "constants", "--family", "code-2-4")
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1
    assert abs(float(data["bound"]) - 0.1656298476) < 1e-9
    assert data["t0"]["exact"] == "1/5"


def test_constants_lattice(capsys):
    code, out, _ = run(capsys, "constants", "--family", "lattice-23")
    assert code == 0 and abs(float(json.loads(out)["bound"]) - 0.6262824896) < 1e-8


def test_extremal(capsys):
    code, out, _ = run(capsys, "extremal", "--family", "code-2-4", "--n", "24")
    assert code == 0 and json.loads(out)["d_ext"] == 8


def test_relation_rationals_as_strings(capsys):
    code, out, _ = run(capsys, "relation", "--family", "code-2-4", "--n", "48", "--t3", "1/100")
    vals = json.loads(out)["relation"]["values"]
    assert code == 0 and all(isinstance(v, str) for v in vals) and vals[-1] == "1"


def test_certify_replayable(capsys):
    from sdbounds.certify import verify_certificate
    code, out, _ = run(capsys, "certify", "--family", "code-2-4", "--n", "240")
    assert code == 0 and verify_certificate(json.loads(out)["certificate"])


def test_other_subcommands(capsys):
    for argv in (["families"], ["families", "--tsv"],
                 ["hermite-bound", "--family", "code-2-4", "--k", "1", "2"],
                 ["validate-saddle", "--case", "binomial", "--n", "60", "--k", "2"],
                 ["validate-saddle", "--case", "profile"],
                 ["shadow", "--theorem", "codes1", "--n", "48"],
                 ["shadow", "--theorem", "quantq", "--q", "3", "--m", "40"],
                 ["shadow", "--theorem", "z4e1", "--n", "16"]):
        code, out, err = run(capsys, *argv)
        assert code == 0, (argv, err)
        assert out.strip()


@pytest.mark.parametrize("argv", [
    ["extremal", "--family", "code-3-2", "--n", "4"],
    ["constants"],
    ["constants", "--family", "code-2-4", "--prec", "20"],
    ["nosuch"],
    ["relation", "--family", "code-2-4", "--n", "48", "--t3", "0.1.2"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_precondition_error(capsys):
    code, out, err = run(capsys, "extremal", "--family", "code-2-4", "--n", "12")
    assert code == 1 and json.loads(err)["error"] == "FamilyError"


def test_run_config_guard():
    with pytest.raises(ValueError):
        RunConfig(precision_bits=32)


def test_byte_identical_subprocess():
    cmd = [sys.executable, "-m", "sdbounds.cli", "certify", "--family", "code-3-3", "--n", "120"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and b"d_bound" in a
