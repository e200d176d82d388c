"""Command-line front end: output contracts, exit codes, determinism."""

import json

from speclab.cli import main, parse_number
from fractions import Fraction


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_number():
    assert parse_number("3/4") == Fraction(3, 4)
    assert parse_number("5") == 5
    assert isinstance(parse_number("0.3"), float)


def test_spectrum_scalar_values(capsys):
    code, out, _ = run(capsys, "--format", "csv", "spectrum", "scalar", "--n", "3", "--count", "4")
    assert code == 0
    rows = out.strip().splitlines()[1:]
    assert [r.split(",")[1] for r in rows] == ["3/4", "15/4", "35/4", "63/4"]


def test_spectrum_laplace_operator_flag(capsys):
    code, out, _ = run(
        capsys,
        "--format",
        "csv",
        "spectrum",
        "scalar",
        "--n",
        "2",
        "--count",
        "3",
        "--operator",
        "laplacian",
    )
    assert code == 0
    vals = [r.split(",")[1] for r in out.strip().splitlines()[1:]]
    assert vals == ["0/1", "2/1", "6/1"]


def test_spectrum_dirac_lattice(capsys):
    code, out, _ = run(capsys, "--format", "csv", "spectrum", "dirac", "--n", "2", "--count", "3")
    assert code == 0
    vals = {r.split(",")[1] for r in out.strip().splitlines()[1:]}
    assert vals == {"1/1", "-1/1", "2/1", "-2/1", "3/1", "-3/1"}


def test_intertwinor_scalar_integer_order(capsys):
    code, out, _ = run(
        capsys, "--format", "csv", "intertwinor", "scalar", "--n", "4", "--r", "1", "--jmax", "2"
    )
    assert code == 0
    vals = [r.split(",")[1] for r in out.strip().splitlines()[1:]]
    assert vals == ["2/1", "6/1", "12/1"]


def test_intertwinor_dirac_odd(capsys):
    code, out, _ = run(
        capsys,
        "--format",
        "csv",
        "intertwinor",
        "dirac-odd",
        "--n",
        "2",
        "--k",
        "1",
        "--lambda-max",
        "3",
    )
    assert code == 0
    pairs = [tuple(r.split(",")[:2]) for r in out.strip().splitlines()[1:]]
    assert ("1", "0/1") in pairs
    assert ("2", "6/1") in pairs and ("-2", "-6/1") in pairs
    assert ("3", "24/1") in pairs and ("-3", "-24/1") in pairs


def test_intertwinor_half_order_float(capsys):
    code, out, _ = run(
        capsys,
        "--format",
        "csv",
        "intertwinor",
        "scalar",
        "--n",
        "2",
        "--r",
        "1/2",
        "--jmax",
        "2",
    )
    assert code == 0
    vals = [r.split(",")[1] for r in out.strip().splitlines()[1:]]
    assert vals == ["1/2", "3/2", "5/2"]


def test_intertwinor_residue_family(capsys):
    code, out, _ = run(
        capsys, "intertwinor", "residue", "--n", "2", "--j0", "1", "--jmax", "3"
    )
    assert code == 0
    payload = json.loads(out)
    assert [r["kind"] for r in payload["rows"]] == ["residue"] * 4
    assert payload["rows"][2]["value"] == "0/1"


def test_refute_off_spectrum(capsys):
    code, out, _ = run(capsys, "refute", "--n", "3", "--lambda", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["steps"] == ["0"]
    assert payload["violated_bound"] == "3/4"


def test_refute_on_spectrum(capsys):
    code, out, _ = run(capsys, "refute", "--n", "3", "--lambda", "15/4")
    assert code == 0
    assert json.loads(out) == {"level": 1, "on_spectrum": True}
    code, out, _ = run(capsys, "refute", "--n", "2", "--lambda", "0")
    assert code == 0
    assert json.loads(out)["level"] == 0


def test_refute_below_bound_is_usage_error(capsys):
    code, _, err = run(capsys, "refute", "--n", "3", "--lambda", "1/9")
    assert code == 2
    assert "bound" in err


def test_verify_scalar_passes(capsys):
    code, out, _ = run(capsys, "verify", "scalar", "--n", "3", "--cap", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["all_passed"] is True
    assert payload["scalar"]["checks"]


def test_verify_cost_guard(capsys):
    code, _, err = run(capsys, "verify", "all", "--n", "7", "--cap", "99")
    assert code == 2
    assert "basis" in err or "guard" in err


def test_byte_determinism(capsys):
    args = ("--format", "json", "intertwinor", "scalar", "--n", "2", "--r", "0.3", "--jmax", "6")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_output_file(tmp_path, capsys):
    target = tmp_path / "table.csv"
    code, out, _ = run(
        capsys,
        "--format",
        "csv",
        "--output",
        str(target),
        "spectrum",
        "scalar",
        "--n",
        "2",
        "--count",
        "2",
    )
    assert code == 0
    assert out == ""
    assert target.read_text().startswith("level,value,kind")


def test_usage_error_exit_code(capsys):
    assert main(["spectrum", "nonsense"]) == 2
    assert main([]) == 2


def test_verify_entropy_quick(capsys):
    code, out, _ = run(capsys, "verify", "entropy", "--order", "60", "--quick")
    assert code == 0
    payload = json.loads(out)
    assert payload["entropy"]["all_passed"] is True


def test_verify_entropy_underresolved_quadrature_fails_honestly(capsys):
    # lowering the order below the equality-case error budget must be
    # reported as a failure, never masked
    code, out, _ = run(
        capsys, "verify", "entropy", "--order", "40", "--cutoff", "18", "--quick"
    )
    assert code == 1
    payload = json.loads(out)
    failing = [r for r in payload["entropy"]["rows"] if r["status"] == "fail"]
    assert any("0.6" in r["f_description"] for r in failing)


def test_jobs_flag_parallel_scopes(capsys):
    code, out, _ = run(
        capsys,
        "--jobs",
        "2",
        "verify",
        "scalar",
        "--n",
        "2",
        "--cap",
        "2",
    )
    assert code == 0


def test_jobs_parallel_multi_scope(capsys):
    code, out, _ = run(
        capsys,
        "--jobs",
        "3",
        "verify",
        "all",
        "--n",
        "2",
        "--cap",
        "2",
        "--N",
        "1",
        "--quick",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["all_passed"] is True
    assert {"scalar", "spinor", "entropy"} <= set(payload)


def test_intertwinor_entropy_derivative_and_first_order(capsys):
    code, out, _ = run(
        capsys, "--format", "csv", "intertwinor", "entropy-derivative", "--n", "2", "--jmax", "3"
    )
    assert code == 0
    vals = [r.split(",")[1] for r in out.strip().splitlines()[1:]]
    assert vals == ["0/1", "2/1", "3/1", "11/3"]
    code, out, _ = run(
        capsys, "--format", "csv", "intertwinor", "first-order", "--n", "3", "--jmax", "2"
    )
    assert code == 0
    vals = [r.split(",")[1] for r in out.strip().splitlines()[1:]]
    assert vals == ["1/1", "2/1", "3/1"]


def test_intertwinor_adjacent_candidates(capsys):
    code, out, _ = run(
        capsys, "--format", "csv", "intertwinor", "adjacent", "--n", "3", "--lambda", "3/2"
    )
    assert code == 0
    vals = [r.split(",")[0] for r in out.strip().splitlines()[1:]]
    assert vals == ["-3/2", "1/2", "5/2"]
