import pytest

from ballkit import storage
from ballkit.main import (
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_USAGE,
    _demo_sizes,
    attach_option_values,
    format_number,
    main,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err


def test_format_number():
    assert format_number(1.0) == "1"
    assert format_number(4 * 3.141592653589793 / 15) == "0.837758040957278"
    assert format_number(1 - 2j) == "1-2j"


def test_option_values_starting_with_minus():
    argv = ["helmholtz", "--expr", "-80*sin(10*x)", "--k2", "-7.5", "--out", "u.npz"]
    assert attach_option_values(argv) == ["helmholtz", "--expr=-80*sin(10*x)", "--k2=-7.5", "--out", "u.npz"]


def test_eval_with_negative_expression_and_point(capsys):
    code, out, _ = run(capsys, "eval", "--expr", "-x", "--point", "-0.5,0,0")
    assert code == EXIT_OK
    assert float(out) == pytest.approx(0.5, abs=1e-14)


def test_demo_size_accepts_triples():
    assert _demo_sizes("40") == 40
    assert _demo_sizes("9,8,10") == (9, 8, 10)


def test_integrate(capsys):
    code, out, _ = run(capsys, "integrate", "--expr", "x^2")
    assert code == EXIT_OK
    assert out == "0.837758040957278"


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "--expr", "1", "--point", "0.1,0.2,0.3")
    assert code == EXIT_OK
    assert out == "1"


def test_eval_spherical(capsys):
    code, out, _ = run(capsys, "eval", "--coords", "sph", "--expr", "r^2", "--point", "0.5,1,2")
    assert code == EXIT_OK
    assert float(out) == pytest.approx(0.25, abs=1e-14)


def test_derive_at_point(capsys):
    code, out, _ = run(capsys, "derive", "--expr", "x*y", "--axis", "x", "--point", "0.2,0.4,0")
    assert code == EXIT_OK
    assert float(out) == pytest.approx(0.4, abs=1e-13)


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "integrate", "--expr", "1 + * 2")
    assert code == EXIT_PARSE
    assert "offset 4" in err


def test_unknown_identifier_exit_code(capsys):
    code, _, _ = run(capsys, "integrate", "--expr", "foo(x)")
    assert code == EXIT_PARSE


def test_point_outside_ball_exit_code(capsys):
    code, _, err = run(capsys, "eval", "--expr", "x", "--point", "1,1,1")
    assert code == EXIT_NUMERICAL
    assert "DomainError" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["eval", "--expr", "x"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["integrate"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["construct", "--expr", "x", "--size", "3,4"])
    assert exc.value.code == EXIT_USAGE


def test_construct_then_info(capsys, tmp_path):
    path = tmp_path / "x2.bfn"
    code, out, _ = run(capsys, "construct", "--expr", "x^2", "--out", str(path))
    assert code == EXIT_OK
    assert out.startswith(f"{path}: ")
    assert storage.load(path).sizes[0] <= 3

    code, out, _ = run(capsys, "info", "--in", str(path))
    lines = dict(line.split(": ", 1) for line in out.splitlines())
    assert lines["resolved"] == "true"
    assert lines["real"] == "true"
    assert lines["integral"] == "0.837758040957278"


def test_missing_file_exit_code(capsys, tmp_path):
    code, _, _ = run(capsys, "info", "--in", str(tmp_path / "missing.bfn"))
    assert code == EXIT_NUMERICAL


def test_slice_csv(capsys, tmp_path):
    out_path = tmp_path / "slice.csv"
    code, _, _ = run(capsys, "slice", "--expr", "z", "--plane", "z=0.5", "--res", "11", "--out", str(out_path))
    assert code == EXIT_OK
    lines = out_path.read_text().splitlines()
    assert lines[0] == "x,y,value"
    assert all(line.endswith(",0.5") for line in lines[1:])


def test_slice_invalid_plane(capsys):
    code, _, _ = run(capsys, "slice", "--expr", "z", "--plane", "z=2")
    assert code == EXIT_NUMERICAL


def test_ptdecomp_writes_scalars(capsys, tmp_path):
    prefix = tmp_path / "field"
    code, _, _ = run(capsys, "ptdecomp", "--vexpr", "-y;x;0", "--out", str(prefix))
    assert code == EXIT_OK
    assert storage.load(f"{prefix}_phi.bfn").sizes
    assert storage.load(f"{prefix}_psi.bfn").sizes


def test_ptdecomp_rejects_divergent_field(capsys):
    code, _, err = run(capsys, "ptdecomp", "--vexpr", "x;y;z")
    assert code == EXIT_NUMERICAL
    assert "NotDivergenceFreeError" in err


@pytest.mark.slow
def test_helmholtz_then_eval(capsys, tmp_path):
    path = tmp_path / "u.bfn"
    code, _, _ = run(
        capsys, "helmholtz", "--expr", "-80*sin(10*x)", "--k2", "20", "--bc-kind", "neumann",
        "--bc-expr", "10*x*cos(10*x)", "--size", "50,50,50", "--out", str(path),
    )
    assert code == EXIT_OK
    code, out, _ = run(capsys, "eval", "--in", str(path), "--point", "0.5,0,0")
    assert float(out) == pytest.approx(-0.958924274663138, abs=1e-9)
