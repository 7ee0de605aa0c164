import json

import pytest

from kovacic_aim.cli import (
    EXIT_EMPTY_CLASS,
    EXIT_INPUT_ERROR,
    EXIT_NEEDS_EXTENSION,
    EXIT_NOT_INTEGRABLE,
    EXIT_OK,
    main,
)
from kovacic_aim.params import ParamSpace
from kovacic_aim.parser import parse, parse_param


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.mark.parametrize("argv, expected", [
    (["solve", "--expr", "x^2 + 5 + 2*x^-2"], EXIT_OK),
    (["solve", "--expr", "x^2 + 1/x"], EXIT_NOT_INTEGRABLE),
    (["solve", "--expr", "x^2 + 2 + 3*x^-4"], EXIT_NEEDS_EXTENSION),
    (["solve", "--expr", "x^2 + x^-3"], EXIT_EMPTY_CLASS),
    (["solve", "--expr", "x +"], EXIT_INPUT_ERROR),
    (["classify", "--r", "3", "--m", "2"], EXIT_EMPTY_CLASS),
    (["classify", "--r", "2", "--m", "2"], EXIT_OK),
    (["classify", "--r", "2"], EXIT_INPUT_ERROR),
    (["candidates", "--expr", "2*x^2 + 1/x"], EXIT_NEEDS_EXTENSION),
    (["delta", "--universal", "--d", "7"], EXIT_INPUT_ERROR),
    (["delta", "--universal", "--d", "3", "--cap", "2"], EXIT_INPUT_ERROR),
    (["delta", "--d", "1", "--f", "x"], EXIT_INPUT_ERROR),
    (["variety", "--family", "airy_like", "--d", "1", "--signs", "++"], EXIT_INPUT_ERROR),
])
def test_exit_codes(capsys, argv, expected):
    code, _, _ = run(capsys, *argv)
    assert code == expected


def test_errors_go_to_stderr(capsys):
    code, out, err = run(capsys, "solve", "--expr", "x + * 2")
    assert code == EXIT_INPUT_ERROR
    assert out == ""
    assert err.startswith("❌")


def test_missing_arguments_exit_through_argparse(capsys):
    with pytest.raises(SystemExit) as info:
        main(["stratum", "--expr", "x^2 + 1/x"])
    assert info.value.code == 2


def test_classify_text(capsys):
    _, out, _ = run(capsys, "classify", "--r", "3", "--m", "2")
    assert out.strip() == "❌ class C4"
    _, out, _ = run(capsys, "classify", "--expr", "x + 5/(16*x^2)")
    assert out.strip() == "✅ class C2"


def test_universal_delta_text(capsys):
    code, out, _ = run(capsys, "delta", "--universal", "--d", "1")
    assert code == EXIT_OK
    assert out.strip() == "alpha*beta' - alpha'*beta - beta^2"


def test_universal_delta_cap_override(capsys, monkeypatch):
    monkeypatch.setenv("KOVACIC_UNIVERSAL_CAP", "1")
    code, _, err = run(capsys, "delta", "--universal", "--d", "2")
    assert code == EXIT_INPUT_ERROR
    assert err.startswith("❌")
    code, report = run_json(capsys, "delta", "--universal", "--d", "2", "--cap", "2")
    assert code == EXIT_OK
    assert "alpha^2*beta''" in report["obstruction"]


def test_concrete_delta(capsys):
    code, report = run_json(capsys, "delta", "--d", "3", "--f", "-2*x + 2/x", "--g", "6")
    assert code == EXIT_OK
    assert report["obstruction"] == "0"


def test_solve_json(capsys):
    code, report = run_json(capsys, "solve", "--expr", "x^2 + 5 + 2*x^-2")
    assert code == EXIT_OK
    assert report["command"] == "solve"
    assert report["input"] == {"expr": "x^2 + 5 + 2*x^-2"}
    assert report["classification"] == "C3"
    verdict = report["verdict"]
    assert verdict["status"] == "Integrable"
    assert verdict["d_max"] == 25
    (solution,) = verdict["solutions"]
    assert (solution["lambda"], solution["P"], solution["omega"]) == ("2", "1", "x")
    assert "timings" not in report


def test_json_round_trips(capsys):
    _, report = run_json(capsys, "solve", "--expr", "x^2 + 9 + 2*x^-2", "--dmax", "4")
    assert report["candidates"]
    for record in report["candidates"]:
        assert set(record) >= {"route", "s_inf", "s0", "outcome"}
        for key in ("omega", "P"):
            if key in record:
                assert str(parse(record[key])) == record[key]
    for solution in report["verdict"]["solutions"]:
        assert parse(solution["P"]) == parse("x^2 + 5/2")
        assert parse(solution["antiderivative"]) == parse("1/2*x^2")


def test_output_is_deterministic(capsys):
    argv = ["solve", "--expr", "x^2 + 5 + 2*x^-2", "--json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    _, first, _ = run(capsys, "candidates", "--expr", "x^2 + 9 + 2*x^-2", "--dmax", "10")
    _, second, _ = run(capsys, "candidates", "--expr", "x^2 + 9 + 2*x^-2", "--dmax", "10")
    assert first == second


def test_timings_on_request(capsys):
    _, report = run_json(capsys, "solve", "--expr", "x^2 + 1/x", "--timings")
    assert set(report["timings"]) == {"solve"}
    assert report["timings"]["solve"] >= 0


def test_output_format_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("KOVACIC_OUTPUT", "json")
    _, out, _ = run(capsys, "classify", "--r", "1", "--m", "0")
    assert json.loads(out)["classification"] == "C1"
    _, out, _ = run(capsys, "classify", "--r", "1", "--m", "0", "--format", "text")
    assert out.strip() == "✅ class C1"


def test_candidates_table(capsys):
    code, out, _ = run(capsys, "candidates", "--expr", "x^2 + 5 + 2*x^-2", "--dmax", "6")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "🔍 class C3"
    assert lines[1] == "📊 Candidates"
    assert lines[2].split()[:3] == ["route", "s_inf", "s0"]
    assert any("admissible" in line for line in lines[3:])


def test_decompose_cover(capsys):
    code, report = run_json(capsys, "decompose", "--cover", "x^-2;3 + 2/x;x")
    assert code == EXIT_OK
    dec = report["decomposition"]
    assert dec["case"] == 3
    assert parse(dec["R"]) == parse("x^-2")
    assert parse(dec["A"]) == parse("x")


def test_decompose_bad_cover(capsys):
    code, _, err = run(capsys, "decompose", "--cover", "x^-2;x")
    assert code == EXIT_INPUT_ERROR
    assert "R;B;A" in err


def test_variety_json(capsys):
    code, report = run_json(capsys, "variety", "--family", "biconfluent", "--d", "1", "--signs", "++",
                            "--eliminate", "gamma")
    assert code == EXIT_OK
    variety = report["variety"]
    assert variety["eliminated"] == {"gamma": "-alpha - 4"}
    assert variety["condition_a"] == []
    assert not variety["empty"]
    space = ParamSpace.parse_declaration("alpha,beta,gamma,delta")
    for eq in variety["delta_coeffs"]:
        assert str(parse_param(eq, space)) == eq


def test_variety_from_expression(capsys):
    code, report = run_json(capsys, "variety", "--family", "x^2 + beta/x", "--params", "beta",
                            "--d", "0", "--signs", "+")
    assert code == EXIT_OK
    assert report["variety"]["empty"]


def test_stratum(capsys):
    code, report = run_json(capsys, "stratum", "--expr", "x^2 + 5 + 2*x^-2", "--d", "0")
    assert code == EXIT_OK
    assert report["stratum"] == [
        {"signs": "++", "member": True},
        {"signs": "+-", "member": False},
        {"signs": "-+", "member": False},
        {"signs": "--", "member": False},
    ]
    _, out, _ = run(capsys, "stratum", "--expr", "x^2 + 5 + 2*x^-2", "--d", "0")
    assert out.splitlines()[0] == "✅ ++"


def test_variety_with_constant_condition(capsys):
    code, report = run_json(capsys, "variety", "--family", "x^2 + 5 + 2*x^-2", "--d", "1", "--signs", "++")
    assert code == EXIT_OK
    assert report["variety"]["empty"]
    assert report["variety"]["condition_a"] == ["1"]
    assert report["variety"]["delta_coeffs"] == []
