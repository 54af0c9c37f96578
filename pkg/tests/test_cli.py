import json
from fractions import Fraction as F

import pytest

from submodcurv.cli import (JobConfig, main, parse_config, render_report,
                            run_task)
from submodcurv.errors import InputError

BASE = """
[module]
dimension = 2
weights = 1 2

[ideal]
generators = z1, z2

[task]
name = curvature
trunc_degree = 6
"""


def test_parse_config_full():
    cfg = parse_config(BASE)
    assert cfg.task == "curvature"
    assert cfg.dimension == 2
    assert cfg.weights == (F(1), F(2))
    assert cfg.generators == ("z1", "z2")
    assert cfg.trunc_degree == 6
    assert cfg.output == "text"


def test_parse_config_points_and_base():
    cfg = parse_config("""
[module]
dimension = 2
weights = 1 1

[ideal]
generators = z1

[task]
name = kernel
points = 1/5 1/3; 1/7 1/2
base_point = 0 1/3
""")
    assert cfg.points == ((F(1, 5), F(1, 3)), (F(1, 7), F(1, 2)))
    assert cfg.base_point == (F(0), F(1, 3))


@pytest.mark.parametrize("snippet,field", [
    ("[module]\ndimension = 2\nweights = 1 -1\n\n[task]\nname = kernel\n",
     "module.weights"),
    ("[module]\ndimension = 2\nweights = 1\n\n[task]\nname = kernel\n",
     "module.weights"),
    ("[module]\ndimension = x\nweights = 1 1\n\n[task]\nname = kernel\n",
     "module.dimension"),
    ("[task]\nname = dance\n", "task.name"),
    ("[task]\nname = cubic\noutput = yaml\n", "task.output"),
    ("[task]\nname = cubic\ntrunc_degree = 0\n", "task.trunc_degree"),
    ("[module]\ndimension = 2\nweights = 1 1\n\n[task]\nname = kernel\n"
     "points = 2 0\n", "task.points"),
    ("[bogus]\nx = 1\n\n[task]\nname = cubic\n", "bogus"),
    ("[task]\nname = cubic\nmystery = 3\n", "mystery"),
])
def test_parse_config_errors_carry_field(snippet, field):
    with pytest.raises(InputError) as exc:
        parse_config(snippet)
    assert field in str(exc.value)


def test_parse_config_missing_task():
    with pytest.raises(InputError):
        parse_config("[module]\ndimension = 2\nweights = 1 1\n")


def test_parse_config_syntax_error():
    with pytest.raises(InputError):
        parse_config("no sections here\n")


def test_run_curvature_task_values():
    report = run_task(parse_config(BASE))
    results = {r["name"]: r["value"] for r in report.results}
    assert results["det_bundle_curvature_11"] == F(13, 9)
    assert results["det_bundle_curvature_22"] == F(31, 18)
    assert results["closed_form_kappa1"] == F(13, 9)
    # blockwise trace identity visible in the report
    assert (results["curvature_block_11_11"]
            + results["curvature_block_11_22"]) == F(13, 9)


def test_run_cubic_task():
    report = run_task(parse_config("[task]\nname = cubic\nalpha = 1\n"))
    results = {r["name"]: r["value"] for r in report.results}
    assert results["positive_root_count"] == 1
    assert results["isolating_interval_1"] == [F(1), F(1)]


def test_run_dimension_task():
    report = run_task(parse_config("""
[module]
dimension = 2
weights = 1 1

[ideal]
catalogue = product_difference

[task]
name = dimension
points = 0 0; 1/3 1/3
"""))
    results = {r["name"]: r["value"] for r in report.results}
    assert results["localization_dim_1"] == 2
    assert results["stabilized_at_1"] == 3
    assert results["localization_dim_2"] == 1
    assert report.diagnostics["point_1_on_variety"] is True
    assert report.diagnostics["point_2_on_variety"] is False


def test_run_compare_task():
    report = run_task(parse_config("""
[module]
dimension = 2
weights = 1 2

[ideal]
generators = z1, z2

[task]
name = compare
compare_weights = 2 1
"""))
    results = {r["name"]: r["value"] for r in report.results}
    assert results["equivalent"] is False
    assert results["kappa1_left"] == F(13, 9)
    assert results["kappa1_right"] == F(31, 18)


def test_render_json_is_deterministic_and_parseable():
    cfg = parse_config(BASE)
    r1 = render_report(run_task(cfg), "json")
    r2 = render_report(run_task(cfg), "json")
    assert r1 == r2
    payload = json.loads(r1)
    assert payload["task"] == "curvature"
    names = [r["name"] for r in payload["results"]]
    assert "det_bundle_curvature_11" in names
    val = payload["results"][names.index("det_bundle_curvature_11")]["value"]
    assert val == {"num": 13, "den": 9}
    assert "convention" in payload


def test_render_text_layout():
    cfg = parse_config(BASE)
    text = render_report(run_task(cfg), "text")
    lines = text.splitlines()
    assert lines[0] == "task: curvature"
    assert "  det_bundle_curvature_11 = 13/9" in lines
    assert any(line.startswith("convention:") for line in lines)


# -- entry point and exit codes ----------------------------------------------


def _write(tmp_path, content):
    p = tmp_path / "job.cfg"
    p.write_text(content)
    return str(p)


def test_main_success(tmp_path, capsys):
    path = _write(tmp_path, BASE)
    assert main(["curvature", "--config", path]) == 0
    out = capsys.readouterr().out
    assert "det_bundle_curvature_11 = 13/9" in out


def test_main_config_error_exit_2(tmp_path, capsys):
    path = _write(tmp_path, "[module]\ndimension = 2\nweights = 0 1\n"
                            "\n[task]\nname = kernel\n")
    assert main(["kernel", "--config", path]) == 2
    assert "module.weights" in capsys.readouterr().err


def test_main_missing_file_exit_2(tmp_path, capsys):
    assert main(["cubic", "--config", str(tmp_path / "absent.cfg")]) == 2


def test_main_precondition_exit_3(tmp_path, capsys):
    path = _write(tmp_path, BASE)
    assert main(["curvature", "--config", path, "--trunc-degree", "2"]) == 3
    assert "precondition" in capsys.readouterr().err


def test_main_unsupported_family_exit_4(tmp_path, capsys):
    path = _write(tmp_path, """
[module]
dimension = 2
weights = 1 1

[ideal]
generators = z1 + z2^2

[task]
name = decompose
""")
    assert main(["decompose", "--config", path]) == 4


def test_main_point_override(tmp_path, capsys):
    path = _write(tmp_path, """
[module]
dimension = 2
weights = 1 1

[ideal]
generators = z1

[task]
name = kernel
points = 1/5 1/3
""")
    assert main(["kernel", "--config", path, "--point", "1/2 1/2"]) == 0
    out = capsys.readouterr().out
    assert "kernel_diag_1 = 4/9" in out


def test_main_subcommand_overrides_config_task(tmp_path, capsys):
    # one config reused for several tasks: the subcommand wins
    path = _write(tmp_path, BASE)
    assert main(["metric", "--config", path]) == 0
    out = capsys.readouterr().out
    assert out.startswith("task: metric")


def test_main_json_byte_identical(tmp_path, capsys):
    path = _write(tmp_path, BASE)
    assert main(["curvature", "--config", path, "--output", "json"]) == 0
    first = capsys.readouterr().out
    assert main(["curvature", "--config", path, "--output", "json"]) == 0
    second = capsys.readouterr().out
    assert first == second
