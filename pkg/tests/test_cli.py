import json

import pytest

from qlozenge.cli import main, render_svg
from qlozenge.enumeration import gen_function, iter_tilings
from qlozenge.lattice import build_hexagon, build_q_region, RegionParams
from qlozenge.qalgebra import parse_poly
from qlozenge.weights import WeightAssignment as W


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_formula_macmahon_example(capsys):
    code, out, _ = run(capsys, "formula", "macmahon", "--a", "1", "--b", "1", "--c", "1")
    assert code == 0
    assert out == "1 + q\n"


def test_count_hexagon_example(capsys):
    code, out, _ = run(capsys, "count", "hexagon", "--a", "2", "--b", "2", "--c", "2")
    assert code == 0
    assert out == "20\n"


def test_count_json_object(capsys):
    code, out, _ = run(
        capsys, "count", "hexagon", "--a", "2", "--b", "2", "--c", "2", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 20
    assert payload["builder"] == "hexagon"
    assert len(payload["digest"]) == 64


def test_formula_semihex_frozen(capsys):
    code, out, _ = run(
        capsys, "formula", "semihex", "--a", "2", "--b", "1", "--dents", "1,3"
    )
    assert code == 0
    assert out == "q + q^2\n"


def test_formula_main_matches_count(capsys):
    code, out, _ = run(capsys, "formula", "main", "--params", "1,1,1,1,1,1,1,1")
    assert code == 0
    code2, out2, _ = run(
        capsys, "count", "q_region", "--params", "1,1,1,1,1,1,1,1"
    )
    assert code2 == 0
    assert out == out2


def test_genfun_round_trips_and_matches_formula(capsys):
    code, out, _ = run(
        capsys, "genfun", "magnet_bar", "--params", "1,1,1,1,1,1", "--weight", "wt3"
    )
    assert code == 0
    code2, out2, _ = run(
        capsys, "formula", "magnet_m3", "--params", "1,1,1,1,1,1"
    )
    assert code2 == 0
    assert out == out2
    region = gen_function(
        build_q_region(RegionParams(1, 1, 1, 1, 1, 1, 0, 0)), W.WT3
    )
    assert parse_poly(out.strip()) == region.poly


def test_genfun_json(capsys):
    code, out, _ = run(
        capsys, "genfun", "hexagon", "--a", "2", "--b", "2", "--c", "2", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["weight"] == "wt2"
    assert parse_poly(payload["poly"]) == gen_function(build_hexagon(2, 2, 2), W.WT2).poly


def test_tilings_lines(capsys):
    code, out, _ = run(capsys, "tilings", "hexagon", "--a", "1", "--b", "1", "--c", "1")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2
    for line in lines:
        entries = json.loads(line)
        assert len(entries) == 3
        assert sorted(e[2] for e in entries) == ["L", "R", "V"]
        assert entries == sorted(entries)
        for first, second, _letter in entries:
            assert first[2] == "U" and second[2] == "D"


def test_verify_suite_kuo(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "kuo")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) >= 20
    assert all(line.startswith("Pass kuo ") for line in lines)


def test_verify_json_lines(capsys):
    code, out, _ = run(
        capsys, "verify", "--suite", "prop31", "--max-sum", "2", "--json"
    )
    assert code == 0
    for line in out.splitlines():
        payload = json.loads(line)
        assert payload["status"] == "Pass"
        assert payload["check"] == "prop31"
        assert parse_poly(payload["lhs"]) == parse_poly(payload["rhs"])


def test_verify_unknown_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--suite", "nonesuch"])
    assert info.value.code == 2


def test_kuo_default_marks(capsys):
    code, out, _ = run(capsys, "kuo", "magnet_bar", "--params", "1,1,1,1,1,1")
    assert code == 0
    assert out.startswith("Pass kuo ")


def test_kuo_explicit_marks_uniform(capsys):
    code, out, _ = run(
        capsys,
        "kuo",
        "hexagon",
        "--a", "1", "--b", "1", "--c", "1",
        "--marks", "0,0,U;0,0,D;1,0,U;1,-1,D",
        "--weight", "wt0",
        "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "Pass"
    assert payload["lhs"] == "2" and payload["rhs"] == "2"


def test_kuo_bad_marks_usage(capsys):
    code, _, err = run(
        capsys,
        "kuo",
        "hexagon",
        "--a", "1", "--b", "1", "--c", "1",
        "--marks", "0,0,U;0,0,U;0,0,D;1,-1,D",
    )
    assert code == 2
    assert err


def test_kuo_without_params_needs_marks(capsys):
    code, _, err = run(capsys, "kuo", "semihexagon", "--a", "1", "--b", "1", "--dents", "1")
    assert code == 2
    assert "marks" in err


def test_budget_exit_codes(capsys):
    code, _, err = run(
        capsys, "count", "hexagon", "--a", "9", "--b", "9", "--c", "9",
        "--max-states", "4",
    )
    assert code == 3 and "budget" in err
    code, _, err = run(capsys, "tilings", "hexagon", "--a", "5", "--b", "5", "--c", "5")
    assert code == 3


def test_usage_errors(capsys):
    assert run(capsys, "count", "hexagon", "--a", "2", "--b", "2")[0] == 2
    assert run(capsys, "formula", "main")[0] == 2
    assert run(capsys, "formula", "qmain", "--params", "1,1,1")[0] == 2
    assert run(capsys, "count", "q_region", "--params", "1,1,x,1,1,1,1,1")[0] == 2


def test_render_empty_region(capsys):
    code, out, _ = run(capsys, "render", "q_region", "--params", "0,0,0,0,0,0,0,0")
    assert code == 0
    assert out.startswith("<svg ")
    assert out.endswith("</svg>\n")


def test_render_tilings_distinct_and_stable(capsys):
    first = run(capsys, "render", "hexagon", "--a", "1", "--b", "1", "--c", "1",
                "--tiling-index", "0")
    again = run(capsys, "render", "hexagon", "--a", "1", "--b", "1", "--c", "1",
                "--tiling-index", "0")
    second = run(capsys, "render", "hexagon", "--a", "1", "--b", "1", "--c", "1",
                 "--tiling-index", "1")
    assert first[0] == again[0] == second[0] == 0
    assert first[1] == again[1]
    assert first[1] != second[1]
    for shade in ("#c8c8c8", "#8f8f8f", "#efefef"):
        assert shade in first[1]


def test_render_out_of_range_index(capsys):
    code, _, err = run(
        capsys, "render", "hexagon", "--a", "1", "--b", "1", "--c", "1",
        "--tiling-index", "5",
    )
    assert code == 2 and "out of range" in err


def test_render_writes_file(tmp_path, capsys):
    target = tmp_path / "picture.svg"
    code, out, _ = run(
        capsys, "render", "q_region", "--params", "1,1,1,1,1,1,1,1",
        "--svg", str(target),
    )
    assert code == 0
    assert out == ""
    text = target.read_text()
    assert text.startswith("<svg ")
    # the notch is recorded in the parameters, so it gets shaded
    assert "#b0b0b0" in text


def test_render_svg_function_direct():
    region = build_hexagon(1, 1, 1)
    tilings = list(iter_tilings(region))
    bare = render_svg(region)
    tiled = render_svg(region, tilings[0])
    assert bare != tiled
    assert render_svg(region) == bare
    assert bare.count("<polygon") == len(region.triangles)
