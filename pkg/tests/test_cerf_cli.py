import io
import json

import pytest

from cerf_cli import run_command
from cerf_io import load_document, parse_document, serialize_document


@pytest.fixture(autouse=True)
def _single_thread(monkeypatch):
    monkeypatch.setenv("CERF_FORGE_THREADS", "1")


@pytest.fixture
def fx(fixtures_dir):
    return lambda stem: str(fixtures_dir / f"{stem}.json")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def report(*argv):
    code, out, err = run(*argv)
    assert code == 0, err
    return json.loads(out)


def test_enumerate_figure1():
    data = report("enumerate", "figure1")
    assert data["census"] == "figure1"
    assert data["count"] == 4
    assert sorted(e["genus"] for e in data["entries"]) == [0, 0, 0, 1]


def test_bad_thread_setting(monkeypatch):
    monkeypatch.setenv("CERF_FORGE_THREADS", "two")
    code, out, err = run("enumerate", "figure1")
    assert code == 2
    assert out == ""
    assert "BAD_SETTING" in err


def test_invariants_output_is_canonical(fx):
    code, out, _ = run("invariants", "--trisection", fx("cp2"))
    assert code == 0
    assert out == '{\n  "chi": 3,\n  "h1_rank": 0,\n  "sigma": 1\n}\n'


def test_validate(fx):
    code, out, _ = run("validate", fx("torus"))
    data = json.loads(out)
    assert code == 0
    assert (data["kind"], data["genus"], data["ok"]) == ("morse", 1, True)

    code, out, _ = run("validate", "--input", fx("bad"))
    data = json.loads(out)
    assert code == 1
    assert data["ok"] is False
    failed = {c["name"] for c in data["checks"] if not c["passed"]}
    assert failed == {"closed_at_top", "euler_characteristic"}


def test_validate_other_kinds(fx):
    for stem in ("surface_source", "cp2_family", "cp2", "glued_caps"):
        assert report("validate", fx(stem))["ok"], stem


def test_document_errors_exit_one(fx):
    code, out, err = run("validate", fx("duplicate_height"))
    assert code == 1
    assert out == ""
    assert err.startswith("[cerf-forge] DUPLICATE_HEIGHT:")
    code, _, err = run("validate", fx("dangling_id"))
    assert code == 1
    assert "DANGLING_ID" in err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["validate"],
        ["enumerate", "quadruple"],
        ["interpolate", "--source", "x.json"],
        ["validate", "does/not/exist.json"],
    ],
)
def test_usage_errors_exit_two(argv):
    code, out, err = run(*argv)
    assert code == 2
    assert out == ""
    assert err.startswith("[cerf-forge] USAGE:")


def test_wrong_document_kind_is_a_usage_error(fx):
    code, _, err = run("reeb", fx("cp2"))
    assert code == 2
    assert "expects a morse document" in err


def test_reeb(fx):
    data = report("reeb", fx("torus"))
    assert data["betti"] == 1
    assert len(data["edges"]) == 4
    assert [cn["kind"] for cn in data["critical_neighborhoods"]] == ["birth", "split", "merge", "death"]


def test_cut_system(fx):
    data = report("cut-system", fx("torus"))
    assert (data["genus"], data["curves"], data["circles"]) == (1, [[1, 0]], ["c2"])
    data = report("cut-system", fx("genus2"))
    assert data["curves"] == [[1, 0, 0, 0], [0, 0, 1, 0]]
    code, _, err = run("cut-system", fx("bad"))
    assert code == 1
    assert "VALIDATION" in err


def test_classify_interval(fx):
    assert report("classify-interval", fx("cp2_family"))["types"] == ["type0", "type1"] * 3
    assert report("classify-interval", fx("cp2_family"), "--segment", "1") == {"segment": 1, "type": "type1"}
    code, _, _ = run("classify-interval", fx("cp2_family"), "--segment", "9")
    assert code == 2


def test_classify_polygon(fx):
    rows = report("classify-polygon", fx("hexagon_cp2"))["polygons"]
    assert len(rows) == 1
    assert (rows[0]["kind"], rows[0]["sign"]) == ("type2", -1)
    assert [e["type"] for e in rows[0]["permutahedron"]] == ["type1", "type0"] * 3


def test_assemble_families(fx):
    assert report("assemble-b1", fx("interval_g1"))["k"] == 0
    data = report("assemble-s1", fx("cp2_family"))
    assert (data["k"], data["chi"], data["sigma"]) == (0, 3, 1)


def test_assemble_b2(fx):
    data = report("assemble-b2", fx("hexagon_cp2"))
    assert (data["p"], data["q"], data["boundary"]["sigma"]) == (0, 1, 1)
    assert data["sigma_identity_holds"] is True
    data = report("assemble-b2", fx("glued_caps"))
    assert (data["p"], data["q"], data["boundary"]["k"]) == (1, 1, None)
    data = report("assemble-b2", fx("cp2bar"))
    assert (data["p"], data["q"]) == (1, 0)
    code, _, err = run("assemble-b2", fx("s1xs3"))
    assert code == 1
    assert err.startswith("[cerf-forge] ")


def test_compile_trisection(fx):
    code, out, _ = run("compile-trisection", fx("cp2"))
    assert code == 0
    env = parse_document(out)
    assert env.kind == "graphic1"
    assert len(env.payload.segments) == 6
    code, out, _ = run("compile-trisection", fx("cp2"), "--format", "svg")
    assert code == 0
    assert out.startswith("<svg")
    assert out.count('<g class="crossing"') == 3


def test_render(fx, fixtures_dir):
    code, out, _ = run("render", fx("hexagon_cp2"), "--format", "svg")
    assert code == 0
    assert out.count('class="sector"') == 6
    code, out, _ = run("render", fx("cp2_family"))
    assert out == serialize_document(load_document(fixtures_dir / "cp2_family.json"))


def test_interpolate(fx):
    data = report("interpolate", "--source", fx("surface_source"), "--target", fx("surface_target"))
    assert data["result"] == [[2, 0, 1, 0], [1, 0, 1, 0]]
    assert data["length"] == len(data["moves"]) == 4
    assert data["within_bound"] is True
    code, _, err = run("interpolate", "--source", fx("surface_source"), "--target", fx("surface_other"))
    assert code == 1
    assert "[cerf-forge]" in err


def test_output_file(fx, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run("invariants", "--trisection", fx("s1xs3"), "--output", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text()) == {"chi": 0, "h1_rank": 1, "sigma": 0}


def test_runs_are_byte_identical(fx):
    for argv in (["compile-trisection", fx("cp2_cp2bar")], ["enumerate", "figure1"], ["reeb", fx("genus2")]):
        assert run(*argv) == run(*argv)


def test_non_utf8_input_is_a_document_error(tmp_path):
    path = tmp_path / "binary.json"
    path.write_bytes(b"\xff\xfe{}")
    code, out, err = run("validate", str(path))
    assert code == 1
    assert out == ""
    assert err.startswith("[cerf-forge] INVALID_ENCODING:")
