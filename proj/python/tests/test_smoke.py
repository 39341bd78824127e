import json
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest
from referencing import Registry, Resource

import nclfun

ROOT = Path(__file__).resolve().parents[2]
GALLERY = sorted((ROOT / "gallery").glob("*.json"))


@pytest.fixture(scope="module")
def schemas():
    docs = {p.stem.split(".")[0]: json.loads(p.read_text()) for p in (ROOT / "schemas").glob("*.schema.json")}
    registry = Registry().with_resources((d["$id"], Resource.from_contents(d)) for d in docs.values())

    def validator(name):
        return jsonschema.Draft202012Validator(docs[name], registry=registry)

    return validator


def test_point_counts_and_zeta():
    counts = nclfun.point_counts("builtin:P1", q=2, n=6)
    assert counts == [3, 5, 9, 17, 33, 65]
    num, den, pretty = nclfun.zeta(counts)
    assert num == [Fraction(1)]
    assert den == [Fraction(1), Fraction(-3), Fraction(2)]
    assert pretty == "1/((1 - T)(1 - 2T))"


def test_closed_points():
    pts = nclfun.closed_points("builtin:A1", q=2, max_deg=3)
    assert [sum(1 for p in pts if p["degree"] == d) for d in (1, 2, 3)] == [2, 1, 2]


def test_l_function_kummer():
    report = nclfun.l_function(str(GALLERY[0].parent / "kummer_gm_f5.json"))
    assert report["series"] == [1, 4, 7, 9, 6, 4, 7, 9]
    assert report["closed_points"][0] == 4


def test_verify_dim0():
    report = nclfun.verify(str(ROOT / "gallery" / "dim0_c2.json"))
    assert report["overall"] == "EqualCertified"


def test_verify_with_inline_job():
    job = {"scheme": {"field": 2, "builtin": "P1"}, "ring": {"kind": "zmod", "m": 9}}
    report = nclfun.verify(job, m=6, methods=["table"])
    assert report["series"] == [1, 3, 7, 6, 4, 0]
    assert report["global_sides"][0]["verdict"] == "EqualCertified"


def test_p_not_invertible():
    with pytest.raises(nclfun.NclError) as err:
        nclfun.verify(str(ROOT / "gallery" / "p_not_invertible.json"))
    assert nclfun.error_code(err.value) == "PNotInvertible"


def test_k1():
    out = nclfun.k1({"kind": "zmod", "m": 9}, [[2, 1], [1, 1]])
    assert out["det"] == 1
    assert out["certificate_replays"]
    with pytest.raises(nclfun.NclError):
        nclfun.k1({"kind": "zmod", "m": 9}, [[3, 0], [0, 1]])


@pytest.mark.parametrize("path", GALLERY, ids=lambda p: p.stem)
def test_gallery_jobs_match_schema(schemas, path):
    schemas("job").validate(json.loads(path.read_text()))


@pytest.mark.parametrize("path", GALLERY, ids=lambda p: p.stem)
def test_reports_match_schema(schemas, path):
    job = json.loads(path.read_text())
    if "expect_error" in job:
        pytest.skip("error job")
    run = nclfun.verify if job.get("command") == "verify" else nclfun.l_function
    report = run(str(path))
    schemas("report").validate(report)
    assert report["version"] == nclfun.report_version
    assert run(str(path)) == report


def test_schema_rejects_bad_jobs(schemas):
    v = schemas("job")
    with pytest.raises(jsonschema.ValidationError):
        v.validate({"scheme": {"field": 5, "builtin": "A3"}})
    with pytest.raises(jsonschema.ValidationError):
        v.validate({"scheme": {"field": 5, "builtin": "Gm"}, "verify": ["magic"]})
    with pytest.raises(jsonschema.ValidationError):
        v.validate({"scheme": {"field": 5, "builtin": "Gm"}, "sheaf": {"type": "group_ring"}})
