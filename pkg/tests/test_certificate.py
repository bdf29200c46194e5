import json

from qtoda.certificate import SCHEMA_VERSION, Certificate


def test_round_trip(tmp_path):
    cert = Certificate("demo", inputs={"type": "A2"})
    cert.record("first", True, detail=3)
    cert.record("second", False)
    cert.scalars["c"] = "1"
    path = tmp_path / "c.json"
    cert.write(path)
    back = Certificate.read(path)
    assert back.to_dict() == cert.to_dict()
    assert not back.passed
    assert [c["name"] for c in back.failed_checks()] == ["second"]
    data = json.loads(path.read_text())
    assert data["schema"] == SCHEMA_VERSION


def test_informational_entries_do_not_fail():
    cert = Certificate("demo")
    cert.checks.append({"name": "note", "ok": False, "asserted": False})
    assert cert.passed
    assert cert.failed_checks() == []
