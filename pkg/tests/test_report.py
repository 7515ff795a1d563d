import json
import math

import numpy as np
import pytest

from heisperim import (
    CSV_HEADER,
    GraphicalStrip,
    IdentityReport,
    fmt17,
    graph_arctan,
    parse_profile_csv,
    plot_profile,
    plot_verify,
    profile,
    profile_csv,
    profile_json,
    verify_json,
    write_profile_csv,
)


@pytest.fixture(scope="module")
def table():
    strip = GraphicalStrip(graph_arctan(1.0))
    return profile(strip, 0.0, np.geomspace(0.1, 10.0, 6))


def test_fmt17_round_trips():
    for x in (0.1, 1.0 / 3.0, 1e300, 1e-300, 0.8740191847640398, -2.5, 0.0, 123456789.123456789):
        assert float(fmt17(x)) == x
    assert fmt17(1.0) == "1"


def test_csv_shape(table):
    text = profile_csv(table)
    lines = text.split("\n")
    assert lines[0] == CSV_HEADER == "r,perimeter,ratio,err_estimate"
    assert lines[-1] == ""  # trailing newline
    assert len(lines) == 2 + len(table.rows)
    for line in lines[1:-1]:
        assert len(line.split(",")) == 4
    # LF endings only, no CR anywhere
    assert "\r" not in text


def test_csv_round_trip(table, tmp_path):
    path = tmp_path / "prof.csv"
    write_profile_csv(table, str(path))
    raw = path.read_bytes()
    assert b"\r" not in raw
    rows = parse_profile_csv(raw.decode())
    assert len(rows) == len(table.rows)
    for a, b in zip(rows, table.rows):
        assert a.r == b.r and a.perimeter == b.perimeter
        assert a.ratio == b.ratio and a.err_estimate == b.err_estimate


def test_parse_rejects_wrong_header():
    with pytest.raises(ValueError):
        parse_profile_csv("radius,p\n1,2\n")


def test_profile_json_fields(table):
    doc = json.loads(profile_json(table))
    assert doc["g"] == "arctan:1"
    assert doc["t0"] == 0.0
    assert len(doc["rows"]) == len(table.rows)
    assert set(doc["rows"][0]) == {"r", "perimeter", "ratio", "err_estimate"}


def test_verify_json_schema():
    reports = [
        IdentityReport("alpha", 10, 1e-12, 1e-13, 1e-9, True),
        IdentityReport("beta", 10, 2e-3, 1e-3, 1e-6, False),
    ]
    doc = json.loads(verify_json({"command": "verify", "seed": 3}, reports, 1.25))
    assert set(doc) == {"config", "results", "wall_time_seconds"}
    assert doc["config"]["seed"] == 3
    assert doc["wall_time_seconds"] == 1.25
    assert [r["name"] for r in doc["results"]] == ["alpha", "beta"]
    assert set(doc["results"][0]) == {
        "name", "samples", "max_residual", "mean_residual", "tolerance", "pass",
    }
    assert doc["results"][0]["pass"] is True
    assert doc["results"][1]["pass"] is False


def test_csv_deterministic(table):
    strip = GraphicalStrip(graph_arctan(1.0))
    again = profile(strip, 0.0, np.geomspace(0.1, 10.0, 6))
    assert profile_csv(table) == profile_csv(again)


def test_figures_render(table, tmp_path):
    p1 = tmp_path / "profile.png"
    plot_profile(table, str(p1))
    assert p1.stat().st_size > 1000
    reports = [
        IdentityReport("alpha", 10, 1e-12, 1e-13, 1e-9, True),
        IdentityReport("beta", 10, 0.0, 0.0, 1e-6, True),
    ]
    p2 = tmp_path / "verify.png"
    plot_verify(reports, str(p2))
    assert p2.stat().st_size > 1000


def test_fmt17_non_finite_guard():
    assert fmt17(math.inf) == "inf"
    assert float(fmt17(math.pi)) == math.pi
