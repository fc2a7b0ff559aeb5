import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from relaylab.channel import (DomainError, Geometry, Regime, SnrTriple, classify_regime,
                              load_scenario, snr_from_geometry)


def test_snr_on_segment_midpoint():
    g = Geometry((0, 0), (0, 0.5), (0, 1), p0=100, p1=100, n1=1, n2=1)
    s = snr_from_geometry(g)
    assert s.lambda01 == pytest.approx(400)
    assert s.lambda02 == pytest.approx(100)
    assert s.lambda12 == pytest.approx(400)


def test_coincident_relay_and_destination_rejected():
    with pytest.raises(DomainError, match="d12"):
        Geometry((0, 0), (0, 1), (0, 1))


def test_snr_off_axis_relay():
    g = Geometry((0, 0), (0.3, 0.4), (0, 1), p0=100, p1=100, n1=1, n2=1)
    s = snr_from_geometry(g)
    d12 = float(np.linalg.norm(np.array([0.3, 0.4]) - np.array([0.0, 1.0])))
    assert d12 == pytest.approx(math.sqrt(0.09 + 0.36), rel=1e-15)
    assert s.lambda01 == pytest.approx(400, rel=1e-14)
    assert s.lambda02 == pytest.approx(100, rel=1e-14)
    assert s.lambda12 == pytest.approx(100 / d12**2, rel=1e-14)


@pytest.mark.parametrize("field,value", [("p0", 0.0), ("p1", -1.0), ("n1", math.inf),
                                         ("n2", math.nan)])
def test_bad_power_or_noise_names_field(field, value):
    kwargs = {field: value}
    with pytest.raises(DomainError, match=field):
        Geometry(**kwargs)


@pytest.mark.parametrize("value", [0.0, -1.0, math.inf, math.nan])
def test_snr_triple_rejects_nonpositive(value):
    with pytest.raises(DomainError, match="lambda02"):
        SnrTriple(1.0, value, 1.0)


@pytest.mark.parametrize("snr,expected", [
    ((10, 1, 5), Regime.RELAY_ADVANTAGED),
    ((1, 1, 5), Regime.EQUAL),
    ((0.5, 1, 5), Regime.DIRECT_ADVANTAGED),
])
def test_classify_regime(snr, expected):
    assert classify_regime(SnrTriple(*snr), tol=1e-12) is expected


def test_regime_tolerance_is_relative():
    s = SnrTriple(1e6 * (1 + 1e-13), 1e6, 1)
    assert classify_regime(s) is Regime.EQUAL
    assert classify_regime(s, tol=0.0) is Regime.RELAY_ADVANTAGED


coord = st.floats(-5, 5, allow_nan=False)


@given(st.floats(0.01, 100), coord, coord)
def test_power_scaling_is_covariant(c, x, y):
    try:
        g = Geometry((0, 0), (x, y), (0, 1), p0=3.0, p1=7.0)
        a, b = snr_from_geometry(g), snr_from_geometry(g.scaled(c))
    except DomainError:
        return
    for f in ("lambda01", "lambda02", "lambda12"):
        assert getattr(b, f) == pytest.approx(c * getattr(a, f), rel=1e-12)


@given(st.floats(0.05, 0.9), st.floats(0.05, 3.0), st.floats(0.05, 0.95))
def test_reducing_d01_raises_only_lambda01(radius, angle, frac):
    # relay on a circle around the destination, so d12 stays fixed while d01 shrinks
    def at(t):
        return snr_from_geometry(Geometry(relay=(radius * math.sin(t), 1 - radius * math.cos(t))))

    far, near = at(angle), at(angle * frac)
    assert near.lambda01 > far.lambda01
    assert near.lambda02 == far.lambda02
    assert near.lambda12 == pytest.approx(far.lambda12, rel=1e-12)


def test_relay_closer_to_source_keeps_other_links():
    # relay on a circle of radius 0.5 around the destination: d12 fixed, d01 varies
    pts = [(0.5 * math.sin(t), 1 - 0.5 * math.cos(t)) for t in (1.0, 0.6, 0.2)]
    snrs = [snr_from_geometry(Geometry(relay=p)) for p in pts]
    assert snrs[0].lambda01 < snrs[1].lambda01 < snrs[2].lambda01
    assert snrs[0].lambda02 == snrs[1].lambda02 == snrs[2].lambda02
    assert snrs[0].lambda12 == pytest.approx(snrs[2].lambda12, rel=1e-12)


def test_geometry_json_round_trip(tmp_path):
    g = Geometry((0, 0), (0.3, 0.4), (0, 1), p0=50, p1=20, n1=2, n2=0.5)
    text = g.to_json()
    data = json.loads(text)
    assert data["relay"] == [0.3, 0.4]
    assert set(data) == {"source", "relay", "destination", "p0", "p1", "n1", "n2"}
    assert Geometry.from_json(text) == g
    path = tmp_path / "scenario.json"
    path.write_text(text)
    assert load_scenario(str(path)) == g


def test_snr_json_round_trip():
    s = SnrTriple(62000, 230, 1e5)
    assert json.loads(s.to_json()) == {"lambda01": 62000, "lambda02": 230, "lambda12": 1e5}
    assert SnrTriple.from_json(s.to_json()) == s


def test_geometry_json_rejects_unknown_field():
    with pytest.raises(DomainError, match="unknown"):
        Geometry.from_dict({"source": [0, 0], "relay": [0, 1], "destination": [0, 2],
                            "p0": 1, "p1": 1, "n1": 1, "n2": 1, "gain": 3})
