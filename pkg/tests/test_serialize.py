import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from deltabound.concavity import check_center_pt, tent
from deltabound.delta import lift_dimension, surface_delta_bound
from deltabound.errors import InputError
from deltabound.lattice import DivClass, builtin_surface, del_pezzo
from deltabound.serialize import (
    dumps,
    load_surface,
    report_from_json,
    report_to_json,
    surface_from_json,
    surface_to_json,
)
from deltabound.verdicts import HypersurfaceQuery, ThreefoldQuery, hypersurface_verdict, k3_tau_bound, threefold_verdict


def round_trip(obj):
    return report_from_json(json.loads(dumps(report_to_json(obj))))


@pytest.mark.parametrize("name,ample", [("P2", (1,)), ("P1xP1", (1, 1)), ("DelPezzo(5)", (3, -1, -1, -1, -1))])
def test_invariant_report_round_trip(name, ample):
    r = surface_delta_bound(builtin_surface(name), DivClass.of(*ample))
    assert round_trip(r) == r


@given(st.integers(4, 200), st.integers(3, 5))
def test_hypersurface_verdict_round_trip(n, r):
    v = hypersurface_verdict(HypersurfaceQuery(n, r))
    assert round_trip(v) == v


@pytest.mark.parametrize("index,degree", [(2, 4), (2, 3), (1, 16), (1, 18)])
def test_threefold_verdict_round_trip(index, degree):
    v = threefold_verdict(ThreefoldQuery(index, degree))
    assert round_trip(v) == v


def test_small_reports_round_trip():
    for obj in (k3_tau_bound(16, 4, 100), lift_dimension(3, 4, 1, 4), check_center_pt(1, 2, tent(1, 2))):
        assert round_trip(obj) == obj


def test_rationals_travel_as_strings():
    blob = report_to_json(hypersurface_verdict(HypersurfaceQuery(27, 3)))
    assert blob["data"]["bound"] == "5488/4563"
    assert blob["data"]["status"] == "UniformlyKStableBySufficientCriterion"


@pytest.mark.parametrize("degree", [3, 6, 9])
def test_surface_file_round_trip(tmp_path, degree):
    s = del_pezzo(degree)
    path = tmp_path / "s.json"
    path.write_text(json.dumps(surface_to_json(s)))
    assert load_surface(str(path)) == s
    assert surface_from_json(surface_to_json(s)) == s


def test_bad_surface_files(tmp_path):
    with pytest.raises(InputError):
        load_surface(str(tmp_path / "missing.json"))
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(InputError):
        load_surface(str(p))
    p.write_text(json.dumps({"name": "x", "rank": 2, "gram": [[1]]}))
    with pytest.raises(InputError):
        load_surface(str(p))
    with pytest.raises(InputError):
        report_from_json({"kind": "Nope", "data": {}})
