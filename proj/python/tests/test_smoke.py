import json
import math

import numpy as np
import pytest

import groupoidal as gd


def test_z2_swap_structure():
    g = gd.z2_swap_groupoid()
    assert (g.num_objects, g.num_arrows) == (2, 4)
    assert g.compose(2, 3) == 1
    assert g.inverse(2) == 3
    assert gd.validate_groupoid(g)["ok"]
    assert len(gd.enumerate_bisections(g)) == 2


def test_round_trip_and_corrupted_inverse():
    g = gd.pair_groupoid(3)
    doc = json.loads(g.to_json())
    assert gd.groupoid_from_json(json.dumps(doc)).num_arrows == 9
    doc["inv"] = list(range(9))
    report = gd.validate_groupoid(gd.groupoid_from_json(json.dumps(doc)))
    assert not report["ok"]
    assert any(v["check"] == "axiom-iv" for v in report["violations"])


def test_identities_and_commutant():
    g = gd.pair_groupoid(3)
    assert gd.check_structure_identities(g)["ok"]
    assert gd.commutant_sizes(g) == {"r_equivariant": 6, "left_mults": 6, "equal": True}
    with pytest.raises(gd.EnumerationBoundError):
        gd.enumerate_bisections(gd.pair_groupoid(4), cap=1)


def test_errors_map_to_python():
    with pytest.raises(gd.InputError):
        gd.groupoid_from_json("{not json")
    with pytest.raises(gd.CompositionError):
        gd.z2_swap_groupoid().compose(0, 1)
    with pytest.raises(IndexError):
        gd.z2_swap_groupoid().source(9)
    assert issubclass(gd.InputError, gd.GroupoidalError)


def test_three_point_bundle():
    b = gd.three_point_example()
    assert gd.bundle_counts(b) == {"P": 12, "F": 6, "Ad": 12, "At": 36, "Gauge": 8}
    for battery in ("axioms", "atiyah", "trident"):
        assert gd.verify_bundle(b, battery)["ok"]
    again = gd.bundle_from_json(b.to_json())
    assert again.num_points == 12


def test_expm_and_transport_closed_form():
    lz = gd.so3_basis()[2]
    r = gd.expm(0.7 * lz)
    assert np.allclose(r @ r.T, np.eye(3), atol=1e-14)
    assert math.isclose(r[0, 0], math.cos(0.7), abs_tol=1e-14)
    scenario = {"scenario": "single-so2", "connection": {"kind": "constant", "coefficients": [[1.0], [0.0]]}}
    out = gd.transport(scenario, {"from": [0, 0], "to": [1, 0], "m0": [1, 0]}, 1e-3)
    expected = gd.expm(np.array([[0.0, 1.0], [-1.0, 0.0]]))
    assert np.allclose(np.array(out["a"]), expected, atol=1e-8)
