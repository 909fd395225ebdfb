"""Finite groupoids, principaloid bundles and matrix-group connections."""

import json

from ._core import (
    CompositionError,
    DomainError,
    EnumerationBoundError,
    FiniteGroupoid,
    GroupoidalError,
    InputError,
    NumericError,
    PrincipaloidBundle,
    StructuralError,
    bundle_counts,
    bundle_from_json,
    commutant_sizes,
    cyclic_group,
    enumerate_bisections,
    expm,
    groupoid_from_json,
    pair_groupoid,
    so3_basis,
    three_point_example,
    z2_swap_groupoid,
)
from . import _core


def validate_groupoid(g):
    return json.loads(_core._validate_groupoid(g))


def check_structure_identities(g, cap=1_000_000):
    return json.loads(_core._check_structure_identities(g, cap))


def verify_bundle(bundle, battery):
    """battery: "axioms", "atiyah" or "trident"."""
    return json.loads(_core._verify_bundle(bundle, battery))


def transport(scenario, path, step):
    """Scenario and path documents as dicts; returns endpoint data."""
    return json.loads(_core._transport(json.dumps(scenario), json.dumps(path), step))


__all__ = [name for name in dir() if not name.startswith("_")]
