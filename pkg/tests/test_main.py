"""
JSON and binary loaders
"""

import json
import struct

import numpy as np
import pytest
import sympy

from holonomy2 import fixtures
from holonomy2.algebra_core import same_class
from holonomy2.crossed import splice_connecting_class, validate_crossed_module
from holonomy2.errors import SchemaError
from holonomy2.forms import is_maurer_cartan
from holonomy2.hochschild import is_mc_element, validate_dga
from holonomy2.main import (
    crossed_from_dict,
    lie_algebra_from_dict,
    linf_from_dict,
    load_crossed,
    load_dga,
    load_mc_pair,
    load_ses,
    load_simpset,
    load_surface_binary,
    read_json,
    save_surface_binary,
    surface_from_dict,
)
from holonomy2.simplicial import circle_model, validate_simplicial


def test_shipped_crossed_modules(data_dir):
    crossed, digest = load_crossed(data_dir / "sl2_identity.json")
    assert validate_crossed_module(crossed) == []
    assert len(digest) == 64
    crossed, _ = load_crossed(data_dir / "heisenberg_plane.json")
    assert validate_crossed_module(crossed) == []


def test_bad_crossed_module_loads_but_fails(data_dir):
    crossed, _ = load_crossed(data_dir / "bad.json")
    assert {v.axiom for v in validate_crossed_module(crossed)} == {"peiffer"}


def test_shipped_sequence(data_dir):
    (ses, alpha), _ = load_ses(data_dir / "ses_abelian.json")
    connecting, gamma = splice_connecting_class(ses, alpha)
    assert same_class(ses.sub, 3, connecting, gamma)


def test_shipped_pairs(data_dir):
    pair, _ = load_mc_pair(data_dir / "mc_pair_gl1.json")
    assert is_maurer_cartan(pair)[0]
    pair, _ = load_mc_pair(data_dir / "mc_pair_non_mc.json")
    assert not is_maurer_cartan(pair)[0]


def test_shipped_dgas(data_dir):
    algebra, _ = load_dga(data_dir / "dga_truncated4.json")
    assert validate_dga(algebra) == []
    assert is_mc_element({1: 1}, algebra)
    assert algebra.products == fixtures.truncated_polynomial(4).products
    algebra, _ = load_dga(data_dir / "dga_xy.json")
    assert validate_dga(algebra) == []
    assert algebra.commutative


def test_shipped_circle(data_dir):
    simp, _ = load_simpset(data_dir / "circle2.json")
    assert validate_simplicial(simp) == []
    assert simp.faces == circle_model(2).faces
    assert simp.degeneracies == circle_model(2).degeneracies


def test_digest_follows_bytes(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    first.write_text('{"dim": 1}')
    second.write_text('{"dim":  1}')
    (data_a, digest_a), (data_b, digest_b) = read_json(first), read_json(second)
    assert data_a == data_b
    assert digest_a != digest_b


def test_missing_and_broken_files(tmp_path):
    with pytest.raises(SchemaError):
        read_json(tmp_path / "absent.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(SchemaError):
        load_crossed(broken)


@pytest.mark.parametrize(
    "data",
    [
        {"g": {"dim": 1}, "mu": [[0]], "action": [[[0]]]},
        {"h": {"dim": 1}, "g": {"dim": 1}, "mu": [[0.5]], "action": [[[0]]]},
        {"h": {"dim": 1}, "g": {"dim": 1}, "mu": [[0, 0]], "action": [[[0]]]},
        {"h": {"dim": 1}, "g": {"dim": 1}, "mu": [[0]], "action": []},
    ],
    ids=["missing-h", "float-entry", "wrong-shape", "bad-action"],
)
def test_malformed_crossed_module(data):
    with pytest.raises(SchemaError):
        crossed_from_dict(data)


def test_sparse_brackets():
    algebra = lie_algebra_from_dict(
        {"dim": 3, "brackets": [[0, 1, 1, 2], [0, 2, 2, -2], [1, 2, 0, 1]]}
    )
    assert algebra.structure_constants == fixtures.sl2().structure_constants
    with pytest.raises(SchemaError):
        lie_algebra_from_dict({"dim": 2, "brackets": [[1, 0, 0, 1]]})


def test_linf_with_l3_entries():
    linf = linf_from_dict({
        "l0": {"dim": 3},
        "lm1_dim": 1,
        "l1": [[0], [0], [0]],
        "action": [[[0]], [[0]], [[0]]],
        "l3": [[0, 1, 2, ["2/3"]]],
    })
    assert linf.l3_value(2, 1, 0)[0] == sympy.Rational(-2, 3)


def test_binary_surface_round_trip(tmp_path):
    surface = fixtures.torus_patch(8, 12)
    target = tmp_path / "patch.bin"
    save_surface_binary(target, surface)
    loaded, digest = load_surface_binary(target, [1.0, 0.0], [0.0, 1.0])
    assert np.array_equal(loaded.grid, surface.grid)
    assert np.array_equal(loaded.winding_sigma, [1.0, 0.0])
    assert len(digest) == 64


def test_binary_header_must_describe_a_grid(tmp_path):
    flat = tmp_path / "flat.bin"
    flat.write_bytes(struct.pack("<q", 2) + struct.pack("<2q", 8, 2) + bytes(8 * 16))
    with pytest.raises(SchemaError):
        load_surface_binary(flat)
    short = tmp_path / "short.bin"
    short.write_bytes(struct.pack("<q", 3) + struct.pack("<3q", 8, 8, 2) + bytes(8))
    with pytest.raises(SchemaError):
        load_surface_binary(short)
    with pytest.raises(SchemaError):
        load_surface_binary(tmp_path / "absent.bin")


def test_binary_header_rejects_negative_dimensions(tmp_path):
    mirrored = tmp_path / "mirrored.bin"
    mirrored.write_bytes(
        struct.pack("<q", 3) + struct.pack("<3q", -8, -8, 2) + bytes(8 * 128)
    )
    with pytest.raises(SchemaError, match="positive"):
        load_surface_binary(mirrored)


def test_surface_from_json_document(tmp_path):
    grid = fixtures.torus_patch(8, 8).grid
    target = tmp_path / "patch.json"
    target.write_text(json.dumps({"grid": grid.tolist(), "winding_sigma": [1, 0]}))
    data, _ = read_json(target)
    surface = surface_from_dict(data)
    assert surface.shape == (8, 8, 2)
    with pytest.raises(SchemaError):
        surface_from_dict({"grid": [[1.0, 2.0]]})
