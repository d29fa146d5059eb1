import math

import numpy as np
import pytest

import delone


def test_cubic_lattice_summary():
    p = delone.cubic_lattice([-4, -4, -4], [4, 4, 4])
    assert len(p) == 729
    assert delone.packing_diameter(p) == pytest.approx(1.0)
    assert p.declared_R == pytest.approx(math.sqrt(3) / 2)
    g = delone.cluster_group(p, [0, 0, 0], 1.0)
    assert (g["label"], g["order"], g["tower_height"]) == ("Oh", 48, 6)
    v = delone.local_criterion(p, 1.0, p.declared_R)
    assert v["regular"] and v["N"] == 1


def test_c4v_example():
    p = delone.c4v_example([-5, -5, -5], [5, 5, 5])
    R = p.declared_R
    assert delone.cluster_count(p, 2 * R) == 1
    assert delone.cluster_group(p, [0, 0, 1], 2 * R)["label"] == "C4v"
    assert delone.bound_lookup("C4v") == "10R"


def test_antiprism_group_from_matrices():
    c, s = math.cos(math.pi / 4), math.sin(math.pi / 4)
    s8 = np.array([[c, -s, 0], [s, c, 0], [0, 0, -1]])
    c2 = np.diag([1.0, -1.0, -1.0])
    g = delone.group_from_matrices([s8, c2])
    assert (g["label"], g["order"], g["tower_height"]) == ("D4d", 16, 5)


def test_hex_lattice_classes():
    p = delone.hex_lattice(1.0, 1.0, [-5, -5, -5], [5, 5, 5])
    assert delone.cluster_group(p, [0, 0, 0], 1.0)["label"] == "D6h"
    for rho in (1.0, 1.5, 2 * p.declared_R):
        assert delone.cluster_count(p, rho) == 1


def test_table_and_constants():
    rows = delone.bound_table()
    assert {r["group"]: r["bound"] for r in rows}["S8"] == "Impossible"
    assert delone.tower_bound_radius(48) == 14
    assert 0.8677 < delone.shtogrin_step_bound(7) < 0.8678


def test_errors_carry_codes():
    with pytest.raises(delone.DeloneError) as info:
        delone.hex_bilattice(1.0, 4.0, 2.0, [-3, -3, -3], [3, 3, 3])
    assert info.value.code == "invalid_shift"
    with pytest.raises(delone.DeloneError) as info:
        delone.bound_lookup("C7")
    assert info.value.code == "unknown_label"


def test_lemma2_small_budget():
    r = delone.optimize_lemma2(grid=8)
    assert r["best_value"] < 0
    assert set(r["argmax"]) == {"a", "b", "x", "y", "theta"}


def test_patch_round_trip(tmp_path):
    p = delone.PointPatch([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]], [-0.5] * 3, [1.5] * 3)
    path = str(tmp_path / "pts.txt")
    delone.write_patch(path, p)
    q = delone.read_patch(path)
    assert np.allclose(np.array(q.points), np.array(p.points))
