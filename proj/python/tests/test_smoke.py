import math

import pytest

import treeshift


def test_k_tree_levels_and_norm():
    t = treeshift.Tree("gallery:k_tree?k=3", 64)
    assert t.level_sizes[:5] == [1, 3, 5, 7, 9]
    r = t.norm("S", p=1)
    assert r["value"] == 3.0
    assert r["truncated"] is False


def test_big_levels_are_python_ints():
    t = treeshift.Tree("gallery:factorial", 30)
    assert t.gamma(30) == math.factorial(31)


def test_ceil_radius():
    t = treeshift.Tree("gallery:ceil_three_halves", 60)
    r = t.radius("S", p=1, max_power=8)
    assert r["radius_sequence"][-1] == pytest.approx(4 / 3, rel=1e-9)
    assert t.K(3, 5) == 8


def test_apply_and_function_norm():
    t = treeshift.Tree({"kind": "homogeneous", "params": {"q": 2}}, 6)
    f = [{"level": 2, "index": 1, "num": 1, "den": 1}]
    g = t.apply("S", f)
    assert g == [{"level": 3, "index": 2, "count": 2, "num": 1, "den": 1}]
    assert t.function_norm(f, p=1)["value"] == 0.25


def test_witness_and_hypercyclicity():
    t = treeshift.Tree("gallery:homogeneous?q=2", 12)
    w = t.witness("resolventS", "2")
    assert w["status"] == "verified"
    assert w["exact_residual"] == "0"
    assert t.hypercyclic("B")["verdict"] == "yes"
    assert t.hypercyclic("S")["verdict"] == "no"
    suite = t.kgs_suite(samples=10, n_max=5, seed=3)
    assert suite["identity_passes"] == 10


def test_isometry_and_verify():
    t = treeshift.Tree("gallery:level_sequence?s=1,2,1,3", 8)
    assert t.isometry()["sequence"] == [1, 2, 1, 3, 1, 2, 1, 3]
    v = t.verify("B", power=2, p=2, trials=30, seed=5)
    assert v["lower_bound"]["violations"] == 0
    assert v["attainment"]["all_equal"]


def test_gallery():
    names = {e["name"] for e in treeshift.gallery_list()}
    assert "two_three_blocks" in names
    assert treeshift.self_test("periodic", {"q": [2, 3]}, depth=20)["passed"]


def test_errors():
    t = treeshift.Tree("gallery:k_tree", 4)
    with pytest.raises(treeshift.DepthError):
        t.norm("S", power=4)
    with pytest.raises(treeshift.InvalidArgument):
        treeshift.Tree("gallery:nope", 4)
    with pytest.raises(treeshift.TreeshiftError):
        t.witness("blowupS", "2")
