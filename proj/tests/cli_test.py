"""End-to-end checks of the treeshift command-line tool.

Usage: cli_test.py <path-to-treeshift>
"""

import json
import math
import os
import subprocess
import sys
import tempfile
import unittest

TOOL = None


def run(*args, check=True):
    proc = subprocess.run([TOOL, *args], capture_output=True, text=True)
    if check and proc.returncode != 0:
        raise AssertionError(f"{args} exited {proc.returncode}: {proc.stderr}")
    return proc


def run_json(*args):
    return json.loads(run(*args).stdout)


class CliTest(unittest.TestCase):
    def test_k_tree_norm(self):
        doc = run_json("norm", "--op", "S", "--p", "1", "--tree", "gallery:k_tree?k=3", "--depth", "64")
        self.assertEqual(doc["value"], 3.0)
        self.assertFalse(doc["truncated"])
        self.assertEqual(doc["value_p_power"]["exact"], "3")
        self.assertEqual(doc["depth"], 64)

    def test_periodic_radius(self):
        doc = run_json("radius", "--op", "B", "--tree", "gallery:periodic?q=2,3",
                       "--max-power", "12", "--p", "2")
        self.assertAlmostEqual(doc["radius_estimate"], math.sqrt(6), delta=1e-3)
        self.assertAlmostEqual(doc["closed_form"], math.sqrt(6), places=12)

    def test_describe(self):
        spec = {"kind": "per_vertex", "params": {"default": 2, "overrides": [
            {"level": 1, "index": 0, "children": 0}]}}
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "tree.json")
            with open(path, "w") as fh:
                json.dump(spec, fh)
            doc = run_json("describe", "--tree", path, "--depth", "3")
        self.assertEqual(doc["level_sizes"], [1, 2, 2, 4])
        self.assertFalse(doc["leafless_up_to_depth"])
        self.assertEqual(doc["first_leaf"], {"level": 1, "index": 0})
        self.assertEqual(doc["degree_histogram"][1]["degrees"], {"0": 1, "2": 1})

    def test_apply_round_trip(self):
        with tempfile.TemporaryDirectory() as tmp:
            f = os.path.join(tmp, "f.json")
            g = os.path.join(tmp, "g.json")
            with open(f, "w") as fh:
                json.dump([{"level": 1, "index": 0, "num": 1, "den": 2},
                           {"level": 2, "index": 2, "count": 3, "num": -3, "den": 1}], fh)
            run("apply", "--op", "B", "--in", f, "--out", g, "--tree", "gallery:homogeneous?q=3",
                "--depth", "4")
            with open(g) as fh:
                out = json.load(fh)
        # B sums children: the root gets 1/2, vertex 0 of level 1 gets -3*1 (index 2 is a
        # child of vertex 0) and vertex 1 gets -3*2.
        self.assertEqual(out, [
            {"level": 0, "index": 0, "num": 1, "den": 2},
            {"level": 1, "index": 0, "num": -3, "den": 1},
            {"level": 1, "index": 1, "num": -6, "den": 1},
        ])

    def test_function_norm(self):
        with tempfile.TemporaryDirectory() as tmp:
            f = os.path.join(tmp, "f.json")
            with open(f, "w") as fh:
                json.dump([{"level": 2, "index": 0, "re": 3, "im": 4}], fh)
            doc = run_json("norm", "--in", f, "--p", "2", "--tree", "gallery:homogeneous?q=2",
                           "--depth", "4")
        self.assertAlmostEqual(doc["value"], 2.5)
        self.assertEqual(doc["little_space"]["verdict"], "vanishing")

    def test_witness_kinds(self):
        doc = run_json("witness", "--kind", "resolventS", "--lambda", "2", "--tree",
                       "gallery:homogeneous?q=2", "--depth", "6")
        self.assertEqual(doc["report"]["status"], "verified")
        self.assertEqual(doc["report"]["exact_residual"], "0")
        doc = run_json("witness", "--kind", "eigenB", "--lambda", "0.3-0.7i", "--tree",
                       "gallery:k_tree?k=2", "--depth", "12")
        self.assertLessEqual(doc["report"]["residual"], 1e-10)
        doc = run_json("witness", "--kind", "blowupS", "--lambda", "0", "--tree",
                       "gallery:k_tree", "--depth", "4")
        self.assertEqual(doc["report"]["status"], "no_solution")
        doc = run_json("witness", "--kind", "membershipB", "--lambda", "2.5+1i", "--mode", "Hp0",
                       "--tree", "gallery:homogeneous?q=3", "--depth", "20")
        self.assertEqual(doc["report"]["verdict"], "member_witnessed")
        doc = run_json("witness", "--kind", "pointS", "--tree", "gallery:homogeneous", "--depth", "5")
        self.assertEqual(doc["report"]["verdict"], "empty")

    def test_hypercyclic(self):
        doc = run_json("hypercyclic", "--op", "B", "--tree", "gallery:homogeneous?q=2",
                       "--depth", "24", "--samples", "20", "--n-max", "10", "--seed", "4")
        self.assertEqual(doc["verdict"]["verdict"], "yes")
        self.assertEqual(doc["suite"]["identity_passes"], 20)
        doc = run_json("hypercyclic", "--op", "S", "--tree", "gallery:ceil_three_halves")
        self.assertEqual(doc["verdict"]["verdict"], "no")
        self.assertIsNone(doc["suite"])

    def test_gallery(self):
        names = [e["name"] for e in run_json("gallery", "list")]
        self.assertIn("two_three_blocks", names)
        doc = run_json("gallery", "self-test", "--name", "k_tree", "--params", '{"k": 3}',
                       "--depth", "40", "--p", "1", "--max-power", "8")
        self.assertTrue(doc["passed"])

    def test_verify_and_determinism(self):
        args = ("verify", "--op", "B", "--power", "2", "--p", "2", "--trials", "50", "--seed", "7",
                "--tree", "gallery:ceil_three_halves", "--depth", "14")
        first = run(*args).stdout
        second = run(*args).stdout
        self.assertEqual(first, second)
        doc = json.loads(first)
        self.assertEqual(doc["lower_bound"]["violations"], 0)
        self.assertTrue(doc["attainment"]["all_equal"])
        grid = run_json("verify", "--op", "B", "--tree", "gallery:homogeneous?q=2", "--depth", "2",
                        "--grid=-1,0,1,2", "--trials", "10")
        self.assertEqual(grid["grid"]["best_ratio"], 2.0)

    def test_csv(self):
        out = run("norm", "--op", "B", "--p", "1", "--tree", "gallery:homogeneous?q=3",
                  "--depth", "4", "--format", "csv").stdout.splitlines()
        self.assertEqual(out[0], "n,term,approx")
        self.assertEqual(out[1], "0,3,3.0")

    def test_errors(self):
        bad = run("norm", "--op", "Q", "--tree", "gallery:k_tree", check=False)
        self.assertEqual(bad.returncode, 2)
        missing = run("radius", "--op", "S", check=False)
        self.assertEqual(missing.returncode, 2)
        depth = run("norm", "--op", "S", "--tree", "gallery:k_tree", "--depth", "0", check=False)
        self.assertEqual(depth.returncode, 1)
        err = json.loads(depth.stderr)
        self.assertEqual(err["error"], "out_of_depth")
        cap = run("describe", "--tree", "gallery:k_tree", "--depth", "12", "--vertex-cap", "5",
                  check=False)
        self.assertEqual(cap.returncode, 1)
        self.assertEqual(json.loads(cap.stderr)["error"], "resource_limit")
        unknown = run("describe", "--tree", "gallery:nope", check=False)
        self.assertEqual(unknown.returncode, 2)


if __name__ == "__main__":
    TOOL = sys.argv.pop(1)
    unittest.main()
