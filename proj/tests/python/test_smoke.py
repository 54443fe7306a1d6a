import json
import math
import os
from pathlib import Path

import pytest

import genfloor

FIXTURES = Path(os.environ.get("GENFLOOR_FIXTURES", Path(__file__).resolve().parents[2] / "fixtures"))


@pytest.fixture(scope="module")
def residential8():
    return genfloor.load_problem(FIXTURES / "residential8.csv")


def abc_problem():
    reqs = [("a", 4, 3), ("b", 2, 2), ("c", 3, 1)]
    return {
        "representation": "bstar_ascend_descend",
        "requirements": [{"id": i, "width": w, "height": h} for i, w, h in reqs],
        "goals": [{"a": "b", "b": "c", "priority": "L1"}],
    }


def test_csv_and_json_agree(residential8):
    assert len(residential8["requirements"]) == 8
    full = genfloor.load_problem(FIXTURES / "residential8.json")
    assert full["boundary"] == {"rect": [12.0, 18.0]}
    assert residential8["boundary"] is None  # csv rows carry no plot
    assert full["requirements"] == residential8["requirements"]
    assert full["goals"] == residential8["goals"]


def test_trees():
    assert genfloor.standard_tree("bstar_available_nodes", 3) == "1(2,3)"
    assert genfloor.perturb("bstar_available_nodes", 3, "0,5.5,2") == "1(,3(,2))"
    for method in ("otree_proceeding", "bstar_ascend_descend", "bstar_available_nodes"):
        ident = genfloor.identity_params(method, 5)
        assert genfloor.perturb(method, 5, ident) == genfloor.standard_tree(method, 5)


def test_generate_and_evaluate():
    p = abc_problem()
    fp = genfloor.generate(p)
    boxes = {b["id"]: (b["x"], b["y"], b["w"], b["h"]) for b in fp["blocks"]}
    assert boxes == {"a": (0, 0, 4, 3), "b": (4, 0, 2, 2), "c": (0, 3, 3, 1)}
    report = genfloor.evaluate(fp, p)
    assert report["bounding"]["area"] == 24.0
    assert report["adjacency"]["count"] == 0
    assert math.isclose(report["distances"]["b"], math.sqrt(2), abs_tol=1e-9)


def test_designed_layout_scores_full(residential8):
    with open(FIXTURES / "residential8_designed.json") as f:
        fp = json.load(f)
    assert genfloor.evaluate(fp, residential8, "L1")["adjacency"]["count"] == 28
    svg = genfloor.render(fp, "bubble", residential8, "L2")
    assert svg.count("goal achieved") == 20


def test_extend_fills_boundary():
    p = abc_problem()
    out = genfloor.extend(genfloor.generate(p), 12, 8, p)
    assert not out["penalty"]
    assert out["coverage"] == 1.0


def test_optimize_writes_artifacts(tmp_path):
    problem = genfloor.load_problem(FIXTURES / "small4.json")
    config = {"population": 12, "generations": 3, "seed": 4}
    a = genfloor.optimize(problem, config, tmp_path)
    b = genfloor.optimize(problem, config)
    assert a == b
    assert len(a["history"]) == 4
    assert (tmp_path / "history.csv").exists()
    best = [h["best_adjacency"] for h in a["history"]]
    assert best == sorted(best)


def test_bad_input_raises():
    with pytest.raises(genfloor.ValidationError):
        genfloor.perturb("bstar_available_nodes", 3, "1,2")
    with pytest.raises(ValueError):
        genfloor.optimize(abc_problem(), {"population": 3})
