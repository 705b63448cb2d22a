import json
import subprocess
import sys

import pytest

from swisscheese.canonical import CanonicalCode
from swisscheese.cheese import decomposition_from_json
from swisscheese.cli import main
from swisscheese.expr import expr_to_json
from swisscheese import BallRef, Compl, Diff, Union
from swisscheese.family import family_from_json, family_to_json

from conftest import make_c9, make_d3


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def files(tmp_path):
    return {
        "d3": write(tmp_path, "d3.json", family_to_json(make_d3())),
        "c9": write(tmp_path, "c9.json", family_to_json(make_c9())),
        "x05": write(tmp_path, "x05.json", expr_to_json(Union((BallRef("L"), BallRef("RL"))))),
        "x05b": write(tmp_path, "x05b.json", expr_to_json(Diff(BallRef("U"), BallRef("RR")))),
        "empty": write(tmp_path, "empty.json", expr_to_json(Diff(BallRef("U"), Union((BallRef("L"), BallRef("R")))))),
        "notA": write(tmp_path, "notA.json", expr_to_json(Compl(BallRef("A")))),
        "cells": write(tmp_path, "cells.json", {"cells": [[0, 2, 4, 6], [1, 3, 5, 7]]}),
        "crossing": write(
            tmp_path, "crossing.json",
            {"universe_size": 3, "balls": [{"id": "U", "points": [0, 1, 2]}, {"id": "A", "points": [0, 1]}, {"id": "B", "points": [1, 2]}]},
        ),
        "garbage": str(tmp_path / "garbage.json"),
    }


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_canonical(capsys, files):
    code, out, _ = run(capsys, "canonical", files["d3"], files["x05"])
    assert code == 0
    assert [e["ball"] for e in json.loads(out)["forest"]] == ["L", "RL"]


def test_canonical_dot(capsys, files):
    code, out, _ = run(capsys, "canonical", files["c9"], files["notA"], "--dot")
    assert code == 0 and '"U" -> "A";' in out


def test_decompose_empty(capsys, files):
    code, out, _ = run(capsys, "decompose", files["d3"], files["empty"])
    assert (code, out) == (0, "[]\n")


def test_decompose_round_trip(capsys, files):
    code, out, _ = run(capsys, "decompose", files["c9"], files["notA"])
    assert code == 0
    d = decomposition_from_json(json.loads(out))
    assert d.points(make_c9()) == set(range(3, 9))


def test_validate(capsys, files):
    code, out, _ = run(capsys, "validate", files["crossing"])
    assert code == 1
    assert json.loads(out) == {"ok": False, "violations": [{"kind": "crossing", "balls": ["A", "B"]}]}
    code, out, _ = run(capsys, "validate", files["d3"])
    assert code == 0 and json.loads(out)["ok"] is True


def test_unpackable(capsys, files):
    assert json.loads(run(capsys, "unpackable", files["d3"])[1]) == {"unpackable": False, "witness": "U"}
    assert json.loads(run(capsys, "unpackable", files["c9"])[1]) == {"unpackable": True, "witness": None}


def test_levels_and_code(capsys, files):
    code, out, _ = run(capsys, "levels", files["c9"], files["notA"])
    assert code == 0 and json.loads(out) == {"levels": [list(range(9)), [0, 1, 2]]}
    code, out, _ = run(capsys, "code", files["d3"], files["x05"])
    assert CanonicalCode.from_json(json.loads(out)).entries == (("L", 0), ("RL", 0))
    assert run(capsys, "code", files["d3"], files["x05b"])[1] == out


def test_quasi(capsys, files):
    code, out, _ = run(capsys, "quasi", files["d3"], files["x05"], "--cells", files["cells"])
    assert code == 0
    assert [c["cell"] for c in json.loads(out)] == [0, 1]


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", "--kind", "dyadic", "--depth", "3")
    assert code == 0 and family_to_json(family_from_json(json.loads(out))) == family_to_json(make_d3())
    code, out, _ = run(capsys, "gen", "--kind", "crumb", "--seed", "1", "--points", "9", "--balls", "6")
    assert code == 0 and len(json.loads(out)["balls"]) == 6
    assert run(capsys, "gen", "--kind", "dyadic", "--depth", "0")[0] == 2
    assert run(capsys, "gen", "--kind", "crumb", "--points", "3")[0] == 2


def test_error_exits(capsys, files):
    code, _, err = run(capsys, "canonical", files["garbage"], files["x05"])
    assert code == 2 and "cannot read" in err
    code, _, err = run(capsys, "canonical", files["crossing"], files["x05"])
    assert code == 1 and "not directed" in err
    with open(files["x05"], "w") as fh:
        json.dump({"op": "ball", "id": "nope"}, fh)
    assert run(capsys, "canonical", files["d3"], files["x05"])[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "swisscheese", "code", files["d3"], files["x05"]],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout) == {"code": [{"ball": "L", "level": 0}, {"ball": "RL", "level": 0}]}
