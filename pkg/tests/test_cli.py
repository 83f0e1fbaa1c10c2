import io
import json
import subprocess
import sys

import pytest

from circleconf import formats
from circleconf.cli import main
from circleconf.forest import parse_tree
from circleconf.motion import validate_path

from conftest import BIG_TREE_TEXT, seven_circles


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def cfg(*triples):
    return {"circles": [{"cx": str(x), "cy": str(y), "r": str(r)} for x, y, r in triples]}


def write_json(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.fixture
def seven_json(tmp_path):
    return write_json(tmp_path, "seven_json.json", formats.config_to_json(seven_circles()))


def test_validate_config_and_path(tmp_path, seven_json):
    assert run("validate", seven_json)[0] == 0
    bad = write_json(tmp_path, "bad.json", cfg((0, 0, 1), (1, 0, 1)))
    code, out, _ = run("validate", bad)
    assert code == 1 and "intersect" in out
    collide = write_json(tmp_path, "collide.json", {"keyframes": [
        {"t": "0", "config": cfg((0, 0, 1), (3, 0, 1))}, {"t": "1", "config": cfg((3, 0, 1), (0, 0, 1))}]})
    code, out, _ = run("validate", collide)
    assert code == 1 and "1/6" in out


def test_tree_of_seven_circles(seven_json):
    code, out, _ = run("tree", seven_json)
    assert code == 0
    text, js = out.splitlines()
    assert text == "(1,5(2(4,3),7(6)))"
    assert json.loads(js)["children"][0] == {"children": [], "label": 1}


def test_canonical_then_tree_round_trip(tmp_path):
    for text in ("(4(1,3),2)", BIG_TREE_TEXT, "()", "(1)"):
        code, out, _ = run("canonical", text)
        assert code == 0
        f = tmp_path / "k.json"
        f.write_text(out)
        code, out, _ = run("tree", str(f))
        assert code == 0 and parse_tree(out.splitlines()[0]) == parse_tree(text)
    out = run("canonical", "(4(1,3),2)")[1]
    data = json.loads(out)
    assert data["circles"][3] == {"label": 4, "cx": "0", "cy": "0", "r": "1/6"}


def test_components(tmp_path):
    a = write_json(tmp_path, "a.json", cfg((0, 0, 1), (3, 0, 1)))
    b = write_json(tmp_path, "b.json", cfg((0, 0, 1), (0, 0, 2)))
    c = write_json(tmp_path, "c.json", cfg((0, 0, 1), (0, 0, 2)))
    d = write_json(tmp_path, "d.json", cfg((0, 0, 2), (0, 0, 1)))
    assert run("components", a, b)[0] == 1
    assert run("components", b, c, "--labeled")[0] == 0
    assert run("components", c, d, "--labeled")[0] == 1
    assert run("components", c, d)[0] == 0


def test_group_queries():
    big = BIG_TREE_TEXT
    assert run("group", "order", big)[1].strip() == "8"
    assert run("group", "structure", big)[1].strip() == "(B_3^{{1,2}|{3}} × B_3^{{1,2}|{3}}) ⋊ B_2"
    assert json.loads(run("group", "factors", big)[1])["reduced"] == [3, 3, 2]
    assert run("group", "order", "((()())(()()))")[1].strip() == "8"


def test_braid_commands():
    assert run("braid", "eq", "3", "1,2,1", "2,1,2") == (0, "true\n", "")
    assert run("braid", "eq", "2", "1", "-1")[0] == 1
    code, out, _ = run("braid", "nf", "3", "1,2,1")
    assert code == 0 and json.loads(out) == {"infimum": 1, "factors": []}
    assert run("braid", "eq", "3", "1,x", "1")[0] == 2
    assert run("braid", "eq", "3", "1")[0] == 2


def test_plan_and_monodromy(tmp_path, seven_json):
    code, out, _ = run("plan", seven_json)
    assert code == 0
    path = formats.path_from_json(json.loads(out))
    assert validate_path(path).ok
    k = write_json(tmp_path, "k.json", cfg(("0", "0", "1/6"), ("1/2", "0", "1/6")))
    swapped = write_json(tmp_path, "s.json", cfg(("1/2", "0", "1/6"), ("0", "0", "1/6")))
    code, out, _ = run("plan", k, swapped)
    assert code == 0
    loop = formats.path_from_json(json.loads(out))
    assert validate_path(loop).ok and loop.is_loop()
    lp = tmp_path / "loop.json"
    lp.write_text(out)
    code, out, _ = run("monodromy", str(lp))
    assert code == 0 and json.loads(out)["braids"][""] in ("1", "-1")
    assert run("plan", k, swapped, "--unlabeled")[0] == 0


def test_monodromy_rejects_non_basepoint(tmp_path, seven_json):
    p = tmp_path / "p.json"
    p.write_text(run("plan", seven_json)[1])
    code, _, err = run("monodromy", str(p))
    assert code == 2 and "BASEPOINT_MISMATCH" in err


def test_render_writes_svg(tmp_path, seven_json):
    out_file = tmp_path / "seven.svg"
    code, _, _ = run("render", seven_json, "-o", str(out_file), "--labels")
    assert code == 0
    svg = out_file.read_text()
    assert svg.startswith("<svg") and svg.count("<circle") == 7


def test_random_config_is_deterministic_and_valid(tmp_path):
    a = run("random-config", "6", "--seed", "3")[1]
    assert a == run("random-config", "6", "--seed", "3")[1]
    f = tmp_path / "r.json"
    f.write_text(a)
    assert run("validate", str(f))[0] == 0


def test_output_is_byte_deterministic(seven_json):
    assert run("plan", seven_json)[1] == run("plan", seven_json)[1]
    assert run("canonical", BIG_TREE_TEXT)[1] == run("canonical", BIG_TREE_TEXT)[1]


def test_errors_exit_two(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"circles": [[0, 0, 1],')
    code, _, err = run("validate", str(broken))
    assert code == 2 and "PARSE_ERROR" in err
    floats = write_json(tmp_path, "f.json", {"circles": [{"cx": 0.5, "cy": 0, "r": 1}]})
    assert run("tree", floats)[0] == 2
    assert run("tree", str(tmp_path / "missing.json"))[0] == 2
    assert run("canonical", "(1,1)")[0] == 2
    assert run("nonsense")[0] == 2
    assert run()[0] == 2


def test_module_entry_point(seven_json):
    proc = subprocess.run([sys.executable, "-m", "circleconf", "tree", seven_json], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("(1,5(")
