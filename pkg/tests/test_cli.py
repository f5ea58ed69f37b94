import csv
import io
import json
import subprocess
import sys

import pytest

from heckelab.cli import main
from heckelab.hecke import algebra, random_element


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hecke_mul_json(capsys):
    code, out, _ = run(capsys, "hecke-mul", "--type", "A1", "T[1]*T[1]")
    assert code == 0
    data = json.loads(out)
    assert data["result"] == "(q-1)*T[1] + q*T[]"
    assert data["roundtrip"] is True


def test_hecke_mul_text(capsys):
    code, out, _ = run(capsys, "hecke-mul", "--type", "A1", "--format", "text", "T[1]*T[1]")
    assert code == 0 and out.strip() == "(q-1)*T[1] + q*T[]"


def test_hecke_mul_affine(capsys):
    code, out, _ = run(capsys, "hecke-mul", "--type", "A1", "--algebra", "affine", "T[1]*Y(1)")
    assert code == 0
    H = algebra("affine", "A1")
    assert H.parse(json.loads(out)["result"]) == H.gen(1) * H.poly(H.y((1,)))


@pytest.mark.parametrize("kind", ["finite", "affine", "degenerate", "nil"])
def test_format_parse_roundtrip_through_cli(kind, capsys):
    H = algebra(kind, "A2")
    import random
    rng = random.Random(kind)
    for _ in range(5):
        a = random_element(H, rng)
        expr = H.format(a)
        code, out, _ = run(capsys, "hecke-mul", "--type", "A2", "--algebra", kind, expr)
        assert code == 0
        assert H.parse(json.loads(out)["result"]) == a


def test_schur_weyl(capsys):
    code, out, _ = run(capsys, "schur-weyl", "--n", "2", "--d", "3")
    assert code == 0
    data = json.loads(out)
    assert data["commutant_dim"] == 20 and data["image_dim"] == 20


def test_schur_weyl_guard(capsys):
    code, _, err = run(capsys, "schur-weyl", "--n", "2", "--d", "7")
    assert code == 2 and "guard" in err


def test_springer_weight(capsys):
    code, out, _ = run(capsys, "springer-weight", "--jordan", "1,1", "--steps", "2")
    assert code == 0
    assert json.loads(out)["dominant_weight"] == [2, 0]
    code, out, _ = run(capsys, "springer", "weight", "--jordan", "2", "--steps", "2")
    assert json.loads(out)["dominant_weight"] == [1, 1]


def test_springer_weight_bad_steps(capsys):
    code, _, err = run(capsys, "springer-weight", "--jordan", "3", "--steps", "2")
    assert code == 2 and "--steps" in err


def test_springer_components(capsys):
    code, out, _ = run(capsys, "springer-components", "--jordan", "1,1", "--steps", "2")
    assert code == 0
    data = json.loads(out)
    assert data["components"] == 3
    code, _, _ = run(capsys, "springer-components", "--jordan", "1,1,1,1,1", "--steps", "5")
    assert code == 2


def test_springer_drinfeld(capsys):
    code, out, _ = run(capsys, "springer-drinfeld", "--jordan", "1", "--steps", "2", "--q", "q", "--s", "a")
    assert code == 0
    assert json.loads(out)["polynomials"] == ["u - a", "1"]
    code, _, err = run(capsys, "springer-drinfeld", "--jordan", "2", "--steps", "2", "--q", "2", "--s", "3a,a")
    assert code == 2


def test_convolution_csv(capsys):
    code, out, _ = run(capsys, "convolution-demo", "--images", "0,0,1", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [(r["fiber"], r["size"], r["action_rank"]) for r in rows] == [("0", "2", "4"), ("1", "1", "1")]


def test_convolution_map_file(tmp_path, capsys):
    p = tmp_path / "map.json"
    p.write_text(json.dumps({"source": [1, 2, 3], "target": ["a", "b"], "map": {"1": "a", "2": "a", "3": "b"}}))
    code, out, _ = run(capsys, "convolution-demo", "--map", str(p))
    assert code == 0
    assert json.loads(out)["dimension"] == 5


def test_output_file_atomic(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "schur-weyl", "--n", "2", "--d", "2", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["commutant_dim"] == 10
    assert [f.name for f in tmp_path.iterdir()] == ["out.json"]


def test_failed_check_exit_code(capsys):
    code, out, _ = run(capsys, "degenerate", "--type", "A1", "--q-scale", "2", "--y-sign", "1")
    assert code == 1
    code, out, _ = run(capsys, "degenerate", "--type", "A1")
    assert code == 0


def test_usage_errors(capsys):
    assert run(capsys, "hecke-mul", "--type", "Z9", "T[1]")[0] == 2
    assert run(capsys, "hecke-mul", "--type", "A1", "T[1")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "degenerate", "--type", "A1", "--order", "1")[0] == 2


def test_ops_verify_and_hecke_check(capsys):
    code, out, _ = run(capsys, "ops-verify", "--type", "A1", "--algebra", "nil", "--degree-bound", "3")
    assert code == 0
    code, out, _ = run(capsys, "hecke-check", "--type", "A1", "--samples", "10")
    assert code == 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "heckelab", "springer-weight", "--jordan", "2,1", "--steps", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["dominant_weight"] == [2, 1]
