import json
import math
from pathlib import Path

import pytest

from philattice.cli import InputError, main, parse_phi, parse_poly
from philattice.errors import NotSquarefree, ZeroConstantTerm
from philattice.lattice import LatticeBasis
from philattice.polyring import Poly
from philattice.serialize import dumps

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_poly_grammar():
    assert parse_poly("x^3-1") == Poly([-1, 0, 0, 1])
    assert parse_poly("x^4 - x - 1") == Poly([-1, -1, 0, 0, 1])
    assert parse_poly("2*x^2+3x+7") == Poly([7, 3, 2])
    assert parse_poly("-x+x^2") == Poly([0, -1, 1])
    for bad in ["", "x^", "x^3 1", "y+1", "x^3--1"]:
        with pytest.raises(InputError):
            parse_poly(bad)


def test_parse_phi_examples():
    assert parse_phi("x^3-1").n == 3
    with pytest.raises(NotSquarefree):
        parse_phi("x^2-2*x+1")
    with pytest.raises(ZeroConstantTerm):
        parse_phi("x^3-x")
    with pytest.raises(InputError):
        parse_phi("2*x^2+1")


def test_eta_cube_example(capsys):
    code, out, _ = run(capsys, "eta", "--phi", "x^3-1", "--basis", str(DATA / "upper3.json"), "--g", "0,0,1")
    assert code == 0
    rep = json.loads(out)
    assert rep["bound_tg"] == pytest.approx(math.sqrt(3), abs=1e-12)
    assert rep["bound_gs"] == pytest.approx(3, abs=1e-12)
    assert rep["certificate"]["u"] == ["0", "1", "0"]


def test_prime_spot_quartic(capsys):
    code, out, _ = run(capsys, "prime-spot", "--phi", "x^4-1", "--g", "-2,1,0,0")
    assert code == 0
    cert = json.loads(out)
    assert cert["Tg"] == ["-8/15", "-1/15", "-2/15", "-4/15"]
    assert cert["tg_min"] == pytest.approx(1 / 3)


def test_prime_spot_failure_is_domain_error(capsys):
    code, _, err = run(capsys, "prime-spot", "--phi", "x^3-1", "--g", "1,1,1")
    assert code == 1 and "NotPrimeSpot" in err


def test_ideal_matrix_tsv(capsys):
    code, out, _ = run(capsys, "ideal-matrix", "--phi", "x^3-1", "--f", "1,2,3", "--format", "tsv")
    assert code == 0
    lines = dict(line.split("\t", 1) for line in out.strip().splitlines())
    assert lines["ideal_matrix[0]"] == "1\t3\t2"
    assert lines["det"] == "18"


def test_cyclic_check(capsys, tmp_path):
    code, out, _ = run(capsys, "cyclic-check", "--phi", "x^3-1", "--basis", str(DATA / "upper3.json"))
    assert code == 0 and json.loads(out)["cyclic"] is True
    f = tmp_path / "diag.json"
    f.write_text(json.dumps(LatticeBasis.from_columns([[1, 0], [0, 2]]).to_json()))
    code, out, _ = run(capsys, "cyclic-check", "--phi", "x^2-1", "--basis", str(f))
    assert code == 0 and json.loads(out)["cyclic"] is False


def test_module_lattice_roundtrip(capsys, tmp_path):
    gens = tmp_path / "gens.json"
    gens.write_text(json.dumps({"phi": ["-1", "0", "1"], "generators": [["1", "1"], ["1", "-1"]]}))
    out_file = tmp_path / "basis.json"
    code, _, _ = run(capsys, "module-lattice", "--generators", str(gens), "--out", str(out_file))
    assert code == 0
    obj = json.loads(out_file.read_text())
    L = LatticeBasis.from_json(obj)
    assert L.det_gram == 4 and obj["cyclic"] is True
    # the emitted basis file feeds straight back into other verbs
    code, out, _ = run(capsys, "cyclic-check", "--phi", "x^2-1", "--basis", str(out_file))
    assert code == 0 and json.loads(out)["cyclic"] is True


def test_module_lattice_inline_generators(capsys):
    code, out, _ = run(capsys, "module-lattice", "--phi", "x^2-1", "--gen", "1,1")
    assert code == 0 and json.loads(out)["basis"] == [["1", "1"]]


def test_sample_requires_seed(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sample", "--basis", str(DATA / "upper3.json"), "--s", "1.5"])
    assert exc.value.code == 2


def test_sample_is_reproducible(capsys):
    args = ["sample", "--basis", str(DATA / "upper4.json"), "--s", "1.5", "--seed", "4", "--count", "5"]
    a = run(capsys, *args)[1]
    b = run(capsys, *args)[1]
    assert a == b and len(json.loads(a)["samples"]) == 5


def test_io_and_parse_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "eta", "--basis", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "eta", "--basis", str(bad))[0] == 2
    assert run(capsys, "prime-spot", "--phi", "x^3-1", "--g", "1,2")[0] == 2
    assert run(capsys, "prime-spot", "--phi", "x^^3", "--g", "1,2,3")[0] == 2


def test_bad_phi_is_domain_error(capsys):
    assert run(capsys, "prime-spot", "--phi", "x^2-2*x+1", "--g", "1,0")[0] == 1
    assert run(capsys, "prime-spot", "--phi", "x^3-x", "--g", "1,0,0")[0] == 1


def test_irrational_input_is_domain_error(capsys, tmp_path):
    f = tmp_path / "irr.json"
    f.write_text(json.dumps({"n": 1, "m": 1, "basis": [[math.pi]]}))
    assert run(capsys, "eta", "--basis", str(f))[0] == 1


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--quick"])
    assert exc.value.code == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert "FAIL" not in out


@pytest.mark.parametrize("value", [3.0, 0.1, 1 / 3, 1e-300, 2.0 ** 60, -0.0])
def test_float_serialisation_roundtrips(value):
    text = dumps({"v": value})
    parsed = json.loads(text)["v"]
    assert isinstance(parsed, float) and parsed == value


def test_nonfinite_floats_become_strings():
    assert json.loads(dumps([math.inf, math.nan])) == ["inf", "nan"]
