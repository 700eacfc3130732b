import io
import json
import subprocess
import sys

import jsonschema
import pytest

from oddparts import schemas
from oddparts.cli import main


def run(*argv, env=None):
    out = io.StringIO()
    code = main(list(argv), out=out, environ=env or {})
    return code, out.getvalue()


def run_json(*argv, schema=None):
    code, text = run(*argv, "--format", "json")
    data = json.loads(text)
    if schema is not None:
        jsonschema.validate(data, schema)
    return code, data


# -- count / enumerate ----------------------------------------------------------


def test_count_pod():
    code, text = run("count", "--family", "pod", "--n", "0..5")
    assert code == 0
    assert text == "0 1\n1 1\n2 1\n3 2\n4 3\n5 4\n"


def test_count_both_methods():
    assert run("count", "--family", "c", "--n", "4..4", "--method", "both") == (0, "4 3 3 match\n")
    code, data = run_json("count", "--family", "c", "--n", "4..4", "--method", "both", schema=schemas.COUNT)
    assert data["rows"] == [{"n": "4", "enumeration": "3", "series": "3", "match": True}]


def test_count_o2_zero():
    assert run("count", "--family", "o2", "--n", "0..0") == (0, "0 0\n")


def test_count_csv():
    code, text = run("count", "--family", "o1", "--n", "0..3", "--format", "csv")
    assert text.splitlines() == ["n,count", "0,1", "1,0", "2,1", "3,1"]


def test_count_series_beyond_enumeration_bound():
    code, data = run_json("count", "--family", "pod", "--n", "200..200", "--method", "series",
                          schema=schemas.COUNT)
    # prod (1 + q^odd) / prod (1 - q^even), expanded with plain lists
    c = [1] + [0] * 200
    for k in range(1, 201):
        for i in (range(200, k - 1, -1) if k % 2 else range(k, 201)):
            c[i] += c[i - k]
    assert code == 0 and data["rows"][0]["count"] == str(c[200])


@pytest.mark.parametrize("rng", ["5..2", "-1..3", "x", "1..y"])
def test_count_bad_range(rng, capsys):
    code, _ = run("count", "--family", "pod", "--n=" + rng)
    assert code == 2
    assert "range" in capsys.readouterr().err


def test_count_bound_refusal(capsys):
    code, _ = run("count", "--family", "pod", "--n", "70..70")
    assert code == 2 and "bound 60" in capsys.readouterr().err
    assert run("count", "--family", "pod", "--n", "70..70", "--max-enum-n", "70")[0] == 0


def test_unknown_family(capsys):
    assert run("count", "--family", "o7", "--n", "3")[0] == 2
    assert "unknown family" in capsys.readouterr().err


def test_enumerate():
    assert run("enumerate", "--family", "c", "--n", "4") == (0, "4\n3,1\n1,1,1,1\n")
    code, data = run_json("enumerate", "--family", "pod", "--n", "4", schema=schemas.ENUMERATE)
    assert data["partitions"] == [[4], [3, 1], [2, 2]] and data["count"] == "3"
    code, data = run_json("enumerate", "--n", "4", schema=schemas.ENUMERATE)
    assert data["count"] == "5"


# -- map ---------------------------------------------------------------------------


def test_map_example_forward():
    code, text = run("map", "--theorem", "3.1", "--partition", "11,8,5,5,5,4,3")
    assert code == 0
    assert "case      7\n" in text and "output    (10^2,8,5,4,3)\n" in text
    code, data = run_json("map", "--theorem", "3.1", "--partition", "11,8,5,5,5,4,3", schema=schemas.MAPPING)
    assert data["case"] == "7" and data["output"] == [10, 10, 8, 5, 4, 3]


def test_map_table_row():
    code, data = run_json("map", "--theorem", "3.2", "--partition", "12,12,11,11,11,11,8", schema=schemas.MAPPING)
    assert data["case"] == "2" and data["output"] == [24, 22, 12, 12, 8] and data["target"] == "O3(78)"


def test_map_backward():
    code, data = run_json("map", "--theorem", "3.2", "--direction", "backward", "--source", "n+2",
                          "--partition", "24,22,12,12,8", schema=schemas.MAPPING)
    assert data["output"] == [12, 12, 11, 11, 11, 11, 8] and data["case"] == "B2"


def test_map_family_guard(capsys):
    assert run("map", "--theorem", "3.1", "--partition", "2,2")[0] == 2
    assert "not in C" in capsys.readouterr().err


def test_map_backward_needs_source(capsys):
    assert run("map", "--theorem", "3.1", "--direction", "backward", "--partition", "6,4")[0] == 2


def test_map_operations():
    code, data = run_json("map", "--op", "phi", "--partition", "5,5,4,3,3,3,3,2", schema=schemas.OPERATION)
    assert data["output"] == [10, 6, 6, 4, 2]
    code, text = run("map", "--op", "union", "--partition", "5,4,3,2,1", "--with", "4,4,3,3,2")
    assert text == "input     (5,4,3,2,1)\nwith      (4^2,3^2,2)\noutput    (5,4^3,3^3,2^2,1)\n"
    code, data = run_json("map", "--op", "split", "--partition", "13,12,11^4,7,3^2", schema=schemas.OPERATION)
    assert data["alpha"] == [13, 12, 7] and data["beta"] == [11, 11, 11, 11, 3, 3]
    code, data = run_json("map", "--op", "phi-inverse", "--partition", "22,6", schema=schemas.OPERATION)
    assert data["output"] == [11, 11, 3, 3]
    assert run("map", "--op", "phi", "--partition", "3")[0] == 2
    assert run("map", "--op", "union", "--partition", "3")[0] == 2


# -- verify ------------------------------------------------------------------------


def test_verify_identity_series():
    code, text = run("verify", "--identity", "1.1", "--max-n", "200", "--method", "series")
    assert code == 0 and text.startswith("identity 1.1")
    assert "PASS" in text.splitlines()[0]


def test_verify_identity_json():
    code, data = run_json("verify", "--identity", "1.2", "--max-n", "12", schema=schemas.REPORT)
    assert code == 0 and data["passed"] is True
    assert data["notes"]["observed_threshold"] == "4"


def test_verify_bijection_level():
    code, data = run_json("verify", "--bijection", "3.1", "--n", "20", schema=schemas.REPORT)
    assert code == 0
    sizes = data["notes"]["target_sizes"]
    assert int(data["notes"]["domain_size"]) == int(sizes["O1(20)"]) + int(sizes["O1(19)"])


def test_verify_bijection_range_and_partition():
    code, text = run("verify", "--bijection", "3.2", "--n", "3..8", "--workers", "2")
    assert code == 0 and "status" in text
    code, data = run_json("verify", "--bijection", "3.1", "--partition", "11,8,5^3,4,3", schema=schemas.REPORT)
    assert code == 0 and data["notes"]["cases"] == {"7": "1"}


def test_verify_bijection_out_of_range(capsys):
    assert run("verify", "--bijection", "3.2", "--n", "2")[0] == 2


def test_verify_proof_chain():
    code, text = run("verify", "--proof-chain", "--order", "200")
    assert code == 0 and "subchecks_passed: 8/8" in text


def test_verify_cross_check_and_qbinomial():
    assert run("verify", "--cross-check", "o2", "--max-n", "6")[0] == 0
    code, data = run_json("verify", "--qbinomial=-q,q^4", "--order", "50", schema=schemas.REPORT)
    assert code == 0 and data["passed"] is True
    assert run("verify", "--qbinomial=0,q", "--order", "20")[0] == 0


def test_verify_oeis(tmp_path, capsys):
    good = tmp_path / "c.txt"
    good.write_text("".join("%d %d\n" % (k + 1, v) for k, v in enumerate([1, 1, 1, 2, 3, 4, 5, 7])))
    assert run("verify", "--oeis", str(good), "--family", "c", "--offset", "1")[0] == 0
    assert run("verify", "--oeis", str(good), "--family", "c")[0] == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1\nabc 3\n")
    assert run("verify", "--oeis", str(bad), "--family", "c")[0] == 2
    assert "line 2" in capsys.readouterr().err
    assert run("verify", "--oeis", str(good))[0] == 2


def test_verify_needs_a_mode():
    assert run("verify")[0] == 2


def test_verify_failure_exit_code(monkeypatch):
    from oddparts import verify

    real = verify.count_family
    monkeypatch.setattr(verify, "count_family",
                        lambda n, fam, **kw: real(n, fam, **kw) + (n == 9))
    assert run("verify", "--identity", "1.1", "--max-n", "12", "--method", "enum")[0] == 1


# -- series ------------------------------------------------------------------------


def test_series_examples():
    code, text = run("series", "--name", "o3_closed", "--order", "6")
    assert [line.split()[1] for line in text.splitlines()] == ["1", "0", "1", "1", "1", "1", "2"]
    assert run("series", "--name", "lambda_closed", "--order", "0") == (0, "0 1\n")
    code, data = run_json("series", "--name", "pod", "--order", "5", schema=schemas.SERIES)
    assert data["coeffs"] == ["1", "1", "1", "2", "3", "4"]


def test_series_unknown_name(capsys):
    assert run("series", "--name", "nope")[0] == 2
    err = capsys.readouterr().err
    assert "o3_closed" in err and "pod" in err


# -- options -------------------------------------------------------------------------


def test_global_options_before_subcommand():
    assert run("--format", "csv", "series", "--name", "pod", "--order", "2") == \
        (0, "n,coefficient\n0,1\n1,1\n2,1\n")


def test_environment_overrides():
    code, text = run("series", "--name", "pod", env={"ODDPARTS_FORMAT": "json", "ODDPARTS_ORDER": "3"})
    assert json.loads(text)["order"] == 3
    assert run("count", "--family", "pod", "--n", "65", env={"ODDPARTS_MAX_ENUM_N": "65"})[0] == 0
    # an explicit flag beats the environment
    code, text = run("series", "--name", "pod", "--order", "1", "--format", "plain",
                     env={"ODDPARTS_FORMAT": "json"})
    assert text == "0 1\n1 1\n"
    assert run("series", "--name", "pod", env={"ODDPARTS_FORMAT": "xml"})[0] == 2


def test_argparse_errors_exit_nonzero():
    with pytest.raises(SystemExit) as err:
        main(["count"], out=io.StringIO(), environ={})
    assert err.value.code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "oddparts", "count", "--family", "pod", "--n", "3..3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "3 2\n"
