import csv
import io
import json
import subprocess
import sys

import pytest

from edskit import cli
from edskit.errors import ConsistencyError


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def doc(*argv):
    code, out, _ = run(*argv)
    assert code == 0
    return json.loads(out)


def test_seq_tate_example():
    d = doc("seq", "--tate", "8:2", "--n", "8", "--plain")
    assert d["schema_version"] == 1 and d["command"] == "seq"
    F = d["result"]["F"]
    assert F[2] == "-24" and F[8] == "0"
    assert all(isinstance(x, str) for x in F)


def test_seq_curve_example():
    d = doc("seq", "--curve", "0,0,0,0,1", "--point", "2,3", "--n", "4", "--plain")
    assert d["result"]["G"][:3] == ["1", "2", "0"]
    assert d["result"]["H"][:3] == ["1", "3", "216"]
    assert d["params"]["n"] == 4


def test_short_curve_shorthand():
    a = doc("seq", "--curve", "0,1", "--point", "2,3", "--n", "5", "--plain")
    b = doc("seq", "--curve", "0,0,0,0,1", "--point", "2,3", "--n", "5", "--plain")
    assert a["result"] == b["result"]


def test_undefined_h_for_order_two():
    d = doc("seq", "--tate", "2:0,1", "--n", "4", "--plain")
    # H_1 = y is an initial value; later terms need a division by F_2 = 0
    assert d["result"]["H"][:2] == ["1", "0"]
    assert d["result"]["H"][2:] == ["undefined"] * 3


def test_numbers_round_trip():
    d = doc("seq", "--tate", "9:3", "--n", "30", "--plain")
    for col in ("F", "G", "H"):
        for s in d["result"][col]:
            assert str(int(s)) == s


def test_rational_gamma():
    d = doc("seq", "--curve", "0,1", "--point", "2,3", "--gamma", "1/2", "--n", "2", "--plain")
    # G_1 = gamma^-2 x
    assert d["result"]["G"][1] == "8"
    d = doc("seq", "--curve", "0,1", "--point", "2,3", "--gamma", "2", "--n", "2", "--plain")
    assert d["result"]["G"][1] == "1/2"


def test_csv():
    code, out, _ = run("seq", "--tate", "5:1", "--n", "6", "--format", "csv", "--plain")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "F", "G", "H"]
    assert len(rows) == 8
    assert rows[1 + 5][1] == "0"  # the point has order 5


def test_byte_identical_and_metadata_on_stderr():
    _, out1, err1 = run("seq", "--tate", "7:2", "--n", "12")
    _, out2, _ = run("seq", "--tate", "7:2", "--n", "12")
    assert out1 == out2
    assert err1.startswith("# edskit")
    _, _, err3 = run("seq", "--tate", "7:2", "--n", "12", "--plain")
    assert err3 == ""


def test_classify_example():
    d = doc("classify", "--N", "8", "--target", "G", "--power", "square", "--n", "10", "--alpha", "5", "--plain")
    assert d["result"] == {"verdict": "iff", "condition": "(α−1)(2α−1)=□", "holds": True}
    d = doc("classify", "--N", "8", "--target", "G", "--power", "square", "--n", "16", "--plain")
    assert d["result"] == {"verdict": "always"}


def test_pell_example():
    d = doc("pell", "--D", "8", "--count", "2", "--plain")
    assert d["result"] == [["3", "1"], ["17", "6"]]


def test_recover_example():
    d = doc("recover", "--curve", "0,0,0,0,1", "--point", "2,3", "--plain")
    assert d["result"]["a"] == "0" and d["result"]["b"] == "1"


def test_closedform_reports_errata():
    d = doc("closedform", "--N", "10", "--alpha", "3", "--n-min", "1", "--n-max", "4", "--plain")
    terms = d["result"]["terms"]
    assert [t["n"] for t in terms] == ["1", "2", "3", "4"]
    assert terms[2]["errata"] == ["N=10 G zeta n%m=3"]
    assert d["result"]["errata_applied"]


def test_closedform_matches_sequence():
    cf = doc("closedform", "--N", "7", "--alpha", "2", "--n-max", "14", "--plain")
    seq = doc("seq", "--tate", "7:2", "--n", "14", "--plain")
    assert [t["value"] for t in cf["result"]["terms"]] == seq["result"]["G"]


def test_printed_table_is_consistency_failure():
    code, out, err = run("closedform", "--N", "10", "--alpha", "3", "--n-max", "4", "--printed", "--plain")
    assert code == 1 and out == ""
    assert "consistency" in err


def test_verify_small_sweep_passes():
    d = doc("verify", "--N", "8", "--what", "all", "--alpha-bound", "4", "--n-max", "16", "--plain")
    assert d["result"]["ok"]
    assert {r["check"] for r in d["result"]["reports"]} == {"closedform", "classify"}


def test_verify_failure_exit_code(monkeypatch):
    real = cli.validate_spec

    def broken(*a, **k):
        rep = real(*a, **k)
        rep.mismatches.append(("injected", 1, 0, 1))
        return rep

    monkeypatch.setattr(cli, "validate_spec", broken)
    code, out, _ = run("verify", "--N", "4", "--alpha-bound", "3", "--plain")
    assert code == 1
    assert json.loads(out)["result"]["ok"] is False


def test_consistency_failure_exit_code(monkeypatch):
    def boom(*a, **k):
        raise ConsistencyError("forced")

    monkeypatch.setattr(cli, "eval_sequences", boom)
    code, _, err = run("seq", "--tate", "5:1", "--plain")
    assert code == 1 and "forced" in err


@pytest.mark.parametrize("argv", [
    ["seq", "--curve", "0,1", "--point", "2,4"],     # not on the curve
    ["seq", "--tate", "11:2"],                        # no such family
    ["seq", "--tate", "8:1"],                         # excluded parameter
    ["seq", "--curve", "0,1"],                        # missing point
    ["closedform", "--N", "2", "--alpha", "0,1", "--target", "H"],
    ["classify", "--N", "2", "--target", "H", "--power", "square", "--n", "3"],
    ["pell", "--D", "9"],
])
def test_parameter_errors(argv):
    code, out, _ = run(*argv, "--plain")
    assert code == 2 and out == ""


def test_malformed_flags_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["seq", "--n", "many"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "edskit", "pell", "--D", "2", "--count", "1", "--plain"],
                       capture_output=True, text=True, check=True)
    assert json.loads(r.stdout)["result"] == [["3", "2"]]
