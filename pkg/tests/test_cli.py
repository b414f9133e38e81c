import json
import subprocess
import sys

import pytest

from xcorr4.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_spectrum_predict_json(capsys):
    code, out, _ = run(capsys, "spectrum", "--n", "3", "--k", "2", "--predict", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["match"] is True and len(obj["measured"]["entries"]) == 4
    assert "meta" not in obj


def test_json_byte_stable(capsys):
    _, a, _ = run(capsys, "spectrum", "--n", "3", "--k", "2", "--format", "json")
    _, b, _ = run(capsys, "spectrum", "--n", "3", "--k", "2", "--format", "json")
    assert a == b
    assert a.strip() == json.dumps(json.loads(a), sort_keys=True)


def test_timing_goes_to_meta(capsys):
    _, out, _ = run(capsys, "spectrum", "--n", "3", "--k", "2", "--format", "json", "--timing")
    obj = json.loads(out)
    assert "wall_seconds" in obj["meta"]


def test_kasami_control(capsys):
    code, out, _ = run(capsys, "spectrum", "--m", "12", "--d", "1", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["value,count", "-65,31", "63,32"]


def test_k1_three_valued(capsys):
    code, out, _ = run(capsys, "spectrum", "--n", "3", "--k", "1", "--predict", "--format", "json")
    assert code == 0 and json.loads(out)["match"]


def test_spectrum_methods_agree(capsys):
    outs = []
    for method in ("direct", "folded", "expsum"):
        _, out, _ = run(capsys, "spectrum", "--n", "3", "--k", "2", "--method", method, "--format", "csv")
        outs.append(out)
    assert outs[0] == outs[1] == outs[2]


def test_predict_mismatch_exit_1(capsys, monkeypatch):
    from xcorr4 import expsum, seqcorr
    monkeypatch.setattr(expsum, "expected_spectrum", lambda tp: seqcorr.Spectrum({-1: 63}, 12, 13))
    code, _, _ = run(capsys, "spectrum", "--n", "3", "--k", "2", "--predict")
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["spectrum", "--n", "4", "--k", "2"],
    ["spectrum", "--m", "11"],
    ["spectrum", "--n", "3", "--k", "2", "--m", "12"],
    ["spectrum", "--m", "12", "--predict"],
    ["search", "--m", "9"],
    ["search", "--m", "12", "--d-min", "70"],
    ["field-info", "--m", "12", "--modulus", "11b"],
    ["field-info", "--m", "12", "--modulus", "zz"],
    ["verify", "--n", "3"],
    ["classify", "--n", "3", "--k", "2", "--jobs", "0"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and "error" in err


def test_argparse_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", "--format", "xml"])
    assert exc.value.code == 2


def test_field_info(capsys):
    code, out, _ = run(capsys, "field-info", "--n", "3", "--k", "2", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["d"] == 13 and obj["tables_ok"] and obj["modulus"] == "1107"


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--n", "3", "--k", "2", "--format", "json", "--oracle")
    obj = json.loads(out)
    assert code == 0 and obj["counts"] == {"ONE": 47, "TWO_K": 15, "TWO_2K": 1, "NONE_": 0}


def test_classify_detail_json_lines(capsys):
    code, out, _ = run(capsys, "classify", "--n", "3", "--k", "2", "--detail", "--format", "json")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and len(lines) == 64
    assert set(lines[0]) == {"a", "class", "zeros", "traces"}
    assert lines[-1]["ok"] is True
    big = [x for x in lines[:-1] if x["class"] == "TWO_2K"]
    assert len(big) == 1 and big[0]["traces"] == [1] * 16


def test_search(capsys):
    code, out, err = run(capsys, "search", "--m", "12", "--format", "json")
    obj = json.loads(out)
    hit = next(h for h in obj["hits"] if h["d"] == 13)
    assert code == 0 and hit["n_values"] == 4 and hit["family"] == [[3, 2]]
    assert next(h for h in obj["hits"] if h["d"] == 1)["n_values"] == 2
    assert "search m=12" in err


def test_search_m8(capsys):
    code, out, _ = run(capsys, "search", "--m", "8", "--format", "csv")
    assert code == 0 and out.startswith("d,n_values,family,note")


def test_verify(capsys):
    code, out, err = run(capsys, "verify", "--n", "3", "--k", "2", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["ok"] and obj["first_failure"] is None
    assert len(obj["checks"]) == 10
    assert "distribution: ok" in err


def test_verify_human(capsys):
    code, out, _ = run(capsys, "verify", "--n", "3", "--k", "1")
    assert code == 0 and "all checks passed" in out


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--n", "3", "--k", "1", "--repeat", "1", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and "numpy" in obj["seconds"]


def test_jobs_env(capsys, monkeypatch):
    monkeypatch.setenv("XCORR4_JOBS", "nope")
    code, _, err = run(capsys, "spectrum", "--n", "3", "--k", "1")
    assert code == 2 and "XCORR4_JOBS" in err


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "xcorr4", "spectrum", "--n", "3", "--k", "1",
                          "--format", "csv"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.splitlines()[1] == "-17,1"
