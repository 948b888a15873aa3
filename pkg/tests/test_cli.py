import json
import subprocess
import sys

import pytest

from cmtrace.catalog import all_records, import_json, import_tsv
from cmtrace.cli import json_int, main, render_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_trace_json(capsys):
    code, out, _ = run(capsys, "trace", "--disc", "-15", "--prime", "61", "--root", "26", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["a"] == -2 and obj["N"] == 64 and obj["group"] == [16, 4]
    assert set(obj) >= {"disc", "p", "ell", "q", "u", "v", "epsilon", "a", "N", "group", "method"}
    assert render_json(obj) == out.strip()


def test_trace_inert(capsys):
    code, out, _ = run(capsys, "trace", "--disc", "-15", "--prime", "83", "--json")
    assert code == 0 and json.loads(out)["a"] == 154


def test_trace_human(capsys):
    code, out, _ = run(capsys, "trace", "--disc", "-235", "--prime", "241", "--root", "138")
    assert code == 0 and "a = 27" in out


def test_unsupported_discriminant(capsys):
    code, _, err = run(capsys, "trace", "--disc", "-100", "--prime", "7")
    assert code == 2 and "unsupported discriminant -100" in err


def test_even_prime(capsys):
    code, _, err = run(capsys, "trace", "--disc", "-15", "--prime", "2")
    assert code == 1 and "prime must be odd" in err


def test_condition_violation(capsys):
    assert run(capsys, "trace", "--disc", "-15", "--prime", "3")[0] == 2
    assert run(capsys, "trace", "--disc", "-15", "--prime", "7")[0] == 2
    assert run(capsys, "trace", "--disc", "-243", "--prime", "7")[0] == 2


def test_wrong_method(capsys):
    code, _, _ = run(capsys, "trace", "--disc", "-15", "--prime", "61", "--method", "symbol-s5")
    assert code == 2


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--disc", "-999"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["trace", "--disc", "-15"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--disc", "-15", "--pmax", "900"])
    assert exc.value.code == 1


def test_count(capsys):
    code, out, _ = run(capsys, "count", "--disc", "-15", "--prime", "61", "--root", "26", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["N"] == 64 and obj["group"] == [16, 4]


def test_count_conjugate(capsys):
    code, out, _ = run(capsys, "count", "--disc", "-15", "--prime", "61", "--root", "35", "--conjugate", "--json")
    assert code == 0 and json.loads(out)["N"] == 64


def test_catalog_export_round_trip(capsys):
    code, out, _ = run(capsys, "catalog", "export", "--format", "json")
    assert code == 0 and import_json(out) == all_records()
    code, out, _ = run(capsys, "catalog", "export", "--format", "tsv")
    assert code == 0 and import_tsv(out) == all_records()


def test_catalog_validate_and_list(capsys):
    code, out, _ = run(capsys, "catalog", "validate")
    assert code == 0 and out.count("ok") == 22
    code, out, _ = run(capsys, "catalog", "list", "--disc", "-15")
    assert code == 0 and "d=-15" in out


def test_rayclass(capsys):
    code, out, _ = run(capsys, "rayclass", "--disc", "-235", "--prime", "239", "--root", "208")
    assert code == 0 and "order 276" in out and "index i = 1" in out
    assert run(capsys, "rayclass", "--disc", "-15")[0] == 2


def test_verify_single(capsys):
    code, out, _ = run(capsys, "verify", "--disc", "-15", "--pmax", "200", "--inert-pmax", "60")
    assert code == 0 and "fail 0" in out


def test_json_int():
    assert json_int(2**63 - 1) == 2**63 - 1
    assert json_int(2**63) == str(2**63)
    assert json_int(-(2**63)) == -(2**63)


def test_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "cmtrace.cli", "trace", "--disc", "-15", "--prime", "61", "--root", "26", "--json"],
        capture_output=True, text=True, check=False,
    )  # fmt: skip
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["a"] == -2
