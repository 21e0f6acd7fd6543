import json

import pytest

from flc.cli import main, parse_params, ParseError
from flc.families import ParamC8, build_family
from flc.gaussrat import as_gauss


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_classify(capsys):
    code, out = run(capsys, "classify", '{"family":"TLb7","c":{"c00":"2","c11":"1","c12":"2","c23":"1"}}')
    assert code == 0
    assert json.loads(out.out) == {"family": "TLb7", "invariants": ["512", "2"],
                                   "rep": "L(2,0,1,2,0,0,1)", "subset": 1}


def test_input_forms_agree():
    C = ParamC8(*[as_gauss(x) for x in (1, 0, 0, 1, 0, 0, 0, -2, 0, 1)])
    algebra = build_family(C).to_json_obj()
    assert parse_params({"family": "TLb8", "c": {"c00": "1", "c12": "1", "c23": "-2", "c34": "1"}}) == C
    assert parse_params({"c00": "1", "c12": "1", "c23": "-2", "c34": "1"}) == C
    assert parse_params(algebra) == C


def test_parse_errors(capsys):
    assert run(capsys, "classify", "{bad")[0] == 2
    assert run(capsys, "classify", '{"c99": "1"}')[0] == 2
    assert run(capsys, "classify")[0] == 2
    with pytest.raises(ParseError):
        parse_params({"family": "TLb9", "c": {}})


def test_iso(capsys):
    code, out = run(capsys, "iso", '{"c00":"1","c12":"1"}', '{"c00":"-1","c12":"1"}')
    assert code == 0
    res = json.loads(out.out)
    assert res["verdict"] == "yes" and res["witness"]["A0"] == "-1"
    code, out = run(capsys, "iso", '{"c12":"1","c23":"1"}', '{"c12":"2","c23":"1"}')
    assert json.loads(out.out)["verdict"] == "no"


def test_verify_tables_exit_codes_and_report(capsys, tmp_path):
    path = tmp_path / "r.jsonl"
    code, _ = run(capsys, "verify-tables", "--tables", "T1", "--samples", "1", "--transforms", "1",
                  "--json", str(path))
    assert code == 3
    first = path.read_text()
    run(capsys, "verify-tables", "--tables", "T1", "--samples", "1", "--transforms", "1", "--json", str(path))
    assert path.read_text() == first
    empty = tmp_path / "empty.json"
    empty.write_text('{"version": 1, "entries": []}')
    code, _ = run(capsys, "verify-tables", "--tables", "T1", "--samples", "1", "--transforms", "1",
                  "--errata-allowlist", str(empty))
    assert code == 1


def test_fuzz_and_constraints(capsys):
    assert run(capsys, "fuzz", "--family", "tlb7", "--samples", "200", "--seed", "18446744073709551615")[0] == 0
    # the invariance spot checks reach rows with allowlisted defects
    code, out = run(capsys, "fuzz", "--family", "tlb8", "--samples", "300", "--seed", "4")
    assert code == 3 and "0 unexpected" in out.out
    assert run(capsys, "fuzz", "--family", "tlb8", "--seed", "-1")[0] == 2
    code, out = run(capsys, "derive-constraints", "--family", "tlb8")
    assert code == 0 and "matched 5" in out.out
