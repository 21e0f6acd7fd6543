import json

from flc.families import apply_adapted_closed_form, apply_adapted_direct, param_from_json, AdaptedTransform
from flc.verify import (ErrataAllowlist, closed_form_check, cocycle_suite, derive_rng, partition_fuzz, random_param,
                        verify_tables)


def test_derived_generators_are_reproducible_and_independent():
    a = [derive_rng(7, "x", i).random() for i in range(3)]
    assert a == [derive_rng(7, "x", i).random() for i in range(3)]
    assert len(set(a)) == 3
    assert derive_rng(7, "x", 0).random() != derive_rng(8, "x", 0).random()


def test_admissible_sampling():
    from flc.families import is_admissible
    for i in range(200):
        assert is_admissible(random_param("TLb8", derive_rng(0, i), admissible=True))


def test_allowlist_entries_carry_reasons():
    allow = ErrataAllowlist.load()
    assert len(allow.entries) == 58
    assert all(reason for reason in allow.entries.values())
    assert allow.covers("T1", 27, "self-classify")
    assert not allow.covers("T2", 1, "self-classify")


def test_single_orbit_tables_known_errata_only():
    rep = verify_tables(seed=3, samples=2, transforms=2, tables=["T1", "T3"])
    assert rep.exit_code() == 3
    bad = {(r.table, r.row, r.check) for r in rep.errata}
    assert bad == {("T1", "27", "self-classify"), ("T1", "28", "self-classify"),
                   ("T3", "15", "leibniz"), ("T3", "20", "leibniz"), ("T3", "22", "leibniz")}


def test_empty_allowlist_turns_errata_into_failures():
    rep = verify_tables(seed=3, samples=2, transforms=2, tables=["T1"], allowlist=ErrataAllowlist.empty())
    assert rep.exit_code() == 1


def test_report_is_byte_stable_across_runs_and_workers():
    a = verify_tables(seed=5, samples=3, transforms=3, tables=["T2"]).to_jsonl()
    b = verify_tables(seed=5, samples=3, transforms=3, tables=["T2"], workers=2).to_jsonl()
    assert a == b
    head = json.loads(a.splitlines()[0])
    assert head["type"] == "run" and "timing" not in head


def test_dim7_parametric_rows_are_clean():
    rep = verify_tables(seed=2, samples=5, transforms=5, tables=["T2"])
    assert rep.exit_code() == 0


def test_closed_form_errata_witnesses_reproduce():
    rep = closed_form_check("TLb7", samples=60, seed=1)
    errata = [e for e in rep.extra if e["type"] == "errata"]
    assert {e["formula"] for e in errata} <= {"E5", "E6"}
    for e in errata:
        C = param_from_json(e["inputs"]["C"])
        t = AdaptedTransform.from_json_obj("TLb7", e["inputs"]["t"])
        name = {"E5": "c13", "E6": "c14"}[e["formula"]]
        assert str(getattr(apply_adapted_closed_form(C, t), name)) == e["closed_form"]
        assert str(getattr(apply_adapted_direct(C, t), name)) == e["direct"]
        assert e["closed_form"] != e["direct"]


def test_small_fuzz_runs_clean():
    for fam in ("TLb7", "TLb8"):
        rep = partition_fuzz(fam, samples=300, seed=9)
        assert rep.exit_code() == 0


def test_cocycles_deterministic():
    a, b = cocycle_suite(), cocycle_suite()
    assert a.exit_code() == 0
    assert a.to_jsonl() == b.to_jsonl()
