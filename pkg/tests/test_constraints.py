import pytest

from flc.algebra import leibniz_violations
from flc.constraints import RAW_VARIABLES, compare_with_lemma, derive_constraints, raw_table
from flc.gaussrat import as_gauss


def test_raw_table_is_leibniz_on_the_lemma_locus():
    # substitute a point satisfying every lemma item of the larger family
    names = RAW_VARIABLES["TLb8"]
    pt = dict(zip(names, [as_gauss(x) for x in (1, 2, 3, 0, 5, 7, 7, 6, 1, 0, 0, 4, 0, 0)]))
    pt["b13"] = pt["a16"]
    pt["b14"] = pt["a15"] - pt["b23"]
    pt["b15"] = pt["a14"] - 2 * pt["a26"]
    pt["b24"] = pt["a26"]
    A = raw_table("TLb8").map_entries(lambda p: p.eval(pt), as_gauss(0))
    assert leibniz_violations(A) == []
    # and moving off the locus breaks it
    pt["b13"] = pt["b13"] + 1
    assert leibniz_violations(raw_table("TLb8").map_entries(lambda p: p.eval(pt), as_gauss(0)))


def test_dim8_matches_the_lemma_exactly():
    rep = compare_with_lemma("TLb8")
    assert [st for _, _, st in rep.items] == ["matched"] * 5
    assert rep.extra == []
    assert rep.linear_span_equal
    assert rep.same_variety()


def test_dim8_printed_index_adds_relations():
    rep = compare_with_lemma("TLb8", "as_printed")
    assert {str(p) for p in rep.extra} >= {"a26", "b24"}


def test_dim7_agrees_only_up_to_radical():
    rep = compare_with_lemma("TLb7")
    status = {lab: st for lab, _, st in rep.items}
    assert status == {"1": "matched", "2": "matched", "3a": "matched-radical",
                      "3b": "matched-radical", "3c": "matched-radical"}
    assert rep.same_variety()
    assert (rep.independent_linear, rep.lemma_linear) == (4, 5)


def test_derivation_is_deterministic():
    assert [str(p) for p in derive_constraints("TLb7")] == [str(p) for p in derive_constraints("TLb7")]


def test_unknown_variant():
    with pytest.raises(ValueError):
        raw_table("TLb8", "sideways")
