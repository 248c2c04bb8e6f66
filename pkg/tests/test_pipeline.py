import pytest

from oracles import LOOP_SERIES
from pontrjagin.catalog import catalog_space
from pontrjagin.pipeline import rational_text, run_pipeline
from pontrjagin.specfile import parse_spec


def test_su_odd_one():
    rep = run_pipeline(catalog_space("SU_odd", {"n": 1}), 12)
    assert rep.status == "match"
    assert rep.stages["loop"]["series"] == LOOP_SERIES["SU_odd(n=1)"][3][:13]
    assert rep.verdict("golden presentation").ok
    assert rep.verdict("normal basis vs PBW").ok


def test_so8_brackets_and_golden_match():
    rep = run_pipeline(catalog_space("SO8", {}), 12)
    assert rep.stages["lie"]["brackets"] == [["a1", "a1", {"b1": "2/1"}], ["a1", "a2", {"b1": "1/1"}],
                                             ["a2", "a2", {"b1": "2/1"}]]
    assert rep.verdict("golden presentation").ok
    assert rep.verdict("Cartan reduction vs stated cohomology").ok


def test_custom_without_relations_is_abelian():
    pres = parse_spec("generators\n  x 2\nexterior\n  z 5\n")
    rep = run_pipeline(pres, 8)
    assert rep.stages["lie"]["brackets"] == []
    # free graded-commutative on a (deg 1) and c (deg 4)
    assert rep.stages["loop"]["series"] == [1, 1, 0, 0, 1, 1, 0, 0, 1]
    assert rep.verdict("golden presentation").status == "skipped"
    assert rep.status == "match"


def test_custom_relation_becomes_exterior_generator():
    pres = parse_spec("generators\n  x 2\nrelations\n  x^2\n  x^3\n")
    rep = run_pipeline(pres, 10, stop_after="cohomology")
    assert rep.stages["cohomology"]["exterior"] == [["w1", 5]]


def test_not_a_cartan_pair_aborts():
    pres = parse_spec("generators\n  x, y : 2\nrelations\n  x*y\n  x^2 + x*y\n")
    rep = run_pipeline(pres, 10)
    assert rep.status == "mismatch"
    assert rep.error["stage"] == "cohomology"
    assert "model" not in rep.stages


@pytest.mark.parametrize("stop,present,absent", [("cohomology", "cohomology", "model"),
                                                 ("model", "model", "lie"), ("lie", "lie", "loop")])
def test_stop_after(stop, present, absent):
    rep = run_pipeline(catalog_space("SU_odd", {"n": 1}), 8, verify=False, stop_after=stop)
    assert present in rep.stages and absent not in rep.stages
    assert rep.verdicts[-1].status == "skipped"


def test_integral_ring_both():
    rep = run_pipeline(catalog_space("SO8", {}), 12, ring="both")
    assert rep.verdict("integral vs rational ranks").ok
    assert rep.stages["integral"]["series"] == rep.stages["loop"]["series"]
    rep = run_pipeline(catalog_space("SO_even", {"n": 1}), 8, ring="integral")
    assert rep.verdict("integral vs rational ranks").status == "skipped"


def test_determinism_and_echo_round_trip():
    spec = parse_spec("space SO_even n=2\n")
    a = run_pipeline(spec, 12).to_json()
    b = run_pipeline(parse_spec("space SO_even n=2\n"), 12).to_json()
    assert a == b
    rep = run_pipeline(spec, 6)
    assert parse_spec(rep.input).label == spec.label
    custom = parse_spec("generators\n  x1, x2 : 2\nrelations\n  x1^2 + x2^2\n")
    assert parse_spec(run_pipeline(custom, 4).input) == custom


def test_text_report_mentions_verdicts():
    text = run_pipeline(catalog_space("SU_odd", {"n": 2}), 8).to_text(timings=False)
    assert "[a1,a1] = 2*b1" in text and "golden presentation: match" in text
    assert "timings" not in text


def test_rational_text_and_bad_options():
    assert rational_text(2) == "2/1"
    with pytest.raises(ValueError):
        run_pipeline(catalog_space("SU_odd", {"n": 1}), 4, ring="real")
    with pytest.raises(ValueError):
        run_pipeline(catalog_space("SU_odd", {"n": 1}), 4, stop_after="everything")
