"""Scenario suite: green runs, coherence, round-trips, and error paths."""

import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from towercalc.exactnum import ParamPoly
from towercalc.scenarios import (
    BadParameterError,
    POLICY_ANY,
    POLICY_NUMERIC,
    PolicyError,
    ScenarioFileError,
    SYMBOLIC,
    UnknownScenarioError,
    derive_boundary_restriction,
    derive_psi_pullback,
    derive_xi_pullback,
    evaluate_doc,
    exc_restriction_routes,
    export_scenario,
    list_scenarios,
    load_scenario_file,
    parse_value,
    run_scenario,
    scenario_doc,
    serialize_value,
)

ALL_NAMES = [info["name"] for info in list_scenarios()]


# ---------------------------------------------------------------------------
# every built-in scenario is green


@pytest.mark.parametrize("name", ALL_NAMES)
def test_scenario_passes_symbolically_or_at_policy_minimum(name):
    doc = scenario_doc(name)
    n = 3 if doc["n_policy"] == POLICY_NUMERIC else SYMBOLIC
    report = run_scenario(name, n)
    assert report.passed, [c.name for c in report.checks if c.status != "PASS"]


@pytest.mark.parametrize("name", ALL_NAMES)
@pytest.mark.parametrize("n", [3, 4, 5])
def test_scenario_passes_at_numeric_parameters(name, n):
    report = run_scenario(name, n)
    assert report.passed, [c.name for c in report.checks if c.status != "PASS"]


def test_symbolic_pass_implies_numeric_pass():
    # coherence: a symbolic run that passes must pass at every sampled n
    for name in ALL_NAMES:
        if scenario_doc(name)["n_policy"] == POLICY_NUMERIC:
            continue
        if run_scenario(name, SYMBOLIC).passed:
            for n in (3, 4, 5):
                assert run_scenario(name, n).passed, (name, n)


# ---------------------------------------------------------------------------
# listing


def test_list_scenarios_is_sorted_and_documented():
    infos = list_scenarios()
    assert len(infos) >= 13
    names = [i["name"] for i in infos]
    assert names == sorted(names)
    for info in infos:
        assert info["description"].strip()
        assert info["n_policy"] in (POLICY_ANY, POLICY_NUMERIC)


def test_expected_scenarios_are_present():
    expected = {
        "jz-intersection-table",
        "jz-canonical-class",
        "picard-matrices",
        "normal-bundle-transport",
        "mori-chain-jz",
        "mori-chain-ez",
        "pushforward-iz1z2",
        "extremal-sigma-ray",
        "ez-kernel-x2-x3",
        "local-model-stabilizers",
        "normal-cone-quadric",
        "incidence-fixed-locus",
        "contraction-numerics",
    }
    assert expected <= set(ALL_NAMES)


# ---------------------------------------------------------------------------
# reports


def test_report_schema_and_sorted_checks():
    report = run_scenario("picard-matrices", SYMBOLIC)
    d = report.to_json_dict()
    assert set(d) == {"scenario", "n", "checks"}
    assert d["scenario"] == "picard-matrices"
    assert d["n"] == "symbolic"
    names = [c["name"] for c in d["checks"]]
    assert names == sorted(names)
    for c in d["checks"]:
        assert set(c) == {"name", "expected", "computed", "status", "provenance"}
        assert c["status"] in ("PASS", "FAIL")
        assert c["provenance"] in ("reference", "derived", "trivial")


def test_report_json_round_trips_losslessly():
    for name in ("jz-intersection-table", "jz-canonical-class"):
        text = run_scenario(name, SYMBOLIC).to_json_text()
        parsed = json.loads(text)
        assert json.dumps(parsed, sort_keys=True, indent=2) + "\n" == text


def test_reports_are_deterministic():
    for name in ALL_NAMES:
        n = 3 if scenario_doc(name)["n_policy"] == POLICY_NUMERIC else SYMBOLIC
        assert (
            run_scenario(name, n).to_json_text() == run_scenario(name, n).to_json_text()
        )


def test_reports_contain_no_timestamps():
    text = run_scenario("jz-intersection-table", 3).to_json_text()
    for needle in ("time", "date", "20260", "utc"):
        assert needle not in text.lower()


def test_text_rendering_mentions_every_check():
    report = run_scenario("ez-kernel-x2-x3", SYMBOLIC)
    text = report.render_text()
    assert "result: PASS" in text
    for c in report.checks:
        assert c.name in text


def test_failing_check_is_reported_not_raised():
    doc = scenario_doc("picard-matrices")
    for entry in doc["expect"]:
        if entry["name"] == "psi-invertible":
            entry["value"] = False
    report = evaluate_doc(doc, SYMBOLIC)
    assert not report.passed
    failing = [c for c in report.checks if c.status == "FAIL"]
    assert [c.name for c in failing] == ["psi-invertible"]
    assert failing[0].expected is False
    assert failing[0].computed is True
    assert "expected" in report.render_text()


# ---------------------------------------------------------------------------
# parameter validation and policy


def test_rejects_small_and_malformed_parameters():
    with pytest.raises(BadParameterError):
        run_scenario("jz-intersection-table", 2)
    with pytest.raises(BadParameterError):
        run_scenario("jz-intersection-table", 0)
    with pytest.raises(BadParameterError):
        run_scenario("jz-intersection-table", True)
    with pytest.raises(BadParameterError):
        run_scenario("jz-intersection-table", "sym")


def test_unknown_scenario_names_the_known_ones():
    with pytest.raises(UnknownScenarioError) as err:
        run_scenario("no-such-scenario", 3)
    assert "jz-intersection-table" in str(err.value)


def test_numeric_only_policy_is_enforced():
    with pytest.raises(PolicyError) as err:
        run_scenario("normal-cone-quadric", SYMBOLIC)
    assert "numeric" in str(err.value)
    assert run_scenario("normal-cone-quadric", 3).passed


def test_numeric_check_in_a_symbolic_doc_is_rejected():
    doc = scenario_doc("normal-cone-quadric")
    doc["n_policy"] = POLICY_ANY
    with pytest.raises(PolicyError):
        evaluate_doc(doc, SYMBOLIC)


# ---------------------------------------------------------------------------
# document loading


def test_export_then_load_reproduces_the_report(tmp_path):
    for name in ALL_NAMES:
        n = 4 if scenario_doc(name)["n_policy"] == POLICY_NUMERIC else SYMBOLIC
        path = tmp_path / ("%s.json" % name)
        path.write_text(export_scenario(name), encoding="utf-8")
        doc = load_scenario_file(path)
        assert evaluate_doc(doc, n).to_json_text() == run_scenario(name, n).to_json_text()


def test_loaded_doc_with_a_wrong_value_fails_cleanly(tmp_path):
    doc = scenario_doc("mori-chain-ez")
    for entry in doc["expect"]:
        if entry["name"] == "boundary-push-sigma":
            entry["value"] = ["9", "9", "9", "9"]
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    report = evaluate_doc(load_scenario_file(path), 3)
    assert not report.passed


def test_parse_error_carries_line_and_column(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"name": "x",\n  "spaces": [1,]\n}', encoding="utf-8")
    with pytest.raises(ScenarioFileError) as err:
        load_scenario_file(path)
    assert "parse error at line 2" in str(err.value)
    assert "column" in str(err.value)


def test_wrong_format_tag_is_rejected(tmp_path):
    path = tmp_path / "wrong.json"
    path.write_text('{"format": "other/9", "name": "x"}', encoding="utf-8")
    with pytest.raises(ScenarioFileError) as err:
        load_scenario_file(path)
    assert "format" in str(err.value)


def test_semantic_error_names_the_offending_object():
    doc = scenario_doc("jz-intersection-table")
    doc["spaces"][1]["bundle"] = "missing_bundle"
    with pytest.raises(ScenarioFileError) as err:
        evaluate_doc(doc, 3)
    assert "first_ruling" in str(err.value)
    assert "missing_bundle" in str(err.value)


def test_untagged_expected_value_is_rejected():
    doc = scenario_doc("jz-intersection-table")
    del doc["expect"][0]["provenance"]
    with pytest.raises(ScenarioFileError) as err:
        evaluate_doc(doc, 3)
    assert "provenance" in str(err.value)
    assert doc["expect"][0]["name"] in str(err.value)


def test_unknown_provenance_tag_is_rejected():
    doc = scenario_doc("jz-intersection-table")
    doc["expect"][0]["provenance"] = "guessed"
    with pytest.raises(ScenarioFileError) as err:
        evaluate_doc(doc, 3)
    assert "guessed" in str(err.value)


def test_unknown_check_kind_is_rejected():
    doc = scenario_doc("jz-intersection-table")
    doc["expect"][0]["check"] = "warp-drive"
    with pytest.raises(ScenarioFileError) as err:
        evaluate_doc(doc, 3)
    assert "unknown check kind" in str(err.value)


def test_duplicate_check_names_are_rejected():
    doc = scenario_doc("jz-intersection-table")
    doc["expect"][1]["name"] = doc["expect"][0]["name"]
    with pytest.raises(ScenarioFileError):
        evaluate_doc(doc, 3)


def test_floats_are_rejected_everywhere():
    doc = scenario_doc("jz-intersection-table")
    doc["expect"][0]["value"] = 1.5
    with pytest.raises(ScenarioFileError) as err:
        evaluate_doc(doc, 3)
    assert "non-exact" in str(err.value)


def test_missing_anchor_is_rejected():
    doc = scenario_doc("jz-intersection-table")
    del doc["expect"][0]["anchor"]
    with pytest.raises(ScenarioFileError):
        evaluate_doc(doc, 3)


def test_anchor_stays_out_of_reports():
    doc = scenario_doc("jz-intersection-table")
    report = evaluate_doc(doc, 3)
    assert "anchor" not in report.to_json_text()


# ---------------------------------------------------------------------------
# serialization


def test_serialize_numbers_as_strings():
    assert serialize_value(Fraction(5, 2), SYMBOLIC) == "5/2"
    assert serialize_value(7, SYMBOLIC) == "7"
    assert serialize_value(True, SYMBOLIC) is True
    p = ParamPoly({1: 2, 0: -4})
    assert serialize_value(p, SYMBOLIC) == {"0": "-4", "1": "2"}
    assert serialize_value(p, 5) == "6"


def test_parse_round_trip_on_specific_values():
    cases = ["5/2", "-3", {"0": "-4", "1": "2"}, [["1", "0"], ["0", "1"]], True, None]
    for case in cases:
        assert serialize_value(parse_value(case), SYMBOLIC) == case


@given(st.fractions())
def test_fraction_serialization_round_trips(q):
    assert parse_value(serialize_value(q, SYMBOLIC)) == q


@given(
    st.dictionaries(
        st.integers(min_value=0, max_value=4),
        st.fractions(),
        min_size=1,
        max_size=4,
    )
)
def test_polynomial_serialization_is_idempotent(coeffs):
    p = ParamPoly(coeffs)
    once = serialize_value(p, SYMBOLIC)
    again = serialize_value(parse_value(once), SYMBOLIC)
    assert once == again


# ---------------------------------------------------------------------------
# recipes


def test_recipe_matrices_match_their_recorded_forms():
    psi = derive_psi_pullback()
    assert psi.const_entries() == [
        [Fraction(0), Fraction(0), Fraction(0), Fraction(1)],
        [Fraction(1), Fraction(1), Fraction(1), Fraction(-3)],
        [Fraction(0), Fraction(1), Fraction(0), Fraction(-1)],
        [Fraction(0), Fraction(0), Fraction(1), Fraction(-1)],
    ]
    xi = derive_xi_pullback()
    assert xi.const_entries() == [
        [Fraction(1), Fraction(-1), Fraction(-1), Fraction(1)],
        [Fraction(0), Fraction(2), Fraction(2), Fraction(-3)],
        [Fraction(0), Fraction(1), Fraction(0), Fraction(-1)],
        [Fraction(0), Fraction(0), Fraction(1), Fraction(-1)],
    ]
    restriction = derive_boundary_restriction()
    assert restriction.const_entries() == [
        [Fraction(0), Fraction(1), Fraction(1), Fraction(0)],
        [Fraction(1), Fraction(-1), Fraction(-1), Fraction(-1)],
        [Fraction(0), Fraction(0), Fraction(0), Fraction(-1)],
    ]


def test_exceptional_restriction_routes_agree():
    routes = exc_restriction_routes()
    assert routes["agree"] is True
    assert routes["declared"] == routes["cone_route"]
