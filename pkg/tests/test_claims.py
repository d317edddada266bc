"""Claim registry and runner: statuses, witnesses, bounds, determinism."""

import json

import jsonschema
import pytest

from ufdlab.claims import (
    REGISTRY,
    UsageError,
    default_params,
    exit_code,
    report_schema,
    run_claim,
    run_suite,
    suite_claims,
)


def test_registry_is_nonempty_and_self_describing():
    assert len(REGISTRY) == 17
    for cid, spec in REGISTRY.items():
        assert spec.claim_id == cid
        assert spec.statement.strip()
        assert isinstance(spec.param_types, dict)


def test_acceptance_suite_covers_the_whole_registry():
    assert suite_claims("acceptance") == list(REGISTRY)


def test_every_claim_ships_fixture_parameters():
    for cid, spec in REGISTRY.items():
        params = default_params(cid)
        assert isinstance(params, dict)
        assert set(params) <= set(spec.param_types)


def test_unknown_claim_and_unknown_suite_are_usage_errors():
    with pytest.raises(UsageError, match="unknown claim"):
        run_claim("no.such.claim")
    with pytest.raises(UsageError, match="unknown suite"):
        suite_claims("bogus")


def test_parameter_validation_rejects_unknown_keys_and_bad_types():
    with pytest.raises(UsageError, match="unknown parameter"):
        run_claim("cex.sseq", {"frobnicate": 1})
    with pytest.raises(UsageError, match="must be int"):
        run_claim("cex.sseq", {"n": "five"})


def test_whole_acceptance_suite_verifies_and_reports_validate():
    schema = report_schema()
    reports = run_suite("acceptance")
    assert [r.claim_id for r in reports] == list(REGISTRY)
    for rep in reports:
        assert rep.status == "verified", (rep.claim_id, rep.witness)
        assert rep.witness is not None
        assert rep.tool_version
        assert rep.elapsed_ms >= 0
        jsonschema.validate(rep.to_json(), schema)
    assert exit_code(reports) == 0


def test_reports_are_deterministic_modulo_elapsed_ms():
    def stripped(rep):
        doc = rep.to_json()
        doc.pop("elapsed_ms")
        return json.dumps(doc, sort_keys=True)

    for cid in ("cex.sseq", "omega.confluence", "groebner.soundness"):
        assert stripped(run_claim(cid)) == stripped(run_claim(cid))


def test_refutation_carries_the_counterexample():
    rep = run_claim("cex.sseq", {"n": 5, "expect": [2, 3, 6, 24, 181]})
    assert rep.status == "refuted"
    assert rep.witness["values"] == [2, 3, 6, 24, 180]
    assert exit_code([rep]) == 1


def test_cap_exceeded_becomes_unknown_with_bound():
    rep = run_claim("cex.coords", {"n_max": 9})
    assert rep.status == "unknown"
    assert rep.bound == "cap"
    jsonschema.validate(rep.to_json(), report_schema())
    assert exit_code([rep]) == 2


def test_timeout_becomes_unknown_with_bound_timeout():
    rep = run_claim("coeff.prime-avoid", timeout=0.001)
    assert rep.status == "unknown"
    assert rep.bound == "timeout"
    jsonschema.validate(rep.to_json(), report_schema())


def test_exit_code_priorities():
    verified = run_claim("cex.sseq")
    refuted = run_claim("cex.sseq", {"expect": [1]})
    unknown = run_claim("cex.coords", {"n_max": 9})
    assert exit_code([verified]) == 0
    assert exit_code([verified, unknown]) == 2
    assert exit_code([verified, unknown, refuted]) == 1


def test_hypothesis_violations_in_parameters_surface_verbatim():
    with pytest.raises(UsageError, match="relatively prime"):
        run_claim("lemma32.levels", {"s": "u", "t": "u+v", "b": "u"})


def test_single_index_alias_for_z_relations():
    rep = run_claim("omega.z-relations", {"i": 2})
    assert rep.status == "verified"
    assert rep.params == {"i": 2}


def test_field_name_alias_f5_accepted():
    rep = run_claim("samuel.kernel", {"field": "F5", "a": "u", "b": "v"})
    assert rep.status == "verified"
    assert rep.witness["saturation_index"] == 0


def test_wchain_regular_witness_records_every_level():
    rep = run_claim("wchain.regular", {"i_max": 3})
    levels = rep.witness["levels"]
    assert [lv["i"] for lv in levels] == [1, 2, 3]
    assert all(lv["W_is_power"] and lv["J_equals_W"] for lv in levels)


def test_groebner_irreducible_refutes_a_reducible_instance():
    rep = run_claim(
        "groebner.irreducible",
        {"field": "GF(5)", "vars": ["x", "y"], "poly": "x^2 - y^2", "max_deg": 1},
    )
    assert rep.status == "refuted"
    assert len(rep.witness["factors"]) == 2
