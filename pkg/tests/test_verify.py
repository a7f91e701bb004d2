"""Harness behavior: weight sampling, verdict logic, reports, sweep."""

import random
from fractions import Fraction

import pytest

from rescrit.catalog import get
from rescrit.logmod import minimal_derivation_generators
from rescrit.critical import logarithmic_ideal_generators
from rescrit.verify import (
    DEFAULT_SEED,
    WeightReport,
    aomoto_data,
    check_weights,
    critical_count_check,
    fibre_spot_check,
    harness_seed,
    reduced_scope_evidence,
    sample_generic_weights,
    sliced_universal_dimension,
    sweep,
    universal_codim_report,
    verify_entry,
)


def test_generic_weights_avoid_cheap_degeneracies():
    for name in ("pencil-3", "braid-3", "discriminantal-2-2"):
        A = get(name).arrangement
        flats = [f for f in A.flats_up_to_rank(2) if f.indices]
        for trial in range(5):
            lam = sample_generic_weights(A, random.Random(trial))
            assert all(v != 0 for v in lam)
            assert sum(lam) != 0
            for flat in flats:
                assert sum(lam[i] for i in flat.indices) != 0
            assert all(
                abs(v.numerator) <= 999 and v.denominator <= 999 for v in lam
            )


def test_generic_weights_are_seed_deterministic():
    A = get("x3").arrangement
    draws = [sample_generic_weights(A, random.Random(99)) for _ in range(2)]
    assert draws[0] == draws[1]
    other = sample_generic_weights(A, random.Random(100))
    assert other != draws[0]


def test_aomoto_data_routes():
    pencil = get("pencil-3").arrangement
    betti, least = aomoto_data(pencil, (1, 1, -2))
    assert betti == (0, 1, 1) and least == 1
    betti, least = aomoto_data(pencil, (1, 2, 3))
    assert least is None and not any(betti)
    # affine entries go through the brute-force complex
    disc = get("discriminantal-2-2")
    betti, least = aomoto_data(disc.arrangement, disc.resonant_weights[0])
    assert least is not None and betti[least] > 0


def test_check_weights_vacuous_at_generic():
    A = get("pencil-3").arrangement
    r = check_weights(A, (1, 1, 1), guaranteed=True)
    assert r.verdict == "vacuous"
    assert r.least_degree is None
    assert r.critical_empty is True
    assert "critical points without resonance" not in r.notes


def test_check_weights_braid_scripted():
    # the specialized pairing ideal keeps codimension 2 even though the
    # honest critical set off the hyperplanes is empty here
    entry = get("braid-3")
    r = check_weights(
        entry.arrangement, entry.resonant_weights[0], guaranteed=True
    )
    assert r.verdict == "theorem-satisfied"
    assert r.least_degree == 2
    assert r.critical_codim == 2
    assert r.saturated_empty is True
    assert r.converse_failure is False
    assert r.codim_equals_rank is None


def test_check_weights_converse_failure():
    entry = get("tame-nonfree-2")
    search = minimal_derivation_generators(
        entry.arrangement, bound=entry.derivation_bound
    )
    r = check_weights(
        entry.arrangement,
        entry.resonant_weights[0],
        guaranteed=True,
        search=search,
    )
    assert r.converse_failure is True
    assert r.saturated_codim == 1
    assert r.least_degree is not None and r.saturated_codim < r.least_degree
    assert any("converse" in note for note in r.notes)


def test_check_weights_recorded_only():
    A = get("pencil-3").arrangement
    r = check_weights(A, (1, 1, -2), guaranteed=True, recorded_only=True)
    assert r.verdict == "recorded"
    assert r.least_degree == 1  # data still computed


def test_check_weights_budget_exhaustion():
    entry = get("monomial-deletion-2")
    r = check_weights(
        entry.arrangement, entry.resonant_weights[0], guaranteed=True, budget=3
    )
    assert r.verdict == "incomplete"
    assert r.betti is None
    assert any("budget" in note for note in r.notes)


def test_affine_chart_agrees_with_cone():
    entry = get("discriminantal-2-2")
    r = check_weights(entry.arrangement, entry.resonant_weights[0], guaranteed=True)
    assert "cone and affine chart codimensions agree" in r.notes


def test_sliced_universal_dimension_is_zero():
    A = get("pencil-3").arrangement
    search = minimal_derivation_generators(A)
    gens = [
        g for g in logarithmic_ideal_generators(A, None, search) if not g.is_zero()
    ]
    dim = sliced_universal_dimension(gens, A.rank, random.Random(4))
    assert dim == 0


def test_universal_codim_report_fields():
    A = get("pencil-3").arrangement
    search = minimal_derivation_generators(A)
    report = universal_codim_report(A, search, random.Random(11))
    assert report["expected_codim"] == 2
    assert report["slice_ok"] is True
    assert report["slice_dimension"] == 0
    assert report["fibre_expected"] == 1
    assert report["fibre_ok"] is True
    assert len(report["fibre_dimensions"]) == 3


def test_fibre_spot_check_affine():
    A = get("discriminantal-2-2").arrangement
    report = fibre_spot_check(A, random.Random(2))
    assert report["fibre_expected"] == 3
    assert report["fibre_dimensions"] == [3, 3, 3]
    assert report["fibre_ok"] is True


def test_critical_count_check_matches_euler_number():
    A = get("discriminantal-2-2").arrangement
    report = critical_count_check(A, random.Random(8))
    assert report["expected"] == 2
    assert report["count"] == 2
    assert report["ok"] is True


def test_reduced_scope_evidence_structure():
    entry = get("nontame-9")
    evidence = reduced_scope_evidence(entry)
    assert evidence["derivation_degrees"] == [1, 3, 3, 3, 3]
    assert set(evidence["log_form_dimensions"]) == {"1", "2", "3"}
    flags = evidence["quotient_identity_at_scripted_weights"]
    assert all(v in {"holds", "fails", "incomplete"} for v in flags.values())


def test_verify_entry_pencil():
    report = verify_entry(get("pencil-3"), generic=2, seed=7)
    assert report.name == "pencil-3"
    assert report.free_certified is True
    assert report.exponents == (0, 1)
    assert report.guaranteed is True
    assert report.repro_bundle is None
    # scripted weights come first, then the generic draws
    assert report.weight_reports[0].source == "scripted"
    assert report.weight_reports[0].verdict == "theorem-satisfied"
    assert all(
        r.verdict in {"theorem-satisfied", "vacuous"} for r in report.weight_reports
    )
    payload = report.as_dict()
    assert payload["schema_version"] == 1
    assert payload["seed"] == 7
    assert payload["universal"]["slice_ok"] is True
    assert len(payload["weights"]) == 3


def test_verify_entry_attaches_repro_bundle_on_violation(monkeypatch):
    def always_violated(arrangement, weights, guaranteed, **kwargs):
        lam = arrangement.weights(weights)
        return WeightReport(
            weights=lam,
            source=kwargs.get("source", "user"),
            betti=None,
            least_degree=1,
            critical_empty=True,
            critical_codim=None,
            saturated_empty=True,
            saturated_codim=None,
            converse_failure=False,
            codim_equals_rank=None,
            verdict="violated",
        )

    monkeypatch.setattr("rescrit.verify.check_weights", always_violated)
    report = verify_entry(get("boolean-2"), generic=1, seed=5)
    assert report.verdicts == ("violated",)
    bundle = report.repro_bundle
    assert bundle is not None
    assert bundle["seed"] == 5
    assert len(bundle["weights"]) == 1
    assert bundle["arrangement"]["forms"]  # enough to rebuild the input


def test_sweep_subset_is_clean():
    result = sweep(names=["pencil-3", "boolean-2"], generic=2, seed=3)
    assert result["worst"] == "clean"
    assert [e["name"] for e in result["entries"]] == ["pencil-3", "boolean-2"]
    assert result["seed"] == 3
    assert result["schema_version"] == 1


def test_harness_seed_env(monkeypatch):
    monkeypatch.delenv("WORKBENCH_SEED", raising=False)
    assert harness_seed() == DEFAULT_SEED
    monkeypatch.setenv("WORKBENCH_SEED", "123")
    assert harness_seed() == 123
    monkeypatch.setenv("WORKBENCH_SEED", "not-a-number")
    with pytest.raises(ValueError):
        harness_seed()
