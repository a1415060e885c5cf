import pytest

from coneq import SUITES, Signature, run_many, run_suite, suite_names

SIG22 = Signature(2, 2)


def test_registry_is_well_formed():
    names = suite_names()
    assert len(names) == len(set(names)) == len(SUITES)
    for defn in SUITES.values():
        assert defn.trials > 0
        assert defn.tol >= 0.0
        assert defn.description


def test_unknown_name_raises():
    with pytest.raises(KeyError):
        run_suite("no-such-suite")


def test_single_signature_report():
    reports = run_suite("hermitian", SIG22, trials=20, seed=4)
    assert len(reports) == 1
    rep = reports[0]
    assert rep.ok
    assert rep.suite == "hermitian"
    assert rep.signature == "(2,2)"
    assert (rep.passes, rep.failures, rep.trials) == (20, 0, 20)
    assert rep.counterexample is None


def test_default_battery_expansion():
    reports = run_suite("cross-section", trials=5)
    assert [rep.signature for rep in reports] == \
        ["(1,1)", "(1,2)", "(2,2)", "(2,3)", "(3,3)"]


def test_global_suites_ignore_signature():
    reports = run_suite("field-axioms", trials=10)
    assert len(reports) == 1
    assert reports[0].signature == "-"
    assert reports[0].ok


def test_deterministic_across_runs():
    first = run_suite("kappa-roundtrip", SIG22, trials=10, seed=2)[0]
    second = run_suite("kappa-roundtrip", SIG22, trials=10, seed=2)[0]
    assert first.worst_residual == second.worst_residual
    assert first.passes == second.passes


def test_failure_reports_counterexample():
    rep = run_suite("witt-extension", SIG22, trials=5, seed=0, tol=1e-30)[0]
    assert not rep.ok
    assert rep.failures > 0
    assert rep.counterexample is not None
    assert rep.worst_residual > 1e-30


def test_json_shape():
    rep = run_suite("hermitian", SIG22, trials=3)[0]
    data = rep.to_json()
    assert set(data) == {
        "suite", "signature", "seed", "trials", "passes", "failures",
        "worst_residual", "elapsed_seconds", "counterexample",
    }


def test_run_many_covers_requested_names():
    reports = run_many(["hermitian", "field-axioms"], SIG22, trials=5)
    assert {rep.suite for rep in reports} == {"hermitian", "field-axioms"}


def test_every_suite_passes_at_reduced_trials():
    reports = run_many(suite_names(), None, trials=5, seed=0)
    bad = [rep for rep in reports if not rep.ok]
    assert bad == [], [
        (rep.suite, rep.signature, rep.counterexample) for rep in bad
    ]
