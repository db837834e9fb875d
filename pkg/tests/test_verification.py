import pytest

from gpd.services import verification
from gpd.services.verification import build_context, run_suites, suite_names


def test_suite_registry():
    names = suite_names()
    assert names[0] == "worked-example-tables"
    assert "morphism-transport" in names
    assert len(names) == len(set(names))


def test_every_suite_passes_on_a_small_instance_set(small_settings, backend):
    report = run_suites(3, backend, settings=small_settings)
    failures = [result for result in report.results if result.status != "pass"]
    assert report.ok, failures
    assert [result.name for result in report.results] == suite_names()
    assert report.seed == 3
    assert report.backend == "rational"


@pytest.mark.parametrize("name", ["worked-example-tables", "merge-treegram-spans", "degree0-pair"])
def test_worked_examples(small_settings, backend, name):
    report = run_suites(0, backend, [name], settings=small_settings)
    (result,) = report.results
    assert result.status == "pass"
    assert result.instances >= 1


def test_instance_counts_follow_settings(small_settings, backend):
    report = run_suites(1, backend, ["treegram-round-trip", "morphism-transport"], settings=small_settings)
    counts = {result.name: result.instances for result in report.results}
    assert counts == {"treegram-round-trip": 3, "morphism-transport": 3}


def test_seed_replays_the_instance_set(small_settings, backend):
    first = build_context(11, backend, small_settings)
    second = build_context(11, backend, small_settings)
    assert [f.entry for f in first.filtrations] == [f.entry for f in second.filtrations]
    assert len(first.filtrations) == small_settings.verify_filtrations
    assert all(len(f.vertex_order) <= small_settings.max_vertices for f in first.filtrations)
    assert all(f.n <= small_settings.max_steps for f in first.filtrations)


def test_unknown_suite(small_settings, backend):
    with pytest.raises(ValueError, match="Unknown property suite"):
        run_suites(0, backend, ["no-such-property"], settings=small_settings)


def test_exact_suites_are_skipped_on_floats(small_settings, float_backend):
    report = run_suites(
        0, float_backend, ["worked-example-tables", "galois-demo-integers"], settings=small_settings
    )
    statuses = {result.name: result.status for result in report.results}
    assert statuses == {"worked-example-tables": "skipped-float", "galois-demo-integers": "pass"}
    assert report.ok


def test_unexpected_errors_are_recorded_as_failures(monkeypatch, small_settings, backend):
    def broken(ctx):
        raise KeyError("missing value")

    monkeypatch.setitem(verification._SUITES, "raises-key-error", (broken, False))
    report = run_suites(0, backend, ["raises-key-error", "galois-demo-integers"], settings=small_settings)
    first, second = report.results
    assert first.status == "fail"
    assert first.detail.startswith("KeyError")
    assert second.status == "pass"
    assert not report.ok


@pytest.mark.parametrize(
    "name",
    [
        "subspace-laws",
        "rgct-random",
        "bar-cost",
        "galois-composition",
        "chain-monotonicity",
        "monoidal-rgct-random",
        "diagram-composition",
    ],
)
def test_random_property_suites(small_settings, backend, name):
    report = run_suites(5, backend, [name], settings=small_settings)
    (result,) = report.results
    assert result.status == "pass", result.detail
    assert result.instances > 0


def test_subspace_laws_need_exact_arithmetic(small_settings, float_backend):
    report = run_suites(5, float_backend, ["subspace-laws", "bar-cost"], settings=small_settings)
    statuses = {result.name: result.status for result in report.results}
    assert statuses == {"subspace-laws": "skipped-float", "bar-cost": "pass"}
