import pytest

from arbozeta.suites import SUITES, run_suite

REPORT_KEYS = {"suite", "instance", "lhs", "rhs", "residual", "tolerance", "pass"}


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes_at_reduced_bound(name):
    entries = run_suite(name, 4, 1e-7)
    assert entries, f"suite {name} produced no entries"
    for entry in entries:
        assert set(entry) == REPORT_KEYS
        assert isinstance(entry["pass"], bool)
    bad = [e for e in entries if not e["pass"]]
    assert not bad, f"{len(bad)} failed; first: {bad[0]['instance']}"


def test_unknown_suite_rejected():
    with pytest.raises(KeyError):
        run_suite("no-such-suite")


def test_all_runs_every_suite():
    entries = run_suite("all", 3, 1e-6)
    assert {e["suite"] for e in entries} == set(SUITES)
