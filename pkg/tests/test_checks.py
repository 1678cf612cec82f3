"""Every named invariant suite runs clean; these are the property suites
behind the `check` verb."""

import pytest

from strathom.checks import SUITES, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes(name):
    report = run_suite(name)
    assert report["failed"] == 0, report["failures"]
    assert report["passed"] > 0


def test_registry_names_are_stable():
    assert set(SUITES) == {"colimits", "segal", "delta", "paracyclic",
                           "spans", "factorization", "corr", "facthom",
                           "mixed", "trace"}


def test_unknown_suite_raises():
    with pytest.raises(KeyError):
        run_suite("bogus")
