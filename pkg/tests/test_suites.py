import pytest

from isparse.suites import SUITES, SuiteResult, Tally, lemma_suite_sparse, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_short_runs_pass(name):
    res = run_suite(name, seed=11, trials=min(15, SUITES[name].default_trials))
    assert res.ok, res.failures


def test_sharding_does_not_change_the_report():
    one = run_suite("limsup-oracle", seed=5, trials=12, workers=1)
    three = run_suite("limsup-oracle", seed=5, trials=12, workers=3)
    assert one.as_dict() == three.as_dict()


def test_merge_is_associative():
    parts = [run_suite("ideal-axioms", seed=2, trials=4) for _ in range(3)]
    a = parts[0].merge(parts[1]).merge(parts[2])
    b = parts[0].merge(parts[1].merge(parts[2]))
    assert a.as_dict() == b.as_dict()


def test_failures_are_reported():
    r = SuiteResult("x", 0, 1, {"c": Tally(0, 1, 0)}, [(0, "c: boom")])
    assert not r.ok and r.as_dict()["failures"] == ["trial 0: c: boom"]


def test_conjunctive_criterion_is_tallied_as_vacuous():
    res = lemma_suite_sparse(seed=1, trials=10)
    t = res.checks["e-conjunctive-criterion"]
    assert t.vacuous == 10 and t.passed == 0 and t.failed == 0


def test_seed_changes_instances():
    a = run_suite("sparse", seed=1, trials=10).as_dict()
    b = run_suite("sparse", seed=2, trials=10).as_dict()
    assert a["checks"] != b["checks"]


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")
