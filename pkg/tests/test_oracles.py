import numpy as np
import pytest

from pulsegrav import geometry as geo
from pulsegrav import oracles
from pulsegrav.errors import DomainError
from pulsegrav.geometry import Region

from conftest import reduced_circular, si_config

CIRC = reduced_circular()


def test_suite_preconditions():
    with pytest.raises(DomainError):
        oracles.run_oracle_suite(CIRC, n_samples=0)
    with pytest.raises(DomainError):
        oracles.run_oracle_suite(si_config(0.0), n_samples=5)


def test_small_suite_passes_and_is_deterministic():
    a = oracles.run_oracle_suite(CIRC, seed=7, n_samples=30)
    b = oracles.run_oracle_suite(CIRC, seed=7, n_samples=30, threads=1)
    assert [r.name for r in a] == sorted(oracles.ORACLES)
    assert all(r.passed for r in a), [r.to_dict() for r in a if not r.passed]
    assert [r.to_dict() for r in a] == [r.to_dict() for r in b]
    d = a[0].to_dict()
    assert set(d) >= {"name", "samples", "max_rel_err", "pass", "seed", "tolerance"}


def test_suite_subset():
    reps = oracles.run_oracle_suite(CIRC, seed=1, n_samples=5, names=["si_ci_series"])
    assert [r.name for r in reps] == ["si_ci_series"]


@pytest.mark.parametrize("reg", [Region.II, Region.III, Region.IV, Region.V])
def test_sampled_events_land_in_region(reg, rng):
    events = oracles.sample_events(CIRC, rng, 25, regions=(reg,))
    assert len(events) == 25
    X = np.array([e.coords(1.0) for e in events])
    assert np.all(geo.regions(X, CIRC) == reg)
    assert not np.any(geo.near_front(X, CIRC))


def test_series_reference_small_argument():
    s, c = oracles.si_ci_series(1e-8)
    assert s == pytest.approx(1e-8, rel=1e-15)
    assert c == pytest.approx(np.euler_gamma + np.log(1e-8), rel=1e-15)
