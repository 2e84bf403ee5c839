import json
import math

import pytest

import simplexmeasure as sm

SQRT2 = math.sqrt(2.0)


def test_geometry_roundtrip():
    assert sm.homogeneous_transform([1.0, 1.0, 2.0]) == [0.25, 0.25, 0.5]
    assert sm.chart_embed([0.2, 0.3]) == [0.2, 0.3, 0.5]
    assert sm.chart_coords([0.2, 0.3, 0.5]) == [0.2, 0.3]
    x, t = sm.trivialize_inv([0.4, 0.6, 1.0])
    assert x == pytest.approx([0.2, 0.3], abs=1e-15)
    assert t == pytest.approx(math.log(2.0), abs=1e-15)
    assert sm.trivialize([0.2, 0.3], t) == pytest.approx([0.4, 0.6, 1.0], abs=1e-15)
    assert sm.trivialize_jacobian_det([0.3, 0.3], math.log(2.0)) == pytest.approx(8.0)


def test_errors_are_raised():
    with pytest.raises(sm.SimplexMeasureError):
        sm.homogeneous_transform([1.0, -2.0])
    with pytest.raises(sm.SimplexMeasureError):
        sm.Family('{"family":"nope"}')


def test_special_functions():
    assert sm.radial_reciprocal_normalizer(2.0, 1) == pytest.approx(4.0 / math.pi, rel=1e-10)
    assert sm.log_multivariate_beta([2.0, 2.0]) == pytest.approx(math.log(1.0 / 6.0), abs=1e-13)
    assert sm.dirichlet_chart_density([1.0, 1.0, 1.0], [0.2, 0.3]) == pytest.approx(2.0)
    assert sm.chart_weight(2) == pytest.approx(math.sqrt(3.0))
    assert sm.simplex_volume(3) == pytest.approx(1.0 / 6.0)


def test_family_densities():
    gamma = sm.Family('{"family":"multigamma","alpha":[1,1],"beta":[1,1]}')
    assert gamma.dim() == 1
    assert gamma.density([1.0, 1.0]) == pytest.approx(math.exp(-2.0))
    assert gamma.transformed_density([0.3]) == pytest.approx(1.0 / SQRT2, rel=1e-14)
    assert gamma.transformed_lebesgue_density([0.3]) == pytest.approx(1.0, rel=1e-14)
    assert gamma.fiber_density([0.3]) == pytest.approx(1.0 / SQRT2, rel=1e-8)

    chi = sm.Family('{"family":"multichi","k":[1,1]}')
    assert chi.transformed_density([0.5]) == pytest.approx(2.0 * SQRT2 / math.pi, rel=1e-13)

    assert json.loads(gamma.to_json())["family"] == "multigamma"


def test_atoms():
    dirac = sm.Family('{"family":"dirac","point":[1,1,2]}')
    assert dirac.is_atom()
    assert dirac.atom_location() == [0.25, 0.25, 0.5]
    with pytest.raises(sm.SimplexMeasureError):
        dirac.transformed_density([0.3, 0.3])


def test_sampling_determinism_and_mc_report():
    theta = sm.Family('{"family":"radialreciprocal","s":2,"n":1}')
    a = theta.sample(7, 10)
    b = theta.sample(7, 10)
    assert a == b
    assert len(a) == 10
    assert all(len(p) == 2 and min(p) > 0 for p in a)

    report = json.loads(theta.mc_verify(123, 100000, 25))
    assert set(report) == {
        "sample_count",
        "bin_spec",
        "sup_relative_bin_error",
        "chi_square_statistic",
        "chi_square_dof",
        "per_marginal_ks",
        "verdict",
    }
    assert report["verdict"] == "pass"


def test_ternary_embedding_and_counterexample():
    assert sm.ternary_embed([0.0, 0.0, 1.0]) == pytest.approx((0.5, math.sqrt(3.0) / 2.0))
    report = sm.counterexample_noninjective()
    assert report == {"singular_before": True, "singular_after": False}


def test_checks_run():
    results = sm.run_checks("geometry", 3)
    assert results and all(r["passed"] for r in results)
