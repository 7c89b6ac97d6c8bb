import math
import os
import pathlib

import numpy as np
import pytest

import fockcarleson as fc

DATA = pathlib.Path(os.environ.get("FOCK_DATA_DIR", pathlib.Path(__file__).resolve().parents[2] / "data"))


def test_kernel_has_unit_norm():
    k = fc.EntireFunction.normalized_kernel(2 + 1j)
    r = fc.fock_norm(k, 2.0)
    assert r.verdict == fc.Verdict.holds
    assert r.value == pytest.approx(1.0, abs=1e-8)


def test_berezin_of_lebesgue_is_constant():
    w = fc.FockWeight(1.0)
    for t in (1.0, 2.0, 3.0):
        assert fc.berezin_measure(fc.Measure.lebesgue(), t, 1.5 - 2j, w) == pytest.approx(2.0 / t)


def test_ball_measure_of_atoms():
    mu = fc.Measure.atomic([(0j, 1.0), (1.5 + 0.5j, 2.0), (-1 - 2j, 0.5)])
    assert mu.total_mass() == pytest.approx(3.5)
    assert fc.ball_measure(mu, 0j, 1.0) == pytest.approx(1.0)
    assert fc.ball_measure(mu, 0j, 3.0) == pytest.approx(3.5)


def test_toeplitz_matrix_is_numpy():
    m = fc.toeplitz_matrix(fc.Measure.dirac(0j, math.pi), 3)
    assert isinstance(m.entries, np.ndarray)
    assert m.entries.dtype == np.complex128
    np.testing.assert_allclose(m.entries, np.diag([1, 0, 0]), atol=1e-12)
    assert m.is_hermitian()


def test_python_density_callback():
    # dmu = dA on the unit disk, given as a Python callable.
    disk = fc.Measure.density(lambda w: 1.0 if abs(w) <= 1.0 else 0.0, bound=1.0, support_radius=1.0)
    assert disk.total_mass() == pytest.approx(math.pi, rel=1e-6)
    profile = fc.Measure.radial(lambda r: math.exp(-r * r), bound=1.0)
    assert profile.total_mass() == pytest.approx(math.pi, rel=1e-8)


def test_mu_norm_and_apply():
    f = fc.EntireFunction.monomial(2)
    g = fc.Measure.gaussian(1.0)
    assert fc.mu_norm(f, g, 2.0).value > 0.0
    # T_mu for mu = dA is the identity on F^2.
    z = 0.3 + 0.2j
    assert fc.apply_toeplitz(fc.Measure.lebesgue(), f, z) == pytest.approx(z * z, abs=1e-8)


def test_classification_dicts():
    leb = fc.classify_infty_q(fc.Measure.lebesgue(), 2.0)
    assert leb["headline"] == "not (∞,2)-Carleson"
    assert leb["has_divergence"]
    atoms = fc.classify_infty_q(fc.Measure.dirac(), 2.0)
    assert atoms["classification"] == "holds"
    assert atoms["consistent"]
    names = [t["name"] for t in atoms["tests"]]
    assert "embedding" in names


def test_diagnostics():
    g = fc.Measure.gaussian(1.0)
    b = fc.boundedness_estimate(g, grid_radius=4.0)
    assert b.verdict == fc.Verdict.holds
    c = fc.compactness_probe(g, rings=[2.0, 4.0, 6.0, 8.0], matrix_dimension=6)
    assert c.verdict == fc.Verdict.holds
    assert len(c.singular_values) == 6


def test_measure_files():
    spec = fc.load_measure_spec(str(DATA / "measures" / "three_atoms.json"))
    assert spec.type == "atomic"
    assert fc.parse_measure_spec(spec.to_json()) == spec
    assert spec.to_measure().total_mass() == pytest.approx(3.5)
    with pytest.raises(ValueError, match="beta"):
        fc.parse_measure_spec('{"type": "gaussian", "beta": -1}')


def test_function_parser():
    f = fc.EntireFunction.parse("poly:1,0,2")
    assert f(1j) == pytest.approx(-1.0)
    with pytest.raises(ValueError):
        fc.EntireFunction.parse("sin")
