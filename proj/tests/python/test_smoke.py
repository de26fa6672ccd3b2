import math

import numpy as np
import pytest

import ffising as ff


def test_dispersion_and_gap():
    assert ff.epsilon_k(math.pi, 1.0, 0.5, 1.0) == pytest.approx(3.0)
    assert ff.sector_gap(64, 1.0, 1.5, 1.0) == pytest.approx(1.0, abs=1e-8)
    assert ff.winding_index(1.0, 0.5, 1.0) == 1
    with pytest.raises(ff.FfisingError, match="undefined-index"):
        ff.winding_index(1.0, 1.0, 1.0)


def test_bdg_basis_is_canonical():
    spec = ff.make_disordered(10, (0.5, 1.0), (0.0, 1.5), 0.8, 3, ff.Boundary.open)
    b = ff.diagonalize(ff.assemble_bdg(spec, ff.Sector.even))
    U, V = b.U, b.V
    assert np.allclose(U.conj().T @ U + V.conj().T @ V, np.eye(10), atol=1e-12)
    assert np.allclose(U.T @ V + V.T @ U, 0, atol=1e-12)
    assert np.all(np.diff(b.eps) >= -1e-14)


def test_spec_round_trip():
    spec = ff.make_uniform(6, 1.0, 0.7, 0.4)
    back = ff.ChainSpec.from_json(spec.to_json())
    assert back.L == 6 and back.h == spec.h and back.bc == ff.Boundary.periodic


def test_observables():
    gs = ff.sector_ground_state(ff.make_uniform(128, 1.0, 1.0, 0.5), ff.Sector.even)
    assert ff.xx_correlator(gs.basis, 0, 64) == pytest.approx(0.75 ** 0.25, rel=2e-2)
    cat = ff.sector_ground_state(ff.make_uniform(8, 1.0, 1.0, 0.0), ff.Sector.even)
    assert ff.entanglement_entropy(cat.basis, 0, 4) == pytest.approx(math.log(2), abs=1e-8)


def test_overlaps_and_pfaffian():
    a = np.array([[0, 2 + 1j], [-(2 + 1j), 0]])
    assert ff.pfaffian(a) == pytest.approx(2 + 1j)
    b0 = ff.sector_ground_state(ff.make_uniform(8, 1.0, 1.0, 0.5), ff.Sector.even).basis
    assert ff.onishi_overlap_sq(b0, b0) == pytest.approx(1.0)
    assert ff.excited_overlap_sq(b0, b0, [0, 1]) == pytest.approx(0.0, abs=1e-12)


def test_dynamics_thermal_floquet():
    tr = ff.anneal(ff.make_uniform(32, 1.0, 1.0, 2.0), 2.0, 0.0, 8.0, samples=3)
    assert len(tr["rho"]) == 3 and tr["max_drift"] < 1e-8
    spec = ff.make_uniform(6, 1.0, 1.0, 0.5)
    assert math.isfinite(ff.thermal_energy_density(spec, 1.0))
    fl = ff.floquet(spec, 0.5, 0.4, 1.3)
    assert fl["residual"] < 1e-8 and len(fl["quasi"]) == 6


def test_impurity_errors():
    with pytest.raises(ff.FfisingError, match="no-bound-state"):
        ff.impurity_bound_states(64, 1.0, 0.5, 0.0)
