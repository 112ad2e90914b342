import numpy as np
import pytest

import qddsim as q
from qddsim.scaling import WindowFailureError

from conftest import PRIMARY_SEED


def test_fit_exact_power_law():
    taus = np.geomspace(1e-3, 1e-1, 10)
    ds = 0.7 * taus**4
    fit = q.fit_exponent(taus, ds)
    assert fit.zeta == pytest.approx(4.0, abs=1e-12)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
    assert fit.stderr < 1e-10


def test_fit_with_subleading_term():
    taus = np.geomspace(5e-3, 5e-2, 12)
    ds = 0.3 * taus**4 * (1 + taus)
    fit = q.fit_exponent(taus, ds)
    assert 3.97 <= fit.zeta <= 4.03


def test_fit_rejects_points_below_floor():
    taus = np.geomspace(1e-3, 1e-2, 8)
    ds = 1e-13 * np.ones_like(taus)
    with pytest.raises(WindowFailureError) as exc:
        q.fit_exponent(taus, ds)
    assert exc.value.d_range is not None


def test_fit_needs_five_points():
    taus = np.array([1e-3, 2e-3, 4e-3, 8e-3])
    with pytest.raises(WindowFailureError):
        q.fit_exponent(taus, 1e-5 * np.ones(4))


def test_fit_drops_contaminated_top_point_once():
    taus = np.geomspace(1e-3, 1e-1, 10)
    ds = 0.7 * taus**3
    ds[-1] *= 3.0  # spoil the largest tau
    fit = q.fit_exponent(taus, ds)
    assert fit.n_points == 9
    assert fit.zeta == pytest.approx(3.0, abs=1e-9)


def test_window_reported_matches_points_used():
    taus = np.geomspace(1e-4, 1.0, 12)
    ds = 1e-3 * taus**2  # some points fall outside the window
    fit = q.fit_exponent(taus, ds)
    assert fit.window[0] >= 1e-4 and fit.window[1] <= 1.0
    assert fit.window[0] < fit.window[1]


def test_adaptive_grid_validation():
    with pytest.raises(ValueError):
        q.AdaptiveGrid(d_lo=1e-14)
    with pytest.raises(ValueError):
        q.AdaptiveGrid(d_lo=1e-3, d_hi=1e-5)
    with pytest.raises(ValueError):
        q.GeometricGrid(1e-2, 1.0, points=4)


def _spec(seed=PRIMARY_SEED, sym=q.SymmetryClass.ANISOTROPIC,
          bath=q.BathKind.PRODUCT, cells=(0, 1)):
    c = q.random_couplings(seed, 3, sym)
    directions = q.default_directions(3) if bath is q.BathKind.PRODUCT else None
    return q.SweepSpec(
        couplings=c,
        bath_kind=bath,
        directions=directions,
        n_x_values=cells,
        n_z_values=cells,
    )


def test_sweep_cell_low_symmetry():
    res = q.sweep_cell(_spec(), 2, 2)
    assert res.zeta == pytest.approx(3.0, abs=0.15)
    assert res.r_squared >= 0.999
    assert len(res.points) >= 5
    assert all(1e-11 <= p.d <= 1e-2 for p in res.points)


def test_sweep_cell_vanishing_at_origin():
    # leading power is at least 1 in every case, so d -> 0 with tau
    for n_x, n_z in [(0, 0), (1, 0), (1, 1)]:
        res = q.sweep_cell(_spec(), n_x, n_z)
        assert res.zeta >= 1 - 0.05
        taus = [p.tau for p in res.points]
        ds = [p.d for p in res.points]
        assert ds[np.argmin(taus)] < ds[np.argmax(taus)]


def test_exponent_table_small_grid():
    table = q.exponent_table(_spec())
    assert not table.failures
    assert table.zeta(0, 0) == pytest.approx(1.0, abs=0.15)
    assert table.zeta(1, 1) == pytest.approx(2.0, abs=0.15)
    assert table.zeta(0, 1) == pytest.approx(1.0, abs=0.15)
    assert table.zeta(1, 0) == pytest.approx(1.0, abs=0.15)


def test_exponent_table_deterministic_across_worker_counts():
    spec1 = _spec()
    spec1.workers = 1
    spec4 = _spec()
    spec4.workers = 4
    t1 = q.exponent_table(spec1)
    t4 = q.exponent_table(spec4)
    assert t1.to_csv() == t4.to_csv()
    for cell in t1.cells:
        assert t1.cells[cell].zeta == t4.cells[cell].zeta
        assert t1.cells[cell].window == t4.cells[cell].window


def test_table_csv_layout():
    table = q.exponent_table(_spec())
    lines = table.to_csv().strip().split("\n")
    assert lines[0] == "nz\\nx,0,1"
    assert len(lines) == 3
    assert lines[1].startswith("0,") and lines[2].startswith("1,")
    # two decimals per design
    cell = lines[1].split(",")[1]
    assert len(cell.split(".")[1]) == 2


def test_cell_json_bundle_fields():
    spec = _spec()
    res = q.sweep_cell(spec, 1, 1)
    doc = res.to_json_dict(spec)
    assert doc["seed"] == PRIMARY_SEED
    assert doc["symmetry_class"] == "anisotropic"
    assert doc["bath_kind"] == "product"
    assert doc["n_x"] == 1 and doc["n_z"] == 1
    assert doc["r_squared"] >= 0.999
    assert len(doc["points"]) == len(res.points)
    assert set(doc["points"][0]) == {"tau", "d", "dx", "dy", "dz"}


def test_geometric_grid_policy():
    spec = _spec()
    spec.tau_grid = q.GeometricGrid(3e-4, 3e-2, points=12)
    res = q.sweep_cell(spec, 1, 1)
    assert res.zeta == pytest.approx(2.0, abs=0.15)


def test_sweep_cell_window_failure_surfaces():
    # all-zero couplings give d identically zero: no usable window
    c = q.random_couplings(1, 2)
    for key in c.j0:
        c.j0[key] = np.zeros((3, 3))
    for key in c.j1:
        c.j1[key] = np.zeros((3, 3))
    spec = q.SweepSpec(
        couplings=c,
        bath_kind=q.BathKind.MAXIMALLY_MIXED,
        tau_grid=q.AdaptiveGrid(max_iterations=40),
    )
    with pytest.raises(WindowFailureError):
        q.sweep_cell(spec, 1, 1)
    table = q.exponent_table(
        q.SweepSpec(
            couplings=c,
            bath_kind=q.BathKind.MAXIMALLY_MIXED,
            n_x_values=(1,),
            n_z_values=(1,),
            tau_grid=q.AdaptiveGrid(max_iterations=40),
        )
    )
    assert (1, 1) in table.failures
    assert "nan" in table.to_csv()
