import numpy as np
import pytest

import kmedoids


@pytest.fixture
def blobs():
    rng = np.random.default_rng(3)
    centers = np.array([[0.0, 0.0], [6.0, 0.0], [0.0, 6.0]])
    return np.concatenate([c + 0.2 * rng.standard_normal((40, 2)) for c in centers])


def test_clarans_recovers_blobs(blobs):
    centers, assign, report = kmedoids.clarans(blobs, 3, seed=1)
    assert len(centers) == 3
    assert len(assign) == len(blobs)
    # one medoid per blob
    assert sorted(c // 40 for c in centers) == [0, 1, 2]
    assert report["swaps_accepted"] >= 1
    assert report["energy_trajectory"][-1] <= report["energy_trajectory"][0]
    assert report["distance_calcs"] > 0


def test_clarans_levels_agree(blobs):
    ref = kmedoids.clarans(blobs, 3, level=2, seed=5)
    for level in (-2, -1, 0, 1):
        got = kmedoids.clarans(blobs, 3, level=level, seed=5)
        assert got[0] == ref[0]


def test_medlloyd_and_pam(blobs):
    centers, _, rep = kmedoids.medlloyd(blobs, 3, seed=2)
    assert rep["iterations"] >= 1
    pam_centers, _, pam_rep = kmedoids.pam(blobs, centers)
    e = kmedoids.total_energy(blobs, pam_centers)
    assert e <= kmedoids.total_energy(blobs, centers) + 1e-12
    assert pam_rep["sweeps"] >= 1


def test_kmeans_pp_then_lloyd(blobs):
    seeds = kmedoids.kmeans_pp(blobs, 3, seed=4)
    assert len(set(seeds)) == 3
    centers, assign, mse, iters = kmedoids.lloyd(blobs, 3, seeds)
    assert centers.shape == (3, 2)
    assert mse < 0.5
    assert iters >= 1


def test_total_energy_matches_numpy(blobs):
    centers = [0, 40, 80]
    d = np.linalg.norm(blobs[:, None, :] - blobs[centers][None, :, :], axis=2)
    expected = (d.min(axis=1) ** 2).mean()
    assert kmedoids.total_energy(blobs, centers) == pytest.approx(expected, rel=1e-12)


def test_bad_input_raises():
    with pytest.raises(Exception):
        kmedoids.clarans(np.zeros((4, 2)), 5)
    with pytest.raises(Exception):
        kmedoids.clarans(np.zeros(8), 2)
