from __future__ import annotations

import pytest
from hypothesis import settings

from monolink.cli import load_catalog_fixture
from monolink.lattice import CohomologyClass, IntersectionForm, square
from monolink.manifold import FourManifoldData, SpincData, SpinuData, dims_asd

settings.register_profile("exact", deadline=None, max_examples=60)
settings.load_profile("exact")


def hyperbolic_gram(n: int) -> list[list[int]]:
    size = 2 * n
    g = [[0] * size for _ in range(size)]
    for b in range(n):
        g[2 * b][2 * b + 1] = 1
        g[2 * b + 1][2 * b] = 1
    return g


@pytest.fixture(scope="session")
def k3():
    return load_catalog_fixture("k3")


@pytest.fixture(scope="session")
def e3():
    return load_catalog_fixture("e3")


@pytest.fixture(scope="session")
def e5():
    return load_catalog_fixture("e5")


@pytest.fixture(scope="session")
def form_h():
    return IntersectionForm([[0, 1], [1, 0]])


def make_level_one_setup(
    name: str,
    c1_coords: tuple[int, ...],
    lam_coords: tuple[int, ...],
    chi: int,
    sigma: int,
    sw: int = 1,
    moment: int | None = None,
    w_shift: tuple[int, ...] | None = None,
):
    """A synthetic manifold on 3H carrying one basic class at level one.

    Returns (X, t_prime, s).  The caller is responsible for choosing data
    with all the divisibility constraints satisfied; construction errors
    surface as exceptions.
    """
    form = IntersectionForm(hyperbolic_gram(3))
    c1 = CohomologyClass(c1_coords)
    lam = CohomologyClass(lam_coords)
    s = SpincData(c1, sw=sw, moment=moment)
    X = FourManifoldData(name, chi=chi, sigma=sigma, form=form, basic_classes=(s,))
    if w_shift is None:
        w = lam
    else:
        w = lam + CohomologyClass(w_shift)
    p1 = square(form, c1 - lam) - 4
    t_prime = SpinuData(c1=lam, p1=p1, w=w)
    return X, t_prime, s


def max_delta(X: FourManifoldData, t_prime: SpinuData) -> int:
    d_a, n_a = dims_asd(X, t_prime)
    return (d_a + 2 * n_a - 2) // 2


def eta_for(X: FourManifoldData, t_prime: SpinuData, delta: int) -> int:
    return max_delta(X, t_prime) - delta


# Synthetic level-one setups spanning d_s in {0, 2, 4}; the lambda block is
# disjoint from the c1 block so the lattice cross term (c1-lam).lam is the
# nonzero value lam^2, exercising the shifted-Jacobi coefficient path.
SYNTHETIC_SETUPS = {
    "ds0": dict(
        name="synthetic-ds0",
        c1_coords=(0, 0, 0, 0, 0, 0),
        lam_coords=(0, 0, 1, -8, 0, 0),
        chi=12,
        sigma=-8,
        w_shift=(2, 0, 0, 0, 0, 0),
    ),
    "ds2": dict(
        name="synthetic-ds2",
        c1_coords=(2, 2, 0, 0, 0, 0),
        lam_coords=(0, 0, 1, -9, 0, 0),
        chi=12,
        sigma=-8,
        moment=5,
        w_shift=(0, 0, 0, 0, 2, 2),
    ),
    "ds4": dict(
        name="synthetic-ds4",
        c1_coords=(2, 4, 0, 0, 0, 0),
        lam_coords=(0, 0, 1, -15, 0, 0),
        chi=12,
        sigma=-8,
        moment=-3,
        w_shift=(2, 2, 0, 0, 0, 0),
    ),
}


@pytest.fixture(scope="session")
def synthetic_setups():
    return {key: make_level_one_setup(**cfg) for key, cfg in SYNTHETIC_SETUPS.items()}
