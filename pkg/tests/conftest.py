"""Shared fixtures: warm the jitted kernels so timings exclude compilation."""

import numpy as np
import pytest

from treeorder import _kernels
from treeorder.lattice import Lattice, region_of
from treeorder.rng import Rng
from treeorder.spanning import region_csr


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    lat = Lattice(2, 2)
    region = region_of(lat, lat.vertices())
    indptr, indices, _ = region_csr(region)
    rng = Rng(0)
    parent = _kernels.wilson_parent(indptr, indices, 0, rng.state)
    _kernels.tree_traverse(parent, 0, False)
    _kernels.tree_traverse(parent, 0, True)
    in_boundary = np.zeros(4, dtype=np.bool_)
    in_boundary[3] = True
    _kernels.completion_trials(indptr, indices, 0, in_boundary, False, 3, rng.state)
    _kernels.grow_mask(4, 4, 3, 10, rng.state)
