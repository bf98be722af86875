# Versch Forge - Verschiebung Equations Toolkit
# Copyright (C) 2025 Versch Forge Project
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

import numpy as np
import pytest

from geometry.errors import BudgetExceeded
from geometry.gf import GF
from utils.enumeration import (
    INDETERMINATE,
    check_budget,
    chunk_ranges,
    enumerate_p3,
    normalize_rows,
    parallel_map,
    point_index,
    point_total,
    points_block,
)


def test_point_total():
    assert point_total(2) == 15
    assert point_total(3) == 40


def test_points_block_matches_point_index():
    q = 3
    coords = points_block(q, 0, point_total(q))
    assert coords.shape == (40, 4)
    for i, row in enumerate(coords):
        assert point_index(q, [int(c) for c in row]) == i
    assert tuple(coords[0]) == (1, 0, 0, 0)
    assert tuple(coords[-1]) == (0, 0, 0, 1)


def test_normalize_rows():
    field = GF(3, 1)
    values = field.array([[2, 2, 0, 0], [0, 0, 0, 0], [0, 0, 2, 1]])
    assert normalize_rows(field, values).tolist() == [9, INDETERMINATE, 38]


def test_check_budget():
    assert check_budget(2, budget=15) == 15
    with pytest.raises(BudgetExceeded) as info:
        check_budget(16, budget=100)
    assert info.value.details["points"] == point_total(16)


def test_chunk_ranges():
    assert chunk_ranges(10, 4) == [(0, 4), (4, 8), (8, 10)]


def test_parallel_map_keeps_order():
    assert parallel_map(lambda x: x * x, range(20), threads=4) == [x * x for x in range(20)]


def test_enumerate_p3_independent_of_threads(gf16):
    def count_zero_first(coords, start):
        return start, int(np.count_nonzero(coords.view(np.ndarray)[:, 0] == 0))

    single = enumerate_p3(gf16, count_zero_first, threads=1, chunk=700)
    pooled = enumerate_p3(gf16, count_zero_first, threads=4, chunk=700)
    assert single == pooled
    assert sum(n for _, n in single) == point_total(16) - 16**3


def test_enumerate_p3_budget(gf256):
    with pytest.raises(BudgetExceeded):
        enumerate_p3(gf256, lambda coords, start: None, budget=1000)
