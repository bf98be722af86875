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

"""
Exhaustive enumeration of P^3(F_q) in a fixed point order.

Points are numbered block by block: (1:a:b:c) first at a*q^2 + b*q + c, then
(0:1:b:c), (0:0:1:c) and finally (0:0:0:1).  Work is split into chunks of
consecutive indices; chunks may run on a thread pool and are merged in index
order, so results never depend on the thread count.
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from geometry.errors import BudgetExceeded

logger = logging.getLogger(__name__)

DEFAULT_CHUNK = 1 << 18
DEFAULT_BUDGET = 1 << 30

INDETERMINATE = -1


def point_total(q):
    return q**3 + q**2 + q + 1


def check_budget(q, budget=DEFAULT_BUDGET):
    total = point_total(q)
    if total > budget:
        raise BudgetExceeded(
            f"P^3(F_{q}) has {total} points, budget is {budget}",
            points=total,
            budget=budget,
        )
    return total


def points_block(q, start, stop):
    """Integer coordinates (shape (m, 4)) of the points with index in [start, stop)."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((idx.size, 4), dtype=np.int64)
    q2, q3 = q * q, q * q * q

    first = idx < q3
    i = idx[first]
    out[first, 0] = 1
    out[first, 1] = i // q2
    out[first, 2] = (i // q) % q
    out[first, 3] = i % q

    second = (idx >= q3) & (idx < q3 + q2)
    i = idx[second] - q3
    out[second, 1] = 1
    out[second, 2] = i // q
    out[second, 3] = i % q

    third = (idx >= q3 + q2) & (idx < q3 + q2 + q)
    i = idx[third] - q3 - q2
    out[third, 2] = 1
    out[third, 3] = i

    fourth = idx == q3 + q2 + q
    out[fourth, 3] = 1
    return out


def normalize_rows(field, values):
    """
    Canonical point index of each row of a FieldArray of shape (m, 4);
    INDETERMINATE for zero rows.
    """
    GF = field.GF
    q = field.q
    raw = values.view(np.ndarray).astype(np.int64)
    nonzero = raw != 0
    has_any = nonzero.any(axis=1)
    lead = np.argmax(nonzero, axis=1)

    pivots = raw[np.arange(raw.shape[0]), lead]
    pivots[~has_any] = 1
    scaled = (values / GF(pivots)[:, None]).view(np.ndarray).astype(np.int64)

    q2, q3 = q * q, q * q * q
    index = np.full(raw.shape[0], INDETERMINATE, dtype=np.int64)
    index = np.where(lead == 0, scaled[:, 1] * q2 + scaled[:, 2] * q + scaled[:, 3], index)
    index = np.where(lead == 1, q3 + scaled[:, 2] * q + scaled[:, 3], index)
    index = np.where(lead == 2, q3 + q2 + scaled[:, 3], index)
    index = np.where(lead == 3, q3 + q2 + q, index)
    index[~has_any] = INDETERMINATE
    return index


def point_index(q, coords):
    """Index of one canonical point given by four codes."""
    a, b, c, d = coords
    if a:
        return b * q * q + c * q + d
    if b:
        return q**3 + c * q + d
    if c:
        return q**3 + q**2 + d
    return q**3 + q**2 + q


def chunk_ranges(total, chunk):
    return [(start, min(start + chunk, total)) for start in range(0, total, chunk)]


def parallel_map(fn, items, threads=1):
    """fn over items, results in input order."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def enumerate_p3(field, fn, threads=1, chunk=DEFAULT_CHUNK, budget=DEFAULT_BUDGET):
    """
    Apply fn(coords_array, start) to every chunk of P^3(F_q) and return the
    per-chunk results in index order.  coords_array is a galois FieldArray.
    """
    total = check_budget(field.q, budget)
    ranges = chunk_ranges(total, chunk)
    logger.debug("Enumerating %d points of P^3 over %s in %d chunks", total, field.spec, len(ranges))

    def run(bounds):
        start, stop = bounds
        return fn(field.array(points_block(field.q, start, stop)), start)

    return parallel_map(run, ranges, threads)
