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

import pytest

from utils import selftest
from utils.selftest import CHECK_COUNT, check_degree_eleven, run_checks


class _Count:
    def __init__(self, resolved):
        self.resolved = resolved

    def to_dict(self):
        return {"fiber_solutions": 11 if self.resolved else 4, "resolved": self.resolved}

    def contains(self, source):
        return True


@pytest.fixture
def scripted_fibers(monkeypatch):
    """degree_count resolves only its second call."""
    calls = []

    def fake_count(kummer, target, rng=None, max_extension=12):
        calls.append(target)
        return _Count(len(calls) == 2)

    monkeypatch.setattr(selftest, "image_tropes", lambda kummer, image: [])
    monkeypatch.setattr(selftest, "sample_target", lambda kummer, rng, tropes: ("source", len(calls)))
    monkeypatch.setattr(selftest, "degree_count", fake_count)
    return calls


def _degree_ctx(scale, targets):
    return {
        "kummer": object(),
        "image": object(),
        "scale": scale,
        "settings": {"degree_targets": targets},
    }


def test_degree_eleven_counts_further_targets(scripted_fibers):
    result = check_degree_eleven(_degree_ctx("full", 3), rng=None)
    assert result["resolved"] == 1
    assert result["further_targets"] == 3
    assert len(result["counts"]) == 5
    assert result["ok"]


def test_degree_eleven_needs_a_resolved_fiber(monkeypatch):
    monkeypatch.setattr(selftest, "image_tropes", lambda kummer, image: [])
    monkeypatch.setattr(selftest, "sample_target", lambda kummer, rng, tropes: ("source", "target"))
    monkeypatch.setattr(selftest, "degree_count", lambda *args, **kwargs: _Count(False))
    full = check_degree_eleven(_degree_ctx("full", 2), rng=None)
    assert len(full["counts"]) == 14
    assert not full["ok"]
    quick = check_degree_eleven(_degree_ctx("quick", 1), rng=None)
    assert len(quick["counts"]) == 2
    assert quick["ok"]


def test_determinism_covers_threaded_census():
    report = run_checks(scale="quick", seed=3, threads=1, only=(7, CHECK_COUNT))
    determinism = report["checks"][-1]
    assert determinism["name"] == "determinism"
    assert determinism["checks"] == [7]
    assert determinism["threads"] == [1, 2]
    assert determinism["ok"]


def test_determinism_from_threaded_run():
    report = run_checks(scale="quick", seed=3, threads=3, only=(4, 7, CHECK_COUNT))
    determinism = report["checks"][-1]
    assert determinism["checks"] == [4, 7]
    assert determinism["threads"] == [3, 1]
    assert determinism["ok"]


@pytest.mark.slow
def test_determinism_covers_node_enumeration():
    report = run_checks(scale="quick", seed=0, threads=2, only=(8, 9, CHECK_COUNT))
    assert report["checks"][-1]["checks"] == [8, 9]
    assert report["checks"][-1]["ok"]
