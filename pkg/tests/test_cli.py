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

import json
import re
import warnings

from cli import EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION, execute, log, replay_corpus, run

KUMMER_ARGV = ["kummer-eq", "--field", "2^4", "--curve", "1,1,1"]


def test_kummer_eq():
    code, report = execute(KUMMER_ARGV)
    assert code == EXIT_OK
    assert report.status == "ok"
    assert report.field == "2^4/0x13"
    assert report.outputs["lambda_sq"] == [1, 1, 1]


def test_reports_are_reproducible():
    _, first = execute(KUMMER_ARGV)
    _, second = execute(KUMMER_ARGV)
    assert first.to_json() == second.to_json()
    assert "wall_time" not in json.loads(first.to_json())


def test_unknown_flag_is_usage_error():
    code, report = execute(["kummer-eq", "--bogus"])
    assert code == EXIT_USAGE
    assert report.status == "error"
    assert report.outputs["error"] == "usage_error"


def test_bad_field_is_input_error():
    code, report = execute(["kummer-eq", "--field", "5^2", "--curve", "1,1,1"])
    assert code == EXIT_USAGE
    assert report.outputs["error"] == "wrong_characteristic"


def test_wrong_lambda_sq_fails_verification():
    code, report = execute(["verify-kummer", "--field", "2^4", "--curve", "1,1,1", "--lambda-sq", "1,1,2"])
    assert code == EXIT_VERIFICATION
    assert report.status == "failed"


def test_versch_eq_hw1():
    code, report = execute(["versch-eq", "--case", "hw1", "--field", "2^4"])
    assert code == EXIT_OK
    assert report.outputs["degree"] == 2


def test_specialize_auto_nu():
    code, report = execute(["specialize", "--lambda", "2"])
    assert code == EXIT_OK
    assert report.outputs["nu"] == "4"


def test_help():
    code, _ = execute(["--help"])
    assert code == EXIT_OK


def test_run_prints_canonical_json(capsys):
    assert run(KUMMER_ARGV) == EXIT_OK
    out = capsys.readouterr().out
    assert out.endswith("\n")
    assert json.loads(out)["command"] == "kummer-eq"


def test_run_text_output(capsys):
    assert run(KUMMER_ARGV + ["--text"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("kummer-eq [ok]")
    assert "lambda_sq: [1,1,1]" in out


def test_run_reports_errors_on_stdout(capsys):
    assert run(["kummer-eq", "--field", "5^2", "--curve", "1,1,1"]) == EXIT_USAGE
    assert json.loads(capsys.readouterr().out)["status"] == "error"


def test_corpus_record_and_replay(tmp_path):
    code, report = execute(["corpus", "record", "kummer", "--dir", str(tmp_path)] + KUMMER_ARGV)
    assert code == EXIT_OK
    entry = json.loads((tmp_path / "kummer.json").read_text())
    assert entry["argv"] == KUMMER_ARGV
    assert entry["exit"] == 0
    assert entry["expected"]["outputs"]["lambda_sq"] == [1, 1, 1]

    result = replay_corpus(str(tmp_path))
    assert result["entries"] == 1
    assert result["ok"]


def test_corpus_replay_reports_mismatches(tmp_path):
    entry = {"argv": KUMMER_ARGV, "exit": 0, "expected": {"outputs": {"lambda_sq": [1, 1, 0]}}}
    (tmp_path / "broken.json").write_text(json.dumps(entry))
    code, report = execute(["corpus", "replay", "--dir", str(tmp_path)])
    assert code == EXIT_VERIFICATION
    assert report.outputs["results"][0]["mismatches"] == ["/outputs/lambda_sq"]


def test_shipped_corpus_replays():
    code, report = execute(["corpus", "replay"])
    assert code == EXIT_OK, report.outputs
    assert report.outputs["entries"] >= 5


def test_selftest_subset():
    code, report = execute(["selftest", "--scale", "quick", "--only", "3,4", "--no-corpus"])
    assert code == EXIT_OK, report.outputs
    assert [c["name"] for c in report.outputs["checks"]] == ["elliptic_family", "valuation_balancing"]


def test_selftest_rejects_unknown_check():
    code, report = execute(["selftest", "--only", "99", "--no-corpus"])
    assert code == EXIT_USAGE


def test_seed_corpus_replays(tmp_path, capsys):
    from seed_corpus import CORPUS_ENTRIES, seed_corpus

    assert seed_corpus(str(tmp_path)) == len(CORPUS_ENTRIES)
    assert "Seeded" in capsys.readouterr().out
    result = replay_corpus(str(tmp_path))
    assert result["entries"] == len(CORPUS_ENTRIES)
    assert result["ok"], result


def test_log_line_is_timestamped(capsys):
    with warnings.catch_warnings():
        warnings.simplefilter("error", DeprecationWarning)
        log("enumerating")
    err = capsys.readouterr().err
    assert re.fullmatch(r"\[\d{4}-\d\d-\d\d \d\d:\d\d:\d\d\] enumerating\n", err)
