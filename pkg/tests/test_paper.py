"""
Unit tests for the worked-example suite runner.

Rows are replaced with stubs so these tests cover status handling, order
caps and the golden file loader without running the expensive checks.
"""

import json

import pandas as pd
import pytest

from hilbert_series import paper
from hilbert_series.paper import GoldenFileError, SuiteRow


def _passing(golden):
    return "ok"


def _failing(golden):
    raise AssertionError("coefficient mismatch")


def _crashing(golden):
    raise ZeroDivisionError("boom")


def _needs_section(golden):
    return str(paper._section(golden, "absent"))


class TestLoadGolden:
    """Test reading the golden fixture."""

    def test_bundled_fixture(self):
        """Test that the packaged fixture has every section the suite reads."""
        golden = paper.load_golden()

        for key in ("catalan", "even_branch", "s3_quartic", "super_catalan_even", "molien",
                    "dicks_formanek", "elliptic", "partitions", "fatou", "gk"):
            assert key in golden, f"Missing section {key}"

    def test_unreadable(self, tmp_path):
        """Test that invalid JSON raises GoldenFileError."""
        path = tmp_path / "golden.json"
        path.write_text("[1, 2")

        with pytest.raises(GoldenFileError):
            paper.load_golden(path)

    def test_not_an_object(self, tmp_path):
        """Test that the top level must be a JSON object."""
        path = tmp_path / "golden.json"
        path.write_text(json.dumps([1, 2]))

        with pytest.raises(GoldenFileError, match="JSON object"):
            paper.load_golden(path)

    def test_missing_file(self, tmp_path):
        """Test that a missing file raises GoldenFileError."""
        with pytest.raises(GoldenFileError):
            paper.load_golden(tmp_path / "absent.json")


class TestPaperSuite:
    """Test the suite runner with stub rows."""

    @pytest.fixture
    def stub_suite(self, mocker):
        rows = [
            SuiteRow("small", "passes", 4, _passing),
            SuiteRow("large", "needs a long series", 500, _passing),
            SuiteRow("wrong", "fails", 4, _failing),
            SuiteRow("broken", "raises", 4, _crashing),
            SuiteRow("golden", "missing section", 4, _needs_section),
        ]
        mocker.patch.object(paper, "SUITE", rows)
        return rows

    def test_statuses(self, stub_suite, capsys):
        """Test PASS, SKIPPED, FAIL and ERROR rows."""
        table = paper.paper_suite(order=10)

        statuses = dict(zip(table["id"], table["status"]))
        assert statuses == {
            "small": paper.PASS,
            "large": paper.SKIPPED,
            "wrong": paper.FAIL,
            "broken": paper.ERROR,
            "golden": paper.ERROR,
        }
        assert "Summary" in capsys.readouterr().out

    def test_details(self, stub_suite):
        """Test that failure messages and skip reasons are recorded."""
        table = paper.paper_suite(order=10).set_index("id")

        assert table.loc["wrong", "detail"] == "coefficient mismatch"
        assert table.loc["broken", "detail"] == "ZeroDivisionError: boom"
        assert table.loc["large", "detail"] == "needs order 500"

    def test_no_cap_runs_everything(self, stub_suite):
        """Test that order=None skips nothing."""
        table = paper.paper_suite()

        assert paper.SKIPPED not in set(table["status"])

    def test_columns(self, stub_suite):
        """Test the DataFrame layout."""
        table = paper.paper_suite(order=10)

        assert list(table.columns) == paper.COLUMNS
        assert len(table) == len(stub_suite)


class TestSuitePassed:
    """Test the overall verdict."""

    @pytest.mark.parametrize("statuses, expected", [
        ([paper.PASS, paper.SKIPPED], True),
        ([paper.PASS, paper.FAIL], False),
        ([paper.ERROR], False),
        ([paper.SKIPPED], True),
    ])
    def test_verdict(self, statuses, expected):
        """Test that skipped rows do not fail the run."""
        table = pd.DataFrame({"status": statuses})

        assert paper.suite_passed(table) is expected
