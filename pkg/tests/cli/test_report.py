import math

import pytest

from quantumness.cli.report import (
    RunReport,
    csv_text,
    format_number,
    report_digest,
    write_atomic,
)
from quantumness.errors import InvariantBreachError


@pytest.fixture()
def report():
    return RunReport(
        command="accfid",
        config={"restarts": 2},
        results={"accessible_fidelity": 0.9},
        input_digest="abc",
        wall_time_seconds=1.5,
    )


def test_digest_ignores_wall_time(report):
    """
    test that reports differing only in wall time share a digest.
    """
    ## Arrange ##
    slower = RunReport(**{**report.__dict__, "wall_time_seconds": 99.0})

    ## Act / Assert ##
    assert report.digest() == slower.digest()
    assert report.to_dict()["digest"] == report_digest(slower.to_dict())


def test_digest_tracks_results(report):
    """
    test that a different result changes the digest.
    """
    other = RunReport(**{**report.__dict__, "results": {"accessible_fidelity": 0.8}})

    assert report.digest() != other.digest()


def test_non_finite_report_raises(report):
    """
    test that NaN anywhere in a report is an invariant breach.
    """
    report.results["nested"] = {"values": [1.0, math.nan]}

    with pytest.raises(InvariantBreachError, match="nested"):
        report.to_json()


def test_format_number():
    """
    test that floats carry 12 significant digits and integers stay integral.
    """
    assert format_number(2.0 / 3.0) == "0.666666666667"
    assert format_number(12) == "12"
    assert format_number(1.0) == "1"


def test_csv_text():
    """
    test the CSV layout and the column count check.
    """
    text = csv_text(["n", "F_acc"], [[1, 1.0], [2, 0.75]])

    assert text == "n,F_acc\n1,1\n2,0.75\n"
    with pytest.raises(InvariantBreachError):
        csv_text(["n", "F_acc"], [[1]])
    with pytest.raises(InvariantBreachError):
        csv_text(["n"], [[math.inf]])


def test_write_atomic(tmp_path):
    """
    test that the file is replaced whole and no temporary file is left.
    """
    ## Arrange ##
    path = tmp_path / "out" / "report.json"

    ## Act ##
    write_atomic(path, "first")
    write_atomic(path, "second")

    ## Assert ##
    assert path.read_text() == "second"
    assert [p.name for p in path.parent.iterdir()] == ["report.json"]
