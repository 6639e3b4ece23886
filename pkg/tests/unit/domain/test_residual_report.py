import math

import pytest

from domain.reporting import FAIL, INCONCLUSIVE, PASS, ResidualReport


@pytest.mark.unit
class TestJudge:

    def test_all_measures_below_tolerance_pass(self):
        report = ResidualReport.judge(
            "eq14", {"max_q2": 1e-12, "max_q1": 1e-12}, max_q2=1e-15, max_q1=0.0
        )

        assert report.verdict == PASS
        assert report.passed

    def test_measure_at_tolerance_fails(self):
        report = ResidualReport.judge("eq14", {"max_q2": 1e-12}, max_q2=1e-12)

        assert report.verdict == FAIL

    def test_missing_judged_measure_is_inconclusive(self):
        report = ResidualReport.judge("relation5", {"spread": 1e-2}, spread=None)

        assert report.verdict == INCONCLUSIVE
        assert not report.passed

    def test_nan_is_inconclusive(self):
        report = ResidualReport.judge("eq13", {"spread": 1e-9}, spread=math.nan)

        assert report.verdict == INCONCLUSIVE

    def test_extras_can_carry_judged_measures(self):
        report = ResidualReport.judge(
            "semigroup", {"max_deviation": 1e-12}, extras={"max_deviation": 1.0}
        )

        assert report.verdict == FAIL

    def test_q0_is_reported_but_not_judged(self):
        report = ResidualReport.judge("eq13", {}, q0=5.0 + 1j)

        assert report.verdict == PASS
        assert report.q0 == 5.0 + 1j

    def test_unknown_measure_rejected(self):
        with pytest.raises(TypeError):
            ResidualReport.judge("eq14", {}, max_q3=1.0)


@pytest.mark.unit
class TestRecord:

    def test_complex_values_are_split(self):
        report = ResidualReport.judge(
            "eq13",
            {"max_q2": 1.0},
            params={"lambda": 1j},
            extras={"trace": [1 + 2j]},
            seed=7,
            max_q2=0.0,
            q0=0.5 - 0.5j,
        )

        record = report.to_record()

        assert record["identity"] == "eq13"
        assert record["q0"] == {"re": 0.5, "im": -0.5}
        assert record["params"]["lambda"] == {"re": 0.0, "im": 1.0}
        assert record["extras"]["trace"] == [{"re": 1.0, "im": 2.0}]
        assert record["seed"] == 7
