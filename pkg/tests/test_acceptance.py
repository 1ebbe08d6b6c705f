"""Acceptance table: one test per criterion, each row printed as PASS/FAIL.

Run ``pytest tests/test_acceptance.py -v -s`` to see the rows inline; they are
also repeated in the terminal summary.
"""
import pytest

from h2ion1d.verify import CRITERIA


def _run(record_checks, k):
    checks = record_checks(list(CRITERIA[k]()))
    failed = [c.line() for c in checks if not c.passed]
    assert not failed, "\n".join(failed)


def test_criterion_1_epsilon1_anchors(record_checks):
    _run(record_checks, 1)


def test_criterion_2_epsilon2_even_anchors(record_checks):
    _run(record_checks, 2)


def test_criterion_3_epsilon2_odd_anchors(record_checks):
    _run(record_checks, 3)


def test_criterion_4_oracle_anchors(record_checks):
    _run(record_checks, 4)


def test_criterion_5_gap_to_oracle(record_checks):
    _run(record_checks, 5)


def test_criterion_6_asymptotics(record_checks):
    _run(record_checks, 6)


def test_criterion_7_order_coincidence(record_checks):
    _run(record_checks, 7)


def test_criterion_8_box(record_checks):
    _run(record_checks, 8)


def test_criterion_9_property_suites(record_checks):
    _run(record_checks, 9)


def test_every_criterion_is_covered():
    assert sorted(CRITERIA) == list(range(1, 10))


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-v", "-s"]))
