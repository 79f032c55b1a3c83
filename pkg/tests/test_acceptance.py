"""The acceptance battery: every criterion at its stated sample counts.

Each test prints one pass/fail line; `pytest tests/test_acceptance.py -v -s`
shows the live tally.  The same battery runs via `operadforge suite`.
"""

import pytest

from operadforge import acceptance

SAMPLES = 32
SEED = 0
FUEL = 10_000


def _run(criterion, number):
    result = criterion(SAMPLES, SEED, FUEL)
    print(f"[{number:2d}] {'PASS' if result.ok else 'FAIL'} {result.name}: {result.detail}")
    assert result.ok, f"{result.name}: {result.detail}"


def test_criterion_01_braid_relations():
    _run(acceptance.criterion_1, 1)


def test_criterion_02_cabling():
    _run(acceptance.criterion_2, 2)


def test_criterion_03_planar_suite():
    _run(acceptance.criterion_3, 3)


def test_criterion_04_linear_suite():
    _run(acceptance.criterion_4, 4)


def test_criterion_05_braided_suite():
    _run(acceptance.criterion_5, 5)


def test_criterion_06_cartesian_suite():
    _run(acceptance.criterion_6, 6)


def test_criterion_07_arity_table():
    _run(acceptance.criterion_7, 7)


def test_criterion_08_arity_equivalence():
    _run(acceptance.criterion_8, 8)


def test_criterion_09_operad_laws():
    _run(acceptance.criterion_9, 9)


def test_criterion_10_non_faithfulness():
    _run(acceptance.criterion_10, 10)


def test_criterion_11_equivariance():
    _run(acceptance.criterion_11, 11)


def test_criterion_12_trace_syntax():
    _run(acceptance.criterion_12, 12)
