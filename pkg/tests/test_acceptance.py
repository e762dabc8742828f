"""Acceptance gate: the full criteria suite, one verdict line each.

The suite runs once per session; each test then checks its own line.
Budgets are wall-clock and generous, but a slow machine can still trip
them, in which case the verdict line says so.
"""

import re

import pytest

from unifkit.acceptance import CRITERIA, run_all


@pytest.fixture(scope="module")
def verdicts():
    lines = []
    all_ok = run_all(out=lines.append)
    table = {}
    for line in lines:
        m = re.match(r"criterion\s+(\d+) (PASS|FAIL) ", line)
        assert m, line
        table[int(m.group(1))] = (m.group(2), line)
    assert set(table) == {num for num, _, _, _ in CRITERIA}
    assert all_ok == all(v == "PASS" for v, _ in table.values())
    return table


def _check(verdicts, num):
    verdict, line = verdicts[num]
    print(line)
    assert verdict == "PASS", line


def test_criterion_01_entourage_cores(verdicts):
    _check(verdicts, 1)


def test_criterion_02_topology_compat(verdicts):
    _check(verdicts, 2)


def test_criterion_03_trace_opens(verdicts):
    _check(verdicts, 3)


def test_criterion_04_site_axioms(verdicts):
    _check(verdicts, 4)


def test_criterion_05_nerve_vs_direct(verdicts):
    _check(verdicts, 5)


def test_criterion_06_disk_towers(verdicts):
    _check(verdicts, 6)


def test_criterion_07_tangential_cohomology(verdicts):
    _check(verdicts, 7)


def test_criterion_08_residue_towers(verdicts):
    _check(verdicts, 8)


def test_criterion_09_index_formula(verdicts):
    _check(verdicts, 9)


def test_criterion_10_irregularity_values(verdicts):
    _check(verdicts, 10)
