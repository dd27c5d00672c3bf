"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines and measured margins. The criteria implementations (and their pinned
tolerances) live in hologossip.acceptance and also back ``hologossip verify``.
"""

import pytest

from hologossip.acceptance import CRITERIA


@pytest.mark.parametrize(
    "crit",
    CRITERIA,
    ids=[f"criterion_{c.number:02d}_{c.name.replace(' ', '_')}" for c in CRITERIA],
)
def test_acceptance_criterion(crit):
    result = crit.fn()
    status = "PASS" if result.passed else "FAIL"
    print(f"criterion {crit.number} ({crit.name}): {status} [{result.detail}]")
    assert result.passed, f"criterion {crit.number} ({crit.name}): {result.detail}"
