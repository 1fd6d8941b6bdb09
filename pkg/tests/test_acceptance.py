"""Acceptance gate: every stated criterion at its stated tolerance.

Each test runs one criterion from the shared verification suite and prints
a single pass/fail line; run with -s (or rely on the failure report) to see
them.  The same checks back the `imset-kit verify` command.
"""

import pytest

from imsetkit.verify import CRITERIA, run_criterion


@pytest.mark.parametrize(
    "num,name",
    [(num, name) for num, name, _ in CRITERIA],
    ids=[f"{num:02d}-{name}" for num, name, _ in CRITERIA],
)
def test_criterion(num, name):
    result = run_criterion(num)
    status = "PASS" if result["ok"] else "FAIL"
    line = f"criterion {num:02d} {name}: {status} ({result['seconds']}s) {result['detail']}"
    print(line)
    assert result["ok"], line
