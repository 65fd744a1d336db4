"""The verification battery, one test per criterion.

These are the package's headline guarantees; each test prints the same
pass/fail line the ``graphon reproduce`` subcommand emits.
"""

import pytest

from stepgraphon.acceptance import CRITERIA


@pytest.mark.parametrize(
    "number", sorted(CRITERIA), ids=[f"{n:02d}_{CRITERIA[n][0].replace(' ', '_')}"
                                     for n in sorted(CRITERIA)]
)
def test_criterion(number, capsys):
    name, fn = CRITERIA[number]
    ok, detail = fn()
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {name} -- {detail}"
    with capsys.disabled():
        print(line)
    assert ok, line
