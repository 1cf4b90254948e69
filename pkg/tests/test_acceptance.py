"""One test per primary acceptance criterion, each at its stated tolerance.

Every criterion prints a single pass/fail line, and the lines are repeated in
the terminal summary.  Criterion 9 is expected to fail: at a swallowtail point
of the second example the third derivative of the distance-squared function
vanishes as well, so the required |d'''| > 1e-3 cannot hold (see README).
"""

import pytest

from conftest import ACCEPTANCE_LINES
from nullfront.acceptance import CRITERIA


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=lambda n: f"criterion_{n:02d}")
def test_criterion(number):
    result = CRITERIA[number]()
    line = result.line()
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert result.passed, line
