import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))


@pytest.fixture
def report_line(capsys):
    """Print one line straight to the terminal (bypassing capture)."""
    def emit(text):
        with capsys.disabled():
            print(f"\n{text}")
    return emit
