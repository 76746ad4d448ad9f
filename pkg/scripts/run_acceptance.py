"""Run only the acceptance suite and show its PASS/FAIL lines."""
import sys
from pathlib import Path

import pytest

root = Path(__file__).resolve().parent.parent
sys.exit(pytest.main([str(root / "tests" / "test_acceptance.py"), "-v", "-p", "no:cacheprovider"]))
