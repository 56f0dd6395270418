"""Run the acceptance suite and print one pass/fail line per criterion."""

import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]

result = subprocess.run(
    [sys.executable, "-m", "pytest", "tests/test_acceptance.py", "-s", "-q",
     "--no-header", "-p", "no:cacheprovider"],
    cwd=ROOT, capture_output=True, text=True)
for line in result.stdout.splitlines():
    if line.startswith("[acceptance]") or " passed" in line or " failed" in line:
        print(line.lstrip("."))
sys.exit(result.returncode)
