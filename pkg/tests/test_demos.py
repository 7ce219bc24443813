"""Each demo script runs cleanly and prints its headline result."""

import pathlib
import subprocess
import sys

import pytest

DEMO_DIR = pathlib.Path(__file__).resolve().parent.parent / "demos"

EXPECTED = {
    "three_pipelines.py": "exact three way agreement: True",
    "linearizable_shear.py": "linearizable through w^5: True",
    "tree_combinatorics.py": "s=10  count=4862   sum=1/10",
    "operator_identities.py": "A f + D(B f) = f: True",
    "kernel_correction.py": "exp({F, .}) H == corrected output: True",
    "symbolic_structure.py": "matches the numeric pipeline: True",
}


def test_every_demo_is_covered():
    names = sorted(path.name for path in DEMO_DIR.glob("*.py"))
    assert names == sorted(EXPECTED)


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_demo_runs(name):
    proc = subprocess.run(
        [sys.executable, str(DEMO_DIR / name)],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    assert EXPECTED[name] in proc.stdout
