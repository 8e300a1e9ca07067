from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from twistgrowth.vagroup import BUNDLED, load_group  # noqa: E402

# (group, endo) pairs shipped with the package
ALL_PAIRS = [
    ("z_phi_neg", "neg"), ("z_phi_neg", "double"), ("z_phi_neg", "id"),
    ("zn", "id"), ("zn", "swap"), ("zn", "neg"),
    ("dihedral", "id"), ("dihedral", "flip"),
    ("klein", "id"), ("klein", "inv_a"),
]

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def groups():
    return {name: load_group(name) for name in BUNDLED}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
