"""Instance and experiment files written to a temporary directory."""

from pathlib import Path

import pytest


@pytest.fixture
def instance_file(tmp_path: Path) -> Path:
    path = tmp_path / "two_state.yaml"
    path.write_text("m: 2\nprior: [0.5, 0.5]\nutility_gap: [2.0, -4.0]\n", encoding="utf-8")
    return path


@pytest.fixture
def distribution_file(tmp_path: Path) -> Path:
    path = tmp_path / "dist.yaml"
    path.write_text(
        "support: [0.1, 0.6, 0.9]\nprobabilities: [0.5, 0.3, 0.2]\n", encoding="utf-8"
    )
    return path
