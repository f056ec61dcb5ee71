"""Hook for the browser wallet's own suite (build + vitest, including its
live-service integration). Skips when the frontend has not been set up."""

import shutil
import subprocess
from pathlib import Path

import pytest

FRONTEND = Path(__file__).parent.parent / "frontend"


@pytest.mark.skipif(
    not (FRONTEND / "node_modules").exists() or shutil.which("npx") is None,
    reason="frontend not installed (run: cd frontend && npm install)",
)
def test_frontend_builds_and_passes_its_suite():
    build = subprocess.run(
        ["npx", "tsc", "-p", "tsconfig.json"], cwd=FRONTEND, capture_output=True, text=True,
        timeout=300,
    )
    assert build.returncode == 0, build.stdout + build.stderr
    tests = subprocess.run(
        ["npx", "vitest", "run"], cwd=FRONTEND, capture_output=True, text=True, timeout=600,
    )
    assert tests.returncode == 0, tests.stdout + tests.stderr
