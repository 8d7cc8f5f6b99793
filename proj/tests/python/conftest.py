import os
import shutil

import pytest


@pytest.fixture
def kmk_binary():
    path = os.environ.get("KMK_BINARY") or shutil.which("kmk")
    if not path:
        pytest.skip("kmk binary not found")
    return path
