import os

import pytest


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "long: paper-scale runs, enabled by setting B3PARITY_LONG=1"
    )


def pytest_collection_modifyitems(config, items):
    if os.environ.get("B3PARITY_LONG") == "1":
        return
    skip = pytest.mark.skip(reason="set B3PARITY_LONG=1 to run paper-scale checks")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)
