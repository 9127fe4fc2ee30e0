from typing import Any

import pytest


def pytest_addoption(parser: Any) -> None:
    parser.addoption(
        "--include-experiments",
        action="store_true",
        help="include the acceptance-scale numerical experiments",
    )


def pytest_collection_modifyitems(config: Any, items: Any) -> None:
    if not config.getoption("--include-experiments"):
        skip_experiments = pytest.mark.skip(reason="need --include-experiments option to run")
        for item in items:
            if "experiments" in item.keywords:
                item.add_marker(skip_experiments)
