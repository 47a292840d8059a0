import os
import time
from pathlib import Path

import pytest

from treepoly.enumeration import run
from treepoly.store import Store


@pytest.fixture(scope="session")
def store14(tmp_path_factory):
    """Shared corpus through n=14, built once with 2 workers."""
    path = tmp_path_factory.mktemp("corpus14") / "db"
    store = Store(path)
    t0 = time.perf_counter()
    run(14, store, workers=2, progress=False)
    store.build_seconds = time.perf_counter() - t0
    return store


@pytest.fixture(scope="session")
def store8(tmp_path_factory):
    """Small corpus through n=8 for tests that iterate exhaustively."""
    path = tmp_path_factory.mktemp("corpus8") / "db"
    store = Store(path)
    run(8, store, workers=1, progress=False)
    return store


@pytest.fixture(scope="session")
def full_store():
    """Sealed n<=20 store, when one is available.

    Built separately (takes minutes, not CI material):
        treepoly enumerate --max-n 20 --store <dir>
    and located via TREEPOLY_FULL_STORE.
    """
    env = os.environ.get("TREEPOLY_FULL_STORE")
    if not env:
        pytest.skip("full n<=20 store not available (set TREEPOLY_FULL_STORE)")
    path = Path(env)
    if not path.is_dir():
        pytest.skip(f"TREEPOLY_FULL_STORE={env} is not a directory")
    store = Store(path, create=False)
    if store.max_sealed() < 20:
        pytest.skip(f"store at {path} sealed only through n={store.max_sealed()}")
    return store
