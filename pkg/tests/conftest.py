from __future__ import annotations

import sys
from itertools import combinations
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from schubiso.cartan import builtin, builtin_names  # noqa: E402
from schubiso.cohomology import SchubertDatum  # noqa: E402
from schubiso.weyl import is_min_rep, weyl_group  # noqa: E402

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def all_data(max_rank: int, max_length: int, fully_supported: bool = False) -> list[SchubertDatum]:
    """Every datum over the built-in types, including elements that are not fully supported."""
    out = []
    for name in builtin_names(max_rank):
        cartan = builtin(name)
        subsets = [frozenset(c) for k in range(cartan.rank + 1) for c in combinations(range(cartan.rank), k)]
        for w in weyl_group(cartan).elements:
            if w.length > max_length:
                break
            if fully_supported and len(w.support) != cartan.rank:
                continue
            out.extend(SchubertDatum(cartan, w, p) for p in subsets if is_min_rep(w, p))
    return out


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR
