from fractions import Fraction as F
from functools import lru_cache

import pytest

from dihedral_griess import ParamRecord, build_algebra

# (class, n, <e,f>, <e,e^{tau_f}>), typed in from the published table
KNOWN_ROWS = [
    ("1A", 1, F(1, 4), F(1, 4)),
    ("2A", 2, F(1, 32), F(1, 4)),
    ("2B", 2, F(0), F(1, 4)),
    ("3A", 3, F(13, 1024), F(13, 1024)),
    ("3C", 3, F(1, 256), F(1, 256)),
    ("4A", 4, F(1, 128), F(0)),
    ("4B", 4, F(1, 256), F(1, 32)),
    ("5A", 5, F(3, 512), F(3, 512)),
    ("6A", 6, F(5, 1024), F(13, 1024)),
]
# dimensions of the dihedral algebras in the literature
KNOWN_DIMS = {"1A": 1, "2A": 3, "2B": 2, "3A": 4, "3C": 3, "4A": 5, "4B": 5, "5A": 6, "6A": 8}


@lru_cache(maxsize=None)
def algebra(label):
    _, n, ef, eetf = next(r for r in KNOWN_ROWS if r[0] == label)
    return build_algebra(n, ParamRecord.from_inner_products(ef, eetf))


@pytest.fixture(params=[r[0] for r in KNOWN_ROWS])
def row_algebra(request):
    return request.param, algebra(request.param)
