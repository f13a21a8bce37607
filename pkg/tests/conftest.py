import numpy as np
from hypothesis import strategies as st

from gf2lab.pointset import PointSet


def b(s: str) -> int:
    return int(s, 2)


@st.composite
def point_sets(draw, min_n=1, max_n=6, simple=False):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.booleans(), min_size=1 << n, max_size=1 << n))
    m = np.array(bits, dtype=bool)
    if simple:
        m[0] = False
    return PointSet(n, m)
