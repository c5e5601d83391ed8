from hypothesis import strategies as st

from conflictcol.model import ConflictInstance, Multigraph


@st.composite
def instances(draw, max_n=6, max_k=3, max_m=8, min_n=2):
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(1, max_k))
    m = draw(st.integers(0, max_m))
    edges, pairs = [], []
    for _ in range(m):
        u = draw(st.integers(0, n - 1))
        v = draw(st.integers(0, n - 2))
        if v >= u:
            v += 1
        edges.append((u, v))
        pairs.append((draw(st.integers(1, k)), draw(st.integers(1, k))))
    return ConflictInstance(Multigraph(n, tuple(edges)), k, tuple(pairs))
