import sys
from pathlib import Path

from hypothesis import settings, strategies as st

from kpfree.graph import Graph

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@st.composite
def graphs(draw, min_n=0, max_n=9, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [e for e, keep in zip(pairs, chosen) if keep]
    if connected:
        # a spanning path guarantees connectivity
        edges = sorted(set(edges) | {(i, i + 1) for i in range(n - 1)})
    return Graph(n, edges)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
