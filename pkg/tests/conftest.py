import sys
from pathlib import Path

from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from lcneck.formula import Brac, Over, Prim, Prod, Rev, Shift, Under  # noqa: E402


def formulas(names=("p", "q", "r"), unary=(Shift, Rev, Brac), max_leaves=6):
    leaves = st.sampled_from([Prim(n) for n in names])

    def extend(children):
        binary = st.tuples(st.sampled_from([Under, Over, Prod]), children, children).map(
            lambda t: t[0](t[1], t[2]))
        if not unary:
            return binary
        un = st.tuples(st.sampled_from(list(unary)), children).map(lambda t: t[0](t[1]))
        return binary | un

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for i in sorted(mod.RESULTS):
            terminalreporter.write_line(mod.RESULTS[i])
