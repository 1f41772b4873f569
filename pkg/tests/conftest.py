import pytest
from hypothesis import strategies as st

from wsbn.process import ActionLabel, ProcessConfig, ProcessSpec, TransitionRule

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def make_spec(rules, states, initial, alphabet=("a",), dim=0):
    out = []
    for i, r in enumerate(rules):
        src, label, dst, *vec = r
        out.append(TransitionRule(f"t{i}", src, ActionLabel.parse(label), dst, tuple(vec[0]) if vec else ()))
    return ProcessSpec(states, alphabet, initial, out, "vass" if dim else "finite", dim)


@pytest.fixture
def receive_only():
    """A lone receive rule: reachable for the process, never in a network."""
    return make_spec([("q", "??a", "q'")], ["q", "q'"], ["q"])


@pytest.fixture
def sender_receiver():
    return make_spec([("b0", "!!a", "b1"), ("r0", "??a", "r1")], ["b0", "b1", "r0", "r1"], ["b0", "r0"])


@pytest.fixture
def counter():
    return make_spec([("q0", "!!a", "q0", [0]), ("q0", "??a", "q0", [1])], ["q0"], ["q0"], dim=1)


def vass_configs(states=("p", "q"), dim=2, hi=4):
    return st.builds(
        ProcessConfig,
        st.sampled_from(states),
        st.tuples(*[st.integers(0, hi)] * dim),
    )


@st.composite
def finite_specs(draw, max_states=4, max_letters=3, max_transitions=8):
    n = draw(st.integers(1, max_states))
    states = [f"q{i}" for i in range(n)]
    letters = list("abc"[: draw(st.integers(1, max_letters))])
    initial = draw(st.lists(st.sampled_from(states), min_size=1, max_size=2, unique=True))
    raw = draw(
        st.lists(
            st.tuples(
                st.sampled_from(states),
                st.sampled_from(("broadcast", "receive")),
                st.sampled_from(letters),
                st.sampled_from(states),
            ),
            max_size=max_transitions,
        )
    )
    rules = [TransitionRule(f"t{i}", s, ActionLabel(k, a), d) for i, (s, k, a, d) in enumerate(raw)]
    return ProcessSpec(states, letters, initial, rules)
