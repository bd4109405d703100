import sys
from fractions import Fraction

from hypothesis import settings, strategies as st

from hopfkit.exact import GaussianRational

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

small_fractions = st.builds(
    Fraction,
    st.integers(-60, 60),
    st.integers(1, 30),
)
gaussian_rationals = st.builds(GaussianRational, small_fractions, small_fractions)
nonzero_gaussian = gaussian_rationals.filter(bool)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {k}: {detail}")
