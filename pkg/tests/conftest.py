"""Shared hypothesis profile and the acceptance summary block."""
import sys

from hypothesis import HealthCheck, settings

# 200 cases per property, derandomized so every run draws the same inputs.
settings.register_profile(
    "pythlab",
    max_examples=200,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("pythlab")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
