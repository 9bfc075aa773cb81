import os

from hypothesis import HealthCheck, settings

SEED = int(os.environ.get("FLAGVEC_TEST_SEED", "20240611"))

settings.register_profile(
    "default", max_examples=60, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_report_header(config):
    return f"flagvec test seed: {SEED} (set FLAGVEC_TEST_SEED to change)"


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            crit = dict(getattr(rep, "user_properties", ())).get("criterion")
            if crit is not None and rep.when == "call":
                lines.append((crit, "PASS" if outcome == "passed" else "FAIL", rep.duration))
    if lines:
        terminalreporter.section("acceptance criteria")
        for crit, status, duration in sorted(lines):
            terminalreporter.write_line(f"criterion {crit:>2}: {status}  ({duration:.2f}s)")
