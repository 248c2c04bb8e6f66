import os
import sys
import time

sys.path.insert(0, os.path.dirname(__file__))

SUITE_LIMIT = 120.0
_start = time.perf_counter()
RESULTS = {}  # criterion number -> (passed, description)


def record(number, passed, text):
    line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {text}"
    RESULTS[number] = (passed, line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    elapsed = time.perf_counter() - _start
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n][1])
    ok = elapsed < SUITE_LIMIT
    terminalreporter.write_line(
        f"{'PASS' if ok else 'FAIL'} suite runtime: {elapsed:.1f}s (limit {SUITE_LIMIT:.0f}s)")


def pytest_sessionfinish(session, exitstatus):
    if RESULTS and time.perf_counter() - _start >= SUITE_LIMIT and exitstatus == 0:
        session.exitstatus = 1
