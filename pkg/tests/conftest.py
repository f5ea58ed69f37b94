import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# criterion label -> list of (case, passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE):
        cases = ACCEPTANCE[label]
        bad = [c for c in cases if not c[1]]
        status = "PASS" if not bad else "FAIL"
        detail = "; ".join(f"{c[0]}: {c[2]}" for c in bad[:3]) if bad else cases[-1][2]
        terminalreporter.write_line(f"[{status}] criterion {label} ({len(cases) - len(bad)}/{len(cases)} cases) {detail}")
