import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def _acceptance():
    return sys.modules.get("test_acceptance")


def pytest_sessionfinish(session, exitstatus):
    mod = _acceptance()
    if mod is not None and mod.RESULTS:
        mod.MANIFEST_PATH = mod.write_manifest()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = _acceptance()
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.result_line(cid))
    path = getattr(mod, "MANIFEST_PATH", None)
    if path is not None:
        terminalreporter.write_line(f"manifest: {path}")
