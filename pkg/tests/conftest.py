import pytest

_RESULTS: dict[str, list[str]] = {}


class Criterion:
    """Collects one verdict per acceptance criterion for the terminal summary."""

    def __init__(self, name: str):
        self.name = name
        self.problems: list[str] = []

    def check(self, cond: bool, msg: str):
        if not cond:
            self.problems.append(msg)

    def finish(self):
        _RESULTS[self.name] = self.problems
        shown = "; ".join(self.problems[:5])
        more = f" (+{len(self.problems) - 5} more)" if len(self.problems) > 5 else ""
        assert not self.problems, f"{self.name}: {len(self.problems)} problem(s): {shown}{more}"


@pytest.fixture
def criterion(request):
    return Criterion(request.node.name)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_RESULTS):
        problems = _RESULTS[name]
        verdict = "PASS" if not problems else f"FAIL ({len(problems)} problem(s))"
        terminalreporter.write_line(f"{verdict:<24} {name}")
