import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_terminal_summary(terminalreporter):
    results = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call" and outcome != "error":
                continue
            props = dict(getattr(rep, "user_properties", []))
            if "criterion" not in props:
                continue
            n, title = props["criterion"]
            ok = results.get(n, (title, True, []))[1] and outcome == "passed"
            notes = results.get(n, (title, True, []))[2] + [props.get("detail", "")]
            results[n] = (title, ok, notes)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        title, ok, notes = results[n]
        detail = "; ".join(x for x in notes if x)
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n}. {title}" + (f"  ({detail})" if detail else ""))


@pytest.fixture
def criterion(request):
    """Tag an acceptance test and let it attach a one-line detail string."""
    marker = request.node.get_closest_marker("criterion")
    request.node.user_properties.append(("criterion", marker.args))

    def detail(text):
        request.node.user_properties.append(("detail", text))

    return detail
