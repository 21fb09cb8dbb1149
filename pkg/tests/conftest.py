import hypothesis
import pytest

from hadamard36.catalog import load_catalog
from hadamard36.groups import group_from_text

hypothesis.settings.register_profile("default", max_examples=100, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")

C3xC3 = "<a,b: a^3=b^3=[a,b]=1>"


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def groups(catalog):
    return {gid: catalog.group(gid) for gid in catalog.presentations}


@pytest.fixture(scope="session")
def g9(groups):
    return groups["g9"]


@pytest.fixture(scope="session")
def h9():
    return group_from_text(C3xC3)


@pytest.fixture(scope="session")
def row_outcomes(catalog):
    from hadamard36.catalog import verify_row

    return {row.label: verify_row(catalog, row) for row in catalog.rows}


@pytest.fixture(scope="session")
def corrupted_d1(catalog):
    """Oracle: the first change of D1's T3 shift that leaves D1's class.

    Returns the shift and the corrupted catalog text.
    """
    from hadamard36.catalog import bundled_catalog_path, parse_catalog, verify_row
    from hadamard36.designs import are_equivalent

    bundled = bundled_catalog_path().read_text()
    G = catalog.group("g1")
    d1 = verify_row(catalog, catalog.row("D1")).dset
    for shift in ("a", "a^2", "b^2", "a*b", "a^2*b^2", "a*b^2"):
        text = bundled.replace("  T3 = b : a*b^2\n  x = c ; y = c^2\nrow g1 D2",
                               f"  T3 = {shift} : a*b^2\n  x = c ; y = c^2\nrow g1 D2", 1)
        cat = parse_catalog(text)
        o = verify_row(cat, cat.row("D1"))
        if o.passed and not are_equivalent(G, d1, o.dset):
            return shift, text
    raise AssertionError("no class-changing shift")


CRITERIA = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" in report.nodeid and name.startswith("test_criterion_"):
        if report.when == "call" or report.outcome != "passed":
            CRITERIA.setdefault(name, report.outcome)
            if report.outcome != "passed":
                CRITERIA[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(CRITERIA, key=lambda n: int(n.split("_")[2])):
        number, label = name.split("_")[2], " ".join(name.split("_")[3:])
        verdict = "PASS" if CRITERIA[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number} ({label}): {verdict}")
