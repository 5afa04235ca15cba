"""Shared fixtures: the order-500 catalog is built once per session, and the
acceptance tests print one PASS/FAIL line per criterion at the end."""

import time

import pytest

from cycensus.census import ensure_catalog, run_formula_suite

CRITERIA: list[tuple[int, bool, str, float]] = []
CATALOG_BUILD_SECONDS = [0.0]


@pytest.fixture(scope="session")
def catalog500():
    t0 = time.perf_counter()
    entries, errors = ensure_catalog(500)
    CATALOG_BUILD_SECONDS[0] = time.perf_counter() - t0
    assert not errors, [v.id for v in errors]
    return entries


@pytest.fixture(scope="session")
def suite500(catalog500):
    return run_formula_suite(500, catalog500)


def record_criterion(num: int, ok: bool, detail: str, seconds: float) -> None:
    CRITERIA.append((num, ok, detail, seconds))


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, detail, seconds in sorted(CRITERIA):
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(
            f"CRITERION {num}: {verdict} ({seconds:.2f}s) - {detail}"
        )
