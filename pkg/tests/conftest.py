import time

import pytest

from shiftflip.flips import OneBlockFlip, reversal
from shiftflip.sft import SftPresentation
from shiftflip.words import SymbolInvolution

ACCEPTANCE_LINES: list[str] = []
TIMINGS: dict[str, float] = {}


@pytest.fixture(scope="session")
def golden():
    return SftPresentation.from_forbidden("01", 1, ["11"])


@pytest.fixture(scope="session")
def full2():
    return SftPresentation.full_shift("01")


@pytest.fixture(scope="session")
def rho(golden):
    return reversal(golden)


@pytest.fixture(scope="session")
def systems(golden, full2):
    """The three reference systems: (name, space, flip, symbol map as dict)."""
    swap = OneBlockFlip(full2, SymbolInvolution({"0": "1", "1": "0"}), "swap")
    return [
        ("golden mean + rho", golden, reversal(golden), {"0": "0", "1": "1"}),
        ("full 2-shift + rho", full2, reversal(full2), {"0": "0", "1": "1"}),
        ("full 2-shift + swap", full2, swap, {"0": "1", "1": "0"}),
    ]


@pytest.fixture(scope="session")
def propd_golden(golden, rho):
    from shiftflip.constructions import prop_d
    t0 = time.perf_counter()
    data = prop_d(golden, rho, "0")
    TIMINGS["prop_d"] = time.perf_counter() - t0
    return data


def record(n: int, ok: bool, detail: str):
    ACCEPTANCE_LINES.append(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
