import itertools
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from spidersq.core import make_diagram  # noqa: E402

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIXTURES = os.path.join(ROOT, "fixtures")

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {msg}")


def two_label_family(max_count=2):
    """Every valid diagram over {A, B} with at most two spider entries whose
    habitats have at most two zones."""
    labels = ("A", "B")
    inner = [("A",), ("B",), ("A", "B")]
    out = []
    for k in range(1, 4):
        for extra in itertools.combinations(inner, k):
            zones = [()] + list(extra)
            if not all(any(l in z for z in zones) for l in labels):
                continue
            habs = [h for r in (1, 2) for h in itertools.combinations(zones, r)]
            for shade_n in range(len(zones) + 1):
                for shaded in itertools.combinations(zones, shade_n):
                    for ne in range(3):
                        for entries in itertools.combinations(habs, ne):
                            for counts in itertools.product(range(1, max_count + 1), repeat=ne):
                                out.append(make_diagram(labels, zones, shaded,
                                                        list(zip(counts, entries))))
    return out


@pytest.fixture(scope="session")
def family():
    return two_label_family()


@pytest.fixture(scope="session")
def square_report():
    from spidersq.greimas import SquareSpec, build_square
    return build_square(SquareSpec("life", "death"))
