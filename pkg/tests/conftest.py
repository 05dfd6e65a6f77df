import random

import pytest
from hypothesis import settings

from tetragonal.enumeration import enumerate_width2_interior
from tetragonal.lattice import LatticePolygon, UnimodularMap, convex_hull

settings.register_profile("default", deadline=None)
settings.load_profile("default")

CORPUS_G_MAX = 33


@pytest.fixture(scope="session")
def corpus():
    return enumerate_width2_interior(CORPUS_G_MAX)


@pytest.fixture(scope="session")
def small_corpus(corpus):
    return [P for P in corpus if len(P.points) <= 12]


def brute_points(vertices):
    """Lattice points of a convex polygon by cross products over its bounding box."""
    V = LatticePolygon(vertices).vertices
    xs = [v[0] for v in V]
    ys = [v[1] for v in V]
    inside, strict = [], []
    n = len(V)
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            cr = []
            for k in range(n):
                (ax, ay), (bx, by) = V[k], V[(k + 1) % n]
                cr.append((bx - ax) * (y - ay) - (by - ay) * (x - ax))
            if all(c >= 0 for c in cr):
                inside.append((x, y))
                if all(c > 0 for c in cr):
                    strict.append((x, y))
    return sorted(inside), sorted(strict)


def random_unimodular(rng: random.Random, steps=4, shift=6):
    U = UnimodularMap.translation(rng.randint(-shift, shift), rng.randint(-shift, shift))
    gens = [
        UnimodularMap(1, 1, 0, 1, 0, 0),
        UnimodularMap(1, 0, 1, 1, 0, 0),
        UnimodularMap(0, 1, 1, 0, 0, 0),
        UnimodularMap(-1, 0, 0, 1, 0, 0),
        UnimodularMap(1, -1, 0, 1, 0, 0),
    ]
    for _ in range(steps):
        U = rng.choice(gens).compose(U)
    return U


def random_hull(rng: random.Random, n=6, box=6):
    while True:
        pts = [(rng.randint(-box, box), rng.randint(-box, box)) for _ in range(n)]
        P = convex_hull(pts)
        if P.dimension == 2:
            return P


# ---------------------------------------------------------------- acceptance summary

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): an acceptance criterion")


def pytest_runtest_logreport(report):
    mark = getattr(report, "criterion", None)
    if mark is None:
        return
    n, title = mark
    prev = _criteria.get(n, (title, None))[1]
    if report.failed:
        _criteria[n] = (title, "FAIL")
    elif report.skipped:
        _criteria[n] = (title, "SKIP")
    elif report.when == "call" and prev != "FAIL":
        _criteria[n] = (title, "PASS")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    m = item.get_closest_marker("criterion")
    if m is not None:
        outcome.get_result().criterion = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, status = _criteria[n]
        terminalreporter.write_line(f"criterion {n:2d} {status}  {title}")
