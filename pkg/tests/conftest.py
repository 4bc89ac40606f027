import random

import pytest

from rotcut.geometry import generate_scene, validate_and_normalize
from rotcut.signseq import BLUE, RED, Sym

_results: dict[int, tuple[str, bool, str]] = {}


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    n = mark.args[0]
    detail = dict(item.user_properties).get("detail", "")
    _results[n] = (item.name, call.excinfo is None, detail)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        name, ok, detail = _results[n]
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {name}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))


def random_signseq(rng: random.Random, max_len: int = 200) -> tuple:
    """Uniform-ish valid sequence: interleave two odd alternating color strings."""
    while True:
        nr = 2 * rng.randrange((max_len + 1) // 2) + 1
        nb = 2 * rng.randrange((max_len + 1) // 2) + 1
        if nr + nb <= max_len:
            break
    sr, sb = rng.choice((1, -1)), rng.choice((1, -1))
    reds = [Sym(RED, sr * (-1) ** i) for i in range(nr)]
    blues = [Sym(BLUE, sb * (-1) ** i) for i in range(nb)]
    slots = [RED] * nr + [BLUE] * nb
    rng.shuffle(slots)
    it = {RED: iter(reds), BLUE: iter(blues)}
    return tuple(next(it[c]) for c in slots)


def scene(r: int, g: int, b: int, seed: int, bound: int = 20):
    return validate_and_normalize(generate_scene(r, g, b, bound, seed))


@pytest.fixture
def rng():
    return random.Random(20261014)
