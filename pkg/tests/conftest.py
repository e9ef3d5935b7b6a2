"""Shared test helpers and the acceptance-criterion summary lines."""

import math
import re

import numpy as np

from pccloner.state import ModeSet

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_outcomes: dict[int, tuple[str, bool]] = {}


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def substitution_matrix(mode_set: ModeSet, m: np.ndarray) -> np.ndarray:
    """Independent oracle: substitute a†_k -> sum_i m[i,k] a†_i and expand.

    Works in unnormalized operator monomials first, then converts to the
    normalized occupation basis (sqrt(2) per doubly occupied mode).
    """
    dim = mode_set.dim
    t = np.zeros((dim, dim), dtype=complex)
    for col, (k, l) in enumerate(mode_set.pairs):
        coeffs: dict[tuple[int, int], complex] = {}
        for i in range(mode_set.n_modes):
            for j in range(mode_set.n_modes):
                key = (min(i, j), max(i, j))
                coeffs[key] = coeffs.get(key, 0.0) + m[i, k] * m[j, l]
        in_norm = math.sqrt(2.0) if k == l else 1.0
        for row, (i, j) in enumerate(mode_set.pairs):
            out_norm = math.sqrt(2.0) if i == j else 1.0
            t[row, col] = coeffs.get((i, j), 0.0) * out_norm / in_norm
    return t


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if match is None:
        return
    num = int(match.group(1))
    name = match.group(2).replace("_", " ")
    if report.when == "call":
        _outcomes[num] = (name, report.outcome == "passed")
    elif report.outcome not in ("passed",):
        _outcomes.setdefault(num, (name, False))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_outcomes):
        name, ok = _outcomes[num]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {num:02d} ({name}): {verdict}")
