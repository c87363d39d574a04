import math

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def naive_dft(x):
    """Unnormalized DFT by direct summation, one axis at a time."""
    out = np.asarray(x, dtype=np.complex128)
    for axis in range(out.ndim):
        n = out.shape[axis]
        moved = np.moveaxis(out, axis, 0)
        res = np.zeros_like(moved)
        for k in range(n):
            for t in range(n):
                res[k] += moved[t] * complex(math.cos(-2 * math.pi * k * t / n),
                                             math.sin(-2 * math.pi * k * t / n))
        out = np.moveaxis(res, 0, axis)
    return out


def hermite_held_coefficients(order):
    """Monomial coefficients of q from the raw Hermite system (ascending powers)."""
    deg = 2 * order + 1
    rows, rhs = [], []
    for t0, value in ((1 / 8, 1 / 4), (1 / 4, 0.0)):
        for i in range(order + 1):
            row = []
            for p in range(deg + 1):
                row.append(0.0 if p < i else math.perm(p, i) * t0 ** (p - i))
            rows.append(row)
            rhs.append(value if i == 0 else 0.0)
    return np.linalg.solve(np.array(rows), np.array(rhs))


def rot90_periodic(a, axes=(0, 1)):
    """Exact rotation by +90 degrees about index 0 on a periodic grid.

    ``out[x] = a[R^T x]`` with ``R = [[0, -1], [1, 0]]`` acting on the index
    pair ``axes`` (indices taken modulo the axis size).
    """
    i, j = axes
    n = a.shape[i]
    assert a.shape[j] == n
    idx = np.indices(a.shape)
    src = list(idx)
    # R^T (x_i, x_j) = (x_j, -x_i)
    src[i] = idx[j] % n
    src[j] = (-idx[i]) % n
    return a[tuple(src)]


# ------------------------------------------------------------------ acceptance report

ACCEPTANCE: dict[int, dict] = {}


def record(criterion: int, title: str, check: str, ok: bool, detail: str = ""):
    """Store one sub-check of an acceptance criterion for the summary."""
    entry = ACCEPTANCE.setdefault(criterion, {"title": title, "checks": []})
    entry["checks"].append((check, bool(ok), detail))


def acceptance_lines() -> list[str]:
    lines = []
    for c in sorted(ACCEPTANCE):
        entry = ACCEPTANCE[c]
        failed = [f"{name}: {detail}" for name, ok, detail in entry["checks"] if not ok]
        status = "FAIL" if failed else "PASS"
        n = len(entry["checks"])
        note = "; ".join(failed) if failed else f"{n} check{'s' if n > 1 else ''}"
        lines.append(f"{status} criterion {c:2d} {entry['title']} [{note}]")
    return lines


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines():
            terminalreporter.write_line(line)
