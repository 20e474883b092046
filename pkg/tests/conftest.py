import contextlib
import functools
import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, derandomize=True, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")

_RESULTS: dict = {}


@pytest.fixture
def criterion():
    """Context manager recording one acceptance line: pass/fail and wall time."""

    @contextlib.contextmanager
    def run(n: int, title: str, limit: float | None = None, unmet: str | None = None):
        """``unmet`` marks a criterion whose remaining clauses cannot hold; the line then reads FAIL."""
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            dt = time.perf_counter() - t0
            if ok and limit is not None and dt >= limit:
                ok = False
                _RESULTS[n] = (False, title, dt, limit)
                raise AssertionError(f"criterion {n} took {dt:.1f}s, limit {limit}s")
            if unmet:
                ok, title = False, f"{title} [{unmet}]"
            _RESULTS[n] = (ok, title, dt, limit)
            print(f"CRITERION {n:>2} {'PASS' if ok else 'FAIL'}  {title}  ({dt:.1f}s)")

    return run


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        ok, title, dt, limit = _RESULTS[n]
        bound = f" < {limit:g}s" if limit is not None else ""
        terminalreporter.write_line(f"CRITERION {n:>2} {'PASS' if ok else 'FAIL'}  {title}  ({dt:.1f}s{bound})")


@functools.lru_cache(maxsize=None)
def cat(kind: str):
    from dualinv.varcat import sample_cat_sub
    return sample_cat_sub(kind)


@functools.lru_cache(maxsize=None)
def weak(kind: str, seed=None):
    """Strict (seed None) or deformed weak involution on a sample base."""
    from dualinv.opposites import extract_strong_involution
    from dualinv.weakside import deformed_weak, strict_as_weak
    A = cat(kind)
    return strict_as_weak(extract_strong_involution(A)) if seed is None else deformed_weak(A, seed)


@functools.lru_cache(maxsize=None)
def pipeline(kind: str, seed, path: str):
    from dualinv.strictifier import strictify_pipeline
    return strictify_pipeline(weak(kind, seed), path)
