"""Backend selection and work splitting for the enumeration kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module is used. Setting ``LDPC_GAUGE_PURE=1`` forces the fallback. Callers pass
Python ints as bitsets; conversion to packed words happens here.
"""

from __future__ import annotations

import contextlib
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterator, Optional

import numpy as np

from . import _kernels_py

try:
    if os.environ.get("LDPC_GAUGE_PURE"):
        raise ImportError("pure backend requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

__all__ = [
    "available_backends",
    "backend",
    "use_backend",
    "set_threads",
    "get_threads",
    "min_combination",
    "min_syndrome_match",
    "min_subset",
    "min_locally_minimal",
]

_state = {"backend": "compiled" if _compiled is not None else "python", "threads": 1}

# Below this many steps the thread pool costs more than it saves.
_SPLIT_THRESHOLD = 1 << 14


def available_backends() -> tuple[str, ...]:
    return ("compiled", "python") if _compiled is not None else ("python",)


def backend() -> str:
    return _state["backend"]


@contextlib.contextmanager
def use_backend(name: str) -> Iterator[None]:
    """Temporarily switch the kernel backend."""
    if name not in available_backends():
        raise ValueError(f"backend {name!r} is not available")
    previous = _state["backend"]
    _state["backend"] = name
    try:
        yield
    finally:
        _state["backend"] = previous


def set_threads(n: int) -> None:
    if n < 1:
        raise ValueError("thread count must be positive")
    _state["threads"] = n


def get_threads() -> int:
    return _state["threads"]


def _nwords(nbits: int) -> int:
    return max(1, (nbits + 63) // 64)


def _pack(v: int, nw: int) -> np.ndarray:
    return np.frombuffer(v.to_bytes(8 * nw, "little"), dtype="<u8").astype(np.uint64)


def _pack_rows(rows: list[int], nw: int) -> np.ndarray:
    if not rows:
        return np.zeros((0, nw), dtype=np.uint64)
    data = b"".join(r.to_bytes(8 * nw, "little") for r in rows)
    return np.frombuffer(data, dtype="<u8").astype(np.uint64).reshape(len(rows), nw)


def _unpack(words: np.ndarray) -> int:
    return int.from_bytes(np.ascontiguousarray(words, dtype="<u8").tobytes(), "little")


def _better(a: tuple[int, int], b: tuple[int, int]) -> bool:
    if a[0] < 0:
        return False
    if b[0] < 0 or a[0] < b[0]:
        return True
    return a[0] == b[0] and _kernels_py.lex_less(a[1], b[1])


def _ranges(total: int, threads: Optional[int]) -> list[tuple[int, int]]:
    t = threads or _state["threads"]
    if t <= 1 or total < _SPLIT_THRESHOLD:
        return [(0, total)]
    step = -(-total // t)
    return [(s, min(s + step, total)) for s in range(0, total, step)]


def _run(job: Callable[[int, int], tuple], spans: list[tuple[int, int]]) -> list[tuple]:
    if len(spans) == 1:
        return [job(*spans[0])]
    with ThreadPoolExecutor(max_workers=len(spans)) as pool:
        return list(pool.map(lambda s: job(*s), spans))


def _reduce(results: list[tuple[int, int]]) -> Optional[tuple[int, int]]:
    best = (-1, 0)
    for r in results:
        if _better(r, best):
            best = r
    return None if best[0] < 0 else best


def min_combination(
    base: int, gens: list[int], length: int, required: int = 0, threads: Optional[int] = None
) -> Optional[tuple[int, int]]:
    """Minimum-weight element of base + span(gens); see ``_kernels_py.gray_min``."""
    total = 1 << len(gens)
    spans = _ranges(total, threads)
    if _state["backend"] == "compiled":
        nw = _nwords(length)
        b = _pack(base, nw)
        g = _pack_rows(gens, nw)

        def job(s: int, e: int) -> tuple[int, int]:
            w, v = _compiled.gray_min(b, g, required, s, e)
            return w, _unpack(v)

    else:

        def job(s: int, e: int) -> tuple[int, int]:
            return _kernels_py.gray_min(base, gens, required, s, e)

    return _reduce(_run(job, spans))


def min_syndrome_match(
    target: int, cols: list[int], syndrome_bits: int, nonzero: int = 0, threads: Optional[int] = None
) -> Optional[tuple[int, int]]:
    """Minimum-weight ambient vector with a given syndrome; see ``gray_syndrome_min``."""
    total = 1 << len(cols)
    spans = _ranges(total, threads)
    if _state["backend"] == "compiled":
        if len(cols) > 63:
            raise ValueError("ambient enumeration is limited to 63 coordinates")
        sw = _nwords(syndrome_bits)
        t = _pack(target, sw)
        c = _pack_rows(cols, sw)
        nz = _pack(nonzero, sw)

        def job(s: int, e: int) -> tuple[int, int]:
            w, x = _compiled.gray_syndrome_min(t, c, nz, s, e)
            return w, int(x)

    else:

        def job(s: int, e: int) -> tuple[int, int]:
            return _kernels_py.gray_syndrome_min(target, cols, nonzero, s, e)

    return _reduce(_run(job, spans))


def min_subset(
    rows: list[int], size: int, length: int, threads: Optional[int] = None
) -> tuple[int, tuple[int, ...]]:
    """Minimum XOR weight over ``size``-subsets of ``rows``, lexicographic tie-break."""
    n = len(rows)
    t = threads or _state["threads"]
    firsts = max(0, n - size + 1)
    if t > 1 and size > 0 and firsts > 1:
        step = -(-firsts // t)
        spans = [(s, min(s + step, firsts)) for s in range(0, firsts, step)]
    else:
        spans = [(0, max(firsts, 1))]
    if _state["backend"] == "compiled":
        r = _pack_rows(rows, _nwords(length))

        def job(s: int, e: int) -> tuple:
            return _compiled.subset_min(r, size, s, e)

    else:

        def job(s: int, e: int) -> tuple:
            return _kernels_py.subset_min(rows, size, s, e)

    best: tuple[int, tuple[int, ...]] = (-1, ())
    for w, combo in _run(job, spans):
        if w >= 0 and (best[0] < 0 or (w, combo) < best):
            best = (w, combo)
    return best


def min_locally_minimal(
    gens: list[int], moves: list[int], length: int, threads: Optional[int] = None
) -> Optional[tuple[int, int]]:
    """Smallest nonzero element of span(gens) not shortened by any single move."""
    total = 1 << len(gens)
    spans = _ranges(total, threads)
    if _state["backend"] == "compiled":
        nw = _nwords(length)
        g = _pack_rows(gens, nw)
        m = _pack_rows(moves, nw)

        def job(s: int, e: int) -> tuple[int, int]:
            w, v = _compiled.locally_minimal_min(g, m, s, e)
            return w, _unpack(v)

    else:

        def job(s: int, e: int) -> tuple[int, int]:
            return _kernels_py.locally_minimal_min(gens, moves, s, e)

    return _reduce(_run(job, spans))
