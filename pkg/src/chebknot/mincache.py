"""On-disk memo table for minimal polynomials ``M_n``.

File format: one polynomial per line, ``n: c_0 c_1 ... c_d`` in decimal.
Lines that fail the degree / leading-coefficient check are ignored and the
polynomial is recomputed.  The directory comes from ``CHEBKNOT_CACHE``; if
unset the cache lives under ``~/.cache/chebknot``.  Set it to an empty
string to disable persistence.
"""
from __future__ import annotations

import logging
import os
import threading
from pathlib import Path

from filelock import FileLock

from .poly import IntPolynomial

log = logging.getLogger(__name__)

FILENAME = "minpoly.txt"

_lock = threading.Lock()
_loaded: dict[str, dict[int, IntPolynomial]] = {}


def cache_dir() -> Path | None:
    env = os.environ.get("CHEBKNOT_CACHE")
    if env is not None:
        return Path(env) if env else None
    return Path.home() / ".cache" / "chebknot"


def format_line(n: int, poly: IntPolynomial) -> str:
    return f"{n}: " + " ".join(str(c) for c in poly.coeffs)


def parse_line(line: str) -> tuple[int, IntPolynomial]:
    head, _, body = line.partition(":")
    return int(head), IntPolynomial(int(tok) for tok in body.split())


def _valid(n: int, poly: IntPolynomial) -> bool:
    from .chebyshev import minpoly_degree, minpoly_lc

    return poly.degree == minpoly_degree(n) and poly.lc == minpoly_lc(n)


def _load(directory: Path) -> dict[int, IntPolynomial]:
    key = str(directory)
    table = _loaded.get(key)
    if table is not None:
        return table
    table = {}
    path = directory / FILENAME
    if path.exists():
        for lineno, line in enumerate(path.read_text().splitlines(), 1):
            if not line.strip():
                continue
            try:
                n, poly = parse_line(line)
            except ValueError:
                log.warning("minpoly cache %s:%d unparsable, ignored", path, lineno)
                continue
            if n in table:
                continue
            if _valid(n, poly):
                table[n] = poly
            else:
                log.warning("minpoly cache entry n=%d failed verification, ignored", n)
    _loaded[key] = table
    return table


def lookup(n: int) -> IntPolynomial | None:
    directory = cache_dir()
    if directory is None:
        return None
    with _lock:
        return _load(directory).get(n)


def store(n: int, poly: IntPolynomial) -> None:
    directory = cache_dir()
    if directory is None:
        return
    with _lock:
        table = _load(directory)
        if n in table:
            return
        table[n] = poly
        try:
            directory.mkdir(parents=True, exist_ok=True)
            path = directory / FILENAME
            with FileLock(str(path) + ".lock"):
                with open(path, "a") as fh:
                    fh.write(format_line(n, poly) + "\n")
        except OSError as exc:
            log.warning("could not write minpoly cache: %s", exc)


def forget() -> None:
    """Drop the in-process view of every cache file (tests use this)."""
    with _lock:
        _loaded.clear()
