from __future__ import annotations

import threading

from chebknot import chebyshev, mincache
from chebknot.poly import IntPolynomial as P


def _fresh(monkeypatch, path):
    monkeypatch.setenv("CHEBKNOT_CACHE", str(path))
    mincache.forget()
    chebyshev.clear_memo()


def test_roundtrip_line():
    f = chebyshev.minimal_cos_poly(9)
    n, g = mincache.parse_line(mincache.format_line(9, f))
    assert n == 9 and g == f


def test_cache_written_and_reused(tmp_path, monkeypatch):
    _fresh(monkeypatch, tmp_path)
    f = chebyshev.minimal_cos_poly(45)
    text = (tmp_path / mincache.FILENAME).read_text()
    assert any(line.startswith("45: ") for line in text.splitlines())
    mincache.forget()
    chebyshev.clear_memo()
    assert mincache.lookup(45) == f
    assert chebyshev.minimal_cos_poly(45) == f


def test_corrupt_entries_ignored(tmp_path, monkeypatch):
    _fresh(monkeypatch, tmp_path)
    good = chebyshev.minimal_cos_poly(15)
    chebyshev.clear_memo()
    mincache.forget()
    bad = P(good.coeffs[:-1] + (good.lc * 3,))
    (tmp_path / mincache.FILENAME).write_text(
        "garbage line\n" + mincache.format_line(15, bad) + "\n" + "7: 1 2\n")
    assert mincache.lookup(15) is None
    assert mincache.lookup(7) is None
    assert chebyshev.minimal_cos_poly(15) == good


def test_disabled_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("CHEBKNOT_CACHE", "")
    mincache.forget()
    assert mincache.cache_dir() is None
    mincache.store(5, chebyshev.minimal_cos_poly(5))
    assert mincache.lookup(5) is None


def test_concurrent_computation(tmp_path, monkeypatch):
    _fresh(monkeypatch, tmp_path)
    results = {}

    def work(k):
        results[k] = [chebyshev.minimal_cos_poly(n) for n in range(60, 90)]

    threads = [threading.Thread(target=work, args=(k,)) for k in range(4)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert all(results[k] == results[0] for k in results)
    mincache.forget()
    for n in range(60, 90):
        assert mincache.lookup(n) == results[0][n - 60]
