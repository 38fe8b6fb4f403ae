#!/usr/bin/env python3
"""Generate the bundled historical-style OHLC fixtures under data/fixtures.

Everything is seeded; rerunning reproduces the committed files byte-for-byte.
Run from the repository root:  python3 tests/oracle/make_fixtures.py
"""
import datetime as dt
import math
import os
import sys

import numpy as np
from scipy import stats

ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))
OUT = os.path.join(ROOT, "data", "fixtures")

HEADER = "Date,Open,High,Low,Close,Adj Close,Volume"
HOLIDAYS = {(1, 1), (7, 4), (12, 25)}


def trading_days(start, end):
    d = start
    out = []
    while d <= end:
        if d.weekday() < 5 and (d.month, d.day) not in HOLIDAYS:
            out.append(d)
        d += dt.timedelta(days=1)
    return out


def fmt(x, places):
    return f"{x:.{places}f}"


def write_csv(path, dates, closes, rng, places=2, adj_factor=0.97):
    """Derive open/high/low/volume around a close path and write the CSV."""
    os.makedirs(os.path.dirname(path), exist_ok=True)
    scale = 10 ** places
    lines = [HEADER]
    prev = closes[0]
    for d, c in zip(dates, closes):
        close = round(c, places)
        open_ = round(prev * (1.0 + rng.normal(0.0, 0.004)), places)
        if open_ <= 0:
            open_ = close
        hi = math.ceil(max(open_, close) * (1.0 + abs(rng.normal(0.0, 0.006))) * scale) / scale
        lo = math.floor(min(open_, close) * (1.0 - abs(rng.normal(0.0, 0.006))) * scale) / scale
        lo = max(lo, 1.0 / scale)
        adj = round(close * adj_factor, 6)
        vol = int(rng.integers(1_000_000, 90_000_000))
        lines.append(",".join([d.isoformat(), fmt(open_, places), fmt(hi, places),
                               fmt(lo, places), fmt(close, places), f"{adj:.6f}", str(vol)]))
        prev = close
    with open(path, "w", newline="\n") as f:
        f.write("\n".join(lines) + "\n")


def closes_from_returns(start_price, returns):
    out = [start_price]
    for r in returns:
        out.append(out[-1] * (1.0 + r))
    return out


def inject_reversion(returns, window, k, p_flip, rng):
    """After a band breach, force the next-day return positive with probability p_flip."""
    r = list(returns)
    for i in range(window, len(r) - 1):
        sigma = float(np.std(r[i - window:i], ddof=1))
        if abs(r[i]) > k * sigma and r[i + 1] < 0 and rng.random() < p_flip:
            r[i + 1] = -r[i + 1]
    return r


def blom_window(n, sigma, rng):
    """Shuffled standard-normal plotting-position quantiles: a sample shaped exactly normal."""
    q = stats.norm.ppf((np.arange(1, n + 1) - 0.375) / (n + 0.25)) * sigma
    rng.shuffle(q)
    return list(q)


def main():
    rng = np.random.default_rng(20121201)

    # Index plus three historical-style single names, 2007-01-03 .. 2012-11-30.
    days = trading_days(dt.date(2007, 1, 3), dt.date(2012, 11, 30))
    n = len(days) - 1
    idx_sigma = 0.012
    idx = rng.normal(0.0003, idx_sigma, n)
    write_csv(os.path.join(OUT, "IXIC.csv"), days, closes_from_returns(2415.29, idx), rng)

    beta = 1.1
    idio_sigma = beta * idx_sigma * math.sqrt(1.0 / 0.66 ** 2 - 1.0)
    aapl = beta * idx + rng.normal(0.0008, idio_sigma, n)
    aapl = inject_reversion(aapl, 252, 2.0, 0.55, rng)
    write_csv(os.path.join(OUT, "AAPL.csv"), days, closes_from_returns(83.80, aapl), rng)

    rimm = list(rng.normal(-0.0004, 0.0225, n))
    rimm = inject_reversion(rimm, 252, 2.0, 0.6, rng)
    rimm[-1] = 0.121
    write_csv(os.path.join(OUT, "RIMM.csv"), days, closes_from_returns(70.10, rimm), rng)

    yhoo = list(rng.standard_t(5, n) * 0.016)
    yhoo = inject_reversion(yhoo, 252, 2.0, 0.6, rng)
    write_csv(os.path.join(OUT, "YHOO.csv"), days, closes_from_returns(25.61, yhoo), rng)

    # Last 250 bars of AAPL for the return-vector golden.
    src = open(os.path.join(OUT, "AAPL.csv")).read().splitlines()
    os.makedirs(os.path.join(OUT, "short"), exist_ok=True)
    with open(os.path.join(OUT, "short", "AAPL.csv"), "w", newline="\n") as f:
        f.write("\n".join([src[0]] + src[-250:]) + "\n")

    # Constant-magnitude alternating returns: never breaches a 2-sigma band.
    flat_days = trading_days(dt.date(2011, 1, 3), dt.date(2012, 7, 31))
    flat = [0.01 if i % 2 == 0 else -0.01 for i in range(len(flat_days) - 1)]
    write_csv(os.path.join(OUT, "FLAT.csv"), flat_days,
              closes_from_returns(40.0, flat), rng, places=4)

    # Disjoint calendars for the NoOverlap path.
    a_days = trading_days(dt.date(2010, 1, 4), dt.date(2010, 5, 31))
    b_days = trading_days(dt.date(2011, 1, 3), dt.date(2011, 5, 31))
    write_csv(os.path.join(OUT, "disjoint", "A2010.csv"), a_days,
              closes_from_returns(30.0, rng.normal(0, 0.01, len(a_days) - 1)), rng)
    write_csv(os.path.join(OUT, "disjoint", "B2011.csv"), b_days,
              closes_from_returns(31.0, rng.normal(0, 0.01, len(b_days) - 1)), rng)

    # Screening universe, 800 bars each, as of 2012-11-30.
    uni = os.path.join(OUT, "universe")
    udays = trading_days(dt.date(2009, 9, 1), dt.date(2012, 11, 30))[-800:]
    un = len(udays) - 1
    sigma = 0.015

    def engineered(last_ratio, tail_sampler=None):
        pre = list(rng.normal(0.0, sigma, un - 253))
        window = tail_sampler() if tail_sampler else blom_window(252, sigma, rng)
        s = float(np.std(window, ddof=1))
        return pre + window + [last_ratio * 2.0 * s]

    write_csv(os.path.join(uni, "CANDA.csv"), udays,
              closes_from_returns(50.0, engineered(1.6)), rng, places=4)
    write_csv(os.path.join(uni, "CANDB.csv"), udays,
              closes_from_returns(20.0, engineered(-1.25)), rng, places=4)
    write_csv(os.path.join(uni, "CALM.csv"), udays,
              closes_from_returns(35.0, engineered(0.3)), rng, places=4)

    def heavy():
        w = list(rng.standard_t(2.2, 252) * sigma * 0.6)
        assert stats.shapiro(w).pvalue < 1e-4
        return w

    write_csv(os.path.join(uni, "FATT.csv"), udays,
              closes_from_returns(60.0, engineered(1.8, heavy)), rng, places=4)
    write_csv(os.path.join(uni, "TINY.csv"), udays[-10:],
              closes_from_returns(12.0, rng.normal(0, sigma, 9)), rng, places=4)
    stale_days = trading_days(dt.date(2009, 8, 1), dt.date(2012, 11, 30))[:-10][-800:]
    write_csv(os.path.join(uni, "STALE.csv"), stale_days,
              closes_from_returns(44.0, engineered(2.0)), rng, places=4)

    with open(os.path.join(OUT, "universe.txt"), "w", newline="\n") as f:
        f.write("# bundled screening universe\n")
        for t in ["CANDA", "CALM", "FATT", "TINY", "STALE", "CANDB"]:
            f.write(t + "\n")
        f.write("\n")
    with open(os.path.join(OUT, "empty_universe.txt"), "w", newline="\n") as f:
        f.write("# nothing to scan\n# another comment\n")
    print("fixtures written to", OUT, file=sys.stderr)


if __name__ == "__main__":
    main()
