#!/usr/bin/env python3
"""Independent brute-force oracle for the golden files under tests/golden.

Written separately from the C++ library: exact summation via math.fsum,
normal quantiles via scipy.special.ndtri, and scipy.stats.shapiro as a
cross-check on the Shapiro-Wilk approximation. Run from the repo root:

    python3 tests/oracle/oracle.py
"""
import json
import math
import os
import sys

import numpy as np
from scipy import special, stats

ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))
FIX = os.path.join(ROOT, "data", "fixtures")
GOLD = os.path.join(ROOT, "tests", "golden")

SCHEMA_VERSION = "1.0.0"
PINNED_TIME = "1970-01-01T00:00:00Z"


# ---------------------------------------------------------------- helpers

def sig10(x):
    """Round to 10 significant digits, the precision every report number carries."""
    if x is None:
        return None
    return float(f"{x:.10g}")


def envelope(command, payload):
    return {"schema_version": SCHEMA_VERSION, "command": command,
            "generated_at": PINNED_TIME, "payload": payload}


def dump(obj):
    return json.dumps(obj, indent=2) + "\n"


def read_csv(path):
    lines = open(path).read().splitlines()
    assert lines[0] == "Date,Open,High,Low,Close,Adj Close,Volume"
    rows = [ln.split(",") for ln in lines[1:] if ln]
    rows.sort(key=lambda r: r[0])
    return [(r[0], float(r[4]), float(r[5])) for r in rows]


def ticker_of(path):
    return os.path.splitext(os.path.basename(path))[0].upper()


def simple_returns(bars):
    return [(bars[i][0], bars[i][1] / bars[i - 1][1] - 1.0) for i in range(1, len(bars))]


def mean(xs):
    return math.fsum(xs) / len(xs)


def var(xs):
    m = mean(xs)
    return math.fsum((x - m) * (x - m) for x in xs) / (len(xs) - 1)


def sd(xs):
    return math.sqrt(var(xs))


def cov(xs, ys):
    mx, my = mean(xs), mean(ys)
    return math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys)) / (len(xs) - 1)


def corr(xs, ys):
    c = cov(xs, ys) / (sd(xs) * sd(ys))
    return max(-1.0, min(1.0, c))


# ---------------------------------------------------------------- Shapiro-Wilk

def _poly(cc, x):
    ret = cc[0]
    if len(cc) > 1:
        p = x * cc[-1]
        for c in reversed(cc[1:-1]):
            p = (p + c) * x
        ret += p
    return ret


C1 = [0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056]
C2 = [0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633]
C3 = [0.5440, -0.39978, 0.025054, -6.714e-4]
C4 = [1.3822, -0.77857, 0.062767, -0.0020322]
C5 = [-1.5861, -0.31082, -0.083751, 0.0038915]
C6 = [-0.4803, -0.082676, 0.0030302]
G = [-2.273, 0.459]


def sw_coefficients(n):
    """Full antisymmetric coefficient vector, ascending order-statistic order."""
    half = n // 2
    if n == 3:
        upper = [math.sqrt(0.5)]
    else:
        m = [special.ndtri((i - 0.375) / (n + 0.25)) for i in range(1, half + 1)]
        summ2 = 2.0 * math.fsum(v * v for v in m)
        ssumm2 = math.sqrt(summ2)
        rsn = 1.0 / math.sqrt(n)
        a1 = _poly(C1, rsn) - m[0] / ssumm2
        upper = [a1]
        if n > 5:
            a2 = -m[1] / ssumm2 + _poly(C2, rsn)
            fac = math.sqrt((summ2 - 2 * m[0] ** 2 - 2 * m[1] ** 2) / (1 - 2 * a1 ** 2 - 2 * a2 ** 2))
            upper.append(a2)
            start = 2
        else:
            fac = math.sqrt((summ2 - 2 * m[0] ** 2) / (1 - 2 * a1 ** 2))
            start = 1
        upper += [-m[i] / fac for i in range(start, half)]
    # upper[0] belongs to the largest order statistic
    a = [0.0] * n
    for i, v in enumerate(upper):
        a[n - 1 - i] = v
        a[i] = -v
    return a


def sw_pvalue(w, n):
    if n == 3:
        p = 6.0 / math.pi * (math.asin(math.sqrt(w)) - math.pi / 3.0)
        return min(1.0, max(0.0, p))
    y = math.log(1.0 - w)
    if n <= 11:
        gamma = _poly(G, n)
        if y >= gamma:
            return 1e-99
        y = -math.log(gamma - y)
        m = _poly(C3, n)
        s = math.exp(_poly(C4, n))
    else:
        ln = math.log(n)
        m = _poly(C5, ln)
        s = math.exp(_poly(C6, ln))
    return 0.5 * math.erfc((y - m) / s / math.sqrt(2.0))


def shapiro_wilk(xs):
    x = sorted(xs)
    n = len(x)
    a = sw_coefficients(n)
    mu = mean(x)
    num = math.fsum(ai * (xi - mu) for ai, xi in zip(a, x)) ** 2
    den = math.fsum((xi - mu) ** 2 for xi in x)
    w = min(1.0, num / den)
    return w, sw_pvalue(w, n)


# ---------------------------------------------------------------- signal / backtest

WINDOW = 252
K = 2.0
ALPHA = 0.05


def rolling_sigma_at(rets, i, window=WINDOW):
    return sd(rets[i - window:i])


def momentum(rets, i, pairs=1):
    diffs = [rets[i - j] - rets[i - j - 1] for j in range(pairs)]
    slope = math.fsum(diffs) / pairs
    return {"slope": sig10(slope), "r0": sig10(rets[i]),
            "r1_forecast": sig10(slope * 1.0 + rets[i]), "t_span": 1,
            "lookback_pairs": pairs}


def signal_payload(dates, rets, i):
    sigma = rolling_sigma_at(rets, i)
    band = K * sigma
    trig = abs(rets[i]) > band
    return {"date": dates[i], "today_return": sig10(rets[i]), "sigma": sig10(sigma),
            "band": sig10(band), "k": K, "window": WINDOW, "triggered": trig,
            "direction": "long-next-day" if trig else "none",
            "expected_range": [0.0, sig10(band)] if trig else None,
            "momentum": momentum(rets, i)}


def analyze(path):
    bars = read_csv(path)
    rr = simple_returns(bars)
    dates = [d for d, _ in rr]
    rets = [r for _, r in rr]
    w, p = shapiro_wilk(rets)
    return envelope("analyze", {
        "ticker": ticker_of(path), "bars": len(bars),
        "first_date": bars[0][0], "last_date": bars[-1][0],
        "price_field": "close", "return_mode": "simple",
        "normality": {"sample": "returns", "n": len(rets), "w": sig10(w),
                      "p_value": sig10(p), "alpha": ALPHA, "reject_normality": p < ALPHA},
        "signal": signal_payload(dates, rets, len(rets) - 1)})


def correlate(path_a, path_b):
    ra = dict(simple_returns(read_csv(path_a)))
    rb = dict(simple_returns(read_csv(path_b)))
    common = sorted(set(ra) & set(rb))
    xs = [ra[d] for d in common]
    ys = [rb[d] for d in common]
    return envelope("correlate", {
        "ticker_a": ticker_of(path_a), "ticker_b": ticker_of(path_b),
        "return_mode": "simple", "n": len(common),
        "first_date": common[0], "last_date": common[-1],
        "correlation": sig10(corr(xs, ys))})


def backtest_events(ticker, rr, window=WINDOW, k=K):
    dates = [d for d, _ in rr]
    rets = [r for _, r in rr]
    events, open_triggers, evaluable = [], 0, 0
    for i in range(window, len(rets)):
        sigma = rolling_sigma_at(rets, i, window)
        if sigma == 0.0:
            continue
        evaluable += 1
        band = k * sigma
        if abs(rets[i]) > band:
            if i + 1 < len(rets):
                nxt = rets[i + 1]
                events.append({"ticker": ticker, "trigger_date": dates[i],
                               "trigger_return": rets[i], "band": band,
                               "next_date": dates[i + 1], "next_return": nxt,
                               "reverted_positive": nxt > 0.0,
                               "within_expected_range": 0.0 < nxt <= band})
            else:
                open_triggers += 1
    return events, open_triggers, evaluable


def backtest(paths):
    all_events, per, skipped, opened = [], [], [], 0
    for path in paths:
        t = ticker_of(path)
        rr = simple_returns(read_csv(path))
        if len(rr) < WINDOW + 1:
            skipped.append({"ticker": t, "reason": "InsufficientHistory"})
            continue
        ev, op, evaluable = backtest_events(t, rr)
        opened += op
        all_events += ev
        pos = sum(e["reverted_positive"] for e in ev)
        per.append({"ticker": t, "evaluable_dates": evaluable, "n_triggers": len(ev),
                    "open_triggers": op,
                    "p_positive": sig10(pos / len(ev)) if ev else None})
    per.sort(key=lambda p: p["ticker"])
    skipped.sort(key=lambda s: s["ticker"])
    all_events.sort(key=lambda e: (e["ticker"], e["trigger_date"]))
    n = len(all_events)
    pos = sum(e["reverted_positive"] for e in all_events)
    within = sum(e["within_expected_range"] for e in all_events)
    out_events = [dict(e, trigger_return=sig10(e["trigger_return"]), band=sig10(e["band"]),
                       next_return=sig10(e["next_return"])) for e in all_events]
    return envelope("backtest", {
        "config": {"window": WINDOW, "k": K, "return_mode": "simple", "price_field": "close"},
        "overlap_policy": "independent",
        "series": len(paths), "n_triggers": n, "open_triggers": opened,
        "p_positive": sig10(pos / n) if n else None,
        "p_within_range": sig10(within / n) if n else None,
        "mean_next_return": sig10(mean([e["next_return"] for e in all_events])) if n else None,
        "per_ticker": per, "skipped": skipped, "events": out_events})


def weekdays_between(a, b):
    """Weekdays in (a, b]."""
    import datetime as dt
    d0 = dt.date.fromisoformat(a)
    d1 = dt.date.fromisoformat(b)
    count = 0
    d = d0 + dt.timedelta(days=1)
    while d <= d1:
        if d.weekday() < 5:
            count += 1
        d += dt.timedelta(days=1)
    return count


def screen(manifest, data_dir, min_history=756, stale_days=5):
    tickers = []
    for ln in open(manifest).read().splitlines():
        ln = ln.split("#", 1)[0].strip()
        if ln:
            tickers.append(ln.upper())
    series = {}
    skipped = []
    for t in tickers:
        p = os.path.join(data_dir, t + ".csv")
        if not os.path.exists(p):
            skipped.append({"ticker": t, "reason": "MissingData"})
            continue
        series[t] = read_csv(p)
    as_of = max(b[-1][0] for b in series.values())
    cands = []
    for t, bars in series.items():
        if len(bars) < max(min_history, WINDOW + 2):
            skipped.append({"ticker": t, "reason": "InsufficientHistory"})
            continue
        if weekdays_between(bars[-1][0], as_of) > stale_days:
            skipped.append({"ticker": t, "reason": "Stale"})
            continue
        rr = simple_returns(bars)
        dates = [d for d, _ in rr]
        rets = [r for _, r in rr]
        i = len(rets) - 1
        sample = rets[i - WINDOW:i]
        sigma = sd(sample)
        if sigma == 0.0:
            skipped.append({"ticker": t, "reason": "ZeroVariance"})
            continue
        w, p = shapiro_wilk(sample)
        if p < ALPHA:
            skipped.append({"ticker": t, "reason": "NormalityRejected"})
            continue
        band = K * sigma
        if not abs(rets[i]) > band:
            skipped.append({"ticker": t, "reason": "InsideBand"})
            continue
        cands.append((abs(rets[i]) / band, t, {
            "ticker": t, "date": dates[i], "today_return": sig10(rets[i]),
            "sigma": sig10(sigma), "band": sig10(band),
            "breach_ratio": sig10(abs(rets[i]) / band),
            "normality": {"n": WINDOW, "w": sig10(w), "p_value": sig10(p)},
            "momentum": momentum(rets, i)}))
    cands.sort(key=lambda c: (-c[0], c[1]))
    skipped.sort(key=lambda s: s["ticker"])
    return envelope("screen", {
        "as_of": as_of,
        "config": {"window": WINDOW, "k": K, "alpha": ALPHA, "return_mode": "simple",
                   "min_history": min_history, "stale_days": stale_days,
                   "normality_sample": "window"},
        "candidates": [c[2] for c in cands], "skipped": skipped})


# ---------------------------------------------------------------- main

def write(path, text):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", newline="\n") as f:
        f.write(text)


def main():
    # Return vector beside the 250-bar fixture, full precision.
    short = os.path.join(FIX, "short", "AAPL.csv")
    rr = simple_returns(read_csv(short))
    write(os.path.join(FIX, "short", "AAPL.returns.csv"),
          "Date,Return\n" + "".join(f"{d},{r!r}\n" for d, r in rr))

    # Shapiro-Wilk reference values over committed samples.
    rng = np.random.default_rng(50)
    n50 = [float(v) for v in rng.standard_normal(50)]
    write(os.path.join(GOLD, "sw_n50_sample.txt"), "".join(f"{v!r}\n" for v in n50))
    cases = []

    def add(name, xs):
        w, p = shapiro_wilk(xs)
        sw, sp = stats.shapiro(xs)
        cases.append({"name": name, "sample": xs, "w": w, "p_value": p,
                      "scipy_w": float(sw), "scipy_p": float(sp)})

    add("normal_n50", n50)
    add("hand_n3", [1.0, 2.0, 3.0])
    for n in [4, 5, 6, 7, 11, 12, 20, 100, 500, 2000]:
        add(f"normal_n{n}", [float(v) for v in rng.standard_normal(n)])
    for n in [8, 30, 200]:
        add(f"exponential_n{n}", [float(v) for v in rng.exponential(1.0, n)])
    add("uniform_n40", [float(v) for v in rng.uniform(0, 1, 40)])
    add("ties_n10", [1.0, 1.0, 2.0, 2.0, 2.0, 3.0, 3.0, 4.0, 5.0, 5.0])
    for c in cases:
        assert abs(c["w"] - c["scipy_w"]) < 1e-5, c["name"]
        assert abs(c["p_value"] - c["scipy_p"]) < 1e-3, c["name"]
    write(os.path.join(GOLD, "shapiro_wilk.json"), json.dumps(cases, indent=1) + "\n")

    # Coefficient vectors for a few n (ascending order-statistic order).
    coef = {str(n): sw_coefficients(n) for n in [3, 4, 5, 6, 10, 11, 12, 50]}
    write(os.path.join(GOLD, "sw_coefficients.json"), json.dumps(coef, indent=1) + "\n")

    # Standard-normal quantiles for the inverse-CDF routine.
    probs = [1e-300, 1e-20, 1e-10, 1e-5, 0.001, 0.01, 0.025, 0.1, 0.3, 0.425, 0.5, 0.575,
             0.6905, 0.75, 0.9, 0.975, 0.99, 0.999, 1 - 1e-10]
    write(os.path.join(GOLD, "normal_quantiles.json"),
          json.dumps([[p, float(special.ndtri(p))] for p in probs], indent=1) + "\n")

    # Cross-series correlation of the index-style pair.
    ra = dict(simple_returns(read_csv(os.path.join(FIX, "AAPL.csv"))))
    rb = dict(simple_returns(read_csv(os.path.join(FIX, "IXIC.csv"))))
    common = sorted(set(ra) & set(rb))
    xs = [ra[d] for d in common]
    ys = [rb[d] for d in common]
    write(os.path.join(GOLD, "stats.json"), json.dumps({
        "aapl_ixic_correlation": corr(xs, ys), "aapl_ixic_n": len(common),
        "aapl_ixic_covariance": cov(xs, ys)}, indent=1) + "\n")

    # End-to-end CLI goldens.
    F = lambda *p: os.path.join(FIX, *p)
    cli = [
        ("analyze_aapl", ["analyze", "data/fixtures/AAPL.csv"], analyze(F("AAPL.csv"))),
        ("analyze_rimm", ["analyze", "data/fixtures/RIMM.csv"], analyze(F("RIMM.csv"))),
        ("correlate_aapl_ixic", ["correlate", "data/fixtures/AAPL.csv", "data/fixtures/IXIC.csv"],
         correlate(F("AAPL.csv"), F("IXIC.csv"))),
        ("correlate_self", ["correlate", "data/fixtures/AAPL.csv", "data/fixtures/AAPL.csv"],
         correlate(F("AAPL.csv"), F("AAPL.csv"))),
        ("backtest_three", ["backtest", "data/fixtures/AAPL.csv", "data/fixtures/RIMM.csv",
                            "data/fixtures/YHOO.csv"],
         backtest([F("AAPL.csv"), F("RIMM.csv"), F("YHOO.csv")])),
        ("backtest_flat", ["backtest", "data/fixtures/FLAT.csv"], backtest([F("FLAT.csv")])),
        ("screen_universe", ["screen", "data/fixtures/universe.txt", "--data-dir",
                             "data/fixtures/universe"],
         screen(F("universe.txt"), F("universe"))),
    ]
    index = []
    for name, args, env in cli:
        write(os.path.join(GOLD, "cli", name + ".json"), dump(env))
        index.append({"name": name, "args": args + ["--deterministic"], "golden": f"cli/{name}.json"})
    write(os.path.join(GOLD, "cli_cases.json"), json.dumps(index, indent=1) + "\n")

    p = backtest([F("AAPL.csv"), F("RIMM.csv"), F("YHOO.csv")])["payload"]
    s = screen(F("universe.txt"), F("universe"))["payload"]
    print("correlation", corr(xs, ys), "n", len(common), file=sys.stderr)
    print("backtest n", p["n_triggers"], "p_positive", p["p_positive"], file=sys.stderr)
    print("screen", [c["ticker"] for c in s["candidates"]], s["skipped"], file=sys.stderr)


if __name__ == "__main__":
    main()
