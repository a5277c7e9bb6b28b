#!/usr/bin/env python3
"""Independent recomputation of the golden audit over data/synthetic/.

Reads the raw record files, applies majority vote, maps stances to leanings,
scores each SERP, and runs the t-tests with scipy. Its output is frozen into
tests/acceptance/golden_expected.hpp; re-run with --emit-header after changing
the dataset.
"""

import collections
import csv
import math
import pathlib
import sys

from scipy import stats

ROOT = pathlib.Path(__file__).resolve().parents[2]
DATA = ROOT / "data" / "synthetic"
P = 0.8
K = 10


def read_tsv(path):
    with open(path, newline="") as f:
        rows = [r for r in csv.reader(f, delimiter="\t") if r and not r[0].startswith("#")]
    return rows[1:]


def majority(votes):
    c = collections.Counter(votes)
    stance, n = c.most_common(1)[0]
    return stance if 2 * n > len(votes) else "unresolved"


def load():
    topics = {r[0]: r[3] for r in read_tsv(DATA / "topics.tsv")}
    serps = collections.defaultdict(list)
    for e, loc, t, rank, doc, _ in read_tsv(DATA / "serps.tsv"):
        serps[(e, loc, t)].append((int(rank), doc))
    labels = {}
    for loc in ("UK", "US"):
        votes = collections.defaultdict(list)
        for doc, _, s in read_tsv(DATA / f"judgments_{loc}.tsv"):
            votes[doc].append(s)
        labels[loc] = {d: majority(v) for d, v in votes.items()}
    return topics, serps, labels


def leaning(stance, pro):
    other = "liberal" if pro == "conservative" else "conservative"
    return {"pro": pro, "against": other}.get(stance)


def p_at_k(g):
    return sum(g[:K]) / K


def rbp(g):
    return (1 - P) * sum(x * P ** i for i, x in enumerate(g))


def dcg(g):
    return sum(x / math.log2(i + 2) for i, x in enumerate(g[:K]))


METRICS = [("precision", p_at_k), ("rbp", rbp), ("dcg", dcg)]


def compute():
    topics, serps, labels = load()
    beta = {}
    perf = {}
    for (e, loc, t), results in serps.items():
        docs = [d for _, d in sorted(results)]
        stances = [labels[loc].get(d) for d in docs]
        gc = [1.0 if leaning(s, topics[t]) == "conservative" else 0.0 for s in stances]
        gl = [1.0 if leaning(s, topics[t]) == "liberal" else 0.0 for s in stances]
        rel = [1.0 if s in ("pro", "against", "neutral") else 0.0 for s in stances]
        for name, fn in METRICS:
            beta[(e, loc, t, name)] = fn(gc) - fn(gl)
            perf[(e, loc, t, name)] = fn(rel)
    return sorted(topics), beta, perf


def main():
    tids, beta, perf = compute()
    cells = [(e, l) for e in ("engine1", "engine2") for l in ("UK", "US")]
    lines = []
    for e, l in cells:
        for name, _ in METRICS:
            b = [beta[(e, l, t, name)] for t in tids]
            r = stats.ttest_1samp(b, 0.0)
            mb = sum(b) / len(b)
            mab = sum(abs(x) for x in b) / len(b)
            lines.append(("existence_mb", f"{e}_{l}", name, mb, mab, r.statistic, r.pvalue))
    pairs = [(("engine1", l), ("engine2", l)) for l in ("UK", "US")]
    pairs += [((e, "UK"), (e, "US")) for e in ("engine1", "engine2")]
    paired = []
    for a, b in pairs:
        for name, _ in METRICS:
            xa = [beta[(*a, t, name)] for t in tids]
            xb = [beta[(*b, t, name)] for t in tids]
            r = stats.ttest_rel(xa, xb)
            ra = stats.ttest_rel([abs(x) for x in xa], [abs(x) for x in xb])
            pa = [perf[(*a, t, name)] for t in tids]
            pb = [perf[(*b, t, name)] for t in tids]
            try:
                rp = stats.ttest_rel(pa, pb)
                perf_res = (rp.statistic, rp.pvalue)
            except Exception:
                perf_res = (float("nan"), float("nan"))
            paired.append((f"{a[0]}_{a[1]}~{b[0]}_{b[1]}", name, r.statistic, r.pvalue,
                           ra.statistic, ra.pvalue, *perf_res))

    if "--emit-header" in sys.argv:
        out = ["// Generated by tests/oracles/golden_oracle.py from data/synthetic/. Do not edit.",
               "#pragma once", "", "namespace golden {", "",
               "struct Existence { const char* cell; const char* metric; double mb; double mab;"
               " double t; double p; };", "",
               "inline constexpr Existence kExistence[] = {"]
        for _, cell, name, mb, mab, t, p in lines:
            out.append(f'    {{"{cell}", "{name}", {float(mb)!r}, {float(mab)!r}, {float(t)!r}, {float(p)!r}}},')
        out += ["};", "",
                "struct Paired { const char* pair; const char* metric; double t_mb; double p_mb;"
                " double t_mab; double p_mab; double t_perf; double p_perf; };", "",
                "inline constexpr Paired kPaired[] = {"]
        for pair, name, t1, p1, t2, p2, t3, p3 in paired:
            out.append(f'    {{"{pair}", "{name}", {float(t1)!r}, {float(p1)!r}, {float(t2)!r}, {float(p2)!r}, {float(t3)!r}, {float(p3)!r}}},')
        out += ["};", "", "}  // namespace golden", ""]
        text = "\n".join(out).replace("nan", "__builtin_nan(\"\")")
        (ROOT / "tests" / "acceptance" / "golden_expected.hpp").write_text(text)
    for row in lines:
        print(*row)
    for row in paired:
        print(*row)


if __name__ == "__main__":
    main()
