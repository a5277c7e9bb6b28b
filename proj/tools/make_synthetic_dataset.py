#!/usr/bin/env python3
"""Writes the synthetic golden dataset under data/synthetic/.

2 engines x 2 locations x 12 topics, top-10 SERPs, three scripted crowd
judgments per document. UK SERPs put conservative-leaning documents above
liberal ones for every topic; US SERPs come in mirrored topic pairs so the
conservative and liberal scores largely cancel. Deterministic: running it
twice produces identical files.

Pattern codes per rank:
  C  conservative-leaning document     L  liberal-leaning document
  N  neutral (relevant, no leaning)    X  not relevant
  U  three-way worker split (unresolved after majority vote)
"""

import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "synthetic"

TOPICS = [
    ("t01", "Minimum wage", "Should the federal minimum wage be increased?", "liberal"),
    ("t02", "Gun control", "Should more gun control laws be enacted?", "liberal"),
    ("t03", "School vouchers", "Should parents be given school vouchers?", "conservative"),
    ("t04", "Death penalty", "Should the death penalty be legal?", "conservative"),
    ("t05", "Universal basic income", "Should a universal basic income be adopted?", "liberal"),
    ("t06", "Border wall", "Should a wall be built along the southern border?", "conservative"),
    ("t07", "Voter ID", "Should photo ID be required to vote?", "conservative"),
    ("t08", "Carbon tax", "Should a carbon tax be introduced?", "liberal"),
    ("t09", "Right to work", "Should states adopt right-to-work laws?", "conservative"),
    ("t10", "Student loan forgiveness", "Should student loan debt be forgiven?", "liberal"),
    ("t11", "Corporate tax cuts", "Should corporate tax rates be lowered?", "conservative"),
    ("t12", "Single-payer health care", "Should the US adopt single-payer health care?", "liberal"),
]

US_BASE = ["CLNNXXXXXX", "CCLNXLXXXX", "NCXLLCXXXX", "CNLXXXCXXX", "CCCLNLXXXX", "LCNCXXXXXX"]


def mirror(p):
    return p.translate(str.maketrans("CL", "LC"))


def pad(p):
    return (p + "X" * 10)[:10]


def uk_engine1(j):
    a, b = 2 + j % 3, j % 2
    p = pad("C" * a + "N" + "L" * b + "N")
    if j == 5:
        p = p[:9] + "U"
    return p


def uk_engine2(j):
    a, b = 3 + j % 2, 1 if j % 3 == 0 else 0
    return pad("N" + "C" * a + "X" + "L" * b)


def us_engine1(j):
    base = US_BASE[j // 2]
    return base if j % 2 == 0 else mirror(base)


def us_engine2(j):
    if j == 11:
        return "LXNCXXXX"  # short SERP (8 results), not quite mirrored
    base = US_BASE[(j // 2 + 1) % len(US_BASE)]
    return base if j % 2 == 0 else mirror(base)


PATTERNS = {
    ("engine1", "UK"): uk_engine1,
    ("engine2", "UK"): uk_engine2,
    ("engine1", "US"): us_engine1,
    ("engine2", "US"): us_engine2,
}


def stance_for(code, pro_leaning):
    if code == "C":
        return "pro" if pro_leaning == "conservative" else "against"
    if code == "L":
        return "pro" if pro_leaning == "liberal" else "against"
    return {"N": "neutral", "X": "not_relevant"}[code]


def votes(code, pro_leaning, i):
    if code == "U":
        return ["pro", "against", "neutral"]
    s = stance_for(code, pro_leaning)
    alt = "not_relevant" if s == "neutral" else "neutral"
    return [[s, s, s], [s, s, alt], [s, alt, s], [s, s, s]][i % 4]


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    with open(OUT / "topics.tsv", "w", newline="\n") as f:
        f.write("topic_id\ttitle\tquery\tpro_leaning\n")
        for t in TOPICS:
            f.write("\t".join(t) + "\n")

    judgments = {"UK": [], "US": []}
    counter = {"UK": 0, "US": 0}
    with open(OUT / "serps.tsv", "w", newline="\n") as f:
        f.write("engine\tlocation\ttopic_id\trank\tdoc_id\turl\n")
        for (engine, loc), fn in PATTERNS.items():
            for j, (tid, _, _, leaning) in enumerate(TOPICS):
                for rank, code in enumerate(fn(j), start=1):
                    doc = f"{loc.lower()}-{engine[-1]}-{tid}-r{rank:02d}"
                    url = f"https://news.example.org/{loc.lower()}/e{engine[-1]}/{tid}/{rank}"
                    f.write(f"{engine}\t{loc}\t{tid}\t{rank}\t{doc}\t{url}\n")
                    i = counter[loc]
                    counter[loc] += 1
                    workers = [f"{loc.lower()}-w{(i + k) % 6 + 1}" for k in range(3)]
                    for w, s in zip(workers, votes(code, leaning, i)):
                        judgments[loc].append((doc, w, s))

    # One US document was only judged twice (a dropped assignment).
    dropped = judgments["US"].pop()
    assert dropped[0].endswith("t12-r08")

    for loc, rows in judgments.items():
        with open(OUT / f"judgments_{loc}.tsv", "w", newline="\n") as f:
            f.write("doc_id\tworker_id\tstance\n")
            for row in rows:
                f.write("\t".join(row) + "\n")

    with open(OUT / "provenance.txt", "w", newline="\n") as f:
        f.write("# synthetic dataset written by tools/make_synthetic_dataset.py\n")
        f.write("channel=news\ncrawl_date=synthetic\n")


if __name__ == "__main__":
    main()
