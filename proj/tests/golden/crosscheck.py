#!/usr/bin/env python3
"""Independent re-derivation of the mini-corpus golden artifacts.

Re-implements tokenization, stop-word filtering, pair counting and WABCD in
plain Python, takes clustering/diameter from networkx, and compares the
results with an output directory written by `ingnet all`.

usage: crosscheck.py DATA_DIR OUT_DIR
"""
import itertools
import json
import math
import string
import sys
from collections import Counter, defaultdict
from fractions import Fraction

import networkx as nx

SEPARATORS = set(string.whitespace) | (set(string.punctuation) - {"."})


def tokenize(line):
    tokens, run, run_numeric = [], "", False

    def flush():
        if run and set(run) != {"."}:
            tokens.append(run)

    for ch in line:
        if ord(ch) < 0x20 or ord(ch) == 0x7F or ch in SEPARATORS:
            flush()
            run = ""
            continue
        numeric = ch.isascii() and (ch.isdigit() or ch == ".")
        if run and numeric != run_numeric:
            flush()
            run = ""
        run_numeric = numeric
        run += ch.lower() if ch.isascii() else ch
    flush()
    return tokens


def is_numeric(tok):
    return all(c.isdigit() or c == "." for c in tok)


def load_stopwords(path):
    words = set()
    for raw in open(path, encoding="utf-8"):
        line = raw.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return words


def wabcd(names, weight):
    n = len(names)
    comms = {i: [i] for i in range(n)}
    prev = None
    trace = []
    for pass_no in itertools.count(1):
        used, merges, best_pass = set(), [], None
        for a in sorted(comms):
            if a in used:
                continue
            best, best_b, best_edges = None, None, 0
            for b in sorted(comms):
                if b == a or b in used:
                    continue
                ws = [weight[(min(x, y), max(x, y))] for x in comms[a] for y in comms[b]
                      if (min(x, y), max(x, y)) in weight]
                if not ws:
                    continue
                avg = Fraction(sum(ws), len(ws))
                if best is None or avg > best:
                    best, best_b, best_edges = avg, b, len(ws)
            if best is None:
                continue
            used |= {a, best_b}
            merges.append((a, best_b, best, best_edges))
            if best_pass is None or best > best_pass:
                best_pass = best
        accepted = bool(merges) and not (prev is not None and best_pass < prev)
        if accepted:
            for a, b, _, _ in merges:
                comms[a] += comms.pop(b)
            prev = best_pass
        trace.append({
            "accepted": accepted,
            "best_average": None if best_pass is None else float(best_pass),
            "community_count": len(comms),
            "merges": [{"absorbed": names[b], "average": float(avg), "edges": e, "into": names[a]}
                       for a, b, avg, e in merges],
            "pass": pass_no,
        })
        if not accepted:
            return trace, comms


def main():
    data, out = sys.argv[1], sys.argv[2]
    failures = []

    def check(label, ok):
        if not ok:
            failures.append(label)

    stop = load_stopwords(f"{data}/stopwords.txt")
    recipes = [json.loads(l) for l in open(f"{data}/mini_corpus.jsonl", encoding="utf-8") if l.strip()]
    normalized = {}
    for r in recipes:
        names = set()
        for line in r["ingredient_lines"]:
            kept = [t for t in tokenize(line) if not is_numeric(t) and t not in stop]
            if kept:
                names.add(" ".join(kept))
        normalized[r["id"]] = names

    written = [json.loads(l) for l in open(f"{out}/recipes.normalized.jsonl", encoding="utf-8")]
    check("normalized ingredients", {r["id"]: set(r["ingredients"]) for r in written} == normalized)
    check("flagged recipes", sorted(r["id"] for r in written if r.get("flagged"))
          == sorted(k for k, v in normalized.items() if not v))

    pairs = Counter()
    for names in normalized.values():
        for u, v in itertools.combinations(sorted(names), 2):
            pairs[(u, v)] += 1
    nodes = sorted(set().union(*normalized.values()))
    edges_tsv = [l.rstrip("\n").split("\t") for l in open(f"{out}/edges.tsv", encoding="utf-8")]
    check("edge list", [(u, v, int(w)) for u, v, w in edges_tsv]
          == sorted((u, v, w) for (u, v), w in pairs.items()))
    check("conservation", sum(pairs.values()) == sum(math.comb(len(s), 2) for s in normalized.values()))

    g = nx.Graph()
    g.add_nodes_from(nodes)
    for (u, v), w in pairs.items():
        g.add_edge(u, v, weight=w)
    stats = json.load(open(f"{out}/stats.json"))
    check("node_count", stats["node_count"] == g.number_of_nodes())
    check("edge_count", stats["edge_count"] == g.number_of_edges())
    check("triangles", stats["triangle_count"] == sum(nx.triangles(g).values()) // 3)
    check("avg clustering", abs(stats["avg_clustering_coefficient"] - nx.average_clustering(g)) < 1e-12)
    check("transitivity", abs(stats["fraction_closed_triangles"] - nx.transitivity(g)) < 1e-12)
    largest = max(nx.connected_components(g), key=lambda c: (len(c), -min(nodes.index(x) for x in c)))
    check("diameter", stats["diameter"] == nx.diameter(g.subgraph(largest)))
    check("avg weight", abs(stats["avg_edge_weight"] - sum(pairs.values()) / len(pairs)) < 1e-12)
    top = max(pairs.values())
    u, v = min(k for k, w in pairs.items() if w == top)
    check("strongest edge", stats["strongest_edge"] == {"u": u, "v": v, "weight": top})

    hist = Counter(d for _, d in g.degree())
    csv_rows = [l.strip().split(",") for l in open(f"{out}/degree_histogram.csv")][1:]
    check("degree histogram", {int(d): int(c) for d, c in csv_rows} == dict(hist))

    index = {name: i for i, name in enumerate(nodes)}
    weight = {(index[u], index[v]): w for (u, v), w in pairs.items()}
    trace, comms = wabcd(nodes, weight)
    written_trace = [json.loads(l) for l in open(f"{out}/wabcd_trace.jsonl", encoding="utf-8")]
    check("wabcd trace", written_trace == trace)
    wabcd_part = json.load(open(f"{out}/partition_wabcd.json"))
    check("wabcd partition", sorted(sorted(v) for v in wabcd_part.values())
          == sorted(sorted(nodes[i] for i in m) for m in comms.values()))

    louvain_part = json.load(open(f"{out}/partition_louvain.json"))
    communities = [set(v) for v in louvain_part.values()]
    levels = json.load(open(f"{out}/louvain_levels.json"))["level_modularity"]
    q = nx.community.modularity(g, communities, weight="weight")
    check("louvain modularity", abs(levels[-1] - q) < 1e-12)
    check("louvain levels monotone", all(b >= a - 1e-12 for a, b in zip(levels, levels[1:])))

    overlap_path = f"{out}/overlap.json"
    try:
        overlap = json.load(open(overlap_path))
    except FileNotFoundError:
        overlap = None
    if overlap is not None:
        labels = overlap["labels"]
        sets = [set().union(*([normalized[r["id"]] for r in recipes if r.get("category") == lab] or [set()]))
                for lab in labels]
        tally = defaultdict(int)
        for name in set().union(*sets):
            tally["&".join(lab for lab, s in zip(labels, sets) if name in s)] += 1
        expected = {"&".join(c): tally.get("&".join(c), 0)
                    for k in range(1, len(labels) + 1) for c in itertools.combinations(labels, k)}
        check("overlap regions", overlap["regions"] == expected)

    for f in failures:
        print(f"MISMATCH: {f}")
    print("crosscheck:", "ok" if not failures else f"{len(failures)} mismatches")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
