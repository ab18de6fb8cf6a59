#!/usr/bin/env python3
"""Independent exhaustive-scan oracle for the fixture corpus crawl.

Scans every page of a fixture corpus with Python regexes and html.parser (no
shared code with the C++ implementation), replays the sounding traversal
rules, and writes:
  <out>/einstein.trace          golden trace text
  <out>/einstein.expected.json  node table, edge list, mention table, index
                                values and graph metrics (networkx)

Usage: sounding_oracle.py <corpus_dir> <out_dir>
"""
import html.parser
import json
import math
import os
import re
import sys
import urllib.parse
from collections import deque

import networkx as nx

SEED = "Albert_Einstein"
FULL_NAME = "Albert Einstein"
SHORT_NAME = "Einstein"
ANCHORS = ["physics", "relativity"]
INITIALS = ["A. Einstein", "Einstein, A."]
RECOGNIZED = ["Publications", "References", "Further reading", "Bibliography", "Works"]
TOP_K = 10


def norm_title(t):
    t = t.split("#", 1)[0]
    t = t.replace(" ", "_")
    t = re.sub(r"_+", "_", t).strip("_")
    if t and "a" <= t[0] <= "z":
        t = t[0].upper() + t[1:]
    return t


def squash(s):
    return " ".join(s.split())


WORD = r"0-9A-Za-z\u0080-\U0010FFFF"


def pattern_regex(p):
    p = squash(p)
    body = re.escape(p)
    if re.match(r"[0-9A-Za-z]", p[0]):
        body = rf"(?<![{WORD}])" + body
    if re.match(r"[0-9A-Za-z]", p[-1]):
        body = body + rf"(?![{WORD}])"
    return body


def count_occurrences(text, patterns):
    pats = sorted({squash(p) for p in patterns if squash(p)}, key=lambda p: -len(p))
    if not pats:
        return 0
    rx = re.compile("|".join(pattern_regex(p) for p in pats), re.IGNORECASE | re.ASCII)
    return len(rx.findall(squash(text)))


def has_anchor(body):
    return count_occurrences(body, [SHORT_NAME] + ANCHORS) > 0


class HtmlScan(html.parser.HTMLParser):
    BLOCK = {"p", "div", "li", "br", "ul", "ol", "tr", "td", "th", "table", "h1", "h2", "h3",
             "h4", "h5", "h6", "dd", "dt", "dl", "section", "blockquote"}

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.links = []
        self.body = []
        self.sections = []
        self.cur = None
        self.heading = None
        self.skip = 0

    def handle_starttag(self, tag, attrs):
        if tag in ("script", "style"):
            self.skip += 1
            return
        if tag in self.BLOCK:
            self._text(" ")
        m = re.fullmatch(r"h([1-6])", tag)
        if m:
            self.heading = (int(m.group(1)), [])
        if tag == "a":
            href = dict(attrs).get("href") or ""
            if href.startswith("/wiki/"):
                self.links.append(urllib.parse.unquote(href[len("/wiki/"):]))

    def handle_endtag(self, tag):
        if tag in ("script", "style"):
            self.skip -= 1
            return
        m = re.fullmatch(r"h([1-6])", tag)
        if m and self.heading:
            level, parts = self.heading
            self.heading = None
            name = squash("".join(parts))
            name = re.sub(r"\s*\[edit\]$", "", name)
            if self.cur and level <= self.cur[0]:
                self.sections.append((self.cur[1], self.cur[2]))
                self.cur = None
            match = [r for r in RECOGNIZED if r.lower() == name.lower()]
            if self.cur is not None:
                self.cur[2].append(" " + name + " ")
            elif match:
                self.cur = (level, match[0], [])
            else:
                self.body.append(" " + name + " ")
            return
        if tag in self.BLOCK:
            self._text(" ")

    def _text(self, s):
        if self.heading is not None:
            self.heading[1].append(s)
        elif self.cur is not None:
            self.cur[2].append(s)
        else:
            self.body.append(s)

    def handle_data(self, data):
        if self.skip:
            return
        self._text(data)

    def result(self):
        if self.cur:
            self.sections.append((self.cur[1], self.cur[2]))
        return squash("".join(self.body)), [(n, squash("".join(t))) for n, t in self.sections]


def clean_links(title, raw):
    out = []
    for l in raw:
        if l.startswith(("http://", "https://", "//", "#")):
            continue
        l = norm_title(l)
        if not l:
            continue
        if ":" in l.split("/", 1)[0]:
            continue
        if l == title or l in out:
            continue
        out.append(l)
    return out


def load(corpus):
    with open(os.path.join(corpus, "index.json"), encoding="utf-8") as f:
        manifest = json.load(f)
    pages = {}
    for e in manifest["pages"]:
        with open(os.path.join(corpus, e["file"]), encoding="utf-8") as f:
            raw = f.read()
        title = e["title"]
        if raw.lstrip().startswith("{"):
            rec = json.loads(raw)
            if "redirect" in rec:
                pages[title] = {"redirect": norm_title(rec["redirect"])}
                continue
            bib = []
            for s in rec["bibliography"]:
                match = [r for r in RECOGNIZED if r.lower() == squash(s["section"]).lower()]
                if match:
                    bib.append((match[0], squash(s["text"])))
            pages[title] = {"body": squash(rec["body_text"]), "links": clean_links(title, rec["links"]),
                            "bib": bib}
        else:
            p = HtmlScan()
            p.feed(raw)
            body, bib = p.result()
            pages[title] = {"body": body, "links": clean_links(title, p.links), "bib": bib}
    return pages


def mentions(page):
    return sum(count_occurrences(t, [FULL_NAME] + INITIALS) for _, t in page["bib"])


def crawl(pages):
    def resolve(t):
        for _ in range(4):
            p = pages.get(t)
            if p is None:
                return t, None
            if "redirect" not in p:
                return t, p
            t = p["redirect"]
        raise RuntimeError("redirect loop")

    nodes = {}  # title -> dict
    order = []
    edges = []
    edge_set = set()
    alias = {}
    fetched = set()

    def add_node(t):
        nodes[t] = {"title": t, "discovery_index": len(order), "status": "undiscovered", "mentions": None}
        order.append(t)

    def add_edge(a, b, kind):
        if a == b or (a, b) in edge_set:
            return
        edge_set.add((a, b))
        edges.append({"from": a, "to": b, "kind": kind})

    seed_title, seed = resolve(SEED)
    seed_m = mentions(seed)
    add_node(seed_title)
    nodes[seed_title].update(status="seed", mentions=seed_m)
    fetched.add(seed_title)
    fifo = deque()

    def expand(src, links):
        for l in links:
            l = alias.get(l, l)
            if l == src:
                continue
            if l not in nodes:
                add_node(l)
                fifo.append(l)
                add_edge(src, l, "forward")
            else:
                add_edge(src, l, "back")

    expand(seed_title, seed["links"])
    trace = [f"1: {seed_title}", f"SCI Links (1): {seed_m}"]
    step = 0
    table = [(seed_title, seed_m)] if seed_m > 0 else []
    while fifo:
        t = fifo.popleft()
        if t in fetched:
            continue
        canon, page = resolve(t)
        if canon != t:
            # The corpus only exercises the rename case (target not yet known).
            assert canon not in nodes
            alias[t] = canon
            nodes[canon] = nodes.pop(t)
            nodes[canon]["title"] = canon
            order[order.index(t)] = canon
            for e in edges:
                if e["to"] == t:
                    e["to"] = canon
            t = canon
        fetched.add(t)
        node = nodes[t]
        if page is None or not has_anchor(page["body"]):
            node["status"] = "leaf"
            sign = "-"
        else:
            m = mentions(page)
            node["mentions"] = m
            if m >= 1:
                node["status"] = "expanded"
                table.append((t, m))
                sign = "+"
                expand(t, page["links"])
            else:
                node["status"] = "endnote"
                sign = "-"
        trace.append(f"{step} Rd {sign}: {t}")
        step += 1
    return [nodes[t] for t in order], edges, table, trace


def index(table):
    counts = sorted((m for _, m in table if m > 0), reverse=True)
    n = len(counts)
    wh = 0
    for i, c in enumerate(counts, start=1):
        if c >= i:
            wh = i
    raw = wh * math.sqrt(n)
    return n, wh, raw, int(math.floor(raw + 0.5))


def metrics(node_list, edges):
    g = nx.Graph()
    g.add_nodes_from(n["title"] for n in node_list)
    g.add_edges_from((e["from"], e["to"]) for e in edges if e["from"] != e["to"])
    largest = max(nx.connected_components(g), key=len)
    deg = sorted(g.degree(), key=lambda kv: (-kv[1], kv[0]))[:TOP_K]
    return {
        "node_count": g.number_of_nodes(),
        "edge_count": g.number_of_edges(),
        "average_degree": 2 * g.number_of_edges() / g.number_of_nodes(),
        "diameter": nx.diameter(g.subgraph(largest)),
        "average_clustering": nx.average_clustering(g),
        "top_nodes": [[t, d] for t, d in deg],
    }


def main():
    corpus, out = sys.argv[1], sys.argv[2]
    pages = load(corpus)
    node_list, edges, table, trace = crawl(pages)
    ordered = sorted(table, key=lambda tm: (-tm[1], tm[0]))
    n, wh, raw, rounded = index(table)
    expected = {
        "seed": SEED,
        "corpus_pages": len(pages),
        "nodes": node_list,
        "edges": edges,
        "ref_sequence": [{"title": t, "mentions": m} for t, m in ordered],
        "N": n,
        "WH": wh,
        "wi_raw": raw,
        "wi_rounded": rounded,
        "plus_events": sum(1 for l in trace[2:] if " Rd +: " in l),
        "metrics": metrics(node_list, edges),
    }
    with open(os.path.join(out, "einstein.trace"), "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(trace) + "\n")
    with open(os.path.join(out, "einstein.expected.json"), "w", encoding="utf-8", newline="\n") as f:
        json.dump(expected, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
