"""Report figures (matplotlib, file output only)."""
from __future__ import annotations

from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402

STATUS_COLORS = {"EMBEDDABLE": "#4c956c", "NOT_EMBEDDABLE": "#c1121f", "INCONCLUSIVE": "#adb5bd"}


def _multigraph_axes(ax, nodes, edges, title, loop_label=True):
    """Draw a labelled multigraph; parallel edges fan out, loops become small circles."""
    g = nx.MultiGraph()
    g.add_nodes_from(nodes)
    for label, u, v in edges:
        g.add_edge(u, v, label=label)
    pos = nx.circular_layout(g) if len(nodes) > 2 else {n: (i * 2.0 - 1.0, 0.0) for i, n in enumerate(nodes)}
    nx.draw_networkx_nodes(g, pos, ax=ax, node_size=420, node_color="#e9ecef", edgecolors="#343a40")
    nx.draw_networkx_labels(g, pos, ax=ax, font_size=8)
    seen: Counter = Counter()
    for label, u, v in edges:
        key = frozenset((u, v))
        k = seen[key]
        seen[key] += 1
        if u == v:
            x, y = pos[u]
            r = 0.12 + 0.05 * k
            ax.add_patch(plt.Circle((x, y + r), r, fill=False, color="#1d3557"))
            if loop_label:
                ax.annotate(label, (x, y + 2 * r), fontsize=7, ha="center")
            continue
        rad = 0.0 if k == 0 else (0.15 * ((k + 1) // 2)) * (1 if k % 2 else -1)
        ax.annotate("", xy=pos[v], xytext=pos[u],
                    arrowprops=dict(arrowstyle="-", color="#1d3557", connectionstyle=f"arc3,rad={rad}",
                                    shrinkA=10, shrinkB=10))
        mx = (pos[u][0] + pos[v][0]) / 2 - rad * (pos[v][1] - pos[u][1])
        my = (pos[u][1] + pos[v][1]) / 2 + rad * (pos[v][0] - pos[u][0])
        ax.annotate(label, (mx, my), fontsize=7, ha="center", color="#457b9d")
    ax.set_title(title, fontsize=10)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.margins(0.2)


def plot_dual_graph(dual: dict, path: Path, title: str = "dual graph") -> Path:
    """``dual`` is the JSON form: {vertices, edges: [{face, endpoints}]}."""
    fig, ax = plt.subplots(figsize=(5, 5))
    edges = [(d["face"], *d["endpoints"]) for d in dual["edges"]]
    _multigraph_axes(ax, dual["vertices"], edges, title)
    return _save(fig, path)


def plot_link_graph(link: dict, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 5))
    edges = [(f"{f}:{i}", a, b) for (f, i), a, b in ((tuple(x["corner"]), x["ends"][0], x["ends"][1]) for x in link["links"])]
    _multigraph_axes(ax, link["nodes"], edges, f"link of {link['vertex']}", loop_label=False)
    return _save(fig, path)


def plot_scan(rows: list[dict], path: Path, title: str = "edge-pair identifications") -> Path:
    """Verdict per candidate pair, grouped by axis, with totals."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4), gridspec_kw={"width_ratios": [3, 1]})
    for k, row in enumerate(rows):
        ax1.bar(k, 1, color=STATUS_COLORS.get(row["status"], "#000000"), width=1.0)
    ax1.set_xlim(-0.5, len(rows) - 0.5)
    ax1.set_yticks([])
    ax1.set_xlabel("candidate pair (scan order)")
    ax1.set_title(title, fontsize=10)
    counts = Counter(r["status"] for r in rows)
    names = [s for s in STATUS_COLORS if counts[s]]
    ax2.bar(names, [counts[s] for s in names], color=[STATUS_COLORS[s] for s in names])
    ax2.set_title("totals", fontsize=10)
    ax2.tick_params(axis="x", labelrotation=30, labelsize=7)
    for i, s in enumerate(names):
        ax2.annotate(str(counts[s]), (i, counts[s]), ha="center", va="bottom", fontsize=8)
    return _save(fig, path)


def plot_fact_checks(report: dict, path: Path) -> Path:
    """Pass/fail grid of the obstruction-family checks."""
    checks = report["checks"]
    fig, ax = plt.subplots(figsize=(max(4, 0.35 * len(checks)), 2.2))
    for k, c in enumerate(checks):
        ax.bar(k, 1, color="#4c956c" if c["pass"] else "#c1121f", width=0.9)
    ax.set_xticks(range(len(checks)))
    ax.set_xticklabels([c["check"] for c in checks], rotation=90, fontsize=6)
    ax.set_yticks([])
    ax.set_title(f"n = {report['n']}: satisfiability checks", fontsize=10)
    return _save(fig, path)


def _save(fig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
