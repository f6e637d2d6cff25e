"""Independent brute-force oracles used to freeze expected test values.

Everything here is written against the plain definitions (loops, full
distance matrices, ray casting) so it shares no code path with the
implementations it checks.
"""

import math
import xml.etree.ElementTree as ET
from collections import Counter


def column_means(rows):
    """One-pass running sums, no numpy."""
    n = len(rows[0])
    sums = [0.0] * n
    for row in rows:
        for j in range(n):
            sums[j] += row[j]
    return [s / len(rows) for s in sums]


def brute_knn(points, labels, ids, query, k):
    """All-pairs distances; ties by id, vote ties by the nearest member."""
    scored = []
    for p, lab, cid in zip(points, labels, ids):
        d = math.sqrt(sum((a - b) ** 2 for a, b in zip(p, query)))
        scored.append((d, cid, lab))
    scored.sort(key=lambda t: (t[0], t[1]))
    top = scored[:k]
    counts = Counter(lab for _, _, lab in top)
    best = max(counts.values())
    winners = {lab for lab, c in counts.items() if c == best}
    if len(winners) == 1:
        return winners.pop(), [cid for _, cid, _ in top]
    for _, cid, lab in top:
        if lab in winners:
            return lab, [c for _, c, _ in top]
    raise AssertionError("unreachable")


def point_in_polygon(point, polygon, eps=1e-9):
    """Ray casting with an on-boundary tolerance (boundary counts inside)."""
    x, y = point
    n = len(polygon)
    for i in range(n):
        x1, y1 = polygon[i]
        x2, y2 = polygon[(i + 1) % n]
        # distance from the segment
        dx, dy = x2 - x1, y2 - y1
        length2 = dx * dx + dy * dy
        if length2 == 0:
            if math.hypot(x - x1, y - y1) <= eps:
                return True
            continue
        t = max(0.0, min(1.0, ((x - x1) * dx + (y - y1) * dy) / length2))
        if math.hypot(x - (x1 + t * dx), y - (y1 + t * dy)) <= eps:
            return True
    inside = False
    j = n - 1
    for i in range(n):
        xi, yi = polygon[i]
        xj, yj = polygon[j]
        if (yi > y) != (yj > y) and x < (xj - xi) * (y - yi) / (yj - yi) + xi:
            inside = not inside
        j = i
    return inside


def collinearity_residual(points, center, tol=1e-12):
    """Max perpendicular distance of points to the best ray from center.

    The ray direction comes from the farthest point; the residual is the
    largest cross-product magnitude against unit direction.
    """
    far = max(points, key=lambda p: math.hypot(p[0] - center[0], p[1] - center[1]))
    dx, dy = far[0] - center[0], far[1] - center[1]
    norm = math.hypot(dx, dy)
    if norm < tol:
        return 0.0
    ux, uy = dx / norm, dy / norm
    residual = 0.0
    for p in points:
        vx, vy = p[0] - center[0], p[1] - center[1]
        residual = max(residual, abs(ux * vy - uy * vx))
        if ux * vx + uy * vy < -tol:  # opposite side of the center
            residual = max(residual, math.hypot(vx, vy))
    return residual


def bin_census(norm_matrix, labels, attr, bins):
    """Per-bin class counts for one attribute, dictionary based."""
    census = {}
    for row, lab in zip(norm_matrix, labels):
        b = min(int(math.floor(bins * row[attr])), bins - 1)
        census.setdefault(b, Counter())[lab] += 1
    return census


def svg_counts(svg_bytes):
    """Element counts by class attribute, and distinct case-line colors."""
    root = ET.fromstring(svg_bytes.decode("utf-8"))
    ns = "{http://www.w3.org/2000/svg}"
    by_class = Counter()
    colors = set()
    for el in root.iter():
        cls = el.attrib.get("class")
        if cls:
            by_class[cls] += 1
        if cls == "case-line":
            colors.add(el.attrib.get("stroke"))
    return by_class, colors


def pairwise_win_table(mean_by_model):
    """Copeland scores from pairwise mean-accuracy comparisons."""
    scores = {}
    for a, ma in mean_by_model.items():
        s = 0
        for b, mb in mean_by_model.items():
            if a == b:
                continue
            s += (ma > mb) - (ma < mb)
        scores[a] = s
    return scores
