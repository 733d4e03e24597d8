"""Pure-Python kernels.  Same signatures and results as ``_kernels.pyx``."""

from __future__ import annotations

from collections import deque

from .errors import BudgetExceeded

BACKEND = "python"


def side_labels(dual_ptr, dual_face, dual_edge, rot_ptr, face_of_dart, n, n_faces, edge_mask, vertex_mask):
    """Label faces by dual component once the masked edges are cut.

    Components are numbered in order of their least face id.  Returns
    ``(vertex_labels, face_labels, n_components)``; a vertex whose mask byte
    is set gets label -1, any other vertex takes the label of the face on
    the left of its first dart.
    """
    face_label = [-1] * n_faces
    ncomp = 0
    for s in range(n_faces):
        if face_label[s] != -1:
            continue
        face_label[s] = ncomp
        todo = deque([s])
        while todo:
            f = todo.popleft()
            for k in range(dual_ptr[f], dual_ptr[f + 1]):
                if edge_mask[dual_edge[k]]:
                    continue
                g = dual_face[k]
                if face_label[g] == -1:
                    face_label[g] = ncomp
                    todo.append(g)
        ncomp += 1
    vertex_label = [-1] * n
    for i in range(n):
        if not vertex_mask[i] and rot_ptr[i] < rot_ptr[i + 1]:
            vertex_label[i] = face_label[face_of_dart[rot_ptr[i]]]
        elif not vertex_mask[i]:
            vertex_label[i] = 0
    return vertex_label, face_label, ncomp


def _bfs_dist(adj_ptr, adj_idx, n, src, allowed, lo):
    dist = [-1] * n
    dist[src] = 0
    todo = deque([src])
    while todo:
        x = todo.popleft()
        for k in range(adj_ptr[x], adj_ptr[x + 1]):
            y = adj_idx[k]
            if y >= lo and allowed[y] and dist[y] == -1:
                dist[y] = dist[x] + 1
                todo.append(y)
    return dist


def simple_cycles(adj_ptr, adj_idx, n, max_len, allowed, budget):
    """All simple cycles of length 3..max_len inside the allowed vertices.

    Each cycle is reported once, as its canonical tuple: least vertex first,
    then the direction whose second vertex is smaller.  Cycles come out
    grouped by least vertex, each group in depth-first lexicographic order.
    """
    out = []
    on_path = [False] * n
    for s in range(n):
        if not allowed[s]:
            continue
        dist = _bfs_dist(adj_ptr, adj_idx, n, s, allowed, s)
        path = [s]
        on_path[s] = True
        stack = [adj_ptr[s]]
        while stack:
            x = path[-1]
            k = stack[-1]
            if k == adj_ptr[x + 1]:
                stack.pop()
                on_path[path.pop()] = False
                continue
            stack[-1] = k + 1
            w = adj_idx[k]
            if w == s:
                if len(path) >= 3 and path[1] < path[-1]:
                    out.append(tuple(path))
                    if len(out) > budget:
                        raise BudgetExceeded(f"more than {budget} cycles")
                continue
            if w < s or not allowed[w] or on_path[w] or dist[w] < 0:
                continue
            if len(path) + dist[w] > max_len:
                continue
            path.append(w)
            on_path[w] = True
            stack.append(adj_ptr[w])
        on_path[s] = False
    return out


def simple_paths(adj_ptr, adj_idx, n, s, t, max_len, allowed, budget):
    """All simple s-t paths with at most ``max_len`` edges, DFS order."""
    dist = _bfs_dist(adj_ptr, adj_idx, n, t, allowed, 0)
    out = []
    if dist[s] < 0 or dist[s] > max_len:
        return out
    on_path = [False] * n
    path = [s]
    on_path[s] = True
    stack = [adj_ptr[s]]
    while stack:
        x = path[-1]
        k = stack[-1]
        if k == adj_ptr[x + 1]:
            stack.pop()
            on_path[path.pop()] = False
            continue
        stack[-1] = k + 1
        w = adj_idx[k]
        if on_path[w] or not allowed[w] or dist[w] < 0:
            continue
        if len(path) + dist[w] > max_len:
            continue
        if w == t:
            out.append(tuple(path) + (t,))
            if len(out) > budget:
                raise BudgetExceeded(f"more than {budget} paths")
            continue
        path.append(w)
        on_path[w] = True
        stack.append(adj_ptr[w])
    return out


def _dual_components(dual_ptr, dual_face, dual_edge, n_faces, edge_mask):
    seen = [False] * n_faces
    ncomp = 0
    for s in range(n_faces):
        if seen[s]:
            continue
        seen[s] = True
        ncomp += 1
        todo = [s]
        while todo:
            f = todo.pop()
            for k in range(dual_ptr[f], dual_ptr[f + 1]):
                g = dual_face[k]
                if not seen[g] and not edge_mask[dual_edge[k]]:
                    seen[g] = True
                    todo.append(g)
    return ncomp


def jordan_census(adj_ptr, adj_idx, adj_edge, dual_ptr, dual_face, dual_edge, n, n_faces, m, max_len, budget,
                  keep=16):
    """Cut the dual along every simple cycle of length <= max_len.

    Returns ``(cycles_seen, bad)`` where ``bad`` lists up to ``keep``
    ``(cycle, n_components)`` pairs whose component count is not 2.
    """
    allowed = [True] * n
    edge_mask = bytearray(m)
    seen = 0
    bad = []
    for s in range(n):
        dist = _bfs_dist(adj_ptr, adj_idx, n, s, allowed, s)
        path = [s]
        used = []
        on_path = [False] * n
        on_path[s] = True
        stack = [adj_ptr[s]]
        while stack:
            x = path[-1]
            k = stack[-1]
            if k == adj_ptr[x + 1]:
                stack.pop()
                on_path[path.pop()] = False
                if used:
                    used.pop()
                continue
            stack[-1] = k + 1
            w = adj_idx[k]
            if w == s:
                if len(path) >= 3 and path[1] < path[-1]:
                    seen += 1
                    if seen > budget:
                        raise BudgetExceeded(f"more than {budget} cycles")
                    for eid in used:
                        edge_mask[eid] = 1
                    edge_mask[adj_edge[k]] = 1
                    ncomp = _dual_components(dual_ptr, dual_face, dual_edge, n_faces, edge_mask)
                    for eid in used:
                        edge_mask[eid] = 0
                    edge_mask[adj_edge[k]] = 0
                    if ncomp != 2 and len(bad) < keep:
                        bad.append((tuple(path), ncomp))
                continue
            if w < s or on_path[w] or dist[w] < 0:
                continue
            if len(path) + dist[w] > max_len:
                continue
            path.append(w)
            used.append(adj_edge[k])
            on_path[w] = True
            stack.append(adj_ptr[w])
    return seen, bad


def _fsign(ax, ay, bx, by, scale):
    det = ax * by - ay * bx
    bound = 1e-12 * scale * (abs(ax) + abs(ay) + abs(bx) + abs(by)) + 1e-14 * (abs(ax * by) + abs(ay * bx))
    if det > bound:
        return 1
    if det < -bound:
        return -1
    return 0


def _in_box(x, y, ax, ay, bx, by, pad):
    return min(ax, bx) - pad <= x <= max(ax, bx) + pad and min(ay, by) - pad <= y <= max(ay, by) + pad


def crossing_candidates(px, py, qx, qy, ea, eb, order, scale):
    """Segment pairs (i, j) that may meet improperly, from a float sweep.

    Segments are visited in ``order`` (sorted by least x).  A pair sharing an
    endpoint is reported only if it may be collinear; a disjoint pair only
    if it certainly crosses or an endpoint sits, up to rounding, on the
    other segment.  The
    caller settles every reported pair exactly.
    """
    out = []
    pad = 1e-9 * (1.0 + scale)
    m = len(order)
    for oi in range(m):
        i = order[oi]
        x1 = max(px[i], qx[i]) + pad
        y0 = min(py[i], qy[i]) - pad
        y1 = max(py[i], qy[i]) + pad
        for oj in range(oi + 1, m):
            j = order[oj]
            if min(px[j], qx[j]) - pad > x1:
                break
            if min(py[j], qy[j]) - pad > y1 or max(py[j], qy[j]) + pad < y0:
                continue
            if {ea[i], eb[i]} & {ea[j], eb[j]}:
                if ea[i] in (ea[j], eb[j]):
                    wx, wy, ax, ay = px[i], py[i], qx[i], qy[i]
                else:
                    wx, wy, ax, ay = qx[i], qy[i], px[i], py[i]
                if ea[j] in (ea[i], eb[i]):
                    bx, by = qx[j], qy[j]
                else:
                    bx, by = px[j], py[j]
                if _fsign(ax - wx, ay - wy, bx - wx, by - wy, scale) == 0:
                    out.append((i, j))
                continue
            d1 = _fsign(qx[j] - px[j], qy[j] - py[j], px[i] - px[j], py[i] - py[j], scale)
            d2 = _fsign(qx[j] - px[j], qy[j] - py[j], qx[i] - px[j], qy[i] - py[j], scale)
            d3 = _fsign(qx[i] - px[i], qy[i] - py[i], px[j] - px[i], py[j] - py[i], scale)
            d4 = _fsign(qx[i] - px[i], qy[i] - py[i], qx[j] - px[i], qy[j] - py[i], scale)
            if d1 * d2 < 0 and d3 * d4 < 0:
                out.append((i, j))
            elif ((d1 == 0 and _in_box(px[i], py[i], px[j], py[j], qx[j], qy[j], pad))
                  or (d2 == 0 and _in_box(qx[i], qy[i], px[j], py[j], qx[j], qy[j], pad))
                  or (d3 == 0 and _in_box(px[j], py[j], px[i], py[i], qx[i], qy[i], pad))
                  or (d4 == 0 and _in_box(qx[j], qy[j], px[i], py[i], qx[i], qy[i], pad))):
                out.append((i, j))
    return out
