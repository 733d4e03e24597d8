# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled kernels.  Same signatures and results as ``_kernels_py``."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset
from libc.math cimport fabs

from .errors import BudgetExceeded

BACKEND = "cython"

ctypedef long long idx_t


def side_labels(const idx_t[:] dual_ptr, const idx_t[:] dual_face, const idx_t[:] dual_edge,
                const idx_t[:] rot_ptr, const idx_t[:] face_of_dart, Py_ssize_t n, Py_ssize_t n_faces,
                const unsigned char[:] edge_mask, const unsigned char[:] vertex_mask):
    cdef idx_t* face_label = <idx_t*> malloc(max(n_faces, 1) * sizeof(idx_t))
    cdef idx_t* queue = <idx_t*> malloc(max(n_faces, 1) * sizeof(idx_t))
    cdef Py_ssize_t s, f, g, k, head, tail, i
    cdef idx_t ncomp = 0
    if face_label == NULL or queue == NULL:
        free(face_label)
        free(queue)
        raise MemoryError()
    try:
        for s in range(n_faces):
            face_label[s] = -1
        for s in range(n_faces):
            if face_label[s] != -1:
                continue
            face_label[s] = ncomp
            head = 0
            tail = 0
            queue[tail] = s
            tail += 1
            while head < tail:
                f = queue[head]
                head += 1
                for k in range(dual_ptr[f], dual_ptr[f + 1]):
                    if edge_mask[dual_edge[k]]:
                        continue
                    g = dual_face[k]
                    if face_label[g] == -1:
                        face_label[g] = ncomp
                        queue[tail] = g
                        tail += 1
            ncomp += 1
        vertex_label = [-1] * n
        for i in range(n):
            if not vertex_mask[i]:
                if rot_ptr[i] < rot_ptr[i + 1]:
                    vertex_label[i] = face_label[face_of_dart[rot_ptr[i]]]
                else:
                    vertex_label[i] = 0
        faces = [face_label[s] for s in range(n_faces)]
        return vertex_label, faces, ncomp
    finally:
        free(face_label)
        free(queue)


cdef void _bfs_dist(const idx_t[:] adj_ptr, const idx_t[:] adj_idx, Py_ssize_t n, Py_ssize_t src,
                    const unsigned char[:] allowed, Py_ssize_t lo, idx_t* dist, idx_t* queue) noexcept:
    cdef Py_ssize_t i, x, y, k, head = 0, tail = 0
    for i in range(n):
        dist[i] = -1
    dist[src] = 0
    queue[tail] = src
    tail += 1
    while head < tail:
        x = queue[head]
        head += 1
        for k in range(adj_ptr[x], adj_ptr[x + 1]):
            y = adj_idx[k]
            if y >= lo and allowed[y] and dist[y] == -1:
                dist[y] = dist[x] + 1
                queue[tail] = y
                tail += 1


def simple_cycles(const idx_t[:] adj_ptr, const idx_t[:] adj_idx, Py_ssize_t n, Py_ssize_t max_len,
                  const unsigned char[:] allowed, Py_ssize_t budget):
    cdef idx_t* dist = <idx_t*> malloc(max(n, 1) * sizeof(idx_t))
    cdef idx_t* queue = <idx_t*> malloc(max(n, 1) * sizeof(idx_t))
    cdef idx_t* path = <idx_t*> malloc((n + 1) * sizeof(idx_t))
    cdef idx_t* stack = <idx_t*> malloc((n + 1) * sizeof(idx_t))
    cdef unsigned char* on_path = <unsigned char*> malloc(max(n, 1))
    cdef Py_ssize_t s, depth, x, k, w, i
    out = []
    if dist == NULL or queue == NULL or path == NULL or stack == NULL or on_path == NULL:
        free(dist); free(queue); free(path); free(stack); free(on_path)
        raise MemoryError()
    try:
        memset(on_path, 0, max(n, 1))
        for s in range(n):
            if not allowed[s]:
                continue
            _bfs_dist(adj_ptr, adj_idx, n, s, allowed, s, dist, queue)
            depth = 1
            path[0] = s
            stack[0] = adj_ptr[s]
            on_path[s] = 1
            while depth > 0:
                x = path[depth - 1]
                k = stack[depth - 1]
                if k == adj_ptr[x + 1]:
                    on_path[x] = 0
                    depth -= 1
                    continue
                stack[depth - 1] = k + 1
                w = adj_idx[k]
                if w == s:
                    if depth >= 3 and path[1] < path[depth - 1]:
                        out.append(tuple([path[i] for i in range(depth)]))
                        if len(out) > budget:
                            raise BudgetExceeded(f"more than {budget} cycles")
                    continue
                if w < s or not allowed[w] or on_path[w] or dist[w] < 0:
                    continue
                if depth + dist[w] > max_len:
                    continue
                path[depth] = w
                stack[depth] = adj_ptr[w]
                on_path[w] = 1
                depth += 1
        return out
    finally:
        free(dist); free(queue); free(path); free(stack); free(on_path)


def simple_paths(const idx_t[:] adj_ptr, const idx_t[:] adj_idx, Py_ssize_t n, Py_ssize_t s, Py_ssize_t t,
                 Py_ssize_t max_len, const unsigned char[:] allowed, Py_ssize_t budget):
    cdef idx_t* dist = <idx_t*> malloc(max(n, 1) * sizeof(idx_t))
    cdef idx_t* queue = <idx_t*> malloc(max(n, 1) * sizeof(idx_t))
    cdef idx_t* path = <idx_t*> malloc((n + 1) * sizeof(idx_t))
    cdef idx_t* stack = <idx_t*> malloc((n + 1) * sizeof(idx_t))
    cdef unsigned char* on_path = <unsigned char*> malloc(max(n, 1))
    cdef Py_ssize_t depth, x, k, w, i
    out = []
    if dist == NULL or queue == NULL or path == NULL or stack == NULL or on_path == NULL:
        free(dist); free(queue); free(path); free(stack); free(on_path)
        raise MemoryError()
    try:
        _bfs_dist(adj_ptr, adj_idx, n, t, allowed, 0, dist, queue)
        if dist[s] < 0 or dist[s] > max_len:
            return out
        memset(on_path, 0, max(n, 1))
        depth = 1
        path[0] = s
        stack[0] = adj_ptr[s]
        on_path[s] = 1
        while depth > 0:
            x = path[depth - 1]
            k = stack[depth - 1]
            if k == adj_ptr[x + 1]:
                on_path[x] = 0
                depth -= 1
                continue
            stack[depth - 1] = k + 1
            w = adj_idx[k]
            if on_path[w] or not allowed[w] or dist[w] < 0:
                continue
            if depth + dist[w] > max_len:
                continue
            if w == t:
                out.append(tuple([path[i] for i in range(depth)]) + (t,))
                if len(out) > budget:
                    raise BudgetExceeded(f"more than {budget} paths")
                continue
            path[depth] = w
            stack[depth] = adj_ptr[w]
            on_path[w] = 1
            depth += 1
        return out
    finally:
        free(dist); free(queue); free(path); free(stack); free(on_path)


cdef idx_t _dual_components(const idx_t[:] dual_ptr, const idx_t[:] dual_face, const idx_t[:] dual_edge,
                            Py_ssize_t n_faces, unsigned char* edge_mask, unsigned char* seen,
                            idx_t* queue) noexcept:
    cdef Py_ssize_t s, f, g, k, head, tail
    cdef idx_t ncomp = 0
    memset(seen, 0, max(n_faces, 1))
    for s in range(n_faces):
        if seen[s]:
            continue
        seen[s] = 1
        ncomp += 1
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            f = queue[head]
            head += 1
            for k in range(dual_ptr[f], dual_ptr[f + 1]):
                g = dual_face[k]
                if not seen[g] and not edge_mask[dual_edge[k]]:
                    seen[g] = 1
                    queue[tail] = g
                    tail += 1
    return ncomp


def jordan_census(const idx_t[:] adj_ptr, const idx_t[:] adj_idx, const idx_t[:] adj_edge,
                  const idx_t[:] dual_ptr, const idx_t[:] dual_face, const idx_t[:] dual_edge,
                  Py_ssize_t n, Py_ssize_t n_faces, Py_ssize_t m, Py_ssize_t max_len, Py_ssize_t budget,
                  Py_ssize_t keep=16):
    cdef idx_t* dist = <idx_t*> malloc(max(n, 1) * sizeof(idx_t))
    cdef idx_t* queue = <idx_t*> malloc(max(n, n_faces, 1) * sizeof(idx_t))
    cdef idx_t* path = <idx_t*> malloc((n + 1) * sizeof(idx_t))
    cdef idx_t* used = <idx_t*> malloc((n + 1) * sizeof(idx_t))
    cdef idx_t* stack = <idx_t*> malloc((n + 1) * sizeof(idx_t))
    cdef unsigned char* on_path = <unsigned char*> malloc(max(n, 1))
    cdef unsigned char* edge_mask = <unsigned char*> malloc(max(m, 1))
    cdef unsigned char* seen_face = <unsigned char*> malloc(max(n_faces, 1))
    cdef unsigned char* everything = <unsigned char*> malloc(max(n, 1))
    cdef Py_ssize_t s, depth, x, k, w, i
    cdef idx_t ncomp
    cdef long long seen = 0
    bad = []
    if (dist == NULL or queue == NULL or path == NULL or used == NULL or stack == NULL or on_path == NULL
            or edge_mask == NULL or seen_face == NULL or everything == NULL):
        free(dist); free(queue); free(path); free(used); free(stack); free(on_path)
        free(edge_mask); free(seen_face); free(everything)
        raise MemoryError()
    try:
        memset(on_path, 0, max(n, 1))
        memset(edge_mask, 0, max(m, 1))
        memset(everything, 1, max(n, 1))
        for s in range(n):
            _bfs_dist(adj_ptr, adj_idx, n, s, <const unsigned char[:max(n, 1)]> everything, s, dist, queue)
            depth = 1
            path[0] = s
            stack[0] = adj_ptr[s]
            on_path[s] = 1
            while depth > 0:
                x = path[depth - 1]
                k = stack[depth - 1]
                if k == adj_ptr[x + 1]:
                    on_path[x] = 0
                    depth -= 1
                    continue
                stack[depth - 1] = k + 1
                w = adj_idx[k]
                if w == s:
                    if depth >= 3 and path[1] < path[depth - 1]:
                        seen += 1
                        if seen > budget:
                            raise BudgetExceeded(f"more than {budget} cycles")
                        for i in range(1, depth):
                            edge_mask[used[i]] = 1
                        edge_mask[adj_edge[k]] = 1
                        ncomp = _dual_components(dual_ptr, dual_face, dual_edge, n_faces, edge_mask, seen_face, queue)
                        for i in range(1, depth):
                            edge_mask[used[i]] = 0
                        edge_mask[adj_edge[k]] = 0
                        if ncomp != 2 and len(bad) < keep:
                            bad.append((tuple([path[i] for i in range(depth)]), ncomp))
                    continue
                if w < s or on_path[w] or dist[w] < 0:
                    continue
                if depth + dist[w] > max_len:
                    continue
                path[depth] = w
                used[depth] = adj_edge[k]
                stack[depth] = adj_ptr[w]
                on_path[w] = 1
                depth += 1
        return seen, bad
    finally:
        free(dist); free(queue); free(path); free(used); free(stack); free(on_path)
        free(edge_mask); free(seen_face); free(everything)


cdef inline int _fsign(double ax, double ay, double bx, double by, double scale) noexcept nogil:
    cdef double det = ax * by - ay * bx
    cdef double bound = 1e-12 * scale * (fabs(ax) + fabs(ay) + fabs(bx) + fabs(by)) + 1e-14 * (fabs(ax * by) + fabs(ay * bx))
    if det > bound:
        return 1
    if det < -bound:
        return -1
    return 0


cdef inline bint _in_box(double x, double y, double ax, double ay, double bx, double by, double pad) nogil:
    return (min(ax, bx) - pad <= x <= max(ax, bx) + pad) and (min(ay, by) - pad <= y <= max(ay, by) + pad)


def crossing_candidates(const double[:] px, const double[:] py, const double[:] qx, const double[:] qy,
                        const idx_t[:] ea, const idx_t[:] eb, const idx_t[:] order, double scale):
    cdef Py_ssize_t m = order.shape[0]
    cdef Py_ssize_t oi, oj, i, j
    cdef double x1, y0, y1, bx0, by0, by1, pad
    cdef double wx, wy, ax_, ay_, bx_, by_
    cdef int d1, d2, d3, d4, s
    cdef idx_t w, a, b
    out = []
    pad = 1e-9 * (1.0 + scale)
    for oi in range(m):
        i = order[oi]
        x1 = max(px[i], qx[i]) + pad
        y0 = min(py[i], qy[i]) - pad
        y1 = max(py[i], qy[i]) + pad
        for oj in range(oi + 1, m):
            j = order[oj]
            bx0 = min(px[j], qx[j]) - pad
            if bx0 > x1:
                break
            by0 = min(py[j], qy[j]) - pad
            by1 = max(py[j], qy[j]) + pad
            if by0 > y1 or by1 < y0:
                continue
            if ea[i] == ea[j] or ea[i] == eb[j] or eb[i] == ea[j] or eb[i] == eb[j]:
                if ea[i] == ea[j] or ea[i] == eb[j]:
                    wx, wy, ax_, ay_ = px[i], py[i], qx[i], qy[i]
                else:
                    wx, wy, ax_, ay_ = qx[i], qy[i], px[i], py[i]
                if ea[j] == ea[i] or ea[j] == eb[i]:
                    bx_, by_ = qx[j], qy[j]
                else:
                    bx_, by_ = px[j], py[j]
                s = _fsign(ax_ - wx, ay_ - wy, bx_ - wx, by_ - wy, scale)
                if s == 0:
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
