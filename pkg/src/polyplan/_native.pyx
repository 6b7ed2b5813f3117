# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled geometry and grid-search kernels.

Twin of polyplan._pure: every arithmetic expression mirrors the pure-Python
reference operation for operation, and setup.py compiles with
-ffp-contract=off, so both backends return bit-identical results.  Keep the
two files in sync; tests/test_backends.py enforces equality.
"""

from libc.stdlib cimport malloc, free, realloc
from libc.math cimport INFINITY

BACKEND_NAME = "native"

cdef double EPS_CROSS = 1e-9
cdef double EPS_PARAM = 1e-9
cdef double SQRT2 = 1.4142135623730951


# ---------------------------------------------------------------------------
# orientation predicates
# ---------------------------------------------------------------------------

cdef inline int _orient(double ax, double ay, double bx, double by,
                        double cx, double cy) nogil:
    cdef double ux = bx - ax
    cdef double uy = by - ay
    cdef double vx = cx - ax
    cdef double vy = cy - ay
    cdef double cross = ux * vy - uy * vx
    cdef double lim = (EPS_CROSS * EPS_CROSS) * (ux * ux + uy * uy) * (vx * vx + vy * vy)
    if cross * cross <= lim:
        return 0
    return 1 if cross > 0.0 else -1


def orientation(double ax, double ay, double bx, double by, double cx, double cy):
    """Sign of the cross product (b-a) x (c-a): +1 left, -1 right, 0 collinear."""
    return _orient(ax, ay, bx, by, cx, cy)


def is_tangential(double ax, double ay, double bx, double by,
                  double px, double py, double nx, double ny):
    """True if the ring neighbors (p, n) of corner b lie on one side of a->b."""
    cdef int o1 = _orient(ax, ay, bx, by, px, py)
    cdef int o2 = _orient(ax, ay, bx, by, nx, ny)
    return o1 == 0 or o2 == 0 or o1 == o2


# ---------------------------------------------------------------------------
# point vs polygon
# ---------------------------------------------------------------------------

cdef inline double _pt_seg_dist2(double qx, double qy, double x1, double y1,
                                 double x2, double y2) nogil:
    cdef double dx = x2 - x1
    cdef double dy = y2 - y1
    cdef double ll = dx * dx + dy * dy
    cdef double t = (qx - x1) * dx + (qy - y1) * dy
    cdef double ex, ey, u
    if t <= 0.0 or ll == 0.0:
        ex = qx - x1
        ey = qy - y1
    elif t >= ll:
        ex = qx - x2
        ey = qy - y2
    else:
        u = t / ll
        ex = qx - (x1 + u * dx)
        ey = qy - (y1 + u * dy)
    return ex * ex + ey * ey


cdef bint _pip_rng(double qx, double qy, double[::1] coords,
                   Py_ssize_t lo, Py_ssize_t hi, double eps) nogil:
    cdef double eps2 = eps * eps
    cdef double x1 = coords[hi - 2]
    cdef double y1 = coords[hi - 1]
    cdef double x2, y2, xc
    cdef Py_ssize_t i = lo
    cdef bint inside = False
    while i < hi:
        x2 = coords[i]
        y2 = coords[i + 1]
        if _pt_seg_dist2(qx, qy, x1, y1, x2, y2) <= eps2:
            return False
        x1 = x2
        y1 = y2
        i += 2
    x1 = coords[hi - 2]
    y1 = coords[hi - 1]
    i = lo
    while i < hi:
        x2 = coords[i]
        y2 = coords[i + 1]
        if (y2 > qy) != (y1 > qy):
            xc = x2 + (qy - y2) * (x1 - x2) / (y1 - y2)
            if qx < xc:
                inside = not inside
        x1 = x2
        y1 = y2
        i += 2
    return inside


def point_in_polygon(double qx, double qy, double[::1] coords, double eps):
    return _pip_rng(qx, qy, coords, 0, coords.shape[0], eps)


# ---------------------------------------------------------------------------
# segment vs polygon
# ---------------------------------------------------------------------------

cdef inline int _sign_eps(double val, double m1, double m2) nogil:
    if val * val <= (EPS_CROSS * EPS_CROSS) * m1 * m2:
        return 0
    return 1 if val > 0.0 else -1


cdef Py_ssize_t _seg_params_rng(double ax, double ay, double bx, double by,
                                double[::1] coords, Py_ssize_t lo, Py_ssize_t hi,
                                double* out) nogil:
    """Writes sorted, deduplicated parameters into out; returns the count.

    out must hold at least 2 * (hi - lo) + 8 doubles.
    """
    cdef double rx = bx - ax
    cdef double ry = by - ay
    cdef double rr = rx * rx + ry * ry
    cdef Py_ssize_t cnt = 0
    if rr == 0.0:
        return 0
    cdef double cx = coords[hi - 2]
    cdef double cy = coords[hi - 1]
    cdef double dx, dy, qx, qy, qq, acx, acy, bcx, bcy
    cdef double d1, d2, d3, d4, tc, td, tlo, thi, u, t
    cdef int s1, s2, s3, s4
    cdef Py_ssize_t i = lo
    while i < hi:
        dx = coords[i]
        dy = coords[i + 1]
        qx = dx - cx
        qy = dy - cy
        qq = qx * qx + qy * qy
        acx = ax - cx
        acy = ay - cy
        bcx = bx - cx
        bcy = by - cy
        d1 = qx * acy - qy * acx
        d2 = qx * bcy - qy * bcx
        d3 = rx * (cy - ay) - ry * (cx - ax)
        d4 = rx * (dy - ay) - ry * (dx - ax)
        s1 = _sign_eps(d1, qq, acx * acx + acy * acy)
        s2 = _sign_eps(d2, qq, bcx * bcx + bcy * bcy)
        s3 = _sign_eps(d3, rr, (cx - ax) * (cx - ax) + (cy - ay) * (cy - ay))
        s4 = _sign_eps(d4, rr, (dx - ax) * (dx - ax) + (dy - ay) * (dy - ay))
        if s1 == 0 and s2 == 0:
            tc = ((cx - ax) * rx + (cy - ay) * ry) / rr
            td = ((dx - ax) * rx + (dy - ay) * ry) / rr
            if tc < td:
                tlo = tc
                thi = td
            else:
                tlo = td
                thi = tc
            if tlo < 0.0:
                tlo = 0.0
            if thi > 1.0:
                thi = 1.0
            if tlo <= thi:
                out[cnt] = tlo
                cnt += 1
                if thi - tlo > EPS_PARAM:
                    out[cnt] = thi
                    cnt += 1
        else:
            if s3 == 0:
                tc = ((cx - ax) * rx + (cy - ay) * ry) / rr
                if -EPS_PARAM <= tc <= 1.0 + EPS_PARAM:
                    out[cnt] = 0.0 if tc < 0.0 else (1.0 if tc > 1.0 else tc)
                    cnt += 1
            if s4 == 0:
                td = ((dx - ax) * rx + (dy - ay) * ry) / rr
                if -EPS_PARAM <= td <= 1.0 + EPS_PARAM:
                    out[cnt] = 0.0 if td < 0.0 else (1.0 if td > 1.0 else td)
                    cnt += 1
            if s1 == 0 and qq > 0.0:
                u = (acx * qx + acy * qy) / qq
                if -EPS_PARAM <= u <= 1.0 + EPS_PARAM:
                    out[cnt] = 0.0
                    cnt += 1
            if s2 == 0 and qq > 0.0:
                u = (bcx * qx + bcy * qy) / qq
                if -EPS_PARAM <= u <= 1.0 + EPS_PARAM:
                    out[cnt] = 1.0
                    cnt += 1
            if s1 * s2 < 0 and s3 * s4 < 0:
                t = d1 / (d1 - d2)
                out[cnt] = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
                cnt += 1
        cx = dx
        cy = dy
        i += 2
    # insertion sort (small arrays) then dedup within EPS_PARAM
    cdef Py_ssize_t j, k
    cdef double v
    for j in range(1, cnt):
        v = out[j]
        k = j
        while k > 0 and out[k - 1] > v:
            out[k] = out[k - 1]
            k -= 1
        out[k] = v
    cdef Py_ssize_t m = 0
    cdef double last = -1.0
    for j in range(cnt):
        if out[j] - last > EPS_PARAM:
            out[m] = out[j]
            last = out[j]
            m += 1
    return m


def segment_params(double ax, double ay, double bx, double by, double[::1] coords):
    cdef Py_ssize_t n = coords.shape[0]
    cdef double* buf = <double*> malloc((2 * n + 8) * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t cnt = _seg_params_rng(ax, ay, bx, by, coords, 0, n, buf)
    out = [buf[i] for i in range(cnt)]
    free(buf)
    return out


cdef bint _li_rng(double ax, double ay, double bx, double by, double[::1] coords,
                  Py_ssize_t lo, Py_ssize_t hi, double eps, double* buf) nogil:
    cdef Py_ssize_t cnt = _seg_params_rng(ax, ay, bx, by, coords, lo, hi, buf)
    cdef double rx = bx - ax
    cdef double ry = by - ay
    cdef double prev = 0.0
    cdef double t, m
    cdef Py_ssize_t i
    for i in range(cnt):
        t = buf[i]
        if t - prev > EPS_PARAM:
            m = (prev + t) * 0.5
            if _pip_rng(ax + m * rx, ay + m * ry, coords, lo, hi, eps):
                return True
        if t > prev:
            prev = t
    if 1.0 - prev > EPS_PARAM:
        m = (prev + 1.0) * 0.5
        if _pip_rng(ax + m * rx, ay + m * ry, coords, lo, hi, eps):
            return True
    return False


cdef double _first_param_rng(double ax, double ay, double bx, double by,
                             double[::1] coords, Py_ssize_t lo, Py_ssize_t hi,
                             double eps, double* buf) nogil:
    cdef Py_ssize_t cnt = _seg_params_rng(ax, ay, bx, by, coords, lo, hi, buf)
    cdef double rx = bx - ax
    cdef double ry = by - ay
    cdef double prev = 0.0
    cdef double t, m
    cdef Py_ssize_t i
    for i in range(cnt):
        t = buf[i]
        if t - prev > EPS_PARAM:
            m = (prev + t) * 0.5
            if _pip_rng(ax + m * rx, ay + m * ry, coords, lo, hi, eps):
                return m
        if t > prev:
            prev = t
    if 1.0 - prev > EPS_PARAM:
        m = (prev + 1.0) * 0.5
        if _pip_rng(ax + m * rx, ay + m * ry, coords, lo, hi, eps):
            return m
    return -1.0


cdef inline bint _bbox_disjoint(double sx0, double sy0, double sx1, double sy1,
                                double px0, double py0, double px1, double py1) nogil:
    return sx1 < px0 or px1 < sx0 or sy1 < py0 or py1 < sy0


def line_intersects_polygon(double ax, double ay, double bx, double by,
                            double[::1] coords, double eps):
    cdef Py_ssize_t n = coords.shape[0]
    cdef double px0 = coords[0]
    cdef double py0 = coords[1]
    cdef double px1 = px0
    cdef double py1 = py0
    cdef double x, y
    cdef Py_ssize_t i = 2
    while i < n:
        x = coords[i]
        y = coords[i + 1]
        if x < px0:
            px0 = x
        if x > px1:
            px1 = x
        if y < py0:
            py0 = y
        if y > py1:
            py1 = y
        i += 2
    cdef double sx0 = ax if ax < bx else bx
    cdef double sx1 = bx if ax < bx else ax
    cdef double sy0 = ay if ay < by else by
    cdef double sy1 = by if ay < by else ay
    if _bbox_disjoint(sx0, sy0, sx1, sy1, px0, py0, px1, py1):
        return False
    cdef double* buf = <double*> malloc((2 * n + 8) * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    cdef bint res = _li_rng(ax, ay, bx, by, coords, 0, n, eps, buf)
    free(buf)
    return res


def first_interior_param(double ax, double ay, double bx, double by,
                         double[::1] coords, double eps):
    cdef Py_ssize_t n = coords.shape[0]
    cdef double* buf = <double*> malloc((2 * n + 8) * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    cdef double res = _first_param_rng(ax, ay, bx, by, coords, 0, n, eps, buf)
    free(buf)
    return res


# ---------------------------------------------------------------------------
# segment / point vs polygon set
# ---------------------------------------------------------------------------

def any_hit(double ax, double ay, double bx, double by,
            long long[::1] offsets, double[::1] coords,
            double[::1] bboxes, double[::1] epses):
    cdef Py_ssize_t n = offsets.shape[0] - 1
    cdef double sx0 = ax if ax < bx else bx
    cdef double sx1 = bx if ax < bx else ax
    cdef double sy0 = ay if ay < by else by
    cdef double sy1 = by if ay < by else ay
    cdef double* buf = <double*> malloc((2 * coords.shape[0] + 8) * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t k, b
    cdef bint res = False
    for k in range(n):
        b = 4 * k
        if _bbox_disjoint(sx0, sy0, sx1, sy1,
                          bboxes[b], bboxes[b + 1], bboxes[b + 2], bboxes[b + 3]):
            continue
        if _li_rng(ax, ay, bx, by, coords, offsets[k], offsets[k + 1], epses[k], buf):
            res = True
            break
    free(buf)
    return res


def first_hit(double ax, double ay, double bx, double by,
              long long[::1] offsets, double[::1] coords,
              double[::1] bboxes, double[::1] epses):
    cdef Py_ssize_t n = offsets.shape[0] - 1
    cdef double sx0 = ax if ax < bx else bx
    cdef double sx1 = bx if ax < bx else ax
    cdef double sy0 = ay if ay < by else by
    cdef double sy1 = by if ay < by else ay
    cdef double* buf = <double*> malloc((2 * coords.shape[0] + 8) * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t k, b
    cdef Py_ssize_t best = -1
    cdef double best_t = INFINITY
    cdef double t
    for k in range(n):
        b = 4 * k
        if _bbox_disjoint(sx0, sy0, sx1, sy1,
                          bboxes[b], bboxes[b + 1], bboxes[b + 2], bboxes[b + 3]):
            continue
        t = _first_param_rng(ax, ay, bx, by, coords, offsets[k], offsets[k + 1],
                             epses[k], buf)
        if t >= 0.0 and t < best_t:
            best_t = t
            best = k
    free(buf)
    return best


def point_in_any(double qx, double qy,
                 long long[::1] offsets, double[::1] coords,
                 double[::1] bboxes, double[::1] epses):
    cdef Py_ssize_t n = offsets.shape[0] - 1
    cdef Py_ssize_t k, b
    for k in range(n):
        b = 4 * k
        if qx < bboxes[b] or qx > bboxes[b + 2] or qy < bboxes[b + 1] or qy > bboxes[b + 3]:
            continue
        if _pip_rng(qx, qy, coords, offsets[k], offsets[k + 1], epses[k]):
            return k
    return -1


# ---------------------------------------------------------------------------
# rasterization
# ---------------------------------------------------------------------------

cdef bint _seg_rect_overlap(double x1, double y1, double x2, double y2,
                            double rx0, double ry0, double rx1, double ry1) nogil:
    cdef double t0 = 0.0
    cdef double t1 = 1.0
    cdef double dx = x2 - x1
    cdef double dy = y2 - y1
    cdef double p, q, r

    p = -dx
    q = x1 - rx0
    if p == 0.0:
        if q < 0.0:
            return False
    else:
        r = q / p
        if p < 0.0:
            if r > t1:
                return False
            if r > t0:
                t0 = r
        else:
            if r < t0:
                return False
            if r < t1:
                t1 = r

    p = dx
    q = rx1 - x1
    if p == 0.0:
        if q < 0.0:
            return False
    else:
        r = q / p
        if p < 0.0:
            if r > t1:
                return False
            if r > t0:
                t0 = r
        else:
            if r < t0:
                return False
            if r < t1:
                t1 = r

    p = -dy
    q = y1 - ry0
    if p == 0.0:
        if q < 0.0:
            return False
    else:
        r = q / p
        if p < 0.0:
            if r > t1:
                return False
            if r > t0:
                t0 = r
        else:
            if r < t0:
                return False
            if r < t1:
                t1 = r

    p = dy
    q = ry1 - y1
    if p == 0.0:
        if q < 0.0:
            return False
    else:
        r = q / p
        if p < 0.0:
            if r > t1:
                return False
            if r > t0:
                t0 = r
        else:
            if r < t0:
                return False
            if r < t1:
                t1 = r

    return True


def rasterize_polygon(unsigned char[::1] occ, Py_ssize_t width, Py_ssize_t height,
                      double ox, double oy, double res, double[::1] coords,
                      double eps):
    cdef Py_ssize_t n = coords.shape[0]
    cdef double px0 = coords[0]
    cdef double py0 = coords[1]
    cdef double px1 = px0
    cdef double py1 = py0
    cdef double x, y
    cdef Py_ssize_t i = 2
    while i < n:
        x = coords[i]
        y = coords[i + 1]
        if x < px0:
            px0 = x
        if x > px1:
            px1 = x
        if y < py0:
            py0 = y
        if y > py1:
            py1 = y
        i += 2
    cdef Py_ssize_t ix0 = <Py_ssize_t>((px0 - ox) / res) - 1
    cdef Py_ssize_t iy0 = <Py_ssize_t>((py0 - oy) / res) - 1
    cdef Py_ssize_t ix1 = <Py_ssize_t>((px1 - ox) / res) + 1
    cdef Py_ssize_t iy1 = <Py_ssize_t>((py1 - oy) / res) + 1
    if ix0 < 0:
        ix0 = 0
    if iy0 < 0:
        iy0 = 0
    if ix1 > width - 1:
        ix1 = width - 1
    if iy1 > height - 1:
        iy1 = height - 1
    cdef Py_ssize_t ix, iy, row, j
    cdef double x0, y0, x1, y1, xm, ym, cx, cy, dx, dy
    cdef bint hit
    for iy in range(iy0, iy1 + 1):
        row = iy * width
        y0 = oy + iy * res
        y1 = y0 + res
        ym = y0 + 0.5 * res
        for ix in range(ix0, ix1 + 1):
            if occ[row + ix]:
                continue
            x0 = ox + ix * res
            x1 = x0 + res
            xm = x0 + 0.5 * res
            hit = (_pip_rng(xm, ym, coords, 0, n, eps)
                   or _pip_rng(x0, y0, coords, 0, n, eps)
                   or _pip_rng(x1, y0, coords, 0, n, eps)
                   or _pip_rng(x1, y1, coords, 0, n, eps)
                   or _pip_rng(x0, y1, coords, 0, n, eps))
            if not hit:
                cx = coords[n - 2]
                cy = coords[n - 1]
                j = 0
                while j < n:
                    dx = coords[j]
                    dy = coords[j + 1]
                    if _seg_rect_overlap(cx, cy, dx, dy, x0, y0, x1, y1):
                        hit = True
                        break
                    cx = dx
                    cy = dy
                    j += 2
            if hit:
                occ[row + ix] = 1


# ---------------------------------------------------------------------------
# 8-connected grid A*
# ---------------------------------------------------------------------------

cdef int _DX[8]
cdef int _DY[8]
_DX[0] = 1; _DX[1] = -1; _DX[2] = 0; _DX[3] = 0
_DX[4] = 1; _DX[5] = 1; _DX[6] = -1; _DX[7] = -1
_DY[0] = 0; _DY[1] = 0; _DY[2] = 1; _DY[3] = -1
_DY[4] = 1; _DY[5] = -1; _DY[6] = 1; _DY[7] = -1


cdef inline double _octile(Py_ssize_t dx, Py_ssize_t dy) nogil:
    if dx < 0:
        dx = -dx
    if dy < 0:
        dy = -dy
    cdef Py_ssize_t mn = dx if dx < dy else dy
    return (dx + dy) + (SQRT2 - 2.0) * mn


cdef struct _Heap:
    double* f
    long long* tie
    int* cell
    Py_ssize_t size
    Py_ssize_t cap


cdef inline bint _hless(double f1, long long t1, double f2, long long t2) nogil:
    if f1 != f2:
        return f1 < f2
    return t1 < t2


cdef bint _hpush(_Heap* h, double f, long long tie, int cell) nogil:
    cdef Py_ssize_t i, p
    cdef Py_ssize_t newcap
    if h.size == h.cap:
        newcap = h.cap * 2
        h.f = <double*> realloc(h.f, newcap * sizeof(double))
        h.tie = <long long*> realloc(h.tie, newcap * sizeof(long long))
        h.cell = <int*> realloc(h.cell, newcap * sizeof(int))
        if h.f == NULL or h.tie == NULL or h.cell == NULL:
            return False
        h.cap = newcap
    i = h.size
    h.size += 1
    while i > 0:
        p = (i - 1) >> 1
        if _hless(f, tie, h.f[p], h.tie[p]):
            h.f[i] = h.f[p]
            h.tie[i] = h.tie[p]
            h.cell[i] = h.cell[p]
            i = p
        else:
            break
    h.f[i] = f
    h.tie[i] = tie
    h.cell[i] = cell
    return True


cdef int _hpop(_Heap* h) nogil:
    cdef int top = h.cell[0]
    h.size -= 1
    cdef double f = h.f[h.size]
    cdef long long tie = h.tie[h.size]
    cdef int cell = h.cell[h.size]
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t c
    while True:
        c = 2 * i + 1
        if c >= h.size:
            break
        if c + 1 < h.size and _hless(h.f[c + 1], h.tie[c + 1], h.f[c], h.tie[c]):
            c += 1
        if _hless(h.f[c], h.tie[c], f, tie):
            h.f[i] = h.f[c]
            h.tie[i] = h.tie[c]
            h.cell[i] = h.cell[c]
            i = c
        else:
            break
    h.f[i] = f
    h.tie[i] = tie
    h.cell[i] = cell
    return top


def grid_astar(unsigned char[::1] occ, Py_ssize_t width, Py_ssize_t height,
               Py_ssize_t sx, Py_ssize_t sy, Py_ssize_t gx, Py_ssize_t gy):
    """Octile-heuristic A*, no corner cutting.  Returns flat cell indices
    from start to goal, or None when unreachable."""
    cdef int start = <int>(sy * width + sx)
    cdef int goal = <int>(gy * width + gx)
    if occ[start] or occ[goal]:
        return None
    cdef Py_ssize_t size = width * height
    cdef double* g = <double*> malloc(size * sizeof(double))
    cdef unsigned char* state = <unsigned char*> malloc(size)
    cdef int* parent = <int*> malloc(size * sizeof(int))
    cdef _Heap h
    h.cap = 1024
    h.size = 0
    h.f = <double*> malloc(h.cap * sizeof(double))
    h.tie = <long long*> malloc(h.cap * sizeof(long long))
    h.cell = <int*> malloc(h.cap * sizeof(int))
    if g == NULL or state == NULL or parent == NULL or \
            h.f == NULL or h.tie == NULL or h.cell == NULL:
        free(g); free(state); free(parent)
        free(h.f); free(h.tie); free(h.cell)
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(size):
        g[i] = INFINITY
        state[i] = 0
        parent[i] = -1
    g[start] = 0.0
    cdef long long tie = 0
    cdef bint ok = _hpush(&h, _octile(sx - gx, sy - gy), 0, start)
    cdef int cur, ni
    cdef Py_ssize_t x, y, nx, ny, k
    cdef double gc, ng
    cdef bint found = False
    while h.size > 0 and ok:
        cur = _hpop(&h)
        if state[cur]:
            continue
        state[cur] = 1
        if cur == goal:
            found = True
            break
        x = cur - (cur // width) * width
        y = cur // width
        gc = g[cur]
        for k in range(8):
            nx = x + _DX[k]
            ny = y + _DY[k]
            if nx < 0 or nx >= width or ny < 0 or ny >= height:
                continue
            ni = <int>(ny * width + nx)
            if occ[ni]:
                continue
            if k >= 4:
                if occ[y * width + nx] or occ[ny * width + x]:
                    continue
                ng = gc + SQRT2
            else:
                ng = gc + 1.0
            if ng < g[ni]:
                g[ni] = ng
                parent[ni] = cur
                tie += 1
                if not _hpush(&h, ng + _octile(nx - gx, ny - gy), tie, ni):
                    ok = False
                    break
    out = None
    cdef int c
    if found:
        out = []
        c = goal
        while c != -1:
            out.append(c)
            c = parent[c]
        out.reverse()
    free(g)
    free(state)
    free(parent)
    free(h.f)
    free(h.tie)
    free(h.cell)
    if not ok:
        raise MemoryError()
    return out
