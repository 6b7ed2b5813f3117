"""Pure-Python geometry and grid-search kernels.

Reference implementation and import-time fallback for the compiled module
(polyplan._native).  TWIN DISCIPLINE: _native.pyx mirrors every arithmetic
expression here operation for operation (and is compiled with
-ffp-contract=off), so both backends return bit-identical results.  Any
change here must be mirrored there; tests/test_backends.py asserts equality.

Conventions shared by both backends:
  * polygons are flat coordinate buffers [x0, y0, x1, y1, ...] (CCW rings);
    map-level functions take a concatenated buffer plus per-polygon offsets,
    bounding boxes (xmin, ymin, xmax, ymax) and boundary tolerances;
  * orientation: +1 left / CCW, -1 right / CW, 0 collinear within a relative
    tolerance of 1e-9 of the operand scale;
  * segment parameters are deduplicated within 1e-9;
  * grid occupancy is a row-major byte buffer, 1 = blocked.
"""

from heapq import heappop, heappush

BACKEND_NAME = "pure"

EPS_CROSS = 1e-9    # relative collinearity tolerance
EPS_PARAM = 1e-9    # dedup tolerance on segment parameters
SQRT2 = 1.4142135623730951
INF = float("inf")


# ---------------------------------------------------------------------------
# orientation predicates
# ---------------------------------------------------------------------------

def orientation(ax, ay, bx, by, cx, cy):
    """Sign of the cross product (b-a) x (c-a): +1 left, -1 right, 0 collinear."""
    ux = bx - ax
    uy = by - ay
    vx = cx - ax
    vy = cy - ay
    cross = ux * vy - uy * vx
    lim = (EPS_CROSS * EPS_CROSS) * (ux * ux + uy * uy) * (vx * vx + vy * vy)
    if cross * cross <= lim:
        return 0
    return 1 if cross > 0.0 else -1


def is_tangential(ax, ay, bx, by, px, py, nx, ny):
    """True if the ring neighbors (p, n) of corner b lie on one side of a->b.

    Collinear neighbors count as tangential (grazing contact may still carry
    a shortest path).
    """
    o1 = orientation(ax, ay, bx, by, px, py)
    o2 = orientation(ax, ay, bx, by, nx, ny)
    return o1 == 0 or o2 == 0 or o1 == o2


# ---------------------------------------------------------------------------
# point vs polygon
# ---------------------------------------------------------------------------

def _pt_seg_dist2(qx, qy, x1, y1, x2, y2):
    dx = x2 - x1
    dy = y2 - y1
    ll = dx * dx + dy * dy
    t = (qx - x1) * dx + (qy - y1) * dy
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


def _pip_rng(qx, qy, coords, lo, hi, eps):
    """Strict interior test on coords[lo:hi]; the eps boundary band is outside."""
    eps2 = eps * eps
    x1 = coords[hi - 2]
    y1 = coords[hi - 1]
    i = lo
    while i < hi:
        x2 = coords[i]
        y2 = coords[i + 1]
        if _pt_seg_dist2(qx, qy, x1, y1, x2, y2) <= eps2:
            return False
        x1 = x2
        y1 = y2
        i += 2
    inside = False
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


def point_in_polygon(qx, qy, coords, eps):
    return _pip_rng(qx, qy, coords, 0, len(coords), eps)


# ---------------------------------------------------------------------------
# segment vs polygon
# ---------------------------------------------------------------------------

def _sign_eps(val, m1, m2):
    """Sign of a 2x2 determinant, zero within EPS_CROSS of the operand scale.

    m1, m2 are the squared magnitudes of the two cross-product operands.
    """
    if val * val <= (EPS_CROSS * EPS_CROSS) * m1 * m2:
        return 0
    return 1 if val > 0.0 else -1


def _seg_params_rng(ax, ay, bx, by, coords, lo, hi):
    """Sorted, deduplicated parameters along a->b where it meets the ring."""
    rx = bx - ax
    ry = by - ay
    rr = rx * rx + ry * ry
    if rr == 0.0:
        return []
    ts = []
    cx = coords[hi - 2]
    cy = coords[hi - 1]
    i = lo
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
            # collinear edge: record the clamped overlap interval
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
                ts.append(tlo)
                if thi - tlo > EPS_PARAM:
                    ts.append(thi)
        else:
            if s3 == 0:
                tc = ((cx - ax) * rx + (cy - ay) * ry) / rr
                if -EPS_PARAM <= tc <= 1.0 + EPS_PARAM:
                    ts.append(0.0 if tc < 0.0 else (1.0 if tc > 1.0 else tc))
            if s4 == 0:
                td = ((dx - ax) * rx + (dy - ay) * ry) / rr
                if -EPS_PARAM <= td <= 1.0 + EPS_PARAM:
                    ts.append(0.0 if td < 0.0 else (1.0 if td > 1.0 else td))
            if s1 == 0 and qq > 0.0:
                u = (acx * qx + acy * qy) / qq
                if -EPS_PARAM <= u <= 1.0 + EPS_PARAM:
                    ts.append(0.0)
            if s2 == 0 and qq > 0.0:
                u = (bcx * qx + bcy * qy) / qq
                if -EPS_PARAM <= u <= 1.0 + EPS_PARAM:
                    ts.append(1.0)
            if s1 * s2 < 0 and s3 * s4 < 0:
                t = d1 / (d1 - d2)
                ts.append(0.0 if t < 0.0 else (1.0 if t > 1.0 else t))
        cx = dx
        cy = dy
        i += 2
    ts.sort()
    out = []
    last = -1.0
    for t in ts:
        if t - last > EPS_PARAM:
            out.append(t)
            last = t
    return out


def segment_params(ax, ay, bx, by, coords):
    return _seg_params_rng(ax, ay, bx, by, coords, 0, len(coords))


def _li_rng(ax, ay, bx, by, coords, lo, hi, eps):
    """Midpoint subdivision test: split a->b at its ring crossings and check
    whether any sub-segment midpoint is strictly interior."""
    ts = _seg_params_rng(ax, ay, bx, by, coords, lo, hi)
    rx = bx - ax
    ry = by - ay
    prev = 0.0
    for t in ts:
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


def _first_param_rng(ax, ay, bx, by, coords, lo, hi, eps):
    """Parameter of the earliest strictly-interior sub-segment midpoint, or -1."""
    ts = _seg_params_rng(ax, ay, bx, by, coords, lo, hi)
    rx = bx - ax
    ry = by - ay
    prev = 0.0
    for t in ts:
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


def _bbox_disjoint(sx0, sy0, sx1, sy1, px0, py0, px1, py1):
    return sx1 < px0 or px1 < sx0 or sy1 < py0 or py1 < sy0


def line_intersects_polygon(ax, ay, bx, by, coords, eps):
    n = len(coords)
    px0 = coords[0]
    py0 = coords[1]
    px1 = px0
    py1 = py0
    i = 2
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
    sx0 = ax if ax < bx else bx
    sx1 = bx if ax < bx else ax
    sy0 = ay if ay < by else by
    sy1 = by if ay < by else ay
    if _bbox_disjoint(sx0, sy0, sx1, sy1, px0, py0, px1, py1):
        return False
    return _li_rng(ax, ay, bx, by, coords, 0, n, eps)


def first_interior_param(ax, ay, bx, by, coords, eps):
    return _first_param_rng(ax, ay, bx, by, coords, 0, len(coords), eps)


# ---------------------------------------------------------------------------
# segment / point vs polygon set
# ---------------------------------------------------------------------------

def any_hit(ax, ay, bx, by, offsets, coords, bboxes, epses):
    """True if a->b enters the interior of any polygon in the set."""
    n = len(offsets) - 1
    sx0 = ax if ax < bx else bx
    sx1 = bx if ax < bx else ax
    sy0 = ay if ay < by else by
    sy1 = by if ay < by else ay
    for k in range(n):
        b = 4 * k
        if _bbox_disjoint(sx0, sy0, sx1, sy1,
                          bboxes[b], bboxes[b + 1], bboxes[b + 2], bboxes[b + 3]):
            continue
        if _li_rng(ax, ay, bx, by, coords, offsets[k], offsets[k + 1], epses[k]):
            return True
    return False


def first_hit(ax, ay, bx, by, offsets, coords, bboxes, epses):
    """Index of the polygon entered earliest along a->b, or -1."""
    n = len(offsets) - 1
    sx0 = ax if ax < bx else bx
    sx1 = bx if ax < bx else ax
    sy0 = ay if ay < by else by
    sy1 = by if ay < by else ay
    best = -1
    best_t = INF
    for k in range(n):
        b = 4 * k
        if _bbox_disjoint(sx0, sy0, sx1, sy1,
                          bboxes[b], bboxes[b + 1], bboxes[b + 2], bboxes[b + 3]):
            continue
        t = _first_param_rng(ax, ay, bx, by, coords, offsets[k], offsets[k + 1], epses[k])
        if t >= 0.0 and t < best_t:
            best_t = t
            best = k
    return best


def point_in_any(qx, qy, offsets, coords, bboxes, epses):
    """Index of the first polygon whose interior strictly contains q, or -1."""
    n = len(offsets) - 1
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

def _seg_rect_overlap(x1, y1, x2, y2, rx0, ry0, rx1, ry1):
    """Liang-Barsky overlap test of segment vs closed rectangle."""
    t0 = 0.0
    t1 = 1.0
    dx = x2 - x1
    dy = y2 - y1

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


def rasterize_polygon(occ, width, height, ox, oy, res, coords, eps):
    """Mark cells overlapping the polygon (center/corner interior or edge contact)."""
    n = len(coords)
    px0 = coords[0]
    py0 = coords[1]
    px1 = px0
    py1 = py0
    i = 2
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
    ix0 = int((px0 - ox) / res) - 1
    iy0 = int((py0 - oy) / res) - 1
    ix1 = int((px1 - ox) / res) + 1
    iy1 = int((py1 - oy) / res) + 1
    if ix0 < 0:
        ix0 = 0
    if iy0 < 0:
        iy0 = 0
    if ix1 > width - 1:
        ix1 = width - 1
    if iy1 > height - 1:
        iy1 = height - 1
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

_DX = (1, -1, 0, 0, 1, 1, -1, -1)
_DY = (0, 0, 1, -1, 1, -1, 1, -1)


def _octile(dx, dy):
    if dx < 0:
        dx = -dx
    if dy < 0:
        dy = -dy
    mn = dx if dx < dy else dy
    return (dx + dy) + (SQRT2 - 2.0) * mn


def grid_astar(occ, width, height, sx, sy, gx, gy):
    """Octile-heuristic A*, no corner cutting.  Returns flat cell indices
    from start to goal, or None when unreachable."""
    start = sy * width + sx
    goal = gy * width + gx
    if occ[start] or occ[goal]:
        return None
    size = width * height
    g = [INF] * size
    state = bytearray(size)
    parent = [-1] * size
    g[start] = 0.0
    tie = 0
    heap = [(_octile(sx - gx, sy - gy), 0, start)]
    while heap:
        f, _, cur = heappop(heap)
        if state[cur]:
            continue
        state[cur] = 1
        if cur == goal:
            out = []
            while cur != -1:
                out.append(cur)
                cur = parent[cur]
            out.reverse()
            return out
        x = cur - (cur // width) * width
        y = cur // width
        gc = g[cur]
        for k in range(8):
            nx = x + _DX[k]
            ny = y + _DY[k]
            if nx < 0 or nx >= width or ny < 0 or ny >= height:
                continue
            ni = ny * width + nx
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
                heappush(heap, (ng + _octile(nx - gx, ny - gy), tie, ni))
    return None
