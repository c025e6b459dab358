# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels for SL(3,Z) norm balls.

Line-for-line mirror of the corresponding _kernels_py functions,
including node accounting, so the two backends are interchangeable.
int64 arithmetic is safe for squared radii up to 25000 (audited bound;
the orchestrator falls back to the big-int Python kernels above that).
"""

from libc.math cimport sqrt

ctypedef long long i64

BACKEND = "cython"


cdef inline i64 iabs(i64 x) nogil:
    return -x if x < 0 else x


cdef inline i64 igcd(i64 a, i64 b) nogil:
    cdef i64 t
    while b:
        t = a % b
        a = b
        b = t
    return a if a >= 0 else -a


cdef inline i64 isqrt64(i64 x) nogil:
    if x <= 0:
        return 0
    cdef i64 r = <i64>sqrt(<double>x)
    while r > 0 and r * r > x:
        r -= 1
    while (r + 1) * (r + 1) <= x:
        r += 1
    return r


cdef inline i64 floordiv(i64 a, i64 b) nogil:
    cdef i64 q = a / b
    if a % b != 0 and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline i64 ceildiv(i64 a, i64 b) nogil:
    return -floordiv(-a, b)


cdef inline i64 rounddiv(i64 num, i64 den) nogil:
    return floordiv(2 * num + den, 2 * den)


cdef struct Pair:
    i64 count
    i64 cols


cdef Pair ellipse_count(i64 v1x, i64 v1y, i64 v1z,
                        i64 v2x, i64 v2y, i64 v2z,
                        i64 rx, i64 ry, i64 rz, i64 bound) nogil:
    cdef Pair out
    out.count = 0
    out.cols = 0
    cdef i64 A = v1x * v1x + v1y * v1y + v1z * v1z
    cdef i64 B = v1x * v2x + v1y * v2y + v1z * v2z
    cdef i64 C = v2x * v2x + v2y * v2y + v2z * v2z
    cdef i64 D = rx * v1x + ry * v1y + rz * v1z
    cdef i64 E = rx * v2x + ry * v2y + rz * v2z
    cdef i64 F = rx * rx + ry * ry + rz * rz
    cdef i64 delta = A * C - B * B
    cdef i64 G = B * D - A * E
    cdef i64 rad = G * G + delta * (A * bound - A * F + D * D)
    if rad < 0:
        return out
    cdef i64 s = isqrt64(rad)
    cdef i64 blo = ceildiv(G - s, delta)
    cdef i64 bhi = floordiv(G + s, delta)
    cdef i64 b, lin, disc, sa, lo, hi
    for b in range(blo, bhi + 1):
        out.cols += 1
        lin = B * b + D
        disc = lin * lin - A * (C * b * b + 2 * E * b + F - bound)
        if disc < 0:
            continue
        sa = isqrt64(disc)
        lo = ceildiv(-lin - sa, A)
        hi = floordiv(-lin + sa, A)
        if hi >= lo:
            out.count += hi - lo + 1
    return out


cdef struct Basis:
    i64 ax, ay, az  # shorter vector
    i64 bx, by, bz


cdef Basis gauss_reduce2(i64 ax, i64 ay, i64 az, i64 bx, i64 by, i64 bz) nogil:
    cdef Basis out
    cdef i64 n1 = ax * ax + ay * ay + az * az
    cdef i64 n2 = bx * bx + by * by + bz * bz
    cdef i64 t, d, m
    if n1 > n2:
        t = ax; ax = bx; bx = t
        t = ay; ay = by; by = t
        t = az; az = bz; bz = t
        t = n1; n1 = n2; n2 = t
    while True:
        d = ax * bx + ay * by + az * bz
        m = rounddiv(d, n1)
        if m != 0:
            bx -= m * ax; by -= m * ay; bz -= m * az
            n2 = bx * bx + by * by + bz * bz
        if n2 >= n1:
            out.ax = ax; out.ay = ay; out.az = az
            out.bx = bx; out.by = by; out.bz = bz
            return out
        t = ax; ax = bx; bx = t
        t = ay; ay = by; by = t
        t = az; az = bz; bz = t
        t = n1; n1 = n2; n2 = t


cdef struct Vec3:
    i64 x, y, z


cdef Vec3 particular_solution(i64 c1, i64 c2, i64 c3) nogil:
    # extended gcd chain: r0 . c = 1 (gcd(c) = 1 guaranteed by caller)
    cdef i64 x = 1, nx = 0, y = 0, ny = 1, g = c1, ng = c2, q, t
    while ng:
        q = floordiv(g, ng)
        t = x - q * nx; x = nx; nx = t
        t = y - q * ny; y = ny; ny = t
        t = g - q * ng; g = ng; ng = t
    cdef i64 p = x, pq = y
    if g < 0:
        g = -g; p = -p; pq = -pq
    x = 1; nx = 0; y = 0; ny = 1
    cdef i64 g2 = g, ng2 = c3
    while ng2:
        q = floordiv(g2, ng2)
        t = x - q * nx; x = nx; nx = t
        t = y - q * ny; y = ny; ny = t
        t = g2 - q * ng2; g2 = ng2; ng2 = t
    if g2 < 0:
        x = -x; y = -y
    cdef Vec3 out
    out.x = x * p
    out.y = x * pq
    out.z = y
    return out


cdef Vec3 size_reduce(i64 rx, i64 ry, i64 rz, Basis b) nogil:
    cdef i64 nv, m
    nv = b.bx * b.bx + b.by * b.by + b.bz * b.bz
    m = rounddiv(rx * b.bx + ry * b.by + rz * b.bz, nv)
    if m != 0:
        rx -= m * b.bx; ry -= m * b.by; rz -= m * b.bz
    nv = b.ax * b.ax + b.ay * b.ay + b.az * b.az
    m = rounddiv(rx * b.ax + ry * b.ay + rz * b.az, nv)
    if m != 0:
        rx -= m * b.ax; ry -= m * b.ay; rz -= m * b.az
    cdef Vec3 out
    out.x = rx; out.y = ry; out.z = rz
    return out


def count_subtree_std3(r1, long long t2floor, long long node_budget):
    """(count, nodes, completed) for the Frobenius ball, fixed first row.

    Scans half the second rows ((r2, r3) -> (-r2, -r3) bijection) and
    doubles each contribution; mirrors the Python kernel exactly.
    """
    cdef i64 u1 = r1[0], u2 = r1[1], u3 = r1[2]
    cdef i64 s1 = u1 * u1 + u2 * u2 + u3 * u3
    cdef i64 rem = t2floor - s1 - 1
    cdef i64 count = 0, nodes = 0
    if rem < 1:
        return 0, 0, True
    cdef i64 x, y, z, rem2, ymax, ymin, zmax, zmin, c1, c2, c3, g, bound
    cdef Basis bas
    cdef Vec3 r0, rr
    cdef Pair got
    cdef i64 xmax = isqrt64(rem)
    for x in range(0, xmax + 1):
        if nodes > node_budget:
            return count, nodes, False
        rem2 = rem - x * x
        ymax = isqrt64(rem2)
        ymin = -ymax if x > 0 else 0
        for y in range(ymin, ymax + 1):
            zmax = isqrt64(rem2 - y * y)
            zmin = -zmax if (x > 0 or y > 0) else 1
            c3 = u1 * y - u2 * x
            for z in range(zmin, zmax + 1):
                nodes += 1
                c1 = u2 * z - u3 * y
                c2 = u3 * x - u1 * z
                g = igcd(igcd(iabs(c1), iabs(c2)), iabs(c3))
                if g != 1:
                    continue
                bound = t2floor - s1 - (x * x + y * y + z * z)
                r0 = particular_solution(c1, c2, c3)
                bas = gauss_reduce2(u1, u2, u3, x, y, z)
                rr = size_reduce(r0.x, r0.y, r0.z, bas)
                got = ellipse_count(bas.ax, bas.ay, bas.az,
                                    bas.bx, bas.by, bas.bz,
                                    rr.x, rr.y, rr.z, bound)
                count += 2 * got.count
                nodes += got.cols
    return count, nodes, True


def count_subtree_adj3(r1, long long cap, long long node_budget):
    """(count, nodes, completed) for the adjoint ball (||g||^2 ||adj||^2 <= cap)."""
    cdef i64 u1 = r1[0], u2 = r1[1], u3 = r1[2]
    cdef i64 s1 = u1 * u1 + u2 * u2 + u3 * u3
    cdef i64 count = 0, nodes = 0
    cdef i64 rem = cap / 3 - s1 - 1
    if rem < 1:
        return 0, 0, True
    cdef i64 x, y, z, rem2, ymax, ymin, zmax, zmin, c1, c2, c3, g, s2, cc, bound
    cdef i64 b, lin, disc, sa, lo, hi, a
    cdef i64 A, B, C, D, E, F, delta, G, rad, s
    cdef i64 wx, wy, wz, s3, ux, uy, uz, vx, vy, vz, adjsq
    cdef Basis bas
    cdef Vec3 r0, rr
    cdef i64 xmax = isqrt64(rem)
    for x in range(0, xmax + 1):
        if nodes > node_budget:
            return count, nodes, False
        rem2 = rem - x * x
        ymax = isqrt64(rem2)
        ymin = -ymax if x > 0 else 0
        for y in range(ymin, ymax + 1):
            zmax = isqrt64(rem2 - y * y)
            zmin = -zmax if (x > 0 or y > 0) else 1
            c3 = u1 * y - u2 * x
            for z in range(zmin, zmax + 1):
                nodes += 1
                c1 = u2 * z - u3 * y
                c2 = u3 * x - u1 * z
                g = igcd(igcd(iabs(c1), iabs(c2)), iabs(c3))
                if g != 1:
                    continue
                s2 = x * x + y * y + z * z
                cc = c1 * c1 + c2 * c2 + c3 * c3
                bound = cap / (cc + 2) - s1 - s2
                if bound < 1:
                    continue
                r0 = particular_solution(c1, c2, c3)
                bas = gauss_reduce2(u1, u2, u3, x, y, z)
                rr = size_reduce(r0.x, r0.y, r0.z, bas)
                # enumerate candidates in the ellipse, exact test each
                A = bas.ax * bas.ax + bas.ay * bas.ay + bas.az * bas.az
                B = bas.ax * bas.bx + bas.ay * bas.by + bas.az * bas.bz
                C = bas.bx * bas.bx + bas.by * bas.by + bas.bz * bas.bz
                D = rr.x * bas.ax + rr.y * bas.ay + rr.z * bas.az
                E = rr.x * bas.bx + rr.y * bas.by + rr.z * bas.bz
                F = rr.x * rr.x + rr.y * rr.y + rr.z * rr.z
                delta = A * C - B * B
                G = B * D - A * E
                rad = G * G + delta * (A * bound - A * F + D * D)
                if rad < 0:
                    continue
                s = isqrt64(rad)
                for b in range(ceildiv(G - s, delta), floordiv(G + s, delta) + 1):
                    lin = B * b + D
                    disc = lin * lin - A * (C * b * b + 2 * E * b + F - bound)
                    if disc < 0:
                        continue
                    sa = isqrt64(disc)
                    for a in range(ceildiv(-lin - sa, A), floordiv(-lin + sa, A) + 1):
                        nodes += 1
                        wx = rr.x + a * bas.ax + b * bas.bx
                        wy = rr.y + a * bas.ay + b * bas.by
                        wz = rr.z + a * bas.az + b * bas.bz
                        s3 = wx * wx + wy * wy + wz * wz
                        ux = y * wz - z * wy
                        uy = z * wx - x * wz
                        uz = x * wy - y * wx
                        vx = wy * u3 - wz * u2
                        vy = wz * u1 - wx * u3
                        vz = wx * u2 - wy * u1
                        adjsq = (ux * ux + uy * uy + uz * uz
                                 + vx * vx + vy * vy + vz * vz + cc)
                        if (s1 + s2 + s3) * adjsq <= cap:
                            count += 2
    return count, nodes, True
