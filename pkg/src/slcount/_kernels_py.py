"""Pure-Python enumeration kernels for SL(3,Z) and SL(4,Z) norm balls.

One subtree = all completions of a fixed first row.  Rows are chosen
depth-first with exact squared-norm pruning; the last row is recovered
from the linear Diophantine condition  r . c = 1  (c the cofactor
vector of the prefix), whose solution set is the coset r0 + <rows>:
when gcd(c) = 1 the prefix rows span the full integer solution lattice
of r . c = 0 (equal covolume ||c||), so candidates are counted by exact
interval arithmetic over the prefix basis.

The compiled extension mirrors count_subtree_std3/count_subtree_adj3
including node accounting; these are the reference implementations and
the fallback backend.  All arithmetic is integer; no floats anywhere.
"""

from math import gcd, isqrt

BACKEND = "python"


def _xgcd(a, b):
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        return -g, -x, -y
    return g, x, y


def _ceildiv(a, b):
    return -((-a) // b)


def _round_div(num, den):
    # nearest integer to num/den, den > 0
    return (2 * num + den) // (2 * den)


def _gauss_reduce2(v1, v2):
    """Lagrange-reduce a pair of independent integer vectors (any dim)."""
    v1, v2 = list(v1), list(v2)
    n1 = sum(x * x for x in v1)
    n2 = sum(x * x for x in v2)
    if n1 > n2:
        v1, v2, n1, n2 = v2, v1, n2, n1
    while True:
        d = sum(a * b for a, b in zip(v1, v2))
        m = _round_div(d, n1)
        if m:
            v2 = [b - m * a for a, b in zip(v1, v2)]
            n2 = sum(x * x for x in v2)
        if n2 >= n1:
            return v1, v2
        v1, v2, n1, n2 = v2, v1, n2, n1


def _size_reduce(r, basis):
    """Babai-style size reduction of r against a (roughly) reduced basis."""
    r = list(r)
    for v in reversed(basis):
        nv = sum(x * x for x in v)
        m = _round_div(sum(a * b for a, b in zip(r, v)), nv)
        if m:
            r = [a - m * b for a, b in zip(r, v)]
    return r


def _ellipse_count(v1, v2, r, bound):
    """#{(a, b) integer : ||r + a v1 + b v2||^2 <= bound}, exact."""
    A = sum(x * x for x in v1)
    B = sum(a * b for a, b in zip(v1, v2))
    C = sum(x * x for x in v2)
    D = sum(a * b for a, b in zip(r, v1))
    E = sum(a * b for a, b in zip(r, v2))
    F = sum(x * x for x in r)
    delta = A * C - B * B  # = ||c||^2 > 0
    G = B * D - A * E
    rad = G * G + delta * (A * bound - A * F + D * D)
    if rad < 0:
        return 0, 0
    s = isqrt(rad)
    blo = _ceildiv(G - s, delta)
    bhi = (G + s) // delta
    total = 0
    cols = 0
    for b in range(blo, bhi + 1):
        cols += 1
        lin = B * b + D
        disc = lin * lin - A * (C * b * b + 2 * E * b + F - bound)
        if disc < 0:
            continue
        sa = isqrt(disc)
        lo = _ceildiv(-lin - sa, A)
        hi = (-lin + sa) // A
        if hi >= lo:
            total += hi - lo + 1
    return total, cols


def _ellipse_points(v1, v2, r, bound):
    """The solutions themselves, as vectors r + a v1 + b v2."""
    A = sum(x * x for x in v1)
    B = sum(a * b for a, b in zip(v1, v2))
    C = sum(x * x for x in v2)
    D = sum(a * b for a, b in zip(r, v1))
    E = sum(a * b for a, b in zip(r, v2))
    F = sum(x * x for x in r)
    delta = A * C - B * B
    G = B * D - A * E
    rad = G * G + delta * (A * bound - A * F + D * D)
    out = []
    if rad < 0:
        return out
    s = isqrt(rad)
    for b in range(_ceildiv(G - s, delta), (G + s) // delta + 1):
        lin = B * b + D
        disc = lin * lin - A * (C * b * b + 2 * E * b + F - bound)
        if disc < 0:
            continue
        sa = isqrt(disc)
        for a in range(_ceildiv(-lin - sa, A), (-lin + sa) // A + 1):
            out.append(tuple(x + a * p + b * q for x, p, q in zip(r, v1, v2)))
    return out


def _particular_solution3(c1, c2, c3):
    g12, p, q = _xgcd(c1, c2)
    g, s, t = _xgcd(g12, c3)
    assert g == 1
    return (s * p, s * q, t)


def solve_last_row3(r1, r2, bound):
    """All integer rows r with det[r1; r2; r] = 1 and ||r||^2 <= bound."""
    u1, u2, u3 = r1
    x, y, z = r2
    c1 = u2 * z - u3 * y
    c2 = u3 * x - u1 * z
    c3 = u1 * y - u2 * x
    if gcd(gcd(abs(c1), abs(c2)), abs(c3)) != 1:
        return []
    r0 = _particular_solution3(c1, c2, c3)
    v1, v2 = _gauss_reduce2(r1, r2)
    r = _size_reduce(r0, [v1, v2])
    return _ellipse_points(v1, v2, r, bound)


# ---------------------------------------------------------------------------
# SL(3,Z), Frobenius-norm ball (standard representation)
# ---------------------------------------------------------------------------


def count_subtree_std3(r1, t2floor, node_budget):
    """(count, nodes, completed) over second rows for the fixed first row.

    Only half of the second rows are scanned: (r2, r3) -> (-r2, -r3) is
    a norm- and determinant-preserving bijection of completions, so
    each scanned second row contributes twice.
    """
    u1, u2, u3 = r1
    s1 = u1 * u1 + u2 * u2 + u3 * u3
    rem = t2floor - s1 - 1  # the last row needs norm >= 1
    count = 0
    nodes = 0
    if rem < 1:
        return 0, 0, True
    for x in range(0, isqrt(rem) + 1):
        if nodes > node_budget:
            return count, nodes, False
        rem2 = rem - x * x
        ymax = isqrt(rem2)
        for y in range(-ymax if x > 0 else 0, ymax + 1):
            zmax = isqrt(rem2 - y * y)
            zmin = -zmax if (x > 0 or y > 0) else 1
            c3 = u1 * y - u2 * x
            for z in range(zmin, zmax + 1):
                nodes += 1
                c1 = u2 * z - u3 * y
                c2 = u3 * x - u1 * z
                if gcd(gcd(abs(c1), abs(c2)), abs(c3)) != 1:
                    continue
                bound = t2floor - s1 - (x * x + y * y + z * z)
                r0 = _particular_solution3(c1, c2, c3)
                v1, v2 = _gauss_reduce2(r1, (x, y, z))
                r = _size_reduce(r0, [v1, v2])
                got, cols = _ellipse_count(v1, v2, r, bound)
                count += 2 * got
                nodes += cols
    return count, nodes, True


def list_subtree_std3(r1, t2floor):
    out = []
    u1, u2, u3 = r1
    s1 = u1 * u1 + u2 * u2 + u3 * u3
    rem = t2floor - s1 - 1
    if rem < 1:
        return out, 0
    nodes = 0
    for x in range(-isqrt(rem), isqrt(rem) + 1):
        rem2 = rem - x * x
        ymax = isqrt(rem2)
        for y in range(-ymax, ymax + 1):
            zmax = isqrt(rem2 - y * y)
            for z in range(-zmax, zmax + 1):
                nodes += 1
                r2 = (x, y, z)
                bound = t2floor - s1 - (x * x + y * y + z * z)
                for r3 in solve_last_row3(r1, r2, bound):
                    nodes += 1
                    out.append((tuple(r1), r2, r3))
    return out, nodes


# ---------------------------------------------------------------------------
# SL(3,Z), adjoint-norm ball: ||g||^2 * ||adj g||^2 <= cap
# ---------------------------------------------------------------------------


def _adj_norm_sq3(r1, r2, r3):
    u = _cross(r2, r3)
    v = _cross(r3, r1)
    c = _cross(r1, r2)
    return sum(x * x for x in u) + sum(x * x for x in v) + sum(x * x for x in c)


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def count_subtree_adj3(r1, cap, node_budget, collect=None):
    """(count, nodes, completed) for the adjoint ball, fixed first row.

    cap = floor(T^2) + 1 bounds ||g||^2 * ||adj g||^2.  Prefix pruning
    uses that every row of g and of adj(g) is a nonzero integer vector
    and that the cofactor row of the prefix is one row of adj(g).
    Counting mode scans half the second rows (sign-flip bijection);
    collecting mode scans all of them.
    """
    u1, u2, u3 = r1
    s1 = u1 * u1 + u2 * u2 + u3 * u3
    count = 0
    nodes = 0
    half = collect is None
    rem = cap // 3 - s1 - 1  # (s1 + s2 + 1) * 3 <= cap
    if rem < 1:
        return 0, 0, True
    for x in range(0 if half else -isqrt(rem), isqrt(rem) + 1):
        if nodes > node_budget:
            return count, nodes, False
        rem2 = rem - x * x
        ymax = isqrt(rem2)
        for y in range(-ymax if (x > 0 or not half) else 0, ymax + 1):
            zmax = isqrt(rem2 - y * y)
            zmin = -zmax if (x > 0 or y > 0 or not half) else 1
            c3 = u1 * y - u2 * x
            for z in range(zmin, zmax + 1):
                nodes += 1
                c1 = u2 * z - u3 * y
                c2 = u3 * x - u1 * z
                if gcd(gcd(abs(c1), abs(c2)), abs(c3)) != 1:
                    continue
                s2 = x * x + y * y + z * z
                cc = c1 * c1 + c2 * c2 + c3 * c3
                bound = cap // (cc + 2) - s1 - s2  # ||adj g||^2 >= cc + 2
                if bound < 1:
                    continue
                r0 = _particular_solution3(c1, c2, c3)
                v1, v2 = _gauss_reduce2(r1, (x, y, z))
                r = _size_reduce(r0, [v1, v2])
                r2 = (x, y, z)
                for r3 in _ellipse_points(v1, v2, r, bound):
                    nodes += 1
                    s3 = sum(w * w for w in r3)
                    if (s1 + s2 + s3) * _adj_norm_sq3(r1, r2, r3) <= cap:
                        count += 2 if half else 1
                        if collect is not None:
                            collect.append((tuple(r1), r2, r3))
    return count, nodes, True


# ---------------------------------------------------------------------------
# SL(4,Z): standard and adjoint balls (desk scale, Python only)
# ---------------------------------------------------------------------------


def _gencross4(r1, r2, r3):
    """c with det[r1; r2; r3; r] = sum_j r_j c_j for every r."""
    rows = (r1, r2, r3)

    def minor(cols):
        (a, b, c), (d, e, f), (g, h, i) = (
            tuple(rows[0][j] for j in cols),
            tuple(rows[1][j] for j in cols),
            tuple(rows[2][j] for j in cols),
        )
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    m = [minor(tuple(j for j in range(4) if j != k)) for k in range(4)]
    return (-m[0], m[1], -m[2], m[3])


def _particular_solution4(c):
    g2, p1, p2 = _xgcd(c[0], c[1])
    g3, q1, q2 = _xgcd(g2, c[2])
    g4, s1, s2 = _xgcd(g3, c[3])
    assert g4 == 1
    return (s1 * q1 * p1, s1 * q1 * p2, s1 * q2, s2)


def _reduce_basis(basis):
    """Greedy pairwise Lagrange sweeps; adequate reduction at desk scale."""
    basis = [list(v) for v in basis]
    changed = True
    while changed:
        changed = False
        basis.sort(key=lambda v: sum(x * x for x in v))
        for i in range(len(basis)):
            ni = sum(x * x for x in basis[i])
            for j in range(len(basis)):
                if i == j:
                    continue
                m = _round_div(sum(a * b for a, b in zip(basis[i], basis[j])), ni)
                if m:
                    new = [b - m * a for a, b in zip(basis[i], basis[j])]
                    if sum(x * x for x in new) < sum(x * x for x in basis[j]):
                        basis[j] = new
                        changed = True
    return basis


def _ellipsoid3_scan(basis, r, bound):
    """Integer points r + a1 v1 + a2 v2 + a3 v3 with norm^2 <= bound.

    Exact interval bounds per level via Schur complements (all integer).
    """
    v1, v2, v3 = basis
    G11 = sum(x * x for x in v1)
    G22 = sum(x * x for x in v2)
    G33 = sum(x * x for x in v3)
    G12 = sum(a * b for a, b in zip(v1, v2))
    G13 = sum(a * b for a, b in zip(v1, v3))
    G23 = sum(a * b for a, b in zip(v2, v3))
    e1 = sum(a * b for a, b in zip(r, v1))
    e2 = sum(a * b for a, b in zip(r, v2))
    e3 = sum(a * b for a, b in zip(r, v3))
    F = sum(x * x for x in r)
    detH = G11 * G22 - G12 * G12
    detG = (
        G11 * (G22 * G33 - G23 * G23)
        - G12 * (G12 * G33 - G23 * G13)
        + G13 * (G12 * G23 - G22 * G13)
    )
    # adj(H) applied to (G13, G23) and (e1, e2)
    ag1 = G22 * G13 - G12 * G23
    ag2 = G11 * G23 - G12 * G13
    ae1 = G22 * e1 - G12 * e2
    ae2 = G11 * e2 - G12 * e1
    lin3 = detH * e3 - (G13 * ae1 + G23 * ae2)
    const3 = detH * (F - bound) - (e1 * ae1 + e2 * ae2)
    rad3 = lin3 * lin3 - detG * const3
    out = []
    if rad3 < 0:
        return out
    s3 = isqrt(rad3)
    for a3 in range(_ceildiv(-lin3 - s3, detG), (-lin3 + s3) // detG + 1):
        lin2 = G11 * (G23 * a3 + e2) - G12 * (G13 * a3 + e1)
        const2 = G11 * (G33 * a3 * a3 + 2 * e3 * a3 + F - bound) - (G13 * a3 + e1) ** 2
        rad2 = lin2 * lin2 - detH * const2
        if rad2 < 0:
            continue
        s2 = isqrt(rad2)
        for a2 in range(_ceildiv(-lin2 - s2, detH), (-lin2 + s2) // detH + 1):
            lin1 = G12 * a2 + G13 * a3 + e1
            const1 = (
                G22 * a2 * a2
                + G33 * a3 * a3
                + 2 * (G23 * a2 * a3 + e2 * a2 + e3 * a3)
                + F
                - bound
            )
            rad1 = lin1 * lin1 - G11 * const1
            if rad1 < 0:
                continue
            s1 = isqrt(rad1)
            for a1 in range(_ceildiv(-lin1 - s1, G11), (-lin1 + s1) // G11 + 1):
                out.append(
                    tuple(
                        x + a1 * p + a2 * q + a3 * w
                        for x, p, q, w in zip(r, v1, v2, v3)
                    )
                )
    return out


def solve_last_row4(r1, r2, r3, bound):
    c = _gencross4(r1, r2, r3)
    if gcd(gcd(abs(c[0]), abs(c[1])), gcd(abs(c[2]), abs(c[3]))) != 1:
        return []
    r0 = _particular_solution4(c)
    basis = _reduce_basis([r1, r2, r3])
    r = _size_reduce(r0, basis)
    return _ellipsoid3_scan(basis, r, bound)


def _ball4(rem):
    top = isqrt(rem)
    for x in range(-top, top + 1):
        r2 = rem - x * x
        ymax = isqrt(r2)
        for y in range(-ymax, ymax + 1):
            r3 = r2 - y * y
            zmax = isqrt(r3)
            for z in range(-zmax, zmax + 1):
                wmax = isqrt(r3 - z * z)
                for w in range(-wmax, wmax + 1):
                    yield (x, y, z, w)


def count_subtree_std4(r1, t2floor, node_budget, collect=None):
    s1 = sum(x * x for x in r1)
    count = 0
    nodes = 0
    rem2 = t2floor - s1 - 2
    if rem2 < 1:
        return 0, 0, True
    for r2 in _ball4(rem2):
        if nodes > node_budget:
            return count, nodes, False
        s2 = sum(x * x for x in r2)
        for r3 in _ball4(t2floor - s1 - s2 - 1):
            nodes += 1
            s3 = sum(x * x for x in r3)
            sols = solve_last_row4(r1, r2, r3, t2floor - s1 - s2 - s3)
            nodes += len(sols)
            count += len(sols)
            if collect is not None:
                for r4 in sols:
                    collect.append((tuple(r1), r2, r3, r4))
    return count, nodes, True


def _adj_norm_sq4(rows):
    idx = (0, 1, 2, 3)
    total = 0
    for i in range(4):
        sub = [rows[k] for k in idx if k != i]
        for j in range(4):
            cols = tuple(c for c in idx if c != j)
            (a, b, c), (d, e, f), (g, h, ii) = (
                tuple(sub[0][cc] for cc in cols),
                tuple(sub[1][cc] for cc in cols),
                tuple(sub[2][cc] for cc in cols),
            )
            m = a * (e * ii - f * h) - b * (d * ii - f * g) + c * (d * h - e * g)
            total += m * m
    return total


def count_subtree_adj4(r1, cap, node_budget, collect=None):
    s1 = sum(x * x for x in r1)
    count = 0
    nodes = 0
    rem2 = cap // 4 - s1 - 2  # (s1 + s2 + 2) * 4 <= cap
    if rem2 < 1:
        return 0, 0, True
    for r2 in _ball4(rem2):
        if nodes > node_budget:
            return count, nodes, False
        s2 = sum(x * x for x in r2)
        for r3 in _ball4(cap // 4 - s1 - s2 - 1):
            nodes += 1
            s3 = sum(x * x for x in r3)
            c = _gencross4(r1, r2, r3)
            if gcd(gcd(abs(c[0]), abs(c[1])), gcd(abs(c[2]), abs(c[3]))) != 1:
                continue
            cc = sum(x * x for x in c)
            bound = cap // (cc + 3) - s1 - s2 - s3
            if bound < 1:
                continue
            r0 = _particular_solution4(c)
            basis = _reduce_basis([r1, r2, r3])
            r = _size_reduce(r0, basis)
            for r4 in _ellipsoid3_scan(basis, r, bound):
                nodes += 1
                rows = (r1, r2, r3, r4)
                s4 = sum(x * x for x in r4)
                if (s1 + s2 + s3 + s4) * _adj_norm_sq4(rows) <= cap:
                    count += 1
                    if collect is not None:
                        collect.append((tuple(r1), r2, r3, r4))
    return count, nodes, True
