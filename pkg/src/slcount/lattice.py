"""Exact enumeration of SL(n+1,Z) in norm balls (n = 2 or 3).

Counting runs over canonical first rows only: right multiplication by
the signed permutation matrices of determinant +1 (24 for SL(3), 192
for SL(4)) preserves the lattice and every supported ball norm and maps
the fiber over a first row v bijectively onto the fiber over vP, so
the ball count is sum(|orbit(v)| * N(v)) over orbit representatives.
Orbits of a sorted nonnegative row split in two (v and v with one sign
flipped) when all entries have distinct nonzero absolute value, and
merge into one otherwise, with weight = 2^m m! / |stabilizer|.

Membership tests are integer comparisons against the exact rational
squared radius; no floating point decides a boundary.  "Nodes" counts
second-row candidates scanned plus last-row interval columns (counting)
or candidates examined (listing); the node budget truncates the run
deterministically at chunk granularity (chunks have a fixed size, so
results never depend on the worker count), and truncated runs are
flagged partial.
"""

import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from . import _kernels_py
from .reps import RepKind, RepSpec, adjugate_exact

logger = logging.getLogger(__name__)

if os.environ.get("SLCOUNT_PURE"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND

CHUNK_REPS = 64  # fixed so budget truncation is worker-count independent
LOG_EVERY = 10**7
NAIVE_CELL_CAP = 50_000_000


class BudgetError(RuntimeError):
    pass


class UnsupportedSpecError(ValueError):
    pass


@dataclass
class CountRecord:
    t: float
    spec: str
    count: int
    nodes: int
    seconds: float
    partial: bool
    mode: str = "count"
    matrices: list = None


def _exact_t_sq(T=None, t_sq=None) -> Fraction:
    if t_sq is not None:
        return Fraction(t_sq)
    if T is None:
        raise ValueError("need a radius T or an exact squared radius t_sq")
    if isinstance(T, (float, np.floating)):
        # exact decimal semantics for float input
        return Fraction(repr(float(T))) ** 2
    return Fraction(T) ** 2


def canonical_first_rows(m: int, norm_cap: int):
    """Yield (row, orbit_weight) for the signed-permutation column action.

    Covers every nonzero integer row of norm^2 <= norm_cap exactly once
    per orbit; sum of weights equals the number of such rows.
    """
    if norm_cap < 1:
        return
    full = (2**m) * math.factorial(m)
    top = math.isqrt(norm_cap)

    def emit(sorted_row):
        zeros = sum(1 for x in sorted_row if x == 0)
        blocks = []
        run = 1
        for prev, cur in zip(sorted_row, sorted_row[1:]):
            if cur == prev and cur != 0:
                run += 1
            else:
                if prev != 0:
                    blocks.append(run)
                run = 1
        if sorted_row[-1] != 0:
            blocks.append(run)
        degenerate = zeros > 0 or any(r > 1 for r in blocks)
        if degenerate:
            stab = math.factorial(zeros) * (2**zeros)
            for r in blocks:
                stab *= math.factorial(r)
            yield sorted_row, full // stab
        else:
            flipped = (-sorted_row[0],) + sorted_row[1:]
            yield sorted_row, full // 2
            yield flipped, full // 2

    if m == 3:
        for c in range(top, -1, -1):
            cc = c * c
            for b in range(min(c, math.isqrt(norm_cap - cc)), -1, -1):
                bb = cc + b * b
                for a in range(min(b, math.isqrt(norm_cap - bb)), -1, -1):
                    if a == b == c == 0:
                        continue
                    yield from emit((a, b, c))
    elif m == 4:
        for d in range(top, -1, -1):
            dd = d * d
            for c in range(min(d, math.isqrt(norm_cap - dd)), -1, -1):
                cc = dd + c * c
                for b in range(min(c, math.isqrt(norm_cap - cc)), -1, -1):
                    bb = cc + b * b
                    for a in range(min(b, math.isqrt(norm_cap - bb)), -1, -1):
                        if a == b == c == d == 0:
                            continue
                        yield from emit((a, b, c, d))
    else:
        raise UnsupportedSpecError(f"matrix size {m} not supported")


def _normalize_spec(spec: RepSpec):
    """Collapse exterior powers onto standard/dual; reject the rest."""
    if spec.kind is RepKind.EXT:
        if spec.k == 1:
            return RepSpec(RepKind.STANDARD, spec.n)
        if spec.k == spec.n:
            return RepSpec(RepKind.DUAL, spec.n)
        raise UnsupportedSpecError(
            "middle exterior powers have no row-prefix pruning; "
            "supported: standard, dual, ext:1, ext:n, adjoint"
        )
    return spec


# the compiled kernels are overflow-audited for squared radii up to this
# bound; larger radii fall back to the big-int Python kernels
COMPILED_LIMIT_CAP = 25_000


def _kernel_for(kind: RepKind, m: int, mode: str, limit: int = 0):
    impl = _impl if limit <= COMPILED_LIMIT_CAP else _kernels_py
    if kind is RepKind.ADJOINT:
        if m == 3:
            return impl.count_subtree_adj3 if mode == "count" else _kernels_py.count_subtree_adj3
        return _kernels_py.count_subtree_adj4
    if m == 3:
        return impl.count_subtree_std3 if mode == "count" else None
    return _kernels_py.count_subtree_std4


def _limits(kind: RepKind, m: int, t_sq: Fraction):
    """(kernel limit parameter, first-row norm cap)."""
    t2floor = math.floor(t_sq)
    if kind is RepKind.ADJOINT:
        cap = t2floor + 1  # ||g||^2 ||adj g||^2 <= T^2 + 1, an integer test
        return cap, cap // m - (m - 1)
    return t2floor, t2floor - (m - 1)


def _run_chunk(args):
    kind_name, m, chunk, limit, budget = args
    kernel = _kernel_for(RepKind[kind_name], m, "count", limit)
    count = nodes = 0
    for row, weight in chunk:
        sub_count, sub_nodes, completed = kernel(row, limit, budget - nodes)
        count += weight * sub_count
        nodes += sub_nodes
        if not completed:
            return count, nodes, False
    return count, nodes, True


def enumerate_ball(
    n: int,
    spec: RepSpec,
    T=None,
    *,
    t_sq=None,
    mode: str = "count",
    workers: int = 1,
    node_budget: int = 10**9,
) -> CountRecord:
    """Exact |ball of radius T, intersected with SL(n+1,Z)|.

    mode "count" uses the symmetry-reduced scan (parallelizable);
    mode "list" does the plain scan and attaches the matrices.
    """
    if n not in (2, 3):
        raise UnsupportedSpecError("shipped pruning supports n in {2, 3}")
    if mode not in ("count", "list"):
        raise ValueError("mode must be 'count' or 'list'")
    spec = _normalize_spec(spec)
    m = n + 1
    t_sq = _exact_t_sq(T, t_sq)
    t_display = math.sqrt(float(t_sq))
    started = time.monotonic()

    work_kind = spec.kind
    if work_kind is RepKind.DUAL:
        # g -> adj(g) = g^-1 maps the dual ball bijectively onto the
        # standard ball; counts agree and lists are adjugates.
        work_kind = RepKind.STANDARD

    limit, row_cap = _limits(work_kind, m, t_sq)

    if mode == "list":
        matrices, nodes = _list_scan(work_kind, m, limit, row_cap, node_budget)
        if spec.kind is RepKind.DUAL:
            matrices = [tuple(tuple(r) for r in adjugate_exact(g)) for g in matrices]
        return CountRecord(
            t=t_display,
            spec=spec.label(),
            count=len(matrices),
            nodes=nodes,
            seconds=time.monotonic() - started,
            partial=False,
            mode="list",
            matrices=matrices,
        )

    tasks = list(canonical_first_rows(m, row_cap)) if row_cap >= 1 else []
    chunks = [tasks[i : i + CHUNK_REPS] for i in range(0, len(tasks), CHUNK_REPS)]
    payloads = [(work_kind.name, m, c, limit, node_budget) for c in chunks]

    count = nodes = 0
    partial = False
    logged = 0
    if workers <= 1 or len(payloads) <= 1:
        for payload in payloads:
            c, nd, completed = _run_chunk(payload)
            count += c
            nodes += nd
            if nodes - logged >= LOG_EVERY:
                logger.info("scanned %d nodes, count so far %d", nodes, count)
                logged = nodes
            if not completed or nodes > node_budget:
                partial = True
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pending = []
            it = iter(payloads)
            stop = False
            while pending or not stop:
                while not stop and len(pending) < 2 * workers:
                    nxt = next(it, None)
                    if nxt is None:
                        stop = True
                        break
                    pending.append(pool.submit(_run_chunk, nxt))
                if not pending:
                    break
                c, nd, completed = pending.pop(0).result()
                count += c
                nodes += nd
                if nodes - logged >= LOG_EVERY:
                    logger.info("scanned %d nodes, count so far %d", nodes, count)
                    logged = nodes
                if not completed or nodes > node_budget:
                    partial = True
                    for f in pending:
                        f.cancel()
                    break

    return CountRecord(
        t=t_display,
        spec=spec.label(),
        count=count,
        nodes=nodes,
        seconds=time.monotonic() - started,
        partial=partial,
        mode="count",
    )


def _list_scan(kind: RepKind, m: int, limit: int, row_cap: int, node_budget: int):
    matrices = []
    nodes = 0
    if row_cap < 1:
        return matrices, nodes
    top = math.isqrt(row_cap)
    axes = range(-top, top + 1)
    for row in product(axes, repeat=m):
        if sum(x * x for x in row) > row_cap or not any(row):
            continue
        if kind is RepKind.ADJOINT:
            kernel = _kernels_py.count_subtree_adj3 if m == 3 else _kernels_py.count_subtree_adj4
            got, nd, completed = kernel(row, limit, node_budget - nodes, collect=matrices)
        elif m == 3:
            sub, nd = _kernels_py.list_subtree_std3(row, limit)
            matrices.extend(sub)
            completed = True
        else:
            got, nd, completed = _kernels_py.count_subtree_std4(
                row, limit, node_budget - nodes, collect=matrices
            )
        nodes += nd
        if nodes > node_budget:
            raise BudgetError("node budget exhausted in list mode")
    return matrices, nodes


def solve_last_row(rows, norm_budget: int):
    """All integer last rows completing `rows` to determinant one within
    the squared-norm budget; empty when the prefix is not extendable."""
    rows = [tuple(int(x) for x in r) for r in rows]
    m = len(rows) + 1
    if any(len(r) != m for r in rows):
        raise ValueError("need n rows of length n+1")
    if m == 3:
        return sorted(_kernels_py.solve_last_row3(rows[0], rows[1], norm_budget))
    if m == 4:
        return sorted(_kernels_py.solve_last_row4(rows[0], rows[1], rows[2], norm_budget))
    raise UnsupportedSpecError("supported sizes are 3 and 4")


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------


def _det_columns(cols, m):
    if m == 3:
        a, b, c, d, e, f, g, h, i = cols
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    out = 0
    for j in range(4):
        rest = [cols[4 + k] for k in range(12) if (k % 4) != j]
        minor = _det_columns(rest, 3)
        term = cols[j] * minor
        out = out + term if j % 2 == 0 else out - term
    return out


def _adj_sq_columns(cols, m):
    idx = list(range(m))
    total = 0
    for i in idx:
        for j in idx:
            rows_sel = [r for r in idx if r != i]
            cols_sel = [c for c in idx if c != j]
            sub = [cols[r * m + c] for r in rows_sel for c in cols_sel]
            minor = (
                sub[0] * (sub[4] * sub[8] - sub[5] * sub[7])
                - sub[1] * (sub[3] * sub[8] - sub[5] * sub[6])
                + sub[2] * (sub[3] * sub[7] - sub[4] * sub[6])
                if m == 4
                else sub[0] * sub[3] - sub[1] * sub[2]
            )
            total = total + minor * minor
    return total


def _minor_sq_sum(cols, m, k):
    from itertools import combinations

    total = 0
    for rsel in combinations(range(m), k):
        for csel in combinations(range(m), k):
            sub = [cols[r * m + c] for r in rsel for c in csel]
            if k == 1:
                d = sub[0]
            elif k == 2:
                d = sub[0] * sub[3] - sub[1] * sub[2]
            else:
                d = (
                    sub[0] * (sub[4] * sub[8] - sub[5] * sub[7])
                    - sub[1] * (sub[3] * sub[8] - sub[5] * sub[6])
                    + sub[2] * (sub[3] * sub[7] - sub[4] * sub[6])
                )
            total = total + d * d
    return total


def naive_enumerate(n: int, spec: RepSpec, T=None, *, t_sq=None, entry_bound: int) -> int:
    """Exhaustive scan over all integer matrices with entries in
    [-B, B]; exact determinant and ball tests.  Oracle only."""
    if entry_bound < 0:
        raise ValueError("entry bound must be nonnegative")
    m = n + 1
    cells = (2 * entry_bound + 1) ** (m * m)
    if cells > NAIVE_CELL_CAP:
        raise BudgetError(f"{cells} candidate matrices exceed the oracle cap")
    spec = _normalize_spec(RepSpec(spec.kind, spec.n, spec.k)) if spec.kind is RepKind.EXT else spec
    t_sq = _exact_t_sq(T, t_sq)
    t2floor = math.floor(t_sq)
    if entry_bound == 0:
        return 0  # only the zero matrix, which is singular

    span = np.arange(-entry_bound, entry_bound + 1, dtype=np.int64)
    n_free = m * m
    head = 0
    while (2 * entry_bound + 1) ** (n_free - head) > 2_000_000:
        head += 1
    rest = np.stack(
        np.meshgrid(*([span] * (n_free - head)), indexing="ij")
    ).reshape(n_free - head, -1)
    total = 0
    for lead in product(span.tolist(), repeat=head):
        cols = [np.full(rest.shape[1], v, dtype=np.int64) for v in lead] + list(rest)
        det = _det_columns(cols, m)
        keep = det == 1
        if not keep.any():
            continue
        kept = [c[keep] for c in cols]
        frob = sum(c * c for c in kept)
        if spec.kind is RepKind.STANDARD:
            ok = frob <= t2floor
        elif spec.kind is RepKind.DUAL:
            ok = _adj_sq_columns(kept, m) <= t2floor
        elif spec.kind is RepKind.ADJOINT:
            ok = frob * _adj_sq_columns(kept, m) <= t2floor + 1
        else:
            ok = _minor_sq_sum(kept, m, spec.k) <= t2floor
        total += int(ok.sum())
    return total
