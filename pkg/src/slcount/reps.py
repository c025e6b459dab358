"""Matrix realizations of the supported irreducible representations.

Supported families: standard, dual, exterior powers, adjoint.  Norms of
integer unimodular matrices are computed in exact integer arithmetic
end to end (the only floating-point step is the final square root), so
ball membership tests downstream can compare exact squared norms.

Weight vectors are stored as integer exponent vectors of the diagonal
action, i.e. a weight w acts on diag(h_1..h_{n+1}) as sum w_i h_i.
They are representatives modulo the all-ones vector (which vanishes on
the traceless diagonal where all evaluations happen); e.g. the standard
weights are stored as e_i, whose class equals e_i - (1/(n+1))*sum e.
"""

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import cartan


class RepKind(enum.Enum):
    STANDARD = "standard"
    DUAL = "dual"
    EXT = "ext"
    ADJOINT = "adjoint"


@dataclass(frozen=True)
class RepSpec:
    kind: RepKind
    n: int  # rank; matrices are (n+1) x (n+1)
    k: int = 0  # exterior power degree, EXT only

    def __post_init__(self):
        cartan.check_rank(self.n)
        if self.kind is RepKind.EXT and not 1 <= self.k <= self.n:
            raise ValueError(f"exterior power degree must be in 1..{self.n}, got {self.k}")

    @property
    def size(self) -> int:
        return self.n + 1

    def label(self) -> str:
        return f"ext:{self.k}" if self.kind is RepKind.EXT else self.kind.value


def parse_rep(s: str, n: int) -> RepSpec:
    s = s.lower()
    if s == "standard":
        return RepSpec(RepKind.STANDARD, n)
    if s == "dual":
        return RepSpec(RepKind.DUAL, n)
    if s == "adjoint":
        return RepSpec(RepKind.ADJOINT, n)
    if s.startswith("ext:"):
        return RepSpec(RepKind.EXT, n, int(s[4:]))
    raise ValueError(f"unknown representation {s!r} (standard|dual|ext:K|adjoint)")


def dim(spec: RepSpec) -> int:
    m = spec.size
    if spec.kind in (RepKind.STANDARD, RepKind.DUAL):
        return m
    if spec.kind is RepKind.EXT:
        return math.comb(m, spec.k)
    return m * m - 1


def highest_weight(spec: RepSpec) -> tuple:
    """Fundamental-weight coordinates of the highest weight."""
    n = spec.n
    q = [0] * n
    if spec.kind is RepKind.STANDARD:
        q[0] = 1
    elif spec.kind is RepKind.DUAL:
        q[n - 1] = 1
    elif spec.kind is RepKind.EXT:
        q[spec.k - 1] = 1
    else:
        q[0] += 1
        q[n - 1] += 1
    return tuple(q)


def weight_multiset(spec: RepSpec) -> list:
    """[(exponent vector, multiplicity)] of the diagonal action."""
    m = spec.size
    if spec.kind is RepKind.STANDARD:
        return [(tuple(1 if i == j else 0 for j in range(m)), 1) for i in range(m)]
    if spec.kind is RepKind.DUAL:
        return [(tuple(-1 if i == j else 0 for j in range(m)), 1) for i in range(m)]
    if spec.kind is RepKind.EXT:
        out = []
        for idx in itertools.combinations(range(m), spec.k):
            out.append((tuple(1 if j in idx else 0 for j in range(m)), 1))
        return out
    out = []
    for i in range(m):
        for j in range(m):
            if i != j:
                w = [0] * m
                w[i], w[j] = 1, -1
                out.append((tuple(w), 1))
    out.append((tuple([0] * m), m - 1))
    return out


# ---------------------------------------------------------------------------
# exact integer linear algebra (matrices are small: size <= ~10)
# ---------------------------------------------------------------------------


def _as_rows(g, m: int):
    rows = [[x for x in row] for row in g]
    if len(rows) != m or any(len(r) != m for r in rows):
        raise ValueError(f"expected a {m}x{m} matrix")
    return rows


def _is_integral(rows) -> bool:
    return all(isinstance(x, (int, np.integer)) for row in rows for x in row)


def det_exact(rows) -> int:
    """Fraction-free Bareiss determinant of an integer matrix."""
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    sign, prev = 1, 1
    for p in range(m - 1):
        if a[p][p] == 0:
            for r in range(p + 1, m):
                if a[r][p] != 0:
                    a[p], a[r] = a[r], a[p]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(p + 1, m):
            for c in range(p + 1, m):
                a[r][c] = (a[r][c] * a[p][p] - a[r][p] * a[p][c]) // prev
            a[r][p] = 0
        prev = a[p][p]
    return sign * a[m - 1][m - 1]


def minor_exact(rows, rsel, csel) -> int:
    return det_exact([[rows[i][j] for j in csel] for i in rsel])


def adjugate_exact(rows) -> list:
    """adj(g), so g @ adj(g) = det(g) * I; equals g^-1 for det 1."""
    m = len(rows)
    idx = list(range(m))
    out = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            rsel = idx[:j] + idx[j + 1:]
            csel = idx[:i] + idx[i + 1:]
            out[i][j] = (-1) ** (i + j) * minor_exact(rows, rsel, csel)
    return out


def matrix_norm_sq(spec: RepSpec, g):
    """Exact squared norm of the representation matrix of g.

    For integer input the result is an exact integer; unimodularity is
    checked exactly.  Float input goes through numpy with determinant
    tolerance 1e-9.
    """
    m = spec.size
    rows = _as_rows(g, m)
    if _is_integral(rows):
        rows = [[int(x) for x in r] for r in rows]
        if det_exact(rows) != 1:
            raise ValueError("matrix is not unimodular (exact determinant != 1)")
        return _norm_sq_int(spec, rows)
    a = np.asarray(g, dtype=float)
    if abs(np.linalg.det(a) - 1.0) > 1e-9:
        raise ValueError("matrix is not unimodular (|det - 1| > 1e-9)")
    return _norm_sq_float(spec, a)


def matrix_norm(spec: RepSpec, g) -> float:
    return math.sqrt(matrix_norm_sq(spec, g))


def _norm_sq_int(spec: RepSpec, rows):
    m = len(rows)
    if spec.kind is RepKind.STANDARD:
        return sum(x * x for r in rows for x in r)
    if spec.kind is RepKind.DUAL:
        adj = adjugate_exact(rows)
        return sum(x * x for r in adj for x in r)
    if spec.kind is RepKind.EXT:
        idx = list(range(m))
        total = 0
        for rsel in itertools.combinations(idx, spec.k):
            for csel in itertools.combinations(idx, spec.k):
                total += minor_exact(rows, rsel, csel) ** 2
        return total
    adj = adjugate_exact(rows)
    a = sum(x * x for r in rows for x in r)
    b = sum(x * x for r in adj for x in r)
    return a * b - 1


def _norm_sq_float(spec: RepSpec, a: np.ndarray) -> float:
    m = a.shape[0]
    if spec.kind is RepKind.STANDARD:
        return float((a * a).sum())
    if spec.kind is RepKind.DUAL:
        inv = np.linalg.inv(a)
        return float((inv * inv).sum())
    if spec.kind is RepKind.EXT:
        idx = list(range(m))
        total = 0.0
        for rsel in itertools.combinations(idx, spec.k):
            sub = a[np.ix_(rsel, idx)]
            for csel in itertools.combinations(idx, spec.k):
                total += float(np.linalg.det(sub[:, csel])) ** 2
        return total
    inv = np.linalg.inv(a)
    return float((a * a).sum()) * float((inv * inv).sum()) - 1.0


def check_chamber(h, n: int, tol: float = 1e-9):
    h = np.asarray(h, dtype=float)
    if h.shape != (n + 1,):
        raise ValueError(f"chamber point must have {n + 1} coordinates")
    if abs(h.sum()) > tol * max(1.0, np.abs(h).max()):
        raise ValueError("chamber point must be traceless")
    if (np.diff(h) > tol).any():
        raise ValueError("chamber point coordinates must be nonincreasing")
    return h


def chamber_norm_sq(spec: RepSpec, h) -> float:
    """Squared norm of the representation of exp(diag(h)) via the weight
    multiset; h must lie in the closed positive chamber."""
    h = check_chamber(h, spec.n)
    weights = weight_multiset(spec)
    expo = np.array([2.0 * np.dot(w, h) for w, _ in weights])
    mult = np.array([m for _, m in weights], dtype=float)
    shift = expo.max()
    if shift < 300.0:
        return float((mult * np.exp(expo)).sum())
    return float(np.exp(shift) * (mult * np.exp(expo - shift)).sum())


def chamber_norm(spec: RepSpec, h) -> float:
    return math.sqrt(chamber_norm_sq(spec, h))


def random_unimodular(m: int, rng, ops: int = 12, entry_cap: int = 80) -> list:
    """Random element of SL(m,Z) built from elementary row operations,
    with entries kept below entry_cap (operations that would overflow
    the cap are skipped)."""
    g = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    done = 0
    while done < ops:
        i, j = rng.integers(0, m, size=2)
        if i == j:
            continue
        f = int(rng.integers(1, 3)) * (1 if rng.integers(0, 2) else -1)
        new_row = [g[i][c] + f * g[j][c] for c in range(m)]
        if max(abs(x) for x in new_row) > entry_cap:
            done += 1
            continue
        g[i] = new_row
        done += 1
    return g
