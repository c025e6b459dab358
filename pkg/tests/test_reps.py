import itertools
import math

import numpy as np
import pytest

from slcount.reps import (
    RepKind,
    RepSpec,
    adjugate_exact,
    chamber_norm,
    chamber_norm_sq,
    det_exact,
    dim,
    highest_weight,
    matrix_norm,
    matrix_norm_sq,
    parse_rep,
    random_unimodular,
    weight_multiset,
)

UPPER = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]


def sl_basis(m):
    """Trace-orthonormal basis of sl_m: tr(X Y^T) = delta."""
    basis = []
    for i in range(m):
        for j in range(m):
            if i != j:
                x = np.zeros((m, m))
                x[i, j] = 1.0
                basis.append(x)
    for k in range(1, m):
        x = np.zeros((m, m))
        x[np.arange(k), np.arange(k)] = 1.0
        x[k, k] = -k
        basis.append(x / math.sqrt(k * (k + 1)))
    return basis


def ad_matrix_norm(g):
    """Frobenius norm of X -> g X g^-1 on the trace-orthonormal sl basis."""
    g = np.asarray(g, dtype=float)
    ginv = np.linalg.inv(g)
    basis = sl_basis(g.shape[0])
    mat = np.empty((len(basis), len(basis)))
    for b, X in enumerate(basis):
        img = g @ X @ ginv
        for a, Y in enumerate(basis):
            mat[a, b] = (img * Y).sum()
    return float(np.sqrt((mat * mat).sum()))


def signed_permutations(m):
    """All signed permutation matrices of determinant +1 in SL(m,Z)."""
    out = []
    for perm in itertools.permutations(range(m)):
        base = [[1 if j == perm[i] else 0 for j in range(m)] for i in range(m)]
        for signs in itertools.product((1, -1), repeat=m):
            p = [[signs[i] * base[i][j] for j in range(m)] for i in range(m)]
            if det_exact(p) == 1:
                out.append(p)
    return out


def matmul_int(a, b):
    m = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(m)) for j in range(m)] for i in range(m)]


def test_parse_and_dims():
    assert dim(parse_rep("standard", 2)) == 3
    assert dim(parse_rep("adjoint", 2)) == 8
    assert dim(parse_rep("ext:2", 3)) == 6
    assert dim(parse_rep("dual", 4)) == 5
    with pytest.raises(ValueError):
        parse_rep("ext:5", 3)
    with pytest.raises(ValueError):
        parse_rep("spin", 3)


def test_highest_weights():
    assert highest_weight(RepSpec(RepKind.ADJOINT, 5)) == (1, 0, 0, 0, 1)
    assert highest_weight(RepSpec(RepKind.EXT, 3, 2)) == (0, 1, 0)
    assert highest_weight(RepSpec(RepKind.STANDARD, 2)) == (1, 0)
    assert highest_weight(RepSpec(RepKind.DUAL, 4)) == (0, 0, 0, 1)


def test_weight_multisets():
    std = weight_multiset(RepSpec(RepKind.STANDARD, 2))
    assert len(std) == 3 and all(m == 1 for _, m in std)

    adj = weight_multiset(RepSpec(RepKind.ADJOINT, 2))
    assert sum(m for _, m in adj) == 8
    assert (tuple([0, 0, 0]), 2) in adj

    ext = weight_multiset(RepSpec(RepKind.EXT, 3, 2))
    assert len(ext) == 6
    assert all(sum(w) == 2 for w, _ in ext)


def test_weight_multiset_permutation_invariance():
    for spec in (RepSpec(RepKind.ADJOINT, 3), RepSpec(RepKind.EXT, 3, 2)):
        ws = {w for w, _ in weight_multiset(spec)}
        for w in ws:
            assert tuple(sorted(w)) in {tuple(sorted(x)) for x in ws}
            assert w[::-1] in ws


def test_norm_at_identity_is_sqrt_dim():
    eye = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert matrix_norm(RepSpec(RepKind.STANDARD, 2), eye) == pytest.approx(math.sqrt(3))
    assert matrix_norm(RepSpec(RepKind.ADJOINT, 2), eye) == pytest.approx(math.sqrt(8))
    assert matrix_norm_sq(RepSpec(RepKind.EXT, 2, 2), eye) == 3


def test_norm_examples_unipotent():
    assert matrix_norm_sq(RepSpec(RepKind.STANDARD, 2), UPPER) == 4
    assert matrix_norm_sq(RepSpec(RepKind.ADJOINT, 2), UPPER) == 15
    assert matrix_norm(RepSpec(RepKind.ADJOINT, 2), UPPER) == pytest.approx(math.sqrt(15))


def test_non_unimodular_rejected():
    spec = RepSpec(RepKind.STANDARD, 2)
    with pytest.raises(ValueError):
        matrix_norm_sq(spec, [[2, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(ValueError):
        matrix_norm_sq(spec, [[2.0, 0, 0], [0, 1.0, 0], [0, 0, 1.0]])


def test_adjugate_is_inverse_for_unimodular():
    rng = np.random.default_rng(0)
    for m in (3, 4):
        g = random_unimodular(m, rng)
        adj = adjugate_exact(g)
        assert matmul_int(g, adj) == [[int(i == j) for j in range(m)] for i in range(m)]


@pytest.mark.parametrize("m", [3, 4])
def test_adjoint_closed_form_matches_ad_matrix(m):
    # ||Ad(g)||_F^2 == ||g||_F^2 * ||g^-1||_F^2 - 1, validated against the
    # explicit 8x8 / 15x15 matrix of X -> g X g^-1
    rng = np.random.default_rng(11)
    spec = RepSpec(RepKind.ADJOINT, m - 1)
    for _ in range(60):
        g = random_unimodular(m, rng)
        closed = matrix_norm(spec, g)
        oracle = ad_matrix_norm(g)
        assert abs(closed - oracle) <= 1e-12 * oracle


def test_float_input_matches_exact():
    rng = np.random.default_rng(12)
    for kind in ("standard", "dual", "ext:2", "adjoint"):
        spec = parse_rep(kind, 2)
        for _ in range(10):
            g = random_unimodular(3, rng)
            exact = matrix_norm_sq(spec, g)
            fl = matrix_norm_sq(spec, np.asarray(g, dtype=float))
            assert fl == pytest.approx(float(exact), rel=1e-9)


def test_ext_duality():
    # sum of k-minors^2 of g equals sum of (m-k)-minors^2 of g^-1 at det 1
    rng = np.random.default_rng(13)
    for m, k in ((3, 1), (3, 2), (4, 2), (4, 3)):
        n = m - 1
        for _ in range(15):
            g = random_unimodular(m, rng)
            ginv = adjugate_exact(g)
            a = matrix_norm_sq(RepSpec(RepKind.EXT, n, k), g)
            b = matrix_norm_sq(RepSpec(RepKind.EXT, n, m - k), ginv)
            assert a == b


def test_dual_is_inverse_norm():
    rng = np.random.default_rng(14)
    for _ in range(10):
        g = random_unimodular(3, rng)
        ginv = adjugate_exact(g)
        assert matrix_norm_sq(RepSpec(RepKind.DUAL, 2), g) == matrix_norm_sq(
            RepSpec(RepKind.STANDARD, 2), ginv
        )


def test_bi_k_invariance_at_integer_points():
    rots = signed_permutations(3)
    assert len(rots) == 24
    rng = np.random.default_rng(15)
    specs = [parse_rep(s, 2) for s in ("standard", "dual", "ext:2", "adjoint")]
    for _ in range(5):
        g = random_unimodular(3, rng)
        base = {s.label(): matrix_norm_sq(s, g) for s in specs}
        for p in rots:
            for s in specs:
                assert matrix_norm_sq(s, matmul_int(p, g)) == base[s.label()]
                assert matrix_norm_sq(s, matmul_int(g, p)) == base[s.label()]


def chamber_point(rng, n):
    h = np.sort(rng.uniform(-1.5, 1.5, size=n + 1))[::-1]
    h -= h.mean()
    return np.sort(h)[::-1]


def test_chamber_norm_consistency_with_matrix_norm():
    rng = np.random.default_rng(16)
    for n in (2, 3):
        for label in ("standard", "dual", "ext:2", "adjoint"):
            spec = parse_rep(label, n)
            for _ in range(20):
                h = chamber_point(rng, n)
                g = np.diag(np.exp(h))
                direct = matrix_norm(spec, g)
                via_weights = chamber_norm(spec, h)
                assert abs(direct - via_weights) <= 1e-10 * direct


def test_chamber_norm_adjoint_explicit():
    # H = (t, 0, -t): the six roots evaluate to +-t (twice each) and +-2t
    # (once each), plus the zero weight with multiplicity 2; cross-checked
    # against the Ad-matrix oracle below.
    t = 0.7
    expected = (
        math.exp(4 * t)
        + 2 * math.exp(2 * t)
        + 2
        + 2 * math.exp(-2 * t)
        + math.exp(-4 * t)
    )
    got = chamber_norm_sq(RepSpec(RepKind.ADJOINT, 2), (t, 0.0, -t))
    assert got == pytest.approx(expected, rel=1e-12)
    assert got == pytest.approx(ad_matrix_norm(np.diag([math.exp(t), 1.0, math.exp(-t)])) ** 2, rel=1e-12)


def test_chamber_norm_at_zero_is_dim():
    for label, n in (("standard", 2), ("adjoint", 3), ("ext:2", 3)):
        spec = parse_rep(label, n)
        assert chamber_norm_sq(spec, [0.0] * (n + 1)) == pytest.approx(dim(spec))


def test_chamber_norm_monotone_along_rays():
    rng = np.random.default_rng(17)
    spec = parse_rep("adjoint", 2)
    for _ in range(10):
        h = chamber_point(rng, 2)
        if np.allclose(h, 0):
            continue
        vals = [chamber_norm(spec, t * h) for t in (0.3, 0.7, 1.1, 2.0)]
        assert all(a < b for a, b in zip(vals, vals[1:]))


def test_chamber_violation_rejected():
    spec = parse_rep("standard", 2)
    with pytest.raises(ValueError):
        chamber_norm(spec, (0.0, 1.0, -1.0))  # not sorted descending
    with pytest.raises(ValueError):
        chamber_norm(spec, (1.0, 0.0, 0.0))  # not traceless
