"""Exact root-system data for A_n (the Lie algebra of SL(n+1,R)).

Conventions used throughout the package:

* A linear functional on the Cartan subalgebra is a tuple of n exact
  `Fraction` coordinates (c_1, ..., c_n) in the simple-root basis,
  f = sum c_i * alpha_i.  Because the dual basis vectors B_j satisfy
  alpha_i(B_j) = delta_ij, the coordinate c_j *is* the value f(B_j);
  evaluation on the dual basis is a coordinate read.
* A dominant weight is a tuple of n nonnegative integers (q_1, ..., q_n)
  in the fundamental-weight basis, lambda = sum q_k * lambda_k.
  Conversion between the two bases goes through the inverse Cartan
  matrix, exactly.

Everything in this module is exact rational arithmetic; there is no
floating point anywhere.
"""

from fractions import Fraction

Functional = tuple  # tuple[Fraction, ...], simple-root coordinates
Weight = tuple  # tuple[int, ...], fundamental-weight coordinates


def check_rank(n: int) -> int:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"rank must be a positive integer, got {n!r}")
    return n


def check_weight(q, n: int, allow_zero: bool = False) -> Weight:
    """Validate fundamental-weight coordinates against rank n."""
    q = tuple(int(x) for x in q)
    if len(q) != n:
        raise ValueError(f"weight has {len(q)} coordinates, rank is {n}")
    if any(x < 0 for x in q):
        raise ValueError(f"weight coordinates must be nonnegative: {q}")
    if not allow_zero and not any(q):
        raise ValueError("weight is zero (representation must be non-trivial)")
    return q


def cartan_matrix(n: int) -> list:
    """The A_n Cartan matrix: 2 on the diagonal, -1 next to it."""
    check_rank(n)
    return [
        [2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)]
        for i in range(n)
    ]


def cartan_inverse(n: int) -> list:
    """Exact inverse of the A_n Cartan matrix.

    Entry (i,j) is min(i,j)*(n+1-max(i,j))/(n+1) with 1-based indices.
    The closed form is cross-validated against exact Gaussian elimination
    in the test suite.
    """
    check_rank(n)
    return [
        [
            Fraction(min(i, j) * (n + 1 - max(i, j)), n + 1)
            for j in range(1, n + 1)
        ]
        for i in range(1, n + 1)
    ]


def weight_dual_values_scaled(q, n: int) -> list:
    """(n+1) * lambda(B_j) for j = 1..n, as plain integers.

    Scaling by n+1 clears the inverse-Cartan denominator, so exact
    ratio comparisons downstream can stay in integer arithmetic.
    """
    q = check_weight(q, n, allow_zero=True)
    return [
        sum(q[k - 1] * min(k, j) * (n + 1 - max(k, j)) for k in range(1, n + 1))
        for j in range(1, n + 1)
    ]


def weight_to_functional(q, n: int) -> Functional:
    """Simple-root coordinates (equivalently dual-basis values) of a weight."""
    scaled = weight_dual_values_scaled(q, n)
    return tuple(Fraction(v, n + 1) for v in scaled)


def two_rho(n: int) -> Functional:
    """Twice the half-sum of positive roots; value on B_j is j(n+1-j)."""
    check_rank(n)
    return tuple(Fraction(k * (n + 1 - k)) for k in range(1, n + 1))


def highest_root(n: int) -> Functional:
    """The highest root, the sum of all simple roots; all coordinates 1."""
    check_rank(n)
    return tuple(Fraction(1) for _ in range(n))


def positive_roots(n: int) -> list:
    """All n(n+1)/2 positive roots alpha_i + ... + alpha_j, i <= j.

    On diag(h_1..h_{n+1}) the root with support [i, j] evaluates to
    h_i - h_{j+1}.
    """
    check_rank(n)
    roots = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            roots.append(tuple(Fraction(1 if i <= k <= j else 0) for k in range(1, n + 1)))
    return roots


def evaluate(f: Functional, t) -> Fraction:
    """Evaluate a functional on the point with dual-basis coordinates t."""
    if len(f) != len(t):
        raise ValueError("dimension mismatch")
    return sum((c * x for c, x in zip(f, t)), Fraction(0))


def add(f: Functional, g: Functional) -> Functional:
    return tuple(a + b for a, b in zip(f, g))


def sub(f: Functional, g: Functional) -> Functional:
    return tuple(a - b for a, b in zip(f, g))


def scale(f: Functional, c) -> Functional:
    c = Fraction(c)
    return tuple(a * c for a in f)
