"""Exact error-exponent computations and the verification sweep.

All ratio minimizations are carried out with integer cross
multiplication (scaled numerators), so minima and argmin index sets are
exact; reported values are `Fraction`s.  The bulk verification sweep
uses int64 numpy arrays for the same comparisons, overflow-audited for
rank <= 200 and weight entries <= 50.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import cartan
from .bounds import BoundKind, decay_rate, residual_rate

# scaled integer data for rank n, weight entries <= Q_MAX: values stay
# far below 2**63 (see tests for the audit)
Q_MAX_BULK = 50


def kappa0(n: int) -> Fraction:
    """The baseline error exponent 1/(n(n+1)(n+2))."""
    cartan.check_rank(n)
    return Fraction(1, n * (n + 1) * (n + 2))


def _scaled_rho2(n: int) -> list:
    return [j * (n + 1 - j) for j in range(1, n + 1)]


def _scaled_psi(theta, n: int, _extra: bool = False):
    """2n(n+1)*extra * psi(B_j) as integers, psi = 2*rho - theta.

    `theta` is a BoundKind or a raw functional (tuple of rationals).
    For the three named bounds extra is always 1; a raw functional may
    need a further common denominator.
    """
    if isinstance(theta, BoundKind):
        theta = decay_rate(theta, n)
    psi = residual_rate(theta, n)
    scaled = [v * 2 * n * (n + 1) for v in psi]
    extra = 1
    for s in scaled:
        extra = extra * s.denominator // math.gcd(extra, s.denominator)
    out = [int(s * extra) for s in scaled]
    return (out, extra) if _extra else out


def _exact_argmin(nums, dens):
    """Exact argmin set and minimum of nums[j]/dens[j], dens > 0."""
    best = {0}
    for j in range(1, len(nums)):
        lhs = nums[j] * dens[next(iter(best))]
        rhs = nums[next(iter(best))] * dens[j]
        if lhs < rhs:
            best = {j}
        elif lhs == rhs:
            best.add(j)
    m = min(best)
    return Fraction(nums[m], dens[m]), frozenset(j + 1 for j in best)


def volume_exponent(q, n: int):
    """Minimum of lambda(B_j)/(2 rho(B_j)) with its exact argmin set.

    The reciprocal of the returned value is the polynomial growth rate
    of the ball volume in the radius.
    """
    q = cartan.check_weight(q, n)
    L = cartan.weight_dual_values_scaled(q, n)
    R = _scaled_rho2(n)
    return _exact_argmin(L, [(n + 1) * r for r in R])


def bound_exponent(q, theta, n: int):
    """Minimum of lambda(B_j)/psi(B_j) and its argmin set, psi = 2rho - theta.

    `theta` is a BoundKind or a functional in simple-root coordinates.
    """
    q = cartan.check_weight(q, n)
    L = cartan.weight_dual_values_scaled(q, n)
    P, extra = _scaled_psi(theta, n, _extra=True)
    # lambda/psi = [L/(n+1)] / [P/(2n(n+1)*extra)] = (2n*extra*L) / P
    return _exact_argmin([2 * n * extra * x for x in L], P)


@dataclass(frozen=True)
class ExponentReport:
    n: int
    weight: tuple
    kind: BoundKind
    m1: Fraction
    min_set: frozenset
    m1_prime: Fraction
    min_set_prime: frozenset
    kappa0: Fraction
    kappa: Fraction

    @property
    def kappa_ratio(self) -> Fraction:
        return self.kappa / self.kappa0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "weight": list(self.weight),
            "bound": self.kind.value,
            "m1": format_rational(self.m1),
            "m1_decimal": float(self.m1),
            "min_indices": sorted(self.min_set),
            "m1_prime": format_rational(self.m1_prime),
            "m1_prime_decimal": float(self.m1_prime),
            "min_indices_prime": sorted(self.min_set_prime),
            "kappa0": format_rational(self.kappa0),
            "kappa": format_rational(self.kappa),
            "kappa_decimal": float(self.kappa),
            "kappa_over_kappa0": format_rational(self.kappa_ratio),
        }


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def exponent_report(q, kind: BoundKind, n: int) -> ExponentReport:
    """Full exact exponent report for one (rank, weight, bound) triple."""
    m1, min_set = volume_exponent(q, n)
    m1p, min_setp = bound_exponent(q, kind, n)
    k0 = kappa0(n)
    kappa = 2 * n * (1 - m1 / m1p) * k0
    return ExponentReport(
        n=n,
        weight=cartan.check_weight(q, n),
        kind=kind,
        m1=m1,
        min_set=min_set,
        m1_prime=m1p,
        min_set_prime=min_setp,
        kappa0=k0,
        kappa=kappa,
    )


def sigma(i: int, n: int) -> Fraction:
    """Guaranteed improvement factor min(n/i, n/(n+1-i)) for cone index i."""
    return Fraction(n, max(i, n + 1 - i))


@dataclass(frozen=True)
class ConeReport:
    n: int
    weight: tuple
    cones: frozenset  # indices i in 2..n-1 whose cone contains the weight
    sigma: dict  # i -> Fraction, for i in 2..n-1

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "weight": list(self.weight),
            "cones": sorted(self.cones),
            "sigma": {str(i): format_rational(s) for i, s in sorted(self.sigma.items())},
        }


def cone_report(q, n: int) -> ConeReport:
    """Which interior cones (argmin of lambda/psi at index i, 2<=i<=n-1)
    contain the weight, with the sigma table."""
    if n < 2:
        raise ValueError("cone classification needs rank n >= 2")
    _, min_setp = bound_exponent(q, BoundKind.OH, n)
    interior = frozenset(i for i in min_setp if 2 <= i <= n - 1)
    return ConeReport(
        n=n,
        weight=cartan.check_weight(q, n),
        cones=interior,
        sigma={i: sigma(i, n) for i in range(2, n)},
    )


def admissible_weights(n: int) -> list:
    """The family lambda_i + lambda_{n+1-i}, i up to floor((n+1)/4) for
    odd n and floor(n/4) for even n (empty at n = 2)."""
    if n < 2:
        raise ValueError("needs rank n >= 2")
    top = (n + 1) // 4 if n % 2 == 1 else n // 4
    out = []
    for i in range(1, top + 1):
        q = [0] * n
        q[i - 1] += 1
        q[n - i] += 1
        out.append(tuple(q))
    return out


def central_index_condition(q, n: int):
    """Does the parity-central index lie in both argmin sets (theta = OH)?

    Returns (ok, witness): witness is the qualifying index, or the two
    argmin sets when the condition fails.
    """
    if n < 2:
        raise ValueError("needs rank n >= 2")
    _, I = volume_exponent(q, n)
    _, Ip = bound_exponent(q, BoundKind.OH, n)
    both = I & Ip
    candidates = [(n + 1) // 2] if n % 2 == 1 else [n // 2 + 1, n // 2]
    for c in candidates:
        if c in both:
            return True, c
    return False, {"min_indices": sorted(I), "min_indices_prime": sorted(Ip)}


def adjoint_weight(n: int) -> tuple:
    q = [0] * n
    q[0] += 1
    q[n - 1] += 1
    return tuple(q)


# ---------------------------------------------------------------------------
# bulk verification sweep (vectorized, still exact: int64 cross products)
# ---------------------------------------------------------------------------


def _dual_value_matrix(n: int) -> np.ndarray:
    """M[k-1, j-1] = min(k,j)(n+1-max(k,j)); (n+1)*lambda(B_j) = q @ M."""
    k = np.arange(1, n + 1)
    kk, jj = np.meshgrid(k, k, indexing="ij")
    return (np.minimum(kk, jj) * (n + 1 - np.maximum(kk, jj))).astype(np.int64)


def _argmin_masks(L: np.ndarray, D: np.ndarray) -> np.ndarray:
    """Boolean masks of the exact argmin sets of L[r, j] / D[j] per row."""
    diff = L[:, :, None] * D[None, None, :] - L[:, None, :] * D[None, :, None]
    return (diff <= 0).all(axis=2)


def sample_weights(n: int, samples: int, seed: int) -> np.ndarray:
    """Weight sample used by the verification sweeps.

    Exhaustive over coordinate sums <= 6 when n <= 12, else `samples`
    pseudo-random weights with entries <= 50 from a fixed seed.
    """
    if n <= 12:
        rows = [
            q
            for s in range(1, 7)
            for q in _compositions(s, n)
        ]
        return np.array(rows, dtype=np.int64)
    rng = np.random.default_rng(seed)
    q = rng.integers(0, Q_MAX_BULK + 1, size=(samples, n), dtype=np.int64)
    q[q.sum(axis=1) == 0, 0] = 1  # no trivial weights
    return q


def _compositions(total: int, n: int):
    for cuts in itertools.combinations(range(total + n - 1), n - 1):
        prev, out = -1, []
        for c in cuts:
            out.append(c - prev - 1)
            prev = c
        out.append(total + n - 2 - prev)
        yield out


@dataclass
class CheckResult:
    statement: str
    n: int
    status: str  # PASS | FAIL
    checked: int
    detail: dict

    def to_json(self) -> dict:
        return {
            "statement": self.statement,
            "n": self.n,
            "status": self.status,
            "checked": self.checked,
            "detail": self.detail,
        }


class _BulkExponents:
    """Scaled integer exponent data for a batch of weights at fixed rank."""

    def __init__(self, Q: np.ndarray, kind: BoundKind, n: int):
        self.n = n
        self.Q = Q
        M = _dual_value_matrix(n)
        self.L = Q @ M  # (n+1) * lambda(B_j)
        self.R = np.array(_scaled_rho2(n), dtype=np.int64)  # 2rho(B_j)
        self.P = np.array(_scaled_psi(kind, n), dtype=np.int64)  # 2n(n+1) psi(B_j)
        self.mask_I = _argmin_masks(self.L, self.R)
        self.mask_Ip = _argmin_masks(self.L, self.P)
        self.i = np.argmax(self.mask_I, axis=1)  # one representative per row
        self.ip = np.argmax(self.mask_Ip, axis=1)
        rows = np.arange(len(Q))
        self.Li = self.L[rows, self.i]
        self.Ri = self.R[self.i]
        self.Lip = self.L[rows, self.ip]
        self.Pip = self.P[self.ip]

    def kappa_ratio_cmp(self, num: np.ndarray, den: np.ndarray) -> np.ndarray:
        """Sign of kappa/kappa0 - num/den, elementwise, exactly.

        kappa/kappa0 = 2n - Li*Pip / ((n+1) * Ri * Lip).
        """
        n = self.n
        base = (n + 1) * self.Ri * self.Lip
        lhs = (2 * n * den - num) * base
        rhs = den * self.Li * self.Pip
        return np.sign(lhs - rhs)


def _gather_fail(Q, mask, limit=3):
    rows = np.nonzero(mask)[0][:limit]
    return [list(map(int, Q[r])) for r in rows]


def verify_range(
    n_max: int,
    samples: int = 1000,
    seed: int = 0,
    n_min: int = 2,
    minimum_n_max: int = None,
    family_n_max: int = None,
) -> list:
    """Machine-check the exact statements over ranks n_min..n_max.

    Returns a list of CheckResult records; failures are data (never
    exceptions) and carry counterexamples verbatim.
    """
    results = []
    minimum_n_max = minimum_n_max or n_max
    family_n_max = family_n_max or n_max

    for n in range(n_min, minimum_n_max + 1):
        results.append(_check_residual_minimum(n))

    for n in range(n_min, family_n_max + 1):
        results.append(_check_family(n))

    for n in range(n_min, n_max + 1):
        results.append(_check_adjoint(n))
        Q = sample_weights(n, samples, seed)
        hc = _BulkExponents(Q, BoundKind.HARISH_CHANDRA, n)
        ht = _BulkExponents(Q, BoundKind.HOWE_TAN, n)
        oh = _BulkExponents(Q, BoundKind.OH, n)

        bad = hc.kappa_ratio_cmp(np.int64(1), np.int64(1)) != 0
        results.append(
            CheckResult(
                "hc_bound_gives_baseline", n,
                "FAIL" if bad.any() else "PASS", len(Q),
                {"counterexamples": _gather_fail(Q, bad)},
            )
        )

        bad = ht.kappa_ratio_cmp(np.int64(1), np.int64(1)) > 0
        results.append(
            CheckResult(
                "ht_bound_at_most_baseline", n,
                "FAIL" if bad.any() else "PASS", len(Q),
                {"counterexamples": _gather_fail(Q, bad)},
            )
        )

        results.append(_check_ratio_floor(Q, oh, n))
        results.append(_check_cone_bound(Q, oh, n))

    return results


def _check_residual_minimum(n: int) -> CheckResult:
    """min_j psi(B_j)/2rho(B_j) equals n/(n+1) (odd) resp. (n+1)/(n+2)
    (even), attained exactly at the central index (pair)."""
    P = _scaled_psi(BoundKind.OH, n)
    R = [2 * n * (n + 1) * r for r in _scaled_rho2(n)]
    m, argmin = _exact_argmin(P, R)
    if n % 2 == 1:
        want, where = Fraction(n, n + 1), frozenset({(n + 1) // 2})
    else:
        want, where = Fraction(n + 1, n + 2), frozenset({n // 2, n // 2 + 1})
    ok = m == want and argmin == where
    return CheckResult(
        "residual_ratio_minimum", n, "PASS" if ok else "FAIL", 1,
        {"minimum": format_rational(m), "argmin": sorted(argmin),
         "expected": format_rational(want), "expected_argmin": sorted(where)},
    )


def _check_adjoint(n: int) -> CheckResult:
    """kappa(adjoint, OH)/kappa0 = 2n/(n+1) for odd n, 2n/(n+2) for even."""
    rep = exponent_report(adjoint_weight(n), BoundKind.OH, n)
    want = Fraction(2 * n, n + 1) if n % 2 == 1 else Fraction(2 * n, n + 2)
    ok = rep.kappa_ratio == want
    return CheckResult(
        "adjoint_exponent_ratio", n, "PASS" if ok else "FAIL", 1,
        {"kappa_over_kappa0": format_rational(rep.kappa_ratio),
         "expected": format_rational(want)},
    )


def _check_family(n: int) -> CheckResult:
    """Every weight lambda_i + lambda_{n+1-i} in the admissible family
    satisfies the central-index condition; the adjoint row is always
    reported alongside (the family is empty at n=2)."""
    entries, ok = [], True
    for q in admissible_weights(n):
        passed, witness = central_index_condition(q, n)
        ok = ok and passed
        entries.append({"weight": list(q), "passes": passed, "witness": witness})
    adj = exponent_report(adjoint_weight(n), BoundKind.OH, n)
    return CheckResult(
        "paired_weight_family", n, "PASS" if ok else "FAIL", len(entries),
        {"family": entries,
         "adjoint": {"weight": list(adj.weight),
                     "kappa_over_kappa0": format_rational(adj.kappa_ratio)}},
    )


def _check_ratio_floor(Q, oh: _BulkExponents, n: int) -> CheckResult:
    """m1/m1' >= min_j psi(B_j)/2rho(B_j) on the whole sample.

    m1/m1' = Li*Pip / (2n(n+1) * Ri * Lip); the right side is
    P[j*] / (2n(n+1) * R[j*]) at the exact minimizer j*.
    """
    P, R = oh.P, oh.R
    m, argmin = _exact_argmin(list(map(int, P)), list(map(int, R)))
    js = min(argmin) - 1
    lhs = oh.Li * oh.Pip * int(R[js])
    rhs = int(P[js]) * oh.Ri * oh.Lip
    bad = lhs < rhs
    return CheckResult(
        "exponent_ratio_floor", n, "FAIL" if bad.any() else "PASS", len(Q),
        {"counterexamples": _gather_fail(Q, bad)},
    )


def _check_cone_bound(Q, oh: _BulkExponents, n: int) -> CheckResult:
    """For every sampled weight in an interior cone i: kappa >= sigma_i * kappa0,
    and the central cone(s) are nonempty (adjoint weight witnesses)."""
    bad_total = np.zeros(len(Q), dtype=bool)
    for i in range(2, n):  # cone index, 1-based
        in_cone = oh.mask_Ip[:, i - 1]
        if not in_cone.any():
            continue
        s = sigma(i, n)
        cmp = oh.kappa_ratio_cmp(np.int64(s.numerator), np.int64(s.denominator))
        bad_total |= in_cone & (cmp < 0)
    central = [(n + 1) // 2] if n % 2 == 1 else [n // 2, n // 2 + 1]
    _, adj_Ip = bound_exponent(adjoint_weight(n), BoundKind.OH, n)
    nonempty = all(c in adj_Ip for c in central)
    ok = not bad_total.any() and nonempty
    return CheckResult(
        "cone_exponent_bound", n, "PASS" if ok else "FAIL", len(Q),
        {"counterexamples": _gather_fail(Q, bad_total),
         "central_cones_nonempty": nonempty,
         "central_indices": central},
    )
