"""Lower bounds for k-page crossing numbers of K_n, in exact rationals.

The counting argument: any subgraph H of D_n satisfies
cr(H) >= m e(H) - sum_{l<m} e_l(n), because a graph with more than e_l(n)
edges has an edge crossed more than l times that can be peeled off.
Summing over the k pages of a drawing of K_n gives

    nu_k(K_n) >= L(k, n, m) = (m/2) n(n-3) - k sum_{l=0}^{m-1} e_l(n).

L is nondecreasing in m until e_m(n) >= n(n-3)/(2k) and nonincreasing
afterwards, so the best m is the smallest one past that threshold; m is
capped at 5 here because e_5(n) is unknown.  Substituting the closed forms
of e_l(n) turns the best bound into a five-branch piecewise expression in
(k, n), implemented as printed and cross-checked against the direct
maximum in the tests.  For 2k < n <= 3k the m = 1 branch meets the
balanced-construction count, pinning nu_k(K_n) = (n-3)(n-2k)/2 exactly.

For fixed k the ratio nu_k(K_n)/C(n,4) is nondecreasing in n, so any
single n' > 2k yields the asymptotic coefficient L(k, n', m)/C(n',4);
``best_asymptotic_coefficient`` scans n' for the largest one.  A closed
rational formula in k alone (valid from n' = floor(111k/20)) is provided
for comparison; only <= against the scanned maximum is asserted.

Everything returns ``fractions.Fraction``; decimal strings are rendered
exactly (the comparison-table convention is truncation at 5 significant
digits for the bound columns and half-even rounding at 4 for the ratio).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .geometry import ConvexGraph
from .maxedges import delta_correction, max_edges_formula
from .pages import zk

M_CAP = 5


def _e_values(n: int, m: int) -> list[int]:
    """e_0(n) .. e_{m-1}(n) from the closed forms (requires m <= 5)."""
    if m > M_CAP:
        raise ValueError(f"e_ell(n) unknown for ell >= {M_CAP}; m capped at {M_CAP}")
    return [max_edges_formula(ell, n) for ell in range(m)]


def crossing_lower_bound(h: ConvexGraph, m: int) -> int:
    """Counting lower bound m e(H) - sum_{l<m} e_l(n) for cr(H), H in D_n."""
    if not 0 <= m <= M_CAP:
        raise ValueError(f"need 0 <= m <= {M_CAP}")
    if h.allow_sides:
        raise ValueError("H must be a subgraph of D_n (no side edges)")
    return m * h.edge_count - sum(_e_values(h.n, m))


def counting_bound(k: int, n: int, m: int) -> Fraction:
    """L(k, n, m) = (m/2) n(n-3) - k sum_{l<m} e_l(n), exact."""
    if k < 1 or n < 3:
        raise ValueError("need k >= 1 and n >= 3")
    if not 0 <= m <= M_CAP:
        raise ValueError(f"need 0 <= m <= {M_CAP}")
    return Fraction(m, 2) * n * (n - 3) - k * sum(_e_values(n, m))


def best_m(k: int, n: int) -> tuple[int, bool]:
    """Smallest m with e_m(n) >= n(n-3)/(2k), capped at 5.

    Returns (m, cap_active); cap_active means even e_4(n) is below the
    threshold, so the unrestricted optimum would need the unknown e_5.
    """
    if k < 1 or n < 3:
        raise ValueError("need k >= 1 and n >= 3")
    threshold = Fraction(n * (n - 3), 2 * k)
    for m in range(M_CAP):
        if max_edges_formula(m, n) >= threshold:
            return m, False
    return M_CAP, True


@dataclass(frozen=True)
class BoundReport:
    """Everything one (k, n) lower-bound evaluation produced."""

    k: int
    n: int
    per_m: dict[int, Fraction]
    chosen_m: int
    cap_active: bool
    best_raw: Fraction
    best_bound: int  # ceiling of best_raw; nu is an integer
    branch: int  # 1..5, or 0 when vacuous (n <= 2k)
    beta: int


def beta_shift(k: int, n: int) -> int:
    """Parity correction to the branch-3/4 boundary floor(4.5k)."""
    if k % 2 == 0 and n % 4 == 0:
        return -1
    if k % 2 == 1 and (n - 2) % 4 == 0:
        return 1
    return 0


def _delta_sum(m: int, n: int) -> Fraction:
    return sum((delta_correction(ell, n) for ell in range(1, m)), Fraction(0))


def piecewise_bound(k: int, n: int) -> tuple[Fraction, int, int]:
    """The five-branch best counting bound, as printed.

    Returns (value, branch, beta); branch 0 with value 0 when n <= 2k
    (vacuous).  Each branch value equals counting_bound(k, n, branch) and,
    on its range, the maximum over m <= 5 (cross-checked in the tests).
    """
    if k < 3:
        raise ValueError("need k >= 3")
    if n <= 2 * k:
        return Fraction(0), 0, 0
    b = beta_shift(k, n)
    if n <= 3 * k:
        return Fraction(n - 3, 2) * (n - 2 * k), 1, b
    if n <= 4 * k:
        return (n - 3) * (n - Fraction(5, 2) * k) - k * _delta_sum(2, n), 2, b
    if n <= (9 * k) // 2 + b:
        return Fraction(3, 2) * (n - 3) * (n - 3 * k) - k * _delta_sum(3, n), 3, b
    if n <= 5 * k:
        return 2 * (n - 3) * (n - Fraction(27, 8) * k) - k * _delta_sum(4, n), 4, b
    return Fraction(5, 2) * (n - 3) * (n - Fraction(37, 10) * k) - k * _delta_sum(5, n), 5, b


def bound_report(k: int, n: int) -> BoundReport:
    per_m = {m: counting_bound(k, n, m) for m in range(M_CAP + 1)}
    chosen, cap = best_m(k, n)
    raw = max(per_m.values())
    value, branch, beta = piecewise_bound(k, n)
    best = -(-raw.numerator // raw.denominator) if raw > 0 else 0
    return BoundReport(
        k=k,
        n=n,
        per_m=per_m,
        chosen_m=chosen,
        cap_active=cap,
        best_raw=raw,
        best_bound=best,
        branch=branch,
        beta=beta,
    )


def exact_range_value(k: int, n: int) -> int:
    """nu_k(K_n) = (n-3)(n-2k)/2, exact for 2k < n <= 3k: the m = 1 lower
    bound meets the balanced construction there."""
    if not 2 * k < n <= 3 * k:
        raise ValueError(f"need 2k < n <= 3k, got k={k}, n={n}")
    value = Fraction((n - 3) * (n - 2 * k), 2)
    assert value.denominator == 1
    return int(value)


def limit_coefficient_formula(k: int) -> Fraction:
    """Closed rational lower coefficient of C(n,4) for fixed k >= 3:
    8000(4107 k^2 - 5416 k + 1309) / (37(111k-17)(111k-77)(37k-19)(3k-1)).

    Approaches (8000/12321) k^-2; asserted only <= the scanned maximum
    (printed equality claims did not survive a hand check)."""
    if k < 3:
        raise ValueError("need k >= 3")
    num = 8000 * (4107 * k * k - 5416 * k + 1309)
    den = 37 * (111 * k - 17) * (111 * k - 77) * (37 * k - 19) * (3 * k - 1)
    return Fraction(num, den)


def asymptotic_coefficient(k: int, nprime: int) -> Fraction:
    """max over 1 <= m <= 5 of L(k, n', m)/C(n', 4); a valid coefficient of
    C(n,4) in a lower bound for every n >= n' by ratio monotonicity."""
    if nprime <= 2 * k:
        raise ValueError("need n' > 2k; the bound is vacuous otherwise")
    c4 = comb(nprime, 4)
    return max(counting_bound(k, nprime, m) / c4 for m in range(1, M_CAP + 1))


def best_asymptotic_coefficient(
    k: int, lo: int | None = None, hi: int | None = None
) -> tuple[Fraction, int, int]:
    """Scan n' in (lo, hi] (default (2k, 8k]) for the largest coefficient.

    Returns (coefficient, n', m); ties broken by smallest n' then smallest m.
    """
    if lo is None:
        lo = 2 * k
    if hi is None:
        hi = 8 * k
    if lo < 2 * k:
        lo = 2 * k
    best: Fraction | None = None
    best_np = 0
    best_m_ = 0
    for nprime in range(lo + 1, hi + 1):
        c4 = comb(nprime, 4)
        for m in range(1, M_CAP + 1):
            val = counting_bound(k, nprime, m) / c4
            if best is None or val > best:
                best, best_np, best_m_ = val, nprime, m
    if best is None:
        raise ValueError("empty scan range")
    return best, best_np, best_m_


def upper_coefficient(k: int) -> Fraction:
    """Asymptotic coefficient of the balanced construction: (2/k^2)(1 - 1/(2k))."""
    return Fraction(2, k * k) * (1 - Fraction(1, 2 * k))


# ---------------------------------------------------------------------------
# exact decimal rendering
# ---------------------------------------------------------------------------


def significant_digits(value: Fraction, digits: int, mode: str = "trunc") -> tuple[str, int]:
    """First ``digits`` significant digits of a positive rational, exactly.

    Returns (digit string, exponent) with value ~ 0.D1D2... * 10^(exp+1),
    i.e. D1.D2... * 10^exp.  ``mode`` is "trunc" (toward zero) or "round"
    (half to even).
    """
    if value <= 0:
        raise ValueError("need a positive value")
    p, q = value.numerator, value.denominator
    exp = 0
    while p >= 10 * q:
        q *= 10
        exp += 1
    while p < q:
        p *= 10
        exp -= 1
    scaled = p * 10 ** (digits - 1)
    d, rem = divmod(scaled, q)
    if mode == "round":
        if 2 * rem > q or (2 * rem == q and d % 2 == 1):
            d += 1
    elif mode != "trunc":
        raise ValueError(f"unknown mode {mode!r}")
    if d >= 10**digits:
        d //= 10
        exp += 1
    return str(d), exp


def format_sci(value: Fraction, digits: int, mode: str = "trunc") -> str:
    ds, exp = significant_digits(value, digits, mode)
    mantissa = ds[0] + "." + ds[1:] if digits > 1 else ds
    return f"{mantissa}e{exp:+03d}"


def format_fixed(value: Fraction, digits: int, mode: str = "round") -> str:
    ds, exp = significant_digits(value, digits, mode)
    if exp >= digits or exp < -4:
        return format_sci(value, digits, mode)
    if exp >= 0:
        intpart = ds[: exp + 1]
        frac = ds[exp + 1 :]
        return intpart + ("." + frac if frac else "")
    return "0." + "0" * (-exp - 1) + ds


# ---------------------------------------------------------------------------
# table emitters
# ---------------------------------------------------------------------------

# How far the k-th row of the known-values table extends (exact values are
# known for all n up to this bound; beyond it the cell is open).
_KNOWN_ROW_EXTENT = {2: None, 3: 15, 4: 13, 5: 15, 6: 18, 7: 21}


def table_known_values(n_max: int = 22) -> list[list[str]]:
    """Known nu_k(K_n) values, k = 2..7, n = 5..n_max, as CSV rows.

    Every known cell equals the balanced-construction count; cells with
    2k < n <= 3k are additionally certified exact by the matching lower
    bound, and open cells render as '-'.
    """
    header = ["k\\n"] + [str(n) for n in range(5, n_max + 1)]
    rows = [header]
    for k in range(2, 8):
        extent = _KNOWN_ROW_EXTENT[k]
        row = [f"nu_{k}"]
        for n in range(5, n_max + 1):
            if extent is not None and n > extent:
                row.append("-")
                continue
            value = zk(n, k)
            if 2 * k < n <= 3 * k:
                assert value == exact_range_value(k, n)
            row.append(str(value))
        rows.append(row)
    return rows


def table_bound_comparison() -> list[list[str]]:
    """Lower/upper coefficient comparison for k = 14..20: scanned lower
    bound and construction upper bound truncated to 5 significant digits,
    ratio rounded to 4."""
    rows = [["k", "new_lower_bound", "upper_bound", "ratio"]]
    for k in range(14, 21):
        lower, _, _ = best_asymptotic_coefficient(k)
        upper = upper_coefficient(k)
        rows.append(
            [
                str(k),
                format_sci(lower, 5, "trunc"),
                format_sci(upper, 5, "trunc"),
                format_fixed(lower / upper, 4, "round"),
            ]
        )
    return rows


def table_new_coefficients() -> list[list[str]]:
    """Scanned asymptotic coefficients for k = 14..20 with the maximizing
    n' (the bound is valid for all n >= n')."""
    rows = [["k", "coefficient", "nprime", "m", "valid_for_n_ge"]]
    for k in range(14, 21):
        coeff, nprime, m = best_asymptotic_coefficient(k)
        rows.append([str(k), f"{coeff.numerator}/{coeff.denominator}", str(nprime), str(m), str(nprime)])
    return rows


def emit_table(which: int) -> list[list[str]]:
    if which == 1:
        return table_known_values()
    if which == 2:
        return table_bound_comparison()
    if which == 3:
        return table_new_coefficients()
    raise ValueError("which must be 1, 2 or 3")
