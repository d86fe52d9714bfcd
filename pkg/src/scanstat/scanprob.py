"""Exact CDFs of the three scan-statistic families, with float twins.

For N points uniform on the unit interval or circle, W(k) / W_c(k) is the
smallest window containing k of them, and the CDFs evaluated here are

  pc_nm1:  P(W_c(N-1) <= w)   saturates to 1 at w >= 1 - 2/N
  pc_3:    P(W_c(3)   <= w)   saturates to 1 at w >= 2/N
  p_lin_3: P(W(3)     <= w)   saturates to 1 at w >= 2/(N-2)

Below the saturation threshold each survival probability is a finite signed
binomial sum over the active floor(1/w)-indexed pieces; `binom_ext` silently
kills out-of-range terms, and the only negative exponent that can survive the
binomial gate is a single -1 whose base is provably nonzero in the valid
regime.  Exact mode is the source of truth; float mode runs the identical
term sequence in float64 (piece selection and regime decisions still use the
exact rational w, so a float cannot land on the wrong polynomial piece) and
is validated against exact mode -- the alternating binomial sums are
cancellation-prone and the artifact measures that error rather than hiding
it.

A second, independent pathway to the same numbers normalizes the closed-form
measures by the free simplex volume (measure_to_probability); classical
small-case CDFs (sample range, arc containment, minimum spacings) serve as
external baselines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .exactnum import DomainError, binom_ext, pow_int
from .measures import a_closed, b_closed, c_closed


class ScanKind(Enum):
    PC_NM1 = "pc-nm1"
    PC_3 = "pc-3"
    P_3 = "p-3"


class Regime(Enum):
    BELOW_THRESHOLD = "below_threshold"
    SATURATED = "saturated"


@dataclass(frozen=True)
class ScanQuery:
    kind: ScanKind
    N: int
    w: Fraction
    mode: str = "exact"

    def __post_init__(self):
        if self.N < 3:
            raise DomainError(f"N must be >= 3, got {self.N}")
        w = Fraction(self.w)
        if not 0 <= w <= 1:
            raise DomainError(f"w must lie in [0, 1], got {w}")
        object.__setattr__(self, "w", w)
        if self.mode not in ("exact", "float"):
            raise DomainError(f"mode must be 'exact' or 'float', got {self.mode!r}")


@dataclass
class ProbValue:
    p: Fraction | float
    survival: Fraction | float
    regime: Regime
    active_terms: int

    @property
    def exact(self) -> bool:
        return isinstance(self.p, Fraction)


def threshold(kind: ScanKind, N: int) -> Fraction:
    """Width at and beyond which the CDF is identically 1."""
    if kind is ScanKind.PC_NM1:
        return 1 - Fraction(2, N)
    if kind is ScanKind.PC_3:
        return Fraction(2, N)
    return Fraction(2, N - 2)


def _validate(N: int, w) -> Fraction:
    if N < 3:
        raise DomainError(f"N must be >= 3, got {N}")
    w = Fraction(w)
    if not 0 <= w <= 1:
        raise DomainError(f"w must lie in [0, 1], got {w}")
    return w


def _finish(terms: list, sign: int, mode: str, leading_unit: bool = False) -> ProbValue:
    active = sum(1 for t in terms if t != 0)
    if mode == "float":
        if leading_unit and sign == 1:
            # terms[0] == 1 exactly, so the complement 1 - sum(terms) is just
            # -sum(terms[1:]): no 1 - (1 - eps) cancellation for tiny p
            p = -math.fsum(float(t) for t in terms[1:])
            return ProbValue(p, 1.0 - p, Regime.BELOW_THRESHOLD, active)
        survival = sign * math.fsum(float(t) for t in terms)
        return ProbValue(1.0 - survival, survival, Regime.BELOW_THRESHOLD, active)
    survival = sign * sum(terms, Fraction(0))
    return ProbValue(1 - survival, survival, Regime.BELOW_THRESHOLD, active)


def _saturated(mode: str) -> ProbValue:
    one = 1.0 if mode == "float" else Fraction(1)
    return ProbValue(one, one * 0, Regime.SATURATED, 0)


def _pc_nm1_terms(N: int, w, p_max: int) -> list:
    u = 1 - w
    lead = 1 - N * u
    if lead == 0:
        raise DomainError("degenerate p=0 term: 1 - N(1-w) vanished")
    # the p = 0 term is lead * lead**-1 == 1 identically (its two factors
    # cancel); emitting the simplified value keeps the float path exact there
    terms = [Fraction(1)]
    for p in range(1, p_max + 1):
        c = binom_ext(N, p)
        if not c:
            continue
        terms.append(c * lead * pow_int(1 - p * u, N - p - 1) * pow_int(1 - (N - p) * u, p - 1))
    return terms


def pc_nm1(N: int, w, mode: str = "exact", _force_p_max: int | None = None) -> ProbValue:
    """P(W_c(N-1) <= w): the circular near-complete window CDF."""
    w = _validate(N, w)
    if w >= threshold(ScanKind.PC_NM1, N):
        return _saturated(mode)
    p_max = _force_p_max if _force_p_max is not None else math.floor(1 / (1 - w))
    wf = float(w) if mode == "float" else w
    return _finish(_pc_nm1_terms(N, wf, p_max), 1, mode, leading_unit=True)


def _pc_3_terms(N: int, w, p_max: int) -> list:
    terms = [pow_int(2 - N * w, N - 1)]
    half = binom_ext(N, Fraction(N, 2))
    if half:
        terms.append(half * (N * w - 3) * pow_int(1 - N * w / 2, N - 2) / 2)
    for p in range(math.ceil(Fraction(N + 1, 2)), p_max + 1):
        c = binom_ext(N, 3 * p - N)
        if not c:
            continue
        # exponent 2N-3p-1 >= -1 whenever the binomial survives; at -1 the
        # base 1-(N-p)w stays positive for w < 2/N since N-p <= N/3 there
        terms.append(
            (N * w - 3) * c * pow_int(1 - p * w, 3 * p - N - 1) * pow_int(1 - (N - p) * w, 2 * N - 3 * p - 1)
        )
    return terms


def pc_3(N: int, w, mode: str = "exact", _force_p_max: int | None = None) -> ProbValue:
    """P(W_c(3) <= w): the circular three-point window CDF."""
    w = _validate(N, w)
    if w >= threshold(ScanKind.PC_3, N):
        return _saturated(mode)
    if w == 0:
        zero = 0.0 if mode == "float" else Fraction(0)
        return ProbValue(zero, zero + 1, Regime.BELOW_THRESHOLD, 0)
    p_max = _force_p_max if _force_p_max is not None else math.floor(1 / w)
    wf = float(w) if mode == "float" else w
    return _finish(_pc_3_terms(N, wf, p_max), (-1) ** (N - 1), mode)


def _p_lin_3_terms(N: int, w, p_max: int) -> list:
    terms = []
    half = binom_ext(N, Fraction(N, 2))
    if half:
        terms.append(-2 * half * pow_int(1 - (Fraction(N, 2) - 1) * w, N) / (N + 2))
    for p in range(math.ceil(Fraction(N + 1, 2)), p_max + 1):
        for d, cf in ((-1, 1), (0, -2), (1, 1)):
            m = 3 * p - N + d
            c = binom_ext(N, m)
            if not c:
                continue
            terms.append(cf * c * pow_int(1 - (p - 1) * w, m) * pow_int(1 - (N - p - 1) * w, 2 * N - 3 * p - d))
    return terms


def p_lin_3(N: int, w, mode: str = "exact", _force_p_max: int | None = None) -> ProbValue:
    """P(W(3) <= w): the linear three-point window CDF."""
    w = _validate(N, w)
    if N > 4 and w >= threshold(ScanKind.P_3, N):
        return _saturated(mode)
    if N == 4 and w == 1:
        return _saturated(mode)  # threshold 2/(N-2) = 1 reached at the domain edge
    if w == 0:
        zero = 0.0 if mode == "float" else Fraction(0)
        return ProbValue(zero, zero + 1, Regime.BELOW_THRESHOLD, 0)
    p_max = _force_p_max if _force_p_max is not None else math.floor(1 / w) + 1
    wf = float(w) if mode == "float" else w
    return _finish(_p_lin_3_terms(N, wf, p_max), (-1) ** (N - 1), mode)


_EVALUATORS = {
    ScanKind.PC_NM1: pc_nm1,
    ScanKind.PC_3: pc_3,
    ScanKind.P_3: p_lin_3,
}


def evaluate(query: ScanQuery) -> ProbValue:
    return _EVALUATORS[query.kind](query.N, query.w, query.mode)


# ---------------------------------------------------------------------------
# Second pathway: normalized measures
# ---------------------------------------------------------------------------


def measure_to_probability(kind: ScanKind, N: int, w) -> ProbValue:
    """The same CDFs through the measure normalization pathway.

    The survival probability is the constrained spacing measure divided by
    the free simplex density at the mapped point:

      PC_NM1: a_N(x) / [(x+N)^(N-1)/(N-1)!]   at x = 2/(1-w) - N
      PC_3:   b_N(x) / [(x+N)^(N-1)/(N-1)!]   at x = 2/w - N
      P_3:    c_N(x) / [(x+N+1)^N/N!]         at x = 2/w - N - 1

    (N spacings for the circular statistics, N+1 for the linear one.)
    Requires w strictly inside the non-saturated regime.
    """
    w = _validate(N, w)
    if not 0 < w < threshold(kind, N):
        raise DomainError(f"w={w} is not strictly inside the valid regime for {kind.value}")
    if kind is ScanKind.PC_NM1:
        x = 2 / (1 - w) - N
        survival = a_closed(N, x) * math.factorial(N - 1) / (x + N) ** (N - 1)
    elif kind is ScanKind.PC_3:
        x = 2 / w - N
        survival = b_closed(N, x) * math.factorial(N - 1) / (x + N) ** (N - 1)
    else:
        x = 2 / w - N - 1
        survival = c_closed(N, x) * math.factorial(N) / (x + N + 1) ** N
    return ProbValue(1 - survival, survival, Regime.BELOW_THRESHOLD, 1)


# ---------------------------------------------------------------------------
# Classical baseline CDFs (independent oracles)
# ---------------------------------------------------------------------------


def range_linear_cdf(N: int, w) -> Fraction:
    """P(sample range <= w) = N w^(N-1) - (N-1) w^N."""
    w = Fraction(w)
    _check_baseline_args(N, w)
    return N * w ** (N - 1) - (N - 1) * w**N


def arc_containment_cdf(N: int, w) -> Fraction:
    """P(all N points fit in some arc of length w).

    Full inclusion-exclusion over uncovered gaps; collapses to N w^(N-1) for
    w <= 1/2.
    """
    w = Fraction(w)
    _check_baseline_args(N, w)
    total = Fraction(0)
    for j in range(1, N + 1):
        gap = 1 - j * (1 - w)
        if gap <= 0:
            break
        total += (-1) ** (j + 1) * binom_ext(N, j) * gap ** (N - 1)
    return total


def min_gap_linear_cdf(N: int, w) -> Fraction:
    """P(min spacing of N points on the interval <= w) = 1 - (1-(N-1)w)_+^N."""
    w = Fraction(w)
    _check_baseline_args(N, w)
    return 1 - max(Fraction(0), 1 - (N - 1) * w) ** N


def min_gap_circular_cdf(N: int, w) -> Fraction:
    """P(min circular spacing <= w) = 1 - (1-Nw)_+^(N-1)."""
    w = Fraction(w)
    _check_baseline_args(N, w)
    return 1 - max(Fraction(0), 1 - N * w) ** (N - 1)


def _check_baseline_args(N: int, w: Fraction) -> None:
    if N < 2:
        raise DomainError(f"baselines require N >= 2, got {N}")
    if not 0 <= w <= 1:
        raise DomainError(f"w must lie in [0, 1], got {w}")


BASELINES = {
    "range_linear": range_linear_cdf,
    "arc_containment": arc_containment_cdf,
    "min_gap_linear": min_gap_linear_cdf,
    "min_gap_circular": min_gap_circular_cdf,
}


def baseline_cdf(name: str, N: int, w) -> Fraction:
    try:
        fn = BASELINES[name]
    except KeyError:
        raise DomainError(f"unknown baseline {name!r}; choose from {sorted(BASELINES)}") from None
    return fn(N, w)


# ---------------------------------------------------------------------------
# Tabulation
# ---------------------------------------------------------------------------

FLOAT_MATCH_RTOL = 1e-10
FLOAT_MATCH_FLOOR = 1e-8


class VerificationError(RuntimeError):
    """An internal consistency contract failed (float/exact divergence)."""


def tabulate(kind: ScanKind, N_list, w_grid, mode: str = "both") -> list[dict]:
    """Rows of (kind, N, w, p_exact, p_float, regime, active_terms).

    Exact and float columns must agree to FLOAT_MATCH_RTOL relative wherever
    |p| > FLOAT_MATCH_FLOOR; a violation raises VerificationError.  Evaluator
    domain errors are recorded on the offending row instead of propagating.
    """
    rows = []
    for N in N_list:
        for w in w_grid:
            row = {"kind": kind.value, "N": N, "w": str(Fraction(w))}
            try:
                exact = _EVALUATORS[kind](N, w, "exact")
                row.update(
                    p_exact=str(exact.p),
                    p_float=float(exact.p),
                    regime=exact.regime.value,
                    active_terms=exact.active_terms,
                    error="",
                )
                if mode == "both":
                    approx = _EVALUATORS[kind](N, w, "float")
                    row["p_float"] = approx.p
                    rel = abs(approx.p - float(exact.p)) / max(float(exact.p), FLOAT_MATCH_FLOOR)
                    row["float_rel_err"] = rel
                    if float(exact.p) > FLOAT_MATCH_FLOOR and rel > FLOAT_MATCH_RTOL:
                        raise VerificationError(
                            f"float/exact divergence {rel:.3e} at kind={kind.value} N={N} w={w}"
                        )
            except DomainError as exc:
                row.update(p_exact="", p_float=float("nan"), regime="error", active_terms=0, error=str(exc))
            rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# Piece-boundary continuity at floor(1/w) jumps
# ---------------------------------------------------------------------------


def floor_boundary_gap(kind: ScanKind, N: int, j: int) -> Fraction:
    """Exact difference between the two piece polynomials at their junction.

    The active piece index floor(1/w) (or floor(1/(1-w))) jumps at w = 1/j
    (w = 1 - 1/j for the near-complete window); continuity means evaluating
    with either term count at the junction gives the same probability.
    """
    if kind is ScanKind.PC_NM1:
        w = 1 - Fraction(1, j)
    else:
        w = Fraction(1, j)
    if not 0 < w < threshold(kind, N):
        raise DomainError(f"junction w={w} outside the valid regime")
    if kind is ScanKind.PC_NM1:
        hi, lo = j, j - 1
    elif kind is ScanKind.PC_3:
        hi, lo = j, j - 1
    else:
        hi, lo = j + 1, j
    with_term = _EVALUATORS[kind](N, w, "exact", _force_p_max=hi)
    without = _EVALUATORS[kind](N, w, "exact", _force_p_max=lo)
    return with_term.p - without.p
