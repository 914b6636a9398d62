"""Closed-form entanglement spectrum of a large block of the infinite XY
chain, its zeta function ``Tr rho_A^alpha`` and the Renyi / von Neumann
entropies in all of their equivalent representations.

For ``h > 2`` the eigenvalues form a single geometric ladder of ratio
``exp(-pi tau0)`` with degeneracies ``a_n``; for ``h < 2`` the ratio is
``exp(-2 pi tau0)`` and the degeneracies are ``2 b_n``.  The ladder
constants come from the elliptic data of ``k(gamma, h)``, the
degeneracies from exact partition convolutions.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass
from enum import Enum

from . import model, partitions
from .elliptic import EllipticData, modular_lambda, modular_lambda_complement, theta
from .errors import CriticalInputError, DomainError, ResourceLimitError
from .model import ModelPoint, Regime

_LN2 = math.log(2.0)

#: exp(-745) underflows; ladders are refused past this point.
_LOG_UNDERFLOW = -744.0

_PRODUCT_TOL = 5e-17  # next factor differs from 1 by < 1e-16
_PRODUCT_CAP = 10**6


class Representation(Enum):
    THETA = "theta"
    LAMBDA = "lambda"
    QSERIES = "qseries"
    SPECTRUM_SUM = "spectrum_sum"


@dataclass(frozen=True)
class EntanglementSpectrum:
    """Ordered eigenvalues of the reduced density matrix with exact
    integer degeneracies.

    ``log_eigenvalues`` carries the same ladder without underflow and is
    the preferred form for deep levels.
    """

    point: ModelPoint
    elliptic: EllipticData
    eigenvalues: list[float]
    log_eigenvalues: list[float]
    degeneracies: list[int]
    regime: Regime


@dataclass(frozen=True)
class EntropyValue:
    alpha: float
    value: float
    representation: Representation


# ---------------------------------------------------------------------------
# shared partition table

_table_lock = threading.Lock()
_shared_table: partitions.PartitionTable | None = None


def shared_partition_table(n_max: int) -> partitions.PartitionTable:
    """Process-wide degeneracy table, grown geometrically on demand."""
    global _shared_table
    with _table_lock:
        if _shared_table is None or _shared_table.n_max < n_max:
            target = max(n_max, 256)
            if _shared_table is not None:
                target = max(target, 2 * _shared_table.n_max)
            _shared_table = partitions.build_tables(target)
        return _shared_table


# ---------------------------------------------------------------------------
# ladder constants


def _require_bulk(point: ModelPoint) -> None:
    if point.region not in model.BULK_REGIONS:
        raise CriticalInputError(
            f"no closed-form spectrum on {point.region.value} at "
            f"(gamma={point.gamma}, h={point.h})"
        )


def _ladder(data: EllipticData, regime: Regime) -> tuple[float, float]:
    """Return ``(log lambda_0, step)`` with ``log lambda_n = log lambda_0
    - step * n``."""
    pt = math.pi * data.tau0
    if regime is Regime.HIGH_FIELD:
        return math.log(data.k * data.k_prime / 4.0) / 6.0 + pt / 12.0, pt
    return math.log(data.k_prime / (4.0 * data.k**2)) / 6.0 - pt / 6.0, 2.0 * pt


def _degeneracy_seq(table: partitions.PartitionTable, regime: Regime, n: int) -> int:
    if regime is Regime.HIGH_FIELD:
        return table.a[n]
    return 2 * table.b[n]


def max_representable_levels(point: ModelPoint) -> int:
    """Largest ``n_levels`` for which the deepest ladder eigenvalue still
    avoids double-precision underflow at this point."""
    _require_bulk(point)
    data = model.elliptic_data(point)
    log0, step = _ladder(data, point.regime)
    return max(1, int((log0 - _LOG_UNDERFLOW) / step))


def exact_spectrum(
    point: ModelPoint,
    n_levels: int,
    table: partitions.PartitionTable | None = None,
) -> EntanglementSpectrum:
    """Eigenvalue ladder and exact degeneracies for the first ``n_levels``
    distinct eigenvalues.

    Raises
    ------
    CriticalInputError
        On critical or factorizing lines, or when the nome exceeds the
        near-critical guard.
    ValueError
        If the requested ladder would underflow double precision; use
        ``log_eigenvalues`` oriented APIs for deeper levels.
    """
    if n_levels < 1:
        raise ValueError(f"n_levels must be >= 1, got {n_levels!r}")
    _require_bulk(point)
    data = model.elliptic_data(point)
    regime = point.regime
    log0, step = _ladder(data, regime)
    deepest = log0 - step * (n_levels - 1)
    if deepest < _LOG_UNDERFLOW:
        raise ValueError(
            f"level {n_levels - 1} underflows double precision "
            f"(log lambda = {deepest:.1f}); request fewer levels"
        )
    if table is None or table.n_max < n_levels - 1:
        table = shared_partition_table(n_levels - 1)
    logs = [log0 - step * n for n in range(n_levels)]
    return EntanglementSpectrum(
        point=point,
        elliptic=data,
        eigenvalues=[math.exp(v) for v in logs],
        log_eigenvalues=logs,
        degeneracies=[_degeneracy_seq(table, regime, n) for n in range(n_levels)],
        regime=regime,
    )


# ---------------------------------------------------------------------------
# zeta function


def _log_product(q_alpha, exponents) -> complex | float:
    """``2 * sum_m log(1 + q_alpha**e_m)`` over an exponent generator,
    truncated once a factor is within 1e-16 of 1."""
    is_complex = isinstance(q_alpha, complex)
    mag = abs(q_alpha)
    if mag >= 1.0:
        raise DomainError(f"|q_alpha| must be < 1, got {mag!r}")
    total = 0.0 + 0.0j if is_complex else 0.0
    for count, e in enumerate(exponents):
        if count >= _PRODUCT_CAP:
            raise ResourceLimitError("q-series product did not converge")
        w = q_alpha**e
        total += 2.0 * (cmath.log(1.0 + w) if is_complex else math.log1p(w))
        if mag**e < _PRODUCT_TOL:
            break
    return total


def _odd_exponents():
    m = 0
    while True:
        yield 2 * m + 1
        m += 1


def _even_exponents():
    m = 1
    while True:
        yield 2 * m
        m += 1


def log_zeta_qseries(data: EllipticData, regime: Regime, alpha) -> complex | float:
    """``log Tr rho_A^alpha`` from the infinite-product representation.

    ``alpha`` may be complex (used for contour integration); the nome
    ``q_alpha = exp(-alpha pi tau0)`` must stay inside the unit disc.
    """
    pt = math.pi * data.tau0
    is_complex = isinstance(alpha, complex)
    q_alpha = cmath.exp(-alpha * pt) if is_complex else math.exp(-alpha * pt)
    if regime is Regime.HIGH_FIELD:
        pref = alpha * (pt / 12.0 + math.log(data.k * data.k_prime / 4.0) / 6.0)
        return pref + _log_product(q_alpha, _odd_exponents())
    pref = alpha * (-pt / 6.0 + math.log(data.k_prime / (4.0 * data.k**2)) / 6.0)
    return _LN2 + pref + _log_product(q_alpha, _even_exponents())


def zeta_product(point: ModelPoint, alpha: float) -> float:
    """``Tr rho_A^alpha`` evaluated as prefactor times the squared
    infinite product, truncated at relative 1e-16."""
    if not alpha > 0.0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    _require_bulk(point)
    data = model.elliptic_data(point)
    return math.exp(log_zeta_qseries(data, point.regime, alpha))


# ---------------------------------------------------------------------------
# spectrum sums with certified tails


def _growth_coefficient(regime: Regime) -> float:
    # degeneracies grow like exp(pi sqrt(c n)) with c = 1/3 resp. 2/3
    return 1.0 / 3.0 if regime is Regime.HIGH_FIELD else 2.0 / 3.0


def _log_degeneracy_bound(n: int, regime: Regime) -> float:
    # leading asymptotic times a safety factor of 10
    c = _growth_coefficient(regime)
    if n == 0:
        return math.log(10.0)
    return math.log(10.0) - 0.75 * math.log(n) + math.pi * math.sqrt(c * n)


def _sum_ladder(
    point: ModelPoint,
    alpha: float,
    weight,
    rel_tail: float,
) -> float:
    """``sum_n g_n * weight(log lambda_n)`` with a certified relative tail.

    ``weight(L)`` must be positive, decaying in ``n`` at least like
    ``exp(alpha * L)`` up to factors polynomial in ``|L|``.
    """
    _require_bulk(point)
    data = model.elliptic_data(point)
    regime = point.regime
    log0, step = _ladder(data, regime)
    c = _growth_coefficient(regime)
    table = shared_partition_table(512)
    total = 0.0
    quiet = 0
    n = 0
    while True:
        if n > table.n_max:
            if 2 * table.n_max >= partitions.DEFAULT_N_CAP:
                raise ResourceLimitError(
                    "spectrum sum needs more levels than the partition cap"
                )
            table = shared_partition_table(2 * table.n_max)
        g = _degeneracy_seq(table, regime, n)
        log_g = math.log(g)
        log_lam = log0 - step * n
        term = math.exp(log_g + weight(log_lam))
        total += term
        quiet = quiet + 1 if term < 1e-17 * total else 0
        if quiet >= 5:
            # certify: remaining terms are bounded by the asymptotic
            # degeneracy bound, whose term ratio is below `ratio` from
            # here on; sum the geometric majorant.
            ratio = math.exp(
                1.5 * math.pi * math.sqrt(c) * (math.sqrt(n + 1) - math.sqrt(n))
                - alpha * step
            )
            if ratio < 1.0:
                nb = n + 1
                bound = math.exp(
                    _log_degeneracy_bound(nb, regime) + weight(log0 - step * nb)
                )
                if bound / (1.0 - ratio) <= rel_tail * total:
                    return total
        n += 1


def von_neumann_entropy(point: ModelPoint) -> float:
    """``-sum_n g_n lambda_n log lambda_n`` from the exact ladder, with
    the truncation tail bounded below 1e-14 of the sum."""
    return _sum_ladder(
        point,
        alpha=1.0,
        weight=lambda L: L + math.log(max(-L, 1e-300)),
        rel_tail=1e-14,
    )


def _zeta_spectrum_sum(point: ModelPoint, alpha: float) -> float:
    return _sum_ladder(
        point,
        alpha=alpha,
        weight=lambda L: alpha * L,
        rel_tail=1e-14,
    )


def renyi_entropy(
    point: ModelPoint,
    alpha: float,
    representation: Representation | str = Representation.THETA,
) -> EntropyValue:
    """Renyi entropy ``log(Tr rho_A^alpha) / (1 - alpha)`` in the
    requested representation.

    The four representations (theta quotient, modular lambda, q-series
    product, explicit spectrum sum) are analytically equal; computing
    them separately and comparing is the strongest internal consistency
    check the closed forms admit.
    """
    rep = Representation(representation)
    if not alpha > 0.0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    if alpha == 1.0:
        raise DomainError("alpha = 1 is the von Neumann point; use von_neumann_entropy")
    _require_bulk(point)
    data = model.elliptic_data(point)
    regime = point.regime

    if rep is Representation.QSERIES:
        value = _renyi_qseries(data, regime, alpha)
    elif rep is Representation.THETA:
        value = _renyi_theta(data, regime, alpha)
    elif rep is Representation.LAMBDA:
        value = _renyi_lambda(data, regime, alpha)
    else:
        value = math.log(_zeta_spectrum_sum(point, alpha)) / (1.0 - alpha)
    return EntropyValue(alpha=alpha, value=value, representation=rep)


def _renyi_theta(data: EllipticData, regime: Regime, alpha: float) -> float:
    q_a = math.exp(-alpha * math.pi * data.tau0)
    t2 = theta(2, 0.0, q_a)
    t3 = theta(3, 0.0, q_a)
    t4 = theta(4, 0.0, q_a)
    frac = alpha / (6.0 * (1.0 - alpha))
    inv = 1.0 / (3.0 * (1.0 - alpha))
    if regime is Regime.HIGH_FIELD:
        return (
            frac * math.log(data.k * data.k_prime)
            + inv * math.log(t3 * t3 / (t2 * t4))
            + _LN2 / 3.0
        )
    return (
        frac * math.log(data.k_prime / data.k**2)
        + inv * math.log(t2 * t2 / (t3 * t4))
        + _LN2 / 3.0
    )


def _renyi_lambda(data: EllipticData, regime: Regime, alpha: float) -> float:
    # both lambda and 1 - lambda in subtraction-free form
    lam = modular_lambda(alpha * data.tau0)
    lam_c = modular_lambda_complement(alpha * data.tau0)
    frac = alpha / (6.0 * (1.0 - alpha))
    inv = 1.0 / (12.0 * (1.0 - alpha))
    if regime is Regime.HIGH_FIELD:
        return (
            frac * math.log(data.k * data.k_prime)
            - inv * (math.log(lam) + math.log(lam_c))
            + _LN2 / 3.0
        )
    return (
        frac * math.log(data.k_prime / data.k**2)
        - inv * (math.log(lam_c) - 2.0 * math.log(lam))
        + _LN2 / 3.0
    )


def _renyi_qseries(data: EllipticData, regime: Regime, alpha: float) -> float:
    q = data.q
    q_a = math.exp(-alpha * math.pi * data.tau0)
    if regime is Regime.HIGH_FIELD:
        pref = (alpha / (12.0 * (1.0 - alpha))) * math.log(
            data.k**2 * data.k_prime**2 / (16.0 * q)
        )
        return pref + _log_product(q_a, _odd_exponents()) / (1.0 - alpha)
    pref = (alpha / (6.0 * (1.0 - alpha))) * math.log(
        16.0 * q * data.k_prime / data.k**2
    )
    return pref + _log_product(q_a, _even_exponents()) / (1.0 - alpha) + _LN2


# ---------------------------------------------------------------------------
# critical scaling


def critical_scaling_probe(
    line: str,
    alpha: float,
    deltas: list[float],
) -> list[tuple[float, float]]:
    """Evaluate ``log Tr rho_A^alpha`` on a ray approaching a critical
    line: ``h = 2 + delta`` at ``gamma = 1`` ("ising") or
    ``gamma = delta`` at ``h = 1`` ("xx").

    Returns ``(delta, log zeta)`` pairs for exponent fitting; see
    :func:`fit_scaling_exponent`.
    """
    if line not in ("ising", "xx"):
        raise ValueError(f"line must be 'ising' or 'xx', got {line!r}")
    if not deltas:
        raise ValueError("deltas must be nonempty")
    if any(d <= 0.0 for d in deltas):
        raise ValueError("deltas must be positive")
    if any(b >= a for a, b in zip(deltas, deltas[1:])):
        raise ValueError("deltas must be strictly decreasing")
    if min(deltas) < 1e-6:
        raise ValueError("deltas below 1e-6 are outside the supported range")
    out = []
    for d in deltas:
        if line == "ising":
            point = model.classify(1.0, 2.0 + d)
        else:
            point = model.classify(d, 1.0)
        out.append((d, math.log(zeta_product(point, alpha))))
    return out


def fit_scaling_exponent(pairs: list[tuple[float, float]]) -> float:
    """Least-squares exponent of ``zeta`` against the correlation scale
    ``xi = 1/delta``: the slope of ``log zeta`` versus ``log xi``.

    Near a critical line of central charge ``c`` this tends to
    ``-(c/6) (alpha - 1/alpha)``.  (Against ``log delta`` the same data
    has slope of the opposite sign.)
    """
    if len(pairs) < 2:
        raise ValueError("need at least two points to fit a slope")
    xs = [-math.log(d) for d, _ in pairs]
    ys = [v for _, v in pairs]
    n = len(xs)
    sx, sy = math.fsum(xs), math.fsum(ys)
    sxx = math.fsum(x * x for x in xs)
    sxy = math.fsum(x * y for x, y in zip(xs, ys))
    return (n * sxy - sx * sy) / (n * sxx - sx * sx)
