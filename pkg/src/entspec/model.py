"""Phase-diagram geometry of the anisotropic XY chain in a transverse
field: region classification, the elliptic parameter ``k(gamma, h)`` and
gap/correlation-length bookkeeping.

The Hamiltonian is symmetric under ``gamma -> -gamma`` and ``h -> -h``,
so every point is first mapped into the quadrant ``gamma >= 0``,
``h >= 0``.  The critical lines are ``h = 2`` (Ising transition) and
``gamma = 0, h < 2`` (isotropic XX line); the circle
``h^2 = 4 (1 - gamma^2)`` is the line of degenerate product ground
states that separates the two low-field regions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import elliptic
from .errors import CriticalInputError

#: Largest nome accepted by spectrum-level operations.  Beyond this the
#: q-series still converge in exact arithmetic but too slowly for the
#: advertised accuracies, so inputs are rejected instead.
Q_MAX = 0.999

DEFAULT_EPS_CRIT = 1e-9


class Region(Enum):
    CASE_1A = "case1a"
    CASE_1B = "case1b"
    CASE_2 = "case2"
    CRITICAL_XX = "critical_xx"
    CRITICAL_ISING = "critical_ising"
    FACTORIZING_LINE = "factorizing_line"


#: Regions with a well-defined gapped closed-form spectrum.
BULK_REGIONS = frozenset({Region.CASE_1A, Region.CASE_1B, Region.CASE_2})


class Regime(Enum):
    """Which closed-form branch applies: strong field (h > 2) or weak."""

    HIGH_FIELD = "high_field"
    LOW_FIELD = "low_field"


@dataclass(frozen=True)
class ModelPoint:
    gamma: float
    h: float
    region: Region

    @property
    def regime(self) -> Regime:
        return Regime.HIGH_FIELD if self.h > 2.0 else Regime.LOW_FIELD


@dataclass(frozen=True)
class GapInfo:
    """Distance to the nearest critical line and the associated scaling.

    ``delta`` is the energy-gap scale, ``central_charge`` the conformal
    charge of that line (1/2 for Ising, 1 for XX), ``xi = 1/delta``.
    """

    delta: float
    central_charge: float
    xi: float


def classify(gamma: float, h: float, eps_crit: float = DEFAULT_EPS_CRIT) -> ModelPoint:
    """Classify a phase-diagram point.

    Points within ``eps_crit`` of a critical or factorizing line are
    flagged as such; otherwise the three bulk regions are separated by
    ``h > 2`` and the sign of ``h^2 - 4 (1 - gamma^2)``.
    """
    if not eps_crit > 0.0:
        raise ValueError(f"eps_crit must be positive, got {eps_crit!r}")
    g, hh = abs(gamma), abs(h)
    region = _region(g, hh, eps_crit)
    return ModelPoint(gamma=g, h=hh, region=region)


def _region(g: float, h: float, eps: float) -> Region:
    if abs(h - 2.0) <= eps:
        return Region.CRITICAL_ISING
    if g <= eps and h < 2.0:
        return Region.CRITICAL_XX
    boundary = h * h - 4.0 * (1.0 - g * g)
    if h < 2.0 and abs(boundary) <= eps:
        return Region.FACTORIZING_LINE
    if h > 2.0:
        return Region.CASE_2
    if boundary > 0.0:
        return Region.CASE_1A
    return Region.CASE_1B


def elliptic_moduli(point: ModelPoint) -> tuple[float, float]:
    """Return ``(k, k')`` for a bulk point, each branch written in a
    cancellation-free form.

    The naive ``k' = sqrt(1 - k^2)`` loses every significant digit when
    ``k`` is within machine epsilon of 1 (tiny ``gamma`` in case 1b, or
    ``h`` near 2), so the complementary modulus is evaluated directly
    from ``(gamma, h)``.
    """
    g, h = point.gamma, point.h
    if point.region is Region.CASE_2:
        s = (h / 2.0) ** 2 + g * g - 1.0
        rs = math.sqrt(s)
        k = g / rs
        k_prime = math.sqrt((h - 2.0) * (h + 2.0)) / (2.0 * rs)
    elif point.region is Region.CASE_1A:
        s = max((h / 2.0) ** 2 + g * g - 1.0, 0.0)
        k = math.sqrt(s) / g
        k_prime = math.sqrt((2.0 - h) * (2.0 + h)) / (2.0 * g)
    elif point.region is Region.CASE_1B:
        d = (2.0 - h) * (2.0 + h) / 4.0  # 1 - (h/2)^2 > 0 here
        k = math.sqrt(max(d - g * g, 0.0) / d)
        k_prime = g / math.sqrt(d)
    else:
        raise CriticalInputError(
            f"elliptic parameter degenerates on {point.region.value} "
            f"at (gamma={g}, h={h})"
        )
    if not 0.0 < k < 1.0 or not 0.0 < k_prime < 1.0:
        raise CriticalInputError(
            f"elliptic parameter degenerate (k={k}, k'={k_prime}) "
            f"at (gamma={g}, h={h})"
        )
    return k, k_prime


def elliptic_parameter(point: ModelPoint) -> float:
    """Elliptic parameter ``k(gamma, h)`` of the three-branch formula."""
    return elliptic_moduli(point)[0]


def elliptic_data(point: ModelPoint) -> elliptic.EllipticData:
    """Full elliptic data for a bulk point, with the near-critical nome
    guard applied (``q <= Q_MAX``)."""
    k, k_prime = elliptic_moduli(point)
    data = elliptic.from_moduli(k, k_prime)
    if data.q > Q_MAX:
        raise CriticalInputError(
            f"nome q={data.q:.6f} exceeds {Q_MAX} at (gamma={point.gamma}, "
            f"h={point.h}); series accuracy is not guaranteed this close "
            "to a critical line"
        )
    return data


def gap_info(point: ModelPoint) -> GapInfo:
    """Gap scale relative to the nearest critical line.

    ``delta = |h - 2|`` with ``c = 1/2`` towards the Ising line,
    ``delta = gamma`` with ``c = 1`` towards the XX segment (which only
    exists for ``h < 2``).  When both lines are in reach the smaller
    ``delta`` wins; this is a scaling diagnostic, not a sharp crossover.
    """
    d_ising = abs(point.h - 2.0)
    d_xx = point.gamma if point.h < 2.0 else math.inf
    if d_ising <= d_xx:
        delta, charge = d_ising, 0.5
    else:
        delta, charge = d_xx, 1.0
    xi = 1.0 / delta if delta > 0.0 else math.inf
    return GapInfo(delta=delta, central_charge=charge, xi=xi)
