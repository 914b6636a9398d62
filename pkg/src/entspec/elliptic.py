"""Special-function kernels: complete elliptic integrals, Jacobi theta
functions, the elliptic nome and the modular lambda function.

Everything here is real arithmetic: the theta functions are only ever
needed at ``z = 0`` with a real nome ``q`` in ``[0, 1)``, which is the
regime generated by purely imaginary half-period ratios.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ResourceLimitError

#: Hard cap on theta-series terms.  In practice only nomes above ~0.999
#: would get anywhere near it, and those are rejected upstream.
THETA_TERM_CAP = 10**6

_REL_TOL = 1e-16


@dataclass(frozen=True)
class EllipticData:
    """Derived elliptic quantities for a modulus ``k`` in (0, 1).

    Attributes
    ----------
    k, k_prime : float
        Modulus and complementary modulus, ``k**2 + k_prime**2 == 1``.
    K, K_prime : float
        Complete elliptic integrals of the first kind of ``k`` and
        ``k_prime``.
    tau0 : float
        Half-period ratio ``K_prime / K`` (positive real).
    q : float
        Nome ``exp(-pi * tau0)`` in (0, 1).
    """

    k: float
    k_prime: float
    K: float
    K_prime: float
    tau0: float
    q: float


def complete_elliptic_K(k: float) -> float:
    """Complete elliptic integral of the first kind,
    ``int_0^1 dx / sqrt((1 - x^2)(1 - k^2 x^2))``.

    Uses the arithmetic-geometric mean, which converges quadratically:
    ``K(k) = pi / (2 * agm(1, k'))``.  Relative accuracy is a few ulp.

    Parameters
    ----------
    k : float
        Modulus, ``0 <= k < 1``.
    """
    if not 0.0 <= k < 1.0:
        raise DomainError(f"modulus must satisfy 0 <= k < 1, got {k!r}")
    a = 1.0
    b = math.sqrt((1.0 - k) * (1.0 + k))
    # AGM stalls at the 1-2 ulp level; the iteration cap and the loose
    # relative gate below terminate it there.
    for _ in range(64):
        if abs(a - b) <= 4e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (a + b)


def theta(j: int, z: float, q: float) -> float:
    """Jacobi theta function ``theta_j(z, q)`` for real ``z`` and nome.

    The Fourier series is summed until the next term falls below
    ``1e-16`` times the accumulated sum.  ``theta_1(0, q)`` is exactly 0.

    Parameters
    ----------
    j : int
        Index in {1, 2, 3, 4}.
    z : float
        Real argument.
    q : float
        Nome in ``[0, 1)``.
    """
    if j not in (1, 2, 3, 4):
        raise DomainError(f"theta index must be 1..4, got {j!r}")
    if not 0.0 <= q < 1.0:
        raise DomainError(f"nome must satisfy 0 <= q < 1, got {q!r}")

    if j == 1:
        if z == 0.0:
            return 0.0
        return _theta_half(q, z, signed=True, trig=math.sin)
    if j == 2:
        return _theta_half(q, z, signed=False, trig=math.cos)
    return _theta_whole(q, z, signed=(j == 4))


def _theta_half(q: float, z: float, signed: bool, trig) -> float:
    # 2 * sum_{n>=0} (+-1)^n q^{(n+1/2)^2} trig((2n+1) z)
    total = 0.0
    coeff_scale = 0.0
    for n in range(THETA_TERM_CAP):
        coeff = 2.0 * q ** ((n + 0.5) ** 2)
        term = coeff * trig((2 * n + 1) * z)
        if signed and n % 2:
            term = -term
        total += term
        coeff_scale = max(coeff_scale, abs(total), 1e-300)
        if coeff <= _REL_TOL * coeff_scale:
            return total
    raise ResourceLimitError("theta series did not converge within the term cap")


def _theta_whole(q: float, z: float, signed: bool) -> float:
    # 1 + 2 * sum_{m>=1} (+-1)^m q^{m^2} cos(2 m z)
    total = 1.0
    coeff_scale = 1.0
    for m in range(1, THETA_TERM_CAP):
        coeff = 2.0 * q ** (m * m)
        term = coeff * math.cos(2 * m * z)
        if signed and m % 2:
            term = -term
        total += term
        coeff_scale = max(coeff_scale, abs(total))
        if coeff <= _REL_TOL * coeff_scale:
            return total
    raise ResourceLimitError("theta series did not converge within the term cap")


def modular_lambda(tau: float) -> float:
    """Modular lambda function on the imaginary axis,
    ``lambda(i tau) = theta_2(0, q)^4 / theta_3(0, q)^4`` with
    ``q = exp(-pi tau)``.  Returns a value in (0, 1).

    Parameters
    ----------
    tau : float
        Positive imaginary part of the half-period ratio.
    """
    if not tau > 0.0:
        raise DomainError(f"tau must be positive, got {tau!r}")
    q = math.exp(-math.pi * tau)
    t2 = theta(2, 0.0, q)
    t3 = theta(3, 0.0, q)
    return (t2 / t3) ** 4


def modular_lambda_complement(tau: float) -> float:
    """``1 - lambda(i tau)``, evaluated as ``theta_4^4 / theta_3^4``.

    For small ``tau`` the lambda function is exponentially close to 1
    and the subtraction ``1 - modular_lambda(tau)`` loses every digit;
    this form never subtracts.
    """
    if not tau > 0.0:
        raise DomainError(f"tau must be positive, got {tau!r}")
    q = math.exp(-math.pi * tau)
    t4 = theta(4, 0.0, q)
    t3 = theta(3, 0.0, q)
    return (t4 / t3) ** 4


def nome(k: float) -> EllipticData:
    """Build the full :class:`EllipticData` for a modulus in (0, 1).

    ``tau0 = K(k') / K(k)`` and ``q = exp(-pi tau0)``.  The endpoints
    are rejected: ``tau0`` diverges at ``k -> 0`` and vanishes at
    ``k -> 1``, which is the signature of a critical line upstream.
    """
    if not 0.0 < k < 1.0:
        raise DomainError(f"modulus must satisfy 0 < k < 1, got {k!r}")
    k_prime = math.sqrt((1.0 - k) * (1.0 + k))
    return from_moduli(k, k_prime)


def from_moduli(k: float, k_prime: float) -> EllipticData:
    """Assemble :class:`EllipticData` from an explicitly supplied pair
    ``(k, k')``.

    Callers that know both moduli in closed form should prefer this over
    :func:`nome`: recovering ``k'`` as ``sqrt(1 - k^2)`` loses all
    precision once ``k`` is within a few ulp of 1.
    """
    if not 0.0 < k < 1.0 or not 0.0 < k_prime < 1.0:
        raise DomainError(
            f"moduli must lie strictly inside (0, 1), got k={k!r}, k'={k_prime!r}"
        )
    big_k = complete_elliptic_K(k)
    big_k_prime = complete_elliptic_K(k_prime)
    tau0 = big_k_prime / big_k
    return EllipticData(
        k=k,
        k_prime=k_prime,
        K=big_k,
        K_prime=big_k_prime,
        tau0=tau0,
        q=math.exp(-math.pi * tau0),
    )
