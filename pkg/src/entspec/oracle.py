"""First-principles numerical entanglement spectra, independent of the
closed-form results: free-fermion correlation matrices for blocks of the
infinite chain, the same construction on finite rings, and brute-force
exact diagonalization of small rings.

The chain maps to free fermions; the ground-state Majorana correlations
of a contiguous block are fixed by the Toeplitz kernel

    G(l) = (1/2 pi) int e^{-i l theta} (h/2 - cos - i gamma sin) / eps

with ``eps = sqrt((h/2 - cos)^2 + gamma^2 sin^2)``.  Sign conventions
(which Majorana pairing the kernel feeds, and the kernel's role in bond
energies) are pinned once by exact diagonalization:

    <sigma^z_j> = G(0),   <sigma^x sigma^x> = -G(1),
    <sigma^y sigma^y> = -G(-1).

On a ring the integral becomes a sum over the Jordan-Wigner sector
momenta; the spin ground state is the lower-energy of the two valid
sector states (antiperiodic always; periodic only for ``h < 2``, where
its zero-momentum occupation carries the required odd parity).
"""

from __future__ import annotations

import heapq
import math
import warnings
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy import sparse
from scipy.integrate import quad
from scipy.sparse.linalg import eigsh

from . import model
from .errors import ConvergenceError, PairingError, ResourceLimitError
from .model import ModelPoint
from .spectrum import EntanglementSpectrum

#: A mode with occupation amplitude pinned to 1 contributes exact zeros;
#: this stand-in cost keeps the subset enumeration finite-ordered while
#: still producing 0.0 eigenvalues.
_COST_PINNED = 2000.0

_MAX_BLOCK = 256
_MAX_ED_SITES = 14
_MAX_LEVELS = 10**6

_GROUP_REL_TOL = 1e-6


class OracleSource(Enum):
    FREE_FERMION = "free_fermion"
    EXACT_DIAGONALIZATION = "exact_diagonalization"


@dataclass(frozen=True)
class CorrelationData:
    """Ground-state Majorana correlations of a length-``L`` block.

    ``majorana_matrix`` is the real antisymmetric ``2L x 2L`` matrix
    ``Gamma`` with ``<w_a w_b> = delta_ab + i Gamma_ab``;
    ``mode_occupations`` are the canonical amplitudes ``nu_j`` of its
    Schur form.  ``nu_precise`` carries the same amplitudes from the
    extended-precision pipeline when it was requested.
    """

    point: ModelPoint
    block_size: int
    majorana_matrix: np.ndarray
    mode_occupations: np.ndarray
    nu_precise: list | None = field(default=None, repr=False)


@dataclass(frozen=True)
class OracleSpectrum:
    """Numerically computed reduced-density-matrix eigenvalues.

    ``tail_deficit`` is the probability weight of products not
    enumerated; enumerated weight plus deficit is exactly 1.
    """

    eigenvalues: np.ndarray
    source: OracleSource
    block_size: int
    chain_size: float  # number of ring sites, or math.inf
    tail_deficit: float


# ---------------------------------------------------------------------------
# kernels


def _kernel_integrand_parts(gamma: float, h: float):
    def even_part(t: float) -> float:
        a = h / 2.0 - math.cos(t)
        return a / math.hypot(a, gamma * math.sin(t))

    def odd_part(t: float) -> float:
        b = gamma * math.sin(t)
        return b / math.hypot(h / 2.0 - math.cos(t), b)

    return even_part, odd_part


def _infinite_kernel(gamma: float, h: float, l_max: int) -> dict[int, float]:
    """Fourier coefficients ``G(l)`` of the infinite-chain kernel for
    ``|l| <= l_max`` by adaptive oscillatory quadrature (abs. tol 1e-13)."""
    even_part, odd_part = _kernel_integrand_parts(gamma, h)
    out: dict[int, float] = {}
    for l in range(-l_max, l_max + 1):
        ic, _ = quad(
            even_part, 0.0, math.pi, weight="cos", wvar=l, epsabs=1e-13,
            epsrel=1e-12, limit=400,
        )
        isin, _ = quad(
            odd_part, 0.0, math.pi, weight="sin", wvar=l, epsabs=1e-13,
            epsrel=1e-12, limit=400,
        )
        out[l] = (ic - isin) / math.pi
    return out


def _ring_kernel(gamma: float, h: float, n_sites: int, sector: str) -> dict[int, float]:
    """Discrete kernel on a ring: the integral becomes a mean over the
    sector momenta (antiperiodic: odd multiples of pi/N; periodic:
    even)."""
    if sector == "abc":
        thetas = [(2 * m + 1) * math.pi / n_sites for m in range(n_sites)]
    elif sector == "pbc":
        thetas = [2.0 * math.pi * m / n_sites for m in range(n_sites)]
    else:
        raise ValueError(f"unknown sector {sector!r}")
    even_part, odd_part = _kernel_integrand_parts(gamma, h)
    ev = [even_part(t) for t in thetas]
    od = [odd_part(t) for t in thetas]
    out: dict[int, float] = {}
    for l in range(-(n_sites - 1), n_sites):
        out[l] = (
            math.fsum(
                e * math.cos(l * t) - o * math.sin(l * t)
                for e, o, t in zip(ev, od, thetas)
            )
            / n_sites
        )
    return out


def _assemble_majorana(kernel: dict[int, float], length: int) -> np.ndarray:
    gam = np.zeros((2 * length, 2 * length))
    for j in range(length):
        for l in range(length):
            g = kernel[l - j]
            gam[2 * j, 2 * l + 1] = -g
            gam[2 * l + 1, 2 * j] = +g
    return gam


def _ring_energy(gamma: float, h: float, n_sites: int, kernel: dict[int, float]) -> float:
    # translation invariance of a parity-valid sector state makes the
    # energy a pure kernel expression (bond expectations pinned by ED)
    return -n_sites * (
        (1.0 + gamma) * (-kernel[1])
        + (1.0 - gamma) * (-kernel[-1])
        + h * kernel[0]
    )


# ---------------------------------------------------------------------------
# mode extraction


def _modes_from_matrix(gam: np.ndarray) -> np.ndarray:
    ev = np.linalg.eigvalsh(1j * gam)
    length = gam.shape[0] // 2
    lo = np.sort(ev)[:length]
    hi = np.sort(ev)[length:][::-1]
    if np.max(np.abs(lo + hi)) > 1e-10:
        raise PairingError(
            f"eigenvalues of i*Gamma failed to pair: worst mismatch "
            f"{np.max(np.abs(lo + hi)):.3e}"
        )
    nu = hi.copy()
    nu[(nu < 0.0) & (nu > -1e-12)] = 0.0
    if np.any(nu < 0.0) or np.any(nu > 1.0 + 1e-10):
        raise PairingError("mode occupations escaped [0, 1]")
    return np.clip(nu, 0.0, 1.0)


def mode_occupations(corr: CorrelationData) -> np.ndarray:
    """Canonical amplitudes ``nu_j >= 0`` of the correlation matrix.

    The Hermitian form ``i Gamma`` has eigenvalues in pairs ``+-nu_j``;
    the pairing is checked to 1e-10 and sub-1e-12 negative dust is
    clamped to zero.
    """
    return _modes_from_matrix(corr.majorana_matrix)


def build_correlations(
    point: ModelPoint,
    block_size: int,
    precision: str = "double",
    dps: int = 30,
) -> CorrelationData:
    """Majorana correlation matrix of a block of the infinite chain.

    ``precision="high"`` additionally runs the kernel and the canonical
    form in ``dps``-digit arithmetic; this is required to resolve mode
    amplitudes whose distance from 1 sits below double-precision epsilon
    (they control the deep spectrum levels).
    """
    if not 1 <= block_size <= _MAX_BLOCK:
        raise ValueError(f"block_size must be in 1..{_MAX_BLOCK}, got {block_size!r}")
    model.elliptic_data(point)  # raises CriticalInputError near the lines
    kernel = _infinite_kernel(point.gamma, point.h, block_size - 1)
    gam = _assemble_majorana(kernel, block_size)
    asym = np.max(np.abs(gam + gam.T))
    if asym > 1e-13:
        raise PairingError(f"Majorana matrix lost antisymmetry: {asym:.3e}")
    nu_mp = _mp_mode_occupations(point, block_size, dps) if precision == "high" else None
    return CorrelationData(
        point=point,
        block_size=block_size,
        majorana_matrix=gam,
        mode_occupations=_modes_from_matrix(gam),
        nu_precise=nu_mp,
    )


def _mp_mode_occupations(point: ModelPoint, block_size: int, dps: int) -> list:
    """Mode amplitudes as the singular values of the Toeplitz block
    ``[G(m - l)]`` in extended precision.

    The trapezoid rule on the (periodic, analytic) kernel converges
    geometrically; the node count doubles until the coefficients settle
    at the working precision.
    """
    from mpmath import mp

    gamma, h = point.gamma, point.h
    with mp.workdps(dps):
        mp_g, mp_h = mp.mpf(gamma), mp.mpf(h)
        prev: list | None = None
        nodes = 256
        while True:
            coeffs = _mp_kernel_at(mp_g, mp_h, block_size, nodes)
            if prev is not None:
                err = max(abs(a - b) for a, b in zip(coeffs, prev))
                if err < mp.mpf(10) ** (-(dps - 4)):
                    break
            if nodes > 8192:
                raise ConvergenceError(
                    "extended-precision kernel did not settle; point is "
                    "too close to a critical line for this block size"
                )
            prev = coeffs
            nodes *= 2
        offset = block_size - 1
        mat = mp.matrix(block_size, block_size)
        for i in range(block_size):
            for j in range(block_size):
                mat[i, j] = coeffs[offset + j - i]
        sv = mp.svd_r(mat, compute_uv=False)
        nus = sorted((sv[i] for i in range(block_size)), reverse=True)
        return nus


def _mp_kernel_at(mp_g, mp_h, block_size: int, nodes: int) -> list:
    from mpmath import mp

    two_pi = 2 * mp.pi
    re_vals, im_vals = [], []
    for m in range(nodes):
        t = two_pi * m / nodes
        a = mp_h / 2 - mp.cos(t)
        b = mp_g * mp.sin(t)
        e = mp.sqrt(a * a + b * b)
        re_vals.append(a / e)
        im_vals.append(-b / e)
    cos_tab = [mp.cos(two_pi * j / nodes) for j in range(nodes)]
    sin_tab = [mp.sin(two_pi * j / nodes) for j in range(nodes)]
    out = []
    for l in range(-(block_size - 1), block_size):
        acc = mp.mpf(0)
        for m in range(nodes):
            idx = (l * m) % nodes
            acc += re_vals[m] * cos_tab[idx] + im_vals[m] * sin_tab[idx]
        out.append(acc / nodes)
    return out


# ---------------------------------------------------------------------------
# product enumeration


def _mode_logs(nu) -> tuple[float, list[float]]:
    """Log of the all-plus product and the flip costs.

    Amplitudes may be floats or extended-precision numbers; costs are
    reduced to floats only after the log, so amplitudes separated from 1
    by less than double epsilon still yield accurate costs.
    """
    log_base_parts = []
    costs: list[float] = []
    for v in nu:
        if isinstance(v, (float, np.floating)):
            log_base_parts.append(math.log1p(v) - math.log(2.0))
            costs.append(
                _COST_PINNED if v >= 1.0 else math.log((1.0 + v) / (1.0 - v))
            )
        else:
            from mpmath import mp

            log_base_parts.append(float(mp.log((1 + v) / 2)))
            costs.append(
                _COST_PINNED if v >= 1 else float(mp.log((1 + v) / (1 - v)))
            )
    return math.fsum(log_base_parts), costs


def _enumerate_products(log_base: float, costs: list[float], max_levels: int):
    """Largest ``max_levels`` products ``exp(log_base - sum of flipped
    costs)`` by best-first subset enumeration over sorted costs."""
    costs = sorted(min(c, _COST_PINNED) for c in costs)
    values = [math.exp(log_base)]
    if not costs:
        return values
    heap = [(costs[0], 0)]
    while heap and len(values) < max_levels:
        s, i = heapq.heappop(heap)
        values.append(math.exp(log_base - s))
        if i + 1 < len(costs):
            heapq.heappush(heap, (s + costs[i + 1], i + 1))
            heapq.heappush(heap, (s - costs[i] + costs[i + 1], i + 1))
    return values


def spectrum_from_modes(
    nu,
    max_levels: int,
    source: OracleSource = OracleSource.FREE_FERMION,
    chain_size: float = math.inf,
) -> OracleSpectrum:
    """Reduced-density-matrix eigenvalues ``prod_j (1 +- nu_j)/2`` over
    sign choices, largest ``max_levels`` first.

    Enumeration is best-first from the all-plus configuration, flipping
    cheap modes first; the non-enumerated weight is reported as
    ``tail_deficit`` (the full product set has weight exactly 1).
    """
    if max_levels > _MAX_LEVELS:
        raise ResourceLimitError(f"max_levels capped at {_MAX_LEVELS}")
    nu_list = list(nu)
    if any(float(v) < 0.0 or float(v) > 1.0 + 1e-10 for v in nu_list):
        raise ValueError("mode occupations must lie in [0, 1]")
    log_base, costs = _mode_logs(nu_list)
    cap = min(max_levels, 2 ** min(len(nu_list), 60))
    values = _enumerate_products(log_base, costs, cap)
    return OracleSpectrum(
        eigenvalues=np.array(values),
        source=source,
        block_size=len(nu_list),
        chain_size=chain_size,
        tail_deficit=max(0.0, 1.0 - math.fsum(values)),
    )


def block_spectrum(
    point: ModelPoint,
    block_size: int,
    max_levels: int = 4096,
    precision: str = "double",
    dps: int = 30,
) -> OracleSpectrum:
    """Free-fermion entanglement spectrum of an infinite-chain block."""
    corr = build_correlations(point, block_size, precision=precision, dps=dps)
    nu = corr.nu_precise if corr.nu_precise is not None else corr.mode_occupations
    return spectrum_from_modes(nu, max_levels)


# ---------------------------------------------------------------------------
# finite rings


def free_fermion_ring_spectrum(
    gamma: float,
    h: float,
    n_sites: int,
    block_size: int,
    max_levels: int = 4096,
) -> OracleSpectrum:
    """Block spectrum on a finite ring from the discrete kernel, with the
    Jordan-Wigner sector chosen by ground-state energy."""
    if not 1 <= block_size <= n_sites // 2:
        raise ValueError("block must not exceed half the ring")
    gamma, h = abs(gamma), abs(h)
    candidates = ["abc"] + (["pbc"] if h < 2.0 else [])
    best = None
    for sector in candidates:
        kernel = _ring_kernel(gamma, h, n_sites, sector)
        energy = _ring_energy(gamma, h, n_sites, kernel)
        if best is None or energy < best[0]:
            best = (energy, kernel)
    gam = _assemble_majorana(best[1], block_size)
    nu = _modes_from_matrix(gam)
    return spectrum_from_modes(nu, max_levels, chain_size=n_sites)


def _spin_ops():
    sx = np.array([[0.0, 1.0], [1.0, 0.0]])
    sz = np.array([[1.0, 0.0], [0.0, -1.0]])
    # sigma^y x sigma^y is real even though sigma^y is not
    syy = np.array(
        [
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
        ]
    )
    return sx, sz, syy


def _ring_hamiltonian(gamma: float, h: float, n_sites: int) -> sparse.csr_matrix:
    sx, sz, syy = _spin_ops()
    sxx = np.kron(sx, sx)
    eye = lambda n: sparse.identity(2**n, format="csr")
    ham = sparse.csr_matrix((2**n_sites, 2**n_sites))
    bond = sparse.csr_matrix((1.0 + gamma) * sxx + (1.0 - gamma) * syy)
    for j in range(n_sites - 1):
        ham = ham - sparse.kron(
            sparse.kron(eye(j), bond), eye(n_sites - j - 2), format="csr"
        )
    # wrap-around bond, built factor by factor (sy x I x sy is real)
    wrap_xx = sparse.kron(
        sparse.kron(sparse.csr_matrix(sx), eye(n_sites - 2)), sparse.csr_matrix(sx)
    )
    sy = np.array([[0.0, -1.0j], [1.0j, 0.0]])
    wrap_yy = sparse.kron(
        sparse.kron(sparse.csr_matrix(sy), eye(n_sites - 2)), sparse.csr_matrix(sy)
    ).real
    ham = ham - (1.0 + gamma) * wrap_xx - (1.0 - gamma) * sparse.csr_matrix(wrap_yy)
    for j in range(n_sites):
        ham = ham - h * sparse.kron(
            sparse.kron(eye(j), sparse.csr_matrix(sz)), eye(n_sites - j - 1),
            format="csr",
        )
    return sparse.csr_matrix(ham)


def exact_diagonalization(
    gamma: float, h: float, n_sites: int, block_size: int
) -> OracleSpectrum:
    """Full reduced-density-matrix spectrum of a contiguous block on a
    periodic ring, by dense ground-state computation.

    Limited to ``n_sites <= 14`` and ``block_size <= n_sites / 2``.  A
    warning is emitted when the ground state is numerically degenerate
    (expected on the factorizing circle).
    """
    if n_sites > _MAX_ED_SITES:
        raise ResourceLimitError(f"exact diagonalization capped at {_MAX_ED_SITES} sites")
    if not 1 <= block_size <= n_sites // 2:
        raise ValueError("block must not exceed half the ring")
    gamma, h = abs(gamma), abs(h)
    ham = _ring_hamiltonian(gamma, h, n_sites)
    dim = ham.shape[0]
    v0 = np.full(dim, 1.0 / math.sqrt(dim))
    vals, vecs = eigsh(ham, k=2, which="SA", v0=v0)
    order = np.argsort(vals)
    if vals[order[1]] - vals[order[0]] < 1e-10:
        warnings.warn(
            f"ground state numerically degenerate at (gamma={gamma}, h={h}); "
            "the reduced spectrum depends on the chosen superposition",
            RuntimeWarning,
            stacklevel=2,
        )
    psi = vecs[:, order[0]]
    block = psi.reshape(2**block_size, 2 ** (n_sites - block_size))
    rho = block @ block.T
    ev = np.linalg.eigvalsh(rho)[::-1]
    ev = np.clip(ev, 0.0, None)
    return OracleSpectrum(
        eigenvalues=ev,
        source=OracleSource.EXACT_DIAGONALIZATION,
        block_size=block_size,
        chain_size=n_sites,
        tail_deficit=0.0,
    )


# ---------------------------------------------------------------------------
# comparison against the closed form


@dataclass(frozen=True)
class LevelComparison:
    n: int
    lambda_exact: float
    lambda_oracle: float
    degeneracy_exact: int
    degeneracy_oracle: int
    rel_error: float

    @property
    def degeneracy_match(self) -> bool:
        return self.degeneracy_exact == self.degeneracy_oracle


@dataclass(frozen=True)
class SpectrumComparison:
    levels: list[LevelComparison]
    max_rel_error: float
    degeneracies_match: bool


def group_eigenvalues(values, rel_tol: float = _GROUP_REL_TOL):
    """Group a descending eigenvalue list into (mean, count) clusters of
    relative width ``rel_tol``.  Exact zeros form their own cluster."""
    groups: list[tuple[float, int]] = []
    bucket: list[float] = []
    for v in values:
        if bucket and (v == 0.0 or abs(v / bucket[0] - 1.0) > rel_tol):
            groups.append((math.fsum(bucket) / len(bucket), len(bucket)))
            bucket = []
        if v == 0.0:
            break
        bucket.append(v)
    if bucket:
        groups.append((math.fsum(bucket) / len(bucket), len(bucket)))
    return groups


def compare_spectra(
    a: OracleSpectrum,
    b: EntanglementSpectrum,
    top_k: int,
    group_rel_tol: float = _GROUP_REL_TOL,
) -> SpectrumComparison:
    """Match the oracle spectrum against the closed-form ladder.

    Oracle eigenvalues are clustered at relative width ``group_rel_tol``
    (default 1e-6: above the finite-block splittings at the sizes used
    for verification, far below the ladder spacing) and cluster means
    are compared level by level until ``top_k`` eigenvalues are
    consumed.  The final, possibly truncated cluster is discarded.
    """
    values = [float(v) for v in a.eigenvalues[: top_k + 1]]
    groups = group_eigenvalues(values, rel_tol=group_rel_tol)
    if len(values) < len(a.eigenvalues) or a.tail_deficit > 0:
        groups = groups[:-1]  # last cluster may be cut mid-degeneracy
    levels = []
    consumed = 0
    for n, (mean, count) in enumerate(groups):
        if n >= len(b.eigenvalues) or consumed >= top_k:
            break
        lam = b.eigenvalues[n]
        levels.append(
            LevelComparison(
                n=n,
                lambda_exact=lam,
                lambda_oracle=mean,
                degeneracy_exact=int(b.degeneracies[n]),
                degeneracy_oracle=count,
                rel_error=abs(mean / lam - 1.0),
            )
        )
        consumed += count
    if not levels:
        return SpectrumComparison(levels=[], max_rel_error=math.inf,
                                  degeneracies_match=False)
    return SpectrumComparison(
        levels=levels,
        max_rel_error=max(lv.rel_error for lv in levels),
        degeneracies_match=all(lv.degeneracy_match for lv in levels),
    )
