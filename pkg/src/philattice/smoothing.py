"""Gaussian lattice sums, the smoothing parameter and its upper bounds.

``rho_{s,c}(L) = sum_{x in L} exp(-pi |x - c|^2 / s^2)`` is summed by
enumerating lattice points inside a ball whose discarded tail is bounded
by Banaszczyk's estimate

    rho_s((L - c) outside r*s*sqrt(n)) <= 2 (r sqrt(2 pi e) exp(-pi r^2))^n rho_s(L),

valid for r > 1/sqrt(2 pi).  The radius starts at ``s * max(sqrt(n), 6)``
and grows until the bound drops below the requested relative tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels, linalg, serialize
from .cyclic import CyclicLattice, PrimeSpotCertificate, is_cyclic, is_prime_spot
from .errors import (
    BracketFailure,
    DimensionMismatch,
    EnumerationBudgetExceeded,
    NotCyclic,
    NotMember,
    RankDeficient,
    UnsupportedModulus,
)
from .lattice import (
    ENUMERATION_BUDGET,
    LatticeBasis,
    contains,
    dual_basis,
    gs_min_norm,
    min_distance,
)
from .polyring import RingElement, as_rational, rational_str

DEFAULT_REL_TOL = 1e-12
DEFAULT_ETA_TOL = 1e-9
BRACKET_LOW = 1e-4
_RADIUS_GROWTH = 1.25


@dataclass(frozen=True)
class GaussParams:
    s: float
    c: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if not self.s > 0:
            raise ValueError(f"Gaussian width must be positive, got {self.s}")
        if self.c is not None:
            object.__setattr__(self, "c", tuple(as_rational(v) for v in self.c))


def tail_envelope(n: int, radius: float, s: float) -> float:
    """Bound on the mass outside ``radius``, as a fraction of rho_s(L)."""
    r = radius / (s * math.sqrt(n))
    if r <= 1 / math.sqrt(2 * math.pi):
        return math.inf
    log_c = math.log(r) + 0.5 * math.log(2 * math.pi * math.e) - math.pi * r * r
    return 2 * math.exp(min(n * log_c, 0.0))


def truncation_radius(n: int, s: float, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Smallest radius in the growth sequence with tail/(1 - tail) <= rel_tol."""
    radius = s * max(math.sqrt(n), 6.0)
    while True:
        t = tail_envelope(n, radius, s)
        if t < 1 and t / (1 - t) <= rel_tol:
            return radius
        radius *= _RADIUS_GROWTH


def _require_full_rank(L: LatticeBasis):
    if not L.full_rank:
        raise RankDeficient(f"need a full-rank lattice, got rank {L.m} in dimension {L.n}")


def _coefficients_of(L: LatticeBasis, c) -> np.ndarray:
    if c is None:
        return np.zeros(L.m)
    c = [as_rational(v) for v in c]
    if len(c) != L.n:
        raise DimensionMismatch(f"center has length {len(c)}, lattice dimension is {L.n}")
    return np.array([float(v) for v in linalg.solve(L.matrix(), c)])


def _kernel_sum(L, y, radius, s, skip_zero=False, stop_above=math.inf, budget=ENUMERATION_BUDGET):
    total, visited, status = kernels.gauss_sum_kernel(
        L.cholesky, y, radius * radius, math.pi / (s * s), skip_zero, stop_above, budget)
    if status == kernels.BUDGET:
        raise EnumerationBudgetExceeded(
            f"Gaussian sum at s={s:g} needs more than {budget} enumeration nodes")
    return total, status


def gauss_sum(L: LatticeBasis, s: float, c: Sequence | None = None,
              rel_tol: float = DEFAULT_REL_TOL, budget: int = ENUMERATION_BUDGET) -> float:
    """rho_{s,c}(L) to relative accuracy ``rel_tol``."""
    _require_full_rank(L)
    if not s > 0:
        raise ValueError("s must be positive")
    y = _coefficients_of(L, c)
    radius = truncation_radius(L.n, s, rel_tol)
    if not y.any():
        return _kernel_sum(L, y, radius, s, budget=budget)[0]
    origin = np.zeros(L.m)
    while True:
        total = _kernel_sum(L, y, radius, s, budget=budget)[0]
        centered = _kernel_sum(L, origin, radius, s, budget=budget)[0]
        t = tail_envelope(L.n, radius, s)
        # rho_{s,c}(L) <= rho_s(L) <= centered / (1 - t)
        if t < 1 and t * centered / (1 - t) <= rel_tol * total:
            return total
        if total == 0.0:
            return 0.0
        radius *= _RADIUS_GROWTH


def nonzero_mass(L: LatticeBasis, s: float, rel_tol: float = DEFAULT_REL_TOL,
                 stop_above: float = math.inf, budget: int = ENUMERATION_BUDGET) -> tuple[float, bool]:
    """rho_s(L) - 1 summed directly over the nonzero points.

    Returns ``(value, exceeded)``; with a finite ``stop_above`` the walk
    stops as soon as the partial sum passes it and ``exceeded`` is True.
    """
    radius = truncation_radius(L.n, s, rel_tol)
    total, status = _kernel_sum(L, np.zeros(L.m), radius, s, skip_zero=True,
                                stop_above=stop_above, budget=budget)
    return total, status == kernels.STOPPED


def bound_lambda(L: LatticeBasis) -> float:
    """sqrt(n) / lambda_1(L*)."""
    _require_full_rank(L)
    lam, _ = min_distance(dual_basis(L))
    return math.sqrt(L.n) / lam


def bound_gs(L: LatticeBasis) -> float:
    """sqrt(n) / min_i |b_i*| over the Gram-Schmidt vectors of the dual basis."""
    _require_full_rank(L)
    return math.sqrt(L.n) / gs_min_norm(dual_basis(L))


def bound_tg(L: CyclicLattice | LatticeBasis, g: RingElement) -> tuple[float, PrimeSpotCertificate]:
    """sqrt(n) / min_i |T_g(theta_i)| for a prime spot g lying in the x^n - 1 cyclic lattice L."""
    ctx = g.ctx
    if isinstance(L, CyclicLattice):
        if L.ctx != ctx:
            raise DimensionMismatch(f"lattice built over {L.ctx.phi}, g over {ctx.phi}")
        basis = L.basis
    else:
        basis = L
    if not ctx.is_x_n_minus_one:
        raise UnsupportedModulus(f"the T_g bound needs phi = x^n - 1, got {ctx.phi}")
    _require_full_rank(basis)
    if basis.n != ctx.n:
        raise DimensionMismatch(f"lattice dimension {basis.n} vs n = {ctx.n}")
    if not isinstance(L, CyclicLattice) and not is_cyclic(basis, ctx):
        raise NotCyclic("L is not closed under the rotation matrix H")
    cert = is_prime_spot(g)
    if not contains(basis, g.vector):
        raise NotMember(f"g = {[rational_str(v) for v in g.vector]} is not a lattice vector")
    return math.sqrt(ctx.n) / cert.tg_min, cert


def eta_numeric(L: LatticeBasis, epsilon: float | None = None, tol: float = DEFAULT_ETA_TOL,
                rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Smallest s with rho_{1/s}(L*) <= 1 + epsilon, by bisection (default epsilon = 2^-n)."""
    _require_full_rank(L)
    eps = 2.0 ** -L.n if epsilon is None else float(epsilon)
    if not eps > 0:
        raise ValueError("epsilon must be positive")
    dual = dual_basis(L)

    def above(s):
        # True when rho_{1/s}(L*) - 1 > eps
        return nonzero_mass(dual, 1.0 / s, rel_tol, stop_above=eps)[1]

    lo, hi = BRACKET_LOW, bound_lambda(L) + 1.0
    for _ in range(64):
        if not above(hi):
            break
        lo, hi = hi, 2 * hi
    else:
        raise BracketFailure(f"no upper bracket for epsilon={eps}")
    if not above(lo):
        raise BracketFailure(f"epsilon={eps} is reached below s={lo}; no lower bracket")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if above(mid):
            lo = mid
        else:
            hi = mid
    return hi


@dataclass(frozen=True)
class SmoothingReport:
    epsilon: float
    eta_numeric: float
    bound_lambda: float
    bound_gs: float
    truncation_radius: float
    bound_tg: float | None = None
    certificate: PrimeSpotCertificate | None = field(default=None, compare=False)

    @property
    def tg_beats_gs(self) -> bool | None:
        """Per-instance record of whether the T_g bound is the sharper one."""
        return None if self.bound_tg is None else self.bound_tg <= self.bound_gs

    def violations(self, slack: float = 1e-6) -> list[str]:
        out = []
        for name in ("bound_lambda", "bound_tg", "bound_gs"):
            b = getattr(self, name)
            if b is not None and self.eta_numeric > b + slack:
                out.append(f"eta {self.eta_numeric} exceeds {name} {b}")
        if self.bound_tg is not None and self.bound_lambda > self.bound_tg + slack:
            out.append(f"bound_lambda {self.bound_lambda} exceeds bound_tg {self.bound_tg}")
        return out

    def to_json(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "eta_numeric": self.eta_numeric,
            "bound_lambda": self.bound_lambda,
            "bound_tg": self.bound_tg,
            "bound_gs": self.bound_gs,
            "tg_beats_gs": self.tg_beats_gs,
            "truncation_radius": self.truncation_radius,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
        }

    def dumps(self) -> str:
        return serialize.dumps(self.to_json())


def smoothing_report(L: CyclicLattice | LatticeBasis, g: RingElement | None = None,
                     epsilon: float | None = None) -> SmoothingReport:
    basis = L.basis if isinstance(L, CyclicLattice) else L
    eps = 2.0 ** -basis.n if epsilon is None else float(epsilon)
    eta = eta_numeric(basis, eps)
    tg, cert = bound_tg(L, g) if g is not None else (None, None)
    return SmoothingReport(
        epsilon=eps,
        eta_numeric=eta,
        bound_lambda=bound_lambda(basis),
        bound_gs=bound_gs(basis),
        truncation_radius=truncation_radius(basis.n, 1.0 / eta),
        bound_tg=tg,
        certificate=cert,
    )


def _support(L: LatticeBasis, params: GaussParams, rel_tol: float, budget: int):
    y = _coefficients_of(L, params.c)
    radius = truncation_radius(L.n, params.s, rel_tol)
    pts, d2, _, status = kernels.points_kernel(L.cholesky, y, radius * radius, budget, budget)
    if status == kernels.BUDGET:
        raise EnumerationBudgetExceeded(f"sampler table needs more than {budget} points")
    return pts, np.exp(-math.pi * np.asarray(d2) / params.s**2)


def discrete_gauss_sample(L: LatticeBasis, params: GaussParams, seed: int, count: int,
                          rel_tol: float = DEFAULT_REL_TOL, budget: int = ENUMERATION_BUDGET) -> list:
    """``count`` exact draws from D_{L,s,c} by inverse CDF over the enumerated support."""
    _require_full_rank(L)
    pts, w = _support(L, params, rel_tol, budget)
    cdf = np.cumsum(w)
    cdf /= cdf[-1]
    rng = np.random.default_rng(seed)
    idx = np.searchsorted(cdf, rng.random(count), side="right")
    idx = np.minimum(idx, len(pts) - 1)
    cache: dict[int, tuple[Fraction, ...]] = {}
    out = []
    for i in idx.tolist():
        v = cache.get(i)
        if v is None:
            v = cache[i] = tuple(L.vector(pts[i]))
        out.append(v)
    return out


def _folded_tv(L: LatticeBasis, s: float, per_dim: int, offset: np.ndarray, rel_tol: float) -> float:
    n = L.n
    B = L.to_float()
    d = float(math.sqrt(L.det_gram))
    radius = truncation_radius(n, s, rel_tol) + 0.5 * float(np.abs(B).sum())
    pts, _, _, status = kernels.points_kernel(
        L.cholesky, np.full(n, 0.5), radius * radius, ENUMERATION_BUDGET, ENUMERATION_BUDGET)
    if status == kernels.BUDGET:
        raise EnumerationBudgetExceeded("too many translates for the folded density")
    X = np.array(pts, dtype=float) @ B.T
    axes = [(np.arange(per_dim) + offset[i]) / per_dim for i in range(n)]
    A = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    Z = A @ B.T
    acc = 0.0
    for start in range(0, len(Z), 2048):
        z = Z[start:start + 2048]
        diff = z[:, None, :] - X[None, :, :]
        dens = np.exp(-math.pi * np.einsum("gkn,gkn->gk", diff, diff) / (s * s)).sum(axis=1) / s**n
        acc += np.abs(dens - 1.0 / d).sum()
    # integral over P(L) = d(L) * mean over the unit cube
    return 0.5 * d * acc / len(Z)


def statistical_distance_check(L: LatticeBasis, s: float, trials: int = 10**4, seed: int = 0,
                               rel_tol: float = DEFAULT_REL_TOL) -> tuple[float, bool]:
    """Total variation between D_s mod L and uniform on P(L), against epsilon/2.

    ``trials`` is the number of quadrature nodes; ``seed`` fixes the random
    shift of the midpoint grid.  The grid is refined until two successive
    estimates agree to 1e-4.
    """
    _require_full_rank(L)
    if L.n > 2:
        raise DimensionMismatch("folded-density quadrature is limited to n <= 2")
    rng = np.random.default_rng(seed)
    offset = rng.random(L.n)
    per_dim = max(2, round(trials ** (1.0 / L.n)))
    delta = _folded_tv(L, s, per_dim, offset, rel_tol)
    for _ in range(6):
        finer = _folded_tv(L, s, 2 * per_dim, offset, rel_tol)
        converged = abs(finer - delta) < 1e-4
        delta, per_dim = finer, 2 * per_dim
        if converged:
            break
    eps = nonzero_mass(dual_basis(L), 1.0 / s, rel_tol)[0]
    return float(delta), bool(delta <= eps / 2 + 1e-3)
