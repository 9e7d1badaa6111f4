"""Closed-form hyperbolic trigonometry for pants, quasi-geodesics and capping.

Everything here is binary64 floating point; these are formula calculators.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field

from .errors import BadParameter, DomainError
from .generators import PlainGraph, gen_unitrivalent_girth


def _positive(name, x):
    if not (isinstance(x, (int, float)) and math.isfinite(x) and x > 0):
        raise DomainError(f"{name} must be a positive real, got {x!r}")
    return float(x)


def _acosh(x: float) -> float:
    if x < 1:
        raise DomainError(f"acosh argument {x!r} < 1")
    return math.acosh(x)


@dataclass(frozen=True)
class PantsSpec:
    """Waist ``l``, multiplier ``k`` and the derived ``l_prime`` and height ``m``."""

    l: float
    k: float
    l_prime: float
    m: float


def pants_spec(l: float, k: float) -> PantsSpec:
    """Height of the pants with boundary lengths ``(l, kl, kl)`` above the waist."""
    l = _positive("l", l)
    k = _positive("k", k)
    h, kh = l / 2, k * l / 2
    cosh_lp = (math.cosh(h) * math.cosh(kh) + math.cosh(kh)) / (math.sinh(h) * math.sinh(kh))
    lp = _acosh(cosh_lp)
    m = 2 * _acosh(math.sinh(kh) * math.sinh(lp))
    return PantsSpec(l, k, lp, m)


def pants_height(l: float, k: float) -> float:
    return pants_spec(l, k).m


def pants_height_cosh(l: float) -> float:
    """Equal-boundary variant: ``cosh l'`` built from ``cosh^2`` and ``cosh(m/2) = sinh(l/2) cosh l'``."""
    l = _positive("l", l)
    c, s = math.cosh(l / 2), math.sinh(l / 2)
    lp = _acosh((c * c + c) / s)
    return 2 * _acosh(s * math.cosh(lp))


def pants_boundary_distance(l: float) -> float:
    """Distance between two boundaries of the pants with all three boundaries of length ``l``."""
    l = _positive("l", l)
    return math.asinh(1 / (2 * math.sinh(l / 4)))


@dataclass(frozen=True)
class QuasiParams:
    alpha: float
    k_alpha: float
    W: float | None = None
    # additive constant for local-to-global quasi-geodesics; no closed form known
    epsilon_quasi: float | None = field(default=None)


def quasi_constant(alpha: float) -> float:
    """Multiplicative quasi-geodesic constant for two segments meeting at angle ``alpha``."""
    if not (isinstance(alpha, (int, float)) and 0 < alpha < math.pi):
        raise DomainError(f"angle must lie in (0, pi), got {alpha!r}")
    if alpha <= math.pi / 2:
        return 1 / math.sin(alpha) + math.cos(alpha) / math.sin(alpha) + 1
    return 1 / math.sin(alpha) + 1


def quasi_params(alpha: float, W: float | None = None) -> QuasiParams:
    if W is not None:
        W = _positive("W", W)
    return QuasiParams(float(alpha), quasi_constant(alpha), W)


def corridor_bounds(W: float, gamma_length: float) -> tuple[float, float]:
    """Bounds on the ratio of a crossing segment's length to the corridor length."""
    W = _positive("W", W)
    gamma_length = _positive("gamma_length", gamma_length)
    return 1.0, 1 + 2 * W / gamma_length


def gap_branches(l: float) -> tuple[float, float]:
    """The two lower-bound terms whose minimum is the capping gap."""
    l = _positive("l", l)
    first = 2 * math.asinh(1 / (2 * math.sinh(l / 2)))
    second = _acosh(1 + (1 + math.cosh(l / 2)) / math.sinh(l) ** 2)
    return first, second


def capping_gap(l: float) -> float:
    return min(gap_branches(l))


def capping_girth(l: float) -> int:
    """Smallest integer ``t`` with ``t * a(l) > l``."""
    return math.floor(l / capping_gap(l)) + 1


@dataclass(frozen=True)
class CapPiece:
    l: float
    gap: float
    branches: tuple[float, float]
    t: int
    girth: int
    vertex_count: int
    terminal_pants: tuple[float, float, float]
    inner_pants: tuple[float, float, float]
    inner_count: int

    def build_graph(self) -> PlainGraph:
        """The uni-trivalent graph; it has ``2 girth^2`` vertices, so large ``l`` is costly."""
        return gen_unitrivalent_girth(self.girth)


@dataclass(frozen=True)
class CappingPlan:
    pieces: tuple[CapPiece, ...]


def cap_plan(boundary_lengths) -> CappingPlan:
    """One uni-trivalent girth graph and its pants inventory per boundary length.

    Every trivalent vertex of the graph becomes a ``P(2l, 2l, 2l)`` except the
    neighbour of the leaf, which becomes a ``P(l, 2l, 2l)`` whose ``l`` side is
    the free boundary.
    """
    pieces = []
    lengths = list(boundary_lengths)
    if not lengths:
        raise BadParameter("cap plan needs at least one boundary length")
    for l in lengths:
        try:
            l = _positive("boundary length", l)
        except DomainError as exc:
            raise BadParameter(str(exc)) from None
        t = capping_girth(l)
        g = max(t, 4)
        vertices = 2 * (g * g - 3 * g + 1)
        pieces.append(
            CapPiece(
                l=l,
                gap=capping_gap(l),
                branches=gap_branches(l),
                t=t,
                girth=g,
                vertex_count=vertices,
                terminal_pants=(l, 2 * l, 2 * l),
                inner_pants=(2 * l, 2 * l, 2 * l),
                # every vertex but the leaf is trivalent; one of them is terminal
                inner_count=vertices - 2,
            )
        )
    return CappingPlan(tuple(pieces))


def _as_complex(p) -> complex:
    return p if isinstance(p, complex) else complex(*p)


def hyp_distance(p1, p2) -> float:
    """Distance in the upper half-plane; points are ``(x, y)`` pairs or complex numbers."""
    z1, z2 = _as_complex(p1), _as_complex(p2)
    if z1.imag <= 0 or z2.imag <= 0:
        raise DomainError("points must lie in the upper half-plane")
    # 2 asinh form of acosh(1 + |z1 - z2|^2 / (2 y1 y2)), stable for nearby points
    return 2 * math.asinh(abs(z1 - z2) / (2 * math.sqrt(z1.imag * z2.imag)))


def _geodesic_point(t: float, theta: float) -> complex:
    """Point at distance ``t`` from ``i`` leaving in direction ``theta``."""
    w = math.tanh(t / 2) * cmath.exp(1j * theta)
    return 1j * (1 + w) / (1 - w)


@dataclass(frozen=True)
class TwoSegmentReport:
    alpha: float
    k_alpha: float
    samples: int
    min_euclidean_ratio: float
    min_hyperbolic_ratio: float
    worst: tuple[float, float]

    @property
    def ok(self) -> bool:
        return min(self.min_euclidean_ratio, self.min_hyperbolic_ratio) >= 1 - 1e-9


def twoseg_quasi_check(l1: float, l2: float, alpha: float, samples: int, seed: int = 0) -> TwoSegmentReport:
    """Sample ``k(alpha) * d / (t1 + t2)`` for two segments meeting at angle ``alpha``.

    Side lengths ``t1 <= l1`` and ``t2 <= l2`` are drawn uniformly (the corner
    ``(l1, l2)`` is always included).  The Euclidean distance comes from the law
    of cosines; the hyperbolic one from two geodesics leaving ``i`` in the upper
    half-plane.  ``alpha = pi`` is the straight-line limit and uses ``k = 1``.
    """
    l1, l2 = _positive("l1", l1), _positive("l2", l2)
    if not 0 < alpha <= math.pi:
        raise DomainError(f"angle must lie in (0, pi], got {alpha!r}")
    if samples < 1:
        raise BadParameter("samples must be at least 1")
    k = 1.0 if alpha == math.pi else quasi_constant(alpha)
    rng = random.Random(seed)
    pairs = [(l1, l2)] + [(rng.uniform(0, l1) or l1, rng.uniform(0, l2) or l2) for _ in range(samples - 1)]
    best_e = best_h = math.inf
    worst = pairs[0]
    for t1, t2 in pairs:
        d_e = math.sqrt(max(t1 * t1 + t2 * t2 - 2 * t1 * t2 * math.cos(alpha), 0.0))
        d_h = hyp_distance(_geodesic_point(t1, 0.0), _geodesic_point(t2, alpha))
        r_e = k * d_e / (t1 + t2)
        r_h = k * d_h / (t1 + t2)
        if min(r_e, r_h) < min(best_e, best_h):
            worst = (t1, t2)
        best_e, best_h = min(best_e, r_e), min(best_h, r_h)
    return TwoSegmentReport(float(alpha), k, len(pairs), best_e, best_h, worst)
