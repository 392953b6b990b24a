"""Rotation-algebra vector fields, their scaled-basis contraction onto the
planar Euclidean algebra, and the Legendre-to-Bessel limit.

Commutator algebra is exact (polynomial coefficients); the limits
(contraction rates, tangent-plane ladder convergence, Legendre equation
collapsing onto the Bessel equation) are numeric with measured rates.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import EnvelopeError
from .euclidean import BesselEval
from .numeric import Polynomial, Scalar, X, Y, Z, _as_fraction

_VARS = ("x", "y", "z")


# ---------------------------------------------------------------------------
# first-order differential operators with polynomial coefficients
# ---------------------------------------------------------------------------

class VectorFieldOp:
    """c_x d/dx + c_y d/dy + c_z d/dz with polynomial coefficients.

    Closed under the commutator: for first-order operators the second-order
    parts cancel, leaving coefficients A(b_i) - B(a_i).
    """

    __slots__ = ("coeffs",)

    def __init__(self, c_x=None, c_y=None, c_z=None):
        coeffs = {}
        for var, c in zip(_VARS, (c_x, c_y, c_z)):
            if c is None:
                c = Polynomial.zero()
            elif not isinstance(c, Polynomial):
                c = Polynomial.constant(c)
            coeffs[var] = c
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("VectorFieldOp is immutable")

    def apply(self, f: Polynomial) -> Polynomial:
        out = Polynomial.zero()
        for var in _VARS:
            c = self.coeffs[var]
            if not c.is_zero:
                out = out + c * f.differentiate(var)
        return out

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs.values())

    def __add__(self, other: "VectorFieldOp") -> "VectorFieldOp":
        return VectorFieldOp(*(self.coeffs[v] + other.coeffs[v] for v in _VARS))

    def __sub__(self, other: "VectorFieldOp") -> "VectorFieldOp":
        return VectorFieldOp(*(self.coeffs[v] - other.coeffs[v] for v in _VARS))

    def __mul__(self, scalar) -> "VectorFieldOp":
        scalar = _as_fraction(scalar)
        return VectorFieldOp(*(self.coeffs[v] * scalar for v in _VARS))

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "VectorFieldOp":
        return self * (Fraction(1) / _as_fraction(scalar))

    def __neg__(self) -> "VectorFieldOp":
        return self * -1

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorFieldOp):
            return NotImplemented
        return all(self.coeffs[v] == other.coeffs[v] for v in _VARS)

    def __hash__(self):
        return hash(tuple(self.coeffs[v] for v in _VARS))

    def __repr__(self):
        parts = [f"({self.coeffs[v]!r}) d/d{v}"
                 for v in _VARS if not self.coeffs[v].is_zero]
        return " + ".join(parts) if parts else "0"


def vf_commutator(a: VectorFieldOp, b: VectorFieldOp) -> VectorFieldOp:
    """[a, b] computed on the coefficient polynomials; exact."""
    return VectorFieldOp(
        *(a.apply(b.coeffs[v]) - b.apply(a.coeffs[v]) for v in _VARS))


# rotation generators about the three axes, and the plane translations
def angular_momentum_x() -> VectorFieldOp:
    return VectorFieldOp(c_y=-Z, c_z=Y)


def angular_momentum_y() -> VectorFieldOp:
    return VectorFieldOp(c_x=Z, c_z=-X)


def angular_momentum_z() -> VectorFieldOp:
    return VectorFieldOp(c_x=-Y, c_y=X)


def translation_x() -> VectorFieldOp:
    return VectorFieldOp(c_x=1)


def translation_y() -> VectorFieldOp:
    return VectorFieldOp(c_y=1)


@dataclass(frozen=True)
class ScaledBasis:
    """Rotation generators rescaled by 1/R in the two tilting directions;
    invertible for every finite positive R."""

    R: Fraction

    def __init__(self, R: Scalar):
        R = _as_fraction(R)
        if R <= 0:
            raise ValueError("scale parameter must be positive")
        object.__setattr__(self, "R", R)

    def lx(self) -> VectorFieldOp:
        return angular_momentum_x() / self.R

    def ly(self) -> VectorFieldOp:
        return angular_momentum_y() / self.R

    def lz(self) -> VectorFieldOp:
        return angular_momentum_z()


def scaled_commutator_check(R: Scalar) -> dict:
    """Exact residuals of the scaled-basis bracket relations
    [Lx', Ly'] = -Lz'/R^2, [Ly', Lz'] = -Lx', [Lz', Lx'] = -Ly'."""
    basis = ScaledBasis(R)
    lx, ly, lz = basis.lx(), basis.ly(), basis.lz()
    inv_r2 = Fraction(1) / (basis.R * basis.R)
    residuals = {
        "xy": vf_commutator(lx, ly) + lz * inv_r2,
        "yz": vf_commutator(ly, lz) + lx,
        "zx": vf_commutator(lz, lx) + ly,
    }
    return {name: op for name, op in residuals.items()}


def contracted_relations_check() -> dict:
    """The limiting operators (-d/dy, d/dx, Lz) obey the planar-Euclidean
    bracket table exactly: residual operators of
    [-Py, Px] = 0, [Px, Lz] = Py, [Lz, -Py] = -Px."""
    neg_py = -translation_y()
    px = translation_x()
    lz = angular_momentum_z()
    return {
        "translation_translation": vf_commutator(neg_py, px),
        "px_lz": vf_commutator(px, lz) - translation_y(),
        "lz_negpy": vf_commutator(lz, neg_py) + px,
    }


# ---------------------------------------------------------------------------
# contraction rates on polynomial test functions
# ---------------------------------------------------------------------------

#: default sample points in the tangent patch, |x0|, |y0| <= 1
DEFAULT_SAMPLE_POINTS = (
    (Fraction(1), Fraction(1, 2)),
    (Fraction(-1, 3), Fraction(1)),
    (Fraction(3, 4), Fraction(-2, 3)),
    (Fraction(-1), Fraction(-1, 5)),
)


def contraction_residual(f: Polynomial, R_list: Sequence[Scalar],
                         sample_points: Iterable[tuple] = DEFAULT_SAMPLE_POINTS,
                         ) -> dict[Fraction, Fraction]:
    """Max |((Lx/R + Py) f)| and |((Ly/R - Px) f)| over sample points
    (x0, y0, R), per R; exact rational arithmetic throughout.

    The operators contract onto -Py and Px, so on test functions whose
    z-degree stays at most 1 the residual decays as O(1/R); for z-free f it
    vanishes identically at z = R.
    """
    if f.degree() > 6:
        raise ValueError("test polynomial degree above 6")
    points = list(sample_points)
    out: dict[Fraction, Fraction] = {}
    for R in R_list:
        R = _as_fraction(R)
        basis = ScaledBasis(R)
        first = (basis.lx() + translation_y()).apply(f)
        second = (basis.ly() - translation_x()).apply(f)
        worst = Fraction(0)
        for x0, y0 in points:
            point = {"x": x0, "y": y0, "z": R}
            for op_image in (first, second):
                worst = max(worst, abs(op_image.eval(point)))
        out[R] = worst
    return out


# ---------------------------------------------------------------------------
# tangent-plane ladder limit
# ---------------------------------------------------------------------------

def polar_ladder_limit(n: int, r: float, phi: float,
                       R_list: Sequence[float],
                       evaluator: BesselEval | None = None,
                       step: float = 1e-4) -> dict[float, float]:
    """Residual between the rescaled spherical ladder operators
    e^{+-i phi}(d/dtheta +- i cot(theta) d/dphi)/R, evaluated by central
    finite differences on the pullback J_n(R tan(theta)) e^{i n phi} at
    theta = arctan(r/R), and the plane ladder action -+ J_{n+-1} e^{i(n+-1)phi}.

    The theta step is step/R: the pullback varies on the theta scale 1/R,
    so a fixed step would let the O(h^2) truncation grow as R^2 and bury
    the O(r^2/R^2) geometric signal being measured.
    """
    if not 0.5 <= r <= 5:
        raise EnvelopeError("r outside [0.5, 5]")
    ev = evaluator or BesselEval()
    out: dict[float, float] = {}
    for R in R_list:
        R = float(R)
        theta0 = math.atan2(r, R)
        h_theta = step / R
        h_phi = step

        def pullback(theta: float, p: float) -> complex:
            return ev.j(n, R * math.tan(theta)) * cmath.exp(1j * n * p)

        d_theta = (pullback(theta0 + h_theta, phi)
                   - pullback(theta0 - h_theta, phi)) / (2 * h_theta)
        d_phi = (pullback(theta0, phi + h_phi)
                 - pullback(theta0, phi - h_phi)) / (2 * h_phi)
        cot = 1.0 / math.tan(theta0)
        worst = 0.0
        for sign in (+1, -1):
            spherical = (cmath.exp(sign * 1j * phi)
                         * (d_theta + sign * 1j * cot * d_phi) / R)
            # limit of L_{+-}/R is (+-)P_{+-}, whose ladder action is
            # -(+-) J_{n+-1} e^{i(n+-1)phi}
            planar = -sign * ev.j(n + sign, r) * cmath.exp(1j * (n + sign) * phi)
            worst = max(worst, abs(spherical - planar))
        out[R] = worst
    return out


# ---------------------------------------------------------------------------
# associated Legendre functions and the Bessel limit
# ---------------------------------------------------------------------------

MAX_LEGENDRE_DEGREE = 4096


def assoc_legendre(l: int, m: int, x: float) -> float:
    """P_l^m(x) without the Condon-Shortley phase, by upward degree
    recurrence from the seeds P_m^m = (2m-1)!! (1-x^2)^{m/2} and
    P_{m+1}^m = (2m+1) x P_m^m."""
    if not 0 <= m <= l:
        raise ValueError("need 0 <= m <= l")
    if l > MAX_LEGENDRE_DEGREE:
        raise EnvelopeError(f"degree above {MAX_LEGENDRE_DEGREE}")
    if abs(x) > 1:
        raise ValueError("argument outside [-1, 1]")
    # (1-x^2)^{m/2} via (1-x)(1+x) keeps precision near the endpoints
    s = math.sqrt((1.0 - x) * (1.0 + x))
    pmm = 1.0
    for k in range(1, m + 1):
        pmm *= (2 * k - 1) * s
    if l == m:
        return pmm
    p_prev, p = pmm, (2 * m + 1) * x * pmm
    for ll in range(m + 1, l):
        p_prev, p = p, ((2 * ll + 1) * x * p - (ll + m) * p_prev) / (ll - m + 1)
    return p


def mehler_heine_check(m: int, r: float, l_list: Sequence[int],
                       evaluator: BesselEval | None = None,
                       ) -> dict[int, float]:
    """|l^{-m} P_l^m(cos(r/l)) - J_m(r)| per degree l.

    The l^{-m} scaling matches the leading behavior of the P_m^m seed;
    nothing in the limit theory fixes a normalization of solutions, only
    the equation, so the scaling is this module's calibrated choice.
    """
    if not 0.5 <= r <= 8:
        raise EnvelopeError("r outside [0.5, 8]")
    if m > 5:
        raise EnvelopeError("order above 5")
    ev = evaluator or BesselEval()
    target = ev.j(m, r).real
    out: dict[int, float] = {}
    for l in l_list:
        value = assoc_legendre(l, m, math.cos(r / l)) / float(l) ** m
        out[l] = abs(value - target)
    return out


def legendre_ode_residual(l: int, m: int, r: float,
                          evaluator: BesselEval | None = None) -> float:
    """Apply the polar-angle form of the Legendre operator,
    (1/sin)d/dtheta sin d/dtheta + l(l+1) - m^2/sin^2, to theta -> J_m(l*theta)
    at theta = r/l, using termwise series derivatives, and divide by l^2.

    As l grows the operator collapses onto the Bessel operator and the
    normalized residual decays like 1/l.
    """
    if l < 8:
        raise EnvelopeError("degree below 8")
    if not 0.5 <= r <= 8:
        raise EnvelopeError("r outside [0.5, 8]")
    theta = r / l
    if theta >= math.pi / 4:
        raise EnvelopeError("theta = r/l not small")
    ev = evaluator or BesselEval()
    z = l * theta
    j, jp, jpp = ev.derivatives(m, z)
    j, jp, jpp = j.real, jp.real, jpp.real
    # (1/sin t) d/dt (sin t d/dt) g = g'' + cot(t) g' with g = J_m(l t)
    value = (l * l * jpp + l * jp / math.tan(theta)
             + (l * (l + 1) - m * m / math.sin(theta) ** 2) * j)
    return abs(value) / (l * l)


def bessel_operator_residual(m: int, r: float,
                             evaluator: BesselEval | None = None) -> float:
    """|[r d/dr r d/dr + r^2 - m^2] J_m(r)|, the exact limiting equation."""
    ev = evaluator or BesselEval()
    j, jp, jpp = ev.derivatives(m, r)
    return abs(r * r * jpp.real + r * jp.real + (r * r - m * m) * j.real)
