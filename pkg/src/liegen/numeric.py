"""Exact-arithmetic core: multivariate rational polynomials, square-root
scalars, truncated formal power series, and Gaussian moments.

All values in this module are immutable after construction.  Rational
coefficients are plain ``fractions.Fraction`` throughout, so every operation
here is exact; the only floating point in the package lives in the numeric
evaluators built on top.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]

#: Variable names a Polynomial may use, in canonical display/storage order.
CANONICAL_VARS = ("x", "y", "z", "r", "w")

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact scalar, got {type(value).__name__}")


def ensure_finite(z: complex) -> complex:
    """Reject NaN/inf: a non-finite complex value is an error state here."""
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ArithmeticError(f"non-finite complex value {z!r}")
    return z


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Multivariate polynomial with exact rational coefficients.

    ``variables`` is an ordered subset of :data:`CANONICAL_VARS`; ``terms``
    maps exponent tuples (aligned with ``variables``) to nonzero Fractions.
    Instances are immutable; every operation returns a new polynomial.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple, Scalar]):
        variables = tuple(variables)
        for name in variables:
            if name not in CANONICAL_VARS:
                raise ValueError(f"unknown variable {name!r}")
        if list(variables) != sorted(variables, key=CANONICAL_VARS.index):
            raise ValueError("variables must be in canonical order")
        cleaned = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != len(variables):
                raise ValueError("exponent tuple does not match variables")
            if any(e < 0 or not isinstance(e, int) for e in exps):
                raise ValueError("exponents must be non-negative integers")
            coeff = _as_fraction(coeff)
            if coeff != 0:
                cleaned[exps] = cleaned.get(exps, _ZERO) + coeff
        cleaned = {e: c for e, c in cleaned.items() if c != 0}
        # drop variables no term uses, so equal polynomials share one form
        used = [i for i in range(len(variables))
                if any(e[i] for e in cleaned)]
        if len(used) != len(variables):
            variables = tuple(variables[i] for i in used)
            cleaned = {tuple(e[i] for i in used): c for e, c in cleaned.items()}
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls((), {})

    @classmethod
    def constant(cls, value: Scalar) -> "Polynomial":
        value = _as_fraction(value)
        return cls((), {(): value} if value else {})

    @classmethod
    def variable(cls, name: str) -> "Polynomial":
        return cls((name,), {(1,): _ONE})

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; zero polynomial reports -1."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: str) -> int:
        if var not in self.variables or not self.terms:
            return 0
        i = self.variables.index(var)
        return max(e[i] for e in self.terms)

    def coefficient(self, exps: Mapping[str, int]) -> Fraction:
        """Coefficient of the monomial with the given per-variable exponents."""
        key = tuple(exps.get(v, 0) for v in self.variables)
        for v, e in exps.items():
            if e and v not in self.variables:
                return _ZERO
        return self.terms.get(key, _ZERO)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), _ZERO)

    def _embedded(self, variables: tuple) -> dict:
        """Re-key terms onto a larger variable tuple."""
        positions = [variables.index(v) for v in self.variables]
        out = {}
        for exps, coeff in self.terms.items():
            key = [0] * len(variables)
            for pos, e in zip(positions, exps):
                key[pos] = e
            out[tuple(key)] = coeff
        return out

    @staticmethod
    def _merge_vars(a: "Polynomial", b: "Polynomial") -> tuple:
        names = set(a.variables) | set(b.variables)
        return tuple(v for v in CANONICAL_VARS if v in names)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        variables = self._merge_vars(self, other)
        terms = self._embedded(variables)
        for exps, coeff in other._embedded(variables).items():
            terms[exps] = terms.get(exps, _ZERO) + coeff
        return Polynomial(variables, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.variables,
                          {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return Polynomial.constant(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = _as_fraction(other)
            return Polynomial(self.variables,
                              {e: c * other for e, c in self.terms.items()})
        variables = self._merge_vars(self, other)
        a = self._embedded(variables)
        b = other._embedded(variables)
        terms: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                key = tuple(i + j for i, j in zip(ea, eb))
                terms[key] = terms.get(key, _ZERO) + ca * cb
        return Polynomial(variables, terms)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Polynomial":
        scalar = _as_fraction(scalar)
        return self * (Fraction(1) / scalar)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial.constant(1)
        for _ in range(n):
            out = out * self
        return out

    # -- calculus and evaluation -------------------------------------------

    def differentiate(self, var: str) -> "Polynomial":
        if var not in self.variables:
            return Polynomial.zero()
        i = self.variables.index(var)
        terms = {}
        for exps, coeff in self.terms.items():
            if exps[i] == 0:
                continue
            key = exps[:i] + (exps[i] - 1,) + exps[i + 1:]
            terms[key] = terms.get(key, _ZERO) + coeff * exps[i]
        return Polynomial(self.variables, terms)

    def eval(self, point: Mapping[str, Scalar]) -> Fraction:
        """Evaluate exactly; every variable of the polynomial must be given."""
        missing = [v for v in self.variables if v not in point]
        if missing:
            raise ValueError(f"missing coordinate(s) {missing} in evaluation point")
        values = [_as_fraction(point[v]) for v in self.variables]
        total = _ZERO
        for exps, coeff in self.terms.items():
            term = coeff
            for val, e in zip(values, exps):
                if e:
                    term *= val ** e
            total += term
        return total

    def substitute(self, mapping: Mapping[str, "Polynomial"]) -> "Polynomial":
        """Replace variables by polynomials (unlisted variables are kept)."""
        out = Polynomial.zero()
        for exps, coeff in self.terms.items():
            term = Polynomial.constant(coeff)
            for v, e in zip(self.variables, exps):
                if e:
                    base = mapping.get(v, Polynomial.variable(v))
                    term = term * base ** e
            out = out + term
        return out

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self - other).is_zero

    def __hash__(self):
        return hash((self.variables, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            coeff = self.terms[exps]
            factors = [f"{v}^{e}" if e > 1 else v
                       for v, e in zip(self.variables, exps) if e]
            body = "*".join(factors)
            if not body:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(body)
            elif coeff == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{coeff}*{body}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")


X = Polynomial.variable("x")
Y = Polynomial.variable("y")
Z = Polynomial.variable("z")


# ---------------------------------------------------------------------------
# square-root scalars
# ---------------------------------------------------------------------------

def square_free_split(n: int) -> tuple[int, int]:
    """Write ``n = s**2 * f`` with f square-free; returns ``(s, f)``."""
    if n < 0:
        raise ValueError("negative radicand")
    if n in (0, 1):
        return 1, n
    s, f, m = 1, 1, n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                f *= p
        p += 1 if p == 2 else 2
    # remainder is 1, a prime, or a product of two large primes; a perfect
    # square remainder can only be the square of a single large prime
    root = math.isqrt(m)
    if root * root == m:
        s *= root
    else:
        f *= m
    return s, f


class SqrtRational:
    """Exact scalar of the form ``coeff * sqrt(radicand)``.

    The radicand is normalized to a square-free non-negative integer, so
    two values with equal radicands multiply back into the rationals and
    may be added coefficient-wise.  Mixed-radicand sums are rejected rather
    than approximated.
    """

    __slots__ = ("coeff", "radicand")

    def __init__(self, coeff: Scalar, radicand: Scalar = 1):
        coeff = _as_fraction(coeff)
        radicand = _as_fraction(radicand)
        if radicand < 0:
            raise ValueError("negative radicand")
        # sqrt(p/q) = sqrt(p*q)/q
        if radicand.denominator != 1:
            coeff /= radicand.denominator
            radicand = Fraction(radicand.numerator * radicand.denominator)
        s, f = square_free_split(radicand.numerator)
        coeff *= s
        radicand = Fraction(f)
        if coeff == 0 or radicand == 0:
            coeff, radicand = _ZERO, _ONE
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "radicand", radicand)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("SqrtRational is immutable")

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    @property
    def is_rational(self) -> bool:
        return self.radicand == 1 or self.coeff == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self!r} is irrational")
        return self.coeff

    def __mul__(self, other) -> "SqrtRational":
        if isinstance(other, SqrtRational):
            return SqrtRational(self.coeff * other.coeff,
                                self.radicand * other.radicand)
        return SqrtRational(self.coeff * _as_fraction(other), self.radicand)

    __rmul__ = __mul__

    def __neg__(self) -> "SqrtRational":
        return SqrtRational(-self.coeff, self.radicand)

    def __add__(self, other) -> "SqrtRational":
        if not isinstance(other, SqrtRational):
            other = SqrtRational(_as_fraction(other))
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.radicand != other.radicand:
            raise ValueError(
                f"cannot add sqrt({self.radicand}) and sqrt({other.radicand}) terms exactly")
        return SqrtRational(self.coeff + other.coeff, self.radicand)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, SqrtRational):
            other = SqrtRational(_as_fraction(other))
        return self + (-other)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SqrtRational(other)
        if not isinstance(other, SqrtRational):
            return NotImplemented
        return self.coeff == other.coeff and (
            self.is_zero or self.radicand == other.radicand)

    def __hash__(self):
        return hash((self.coeff, self.radicand if self.coeff else _ONE))

    def __float__(self) -> float:
        return float(self.coeff) * math.sqrt(float(self.radicand))

    def __repr__(self):
        if self.is_rational:
            return f"{self.coeff}"
        if self.coeff == 1:
            return f"sqrt({self.radicand})"
        return f"{self.coeff}*sqrt({self.radicand})"


def sqrt_of(value: Scalar) -> SqrtRational:
    """Exact square root of a non-negative rational."""
    return SqrtRational(1, value)


# ---------------------------------------------------------------------------
# truncated power series
# ---------------------------------------------------------------------------

def _coeff_is_zero(c) -> bool:
    flag = getattr(c, "is_zero", None)
    if flag is not None:
        return bool(flag)
    return c == 0


class PowerSeries:
    """Formal power series in ``t`` truncated at an explicit order.

    Coefficients may live in any exact ring with ``+``, ``*`` and scalar
    multiplication by Fractions (Fraction, Polynomial, or the Gaussian
    envelope functions of :mod:`liegen.heisenberg`).  Operations never
    silently extend the truncation order: combining series keeps the
    smaller order.
    """

    __slots__ = ("order", "coeffs", "zero")

    def __init__(self, coeffs, order: int, zero=_ZERO):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        coeffs = list(coeffs)
        if len(coeffs) > order + 1:
            raise ValueError("more coefficients than the truncation order allows")
        coeffs += [zero] * (order + 1 - len(coeffs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "zero", zero)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("PowerSeries is immutable")

    @classmethod
    def from_terms(cls, terms: Mapping[int, object], order: int, zero=_ZERO):
        coeffs = [zero] * (order + 1)
        for k, c in terms.items():
            if k <= order:
                coeffs[k] = c
        return cls(coeffs, order, zero)

    def coefficient(self, k: int):
        return self.coeffs[k]

    @property
    def is_zero(self) -> bool:
        return all(_coeff_is_zero(c) for c in self.coeffs)

    def _common_order(self, other: "PowerSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        k = self._common_order(other)
        coeffs = [self.coeffs[i] + other.coeffs[i] for i in range(k + 1)]
        return PowerSeries(coeffs, k, self.zero)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        k = self._common_order(other)
        coeffs = [self.coeffs[i] + (-1) * other.coeffs[i] for i in range(k + 1)]
        return PowerSeries(coeffs, k, self.zero)

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([(-1) * c for c in self.coeffs], self.order, self.zero)

    def scale(self, scalar) -> "PowerSeries":
        return PowerSeries([scalar * c for c in self.coeffs], self.order, self.zero)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        k = self._common_order(other)
        coeffs = []
        for n in range(k + 1):
            acc = None
            for i in range(n + 1):
                prod = self.coeffs[i] * other.coeffs[n - i]
                acc = prod if acc is None else acc + prod
            coeffs.append(acc)
        zero = self.coeffs[0] * other.zero if k >= 0 else self.zero
        return PowerSeries(coeffs, k, zero)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and (self - other).is_zero

    def __repr__(self):
        parts = [f"({c!r})*t^{k}" for k, c in enumerate(self.coeffs)
                 if not _coeff_is_zero(c)]
        return " + ".join(parts) if parts else "0"


def series_exp(s: PowerSeries, order: int | None = None) -> PowerSeries:
    """``exp(s)`` as a truncated series; ``s`` must have zero constant term."""
    if not _coeff_is_zero(s.coeffs[0]):
        raise ValueError("series_exp requires a zero constant term")
    k = s.order if order is None else min(order, s.order)
    one = Polynomial.constant(1) if isinstance(s.zero, Polynomial) else _ONE
    result = PowerSeries.from_terms({0: one}, k, s.zero)
    power = PowerSeries.from_terms({0: one}, k, s.zero)
    factorial = 1
    for j in range(1, k + 1):
        power = power * s
        factorial *= j
        result = result + power.scale(Fraction(1, factorial))
    return result


def polynomial_at_series(p: Polynomial, s: PowerSeries) -> PowerSeries:
    """Compose a univariate polynomial with a power series (Horner)."""
    if any(v != "x" for v in p.variables):
        raise ValueError("polynomial must be univariate in x")
    deg = p.degree_in("x")
    out = PowerSeries.from_terms(
        {0: Polynomial.constant(p.coefficient({"x": deg}))}, s.order,
        Polynomial.zero())
    for k in range(deg - 1, -1, -1):
        const = PowerSeries.from_terms(
            {0: Polynomial.constant(p.coefficient({"x": k}))}, s.order,
            Polynomial.zero())
        out = out * s + const
    return out


# ---------------------------------------------------------------------------
# Gaussian moments
# ---------------------------------------------------------------------------

_moment_cache: dict[int, Fraction] = {0: _ONE}


def gaussian_moment(k: int) -> Fraction:
    """``integral of x^k * exp(-x^2) over the real line``, in units of sqrt(pi).

    The sqrt(pi) factor is kept symbolic (it must cancel in every exact
    check), so the return value is the rational coefficient only.  Odd
    moments vanish; even ones satisfy M(k) = (k-1)/2 * M(k-2).
    """
    if k < 0:
        raise ValueError("moment order must be non-negative")
    if k % 2:
        return _ZERO
    if k not in _moment_cache:
        _moment_cache[k] = Fraction(k - 1, 2) * gaussian_moment(k - 2)
    return _moment_cache[k]
