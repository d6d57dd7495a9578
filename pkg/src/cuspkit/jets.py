"""Truncated Taylor-series (jet) arithmetic.

A :class:`Jet` stores the Taylor coefficients of a scalar quantity about a
base parameter value t0::

    coeffs[k] == (d^k f / dt^k)(t0) / k!

All operations are exact to the retained order, which makes jets the single
carrier of derivative data for every curvature formula in this package.  A
:class:`PlaneJet` pairs two jets into the germ of a plane curve.

The module also provides the two singular-analysis primitives the geometry
layers rely on:

* ``signed_power`` -- fractional powers with a sign convention that keeps
  odd roots odd and even roots nonnegative (so ``x**(1/2) == sqrt(|x|)``),
* ``deflate`` -- exact division of a jet by t^k (factoring out a known zero),
* ``moment_quotient`` -- the smooth value of
  ``(integral_0^t |u|^a phi(u) du) / (sgn(t) |t|^(1+a))``, computed through
  the regular representation ``integral_0^1 u^a phi(t u) du`` so that t = 0
  is an ordinary point.

Everything here is an immutable value; all functions are pure.
"""

from __future__ import annotations

import math
from math import gcd
from typing import Callable, Sequence, Union

import numpy as np

DEFAULT_ORDER = 8

Scalar = Union[int, float]


def _reduce_exponent(m: int, n: int) -> tuple[int, int]:
    """Normalize a rational exponent m/n to lowest terms with n >= 1."""
    if n == 0:
        raise ZeroDivisionError("rational exponent has zero denominator")
    if n < 0:
        m, n = -m, -n
    g = gcd(abs(m), n)
    if g > 1:
        m, n = m // g, n // g
    return m, n


def signed_power(x, m: int, n: int = 1):
    """sgn(x)^(m*n) * |x|^(m/n) for a reduced rational exponent m/n.

    Odd n behaves like the real n-th root (sign of x^m is carried through);
    even n always yields a nonnegative result.  Works elementwise on numpy
    arrays.  Raises for a pole (x == 0 with m < 0).
    """
    m, n = _reduce_exponent(m, n)
    xa = np.asarray(x, dtype=float)
    if m < 0 and np.any(xa == 0.0):
        raise ZeroDivisionError("signed_power: zero base with negative exponent")
    sign = np.where(xa < 0.0, -1.0, 1.0) if (m * n) % 2 else 1.0
    out = sign * np.abs(xa) ** (m / n)
    if np.ndim(x) == 0:
        return float(out)
    return out


class Jet:
    """Truncated Taylor series of a scalar quantity at a base point."""

    __slots__ = ("base_point", "coeffs")

    def __init__(self, coeffs: Sequence[float], base_point: float = 0.0):
        c = np.array(coeffs, dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("jet needs a one-dimensional, non-empty coefficient array")
        self.base_point = float(base_point)
        self.coeffs = c

    # -- construction ------------------------------------------------------

    @classmethod
    def constant(cls, value: float, order: int = DEFAULT_ORDER, base_point: float = 0.0) -> "Jet":
        c = np.zeros(order + 1)
        c[0] = value
        return cls(c, base_point)

    @classmethod
    def variable(cls, base_point: float = 0.0, order: int = DEFAULT_ORDER) -> "Jet":
        """The jet of the identity map t |-> t."""
        c = np.zeros(order + 1)
        c[0] = base_point
        if order >= 1:
            c[1] = 1.0
        return cls(c, base_point)

    # -- basic queries -----------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def value(self) -> float:
        return float(self.coeffs[0])

    def derivative_value(self, k: int) -> float:
        """k-th derivative at the base point (coefficient times k!)."""
        if k > self.order:
            raise ValueError(f"jet of order {self.order} has no derivative of order {k}")
        return float(self.coeffs[k]) * math.factorial(k)

    def __call__(self, t: float):
        """Evaluate the truncated polynomial at parameter value t (Horner)."""
        dt = np.asarray(t, dtype=float) - self.base_point
        acc = np.zeros_like(dt) + self.coeffs[-1]
        for c in self.coeffs[-2::-1]:
            acc = acc * dt + c
        if np.ndim(t) == 0:
            return float(acc)
        return acc

    def truncated(self, order: int) -> "Jet":
        if order >= self.order:
            return self
        return Jet(self.coeffs[: order + 1], self.base_point)

    def __repr__(self) -> str:
        return f"Jet(base={self.base_point:g}, coeffs={np.array2string(self.coeffs, precision=6)})"

    # -- arithmetic --------------------------------------------------------

    def _check_base(self, other: "Jet") -> None:
        if self.base_point != other.base_point:
            raise ValueError(
                f"jet base points differ: {self.base_point} vs {other.base_point}"
            )

    def _binary(self, other):
        if isinstance(other, Jet):
            self._check_base(other)
            k = min(self.order, other.order)
            return self.coeffs[: k + 1], other.coeffs[: k + 1]
        if isinstance(other, (int, float)):
            c = np.zeros_like(self.coeffs)
            c[0] = other
            return self.coeffs, c
        return None, None

    def __add__(self, other):
        a, b = self._binary(other)
        if a is None:
            return NotImplemented
        return Jet(a + b, self.base_point)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._binary(other)
        if a is None:
            return NotImplemented
        return Jet(a - b, self.base_point)

    def __rsub__(self, other):
        a, b = self._binary(other)
        if a is None:
            return NotImplemented
        return Jet(b - a, self.base_point)

    def __neg__(self):
        return Jet(-self.coeffs, self.base_point)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Jet(self.coeffs * other, self.base_point)
        if not isinstance(other, Jet):
            return NotImplemented
        self._check_base(other)
        k = min(self.order, other.order)
        out = np.convolve(self.coeffs[: k + 1], other.coeffs[: k + 1])[: k + 1]
        return Jet(out, self.base_point)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Jet(self.coeffs / other, self.base_point)
        if not isinstance(other, Jet):
            return NotImplemented
        self._check_base(other)
        k = min(self.order, other.order)
        u = self.coeffs[: k + 1]
        w = other.coeffs[: k + 1]
        if w[0] == 0.0:
            raise ZeroDivisionError("division by a jet with zero constant coefficient")
        v = np.zeros(k + 1)
        for i in range(k + 1):
            v[i] = (u[i] - np.dot(v[:i], w[i:0:-1])) / w[0]
        return Jet(v, self.base_point)

    def __rtruediv__(self, other):
        if isinstance(other, (int, float)):
            return Jet.constant(other, self.order, self.base_point) / self
        return NotImplemented

    def __pow__(self, e):
        if isinstance(e, int):
            if e < 0:
                return (1.0 / self) ** (-e)
            result = Jet.constant(1.0, self.order, self.base_point)
            base = self
            while e:
                if e & 1:
                    result = result * base
                base = base * base
                e >>= 1
            return result
        return NotImplemented

    def pow_rational(self, m: int, n: int) -> "Jet":
        """self**(m/n) under the signed_power convention.

        The constant term must be nonzero unless the exponent is a
        nonnegative integer.
        """
        m, n = _reduce_exponent(m, n)
        if n == 1:
            return self ** m
        u = self.coeffs
        if u[0] == 0.0:
            raise ZeroDivisionError(
                "fractional power of a jet with zero constant coefficient"
            )
        r = m / n
        v = np.zeros_like(u)
        v[0] = signed_power(u[0], m, n)
        for k in range(1, len(u)):
            s = 0.0
            for j in range(1, k + 1):
                s += ((r + 1.0) * j - k) * u[j] * v[k - j]
            v[k] = s / (k * u[0])
        return Jet(v, self.base_point)

    def sqrt(self) -> "Jet":
        return self.pow_rational(1, 2)

    # -- elementary functions (standard Taylor recurrences) -----------------

    def exp(self) -> "Jet":
        u = self.coeffs
        v = np.zeros_like(u)
        v[0] = math.exp(u[0])
        for k in range(1, len(u)):
            v[k] = sum(j * u[j] * v[k - j] for j in range(1, k + 1)) / k
        return Jet(v, self.base_point)

    def _circular(self, hyperbolic: bool) -> tuple["Jet", "Jet"]:
        u = self.coeffs
        s = np.zeros_like(u)
        c = np.zeros_like(u)
        if hyperbolic:
            s[0], c[0] = math.sinh(u[0]), math.cosh(u[0])
            sign = 1.0
        else:
            s[0], c[0] = math.sin(u[0]), math.cos(u[0])
            sign = -1.0
        for k in range(1, len(u)):
            s[k] = sum(j * u[j] * c[k - j] for j in range(1, k + 1)) / k
            c[k] = sign * sum(j * u[j] * s[k - j] for j in range(1, k + 1)) / k
        return Jet(s, self.base_point), Jet(c, self.base_point)

    def sin(self) -> "Jet":
        return self._circular(False)[0]

    def cos(self) -> "Jet":
        return self._circular(False)[1]

    def sinh(self) -> "Jet":
        return self._circular(True)[0]

    def cosh(self) -> "Jet":
        return self._circular(True)[1]

    # -- calculus ----------------------------------------------------------

    def derivative(self, n: int = 1) -> "Jet":
        c = self.coeffs
        for _ in range(n):
            if len(c) == 1:
                c = np.zeros(1)
                continue
            k = np.arange(1, len(c))
            c = c[1:] * k
        return Jet(c, self.base_point)

    def antiderivative(self, constant: float = 0.0) -> "Jet":
        k = np.arange(1, len(self.coeffs) + 1)
        return Jet(np.concatenate([[constant], self.coeffs / k]), self.base_point)

    def compose(self, inner: "Jet") -> "Jet":
        """Jet of self(inner(t)) at inner's base point.

        The constant coefficient of ``inner`` must equal this jet's base
        point.
        """
        scale = max(1.0, abs(self.base_point))
        if abs(inner.coeffs[0] - self.base_point) > 1e-9 * scale:
            raise ValueError(
                "compose: inner constant coefficient "
                f"{inner.coeffs[0]} does not match outer base point {self.base_point}"
            )
        k = min(self.order, inner.order)
        w = Jet(np.concatenate([[0.0], inner.coeffs[1 : k + 1]]), inner.base_point)
        acc = Jet.constant(float(self.coeffs[k]), k, inner.base_point)
        for c in self.coeffs[k - 1 :: -1] if k >= 1 else []:
            acc = acc * w + float(c)
        return acc

    def inverted(self) -> "Jet":
        """Series reversion: the jet of the inverse map.

        If this jet represents s(t) with s'(t0) != 0, the result represents
        t(s) about the base point s(t0).
        """
        s = self.coeffs
        if len(s) < 2 or s[1] == 0.0:
            raise ValueError("cannot invert a jet with zero linear coefficient")
        k = self.order
        # Work with offset series S(x) = s(t0 + x) - s0; find T with S(T(y)) = y.
        S = Jet(np.concatenate([[0.0], s[1:]]), 0.0)
        ident = Jet.variable(0.0, k)
        T = Jet(np.concatenate([[0.0], [1.0 / s[1]], np.zeros(max(0, k - 1))]), 0.0)
        dS = S.derivative()
        for _ in range(max(1, math.ceil(math.log2(k + 1))) + 1):
            err = S.compose(T) - ident
            T = T - err / dS.compose(T)
        out = np.concatenate([[self.base_point], T.coeffs[1:]])
        return Jet(out, float(s[0]))


# -- polymorphic elementary functions ---------------------------------------


def _dispatch(x, method: str, np_fn, math_fn):
    if hasattr(x, method):
        return getattr(x, method)()
    if isinstance(x, np.ndarray):
        return np_fn(x)
    return math_fn(x)


def sin(x):
    return _dispatch(x, "sin", np.sin, math.sin)


def cos(x):
    return _dispatch(x, "cos", np.cos, math.cos)


def sinh(x):
    return _dispatch(x, "sinh", np.sinh, math.sinh)


def cosh(x):
    return _dispatch(x, "cosh", np.cosh, math.cosh)


def exp(x):
    return _dispatch(x, "exp", np.exp, math.exp)


def rational_pow(x, m: int, n: int):
    """x**(m/n) for jets, arrays, or scalars, with signed_power semantics."""
    m, n = _reduce_exponent(m, n)
    if hasattr(x, "pow_rational"):
        return x.pow_rational(m, n)
    if n == 1:
        if isinstance(x, (int, float)) and m < 0 and x == 0:
            raise ZeroDivisionError("zero base with negative exponent")
        return x ** m
    return signed_power(x, m, n)


# -- deflation ---------------------------------------------------------------


def deflate(jet: Jet, k: int, tol: float | None = None) -> Jet:
    """Divide a jet by t^k, exactly, by shifting coefficients down.

    The base point must be 0 and the first k coefficients must vanish to
    within ``tol`` (default: 1e-9 relative to the largest coefficient
    magnitude).  The result has order reduced by k.
    """
    if k < 1:
        raise ValueError("deflation order k must be >= 1")
    if jet.base_point != 0.0:
        raise ValueError("deflate requires a jet based at t = 0")
    if k > jet.order:
        raise ValueError(f"cannot deflate an order-{jet.order} jet by t^{k}")
    scale = float(np.max(np.abs(jet.coeffs)))
    if tol is None:
        tol = 1e-9 * scale
    lead = np.abs(jet.coeffs[:k])
    if scale > 0.0 and np.any(lead > tol):
        worst = int(np.argmax(lead))
        raise ValueError(
            f"not divisible by t^{k}: coefficient {worst} has magnitude "
            f"{lead[worst]:.3e} > tol {tol:.3e}"
        )
    return Jet(jet.coeffs[k:].copy(), 0.0)


def inflate(jet: Jet, k: int) -> Jet:
    """Multiply a jet based at 0 by t^k (shift coefficients up)."""
    if jet.base_point != 0.0:
        raise ValueError("inflate requires a jet based at t = 0")
    return Jet(np.concatenate([np.zeros(k), jet.coeffs]), 0.0)


# -- plane curve germs --------------------------------------------------------


class PlaneJet:
    """A pair of jets (x- and y-component) describing a plane-curve germ."""

    __slots__ = ("x", "y")

    def __init__(self, x: Jet, y: Jet):
        if x.base_point != y.base_point:
            raise ValueError("component jets must share a base point")
        if x.order != y.order:
            k = min(x.order, y.order)
            x, y = x.truncated(k), y.truncated(k)
        self.x = x
        self.y = y

    @property
    def base_point(self) -> float:
        return self.x.base_point

    @property
    def order(self) -> int:
        return self.x.order

    @classmethod
    def from_coeffs(cls, x_coeffs, y_coeffs, base_point: float = 0.0) -> "PlaneJet":
        return cls(Jet(x_coeffs, base_point), Jet(y_coeffs, base_point))

    def __call__(self, t: float) -> np.ndarray:
        return np.array([self.x(t), self.y(t)])

    def derivative(self, n: int = 1) -> "PlaneJet":
        return PlaneJet(self.x.derivative(n), self.y.derivative(n))

    def derivative_vector(self, k: int) -> np.ndarray:
        """gamma^(k) at the base point, as a 2-vector."""
        return np.array([self.x.derivative_value(k), self.y.derivative_value(k)])

    def transform(self, matrix, shift=(0.0, 0.0)) -> "PlaneJet":
        """Apply an affine map p |-> M p + b to the curve germ."""
        m = np.asarray(matrix, dtype=float)
        newx = self.x * m[0, 0] + self.y * m[0, 1] + float(shift[0])
        newy = self.x * m[1, 0] + self.y * m[1, 1] + float(shift[1])
        return PlaneJet(newx, newy)

    def compose(self, inner: Jet) -> "PlaneJet":
        """Reparametrize the germ by t = inner(u)."""
        return PlaneJet(self.x.compose(inner), self.y.compose(inner))

    def reversed_orientation(self) -> "PlaneJet":
        """The germ of t |-> gamma(-t); base point must be 0."""
        if self.base_point != 0.0:
            raise ValueError("orientation reversal implemented for base point 0 only")
        signs = (-1.0) ** np.arange(self.order + 1)
        return PlaneJet.from_coeffs(self.x.coeffs * signs, self.y.coeffs * signs)

    def truncated(self, order: int) -> "PlaneJet":
        return PlaneJet(self.x.truncated(order), self.y.truncated(order))


def bracket(a: PlaneJet, b: PlaneJet) -> Jet:
    """Jet of the plane determinant a_x b_y - a_y b_x."""
    return a.x * b.y - a.y * b.x


class VecJet:
    """Jets over an array of base points, vectorized along the last axis.

    ``coeffs`` has shape (order+1, n): column i is the coefficient vector of
    an independent jet at base point i.  Used internally to evaluate curve
    derivatives at many parameter values in one expression-tree pass; the
    supported operation set mirrors :class:`Jet`.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: np.ndarray):
        self.coeffs = coeffs

    @classmethod
    def variable(cls, base_points, order: int) -> "VecJet":
        base = np.atleast_1d(np.asarray(base_points, dtype=float))
        c = np.zeros((order + 1, base.size))
        c[0] = base
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    def value(self) -> np.ndarray:
        return self.coeffs[0]

    def derivative_values(self, k: int) -> np.ndarray:
        return self.coeffs[k] * math.factorial(k)

    def _pair(self, other):
        if isinstance(other, VecJet):
            k = min(self.order, other.order) + 1
            return self.coeffs[:k], other.coeffs[:k]
        if isinstance(other, (int, float)):
            c = np.zeros_like(self.coeffs)
            c[0] = other
            return self.coeffs, c
        return None, None

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return VecJet(a + b)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return VecJet(a - b)

    def __rsub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return VecJet(b - a)

    def __neg__(self):
        return VecJet(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return VecJet(self.coeffs * other)
        if not isinstance(other, VecJet):
            return NotImplemented
        k = min(self.order, other.order) + 1
        a, b = self.coeffs[:k], other.coeffs[:k]
        out = np.zeros_like(a)
        for i in range(k):
            out[i] = np.einsum("ij,ij->j", a[: i + 1], b[i::-1])
        return VecJet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return VecJet(self.coeffs / other)
        if not isinstance(other, VecJet):
            return NotImplemented
        k = min(self.order, other.order) + 1
        u, w = self.coeffs[:k], other.coeffs[:k]
        if np.any(w[0] == 0.0):
            raise ZeroDivisionError("division by a jet with zero constant coefficient")
        v = np.zeros_like(u)
        for i in range(k):
            acc = u[i] - np.einsum("ij,ij->j", v[:i], w[i:0:-1]) if i else u[i]
            v[i] = acc / w[0]
        return VecJet(v)

    def __rtruediv__(self, other):
        if isinstance(other, (int, float)):
            c = np.zeros_like(self.coeffs)
            c[0] = other
            return VecJet(c) / self
        return NotImplemented

    def __pow__(self, e):
        if isinstance(e, int):
            if e < 0:
                return (1.0 / self) ** (-e)
            c = np.zeros_like(self.coeffs)
            c[0] = 1.0
            result = VecJet(c)
            base = self
            while e:
                if e & 1:
                    result = result * base
                base = base * base
                e >>= 1
            return result
        return NotImplemented

    def pow_rational(self, m: int, n: int) -> "VecJet":
        m, n = _reduce_exponent(m, n)
        if n == 1:
            return self ** m
        u = self.coeffs
        if np.any(u[0] == 0.0):
            raise ZeroDivisionError(
                "fractional power of a jet with zero constant coefficient"
            )
        r = m / n
        v = np.zeros_like(u)
        v[0] = signed_power(u[0], m, n)
        for k in range(1, u.shape[0]):
            s = np.zeros(u.shape[1])
            for j in range(1, k + 1):
                s += ((r + 1.0) * j - k) * u[j] * v[k - j]
            v[k] = s / (k * u[0])
        return VecJet(v)

    def sqrt(self) -> "VecJet":
        return self.pow_rational(1, 2)

    def exp(self) -> "VecJet":
        u = self.coeffs
        v = np.zeros_like(u)
        v[0] = np.exp(u[0])
        for k in range(1, u.shape[0]):
            v[k] = sum(j * u[j] * v[k - j] for j in range(1, k + 1)) / k
        return VecJet(v)

    def _circular(self, hyperbolic: bool) -> tuple["VecJet", "VecJet"]:
        u = self.coeffs
        s = np.zeros_like(u)
        c = np.zeros_like(u)
        if hyperbolic:
            s[0], c[0] = np.sinh(u[0]), np.cosh(u[0])
            sign = 1.0
        else:
            s[0], c[0] = np.sin(u[0]), np.cos(u[0])
            sign = -1.0
        for k in range(1, u.shape[0]):
            s[k] = sum(j * u[j] * c[k - j] for j in range(1, k + 1)) / k
            c[k] = sign * sum(j * u[j] * s[k - j] for j in range(1, k + 1)) / k
        return VecJet(s), VecJet(c)

    def sin(self) -> "VecJet":
        return self._circular(False)[0]

    def cos(self) -> "VecJet":
        return self._circular(False)[1]

    def sinh(self) -> "VecJet":
        return self._circular(True)[0]

    def cosh(self) -> "VecJet":
        return self._circular(True)[1]


# -- smooth quotients of singular integrals ----------------------------------

_GAUSS_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gauss_01(n: int = 64) -> tuple[np.ndarray, np.ndarray]:
    if n not in _GAUSS_CACHE:
        x, w = np.polynomial.legendre.leggauss(n)
        _GAUSS_CACHE[n] = (0.5 * (x + 1.0), 0.5 * w)
    return _GAUSS_CACHE[n]


def _rational_substitution(alpha: float) -> tuple[int, float]:
    """Smallest q making alpha*q an integer (weight becomes polynomial).

    Falls back to the smallest q with alpha*q >= 1, which still removes the
    endpoint singularity even when alpha is irrational.
    """
    for q in range(1, 17):
        if abs(alpha * q - round(alpha * q)) < 1e-9:
            return q, float(round(alpha * q) + q - 1)
    q = max(1, math.ceil(1.0 / alpha))
    return q, alpha * q + q - 1.0


def moment_quotient(phi, alpha: float, t: float) -> float:
    """Smooth quotient of the weighted integral of phi by sgn(t)|t|^(1+alpha).

    Returns f(t) with ``f(t) * sgn(t) * |t|**(1+alpha) == integral_0^t
    |u|**alpha * phi(u) du``, evaluated through the everywhere-regular form
    ``integral_0^1 u**alpha * phi(t*u) du``.  At t = 0 the value is exactly
    ``phi(0)/(1+alpha)``.  ``phi`` may be a Jet based at 0 or any callable
    defined on the segment between 0 and t.
    """
    if alpha <= 0:
        raise ValueError(f"moment_quotient needs alpha > 0, got {alpha}")
    if isinstance(phi, Jet):
        return moment_quotient_jet(phi, alpha)(t)
    q, e = _rational_substitution(alpha)
    v, w = _gauss_01()
    args = t * v**q
    try:
        vals = np.asarray(phi(args), dtype=float)
        if vals.shape != args.shape:
            raise TypeError
    except (TypeError, ValueError):
        vals = np.array([phi(u) for u in args], dtype=float)
    return float(np.sum(w * q * v**e * vals))


def moment_quotient_jet(phi: Jet, alpha: float) -> Jet:
    """Jet (about 0) of t |-> moment_quotient(phi, alpha, t).

    The weighted mean acts diagonally on Taylor coefficients:
    coefficient k is divided by (1 + alpha + k).
    """
    if alpha <= 0:
        raise ValueError(f"moment_quotient needs alpha > 0, got {alpha}")
    if phi.base_point != 0.0:
        raise ValueError("moment_quotient_jet requires a jet based at t = 0")
    k = np.arange(len(phi.coeffs))
    return Jet(phi.coeffs / (1.0 + alpha + k), 0.0)
