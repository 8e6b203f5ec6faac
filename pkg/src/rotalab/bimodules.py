"""Inner-product module structures over the circle algebra and beyond.

Functions on the cylinder (circle times line) are stored as finite
Fourier sums in the circle slot with a closed-form Gaussian profile per
mode. Every action below is a combination of mode shifts, exact phases,
translations and plane-wave modulations of the profiles, so actions are
evaluated without interpolation; quadrature enters only in inner
products, where a Gauss-Legendre grid is the primary route and the exact
closed-form integral serves as an independent oracle.

Structures implemented:

* the line module over the circle algebra, with its integer translation
  action and the two circle-function actions (one through the sheared
  argument, one direct);
* its sheared partner related to it by a unitary change of variables;
* the descended module over the rotation algebra, with commuting left
  and right actions and a rotation-algebra-valued inner product;
* the transversal module with a right action of the doubled rotation
  algebra and a pair-valued inner product;
* the descent bimodule whose inner product collapses the pair-valued
  one by integrating out the first circle slot.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .closedform import GaussSum1
from .errors import GridMismatch, TruncationTooSmall
from .nctorus import SmoothElement, lambda_power

TWO_PI = 2.0 * math.pi


@lru_cache(maxsize=32)
def _legendre_rule(n: int):
    return np.polynomial.legendre.leggauss(n)


@dataclass(frozen=True)
class RGrid:
    """Gauss-Legendre quadrature rule on [-radius, radius]."""

    radius: float
    count: int

    def nodes(self) -> np.ndarray:
        x, _ = _legendre_rule(self.count)
        return self.radius * x

    def weights(self) -> np.ndarray:
        _, w = _legendre_rule(self.count)
        return self.radius * w


def _require_same_grid(f, g):
    if f.grid != g.grid:
        raise GridMismatch(f"grids differ: {f.grid} vs {g.grid}")


def _zero() -> GaussSum1:
    return GaussSum1.zero()


class TRFunction:
    """Finite Fourier sum over the circle with closed-form line profiles.

    Represents phi([x], r) = sum over modes m of p_m(r) e^{2 pi i m x}
    with each p_m a Gaussian closed form. The grid fixes where inner
    products are sampled; it does not constrain evaluation.
    """

    __slots__ = ("mode_max", "grid", "profiles")

    def __init__(self, mode_max: int, grid: RGrid, profiles: dict):
        self.mode_max = mode_max
        self.grid = grid
        clean = {}
        for m, p in profiles.items():
            if abs(m) > mode_max:
                raise TruncationTooSmall(
                    f"mode {m} exceeds the window of size {mode_max}"
                )
            if p.terms:
                clean[m] = p
        self.profiles = clean

    def profile(self, m: int) -> GaussSum1:
        return self.profiles.get(m, _zero())

    def modes(self):
        return sorted(self.profiles)

    def values(self) -> np.ndarray:
        """Complex array of shape (2*mode_max + 1, grid.count)."""
        r = self.grid.nodes()
        out = np.zeros((2 * self.mode_max + 1, self.grid.count), dtype=complex)
        for m, p in self.profiles.items():
            out[m + self.mode_max] = p(r)
        return out

    def eval_at(self, x: float, r) -> complex:
        total = 0j
        for m, p in self.profiles.items():
            total += p(r) * cmath.exp(TWO_PI * 1j * m * x)
        return total

    def __add__(self, other: "TRFunction") -> "TRFunction":
        _require_same_grid(self, other)
        out = dict(self.profiles)
        for m, p in other.profiles.items():
            out[m] = out[m] + p if m in out else p
        return TRFunction(max(self.mode_max, other.mode_max), self.grid, out)

    def scale(self, c) -> "TRFunction":
        return TRFunction(
            self.mode_max, self.grid, {m: p.scale(c) for m, p in self.profiles.items()}
        )

    def max_abs_difference(self, other: "TRFunction") -> float:
        _require_same_grid(self, other)
        r = self.grid.nodes()
        top = 0.0
        for m in set(self.profiles) | set(other.profiles):
            diff = self.profile(m) - other.profile(m)
            if diff.terms:
                top = max(top, float(np.max(np.abs(diff(r)))))
        return top


class CTValued:
    """A circle function by its Fourier coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict):
        self.coeffs = {m: complex(c) for m, c in coeffs.items() if c != 0}

    def coefficient(self, m: int) -> complex:
        return self.coeffs.get(m, 0j)

    def value_at(self, x: float) -> complex:
        return sum(
            c * cmath.exp(TWO_PI * 1j * m * x) for m, c in self.coeffs.items()
        )

    def star(self) -> "CTValued":
        return CTValued({-m: c.conjugate() for m, c in self.coeffs.items()})

    def rotate(self, l: int, theta: float) -> "CTValued":
        """Coefficients of x -> value_at(x - l*theta)."""
        return CTValued(
            {m: c * lambda_power(theta, -m * l) for m, c in self.coeffs.items()}
        )

    def __add__(self, other: "CTValued") -> "CTValued":
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0j) + c
        return CTValued(out)

    def scale(self, c) -> "CTValued":
        return CTValued({m: v * c for m, v in self.coeffs.items()})

    def mul(self, other: "CTValued") -> "CTValued":
        out = {}
        for m, c in self.coeffs.items():
            for n, d in other.coeffs.items():
                out[m + n] = out.get(m + n, 0j) + c * d
        return CTValued(out)

    def max_abs_difference(self, other: "CTValued") -> float:
        keys = set(self.coeffs) | set(other.coeffs)
        return max(
            (abs(self.coefficient(m) - other.coefficient(m)) for m in keys),
            default=0.0,
        )


# ---------------------------------------------------------------------------
# the line module: inner product and the three actions
# ---------------------------------------------------------------------------


def _mode_products(phi: TRFunction, psi: TRFunction):
    """Closed-form profiles of the pointwise product conj(phi) * psi.

    Yields (m, profile) where m is the Fourier mode of the product and
    the profile is sum over beta of conj(p_{beta-m}) q_beta.
    """
    out = {}
    for alpha, p in phi.profiles.items():
        pc = p.conjugate()
        for beta, q in psi.profiles.items():
            m = beta - alpha
            piece = pc * q
            out[m] = out[m] + piece if m in out else piece
    return out


def line_module_inner(phi: TRFunction, psi: TRFunction, route: str = "grid") -> CTValued:
    """Circle-valued inner product: integrate conj(phi)*psi over the line.

    route "grid" uses the stored quadrature rule; route "closed"
    evaluates the exact Gaussian integrals. The two agree to quadrature
    accuracy and are compared in tests, never merged.
    """
    _require_same_grid(phi, psi)
    products = _mode_products(phi, psi)
    if route == "closed":
        return CTValued({m: p.integral() for m, p in products.items()})
    if route != "grid":
        raise ValueError(f"unknown route {route!r}")
    r, w = phi.grid.nodes(), phi.grid.weights()
    return CTValued({m: complex(np.sum(w * p(r))) for m, p in products.items()})


def line_module_translate(phi: TRFunction, l: int, theta: float) -> TRFunction:
    """Integer translation action: new phi([x], r) = phi([x - l theta], r - l)."""
    out = {}
    for m, p in phi.profiles.items():
        out[m] = p.affine(1.0, -float(l)).scale(lambda_power(theta, -m * l))
    return TRFunction(phi.mode_max, phi.grid, out)


def _trig_poly(f) -> dict:
    if isinstance(f, CTValued):
        return f.coeffs
    return {int(m): complex(c) for m, c in f.items() if c != 0}


def line_module_left(phi: TRFunction, f, b: int) -> TRFunction:
    """Left circle-function action through the sheared argument x + r b."""
    out = {}
    for n, c in _trig_poly(f).items():
        for m, p in phi.profiles.items():
            key = m + n
            if abs(key) > phi.mode_max:
                raise TruncationTooSmall(
                    f"left action pushes mode {m} to {key} beyond {phi.mode_max}"
                )
            piece = p.modulate(n * b).scale(c)
            out[key] = out[key] + piece if key in out else piece
    return TRFunction(phi.mode_max, phi.grid, out)


def line_module_right(phi: TRFunction, f) -> TRFunction:
    """Right circle-function action through the plain argument x."""
    out = {}
    for n, c in _trig_poly(f).items():
        for m, p in phi.profiles.items():
            key = m + n
            if abs(key) > phi.mode_max:
                raise TruncationTooSmall(
                    f"right action pushes mode {m} to {key} beyond {phi.mode_max}"
                )
            piece = p.scale(c)
            out[key] = out[key] + piece if key in out else piece
    return TRFunction(phi.mode_max, phi.grid, out)


# ---------------------------------------------------------------------------
# the sheared partner module
# ---------------------------------------------------------------------------


def sheared_module_inner(
    phi: TRFunction, psi: TRFunction, b: int, route: str = "grid"
) -> CTValued:
    """Inner product integrating (conj(phi) psi)([x - r], r / b) in r.

    route "grid" samples the displayed integrand at the stored nodes
    (profiles evaluate anywhere, so the r/b argument costs nothing);
    route "closed" substitutes u = r/b and integrates exactly.
    """
    _require_same_grid(phi, psi)
    if b == 0:
        raise ValueError("the sheared structure needs a nonzero shear")
    products = _mode_products(phi, psi)
    out = {}
    if route == "closed":
        for m, p in products.items():
            out[m] = abs(b) * p.modulate(-m * b).integral()
        return CTValued(out)
    if route != "grid":
        raise ValueError(f"unknown route {route!r}")
    r, w = phi.grid.nodes(), phi.grid.weights()
    for m, p in products.items():
        out[m] = complex(np.sum(w * p(r / b) * np.exp(-TWO_PI * 1j * m * r)))
    return CTValued(out)


def sheared_module_translate(phi: TRFunction, l: int, theta: float) -> TRFunction:
    """Integer action of the sheared structure: phi([x - l theta], r + l)."""
    out = {}
    for m, p in phi.profiles.items():
        out[m] = p.affine(1.0, float(l)).scale(lambda_power(theta, -m * l))
    return TRFunction(phi.mode_max, phi.grid, out)


def sheared_module_left(phi: TRFunction, f) -> TRFunction:
    """Left circle action of the sheared structure (plain argument)."""
    return line_module_right(phi, f)


def sheared_module_right(phi: TRFunction, f, b: int) -> TRFunction:
    """Right circle action of the sheared structure (sheared argument)."""
    return line_module_left(phi, f, b)


def shear_unitary(phi: TRFunction, b: int, inverse: bool = False) -> TRFunction:
    """The normalized change of variables ([x], r) -> ([x + b r], -r).

    Forward carries the line module to its sheared partner; the map is
    an involution up to the normalization, so the inverse only differs
    by the Jacobian factor.
    """
    if b == 0:
        raise ValueError("the change of variables needs a nonzero shear")
    factor = math.sqrt(abs(b)) if inverse else 1.0 / math.sqrt(abs(b))
    out = {}
    for m, p in phi.profiles.items():
        out[m] = p.affine(-1.0, 0.0).modulate(m * b).scale(factor)
    return TRFunction(phi.mode_max, phi.grid, out)


def sheared_dirac(phi: TRFunction, sign: int, b: int) -> TRFunction:
    """First-order operator of the sheared structure.

    Plus sign: -(1/b) d/dr + d/dTheta - 2 pi r. Minus sign is the formal
    adjoint under the scalar pairing. Profiles differentiate exactly.
    """
    if b == 0:
        raise ValueError("the operator needs a nonzero shear")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    out = {}
    for m, p in phi.profiles.items():
        radial = p.derivative().scale(-sign / b)
        angular = p.scale(sign * TWO_PI * 1j * m)
        position = p.mul_poly((0.0, -TWO_PI))
        out[m] = radial + angular + position
    return TRFunction(phi.mode_max, phi.grid, out)


def scalar_inner(phi: TRFunction, psi: TRFunction, route: str = "grid") -> complex:
    """Full scalar product over cylinder: the mode-zero inner coefficient."""
    return line_module_inner(phi, psi, route).coefficient(0)


# ---------------------------------------------------------------------------
# the descended module over the rotation algebra
# ---------------------------------------------------------------------------


class ZTRFunction:
    """Finitely supported integer layers of cylinder functions.

    Represents Psi(k, [x], r) = sum over (k, m) of p_{k,m}(r)
    e^{2 pi i m x}, with k in a finite window.
    """

    __slots__ = ("z_max", "mode_max", "grid", "profiles")

    def __init__(self, z_max: int, mode_max: int, grid: RGrid, profiles: dict):
        self.z_max = z_max
        self.mode_max = mode_max
        self.grid = grid
        clean = {}
        for (k, m), p in profiles.items():
            if abs(k) > z_max:
                raise TruncationTooSmall(f"layer {k} exceeds the window {z_max}")
            if abs(m) > mode_max:
                raise TruncationTooSmall(f"mode {m} exceeds the window {mode_max}")
            if p.terms:
                clean[(k, m)] = p
        self.profiles = clean

    def profile(self, k: int, m: int) -> GaussSum1:
        return self.profiles.get((k, m), _zero())

    def layer(self, k: int) -> TRFunction:
        return TRFunction(
            self.mode_max,
            self.grid,
            {m: p for (kk, m), p in self.profiles.items() if kk == k},
        )

    def eval_at(self, k: int, x: float, r) -> complex:
        total = 0j
        for (kk, m), p in self.profiles.items():
            if kk == k:
                total += p(r) * cmath.exp(TWO_PI * 1j * m * x)
        return total

    def __add__(self, other: "ZTRFunction") -> "ZTRFunction":
        _require_same_grid(self, other)
        out = dict(self.profiles)
        for key, p in other.profiles.items():
            out[key] = out[key] + p if key in out else p
        return ZTRFunction(
            max(self.z_max, other.z_max),
            max(self.mode_max, other.mode_max),
            self.grid,
            out,
        )

    def scale(self, c) -> "ZTRFunction":
        return ZTRFunction(
            self.z_max,
            self.mode_max,
            self.grid,
            {key: p.scale(c) for key, p in self.profiles.items()},
        )

    def max_abs_difference(self, other: "ZTRFunction") -> float:
        _require_same_grid(self, other)
        r = self.grid.nodes()
        top = 0.0
        for key in set(self.profiles) | set(other.profiles):
            diff = self.profiles.get(key, _zero()) - other.profiles.get(key, _zero())
            if diff.terms:
                top = max(top, float(np.max(np.abs(diff(r)))))
        return top


def _check_window(psi: ZTRFunction, k: int, m: int):
    if abs(k) > psi.z_max or abs(m) > psi.mode_max:
        raise TruncationTooSmall(
            f"index ({k}, {m}) escapes windows ({psi.z_max}, {psi.mode_max})"
        )


def descended_left(a: SmoothElement, psi: ZTRFunction, b: int) -> ZTRFunction:
    """Left action of the rotation algebra on the descended module.

    Coefficient (nu, j) of a contributes through the sheared circle
    argument x - r b, an integer translation of the layer index, and a
    line translation by j.
    """
    theta = a.theta
    out = {}
    for (nu, j), c in a.coeffs.items():
        for (k, mu), p in psi.profiles.items():
            key = (k + j, mu + nu)
            _check_window(psi, *key)
            piece = (
                p.affine(1.0, -float(j))
                .modulate(-nu * b)
                .scale(c * lambda_power(theta, -mu * j))
            )
            out[key] = out[key] + piece if key in out else piece
    return ZTRFunction(psi.z_max, psi.mode_max, psi.grid, out)


def descended_right(psi: ZTRFunction, a: SmoothElement) -> ZTRFunction:
    """Right action of the rotation algebra: phases and index shifts only."""
    theta = a.theta
    out = {}
    for (nu, j), c in a.coeffs.items():
        for (k, mu), p in psi.profiles.items():
            key = (k + j, mu + nu)
            _check_window(psi, *key)
            piece = p.scale(c * lambda_power(theta, -nu * k))
            out[key] = out[key] + piece if key in out else piece
    return ZTRFunction(psi.z_max, psi.mode_max, psi.grid, out)


def descended_inner(
    psi1: ZTRFunction, psi2: ZTRFunction, theta: float, route: str = "grid"
) -> SmoothElement:
    """Rotation-algebra-valued inner product of the descended module.

    Sums conj(psi1) psi2 over the layer index with the circle argument
    twisted by that index, integrating profiles along the line.
    """
    _require_same_grid(psi1, psi2)
    if route == "grid":
        r, w = psi1.grid.nodes(), psi1.grid.weights()

        def pairing(p, q):
            return complex(np.sum(w * p.conjugate()(r) * q(r)))

    elif route == "closed":

        def pairing(p, q):
            return p.l2_inner(q)

    else:
        raise ValueError(f"unknown route {route!r}")
    coeffs = {}
    for (k1, mu), p in psi1.profiles.items():
        for (k2, nu), q in psi2.profiles.items():
            n, l = nu - mu, k2 - k1
            val = pairing(p, q) * lambda_power(theta, n * k1)
            if val != 0:
                coeffs[(n, l)] = coeffs.get((n, l), 0j) + val
    return SmoothElement(coeffs, theta)


# ---------------------------------------------------------------------------
# the transversal module with a doubled right action
# ---------------------------------------------------------------------------


def pair_module_right(
    phi: ZTRFunction, xi: dict, theta: float, b: int
) -> ZTRFunction:
    """Right action of the doubled rotation algebra on transversal functions.

    xi maps (p1, q1, p2, q2) to a coefficient, standing for the sum of
    elementary tensors (first factor powers p1, q1; second p2, q2). The
    first factor acts through the circle slot and a line translation,
    the second through the sheared position and the layer index.
    """
    out = {}
    for (p1, q1, p2, q2), c in xi.items():
        if c == 0:
            continue
        for (k, mu), p in phi.profiles.items():
            k_out = k + q2 - q1
            m_out = mu + p1 + p2
            _check_window(phi, k_out, m_out)
            phase = lambda_power(theta, (mu + p1) * q1 + p2 * (q2 - k_out))
            piece = p.affine(1.0, -float(q1)).modulate(p2 * b).scale(c * phase)
            key = (k_out, m_out)
            out[key] = out[key] + piece if key in out else piece
    return ZTRFunction(phi.z_max, phi.mode_max, phi.grid, out)


class APairValued:
    """A doubled-algebra-valued form, held as an evaluator.

    value(l1, l2, v, w) is the coefficient function of the pair of
    integer jumps (l1, l2) at circle points (v, w). The evaluator form
    is needed because inner products below evaluate at off-grid offsets
    combining both circle coordinates with the angle.
    """

    __slots__ = ("fn", "l_max", "theta")

    def __init__(self, fn, l_max: int, theta: float):
        self.fn = fn
        self.l_max = l_max
        self.theta = theta

    def value(self, l1: int, l2: int, v: float, w: float) -> complex:
        return self.fn(l1, l2, v, w)

    def __add__(self, other: "APairValued") -> "APairValued":
        if self.theta != other.theta:
            raise ValueError("mixed angle parameters")
        return APairValued(
            lambda l1, l2, v, w: self.fn(l1, l2, v, w) + other.fn(l1, l2, v, w),
            max(self.l_max, other.l_max),
            self.theta,
        )

    def star(self) -> "APairValued":
        theta = self.theta

        def starred(l1, l2, v, w):
            return self.fn(-l1, -l2, v - l1 * theta, w - l2 * theta).conjugate()

        return APairValued(starred, self.l_max, theta)

    def right_mult(self, xi: dict) -> "APairValued":
        theta = self.theta
        items = [(key, c) for key, c in xi.items() if c != 0]
        if not items:
            return APairValued(lambda l1, l2, v, w: 0j, self.l_max, theta)

        def multiplied(l1, l2, v, w):
            total = 0j
            for (p1, q1, p2, q2), c in items:
                base = self.fn(l1 - q1, l2 - q2, v, w)
                phase1 = cmath.exp(TWO_PI * 1j * p1 * v) * lambda_power(
                    theta, -p1 * (l1 - q1)
                )
                phase2 = cmath.exp(TWO_PI * 1j * p2 * w) * lambda_power(
                    theta, -p2 * (l2 - q2)
                )
                total += c * base * phase1 * phase2
            return total

        return APairValued(multiplied, self.l_max + max(abs(k[1]) + abs(k[3]) for k, _ in items), theta)

    def max_abs_difference(self, other: "APairValued", points: int = 5) -> float:
        xs = np.linspace(0.05, 0.95, points)
        top = 0.0
        span = max(self.l_max, other.l_max)
        for l1 in range(-span, span + 1):
            for l2 in range(-span, span + 1):
                for v in xs:
                    for w in xs:
                        top = max(
                            top,
                            abs(
                                self.value(l1, l2, float(v), float(w))
                                - other.value(l1, l2, float(v), float(w))
                            ),
                        )
        return top


def pair_module_inner(
    phi: ZTRFunction, psi: ZTRFunction, theta: float, b: int
) -> APairValued:
    """Pair-valued inner product of the transversal module.

    The line argument runs over the coset (k1 + k2 theta + w - v) / b,
    so the result is an evaluator in the two circle points; the k1 sum
    is truncated where the Gaussian profiles are negligible.
    """
    if b == 0:
        raise ValueError("the transversal structure needs a nonzero shear")
    cut = int(math.ceil(abs(b) * (phi.grid.radius + 2) + phi.z_max + 2))
    l_max = 2 * phi.z_max

    def fn(l1, l2, v, w):
        total = 0j
        for k2 in range(-phi.z_max, phi.z_max + 1):
            k_psi = k2 + l2 - l1
            if abs(k_psi) > psi.z_max:
                continue
            for k1 in range(-cut, cut + 1):
                r0 = (k1 + k2 * theta + w - v) / b
                left = phi.eval_at(k2, v, r0)
                if left == 0:
                    continue
                right = psi.eval_at(k_psi, v - l1 * theta, r0 + l1)
                total += left.conjugate() * right
        return total

    return APairValued(fn, l_max, theta)


# ---------------------------------------------------------------------------
# the descent bimodule (unit-shear case)
# ---------------------------------------------------------------------------


def descent_left(phi: ZTRFunction, p1: int, q1: int, theta: float) -> ZTRFunction:
    """Left action of an elementary algebra generator on descent functions."""
    out = {}
    for (k, mu), p in phi.profiles.items():
        key = (k + q1, mu + p1)
        _check_window(phi, *key)
        piece = p.affine(1.0, float(q1)).scale(lambda_power(theta, -mu * q1))
        out[key] = out[key] + piece if key in out else piece
    return ZTRFunction(phi.z_max, phi.mode_max, phi.grid, out)


def descent_right(phi: ZTRFunction, p2: int, q2: int, theta: float, b: int) -> ZTRFunction:
    """Right action of an elementary generator on descent functions."""
    out = {}
    for (k, mu), p in phi.profiles.items():
        k_out = k + q2
        key = (k_out, mu + p2)
        _check_window(phi, *key)
        phase = lambda_power(theta, p2 * (q2 - k_out))
        piece = p.modulate(p2 * b).scale(phase)
        out[key] = out[key] + piece if key in out else piece
    return ZTRFunction(phi.z_max, phi.mode_max, phi.grid, out)


def descent_inner(
    phi: ZTRFunction, psi: ZTRFunction, theta: float, b: int, route: str = "grid"
) -> SmoothElement:
    """Rotation-algebra-valued inner product of the descent bimodule.

    Primary form: sum over the layer index of sheared-partner inner
    products of corresponding layers, each evaluated at the circle point
    twisted by the layer. A quadrature collapse of the pair-valued inner
    product is kept separately as an oracle (see descent_inner_oracle).
    """
    _require_same_grid(phi, psi)
    coeffs = {}
    for k in range(-phi.z_max, phi.z_max + 1):
        layer1 = phi.layer(k)
        for l in range(-2 * psi.z_max, 2 * psi.z_max + 1):
            if abs(k + l) > psi.z_max:
                continue
            ct = sheared_module_inner(layer1, psi.layer(k + l), b, route)
            for m, c in ct.rotate(-k, theta).coeffs.items():
                coeffs[(m, l)] = coeffs.get((m, l), 0j) + c
    return SmoothElement(coeffs, theta)


def descent_inner_oracle(
    phi: ZTRFunction, psi: ZTRFunction, theta: float, b: int, y_count: int = 32
):
    """Collapse the pair-valued inner product by averaging the first slot.

    Returns a callable (x, l) -> complex for comparison with the primary
    descent_inner route.
    """
    pair = pair_module_inner(phi, psi, theta, b)
    ys = (np.arange(y_count) + 0.5) / y_count

    def collapsed(x: float, l: int) -> complex:
        total = 0j
        for y in ys:
            total += pair.value(0, l, float(y), x)
        return total / y_count

    return collapsed
