"""Functions of one integer and two line variables, and the big transform.

The objects here extend the cylinder functions of the module layer by a
second line slot. Two module structures live on them: a base structure
whose first-order operator is plain multiplication by r -+ is, and its
image under an invertible transform built from a partial Fourier
transform in the second slot followed by a shear substitution. The
transform turns multiplication operators into shifted derivative
operators, which is verified here by direct residual computation.

Profiles are two-variable Gaussian closed forms per (layer, mode) key,
so substitutions and derivatives are exact; quadrature enters only in
integrals, always with an exact closed-form route alongside.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .bimodules import APairValued, RGrid, ZTRFunction, pair_module_right
from .closedform import GaussSum1, GaussSum2
from .errors import AliasingDetected, GridMismatch, TruncationTooSmall
from .nctorus import SmoothElement, lambda_power

TWO_PI = 2.0 * math.pi


class SB2Function:
    """Layered two-variable functions with finite circle mode content.

    Represents F(k, [x], r, s) = sum over (k, m) of G_{k,m}(r, s)
    e^{2 pi i m x} with each G a two-variable Gaussian closed form and k
    in a finite window.
    """

    __slots__ = ("z_max", "mode_max", "rgrid", "sgrid", "profiles")

    def __init__(self, z_max, mode_max, rgrid: RGrid, sgrid: RGrid, profiles: dict):
        self.z_max = z_max
        self.mode_max = mode_max
        self.rgrid = rgrid
        self.sgrid = sgrid
        clean = {}
        for (k, m), g in profiles.items():
            if abs(k) > z_max:
                raise TruncationTooSmall(f"layer {k} exceeds the window {z_max}")
            if abs(m) > mode_max:
                raise TruncationTooSmall(f"mode {m} exceeds the window {mode_max}")
            if g.terms:
                clean[(k, m)] = g
        self.profiles = clean

    def profile(self, k: int, m: int) -> GaussSum2:
        return self.profiles.get((k, m), GaussSum2.zero())

    def eval_at(self, k: int, x: float, r, s) -> complex:
        total = 0j
        for (kk, m), g in self.profiles.items():
            if kk == k:
                total += g(r, s) * cmath.exp(TWO_PI * 1j * m * x)
        return total

    def __add__(self, other: "SB2Function") -> "SB2Function":
        if (self.rgrid, self.sgrid) != (other.rgrid, other.sgrid):
            raise GridMismatch("mixed grids")
        out = dict(self.profiles)
        for key, g in other.profiles.items():
            out[key] = out[key] + g if key in out else g
        return SB2Function(
            max(self.z_max, other.z_max),
            max(self.mode_max, other.mode_max),
            self.rgrid,
            self.sgrid,
            out,
        )

    def __sub__(self, other: "SB2Function") -> "SB2Function":
        return self + other.scale(-1.0)

    def scale(self, c) -> "SB2Function":
        return SB2Function(
            self.z_max,
            self.mode_max,
            self.rgrid,
            self.sgrid,
            {key: g.scale(c) for key, g in self.profiles.items()},
        )

    def _mesh(self, per_slot=24):
        r = self.rgrid.nodes()
        s = self.sgrid.nodes()
        rstep = max(1, len(r) // per_slot)
        sstep = max(1, len(s) // per_slot)
        return np.meshgrid(r[::rstep], s[::sstep], indexing="ij")

    def max_abs_difference(self, other: "SB2Function", per_slot=24) -> float:
        rr, ss = self._mesh(per_slot)
        top = 0.0
        for key in set(self.profiles) | set(other.profiles):
            diff = self.profile(*key) - other.profile(*key)
            if diff.terms:
                top = max(top, float(np.max(np.abs(diff(rr, ss)))))
        return top

    def sup_norm(self, per_slot=24) -> float:
        rr, ss = self._mesh(per_slot)
        top = 0.0
        for g in self.profiles.values():
            top = max(top, float(np.max(np.abs(g(rr, ss)))))
        return top

    def boundary_decay_ratio(self) -> float:
        """Largest boundary-ring magnitude over the global maximum."""
        rr, ss = self._mesh()
        edge_r = np.array([self.rgrid.nodes()[0], self.rgrid.nodes()[-1]])
        edge_s = np.array([self.sgrid.nodes()[0], self.sgrid.nodes()[-1]])
        top, edge = 0.0, 0.0
        for g in self.profiles.values():
            top = max(top, float(np.max(np.abs(g(rr, ss)))))
            edge = max(edge, float(np.max(np.abs(g(edge_r[:, None], ss[0][None, :])))))
            edge = max(edge, float(np.max(np.abs(g(rr[:, 0][:, None], edge_s[None, :])))))
        return edge / top if top > 0 else 0.0


def sb_seminorm(fn: SB2Function, n: int, alpha=(0, 0)) -> float:
    """Weighted sup of the (alpha1, alpha2) derivative.

    The weight is |k|^n + |r|^n + |s|^n + 1 for positive n; at n = 0 the
    weight collapses to 1 so the seminorm is the plain sup. The supremum
    is taken over the layer window and a subsampled grid mesh, with
    derivatives exact on the closed-form profiles.
    """
    if n < 0:
        raise ValueError("the weight exponent must be nonnegative")
    a1, a2 = alpha
    rr, ss = fn._mesh()
    weight_rs = np.abs(rr) ** n + np.abs(ss) ** n + 1.0 if n > 0 else 1.0
    top = 0.0
    for (k, _m), g in fn.profiles.items():
        d = g
        for _ in range(a1):
            d = d.derivative(0)
        for _ in range(a2):
            d = d.derivative(1)
        weight = weight_rs + (abs(k) ** n if n > 0 else 0.0)
        top = max(top, float(np.max(weight * np.abs(d(rr, ss)))))
    return top


# ---------------------------------------------------------------------------
# the base module: multiplication-type first-order operator
# ---------------------------------------------------------------------------


def base_right_act(fn: SB2Function, xi: dict, theta: float) -> SB2Function:
    """Right action of the doubled rotation algebra on the base module.

    xi maps (l1, k1, l2, k2) to a coefficient for the elementary tensor
    with powers (l1, k1) in the first factor and (l2, k2) in the second.
    """
    out = {}
    for (l1, k1, l2, k2), c in xi.items():
        if c == 0:
            continue
        for (k, mu), g in fn.profiles.items():
            key = (k + k2 - k1, mu + l1 + l2)
            if abs(key[0]) > fn.z_max or abs(key[1]) > fn.mode_max:
                raise TruncationTooSmall(f"action escapes windows at {key}")
            phase = lambda_power(theta, mu * k2 + l1 * (k + k2) + l2 * k2)
            piece = g.modulate(l2, -k2).scale(c * phase)
            out[key] = out[key] + piece if key in out else piece
    return SB2Function(fn.z_max, fn.mode_max, fn.rgrid, fn.sgrid, out)


def base_dirac(fn: SB2Function, sign: int) -> SB2Function:
    """Multiplication by r - sign * i s, the base first-order operator."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    out = {}
    for key, g in fn.profiles.items():
        out[key] = g.mul_poly({(1, 0): 1.0, (0, 1): -sign * 1j})
    return SB2Function(fn.z_max, fn.mode_max, fn.rgrid, fn.sgrid, out)


def _layer_eval(fn: SB2Function, k: int, x: float, r, s):
    """Vectorized evaluation of one layer at fixed circle point."""
    total = None
    for (kk, m), g in fn.profiles.items():
        if kk != k:
            continue
        piece = g(r, s) * cmath.exp(TWO_PI * 1j * m * x)
        total = piece if total is None else total + piece
    return total


def base_inner(fn1: SB2Function, fn2: SB2Function, theta: float, route="grid") -> APairValued:
    """Pair-valued inner product of the base module.

    The first line slot is pinned to coset points k2 + k1 theta - v + w
    while the second is integrated out, by quadrature on the stored grid
    (route "grid") or by exact closed forms (route "closed").
    """
    if route not in ("grid", "closed"):
        raise ValueError(f"unknown route {route!r}")
    cut = int(math.ceil(fn1.rgrid.radius + fn1.z_max + 2))
    l_max = 2 * max(fn1.z_max, fn2.z_max)
    t = fn1.sgrid.nodes()
    wt = fn1.sgrid.weights()

    def fn(l1, l2, v, w):
        total = 0j
        for k1 in range(-fn1.z_max, fn1.z_max + 1):
            k_other = k1 + l2 - l1
            if abs(k_other) > fn2.z_max:
                continue
            x1 = v - k1 * theta
            x2 = v - (k1 + l2) * theta
            for k2 in range(-cut, cut + 1):
                rho = k2 + k1 * theta - v + w
                if route == "grid":
                    left = _layer_eval(fn1, k1, x1, rho, t)
                    if left is None:
                        continue
                    right = _layer_eval(fn2, k_other, x2, rho, t)
                    if right is None:
                        continue
                    total += complex(
                        np.sum(wt * np.exp(TWO_PI * 1j * t * l2) * np.conj(left) * right)
                    )
                else:
                    for (kk1, m1), g1 in fn1.profiles.items():
                        if kk1 != k1:
                            continue
                        line1 = g1.conjugate().restrict_line((0.0, 1.0), (rho, 0.0))
                        ph1 = cmath.exp(-TWO_PI * 1j * m1 * x1)
                        for (kk2, m2), g2 in fn2.profiles.items():
                            if kk2 != k_other:
                                continue
                            line2 = g2.restrict_line((0.0, 1.0), (rho, 0.0))
                            ph2 = cmath.exp(TWO_PI * 1j * m2 * x2)
                            total += (
                                ph1 * ph2 * (line1 * line2).modulate(l2).integral()
                            )
        return total

    return APairValued(fn, l_max, theta)


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------


def fourier_slot_transform(fn: SB2Function, inverse: bool = False) -> SB2Function:
    """Partial Fourier transform in the second slot, kernel e^{-2 pi i t s}."""
    sign = 1 if inverse else -1
    out = {
        key: g.partial_fourier(1, sign) for key, g in fn.profiles.items()
    }
    return SB2Function(fn.z_max, fn.mode_max, fn.rgrid, fn.sgrid, out)


def fourier_slot_quadrature(fn: SB2Function, k: int, x: float, r: float, s_values):
    """Quadrature route for the slot transform, with an aliasing guard.

    Approximates the t-integral on the stored grid at the requested dual
    values. Raises AliasingDetected when a requested |s| exceeds what
    the node spacing can resolve.
    """
    nyquist = fn.sgrid.count / (4.0 * fn.sgrid.radius)
    s_values = np.atleast_1d(np.asarray(s_values, dtype=float))
    if np.max(np.abs(s_values)) > nyquist:
        raise AliasingDetected(
            f"dual value beyond the grid resolution bound {nyquist:.3f}"
        )
    t = fn.sgrid.nodes()
    wt = fn.sgrid.weights()
    samples = _layer_eval(fn, k, x, r, t)
    if samples is None:
        return np.zeros_like(s_values, dtype=complex)
    kernel = np.exp(-TWO_PI * 1j * np.outer(s_values, t))
    return kernel @ (wt * samples)


def shear_substitution(fn: SB2Function, b: int, theta: float, inverse: bool = False) -> SB2Function:
    """Layer-dependent shear: F(k, [x], r, s) becomes F(k, [x - k theta], b(r+s+k), s).

    The inverse substitutes ([x + k theta], r/b - s - k, s) instead, so
    the two compose to the identity exactly on closed forms.
    """
    if b == 0:
        raise ValueError("the substitution needs a nonzero shear")
    out = {}
    for (k, m), g in fn.profiles.items():
        if inverse:
            moved = g.affine(1.0 / b, -1.0, 0.0, 1.0, -float(k), 0.0)
            phase = lambda_power(theta, m * k)
        else:
            moved = g.affine(float(b), float(b), 0.0, 1.0, float(b * k), 0.0)
            phase = lambda_power(theta, -m * k)
        out[(k, m)] = moved.scale(phase)
    return SB2Function(fn.z_max, fn.mode_max, fn.rgrid, fn.sgrid, out)


def full_transform(fn: SB2Function, b: int, theta: float, inverse: bool = False) -> SB2Function:
    """The composite transform: shear after slot Fourier, or its inverse."""
    if inverse:
        return fourier_slot_transform(
            shear_substitution(fn, b, theta, inverse=True), inverse=True
        )
    return shear_substitution(fourier_slot_transform(fn), b, theta)


# ---------------------------------------------------------------------------
# conjugated operators on the transform side
# ---------------------------------------------------------------------------


def _first_slot_weight(fn: SB2Function, b: int) -> SB2Function:
    """b (M_r + M_layer) on profiles: multiply by b (r + k) per layer."""
    out = {}
    for (k, m), g in fn.profiles.items():
        out[(k, m)] = g.mul_poly({(1, 0): float(b), (0, 0): float(b * k)})
    return SB2Function(fn.z_max, fn.mode_max, fn.rgrid, fn.sgrid, out)


def transformed_dirac(fn: SB2Function, sign: int, b: int) -> SB2Function:
    """First-order operator on the transform side.

    [b(M_r + M_layer) -+ (1/2pi) d_r] + [b M_s +- (1/2pi) d_s]; equals
    the conjugate of the base operator under the composite transform.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    out = {}
    for (k, m), g in fn.profiles.items():
        weighted = g.mul_poly(
            {(1, 0): float(b), (0, 0): float(b * k), (0, 1): float(b)}
        )
        radial = g.derivative(0).scale(-sign / TWO_PI)
        dual = g.derivative(1).scale(sign / TWO_PI)
        out[(k, m)] = weighted + radial + dual
    return SB2Function(fn.z_max, fn.mode_max, fn.rgrid, fn.sgrid, out)


def conjugation_report(fn: SB2Function, b: int, theta: float) -> dict:
    """Residuals of the transform conjugation identities.

    Checks that conjugating multiplication by r gives b(M_r + M_layer +
    M_s), that conjugating multiplication by s gives (i/2pi)(d_s - d_r),
    and that the assembled first-order operators match the conjugated
    base operators, all as max-norm residuals on the sample mesh.
    """
    def conjugate(op):
        inner = op(full_transform(fn, b, theta, inverse=True))
        return full_transform(inner, b, theta)

    def mul_r(f):
        return SB2Function(
            f.z_max, f.mode_max, f.rgrid, f.sgrid,
            {key: g.mul_poly({(1, 0): 1.0}) for key, g in f.profiles.items()},
        )

    def mul_s(f):
        return SB2Function(
            f.z_max, f.mode_max, f.rgrid, f.sgrid,
            {key: g.mul_poly({(0, 1): 1.0}) for key, g in f.profiles.items()},
        )

    expected_r = SB2Function(
        fn.z_max, fn.mode_max, fn.rgrid, fn.sgrid,
        {
            (k, m): g.mul_poly({(1, 0): float(b), (0, 1): float(b), (0, 0): float(b * k)})
            for (k, m), g in fn.profiles.items()
        },
    )
    expected_s = SB2Function(
        fn.z_max, fn.mode_max, fn.rgrid, fn.sgrid,
        {
            key: (g.derivative(1) - g.derivative(0)).scale(1j / TWO_PI)
            for key, g in fn.profiles.items()
        },
    )
    report = {
        "first_slot": conjugate(mul_r).max_abs_difference(expected_r),
        "second_slot": conjugate(mul_s).max_abs_difference(expected_s),
    }
    for sign in (1, -1):
        conjugated = conjugate(lambda f, s=sign: base_dirac(f, s))
        assembled = transformed_dirac(fn, sign, b)
        label = "plus" if sign == 1 else "minus"
        report[f"dirac_{label}"] = conjugated.max_abs_difference(assembled)
    return report


# ---------------------------------------------------------------------------
# resolvents of the base operator
# ---------------------------------------------------------------------------


def resolvent_solve(psi1: SB2Function, psi2: SB2Function, sign: int):
    """Solve (D + sign i) phi = psi for the odd multiplication operator.

    D swaps the two components, acting by r + is on the second and
    r - is on the first. The solution divides by 1 + r^2 + s^2, which
    leaves the closed-form class, so components are returned as value
    arrays over the full grid mesh, keyed by (layer, mode).
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    rr, ss = np.meshgrid(psi1.rgrid.nodes(), psi1.sgrid.nodes(), indexing="ij")
    quad = 1.0 + rr * rr + ss * ss
    keys = set(psi1.profiles) | set(psi2.profiles)
    phi1, phi2 = {}, {}
    for key in keys:
        v1 = psi1.profile(*key)(rr, ss)
        v2 = psi2.profile(*key)(rr, ss)
        phi1[key] = ((rr + 1j * ss) * v2 - sign * 1j * v1) / quad
        phi2[key] = ((rr - 1j * ss) * v1 - sign * 1j * v2) / quad
    return phi1, phi2


def resolvent_residual(psi1: SB2Function, psi2: SB2Function, sign: int) -> float:
    """Max pointwise defect of the resolvent equation over the grid mesh."""
    rr, ss = np.meshgrid(psi1.rgrid.nodes(), psi1.sgrid.nodes(), indexing="ij")
    phi1, phi2 = resolvent_solve(psi1, psi2, sign)
    top = 0.0
    for key in phi1:
        target1 = psi1.profile(*key)(rr, ss)
        target2 = psi2.profile(*key)(rr, ss)
        got1 = (rr + 1j * ss) * phi2[key] + sign * 1j * phi1[key]
        got2 = (rr - 1j * ss) * phi1[key] + sign * 1j * phi2[key]
        top = max(top, float(np.max(np.abs(got1 - target1))))
        top = max(top, float(np.max(np.abs(got2 - target2))))
    return top


# ---------------------------------------------------------------------------
# the transform-side module structure
# ---------------------------------------------------------------------------


def transformed_right_act(fn: SB2Function, xi: dict, theta: float, b: int) -> SB2Function:
    """Right action of the doubled algebra on the transform side."""
    if b == 0:
        raise ValueError("the structure needs a nonzero shear")
    out = {}
    for (l1, kap1, l2, kap2), c in xi.items():
        if c == 0:
            continue
        for (k, mu), g in fn.profiles.items():
            k_out = k + kap2 - kap1
            key = (k_out, mu + l1 + l2)
            if abs(key[0]) > fn.z_max or abs(key[1]) > fn.mode_max:
                raise TruncationTooSmall(f"action escapes windows at {key}")
            moved = g.affine(1.0, 0.0, 0.0, 1.0, -float(kap1), float(kap2))
            moved = moved.modulate(l2 * b, l2 * b)
            phase = lambda_power(
                theta, mu * kap1 + l1 * kap1 + l2 * (kap2 - k_out)
            )
            piece = moved.scale(c * phase)
            out[key] = out[key] + piece if key in out else piece
    return SB2Function(fn.z_max, fn.mode_max, fn.rgrid, fn.sgrid, out)


def transformed_inner(
    fn1: SB2Function, fn2: SB2Function, theta: float, b: int, route="grid"
) -> APairValued:
    """Pair-valued inner product on the transform side.

    The first slot is pinned to the b-scaled coset points minus the
    integration variable, which runs through the second slot; route
    "grid" integrates on the stored rule, route "closed" restricts the
    closed forms to the integration line and integrates exactly.
    """
    if b == 0:
        raise ValueError("the structure needs a nonzero shear")
    if route not in ("grid", "closed"):
        raise ValueError(f"unknown route {route!r}")
    cut = int(math.ceil(abs(b) * (fn1.rgrid.radius + 2) + fn1.z_max + 2))
    l_max = 2 * max(fn1.z_max, fn2.z_max)
    t = fn1.rgrid.nodes()
    wt = fn1.rgrid.weights()

    def fn(l1, l2, v, w):
        total = 0j
        for k1 in range(-fn1.z_max, fn1.z_max + 1):
            k_other = k1 + l2 - l1
            if abs(k_other) > fn2.z_max:
                continue
            x2 = v - l1 * theta
            for k2 in range(-cut, cut + 1):
                c0 = (k2 + k1 * theta - v + w) / b
                if route == "grid":
                    left = _layer_eval(fn1, k1, v, c0 - t, t)
                    if left is None:
                        continue
                    right = _layer_eval(fn2, k_other, x2, c0 - t + l1, t - l2)
                    if right is None:
                        continue
                    total += complex(np.sum(wt * np.conj(left) * right))
                else:
                    for (kk1, m1), g1 in fn1.profiles.items():
                        if kk1 != k1:
                            continue
                        line1 = g1.conjugate().restrict_line((-1.0, 1.0), (c0, 0.0))
                        ph1 = cmath.exp(-TWO_PI * 1j * m1 * v)
                        for (kk2, m2), g2 in fn2.profiles.items():
                            if kk2 != k_other:
                                continue
                            line2 = g2.restrict_line(
                                (-1.0, 1.0), (c0 + l1, float(-l2))
                            )
                            ph2 = cmath.exp(TWO_PI * 1j * m2 * x2)
                            total += ph1 * ph2 * (line1 * line2).integral()
        return total

    return APairValued(fn, l_max, theta)


def transformed_lower_bound_gap(fn: SB2Function, theta: float, b: int, samples) -> float:
    """Largest violation of the diagonal lower bound over the samples.

    For each (k, v, s) sample the inner product diagonal at paired
    points dominates the single-term integral of |F|^2 along the
    anti-diagonal line through s. Nonpositive return means the bound
    held everywhere.
    """
    gram = transformed_inner(fn, fn, theta, b, "closed")
    worst = -math.inf
    for (k, v, s) in samples:
        w = v + b * s - k * theta
        diag = gram.value(0, 0, v, w).real
        single = 0j
        for (kk, m1), g1 in fn.profiles.items():
            if kk != k:
                continue
            line1 = g1.conjugate().restrict_line((-1.0, 1.0), (float(s), 0.0))
            for (kk2, m2), g2 in fn.profiles.items():
                if kk2 != k:
                    continue
                line2 = g2.restrict_line((-1.0, 1.0), (float(s), 0.0))
                phase = cmath.exp(TWO_PI * 1j * (m2 - m1) * v)
                single += phase * (line1 * line2).integral()
        worst = max(worst, single.real - diag)
    return worst


# ---------------------------------------------------------------------------
# split operators and their product rules
# ---------------------------------------------------------------------------


def layered_line_dirac(phi: ZTRFunction, sign: int, b: int) -> ZTRFunction:
    """b (M_r + M_layer) -+ (1/2pi) d_r on layered cylinder functions."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    out = {}
    for (k, mu), p in phi.profiles.items():
        out[(k, mu)] = p.mul_poly((float(b * k), float(b))) + p.derivative().scale(
            -sign / TWO_PI
        )
    return ZTRFunction(phi.z_max, phi.mode_max, phi.grid, out)


def profile_dirac(p: GaussSum1, sign: int, b: int) -> GaussSum1:
    """b M +- (1/2pi) d_r on a single line profile."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return p.mul_poly((0.0, float(b))) + p.derivative().scale(sign / TWO_PI)


def descended_line_dirac(psi: ZTRFunction, sign: int, b: int) -> ZTRFunction:
    """profile_dirac applied per profile of a layered function."""
    out = {key: profile_dirac(p, sign, b) for key, p in psi.profiles.items()}
    return ZTRFunction(psi.z_max, psi.mode_max, psi.grid, out)


def angular_weight_correction(a: SmoothElement, sign: int) -> SmoothElement:
    """(M_layer -+ (1/2pi) d_angle) on algebra elements.

    Sends the coefficient at powers (p, q) to (q -+ i p) times itself;
    this is the commutator defect of the split operators against the
    algebra actions.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return SmoothElement(
        {(p, q): c * (q - sign * 1j * p) for (p, q), c in a.coeffs.items()},
        a.theta,
    )


def outer_with_profile(phi: ZTRFunction, p: GaussSum1, sgrid: RGrid) -> SB2Function:
    """Tensor a layered cylinder function with a second-slot profile."""
    profiles = {
        key: GaussSum2.outer(f, p) for key, f in phi.profiles.items()
    }
    return SB2Function(
        phi.z_max, phi.mode_max, RGrid(phi.grid.radius, phi.grid.count), sgrid, profiles
    )


# ---------------------------------------------------------------------------
# the convolution-algebra norm diagnostic
# ---------------------------------------------------------------------------


def i_norm(gram: APairValued, points: int = 4) -> float:
    """Largest fiber sum of |values| over sampled anchor points.

    Treats the pair-valued array as a kernel on the doubled translation
    groupoid and returns the max of the two sup-of-fiber-sums (arrows
    into a point, arrows out of a point), the standard convolution
    algebra bound.
    """
    theta = gram.theta
    span = gram.l_max
    anchors = (np.arange(points) + 0.37) / points
    top = 0.0
    for v in anchors:
        for w in anchors:
            into = 0.0
            out_of = 0.0
            for l1 in range(-span, span + 1):
                for l2 in range(-span, span + 1):
                    into += abs(gram.value(l1, l2, float(v), float(w)))
                    out_of += abs(
                        gram.value(
                            l1, l2, float(v + l1 * theta), float(w + l2 * theta)
                        )
                    )
            top = max(top, into, out_of)
    return top
