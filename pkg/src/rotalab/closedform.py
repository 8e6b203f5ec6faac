"""Closed algebras of polynomial-times-Gaussian functions.

A one-variable term is P(r) * exp(-a r^2 / 2 + b r) with complex a, b and
Re a > 0; a two-variable term is P(r, s) * exp(-x'Ax/2 + B'x) with A
complex symmetric and Re A positive definite. Finite sums of such terms
are closed under products, derivatives, affine substitution, Fourier
transforms, restriction to lines, and integration, with every operation
given by an explicit formula. That lets the module and operator layers
compute inner products and transforms to machine precision instead of
through quadrature; quadrature appears only in cross-checking oracles.

Centered parameters: a Gaussian bump exp(-a(r-mu)^2/2 + 2 pi i w r) is
the term with b = a mu + 2 pi i w and prefactor exp(-a mu^2 / 2).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# dense 1-variable polynomials as coefficient tuples, low degree first
# ---------------------------------------------------------------------------


def _poly_add(p, q):
    n = max(len(p), len(q))
    return tuple(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def _poly_mul(p, q):
    out = [0j] * (len(p) + len(q) - 1)
    for i, ci in enumerate(p):
        if ci == 0:
            continue
        for j, cj in enumerate(q):
            out[i + j] += ci * cj
    return tuple(out)


def _poly_scale(p, c):
    return tuple(ci * c for ci in p)


def _poly_deriv(p):
    if len(p) <= 1:
        return (0j,)
    return tuple(i * p[i] for i in range(1, len(p)))


def _poly_affine(p, alpha, beta):
    """Coefficients of P(alpha*r + beta)."""
    out = (0j,)
    for c in reversed(p):
        out = _poly_add(_poly_mul(out, (beta, alpha)), (c,))
    return out


def _poly_eval(p, r):
    out = np.zeros_like(np.asarray(r, dtype=complex))
    for c in reversed(p):
        out = out * r + c
    return out


def _poly_trim(p):
    n = len(p)
    while n > 1 and p[n - 1] == 0:
        n -= 1
    return tuple(p[:n])


# ---------------------------------------------------------------------------
# one variable
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussTerm1:
    a: complex
    b: complex
    coeffs: tuple

    def __post_init__(self):
        if not self.a.real > 0:
            raise ValueError("Gaussian exponent must have positive real part")
        object.__setattr__(self, "coeffs", _poly_trim(tuple(map(complex, self.coeffs))))


class GaussSum1:
    """A finite sum of one-variable Gaussian terms."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        merged = {}
        for t in terms:
            key = (t.a, t.b)
            merged[key] = _poly_add(merged[key], t.coeffs) if key in merged else t.coeffs
        self.terms = tuple(
            GaussTerm1(a, b, coeffs)
            for (a, b), coeffs in merged.items()
            if any(c != 0 for c in coeffs)
        )

    @classmethod
    def zero(cls) -> "GaussSum1":
        return cls()

    @classmethod
    def bump(cls, width=1.0, center=0.0, freq=0.0, poly=(1,)) -> "GaussSum1":
        """P(r) * exp(-width*(r-center)^2/2 + 2 pi i freq r)."""
        a = complex(width)
        b = a * center + TWO_PI * 1j * freq
        pref = cmath.exp(-a * center * center / 2)
        return cls([GaussTerm1(a, b, _poly_scale(tuple(poly), pref))])

    # ---- linear structure ------------------------------------------------

    def __add__(self, other: "GaussSum1") -> "GaussSum1":
        return GaussSum1(self.terms + other.terms)

    def __sub__(self, other: "GaussSum1") -> "GaussSum1":
        return self + other.scale(-1)

    def scale(self, c) -> "GaussSum1":
        c = complex(c)
        return GaussSum1(
            [GaussTerm1(t.a, t.b, _poly_scale(t.coeffs, c)) for t in self.terms]
        )

    def __mul__(self, other):
        if isinstance(other, GaussSum1):
            out = []
            for t in self.terms:
                for u in other.terms:
                    out.append(
                        GaussTerm1(t.a + u.a, t.b + u.b, _poly_mul(t.coeffs, u.coeffs))
                    )
            return GaussSum1(out)
        return self.scale(other)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussSum1":
        return GaussSum1(
            [
                GaussTerm1(
                    t.a.conjugate(),
                    t.b.conjugate(),
                    tuple(c.conjugate() for c in t.coeffs),
                )
                for t in self.terms
            ]
        )

    # ---- calculus --------------------------------------------------------

    def derivative(self) -> "GaussSum1":
        out = []
        for t in self.terms:
            # (P e)' = (P' + P*(-a r + b)) e
            poly = _poly_add(_poly_deriv(t.coeffs), _poly_mul(t.coeffs, (t.b, -t.a)))
            out.append(GaussTerm1(t.a, t.b, poly))
        return GaussSum1(out)

    def mul_poly(self, poly) -> "GaussSum1":
        poly = tuple(map(complex, poly))
        return GaussSum1(
            [GaussTerm1(t.a, t.b, _poly_mul(t.coeffs, poly)) for t in self.terms]
        )

    def modulate(self, freq) -> "GaussSum1":
        """Multiply by the plane wave exp(2 pi i freq r)."""
        shift = TWO_PI * 1j * freq
        return GaussSum1(
            [GaussTerm1(t.a, t.b + shift, t.coeffs) for t in self.terms]
        )

    def affine(self, alpha, beta) -> "GaussSum1":
        """Substitute r -> alpha*r + beta with real alpha != 0 and real beta."""
        alpha, beta = complex(alpha), complex(beta)
        out = []
        for t in self.terms:
            pref = cmath.exp(t.b * beta - t.a * beta * beta / 2)
            poly = _poly_scale(_poly_affine(t.coeffs, alpha, beta), pref)
            out.append(
                GaussTerm1(t.a * alpha * alpha, (t.b - t.a * beta) * alpha, poly)
            )
        return GaussSum1(out)

    def integral(self) -> complex:
        """Integral over the whole line, exact per term."""
        total = 0j
        for t in self.terms:
            moments = _gauss_moments(t.a, t.b, len(t.coeffs) - 1)
            total += sum(c * moments[n] for n, c in enumerate(t.coeffs))
        return total

    def fourier(self, sign: int = -1) -> "GaussSum1":
        """Integral transform with kernel exp(sign * 2 pi i r s).

        The result is again a sum of Gaussian terms in the dual variable;
        polynomial factors turn into derivative operators on it.
        """
        delta = sign * TWO_PI * 1j
        out = GaussSum1.zero()
        for t in self.terms:
            pref = math.sqrt(TWO_PI) / cmath.sqrt(t.a) * cmath.exp(
                t.b * t.b / (2 * t.a)
            )
            base = GaussSum1(
                [GaussTerm1(TWO_PI**2 / t.a, delta * t.b / t.a, (pref,))]
            )
            for n, c in enumerate(t.coeffs):
                if c == 0:
                    continue
                piece = base
                for _ in range(n):
                    piece = piece.derivative().scale(1 / delta)
                out = out + piece.scale(c)
        return out

    # ---- evaluation ------------------------------------------------------

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        out = np.zeros(r.shape, dtype=complex)
        for t in self.terms:
            out += _poly_eval(t.coeffs, r) * np.exp(-t.a * r * r / 2 + t.b * r)
        return out if out.shape else complex(out)

    def l2_inner(self, other: "GaussSum1") -> complex:
        return (self.conjugate() * other).integral()

    def __repr__(self) -> str:
        return f"GaussSum1({len(self.terms)} terms)"


def _gauss_moments(a, b, nmax):
    """Integrals of r^n exp(-a r^2/2 + b r) for n = 0..nmax."""
    base = math.sqrt(TWO_PI) / cmath.sqrt(a) * cmath.exp(b * b / (2 * a))
    moments = [base]
    if nmax >= 1:
        moments.append(b / a * base)
    for n in range(2, nmax + 1):
        moments.append(((n - 1) * moments[n - 2] + b * moments[n - 1]) / a)
    return moments


# ---------------------------------------------------------------------------
# dense 2-variable polynomials as {(i, j): coeff}
# ---------------------------------------------------------------------------


def _p2_add(p, q):
    out = dict(p)
    for key, c in q.items():
        out[key] = out.get(key, 0j) + c
    return out


def _p2_mul(p, q):
    out = {}
    for (i1, j1), c1 in p.items():
        if c1 == 0:
            continue
        for (i2, j2), c2 in q.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, 0j) + c1 * c2
    return out


def _p2_scale(p, c):
    return {key: ci * c for key, ci in p.items()}


def _p2_trim(p):
    return {key: complex(c) for key, c in p.items() if c != 0} or {(0, 0): 0j}


def _p2_affine(p, t00, t01, t10, t11, c0, c1):
    """P(t00*r + t01*s + c0, t10*r + t11*s + c1) as a new coefficient dict."""
    lin_r = {(0, 0): complex(c0), (1, 0): complex(t00), (0, 1): complex(t01)}
    lin_s = {(0, 0): complex(c1), (1, 0): complex(t10), (0, 1): complex(t11)}
    max_i = max(i for i, _ in p)
    max_j = max(j for _, j in p)
    pow_r = [{(0, 0): 1 + 0j}]
    for _ in range(max_i):
        pow_r.append(_p2_mul(pow_r[-1], lin_r))
    pow_s = [{(0, 0): 1 + 0j}]
    for _ in range(max_j):
        pow_s.append(_p2_mul(pow_s[-1], lin_s))
    out = {}
    for (i, j), c in p.items():
        if c == 0:
            continue
        out = _p2_add(out, _p2_scale(_p2_mul(pow_r[i], pow_s[j]), c))
    return _p2_trim(out)


def _p2_eval(p, r, s):
    out = np.zeros(np.broadcast(r, s).shape, dtype=complex)
    for (i, j), c in p.items():
        out += c * np.asarray(r, dtype=float) ** i * np.asarray(s, dtype=float) ** j
    return out


# ---------------------------------------------------------------------------
# two variables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussTerm2:
    """P(r, s) * exp(-(A11 r^2 + 2 A12 r s + A22 s^2)/2 + B1 r + B2 s)."""

    a11: complex
    a12: complex
    a22: complex
    b1: complex
    b2: complex
    poly: tuple

    def __post_init__(self):
        # Re A positive definite keeps every integral below convergent
        re11, re12, re22 = self.a11.real, self.a12.real, self.a22.real
        if not (re11 > 0 and re11 * re22 - re12 * re12 > 0):
            raise ValueError("real part of the quadratic form must be positive")
        object.__setattr__(self, "poly", tuple(sorted(_p2_trim(dict(self.poly)).items())))

    def poly_dict(self):
        return dict(self.poly)


class GaussSum2:
    """A finite sum of two-variable Gaussian terms."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        merged = {}
        for t in terms:
            key = (t.a11, t.a12, t.a22, t.b1, t.b2)
            p = t.poly_dict()
            merged[key] = _p2_add(merged[key], p) if key in merged else p
        kept = []
        for key, p in merged.items():
            p = _p2_trim(p)
            if any(c != 0 for c in p.values()):
                kept.append(GaussTerm2(*key, tuple(sorted(p.items()))))
        self.terms = tuple(kept)

    @classmethod
    def zero(cls) -> "GaussSum2":
        return cls()

    @classmethod
    def outer(cls, f: GaussSum1, g: GaussSum1) -> "GaussSum2":
        """The product f(r) g(s) as a two-variable sum."""
        out = []
        for t in f.terms:
            for u in g.terms:
                poly = {}
                for i, ci in enumerate(t.coeffs):
                    for j, cj in enumerate(u.coeffs):
                        if ci * cj != 0:
                            poly[(i, j)] = ci * cj
                out.append(
                    GaussTerm2(t.a, 0j, u.a, t.b, u.b, tuple(sorted(poly.items())))
                )
        return cls(out)

    # ---- linear structure ------------------------------------------------

    def __add__(self, other: "GaussSum2") -> "GaussSum2":
        return GaussSum2(self.terms + other.terms)

    def __sub__(self, other: "GaussSum2") -> "GaussSum2":
        return self + other.scale(-1)

    def scale(self, c) -> "GaussSum2":
        c = complex(c)
        return GaussSum2(
            [
                GaussTerm2(
                    t.a11,
                    t.a12,
                    t.a22,
                    t.b1,
                    t.b2,
                    tuple(sorted(_p2_scale(t.poly_dict(), c).items())),
                )
                for t in self.terms
            ]
        )

    def __mul__(self, other):
        if isinstance(other, GaussSum2):
            out = []
            for t in self.terms:
                for u in other.terms:
                    out.append(
                        GaussTerm2(
                            t.a11 + u.a11,
                            t.a12 + u.a12,
                            t.a22 + u.a22,
                            t.b1 + u.b1,
                            t.b2 + u.b2,
                            tuple(
                                sorted(_p2_mul(t.poly_dict(), u.poly_dict()).items())
                            ),
                        )
                    )
            return GaussSum2(out)
        return self.scale(other)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussSum2":
        return GaussSum2(
            [
                GaussTerm2(
                    t.a11.conjugate(),
                    t.a12.conjugate(),
                    t.a22.conjugate(),
                    t.b1.conjugate(),
                    t.b2.conjugate(),
                    tuple(
                        sorted(
                            {
                                k: c.conjugate() for k, c in t.poly_dict().items()
                            }.items()
                        )
                    ),
                )
                for t in self.terms
            ]
        )

    # ---- calculus --------------------------------------------------------

    def derivative(self, slot: int) -> "GaussSum2":
        out = []
        for t in self.terms:
            p = t.poly_dict()
            dp = {}
            for (i, j), c in p.items():
                if slot == 0 and i > 0:
                    dp[(i - 1, j)] = dp.get((i - 1, j), 0j) + i * c
                if slot == 1 and j > 0:
                    dp[(i, j - 1)] = dp.get((i, j - 1), 0j) + j * c
            if slot == 0:
                lin = {(0, 0): t.b1, (1, 0): -t.a11, (0, 1): -t.a12}
            else:
                lin = {(0, 0): t.b2, (1, 0): -t.a12, (0, 1): -t.a22}
            poly = _p2_add(dp, _p2_mul(p, lin))
            out.append(
                GaussTerm2(t.a11, t.a12, t.a22, t.b1, t.b2, tuple(sorted(poly.items())))
            )
        return GaussSum2(out)

    def mul_poly(self, poly: dict) -> "GaussSum2":
        poly = {k: complex(c) for k, c in poly.items()}
        return GaussSum2(
            [
                GaussTerm2(
                    t.a11,
                    t.a12,
                    t.a22,
                    t.b1,
                    t.b2,
                    tuple(sorted(_p2_mul(t.poly_dict(), poly).items())),
                )
                for t in self.terms
            ]
        )

    def modulate(self, freq_r, freq_s) -> "GaussSum2":
        """Multiply by exp(2 pi i (freq_r r + freq_s s))."""
        dr = TWO_PI * 1j * freq_r
        ds = TWO_PI * 1j * freq_s
        return GaussSum2(
            [
                GaussTerm2(t.a11, t.a12, t.a22, t.b1 + dr, t.b2 + ds, t.poly)
                for t in self.terms
            ]
        )

    def affine(self, t00, t01, t10, t11, c0, c1) -> "GaussSum2":
        """Substitute (r, s) -> (t00 r + t01 s + c0, t10 r + t11 s + c1)."""
        out = []
        for t in self.terms:
            a = np.array([[t.a11, t.a12], [t.a12, t.a22]])
            b = np.array([t.b1, t.b2])
            tm = np.array([[t00, t01], [t10, t11]], dtype=complex)
            cv = np.array([c0, c1], dtype=complex)
            na = tm.T @ a @ tm
            nb = tm.T @ (b - a @ cv)
            pref = cmath.exp(b @ cv - (cv @ a @ cv) / 2)
            poly = _p2_scale(
                _p2_affine(t.poly_dict(), t00, t01, t10, t11, c0, c1), pref
            )
            out.append(
                GaussTerm2(
                    complex(na[0, 0]),
                    complex(na[0, 1]),
                    complex(na[1, 1]),
                    complex(nb[0]),
                    complex(nb[1]),
                    tuple(sorted(poly.items())),
                )
            )
        return GaussSum2(out)

    def restrict_line(self, u, v) -> GaussSum1:
        """The one-variable sum t -> F(u1 t + v1, u2 t + v2)."""
        u = np.asarray(u, dtype=complex)
        v = np.asarray(v, dtype=complex)
        out = []
        for t in self.terms:
            a = np.array([[t.a11, t.a12], [t.a12, t.a22]])
            b = np.array([t.b1, t.b2])
            na = complex(u @ a @ u)
            nb = complex(b @ u - u @ a @ v)
            pref = cmath.exp(b @ v - (v @ a @ v) / 2)
            poly2 = _p2_affine(t.poly_dict(), u[0], 0, u[1], 0, v[0], v[1])
            coeffs = [0j] * (1 + max(i for i, _ in poly2))
            for (i, j), c in poly2.items():
                if c != 0 and j != 0:
                    raise AssertionError("line restriction left an s power behind")
                coeffs[i] += c
            out.append(GaussTerm1(na, nb, _poly_scale(tuple(coeffs), pref)))
        return GaussSum1(out)

    def partial_fourier(self, slot: int, sign: int = -1) -> "GaussSum2":
        """Transform one slot with kernel exp(sign * 2 pi i x_slot y).

        The dual variable takes over the transformed slot; the other slot
        is untouched. Polynomial powers of the transformed variable become
        scaled derivatives in the dual variable.
        """
        delta = sign * TWO_PI * 1j
        out = GaussSum2.zero()
        for t in self.terms:
            if slot == 1:
                ajj, akk, ajk, bj, bk = t.a22, t.a11, t.a12, t.b2, t.b1
            else:
                ajj, akk, ajk, bj, bk = t.a11, t.a22, t.a12, t.b1, t.b2
            pref = math.sqrt(TWO_PI) / cmath.sqrt(ajj) * cmath.exp(bj * bj / (2 * ajj))
            nakk = akk - ajk * ajk / ajj
            nass = TWO_PI**2 / ajj
            naks = delta * ajk / ajj
            nbk = bk - bj * ajk / ajj
            nbs = delta * bj / ajj
            if slot == 1:
                base_term = GaussTerm2(
                    nakk, naks, nass, nbk, nbs, (((0, 0), pref),)
                )
            else:
                base_term = GaussTerm2(
                    nass, naks, nakk, nbs, nbk, (((0, 0), pref),)
                )
            base = GaussSum2([base_term])
            for (i, j), c in t.poly_dict().items():
                if c == 0:
                    continue
                trans_pow = j if slot == 1 else i
                kept_pow = i if slot == 1 else j
                piece = base
                for _ in range(trans_pow):
                    piece = piece.derivative(slot).scale(1 / delta)
                kept_key = (kept_pow, 0) if slot == 1 else (0, kept_pow)
                piece = piece.mul_poly({kept_key: 1})
                out = out + piece.scale(c)
        return out

    def integral_slot(self, slot: int) -> GaussSum1:
        """Integrate one slot out over the whole line."""
        transformed = self.partial_fourier(slot, sign=-1)
        if slot == 1:
            return transformed.restrict_line((1, 0), (0, 0))
        return transformed.restrict_line((0, 1), (0, 0))

    def integral(self) -> complex:
        return self.integral_slot(1).integral()

    # ---- evaluation ------------------------------------------------------

    def __call__(self, r, s):
        r = np.asarray(r, dtype=float)
        s = np.asarray(s, dtype=float)
        out = np.zeros(np.broadcast(r, s).shape, dtype=complex)
        for t in self.terms:
            expo = (
                -(t.a11 * r * r + 2 * t.a12 * r * s + t.a22 * s * s) / 2
                + t.b1 * r
                + t.b2 * s
            )
            out += _p2_eval(t.poly_dict(), r, s) * np.exp(expo)
        return out if out.shape else complex(out)

    def l2_inner(self, other: "GaussSum2") -> complex:
        return (self.conjugate() * other).integral()

    def __repr__(self) -> str:
        return f"GaussSum2({len(self.terms)} terms)"
