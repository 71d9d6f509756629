"""Exact algebra of piecewise exponential functions on the real line.

A function here is a finite sum of terms ``coeff * x**power * exp(s*x)``
supported on an interval ``[lo, hi]`` (either end may be infinite).  This
class is closed under addition, scalar multiplication, conjugation,
translation, dilation, modulation, restriction to half-lines, piecewise
differentiation, and the resolvent of the free momentum operator ``i d/dx``.
Inner products are evaluated in closed form, and an independent composite
Gauss-Legendre quadrature is provided as a cross-checking oracle.

All values are Python complex scalars; numpy enters only for vectorized
pointwise evaluation inside the quadrature oracle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

NEG_INF = float("-inf")
POS_INF = float("inf")

#: exponents closer to zero than this are integrated with the length formula
DEGENERATE_EXPONENT_TOL = 1e-14

#: coefficient tolerance for approximate function equality
COEFF_TOL = 1e-13

#: maximum allowed jump at a breakpoint for a function to count as continuous
JUMP_TOL = 1e-13

#: pointwise envelope below which infinite quadrature tails are cut off
TAIL_CUTOFF = 1e-16


class QuadratureBudgetError(RuntimeError):
    """The quadrature oracle failed to converge within its panel budget.

    Raised so that a misbehaving oracle is distinguishable from an oracle
    that converged to a value disagreeing with the closed form.
    """


@dataclass(frozen=True)
class ExpTerm:
    """One term ``coeff * x**power * exp(exponent*x)`` on ``[lo, hi]``.

    Invariants guarantee square integrability: an infinite left end needs
    ``Re(exponent) > 0`` and an infinite right end needs ``Re(exponent) < 0``.
    """

    coeff: complex
    lo: float
    hi: float
    exponent: complex
    power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", complex(self.coeff))
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        object.__setattr__(self, "exponent", complex(self.exponent))
        if self.power != int(self.power) or self.power < 0:
            raise ValueError(f"power must be a nonnegative integer, got {self.power}")
        object.__setattr__(self, "power", int(self.power))
        if not self.lo < self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")
        if not (cmath.isfinite(self.coeff) and cmath.isfinite(self.exponent)):
            raise ValueError("coefficient and exponent must be finite")
        if self.lo == NEG_INF and self.exponent.real <= 0:
            raise ValueError(
                f"term exp({self.exponent}*x) on ({self.lo}, {self.hi}] is not "
                "square integrable: need Re(exponent) > 0 at -inf"
            )
        if self.hi == POS_INF and self.exponent.real >= 0:
            raise ValueError(
                f"term exp({self.exponent}*x) on [{self.lo}, {self.hi}) is not "
                "square integrable: need Re(exponent) < 0 at +inf"
            )

    def _key(self):
        return (self.lo, self.hi, self.exponent, self.power)


def _sort_key(t: ExpTerm):
    return (t.lo, t.hi, t.exponent.real, t.exponent.imag, t.power)


@dataclass(frozen=True, init=False)
class PiecewiseExpFunction:
    """Finite sum of :class:`ExpTerm`; the zero function has no terms.

    Construction canonicalizes: terms sharing (lo, hi, exponent, power) are
    merged and exact-zero coefficients are dropped, so equal functions built
    the same way compare equal term by term.
    """

    terms: tuple[ExpTerm, ...] = field(default=())

    def __init__(self, terms=()):
        acc: dict[tuple, complex] = {}
        for t in terms:
            if not isinstance(t, ExpTerm):
                t = ExpTerm(*t)
            key = t._key()
            acc[key] = acc.get(key, 0j) + t.coeff
        merged = [
            ExpTerm(c, lo, hi, s, p)
            for (lo, hi, s, p), c in acc.items()
            if c != 0
        ]
        merged.sort(key=_sort_key)
        object.__setattr__(self, "terms", tuple(merged))

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "PiecewiseExpFunction":
        return cls(())

    @classmethod
    def single(cls, coeff, lo, hi, exponent, power=0) -> "PiecewiseExpFunction":
        return cls((ExpTerm(coeff, lo, hi, exponent, power),))

    @classmethod
    def indicator(cls, lo, hi, coeff=1.0) -> "PiecewiseExpFunction":
        """Characteristic function of [lo, hi], scaled by coeff."""
        return cls.single(coeff, lo, hi, 0.0)

    # -- linear structure --------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, PiecewiseExpFunction):
            return NotImplemented
        return PiecewiseExpFunction(self.terms + other.terms)

    def __neg__(self):
        return PiecewiseExpFunction(
            ExpTerm(-t.coeff, t.lo, t.hi, t.exponent, t.power) for t in self.terms
        )

    def __sub__(self, other):
        if not isinstance(other, PiecewiseExpFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, PiecewiseExpFunction):
            return NotImplemented
        c = complex(scalar)
        return PiecewiseExpFunction(
            ExpTerm(c * t.coeff, t.lo, t.hi, t.exponent, t.power) for t in self.terms
        )

    __rmul__ = __mul__

    def conjugate(self) -> "PiecewiseExpFunction":
        """Complex conjugate (x stays real, so only coeff and exponent flip)."""
        return PiecewiseExpFunction(
            ExpTerm(t.coeff.conjugate(), t.lo, t.hi, t.exponent.conjugate(), t.power)
            for t in self.terms
        )

    def restrict(self, lo, hi) -> "PiecewiseExpFunction":
        """Restriction to the interval [lo, hi] (zero outside)."""
        out = []
        for t in self.terms:
            a, b = max(t.lo, lo), min(t.hi, hi)
            if a < b:
                out.append(ExpTerm(t.coeff, a, b, t.exponent, t.power))
        return PiecewiseExpFunction(out)

    # -- transforms --------------------------------------------------------

    def translate(self, y: float) -> "PiecewiseExpFunction":
        """x -> f(x - y)."""
        y = float(y)
        out = []
        for t in self.terms:
            base = t.coeff * cmath.exp(-t.exponent * y)
            # (x - y)**k expands into monomials in x
            for j in range(t.power + 1):
                c = base * math.comb(t.power, j) * (-y) ** (t.power - j)
                out.append(ExpTerm(c, t.lo + y, t.hi + y, t.exponent, j))
        return PiecewiseExpFunction(out)

    def scale(self, a: float) -> "PiecewiseExpFunction":
        """Unitary scaling x -> sqrt(a) * f(a*x) for a > 0."""
        a = float(a)
        if a <= 0:
            raise ValueError("scaling factor must be positive")
        root = math.sqrt(a)
        return PiecewiseExpFunction(
            ExpTerm(root * t.coeff * a**t.power, t.lo / a, t.hi / a,
                    a * t.exponent, t.power)
            for t in self.terms
        )

    def dilate(self) -> "PiecewiseExpFunction":
        """The dyadic dilation x -> sqrt(2) * f(2x)."""
        return self.scale(2.0)

    def modulate(self, t: float) -> "PiecewiseExpFunction":
        """x -> exp(-i*t*x) * f(x); shifts every exponent by -i*t."""
        shift = -1j * float(t)
        return PiecewiseExpFunction(
            ExpTerm(term.coeff, term.lo, term.hi, term.exponent + shift, term.power)
            for term in self.terms
        )

    def derivative(self, jump_ok_at: tuple[float, ...] = ()) -> "PiecewiseExpFunction":
        """Piecewise derivative; rejects functions with jumps.

        Jumps at the points listed in ``jump_ok_at`` are tolerated (model
        maximal domains allow a jump at the interaction point); everywhere
        else the one-sided limits must agree to within JUMP_TOL, otherwise
        the symbolic piecewise derivative would not be the weak derivative.
        """
        for b in self.breakpoints():
            if any(b == ok for ok in jump_ok_at):
                continue
            jump = self.limit(b, "+") - self.limit(b, "-")
            if abs(jump) > JUMP_TOL:
                raise ValueError(
                    f"function has a jump of {abs(jump):.3e} at x={b}; "
                    "piecewise derivative rejected"
                )
        out = []
        for t in self.terms:
            if t.power > 0:
                out.append(ExpTerm(t.coeff * t.power, t.lo, t.hi, t.exponent,
                                   t.power - 1))
            if t.exponent != 0:
                out.append(ExpTerm(t.coeff * t.exponent, t.lo, t.hi, t.exponent,
                                   t.power))
        return PiecewiseExpFunction(out)

    # -- pointwise structure -----------------------------------------------

    def breakpoints(self) -> tuple[float, ...]:
        """Sorted finite interval endpoints appearing in any term."""
        pts = set()
        for t in self.terms:
            if t.lo != NEG_INF:
                pts.add(t.lo)
            if t.hi != POS_INF:
                pts.add(t.hi)
        return tuple(sorted(pts))

    def limit(self, x0: float, side: str) -> complex:
        """One-sided limit at x0; side is '+' or '-'."""
        if side not in ("+", "-"):
            raise ValueError("side must be '+' or '-'")
        val = 0j
        for t in self.terms:
            if side == "-":
                active = t.lo < x0 <= t.hi
            else:
                active = t.lo <= x0 < t.hi
            if active:
                val += t.coeff * x0**t.power * cmath.exp(t.exponent * x0)
        return val

    def eval_at(self, x) -> np.ndarray:
        """Pointwise values on an array of interior points (endpoints have
        measure zero and are attributed to neither side)."""
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        for t in self.terms:
            mask = (x > t.lo) & (x < t.hi)
            if mask.any():
                xm = x[mask]
                out[mask] += t.coeff * xm**t.power * np.exp(t.exponent * xm)
        return out

    def coefficient_norm(self) -> float:
        return max((abs(t.coeff) for t in self.terms), default=0.0)

    def support(self) -> tuple[float, float]:
        if not self.terms:
            return (0.0, 0.0)
        return (min(t.lo for t in self.terms), max(t.hi for t in self.terms))

    # -- serialization -----------------------------------------------------

    def to_json_obj(self) -> list[dict]:
        def enc(v):
            if v == NEG_INF:
                return "-inf"
            if v == POS_INF:
                return "+inf"
            return v

        out = []
        for t in self.terms:
            d = {
                "coeff_re": t.coeff.real,
                "coeff_im": t.coeff.imag,
                "lo": enc(t.lo),
                "hi": enc(t.hi),
                "exp_re": t.exponent.real,
                "exp_im": t.exponent.imag,
            }
            if t.power:
                d["power"] = t.power
            out.append(d)
        return out

    @classmethod
    def from_json_obj(cls, obj) -> "PiecewiseExpFunction":
        def dec(v):
            if v == "-inf":
                return NEG_INF
            if v == "+inf":
                return POS_INF
            return float(v)

        return cls(
            ExpTerm(
                complex(d["coeff_re"], d["coeff_im"]),
                dec(d["lo"]),
                dec(d["hi"]),
                complex(d["exp_re"], d["exp_im"]),
                int(d.get("power", 0)),
            )
            for d in obj
        )


@dataclass(frozen=True)
class BoundaryValues:
    """One-sided limits of a function at the origin."""

    at0minus: complex
    at0plus: complex


def boundary_values(f: PiecewiseExpFunction) -> BoundaryValues:
    """One-sided limits f(0-) and f(0+); a jump at 0 is allowed."""
    return BoundaryValues(f.limit(0.0, "-"), f.limit(0.0, "+"))


# ---------------------------------------------------------------------------
# closed-form integration
# ---------------------------------------------------------------------------


def _antiderivative_coeffs(k: int, u: complex) -> list[complex]:
    # antiderivative of x**k * exp(u*x) is exp(u*x) * sum_j c[j] * x**(k-j)
    coeffs = []
    c = 1.0 / u
    fall = 1.0
    for j in range(k + 1):
        coeffs.append((-1) ** j * fall * c)
        fall *= k - j
        c /= u
    return coeffs


def _poly_exp_integral(k: int, u: complex, a: float, b: float) -> complex:
    """Integral of x**k * exp(u*x) over [a, b] in closed form.

    A degenerate exponent (|u| below DEGENERATE_EXPONENT_TOL) is treated as
    exactly zero, which avoids catastrophic cancellation; that case can only
    arise on a finite interval for square-integrable terms.
    """
    if abs(u) < DEGENERATE_EXPONENT_TOL:
        if a == NEG_INF or b == POS_INF:
            raise ValueError("divergent integral: zero exponent on infinite interval")
        return (b ** (k + 1) - a ** (k + 1)) / (k + 1)

    coeffs = _antiderivative_coeffs(k, u)

    def F(x: float) -> complex:
        p = 0j
        for j, c in enumerate(coeffs):
            p += c * x ** (k - j)
        return cmath.exp(u * x) * p

    if b == POS_INF:
        if u.real >= 0:
            raise ValueError("divergent integral at +inf")
        vb = 0j
    else:
        vb = F(b)
    if a == NEG_INF:
        if u.real <= 0:
            raise ValueError("divergent integral at -inf")
        va = 0j
    else:
        va = F(a)
    return vb - va


def inner(f: PiecewiseExpFunction, g: PiecewiseExpFunction) -> complex:
    """L2 inner product, linear in f and conjugate linear in g, closed form."""
    total = 0j
    for tf in f.terms:
        for tg in g.terms:
            lo = max(tf.lo, tg.lo)
            hi = min(tf.hi, tg.hi)
            if lo >= hi:
                continue
            u = tf.exponent + tg.exponent.conjugate()
            total += (
                tf.coeff
                * tg.coeff.conjugate()
                * _poly_exp_integral(tf.power + tg.power, u, lo, hi)
            )
    return total


def norm(f: PiecewiseExpFunction) -> float:
    return math.sqrt(max(inner(f, f).real, 0.0))


def approx_equal(f: PiecewiseExpFunction, g: PiecewiseExpFunction,
                 tol: float = COEFF_TOL) -> bool:
    """Term-level equality up to coefficient tolerance after merging."""
    return coefficient_distance(f, g) <= tol


def coefficient_distance(f: PiecewiseExpFunction, g: PiecewiseExpFunction) -> float:
    """Largest merged-coefficient magnitude of f - g (term-level distance)."""
    return (f - g).coefficient_norm()


# ---------------------------------------------------------------------------
# quadrature oracle
# ---------------------------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(32)
_PANEL_WIDTH = 0.5
_MAX_PANELS = 40000


def _tail_cutoff(f: PiecewiseExpFunction, g: PiecewiseExpFunction,
                 start: float, direction: int) -> float:
    """Point beyond which the integrand envelope stays below TAIL_CUTOFF."""

    def envelope(func, x):
        total = 0.0
        for t in func.terms:
            if (direction > 0 and t.hi == POS_INF) or (direction < 0 and t.lo == NEG_INF):
                total += abs(t.coeff) * abs(x) ** t.power * math.exp(t.exponent.real * x)
        return total

    x = start + direction
    for _ in range(200):
        if envelope(f, x) * envelope(g, x) < TAIL_CUTOFF:
            return x
        x += direction * max(abs(x), 1.0)
    raise QuadratureBudgetError("integrand tail does not decay below cutoff")


def inner_quadrature(f: PiecewiseExpFunction, g: PiecewiseExpFunction,
                     rel_tol: float = 1e-10) -> complex:
    """Inner product by composite 32-point Gauss-Legendre panels.

    Independent of the closed form: panels are laid between the breakpoints
    of f and g (width at most 0.5) with infinite tails truncated where the
    integrand envelope falls below 1e-16.  The value is accepted only if a
    refined pass with half-width panels agrees to rel_tol; otherwise
    QuadratureBudgetError is raised (non-convergence, not a wrong value).
    """
    if not rel_tol > 0:
        raise ValueError("rel_tol must be positive")
    if f.is_zero or g.is_zero:
        return 0j

    flo, fhi = f.support()
    glo, ghi = g.support()
    lo, hi = max(flo, glo), min(fhi, ghi)
    if lo >= hi:
        return 0j

    cuts = sorted({b for b in f.breakpoints() + g.breakpoints() if lo < b < hi})
    left = _tail_cutoff(f, g, min(cuts, default=0.0), -1) if lo == NEG_INF else lo
    right = _tail_cutoff(f, g, max(cuts, default=0.0), +1) if hi == POS_INF else hi
    edges = [left, *cuts, right]

    def integrate(panel_width: float) -> complex:
        total = 0j
        n_panels = 0
        for a, b in zip(edges[:-1], edges[1:]):
            count = max(1, math.ceil((b - a) / panel_width))
            n_panels += count
            if n_panels > _MAX_PANELS:
                raise QuadratureBudgetError("panel budget exceeded")
            bounds = np.linspace(a, b, count + 1)
            half = (bounds[1:] - bounds[:-1])[:, None] / 2
            mid = (bounds[1:] + bounds[:-1])[:, None] / 2
            x = (mid + half * _GL_NODES).ravel()
            w = (half * _GL_WEIGHTS).ravel()
            vals = f.eval_at(x) * np.conj(g.eval_at(x))
            total += np.dot(w, vals)
        return total

    coarse = integrate(_PANEL_WIDTH)
    fine = integrate(_PANEL_WIDTH / 2)
    if abs(fine - coarse) > rel_tol * (1 + abs(fine)):
        raise QuadratureBudgetError(
            f"quadrature did not converge: coarse={coarse}, fine={fine}"
        )
    return fine


# ---------------------------------------------------------------------------
# transforms and the free resolvent
# ---------------------------------------------------------------------------


def transform(f: PiecewiseExpFunction, kind: str, **params) -> PiecewiseExpFunction:
    """Dispatching front end for the unitary transforms and the derivative.

    kind is one of 'translate' (param y), 'dilate', 'modulate' (param t),
    'derivative'; unexpected parameters are rejected.
    """
    try:
        method = {"translate": f.translate, "dilate": f.dilate,
                  "modulate": f.modulate, "derivative": f.derivative}[kind]
    except KeyError:
        raise ValueError(f"unknown transform kind {kind!r}") from None
    return method(**params)


def free_resolvent(z: complex, gamma: PiecewiseExpFunction) -> PiecewiseExpFunction:
    """Resolvent of the free momentum operator applied to gamma.

    Returns g = (i d/dx - z)^(-1) gamma for non-real z, computed per term:

        Im z > 0:  g(x) =  i exp(-izx) * integral_x^inf  exp(iz t) gamma(t) dt
        Im z < 0:  g(x) = -i exp(-izx) * integral_-inf^x exp(iz t) gamma(t) dt

    The result is again piecewise exponential; a resonant term (input
    exponent equal to -iz on a finite interval) raises the monomial power by
    one instead of leaving the algebra.
    """
    z = complex(z)
    if z.imag == 0:
        raise ValueError("resolvent requires non-real z")
    upper = z.imag > 0
    ez = -1j * z  # exponent of the homogeneous solution exp(-izx)
    out: list[ExpTerm] = []

    for t in gamma.terms:
        u = 1j * z + t.exponent
        k = t.power
        resonant = abs(u) < DEGENERATE_EXPONENT_TOL
        # antiderivative G of tau**k * exp(u*tau); in the resonant branch
        # the exponent is snapped to the input's so cancellations against
        # gamma stay exact at the term level
        if resonant:
            def G(x):
                return x ** (k + 1) / (k + 1)
        else:
            coeffs = _antiderivative_coeffs(k, u)

            def G(x, coeffs=coeffs, u=u, k=k):
                p = 0j
                for j, c in enumerate(coeffs):
                    p += c * x ** (k - j)
                return cmath.exp(u * x) * p

        if upper:
            # Re u < 0 is guaranteed at an infinite right end
            Gb = 0j if t.hi == POS_INF else G(t.hi)
            # left of the support: a pure multiple of exp(-izx)
            if t.lo != NEG_INF:
                c = 1j * t.coeff * (Gb - G(t.lo))
                if c != 0:
                    out.append(ExpTerm(c, NEG_INF, t.lo, ez))
            # on the support: a homogeneous part plus the particular part
            homogeneous = 1j * t.coeff * Gb
            sign = -1j * t.coeff
        else:
            # Re u > 0 is guaranteed at an infinite left end
            Ga = 0j if t.lo == NEG_INF else G(t.lo)
            if t.hi != POS_INF:
                c = -1j * t.coeff * (G(t.hi) - Ga)
                if c != 0:
                    out.append(ExpTerm(c, t.hi, POS_INF, ez))
            homogeneous = 1j * t.coeff * Ga
            sign = -1j * t.coeff

        if resonant:
            if homogeneous != 0:
                out.append(ExpTerm(homogeneous, t.lo, t.hi, t.exponent))
            out.append(ExpTerm(sign / (k + 1), t.lo, t.hi, t.exponent, k + 1))
        else:
            if homogeneous != 0:
                out.append(ExpTerm(homogeneous, t.lo, t.hi, ez))
            for j, c in enumerate(coeffs):
                out.append(ExpTerm(sign * c, t.lo, t.hi, t.exponent, k - j))

    return PiecewiseExpFunction(out)


def resolvent_residual(z: complex, gamma: PiecewiseExpFunction,
                       g: PiecewiseExpFunction) -> float:
    """Coefficient-level residual of (i d/dx - z) g - gamma on open pieces."""
    lhs = 1j * g.derivative() - complex(z) * g
    return coefficient_distance(lhs, gamma)
