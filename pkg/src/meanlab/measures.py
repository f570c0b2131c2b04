"""Probability measures on the real line with exact window arithmetic.

The central objects are window masses P([lo, hi]) and window first moments
int_{[lo, hi]} x dP.  Three representations are supported:

* ``AtomicComb``: a lazily enumerated sequence of weighted point masses with
  a certified bound on the mass beyond any enumeration prefix.  Window
  quantities are exact up to float rounding.
* ``DensityMeasure``: an absolutely continuous measure.  Built-in families
  carry closed-form antiderivatives; anything else falls back to adaptive
  quadrature with an absolute tolerance.
* ``EmpiricalMeasure``: equal-weight point masses on a finite sample.

Affine wrappers (shift, positive scale, negation) compose with any of the
above and push windows through the inverse map, so wrapped measures keep the
exactness of the wrapped representation.

All windows are closed intervals by default.  Endpoint-inclusion flags exist
because half-open windows are needed when splitting a window at a point that
carries an atom; they change nothing for continuous measures.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate, special

__all__ = [
    "Atom",
    "AtomicComb",
    "DensityMeasure",
    "EmpiricalMeasure",
    "Measure",
    "MeasureError",
    "QuadratureError",
    "QuadraturePolicy",
    "MASS_TOL",
    "window_mass",
    "window_first_moment",
    "normalize_comb",
    "make_measure",
    "measure_from_document",
    "measure_document",
    "finite_comb",
    "gaussian",
    "cauchy",
    "power_tail",
    "comb_ex1",
    "comb_ex2",
    "comb_ex4",
    "comb_ex5",
    "integer_power_comb",
    "COMB_FAMILIES",
    "DENSITY_FAMILIES",
]

MASS_TOL = 1e-9

# Hard cap on atom enumeration; combs needing more must supply closed forms.
_MAX_ATOMS = 200_000


class MeasureError(ValueError):
    """Invalid measure construction or an unsupported window request."""


class QuadratureError(MeasureError):
    """Quadrature failed to reach tolerance; carries the partial estimate."""

    def __init__(self, message: str, estimate: float, error_estimate: float):
        super().__init__(message)
        self.estimate = estimate
        self.error_estimate = error_estimate


@dataclass(frozen=True)
class Atom:
    """A point mass: ``weight`` at ``location``."""

    location: float
    weight: float

    def __post_init__(self):
        if not math.isfinite(self.location):
            raise MeasureError(f"atom location must be finite, got {self.location}")
        if not (self.weight > 0.0):
            raise MeasureError(f"atom weight must be positive, got {self.weight}")


@dataclass(frozen=True)
class QuadraturePolicy:
    """Absolute-tolerance budget for adaptive quadrature."""

    abs_tol: float = 1e-10
    max_subdivisions: int = 10_000


def _in_window(x: float, lo: float, hi: float, include_lo: bool, include_hi: bool) -> bool:
    if x < lo or x > hi:
        return False
    if x == lo and not include_lo:
        return False
    if x == hi and not include_hi:
        return False
    return True


class Measure:
    """Common interface for all measure representations."""

    is_atomic = False

    def mass(self, lo: float, hi: float, *, include_lo: bool = True,
             include_hi: bool = True) -> float:
        raise NotImplementedError

    def first_moment(self, lo: float, hi: float, *, include_lo: bool = True,
                     include_hi: bool = True) -> float:
        raise NotImplementedError

    def tail_probability(self, t: float) -> float:
        """P(|X| > t); default is 1 - P([-t, t])."""
        if t < 0:
            return 1.0
        return max(0.0, 1.0 - self.mass(-t, t))

    def atoms_within(self, max_abs: float, max_atoms: int = _MAX_ATOMS) -> list[Atom]:
        """Atoms with |location| <= max_abs; empty for continuous measures."""
        return []

    # Affine combinators (precomposition with the inverse map).

    def shift(self, a: float) -> "Measure":
        return Shifted(self, float(a))

    def scale(self, factor: float) -> "Measure":
        if factor == 0.0 or not math.isfinite(factor):
            raise MeasureError(f"scale factor must be finite and nonzero, got {factor}")
        if factor < 0:
            return Negated(Scaled(self, -factor))
        return Scaled(self, float(factor))

    def negate(self) -> "Measure":
        return Negated(self)


# ---------------------------------------------------------------------------
# Atomic combs
# ---------------------------------------------------------------------------

class AtomicComb(Measure):
    """Purely atomic measure enumerated in blocks with a certified tail bound.

    ``block(n)`` returns the atoms of block n >= 1 (typically one positive
    and one negative atom).  ``tail_mass_bound(n)`` bounds the total weight
    of all blocks with index > n and must be nonincreasing.
    ``location_floor(n)`` is a lower bound on |location| over all atoms in
    blocks with index > n and must be nondecreasing; it is what lets window
    enumeration stop once every remaining atom lies outside the window.

    Optional closed-form ``closed_mass``/``closed_moment`` callables
    (signature ``(lo, hi, include_lo, include_hi)``) take precedence over
    enumeration; dense combs such as the integer power comb rely on them.
    """

    is_atomic = True

    def __init__(
        self,
        family: str,
        block: Callable[[int], tuple[Atom, ...]],
        tail_mass_bound: Callable[[int], float],
        location_floor: Callable[[int], float],
        *,
        tail_probability_fn: Optional[Callable[[float], float]] = None,
        closed_mass: Optional[Callable[[float, float, bool, bool], float]] = None,
        closed_moment: Optional[Callable[[float, float, bool, bool], float]] = None,
        mass_tol: float = MASS_TOL,
        validate: bool = True,
    ):
        self.family = family
        self._block = block
        self.tail_mass_bound = tail_mass_bound
        self.location_floor = location_floor
        self._tail_probability_fn = tail_probability_fn
        self._closed_mass = closed_mass
        self._closed_moment = closed_moment
        self.mass_tol = mass_tol
        self._atoms: list[Atom] = []
        self._blocks_done = 0
        self._lock = threading.Lock()
        if validate:
            self._validate_total_mass()

    def _validate_total_mass(self) -> None:
        n, total = 0, 0.0
        while self.tail_mass_bound(n) >= self.mass_tol / 2:
            n += 1
            block = self._block(n)
            total += sum(a.weight for a in block)
            if n > _MAX_ATOMS:
                raise MeasureError(
                    f"{self.family}: tail bound never fell below mass_tol/2")
        bound = self.tail_mass_bound(n)
        if abs(total + bound / 2 - 1.0) > self.mass_tol:
            raise MeasureError(
                f"{self.family}: total mass {total + bound / 2:.12g} != 1 "
                f"within {self.mass_tol:g}")

    def _ensure_blocks(self, max_abs: float, max_atoms: int = _MAX_ATOMS) -> list[Atom]:
        """Extend the cached enumeration until it certifiably covers
        [-max_abs, max_abs]: every non-enumerated atom has |z| > max_abs and
        the non-enumerated mass is below mass_tol/2."""
        with self._lock:
            while True:
                floor = self.location_floor(self._blocks_done)
                bound = self.tail_mass_bound(self._blocks_done)
                # An infinite floor means no atoms remain at any distance.
                if (math.isinf(floor) or floor > max_abs) and bound < self.mass_tol / 2:
                    break
                self._blocks_done += 1
                self._atoms.extend(self._block(self._blocks_done))
                if len(self._atoms) > max_atoms:
                    raise MeasureError(
                        f"{self.family}: window needs more than {max_atoms} atoms; "
                        "supply closed forms for this family")
            return list(self._atoms)

    def atoms_within(self, max_abs: float, max_atoms: int = _MAX_ATOMS) -> list[Atom]:
        atoms = self._ensure_blocks(max_abs, max_atoms)
        return [a for a in atoms if abs(a.location) <= max_abs]

    def _window_sum(self, lo, hi, include_lo, include_hi, moment: bool) -> float:
        if lo > hi:
            raise MeasureError(f"window requires lo <= hi, got [{lo}, {hi}]")
        atoms = self._ensure_blocks(max(abs(lo), abs(hi)))
        total = 0.0
        for a in atoms:
            if _in_window(a.location, lo, hi, include_lo, include_hi):
                total += a.location * a.weight if moment else a.weight
        return total

    def mass(self, lo, hi, *, include_lo=True, include_hi=True) -> float:
        if self._closed_mass is not None:
            if lo > hi:
                raise MeasureError(f"window requires lo <= hi, got [{lo}, {hi}]")
            return self._closed_mass(lo, hi, include_lo, include_hi)
        return self._window_sum(lo, hi, include_lo, include_hi, moment=False)

    def first_moment(self, lo, hi, *, include_lo=True, include_hi=True) -> float:
        if self._closed_moment is not None:
            if lo > hi:
                raise MeasureError(f"window requires lo <= hi, got [{lo}, {hi}]")
            return self._closed_moment(lo, hi, include_lo, include_hi)
        return self._window_sum(lo, hi, include_lo, include_hi, moment=True)

    def tail_probability(self, t: float) -> float:
        if self._tail_probability_fn is not None:
            return self._tail_probability_fn(t)
        return super().tail_probability(t)


def finite_comb(atoms: Sequence[Atom], family: str = "finite",
                validate: bool = True) -> AtomicComb:
    """Comb with a fixed finite list of atoms (tail mass is exactly zero)."""
    atoms = list(atoms)
    if not atoms:
        raise MeasureError("finite comb needs at least one atom")
    max_loc = max(abs(a.location) for a in atoms)

    def block(n: int) -> tuple[Atom, ...]:
        return tuple(atoms) if n == 1 else ()

    return AtomicComb(
        family,
        block,
        tail_mass_bound=lambda n: 0.0 if n >= 1 else 1.0,
        location_floor=lambda n: math.inf if n >= 1 else max_loc,
        validate=validate,
    )


# ---------------------------------------------------------------------------
# Built-in comb families
# ---------------------------------------------------------------------------

def comb_ex1() -> AtomicComb:
    """Alternating dyadic comb: weight 2^-2n at 2^2n and 2^-(2n-1) at -2^(2n-1).

    Every atom contributes exactly +1 or -1 to a window first moment, so the
    centered partial means take only the values 0 and -1.
    """

    def block(n: int) -> tuple[Atom, ...]:
        return (
            Atom(2.0 ** (2 * n), 2.0 ** (-2 * n)),
            Atom(-(2.0 ** (2 * n - 1)), 2.0 ** (-(2 * n - 1))),
        )

    return AtomicComb(
        "comb_ex1",
        block,
        tail_mass_bound=lambda n: 4.0 ** (-n),
        location_floor=lambda n: 2.0 ** (2 * n + 1),
    )


def comb_ex2() -> AtomicComb:
    """Symmetric dyadic comb: weight 2^-(n+1) at both +2^n and -2^n."""

    def block(n: int) -> tuple[Atom, ...]:
        w = 2.0 ** (-(n + 1))
        return (Atom(2.0 ** n, w), Atom(-(2.0 ** n), w))

    return AtomicComb(
        "comb_ex2",
        block,
        tail_mass_bound=lambda n: 2.0 ** (-n),
        location_floor=lambda n: 2.0 ** (n + 1),
    )


def comb_ex4() -> AtomicComb:
    """Lopsided triadic comb with the heavier weight on the positive side.

    The raw coefficients 2^(n-1)/3^(n+1) at +3^n and 2^(n-2)/3^(n+1) at -3^n
    sum to exactly 1/2, so construction doubles them to obtain a probability
    measure (see ``normalize_comb``).
    """

    def block(n: int) -> tuple[Atom, ...]:
        return (
            Atom(3.0 ** n, 2.0 ** n / 3.0 ** (n + 1)),
            Atom(-(3.0 ** n), 2.0 ** (n - 1) / 3.0 ** (n + 1)),
        )

    return AtomicComb(
        "comb_ex4",
        block,
        tail_mass_bound=lambda n: (2.0 / 3.0) ** n,
        location_floor=lambda n: 3.0 ** (n + 1),
    )


def _comb_ex5_normalizer() -> float:
    # Partial sums of the raw weights plus half the geometric remainder
    # bound; terms decay like (2/3)^n so n = 220 leaves a negligible tail.
    raw = 0.0
    for n in range(1, 221):
        raw += 2.0 ** n / (3.0 ** n + 1.0 / n) + 2.0 ** (n - 1) / 3.0 ** n
    remainder = 3.0 * (2.0 / 3.0) ** 220  # sum of both strands past n = 220
    return 1.0 / (raw + remainder / 2.0)


def comb_ex5() -> AtomicComb:
    """Triadic comb with positive atoms displaced to 3^n + 1/n.

    The normalizer K is computed at construction from the raw weight sum
    (K is about 0.3564, strictly between 1/3 and 1/2).
    """
    K = _comb_ex5_normalizer()

    def block(n: int) -> tuple[Atom, ...]:
        zp = 3.0 ** n + 1.0 / n
        return (Atom(zp, K * 2.0 ** n / zp), Atom(-(3.0 ** n), K * 2.0 ** (n - 1) / 3.0 ** n))

    comb = AtomicComb(
        "comb_ex5",
        block,
        tail_mass_bound=lambda n: 3.0 * K * (2.0 / 3.0) ** n,
        location_floor=lambda n: 3.0 ** (n + 1),
    )
    comb.normalizer = K
    if not (0.0 < K < 0.5):
        raise MeasureError(f"comb_ex5 normalizer {K} outside (0, 1/2)")
    return comb


def integer_power_comb(p: float) -> AtomicComb:
    """Atoms at every positive integer n with weight n^-p / zeta(p), p > 1.

    Dense in the integers, so window aggregates use Hurwitz zeta closed
    forms instead of enumeration:  sum_{n=a}^{b} n^-s =
    zeta(s, a) - zeta(s, b + 1).
    """
    if not p > 1.0:
        raise MeasureError(f"integer power comb needs p > 1, got {p}")
    z = float(special.zeta(p))

    def _int_range(lo, hi, include_lo, include_hi):
        a = math.ceil(lo)
        if a == lo and not include_lo:
            a += 1
        b = math.floor(hi)
        if b == hi and not include_hi:
            b -= 1
        return max(a, 1), b

    def _partial(s: float, a: int, b: int) -> float:
        if b < a:
            return 0.0
        return float(special.zeta(s, a) - special.zeta(s, b + 1))

    def closed_mass(lo, hi, include_lo, include_hi):
        a, b = _int_range(lo, hi, include_lo, include_hi)
        return _partial(p, a, b) / z

    def closed_moment(lo, hi, include_lo, include_hi):
        a, b = _int_range(lo, hi, include_lo, include_hi)
        return _partial(p - 1.0, a, b) / z

    def tail_probability(t: float) -> float:
        n0 = math.floor(max(t, 0.0)) + 1
        return float(special.zeta(p, n0)) / z

    def block(n: int) -> tuple[Atom, ...]:
        return (Atom(float(n), float(n) ** (-p) / z),)

    return AtomicComb(
        f"integer_power(p={p:g})",
        block,
        tail_mass_bound=lambda n: (max(n, 1) ** (1.0 - p) / (p - 1.0)) / z,
        location_floor=lambda n: float(n + 1),
        tail_probability_fn=tail_probability,
        closed_mass=closed_mass,
        closed_moment=closed_moment,
        validate=False,  # closed forms make the unit total exact by construction
    )


def normalize_comb(family: str, **params) -> AtomicComb:
    """Construct a built-in comb, normalizing its raw weights to total mass 1.

    comb_ex1 and comb_ex2 are already normalized.  comb_ex4's raw weights sum
    to 1/2 and are doubled.  comb_ex5's normalizer K is computed numerically
    from partial sums with a geometric remainder bound.
    """
    if family not in COMB_FAMILIES:
        raise MeasureError(f"unknown comb family {family!r}")
    return COMB_FAMILIES[family](**params)


# ---------------------------------------------------------------------------
# Density measures
# ---------------------------------------------------------------------------

class DensityMeasure(Measure):
    """Absolutely continuous measure given by a density.

    Closed-form window callables, when present, bypass quadrature entirely:
    ``mass_between(a, b)`` is the CDF difference and ``moment_between(a, b)``
    integrates x * pdf(x) over [a, b].  For plain densities with infinite
    support, a ``density_tail_bound(t)`` upper bound on the mass outside
    [-t, t] certifies truncation of improper windows.
    """

    def __init__(
        self,
        family: str,
        pdf: Callable[[float], float],
        support: tuple[float, float] = (-math.inf, math.inf),
        *,
        mass_between: Optional[Callable[[float, float], float]] = None,
        moment_between: Optional[Callable[[float, float], float]] = None,
        tail_probability_fn: Optional[Callable[[float], float]] = None,
        density_tail_bound: Optional[Callable[[float], float]] = None,
        quadrature: QuadraturePolicy = QuadraturePolicy(),
        validate: bool = True,
    ):
        self.family = family
        self.pdf = pdf
        self.support = (float(support[0]), float(support[1]))
        self._mass_between = mass_between
        self._moment_between = moment_between
        self._tail_probability_fn = tail_probability_fn
        self._density_tail_bound = density_tail_bound
        self.quadrature = quadrature
        if validate and mass_between is None:
            total = self.mass(*self.support)
            if abs(total - 1.0) > max(MASS_TOL, 100 * quadrature.abs_tol):
                raise MeasureError(f"{family}: density integrates to {total}, not 1")

    def _quad(self, f: Callable[[float], float], a: float, b: float) -> float:
        pol = self.quadrature
        out = integrate.quad(f, a, b, epsabs=pol.abs_tol, epsrel=1e-12,
                             limit=pol.max_subdivisions, full_output=True)
        value, abserr = out[0], out[1]
        if len(out) > 3 or abserr > max(100 * pol.abs_tol, 1e-8 * abs(value)):
            raise QuadratureError(
                f"{self.family}: quadrature on [{a:g}, {b:g}] did not converge "
                f"(estimate {value:.6g}, error estimate {abserr:.3g})",
                estimate=value, error_estimate=abserr)
        return value

    def _clip(self, lo: float, hi: float) -> tuple[float, float]:
        lo = max(lo, self.support[0])
        hi = min(hi, self.support[1])
        return lo, hi

    def _truncate_improper(self, lo: float, hi: float) -> tuple[float, float]:
        if math.isfinite(lo) and math.isfinite(hi):
            return lo, hi
        if self._density_tail_bound is None:
            return lo, hi  # scipy handles the improper range directly
        # Find t with certified outside-mass below half the tolerance.
        t = 1.0
        while self._density_tail_bound(t) >= self.quadrature.abs_tol / 2:
            t *= 2.0
            if t > 1e300:
                raise MeasureError(f"{self.family}: tail bound never certified truncation")
        return max(lo, -t), min(hi, t)

    def mass(self, lo, hi, *, include_lo=True, include_hi=True) -> float:
        if lo > hi:
            raise MeasureError(f"window requires lo <= hi, got [{lo}, {hi}]")
        lo, hi = self._clip(lo, hi)
        if lo >= hi:
            return 0.0
        if self._mass_between is not None:
            return self._mass_between(lo, hi)
        lo, hi = self._truncate_improper(lo, hi)
        return self._quad(self.pdf, lo, hi)

    def first_moment(self, lo, hi, *, include_lo=True, include_hi=True) -> float:
        if lo > hi:
            raise MeasureError(f"window requires lo <= hi, got [{lo}, {hi}]")
        lo, hi = self._clip(lo, hi)
        if lo >= hi:
            return 0.0
        if self._moment_between is not None:
            return self._moment_between(lo, hi)
        lo, hi = self._truncate_improper(lo, hi)
        if lo < 0.0 < hi:
            # Integrate the halves separately so symmetric windows cancel
            # bitwise rather than through quadrature error.
            return (self._quad(lambda x: x * self.pdf(x), lo, 0.0)
                    + self._quad(lambda x: x * self.pdf(x), 0.0, hi))
        return self._quad(lambda x: x * self.pdf(x), lo, hi)

    def tail_probability(self, t: float) -> float:
        if self._tail_probability_fn is not None:
            return self._tail_probability_fn(t)
        return super().tail_probability(t)


def gaussian(mu: float = 0.0, sigma: float = 1.0) -> DensityMeasure:
    """Normal distribution with closed-form window mass and moment."""
    if not sigma > 0:
        raise MeasureError(f"gaussian needs sigma > 0, got {sigma}")
    mu, sigma = float(mu), float(sigma)

    def pdf(x: float) -> float:
        z = (x - mu) / sigma
        return math.exp(-0.5 * z * z) / (sigma * math.sqrt(2 * math.pi))

    def _phi(z: float) -> float:
        return math.exp(-0.5 * z * z) / math.sqrt(2 * math.pi)

    def mass_between(a: float, b: float) -> float:
        za, zb = (a - mu) / sigma, (b - mu) / sigma
        return float(special.ndtr(zb) - special.ndtr(za))

    def moment_between(a: float, b: float) -> float:
        za, zb = (a - mu) / sigma, (b - mu) / sigma
        return mu * mass_between(a, b) - sigma * (_phi(zb) - _phi(za))

    def tail_probability(t: float) -> float:
        if t < 0:
            return 1.0
        return float(special.ndtr(-(t - mu) / sigma) + special.ndtr(-(t + mu) / sigma))

    m = DensityMeasure("gaussian", pdf,
                       mass_between=mass_between,
                       moment_between=moment_between,
                       tail_probability_fn=tail_probability,
                       validate=False)
    m.mu, m.sigma = mu, sigma
    return m


def cauchy(loc: float = 0.0, scale: float = 1.0) -> DensityMeasure:
    """Cauchy distribution with closed-form window mass and moment."""
    if not scale > 0:
        raise MeasureError(f"cauchy needs scale > 0, got {scale}")
    loc, scale = float(loc), float(scale)

    def pdf(x: float) -> float:
        u = (x - loc) / scale
        return 1.0 / (math.pi * scale * (1.0 + u * u))

    def cdf(x: float) -> float:
        return 0.5 + math.atan((x - loc) / scale) / math.pi

    def _log1p_sq(u: float) -> float:
        # log(1 + u^2), stable for huge |u|
        au = abs(u)
        if au > 1.0:
            return 2.0 * math.log(au) + math.log1p(au ** -2)
        return math.log1p(u * u)

    def mass_between(a: float, b: float) -> float:
        return cdf(b) - cdf(a)

    def moment_between(a: float, b: float) -> float:
        ua, ub = (a - loc) / scale, (b - loc) / scale
        even = (scale / (2 * math.pi)) * (_log1p_sq(ub) - _log1p_sq(ua))
        return loc * mass_between(a, b) + even

    def tail_probability(t: float) -> float:
        if t < 0:
            return 1.0
        # P(X > t) + P(X < -t) via atan of reciprocals for precision at large t.
        up, un = (t - loc) / scale, (t + loc) / scale
        def upper(u):
            return 0.5 - math.atan(u) / math.pi if u <= 1 else math.atan(1.0 / u) / math.pi
        return upper(up) + upper(un)

    m = DensityMeasure("cauchy", pdf,
                       mass_between=mass_between,
                       moment_between=moment_between,
                       tail_probability_fn=tail_probability,
                       validate=False)
    m.loc, m.gamma = loc, scale  # "scale" would shadow Measure.scale()
    return m


def _power_tail_constant(exponent: float) -> float:
    # Half-line mass of 1/(1 + C x^e) is C^(-1/e) * (pi/e)/sin(pi/e);
    # choose C so that it equals 1/2.
    half_integral = (math.pi / exponent) / math.sin(math.pi / exponent)
    return (2.0 * half_integral) ** exponent


def power_tail(a: float, b: float) -> DensityMeasure:
    """Two-sided power-law density 1/(1 + C x^a) on x >= 0, 1/(1 + D |x|^b)
    on x < 0, with a, b in (1, 2) and C, D fixed so each half carries mass 1/2.

    Window mass and moment reduce to Gauss hypergeometric evaluations:
    int_0^X x^(m-1) / (1 + C x^e) dx = (X^m / m) 2F1(1, m/e; m/e + 1; -C X^e).
    """
    if not (1.0 < a < 2.0 and 1.0 < b < 2.0):
        raise MeasureError(f"power_tail exponents must lie in (1, 2), got a={a}, b={b}")
    a, b = float(a), float(b)
    C, D = _power_tail_constant(a), _power_tail_constant(b)

    def pdf(x: float) -> float:
        if x >= 0:
            return 1.0 / (1.0 + C * x ** a)
        return 1.0 / (1.0 + D * (-x) ** b)

    def _half(m: float, coef: float, e: float, X: float) -> float:
        # int_0^X x^(m-1)/(1 + coef x^e) dx for X >= 0, m in {1, 2}
        if X <= 0.0:
            return 0.0
        log_z = math.log(coef) + e * math.log(X)
        if log_z < 230.0:  # coef * X^e representable; hyp2f1 is accurate here
            z = coef * X ** e
            return (X ** m / m) * float(special.hyp2f1(1.0, m / e, m / e + 1.0, -z))
        # Asymptotic region: 1/(1 + coef x^e) = (coef x^e)^-1 + O(x^-2e).
        if m == 1.0:
            full = coef ** (-1.0 / e) * (math.pi / e) / math.sin(math.pi / e)
            tail = math.exp((1.0 - e) * math.log(X) - math.log(coef)) / (e - 1.0)
            return full - tail
        lead = math.exp((2.0 - e) * math.log(X) - math.log(coef)) / (2.0 - e)
        const = -coef ** (-2.0 / e) * (math.pi / e) / math.sin(math.pi * (2.0 - e) / e)
        return lead + const

    def mass_between(lo: float, hi: float) -> float:
        def F(x: float) -> float:  # signed CDF-like primitive anchored at 0
            if x >= 0:
                return _half(1.0, C, a, x)
            return -_half(1.0, D, b, -x)
        return F(hi) - F(lo)

    def moment_between(lo: float, hi: float) -> float:
        def G(x: float) -> float:  # primitive of t * pdf(t) anchored at 0
            if x >= 0:
                return _half(2.0, C, a, x)
            return _half(2.0, D, b, -x)
        return G(hi) - G(lo)

    def tail_probability(t: float) -> float:
        if t <= 0:
            return 1.0
        return (0.5 - _half(1.0, C, a, t)) + (0.5 - _half(1.0, D, b, t))

    m = DensityMeasure("power_tail", pdf,
                       mass_between=mass_between,
                       moment_between=moment_between,
                       tail_probability_fn=tail_probability,
                       validate=False)
    m.a, m.b, m.C, m.D = a, b, C, D
    return m


# ---------------------------------------------------------------------------
# Empirical measures and affine wrappers
# ---------------------------------------------------------------------------

class EmpiricalMeasure(Measure):
    """Equal-weight point masses on a finite sample."""

    is_atomic = True

    def __init__(self, samples: Sequence[float]):
        arr = np.asarray(samples, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise MeasureError("empirical measure needs a nonempty 1-d sample")
        if not np.all(np.isfinite(arr)):
            raise MeasureError("empirical samples must be finite")
        self.samples = np.sort(arr)
        self.family = "empirical"

    def _slice(self, lo, hi, include_lo, include_hi) -> np.ndarray:
        left = np.searchsorted(self.samples, lo, side="left" if include_lo else "right")
        right = np.searchsorted(self.samples, hi, side="right" if include_hi else "left")
        return self.samples[left:right]

    def mass(self, lo, hi, *, include_lo=True, include_hi=True) -> float:
        if lo > hi:
            raise MeasureError(f"window requires lo <= hi, got [{lo}, {hi}]")
        return self._slice(lo, hi, include_lo, include_hi).size / self.samples.size

    def first_moment(self, lo, hi, *, include_lo=True, include_hi=True) -> float:
        if lo > hi:
            raise MeasureError(f"window requires lo <= hi, got [{lo}, {hi}]")
        sel = self._slice(lo, hi, include_lo, include_hi)
        return float(np.add.reduce(sel)) / self.samples.size

    def atoms_within(self, max_abs: float, max_atoms: int = _MAX_ATOMS) -> list[Atom]:
        w = 1.0 / self.samples.size
        return [Atom(float(x), w) for x in self.samples if abs(x) <= max_abs]


class Shifted(Measure):
    """Law of X + a when ``inner`` is the law of X."""

    def __init__(self, inner: Measure, a: float):
        self.inner = inner
        self.a = float(a)
        self.family = f"shift({getattr(inner, 'family', '?')}, {a:g})"
        if hasattr(inner, "pdf"):
            self.pdf = lambda x: inner.pdf(x - self.a)
            lo, hi = getattr(inner, "support", (-math.inf, math.inf))
            self.support = (lo + self.a, hi + self.a)

    @property
    def is_atomic(self):
        return self.inner.is_atomic

    def mass(self, lo, hi, *, include_lo=True, include_hi=True):
        return self.inner.mass(lo - self.a, hi - self.a,
                               include_lo=include_lo, include_hi=include_hi)

    def first_moment(self, lo, hi, *, include_lo=True, include_hi=True):
        m = self.inner.mass(lo - self.a, hi - self.a,
                            include_lo=include_lo, include_hi=include_hi)
        s = self.inner.first_moment(lo - self.a, hi - self.a,
                                    include_lo=include_lo, include_hi=include_hi)
        return s + self.a * m

    def atoms_within(self, max_abs, max_atoms=_MAX_ATOMS):
        inner_atoms = self.inner.atoms_within(max_abs + abs(self.a), max_atoms)
        return [Atom(a.location + self.a, a.weight) for a in inner_atoms
                if abs(a.location + self.a) <= max_abs]


class Scaled(Measure):
    """Law of s * X for s > 0."""

    def __init__(self, inner: Measure, s: float):
        if not s > 0:
            raise MeasureError(f"Scaled requires a positive factor, got {s}")
        self.inner = inner
        self.s = float(s)
        self.family = f"scale({getattr(inner, 'family', '?')}, {s:g})"
        if hasattr(inner, "pdf"):
            self.pdf = lambda x: inner.pdf(x / self.s) / self.s
            lo, hi = getattr(inner, "support", (-math.inf, math.inf))
            self.support = (lo * self.s, hi * self.s)

    @property
    def is_atomic(self):
        return self.inner.is_atomic

    def mass(self, lo, hi, *, include_lo=True, include_hi=True):
        return self.inner.mass(lo / self.s, hi / self.s,
                               include_lo=include_lo, include_hi=include_hi)

    def first_moment(self, lo, hi, *, include_lo=True, include_hi=True):
        return self.s * self.inner.first_moment(lo / self.s, hi / self.s,
                                                include_lo=include_lo,
                                                include_hi=include_hi)

    def tail_probability(self, t):
        return self.inner.tail_probability(t / self.s)

    def atoms_within(self, max_abs, max_atoms=_MAX_ATOMS):
        inner_atoms = self.inner.atoms_within(max_abs / self.s, max_atoms)
        return [Atom(self.s * a.location, a.weight) for a in inner_atoms]


class Negated(Measure):
    """Law of -X."""

    def __init__(self, inner: Measure):
        self.inner = inner
        self.family = f"negate({getattr(inner, 'family', '?')})"
        if hasattr(inner, "pdf"):
            self.pdf = lambda x: inner.pdf(-x)
            lo, hi = getattr(inner, "support", (-math.inf, math.inf))
            self.support = (-hi, -lo)

    @property
    def is_atomic(self):
        return self.inner.is_atomic

    def mass(self, lo, hi, *, include_lo=True, include_hi=True):
        return self.inner.mass(-hi, -lo, include_lo=include_hi, include_hi=include_lo)

    def first_moment(self, lo, hi, *, include_lo=True, include_hi=True):
        return -self.inner.first_moment(-hi, -lo,
                                        include_lo=include_hi, include_hi=include_lo)

    def tail_probability(self, t):
        return self.inner.tail_probability(t)

    def atoms_within(self, max_abs, max_atoms=_MAX_ATOMS):
        return [Atom(-a.location, a.weight)
                for a in self.inner.atoms_within(max_abs, max_atoms)]


# ---------------------------------------------------------------------------
# Module-level window operations (the public verbs)
# ---------------------------------------------------------------------------

def window_mass(m: Measure, lo: float, hi: float, *, include_lo: bool = True,
                include_hi: bool = True) -> float:
    """P([lo, hi]) with closed-interval semantics; atoms at lo or hi count."""
    return m.mass(lo, hi, include_lo=include_lo, include_hi=include_hi)


def window_first_moment(m: Measure, lo: float, hi: float, *, include_lo: bool = True,
                        include_hi: bool = True) -> float:
    """int_{[lo, hi]} x dP; exact for combs, quadrature-accurate for densities."""
    return m.first_moment(lo, hi, include_lo=include_lo, include_hi=include_hi)


# ---------------------------------------------------------------------------
# Family registry and JSON documents
# ---------------------------------------------------------------------------

COMB_FAMILIES: dict[str, Callable[..., AtomicComb]] = {
    "comb_ex1": comb_ex1,
    "comb_ex2": comb_ex2,
    "comb_ex4": comb_ex4,
    "comb_ex5": comb_ex5,
}

DENSITY_FAMILIES: dict[str, Callable[..., DensityMeasure]] = {
    "gaussian": gaussian,
    "cauchy": cauchy,
    "power_tail": power_tail,
}


def make_measure(family: str, **params) -> Measure:
    """Build a measure from a family name and keyword parameters."""
    if family in COMB_FAMILIES:
        if params:
            raise MeasureError(f"{family} takes no parameters, got {sorted(params)}")
        return COMB_FAMILIES[family]()
    if family in DENSITY_FAMILIES:
        return DENSITY_FAMILIES[family](**params)
    if family == "empirical":
        return EmpiricalMeasure(**params)
    raise MeasureError(f"unknown measure family {family!r}")


_DOC_KEYS = {
    "gaussian": {"mu", "sigma"},
    "cauchy": {"loc", "scale"},
    "power_tail": {"a", "b"},
    "comb_ex1": set(),
    "comb_ex2": set(),
    "comb_ex4": set(),
    "comb_ex5": set(),
    "empirical": {"samples"},
    "shift": {"a", "inner"},
    "scale": {"factor", "inner"},
    "negate": {"inner"},
}


def measure_from_document(doc: dict) -> Measure:
    """Parse a JSON measure object (strict keys; see the CLI documents)."""
    if not isinstance(doc, dict) or "family" not in doc:
        raise MeasureError("measure object must be a dict with a 'family' key")
    family = doc["family"]
    if family not in _DOC_KEYS:
        raise MeasureError(f"unknown measure family {family!r}")
    extra = set(doc) - {"family"} - _DOC_KEYS[family]
    if extra:
        raise MeasureError(f"unknown keys for family {family!r}: {sorted(extra)}")
    params = {k: doc[k] for k in doc if k != "family"}
    if family == "shift":
        return measure_from_document(params.pop("inner")).shift(params.pop("a"))
    if family == "scale":
        return measure_from_document(params.pop("inner")).scale(params.pop("factor"))
    if family == "negate":
        return measure_from_document(params.pop("inner")).negate()
    return make_measure(family, **params)


def measure_document(family: str, **params) -> dict:
    """Canonical JSON-ready measure object."""
    return {"family": family, **params}
