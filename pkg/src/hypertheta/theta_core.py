"""Genus-2 theta functions with (half-)integer characteristics.

The central object is

    theta[a c; b d](x, y; tau) =
        sum_{m,n in Z} exp( pi*i*( tau1*(m+a/2)^2 + tau2*(n+c/2)^2
                                   + 2*tau12*(m+a/2)*(n+c/2) )
                            + 2*pi*i*( (m+a/2)*(x+b/2) + (n+c/2)*(y+d/2) ) )

evaluated by truncated lattice summation over a square window
max(|m|, |n|) <= R, with R chosen from a rigorous tail bound.  The
characteristic quadruple is written [a c; b d]: upper row (a, c), lower
row (b, d), column pairing (a, b) and (c, d).  Entries are exact
rationals with denominator 1 or 2.

Doubled-period values ("capital Theta") are plain evaluations at
double_periods(tau) = (2*tau1, 2*tau2, 2*tau12).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .backends import lattice_sum


class InvalidPeriod(ValueError):
    """Period matrix violates the positive-definite-imaginary-part condition."""


class RadiusExceeded(RuntimeError):
    """No summation radius within max_radius meets the tail target."""


class HalfIntegerParityUndefined(ValueError):
    """Parity (odd/even) is defined only for integer characteristics."""


def _as_frac(value) -> Fraction:
    """Coerce one characteristic entry to an exact rational with den 1 or 2."""
    if isinstance(value, Fraction):
        f = value
    elif isinstance(value, int):
        f = Fraction(value)
    elif isinstance(value, str):
        f = Fraction(value.strip())
    elif isinstance(value, float):
        f = Fraction(value).limit_denominator(2)
        if float(f) != value:
            raise ValueError(f"characteristic entry {value!r} is not a multiple of 1/2")
    else:
        raise TypeError(f"cannot build a characteristic entry from {value!r}")
    if f.denominator not in (1, 2):
        raise ValueError(f"characteristic entry {f} has denominator {f.denominator}; "
                         "only 1 and 2 occur")
    return f


_QUARTER_PHASE = {
    Fraction(0): 1 + 0j,
    Fraction(1, 2): 1j,
    Fraction(1): -1 + 0j,
    Fraction(3, 2): -1j,
}


@dataclass(frozen=True)
class ThetaCharacteristic:
    """The quadruple [a c; b d]; all entries multiples of 1/2."""

    a: Fraction
    c: Fraction
    b: Fraction
    d: Fraction

    @classmethod
    def of(cls, a, c, b, d) -> "ThetaCharacteristic":
        return cls(_as_frac(a), _as_frac(c), _as_frac(b), _as_frac(d))

    @property
    def entries(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.c, self.b, self.d)

    @property
    def is_integer(self) -> bool:
        return all(e.denominator == 1 for e in self.entries)

    def reduce(self) -> tuple["ThetaCharacteristic", complex]:
        """Canonical form with entries in [0, 2) and the exact phase unit.

        theta[self](z; tau) = phase * theta[reduced](z; tau) for all z, tau.
        Shifting a or c by 2 is an exact reindex of the lattice (phase 1);
        shifting b by 2 contributes exp(pi*i*a), shifting d by 2 contributes
        exp(pi*i*c) — the integer-entry specialisation is the familiar
        (-1)^a, (-1)^c.
        """
        a0, c0, b0, d0 = (e % 2 for e in self.entries)
        shifts_b = (self.b - b0) / 2   # integer number of +2 steps folded out
        shifts_d = (self.d - d0) / 2
        quarter = (self.a * shifts_b + self.c * shifts_d) % 2
        phase = _QUARTER_PHASE[quarter]
        return ThetaCharacteristic(a0, c0, b0, d0), phase

    def as_json(self) -> list[list[int]]:
        return [[e.numerator, e.denominator] for e in self.entries]

    @classmethod
    def from_json(cls, data) -> "ThetaCharacteristic":
        return cls.of(*(Fraction(num, den) for num, den in data))

    def __str__(self) -> str:
        def fmt(e: Fraction) -> str:
            return str(e.numerator) if e.denominator == 1 else f"{e.numerator}/2"
        return f"[{fmt(self.a)} {fmt(self.c)}; {fmt(self.b)} {fmt(self.d)}]"


def reduce_characteristic(ch: ThetaCharacteristic) -> tuple[ThetaCharacteristic, complex]:
    """Canonical characteristic in [0,2)^4 and phase with theta[ch] = phase*theta[ch']."""
    return ch.reduce()


def is_odd(ch: ThetaCharacteristic) -> bool:
    """Parity of an integer characteristic: odd iff a*b + c*d is odd.

    The six odd quadruples are exactly the ones whose theta vanishes
    identically at the origin.
    """
    if not ch.is_integer:
        raise HalfIntegerParityUndefined(f"parity undefined for {ch}")
    return (ch.a * ch.b + ch.c * ch.d) % 2 == 1


class Scale(enum.Enum):
    BASE = "base"
    DOUBLED = "doubled"


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


def _c2j(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _j2c(obj) -> complex:
    return complex(obj["re"], obj["im"])


@dataclass(frozen=True)
class PeriodMatrix:
    """(tau1, tau2, tau12) with positive-definite imaginary part."""

    tau1: complex
    tau2: complex
    tau12: complex
    scale: Scale = Scale.BASE

    def validate(self) -> None:
        for t in (self.tau1, self.tau2, self.tau12):
            if not _finite(t):
                raise InvalidPeriod(f"non-finite period entry in {self}")
        i1, i2, i12 = self.tau1.imag, self.tau2.imag, self.tau12.imag
        if i1 <= 0 or i2 <= 0 or i1 * i2 - i12 * i12 <= 0:
            raise InvalidPeriod(
                f"Im part not positive definite: Im tau1={i1}, Im tau2={i2}, Im tau12={i12}")

    @property
    def lambda_min(self) -> float:
        """Smallest eigenvalue of the 2x2 imaginary part."""
        i1, i2, i12 = self.tau1.imag, self.tau2.imag, self.tau12.imag
        half_tr = 0.5 * (i1 + i2)
        return half_tr - math.hypot(0.5 * (i1 - i2), i12)

    def as_json(self) -> dict:
        return {"tau1": _c2j(self.tau1), "tau2": _c2j(self.tau2),
                "tau12": _c2j(self.tau12), "scale": self.scale.value}

    @classmethod
    def from_json(cls, obj) -> "PeriodMatrix":
        return cls(_j2c(obj["tau1"]), _j2c(obj["tau2"]), _j2c(obj["tau12"]),
                   Scale(obj.get("scale", "base")))


def double_periods(tau: PeriodMatrix) -> PeriodMatrix:
    """The doubled-period matrix (2*tau1, 2*tau2, 2*tau12)."""
    if tau.scale is not Scale.BASE:
        raise ValueError("periods are already doubled")
    return PeriodMatrix(2 * tau.tau1, 2 * tau.tau2, 2 * tau.tau12, Scale.DOUBLED)


@dataclass(frozen=True)
class EvalPoint:
    """An argument pair (x, y); the same type carries (u, v), (u1, v1), ..."""

    x: complex = 0j
    y: complex = 0j

    def validate(self) -> None:
        if not (_finite(self.x) and _finite(self.y)):
            raise ValueError(f"non-finite evaluation point {self}")

    def __add__(self, other: "EvalPoint") -> "EvalPoint":
        return EvalPoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "EvalPoint") -> "EvalPoint":
        return EvalPoint(self.x - other.x, self.y - other.y)

    def scaled(self, k: float) -> "EvalPoint":
        return EvalPoint(k * self.x, k * self.y)

    def as_json(self) -> dict:
        return {"x": _c2j(self.x), "y": _c2j(self.y)}

    @classmethod
    def from_json(cls, obj) -> "EvalPoint":
        return cls(_j2c(obj["x"]), _j2c(obj["y"]))


ORIGIN = EvalPoint(0j, 0j)


@dataclass(frozen=True)
class PrecisionPolicy:
    eps_tail: float = 1e-14
    max_radius: int = 60
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12

    def __post_init__(self) -> None:
        if not (self.eps_tail > 0 and self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_radius < 1:
            raise ValueError("max_radius must be >= 1")


DEFAULT_POLICY = PrecisionPolicy()


def truncation_radius(ch: ThetaCharacteristic, z: EvalPoint, tau: PeriodMatrix,
                      eps_tail: float = DEFAULT_POLICY.eps_tail,
                      max_radius: int = DEFAULT_POLICY.max_radius) -> int:
    """Smallest square-window radius whose neglected tail is below eps_tail.

    Bound used.  Every term satisfies |term| <= f(M)*f(N) with
    f(t) = exp(-pi*lam*t^2 + 2*pi*rho*|t|), where lam is the smallest
    eigenvalue of Im(tau) and rho = max(|Im x|, |Im y|) (the lower-row
    characteristic shift is real and drops out of the modulus, so the
    radius is characteristic-independent once entries are reduced to
    [0, 2)).  Writing t* = rho/lam for the maximiser of f:

      * one full index line sums to at most
        S = 2*exp(pi*rho^2/lam) * (t* + 2 + 1/sqrt(lam))
        (at most t*+2 terms at the peak value plus a Gaussian integral),
      * for R >= t* + 1 the part of one line with |m| > R is at most
        T1(R) = 2*f(R) * (1 + 1/(2*pi*(lam*R - rho)))
        since |m + delta| >= |m| - 1 >= R for the reduced offsets
        delta in [0, 1),
      * the region max(|m|,|n|) > R is covered by two such lines,
        so tail(R) <= 2 * S * T1(R).

    The scan starts at max(2, ceil(t*+1)) and the bound is monotone in R,
    so shrinking eps_tail can only grow the returned radius.
    """
    tau.validate()
    z.validate()
    lam = tau.lambda_min
    rho = max(abs(z.x.imag), abs(z.y.imag))
    t_star = rho / lam
    log_s = math.log(2.0) + math.pi * rho * rho / lam \
        + math.log(t_star + 2.0 + 1.0 / math.sqrt(lam))
    log_target = math.log(eps_tail) - math.log(2.0) - log_s
    radius = max(2, math.ceil(t_star + 1.0))
    while radius <= max_radius:
        log_t1 = math.log(2.0) - math.pi * lam * radius * radius \
            + 2.0 * math.pi * rho * radius \
            + math.log1p(1.0 / (2.0 * math.pi * (lam * radius - rho)))
        if log_t1 < log_target:
            return radius
        radius += 1
    raise RadiusExceeded(
        f"tail target {eps_tail} unreachable within radius {max_radius} "
        f"(lambda_min={lam:.3g}, rho={rho:.3g})")


@lru_cache(maxsize=262144)
def _cached_sum(a2: float, c2: float, xs: complex, ys: complex,
                tau1: complex, tau2: complex, tau12: complex,
                radius: int) -> complex:
    return lattice_sum(a2, c2, xs, ys, tau1, tau2, tau12, radius)


def clear_theta_cache() -> None:
    _cached_sum.cache_clear()


def theta_eval(ch: ThetaCharacteristic, z: EvalPoint, tau: PeriodMatrix,
               pol: PrecisionPolicy = DEFAULT_POLICY) -> complex:
    """Truncated lattice sum for theta[ch](z; tau), tail below pol.eps_tail."""
    tau.validate()
    z.validate()
    reduced, phase = ch.reduce()
    radius = truncation_radius(reduced, z, tau, pol.eps_tail, pol.max_radius)
    value = _cached_sum(
        float(reduced.a) / 2.0, float(reduced.c) / 2.0,
        z.x + float(reduced.b) / 2.0, z.y + float(reduced.d) / 2.0,
        tau.tau1, tau.tau2, tau.tau12, radius)
    return phase * value
