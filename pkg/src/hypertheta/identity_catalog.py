"""Declarative catalog of the quadratic theta-function identities.

Every entry states an equality between two sums of products of theta
factors.  A factor is a characteristic, an argument selector (an integer
combination of the two sample points), and a scale flag choosing base or
doubled periods.  The evaluator computes both sides by direct lattice
summation and reports absolute/relative residuals, so each catalog entry is
a machine-checkable statement, not code.

The catalog covers four layers that build on each other:

  * duplication products: theta(p1+p2)*theta(p1-p2) expanded into four
    doubled-period products (ids 2e4.*, the sector instances 2e8..2e26 and
    their G-aliases B1..B16, and the half-characteristic connectors
    2e42/2e54/2e65 = B17..B19);
  * functional relations: theta(u,v) products expressed through
    doubled-argument thetas and constants (2e5.*, 2e6.*, 2e27..2e35, C1..C28);
  * constants relations: the same at the origin (2e36..2e41, 2e51..2e53,
    2e63/2e64, 2e74/2e75, and the sign-free squared forms D1..D16);
  * root forms: the D-entries also carry the printed square-root
    expressions, checked by a per-radical sign search (resolve_sign).

Identity ids are catalog keys; suspected misprints in the source tables are
encoded in the mathematically coherent reading and flagged (see each
entry's `flags`), never silently patched: the numeric verification is what
validates the chosen reading.
"""

from __future__ import annotations

import cmath
import enum
import hashlib
import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .sampling import SampleAssignment, assignments_for
from .theta_core import (
    DEFAULT_POLICY,
    ORIGIN,
    EvalPoint,
    PeriodMatrix,
    PrecisionPolicy,
    Scale,
    ThetaCharacteristic,
    double_periods,
    theta_eval,
)

ENV_CATALOG = "HYPERTHETA_CATALOG"
CATALOG_VERSION = "1"
REL_FLOOR = 1e-30


class NoConsistentSign(RuntimeError):
    """No per-radical sign assignment reproduces the directly summed constant."""


class Domain(enum.Enum):
    """What an identity quantifies over (besides the period matrix)."""

    TWO_POINT = "TwoPoint"        # both sample points (p1, p2) enter
    ONE_POINT = "OnePoint"        # only p1 enters (as (u,v))
    CONSTANTS_ONLY = "ConstantsOnly"  # origin values only


_ALLOWED_ARGS = {(1, 1), (1, -1), (2, 0), (0, 2), (1, 0), (0, 0)}


@dataclass(frozen=True)
class ArgSelector:
    """Evaluated argument = coeff1*(p1) + coeff2*(p2)."""

    coeff1: int
    coeff2: int

    def __post_init__(self) -> None:
        if (self.coeff1, self.coeff2) not in _ALLOWED_ARGS:
            raise ValueError(f"argument selector {(self.coeff1, self.coeff2)} "
                             f"outside the catalog set {sorted(_ALLOWED_ARGS)}")

    def select(self, p1: EvalPoint, p2: EvalPoint) -> EvalPoint:
        return p1.scaled(self.coeff1) + p2.scaled(self.coeff2)

    def as_json(self) -> list[int]:
        return [self.coeff1, self.coeff2]


ARG_SUM = ArgSelector(1, 1)
ARG_DIFF = ArgSelector(1, -1)
ARG_2P1 = ArgSelector(2, 0)
ARG_2P2 = ArgSelector(0, 2)
ARG_P1 = ArgSelector(1, 0)
ARG_ORIGIN = ArgSelector(0, 0)


@dataclass(frozen=True)
class ThetaFactor:
    ch: ThetaCharacteristic
    arg: ArgSelector
    scale: Scale

    def as_json(self) -> dict:
        return {"ch": self.ch.as_json(), "arg": self.arg.as_json(),
                "scale": self.scale.value}

    @classmethod
    def from_json(cls, obj) -> "ThetaFactor":
        return cls(ThetaCharacteristic.from_json(obj["ch"]),
                   ArgSelector(*obj["arg"]), Scale(obj["scale"]))


@dataclass(frozen=True)
class IdentityTerm:
    coefficient: complex
    factors: tuple[ThetaFactor, ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValueError("a term needs at least one theta factor")
        if self.coefficient == 0 or not (math.isfinite(self.coefficient.real)
                                         and math.isfinite(self.coefficient.imag)):
            raise ValueError(f"bad term coefficient {self.coefficient!r}")

    def as_json(self) -> dict:
        return {"coefficient": {"re": self.coefficient.real,
                                "im": self.coefficient.imag},
                "factors": [f.as_json() for f in self.factors]}

    @classmethod
    def from_json(cls, obj) -> "IdentityTerm":
        c = obj["coefficient"]
        return cls(complex(c["re"], c["im"]),
                   tuple(ThetaFactor.from_json(f) for f in obj["factors"]))


@dataclass(frozen=True)
class Identity:
    id: str
    lhs: tuple[IdentityTerm, ...]
    rhs: tuple[IdentityTerm, ...]
    domain: Domain
    note: str = ""
    flags: tuple[str, ...] = ()
    # Optional record of a printed square-root expression for the lhs
    # constant, consumed by resolve_sign (present on D1..D16 only).
    root_form: dict | None = None

    def as_json(self) -> dict:
        obj = {"id": self.id,
               "domain": self.domain.value,
               "lhs": [t.as_json() for t in self.lhs],
               "rhs": [t.as_json() for t in self.rhs],
               "note": self.note,
               "flags": list(self.flags)}
        if self.root_form is not None:
            obj["root_form"] = self.root_form
        return obj

    @classmethod
    def from_json(cls, obj) -> "Identity":
        return cls(obj["id"],
                   tuple(IdentityTerm.from_json(t) for t in obj["lhs"]),
                   tuple(IdentityTerm.from_json(t) for t in obj["rhs"]),
                   Domain(obj["domain"]),
                   obj.get("note", ""),
                   tuple(obj.get("flags", ())),
                   obj.get("root_form"))


@dataclass(frozen=True)
class ResidualReport:
    identity_id: str
    sample_index: int
    lhs_value: complex
    rhs_value: complex
    abs_residual: float
    rel_residual: float
    passed: bool
    error: str = ""

    def as_json(self) -> dict:
        def num(x: float):
            return x if math.isfinite(x) else None

        def cpx(z: complex):
            if math.isfinite(z.real) and math.isfinite(z.imag):
                return {"re": z.real, "im": z.imag}
            return None

        return {"id": self.identity_id, "sample": self.sample_index,
                "lhs": cpx(self.lhs_value), "rhs": cpx(self.rhs_value),
                "abs_residual": num(self.abs_residual),
                "rel_residual": num(self.rel_residual),
                "pass": self.passed, "error": self.error}


# --------------------------------------------------------------------------
# term-building shorthands (module-internal)

def _ch(a, c, b, d) -> ThetaCharacteristic:
    return ThetaCharacteristic.of(a, c, b, d)


H = Fraction(1, 2)  # the half step used by the connector characteristics


def _base(a, c, b, d, arg: ArgSelector) -> ThetaFactor:
    return ThetaFactor(_ch(a, c, b, d), arg, Scale.BASE)


def _dbl(a, c, b, d, arg: ArgSelector) -> ThetaFactor:
    return ThetaFactor(_ch(a, c, b, d), arg, Scale.DOUBLED)


def _konst(a, c, b, d) -> ThetaFactor:
    """A doubled-period theta constant (value at the origin)."""
    return _dbl(a, c, b, d, ARG_ORIGIN)


def _theta0(a, c, b, d) -> ThetaFactor:
    """A base-period theta constant (value at the origin)."""
    return _base(a, c, b, d, ARG_ORIGIN)


def _term(coefficient, *factors: ThetaFactor) -> IdentityTerm:
    return IdentityTerm(complex(coefficient), tuple(factors))


# Row/column order shared by every matrix-shaped relation: characteristics
# (0,0), (0,1), (1,0), (1,1) in both the upper-row and lower-row role.
_ORDER = ((0, 0), (0, 1), (1, 0), (1, 1))

_RIEMANN = ((1, 1, 1, 1),
            (1, -1, 1, -1),
            (1, 1, -1, -1),
            (1, -1, -1, 1))


def riemann_matrix():
    """The symmetric 4x4 matrix with M @ M = 4*I that interchanges squared
    base thetas and doubled-theta products (rows/columns ordered per _ORDER)."""
    import numpy as np

    return np.array(_RIEMANN, dtype=int)


# --------------------------------------------------------------------------
# generic duplication product

def general_duplication(a, c, b, d, e, g, f, h, id: str | None = None,
                        note: str = "") -> Identity:
    """The four-term product expansion

        theta[a c; b d](p1+p2) * theta[e g; f h](p1-p2)
          = sum over (i,j) in {0,1}^2 of
            Theta[(a+e)/2+i (c+g)/2+j; b+f d+h](2*p1)
            * Theta[(a-e)/2+i (c-g)/2+j; b-f d-h](2*p2)

    for integer characteristic entries.  The (i, j) shifts run in the fixed
    order (0,0), (0,1), (1,0), (1,1).  Upper rows become half-integer when
    a+e or c+g is odd; that is how [1 1;0 0] x [0 0;0 0] produces the
    [+-1/2 +-1/2] factors of the connector identities.
    """
    vals = [Fraction(v) for v in (a, c, b, d, e, g, f, h)]
    if any(v.denominator != 1 for v in vals):
        raise ValueError("generic duplication is stated for integer entries")
    a, c, b, d, e, g, f, h = vals
    lhs = (_term(1, _base(a, c, b, d, ARG_SUM), _base(e, g, f, h, ARG_DIFF)),)
    rhs = tuple(
        _term(1,
              _dbl((a + e) / 2 + i, (c + g) / 2 + j, b + f, d + h, ARG_2P1),
              _dbl((a - e) / 2 + i, (c - g) / 2 + j, b - f, d - h, ARG_2P2))
        for i, j in _ORDER)
    ident = id if id is not None else f"gd.{a}{c}{b}{d}.{e}{g}{f}{h}"
    return Identity(ident, lhs, rhs, Domain.TWO_POINT, note=note)


# --------------------------------------------------------------------------
# catalog builder

def _sector_product(a, c, b, d, id: str, note: str = "",
                    flags: tuple[str, ...] = ()) -> Identity:
    """theta[a c; b d](sum) * theta[a c; 0 0](diff) as the four-term
    doubled product, transcribed from the sector tables (upper rows reduced
    mod 2, a phase-free reduction)."""
    lhs = (_term(1, _base(a, c, b, d, ARG_SUM), _base(a, c, 0, 0, ARG_DIFF)),)
    rhs = tuple(
        _term(1,
              _dbl((a + i) % 2, (c + j) % 2, b, d, ARG_2P1),
              _dbl(i, j, b, d, ARG_2P2))
        for i, j in _ORDER)
    return Identity(id, lhs, rhs, Domain.TWO_POINT, note=note, flags=flags)


def _connector_product(upper, names, id: str, note: str) -> Identity:
    """theta[upper; 0 0](sum) * theta[0 0; 0 0](diff) = sum of like-with-like
    half-characteristic products (the B17..B19 shape)."""
    a, c = upper
    lhs = (_term(1, _base(a, c, 0, 0, ARG_SUM), _base(0, 0, 0, 0, ARG_DIFF)),)
    rhs = tuple(
        _term(1, _dbl(ua, uc, 0, 0, ARG_2P1), _dbl(ua, uc, 0, 0, ARG_2P2))
        for ua, uc in names)
    return Identity(id, lhs, rhs, Domain.TWO_POINT, note=note)


# Half-characteristic upper rows of the three connector families, in the
# printed order.  Lower rows are always (0, 0).
_D_NAMES = ((H, H), (H, -H), (-H, H), (-H, -H))          # P, Q, Q', P'
_B_NAMES = ((0, H), (0, -H), (1, H), (1, -H))            # R, R', S, S'
_C_NAMES = ((H, 0), (-H, 0), (H, 1), (-H, 1))            # T, T', U, U'

# Constants of those families: q equals the value at (1/2, -1/2) etc.; the
# primed constants coincide with the unprimed ones (evenness at the origin),
# so only the unprimed characteristics appear in constant roles.
_P, _Q = (H, H), (H, -H)
_R, _S = (0, H), (1, H)
_T, _W = (H, 0), (H, 1)

# alpha, beta / gamma, delta / xi, zeta: the doubled constants of the
# lower-row (0,1) / (1,0) / (1,1) functional relations.
_AL, _BE = (0, 0, 0, 1), (1, 0, 0, 1)
_GA, _DE = (0, 0, 1, 0), (0, 1, 1, 0)
_XI, _ZE = (0, 0, 1, 1), (1, 1, 1, 1)


def _pair_term(coeff, chA, chB, arg=ARG_P1, extra=None) -> IdentityTerm:
    """coeff * theta[chA](arg) * theta[chB](arg) (* extra constant factor)."""
    factors = [_base(*chA, arg), _base(*chB, arg)]
    if extra is not None:
        factors.append(extra)
    return IdentityTerm(complex(coeff), tuple(factors))


def _build_2e_series(cat: list[Identity]) -> None:
    # ---- duplication family: theta[a c;b d](sum)*theta[a c;0 0](diff)
    for a, c in _ORDER:
        for b, d in _ORDER:
            cat.append(general_duplication(
                a, c, b, d, a, c, 0, 0, id=f"2e4.{a}{c}{b}{d}",
                note="duplication product with difference anchor [a c;0 0]"))

    # ---- squared-theta expansion (doubled lower row) and its sibling with
    # the plain lower row; both are one-point statements.
    for a, c in _ORDER:
        for b, d in _ORDER:
            lhs = (_pair_term(1, (a, c, b, d), (a, c, b, d)),)
            rhs = tuple(
                _term(1, _dbl(a + i, c + j, 2 * b, 2 * d, ARG_2P1),
                      _konst(i, j, 0, 0))
                for i, j in _ORDER)
            cat.append(Identity(
                f"2e5.{a}{c}{b}{d}", lhs, rhs, Domain.ONE_POINT,
                note="squared theta as four doubled products (lower row doubled)"))

            lhs = (_pair_term(1, (a, c, b, d), (a, c, 0, 0)),)
            rhs = tuple(
                _term(1, _dbl(a + i, c + j, b, d, ARG_2P1),
                      _konst(i, j, b, d))
                for i, j in _ORDER)
            cat.append(Identity(
                f"2e6.{a}{c}{b}{d}", lhs, rhs, Domain.ONE_POINT,
                note="theta[b d]*theta[0 0] as four doubled products "
                     "(lower row kept)"))

    # ---- sector instances (and the same equations under their G-names,
    # appended later by _build_b_series).
    sector_ids = {(0, 0): ("2e8", "2e9", "2e10", "2e11"),
                  (0, 1): ("2e13", "2e14", "2e15", "2e16"),
                  (1, 0): ("2e18", "2e19", "2e20", "2e21"),
                  (1, 1): ("2e23", "2e24", "2e25", "2e26")}
    for (a, c), ids in sector_ids.items():
        for (b, d), ident in zip(_ORDER, ids):
            cat.append(_sector_product(
                a, c, b, d, ident,
                note=f"sector ({a},{c}) duplication at lower row ({b},{d})"))

    # ---- functional relations, lower row (0,0): Goepel square family,
    # the Riemann-matrix packaging, and its inverse.
    for b, d in _ORDER:
        lhs = (_pair_term(1, (0, 0, b, d), (0, 0, b, d)),)
        rhs = tuple(
            _term(1, _dbl(i, j, 2 * b, 2 * d, ARG_2P1), _konst(i, j, 0, 0))
            for i, j in _ORDER)
        cat.append(Identity(
            f"2e27.{b}{d}", lhs, rhs, Domain.ONE_POINT,
            note="squared [0 0;b d] as doubled products"))

    for k, (b, d) in enumerate(_ORDER):
        lhs = (_pair_term(1, (0, 0, b, d), (0, 0, b, d)),)
        rhs = tuple(
            _term(_RIEMANN[k][j], _dbl(*_ORDER[j], 0, 0, ARG_2P1),
                  _konst(*_ORDER[j], 0, 0))
            for j in range(4))
        cat.append(Identity(
            f"2e28.r{k + 1}", lhs, rhs, Domain.ONE_POINT,
            note="squared-theta vector row as signed doubled products"))

    for k, (a, c) in enumerate(_ORDER):
        lhs = (_term(1, _dbl(a, c, 0, 0, ARG_2P1), _konst(a, c, 0, 0)),)
        rhs = tuple(
            _pair_term(Fraction(_RIEMANN[k][j], 4), (0, 0, *_ORDER[j]),
                       (0, 0, *_ORDER[j]))
            for j in range(4))
        cat.append(Identity(
            f"2e29.r{k + 1}", lhs, rhs, Domain.ONE_POINT,
            note="doubled product row as quarter-sum of squared thetas"))

    # ---- functional relations, lower row (0,1): two-term family and the
    # alpha/beta matrix with its inverse.
    for a, c in _ORDER:
        lhs = (_pair_term(1, (a, c, 0, 1), (a, c, 0, 0)),)
        rhs = (_term(1, _dbl(a, c, 0, 1, ARG_2P1), _konst(*_AL)),
               _term(1, _dbl(a + 1, c, 0, 1, ARG_2P1), _konst(*_BE)))
        cat.append(Identity(
            f"2e30.{a}{c}", lhs, rhs, Domain.ONE_POINT,
            note="two-term doubled expansion at lower row (0,1); the two "
                 "odd-constant terms drop"))

    ab_matrix = ((_AL, 0, _BE, 0), (0, _AL, 0, _BE),
                 (_BE, 0, _AL, 0), (0, _BE, 0, _AL))
    targets_01 = tuple((a, c, 0, 1) for a, c in _ORDER)
    for k in range(4):
        a, c = _ORDER[k]
        lhs = (_pair_term(1, (a, c, 0, 1), (a, c, 0, 0)),)
        rhs = tuple(
            _term(1, _konst(*ab_matrix[k][j]), _dbl(*targets_01[j], ARG_2P1))
            for j in range(4) if ab_matrix[k][j] != 0)
        cat.append(Identity(
            f"2e31.r{k + 1}", lhs, rhs, Domain.ONE_POINT,
            note="forward alpha/beta matrix row at lower row (0,1)"))

    inv_rows_01 = (((1, _AL, (0, 0, 0, 1), (0, 0, 0, 0)),
                    (-1, _BE, (1, 0, 0, 1), (1, 0, 0, 0))),
                   ((1, _AL, (0, 1, 0, 1), (0, 1, 0, 0)),
                    (-1, _BE, (1, 1, 0, 1), (1, 1, 0, 0))),
                   ((-1, _BE, (0, 0, 0, 1), (0, 0, 0, 0)),
                    (1, _AL, (1, 0, 0, 1), (1, 0, 0, 0))),
                   ((-1, _BE, (0, 1, 0, 1), (0, 1, 0, 0)),
                    (1, _AL, (1, 1, 0, 1), (1, 1, 0, 0))))
    for k in range(4):
        cat.append(_inverse_row(
            f"2e32.r{k + 1}", targets_01[k], (_AL, _BE), inv_rows_01[k],
            note="inverse alpha/beta row, multiplied through by "
                 "alpha^2 - beta^2"))

    # ---- functional relations, lower row (1,0): only the inverse matrix is
    # tabulated; target order has the upper entries transposed.
    targets_10 = ((0, 0, 1, 0), (1, 0, 1, 0), (0, 1, 1, 0), (1, 1, 1, 0))
    inv_rows_10 = (((1, _GA, (0, 0, 1, 0), (0, 0, 0, 0)),
                    (-1, _DE, (0, 1, 1, 0), (0, 1, 0, 0))),
                   ((1, _GA, (1, 0, 1, 0), (1, 0, 0, 0)),
                    (-1, _DE, (1, 1, 1, 0), (1, 1, 0, 0))),
                   ((-1, _DE, (0, 0, 1, 0), (0, 0, 0, 0)),
                    (1, _GA, (0, 1, 1, 0), (0, 1, 0, 0))),
                   ((-1, _DE, (1, 0, 1, 0), (1, 0, 0, 0)),
                    (1, _GA, (1, 1, 1, 0), (1, 1, 0, 0))))
    for k in range(4):
        cat.append(_inverse_row(
            f"2e33.r{k + 1}", targets_10[k], (_GA, _DE), inv_rows_10[k],
            note="inverse gamma/delta row at lower row (1,0)"))

    # ---- functional relations, lower row (1,1): xi/zeta anti-diagonal
    # forward matrix and its inverse.
    targets_11 = tuple((a, c, 1, 1) for a, c in _ORDER)
    xz_matrix = ((_XI, 0, 0, _ZE), (0, _XI, _ZE, 0),
                 (0, _ZE, _XI, 0), (_ZE, 0, 0, _XI))
    for k in range(4):
        a, c = _ORDER[k]
        lhs = (_pair_term(1, (a, c, 1, 1), (a, c, 0, 0)),)
        rhs = tuple(
            _term(1, _konst(*xz_matrix[k][j]), _dbl(*targets_11[j], ARG_2P1))
            for j in range(4) if xz_matrix[k][j] != 0)
        cat.append(Identity(
            f"2e34.r{k + 1}", lhs, rhs, Domain.ONE_POINT,
            note="forward xi/zeta matrix row at lower row (1,1)"))

    inv_rows_11 = (((1, _XI, (0, 0, 1, 1), (0, 0, 0, 0)),
                    (-1, _ZE, (1, 1, 1, 1), (1, 1, 0, 0))),
                   ((1, _XI, (0, 1, 1, 1), (0, 1, 0, 0)),
                    (-1, _ZE, (1, 0, 1, 1), (1, 0, 0, 0))),
                   ((-1, _ZE, (0, 1, 1, 1), (0, 1, 0, 0)),
                    (1, _XI, (1, 0, 1, 1), (1, 0, 0, 0))),
                   ((-1, _ZE, (0, 0, 1, 1), (0, 0, 0, 0)),
                    (1, _XI, (1, 1, 1, 1), (1, 1, 0, 0))))
    for k in range(4):
        cat.append(_inverse_row(
            f"2e35.r{k + 1}", targets_11[k], (_XI, _ZE), inv_rows_11[k],
            note="inverse xi/zeta row at lower row (1,1)"))

    # ---- constants relations
    for k, (a, c) in enumerate(_ORDER):
        lhs = (_term(1, _konst(a, c, 0, 0), _konst(a, c, 0, 0)),)
        rhs = tuple(
            _term(Fraction(_RIEMANN[k][j], 4),
                  _theta0(0, 0, *_ORDER[j]), _theta0(0, 0, *_ORDER[j]))
            for j in range(4))
        cat.append(Identity(
            f"2e36.r{k + 1}", lhs, rhs, Domain.CONSTANTS_ONLY,
            note="squared doubled constant as quarter-sum of squared "
                 "base constants"))

    cat.extend(_constants_pair(
        "2e37", (_AL, _BE),
        X=((0, 0, 0, 1), (0, 0, 0, 0)), Y=((1, 0, 0, 1), (1, 0, 0, 0)),
        note="component form: X = alpha^2 + beta^2, Y = 2*alpha*beta"))
    cat.extend(_pm_squares(
        "2e38", (_AL, _BE),
        X=((0, 0, 0, 1), (0, 0, 0, 0)), Y=((1, 0, 0, 1), (1, 0, 0, 0)),
        note="(alpha +- beta)^2 = X +- Y"))
    cat.extend(_pm_squares(
        "2e39", (_GA, _DE),
        X=((0, 0, 1, 0), (0, 0, 0, 0)), Y=((0, 1, 1, 0), (0, 1, 0, 0)),
        note="(gamma +- delta)^2 = X +- Y"))
    cat.extend(_constants_pair(
        "2e40", (_XI, _ZE),
        X=((0, 0, 1, 1), (0, 0, 0, 0)), Y=((1, 1, 1, 1), (1, 1, 0, 0)),
        note="component form: X = xi^2 + zeta^2, Y = 2*xi*zeta"))
    cat.extend(_pm_squares(
        "2e41", (_XI, _ZE),
        X=((0, 0, 1, 1), (0, 0, 0, 0)), Y=((1, 1, 1, 1), (1, 1, 0, 0)),
        note="(xi +- zeta)^2 = X +- Y"))


def _inverse_row(ident, target, consts, row, note) -> Identity:
    """(cA^2 - cB^2) * Theta[target](2u,2v) = signed sum of
    const * theta * theta products (the multiplied-through inverse rows)."""
    cA, cB = consts
    lhs = (_term(1, _konst(*cA), _konst(*cA), _dbl(*target, ARG_2P1)),
           _term(-1, _konst(*cB), _konst(*cB), _dbl(*target, ARG_2P1)))
    rhs = tuple(
        _pair_term(sign, chA, chB, extra=_konst(*const))
        for sign, const, chA, chB in row)
    return Identity(ident, lhs, rhs, Domain.ONE_POINT, note=note)


def _constants_pair(base_id, consts, X, Y, note) -> list[Identity]:
    """The two component equations theta-product = cA^2 + cB^2 and
    theta-product = 2*cA*cB at the origin."""
    cA, cB = consts
    r1 = Identity(
        f"{base_id}.r1",
        (_term(1, _theta0(*X[0]), _theta0(*X[1])),),
        (_term(1, _konst(*cA), _konst(*cA)),
         _term(1, _konst(*cB), _konst(*cB))),
        Domain.CONSTANTS_ONLY, note=note)
    r2 = Identity(
        f"{base_id}.r2",
        (_term(1, _theta0(*Y[0]), _theta0(*Y[1])),),
        (_term(2, _konst(*cA), _konst(*cB)),),
        Domain.CONSTANTS_ONLY, note=note)
    return [r1, r2]


def _pm_squares(base_id, consts, X, Y, note,
                flags: tuple[str, ...] = ()) -> list[Identity]:
    """(cA +- cB)^2 = theta-product X +- theta-product Y at the origin."""
    cA, cB = consts
    out = []
    for tag, sign in (("plus", 1), ("minus", -1)):
        lhs = (_term(1, _konst(*cA), _konst(*cA)),
               _term(2 * sign, _konst(*cA), _konst(*cB)),
               _term(1, _konst(*cB), _konst(*cB)))
        rhs = (_term(1, _theta0(*X[0]), _theta0(*X[1])),
               _term(sign, _theta0(*Y[0]), _theta0(*Y[1])))
        out.append(Identity(f"{base_id}.{tag}", lhs, rhs,
                            Domain.CONSTANTS_ONLY, note=note, flags=flags))
    return out


def _half_dbl(upper, arg) -> ThetaFactor:
    a, c = upper
    return ThetaFactor(_ch(a, c, 0, 0), arg, Scale.DOUBLED)


def _half_konst(upper) -> ThetaFactor:
    return _half_dbl(upper, ARG_ORIGIN)


def _connector_onepoint(ident, lhs_pair, entries, note, flags=()) -> Identity:
    """theta[..](u,v)*theta[..](u,v) = sum of coeff * Theta[half](2u,2v)
    * half-characteristic constant."""
    lhs = (_pair_term(1, lhs_pair[0], lhs_pair[1]),)
    rhs = tuple(
        _term(coeff, _half_dbl(name, ARG_2P1), _half_konst(const))
        for coeff, name, const in entries)
    return Identity(ident, lhs, rhs, Domain.ONE_POINT, note=note, flags=flags)


def _build_connectors(cat: list[Identity]) -> None:
    P, Q, Qp, Pp = _D_NAMES
    R, Rp, S, Sp = _B_NAMES
    T, Tp, U, Up = _C_NAMES

    cat.append(_connector_product(
        (1, 1), _D_NAMES, "2e42",
        note="connector product [1 1;0 0] x [0 0;0 0] over the four "
             "(+-1/2, +-1/2) characteristics"))

    cat.append(_connector_onepoint(
        "2e47", ((1, 1, 0, 0), (0, 0, 0, 0)),
        ((1, P, _P), (1, Pp, _P), (1, Q, _Q), (1, Qp, _Q)),
        note="(P+P')p + (Q+Q')q"))
    cat.append(_connector_onepoint(
        "2e48", ((0, 1, 0, 0), (1, 0, 0, 0)),
        ((1, Q, _P), (1, Qp, _P), (1, P, _Q), (1, Pp, _Q)),
        note="(Q+Q')p + (P+P')q"))
    cat.append(_connector_onepoint(
        "2e49", ((1, 1, 1, 0), (0, 0, 1, 0)),
        ((1j, P, _P), (-1j, Pp, _P), (1j, Q, _Q), (-1j, Qp, _Q)),
        note="i(P-P')p + i(Q-Q')q"))
    cat.append(_connector_onepoint(
        "2e50", ((1, 0, 1, 0), (0, 1, 1, 0)),
        ((1j, P, _Q), (-1j, Pp, _Q), (1j, Q, _P), (-1j, Qp, _P)),
        note="i(P-P')q + i(Q-Q')p"))

    cat.append(Identity(
        "2e51",
        (_term(1, _theta0(1, 1, 0, 0), _theta0(0, 0, 0, 0)),),
        (_term(2, _half_konst(_P), _half_konst(_P)),
         _term(2, _half_konst(_Q), _half_konst(_Q))),
        Domain.CONSTANTS_ONLY, note="2(p^2 + q^2)"))
    cat.append(Identity(
        "2e52",
        (_term(1, _theta0(0, 1, 0, 0), _theta0(1, 0, 0, 0)),),
        (_term(4, _half_konst(_P), _half_konst(_Q)),),
        Domain.CONSTANTS_ONLY, note="4pq"))
    for tag, sign in (("plus", 1), ("minus", -1)):
        cat.append(Identity(
            f"2e53.{tag}",
            (_term(1, _theta0(1, 1, 0, 0), _theta0(0, 0, 0, 0)),
             _term(sign, _theta0(0, 1, 0, 0), _theta0(1, 0, 0, 0))),
            (_term(2, _half_konst(_P), _half_konst(_P)),
             _term(4 * sign, _half_konst(_P), _half_konst(_Q)),
             _term(2, _half_konst(_Q), _half_konst(_Q))),
            Domain.CONSTANTS_ONLY,
            note="2(p +- q)^2; the printed lhs repeats one product twice, "
                 "encoded as the sum/difference of the two distinct products",
            flags=("lhs-misprint",)))

    cat.append(_connector_product(
        (0, 1), _B_NAMES, "2e54",
        note="connector product [0 1;0 0] x [0 0;0 0] over the (0|1, +-1/2) "
             "characteristics"))
    cat.append(_connector_onepoint(
        "2e59", ((0, 1, 0, 0), (0, 0, 0, 0)),
        ((1, R, _R), (1, Rp, _R), (1, S, _S), (1, Sp, _S)),
        note="(R+R')r + (S+S')s; second lhs factor printed at the origin, "
             "encoded at (u,v)",
        flags=("arg-misprint",)))
    cat.append(_connector_onepoint(
        "2e60", ((0, 1, 1, 0), (0, 0, 1, 0)),
        ((1, R, _R), (1, Rp, _R), (-1, S, _S), (-1, Sp, _S)),
        note="(R+R')r - (S+S')s; same printed-origin slip as 2e59",
        flags=("arg-misprint",)))
    cat.append(_connector_onepoint(
        "2e61", ((0, 1, 0, 1), (0, 0, 0, 1)),
        ((1j, R, _R), (-1j, Rp, _R), (1j, S, _S), (-1j, Sp, _S)),
        note="i(R-R')r + i(S-S')s"))
    cat.append(_connector_onepoint(
        "2e62", ((0, 1, 1, 1), (0, 0, 1, 1)),
        ((1j, R, _R), (-1j, Rp, _R), (-1j, S, _S), (1j, Sp, _S)),
        note="i(R-R')r - i(S-S')s"))
    cat.append(Identity(
        "2e63",
        (_term(1, _theta0(0, 1, 0, 0), _theta0(0, 0, 0, 0)),),
        (_term(2, _half_konst(_R), _half_konst(_R)),
         _term(2, _half_konst(_S), _half_konst(_S))),
        Domain.CONSTANTS_ONLY, note="2(r^2 + s^2)"))
    cat.append(Identity(
        "2e64",
        (_term(1, _theta0(0, 1, 1, 0), _theta0(0, 0, 1, 0)),),
        (_term(2, _half_konst(_R), _half_konst(_R)),
         _term(-2, _half_konst(_S), _half_konst(_S))),
        Domain.CONSTANTS_ONLY, note="2(r^2 - s^2)"))

    cat.append(_connector_product(
        (1, 0), _C_NAMES, "2e65",
        note="connector product [1 0;0 0] x [0 0;0 0] over the (+-1/2, 0|1) "
             "characteristics"))
    cat.append(_connector_onepoint(
        "2e70", ((1, 0, 0, 0), (0, 0, 0, 0)),
        ((1, T, _T), (1, Tp, _T), (1, U, _W), (1, Up, _W)),
        note="(T+T')t + (U+U')w; second lhs factor printed at the origin, "
             "encoded at (u,v)",
        flags=("arg-misprint",)))
    cat.append(_connector_onepoint(
        "2e71", ((1, 0, 0, 1), (0, 0, 0, 1)),
        ((1, T, _T), (1, Tp, _T), (-1, U, _W), (-1, Up, _W)),
        note="(T+T')t - (U+U')w; same printed-origin slip as 2e70",
        flags=("arg-misprint",)))
    cat.append(_connector_onepoint(
        "2e72", ((1, 0, 1, 0), (0, 0, 1, 0)),
        ((1j, T, _T), (-1j, Tp, _T), (1j, U, _W), (-1j, Up, _W)),
        note="i(T-T')t + i(U-U')w"))
    cat.append(_connector_onepoint(
        "2e73", ((1, 0, 1, 1), (0, 0, 1, 1)),
        ((1j, T, _T), (-1j, Tp, _T), (-1j, U, _W), (1j, Up, _W)),
        note="i(T-T')t - i(U-U')w"))
    cat.append(Identity(
        "2e74",
        (_term(1, _theta0(1, 0, 0, 0), _theta0(0, 0, 0, 0)),),
        (_term(2, _half_konst(_T), _half_konst(_T)),
         _term(2, _half_konst(_W), _half_konst(_W))),
        Domain.CONSTANTS_ONLY,
        note="2(t^2 + w^2); first squared constant printed with transposed "
             "upper row, encoded as [1/2 0;0 0]",
        flags=("char-misprint",)))
    cat.append(Identity(
        "2e75",
        (_term(1, _theta0(1, 0, 0, 1), _theta0(0, 0, 0, 1)),),
        (_term(2, _half_konst(_T), _half_konst(_T)),
         _term(-2, _half_konst(_W), _half_konst(_W))),
        Domain.CONSTANTS_ONLY, note="2(t^2 - w^2)"))


def _build_b_series(cat: list[Identity]) -> None:
    b_index = 1
    for a, c in _ORDER:
        for b, d in _ORDER:
            same = {(0, 0): ("2e8", "2e9", "2e10", "2e11"),
                    (0, 1): ("2e13", "2e14", "2e15", "2e16"),
                    (1, 0): ("2e18", "2e19", "2e20", "2e21"),
                    (1, 1): ("2e23", "2e24", "2e25", "2e26")}[(a, c)][
                        _ORDER.index((b, d))]
            cat.append(_sector_product(
                a, c, b, d, f"B{b_index}",
                note=f"G[{a} {c};{b} {d}] product table; same content as {same}"))
            b_index += 1
    cat.append(_connector_product(
        (1, 1), _D_NAMES, "B17",
        note="G1[1 1;0 0] half-characteristic product; same content as 2e42"))
    cat.append(_connector_product(
        (0, 1), _B_NAMES, "B18",
        note="G1[0 1;0 0] half-characteristic product; same content as 2e54"))
    cat.append(_connector_product(
        (1, 0), _C_NAMES, "B19",
        note="G1[1 0;0 0] half-characteristic product; same content as 2e65"))


def _build_c_series(cat: list[Identity]) -> None:
    # C1..C4: doubled product = quarter-sum of signed squared thetas.
    for k, (a, c) in enumerate(_ORDER):
        lhs = (_term(1, _dbl(a, c, 0, 0, ARG_2P1), _konst(a, c, 0, 0)),)
        rhs = tuple(
            _pair_term(Fraction(_RIEMANN[k][j], 4), (0, 0, *_ORDER[j]),
                       (0, 0, *_ORDER[j]))
            for j in range(4))
        cat.append(Identity(
            f"C{k + 1}", lhs, rhs, Domain.ONE_POINT,
            note=f"doubled [{a} {c};0 0] through squared thetas; "
                 f"same content as 2e29.r{k + 1}"))

    # C5..C8 / C9..C12 / C13..C16: the multiplied-through inverse rows.
    rows = (
        ("C5", (0, 0, 0, 1), (_AL, _BE),
         ((1, _AL, (0, 0, 0, 1), (0, 0, 0, 0)),
          (-1, _BE, (1, 0, 0, 1), (1, 0, 0, 0)))),
        ("C6", (0, 1, 0, 1), (_AL, _BE),
         ((1, _AL, (0, 1, 0, 1), (0, 1, 0, 0)),
          (-1, _BE, (1, 1, 0, 1), (1, 1, 0, 0)))),
        ("C7", (1, 0, 0, 1), (_AL, _BE),
         ((-1, _BE, (0, 0, 0, 1), (0, 0, 0, 0)),
          (1, _AL, (1, 0, 0, 1), (1, 0, 0, 0)))),
        ("C8", (1, 1, 0, 1), (_AL, _BE),
         ((-1, _BE, (0, 1, 0, 1), (0, 1, 0, 0)),
          (1, _AL, (1, 1, 0, 1), (1, 1, 0, 0)))),
        ("C9", (0, 0, 1, 0), (_GA, _DE),
         ((1, _GA, (0, 0, 1, 0), (0, 0, 0, 0)),
          (-1, _DE, (0, 1, 1, 0), (0, 1, 0, 0)))),
        ("C10", (1, 0, 1, 0), (_GA, _DE),
         ((1, _GA, (1, 0, 1, 0), (1, 0, 0, 0)),
          (-1, _DE, (1, 1, 1, 0), (1, 1, 0, 0)))),
        ("C11", (0, 1, 1, 0), (_GA, _DE),
         ((-1, _DE, (0, 0, 1, 0), (0, 0, 0, 0)),
          (1, _GA, (0, 1, 1, 0), (0, 1, 0, 0)))),
        ("C12", (1, 1, 1, 0), (_GA, _DE),
         ((-1, _DE, (1, 0, 1, 0), (1, 0, 0, 0)),
          (1, _GA, (1, 1, 1, 0), (1, 1, 0, 0)))),
        ("C13", (0, 0, 1, 1), (_XI, _ZE),
         ((1, _XI, (0, 0, 1, 1), (0, 0, 0, 0)),
          (-1, _ZE, (1, 1, 1, 1), (1, 1, 0, 0)))),
        ("C14", (0, 1, 1, 1), (_XI, _ZE),
         ((1, _XI, (0, 1, 1, 1), (0, 1, 0, 0)),
          (-1, _ZE, (1, 0, 1, 1), (1, 0, 0, 0)))),
        ("C15", (1, 0, 1, 1), (_XI, _ZE),
         ((-1, _ZE, (0, 1, 1, 1), (0, 1, 0, 0)),
          (1, _XI, (1, 0, 1, 1), (1, 0, 0, 0)))),
        ("C16", (1, 1, 1, 1), (_XI, _ZE),
         ((-1, _ZE, (0, 0, 1, 1), (0, 0, 0, 0)),
          (1, _XI, (1, 1, 1, 1), (1, 1, 0, 0)))),
    )
    for ident, target, consts, row in rows:
        cat.append(_inverse_row(
            ident, target, consts, row,
            note="doubled theta solved through base products"))

    # C17..C20: the connector system solved for P, P', Q, Q'.
    P, Q, Qp, Pp = _D_NAMES
    X = ((1, 1, 0, 0), (0, 0, 0, 0))
    Y = ((0, 1, 0, 0), (1, 0, 0, 0))
    Xp = ((1, 1, 1, 0), (0, 0, 1, 0))
    Yp = ((1, 0, 1, 0), (0, 1, 1, 0))

    def conn_solved(ident, name, big, small, i_sign, note):
        # 2*name*(p^2 - q^2) = X*big - Y*small + i_sign*i*(X'*big - Y'*small)
        lhs = (_term(2, _half_dbl(name, ARG_2P1),
                     _half_konst(_P), _half_konst(_P)),
               _term(-2, _half_dbl(name, ARG_2P1),
                     _half_konst(_Q), _half_konst(_Q)))
        rhs = (_pair_term(1, X[0], X[1], extra=_half_konst(big)),
               _pair_term(-1, Y[0], Y[1], extra=_half_konst(small)),
               _pair_term(i_sign * 1j, Xp[0], Xp[1], extra=_half_konst(big)),
               _pair_term(-i_sign * 1j, Yp[0], Yp[1], extra=_half_konst(small)))
        return Identity(ident, lhs, rhs, Domain.ONE_POINT, note=note)

    cat.append(conn_solved("C17", P, _P, _Q, -1, "2P(p^2-q^2) solved form"))
    cat.append(conn_solved("C18", Pp, _P, _Q, +1, "2P'(p^2-q^2) solved form"))
    # For Q and Q' the roles of p and q interchange and the base products
    # swap sign: 2Q(p^2-q^2) = -X q + Y p + i(X' q - Y' p).
    for ident, name, i_sign in (("C19", Q, +1), ("C20", Qp, -1)):
        lhs = (_term(2, _half_dbl(name, ARG_2P1),
                     _half_konst(_P), _half_konst(_P)),
               _term(-2, _half_dbl(name, ARG_2P1),
                     _half_konst(_Q), _half_konst(_Q)))
        rhs = (_pair_term(-1, X[0], X[1], extra=_half_konst(_Q)),
               _pair_term(1, Y[0], Y[1], extra=_half_konst(_P)),
               _pair_term(i_sign * 1j, Xp[0], Xp[1], extra=_half_konst(_Q)),
               _pair_term(-i_sign * 1j, Yp[0], Yp[1], extra=_half_konst(_P)))
        label = "2Q" if ident == "C19" else "2Q'"
        cat.append(Identity(ident, lhs, rhs, Domain.ONE_POINT,
                            note=f"{label}(p^2-q^2) solved form"))

    # C21..C24 (R-family) and C25..C28 (T-family): 4*name*const as signed
    # combinations of the four base products.
    R, Rp, S, Sp = _B_NAMES
    T, Tp, U, Up = _C_NAMES
    A = ((0, 1, 0, 0), (0, 0, 0, 0))
    B = ((0, 1, 1, 0), (0, 0, 1, 0))
    C = ((0, 1, 0, 1), (0, 0, 0, 1))
    D = ((0, 1, 1, 1), (0, 0, 1, 1))
    Aq = ((1, 0, 0, 0), (0, 0, 0, 0))
    Bq = ((1, 0, 0, 1), (0, 0, 0, 1))
    Cq = ((1, 0, 1, 0), (0, 0, 1, 0))
    Dq = ((1, 0, 1, 1), (0, 0, 1, 1))

    def four_solved(ident, name, const, prods, s2, i_sign, note):
        first, second, third, fourth = prods
        lhs = (_term(4, _half_dbl(name, ARG_2P1), _half_konst(const)),)
        rhs = (_pair_term(1, first[0], first[1]),
               _pair_term(s2, second[0], second[1]),
               _pair_term(i_sign * 1j, third[0], third[1]),
               _pair_term(i_sign * s2 * 1j, fourth[0], fourth[1]))
        return Identity(ident, lhs, rhs, Domain.ONE_POINT, note=note)

    cat.append(four_solved("C21", R, _R, (A, B, C, D), +1, -1, "4Rr solved"))
    cat.append(four_solved("C22", Rp, _R, (A, B, C, D), +1, +1, "4R'r solved"))
    cat.append(four_solved("C23", S, _S, (A, B, C, D), -1, -1, "4Ss solved"))
    cat.append(four_solved("C24", Sp, _S, (A, B, C, D), -1, +1, "4S's solved"))
    cat.append(four_solved("C25", T, _T, (Aq, Bq, Cq, Dq), +1, -1, "4Tt solved"))
    cat.append(four_solved("C26", Tp, _T, (Aq, Bq, Cq, Dq), +1, +1, "4T't solved"))
    cat.append(four_solved("C27", U, _W, (Aq, Bq, Cq, Dq), -1, -1, "4Uw solved"))
    cat.append(four_solved("C28", Up, _W, (Aq, Bq, Cq, Dq), -1, +1, "4U'w solved"))


def _root_spec(sign, chA, chB):
    return [sign, _ch(*chA).as_json(), _ch(*chB).as_json()]


def _root_form(target, prefactor, roots, printed_signs) -> dict:
    return {"target": _ch(*target).as_json(), "prefactor": prefactor,
            "roots": roots, "printed_signs": list(printed_signs)}


def _build_d_series(cat: list[Identity]) -> None:
    # D1..D4: 4 * V^2 = signed sum of squared base constants, plus the
    # printed single-radical root form V = 1/2 * sqrt(...).
    for k, (a, c) in enumerate(_ORDER):
        V = (a, c, 0, 0)
        lhs = (_term(4, _konst(*V), _konst(*V)),)
        rhs = tuple(
            _term(_RIEMANN[k][j], _theta0(0, 0, *_ORDER[j]),
                  _theta0(0, 0, *_ORDER[j]))
            for j in range(4))
        root = [[_root_spec(_RIEMANN[k][j], (0, 0, *_ORDER[j]),
                            (0, 0, *_ORDER[j])) for j in range(4)]]
        cat.append(Identity(
            f"D{k + 1}", lhs, rhs, Domain.CONSTANTS_ONLY,
            note="squared form of the printed root expression",
            root_form=_root_form(V, "1/2", root, [1])))

    # D5..D10: nested two-radical pairs; squared sign-free form
    # 4 v^4 - 4 X v^2 + Y^2 = 0, encoded as 4 v^4 + Y^2 = 4 X v^2.
    pairs = (("D5", "D6", _AL, _BE,
              ((0, 0, 0, 1), (0, 0, 0, 0)), ((1, 0, 0, 1), (1, 0, 0, 0))),
             ("D7", "D8", _GA, _DE,
              ((0, 0, 1, 0), (0, 0, 0, 0)), ((0, 1, 1, 0), (0, 1, 0, 0))),
             ("D9", "D10", _XI, _ZE,
              ((0, 0, 1, 1), (0, 0, 0, 0)), ((1, 1, 1, 1), (1, 1, 0, 0))))
    for idA, idB, tgtA, tgtB, X, Y in pairs:
        roots = [[_root_spec(1, X[0], X[1]), _root_spec(1, Y[0], Y[1])],
                 [_root_spec(1, X[0], X[1]), _root_spec(-1, Y[0], Y[1])]]
        for ident, tgt, printed in ((idA, tgtA, [1, 1]), (idB, tgtB, [1, -1])):
            V = _konst(*tgt)
            lhs = (_term(4, V, V, V, V),
                   _term(1, _theta0(*Y[0]), _theta0(*Y[1]),
                         _theta0(*Y[0]), _theta0(*Y[1])))
            rhs = (_term(4, _theta0(*X[0]), _theta0(*X[1]), V, V),)
            cat.append(Identity(
                ident, lhs, rhs, Domain.CONSTANTS_ONLY,
                note="sign-free quartic for a two-radical constant",
                root_form=_root_form(tgt, "1/2", roots, printed)))

    # D11/D12: 16 v^4 - 8 X v^2 + Y^2 = 0 with prefactor 1/(2*sqrt(2)).
    X = ((1, 1, 0, 0), (0, 0, 0, 0))
    Y = ((0, 1, 0, 0), (1, 0, 0, 0))
    roots = [[_root_spec(1, X[0], X[1]), _root_spec(1, Y[0], Y[1])],
             [_root_spec(1, X[0], X[1]), _root_spec(-1, Y[0], Y[1])]]
    for ident, tgt, printed in (("D11", _P, [1, -1]), ("D12", _Q, [1, 1])):
        V = _half_konst(tgt)
        lhs = (_term(16, V, V, V, V),
               _term(1, _theta0(*Y[0]), _theta0(*Y[1]),
                     _theta0(*Y[0]), _theta0(*Y[1])))
        rhs = (_term(8, _theta0(*X[0]), _theta0(*X[1]), V, V),)
        cat.append(Identity(
            ident, lhs, rhs, Domain.CONSTANTS_ONLY,
            note="sign-free quartic for a half-characteristic constant",
            root_form=_root_form((tgt[0], tgt[1], 0, 0), "1/(2*sqrt(2))",
                                 roots, printed)))

    # D13..D16: single radicals, 4 v^2 = X +- X'.
    singles = (("D13", _R, ((0, 1, 0, 0), (0, 0, 0, 0)),
                ((0, 1, 1, 0), (0, 0, 1, 0)), 1),
               ("D14", _T, ((1, 0, 0, 0), (0, 0, 0, 0)),
                ((1, 0, 0, 1), (0, 0, 0, 1)), 1),
               ("D15", _S, ((0, 1, 0, 0), (0, 0, 0, 0)),
                ((0, 1, 1, 0), (0, 0, 1, 0)), -1),
               ("D16", _W, ((1, 0, 0, 0), (0, 0, 0, 0)),
                ((1, 0, 0, 1), (0, 0, 0, 1)), -1))
    for ident, tgt, X, Xp, sign in singles:
        V = _half_konst(tgt)
        lhs = (_term(4, V, V),)
        rhs = (_term(1, _theta0(*X[0]), _theta0(*X[1])),
               _term(sign, _theta0(*Xp[0]), _theta0(*Xp[1])))
        root = [[_root_spec(1, X[0], X[1]), _root_spec(sign, Xp[0], Xp[1])]]
        cat.append(Identity(
            ident, lhs, rhs, Domain.CONSTANTS_ONLY,
            note="squared form of the printed single-radical expression",
            root_form=_root_form((tgt[0], tgt[1], 0, 0), "1/2", root, [1])))


@lru_cache(maxsize=1)
def _built_catalog() -> tuple[Identity, ...]:
    cat: list[Identity] = []
    _build_2e_series(cat)
    _build_connectors(cat)
    _build_b_series(cat)
    _build_c_series(cat)
    _build_d_series(cat)
    ids = [i.id for i in cat]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        raise AssertionError(f"duplicate catalog ids: {dupes}")
    return tuple(cat)


def build_catalog() -> list[Identity]:
    """Construct the full identity catalog in memory (deterministic order)."""
    return list(_built_catalog())


# --------------------------------------------------------------------------
# evaluation

def _factor_value(f: ThetaFactor, s: SampleAssignment,
                  pol: PrecisionPolicy) -> complex:
    z = f.arg.select(s.p1, s.p2)
    tau = double_periods(s.tau) if f.scale is Scale.DOUBLED else s.tau
    return theta_eval(f.ch, z, tau, pol)


def _side_value(terms, s, pol) -> complex:
    total = 0j
    for t in terms:
        prod = t.coefficient
        for f in t.factors:
            prod *= _factor_value(f, s, pol)
        total += prod
    return total


def evaluate_identity(idty: Identity, s: SampleAssignment,
                      pol: PrecisionPolicy = DEFAULT_POLICY) -> ResidualReport:
    """Compute both sides by direct summation and report the residual.

    OnePoint identities ignore p2 and ConstantsOnly identities ignore both
    points by construction (their selectors never touch the ignored point).
    """
    lhs = _side_value(idty.lhs, s, pol)
    rhs = _side_value(idty.rhs, s, pol)
    abs_res = abs(lhs - rhs)
    rel_res = abs_res / max(abs(lhs), abs(rhs), REL_FLOOR)
    passed = rel_res < pol.rel_tol or abs_res < pol.abs_tol
    return ResidualReport(idty.id, s.seed, lhs, rhs, abs_res, rel_res, passed)


def verify_catalog(n_samples: int = 100, seed: int = 0,
                   pol: PrecisionPolicy = DEFAULT_POLICY,
                   catalog: list[Identity] | None = None,
                   only: set[str] | None = None) -> list[ResidualReport]:
    """Evaluate every identity at n_samples fresh draws.

    Per-sample errors (e.g. RadiusExceeded on an extreme draw) become failed
    report rows instead of aborting the run.  Reports come out sorted by
    identity id then sample index, so the output is a pure function of
    (catalog, n_samples, seed, pol).
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if catalog is None:
        catalog = build_catalog()
    if only is not None:
        catalog = [i for i in catalog if i.id in only or base_id(i.id) in only]
    reports: list[ResidualReport] = []
    for idty in sorted(catalog, key=lambda i: i.id):
        for s in assignments_for(seed, idty.id, n_samples):
            try:
                reports.append(evaluate_identity(idty, s, pol))
            except Exception as exc:  # noqa: BLE001 - aggregate, don't abort
                reports.append(ResidualReport(
                    idty.id, s.seed, complex("nan"), complex("nan"),
                    math.inf, math.inf, False,
                    error=f"{type(exc).__name__}: {exc}"))
    return reports


def base_id(ident: str) -> str:
    """Family id: text before the first dot ('2e5.0001' -> '2e5')."""
    return ident.split(".", 1)[0]


# --------------------------------------------------------------------------
# sign resolution for the root forms

_PREFACTORS = {"1/2": 0.5, "1/(2*sqrt(2))": 1.0 / (2.0 * math.sqrt(2.0))}


def resolve_sign(d_id: str, tau: PeriodMatrix,
                 pol: PrecisionPolicy = DEFAULT_POLICY,
                 catalog: list[Identity] | None = None):
    """Evaluate a printed root expression and find the radical signs.

    Each radical is taken on its principal branch; the resolver scans sign
    assignments (the printed one first) for one whose combination matches
    the directly summed doubled constant to relative 1e-8.  Returns the
    matched value and a record of the choice; raises NoConsistentSign when
    no assignment matches.
    """
    if catalog is None:
        catalog = build_catalog()
    entry = next((i for i in catalog if i.id == d_id and i.root_form), None)
    if entry is None:
        raise KeyError(f"no root form under id {d_id!r}")
    form = entry.root_form
    tau.validate()

    target_ch = ThetaCharacteristic.from_json(form["target"])
    direct = theta_eval(target_ch, ORIGIN, double_periods(tau), pol)

    prefactor = _PREFACTORS[form["prefactor"]]
    radicals = []
    for root in form["roots"]:
        content = 0j
        for sign, chA, chB in root:
            content += sign \
                * theta_eval(ThetaCharacteristic.from_json(chA), ORIGIN, tau, pol) \
                * theta_eval(ThetaCharacteristic.from_json(chB), ORIGIN, tau, pol)
        radicals.append(cmath.sqrt(content))

    printed = tuple(form["printed_signs"])
    n = len(radicals)
    candidates = [printed] + [
        signs for signs in _sign_tuples(n) if signs != printed]
    scale = max(abs(direct), REL_FLOOR)
    best = None
    for signs in candidates:
        value = prefactor * sum(s * r for s, r in zip(signs, radicals))
        err = abs(value - direct) / scale
        if best is None or err < best[0]:
            best = (err, signs, value)
        if err <= 1e-8:
            record = {"id": d_id, "signs": list(signs),
                      "printed_signs": list(printed),
                      "matches_printed": signs == printed,
                      "rel_error": err}
            return value, record
    raise NoConsistentSign(
        f"{d_id}: best assignment {best[1]} misses by rel {best[0]:.3e}")


def _sign_tuples(n: int):
    if n == 0:
        return [()]
    return [(s, *rest) for s in (1, -1) for rest in _sign_tuples(n - 1)]


# --------------------------------------------------------------------------
# serialization

def catalog_as_json(catalog: list[Identity]) -> dict:
    body = [i.as_json() for i in catalog]
    payload = json.dumps(body, sort_keys=True, separators=(",", ":"))
    digest = hashlib.sha256(payload.encode("utf-8")).hexdigest()
    return {"version": CATALOG_VERSION, "sha256": digest, "identities": body}


def identities_from_json(obj: dict) -> list[Identity]:
    body = obj["identities"]
    payload = json.dumps(body, sort_keys=True, separators=(",", ":"))
    digest = hashlib.sha256(payload.encode("utf-8")).hexdigest()
    if obj.get("sha256") != digest:
        raise ValueError("catalog content hash mismatch (file corrupted or "
                         "hand-edited)")
    return [Identity.from_json(entry) for entry in body]


def save_catalog(catalog: list[Identity], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(catalog_as_json(catalog), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_catalog(path: str | None = None) -> list[Identity]:
    """Load the shipped catalog (or the file named by HYPERTHETA_CATALOG or
    an explicit path) and verify its content hash."""
    if path is None:
        path = os.environ.get(ENV_CATALOG) or None
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            return identities_from_json(json.load(fh))
    data = resources.files("hypertheta").joinpath("data/catalog.json")
    return identities_from_json(json.loads(data.read_text(encoding="utf-8")))
