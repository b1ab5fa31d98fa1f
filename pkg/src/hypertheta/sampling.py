"""Seeded random draws of period matrices and argument points.

The verification harness samples (tau, p1, p2) triples from a fixed family
chosen so the identity residuals stay well-scaled in double precision:

  * tau:  Im tau1, Im tau2 uniform in [0.8, 2.0]; Re tau1, Re tau2, Re tau12
          uniform in [-0.5, 0.5]; Im tau12 uniform in (-m, m) with
          m = sqrt(Im tau1 * Im tau2 - 0.2), so det Im(T) >= 0.2 always.
  * points: Re parts uniform in [-0.5, 0.5], Im parts uniform in [-0.3, 0.3].

All draws go through numpy's PCG64 so reports reproduce across platforms.
Every identity id gets its own child seed derived from (root seed, id), so a
filtered run (--only) sees exactly the same samples as a full run.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .theta_core import EvalPoint, PeriodMatrix

TAU_IM_DIAG = (0.8, 2.0)
TAU_RE = (-0.5, 0.5)
TAU_DET_FLOOR = 0.2
POINT_RE = (-0.5, 0.5)
POINT_IM = (-0.3, 0.3)


@dataclass(frozen=True)
class SampleAssignment:
    """One drawn (tau, p1, p2) triple plus the integer seed that labels it."""

    tau: PeriodMatrix
    p1: EvalPoint
    p2: EvalPoint
    seed: int

    def as_json(self) -> dict:
        return {"tau": self.tau.as_json(), "p1": self.p1.as_json(),
                "p2": self.p2.as_json(), "seed": self.seed}


def child_seed(root_seed: int, label: str) -> np.random.SeedSequence:
    """Deterministic per-label seed stream under a common root seed."""
    digest = hashlib.sha256(label.encode("utf-8")).digest()
    return np.random.SeedSequence([root_seed, int.from_bytes(digest[:8], "big")])


def make_rng(root_seed: int, label: str) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(child_seed(root_seed, label)))


def sample_tau(rng: np.random.Generator) -> PeriodMatrix:
    im1 = rng.uniform(*TAU_IM_DIAG)
    im2 = rng.uniform(*TAU_IM_DIAG)
    margin = np.sqrt(im1 * im2 - TAU_DET_FLOOR)
    im12 = rng.uniform(-margin, margin)
    re1, re2, re12 = rng.uniform(*TAU_RE, size=3)
    tau = PeriodMatrix(complex(re1, im1), complex(re2, im2), complex(re12, im12))
    tau.validate()
    return tau


def sample_point(rng: np.random.Generator) -> EvalPoint:
    re = rng.uniform(*POINT_RE, size=2)
    im = rng.uniform(*POINT_IM, size=2)
    return EvalPoint(complex(re[0], im[0]), complex(re[1], im[1]))


def sample_assignment(rng: np.random.Generator, seed_label: int) -> SampleAssignment:
    """Draw tau first, then p1, p2, in a fixed order (order is part of the API:
    changing it would silently change every pinned report)."""
    tau = sample_tau(rng)
    p1 = sample_point(rng)
    p2 = sample_point(rng)
    return SampleAssignment(tau, p1, p2, seed_label)


def assignments_for(root_seed: int, label: str, n: int) -> list[SampleAssignment]:
    rng = make_rng(root_seed, label)
    return [sample_assignment(rng, i) for i in range(n)]
