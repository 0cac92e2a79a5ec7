"""Neighborhood-weighted reconstruction of a noisy outcome distribution.

The procedure rescales each observed outcome by how much probability mass
sits in its near Hamming neighborhood, on the premise that dominant errors
cluster around correct answers while diffuse noise does not:

1. accumulate the aggregate strength vector CHS[d] over all ordered pairs
   of observed outcomes at distance d < n/2,
2. invert it into per-distance weights W[d] = 1/CHS[d] (0 where empty), so
   crowded distance bins count for less,
3. score every outcome as its own probability plus the weighted mass of
   its strictly lower-probability neighbors, multiply the score back into
   the probability, and renormalize.

Counts inputs are normalized before step 1; the additive score seed makes
the procedure scale-sensitive, so a canonical scale is fixed up front.
Scores accumulate in ascending outcome order, which keeps results
bit-reproducible run to run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import ChsVector, chs_from_arrays, chs_length
from .core import (
    Distribution,
    UsageError,
    as_probabilities,
    pack_outcomes,
    pair_block_size,
    pairwise_distances,
)


@dataclass(frozen=True)
class WeightVector:
    """Per-distance weights, elementwise reciprocal of a CHS vector."""

    width: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (chs_length(self.width),):
            raise UsageError(
                f"weight vector for width {self.width} must have {chs_length(self.width)} entries"
            )
        if np.any(values < 0):
            raise UsageError("weights must be non-negative")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class ReconstructionReport:
    """Reconstructed distribution plus the work accounting of each step.

    Pair counters are N*N for the strength pass and the scoring pass, and
    N for the final renormalization, with N the number of unique outcomes.
    """

    output: Distribution
    chs: ChsVector
    weights: WeightVector
    pair_evaluations_step1: int
    pair_evaluations_step3: int
    normalization_steps: int


def weights_from_chs(chs: ChsVector) -> WeightVector:
    """Invert a strength vector with a zero guard: W[d] = 1/CHS[d] or 0."""
    values = np.zeros_like(chs.values)
    np.divide(1.0, chs.values, out=values, where=chs.values > 0)
    return WeightVector(width=chs.width, values=values)


def neighborhood_score(d: Distribution, x: str, weights: WeightVector) -> float:
    """Score one outcome: own probability plus filtered weighted neighbor mass.

    Only neighbors within distance d < n/2 that have strictly lower
    probability than ``x`` contribute; the strict filter keeps equal-weight
    outcomes from feeding each other and excludes the self term, which
    instead seeds the score.
    """
    d = as_probabilities(d)
    if x not in d.entries:
        raise UsageError(f"outcome {x!r} is not in the support of the distribution")
    if weights.width != d.width:
        raise UsageError("weight vector width does not match distribution width")
    outcomes = d.outcomes()
    dist = pairwise_distances(
        pack_outcomes([x], d.width), pack_outcomes(outcomes, d.width)
    )[0].astype(np.int64)
    probs = np.array([d.entries[o] for o in outcomes])
    px = d.entries[x]
    keep = (dist < chs_length(d.width)) & (probs < px)
    return float(px + weights.values[dist[keep]] @ probs[keep])


def _scores_from_arrays(codes, probs, weights, width):
    """Step-3 scores for every outcome, blocked over rows."""
    # Extend the weight table with zeros so any distance can index it; the
    # strict probability filter already kills the diagonal self pairs.
    extended = np.zeros(width + 1)
    extended[: weights.shape[0]] = weights
    n = codes.shape[0]
    scores = np.empty(n)
    block = pair_block_size(n)
    for start in range(0, n, block):
        stop = min(start + block, n)
        dist = pairwise_distances(codes[start:stop], codes).astype(np.int64)
        contrib = extended[dist]
        contrib *= probs[None, :]
        contrib *= probs[start:stop, None] > probs[None, :]
        scores[start:stop] = probs[start:stop] + contrib.sum(axis=1)
    return scores


def hammer(d_in: Distribution) -> ReconstructionReport:
    """Run the full three-step reconstruction on a distribution.

    Counts are normalized first; the output is a probability distribution
    over exactly the input support.
    """
    if len(d_in) == 0:
        raise UsageError("cannot reconstruct an empty distribution")
    d = as_probabilities(d_in)
    outcomes = d.outcomes()
    n = len(outcomes)
    codes = pack_outcomes(outcomes, d.width)
    probs = np.array([d.entries[x] for x in outcomes])

    chs_values = chs_from_arrays(codes, probs, d.width)
    chs = ChsVector(width=d.width, values=chs_values, pair_evaluations=n * n)
    weights = weights_from_chs(chs)

    scores = _scores_from_arrays(codes, probs, weights.values, d.width)
    raw = scores * probs
    out_probs = raw / raw.sum()
    output = Distribution(
        width=d.width,
        entries=dict(zip(outcomes, out_probs.tolist())),
        kind="probabilities",
    )
    return ReconstructionReport(
        output=output,
        chs=chs,
        weights=weights,
        pair_evaluations_step1=n * n,
        pair_evaluations_step3=n * n,
        normalization_steps=n,
    )
