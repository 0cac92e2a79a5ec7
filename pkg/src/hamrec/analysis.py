"""Hamming-space diagnostics for outcome distributions.

Three views of where the probability mass sits relative to a reference
(correct) set or to every other observed outcome:

* a spectrum that buckets outcomes by minimum distance to the reference,
* cumulative strength vectors holding the mass at each distance d, per
  outcome or aggregated over all ordered pairs of outcomes,
* the expected Hamming distance of the erroneous mass.

Strength vectors only keep distances d with d < n/2 (indices 0 to
ceil(n/2) - 1); everything further away is treated as structureless.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    Distribution,
    UsageError,
    _check_bitstring,
    pack_outcomes,
    pair_block_size,
    pairwise_distances,
)

BIN_CONSERVATION_TOL = 1e-12


def chs_length(width: int) -> int:
    """Number of tracked distance bins: ceil(width / 2)."""
    return (width + 1) // 2


def max_neighbor_distance(width: int) -> int:
    """Largest distance that still counts as neighborhood (d < width/2)."""
    return chs_length(width) - 1


@dataclass(frozen=True)
class ChsVector:
    """Cumulative Hamming strength: mass at each distance 0..ceil(n/2)-1.

    ``pair_evaluations`` records how many ordered outcome pairs were
    examined to fill the vector (N*N for the global form, N for the
    per-outcome form).
    """

    width: int
    values: np.ndarray
    pair_evaluations: int = 0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (chs_length(self.width),):
            raise UsageError(
                f"CHS vector for width {self.width} must have {chs_length(self.width)} entries"
            )
        if np.any(values < 0):
            raise UsageError("CHS entries must be non-negative")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class HammingSpectrum:
    """Outcomes bucketed by minimum distance to a reference set.

    ``bins[k]`` lists (outcome, probability) pairs at distance k, sorted by
    descending probability; indices run 0..width inclusive.
    """

    width: int
    reference: tuple[str, ...]
    bins: tuple[tuple[tuple[str, float], ...], ...]

    def total_probability(self) -> float:
        return float(sum(p for bucket in self.bins for _, p in bucket))


def _require_probabilities(d: Distribution, op: str) -> Distribution:
    if d.kind != "probabilities":
        raise UsageError(f"{op} requires a normalized distribution; call normalize() first")
    return d


def _checked_reference(reference, width: int) -> tuple[str, ...]:
    refs = sorted(set(reference))
    if not refs:
        raise UsageError("reference set must be non-empty")
    for r in refs:
        _check_bitstring(r, width=width)
    return tuple(refs)


def _distances_to_reference(outcomes: list[str], refs: tuple[str, ...], width: int) -> np.ndarray:
    codes = pack_outcomes(outcomes, width)
    ref_codes = pack_outcomes(refs, width)
    return pairwise_distances(codes, ref_codes).min(axis=1).astype(np.int64)


def build_spectrum(d: Distribution, reference) -> HammingSpectrum:
    """Bucket every outcome of ``d`` by its minimum distance to ``reference``."""
    _require_probabilities(d, "build_spectrum")
    refs = _checked_reference(reference, d.width)
    outcomes = d.outcomes()
    buckets: list[list[tuple[str, float]]] = [[] for _ in range(d.width + 1)]
    if outcomes:
        dist = _distances_to_reference(outcomes, refs, d.width)
        for x, k in zip(outcomes, dist):
            buckets[k].append((x, d.entries[x]))
    bins = tuple(
        tuple(sorted(bucket, key=lambda item: (-item[1], item[0])))
        for bucket in buckets
    )
    return HammingSpectrum(width=d.width, reference=refs, bins=bins)


def chs_for_outcome(d: Distribution, x: str) -> ChsVector:
    """Mass of ``d`` at each distance k < n/2 from the single outcome ``x``.

    The self term (k = 0) is included when ``x`` carries probability.
    """
    _require_probabilities(d, "chs_for_outcome")
    _check_bitstring(x, width=d.width)
    n_bins = chs_length(d.width)
    values = np.zeros(n_bins)
    outcomes = d.outcomes()
    if outcomes:
        dist = pairwise_distances(
            pack_outcomes([x], d.width), pack_outcomes(outcomes, d.width)
        )[0].astype(np.int64)
        probs = np.array([d.entries[o] for o in outcomes])
        keep = dist < n_bins
        values += np.bincount(dist[keep], weights=probs[keep], minlength=n_bins)[:n_bins]
    return ChsVector(width=d.width, values=values, pair_evaluations=len(d))


def chs_from_arrays(codes: np.ndarray, probs: np.ndarray, width: int) -> np.ndarray:
    """Aggregate CHS over all ordered pairs, on pre-packed outcome codes.

    Shared with the reconstruction step; accumulation order is fixed by the
    row order of ``codes``.
    """
    n_bins = chs_length(width)
    values = np.zeros(n_bins)
    n = codes.shape[0]
    block = pair_block_size(n)
    for start in range(0, n, block):
        dist = pairwise_distances(codes[start:start + block], codes)
        keep = dist < n_bins
        weights = np.broadcast_to(probs, dist.shape)[keep]
        values += np.bincount(dist[keep].astype(np.int64), weights=weights, minlength=n_bins)[:n_bins]
    return values


def global_chs(d: Distribution) -> ChsVector:
    """Aggregate CHS over all ordered pairs of outcomes in ``d``.

    values[k] sums p(y) over every ordered pair (x, y) at distance k < n/2,
    so values[0] is the total probability and the reported pair counter is
    exactly N*N.
    """
    _require_probabilities(d, "global_chs")
    outcomes = d.outcomes()
    codes = pack_outcomes(outcomes, d.width)
    probs = np.array([d.entries[o] for o in outcomes])
    values = chs_from_arrays(codes, probs, d.width)
    return ChsVector(width=d.width, values=values, pair_evaluations=len(d) ** 2)


def ehd(d: Distribution, reference, mode: str = "normalized") -> float:
    """Expected Hamming distance of the erroneous mass from the reference.

    raw mode returns sum(p(x) * minHD(x, R)) over incorrect outcomes;
    normalized mode (default) divides by the incorrect mass, yielding a
    weighted average in [0, n]. An error-free distribution gives 0.
    """
    if mode not in ("normalized", "raw"):
        raise UsageError(f"ehd mode must be normalized or raw, got {mode!r}")
    _require_probabilities(d, "ehd")
    refs = _checked_reference(reference, d.width)
    ref_set = set(refs)
    wrong = [x for x in d.outcomes() if x not in ref_set]
    if not wrong:
        return 0.0
    dist = _distances_to_reference(wrong, refs, d.width)
    probs = np.array([d.entries[x] for x in wrong])
    raw = float(dist @ probs)
    if mode == "raw":
        return raw
    wrong_mass = float(probs.sum())
    if wrong_mass <= 0.0:
        return 0.0
    return raw / wrong_mass


def uniform_ehd_closed_form(width: int) -> float:
    """Normalized EHD of the uniform distribution with a singleton reference."""
    return width * 2.0 ** (width - 1) / (2.0 ** width - 1)


# ---------------------------------------------------------------------------
# Plot-ready exports.

def spectrum_to_json_obj(spectrum: HammingSpectrum) -> list:
    return [
        {"d": k, "outcomes": [[x, p] for x, p in bucket]}
        for k, bucket in enumerate(spectrum.bins)
    ]


def spectrum_rows(spectrum: HammingSpectrum) -> list[tuple[int, str, float]]:
    """Flat (d, bitstring, probability) rows for CSV export."""
    return [
        (k, x, p)
        for k, bucket in enumerate(spectrum.bins)
        for x, p in bucket
    ]


def spectrum_to_csv(spectrum: HammingSpectrum) -> str:
    lines = ["d,bitstring,probability"]
    lines += [f"{k},{x},{p!r}" for k, x, p in spectrum_rows(spectrum)]
    return "\n".join(lines) + "\n"
