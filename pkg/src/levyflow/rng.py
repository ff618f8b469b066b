"""Seeded random streams with deterministic splitting.

Every sampler in the package draws from an :class:`Rng` so that a run is
reproducible bit-for-bit from its seed.  Independent sub-streams (one per
rolling-window refit, one per worker) are derived with :meth:`Rng.split`,
which is itself deterministic.
"""

from __future__ import annotations

import numpy as np


class Rng:
    """A seeded random stream (PCG64 underneath).

    Parameters
    ----------
    seed : int
        64-bit seed.  Two ``Rng`` instances built from the same seed produce
        bit-identical draw sequences.
    """

    def __init__(self, seed: int, _seq: np.random.SeedSequence | None = None):
        self.seed = int(seed)
        self._seq = np.random.SeedSequence(self.seed) if _seq is None else _seq
        self.gen = np.random.Generator(np.random.PCG64(self._seq))

    def uniform(self, n: int | None = None):
        """Standard uniform draws on [0, 1)."""
        return self.gen.random(n)

    def normal(self, n: int | None = None):
        """Standard normal draws."""
        return self.gen.standard_normal(n)

    def integers(self, lo: int, hi: int, n: int | None = None):
        return self.gen.integers(lo, hi, size=n)

    def permutation(self, n: int) -> np.ndarray:
        return self.gen.permutation(n)

    def split(self, n: int) -> list["Rng"]:
        """Derive ``n`` independent child streams, deterministically."""
        children = self._seq.spawn(n)
        return [Rng(self.seed, _seq=c) for c in children]

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed})"
