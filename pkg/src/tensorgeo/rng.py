"""Counter-based random streams.

Every stochastic routine in the package draws from a Philox generator
keyed by the user seed and advanced to a disjoint counter block per
sample (or batch) index.  Results are therefore reproducible bit for bit
given (seed, budget) and independent of how work is chunked.
"""

import numpy as np

__all__ = ["stream"]

_BLOCK = 1 << 40  # counter states reserved per index; far above any batch use


def stream(seed, index=0):
    """Generator for sample block `index` of the stream keyed by `seed`."""
    bg = np.random.Philox(key=np.uint64(seed))
    bg.advance(int(index) * _BLOCK)
    return np.random.Generator(bg)
