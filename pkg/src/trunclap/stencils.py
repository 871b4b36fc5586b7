"""Lattice direction sets and orthogonal frames for the wide stencil.

Directions are integer vectors with coprime components and max-norm <= width,
stored as one representative per +/- pair (the scheme always uses both arms).
Frames are k-tuples of mutually orthogonal directions (exact integer dot
products); the axis-aligned frame is always present and listed first, and
k = dim routes to the axis frame alone, which reduces the operator to the
classical 5/7-point Laplacian.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import gcd

import numpy as np

from .errors import InvalidInputError

DEFAULT_WIDTH = {2: 2, 3: 1}


def _canonical(vec):
    # representative of the +/- pair: first nonzero component positive
    for c in vec:
        if c != 0:
            return vec if c > 0 else tuple(-v for v in vec)
    return vec


def direction_reps(dim, width):
    """Undirected lattice directions: coprime, max-norm <= width, axes first."""
    seen = set()
    reps = []
    for vec in product(range(-width, width + 1), repeat=dim):
        if all(v == 0 for v in vec):
            continue
        g = 0
        for v in vec:
            g = gcd(g, abs(v))
        if g != 1:
            continue
        rep = _canonical(vec)
        if rep not in seen:
            seen.add(rep)
            reps.append(rep)

    def sort_key(v):
        a = np.asarray(v)
        return (float(a @ a), tuple(-np.abs(a)), v)

    axes = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rest = sorted((r for r in reps if r not in axes), key=sort_key)
    return axes + rest


@dataclass(frozen=True)
class StencilSet:
    """Direction set and orthogonal frames for one (dim, width, k)."""

    dim: int
    width: int
    k: int
    dirs: np.ndarray = field(repr=False)      # (D, dim) int, undirected representatives
    lengths: np.ndarray = field(repr=False)   # (D,) euclidean lengths
    frames: tuple = ()                        # tuples of indices into dirs

    @property
    def directions(self):
        """Full directed set (closed under negation)."""
        return np.vstack([self.dirs, -self.dirs])

    @property
    def n_dirs(self):
        return self.dirs.shape[0]

    def max_arm_length(self):
        return float(self.lengths.max())

    def angular_resolution(self):
        """Max angle from any unit vector to the nearest stencil direction (2D only)."""
        if self.dim != 2:
            raise InvalidInputError("angular resolution is defined for 2D stencils")
        ang = np.sort(np.mod(np.arctan2(self.directions[:, 1], self.directions[:, 0]), 2 * np.pi))
        gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * np.pi]]))
        return float(gaps.max() / 2.0)


@lru_cache(maxsize=None)
def build_stencil(dim, width=None, k=1) -> StencilSet:
    if dim not in (2, 3):
        raise InvalidInputError(f"dimension must be 2 or 3, got {dim}")
    if width is None:
        width = DEFAULT_WIDTH[dim]
    if width < 1:
        raise InvalidInputError(f"stencil width must be >= 1, got {width}")
    if not 1 <= k <= dim:
        raise InvalidInputError(f"k must be in [1, {dim}], got {k}")
    reps = direction_reps(dim, width)
    dirs = np.array(reps, dtype=np.int64)
    lengths = np.sqrt((dirs**2).sum(axis=1).astype(float))

    if k == dim:
        frames = (tuple(range(dim)),)          # axis frame only: the Laplacian route
    elif k == 1:
        frames = tuple((i,) for i in range(len(reps)))
    else:
        frames = tuple(
            combo
            for combo in combinations(range(len(reps)), k)
            if all(dirs[a] @ dirs[b] == 0 for a, b in combinations(combo, 2))
        )
        if not frames:
            raise InvalidInputError(f"no orthogonal {k}-frames in the width-{width} stencil")

    dirs.setflags(write=False)
    lengths.setflags(write=False)
    return StencilSet(dim=dim, width=width, k=k, dirs=dirs, lengths=lengths, frames=frames)
