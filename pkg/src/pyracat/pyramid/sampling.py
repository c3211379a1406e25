"""Random pyramids and complexes over the matrix category, for tests and the CLI."""
from __future__ import annotations

import numpy as np

from .. import exactla as la
from ..catcore import MatCat
from ..index import epsilon
from .complexes import Complex, include_complex
from .core import Pyramid, embed_object
from .monoidal import tensor


def random_matrix(rng, rows: int, cols: int, field=la.QQ, lo: int = -2, hi: int = 2):
    return la.mat(rng.integers(lo, hi + 1, size=(rows, cols)).tolist(), field, shape=(rows, cols))


def random_complex(
    cat: MatCat, rng, max_len: int = 3, max_rank: int = 3, ranks: list[int] | None = None, start: int | None = None
) -> Complex:
    """A random bounded complex; each differential is drawn from maps killing the previous image."""
    if ranks is None:
        length = int(rng.integers(1, max_len + 1))
        ranks = [int(rng.integers(1, max_rank + 1)) for _ in range(length)]
    k0 = int(rng.integers(-2, 2)) if start is None else start
    objects = {k0 + t: r for t, r in enumerate(ranks)}
    diffs = {}
    prev = None
    for t in range(len(ranks) - 1):
        src, tgt = ranks[t], ranks[t + 1]
        if prev is None:
            f = random_matrix(rng, tgt, src, cat.field)
        else:
            # rows of N span the vectors y with y . prev = 0
            null = la.nullspace(np.ascontiguousarray(prev.T), cat.field)
            if null:
                N = la.mat([list(v) for v in null], cat.field, shape=(len(null), src))
                f = la.matmul(random_matrix(rng, tgt, len(null), cat.field), N, cat.field)
            else:
                f = la.zeros(tgt, src, cat.field)
        diffs[k0 + t] = f
        prev = f
    return Complex(cat, objects, diffs)


def random_width1(cat: MatCat, rng, max_len: int = 3, max_rank: int = 3) -> Pyramid:
    return include_complex(random_complex(cat, rng, max_len, max_rank))


def random_width0(cat: MatCat, rng, max_rank: int = 3) -> Pyramid:
    return embed_object(cat, int(rng.integers(1, max_rank + 1)))


def random_square(cat: MatCat, rng, max_rank: int = 1) -> Pyramid:
    """A width-2 pyramid built as the tensor of two short width-1 pyramids."""
    return tensor(random_width1(cat, rng, 2, max_rank), random_width1(cat, rng, 2, max_rank))


def random_pyramid(cat: MatCat, rng, max_width: int = 2) -> Pyramid:
    """Width 0, 1 or 2 with at most six cells and object ranks at most three."""
    w = int(rng.integers(0, max_width + 1))
    if w == 0:
        return random_width0(cat, rng)
    if w == 1:
        return random_width1(cat, rng)
    return tensor(random_width1(cat, rng, 3, 1), random_width1(cat, rng, 2, 3))


def random_tensor_pair(cat: MatCat, rng) -> tuple[Pyramid, Pyramid]:
    """Two factors whose tensor has width <= 2, <= 6 cells and ranks <= 3.

    Cycles through the three shapes (2,0), (0,2) and (1,1) so that squares with
    both directions in the first factor, both in the second, and one in each
    all occur.
    """
    shape = int(rng.integers(0, 3))
    if shape == 0:
        return random_square(cat, rng), random_width0(cat, rng)
    if shape == 1:
        return random_width0(cat, rng), random_square(cat, rng)
    big = random_width1(cat, rng, 3, 3)
    small = random_width1(cat, rng, 2, 1)
    return (big, small) if rng.integers(0, 2) else (small, big)


def square_cases(P: Pyramid, n: int) -> dict[str, int]:
    """Count nonzero anticommuting squares of ``P`` by where the directions sit relative to ``n``."""
    out = {"first": 0, "second": 0, "mixed": 0}
    for a in P.cells:
        for i in range(1, P.width + 1):
            for j in range(i + 1, P.width + 1):
                corner = a + epsilon(i) + epsilon(j)
                if corner not in P.cells:
                    continue
                paths = [
                    P.d(a, i) is not None and P.d(a + epsilon(i), j) is not None,
                    P.d(a, j) is not None and P.d(a + epsilon(j), i) is not None,
                ]
                if not any(paths):
                    continue
                key = "first" if j <= n else "second" if i > n else "mixed"
                out[key] += 1
    return out
