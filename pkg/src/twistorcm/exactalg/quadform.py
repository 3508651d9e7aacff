"""Inertia of symmetric rational matrices."""
from typing import Tuple

from ..errors import InvalidInput
from .linalg import is_symmetric
from .rational import rational


def signature(gram) -> Tuple[int, int, int]:
    """(positive, negative, null) index of a symmetric rational matrix.

    Symmetric Gaussian reduction: pivot on a nonzero diagonal entry when one
    exists, otherwise split off a hyperbolic 2x2 block [[0, b], [b, 0]],
    which contributes one positive and one negative direction.
    """
    m = [[rational(x) for x in row] for row in gram]
    if not is_symmetric(m):
        raise InvalidInput("signature needs a symmetric matrix")
    pos = neg = 0
    while m:
        n = len(m)
        i = next((k for k in range(n) if m[k][k]), None)
        if i is not None:
            piv = m[i][i]
            if piv > 0:
                pos += 1
            else:
                neg += 1
            rest = [k for k in range(n) if k != i]
            m = [[m[a][b] - m[a][i] * m[i][b] / piv for b in rest] for a in rest]
            continue
        pair = next(((a, b) for a in range(n) for b in range(a + 1, n) if m[a][b]), None)
        if pair is None:
            return pos, neg, n
        i, j = pair
        bij = m[i][j]
        pos += 1
        neg += 1
        rest = [k for k in range(n) if k not in (i, j)]
        # Schur complement of the block [[0, b], [b, 0]], whose inverse is [[0, 1/b], [1/b, 0]]
        m = [[m[a][c] - (m[a][i] * m[j][c] + m[a][j] * m[i][c]) / bij for c in rest] for a in rest]
    return pos, neg, 0
