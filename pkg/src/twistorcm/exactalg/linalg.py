"""Exact linear algebra over the rationals (dense, list-of-rows matrices)."""
from ..errors import InvalidInput
from .rational import ONE, ZERO, rational


def as_matrix(rows):
    return [[rational(x) for x in row] for row in rows]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(n, m):
    return [[ZERO] * m for _ in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_mul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col) if x and y), ZERO) for col in bt] for row in a]


def mat_vec(a, v):
    """Product of a rational matrix with a vector of ring elements."""
    out = []
    for row in a:
        acc = None
        for x, y in zip(row, v):
            if x:
                term = y * x
                acc = term if acc is None else acc + term
        out.append(acc if acc is not None else v[0] * 0)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mat_scale(a, c):
    return [[x * c for x in row] for row in a]


def is_symmetric(a):
    n = len(a)
    return all(len(row) == n for row in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def rref(rows, ncols=None):
    """Reduced row echelon form. Returns (nonzero reduced rows, pivot columns)."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = ONE / m[r][c]
        pivot_row = [x * inv for x in m[r]]
        m[r] = pivot_row
        nz = [j for j in range(c, len(pivot_row)) if pivot_row[j]]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    for j in nz:
                        row[j] -= f * pivot_row[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows):
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows, ncols):
    """Basis of {x : A x = 0} for A given by ``rows`` with ``ncols`` columns."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def inverse(a):
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(n))]
    red, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise InvalidInput("singular matrix")
    return [row[n:] for row in red]


def solve(a, b):
    """Solve A x = b for square nonsingular A (b a rational vector)."""
    n = len(a)
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise InvalidInput("singular matrix")
    return [row[n] for row in red]


def determinant(a):
    m = [list(r) for r in a]
    n = len(m)
    det = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        inv = ONE / m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] * inv
            if f:
                for j in range(c, n):
                    m[i][j] -= f * m[c][j]
    return det


class Echelon:
    """Incrementally maintained reduced echelon basis of a subspace of Q^dim.

    Optionally tracks a linear map: every inserted vector carries an image
    (any objects supporting +, - and scalar *), and reductions are mirrored
    on the images.  Used for minimal polynomials (images = exponent
    bookkeeping) and for transporting complex conjugation along a span.
    """

    __slots__ = ("dim", "rows", "images", "track")

    def __init__(self, dim, track=False):
        self.dim = dim
        self.rows = {}      # pivot column -> (row list, nonzero columns)
        self.images = {}
        self.track = track

    def __len__(self):
        return len(self.rows)

    def reduce(self, v, image=None):
        v = list(v)
        carry = self.track and image is not None
        for p, (row, nz) in self.rows.items():
            c = v[p]
            if c:
                for j in nz:
                    v[j] -= c * row[j]
                if carry:
                    image = _axpy(image, -c, self.images[p])
        return (v, image) if self.track else v

    def add(self, v, image=None):
        """Insert v; returns True if it enlarged the span."""
        if self.track:
            v, image = self.reduce(v, image)
        else:
            v = self.reduce(v)
        p = next((j for j, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = ONE / v[p]
        v = [x * inv for x in v]
        nz = [j for j, x in enumerate(v) if x]
        if self.track:
            image = _scale(image, inv)
        for q, (row, rnz) in list(self.rows.items()):
            c = row[p]
            if c:
                for j in nz:
                    row[j] -= c * v[j]
                self.rows[q] = (row, [j for j, x in enumerate(row) if x])
                if self.track:
                    self.images[q] = _axpy(self.images[q], -c, image)
        self.rows[p] = (v, nz)
        if self.track:
            self.images[p] = image
        return True

    def contains(self, v):
        r = self.reduce(v)
        if self.track:
            r = r[0]
        return not any(r)

    def basis(self):
        """Canonical basis (rows sorted by pivot)."""
        return [tuple(self.rows[p][0]) for p in sorted(self.rows)]

    def basis_images(self):
        return [self.images[p] for p in sorted(self.rows)]

    def coordinates(self, v):
        """Coefficients of v in terms of basis(); raises if v is not in the span."""
        v = list(v)
        coeffs = []
        for p in sorted(self.rows):
            c = v[p]
            coeffs.append(c)
            if c:
                row, nz = self.rows[p]
                for j in nz:
                    v[j] -= c * row[j]
        if any(v):
            raise InvalidInput("vector not in span")
        return coeffs


def _axpy(y, a, x):
    # y + a*x on tracked images (vectors as lists, or ring elements)
    if isinstance(y, list):
        return [yi + a * xi for yi, xi in zip(y, x)]
    return y + x * a


def _scale(y, a):
    if isinstance(y, list):
        return [yi * a for yi in y]
    return y * a
