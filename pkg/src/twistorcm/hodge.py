"""Rational Hodge structures of K3 type: CM construction, period coordinates,
period field, endomorphism field and the CM criteria."""
from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import List, Optional, Sequence, Tuple

from .errors import (BudgetExhausted, ConsistencyError, DegenerateStructure, InvalidInput,
                     NotAnIsometryGenerator, SignatureMismatch, TheoremViolation)
from .exactalg import (FieldElement, NumberField, RationalPolynomial, Subfield, count_real_roots,
                       certified_sign_at_real_embeddings, field_generated_by, minimal_polynomial,
                       signature)
from .exactalg.extension import FieldEmbedding
from .exactalg.linalg import (Echelon, determinant, identity, inverse, is_symmetric, mat_mul,
                              mat_vec, nullspace, transpose)
from .exactalg.rational import ONE, ZERO, rational


# ---------------------------------------------------------------------------
# quadratic spaces

@dataclass(frozen=True)
class QuadraticSpace:
    gram: tuple
    signature: Tuple[int, int, int]

    @classmethod
    def from_gram(cls, gram) -> "QuadraticSpace":
        g = [[rational(x) for x in row] for row in gram]
        if not is_symmetric(g):
            raise InvalidInput("gram matrix must be symmetric")
        sig = signature(g)
        r = len(g)
        if sig not in ((2, r - 2, 0), (3, r - 3, 0)):
            raise SignatureMismatch(f"form of signature {sig} is not of K3 type", sig)
        return cls(tuple(tuple(row) for row in g), sig)

    @property
    def dimension(self) -> int:
        return len(self.gram)

    def matrix(self):
        return [list(row) for row in self.gram]

    def pair(self, u, v):
        """(u, v) for a rational vector u and a vector v of rationals or field elements."""
        g = self.gram
        acc = None
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if g[i][j]:
                    term = vj * (ui * g[i][j])
                    acc = term if acc is None else acc + term
        return acc if acc is not None else v[0] * 0

    def inverse_gram(self):
        cached = self.__dict__.get("_inv")
        if cached is None:
            cached = inverse(self.matrix())
            object.__setattr__(self, "_inv", cached)
        return cached


def dual_pairing(gram_inv, x, y):
    """x^T G^{-1} y for coordinate vectors x_i = (u, gamma_i), y_i = (v, gamma_i)."""
    acc = None
    for i, xi in enumerate(x):
        row = gram_inv[i]
        inner = None
        for j, yj in enumerate(y):
            if row[j]:
                t = yj * row[j]
                inner = t if inner is None else inner + t
        if inner is not None:
            t = xi * inner
            acc = t if acc is None else acc + t
    return acc if acc is not None else x[0] * 0


# ---------------------------------------------------------------------------
# CM fields

class CMField:
    """A CM number field together with its complex conjugation and its maximal
    totally real subfield K0 (as a separate absolute field embedded in K)."""

    def __init__(self, field: NumberField, conj_gen: Optional[FieldElement] = None, name=None):
        if field.degree % 2:
            raise InvalidInput("a CM field has even degree")
        if not field.is_totally_imaginary():
            raise InvalidInput(f"{field} is not totally imaginary")
        self.field = field
        self.name = name or field.modulus.pretty("X")
        theta = field.gen()
        if conj_gen is None:
            conj_gen = _recognize_conjugation(field)
        self.conj = FieldEmbedding(field, field, conj_gen)
        if self.conj(conj_gen) != theta or conj_gen == theta:
            raise InvalidInput("conjugation must be a nontrivial involution")
        real = field_generated_by([theta + conj_gen])
        if 2 * real.degree != field.degree:
            real = _fixed_field(self)
        beta = real.primitive_element()
        k0 = NumberField(minimal_polynomial(beta), name="beta", check=False)
        if not k0.is_totally_real():
            raise InvalidInput("fixed field of the involution is not totally real")
        self.real_field = k0
        self.real_embedding = FieldEmbedding(k0, field, beta)
        ech = Echelon(field.degree, track=True)
        for b in k0.basis():
            ech.add(self.real_embedding(b).coeffs, list(b.coeffs))
        self._real_echelon = ech

    @property
    def degree(self) -> int:
        return self.field.degree

    def conjugate(self, e: FieldElement) -> FieldElement:
        return self.conj(e)

    def to_real(self, e: FieldElement) -> FieldElement:
        """Coordinates in K0 of an element of K fixed by conjugation."""
        e = self.field(e)
        red, image = self._real_echelon.reduce(e.coeffs, [ZERO] * self.real_field.degree)
        if any(red):
            raise InvalidInput("element is not in the real subfield")
        return self.real_field([-c for c in image])

    def from_real(self, e) -> FieldElement:
        return self.real_embedding(e)

    def is_real(self, e: FieldElement) -> bool:
        return self.conj(e) == e


def _fixed_field(cm: "CMField"):
    basis = cm.field.basis()
    sums = [b + cm.conj(b) for b in basis]
    return field_generated_by(sums, ambient=cm.field)


def _recognize_conjugation(field: NumberField) -> FieldElement:
    """Complex conjugation on a CM field as a polynomial in the generator.

    Complex conjugation commutes with every embedding of a CM field, so
    conj(theta) = g(theta) for one rational polynomial g; g is recovered
    from the conjugate roots and verified exactly.
    """
    import mpmath
    from .exactalg.extension import recognize_rational
    from .exactalg.realroots import precision_cap
    n = field.degree
    bits = 128
    while True:
        roots = field.numeric_roots(bits)
        with mpmath.workprec(bits + 32):
            vander = mpmath.matrix([[z ** k for k in range(n)] for z in roots])
            rhs = mpmath.matrix([mpmath.conj(z) for z in roots])
            c = mpmath.lu_solve(vander, rhs)
            coeffs = [recognize_rational(mpmath.re(c[k]), 1 << (bits // 3)) for k in range(n)]
        cand = field(coeffs)
        if field.modulus(cand).is_zero() and cand != field.gen():
            return cand
        if bits >= precision_cap():
            raise InvalidInput("could not identify complex conjugation; is the field CM?")
        bits *= 2


# ---------------------------------------------------------------------------
# Hodge structures

@dataclass
class HodgeStructure:
    """T with period coordinates x_i = (sigma, gamma_i) and their complex
    conjugates, all inside one ambient number field."""
    space: QuadraticSpace
    ambient: NumberField
    sigma_coords: tuple
    sigma_bar_coords: Optional[tuple] = None

    @property
    def dimension(self) -> int:
        return self.space.dimension

    def pairing_sigma_sigma(self):
        gi = self.space.inverse_gram()
        return dual_pairing(gi, self.sigma_coords, self.sigma_coords)

    def pairing_sigma_sigma_bar(self):
        gi = self.space.inverse_gram()
        return dual_pairing(gi, self.sigma_coords, self.sigma_bar_coords)


@dataclass
class CMHodgeStructure(HodgeStructure):
    """Trace-form CM structure: T = K with (x, y) = Tr(xi * x * conj(y)),
    basis gamma_i = alpha^(1-i), sigma coordinates (1, alpha, ..., alpha^(r-1))."""
    cm: Optional[CMField] = None
    alpha: Optional[FieldElement] = None
    xi: Optional[FieldElement] = None
    alpha_matrix: Optional[list] = None
    s_real: Optional[FieldElement] = None        # (sigma, sigma-bar) in K0
    distinguished: int = 0                       # index of the real place of K0 where xi > 0

    @property
    def field(self) -> NumberField:
        return self.ambient


def build_cm_structure(cm: CMField, alpha: FieldElement, xi) -> CMHodgeStructure:
    K = cm.field
    alpha = K(alpha)
    r = K.degree
    alpha_bar = cm.conj(alpha)
    if alpha * alpha_bar != K.one():
        raise NotAnIsometryGenerator("alpha * conj(alpha) != 1")
    if minimal_polynomial(alpha).degree != r:
        raise NotAnIsometryGenerator("alpha does not generate the field")
    if isinstance(xi, FieldElement) and xi.parent is K:
        xi_real = cm.to_real(xi)
    else:
        xi_real = cm.real_field(xi)
    xi_k = cm.from_real(xi_real)
    if xi_real.is_zero():
        raise SignatureMismatch("xi = 0 gives a degenerate form", (0, 0, r))
    signs = certified_sign_at_real_embeddings(xi_real)
    inv_alpha = alpha_bar
    powers = [K.one()]
    for _ in range(r - 1):
        powers.append(powers[-1] * alpha)
    inv_powers = [K.one()]
    for _ in range(r - 1):
        inv_powers.append(inv_powers[-1] * inv_alpha)
    # G_ij = Tr(xi * gamma_i * conj(gamma_j)) = Tr(xi * alpha^(j-i))
    traces = {}
    for k in range(-(r - 1), r):
        e = powers[k] if k >= 0 else inv_powers[-k]
        traces[k] = (xi_k * e).trace()
    gram = [[traces[j - i] for j in range(r)] for i in range(r)]
    sig = signature(gram)
    if signs.count(1) != 1:
        raise SignatureMismatch(f"xi must have exactly one positive real embedding; form has "
                                f"signature {sig}", sig)
    if sig != (2, r - 2, 0):
        raise ConsistencyError(f"trace form has unexpected signature {sig}")
    space = QuadraticSpace(tuple(tuple(row) for row in gram), sig)
    # alpha acts as multiplication: alpha * gamma_i = gamma_{i-1}; gamma_0 = alpha expanded
    basis_matrix = [list(col) for col in zip(*[p.coeffs for p in inv_powers])]
    binv = inverse(basis_matrix)
    alpha_coords = mat_vec(binv, list(alpha.coeffs))
    A = [[ZERO] * r for _ in range(r)]
    for i in range(r):
        col = alpha_coords if i == 0 else [ONE if k == i - 1 else ZERO for k in range(r)]
        for k in range(r):
            A[k][i] = col[k]
    H = CMHodgeStructure(space=space, ambient=K, sigma_coords=tuple(powers),
                         sigma_bar_coords=tuple(inv_powers), cm=cm, alpha=alpha, xi=xi_k,
                         alpha_matrix=A, distinguished=signs.index(1))
    _check_cm_structure(H)
    return H


def _check_cm_structure(H: CMHodgeStructure):
    K = H.ambient
    G = H.space.matrix()
    A = H.alpha_matrix
    if mat_mul(transpose(A), mat_mul(G, A)) != G:
        raise ConsistencyError("alpha is not an isometry of the trace form")
    # minimal polynomial of A equals the modulus: f(A) = 0 and deg f = r
    f = minimal_polynomial(H.alpha)
    acc = [[ZERO] * len(A) for _ in A]
    for c in reversed(f.coeffs):
        acc = mat_mul(acc, A)
        for i in range(len(A)):
            acc[i][i] += c
    if any(any(row) for row in acc):
        raise ConsistencyError("alpha matrix does not satisfy the minimal polynomial of alpha")
    if not H.pairing_sigma_sigma().is_zero():
        raise ConsistencyError("(sigma, sigma) != 0")
    s = H.pairing_sigma_sigma_bar()
    s_real = H.cm.to_real(s)
    signs = certified_sign_at_real_embeddings(s_real)
    if signs[H.distinguished] != 1:
        raise ConsistencyError("(sigma, sigma-bar) not positive at the distinguished embedding")
    H.s_real = s_real


def _height_shell(n: int, height: int, rng=None):
    """Integer vectors of max-norm exactly ``height``; each coordinate runs
    over 0, 1, -1, 2, -2, ... with the first coordinate varying slowest.
    A random.Random ``rng`` shuffles the shell deterministically."""
    values = [0]
    for h in range(1, height + 1):
        values += [h, -h]
    shell = [c for c in product(values, repeat=n) if max(abs(x) for x in c) == height]
    if rng is not None:
        rng.shuffle(shell)
    return shell


def norm_one_primitive(cm: CMField, budget: int = 20000, rng=None) -> FieldElement:
    """First alpha = u / conj(u) of full degree over small-height u.

    u runs over coefficient vectors (power basis, highest power first) of
    increasing max-height.
    """
    K = cm.field
    n = K.degree
    tried = 0
    height = 1
    while True:
        for combo in _height_shell(n, height, rng):
            tried += 1
            if tried > budget:
                raise BudgetExhausted(f"no primitive norm-one element within {budget} candidates")
            u = K(list(reversed(combo)))
            alpha = u / cm.conj(u)
            if minimal_polynomial(alpha).degree == n:
                return alpha
        height += 1


def search_xi(cm: CMField, budget: int = 20000, rng=None):
    """Smallest-height element of K0 with exactly one positive real embedding."""
    k0 = cm.real_field
    n = k0.degree
    tried = 0
    height = 1
    while True:
        for combo in _height_shell(n, height, rng):
            tried += 1
            if tried > budget:
                raise BudgetExhausted(f"no admissible xi within {budget} candidates")
            e = k0(list(reversed(combo)))
            if certified_sign_at_real_embeddings(e).count(1) == 1:
                return e
        height += 1


# ---------------------------------------------------------------------------
# periods and fields

def period_coordinates(H: HodgeStructure, basis_change=None):
    """Coordinates (sigma, gamma'_j) for the basis gamma'_j = sum_i P_ij gamma_i."""
    x = list(H.sigma_coords)
    if basis_change is None:
        return tuple(x)
    P = [[rational(v) for v in row] for row in basis_change]
    if len(P) != len(x) or determinant(P) == 0:
        raise InvalidInput("basis change must be an invertible square matrix")
    return tuple(mat_vec(transpose(P), x))


def _coords_and_conj(H_or_coords):
    if isinstance(H_or_coords, HodgeStructure):
        return list(H_or_coords.sigma_coords), (
            list(H_or_coords.sigma_bar_coords) if H_or_coords.sigma_bar_coords else None)
    return list(H_or_coords), None


def period_field(H_or_coords, conj_coords=None) -> Subfield:
    """Q(x_2/x_1, ..., x_r/x_1) inside the ambient field; complex conjugation
    is tracked when conjugate coordinates are available."""
    x, xb = _coords_and_conj(H_or_coords)
    if conj_coords is not None:
        xb = list(conj_coords)
    if x[0].is_zero():
        raise DegenerateStructure("x_1 = 0: reducible or degenerate structure")
    inv = x[0].inverse()
    ratios = [xi * inv for xi in x[1:]]
    images = None
    if xb is not None:
        ib = xb[0].inverse()
        images = [y * ib for y in xb[1:]]
    sub = field_generated_by(ratios, ambient=x[0].parent, images=images)
    span_dim = _rational_span_dim([x[0] * inv] + ratios)
    if sub.degree < span_dim:
        raise ConsistencyError("period field smaller than the span of affine coordinates")
    return sub


def _rational_span_dim(elements) -> int:
    ech = Echelon(elements[0].parent.degree)
    for e in elements:
        ech.add(e.coeffs)
    return len(ech)


def rational_11_classes(space: QuadraticSpace, sigma_coords) -> List[list]:
    """Basis of {q in Q^r : sum q_i x_i = 0}, the rational classes orthogonal to sigma."""
    x = list(sigma_coords)
    n = x[0].parent.degree
    r = len(x)
    rows = [[x[i].coeffs[k] for i in range(r)] for k in range(n)]
    return nullspace(rows, r)


def positive_plane_rational_dimension(space: QuadraticSpace, sigma_coords, sigma_bar_coords) -> int:
    """dim_Q of the rational classes lying in the real span of Re(sigma), Im(sigma)."""
    gi = space.inverse_gram()
    c = mat_vec(gi, list(sigma_coords))
    cb = mat_vec(gi, list(sigma_bar_coords))
    r = len(c)
    n = c[0].parent.degree
    rows = []
    # q lies in span(c, cb) iff all 3x3 minors of [q | c | cb] vanish
    for i in range(r):
        for j in range(i + 1, r):
            for k in range(j + 1, r):
                coef = {i: c[j] * cb[k] - c[k] * cb[j],
                        j: -(c[i] * cb[k] - c[k] * cb[i]),
                        k: c[i] * cb[j] - c[j] * cb[i]}
                for t in range(n):
                    rows.append([coef[p].coeffs[t] if p in coef else ZERO for p in range(r)])
    if not rows:
        return r
    return len(nullspace(rows, r))


# ---------------------------------------------------------------------------
# endomorphism field

@dataclass
class EndomorphismFieldResult:
    matrix_basis: list
    primitive_minpoly: Optional[RationalPolynomial]
    classification: str              # "totally-real", "CM", or "reducible"
    degree: int
    real_subfield_degree: int
    scalar_field: Optional[Subfield] = None       # image of K_T in the ambient field
    real_scalar_field: Optional[Subfield] = None  # image of the self-adjoint part
    lt_dimension: int = 0                          # intermediate L_T (debug only)
    reducible: bool = False


def _adjoint(M, G, Ginv):
    return mat_mul(Ginv, mat_mul(transpose(M), G))


def _flatten(M):
    return [x for row in M for x in row]


def _unflatten(v, r):
    return [list(v[i * r:(i + 1) * r]) for i in range(r)]


def endomorphism_field(space: QuadraticSpace, sigma_coords, check_theorems: bool = True,
                       reducible: Optional[bool] = None) -> EndomorphismFieldResult:
    """Hodge endomorphisms by direct solve.

    With c = G^{-1} x the coordinate vector of sigma, a rational matrix M
    maps sigma into C*sigma iff (Mc)_i c_p - (Mc)_p c_i = 0 for a fixed pivot
    p with c_p != 0; these are linear in M.  K_T is the largest subspace of
    that solution space L_T stable under the metric adjoint G^{-1} M^T G.
    """
    x = list(sigma_coords)
    r = len(x)
    L = x[0].parent
    n = L.degree
    G = space.matrix()
    Ginv = space.inverse_gram()
    if reducible is None:
        reducible = bool(rational_11_classes(space, x))
    c = mat_vec(Ginv, x)
    p = next(i for i in range(r) if not c[i].is_zero())
    prod_p = [ck * c[p] for ck in c]
    rows = []
    for i in range(r):
        if i == p:
            continue
        prod_i = [ck * c[i] for ck in c]
        for t in range(n):
            row = [ZERO] * (r * r)
            for k in range(r):
                row[i * r + k] += prod_p[k].coeffs[t]
                row[p * r + k] -= prod_i[k].coeffs[t]
            rows.append(row)
    lt = nullspace(rows, r * r)
    lt_mats = [_unflatten(v, r) for v in lt]
    adj = [_adjoint(M, G, Ginv) for M in lt_mats]
    # solve sum a_k adj_k = sum b_j M_j
    t = len(lt_mats)
    sys_rows = []
    for e in range(r * r):
        sys_rows.append([_flatten(adj[k])[e] for k in range(t)] + [-_flatten(lt_mats[j])[e] for j in range(t)])
    sol = nullspace(sys_rows, 2 * t)
    ech = Echelon(r * r)
    for v in sol:
        M = [[sum((v[k] * lt_mats[k][i][j] for k in range(t) if v[k]), ZERO) for j in range(r)]
             for i in range(r)]
        ech.add(_flatten(M))
    kt = [_unflatten(list(v), r) for v in ech.basis()]
    _check_closure(kt, G, Ginv, ech)

    def scalar(M):
        return mat_vec(M, c)[p] * c[p].inverse()

    if reducible:
        return EndomorphismFieldResult(kt, None, "reducible", len(kt), 0, lt_dimension=t,
                                       reducible=True)
    scalars = [scalar(M) for M in kt]
    scalar_field = field_generated_by(scalars, ambient=L)
    if scalar_field.degree != len(kt):
        raise ConsistencyError("endomorphism algebra is not a field")
    self_adj = Echelon(r * r)
    for M in kt:
        self_adj.add(_flatten(mat_add_(M, _adjoint(M, G, Ginv))))
    real_scalars = [scalar(_unflatten(list(v), r)) for v in self_adj.basis()]
    real_field = field_generated_by(real_scalars, ambient=L)
    prim = scalar_field.primitive_element()
    minpoly = minimal_polynomial(prim)
    nreal = count_real_roots(minpoly).count
    deg = len(kt)
    if real_field.degree == deg:
        classification = "totally-real"
        if nreal != deg:
            raise ConsistencyError(f"self-adjoint endomorphism field has {nreal} of {deg} real roots")
        if check_theorems and 3 * deg > r:
            raise TheoremViolation("totally real endomorphism field with dim_K T <= 2",
                                   {"degree": deg, "dimension": r})
    else:
        classification = "CM"
        real_prim = real_field.primitive_element()
        if 2 * real_field.degree != deg or count_real_roots(minimal_polynomial(real_prim)).count != real_field.degree:
            raise ConsistencyError("adjoint-fixed subfield is not totally real of half degree")
        if nreal != 0:
            raise ConsistencyError(f"endomorphism field has mixed signature ({nreal} real roots)")
    return EndomorphismFieldResult(kt, minpoly, classification, deg, real_field.degree,
                                   scalar_field, real_field, t)


def mat_add_(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _check_closure(kt, G, Ginv, ech):
    r = len(G)
    if not ech.contains(_flatten(identity(r))):
        raise ConsistencyError("identity missing from endomorphism algebra")
    for M in kt:
        A = _adjoint(M, G, Ginv)
        if not ech.contains(_flatten(A)):
            raise ConsistencyError("endomorphism algebra not closed under adjoint")
        if _adjoint(A, G, Ginv) != M:
            raise ConsistencyError("adjoint is not an involution")
    for M in kt:
        for N in kt:
            if not ech.contains(_flatten(mat_mul(M, N))):
                raise ConsistencyError("endomorphism algebra not closed under products")


# ---------------------------------------------------------------------------
# CM criteria

@dataclass
class CMVerdict:
    verdict: bool
    endomorphism_cm: bool
    period_cm: bool
    fields_equal: bool
    endomorphism: EndomorphismFieldResult
    period: Subfield
    period_classification: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.verdict


def is_cm(H: HodgeStructure, endo: Optional[EndomorphismFieldResult] = None,
          strict: bool = True) -> CMVerdict:
    """The three CM criteria (endomorphism field CM of degree r; period field
    CM of degree r; the two fields equal), evaluated independently.

    With ``strict`` a disagreement raises TheoremViolation; otherwise the
    verdict follows the endomorphism field (the definition) and the caller
    inspects the individual booleans."""
    if H.sigma_bar_coords is None:
        raise InvalidInput("conjugate period coordinates are required")
    reducible = endo.reducible if endo is not None else bool(rational_11_classes(H.space, H.sigma_coords))
    if reducible:
        raise DegenerateStructure("structure is reducible; pass its minimal substructure")
    r = H.dimension
    endo = endo or endomorphism_field(H.space, H.sigma_coords)
    period = period_field(H)
    pc = period.cm_classification()
    crit_i = endo.classification == "CM" and endo.degree == r
    crit_ii = bool(pc["cm"]) and period.degree == r
    crit_iii = endo.scalar_field == period
    if endo.scalar_field is None or not endo.scalar_field.issubfield(period):
        raise TheoremViolation("endomorphism field not contained in the period field")
    if strict and not (crit_i == crit_ii == crit_iii):
        raise TheoremViolation("CM criteria disagree",
                               {"endomorphism": crit_i, "period": crit_ii, "equal": crit_iii})
    return CMVerdict(crit_i, crit_i, crit_ii, crit_iii, endo, period, pc)
