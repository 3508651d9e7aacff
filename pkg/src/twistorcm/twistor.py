"""Twistor families of a CM structure T with respect to a class l of square d:
polarized classes, fibre Hodge structures T' = l'^perp, their CM fields by the
closed quadratic formula and by the solver, the equator, Picard jumping."""
from dataclasses import dataclass, field as dc_field
from itertools import product
from math import gcd
from typing import List, Optional, Tuple

from .errors import (ClassNotPositive, ConsistencyError, IdenticallyZero, InvalidInput,
                     NotAFieldExtension, TheoremViolation, WrongBranch)
from .exactalg import (FieldElement, NumberField, Subfield, certified_sign_at_real_embeddings,
                       compose_extension, field_generated_by, signature, sqrt_in_field)
from .exactalg.extension import FieldEmbedding
from .exactalg.linalg import Echelon, inverse, mat_vec, nullspace
from .exactalg.rational import ONE, ZERO, rational
from .hodge import (CMHodgeStructure, HodgeStructure, QuadraticSpace, dual_pairing,
                    endomorphism_field, is_cm, period_field, rational_11_classes)

POLE, EQUATOR, GENERIC = "pole", "equator", "generic"


@dataclass
class TwistorSetup:
    base: CMHodgeStructure
    d: int
    extended_gram: list
    signature: Tuple[int, int, int]

    @property
    def r(self) -> int:
        return self.base.dimension

    def pair(self, u, v):
        """Extended form on rational (r+1)-vectors."""
        g = self.extended_gram
        return sum((u[i] * g[i][j] * v[j] for i in range(len(u)) if u[i]
                    for j in range(len(v)) if v[j] and g[i][j]), ZERO)


def extend_by_polarization(H: CMHodgeStructure, d) -> TwistorSetup:
    d = rational(d)
    if d <= 0 or d.denominator != 1:
        raise InvalidInput(f"polarization degree d must be a positive integer, got {d}")
    G = H.space.matrix()
    r = len(G)
    ext = [row + [ZERO] for row in G] + [[ZERO] * r + [d]]
    sig = signature(ext)
    if sig != (3, r - 2, 0):
        raise ConsistencyError(f"extended form has signature {sig}")
    return TwistorSetup(H, int(d), ext, sig)


@dataclass(frozen=True)
class PolarizedClass:
    vector: tuple
    m: object
    norm: object
    location: str

    @property
    def admissible(self) -> bool:
        return self.norm > 0


def classify_class(setup: TwistorSetup, vector) -> PolarizedClass:
    v = tuple(rational(x) for x in vector)
    r = setup.r
    if len(v) != r + 1:
        raise InvalidInput(f"class needs {r + 1} coordinates")
    if not any(v):
        raise InvalidInput("zero class")
    c, mu = v[:r], v[r]
    m = mu * setup.d
    norm = setup.pair(v, v)
    if not any(c):
        loc = POLE
    elif mu == 0:
        loc = EQUATOR
    else:
        loc = GENERIC
    return PolarizedClass(v, m, norm, loc)


def _as_class(setup, cls):
    return cls if isinstance(cls, PolarizedClass) else classify_class(setup, cls)


def _require_generic(cls: PolarizedClass):
    if cls.norm <= 0:
        raise ClassNotPositive(f"class has norm {cls.norm} <= 0")
    if cls.location == POLE:
        raise WrongBranch("pole: fibre is T itself", POLE)
    if cls.location == EQUATOR:
        raise WrongBranch("equator: use equator_analysis", EQUATOR)


# ---------------------------------------------------------------------------
# adapted basis and normalization shared by the generic and equator branches

@dataclass
class _Adapted:
    basis: list          # columns B_i (gamma coordinates), B_1 = T-part of l'
    pairings: list       # (l', B_i)
    w1: FieldElement     # (sigma, B_1) before rescaling
    scale: FieldElement  # lambda = 1 / w1
    s_prime: FieldElement  # (sigma, sigma-bar) after rescaling, in K0


def _adapted(setup: TwistorSetup, cls: PolarizedClass) -> _Adapted:
    H = setup.base
    r = setup.r
    Ainv = inverse(H.alpha_matrix)
    cols = [list(cls.vector[:r])]
    for _ in range(r - 1):
        cols.append(mat_vec(Ainv, cols[-1]))
    x = H.sigma_coords
    ws = [sum((x[k] * col[k] for k in range(r) if col[k]), H.ambient.zero()) for col in cols]
    w1 = ws[0]
    if w1.is_zero():
        raise ConsistencyError("(sigma, l') vanishes for a nonzero class of T")
    lam = w1.inverse()
    alpha = H.alpha
    power = H.ambient.one()
    for w in ws:
        if w * lam != power:
            raise ConsistencyError("adapted basis does not give coordinates alpha^(i-1)")
        power = power * alpha
    s = H.cm.from_real(H.s_real)
    s_prime = H.cm.to_real(s * lam * H.cm.conj(lam))
    ext = list(cls.vector)
    pairings = [setup.pair(ext, col + [ZERO]) for col in cols]
    return _Adapted(cols, pairings, w1, lam, s_prime)


# ---------------------------------------------------------------------------
# generic fibres

@dataclass
class TwistorPoint:
    """Period a*sigma_1 + b*sigma_1-bar + c*l with sigma_1 = scale * sigma."""
    a: FieldElement
    b: FieldElement
    c: FieldElement
    scale: FieldElement
    scale_bar: FieldElement
    normalization: str = "c=1"
    embedding: Optional[FieldEmbedding] = None   # K -> field of a, b, c


@dataclass
class FibreStructure:
    cls: PolarizedClass
    basis: list                 # gamma'_i as (r+1)-vectors
    gram_prime: list
    ambient: NumberField        # L'
    embedding: FieldEmbedding   # K -> L'
    a: FieldElement
    b: FieldElement
    split: bool
    s_prime: FieldElement       # in K0
    discriminant: FieldElement  # m^2 + 2d/s' in K0
    x_prime: tuple
    m_shift: tuple
    sigma_coords: tuple
    sigma_bar_coords: tuple
    hodge: HodgeStructure = None
    point: TwistorPoint = None
    alpha: FieldElement = None  # alpha in L'
    adapted: "_Adapted" = None


def _real_root_positive_at(setup, root_k0: FieldElement) -> bool:
    signs = certified_sign_at_real_embeddings(root_k0)
    return signs[setup.base.distinguished] > 0


def _fibre_field(setup: TwistorSetup, m, s_prime):
    """L' and the roots (a, b) of t^2 + m t - d/(2 s')."""
    H = setup.base
    cm = H.cm
    K = H.ambient
    d = setup.d
    D = s_prime.inverse() * (2 * d) + m * m
    if certified_sign_at_real_embeddings(D)[H.distinguished] <= 0:
        raise ConsistencyError("discriminant m^2 + 2d/s' not positive at the distinguished embedding")
    root = sqrt_in_field(D)
    if root is not None:
        a0 = (root - m) / 2
        b0 = -a0 - m
        if not _real_root_positive_at(setup, a0):
            a0, b0 = b0, a0
        ident = FieldEmbedding(K, K, K.gen(), check=False)
        return K, ident, cm.from_real(a0), cm.from_real(b0), True, D
    c0 = cm.from_real(s_prime.inverse() * rational(-d) / 2)
    ext = compose_extension(K, [c0, K(m)], name="eta", split_check=False)
    a = ext.root
    b = -a - m
    return ext.field, ext.base_embedding, a, b, False, D


def point_from_class(setup: TwistorSetup, cls) -> Tuple[TwistorPoint, TwistorPoint]:
    fib = fibre_structure(setup, cls)
    p = fib.point
    return p, TwistorPoint(p.b, p.a, p.c, p.scale, p.scale_bar, p.normalization, p.embedding)


def fibre_structure(setup: TwistorSetup, cls) -> FibreStructure:
    cls = _as_class(setup, cls)
    _require_generic(cls)
    ad = _adapted(setup, cls)
    Lp, emb, a, b, split, D = _fibre_field(setup, cls.m, ad.s_prime)
    return _build_fibre(setup, cls, ad, Lp, emb, a, b, split, D)


def conjugate_fibre(setup: TwistorSetup, fib: FibreStructure) -> FibreStructure:
    """Same fibre with the roots a, b exchanged (the conjugate period), in the same L'."""
    ad = fib.adapted or _adapted(setup, fib.cls)
    return _build_fibre(setup, fib.cls, ad, fib.ambient, fib.embedding, fib.b, fib.a,
                        fib.split, fib.discriminant, (fib.basis, fib.gram_prime, fib.hodge.space))


def _build_fibre(setup, cls, ad, Lp, emb, a, b, split, D, lattice=None) -> FibreStructure:
    H = setup.base
    r, d, m = setup.r, setup.d, cls.m
    if lattice is None:
        # basis gamma'_i = B_i - m^-1 (l', B_i) l
        basis = []
        for col, q in zip(ad.basis, ad.pairings):
            basis.append(col + [-q / m])
        gram = [[setup.pair(u, v) for v in basis] for u in basis]
        sig = signature(gram)
        if sig != (2, r - 2, 0):
            raise ConsistencyError(f"fibre form has signature {sig}")
        space = QuadraticSpace(tuple(tuple(row) for row in gram), sig)
    else:
        # already verified for the same class
        basis, gram, space = lattice
    alpha = emb(H.alpha)
    alpha_inv = alpha.inverse()
    pw, ipw = [Lp.one()], [Lp.one()]
    for _ in range(r - 1):
        pw.append(pw[-1] * alpha)
        ipw.append(ipw[-1] * alpha_inv)
    m_shift = tuple(-d * q / m for q in ad.pairings)
    x_prime = tuple(a * (pw[i] - ipw[i]) - ipw[i] * m for i in range(r))
    sig_coords = tuple(x_prime[i] + m_shift[i] for i in range(r))
    bar_coords = tuple(b * pw[i] + a * ipw[i] + m_shift[i] for i in range(r))
    s_l = emb(H.cm.from_real(ad.s_prime))
    # exact invariants of the fibre
    if x_prime[0] != Lp(-m):
        raise ConsistencyError("x'_1 != -m")
    if not (a * b * s_l * 2 + d).is_zero():
        raise ConsistencyError("conic relation 2ab s + d = 0 fails")
    if not (a + b + m).is_zero():
        raise ConsistencyError("orthogonality a + b + m = 0 fails")
    hodge = HodgeStructure(space, Lp, sig_coords, bar_coords)
    if not hodge.pairing_sigma_sigma().is_zero():
        raise ConsistencyError("(sigma', sigma') != 0")
    ss = hodge.pairing_sigma_sigma_bar()
    expected = ad.s_prime * (m * m) + 2 * d
    if ss != emb(H.cm.from_real(expected)):
        raise ConsistencyError("(sigma', sigma'-bar) differs from s' m^2 + 2d")
    if certified_sign_at_real_embeddings(expected)[H.distinguished] <= 0:
        raise ConsistencyError("(sigma', sigma'-bar) not positive at the distinguished embedding")
    scale = emb(ad.scale)
    scale_bar = emb(H.cm.conj(ad.scale))
    point = TwistorPoint(a, b, Lp.one(), scale, scale_bar, "c=1", emb)
    return FibreStructure(cls, basis, gram, Lp, emb, a, b, split, ad.s_prime, D, x_prime,
                          m_shift, sig_coords, bar_coords, hodge, point, alpha, ad)


# ---------------------------------------------------------------------------
# CM field of a generic fibre by the closed formula

@dataclass
class FibreCMField:
    gamma: FieldElement          # in K0
    delta: FieldElement          # in K0
    discriminant: FieldElement   # gamma^2 - 4 delta
    discriminant_signs: list
    absolute_field: NumberField
    real_subfield: Subfield      # K0 inside L'
    field_in_ambient: Subfield   # K0(x'_2) inside L'


def closed_form_coefficients(setup: TwistorSetup, cls, fibre: FibreStructure):
    """gamma = m(alpha + 1/alpha) and delta = m^2 - d (2s)^-1 (alpha^2 + alpha^-2 - 2)
    in K0, s = (sigma, sigma-bar) after normalizing (sigma, l') = 1."""
    H = setup.base
    m, d = cls.m, setup.d
    beta = H.cm.to_real(H.alpha + H.cm.conj(H.alpha))
    gamma = beta * m
    delta = (beta * beta - 4) * (fibre.s_prime.inverse() * rational(-d) / 2) + m * m
    return gamma, delta


def discriminant_signs(setup: TwistorSetup, cls, fibre: FibreStructure) -> list:
    gamma, delta = closed_form_coefficients(setup, cls, fibre)
    try:
        return certified_sign_at_real_embeddings(gamma * gamma - delta * 4)
    except IdenticallyZero:
        raise ConsistencyError("gamma^2 - 4 delta vanishes identically")


def fibre_cm_field(setup: TwistorSetup, cls, fibre: Optional[FibreStructure] = None) -> FibreCMField:
    """The field K0(x'_2), x'_2 = a alpha + b/alpha a root of X^2 + gamma X + delta,
    both as an absolute field and as a subfield of L'."""
    cls = _as_class(setup, cls)
    fib = fibre or fibre_structure(setup, cls)
    cm = setup.base.cm
    gamma, delta = closed_form_coefficients(setup, cls, fib)
    disc = gamma * gamma - delta * 4
    signs = discriminant_signs(setup, cls, fib)
    if any(sg >= 0 for sg in signs):
        raise ConsistencyError(f"gamma^2 - 4 delta is not totally negative: signs {signs}")
    absolute = compose_extension(cm.real_field, [delta, gamma], name="omega").field
    if absolute.degree != setup.r:
        raise ConsistencyError("fibre CM field has wrong degree")
    to_l = fib.embedding.compose(cm.real_embedding)
    y = fib.x_prime[1]
    if not (y * y + to_l(gamma) * y + to_l(delta)).is_zero():
        raise ConsistencyError("x'_2 is not a root of X^2 + gamma X + delta")
    k0_gen = to_l(cm.real_field.gen())
    real_sub = field_generated_by([k0_gen], ambient=fib.ambient)
    full = field_generated_by([k0_gen, y], ambient=fib.ambient)
    return FibreCMField(gamma, delta, disc, signs, absolute, real_sub, full)


def fibre_cm_predicted(setup: TwistorSetup, fibre: FibreStructure) -> bool:
    """The fibre is CM exactly when m^2 + 2d/s' is positive at every real place
    of K0 (then gamma^2 - 4 delta = (beta^2 - 4)(m^2 + 2d/s') is totally negative).
    At the distinguished place it is always positive; at the other places s' < 0."""
    return all(sg > 0 for sg in certified_sign_at_real_embeddings(fibre.discriminant))


# ---------------------------------------------------------------------------
# two-route verification

@dataclass
class FibreVerification:
    cls: PolarizedClass
    fibre_cm: bool
    endomorphism_degree: int
    classification: str
    predicted_cm: bool
    two_route_agreement: bool
    real_subfield_equal: bool
    criteria_agree: bool
    conjugate_symmetric: bool
    coordinates_independent: bool
    discriminant_signs: list
    period_cm: bool = False
    fibre: FibreStructure = None
    cm_field: Optional[FibreCMField] = None

    @property
    def passed(self) -> bool:
        return (self.fibre_cm and self.two_route_agreement and self.real_subfield_equal
                and self.criteria_agree and self.conjugate_symmetric
                and self.coordinates_independent)

    def diagnostics(self) -> dict:
        return {
            "class": [str(x) for x in self.cls.vector],
            "m": str(self.cls.m), "norm": str(self.cls.norm),
            "fibre_cm": self.fibre_cm, "classification": self.classification,
            "endomorphism_degree": self.endomorphism_degree,
            "predicted_cm": self.predicted_cm,
            "discriminant_signs": list(self.discriminant_signs),
            "two_route": self.two_route_agreement, "real_subfield": self.real_subfield_equal,
            "criteria_agree": self.criteria_agree, "period_cm": self.period_cm,
            "conjugate_symmetric": self.conjugate_symmetric,
            "independent": self.coordinates_independent,
        }


def check_fibre(setup: TwistorSetup, cls) -> FibreVerification:
    """Both routes on one generic fibre, without raising on disagreement."""
    cls = _as_class(setup, cls)
    fib = fibre_structure(setup, cls)
    r = setup.r
    if rational_11_classes(fib.hodge.space, fib.sigma_coords):
        raise TheoremViolation("generic fibre has rational (1,1) classes",
                               {"class": [str(x) for x in cls.vector]})
    independent = _independent(fib.sigma_coords) and all(not x.is_zero() for x in fib.sigma_coords)
    endo = endomorphism_field(fib.hodge.space, fib.sigma_coords, reducible=False)
    verdict = is_cm(fib.hodge, endo, strict=False)
    fibre_cm = endo.classification == "CM" and endo.degree == r
    criteria = verdict.endomorphism_cm == verdict.period_cm == verdict.fields_equal
    signs = discriminant_signs(setup, cls, fib)
    predicted = fibre_cm_predicted(setup, fib)
    swapped = conjugate_fibre(setup, fib)
    symmetric = (swapped.gram_prime == fib.gram_prime
                 and swapped.sigma_coords == fib.sigma_bar_coords
                 and closed_form_coefficients(setup, cls, swapped)
                 == closed_form_coefficients(setup, cls, fib))
    cmf = None
    agree = real_eq = False
    if all(sg < 0 for sg in signs):
        cmf = fibre_cm_field(setup, cls, fib)
        swapped_cmf = fibre_cm_field(setup, cls, swapped)
        symmetric = symmetric and swapped_cmf.field_in_ambient == cmf.field_in_ambient
        agree = endo.scalar_field is not None and endo.scalar_field == cmf.field_in_ambient
        real_eq = endo.real_scalar_field is not None and endo.real_scalar_field == cmf.real_subfield
    return FibreVerification(cls, fibre_cm, endo.degree, endo.classification, predicted, agree,
                             real_eq, criteria, symmetric, independent, signs,
                             verdict.period_cm, fib, cmf)


def verify_fibre_cm(setup: TwistorSetup, cls) -> FibreVerification:
    """Solver route versus closed formula on one generic fibre; raises
    TheoremViolation with diagnostics on any mismatch."""
    result = check_fibre(setup, cls)
    if not result.passed:
        raise TheoremViolation("fibre verification failed", result.diagnostics())
    return result


def _independent(elements) -> bool:
    ech = Echelon(elements[0].parent.degree)
    return all(ech.add(e.coeffs) for e in elements)


# ---------------------------------------------------------------------------
# equator

@dataclass
class EquatorReport:
    cls: PolarizedClass
    period_field_degree: int
    imaginary_span_dim: int
    cm_verdict: bool
    minimal_substructure_dim: int
    picard_number: int
    split: bool
    ambient_degree: int


@dataclass
class _EquatorData:
    ambient: NumberField
    embedding: FieldEmbedding
    a: FieldElement
    split: bool
    basis: list
    gram: list
    sigma_coords: tuple
    sigma_bar_coords: tuple
    scale: FieldElement
    scale_bar: FieldElement


def _equator_data(setup: TwistorSetup, cls: PolarizedClass) -> _EquatorData:
    if cls.location != EQUATOR:
        raise WrongBranch(f"class is a {cls.location} class, not on the equator", cls.location)
    if cls.norm <= 0:
        raise ClassNotPositive(f"class has norm {cls.norm} <= 0")
    H = setup.base
    cm = H.cm
    K = H.ambient
    r, d = setup.r, setup.d
    ad = _adapted(setup, cls)
    e = ad.s_prime.inverse() * rational(d) / 2
    root = sqrt_in_field(e)
    if root is not None:
        if not _real_root_positive_at(setup, root):
            root = -root
        Lp, emb, a, split = K, FieldEmbedding(K, K, K.gen(), check=False), cm.from_real(root), True
    else:
        ext = compose_extension(K, [cm.from_real(-e), K.zero()], name="eta", split_check=False)
        Lp, emb, a, split = ext.field, ext.base_embedding, ext.root, False
    ell = [ZERO] * r + [ONE]
    lp = list(cls.vector)
    basis = [ell]
    for col, q in zip(ad.basis[1:], ad.pairings[1:]):
        f = q / cls.norm
        basis.append([col[k] - f * lp[k] for k in range(r)] + [ZERO])
    gram = [[setup.pair(u, v) for v in basis] for u in basis]
    alpha = emb(H.alpha)
    ai = alpha.inverse()
    coords, bar = [Lp(d)], [Lp(d)]
    pw, ipw = alpha, ai
    for _ in range(1, r):
        coords.append(a * (pw - ipw))
        bar.append(-a * (pw - ipw))
        pw, ipw = pw * alpha, ipw * ai
    return _EquatorData(Lp, emb, a, split, basis, gram, tuple(coords), tuple(bar),
                        emb(ad.scale), emb(cm.conj(ad.scale)))


def equator_analysis(setup: TwistorSetup, cls) -> EquatorReport:
    cls = _as_class(setup, cls)
    if cls.location != EQUATOR:
        raise WrongBranch("equator analysis needs m = 0", cls.location)
    H = setup.base
    r = setup.r
    eq = _equator_data(setup, cls)
    sig = signature(eq.gram)
    if sig != (2, r - 2, 0):
        raise ConsistencyError(f"equator fibre form has signature {sig}")
    space = QuadraticSpace(tuple(tuple(row) for row in eq.gram), sig)
    hodge = HodgeStructure(space, eq.ambient, eq.sigma_coords, eq.sigma_bar_coords)
    if not hodge.pairing_sigma_sigma().is_zero():
        raise ConsistencyError("(sigma', sigma') != 0 on the equator")
    period = period_field(hodge)
    alpha = H.alpha
    ai = H.cm.conj(alpha)
    imag = []
    pw, ipw = H.ambient.one(), H.ambient.one()
    for _ in range(r):
        imag.append(pw - ipw)
        pw, ipw = pw * alpha, ipw * ai
    ech = Echelon(H.ambient.degree)
    for e in imag:
        ech.add(e.coeffs)
    span_dim = len(ech)
    sub = minimal_substructure(hodge)
    verdict = is_cm(sub).verdict
    kernel = rational_11_classes(space, eq.sigma_coords)
    point = TwistorPoint(eq.a, -eq.a, eq.ambient.one(), eq.scale, eq.scale_bar, "c=1", eq.embedding)
    rho = picard_number_at(setup, point)
    return EquatorReport(cls, period.degree, span_dim, verdict, sub.dimension, rho, eq.split,
                         eq.ambient.degree)


def minimal_substructure(H: HodgeStructure) -> HodgeStructure:
    """Orthogonal complement of the rational (1,1) classes: the smallest
    sub-Hodge structure containing sigma."""
    N = rational_11_classes(H.space, H.sigma_coords)
    if not N:
        return H
    G = H.space.matrix()
    r = len(G)
    rows = [[sum((G[i][j] * n[j] for j in range(r)), ZERO) for i in range(r)] for n in N]
    V = nullspace(rows, r)
    gram = [[sum((u[i] * G[i][j] * v[j] for i in range(r) for j in range(r) if u[i] and v[j]), ZERO)
             for v in V] for u in V]
    space = QuadraticSpace.from_gram(gram)
    coords = tuple(sum((H.sigma_coords[i] * v[i] for i in range(r) if v[i]), H.ambient.zero()) for v in V)
    bar = tuple(sum((H.sigma_bar_coords[i] * v[i] for i in range(r) if v[i]), H.ambient.zero()) for v in V)
    return HodgeStructure(space, H.ambient, coords, bar)


# ---------------------------------------------------------------------------
# Picard numbers and the jump survey

def north_pole(setup: TwistorSetup) -> TwistorPoint:
    K = setup.base.ambient
    return TwistorPoint(K.one(), K.zero(), K.zero(), K.one(), K.one(), "c=0")


def picard_number_at(setup: TwistorSetup, point: TwistorPoint) -> int:
    """dim of rational classes in T + Ql orthogonal to a sigma_1 + b sigma_1-bar + c l."""
    H = setup.base
    L = point.a.parent
    r = setup.r
    if point.embedding is not None:
        emb = point.embedding
    elif L is H.ambient:
        emb = L
    else:
        raise InvalidInput("point lives in an extension without a recorded embedding of K")
    x = [emb(v) for v in H.sigma_coords]
    xb = [emb(v) for v in H.sigma_bar_coords]
    ca = point.a * point.scale
    cb = point.b * point.scale_bar
    vals = [ca * x[j] + cb * xb[j] for j in range(r)] + [point.c * setup.d]
    n = L.degree
    rows = [[v.coeffs[k] for v in vals] for k in range(n)]
    return len(nullspace(rows, r + 1))


def point_for_class(setup: TwistorSetup, cls: PolarizedClass) -> TwistorPoint:
    """The twistor point orthogonal to an admissible class (one of the conjugate pair)."""
    if cls.location == POLE:
        return north_pole(setup)
    if cls.location == EQUATOR:
        eq = _equator_data(setup, cls)
        return TwistorPoint(eq.a, -eq.a, eq.ambient.one(), eq.scale, eq.scale_bar, "c=1",
                            eq.embedding)
    return fibre_structure(setup, cls).point


@dataclass
class SurveyEntry:
    vector: tuple
    location: str
    rho: int


@dataclass
class SurveyResult:
    entries: List[SurveyEntry]
    complete: bool
    jump_violations: List[SurveyEntry] = dc_field(default_factory=list)


def primitive_classes(dim: int, height: int):
    """Primitive integer vectors of max-norm <= height, one per +-pair (first
    nonzero coordinate positive), in lexicographic order."""
    rng = range(-height, height + 1)
    for v in product(rng, repeat=dim):
        nz = next((x for x in v if x), 0)
        if nz <= 0:
            continue
        g = 0
        for x in v:
            g = gcd(g, x)
        if g == 1:
            yield v


def admissible_classes(setup: TwistorSetup, height: int):
    for v in primitive_classes(setup.r + 1, height):
        cls = classify_class(setup, v)
        if cls.admissible:
            yield cls


def _survey_chunk(setup: TwistorSetup, classes) -> List[SurveyEntry]:
    out = []
    for cls in classes:
        rho = picard_number_at(setup, point_for_class(setup, cls))
        out.append(SurveyEntry(cls.vector, cls.location, rho))
    return out


def jump_survey(setup: TwistorSetup, height: int, budget: Optional[int] = None,
                workers: int = 1) -> SurveyResult:
    """Picard number at the point of every admissible primitive class of
    max-norm <= height; entries are in enumeration order whatever ``workers``."""
    if height < 1:
        raise InvalidInput("height bound must be at least 1")
    classes = list(admissible_classes(setup, height))
    complete = budget is None or len(classes) <= budget
    if not complete:
        classes = classes[:budget]
    if workers > 1 and len(classes) > 1:
        from concurrent.futures import ProcessPoolExecutor
        size = -(-len(classes) // workers)
        chunks = [classes[i:i + size] for i in range(0, len(classes), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_survey_chunk, [setup] * len(chunks), chunks))
        entries = [e for part in parts for e in part]
    else:
        entries = _survey_chunk(setup, classes)
    violations = [e for e in entries
                  if (e.rho >= 2 and e.location != EQUATOR)
                  or (e.location in (GENERIC, POLE) and e.rho != 1)]
    return SurveyResult(entries, complete, violations)


def geometric_picard(rho_z: int, rho_s: int) -> int:
    if rho_z < 0 or rho_s < 1:
        raise InvalidInput("need rho_z >= 0 and rho_S >= 1")
    return rho_z + rho_s - 1
