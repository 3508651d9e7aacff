"""Period values as cosets in C*/Qbar*: formal monomials in period symbols.

A period value r_sigma is the class of (sigma.gamma) modulo nonzero algebraic
numbers; it does not depend on gamma or on an algebraic rescaling of sigma.
Here cosets are exponent maps over symbols, so every identity between them is
an exact identity of integer vectors.
"""
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Tuple, Union

from .errors import InvalidInput

NORMALIZATIONS = ("a=1", "b=1", "c=1")


@dataclass(frozen=True, order=True)
class PeriodSymbol:
    name: str
    conjugate_of: str = None   # name of the conjugate symbol; None means self-conjugate

    def conjugate(self) -> "PeriodSymbol":
        if self.conjugate_of is None:
            return self
        return PeriodSymbol(self.conjugate_of, self.name)

    def __str__(self):
        return self.name


def symbol_pair(name: str = "sigma") -> Tuple[PeriodSymbol, PeriodSymbol]:
    """The symbols r_name and its conjugate rbar_name."""
    r, rb = f"r_{name}", f"rbar_{name}"
    return PeriodSymbol(r, rb), PeriodSymbol(rb, r)


class PeriodValueCoset:
    """Element of the free abelian group on period symbols (zero exponents dropped)."""
    __slots__ = ("_exp",)

    def __init__(self, exponents: Union[Mapping, Iterable] = ()):
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        acc: Dict[PeriodSymbol, int] = {}
        for sym, e in items:
            if not isinstance(sym, PeriodSymbol):
                raise InvalidInput(f"not a period symbol: {sym!r}")
            if int(e) != e:
                raise InvalidInput("exponents must be integers")
            acc[sym] = acc.get(sym, 0) + int(e)
        self._exp = tuple(sorted((s, e) for s, e in acc.items() if e))

    @classmethod
    def identity(cls) -> "PeriodValueCoset":
        return cls()

    @classmethod
    def of(cls, sym: PeriodSymbol, power: int = 1) -> "PeriodValueCoset":
        return cls([(sym, power)])

    @property
    def exponents(self) -> Dict[PeriodSymbol, int]:
        return dict(self._exp)

    def is_identity(self) -> bool:
        return not self._exp

    def __mul__(self, other: "PeriodValueCoset") -> "PeriodValueCoset":
        return coset_mul(self, other)

    def __truediv__(self, other: "PeriodValueCoset") -> "PeriodValueCoset":
        return coset_mul(self, coset_inv(other))

    def __pow__(self, k: int) -> "PeriodValueCoset":
        return PeriodValueCoset([(s, e * k) for s, e in self._exp])

    def __eq__(self, other):
        return isinstance(other, PeriodValueCoset) and self._exp == other._exp

    def __hash__(self):
        return hash(self._exp)

    def to_pairs(self):
        """Sorted (symbol name, exponent) pairs, the serialized form."""
        return [[s.name, e] for s, e in self._exp]

    def __repr__(self):
        if not self._exp:
            return "1"
        return "*".join(s.name if e == 1 else f"{s.name}^{e}" for s, e in self._exp)


def coset_mul(u: PeriodValueCoset, v: PeriodValueCoset) -> PeriodValueCoset:
    return PeriodValueCoset(list(u._exp) + list(v._exp))


def coset_inv(u: PeriodValueCoset) -> PeriodValueCoset:
    return PeriodValueCoset([(s, -e) for s, e in u._exp])


def conjugate(u: PeriodValueCoset) -> PeriodValueCoset:
    return PeriodValueCoset([(s.conjugate(), e) for s, e in u._exp])


ALGEBRAIC = "algebraic"


def rescale_line(u: PeriodValueCoset, lam) -> PeriodValueCoset:
    """Period value of lam * Sigma: unchanged for algebraic lam, multiplied by
    the symbol otherwise."""
    if lam == ALGEBRAIC:
        return u
    if isinstance(lam, PeriodSymbol):
        return coset_mul(u, PeriodValueCoset.of(lam))
    if isinstance(lam, PeriodValueCoset):
        return coset_mul(u, lam)
    raise InvalidInput(f"rescaling must be '{ALGEBRAIC}' or a period symbol, got {lam!r}")


def substitute(u: PeriodValueCoset, values: Mapping[PeriodSymbol, PeriodValueCoset]) -> PeriodValueCoset:
    """Replace symbols by cosets (e.g. the identity when sigma is algebraic)."""
    out = PeriodValueCoset()
    for s, e in u._exp:
        out = coset_mul(out, values[s] ** e if s in values else PeriodValueCoset.of(s, e))
    return out


def norm_coset(pair=None) -> PeriodValueCoset:
    """Coset of (sigma.sigma-bar), which is r_sigma * rbar_sigma."""
    r, rb = pair or symbol_pair()
    return PeriodValueCoset([(r, 1), (rb, 1)])


def _check_normalization(normalization: str):
    if normalization not in NORMALIZATIONS:
        raise InvalidInput(f"unknown normalization {normalization!r}; expected one of {NORMALIZATIONS}")


def coefficient_cosets(normalization: str, pair=None):
    """Cosets of (a, b, c) in sigma' = a sigma + b sigma-bar + c l.

    The three terms of (sigma'.gamma) share one coset, so
    a r_sigma = b rbar_sigma = c = r_sigma'; one coefficient is fixed to 1.
    """
    _check_normalization(normalization)
    r, rb = pair or symbol_pair()
    R, Rb = PeriodValueCoset.of(r), PeriodValueCoset.of(rb)
    one = PeriodValueCoset()
    if normalization == "c=1":
        return coset_inv(R), coset_inv(Rb), one
    if normalization == "a=1":
        return one, R / Rb, R
    return Rb / R, one, Rb


def fibre_period_value(normalization: str, pair=None) -> PeriodValueCoset:
    """r_sigma' = c (equivalently a r_sigma) for the chosen normalization."""
    return coefficient_cosets(normalization, pair)[2]


def coefficient_relations(a, b, c, pair=None) -> Dict[str, bool]:
    """b = a r/rbar, c = a r, and the conic image a b (r rbar) = c^2."""
    r, rb = pair or symbol_pair()
    R, Rb = PeriodValueCoset.of(r), PeriodValueCoset.of(rb)
    return {
        "b_over_a": b == a * R / Rb,
        "c_equals_a_r": c == a * R,
        "norm": a * b * norm_coset((r, rb)) == c ** 2,
    }
