"""Subfields of a number field given by a multiplicatively closed Q-basis."""
import random
from itertools import combinations
from typing import List, Optional, Sequence

from ..errors import InvalidInput
from .linalg import Echelon, identity, mat_add, mat_scale, nullspace, transpose
from .numberfield import FieldElement, NumberField, minimal_polynomial
from .rational import ONE


class Subfield:
    """A subfield of ``ambient``; ``basis`` is the canonical echelon basis."""

    def __init__(self, ambient: NumberField, echelon: Echelon, images=None):
        self.ambient = ambient
        self._echelon = echelon
        self.basis = tuple(ambient(list(row)) for row in echelon.basis())
        self.degree = len(self.basis)
        self.images = tuple(images) if images is not None else None

    def __repr__(self):
        return f"Subfield(degree {self.degree} in {self.ambient!r})"

    def __eq__(self, other):
        if not isinstance(other, Subfield):
            return NotImplemented
        return self.ambient is other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((id(self.ambient), self.basis))

    def __contains__(self, e):
        return self.contains(e)

    def contains(self, e: FieldElement) -> bool:
        return self._echelon.contains(self.ambient(e).coeffs)

    def issubfield(self, other: "Subfield") -> bool:
        return self.ambient is other.ambient and all(other.contains(b) for b in self.basis)

    def coordinates(self, e):
        return self._echelon.coordinates(self.ambient(e).coeffs)

    def primitive_element(self, seed: int = 0) -> FieldElement:
        if self.degree == 1:
            return self.ambient.one()
        candidates = [b for b in self.basis if not b.is_rational()]
        for b in candidates:
            if minimal_polynomial(b).degree == self.degree:
                return b
        for b, c in combinations(candidates, 2):
            e = b + c
            if minimal_polynomial(e).degree == self.degree:
                return e
        rng = random.Random(seed)
        for _ in range(200):
            e = sum((b * rng.randint(-5, 5) for b in candidates), self.ambient.zero())
            if minimal_polynomial(e).degree == self.degree:
                return e
        raise AssertionError("no primitive element found")

    def minimal_polynomial(self):
        return minimal_polynomial(self.primitive_element())

    def is_totally_real(self) -> bool:
        from .realroots import count_real_roots
        return count_real_roots(self.minimal_polynomial()).count == self.degree

    def is_totally_imaginary(self) -> bool:
        from .realroots import count_real_roots
        return count_real_roots(self.minimal_polynomial()).count == 0

    def fixed_subfield(self) -> "Subfield":
        """Subfield fixed by the tracked involution (needs ``images``)."""
        if self.images is None:
            raise InvalidInput("no involution tracked on this subfield")
        # column j: coordinates of the image of basis[j]
        cols = [self.coordinates(img) for img in self.images]
        c = transpose(cols)
        diff = mat_add(c, mat_scale(identity(self.degree), -ONE))
        fixed = []
        for v in nullspace(diff, self.degree):
            fixed.append(sum((b * x for b, x in zip(self.basis, v) if x), self.ambient.zero()))
        return field_generated_by(fixed, ambient=self.ambient)

    def involution_is_stable(self) -> bool:
        return self.images is not None and all(self.contains(img) for img in self.images)

    def involution_is_trivial(self) -> bool:
        return all(img == b for img, b in zip(self.images, self.basis))

    def cm_classification(self) -> dict:
        """CM test with respect to the tracked involution (complex conjugation)."""
        stable = self.involution_is_stable()
        result = {"conjugation_stable": stable, "degree": self.degree}
        if not stable:
            result.update(cm=False, real_subfield_degree=None)
            return result
        nontrivial = not self.involution_is_trivial()
        real = self.fixed_subfield()
        real_ok = real.is_totally_real()
        imag_ok = self.is_totally_imaginary()
        result.update(
            conjugation_nontrivial=nontrivial,
            real_subfield_degree=real.degree,
            real_subfield_totally_real=real_ok,
            totally_imaginary=imag_ok,
            cm=nontrivial and real_ok and imag_ok and 2 * real.degree == self.degree,
        )
        return result


def field_generated_by(elements: Sequence[FieldElement], ambient: Optional[NumberField] = None,
                       images: Optional[Sequence] = None) -> Subfield:
    """Smallest subfield containing the inputs, by saturating the Q-span under
    products.  ``images``, if given, are the images of ``elements`` under a
    field homomorphism; they are transported along the saturation.
    """
    elements = list(elements)
    if ambient is None:
        if not elements:
            raise InvalidInput("ambient field required for an empty generator list")
        ambient = elements[0].parent
    if any(e.parent is not ambient for e in elements):
        raise InvalidInput("generators must share one ambient field")
    track = images is not None
    if track and len(images) != len(elements):
        raise InvalidInput("one image per generator required")
    ech = Echelon(ambient.degree, track=track)
    spanners: List = []
    queue: List = []

    def push(x, img):
        if ech.add(x.coeffs, img):
            spanners.append((x, img))
            queue.append((x, img))

    one = ambient.one()
    push(one, one if track else None)
    for k, e in enumerate(elements):
        push(e, images[k] if track else None)
    while queue:
        x, ix = queue.pop()
        for y, iy in list(spanners):
            push(x * y, ix * iy if track else None)
    return Subfield(ambient, ech, ech.basis_images() if track else None)


def subfield_from_basis(ambient: NumberField, elements) -> Subfield:
    return field_generated_by(list(elements), ambient=ambient)
