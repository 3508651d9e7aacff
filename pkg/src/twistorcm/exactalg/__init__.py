"""Exact arithmetic substrate: rationals, polynomials, number fields,
subfields, certified real roots and signatures."""
from .rational import Rational, rational, format_rational
from .poly import RationalPolynomial, X
from .irreducible import irreducible_over_rationals
from .numberfield import NumberField, FieldElement, minimal_polynomial
from .realroots import (RealRootCertificate, count_real_roots, certified_sign_at_real_embeddings,
                        set_precision_cap, precision_cap)
from .subfield import Subfield, field_generated_by
from .quadform import signature
from .extension import Extension, FieldEmbedding, compose_extension, sqrt_in_field

__all__ = [
    "Rational", "rational", "format_rational", "RationalPolynomial", "X",
    "irreducible_over_rationals", "NumberField", "FieldElement", "minimal_polynomial",
    "RealRootCertificate", "count_real_roots", "certified_sign_at_real_embeddings",
    "set_precision_cap", "precision_cap", "Subfield", "field_generated_by", "signature",
    "Extension", "FieldEmbedding", "compose_extension", "sqrt_in_field",
]
