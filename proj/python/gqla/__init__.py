"""Exact linear algebra of generalized complex and quaternionic structures."""

from ._gqla import (
    FORMAT_VERSION,
    Certificate,
    ClassificationError,
    ConventionError,
    GQStructure,
    InvalidStructure,
    ParseError,
    classify,
    from_complex_symplectic,
    irrational_torsion_example,
    is_complex_symplectic_pair,
    kronecker,
    pair_document,
    pair_sheaf,
    parse_document,
    random_composite,
    serialize,
    split_gc,
    verify,
)

__all__ = [
    "FORMAT_VERSION",
    "Certificate",
    "ClassificationError",
    "ConventionError",
    "GQStructure",
    "InvalidStructure",
    "ParseError",
    "classify",
    "from_complex_symplectic",
    "irrational_torsion_example",
    "is_complex_symplectic_pair",
    "kronecker",
    "pair_document",
    "pair_sheaf",
    "parse_document",
    "random_composite",
    "serialize",
    "split_gc",
    "verify",
]
