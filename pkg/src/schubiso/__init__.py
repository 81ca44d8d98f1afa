"""Isomorphism classes of Schubert varieties from Cartan matrices, words and parabolic subsets."""

__version__ = "0.1.0"

from .cartan import CartanMatrix, bond_order, builtin, submatrix, validate  # noqa: E402
from .cohomology import SchubertClass, SchubertDatum  # noqa: E402
from .isoclass import IsoVerdict, TauCertificate, VerdictKind, check_iso, restrict  # noqa: E402
from .weyl import WeylElement, WeylGroup, from_word, weyl_group  # noqa: E402

__all__ = [
    "CartanMatrix",
    "IsoVerdict",
    "SchubertClass",
    "SchubertDatum",
    "TauCertificate",
    "VerdictKind",
    "WeylElement",
    "WeylGroup",
    "bond_order",
    "builtin",
    "check_iso",
    "from_word",
    "restrict",
    "submatrix",
    "validate",
    "weyl_group",
]
