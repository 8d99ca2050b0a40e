"""Families of real mutually unbiased bases from powers of one orthogonal matrix.

The heavy lifting lives in the compiled extension ``mubforge._core``; this
package re-exports its public surface.  A family for ``q = 2**r`` consists of
``q`` sign matrices ``M_1 .. M_q`` of size ``d = q**2`` with ``M_k @ M_k.T ==
q**2 * I``; the rows of ``I, M_1/q, ..., M_q/q`` form ``q + 1`` mutually
unbiased bases of ``R**d``.
"""

from ._core import (
    Family,
    FamilyIoError,
    FamilyParseError,
    IntegrityError,
    field_info,
    generate,
    load_family,
    rebuild_family,
    theory_report,
    verify_family,
)

__all__ = [
    "Family",
    "FamilyIoError",
    "FamilyParseError",
    "IntegrityError",
    "field_info",
    "generate",
    "load_family",
    "rebuild_family",
    "theory_report",
    "verify_family",
]
