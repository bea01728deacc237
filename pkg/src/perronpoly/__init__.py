"""Certified study of the trinomial family x^n - a*x^(n-1) - p:
irreducibility, monogenicity by two independent local criteria, certified
root geometry (Pisot / Salem / anti-Pisot / strictly-Perron), and
companion-matrix cross-checks, with a searchable certificate pipeline.
"""

__version__ = "0.1.0"

from .classification import Classification, classify
from .errors import (
    InvalidInputError,
    NonConvergenceError,
    OracleViolationError,
    PerronPolyError,
    PrecisionExhaustedError,
)
from .family import (
    Certificate,
    FamilyParams,
    build,
    descartes_profile,
    discriminant_closed,
    family_irreducible,
    family_monogenic,
    g_value,
    strictly_perron_certificate,
)
from .intarith import factorize, is_prime, squarefree_status
from .irreducibility import factor_oracle, irreducibility_witness, is_irreducible
from .monogenicity import (
    MonogenicityReport,
    TrinomialParams,
    dedekind_local_test,
    jks_local_test,
    monogenic,
)
from .polynomial import IntPoly, discriminant, resultant
from .roots import CertifiedRootSet, complex_roots, modulus_profile

__all__ = [
    "__version__",
    "Certificate",
    "CertifiedRootSet",
    "Classification",
    "FamilyParams",
    "IntPoly",
    "InvalidInputError",
    "MonogenicityReport",
    "NonConvergenceError",
    "OracleViolationError",
    "PerronPolyError",
    "PrecisionExhaustedError",
    "TrinomialParams",
    "build",
    "classify",
    "complex_roots",
    "dedekind_local_test",
    "descartes_profile",
    "discriminant",
    "discriminant_closed",
    "factor_oracle",
    "factorize",
    "family_irreducible",
    "family_monogenic",
    "g_value",
    "irreducibility_witness",
    "is_irreducible",
    "is_prime",
    "jks_local_test",
    "modulus_profile",
    "monogenic",
    "resultant",
    "squarefree_status",
    "strictly_perron_certificate",
]
