"""Pinsker-type inequalities for f-divergences: generators, divergences,
grid certificates, exact polynomial certificates and binary envelopes."""

__version__ = "0.1.0"

from .dist import Distribution, variational_distance  # noqa: E402
from .generators import Generator, PinskerCoefficients, builtin, coefficients  # noqa: E402
from .divergence import f_divergence, renyi  # noqa: E402

__all__ = [
    "Distribution",
    "Generator",
    "PinskerCoefficients",
    "builtin",
    "coefficients",
    "f_divergence",
    "renyi",
    "variational_distance",
]
