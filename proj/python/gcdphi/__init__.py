"""Exact statistics of gcd(n, phi(n)) and their asymptotic predictions."""

from ._gcdphi import *  # noqa: F401,F403
from ._gcdphi import (
    CapacityError,
    ConfigError,
    DomainError,
    Error,
    NumericError,
    PreconditionError,
    Settings,
    Spec,
)

__version__ = "0.1.0"
