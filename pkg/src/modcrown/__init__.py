"""Boundary asymptotics and modular-theory checks for rank-one groups."""
from .errors import ModcrownError
from .special import f21, f21_limit_z1, gamma_fn, hyp2f1, hyp2f1_one_minus, rgamma, HypParams

__version__ = "0.1.0"

__all__ = [
    "ModcrownError",
    "HypParams",
    "f21",
    "f21_limit_z1",
    "gamma_fn",
    "hyp2f1",
    "hyp2f1_one_minus",
    "rgamma",
]
