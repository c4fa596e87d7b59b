"""Utilities package."""
from src.utils.errors import DbvpError
from src.utils.numerics import abs_power, phi_p, dphi_p

__all__ = ["DbvpError", "abs_power", "phi_p", "dphi_p"]
