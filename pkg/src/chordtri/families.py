"""Benchmark families of binomial systems."""
from __future__ import annotations

from .field import QQ
from .poly import PolyRing

FAMILIES = ("lattice", "adjacent")


def family_size(family: str, i: int) -> int:
    """Number of variables of ``gen_family(family, i)``."""
    if family == "lattice":
        return i + 3
    if family == "adjacent":
        return 2 * i + 2
    raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")


def gen_family(family: str, i: int, field=QQ) -> list:
    """``i`` binomials of the chosen family over ``x1 < ... < xn``.

    ``lattice``: ``x_k x_{k+3} - x_{k+1} x_{k+2}`` for ``k = 1..i``.
    ``adjacent``: ``x_{2k-1} x_{2k+2} - x_{2k} x_{2k+1}`` for ``k = 1..i``
    (adjacent 2x2 minors of a 2 x (i+1) matrix).
    """
    if int(i) != i or i < 1:
        raise ValueError("family index must be a positive integer")
    n = family_size(family, i)
    R = PolyRing([f"x{j}" for j in range(1, n + 1)], field)
    x = [None] + R.gens()  # 1-based
    if family == "lattice":
        return [x[k] * x[k + 3] - x[k + 1] * x[k + 2] for k in range(1, i + 1)]
    return [x[2 * k - 1] * x[2 * k + 2] - x[2 * k] * x[2 * k + 1] for k in range(1, i + 1)]
