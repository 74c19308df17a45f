"""Bracketed 1-D solvers used by the geometry, ray tracing and calibration code."""

from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING

import numpy as np
from scipy import optimize

if TYPE_CHECKING:
    from collections.abc import Callable

logger = logging.getLogger(f"liquilens.{__name__}")

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2

# bisection stops at this relative bracket width
BISECT_RTOL = 1e-14
BISECT_MAXITER = 200


def bisect_root(
    f: Callable[[float], float],
    a: float,
    b: float,
    rtol: float = BISECT_RTOL,
    maxiter: int = BISECT_MAXITER,
) -> float:
    """Find the root of a monotone function bracketed by [a, b].

    The bracket must straddle the root, f(a) and f(b) may not have the same sign.
    Terminates at relative bracket width rtol or after maxiter halvings, whichever comes first.
    """
    root, result = optimize.bisect(
        f,
        a,
        b,
        xtol=float(np.finfo(float).tiny),
        rtol=rtol,
        maxiter=maxiter,
        full_output=True,
        disp=False,
    )
    logger.debug(f"Bisection on [{a}, {b}] finished after {result.iterations} iterations ({result.flag})")
    return float(root)


def golden_section_minimize(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-9,
) -> tuple[float, float]:
    """Golden-section search for the minimum of a unimodal function on [a, b].

    Returns (argmin, minimum). The final bracket is no wider than tol. The endpoints are
    evaluated too, so a boundary minimum is returned exactly.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        x = (a + b) / 2
        return x, f(x)

    # required steps to achieve tolerance
    n = math.ceil(math.log(tol / h) / math.log(INV_PHI))

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)
    lo, hi = a, b
    for _ in range(n - 1):
        if yc < yd:
            hi = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = lo + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            lo = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = lo + INV_PHI * h
            yd = f(d)

    best_x, best_y = (c, yc) if yc < yd else (d, yd)
    # a minimum sitting on the original bracket edge is never sampled by the interior points
    for x in (a, b):
        y = f(x)
        if y < best_y:
            best_x, best_y = x, y
    logger.debug(f"Golden-section on [{a}, {b}] took {n} steps, argmin {best_x}")
    return best_x, best_y
