"""Adaptive Simpson quadrature with an evaluation budget."""

from __future__ import annotations

from .errors import QuadratureError

MAX_EVALS = 1_000_000
MAX_DEPTH = 60


def adaptive_simpson(f, a, b, tol=1e-10, max_evals=MAX_EVALS):
    """Integrate ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    Uses the Richardson-corrected Simpson estimate on each accepted panel.
    Raises :class:`QuadratureError` once ``max_evals`` function evaluations are
    spent without meeting the tolerance. ``b < a`` flips the sign.
    """
    if a == b:
        return 0.0
    if b < a:
        return -adaptive_simpson(f, b, a, tol, max_evals)

    evals = 0

    def call(x):
        nonlocal evals
        evals += 1
        if evals > max_evals:
            raise QuadratureError(f"tolerance {tol:g} not reached within {max_evals} evaluations")
        return f(x)

    fa, fb = call(a), call(b)
    m = 0.5 * (a + b)
    fm = call(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    total = 0.0
    # explicit stack keeps deep refinement off the Python call stack
    stack = [(a, m, b, fa, fm, fb, whole, tol, 0)]
    while stack:
        a, m, b, fa, fm, fb, whole, eps, depth = stack.pop()
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = call(lm), call(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        if abs(delta) <= 15.0 * eps or depth >= MAX_DEPTH:
            if depth >= MAX_DEPTH and abs(delta) > 15.0 * eps:
                raise QuadratureError(f"maximum subdivision depth reached on [{a!r}, {b!r}]")
            total += left + right + delta / 15.0
        else:
            stack.append((m, rm, b, fm, frm, fb, right, 0.5 * eps, depth + 1))
            stack.append((a, lm, m, fa, flm, fm, left, 0.5 * eps, depth + 1))
    return total
