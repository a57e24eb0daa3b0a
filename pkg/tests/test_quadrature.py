import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from typea_stab.errors import QuadratureError
from typea_stab.quadrature import adaptive_simpson


def test_polynomials_exact():
    assert adaptive_simpson(lambda x: x**3 - 2 * x, 0.0, 2.0) == pytest.approx(0.0, abs=1e-14)
    assert adaptive_simpson(lambda x: x**2, 0.0, 3.0) == pytest.approx(9.0, rel=1e-14)


def test_reversed_and_empty():
    assert adaptive_simpson(math.sin, math.pi, 0.0) == pytest.approx(-2.0, abs=1e-10)
    assert adaptive_simpson(math.sin, 1.0, 1.0) == 0.0


def test_oscillatory_meets_tolerance():
    exact = (1 - math.cos(50.0)) / 50.0
    assert adaptive_simpson(lambda x: math.sin(50 * x), 0.0, 1.0, tol=1e-10) == pytest.approx(exact, abs=1e-10)


def test_budget_exhaustion():
    with pytest.raises(QuadratureError):
        adaptive_simpson(lambda x: math.sin(1.0 / x) / x, 1e-9, 1.0, tol=1e-14, max_evals=10_000)


@settings(max_examples=50, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0.1, 5))
def test_exponential(a, b, k):
    exact = (math.exp(k * b) - math.exp(k * a)) / k
    assert adaptive_simpson(lambda x: math.exp(k * x), a, b, tol=1e-10) == pytest.approx(exact, abs=1e-9)
