from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from philattice import kernels
from philattice.polyring import Poly, QuotientContext

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 5))

# squarefree moduli covering x^n - 1, x^n - x - 1 and an irreducible cubic
MODULI = [
    QuotientContext.x_n_minus(2),
    QuotientContext.x_n_minus(3),
    QuotientContext.x_n_minus(4),
    QuotientContext(Poly([-1, -1, 1])),
    QuotientContext(Poly([-1, -1, 0, 1])),
    QuotientContext(Poly([2, 0, 0, 1])),
]
moduli = st.sampled_from(MODULI)


@st.composite
def elements(draw, ctx=None, integral=False):
    ctx = ctx or draw(moduli)
    coeff = st.integers(-4, 4) if integral else rationals
    return ctx.element(draw(st.lists(coeff, min_size=ctx.n, max_size=ctx.n)))


@st.composite
def element_triples(draw):
    ctx = draw(moduli)
    return tuple(draw(elements(ctx)) for _ in range(3))


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    previous = kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(previous)
