from hypothesis import strategies as st

from laurel.algebra import LaurentSeries, Poly
from laurel.cfengine import CFWord

primes = st.sampled_from([2, 3, 5, 7])


@st.composite
def polys(draw, p, max_deg=6, nonzero=False, min_deg=0):
    d = draw(st.integers(min_deg, max_deg))
    cs = draw(st.lists(st.integers(0, p - 1), min_size=d + 1, max_size=d + 1))
    if nonzero or min_deg > 0:
        cs[-1] = draw(st.integers(1, p - 1))
    return Poly(cs, p)


def letters(p, max_deg=3):
    return polys(p, max_deg=max_deg, min_deg=1)


@st.composite
def words(draw, p=None, min_len=1, max_len=12, max_deg=3):
    p = p if p is not None else draw(primes)
    tail = draw(st.lists(letters(p, max_deg), min_size=min_len, max_size=max_len))
    return CFWord.from_tail(tail, p)


@st.composite
def series(draw, p, top_range=(-3, 3), prec=40):
    top = draw(st.integers(*top_range))
    n = top + prec + 1
    cs = draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n))
    cs[0] = draw(st.integers(1, p - 1))
    return LaurentSeries(p, top, cs, prec)
