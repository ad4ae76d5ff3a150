import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from todacx.chaincx import (ChainComplex, GradedMap, GradedModule, c_hat, compose_maps, evaluation_matrix,
                            hom_complex, homology, homology_groups, moore, suspension, tensor, uct_split,
                            unit_complex, validate_complex)
from todacx.intlin import FgAbGroup, IntMatrix

from conftest import complexes, random_complex
from oracles import homology_oracle


def test_shape_checks():
    with pytest.raises(ValueError):
        ChainComplex({0: 1, 1: 2}, {1: IntMatrix.zeros(2, 2)})
    bad = ChainComplex({0: 1, 1: 1, 2: 1}, {1: [[1]], 2: [[1]]})
    v = validate_complex(bad)
    assert v is not None and v.degree == 2


def nontrivial(cx):
    return {n: g for n, g in homology_groups(cx).items() if not g.is_trivial()}


def test_moore_homology():
    h = nontrivial(moore(FgAbGroup.cyclic(8), 0))
    assert h == {0: FgAbGroup([8])}


def test_hom_of_moore_complexes():
    # maps M(Z/2, 0) -> M(Z/2, 1) up to homotopy form Ext(Z/2, Z/2)
    a, b = moore(FgAbGroup.cyclic(2), 0), moore(FgAbGroup.cyclic(2), 1)
    assert homology(hom_complex(a, b), 0).group.factors == (2,)
    assert homology(hom_complex(a, a), 0).group.factors == (2,)


@given(complexes(max_rank=3, length=4, entries=3))
def test_homology_matches_oracle(cx):
    for n in cx.degrees():
        g = homology(cx, n).group
        free, tors = homology_oracle(cx, n)
        assert g.free_rank == free
        assert g.torsion == tors


@given(complexes(), complexes())
@settings(max_examples=25)
def test_hom_complex_squares_to_zero(a, b):
    h = hom_complex(a, b)
    assert validate_complex(h) is None
    t = tensor(a, b)
    assert validate_complex(t) is None
    assert validate_complex(suspension(a)) is None


@given(complexes(), complexes(), st.integers(-1, 1), st.integers(0, 2 ** 20))
@settings(max_examples=25)
def test_hom_boundary_matches_map_boundary(a, b, n, seed):
    # the function-complex differential agrees with ∂f = d f - (-1)^n f d on maps
    h = hom_complex(a, b)
    rng = random.Random(seed)
    v = [rng.randint(-2, 2) for _ in range(h.rank(n))]
    f = h.decode(v, n)
    assert h.encode(f) == v
    if h.rank(n):
        dv = h.diff(n) @ v
        assert h.encode(f.boundary()) == dv


def test_chain_maps_are_hom_cycles(rng):
    for _ in range(10):
        a = random_complex(rng)
        ident = hom_complex(a, a).encode(GradedMap.identity(a))
        if hom_complex(a, a).rank(0):
            assert not any(hom_complex(a, a).diff(0) @ ident)


def test_composition_is_associative(rng):
    for _ in range(8):
        a, b, c, d = (random_complex(rng, lo=0) for _ in range(4))
        fs = []
        for s, t in ((a, b), (b, c), (c, d)):
            h = hom_complex(s, t)
            fs.append(h.decode([rng.randint(-2, 2) for _ in range(h.rank(0))], 0))
        f, g, k = fs
        assert compose_maps(k, compose_maps(g, f)) == compose_maps(compose_maps(k, g), f)


def test_evaluation_is_chain_map_entrywise(rng):
    a, b = random_complex(rng, lo=0), random_complex(rng, lo=0)
    h = hom_complex(a, b)
    for n in h.degrees():
        for m in a.degrees():
            ev = evaluation_matrix(a, b, n, m)
            assert ev.shape == (b.rank(m + n), h.rank(n) * a.rank(m))


def test_tensor_unit():
    a = moore(FgAbGroup.cyclic(4), 1)
    t = tensor(unit_complex(0), a)
    assert t.ranks == a.ranks
    assert nontrivial(t) == nontrivial(a)


def test_c_hat_layout():
    e = GradedModule({0: FgAbGroup([8]), 1: FgAbGroup([0, 4])})
    c = c_hat(e)
    assert nontrivial(c) == {0: FgAbGroup([8]), 1: FgAbGroup([0, 4])}
    assert c.q0(1) == (1, 3) and c.q1(1) == (0, 1)


ORDERS = [1, 2, 4, 8, 16, 0]


@pytest.mark.parametrize("p,q", list(itertools.product(ORDERS, repeat=2)))
def test_uct_split_counts_and_round_trip(p, q):
    e = GradedModule({0: FgAbGroup.cyclic(p) if p else FgAbGroup.free(1)})
    f = GradedModule({0: FgAbGroup.cyclic(q) if q else FgAbGroup.free(1),
                      1: FgAbGroup.cyclic(q) if q else FgAbGroup.free(1)})
    sp = uct_split(e, f, 0)
    assert sp.group.factors == FgAbGroup.from_orders(
        [x for _, _, g in sp.components() for x in (g.factors or ())]).group.factors
    if sp.group.is_finite():
        assert sp.group.order() == sp.product_order()
        for el in sp.group.elements():
            hom, ext = sp.project_class(el)
            assert sp.to_class(hom, ext) == sp.group.reduce(el)
            assert sp.realize(hom, ext).is_chain()
