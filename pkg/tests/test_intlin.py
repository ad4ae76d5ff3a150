import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from todacx.intlin import (AbHom, FgAbGroup, IntMatrix, Subgroup, cokernel_group, ext_group, ext_module,
                           group_name, hom_group, hom_module, induced_on_hom_ext, invariant_factors,
                           kernel_basis, matrix_rank, parse_group_name, smith_normal_form, solve_linear)

from conftest import int_matrices
from oracles import sympy_factors


def test_matrix_basics():
    a = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert a @ [1, 1] == [3, 7]
    assert (a @ a).tolist() == [[7, 10], [15, 22]]
    assert a.T.tolist() == [[1, 3], [2, 4]]
    assert a.det() == -2
    assert IntMatrix.identity(3).det() == 1
    assert IntMatrix.hstack([a, a]).shape == (2, 4)
    assert IntMatrix.vstack([a, a]).shape == (4, 2)
    with pytest.raises(ValueError):
        IntMatrix(2, 2, [[1, 2]])


def test_snf_known_example():
    # classic 4x4 example with invariant factors 1, 10, 30
    m = IntMatrix.from_rows([[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]])
    assert invariant_factors(m) == (1, 10, 30)
    assert matrix_rank(m) == 3


@given(int_matrices())
def test_snf_decomposition(m):
    s = smith_normal_form(m)
    assert (s.u @ m @ s.v).tolist() == s.diagonal_matrix().tolist()
    assert abs(s.u.det()) == 1 and abs(s.v.det()) == 1
    assert (s.u @ s.u_inv).tolist() == IntMatrix.identity(m.rows).tolist()
    assert (s.v @ s.v_inv).tolist() == IntMatrix.identity(m.cols).tolist()
    nz = [d for d in s.diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@given(int_matrices())
def test_invariants_match_sympy(m):
    assert invariant_factors(m) == sympy_factors(m.tolist(), m.cols)


@given(int_matrices())
def test_kernel_is_saturated(m):
    kb = kernel_basis(m)
    assert len(kb) == m.cols - matrix_rank(m)
    for v in kb:
        assert not any(m @ v)
    if kb:
        k = IntMatrix.from_columns(kb, m.cols)
        # saturated: the lattice spanned has all elementary divisors 1
        assert all(d == 1 for d in invariant_factors(k))


@given(int_matrices(max_rows=3, max_cols=3, lo=-4, hi=4), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_solve_linear(m, x0):
    x0 = x0[:m.cols]
    b = m @ x0
    sol = solve_linear(m, b)
    assert sol is not None
    x, kern = sol
    assert m @ x == b
    for v in kern:
        assert not any(m @ v)


def test_solve_linear_unsolvable():
    assert solve_linear(IntMatrix.from_rows([[2]]), [1]) is None
    assert solve_linear(IntMatrix.from_rows([[0, 0]]), [1]) is None


def test_group_canonical_form():
    q = FgAbGroup.from_orders([6, 4, 0])
    assert q.group.factors == (0, 2, 12)
    assert str(q.group) == "Z⊕Z/2⊕Z/12"
    assert group_name(()) == "0"
    assert parse_group_name("Z/2⊕Z/4").factors == (2, 4)
    assert parse_group_name("Z/6⊕Z/4").factors == (2, 12)
    with pytest.raises(ValueError):
        FgAbGroup([4, 2])
    with pytest.raises(ValueError):
        FgAbGroup([2, 0])


@given(st.lists(st.integers(0, 12), max_size=4))
def test_from_orders_classifies_consistently(orders):
    q = FgAbGroup.from_orders(orders)
    g = q.group
    assert g.free_rank == orders.count(0)
    finite = [o for o in orders if o]
    from math import prod
    assert prod(g.torsion) == prod(finite)
    # every standard basis vector maps to an element with the right order
    for i, o in enumerate(orders):
        e = [0] * len(orders)
        e[i] = 1
        if o == 0:
            assert g.element_order(q.classify(e)) == float("inf")
        else:
            assert g.element_order(q.classify(e)) == o


def test_cokernel_group():
    assert cokernel_group(IntMatrix.from_rows([[2, 0], [0, 3]])).group.factors == (6,)
    assert cokernel_group(IntMatrix.from_rows([[1], [0]])).group.factors == (0,)


def test_hom_ext_small():
    z2, z4, z = FgAbGroup.cyclic(2), FgAbGroup.cyclic(4), FgAbGroup.free(1)
    assert hom_group(z2, z4).factors == (2,)
    assert ext_group(z2, z4).factors == (2,)
    assert ext_group(z4, z).factors == (4,)
    assert hom_group(z4, z).factors == ()
    assert hom_group(z, z4).factors == (4,)
    assert ext_group(z, z4).factors == ()


def test_abhom_well_defined():
    z2, z4 = FgAbGroup.cyclic(2), FgAbGroup.cyclic(4)
    AbHom(z2, z4, IntMatrix.from_rows([[2]]))
    with pytest.raises(ValueError):
        AbHom(z2, z4, IntMatrix.from_rows([[1]]))
    f = AbHom(z4, z2, IntMatrix.from_rows([[1]]))
    assert f.apply((3,)) == (1,)
    assert f.compose(AbHom.identity(z4)).matrix.tolist() == f.matrix.tolist()


def test_morphism_group_round_trip():
    g, h = FgAbGroup([2, 4]), FgAbGroup([8])
    for mod in (hom_module(g, h), ext_module(g, h)):
        for e in mod.group.elements():
            assert mod.encode(mod.decode(e)) == tuple(e)


def test_induced_maps_are_hom():
    z2, z4, z8 = FgAbGroup.cyclic(2), FgAbGroup.cyclic(4), FgAbGroup.cyclic(8)
    f = AbHom(z4, z8, IntMatrix.from_rows([[2]]))
    for side, functor in itertools.product(("pre", "post"), ("hom", "ext")):
        phi = induced_on_hom_ext(f, side, functor, z2)
        for a in phi.source.elements():
            for b in phi.source.elements():
                assert phi.apply(phi.source.add(a, b)) == phi.target.add(phi.apply(a), phi.apply(b))


def test_subgroup():
    g = FgAbGroup([16])
    s = Subgroup(g, [(4,), (6,)])
    assert s.order() == 8
    assert s.contains((2,)) and not s.contains((1,))
    assert s.quotient_group().factors == (2,)
    assert s.quotient_class((3,)) != s.quotient_class((0,))
    assert Subgroup(g, []).order() == 1
    assert Subgroup(FgAbGroup([0]), [(3,)]).structure().factors == (0,)
