import itertools

import pytest

from todacx.chaincx import GradedModule, compose_maps, hom_complex, homology, moore, uct_split
from todacx.intlin import FgAbGroup, Subgroup, solve_linear
from todacx.secondary import (HoMap, SecondaryData, SecondaryError, classify, compose_ho, defining_system_set,
                              fixtures, ho_map_of, indeterminacy, indeterminacy_chain, realize_ho_map,
                              toda_secondary, validate_secondary, words_of)

FIX = fixtures()
ORDERS = [2, 4, 8, 16]


def same_subgroup(a: Subgroup, b: Subgroup) -> bool:
    return all(a.contains(g) for g in b.generators) and all(b.contains(g) for g in a.generators)


def test_fixtures_validate():
    for name, data in FIX.items():
        assert validate_secondary(data) is None, name


def test_example_5_5():
    r = toda_secondary(FIX["example-5.5"])
    assert r.ambient.factors == (2,)
    assert any(r.value_class) and r.indeterminacy.order() == 1 and not r.vanishes


def test_example_5_6():
    r = toda_secondary(FIX["example-5.6"])
    assert r.ambient.factors == (2,)
    assert r.component_orders() == {("ext", 0): 2}
    assert r.indeterminacy.order() == 1 and not r.vanishes


def test_example_5_7():
    r = toda_secondary(FIX["example-5.7"])
    assert r.ambient.factors == (8,)
    assert r.component_orders() == {("ext", 0): 8}
    assert r.indeterminacy.order() == 4
    assert any(r.quotient_class) and not r.vanishes


def test_example_5_8():
    r = toda_secondary(FIX["example-5.8"])
    assert r.ambient.factors == (16,)
    assert r.component_orders() == {("hom", 0): 16}
    assert r.indeterminacy.order() == 8
    assert any(r.quotient_class) and not r.vanishes


@pytest.mark.parametrize("name", sorted(FIX))
def test_indeterminacy_routes_agree(name):
    data = FIX[name]
    mods = data.modules
    first = ho_map_of(data.chain_map("f"), mods[0], mods[1])
    third = ho_map_of(data.chain_map("h"), mods[2], mods[3])
    split_route = indeterminacy(first, third, mods)
    chain_route = indeterminacy_chain(data.chain_map("f"), data.chain_map("h"))
    assert same_subgroup(split_route, chain_route)


@pytest.mark.parametrize("name", sorted(FIX))
def test_all_defining_systems_form_one_coset(name):
    data = FIX[name]
    r = toda_secondary(data)
    s = defining_system_set(data)
    assert s.exact
    assert same_subgroup(s.subgroup, r.indeterminacy)
    coset = sorted(r.ambient.reduce([x + y for x, y in zip(r.value_class, h)])
                   for h in r.ambient.elements() if r.indeterminacy.contains(h))
    assert s.elements() == coset


def test_form_tags():
    tags = {name: classify(d) for name, d in FIX.items()}
    assert str(tags["example-5.5"]) == "atomic-a:HHE"
    assert str(tags["example-5.6"]) == "atomic-b:EHE"
    assert str(tags["example-5.7"]) == "atomic-b:HEE"
    assert tags["example-5.8"].kind == "elementary"
    assert set(words_of(FIX["example-5.8"])) == {"HEH", "EHH"}


def test_invalid_data_is_rejected():
    d = FIX["example-5.5"]
    blocks = dict(d.blocks)
    blocks.pop("S01")
    bad = SecondaryData("broken", d.modules, blocks)
    assert validate_secondary(bad) is not None
    with pytest.raises(SecondaryError):
        toda_secondary(bad)


def module(shape):
    return GradedModule({n: FgAbGroup.cyclic(o) for n, o in shape.items()})


PAIRS = [(module({0: p}), module({0: q, 1: r})) for p, q, r in itertools.product(ORDERS, [2, 16], [4, 8])]


@pytest.mark.parametrize("e,f", PAIRS)
def test_realize_then_split_recovers_components(e, f):
    sp = uct_split(e, f)
    for el in sp.group.elements():
        hom, ext = sp.project_class(el)
        phi = HoMap.from_split(sp, hom, ext)
        back = ho_map_of(realize_ho_map(phi), e, f)
        assert back.elements() == phi.elements()


def split_elements(sp):
    for el in sp.group.elements():
        yield HoMap.from_split(sp, *sp.project_class(el))


def generator_maps(sp):
    # generators and their total; both sides are additive in each factor
    gens = [[int(i == j) for j in range(len(sp.group.factors))] for i in range(len(sp.group.factors))]
    gens.append([1] * len(sp.group.factors))
    for el in gens:
        yield HoMap.from_split(sp, *sp.project_class(el))


@pytest.mark.parametrize("p,q,r", [(2, 4, 8), (8, 4, 2), (4, 4, 4), (16, 8, 4)])
def test_split_composition_matches_chain_composition(p, q, r):
    e, f, g = module({0: p, 1: q}), module({0: q, 1: r}), module({0: r, 1: p})
    s1, s2 = uct_split(e, f), uct_split(f, g)
    for phi in generator_maps(s1):
        for psi in generator_maps(s2):
            composite = compose_maps(realize_ho_map(psi), realize_ho_map(phi))
            assert compose_ho(psi, phi).elements() == ho_map_of(composite, e, g).elements()


@pytest.mark.parametrize("p,q,r", list(itertools.product(ORDERS, repeat=3))[::5])
def test_ext_ext_composites_are_null(p, q, r):
    e, f, g = module({0: p}), module({1: q}), module({2: r})
    s1, s2 = uct_split(e, f), uct_split(f, g)
    for phi in split_elements(s1):
        for psi in split_elements(s2):
            assert not phi.hom_part and not psi.hom_part
            comp = compose_maps(realize_ho_map(psi), realize_ho_map(phi))
            h = hom_complex(comp.source, comp.target)
            assert solve_linear(h.diff(1), h.encode(comp)) is not None


@pytest.mark.parametrize("p,q", list(itertools.product(ORDERS, repeat=2)))
def test_hom_type_nullhomotopy_is_unique(p, q):
    a, b = moore(FgAbGroup.cyclic(p), 0), moore(FgAbGroup.cyclic(q), 0)
    h = hom_complex(a, b)
    # the only degree-1 cycle is zero, so any two nullhomotopies agree
    assert homology(h, 1).group.is_trivial()
    sol_space = solve_linear(h.diff(1), [0] * h.rank(0))
    assert sol_space is not None and sol_space[1] == []
