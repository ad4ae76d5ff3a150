"""The ten acceptance criteria, one test (or two) per criterion.

Each test records a line in ``conftest.ACCEPTANCE``; the lines are printed
in the terminal summary.  Running this file directly prints them as well.
"""

import itertools
import random
import time
from math import comb

import pytest

from todacx.chaincx import GradedMap, GradedModule, compose_maps, hom_complex, homology, tensor, uct_split
from todacx.chaincx import validate_complex
from todacx.dga import DefiningSystem, boundary_law, massey_set, massey_value, triple_oracle, vector
from todacx.intlin import FgAbGroup, Subgroup, ext_group, hom_group, solve_linear
from todacx.pathcx import (face_map, nest_iso, path_map, path_power, rho, tensor_maps, theta, theta_left,
                           theta_right, transpose_square)
from todacx.secondary import (augment_acyclic, defining_system_set, extend_by_zero, fixtures, indeterminacy_chain,
                              toda_chain, toda_secondary)

from conftest import ACCEPTANCE, random_complex
from oracles import (abelian_groups_up_to, classical_triple, divisors_of_exponent, ext_counts, hom_counts,
                     kill_counts_cyclic)

FIX = fixtures()


def record(num, ok, detail):
    prev = ACCEPTANCE.get(num)
    if prev is not None:
        ok = ok and prev[0]
        detail = prev[1] + "; " + detail
    ACCEPTANCE[num] = (ok, detail)


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def same_subgroup(a: Subgroup, b: Subgroup) -> bool:
    return all(a.contains(g) for g in b.generators) and all(b.contains(g) for g in a.generators)


def coset(group, rep, sub):
    return sorted(group.reduce([x + y for x, y in zip(rep, h)]) for h in group.elements() if sub.contains(h))


# ------------------------------------------------------------ 1 - 4

def run_fixture(name, ambient, component, ind_order):
    with Timer() as t:
        r = toda_secondary(FIX[name])
    checks = {
        "ambient": r.ambient.factors == ambient,
        "nonzero": any(r.value_class),
        "indeterminacy": r.indeterminacy.order() == ind_order,
        "not vanishing": not r.vanishes,
        "time": t.elapsed < 1.0,
    }
    if component is not None:
        kind, order = component
        orders = r.component_orders()
        # a generator of the named component, and nothing elsewhere
        checks["generator"] = orders == {(kind, 0): order}
    if ind_order > 1:
        checks["quotient"] = any(r.quotient_class)
    ok = all(checks.values())
    bad = [k for k, v in checks.items() if not v]
    detail = (f"{name}: value {list(r.value_class)} in {r.ambient}, indeterminacy order "
              f"{r.indeterminacy.order()}, vanishes={r.vanishes}, {t.elapsed:.2f}s")
    if bad:
        detail += f" (failed: {', '.join(bad)})"
    return ok, detail


@pytest.mark.parametrize("num,name,ambient,component,ind_order", [
    (1, "example-5.5", (2,), None, 1),
    (2, "example-5.6", (2,), ("ext", 2), 1),
    (3, "example-5.7", (8,), ("ext", 8), 4),
    (4, "example-5.8", (16,), ("hom", 16), 8),
])
def test_fixture_criteria(num, name, ambient, component, ind_order):
    ok, detail = run_fixture(name, ambient, component, ind_order)
    record(num, ok, detail)
    assert ok, detail


# ------------------------------------------------------------------ 5

def test_criterion_5_path_structure():
    rng = random.Random(5)
    count = 0
    with Timer() as t:
        for _ in range(50):
            a = random_complex(rng, max_rank=3, length=4, entries=3)
            assert validate_complex(a) is None
            count += 1
            for n in range(5):
                p = path_power(a, n).carrier
                assert validate_complex(p) is None
                for j in p.degrees():
                    assert p.rank(j) == sum(comb(n, k) * a.rank(j + k) for k in range(n + 1))
                if n:
                    assert all(homology(p, j).group.is_trivial() for j in p.degrees())
                for i in range(n):
                    for j in range(i + 1, n):
                        assert (compose_maps(face_map(a, n - 1, i), face_map(a, n, j))
                                == compose_maps(face_map(a, n - 1, j - 1), face_map(a, n, i)))
    ok = t.elapsed < 30
    record(5, ok, f"{count} complexes, n <= 4, {t.elapsed:.1f}s")
    assert ok


# ------------------------------------------------------------------ 6

def square_routes(x, y):
    xy = tensor(x, y)
    right_first = compose_maps(nest_iso(xy, 1, 1), compose_maps(path_map(theta_left(x, y), 1),
                                                                 theta_right(path_power(x, 1).carrier, y)))
    left_first = compose_maps(nest_iso(xy, 1, 1), compose_maps(path_map(theta_right(x, y), 1),
                                                                theta_left(x, path_power(y, 1).carrier)))
    return xy, right_first, left_first


def face_rhs(i, j, k, x, y):
    if k < i:
        return compose_maps(theta(i - 1, j, x, y),
                            tensor_maps(face_map(x, i, k), GradedMap.identity(path_power(y, j).carrier)))
    return compose_maps(theta(i, j - 1, x, y),
                        tensor_maps(GradedMap.identity(path_power(x, i).carrier), face_map(y, j, k - i)))


def test_criterion_6_axioms():
    rng = random.Random(6)
    with Timer() as t:
        for _ in range(12):
            x, y = random_complex(rng, length=2), random_complex(rng, length=2)
            xy = tensor(x, y)
            # constant paths
            assert compose_maps(rho(xy), theta_left(x, y)) == tensor_maps(rho(x), GradedMap.identity(y))
            assert compose_maps(rho(xy), theta_right(x, y)) == tensor_maps(GradedMap.identity(x), rho(y))
            # coalgebra square
            px = path_power(x, 1).carrier
            assert compose_maps(rho(x), path_map(rho(x), 1)) == compose_maps(rho(x), rho(px))
            # faces of the structure maps, i + j <= 3
            for i in range(4):
                for j in range(4 - i):
                    th = theta(i, j, x, y)
                    assert th.is_chain()
                    for k in range(i + j):
                        assert compose_maps(face_map(xy, i + j, k), th) == face_rhs(i, j, k, x, y)
            # the constants square commutes once the two path coordinates are swapped
            _, r1, l1 = square_routes(x, y)
            assert r1 == compose_maps(transpose_square(xy), l1)
    ok = t.elapsed < 30
    record(6, ok, f"constant paths, coalgebra square, face compatibility and transposed square hold "
                  f"({t.elapsed:.1f}s)")
    assert ok


@pytest.mark.xfail(strict=True, reason="the literal constants square swaps the two path coordinates")
def test_criterion_6_literal_square():
    rng = random.Random(66)
    differ = 0
    for _ in range(40):
        x, y = random_complex(rng, length=2), random_complex(rng, length=2)
        _, r1, l1 = square_routes(x, y)
        differ += r1 != l1
    record(6, differ == 0, f"literal constants square: differs on {differ}/40 random pairs")
    assert differ == 0


# ------------------------------------------------------------------ 7

def test_criterion_7_uct_split():
    orders = [2, 4, 8, 16]
    shapes = []
    for p, q in itertools.product(orders, repeat=2):
        shapes.append(({0: p}, {0: q}))
        shapes.append(({0: p}, {1: q}))
        for r in orders:
            shapes.append(({0: p}, {0: q, 1: r}))
    for es, fs in shapes:
        e = GradedModule({n: FgAbGroup.cyclic(o) for n, o in es.items()})
        f = GradedModule({n: FgAbGroup.cyclic(o) for n, o in fs.items()})
        sp = uct_split(e, f)
        expected = 1
        for n, o in es.items():
            if n in fs:
                expected *= hom_counts([o], [fs[n]], [o])[0]
            if n + 1 in fs:
                expected *= ext_counts([o], [fs[n + 1]], [o])[0]
        assert sp.group.order() == expected, (es, fs)
        images = set()
        for el in sp.group.elements():
            hom, ext = sp.project_class(el)
            assert sp.to_class(hom, ext) == sp.group.reduce(el)
            images.add(sp.flatten(hom, ext))
        assert len(images) == expected
    record(7, True, f"{len(shapes)} module pairs, orders and bijections match")


# ------------------------------------------------------------------ 8

TRIPLE_DEGREES = [(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2), (2, 2, 2), (0, 1, 0)]


def homotopy_layer(a, s):
    out = {}
    for i in (2, 3):
        deg = s.degree(1, i)
        sol = solve_linear(a.underlying.diff(deg), boundary_law(a, s, 1, i))
        assert sol is not None
        out[i] = sol
    return out


def test_criterion_8_massey():
    with Timer() as t:
        for degrees in TRIPLE_DEGREES:
            a, ix = triple_oracle(*degrees, extra=True)
            base = DefiningSystem(list(degrees), {(0, 1): vector(a, ix, "a"), (0, 2): vector(a, ix, "b"),
                                                  (0, 3): vector(a, ix, "c")})
            layer = homotopy_layer(a, base)
            deg = sum(degrees) + 1
            h = homology(a.underlying, deg)
            # classical value a·y - (-1)^p x·c with indeterminacy spanned by a·e
            rep = h.classify(classical_triple(a, ix, degrees[0]))
            classical = Subgroup(h.group, [h.classify(vector(a, ix, "ae"))])
            found = set()
            (p2, k2), (p3, k3) = layer[2], layer[3]
            # the exact set comes from massey_set below; the box only samples systems
            bound = 2 if len(k2) + len(k3) <= 4 else 1
            for c2 in itertools.product(range(-bound, bound + 1), repeat=len(k2)):
                for c3 in itertools.product(range(-bound, bound + 1), repeat=len(k3)):
                    h2 = [x + sum(c * v[q] for c, v in zip(c2, k2)) for q, x in enumerate(p2)]
                    h3 = [x + sum(c * v[q] for c, v in zip(c3, k3)) for q, x in enumerate(p3)]
                    s = DefiningSystem(list(degrees), {**base.elements, (1, 2): h2, (1, 3): h3})
                    cls = massey_value(a, s).class_
                    assert classical.contains([x - y for x, y in zip(cls, rep)])
                    found.add(cls)
            # the values reach the whole classical coset
            reached = Subgroup(h.group, [[x - y for x, y in zip(v, rep)] for v in found])
            assert same_subgroup(reached, classical)
            bs = massey_set(a, [vector(a, ix, n) for n in "abc"], degrees)
            assert bs.contains(rep) and same_subgroup(bs.subgroup, classical)
    ok = t.elapsed < 10
    record(8, ok, f"{len(TRIPLE_DEGREES)} degree patterns, values fill the classical coset ({t.elapsed:.1f}s)")
    assert ok


# ------------------------------------------------------------------ 9

def padded_invariants(name, which, degree):
    data = FIX[name]
    f, g, h = (data.chain_map(k) for k in "fgh")
    s, t = data.chain_map("S"), data.chain_map("T")
    objs = [f.source, f.target, g.target, h.target]
    new = list(objs)
    inc = [GradedMap.identity(o) for o in objs]
    proj = [GradedMap.identity(o) for o in objs]
    new[which], inc[which], proj[which] = augment_acyclic(objs[which], degree)
    f2 = extend_by_zero(f, new[0], new[1])
    g2 = extend_by_zero(g, new[1], new[2])
    h2 = extend_by_zero(h, new[2], new[3])
    s2 = extend_by_zero(s, new[0], new[2])
    t2 = extend_by_zero(t, new[1], new[3])
    cls = toda_chain([f2, g2, h2], [s2, t2])
    ind = indeterminacy_chain(f2, h2)
    big = hom_complex(new[0], new[3])
    small = hom_complex(objs[0], objs[3])
    hs = homology(small, 1)
    hb = homology(big, 1)

    def back(cycle):
        z = big.decode(cycle, 1)
        return hs.classify(small.encode(compose_maps(proj[3], compose_maps(z, inc[0]))))

    ind_back = Subgroup(hs.group, [back(hb.representative(e)) for e in ind.generators])
    return back(cls.cycle), ind_back, ind.contains(cls.element)


def test_criterion_9_independence():
    lines = []
    for name, data in sorted(FIX.items()):
        r = toda_secondary(data)
        s = defining_system_set(data)
        assert s.exact and s.elements() == coset(r.ambient, r.value_class, r.indeterminacy)
        for which, degree in itertools.product(range(4), (0, 1)):
            value, ind, van = padded_invariants(name, which, degree)
            assert value == r.value_class, (name, which, degree)
            assert same_subgroup(ind, r.indeterminacy)
            assert van == r.vanishes
        lines.append(f"{name}: {len(s.elements())} classes")
    record(9, True, ", ".join(lines) + "; padding every object leaves value and indeterminacy fixed")


# ----------------------------------------------------------------- 10

def test_criterion_10_hom_ext():
    groups = abelian_groups_up_to(32)
    with Timer() as t:
        for g, h in itertools.product(groups, repeat=2):
            ks = divisors_of_exponent(g, h)
            gg = FgAbGroup(list(g)) if g else FgAbGroup([])
            hh = FgAbGroup(list(h)) if h else FgAbGroup([])
            hom, ext = hom_group(gg, hh), ext_group(gg, hh)
            assert hom.free_rank == 0 and ext.free_rank == 0
            assert kill_counts_cyclic(hom.torsion, ks) == hom_counts(g, h, ks), (g, h)
            assert kill_counts_cyclic(ext.torsion, ks) == ext_counts(g, h, ks), (g, h)
    ok = t.elapsed < 60
    n = len(groups)
    record(10, ok, f"{n * n} pairs of groups of order <= 32 ({t.elapsed:.1f}s)")
    assert ok


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
