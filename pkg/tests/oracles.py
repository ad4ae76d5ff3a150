"""Independent reference computations.

Nothing here calls the Smith kernel of the package: invariant factors come
from sympy, and group structures from counting elements by brute force.
"""

import itertools
import math
from functools import reduce

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors as sympy_invariants
from sympy.polys.domains import ZZ


def sympy_factors(rows, ncols):
    """Nonzero invariant factors of an integer matrix, via sympy."""
    if not rows or not ncols:
        return ()
    m = Matrix(rows)
    if all(x == 0 for x in m):
        return ()
    fs = sympy_invariants(m, domain=ZZ)
    return tuple(abs(int(f)) for f in fs if f != 0)


def homology_oracle(cx, n):
    """(free rank, torsion factors) of H_n, from invariant factors alone."""
    rank_n = cx.rank(n)
    d_n = cx.diff(n).tolist()
    d_up = cx.diff(n + 1).tolist()
    r_out = len(sympy_factors(d_n, rank_n)) if cx.rank(n - 1) else 0
    up = sympy_factors(d_up, cx.rank(n + 1)) if rank_n and cx.rank(n + 1) else ()
    free = rank_n - r_out - len(up)
    tors = tuple(f for f in up if f > 1)
    return free, tors


def abelian_groups_up_to(order):
    """All finite abelian groups of order <= ``order`` as tuples of cyclic orders."""
    out = [()]
    for n in range(2, order + 1):
        for t in _factorisations(n):
            out.append(t)
    return out


def _factorisations(n):
    # invariant-factor chains d1 | d2 | ... with product n
    res = []

    def rec(rem, prev, acc):
        if rem == 1:
            res.append(tuple(acc))
            return
        for d in range(2, rem + 1):
            if rem % d == 0 and (prev is None or d % prev == 0):
                # remaining factors must be multiples of d
                rest = rem // d
                if rest == 1 or rest % d == 0:
                    rec(rest, d, acc + [d])

    rec(n, None, [])
    return res


class CyclicSum:
    """Brute-force model of ⊕ Z/o_i as tuples."""

    def __init__(self, orders):
        self.orders = tuple(orders)

    def elements(self):
        return itertools.product(*[range(o) for o in self.orders])

    def scale(self, k, x):
        return tuple((k * a) % o for a, o in zip(x, self.orders))

    def size(self):
        return math.prod(self.orders)


def kill_counts_cyclic(orders, ks):
    """#{x : k x = 0} in ⊕ Z/o for each k."""
    return [math.prod(math.gcd(k, o) for o in orders) for k in ks]


def hom_counts(g, h, ks):
    """#{phi in Hom(G, H) : k phi = 0} by enumerating generator images.

    Hom(⊕ Z/g_i, H) is the product of the g_i-torsion subgroups of H; counts
    of a product are products of counts."""
    hh = CyclicSum(h)
    per = []
    for gi in g:
        tors = [x for x in hh.elements() if not any(hh.scale(gi, x))]
        per.append([sum(1 for x in tors if not any(hh.scale(k, x))) for k in ks])
    return [math.prod(c[t] for c in per) if per else 1 for t in range(len(ks))]


def ext_counts(g, h, ks):
    """#{e in Ext(G, H) : k e = 0} by enumerating cosets of g_i H in H."""
    hh = CyclicSum(h)
    per = []
    for gi in g:
        sub = {hh.scale(gi, x) for x in hh.elements()}
        cosets = {}
        for x in hh.elements():
            key = min(tuple((a + b) % o for a, b, o in zip(x, s, h)) for s in sub)
            cosets.setdefault(key, x)
        cnt = []
        for k in ks:
            cnt.append(sum(1 for x in cosets.values() if hh.scale(k, x) in sub))
        per.append(cnt)
    return [math.prod(c[t] for c in per) if per else 1 for t in range(len(ks))]


def divisors_of_exponent(*groups):
    e = reduce(lambda a, b: a * b // math.gcd(a, b), [o for gr in groups for o in gr], 1)
    return [k for k in range(1, e + 1) if e % k == 0]


def classical_triple(algebra, index, p):
    """a·y - (-1)^p x·c in the triple oracle algebra (dx = ab, dy = bc)."""
    ay = index["ay"][1]
    xc = index["xc"][1]
    deg = index["ay"][0]
    v = [0] * algebra.rank(deg)
    v[ay] += 1
    v[xc] -= (-1) ** p
    return v
