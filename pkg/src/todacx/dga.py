"""Differential graded algebras over Z and their higher Massey products.

A DGA is a chain complex with bilinear products ``A_i ⊗ A_j -> A_{i+j}``
given by structure constants.  Seen as a category with one object it feeds
straight into :mod:`todacx.higher`; :func:`massey_value` computes the same
products directly from the components of a defining system.

Boundary law used for defining systems (k >= 1, j = m_{i-k} + ... + m_i):

    d H^k_i = Σ_{u<k} (-1)^(j+u) (-1)^((k-u-1) q_u) H^{k-u-1}_{i-u-1} H^u_i,

with q_u = m_{i-u} + ... + m_i.  Massey cycles are normalised so that the
triple product of classes a, b, c agrees with ``a y - (-1)^|a| x c`` where
dx = ab and dy = bc.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .chaincx import ChainComplex, homology, validate_complex
from .higher import (BracketSet, HigherComplexData, assemble_cube, bracket_class, bracket_set,
                     bracket_value)
from .intlin import FgAbGroup, IntMatrix, Subgroup


class Dga:
    """Chain complex plus structure constants ``mult[(i, j)][p][q] -> vector``."""

    def __init__(self, underlying: ChainComplex,
                 mult: Dict[Tuple[int, int], Sequence[Sequence[Sequence[int]]]],
                 unit: Sequence[int]):
        self.underlying = underlying
        self.mult = {}
        for (i, j), table in mult.items():
            ri, rj, rk = underlying.rank(i), underlying.rank(j), underlying.rank(i + j)
            if len(table) != ri or any(len(row) != rj for row in table):
                raise ValueError(f"product table ({i},{j}) has the wrong shape")
            tab = [[tuple(int(x) for x in cell) for cell in row] for row in table]
            if any(len(cell) != rk for row in tab for cell in row):
                raise ValueError(f"product table ({i},{j}) has wrong vector length")
            self.mult[(int(i), int(j))] = tab
        self.unit = [int(x) for x in unit]
        if len(self.unit) != underlying.rank(0):
            raise ValueError("unit must lie in degree 0")

    def rank(self, n: int) -> int:
        return self.underlying.rank(n)

    def basis(self, n: int) -> List[List[int]]:
        r = self.rank(n)
        return [[1 if q == p else 0 for q in range(r)] for p in range(r)]

    def multiply(self, x: Sequence[int], xdeg: int, y: Sequence[int], ydeg: int) -> List[int]:
        out = [0] * self.rank(xdeg + ydeg)
        tab = self.mult.get((xdeg, ydeg))
        if tab is None or not out:
            return out
        for p, a in enumerate(x):
            if not a:
                continue
            row = tab[p]
            for q, b in enumerate(y):
                if not b:
                    continue
                for r, c in enumerate(row[q]):
                    if c:
                        out[r] += a * b * c
        return out

    def d(self, x: Sequence[int], deg: int) -> List[int]:
        return self.underlying.diff(deg) @ list(x)

    def degrees(self):
        return self.underlying.degrees()


@dataclass
class DgaViolation:
    law: str
    where: Tuple
    message: str


def validate_dga(a: Dga) -> Optional[DgaViolation]:
    """Check d d = 0, the Leibniz rule, associativity and the unit on basis elements."""
    bad = validate_complex(a.underlying)
    if bad is not None:
        return DgaViolation("differential", (bad.degree,), bad.message)
    degs = list(a.degrees())
    for i in degs:
        for j in degs:
            for p, x in enumerate(a.basis(i)):
                for q, y in enumerate(a.basis(j)):
                    lhs = a.d(a.multiply(x, i, y, j), i + j)
                    r1 = a.multiply(a.d(x, i), i - 1, y, j)
                    r2 = a.multiply(x, i, a.d(y, j), j - 1)
                    s = -1 if i % 2 else 1
                    rhs = [u + s * v for u, v in zip(r1, r2)]
                    if lhs != rhs:
                        return DgaViolation("leibniz", (i, p, j, q), f"d(x y) differs for basis ({i},{p}),({j},{q})")
    for i in degs:
        for j in degs:
            for k in degs:
                if not a.rank(i + j + k):
                    continue
                for x in a.basis(i):
                    for y in a.basis(j):
                        xy = a.multiply(x, i, y, j)
                        for z in a.basis(k):
                            if a.multiply(xy, i + j, z, k) != a.multiply(x, i, a.multiply(y, j, z, k), j + k):
                                return DgaViolation("associativity", (i, j, k), "products do not associate")
    for i in degs:
        for p, x in enumerate(a.basis(i)):
            if a.multiply(a.unit, 0, x, i) != x or a.multiply(x, i, a.unit, 0) != x:
                return DgaViolation("unit", (i, p), "unit does not act as identity")
    return None


class DgaCategory:
    """One-object category whose endomorphism complex is the DGA."""

    def __init__(self, algebra: Dga):
        self.algebra = algebra

    def hom(self, a, b) -> ChainComplex:
        return self.algebra.underlying

    def compose(self, a, b, c, g, gdeg, f, fdeg):
        return self.algebra.multiply(g, gdeg, f, fdeg)

    def identity(self, a):
        return list(self.algebra.unit)


OBJECT = "*"


@dataclass
class DefiningSystem:
    """Classes ``H^0_i`` (i = 1..n+1) and homotopies ``H^k_i`` for 1 <= k < n."""

    degrees: List[int]
    elements: Dict[Tuple[int, int], List[int]]

    @property
    def n(self) -> int:
        return len(self.degrees) - 1

    def j(self, k: int, i: int) -> int:
        return sum(self.degrees[t - 1] for t in range(i - k, i + 1))

    def degree(self, k: int, i: int) -> int:
        return self.j(k, i) + k

    def get(self, a: Dga, k: int, i: int) -> List[int]:
        v = self.elements.get((k, i))
        return list(v) if v is not None else [0] * a.rank(self.degree(k, i))

    def indices(self):
        for k in range(self.n):
            for i in range(k + 1, self.n + 2):
                yield k, i


def boundary_law(a: Dga, s: DefiningSystem, k: int, i: int) -> List[int]:
    """Right-hand side of the boundary law for ``H^k_i``."""
    deg = s.degree(k, i) - 1
    j = s.j(k, i)
    out = [0] * a.rank(deg)
    for u in range(k):
        q = s.j(u, i)
        sign = (-1) ** ((j + u + (k - u - 1) * q) % 2)
        left = s.get(a, k - u - 1, i - u - 1)
        right = s.get(a, u, i)
        prod = a.multiply(left, s.degree(k - u - 1, i - u - 1), right, s.degree(u, i))
        out = [x + sign * y for x, y in zip(out, prod)]
    return out


def validate_defining_system(a: Dga, s: DefiningSystem) -> Optional[Tuple[int, int]]:
    """First (k, i) whose boundary law fails (k = 0 means a non-cycle class)."""
    for k, i in s.indices():
        v = s.get(a, k, i)
        if len(v) != a.rank(s.degree(k, i)):
            return (k, i)
        if a.d(v, s.degree(k, i)) != (boundary_law(a, s, k, i) if k else [0] * a.rank(s.degree(k, i) - 1)):
            return (k, i)
    return None


def normalisation(degrees: Sequence[int]) -> int:
    """Global sign relating the cubical value to the classical convention."""
    return -((-1) ** (sum(degrees[1:]) % 2))


def raw_massey_cycle(a: Dga, s: DefiningSystem) -> List[int]:
    n = s.n
    deg = sum(s.degrees) + n - 1
    out = [0] * a.rank(deg)
    for u in range(n):
        q = s.j(u, n + 1)
        sign = (-1) ** ((u + (n - 1 - u) * q) % 2)
        prod = a.multiply(s.get(a, n - 1 - u, n - u), s.degree(n - 1 - u, n - u),
                          s.get(a, u, n + 1), s.degree(u, n + 1))
        out = [x + sign * y for x, y in zip(out, prod)]
    return out


@dataclass
class MasseyResult:
    cycle: List[int]
    degree: int
    group: FgAbGroup
    class_: Tuple[int, ...]
    indeterminacy: Optional[Subgroup] = None
    quotient_class: Optional[Tuple[int, ...]] = None


class InvalidSystem(ValueError):
    pass


def massey_value(a: Dga, s: DefiningSystem) -> MasseyResult:
    bad = validate_defining_system(a, s)
    if bad is not None:
        raise InvalidSystem(f"boundary law fails at {bad}")
    sign = normalisation(s.degrees)
    cyc = [sign * x for x in raw_massey_cycle(a, s)]
    deg = sum(s.degrees) + s.n - 1
    if any(a.d(cyc, deg)):
        # the boundary law alone does not force the faces to match once n >= 3
        raise InvalidSystem("faces of the system are incompatible; the value is not a cycle")
    h = homology(a.underlying, deg)
    ind = None
    qc = None
    if s.n == 2:
        ind = triple_indeterminacy(a, [s.get(a, 0, i) for i in (1, 2, 3)], s.degrees)
        qc = ind.quotient_class(h.classify(cyc))
    return MasseyResult(cyc, deg, h.group, h.classify(cyc), ind, qc)


def triple_indeterminacy(a: Dga, classes, degrees) -> Subgroup:
    """``[a]·H + H·[c]`` in the degree of the triple product."""
    p, q, r = degrees
    deg = p + q + r + 1
    h = homology(a.underlying, deg)
    gens = []
    for z in homology(a.underlying, q + r + 1).generators():
        gens.append(h.classify(a.multiply(classes[0], p, z, q + r + 1)))
    for z in homology(a.underlying, p + q + 1).generators():
        gens.append(h.classify(a.multiply(z, p + q + 1, classes[2], r)))
    return Subgroup(h.group, gens)


# ------------------------------------------------ one-object higher view

def to_higher(a: Dga, s: DefiningSystem) -> HigherComplexData:
    """Cubes whose top components are the homotopies of the system."""
    cat = DgaCategory(a)
    objs = [OBJECT] * (s.n + 2)
    data = HigherComplexData(0, objs, s.degrees, {(0, i): s.get(a, 0, i) for i in range(1, s.n + 2)}, cat)
    x = a.underlying
    for k in range(1, s.n):
        cubes = {}
        probe = data.with_maps(k, {})
        for i in range(k + 1, s.n + 2):
            faces = [probe.face_composite(k, i, t) for t in range(k)]
            cubes[(k, i)] = assemble_cube(x, k, probe.degree(k, i), faces, s.get(a, k, i))
        data = data.with_maps(k, cubes)
    return data


def from_higher(d: HigherComplexData) -> DefiningSystem:
    from .pathcx import path_power
    elems = {}
    x = d.category.algebra.underlying
    for (k, i), v in d.maps.items():
        pk = path_power(x, k)
        elems[(k, i)] = pk.component(v, d.degree(k, i), pk.top())
    return DefiningSystem(list(d.degrees), elems)


def massey_via_brackets(a: Dga, s: DefiningSystem):
    """Class of the one-object bracket, normalised like :func:`massey_value`."""
    d = to_higher(a, s)
    c = bracket_class(bracket_value(d))
    sign = normalisation(s.degrees)
    return c.group.reduce([sign * x for x in c.element]), [sign * x for x in c.cycle]


def massey_set(a: Dga, classes: Sequence[Sequence[int]], degrees: Sequence[int],
               bound: int = 1) -> BracketSet:
    """Massey product of the given cycles over all defining systems."""
    cat = DgaCategory(a)
    objs = [OBJECT] * (len(classes) + 1)
    d0 = HigherComplexData(0, objs, list(degrees), {(0, i + 1): list(c) for i, c in enumerate(classes)}, cat)
    bs = bracket_set(d0, search_bound=bound)
    sign = normalisation(degrees)
    g = bs.ambient
    if bs.representative is not None:
        bs.representative = g.reduce([sign * x for x in bs.representative])
    bs.values = sorted(g.reduce([sign * x for x in v]) for v in bs.values)
    return bs


# --------------------------------------------------------- example DGAs

def _from_words(basis: List[Tuple[str, int]], mult_rule, diff_rule, unit_names) -> Tuple[Dga, Dict[str, Tuple[int, int]]]:
    """Build a DGA from named basis elements, a product rule and a differential."""
    index: Dict[str, Tuple[int, int]] = {}
    ranks: Dict[int, int] = {}
    for name, deg in basis:
        index[name] = (deg, ranks.get(deg, 0))
        ranks[deg] = ranks.get(deg, 0) + 1
    cx_diffs = {}
    for name, deg in basis:
        for tgt, coef in diff_rule(name).items():
            td, ti = index[tgt]
            if td != deg - 1:
                raise ValueError(f"differential of {name} has the wrong degree")
            m = cx_diffs.setdefault(deg, [[0] * ranks[deg] for _ in range(ranks.get(deg - 1, 0))])
            m[ti][index[name][1]] += coef
    cx = ChainComplex(ranks, {n: IntMatrix(ranks.get(n - 1, 0), ranks[n], m) for n, m in cx_diffs.items()})
    mult = {}
    for (x, dx) in basis:
        for (y, dy) in basis:
            res = mult_rule(x, y)
            if not res:
                continue
            tab = mult.setdefault((dx, dy), [[[0] * ranks.get(dx + dy, 0) for _ in range(ranks[dy])]
                                              for _ in range(ranks[dx])])
            for z, c in res.items():
                zd, zi = index[z]
                if zd != dx + dy:
                    raise ValueError(f"product {x}{y} has the wrong degree")
                tab[index[x][1]][index[y][1]][zi] += c
    unit = [0] * ranks.get(0, 0)
    for u in unit_names:
        unit[index[u][1]] += 1
    return Dga(cx, mult, unit), index


def vector(a: Dga, index, name: str) -> List[int]:
    deg, i = index[name]
    v = [0] * a.rank(deg)
    v[i] = 1
    return v


def triple_oracle(p: int = 1, q: int = 1, r: int = 1, extra: bool = False):
    """Generators a, b, c with dx = ab and dy = bc; optionally a cycle e with ae != 0.

    Products are nonzero only in the written order (a·b, b·c, ab·c = a·bc,
    a·y, x·c, a·e).  Returns the DGA and a name -> (degree, index) table.
    """
    basis = [("1", 0), ("a", p), ("b", q), ("c", r), ("ab", p + q), ("bc", q + r),
             ("abc", p + q + r), ("x", p + q + 1), ("y", q + r + 1),
             ("ay", p + q + r + 1), ("xc", p + q + r + 1)]
    if extra:
        basis += [("e", q + r + 1), ("ae", p + q + r + 1)]
    table = {("a", "b"): "ab", ("b", "c"): "bc", ("ab", "c"): "abc", ("a", "bc"): "abc",
             ("a", "y"): "ay", ("x", "c"): "xc", ("a", "e"): "ae"}

    def mult_rule(x, y):
        if x == "1":
            return {y: 1}
        if y == "1":
            return {x: 1}
        z = table.get((x, y))
        return {z: 1} if z else {}

    sp = -1 if p % 2 else 1

    def diff_rule(x):
        return {"x": {"ab": 1}, "y": {"bc": 1}, "ay": {"abc": sp}, "xc": {"abc": 1}}.get(x, {})

    return _from_words(basis, mult_rule, diff_rule, ["1"])


def interval_algebra(degrees: Sequence[int], omit=(), relations=()):
    """Path algebra on vertices 0..N spanned by chains of arrows (p, q), p < q.

    Arrow (p, q) stands for the homotopy on the interval [p, q]; the longest
    arrow (0, N) is always left out, so the Massey product of the unit arrows
    is defined and nonzero.  ``omit`` drops further arrows (their homotopies
    are zero) and ``relations`` lists vertex triples (p, q, r) whose word
    (p, q)(q, r) is set to zero.  The differential of an arrow follows the
    boundary law above; words are concatenations with matching ends.
    """
    big = len(degrees)
    omitted = {(0, big)} | {tuple(a) for a in omit}
    rels = {tuple(r) for r in relations}

    def arrow_degree(p, q):
        return sum(degrees[p:q]) + (q - p - 1)

    def alive(chain):
        if any((chain[s], chain[s + 1]) in omitted for s in range(len(chain) - 1)):
            return False
        return not any(tuple(chain[s:s + 3]) in rels for s in range(len(chain) - 2))

    words = [c for r in range(big + 1) for c in itertools.combinations(range(big + 1), r + 1) if alive(c)]
    names = {w: "-".join(map(str, w)) for w in words}
    deg = {w: sum(arrow_degree(w[s], w[s + 1]) for s in range(len(w) - 1)) for w in words}
    basis = [(names[w], deg[w]) for w in words]
    lookup = {names[w]: w for w in words}

    def mult_rule(x, y):
        u, v = lookup[x], lookup[y]
        if u[-1] != v[0]:
            return {}
        if len(u) == 1:
            return {y: 1}
        if len(v) == 1:
            return {x: 1}
        w = u + v[1:]
        return {names[w]: 1} if w in names else {}

    def arrow_boundary(p, q):
        # arrow (p, q) = H^k_i with i = q, k = q - p - 1
        k = q - p - 1
        j = sum(degrees[p:q])
        out = {}
        for u in range(k):
            mid = q - u - 1
            qu = sum(degrees[mid:q])
            w = (p, mid, q)
            if w in names:
                out[w] = out.get(w, 0) + (-1) ** ((j + u + (k - u - 1) * qu) % 2)
        return out

    def diff_rule(x):
        w = lookup[x]
        out: Dict[str, int] = {}
        pre = 0
        for s in range(len(w) - 1):
            p, q = w[s], w[s + 1]
            for t, c in arrow_boundary(p, q).items():
                nw = w[:s] + t + w[s + 2:]
                if nw in names:
                    sg = -1 if pre % 2 else 1
                    out[names[nw]] = out.get(names[nw], 0) + sg * c
            pre += arrow_degree(p, q)
        return {k2: v for k2, v in out.items() if v}

    units = [names[(v,)] for v in range(big + 1)]
    return _from_words(basis, mult_rule, diff_rule, units)


def quadruple_oracle(degrees: Sequence[int] = (1, 1, 1, 1)):
    """Interval algebra with a b = 0 = c e strictly, so the faces of every
    quadruple defining system of the unit arrows match."""
    return interval_algebra(degrees, omit=[(0, 2), (2, 4)], relations=[(0, 1, 2), (2, 3, 4)])


def interval_system(a: Dga, index, degrees: Sequence[int]) -> DefiningSystem:
    """Defining system of an interval algebra given by its arrows."""
    big = len(degrees)
    el = {}
    for k in range(big - 1):
        for i in range(k + 1, big + 1):
            name = f"{i - k - 1}-{i}"
            el[(k, i)] = vector(a, index, name) if name in index else [0] * a.rank(sum(degrees[i - k - 1:i]) + k)
    return DefiningSystem(list(degrees), el)
