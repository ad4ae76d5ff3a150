"""Higher chain complexes, their cubical nullhomotopies, and Toda bracket values.

A higher complex of order n and length N consists of objects a_0..a_N,
integer degrees m_1..m_N and elements ``maps[(k, i)]`` of
``P^k Hom(a_i, a_{i-k-1})`` for 0 <= k <= n, k < i <= N.  Each is a cycle of
degree m_{i-k} + ... + m_i, and its faces are the composites

    d_t maps[(k, i)] = compose_paths(maps[(k-t-1, i-t-1)], maps[(t, i)]).

The categories involved are enriched in chain complexes: either the category
of chain complexes itself (:class:`ComplexCategory`) or a single-object
category given by a DGA (see :mod:`todacx.dga`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .chaincx import ChainComplex, GradedMap, compose_maps, homology, hom_complex
from .intlin import FgAbGroup, IntMatrix, Subgroup, solve_linear
from .pathcx import (face_map, face_of_label, lift_along_sigma, loop_reduce, matching_object,
                     path_power)


class ComplexCategory:
    """Chain complexes with their function complexes."""

    def hom(self, a: ChainComplex, b: ChainComplex) -> ChainComplex:
        return hom_complex(a, b)

    def compose(self, a, b, c, g: Sequence[int], gdeg: int, f: Sequence[int], fdeg: int) -> List[int]:
        """``g ∘ f`` for f in Hom(a, b), g in Hom(b, c)."""
        hab, hbc, hac = hom_complex(a, b), hom_complex(b, c), hom_complex(a, c)
        if not any(g) or not any(f):
            return [0] * hac.rank(gdeg + fdeg)
        return hac.encode(compose_maps(hbc.decode(g, gdeg), hab.decode(f, fdeg)))

    def identity(self, a) -> List[int]:
        return hom_complex(a, a).encode(GradedMap.identity(a))


COMPLEXES = ComplexCategory()


def compose_paths(cat, a, b, c, i: int, j: int, u: Sequence[int], udeg: int,
                  v: Sequence[int], vdeg: int) -> List[int]:
    """Composite ``P^i Hom(b,c) ⊗ P^j Hom(a,b) -> P^{i+j} Hom(a,c)``.

    On labels: ``(u ∘ v)_{S ∪ (T+i)} = (-1)^(|S| vdeg) u_S ∘ v_T``.
    """
    pu, pv = path_power(cat.hom(b, c), i), path_power(cat.hom(a, b), j)
    out_p = path_power(cat.hom(a, c), i + j)
    deg = udeg + vdeg
    out = [0] * out_p.carrier.rank(deg)
    if not out or not any(u) or not any(v):
        return out
    for s_lab, u0, u1 in pu.layout.get(udeg, []):
        us = u[u0:u1]
        if not any(us):
            continue
        for t_lab, v0, v1 in pv.layout.get(vdeg, []):
            vt = v[v0:v1]
            if not any(vt):
                continue
            piece = cat.compose(a, b, c, us, udeg + len(s_lab), vt, vdeg + len(t_lab))
            if not any(piece):
                continue
            if (len(s_lab) * vdeg) % 2:
                piece = [-x for x in piece]
            s0, s1 = out_p.offset(deg, s_lab + tuple(t + i for t in t_lab))
            for q, x in enumerate(piece):
                out[s0 + q] += x
    return out


def mu_hat(i: int, j: int, u: Sequence[int], udeg: int, v: Sequence[int], vdeg: int,
           a, b, c, cat=COMPLEXES) -> List[int]:
    """Public form of :func:`compose_paths` (u from b to c, v from a to b)."""
    return compose_paths(cat, a, b, c, i, j, u, udeg, v, vdeg)


def composition_map(cat, a, b, c) -> GradedMap:
    """The composition ``Hom(b,c) ⊗ Hom(a,b) -> Hom(a,c)`` as a chain map."""
    from .chaincx import tensor
    hbc, hab, hac = cat.hom(b, c), cat.hom(a, b), cat.hom(a, c)
    src = tensor(hbc, hab)
    comp = {}
    for d in src.degrees():
        cols = []
        for (p, q), s, e in src.summands.get(d, []):
            for x in range(hbc.rank(p)):
                for y in range(hab.rank(q)):
                    g = [1 if t == x else 0 for t in range(hbc.rank(p))]
                    f = [1 if t == y else 0 for t in range(hab.rank(q))]
                    cols.append(cat.compose(a, b, c, g, p, f, q))
        if hac.rank(d) and cols:
            comp[d] = IntMatrix.from_columns(cols, hac.rank(d))
    return GradedMap(src, hac, 0, comp)


def assemble_cube(x: ChainComplex, k: int, deg: int, faces: Sequence[Sequence[int]],
                  top: Sequence[int]) -> List[int]:
    """Element of ``P^k X`` with the given faces and top-label component."""
    pk = path_power(x, k)
    if k == 0:
        return list(top)
    pk1 = path_power(x, k - 1)
    parts = {}
    full = pk.top()
    for lab, s, e in pk.layout.get(deg, []):
        if lab == full:
            parts[lab] = list(top)
            continue
        t = min(set(range(k)) - set(lab))
        parts[lab] = pk1.component(faces[t], deg, face_of_label(lab, t))
    return pk.assemble(deg, parts)


# ---------------------------------------------------------------- data

@dataclass
class HigherViolation:
    k: int
    i: int
    t: Optional[int]  # None: cycle condition; otherwise the failing face
    message: str

    def as_tuple(self):
        return (self.k, self.i, self.t)


class HigherComplexData:
    """Objects, degrees and nullhomotopy cubes of a higher complex."""

    def __init__(self, order: int, objects: Sequence, degrees: Sequence[int],
                 maps: Dict[Tuple[int, int], Sequence[int]], category=COMPLEXES):
        self.order = order
        self.objects = list(objects)
        self.length = len(self.objects) - 1
        self.degrees = list(degrees)
        if len(self.degrees) != self.length:
            raise ValueError(f"need {self.length} degrees, got {len(self.degrees)}")
        if self.length < order + 1:
            raise ValueError("a higher complex of order n needs at least n+2 objects")
        self.category = category
        self.maps: Dict[Tuple[int, int], List[int]] = {}
        for (k, i), v in maps.items():
            if not (0 <= k <= order and k < i <= self.length):
                raise ValueError(f"map index ({k},{i}) out of range")
            self.maps[(int(k), int(i))] = [int(x) for x in v]

    def degree(self, k: int, i: int) -> int:
        return sum(self.degrees[t - 1] for t in range(i - k, i + 1))

    def hom(self, k: int, i: int) -> ChainComplex:
        return self.category.hom(self.objects[i], self.objects[i - k - 1])

    def carrier(self, k: int, i: int) -> ChainComplex:
        return path_power(self.hom(k, i), k).carrier

    def get(self, k: int, i: int) -> List[int]:
        v = self.maps.get((k, i))
        if v is None:
            return [0] * self.carrier(k, i).rank(self.degree(k, i))
        return v

    def indices(self):
        for k in range(self.order + 1):
            for i in range(k + 1, self.length + 1):
                yield k, i

    def face_composite(self, k: int, i: int, t: int) -> List[int]:
        """The prescribed value of the t-th face of maps[(k, i)]."""
        a, b, c = self.objects[i], self.objects[i - t - 1], self.objects[i - k - 1]
        return compose_paths(self.category, a, b, c, k - t - 1, t,
                             self.get(k - t - 1, i - t - 1), self.degree(k - t - 1, i - t - 1),
                             self.get(t, i), self.degree(t, i))

    def with_maps(self, order: int, extra: Dict[Tuple[int, int], Sequence[int]]) -> "HigherComplexData":
        maps = {key: v for key, v in self.maps.items() if key[0] <= order}
        maps.update(extra)
        return HigherComplexData(order, self.objects, self.degrees, maps, self.category)

    def truncate(self, order: int) -> "HigherComplexData":
        return self.with_maps(order, {})

    def window(self, start: int, length: int) -> "HigherComplexData":
        """The sub-complex on objects a_start .. a_{start+length}."""
        if start < 0 or start + length > self.length:
            raise ValueError("window outside the complex")
        order = min(self.order, length - 1)
        maps = {}
        for (k, i), v in self.maps.items():
            if k <= order and i - k - 1 >= start and i <= start + length:
                maps[(k, i - start)] = v
        return HigherComplexData(order, self.objects[start:start + length + 1],
                                 self.degrees[start:start + length], maps, self.category)


def validate_higher(d: HigherComplexData) -> Optional[HigherViolation]:
    """First violated (k, i, t); t is None when the cycle condition fails."""
    for k, i in d.indices():
        x = d.hom(k, i)
        deg = d.degree(k, i)
        pk = path_power(x, k).carrier
        v = d.get(k, i)
        if len(v) != pk.rank(deg):
            return HigherViolation(k, i, None, f"expected {pk.rank(deg)} coordinates, got {len(v)}")
        for t in range(k):
            face = face_map(x, k, t).component(deg) @ v
            if face != d.face_composite(k, i, t):
                return HigherViolation(k, i, t, f"face {t} of map ({k},{i}) differs from the composite")
        if any(pk.diff(deg) @ v):
            return HigherViolation(k, i, None, f"map ({k},{i}) is not a cycle")
    return None


class CoherenceError(ValueError):
    def __init__(self, violation: HigherViolation):
        super().__init__(violation.message)
        self.violation = violation


# ------------------------------------------------------------ bracket value

@dataclass
class BracketValue:
    data: HigherComplexData
    n: int
    degree: int
    target: ChainComplex   # Hom(a_{n+1}, a_0)
    components: List[List[int]]
    element: List[int]     # coordinates in the matching object

    @property
    def matching(self):
        return matching_object(self.target, self.n - 1)


@dataclass
class BracketClass:
    group: FgAbGroup
    element: Tuple[int, ...]
    cycle: List[int]
    degree: int

    def is_zero(self) -> bool:
        return not any(self.element)


def _value_components(d: HigherComplexData, n: int) -> List[List[int]]:
    cat, objs = d.category, d.objects
    out = []
    for u in range(n):
        a, b, c = objs[n + 1], objs[n - u], objs[0]
        out.append(compose_paths(cat, a, b, c, n - 1 - u, u,
                                 d.get(n - 1 - u, n - u), d.degree(n - 1 - u, n - u),
                                 d.get(u, n + 1), d.degree(u, n + 1)))
    return out


def bracket_value(d: HigherComplexData, check: bool = True) -> BracketValue:
    """Value of the bracket of order ``n = order + 1`` on a complex of length n+1."""
    n = d.order + 1
    if d.length != n + 1:
        raise ValueError(f"bracket values need exactly {n + 2} objects, got {d.length + 1}")
    if check:
        bad = validate_higher(d)
        if bad is not None:
            raise CoherenceError(bad)
    comps = _value_components(d, n)
    target = d.category.hom(d.objects[n + 1], d.objects[0])
    deg = sum(d.degrees)
    element = matching_object(target, n - 1).encode(comps, deg)
    return BracketValue(d, n, deg, target, comps, element)


def _classify(target: ChainComplex, n: int, deg: int, element: Sequence[int]) -> BracketClass:
    red = loop_reduce(target, n - 1).component(deg) @ list(element)
    h = homology(target, deg + n - 1)
    return BracketClass(h.group, h.classify(red), red, deg + n - 1)


def bracket_class(v: BracketValue) -> BracketClass:
    """Homology class of the loop-reduced value in H_{deg+n-1} Hom(a_{n+1}, a_0)."""
    return _classify(v.target, v.n, v.degree, v.element)


def vanishes(d: HigherComplexData) -> bool:
    """True when the value lifts to a cycle along the comparison map."""
    v = bracket_value(d)
    return lift_along_sigma(v.target, v.n - 1, v.element, v.degree) is not None


# ------------------------------------------------------- defining systems

def _layer_system(d: HigherComplexData, k: int, i: int):
    """Target tuple, matching object data and solve result for maps[(k, i)]."""
    x = d.hom(k, i)
    deg = d.degree(k, i)
    faces = [d.face_composite(k, i, t) for t in range(k)]
    mo = matching_object(x, k - 1)
    v = mo.encode(faces, deg)
    return x, deg, v


def _solve_layer(d: HigherComplexData, k: int, i: int):
    """Particular solution and kernel basis (cycles with zero faces)."""
    from .pathcx import sigma
    x, deg, v = _layer_system(d, k, i)
    src = path_power(x, k).carrier
    r = src.rank(deg)
    if r == 0:
        return ([], []) if not any(v) else None
    sg = sigma(x, k - 1).component(deg)
    dm = src.diff(deg)
    a = IntMatrix.vstack([sg, dm]) if dm.rows else sg
    if a.rows == 0:
        return [0] * r, [[1 if q == p else 0 for q in range(r)] for p in range(r)]
    return solve_linear(a, list(v) + [0] * dm.rows)


def extend_to_order(d: HigherComplexData) -> Optional[HigherComplexData]:
    """Add the next layer of cubes, or None when some layer is obstructed."""
    bad = validate_higher(d)
    if bad is not None:
        raise CoherenceError(bad)
    k = d.order + 1
    if k >= d.length:
        raise ValueError("no room for another layer in this complex")
    extra = {}
    cur = d.with_maps(k, {})
    for i in range(k + 1, d.length + 1):
        sol = _solve_layer(cur, k, i)
        if sol is None:
            return None
        extra[(k, i)] = sol[0]
    return d.with_maps(k, extra)


@dataclass
class BracketSet:
    """All bracket classes over all defining systems.

    When ``subgroup`` is set the set is the coset ``representative +
    subgroup``; otherwise ``values`` lists the classes found.  ``exact`` is
    False when the enumeration was cut off by a search bound.
    """

    ambient: FgAbGroup
    representative: Optional[Tuple[int, ...]]
    subgroup: Optional[Subgroup]
    values: List[Tuple[int, ...]] = field(default_factory=list)
    exact: bool = True
    obstruction: Optional[Tuple[int, int]] = None

    @property
    def empty(self) -> bool:
        return self.representative is None and not self.values

    def contains(self, e: Sequence[int]) -> bool:
        e = self.ambient.reduce(e)
        if self.subgroup is not None and self.representative is not None:
            diff = [x - y for x, y in zip(e, self.representative)]
            return self.subgroup.contains(diff)
        return tuple(e) in {self.ambient.reduce(v) for v in self.values}

    def vanishes(self) -> bool:
        return not self.empty and self.contains(self.ambient.zero())

    def elements(self):
        if self.subgroup is None:
            return sorted({self.ambient.reduce(v) for v in self.values})
        if not self.ambient.is_finite():
            raise ValueError("infinite bracket set")
        return sorted(self.ambient.reduce([r + s for r, s in zip(self.representative, h)])
                      for h in self.ambient.elements() if self.subgroup.contains(h))


def bracket_set(d0: HigherComplexData, search_bound: int = 1,
                max_systems: int = 4096) -> BracketSet:
    """Classes of the bracket over every defining system extending ``d0``.

    Brackets of order 1 and 2 are computed exactly as an affine image; for
    higher orders the kernel coefficients range over [-bound, bound] and the
    result is flagged inexact.
    """
    bad = validate_higher(d0)
    if bad is not None:
        raise CoherenceError(bad)
    n = d0.length - 1
    base = d0.truncate(0)
    target = d0.category.hom(d0.objects[-1], d0.objects[0])
    deg = sum(d0.degrees)
    group = homology(target, deg + n - 1).group
    if n == 1:
        c = bracket_class(bracket_value(base))
        return BracketSet(group, c.element, Subgroup(group, []))
    if n == 2:
        sols = {}
        for i in (2, 3):
            s = _solve_layer(base, 1, i)
            if s is None:
                return BracketSet(group, None, None, obstruction=(1, i))
            sols[i] = s
        full = base.with_maps(1, {(1, 2): sols[2][0], (1, 3): sols[3][0]})
        rep = bracket_class(bracket_value(full, check=False)).element
        gens = []
        for i in (2, 3):
            for z in sols[i][1]:
                var = base.with_maps(1, {(1, i): z})
                comps = _value_components(var, 2)
                el = matching_object(target, 1).encode(comps, deg)
                gens.append(_classify(target, 2, deg, el).element)
        return BracketSet(group, rep, Subgroup(group, gens))
    # bounded search for higher orders
    found = set()
    count = [0]
    exact = [True]
    coeffs = range(-search_bound, search_bound + 1)

    def grow(cur: HigherComplexData, k: int):
        if count[0] >= max_systems:
            exact[0] = False
            return
        if k == n:
            count[0] += 1
            found.add(bracket_class(bracket_value(cur, check=False)).element)
            return
        layer_opts = []
        probe = cur.with_maps(k, {})
        for i in range(k + 1, cur.length + 1):
            s = _solve_layer(probe, k, i)
            if s is None:
                return
            layer_opts.append((i, s))
        # choices inside a layer are independent of each other
        per_i = []
        for i, (p, kern) in layer_opts:
            opts = []
            for c in itertools.product(coeffs, repeat=len(kern)):
                opts.append([p[q] + sum(ci * kv[q] for ci, kv in zip(c, kern)) for q in range(len(p))])
                if len(opts) > max_systems:
                    break
            per_i.append((i, opts))
        for combo in itertools.product(*[opts for _, opts in per_i]):
            grow(cur.with_maps(k, {(k, i): w for (i, _), w in zip(per_i, combo)}), k + 1)
            if count[0] >= max_systems:
                exact[0] = False
                return

    grow(base, 1)
    if not found:
        return BracketSet(group, None, None, exact=False)
    return BracketSet(group, None, None, values=sorted(found), exact=False)
