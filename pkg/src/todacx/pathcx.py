"""Iterated path complexes and the structure maps between them.

An element of ``P^n A`` in degree j is a family ``(a_S)`` indexed by subsets
S of {0, ..., n-1}, with ``a_S`` in ``A_{j+|S|}``.  Subsets are ordered by
size and then lexicographically.  Position 0 is the outermost path
coordinate, so the face ``d_t`` forgets every component whose label
contains t.

The differential sends ``a_S`` to ``d a_S`` on the same label and, for each
t not in S, to ``(-1)^(j+1+#{s in S : s < t}) a_S`` on the label S ∪ {t}.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .chaincx import ChainComplex, GradedMap, _blocks, tensor
from .intlin import IntMatrix, smith_normal_form, solve_linear

Label = Tuple[int, ...]


def face_labels(n: int) -> List[Label]:
    """All subsets of {0..n-1}, by size then lexicographically."""
    return [c for k in range(n + 1) for c in combinations(range(n), k)]


def label_index(n: int, subset: Sequence[int]) -> Tuple[int, int]:
    """(k, i): size and position among the k-subsets."""
    s = tuple(sorted(subset))
    k = len(s)
    return k, list(combinations(range(n), k)).index(s)


def face_of_label(label: Label, t: int) -> Optional[Label]:
    """Label seen from the t-th face, or None when the face forgets it."""
    if t in label:
        return None
    return tuple(s - (s > t) for s in label)


class PathPower:
    """``P^n`` of a complex with its label layout."""

    def __init__(self, base: ChainComplex, n: int):
        if n < 0:
            raise ValueError("n must be non-negative")
        self.base = base
        self.n = n
        self.labels = face_labels(n)
        self._pos = {lab: i for i, lab in enumerate(self.labels)}
        lo, hi = base.lo - n, base.hi
        layout = {}
        for j in range(lo, hi + 1):
            layout[j] = _blocks([(lab, base.rank(j + len(lab))) for lab in self.labels])
        self.layout = layout
        ranks = {j: (lay[-1][2] if lay else 0) for j, lay in layout.items()}
        diffs = {}
        for j in range(lo + 1, hi + 1):
            data = [[0] * ranks[j] for _ in range(ranks.get(j - 1, 0))]
            src = {lab: (s, e) for lab, s, e in layout[j]}
            tgt = {lab: (s, e) for lab, s, e in layout[j - 1]}
            for lab in self.labels:
                c0, c1 = src[lab]
                if c0 == c1:
                    continue
                d = base.diff(j + len(lab))
                r0 = tgt[lab][0]
                for p, row in enumerate(d.tolist()):
                    for q, x in enumerate(row):
                        if x:
                            data[r0 + p][c0 + q] = x
                for t in range(n):
                    if t in lab:
                        continue
                    up = tuple(sorted(lab + (t,)))
                    sign = -1 if (j + 1 + sum(1 for s in lab if s < t)) % 2 else 1
                    r0 = tgt[up][0]
                    for q in range(c1 - c0):
                        data[r0 + q][c0 + q] += sign
            diffs[j] = IntMatrix(ranks.get(j - 1, 0), ranks[j], data)
        self.carrier = ChainComplex(ranks, diffs, summands=layout)

    def offset(self, j: int, label: Sequence[int]) -> Tuple[int, int]:
        lab = tuple(sorted(label))
        for key, s, e in self.layout.get(j, []):
            if key == lab:
                return s, e
        raise KeyError(label)

    def component(self, vec: Sequence[int], j: int, label: Sequence[int]) -> List[int]:
        s, e = self.offset(j, label)
        return list(vec[s:e])

    def assemble(self, j: int, parts: Dict[Label, Sequence[int]]) -> List[int]:
        out = [0] * self.carrier.rank(j)
        for lab, v in parts.items():
            s, e = self.offset(j, lab)
            if len(v) != e - s:
                raise ValueError(f"component for {lab} has length {len(v)}, expected {e - s}")
            out[s:e] = list(v)
        return out

    def top(self) -> Label:
        return tuple(range(self.n))


def path_power(a: ChainComplex, n: int) -> PathPower:
    return _path_power(a, n)


@lru_cache(maxsize=1024)
def _path_power(a, n):
    return PathPower(a, n)


def rank_formula(a: ChainComplex, n: int, j: int) -> int:
    return sum(comb(n, k) * a.rank(j + k) for k in range(n + 1))


def path_power_iterated(a: ChainComplex, n: int) -> ChainComplex:
    """``P(P(...P(A)))`` built one layer at a time (for cross-checking)."""
    c = a
    for _ in range(n):
        c = path_power(c, 1).carrier
    return c


def iterated_to_direct(a: ChainComplex, n: int) -> GradedMap:
    """Basis identification of the iterated construction with the direct one."""
    it = path_power_iterated(a, n)
    direct = path_power(a, n)

    def walk(level, j, prefix):
        # yields (label, start offset) for the iterated basis of P^level in degree j
        if level == 0:
            return [(tuple(prefix), 0, a.rank(j))]
        inner = path_power_iterated(a, level - 1)
        out = []
        for outer, shift, base_off in ((False, 0, 0), (True, 1, inner.rank(j))):
            depth = n - level
            lab = prefix + ([depth] if outer else [])
            for l2, s, ln in walk(level - 1, j + shift, lab):
                out.append((l2, base_off + s, ln))
        return out

    comp = {}
    for j in it.degrees():
        data = [[0] * it.rank(j) for _ in range(direct.carrier.rank(j))]
        for lab, s, ln in walk(n, j, []):
            d0 = direct.offset(j, lab)[0]
            for q in range(ln):
                data[d0 + q][s + q] = 1
        comp[j] = IntMatrix(direct.carrier.rank(j), it.rank(j), data)
    return GradedMap(it, direct.carrier, 0, comp)


def face_map(a: ChainComplex, n: int, t: int) -> GradedMap:
    """``d_t: P^n A -> P^{n-1} A``."""
    if not 0 <= t < n:
        raise ValueError(f"face index {t} out of range for n={n}")
    return _face_map(a, n, t)


@lru_cache(maxsize=2048)
def _face_map(a, n, t):
    src, tgt = path_power(a, n), path_power(a, n - 1)
    comp = {}
    for j in src.carrier.degrees():
        data = [[0] * src.carrier.rank(j) for _ in range(tgt.carrier.rank(j))]
        for lab, s, e in src.layout[j]:
            f = face_of_label(lab, t)
            if f is None or s == e:
                continue
            r0 = tgt.offset(j, f)[0]
            for q in range(e - s):
                data[r0 + q][s + q] = 1
        comp[j] = IntMatrix(tgt.carrier.rank(j), src.carrier.rank(j), data)
    return GradedMap(src.carrier, tgt.carrier, 0, comp)


def rho(a: ChainComplex) -> GradedMap:
    return face_map(a, 1, 0)


def path_map(f: GradedMap, n: int) -> GradedMap:
    """``P^n f``, acting on each label separately (no signs for any degree)."""
    src, tgt = path_power(f.source, n), path_power(f.target, n)
    k = f.degree
    comp = {}
    for j in src.carrier.degrees():
        data = [[0] * src.carrier.rank(j) for _ in range(tgt.carrier.rank(j + k))]
        if not data:
            continue
        for lab, s, e in src.layout[j]:
            if s == e:
                continue
            m = f.component(j + len(lab))
            try:
                r0 = tgt.offset(j + k, lab)[0]
            except KeyError:
                continue
            for p, row in enumerate(m.tolist()):
                for q, x in enumerate(row):
                    if x:
                        data[r0 + p][s + q] = x
        comp[j] = IntMatrix(len(data), src.carrier.rank(j), data)
    return GradedMap(src.carrier, tgt.carrier, k, comp)


def nest_iso(z: ChainComplex, i: int, j: int) -> GradedMap:
    """Identify ``P^i(P^j Z)`` with ``P^{i+j} Z``; outer coordinates come first."""
    inner = path_power(z, j)
    outer = path_power(inner.carrier, i)
    direct = path_power(z, i + j)
    comp = {}
    for d in outer.carrier.degrees():
        data = [[0] * outer.carrier.rank(d) for _ in range(direct.carrier.rank(d))]
        for s_lab, s0, s1 in outer.layout[d]:
            if s0 == s1:
                continue
            idg = d + len(s_lab)
            for t_lab, t0, t1 in inner.layout[idg]:
                lab = s_lab + tuple(t + i for t in t_lab)
                r0 = direct.offset(d, lab)[0]
                for q in range(t1 - t0):
                    data[r0 + q][s0 + t0 + q] = 1
        comp[d] = IntMatrix(direct.carrier.rank(d), outer.carrier.rank(d), data)
    return GradedMap(outer.carrier, direct.carrier, 0, comp)


# ------------------------------------------------------------------ theta

def theta(i: int, j: int, x: ChainComplex, y: ChainComplex) -> GradedMap:
    """``P^i X ⊗ P^j Y -> P^{i+j}(X ⊗ Y)``.

    The pair (u_S, v_T) goes to the label S ∪ (T + i) with sign
    ``(-1)^(|S| * deg v)``; X's coordinates come first.
    """
    return _theta(i, j, x, y)


@lru_cache(maxsize=512)
def _theta(i, j, x, y):
    px, py = path_power(x, i), path_power(y, j)
    src = tensor(px.carrier, py.carrier)
    xy = tensor(x, y)
    tgt = path_power(xy, i + j)
    comp = {}
    for d in src.degrees():
        rows = tgt.carrier.rank(d)
        data = [[0] * src.rank(d) for _ in range(rows)]
        for (a, b), s0, _ in src.summands.get(d, []):
            rb = py.carrier.rank(b)
            for s_lab, u0, u1 in px.layout[a]:
                if u0 == u1:
                    continue
                for t_lab, v0, v1 in py.layout[b]:
                    if v0 == v1:
                        continue
                    lab = s_lab + tuple(t + i for t in t_lab)
                    sign = -1 if (len(s_lab) * b) % 2 else 1
                    p_deg, q_deg = a + len(s_lab), b + len(t_lab)
                    base = tgt.offset(d, lab)[0]
                    sub = [k for k, s, e in xy.summands[p_deg + q_deg] if k == (p_deg, q_deg)]
                    sub_off = dict((k, s) for k, s, e in xy.summands[p_deg + q_deg])[sub[0]]
                    rq = y.rank(q_deg)
                    for p in range(u1 - u0):
                        for q in range(v1 - v0):
                            col = s0 + (u0 + p) * rb + (v0 + q)
                            row = base + sub_off + p * rq + q
                            data[row][col] = sign
        comp[d] = IntMatrix(rows, src.rank(d), data)
    return GradedMap(src, tgt.carrier, 0, comp)


def theta_left(x: ChainComplex, y: ChainComplex) -> GradedMap:
    return theta(1, 0, x, y)


def theta_right(x: ChainComplex, y: ChainComplex) -> GradedMap:
    return theta(0, 1, x, y)


def tensor_maps(f: GradedMap, g: GradedMap) -> GradedMap:
    """``f ⊗ g`` with the Koszul sign ``(f⊗g)(u⊗v) = (-1)^(deg g * deg u) f u ⊗ g v``."""
    src, tgt = tensor(f.source, g.source), tensor(f.target, g.target)
    comp = {}
    for d in src.degrees():
        k = d + f.degree + g.degree
        data = [[0] * src.rank(d) for _ in range(tgt.rank(k))]
        tpos = {key: s for key, s, _ in (tgt.summands.get(k) or [])}
        for (a, b), s0, _ in src.summands.get(d, []):
            key = (a + f.degree, b + g.degree)
            if key not in tpos:
                continue
            fm, gm = f.component(a), g.component(b)
            sign = -1 if (g.degree * a) % 2 else 1
            r0 = tpos[key]
            for p1, frow in enumerate(fm.tolist()):
                for q1, grow in enumerate(gm.tolist()):
                    r = r0 + p1 * gm.rows + q1
                    for p, fx in enumerate(frow):
                        if not fx:
                            continue
                        for q, gx in enumerate(grow):
                            if gx:
                                data[r][s0 + p * gm.cols + q] += sign * fx * gx
        comp[d] = IntMatrix(tgt.rank(k), src.rank(d), data)
    return GradedMap(src, tgt, f.degree + g.degree, comp)


def transpose_square(z: ChainComplex) -> GradedMap:
    """Swap the two coordinates of ``P^2 Z``: (x, a, a', y) -> (x, a', a, -y)."""
    p2 = path_power(z, 2)
    comp = {}
    for j in p2.carrier.degrees():
        r = p2.carrier.rank(j)
        data = [[0] * r for _ in range(r)]
        for lab, s, e in p2.layout[j]:
            img = tuple(sorted({0: 1, 1: 0}[t] for t in lab))
            sign = -1 if len(lab) == 2 else 1
            r0 = p2.offset(j, img)[0]
            for q in range(e - s):
                data[r0 + q][s + q] = sign
        comp[j] = IntMatrix(r, r, data)
    return GradedMap(p2.carrier, p2.carrier, 0, comp)


# -------------------------------------------------------- matching object

class MatchingObject:
    """Limit of the faces of ``P^n X``: compatible tuples ``(w_0, ..., w_n)``.

    Stored as the saturated kernel lattice of the difference map, one basis
    per degree; ``encode`` turns an ambient tuple into carrier coordinates.
    """

    def __init__(self, base: ChainComplex, n: int):
        self.base = base
        self.n = n
        if n == 0:
            self.path = None
            self.carrier = base
            self._k = {j: IntMatrix.identity(base.rank(j)) for j in base.degrees()}
            self._l = dict(self._k)
            self.ambient_rank = {j: base.rank(j) for j in base.degrees()}
            return
        pn = path_power(base, n)
        self.path = pn
        diff_pairs = [(s, t) for t in range(n + 1) for s in range(t)]
        faces = [face_map(base, n, t) for t in range(n)]
        self._k, self._l, ranks = {}, {}, {}
        self.ambient_rank = {}
        for j in pn.carrier.degrees():
            r = pn.carrier.rank(j)
            r1 = path_power(base, n - 1).carrier.rank(j)
            self.ambient_rank[j] = (n + 1) * r
            rows = []
            for s, t in diff_pairs:
                blk = [[0] * ((n + 1) * r) for _ in range(r1)]
                fs, ft = faces[s].component(j), faces[t - 1].component(j)
                for p in range(r1):
                    for q in range(r):
                        blk[p][t * r + q] += fs[p, q]
                        blk[p][s * r + q] -= ft[p, q]
                rows.extend(blk)
            amb = (n + 1) * r
            m = IntMatrix(len(rows), amb, rows)
            sn = smith_normal_form(m)
            kb = IntMatrix.from_columns([sn.v.col(c) for c in range(sn.rank, amb)], amb)
            li = IntMatrix(amb - sn.rank, amb, [sn.v_inv.row(c) for c in range(sn.rank, amb)])
            self._k[j], self._l[j] = kb, li
            ranks[j] = amb - sn.rank
        diffs = {}
        for j in pn.carrier.degrees():
            if j - 1 not in self._k:
                continue
            d = pn.carrier.diff(j)
            blockd = IntMatrix.vstack([IntMatrix.hstack(
                [d if c == t else IntMatrix.zeros(d.rows, d.cols) for c in range(n + 1)])
                for t in range(n + 1)])
            diffs[j] = self._l[j - 1] @ blockd @ self._k[j]
        self.carrier = ChainComplex(ranks, diffs)

    def basis(self, j: int) -> IntMatrix:
        return self._k.get(j, IntMatrix.zeros(0, 0))

    def encode(self, tup: Sequence[Sequence[int]], j: int) -> List[int]:
        """Carrier coordinates of a compatible tuple; raises when incompatible."""
        flat = [x for w in tup for x in w]
        if j not in self._k:
            if any(flat):
                raise ValueError("tuple outside the support")
            return []
        v = self._l[j] @ flat
        if self._k[j] @ v != flat:
            raise ValueError("tuple is not compatible under faces")
        return v

    def decode(self, v: Sequence[int], j: int) -> List[List[int]]:
        if self.n == 0:
            return [list(v)]
        flat = self._k[j] @ list(v) if j in self._k else []
        r = self.path.carrier.rank(j)
        return [flat[t * r:(t + 1) * r] for t in range(self.n + 1)]

    def projection(self, t: int) -> GradedMap:
        if self.n == 0:
            return GradedMap.identity(self.base)
        comp = {}
        for j, kb in self._k.items():
            r = self.path.carrier.rank(j)
            comp[j] = kb.submatrix(t * r, (t + 1) * r, 0, kb.cols)
        return GradedMap(self.carrier, self.path.carrier, 0, comp)

    def is_compatible(self, tup: Sequence[Sequence[int]], j: int) -> bool:
        try:
            self.encode(tup, j)
        except ValueError:
            return False
        return True


def matching_object(x: ChainComplex, n: int) -> MatchingObject:
    return _matching(x, n)


@lru_cache(maxsize=256)
def _matching(x, n):
    return MatchingObject(x, n)


def sigma(x: ChainComplex, n: int) -> GradedMap:
    """``P^{n+1} X -> Ω̃^n X``, the tuple of all faces."""
    mo = matching_object(x, n)
    src = path_power(x, n + 1)
    faces = [face_map(x, n + 1, t) for t in range(n + 1)]
    comp = {}
    for j in src.carrier.degrees():
        if mo.carrier.rank(j) == 0:
            continue
        stacked = IntMatrix.vstack([f.component(j) for f in faces])
        if n == 0:
            comp[j] = stacked
        else:
            comp[j] = mo._l[j] @ stacked
    return GradedMap(src.carrier, mo.carrier, 0, comp)


def loop_complex(x: ChainComplex, n: int) -> ChainComplex:
    """``Ω^n X``: degree j holds ``X_{j+n}``; the differential is unchanged."""
    return ChainComplex({j - n: r for j, r in x.ranks.items()},
                        {j - n: m for j, m in x.diffs.items()})


def loop_reduce(x: ChainComplex, n: int) -> GradedMap:
    """``Ω̃^n X -> Ω^n X``: alternating sum of top components, ``Σ (-1)^t top(w_t)``."""
    mo = matching_object(x, n)
    target = loop_complex(x, n)
    if n == 0:
        return GradedMap(mo.carrier, target, 0,
                         {j: IntMatrix.identity(x.rank(j)) for j in x.degrees()})
    pn = mo.path
    top = pn.top()
    comp = {}
    for j in mo.carrier.degrees():
        r = pn.carrier.rank(j)
        s, e = pn.offset(j, top)
        sel = [[0] * ((n + 1) * r) for _ in range(e - s)]
        for t in range(n + 1):
            sg = -1 if t % 2 else 1
            for q in range(e - s):
                sel[q][t * r + s + q] = sg
        comp[j] = IntMatrix(e - s, (n + 1) * r, sel) @ mo.basis(j)
    return GradedMap(mo.carrier, target, 0, comp)


def lift_along_sigma(x: ChainComplex, n: int, v: Sequence[int], degree: int) -> Optional[List[int]]:
    """A cycle w of ``P^{n+1} X`` with ``σ̃ w = v``, or None."""
    v = list(v)
    mo = matching_object(x, n)
    src = path_power(x, n + 1).carrier
    if len(v) != mo.carrier.rank(degree):
        raise ValueError(f"element has length {len(v)}, expected {mo.carrier.rank(degree)}")
    r = src.rank(degree)
    if r == 0:
        return [] if not any(v) else None
    sg = sigma(x, n).component(degree)
    d = src.diff(degree)
    a = IntMatrix.vstack([sg, d]) if d.rows else sg
    sol = solve_linear(a, v + [0] * d.rows)
    return None if sol is None else sol[0]
