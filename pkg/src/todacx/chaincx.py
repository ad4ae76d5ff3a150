"""Chain complexes of finitely generated free abelian groups.

Conventions used throughout the package:

* differentials lower degree, ``d_n: A_n -> A_{n-1}``;
* a homogeneous map of degree k is a chain map when ``d f = (-1)^k f d``;
* the function complex has ``(df)_i = d f_i - (-1)^n f_{i-1} d`` on degree n;
* suspension shifts up by one and negates the differential.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .intlin import (FgAbGroup, IntMatrix, MorphismGroup, Quotient, cokernel_group,
                     ext_module, hom_module, smith_normal_form)


class ChainComplex:
    """Bounded complex: ``ranks[n]`` for lo <= n <= hi and matrices ``diff(n)``.

    Shapes are checked on construction; ``d d = 0`` is left to
    :func:`validate_complex` so that broken inputs can be reported.
    """

    __slots__ = ("lo", "hi", "_ranks", "_diffs", "summands", "_hash")

    def __init__(self, ranks: Mapping[int, int], diffs: Optional[Mapping[int, IntMatrix]] = None,
                 summands=None):
        nz = {int(n): int(r) for n, r in ranks.items() if r}
        if any(r < 0 for r in nz.values()):
            raise ValueError("negative rank")
        if nz:
            self.lo, self.hi = min(nz), max(nz)
        else:
            self.lo, self.hi = 0, -1
        self._ranks = tuple(nz.get(n, 0) for n in range(self.lo, self.hi + 1))
        ds = {}
        for n, m in (diffs or {}).items():
            n = int(n)
            if not isinstance(m, IntMatrix):
                m = IntMatrix.from_rows(m, self.rank(n))
            if m.shape != (self.rank(n - 1), self.rank(n)):
                raise ValueError(f"d_{n} has shape {m.shape}, expected "
                                 f"{(self.rank(n - 1), self.rank(n))}")
            if not m.is_zero():
                ds[n] = m
        self._diffs = ds
        self.summands = summands
        self._hash = None

    @classmethod
    def zero(cls) -> "ChainComplex":
        return cls({})

    def rank(self, n: int) -> int:
        if self.lo <= n <= self.hi:
            return self._ranks[n - self.lo]
        return 0

    @property
    def ranks(self) -> Dict[int, int]:
        return {n: self.rank(n) for n in range(self.lo, self.hi + 1)}

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def diff(self, n: int) -> IntMatrix:
        m = self._diffs.get(n)
        if m is None:
            return IntMatrix.zeros(self.rank(n - 1), self.rank(n))
        return m

    @property
    def diffs(self) -> Dict[int, IntMatrix]:
        return dict(self._diffs)

    def is_zero(self) -> bool:
        return self.hi < self.lo

    def _key(self):
        return (self.lo, self.hi, self._ranks,
                tuple(sorted((n, m) for n, m in self._diffs.items())))

    def __eq__(self, other):
        return isinstance(other, ChainComplex) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"ChainComplex(ranks={self.ranks}, diffs={ {n: m.tolist() for n, m in self._diffs.items()} })"


@dataclass(frozen=True)
class Violation:
    degree: int
    message: str


def validate_complex(a: ChainComplex) -> Optional[Violation]:
    """None when ``d d = 0``; otherwise the first failing degree (of the outer d)."""
    for n in range(a.lo + 1, a.hi + 1):
        if not (a.diff(n - 1) @ a.diff(n)).is_zero():
            return Violation(n, f"d_{n - 1} d_{n} != 0")
    return None


class GradedMap:
    """Homogeneous map of degree k: ``components[n]: A_n -> B_{n+k}``."""

    __slots__ = ("source", "target", "degree", "_comp", "declared_chain")

    def __init__(self, source: ChainComplex, target: ChainComplex, degree: int,
                 components: Optional[Mapping[int, IntMatrix]] = None, chain: bool = False):
        self.source = source
        self.target = target
        self.degree = degree
        comp = {}
        for n, m in (components or {}).items():
            if not isinstance(m, IntMatrix):
                m = IntMatrix.from_rows(m, source.rank(n))
            shape = (target.rank(n + degree), source.rank(n))
            if m.shape != shape:
                raise ValueError(f"component {n} has shape {m.shape}, expected {shape}")
            if not m.is_zero():
                comp[n] = m
        self._comp = comp
        self.declared_chain = chain
        if chain and not self.is_chain():
            raise ValueError("map declared a chain map does not commute with differentials")

    def component(self, n: int) -> IntMatrix:
        m = self._comp.get(n)
        if m is None:
            return IntMatrix.zeros(self.target.rank(n + self.degree), self.source.rank(n))
        return m

    @property
    def components(self) -> Dict[int, IntMatrix]:
        return dict(self._comp)

    @classmethod
    def identity(cls, a: ChainComplex) -> "GradedMap":
        return cls(a, a, 0, {n: IntMatrix.identity(a.rank(n)) for n in a.degrees()})

    @classmethod
    def zero(cls, a: ChainComplex, b: ChainComplex, degree: int = 0) -> "GradedMap":
        return cls(a, b, degree)

    def boundary(self) -> "GradedMap":
        """The function-complex differential of this map."""
        k = self.degree
        s = -1 if k % 2 else 1
        comp = {}
        for n in range(self.source.lo, self.source.hi + 2):
            m = self.target.diff(n + k) @ self.component(n) - \
                (self.component(n - 1) @ self.source.diff(n)).scale(s)
            if m.shape[0] and m.shape[1]:
                comp[n] = m
        return GradedMap(self.source, self.target, k - 1, comp)

    def is_chain(self) -> bool:
        return self.boundary().is_zero()

    def is_zero(self) -> bool:
        return not self._comp

    def __add__(self, other: "GradedMap"):
        self._check_parallel(other)
        keys = set(self._comp) | set(other._comp)
        return GradedMap(self.source, self.target, self.degree,
                         {n: self.component(n) + other.component(n) for n in keys})

    def __sub__(self, other: "GradedMap"):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c: int) -> "GradedMap":
        return GradedMap(self.source, self.target, self.degree,
                         {n: m.scale(c) for n, m in self._comp.items()})

    def _check_parallel(self, other):
        if (self.source, self.target, self.degree) != (other.source, other.target, other.degree):
            raise ValueError("maps are not parallel")

    def __eq__(self, other):
        return (isinstance(other, GradedMap) and self.degree == other.degree
                and self.source == other.source and self.target == other.target
                and self._comp == other._comp)

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self._comp.items()))))

    def __repr__(self):
        return f"GradedMap(degree={self.degree}, {{{', '.join(f'{n}: {m.tolist()}' for n, m in sorted(self._comp.items()))}}})"


def compose_maps(g: GradedMap, f: GradedMap) -> GradedMap:
    """``g ∘ f`` with ``(g f)_n = g_{n + deg f} f_n``; no sign."""
    if f.target != g.source:
        raise ValueError("target of f differs from source of g")
    comp = {n: g.component(n + f.degree) @ m for n, m in f.components.items()}
    return GradedMap(f.source, g.target, f.degree + g.degree, comp,
                     chain=f.declared_chain and g.declared_chain)


# ------------------------------------------------------------ constructions

def _kron(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    rows = []
    for ra in a.tolist():
        for rb in b.tolist():
            rows.append([x * y for x in ra for y in rb])
    return IntMatrix(a.rows * b.rows, a.cols * b.cols, rows)


def _blocks(entries: Sequence[Tuple[object, int]]):
    out, pos = [], 0
    for key, size in entries:
        out.append((key, pos, pos + size))
        pos += size
    return out


def _assemble(rows_layout, cols_layout, nrows, ncols, blocks: Mapping) -> IntMatrix:
    data = [[0] * ncols for _ in range(nrows)]
    rpos = {k: s for k, s, _ in rows_layout}
    cpos = {k: s for k, s, _ in cols_layout}
    for (rk, ck), m in blocks.items():
        r0, c0 = rpos[rk], cpos[ck]
        for i, row in enumerate(m.tolist()):
            tgt = data[r0 + i]
            for j, x in enumerate(row):
                if x:
                    tgt[c0 + j] += x
    return IntMatrix(nrows, ncols, data)


def unit_complex(degree: int = 0) -> ChainComplex:
    return ChainComplex({degree: 1})


def tensor(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Tensor product; summands of degree n are A_i ⊗ B_{n-i} by ascending i.

    Basis of A_i ⊗ B_j is ordered (p, q) -> p * rank B_j + q.
    """
    return _tensor(a, b)


@lru_cache(maxsize=512)
def _tensor(a, b):
    if a.is_zero() or b.is_zero():
        return ChainComplex({}, summands={})
    lo, hi = a.lo + b.lo, a.hi + b.hi
    layout = {}
    for n in range(lo, hi + 1):
        layout[n] = _blocks([((i, n - i), a.rank(i) * b.rank(n - i))
                             for i in a.degrees() if a.rank(i) * b.rank(n - i)])
    ranks = {n: (lay[-1][2] if lay else 0) for n, lay in layout.items()}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        blocks = {}
        for (i, j), _, _ in layout[n]:
            if (i - 1, j) in {k for k, _, _ in layout[n - 1]}:
                blocks[((i - 1, j), (i, j))] = _kron(a.diff(i), IntMatrix.identity(b.rank(j)))
            if (i, j - 1) in {k for k, _, _ in layout[n - 1]}:
                m = _kron(IntMatrix.identity(a.rank(i)), b.diff(j))
                blocks[((i, j - 1), (i, j))] = m.scale(-1) if i % 2 else m
        diffs[n] = _assemble(layout[n - 1], layout[n], ranks[n - 1], ranks[n], blocks)
    return ChainComplex(ranks, diffs, summands=layout)


def suspension(a: ChainComplex) -> ChainComplex:
    return ChainComplex({n + 1: r for n, r in a.ranks.items()},
                        {n + 1: -m for n, m in a.diffs.items()})


class HomComplex(ChainComplex):
    """Function complex Hom(A, B) with row-major flattened blocks.

    Degree n is the direct sum over i (ascending) of Hom(A_i, B_{i+n}).
    """

    __slots__ = ("source", "target")

    def encode(self, f: GradedMap) -> List[int]:
        if f.source != self.source or f.target != self.target:
            raise ValueError("map does not belong to this function complex")
        out = [0] * self.rank(f.degree)
        for i, s, e in (self.summands.get(f.degree) or []):
            out[s:e] = f.component(i).entries
        for i, m in f.components.items():
            if not m.is_zero() and i not in {k for k, _, _ in self.summands.get(f.degree, [])}:
                raise ValueError("map lies outside the bounded support")
        return out

    def decode(self, vec: Sequence[int], n: int) -> GradedMap:
        vec = list(vec)
        if len(vec) != self.rank(n):
            raise ValueError(f"vector of length {len(vec)} for degree {n} of rank {self.rank(n)}")
        comp = {}
        for i, s, e in (self.summands.get(n) or []):
            r, c = self.target.rank(i + n), self.source.rank(i)
            comp[i] = IntMatrix(r, c, [vec[s + p * c: s + (p + 1) * c] for p in range(r)])
        return GradedMap(self.source, self.target, n, comp)

    def block(self, n: int, i: int) -> Optional[Tuple[int, int]]:
        for k, s, e in (self.summands.get(n) or []):
            if k == i:
                return s, e
        return None


def hom_complex(a: ChainComplex, b: ChainComplex) -> HomComplex:
    return _hom_complex(a, b)


@lru_cache(maxsize=512)
def _hom_complex(a, b):
    if a.is_zero() or b.is_zero():
        h = HomComplex({}, summands={})
        h.source, h.target = a, b
        return h
    lo, hi = b.lo - a.hi, b.hi - a.lo
    layout = {n: _blocks([(i, a.rank(i) * b.rank(i + n)) for i in a.degrees()
                          if a.rank(i) * b.rank(i + n)]) for n in range(lo, hi + 1)}
    ranks = {n: (lay[-1][2] if lay else 0) for n, lay in layout.items()}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        src = {k for k, _, _ in layout[n]}
        tgt = {k for k, _, _ in layout[n - 1]}
        blocks = {}
        for i in tgt:
            ra = a.rank(i)
            if i in src:
                # f_i -> d^B f_i
                blocks[(i, i)] = _kron(b.diff(i + n), IntMatrix.identity(ra))
            if i - 1 in src:
                # f_{i-1} -> -(-1)^n f_{i-1} d^A_i
                m = _kron(IntMatrix.identity(b.rank(i - 1 + n)), a.diff(i).T)
                blocks[(i, i - 1)] = m if n % 2 else -m
        diffs[n] = _assemble(layout[n - 1], layout[n], ranks[n - 1], ranks[n], blocks)
    h = HomComplex(ranks, diffs, summands=layout)
    h.source, h.target = a, b
    return h


def evaluation_matrix(a: ChainComplex, b: ChainComplex, n: int, m: int) -> IntMatrix:
    """Evaluation Hom(A,B)_n ⊗ A_m -> B_{m+n} as a matrix on the tensor summand."""
    h = hom_complex(a, b)
    blk = h.block(n, m)
    ra, rb = a.rank(m), b.rank(m + n)
    cols = []
    hr = h.rank(n)
    for hv in range(hr):
        for q in range(ra):
            col = [0] * rb
            if blk and blk[0] <= hv < blk[1]:
                off = hv - blk[0]
                p, c = divmod(off, ra)
                if c == q:
                    col[p] = 1
            cols.append(col)
    return IntMatrix.from_columns(cols, rb)


# ------------------------------------------------------------------ homology

@dataclass(frozen=True)
class Homology:
    """H_n with maps between cycles and canonical coordinates."""

    degree: int
    group: FgAbGroup
    cycle_basis: IntMatrix  # columns span ker d_n (saturated)
    coords: IntMatrix       # left inverse of cycle_basis on cycles
    quotient: Quotient
    differential: IntMatrix

    def is_cycle(self, v: Sequence[int]) -> bool:
        return not any(self.differential @ list(v))

    def classify(self, v: Sequence[int]) -> Tuple[int, ...]:
        v = list(v)
        if not self.is_cycle(v):
            raise ValueError("vector is not a cycle")
        return self.quotient.classify(self.coords @ v)

    def representative(self, e: Sequence[int]) -> List[int]:
        return self.cycle_basis @ self.quotient.lift_element(e)

    def generators(self) -> List[List[int]]:
        k = self.group.ngens
        return [self.representative([1 if i == j else 0 for i in range(k)]) for j in range(k)]


def homology(a: ChainComplex, n: int) -> Homology:
    return _homology(a, n)


@lru_cache(maxsize=1024)
def _homology(a, n):
    d = a.diff(n)
    r = a.rank(n)
    s = smith_normal_form(d)
    basis = IntMatrix.from_columns([s.v.col(j) for j in range(s.rank, r)], r)
    coords = IntMatrix(r - s.rank, r, [s.v_inv.row(i) for i in range(s.rank, r)])
    bnd = coords @ a.diff(n + 1)
    return Homology(n, cokernel_group(bnd).group, basis, coords, cokernel_group(bnd), d)


def homology_groups(a: ChainComplex) -> Dict[int, FgAbGroup]:
    return {n: homology(a, n).group for n in a.degrees()}


# ----------------------------------------------------------- Moore complexes

@dataclass(frozen=True)
class GradedModule:
    """Non-negatively graded module with finitely many nonzero groups."""

    groups: Tuple[Tuple[int, FgAbGroup], ...] = ()

    def __init__(self, groups: Mapping[int, FgAbGroup] = None):
        items = []
        for n, g in sorted((groups or {}).items()):
            if n < 0:
                raise ValueError("graded modules are non-negatively graded")
            if not isinstance(g, FgAbGroup):
                g = FgAbGroup(g)
            if not g.is_trivial():
                items.append((int(n), g))
        object.__setattr__(self, "groups", tuple(items))

    def __getitem__(self, n: int) -> FgAbGroup:
        return dict(self.groups).get(n, FgAbGroup())

    def degrees(self) -> List[int]:
        return [n for n, _ in self.groups]

    def __str__(self):
        return ", ".join(f"{n}: {g}" for n, g in self.groups) or "0"


def moore(g: FgAbGroup, n: int) -> ChainComplex:
    """Two-term presentation Q_1 -> Q_0 in degrees n+1, n."""
    if n < 0:
        raise ValueError("Moore complexes are defined for n >= 0")
    fin = [(j, f) for j, f in enumerate(g.factors) if f]
    alpha = IntMatrix.from_columns([[f if i == j else 0 for i in range(g.ngens)] for j, f in fin],
                                   g.ngens)
    return ChainComplex({n: g.ngens, n + 1: len(fin)}, {n + 1: alpha})


def presentation(g: FgAbGroup) -> IntMatrix:
    """The relation matrix Q_1 -> Q_0 of the canonical free cover."""
    fin = [(j, f) for j, f in enumerate(g.factors) if f]
    return IntMatrix.from_columns([[f if i == j else 0 for i in range(g.ngens)] for j, f in fin],
                                  g.ngens)


class CHat(ChainComplex):
    """⊕_n Moore(E_n, n); degree d holds Q_1(E_{d-1}) then Q_0(E_d)."""

    __slots__ = ("module",)

    def q0(self, n: int) -> Tuple[int, int]:
        """Slice of Q_0(E_n) inside degree n."""
        g = self.module[n]
        s = len(self.module[n - 1].torsion) if n >= 1 else 0
        return s, s + g.ngens

    def q1(self, n: int) -> Tuple[int, int]:
        """Slice of Q_1(E_n) inside degree n + 1."""
        return 0, len(self.module[n].torsion)


def c_hat(e: GradedModule) -> CHat:
    return _c_hat(e)


@lru_cache(maxsize=256)
def _c_hat(e):
    degs = e.degrees()
    ranks, diffs = {}, {}
    if degs:
        for d in range(min(degs), max(degs) + 2):
            ranks[d] = len(e[d - 1].torsion) + e[d].ngens if d >= 1 else e[d].ngens
        for d in range(min(degs) + 1, max(degs) + 2):
            # Q_1(E_{d-1}) in degree d maps to Q_0(E_{d-1}) in degree d-1
            alpha = presentation(e[d - 1])
            prev_q1 = len(e[d - 2].torsion) if d >= 2 else 0
            rows = ranks.get(d - 1, 0)
            data = [[0] * ranks[d] for _ in range(rows)]
            for i in range(alpha.rows):
                for j in range(alpha.cols):
                    data[prev_q1 + i][j] = alpha[i, j]
            diffs[d] = IntMatrix(rows, ranks[d], data)
    c = CHat(ranks, diffs)
    c.module = e
    return c


# ----------------------------------------------------------- UCT splitting

def _place(mat_rows, mat_cols, blocks):
    data = [[0] * mat_cols for _ in range(mat_rows)]
    for (r0, c0), m in blocks:
        for i, row in enumerate(m.tolist()):
            for j, x in enumerate(row):
                data[r0 + i][c0 + j] += x
    return IntMatrix(mat_rows, mat_cols, data)


def block_map(source: CHat, target: CHat, degree: int, blocks: Mapping[str, Mapping[int, IntMatrix]]) -> GradedMap:
    """Assemble a graded map between Ĉ-complexes from named blocks.

    For degree-0 maps the keys are ``00`` (Q_0(E_n) -> Q_0(F_n)), ``11``
    (Q_1(E_n) -> Q_1(F_n)), ``10`` (Q_1(E_n) -> Q_0(F_{n+1})) and ``01``
    (Q_0(E_n) -> Q_1(F_{n-1})).  For a degree-s map every target index is
    raised by s.  The subscript is always the source module degree.
    """
    s = degree
    comp: Dict[int, List] = {}
    for key, table in blocks.items():
        for n, m in table.items():
            if not isinstance(m, IntMatrix):
                m = IntMatrix.from_rows(m, None)
            n = int(n)
            if key == "00":
                sd, (c0, _), tn = n, source.q0(n), n + s
                r0 = target.q0(tn)[0]
            elif key == "11":
                sd, (c0, _), tn = n + 1, source.q1(n), n + s
                r0 = target.q1(tn)[0]
            elif key == "10":
                sd, (c0, _), tn = n + 1, source.q1(n), n + 1 + s
                r0 = target.q0(tn)[0]
            elif key == "01":
                sd, (c0, _), tn = n, source.q0(n), n - 1 + s
                r0 = target.q1(tn)[0]
            else:
                raise ValueError(f"unknown block {key!r}")
            comp.setdefault(sd, []).append(((r0, c0), m))
    out = {}
    for sd, bl in comp.items():
        out[sd] = _place(target.rank(sd + s), source.rank(sd), bl)
    return GradedMap(source, target, s, out)


def read_blocks(f: GradedMap, source: Optional[CHat] = None,
                target: Optional[CHat] = None) -> Dict[str, Dict[int, IntMatrix]]:
    """Inverse of :func:`block_map`: nonzero named blocks of a map of Ĉ-complexes."""
    src = source if source is not None else f.source
    tgt = target if target is not None else f.target
    s = f.degree
    out: Dict[str, Dict[int, IntMatrix]] = {}
    for n in src.module.degrees():
        specs = {"00": (n, src.q0(n), n + s, tgt.q0), "11": (n + 1, src.q1(n), n + s, tgt.q1),
                 "10": (n + 1, src.q1(n), n + 1 + s, tgt.q0), "01": (n, src.q0(n), n - 1 + s, tgt.q1)}
        for key, (sd, (c0, c1), tn, rsl) in specs.items():
            if tn < 0 or c1 == c0:
                continue
            r0, r1 = rsl(tn)
            if r1 == r0:
                continue
            m = f.component(sd).submatrix(r0, r1, c0, c1)
            if not m.is_zero():
                out.setdefault(key, {})[n] = m
    return out


class UctSplit:
    """H_s Hom(ĈE, ĈF) ≅ ∏ Hom(E_n, F_{n+s}) × ∏ Ext(E_n, F_{n+s+1})."""

    def __init__(self, e: GradedModule, f: GradedModule, shift: int = 0):
        self.e, self.f, self.shift = e, f, shift
        self.source, self.target = c_hat(e), c_hat(f)
        self.hom = hom_complex(self.source, self.target)
        self.homology = homology(self.hom, shift)
        self.group = self.homology.group
        self.hom_parts: Dict[int, MorphismGroup] = {}
        self.ext_parts: Dict[int, MorphismGroup] = {}
        for n in e.degrees():
            hm = hom_module(e[n], f[n + shift])
            if not hm.group.is_trivial():
                self.hom_parts[n] = hm
            em = ext_module(e[n], f[n + shift + 1])
            if not em.group.is_trivial():
                self.ext_parts[n] = em

    def components(self) -> List[Tuple[str, int, FgAbGroup]]:
        return ([("hom", n, m.group) for n, m in sorted(self.hom_parts.items())]
                + [("ext", n, m.group) for n, m in sorted(self.ext_parts.items())])

    def product_order(self):
        out = 1
        for _, _, g in self.components():
            out *= g.order()
        return out

    def project(self, cycle: Sequence[int]):
        """Component elements (hom dict, ext dict) of a degree-s cycle."""
        f = self.hom.decode(cycle, self.shift)
        blocks = read_blocks(f, self.source, self.target)
        hom, ext = {}, {}
        for n, mg in self.hom_parts.items():
            m = blocks.get("00", {}).get(n, IntMatrix.zeros(*mg.shape))
            hom[n] = mg.encode(m)
        for n, mg in self.ext_parts.items():
            m = blocks.get("10", {}).get(n, IntMatrix.zeros(*mg.shape))
            ext[n] = mg.encode(m)
        return hom, ext

    def project_class(self, e: Sequence[int]):
        return self.project(self.homology.representative(e))

    def realize(self, hom: Mapping[int, Sequence[int]], ext: Mapping[int, Sequence[int]]) -> GradedMap:
        """A chain map of degree s with the given components."""
        s = self.shift
        sign = -1 if s % 2 else 1
        blocks: Dict[str, Dict[int, IntMatrix]] = {"00": {}, "11": {}, "10": {}}
        for n, el in hom.items():
            phi = self.hom_parts[n].decode_hom(el)
            blocks["00"][n] = phi.matrix
            lr = phi.lift_relations()
            if lr.rows and lr.cols:
                blocks["11"][n] = lr.scale(sign)
        for n, el in ext.items():
            blocks["10"][n] = self.ext_parts[n].decode(el)
        return block_map(self.source, self.target, s, blocks)

    def lift(self, hom, ext) -> List[int]:
        return self.hom.encode(self.realize(hom, ext))

    def to_class(self, hom, ext) -> Tuple[int, ...]:
        return self.homology.classify(self.lift(hom, ext))

    def flatten(self, hom, ext) -> Tuple[int, ...]:
        out = []
        for kind, n, _ in self.components():
            out.extend(hom[n] if kind == "hom" else ext[n])
        return tuple(out)


def uct_split(e: GradedModule, f: GradedModule, shift: int = 0) -> UctSplit:
    return UctSplit(e, f, shift)
