"""Exact integer linear algebra.

Dense integer matrices, Smith normal form with unimodular transforms,
Diophantine solving, finitely generated abelian groups in invariant-factor
form, and Hom/Ext groups with explicit representatives.

>>> smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]])).diag
(2, 4)
>>> str(cokernel_group(IntMatrix.from_rows([[4], [0]])).group)
'Z⊕Z/4'
>>> str(hom_group(FgAbGroup([4]), FgAbGroup([2])))
'Z/2'
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from ._kernel import smith_reduce


class IntMatrix:
    """Immutable dense matrix of Python integers."""

    __slots__ = ("rows", "cols", "_r")

    def __init__(self, rows: int, cols: int, data=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix shape")
        self.rows = rows
        self.cols = cols
        if data is None:
            self._r = tuple((0,) * cols for _ in range(rows))
        else:
            r = tuple(tuple(int(x) for x in row) for row in data)
            if len(r) != rows or any(len(row) != cols for row in r):
                raise ValueError("entry count does not match shape")
            self._r = r

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows: Optional[int] = None,
                 cols: Optional[int] = None) -> "IntMatrix":
        k = len(entries)
        rows = k if rows is None else rows
        cols = k if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, x in enumerate(entries):
            data[i][i] = x
        return cls(rows, cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        data = [[col[i] for col in columns] for i in range(rows)]
        return cls(rows, len(columns), data)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> List[int]:
        return [x for row in self._r for x in row]

    def tolist(self) -> List[List[int]]:
        return [list(r) for r in self._r]

    def row(self, i: int) -> Tuple[int, ...]:
        return self._r[i]

    def col(self, j: int) -> Tuple[int, ...]:
        return tuple(r[j] for r in self._r)

    def columns(self) -> List[List[int]]:
        return [list(self.col(j)) for j in range(self.cols)]

    def __getitem__(self, ij):
        i, j = ij
        return self._r[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._r == other._r

    def __hash__(self):
        return hash((self.rows, self.cols, self._r))

    def __repr__(self):
        return f"IntMatrix({self.rows}, {self.cols}, {self.tolist()})"

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._r)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, list(zip(*self._r)) if self.rows else
                         [[] for _ in range(self.cols)])

    def __neg__(self):
        return IntMatrix(self.rows, self.cols, [[-x for x in r] for r in self._r])

    def __add__(self, other: "IntMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return IntMatrix(self.rows, self.cols,
                         [[a + b for a, b in zip(r, s)] for r, s in zip(self._r, other._r)])

    def __sub__(self, other: "IntMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return IntMatrix(self.rows, self.cols,
                         [[a - b for a, b in zip(r, s)] for r, s in zip(self._r, other._r)])

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [[c * x for x in r] for r in self._r])

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = list(zip(*other._r)) if other.rows else [()] * other.cols
            out = []
            for r in self._r:
                nz = [(k, x) for k, x in enumerate(r) if x]
                if not nz:
                    out.append([0] * other.cols)
                    continue
                out.append([sum(x * c[k] for k, x in nz) for c in cols])
            return IntMatrix(self.rows, other.cols, out)
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} does not match {self.cols} columns")
        return [sum(a * b for a, b in zip(r, vec) if a) for r in self._r]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "IntMatrix":
        return IntMatrix(r1 - r0, c1 - c0, [row[c0:c1] for row in self._r[r0:r1]])

    @staticmethod
    def hstack(mats: Sequence["IntMatrix"], rows: Optional[int] = None) -> "IntMatrix":
        if not mats:
            return IntMatrix(rows or 0, 0)
        r = mats[0].rows
        if any(m.rows != r for m in mats):
            raise ValueError("hstack row mismatch")
        return IntMatrix(r, sum(m.cols for m in mats),
                         [sum((m._r[i] for m in mats), ()) for i in range(r)])

    @staticmethod
    def vstack(mats: Sequence["IntMatrix"], cols: Optional[int] = None) -> "IntMatrix":
        if not mats:
            return IntMatrix(0, cols or 0)
        c = mats[0].cols
        if any(m.cols != c for m in mats):
            raise ValueError("vstack column mismatch")
        return IntMatrix(sum(m.rows for m in mats), c, [r for m in mats for r in m._r])

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        # Bareiss fraction-free elimination
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1


# ---------------------------------------------------------------- Smith form

@dataclass(frozen=True)
class SmithDecomposition:
    """``u @ a @ v == diag`` with ``u``, ``v`` unimodular.

    ``diag`` lists min(rows, cols) entries: the positive invariant factors in
    divisibility order, then zeros.
    """

    diag: Tuple[int, ...]
    rank: int
    u: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix

    def diagonal_matrix(self) -> IntMatrix:
        return IntMatrix.diagonal(self.diag, self.u.rows, self.v.rows)


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    d, u, ui, v, vi = smith_reduce(m.tolist(), m.rows, m.cols, True)
    k = min(m.rows, m.cols)
    diag = tuple(d) + (0,) * (k - len(d))
    return SmithDecomposition(diag, len(d), IntMatrix(m.rows, m.rows, u),
                              IntMatrix(m.cols, m.cols, v),
                              IntMatrix(m.rows, m.rows, ui),
                              IntMatrix(m.cols, m.cols, vi))


def invariant_factors(m: IntMatrix) -> Tuple[int, ...]:
    d = smith_reduce(m.tolist(), m.rows, m.cols, False)[0]
    return tuple(d)


def matrix_rank(m: IntMatrix) -> int:
    return len(invariant_factors(m))


def kernel_basis(a: IntMatrix) -> List[List[int]]:
    """A Z-basis of {x : a x = 0} (a saturated sublattice)."""
    s = smith_normal_form(a)
    return [list(s.v.col(j)) for j in range(s.rank, a.cols)]


def solve_linear(a: IntMatrix, b: Sequence[int]) -> Optional[Tuple[List[int], List[List[int]]]]:
    """Integer solution of ``a x = b`` plus a kernel basis, or None."""
    b = list(b)
    if len(b) != a.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {a.rows}")
    s = smith_normal_form(a)
    ub = s.u @ b
    y = [0] * a.cols
    for i, x in enumerate(ub):
        if i < s.rank:
            q, r = divmod(x, s.diag[i])
            if r:
                return None
            y[i] = q
        elif x:
            return None
    x = s.v @ y
    if a @ x != b:
        raise AssertionError("solver produced a non-solution")
    kern = [list(s.v.col(j)) for j in range(s.rank, a.cols)]
    return x, kern


# ------------------------------------------------------------ abelian groups

def _is_canonical(factors: Sequence[int]) -> bool:
    seen_finite = False
    prev = None
    for f in factors:
        if f < 0 or f == 1:
            return False
        if f == 0:
            if seen_finite:
                return False
            continue
        if prev is not None and f % prev:
            return False
        seen_finite = True
        prev = f
    return True


class FgAbGroup:
    """Finitely generated abelian group in invariant-factor form.

    Factors list the free part first (each ``0`` is a copy of Z) followed by
    finite factors d_1 | d_2 | ... with every d_i >= 2.  Elements are tuples
    of canonical coordinates; finite coordinates are reduced mod d_i.
    """

    __slots__ = ("factors",)

    def __init__(self, factors: Iterable[int] = ()):
        f = tuple(int(x) for x in factors)
        if not _is_canonical(f):
            raise ValueError(f"factors {f} are not in canonical invariant-factor form")
        self.factors = f

    @staticmethod
    def from_orders(orders: Sequence[int]) -> "Quotient":
        """Canonical form of the direct sum of cyclic groups Z/o (o=0 is Z)."""
        return cokernel_group(IntMatrix.diagonal(list(orders)))

    @staticmethod
    def cyclic(n: int) -> "FgAbGroup":
        return FgAbGroup([] if n == 1 else [n])

    @staticmethod
    def free(r: int) -> "FgAbGroup":
        return FgAbGroup([0] * r)

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        return self.factors

    @property
    def ngens(self) -> int:
        return len(self.factors)

    @property
    def free_rank(self) -> int:
        return sum(1 for f in self.factors if f == 0)

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(f for f in self.factors if f)

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def is_trivial(self) -> bool:
        return not self.factors

    def order(self):
        if not self.is_finite():
            return math.inf
        return math.prod(self.factors)

    def reduce(self, e: Sequence[int]) -> Tuple[int, ...]:
        e = tuple(e)
        if len(e) != len(self.factors):
            raise ValueError(f"element {e} does not belong to {self}")
        return tuple(x % f if f else x for x, f in zip(e, self.factors))

    def zero(self) -> Tuple[int, ...]:
        return (0,) * len(self.factors)

    def is_zero(self, e: Sequence[int]) -> bool:
        return not any(self.reduce(e))

    def add(self, a, b):
        return self.reduce([x + y for x, y in zip(a, b)])

    def neg(self, a):
        return self.reduce([-x for x in a])

    def scale(self, c: int, a):
        return self.reduce([c * x for x in a])

    def element_order(self, e):
        e = self.reduce(e)
        out = 1
        for x, f in zip(e, self.factors):
            if x == 0:
                continue
            if f == 0:
                return math.inf
            out = out * (f // math.gcd(x, f)) // math.gcd(out, f // math.gcd(x, f))
        return out

    def elements(self):
        if not self.is_finite():
            raise ValueError("cannot enumerate an infinite group")
        from itertools import product
        return product(*(range(f) for f in self.factors))

    def torsion_count(self, k: int) -> int:
        """Number of elements killed by k (finite groups)."""
        return math.prod(math.gcd(k, f) for f in self.factors)

    def __eq__(self, other):
        return isinstance(other, FgAbGroup) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return f"FgAbGroup({list(self.factors)})"

    def __str__(self):
        return group_name(self.factors)


def group_name(factors: Sequence[int]) -> str:
    if not factors:
        return "0"
    return "⊕".join("Z" if f == 0 else f"Z/{f}" for f in factors)


def parse_group_name(name: str) -> FgAbGroup:
    name = name.strip()
    if name == "0":
        return FgAbGroup()
    out = []
    for part in name.split("⊕"):
        part = part.strip()
        if part == "Z":
            out.append(0)
        elif part.startswith("Z/"):
            out.append(int(part[2:]))
        else:
            raise ValueError(f"cannot parse group name {name!r}")
    return FgAbGroup.from_orders(out).group


@dataclass(frozen=True)
class Quotient:
    """Z^n modulo a relation lattice, with coordinates for the quotient.

    ``to_group`` maps ambient vectors to canonical coordinates (before
    reduction) and ``lift`` sends canonical generators back to ambient
    representatives.
    """

    group: FgAbGroup
    to_group: IntMatrix
    lift: IntMatrix
    relations: IntMatrix

    def classify(self, v: Sequence[int]) -> Tuple[int, ...]:
        return self.group.reduce(self.to_group @ list(v))

    def lift_element(self, e: Sequence[int]) -> List[int]:
        return self.lift @ list(e)


def cokernel_group(m: IntMatrix) -> Quotient:
    """Z^rows / (column span of m) in canonical form."""
    s = smith_normal_form(m)
    n = m.rows
    free_idx = list(range(s.rank, n))
    fin_idx = [i for i in range(s.rank) if s.diag[i] != 1]
    order = free_idx + fin_idx
    factors = [0] * len(free_idx) + [s.diag[i] for i in fin_idx]
    to_group = IntMatrix(len(order), n, [s.u.row(i) for i in order])
    lift = IntMatrix.from_columns([s.u_inv.col(i) for i in order], n)
    return Quotient(FgAbGroup(factors), to_group, lift, m)


# ------------------------------------------------------------ homomorphisms

class AbHom:
    """Homomorphism between canonical groups, as a matrix on generators.

    Column j is the image of the j-th source generator.  Entries are kept
    reduced modulo the target factors.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FgAbGroup, target: FgAbGroup, matrix):
        if not isinstance(matrix, IntMatrix):
            matrix = IntMatrix(target.ngens, source.ngens, matrix)
        if matrix.shape != (target.ngens, source.ngens):
            raise ValueError(f"matrix shape {matrix.shape} does not match {target} <- {source}")
        for j, d in enumerate(source.factors):
            if d == 0:
                continue
            for i, t in enumerate(target.factors):
                x = d * matrix[i, j]
                if (t == 0 and x != 0) or (t and x % t):
                    raise ValueError(f"not well defined: generator {j} of order {d} "
                                     f"maps to an element of larger order")
        self.source = source
        self.target = target
        self.matrix = IntMatrix(matrix.rows, matrix.cols,
                                [[x % t if t else x for x in r]
                                 for r, t in zip(matrix.tolist(), target.factors)])

    @staticmethod
    def identity(g: FgAbGroup) -> "AbHom":
        return AbHom(g, g, IntMatrix.identity(g.ngens))

    @staticmethod
    def zero(source: FgAbGroup, target: FgAbGroup) -> "AbHom":
        return AbHom(source, target, IntMatrix.zeros(target.ngens, source.ngens))

    def apply(self, e: Sequence[int]) -> Tuple[int, ...]:
        return self.target.reduce(self.matrix @ list(e))

    def compose(self, other: "AbHom") -> "AbHom":
        """``self ∘ other``."""
        if other.target != self.source:
            raise ValueError("composition of non-composable homomorphisms")
        return AbHom(other.source, self.target, self.matrix @ other.matrix)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def lift_relations(self) -> IntMatrix:
        """Induced map between relation lattices Q1(source) -> Q1(target)."""
        src_fin = [j for j, d in enumerate(self.source.factors) if d]
        tgt_fin = [i for i, t in enumerate(self.target.factors) if t]
        data = [[self.matrix[i, j] * self.source.factors[j] // self.target.factors[i]
                 for j in src_fin] for i in tgt_fin]
        return IntMatrix(len(tgt_fin), len(src_fin), data)

    def __eq__(self, other):
        return (isinstance(other, AbHom) and self.source == other.source
                and self.target == other.target and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.source, self.target, self.matrix))

    def __repr__(self):
        return f"AbHom({self.source} -> {self.target}, {self.matrix.tolist()})"


class MorphismGroup:
    """Hom(G, H) or Ext(G, H) with representatives.

    Hom elements are homomorphism matrices (H-gens x G-gens).  Ext elements
    are cocycle matrices (H-gens x finite G-gens) giving the image of each
    relation generator of the free presentation of G.
    """

    def __init__(self, kind: str, source: FgAbGroup, target: FgAbGroup):
        if kind not in ("hom", "ext"):
            raise ValueError(kind)
        self.kind = kind
        self.source = source
        self.target = target
        self._slots = []  # (i, j, order, scale) per raw coordinate
        if kind == "hom":
            for j, g in enumerate(source.factors):
                for i, h in enumerate(target.factors):
                    if g == 0:
                        self._slots.append((i, j, h, 1))
                    elif h == 0:
                        self._slots.append((i, j, 1, 0))
                    else:
                        c = math.gcd(g, h)
                        self._slots.append((i, j, c, h // c))
            self.shape = (target.ngens, source.ngens)
        else:
            fin = [j for j, g in enumerate(source.factors) if g]
            for jj, j in enumerate(fin):
                g = source.factors[j]
                for i, h in enumerate(target.factors):
                    self._slots.append((i, jj, math.gcd(g, h), 1))
            self.shape = (target.ngens, len(fin))
        self._quot = FgAbGroup.from_orders([s[2] for s in self._slots])
        self.group = self._quot.group

    def raw_coordinates(self, mat: IntMatrix) -> List[int]:
        if mat.shape != self.shape:
            raise ValueError(f"representative shape {mat.shape}, expected {self.shape}")
        out = []
        for i, j, o, s in self._slots:
            x = mat[i, j]
            if self.kind == "hom":
                if s == 0:
                    if x:
                        raise ValueError("torsion generator mapped to a free element")
                    out.append(0)
                    continue
                h = self.target.factors[i]
                if h:
                    x %= h
                if x % s:
                    raise ValueError("matrix is not a homomorphism")
                x //= s
            out.append(x % o if o else x)
        return out

    def encode(self, mat: IntMatrix) -> Tuple[int, ...]:
        if isinstance(mat, AbHom):
            mat = mat.matrix
        return self._quot.classify(self.raw_coordinates(mat))

    def decode(self, e: Sequence[int]) -> IntMatrix:
        raw = self._quot.lift_element(e)
        data = [[0] * self.shape[1] for _ in range(self.shape[0])]
        for x, (i, j, o, s) in zip(raw, self._slots):
            if o:
                x %= o
            data[i][j] = x * s
        return IntMatrix(self.shape[0], self.shape[1], data)

    def decode_hom(self, e: Sequence[int]) -> AbHom:
        if self.kind != "hom":
            raise ValueError("decode_hom on an Ext group")
        return AbHom(self.source, self.target, self.decode(e))

    def generators(self) -> List[IntMatrix]:
        n = self.group.ngens
        return [self.decode([1 if k == t else 0 for k in range(n)]) for t in range(n)]


def hom_module(g: FgAbGroup, h: FgAbGroup) -> MorphismGroup:
    return MorphismGroup("hom", g, h)


def ext_module(g: FgAbGroup, h: FgAbGroup) -> MorphismGroup:
    return MorphismGroup("ext", g, h)


def hom_group(g: FgAbGroup, h: FgAbGroup) -> FgAbGroup:
    return hom_module(g, h).group


def ext_group(g: FgAbGroup, h: FgAbGroup) -> FgAbGroup:
    return ext_module(g, h).group


def induced_on_hom_ext(f: AbHom, side: str, functor: str, other: FgAbGroup) -> AbHom:
    """f acting on Hom/Ext: ``post`` composes after f, ``pre`` before f.

    post, hom: Hom(K, G) -> Hom(K, G')      pre, hom: Hom(G', K) -> Hom(G, K)
    post, ext: Ext(K, G) -> Ext(K, G')      pre, ext: Ext(G', K) -> Ext(G, K)
    """
    if functor not in ("hom", "ext") or side not in ("pre", "post"):
        raise ValueError(f"unknown induced map {side}/{functor}")
    mod = hom_module if functor == "hom" else ext_module
    if side == "post":
        src, tgt = mod(other, f.source), mod(other, f.target)
        act = lambda m: f.matrix @ m
    else:
        src, tgt = mod(f.target, other), mod(f.source, other)
        right = f.matrix if functor == "hom" else f.lift_relations()
        act = lambda m: m @ right
    cols = [list(tgt.encode(act(m))) for m in src.generators()]
    return AbHom(src.group, tgt.group, IntMatrix.from_columns(cols, tgt.group.ngens))


# ---------------------------------------------------------------- subgroups

class Subgroup:
    """Subgroup of a canonical group spanned by explicit generators."""

    def __init__(self, ambient: FgAbGroup, generators: Iterable[Sequence[int]] = ()):
        gens = [ambient.reduce(g) for g in generators]
        self.ambient = ambient
        self.generators = [g for g in gens if any(g)]
        rel = [[f if i == k else 0 for i in range(ambient.ngens)]
               for k, f in enumerate(ambient.factors) if f]
        self._rel_cols = rel
        cols = rel + [list(g) for g in self.generators]
        self._quot = cokernel_group(IntMatrix.from_columns(cols, ambient.ngens))
        self._span = IntMatrix.from_columns([list(g) for g in self.generators] + rel,
                                            ambient.ngens)

    def structure(self) -> FgAbGroup:
        k = len(self.generators)
        if k == 0:
            return FgAbGroup()
        kern = kernel_basis(self._span)
        proj = IntMatrix.from_columns([v[:k] for v in kern], k) if kern else IntMatrix(k, 0)
        return cokernel_group(proj).group

    def order(self):
        if self.ambient.is_finite():
            return self.ambient.order() // self._quot.group.order()
        return self.structure().order()

    def contains(self, e: Sequence[int]) -> bool:
        e = self.ambient.reduce(e)
        if self._span.cols == 0:
            return not any(e)
        return solve_linear(self._span, list(e)) is not None

    def quotient_group(self) -> FgAbGroup:
        return self._quot.group

    def quotient_class(self, e: Sequence[int]) -> Tuple[int, ...]:
        return self._quot.classify(self.ambient.reduce(e))

    def __repr__(self):
        return f"Subgroup({self.ambient}, {self.generators})"


def subgroup_ops(ambient: FgAbGroup, generators: Iterable[Sequence[int]]) -> Subgroup:
    return Subgroup(ambient, generators)
