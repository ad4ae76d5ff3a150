"""Secondary Toda brackets of graded abelian groups.

A graded module E is replaced by its complex of presentations ĈE, and a
homotopy class of maps ĈE -> ĈF splits into Hom parts E_n -> F_n and Ext
parts in Ext(E_n, F_{n+1}).  Chain-level data for a bracket consists of
three maps and two nullhomotopies, all given by named blocks (see
:func:`todacx.chaincx.block_map`).  Blocks are keyed by the map letter and
the block name, e.g. ``f00`` or ``S11``, and indexed by source degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .chaincx import (CHat, ChainComplex, GradedMap, GradedModule, UctSplit, block_map, c_hat,
                      compose_maps, hom_complex, homology, uct_split)
from .higher import HigherComplexData, bracket_class, bracket_set, bracket_value
from .intlin import AbHom, FgAbGroup, IntMatrix, Subgroup, induced_on_hom_ext

MAP_NAMES = ("f", "g", "h")
HOMOTOPY_NAMES = ("S", "T")
# map letter -> (source module index, target module index, degree)
ROLES = {"f": (0, 1, 0), "g": (1, 2, 0), "h": (2, 3, 0), "S": (0, 2, 1), "T": (1, 3, 1)}


@dataclass(frozen=True)
class SecondaryData:
    """Four graded modules with three composable maps and two nullhomotopies.

    ``modules`` runs from source to target.  ``S`` witnesses g∘f ≃ 0 and
    ``T`` witnesses h∘g ≃ 0 (so ∂S = g∘f, ∂T = h∘g).
    """

    name: str
    modules: Tuple[GradedModule, GradedModule, GradedModule, GradedModule]
    blocks: Mapping[str, Mapping[int, IntMatrix]]

    def complexes(self) -> List[CHat]:
        return [c_hat(m) for m in self.modules]

    def chain_map(self, letter: str) -> GradedMap:
        s, t, deg = ROLES[letter]
        cx = self.complexes()
        own = {key[1:]: table for key, table in self.blocks.items() if key[0] == letter}
        return block_map(cx[s], cx[t], deg, own)

    def block(self, key: str, n: int) -> Optional[IntMatrix]:
        return self.blocks.get(key, {}).get(n)


class SecondaryError(ValueError):
    pass


def validate_secondary(data: SecondaryData) -> Optional[str]:
    """None when the maps are chain maps and the homotopies satisfy their equations."""
    maps = {k: data.chain_map(k) for k in ROLES}
    for k in MAP_NAMES:
        if not maps[k].is_chain():
            return f"{k} is not a chain map"
    if maps["S"].boundary() != compose_maps(maps["g"], maps["f"]):
        return "S does not satisfy dS = g∘f"
    if maps["T"].boundary() != compose_maps(maps["h"], maps["g"]):
        return "T does not satisfy dT = h∘g"
    return None


# ------------------------------------------------------------- HoMap

@dataclass
class HoMap:
    """Homotopy class ĈE -> ĈF of degree ``shift`` in split form.

    ``hom_part[n]`` is an AbHom E_n -> F_{n+shift}; ``ext_part[n]`` is a
    cocycle matrix representing a class in Ext(E_n, F_{n+shift+1}).
    """

    source: GradedModule
    target: GradedModule
    hom_part: Dict[int, AbHom] = field(default_factory=dict)
    ext_part: Dict[int, IntMatrix] = field(default_factory=dict)
    shift: int = 0

    def split(self) -> UctSplit:
        return uct_split(self.source, self.target, self.shift)

    def elements(self):
        sp = self.split()
        hom = {n: sp.hom_parts[n].encode(m) for n, m in self.hom_part.items() if n in sp.hom_parts}
        ext = {n: sp.ext_parts[n].encode(m) for n, m in self.ext_part.items() if n in sp.ext_parts}
        # a nonzero cocycle matrix may still represent the zero class
        return ({n: e for n, e in hom.items() if any(e)}, {n: e for n, e in ext.items() if any(e)})

    def hom_at(self, n: int) -> AbHom:
        if n in self.hom_part:
            return self.hom_part[n]
        return AbHom.zero(self.source[n], self.target[n + self.shift])

    def ext_at(self, n: int) -> IntMatrix:
        if n in self.ext_part:
            return self.ext_part[n]
        tg, sg = self.target[n + self.shift + 1], self.source[n]
        return IntMatrix.zeros(tg.ngens, len(sg.torsion))

    @staticmethod
    def from_split(sp: UctSplit, hom, ext) -> "HoMap":
        hp = {n: sp.hom_parts[n].decode_hom(e) for n, e in hom.items() if any(e)}
        ep = {n: sp.ext_parts[n].decode(e) for n, e in ext.items() if any(e)}
        return HoMap(sp.e, sp.f, hp, ep, sp.shift)


def ho_map_of(f: GradedMap, source: GradedModule, target: GradedModule) -> HoMap:
    """Split form of a chain map between Ĉ-complexes."""
    sp = uct_split(source, target, f.degree)
    hom, ext = sp.project(hom_complex(sp.source, sp.target).encode(f))
    return HoMap.from_split(sp, hom, ext)


def realize_ho_map(phi: HoMap) -> GradedMap:
    """Chain map with the given components (Hom blocks lifted through the covers)."""
    hom, ext = phi.elements()
    return phi.split().realize(hom, ext)


def compose_ho(second: HoMap, first: HoMap) -> HoMap:
    """Composite in split form; Ext∘Ext terms vanish."""
    s1 = first.shift
    sign = -1 if s1 % 2 else 1
    hp, ep = {}, {}
    for n in first.source.degrees():
        a = first.hom_at(n)
        b = second.hom_at(n + s1)
        c = b.compose(a)
        if not c.is_zero():
            hp[n] = c
        if first.source[n].torsion:
            post = second.hom_at(n + s1 + 1).matrix @ first.ext_at(n)
            pre = second.ext_at(n + s1) @ a.lift_relations()
            m = post + pre.scale(sign)
            if not m.is_zero():
                ep[n] = m
    return HoMap(first.source, second.target, hp, ep, s1 + second.shift)


# ------------------------------------------------------------ classification

@dataclass(frozen=True)
class FormTag:
    kind: str            # elementary | atomic-a | atomic-b | rejected | mixed
    words: Tuple[str, ...]

    def __str__(self):
        return f"{self.kind}:{'+'.join(self.words)}"


ELEMENTARY = [("HEH", "EHH"), ("HEE", "EHE"), ("HHE", "HEH"), ("EHE", "EEH")]


def _arrows(phi: HoMap):
    out = []
    for n in phi.source.degrees():
        if n in phi.hom_part and not phi.hom_part[n].is_zero():
            out.append(("H", n, n + phi.shift))
        if n in phi.ext_part:
            sp = phi.split()
            if n in sp.ext_parts and any(sp.ext_parts[n].encode(phi.ext_part[n])):
                out.append(("E", n, n + phi.shift + 1))
    return out


def words_of(data: SecondaryData) -> List[str]:
    cx = data.modules
    phis = [ho_map_of(data.chain_map(k), cx[i], cx[i + 1]) for i, k in enumerate(MAP_NAMES)]
    arrows = [_arrows(p) for p in phis]
    words = set()
    for a1, s1, t1 in arrows[0]:
        for a2, s2, t2 in arrows[1]:
            if s2 != t1:
                continue
            for a3, s3, _ in arrows[2]:
                if s3 == t2:
                    words.add(a1 + a2 + a3)
    return sorted(words)


def classify(data: SecondaryData) -> FormTag:
    """Which pattern of Hom/Ext pieces the bracket is built from."""
    words = words_of(data)
    if not words:
        return FormTag("rejected", ())
    offsets = {w.count("E") for w in words}
    if offsets & {0, 3}:
        return FormTag("rejected", tuple(words))
    if len(words) == 1:
        w = words[0]
        return FormTag("atomic-a" if w.count("E") == 1 else "atomic-b", (w,))
    for pair in ELEMENTARY:
        if set(words) == set(pair):
            return FormTag("elementary", pair)
    return FormTag("mixed", tuple(words))


# --------------------------------------------------------------- brackets

def higher_data(data: SecondaryData) -> HigherComplexData:
    """Order-1 higher complex on the Ĉ-images (objects listed target first)."""
    return chain_higher_data([data.chain_map(k) for k in MAP_NAMES],
                             [data.chain_map(k) for k in HOMOTOPY_NAMES])


def chain_higher_data(maps: Sequence[GradedMap], homotopies: Sequence[GradedMap]) -> HigherComplexData:
    """Higher complex from chain maps (first, second, third) and homotopies (S, T)."""
    f, g, h = maps
    s, t = homotopies
    objs = [h.target, h.source, g.source, f.source]
    hom = lambda a, b: hom_complex(a, b)

    def cube(first, second, htpy, a, b):
        comp = hom(a, b).encode(compose_maps(second, first))
        return comp + hom(a, b).encode(htpy)

    layer0 = {(0, 1): hom(objs[1], objs[0]).encode(h), (0, 2): hom(objs[2], objs[1]).encode(g),
              (0, 3): hom(objs[3], objs[2]).encode(f)}
    layer1 = {(1, 2): cube(g, h, t, objs[2], objs[0]), (1, 3): cube(f, g, s, objs[3], objs[1])}
    return HigherComplexData(1, objs, [0, 0, 0], {**layer0, **layer1})


@dataclass
class SecondaryBracketResult:
    ambient: FgAbGroup
    split: UctSplit
    value_class: Tuple[int, ...]
    value_hom: Dict[int, Tuple[int, ...]]
    value_ext: Dict[int, Tuple[int, ...]]
    indeterminacy: Subgroup
    quotient_class: Tuple[int, ...]
    vanishes: bool
    form: FormTag
    cycle: List[int]

    def component_orders(self):
        """Order of the value in each nonzero split component."""
        out = {}
        for kind, n, grp in self.split.components():
            el = (self.value_hom if kind == "hom" else self.value_ext)[n]
            out[(kind, n)] = grp.element_order(el)
        return out


def _ho_maps(data: SecondaryData):
    cx = data.modules
    return [ho_map_of(data.chain_map(k), cx[i], cx[i + 1]) for i, k in enumerate(MAP_NAMES)]


def indeterminacy(first: HoMap, third: HoMap, modules: Sequence[GradedModule]) -> Subgroup:
    """Images of precomposition with the first map and postcomposition with the third.

    Computed on split components with the induced maps on Hom and Ext; the
    result lives in the homology coordinates of H_1 Hom(ĈE, ĈH).
    """
    e, f, g, h = modules
    target = uct_split(e, h, 1)
    gens = []
    # precomposition: u: ĈF -> ĈH of degree 1, composite u∘first
    left = uct_split(f, h, 1)
    for u_hom, u_ext in _basis_elements(left):
        hom, ext = {}, {}
        for n in e.degrees():
            fh = first.hom_at(n)
            uh = _hom_comp(left, u_hom, n)
            if n in target.hom_parts:
                pre = induced_on_hom_ext(fh, "pre", "hom", h[n + 1])
                hom[n] = pre.apply(left.hom_parts[n].encode(uh) if n in left.hom_parts else
                                   pre.source.zero())
            if n in target.ext_parts:
                tmod = target.ext_parts[n]
                acc = list(tmod.group.zero())
                if n in left.ext_parts:
                    pre = induced_on_hom_ext(fh, "pre", "ext", h[n + 2])
                    acc = _add(tmod.group, acc, pre.apply(u_ext.get(n, left.ext_parts[n].group.zero())))
                uh1 = _hom_comp(left, u_hom, n + 1)
                if not uh1.is_zero() and first.ext_part.get(n) is not None:
                    post = induced_on_hom_ext(uh1, "post", "ext", e[n])
                    fe = ext_of(first, n)
                    acc = _add(tmod.group, acc, post.apply(fe))
                ext[n] = tuple(acc)
        gens.append(target.to_class(hom, ext))
    # postcomposition: v: ĈE -> ĈG of degree 1, composite third∘v
    right = uct_split(e, g, 1)
    for v_hom, v_ext in _basis_elements(right):
        hom, ext = {}, {}
        for n in e.degrees():
            vh = _hom_comp(right, v_hom, n)
            hh = third.hom_at(n + 1)
            if n in target.hom_parts:
                post = induced_on_hom_ext(hh, "post", "hom", e[n])
                hom[n] = post.apply(right.hom_parts[n].encode(vh) if n in right.hom_parts else
                                    post.source.zero())
            if n in target.ext_parts:
                tmod = target.ext_parts[n]
                acc = list(tmod.group.zero())
                if n in right.ext_parts:
                    post = induced_on_hom_ext(third.hom_at(n + 2), "post", "ext", e[n])
                    acc = _add(tmod.group, acc, post.apply(v_ext.get(n, right.ext_parts[n].group.zero())))
                if not vh.is_zero() and third.ext_part.get(n + 1) is not None:
                    pre = induced_on_hom_ext(vh, "pre", "ext", h[n + 2])
                    he = ext_of(third, n + 1)
                    # the relation lift of a degree-1 map carries a sign
                    acc = _add(tmod.group, acc, tmod.group.neg(pre.apply(he)))
                ext[n] = tuple(acc)
        gens.append(target.to_class(hom, ext))
    return Subgroup(target.group, gens)


def ext_of(phi: HoMap, n: int) -> Tuple[int, ...]:
    return phi.split().ext_parts[n].encode(phi.ext_at(n))


def _add(group, a, b):
    return list(group.add(a, b))


def _hom_comp(sp: UctSplit, hom_elems, n) -> AbHom:
    if n in sp.hom_parts and n in hom_elems:
        return sp.hom_parts[n].decode_hom(hom_elems[n])
    return AbHom.zero(sp.e[n], sp.f[n + sp.shift])


def _basis_elements(sp: UctSplit):
    """Split components of the generators of the homology group."""
    return [sp.project(r) for r in sp.homology.generators()]


def indeterminacy_chain(first: GradedMap, third: GradedMap) -> Subgroup:
    """Same subgroup computed by composing chain-level homology representatives.

    Works for any complexes, not only those built from graded modules.
    """
    e, f, g, h = first.source, first.target, third.source, third.target
    tgt = hom_complex(e, h)
    hgrp = homology(tgt, 1)
    gens = []
    hf = hom_complex(f, h)
    for rep in homology(hf, 1).generators():
        gens.append(hgrp.classify(tgt.encode(compose_maps(hf.decode(rep, 1), first))))
    he = hom_complex(e, g)
    for rep in homology(he, 1).generators():
        gens.append(hgrp.classify(tgt.encode(compose_maps(third, he.decode(rep, 1)))))
    return Subgroup(hgrp.group, gens)


def toda_chain(maps: Sequence[GradedMap], homotopies: Sequence[GradedMap]):
    """Bracket class from raw chain data; returns (class, cycle, group)."""
    d = chain_higher_data(maps, homotopies)
    c = bracket_class(bracket_value(d))
    return c


def toda_secondary(data: SecondaryData) -> SecondaryBracketResult:
    problem = validate_secondary(data)
    if problem is not None:
        raise SecondaryError(problem)
    d = higher_data(data)
    cls = bracket_class(bracket_value(d))
    e, _, _, h = data.modules
    sp = uct_split(e, h, 1)
    hom, ext = sp.project(cls.cycle)
    first, _, third = _ho_maps(data)
    ind = indeterminacy(first, third, data.modules)
    return SecondaryBracketResult(
        ambient=cls.group, split=sp, value_class=cls.element, value_hom=hom, value_ext=ext,
        indeterminacy=ind, quotient_class=ind.quotient_class(cls.element),
        vanishes=ind.contains(cls.element), form=classify(data), cycle=cls.cycle)


def defining_system_set(data: SecondaryData):
    """The bracket set over all choices of the two nullhomotopies."""
    return bracket_set(higher_data(data).truncate(0))


# -------------------------------------------------------------- fixtures

def _gm(shape: Mapping[int, Sequence[int]]) -> GradedModule:
    return GradedModule({n: FgAbGroup(f) for n, f in shape.items()})


def _blk(shape: Mapping[str, Mapping[int, Sequence[Sequence[int]]]]):
    return {k: {n: IntMatrix.from_rows(m) for n, m in v.items()} for k, v in shape.items()}


_FIXTURES = {
    "example-5.5": (
        [{0: [2]}, {0: [4]}, {0: [2]}, {1: [2]}],
        {"f00": {0: [[2]]}, "f11": {0: [[1]]}, "g00": {0: [[1]]}, "g11": {0: [[2]]},
         "h10": {0: [[1]]}, "S01": {0: [[1]]}, "T11": {0: [[1]]}}),
    "example-5.6": (
        [{0: [2]}, {1: [4]}, {1: [4]}, {2: [0]}],
        {"f10": {0: [[1]]}, "g00": {1: [[2]]}, "g11": {1: [[2]]}, "h10": {1: [[2]]},
         "S00": {0: [[1]]}, "T00": {1: [[1]]}}),
    "example-5.7": (
        [{0: [8]}, {0: [4]}, {1: [4]}, {2: [0]}],
        {"f00": {0: [[1]]}, "f11": {0: [[2]]}, "g10": {0: [[2]]}, "h10": {1: [[1]]},
         "S11": {0: [[1]]}}),
    "example-5.8": (
        [{0: [16]}, {0: [8], 1: [16]}, {1: [16]}, {1: [16]}],
        {"f00": {0: [[1]]}, "f11": {0: [[2]]}, "f10": {0: [[1]]},
         "g10": {0: [[4]]}, "g00": {1: [[8]]}, "g11": {1: [[8]]},
         "h00": {1: [[2]]}, "h11": {1: [[2]]},
         "S11": {0: [[1]]}, "T00": {0: [[1]]}, "T01": {1: [[1]]}}),
}


def fixtures() -> Dict[str, SecondaryData]:
    out = {}
    for name, (mods, blocks) in _FIXTURES.items():
        out[name] = SecondaryData(name, tuple(_gm(m) for m in mods), _blk(blocks))
    return out


# ------------------------------------------------------ acyclic padding

def augment_acyclic(a: ChainComplex, degree: int):
    """``A ⊕ (Z -> Z)`` in degrees degree+1, degree, with inclusion and projection."""
    ranks = dict(a.ranks)
    ranks[degree] = ranks.get(degree, 0) + 1
    ranks[degree + 1] = ranks.get(degree + 1, 0) + 1
    diffs = {}
    for n in set(a.diffs) | {degree + 1, degree, degree + 2}:
        old = a.diff(n)
        r0, r1 = ranks.get(n - 1, 0), ranks.get(n, 0)
        data = [[0] * r1 for _ in range(r0)]
        for i in range(old.rows):
            for j in range(old.cols):
                data[i][j] = old[i, j]
        if n == degree + 1:
            data[r0 - 1][r1 - 1] = 1
        diffs[n] = IntMatrix(r0, r1, data)
    big = ChainComplex(ranks, diffs)
    inc, proj = {}, {}
    for n in a.degrees():
        inc[n] = IntMatrix(big.rank(n), a.rank(n),
                           [[1 if i == j else 0 for j in range(a.rank(n))] for i in range(big.rank(n))])
        proj[n] = inc[n].T
    return big, GradedMap(a, big, 0, inc), GradedMap(big, a, 0, proj)


def extend_by_zero(f: GradedMap, source: ChainComplex, target: ChainComplex) -> GradedMap:
    """Same map on the original summands of padded complexes."""
    comp = {}
    for n in source.degrees():
        m = f.component(n)
        r, c = target.rank(n + f.degree), source.rank(n)
        data = [[0] * c for _ in range(r)]
        for i in range(m.rows):
            for j in range(m.cols):
                data[i][j] = m[i, j]
        comp[n] = IntMatrix(r, c, data)
    return GradedMap(source, target, f.degree, comp)
