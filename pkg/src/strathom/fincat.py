"""Finite categories, set-valued diagrams, and their exact (co)limits.

Morphism names are globally unique strings; ``compose[(g, f)]`` holds the
composite g∘f (f applied first).  Composition tables may be partial: a
missing composite is a validation finding, not an exception, which lets the
same machinery carry length-bounded free constructions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class UnionFind:
    """Disjoint sets over arbitrary hashable keys (path compression + size)."""

    def __init__(self, items=()):
        self.parent = {x: x for x in items}
        self.size = {x: 1 for x in self.parent}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return rx
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        return rx

    def classes(self):
        """Blocks as sorted tuples, each led by its least member; blocks
        sorted by leader.  Deterministic given the key order."""
        blocks = {}
        for x in self.parent:
            blocks.setdefault(self.find(x), []).append(x)
        out = []
        for members in blocks.values():
            members.sort()
            out.append(tuple(members))
        out.sort(key=lambda block: block[0])
        return out


class FinCategory:
    """A finite category presented by hom sets and a composition table."""

    def __init__(self, objects, homs, compose, units):
        self.objects = tuple(objects)
        self.homs = {}
        for (s, t), ms in homs.items():
            if ms:
                self.homs[(s, t)] = tuple(ms)
        self.compose_table = dict(compose)
        self.units = dict(units)
        self._src = {}
        self._tgt = {}
        for (s, t), ms in self.homs.items():
            for m in ms:
                if m in self._src:
                    raise ValueError(f"morphism name {m!r} reused")
                self._src[m] = s
                self._tgt[m] = t

    # -- basic queries ----------------------------------------------------

    def morphisms(self):
        for ms in self.homs.values():
            yield from ms

    def hom(self, x, y):
        return self.homs.get((x, y), ())

    def src(self, m):
        return self._src[m]

    def tgt(self, m):
        return self._tgt[m]

    def unit(self, x):
        return self.units[x]

    def compose(self, g, f):
        """g∘f, or None when the table has no entry (length bounds etc.)."""
        if self._tgt[f] != self._src[g]:
            raise ValueError(f"cannot compose {g!r} after {f!r}")
        return self.compose_table.get((g, f))

    def is_identity(self, m):
        return self.units.get(self._src[m]) == m and self._src[m] == self._tgt[m]

    def is_iso(self, m):
        x, y = self._src[m], self._tgt[m]
        for w in self.hom(y, x):
            if (self.compose_table.get((w, m)) == self.units.get(x)
                    and self.compose_table.get((m, w)) == self.units.get(y)):
                return True
        return False

    def endomorphisms(self, x):
        return self.hom(x, x)

    def power(self, m, r):
        """r-fold composite of an endomorphism; None if the table runs out."""
        if self._src[m] != self._tgt[m]:
            raise ValueError(f"{m!r} is not an endomorphism")
        if r < 1:
            raise ValueError("power requires r >= 1")
        out = m
        for _ in range(r - 1):
            out = self.compose_table.get((m, out))
            if out is None:
                return None
        return out

    # -- serialization ----------------------------------------------------

    def to_json_dict(self):
        return {
            "objects": list(self.objects),
            "homs": {f"{s}->{t}": list(ms) for (s, t), ms in sorted(self.homs.items())},
            "compose": {f"{g}*{f}": h for (g, f), h in sorted(self.compose_table.items())},
            "units": dict(sorted(self.units.items())),
        }

    @classmethod
    def from_json_dict(cls, data):
        homs = {}
        for key, ms in data.get("homs", {}).items():
            s, _, t = key.partition("->")
            if not _:
                raise ValueError(f"bad hom key {key!r}")
            homs[(s, t)] = tuple(ms)
        compose = {}
        for key, h in data.get("compose", {}).items():
            g, _, f = key.partition("*")
            if not _:
                raise ValueError(f"bad compose key {key!r}")
            compose[(g, f)] = h
        return cls(data["objects"], homs, compose, data.get("units", {}))

    def __repr__(self):
        return (f"FinCategory({len(self.objects)} objects, "
                f"{sum(len(v) for v in self.homs.values())} morphisms)")


def validate_category(cat: FinCategory):
    """All violated axioms, as strings.  Empty report == valid category."""
    report = []
    names = set()
    for (s, t), ms in cat.homs.items():
        if s not in cat.objects or t not in cat.objects:
            report.append(f"hom ({s},{t}) references unknown object")
        for m in ms:
            if m in names:
                report.append(f"duplicate morphism name {m}")
            names.add(m)
    for x in cat.objects:
        u = cat.units.get(x)
        if u is None:
            report.append(f"missing unit for {x}")
        elif u not in names or cat._src.get(u) != x or cat._tgt.get(u) != x:
            report.append(f"unit {u} of {x} is not an endomorphism of {x}")
    for (g, f), h in cat.compose_table.items():
        if f not in names or g not in names or h not in names:
            report.append(f"composite entry ({g},{f})->{h} has dangling identifier")
            continue
        if cat._tgt[f] != cat._src[g]:
            report.append(f"entry ({g},{f}) is not composable")
        elif cat._src[h] != cat._src[f] or cat._tgt[h] != cat._tgt[g]:
            report.append(f"composite {h} of ({g},{f}) has wrong endpoints")
    # totality
    for f in names:
        for g in names:
            if f in cat._tgt and g in cat._src and cat._tgt[f] == cat._src[g]:
                if (g, f) not in cat.compose_table:
                    report.append(f"missing composite ({g},{f})")
    if report:
        return report
    # unit laws and associativity only make sense on a total table
    for f in names:
        if cat.compose_table[(cat.units[cat._tgt[f]], f)] != f:
            report.append(f"left unit law fails at {f}")
        if cat.compose_table[(f, cat.units[cat._src[f]])] != f:
            report.append(f"right unit law fails at {f}")
    for f in names:
        for g in names:
            if cat._tgt[f] != cat._src[g]:
                continue
            gf = cat.compose_table[(g, f)]
            for h in names:
                if cat._tgt[g] != cat._src[h]:
                    continue
                hg = cat.compose_table[(h, g)]
                if cat.compose_table[(h, gf)] != cat.compose_table[(hg, f)]:
                    report.append(f"associativity fails at ({h},{g},{f})")
    return report


# -- small builders --------------------------------------------------------

def discrete_category(objects):
    objects = tuple(objects)
    homs = {(x, x): (f"id_{x}",) for x in objects}
    units = {x: f"id_{x}" for x in objects}
    compose = {(f"id_{x}", f"id_{x}"): f"id_{x}" for x in objects}
    return FinCategory(objects, homs, compose, units)


def monoid_category(elements, mult, unit, obj="*"):
    """One-object category on a finite monoid; mult[(a, b)] = a·b.

    Composition is diagrammatic: compose(g, f) = g∘f := mult[(f, g)] reads
    "f then g".  For commutative monoids the distinction is invisible.
    """
    homs = {(obj, obj): tuple(elements)}
    compose = {(g, f): h for (f, g), h in mult.items()}
    return FinCategory((obj,), homs, compose, {obj: unit})


def walking_idempotent():
    """One object, End = {id, phi}, phi∘phi = phi."""
    mult = {("id", "id"): "id", ("id", "phi"): "phi",
            ("phi", "id"): "phi", ("phi", "phi"): "phi"}
    return monoid_category(("id", "phi"), mult, "id")


def poset_category(objects, leq):
    """Finite poset as a category: one morphism x->y whenever leq(x, y)."""
    objects = tuple(objects)
    homs = {}
    for x in objects:
        for y in objects:
            if leq(x, y):
                homs[(x, y)] = (f"{x}<={y}",)
    compose = {}
    for x in objects:
        for y in objects:
            for z in objects:
                if leq(x, y) and leq(y, z):
                    compose[(f"{y}<={z}", f"{x}<={y}")] = f"{x}<={z}"
    units = {x: f"{x}<={x}" for x in objects}
    return FinCategory(objects, homs, compose, units)


def parallel_pair_category():
    """Two objects, two parallel arrows a ⇉ b (plus identities)."""
    homs = {("a", "a"): ("id_a",), ("b", "b"): ("id_b",), ("a", "b"): ("d0", "d1")}
    compose = {("id_a", "id_a"): "id_a", ("id_b", "id_b"): "id_b",
               ("d0", "id_a"): "d0", ("d1", "id_a"): "d1",
               ("id_b", "d0"): "d0", ("id_b", "d1"): "d1"}
    return FinCategory(("a", "b"), homs, compose, {"a": "id_a", "b": "id_b"})


# -- set-valued diagrams and their (co)limits -------------------------------

class SetDiagram:
    """A functor shape -> FinSet: finite sets and functions between them."""

    def __init__(self, shape: FinCategory, on_objects, on_morphisms):
        self.shape = shape
        self.on_objects = {x: tuple(v) for x, v in on_objects.items()}
        self.on_morphisms = {m: dict(f) for m, f in on_morphisms.items()}

    def value(self, x):
        return self.on_objects[x]

    def map(self, m):
        return self.on_morphisms[m]

    def validate(self):
        report = []
        for x in self.shape.objects:
            if x not in self.on_objects:
                report.append(f"no value set at object {x}")
        for m in self.shape.morphisms():
            fm = self.on_morphisms.get(m)
            if fm is None:
                report.append(f"no function at morphism {m}")
                continue
            s, t = self.shape.src(m), self.shape.tgt(m)
            if set(fm) != set(self.on_objects.get(s, ())):
                report.append(f"function at {m} has wrong domain")
            if not set(fm.values()) <= set(self.on_objects.get(t, ())):
                report.append(f"function at {m} has wrong codomain")
        if report:
            return report
        for x in self.shape.objects:
            u = self.shape.unit(x)
            if any(self.on_morphisms[u][a] != a for a in self.on_objects[x]):
                report.append(f"unit at {x} is not the identity function")
        for f in self.shape.morphisms():
            for g in self.shape.morphisms():
                if self.shape.tgt(f) != self.shape.src(g):
                    continue
                gf = self.shape.compose(g, f)
                if gf is None:
                    continue
                for a in self.on_objects[self.shape.src(f)]:
                    if self.on_morphisms[gf][a] != self.on_morphisms[g][self.on_morphisms[f][a]]:
                        report.append(f"functoriality fails at ({g},{f}) on {a!r}")
                        break
        return report


def colimit_of_sets(diagram: SetDiagram):
    """Colimit as a quotient of the disjoint union, by union-find saturation.

    Returns (classes, cocone) where classes is a tuple of canonical
    representatives -- each a (object, element) pair, the least tag of its
    block -- and cocone[x][a] is the class of element a of the set at x.
    """
    uf = UnionFind()
    for x in diagram.shape.objects:
        for a in diagram.value(x):
            uf.add((x, a))
    for m in diagram.shape.morphisms():
        s, t = diagram.shape.src(m), diagram.shape.tgt(m)
        fm = diagram.map(m)
        for a in diagram.value(s):
            uf.union((s, a), (t, fm[a]))
    blocks = uf.classes()
    rep = {}
    for block in blocks:
        for tag in block:
            rep[tag] = block[0]
    classes = tuple(block[0] for block in blocks)
    cocone = {x: {a: rep[(x, a)] for a in diagram.value(x)}
              for x in diagram.shape.objects}
    return classes, cocone


def limit_of_sets(diagram: SetDiagram):
    """Limit as the set of compatible families.

    Returns (elements, cone): elements are tuples aligned with the sorted
    object list; cone[x] maps each element to its component at x.
    """
    objs = sorted(diagram.shape.objects)
    families = []
    for combo in itertools.product(*(diagram.value(x) for x in objs)):
        assignment = dict(zip(objs, combo))
        ok = True
        for m in diagram.shape.morphisms():
            s, t = diagram.shape.src(m), diagram.shape.tgt(m)
            if diagram.map(m)[assignment[s]] != assignment[t]:
                ok = False
                break
        if ok:
            families.append(combo)
    elements = tuple(sorted(families, key=_sort_key))
    cone = {x: {fam: fam[i] for fam in elements} for i, x in enumerate(objs)}
    return elements, cone


def _sort_key(value):
    """Total order on heterogeneous nested data, for canonical outputs."""
    if isinstance(value, tuple):
        return (1, tuple(_sort_key(v) for v in value))
    return (0, (type(value).__name__, repr(value)))


def brute_force_colimit_size(diagram: SetDiagram) -> int:
    """Independent oracle: saturate the generated relation by fixpoint
    iteration over explicit pair sets (no union-find)."""
    tags = [(x, a) for x in diagram.shape.objects for a in diagram.value(x)]
    related = {t: {t} for t in tags}
    pairs = []
    for m in diagram.shape.morphisms():
        s, t = diagram.shape.src(m), diagram.shape.tgt(m)
        for a in diagram.value(s):
            pairs.append(((s, a), (t, diagram.map(m)[a])))
    changed = True
    while changed:
        changed = False
        for u, v in pairs:
            merged = related[u] | related[v]
            for w in merged:
                if related[w] != merged:
                    related[w] = merged
                    changed = True
    return len({frozenset(v) for v in related.values()})


# -- factorization systems --------------------------------------------------

class NoFactorization(Exception):
    pass


@dataclass(frozen=True)
class FactorizationSystem:
    """A pair of morphism classes [left; right] on a finite category."""

    category: FinCategory
    left: frozenset
    right: frozenset

    def validate(self):
        report = []
        cat = self.category
        isos = {m for m in cat.morphisms() if cat.is_iso(m)}
        if not isos <= self.left:
            report.append("left class is missing isomorphisms")
        if not isos <= self.right:
            report.append("right class is missing isomorphisms")
        for cls_name, cls in (("left", self.left), ("right", self.right)):
            for f in cls:
                for g in cls:
                    if cat.tgt(f) == cat.src(g):
                        gf = cat.compose(g, f)
                        if gf is not None and gf not in cls:
                            report.append(f"{cls_name} class not closed under ({g},{f})")
        for f in cat.morphisms():
            if not factorizations(self, f):
                report.append(f"no [left;right] factorization of {f}")
        return report


def factorizations(fs: FactorizationSystem, f):
    """All pairs (l, r) with r∘l = f, l in the left class, r in the right."""
    cat = fs.category
    out = []
    for mid in cat.objects:
        for l in cat.hom(cat.src(f), mid):
            if l not in fs.left:
                continue
            for r in cat.hom(mid, cat.tgt(f)):
                if r in fs.right and cat.compose(r, l) == f:
                    out.append((l, r))
    return out


def factorize_morphism(fs: FactorizationSystem, f):
    """The canonical (first in enumeration order) [left; right] factorization."""
    found = factorizations(fs, f)
    if not found:
        raise NoFactorization(f"{f!r} has no [left;right] factorization")
    return found[0]


def factorization_unique_up_to_iso(fs: FactorizationSystem, f) -> bool:
    """Check that any two factorizations of f differ by a unique mediating iso."""
    cat = fs.category
    found = factorizations(fs, f)
    if not found:
        return False
    l0, r0 = found[0]
    for l1, r1 in found[1:]:
        mids = [w for w in cat.hom(cat.tgt(l0), cat.tgt(l1))
                if cat.is_iso(w)
                and cat.compose(w, l0) == l1 and cat.compose(r1, w) == r0]
        if len(mids) != 1:
            return False
    return True


# -- truncated simplicial finite sets ---------------------------------------

class SimplicialFinSet:
    """A truncated simplicial finite set: levels 0..depth with face and
    degeneracy maps given as explicit dicts."""

    def __init__(self, levels, faces, degens):
        self.levels = [tuple(lv) for lv in levels]
        self.faces = {k: dict(v) for k, v in faces.items()}      # (n, i): X_n -> X_{n-1}
        self.degens = {k: dict(v) for k, v in degens.items()}    # (n, i): X_n -> X_{n+1}

    @property
    def depth(self):
        return len(self.levels) - 1

    def level(self, n):
        return self.levels[n]

    def face(self, n, i):
        return self.faces[(n, i)]

    def degen(self, n, i):
        return self.degens[(n, i)]

    def source_map(self):
        """s = d_1 : X_1 -> X_0."""
        return self.faces[(1, 1)]

    def target_map(self):
        """t = d_0 : X_1 -> X_0."""
        return self.faces[(1, 0)]

    def validate_identities(self):
        """Simplicial identities on all provided levels."""
        report = []
        for n in range(2, self.depth + 1):
            for j in range(n + 1):
                for i in range(j):
                    lhs = {x: self.faces[(n - 1, i)][self.faces[(n, j)][x]]
                           for x in self.levels[n]}
                    rhs = {x: self.faces[(n - 1, j - 1)][self.faces[(n, i)][x]]
                           for x in self.levels[n]}
                    if lhs != rhs:
                        report.append(f"d_{i} d_{j} != d_{j-1} d_{i} at level {n}")
        for n in range(0, self.depth):
            for i in range(n + 1):
                if any(self.faces[(n + 1, i)][self.degens[(n, i)][x]] != x
                       for x in self.levels[n]):
                    report.append(f"d_{i} s_{i} != id at level {n}")
                if any(self.faces[(n + 1, i + 1)][self.degens[(n, i)][x]] != x
                       for x in self.levels[n]):
                    report.append(f"d_{i+1} s_{i} != id at level {n}")
        return report

    def is_segal(self, n) -> bool:
        """Does level n map bijectively onto the n-fold fiber product of
        level 1 over level 0 along its spine?"""
        if n <= 1:
            return True
        s, t = self.source_map(), self.target_map()
        spines = {}
        for x in self.levels[n]:
            spines[x] = self._spine(n, x)
        strings = set()
        for combo in itertools.product(self.levels[1], repeat=n):
            if all(t[combo[k]] == s[combo[k + 1]] for k in range(n - 1)):
                strings.add(combo)
        image = set(spines.values())
        return len(image) == len(spines) and image == strings

    def _spine(self, n, x):
        edges = []
        for k in range(1, n + 1):
            y = x
            for m in range(n, k, -1):
                y = self.faces[(m, m)][y]   # delete top vertex
            for m in range(k, 1, -1):
                y = self.faces[(m, 0)][y]   # delete bottom vertex
            edges.append(y)
        return tuple(edges)


def codiscrete(vertex_set, depth: int) -> SimplicialFinSet:
    """The codiscrete simplicial set on a finite set: level n is V^(n+1),
    faces delete a coordinate, degeneracies repeat one."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    vs = tuple(vertex_set)
    levels = [tuple(itertools.product(vs, repeat=n + 1)) for n in range(depth + 1)]
    faces = {}
    degens = {}
    for n in range(1, depth + 1):
        for i in range(n + 1):
            faces[(n, i)] = {x: x[:i] + x[i + 1:] for x in levels[n]}
    for n in range(0, depth):
        for i in range(n + 1):
            degens[(n, i)] = {x: x[:i + 1] + (x[i],) + x[i + 1:] for x in levels[n]}
    return SimplicialFinSet(levels, faces, degens)


# -- free constructions ------------------------------------------------------

SEQ_SEP = ">"


def _seq_name(seq):
    return SEQ_SEP.join(seq)


def free_act(vertex_set, m_max: int) -> FinCategory:
    """The free length-bounded category on a set: a morphism v0 -> v1 is a
    sequence (w_0=v0, ..., w_m=v1) with 1 <= m <= m_max, composed by
    concatenation.

    Length-0 sequences are included as the identities, so the result is an
    honest category; composites that would exceed the bound are absent from
    the table and recorded in the ``overflow`` attribute.
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    vs = tuple(vertex_set)
    homs = {}
    seq_of = {}
    for m in range(0, m_max + 1):
        for seq in itertools.product(vs, repeat=m + 1):
            name = _seq_name(seq)
            homs.setdefault((seq[0], seq[-1]), []).append(name)
            seq_of[name] = seq
    compose = {}
    overflow = set()
    for f, fs in seq_of.items():
        for g, gs in seq_of.items():
            if fs[-1] != gs[0]:
                continue
            combined = fs + gs[1:]
            if len(combined) - 1 <= m_max:
                compose[(g, f)] = _seq_name(combined)
            else:
                overflow.add((g, f))
    units = {v: _seq_name((v,)) for v in vs}
    cat = FinCategory(vs, {k: tuple(v) for k, v in homs.items()}, compose, units)
    cat.overflow = frozenset(overflow)
    cat.sequence_of = seq_of
    return cat


class Functor:
    """A functor between finite categories, as explicit object/morphism maps."""

    def __init__(self, source: FinCategory, target: FinCategory,
                 on_objects, on_morphisms):
        self.source = source
        self.target = target
        self.on_objects = dict(on_objects)
        self.on_morphisms = dict(on_morphisms)

    def validate(self):
        report = []
        src, tgt = self.source, self.target
        for x in src.objects:
            if self.on_objects.get(x) not in tgt.objects:
                report.append(f"object {x} has no image")
        for m in src.morphisms():
            fm = self.on_morphisms.get(m)
            if fm is None:
                report.append(f"morphism {m} has no image")
                continue
            if (tgt.src(fm) != self.on_objects[src.src(m)]
                    or tgt.tgt(fm) != self.on_objects[src.tgt(m)]):
                report.append(f"image of {m} has wrong endpoints")
        if report:
            return report
        for x in src.objects:
            if self.on_morphisms[src.unit(x)] != tgt.unit(self.on_objects[x]):
                report.append(f"unit of {x} not preserved")
        for f in src.morphisms():
            for g in src.morphisms():
                if src.tgt(f) != src.src(g):
                    continue
                gf = src.compose(g, f)
                if gf is None:
                    continue
                if self.on_morphisms[gf] != tgt.compose(
                        self.on_morphisms[g], self.on_morphisms[f]):
                    report.append(f"composition not preserved at ({g},{f})")
        return report


def free_cocart_second_factor(functor: Functor, fs: FactorizationSystem,
                              lifts=None):
    """Freely adjoin cocartesian lifts for right-class morphisms of the base.

    Given p : E -> B and a factorization system [left; right] on B, build the
    pullback E x_B Ar^right(B): objects are pairs (e, β) with β : p(e) -> b a
    right-class arrow; morphisms (e, β) -> (e', β') are pairs (φ : e -> e',
    v : b -> b') with β'∘p(φ) = v∘β.  The projection to B is ev_t.

    Returns (category, projection Functor, lift) where lift(obj, ψ) computes
    the distinguished cocartesian lift of ψ at obj: factor ψ∘β = β''∘u with u
    left-class, then lift u into E (via ``lifts[(e, u)]``; identities lift for
    free).
    """
    E, B = functor.source, functor.target
    if fs.category is not B:
        raise ValueError("factorization system must live on the functor's target")
    lifts = dict(lifts or {})

    objects = []
    for e in E.objects:
        pe = functor.on_objects[e]
        for b in B.objects:
            for beta in B.hom(pe, b):
                if beta in fs.right:
                    objects.append((e, beta))
    obj_name = {ob: f"({ob[0]},{ob[1]})" for ob in objects}

    homs = {}
    mor_data = {}
    for (e, beta) in objects:
        for (e2, beta2) in objects:
            ms = []
            for phi in E.hom(e, e2):
                pphi = functor.on_morphisms[phi]
                b, b2 = B.tgt(beta), B.tgt(beta2)
                for v in B.hom(b, b2):
                    if B.compose(beta2, pphi) == B.compose(v, beta):
                        name = f"({phi},{v})"
                        ms.append(name)
                        mor_data[name] = ((e, beta), (e2, beta2), phi, v)
            if ms:
                homs[(obj_name[(e, beta)], obj_name[(e2, beta2)])] = tuple(ms)

    compose = {}
    for n1, (s1, t1, phi1, v1) in mor_data.items():
        for n2, (s2, t2, phi2, v2) in mor_data.items():
            if t1 != s2:
                continue
            phi = E.compose(phi2, phi1)
            v = B.compose(v2, v1)
            if phi is not None and v is not None:
                compose[(n2, n1)] = f"({phi},{v})"
    units = {}
    for ob in objects:
        e, beta = ob
        units[obj_name[ob]] = f"({E.unit(e)},{B.unit(B.tgt(beta))})"
    cat = FinCategory(tuple(obj_name[ob] for ob in objects), homs, compose, units)

    proj = Functor(cat, B,
                   {obj_name[(e, beta)]: B.tgt(beta) for (e, beta) in objects},
                   {name: data[3] for name, data in mor_data.items()})

    def lift(ob, psi):
        e, beta = ob
        if B.src(psi) != B.tgt(beta):
            raise ValueError("lift domain mismatch")
        composite = B.compose(psi, beta)
        u, beta2 = factorize_morphism(fs, composite)
        if (e, u) in lifts:
            phi = lifts[(e, u)]
        elif u == B.unit(B.src(u)):
            phi = E.unit(e)
        else:
            raise NoFactorization(
                f"no lift datum for left-class morphism {u!r} at {e!r}")
        e2 = E.tgt(phi)
        if functor.on_objects[e2] != B.src(beta2):
            raise NoFactorization(f"lift of {u!r} at {e!r} lands off-fiber")
        return (obj_name[ob], obj_name[(e2, beta2)], f"({phi},{psi})",
                {"left": u, "right": beta2, "square_commutes":
                 B.compose(beta2, u) == B.compose(psi, beta)})

    return cat, proj, lift
