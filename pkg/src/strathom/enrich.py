"""Enrichment backends: finite sets (cartesian) and exact linear modules.

A Set-enriched category with discrete objects is just a `FinCategory`; the
linear backend gets its own presentation class with structure constants over
an exact ring.  Diagonal-flavoured functoriality lives here too: the span
pushforward (pull back, then take the indexed product over fibers) and its
restriction along pointed maps.
"""

from __future__ import annotations

import itertools

from .exactla import Ring, SparseMat, ring_from_name
from .fincat import FinCategory, SimplicialFinSet, validate_category
from .manifold import FinSpan


# -- the cartesian Set backend -------------------------------------------------

SET_UNIT = ((),)  # one-element set: the empty tuple


def tensor_all_sets(values):
    """Product of finite sets in canonical order; the empty product is the
    unit (a single empty tuple)."""
    return tuple(itertools.product(*values))


def sets_bijective(a, b):
    """Sets agree up to bijection; returns a witness (or None)."""
    if len(a) != len(b):
        return None
    return dict(zip(sorted(a, key=repr), sorted(b, key=repr)))


def corr_pushforward(span: FinSpan, family):
    """Push a family of finite sets through a span.

    family maps each element of span.left to a finite set; the result maps
    t to the product over the fiber of the right leg:

        (V_s)_{s in S}  |->  ( prod_{u in psi^{-1}(t)} V_{phi(u)} )_{t in T}

    Elements are tuples of (apex element, value) pairs, fiber sorted by
    apex element, so outputs are deterministic.
    """
    out = {}
    for t in span.right:
        fiber = sorted((u for u in span.apex if span.to_right[u] == t), key=repr)
        choices = [family[span.to_left[u]] for u in fiber]
        out[t] = tuple(tuple(zip(fiber, combo))
                       for combo in itertools.product(*choices))
    return out


def corr_pushforward_witness(a: FinSpan, b: FinSpan, family, inner=None):
    """The canonical bijection between pushing through a composite span and
    composing the pushforwards.

    Returns, per element of b.right, a dict from composite-span elements to
    two-step elements.  Raises if the regrouping fails to be bijective.
    `inner` may carry a precomputed pushforward of the family through `a`.
    """
    from .manifold import compose_spans
    comp = compose_spans(a, b)
    step1 = corr_pushforward(a, family) if inner is None else inner
    step2 = corr_pushforward(b, step1)
    direct = corr_pushforward(comp, family)
    witness = {}
    for t in b.right:
        table = {}
        for elem in direct[t]:
            groups = {}
            for ((u, v), val) in elem:
                groups.setdefault(v, []).append((u, val))
            regrouped = tuple(
                (v, tuple(sorted(groups.get(v, []), key=lambda p: repr(p[0]))))
                for v in sorted((v for v in b.apex if b.to_right[v] == t),
                                key=repr))
            table[elem] = regrouped
        if set(table.values()) != set(step2[t]) or len(set(table.values())) != len(table):
            raise AssertionError(f"pushforward functoriality fails at {t!r}")
        witness[t] = table
    return witness


def span_of_pointed_map(partial_map, left, right) -> FinSpan:
    """The span of a pointed map: S <- (defined locus) -> T, where the
    partial map sends undefined elements to the basepoint (None)."""
    apex = [s for s in left if partial_map.get(s) is not None]
    return FinSpan(left, apex, right,
                   {s: s for s in apex},
                   {s: partial_map[s] for s in apex})


def pointed_pushforward(partial_map, left, right, family):
    """Monodromy of the plain symmetric monoidal deloop along a pointed map:
    pull back along the defined locus, then multiply over fibers.  Written
    independently of `corr_pushforward` so the two can be compared."""
    out = {}
    for t in right:
        fiber = sorted((s for s in left if partial_map.get(s) == t), key=repr)
        out[t] = tuple(tuple(zip(fiber, combo))
                       for combo in itertools.product(*(family[s] for s in fiber)))
    return out


# -- the exact linear backend ---------------------------------------------------

class Module:
    """A based free module over an exact ring."""

    def __init__(self, ring: Ring, basis):
        self.ring = ring
        self.basis = tuple(basis)
        self.index = {b: i for i, b in enumerate(self.basis)}

    @property
    def dim(self):
        return len(self.basis)

    def __repr__(self):
        return f"Module({self.ring.name}, dim={self.dim})"


def tensor_all_modules(ring, modules):
    """Based tensor product in canonical order; empty input gives the unit."""
    return Module(ring, tuple(itertools.product(*(m.basis for m in modules))))


class LinearCategory:
    """A category enriched in based free modules, by structure constants.

    hom_basis[(x, y)] lists the basis of hom(x, y); sc[(x, y, z)][(i, j)] is
    the expansion of "i then j" (i in hom(x,y), j in hom(y,z)) over the basis
    of hom(x, z); units[x] expands the image of 1 in hom(x, x).
    """

    def __init__(self, ring: Ring, objects, hom_basis, sc, units):
        self.ring = ring
        self.objects = tuple(objects)
        self.hom_basis = {k: tuple(v) for k, v in hom_basis.items()}
        self.sc = {k: {pair: dict(vec) for pair, vec in table.items()}
                   for k, table in sc.items()}
        self.units = {x: dict(vec) for x, vec in units.items()}

    def hom(self, x, y):
        return self.hom_basis.get((x, y), ())

    def dim(self, x, y):
        return len(self.hom(x, y))

    def compose_basis(self, x, y, z, i, j):
        """Expansion of (i then j) in hom(x, z), as a dict basis -> coeff."""
        return self.sc.get((x, y, z), {}).get((i, j), {})

    def unit_vector(self, x):
        return self.units.get(x, {})

    def to_json_dict(self):
        def show_vec(vec):
            return {str(k): self.ring.show(v) for k, v in sorted(vec.items(),
                                                                 key=repr)}
        return {
            "ring": self.ring.name,
            "objects": list(self.objects),
            "hom_dims": {f"{x}->{y}": list(basis)
                         for (x, y), basis in sorted(self.hom_basis.items())},
            "structure_constants": {
                f"{x},{y},{z}": {f"{i},{j}": show_vec(vec)
                                 for (i, j), vec in sorted(table.items())}
                for (x, y, z), table in sorted(self.sc.items())},
            "units": {x: show_vec(vec) for x, vec in sorted(self.units.items())},
        }

    @classmethod
    def from_json_dict(cls, data):
        ring = ring_from_name(data["ring"])
        hom_basis = {}
        for key, basis in data.get("hom_dims", {}).items():
            x, _, y = key.partition("->")
            if not _:
                raise ValueError(f"bad hom key {key!r}")
            if isinstance(basis, int):
                basis = [f"b{i}" for i in range(basis)]
            hom_basis[(x, y)] = tuple(basis)
        sc = {}
        for key, table in data.get("structure_constants", {}).items():
            parts = key.split(",")
            if len(parts) != 3:
                raise ValueError(f"bad structure-constant key {key!r}")
            x, y, z = parts
            entry = {}
            for pair_key, vec in table.items():
                i, _, j = pair_key.partition(",")
                if not _:
                    raise ValueError(f"bad basis pair {pair_key!r}")
                entry[(i, j)] = {k: ring.parse(v) for k, v in vec.items()}
            sc[(x, y, z)] = entry
        units = {x: {k: ring.parse(v) for k, v in vec.items()}
                 for x, vec in data.get("units", {}).items()}
        return cls(ring, data["objects"], hom_basis, sc, units)


def validate_linear_category(cat: LinearCategory):
    """Associativity and unit laws as identities of structure constants."""
    report = []
    ring = cat.ring
    objs = cat.objects

    def compose_vec(x, y, z, vec_xy, vec_yz):
        out = {}
        for i, ci in vec_xy.items():
            for j, cj in vec_yz.items():
                for k, c in cat.compose_basis(x, y, z, i, j).items():
                    out[k] = ring.add(out.get(k, 0), ring.mul(ring.mul(ci, cj), c))
        return {k: v for k, v in out.items() if not ring.is_zero(v)}

    for w in objs:
        for x in objs:
            for y in objs:
                for z in objs:
                    for i in cat.hom(w, x):
                        for j in cat.hom(x, y):
                            for k in cat.hom(y, z):
                                left = compose_vec(
                                    w, y, z,
                                    cat.compose_basis(w, x, y, i, j), {k: 1})
                                right = compose_vec(
                                    w, x, z, {i: 1},
                                    cat.compose_basis(x, y, z, j, k))
                                if left != right:
                                    report.append(
                                        f"associativity fails at ({i},{j},{k})")
    for x in objs:
        u = cat.unit_vector(x)
        if not u:
            report.append(f"missing unit at {x}")
            continue
        for y in objs:
            for i in cat.hom(x, y):
                if compose_vec(x, x, y, u, {i: 1}) != {i: 1}:
                    report.append(f"left unit law fails at {i}")
            for i in cat.hom(y, x):
                if compose_vec(y, x, x, {i: 1}, u) != {i: 1}:
                    report.append(f"right unit law fails at {i}")
    return report


def validate_enriched_cat(cat):
    """Dispatch on the backend: FinCategory (Set) or LinearCategory."""
    if isinstance(cat, FinCategory):
        return validate_category(cat)
    if isinstance(cat, LinearCategory):
        return validate_linear_category(cat)
    raise TypeError(f"not an enriched category presentation: {cat!r}")


# -- algebra builders ------------------------------------------------------------

def algebra_from_table(ring, basis, table, unit_vec, obj="*") -> LinearCategory:
    """One-object linear category from multiplication structure constants;
    table[(i, j)] expands i·j (i first)."""
    sc = {(obj, obj, obj): {pair: dict(vec) for pair, vec in table.items()}}
    return LinearCategory(ring, (obj,), {(obj, obj): tuple(basis)}, sc,
                          {obj: dict(unit_vec)})


def ground_ring_algebra(ring) -> LinearCategory:
    return algebra_from_table(ring, ("1",), {("1", "1"): {"1": 1}}, {"1": 1})


def matrix_algebra(ring, n: int) -> LinearCategory:
    """n x n matrices with the elementary-matrix basis E_{ab}."""
    basis = [f"E{a}{b}" for a in range(n) for b in range(n)]
    table = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    prod = {f"E{a}{d}": 1} if b == c else {}
                    table[(f"E{a}{b}", f"E{c}{d}")] = prod
    unit = {f"E{a}{a}": 1 for a in range(n)}
    return algebra_from_table(ring, basis, table, unit)


def monoid_algebra(ring, elements, mult, unit) -> LinearCategory:
    """The monoid algebra: basis the elements, product from the table."""
    table = {(a, b): {mult[(a, b)]: 1} for a in elements for b in elements}
    return algebra_from_table(ring, elements, table, {unit: 1})


def group_algebra(ring, elements, mult, unit) -> LinearCategory:
    return monoid_algebra(ring, elements, mult, unit)


def truncated_polynomial_algebra(ring, n: int) -> LinearCategory:
    """k[x]/(x^n), basis 1, x, ..., x^{n-1}."""
    basis = [f"x{k}" for k in range(n)]
    table = {}
    for a in range(n):
        for b in range(n):
            table[(f"x{a}", f"x{b}")] = {f"x{a+b}": 1} if a + b < n else {}
    return algebra_from_table(ring, basis, table, {"x0": 1})


def product_algebra(a: LinearCategory, b: LinearCategory) -> LinearCategory:
    """Product of two one-object algebras over the same ring."""
    if a.ring != b.ring:
        raise ValueError("ring mismatch")
    obj = "*"
    basis = [f"l.{i}" for i in a.hom(obj, obj)] + [f"r.{j}" for j in b.hom(obj, obj)]
    table = {}
    for i in a.hom(obj, obj):
        for j in a.hom(obj, obj):
            table[(f"l.{i}", f"l.{j}")] = {
                f"l.{k}": c for k, c in a.compose_basis(obj, obj, obj, i, j).items()}
    for i in b.hom(obj, obj):
        for j in b.hom(obj, obj):
            table[(f"r.{i}", f"r.{j}")] = {
                f"r.{k}": c for k, c in b.compose_basis(obj, obj, obj, i, j).items()}
    for i in a.hom(obj, obj):
        for j in b.hom(obj, obj):
            table[(f"l.{i}", f"r.{j}")] = {}
            table[(f"r.{j}", f"l.{i}")] = {}
    unit = {f"l.{k}": c for k, c in a.unit_vector(obj).items()}
    unit.update({f"r.{k}": c for k, c in b.unit_vector(obj).items()})
    return algebra_from_table(a.ring, basis, table, unit)


def zero_algebra(ring) -> LinearCategory:
    """The zero-dimensional algebra (empty basis)."""
    return LinearCategory(ring, ("*",), {("*", "*"): ()}, {}, {"*": {}})


def commutator_cokernel_invariants(alg: LinearCategory):
    """Oracle for degree-0 Hochschild homology: invariants of A/[A, A],
    the cokernel of a ⊗ b  ->  ab - ba."""
    obj = alg.objects[0]
    basis = alg.hom(obj, obj)
    idx = {b: i for i, b in enumerate(basis)}
    cols = []
    for a in basis:
        for b in basis:
            col = {}
            for k, c in alg.compose_basis(obj, obj, obj, a, b).items():
                col[idx[k]] = col.get(idx[k], 0) + c
            for k, c in alg.compose_basis(obj, obj, obj, b, a).items():
                col[idx[k]] = col.get(idx[k], 0) - c
            cols.append({i: v for i, v in col.items() if not alg.ring.is_zero(v)})
    mat = SparseMat.from_columns(len(basis), cols)
    from .exactla import cokernel_invariants
    return cokernel_invariants(mat, alg.ring)


# -- the nerve ---------------------------------------------------------------------

def nerve(cat: FinCategory, depth: int) -> SimplicialFinSet:
    """The nerve of a finite category, truncated at the given depth.

    Level n is the set of composable n-strings (f_1, ..., f_n); level 0 is
    the object set.  Faces compose (d_0 drops at the source end, so the
    1-level structure maps are s = d_1, t = d_0); degeneracies insert units.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    levels = [tuple((x,) for x in cat.objects)]
    for n in range(1, depth + 1):
        strings = []
        if n == 1:
            strings = [(m,) for m in cat.morphisms()]
        else:
            for prefix in levels[n - 1]:
                last_tgt = cat.tgt(prefix[-1])
                strings.extend(prefix + (m,) for m in cat.morphisms()
                               if cat.src(m) == last_tgt)
        levels.append(tuple(sorted(set(strings))))
    faces = {}
    degens = {}
    for n in range(1, depth + 1):
        for i in range(n + 1):
            fm = {}
            for s in levels[n]:
                if n == 1:
                    fm[s] = (cat.tgt(s[0]),) if i == 0 else (cat.src(s[0]),)
                elif i == 0:
                    fm[s] = s[1:]
                elif i == n:
                    fm[s] = s[:-1]
                else:
                    fm[s] = s[:i - 1] + (cat.compose(s[i], s[i - 1]),) + s[i + 1:]
            faces[(n, i)] = fm
    for n in range(0, depth):
        for i in range(n + 1):
            dm = {}
            for s in levels[n]:
                if n == 0:
                    dm[s] = (cat.unit(s[0]),)
                else:
                    anchor = cat.src(s[0]) if i == 0 else cat.tgt(s[i - 1])
                    dm[s] = s[:i] + (cat.unit(anchor),) + s[i:]
            degens[(n, i)] = dm
    return SimplicialFinSet(levels, faces, degens)
