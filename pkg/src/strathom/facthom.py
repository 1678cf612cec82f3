"""Factorization homology engines.

Disk-stratified evaluation is the finite limit indexed by entering paths
(one level-1 coordinate per edge, one level-0 coordinate per vertex, matched
by source and target).  Over the circle the computation is the cyclic bar
construction: trace classes at pi_0 in the Set backend, Hochschild and
cyclic homology of the chain complex in the exact linear backend.
"""

from __future__ import annotations

import itertools

from .exactla import SparseMat, homology_group
from .fincat import FinCategory, SimplicialFinSet, UnionFind
from .enrich import LinearCategory, tensor_all_sets
from .manifold import GraphManifold


# -- the entering-paths limit --------------------------------------------------

def cart_facthom_disk(r: GraphManifold, y: SimplicialFinSet,
                      check_segal: int = 0):
    """Cartesian factorization homology of a category object over a
    disk-stratified 1-manifold.

    The value is the limit over entering paths: an element assigns a
    1-simplex to each edge and a 0-simplex to each vertex, compatibly with
    the incidence maps s = d_1 and t = d_0.  Elements come back as
    (vertex labels, edge labels) aligned with the sorted cell lists.
    """
    if not r.is_disk_stratified:
        raise ValueError("cart_facthom_disk requires a disk-stratified manifold")
    if check_segal:
        for n in range(2, check_segal + 1):
            if n <= y.depth and not y.is_segal(n):
                raise ValueError(f"input fails the Segal condition at level {n}")
    s, t = y.source_map(), y.target_map()
    verts = sorted(r.vertices)
    edges = sorted(r.edges, key=lambda e: e.id)
    out = []
    for vcombo in itertools.product(y.level(0), repeat=len(verts)):
        assign = dict(zip(verts, vcombo))
        pools = []
        for e in edges:
            pool = [m for m in y.level(1)
                    if s[m] == assign[e.src] and t[m] == assign[e.dst]]
            if not pool:
                pools = None
                break
            pools.append(pool)
        if pools is None:
            continue
        for ecombo in itertools.product(*pools):
            out.append((vcombo, ecombo))
    return tuple(sorted(out))


def enr_facthom_disk(r: GraphManifold, cat, groupoid_isos=()):
    """Enriched factorization homology over a disk-stratified manifold:
    the value at the terminal disk-refinement, i.e. the coproduct over vertex
    labelings of the tensor over edges of hom(label(src), label(dst)).

    Set backend (a FinCategory): returns the finite set of (labeling,
    edge-decoration) pairs.  Linear backend: returns the based Module.

    With `groupoid_isos` -- designated invertible morphisms making the
    object set a genuine groupoid -- labelings related by transporting
    along an isomorphism are identified: a quotient in the Set backend,
    coinvariants (fields only) in the linear one.
    """
    if not r.is_disk_stratified:
        raise ValueError("enr_facthom_disk requires a disk-stratified manifold")
    verts = sorted(r.vertices)
    edges = sorted(r.edges, key=lambda e: e.id)
    if isinstance(cat, FinCategory):
        out = []
        for lam in itertools.product(cat.objects, repeat=len(verts)):
            assign = dict(zip(verts, lam))
            homsets = [cat.hom(assign[e.src], assign[e.dst]) for e in edges]
            for decor in tensor_all_sets(homsets):
                out.append((lam, decor))
        if not groupoid_isos:
            return tuple(sorted(out))
        return _groupoid_quotient_set(cat, verts, edges, out, groupoid_isos)
    if isinstance(cat, LinearCategory):
        from .enrich import Module
        basis = []
        for lam in itertools.product(cat.objects, repeat=len(verts)):
            assign = dict(zip(verts, lam))
            homs = [cat.hom(assign[e.src], assign[e.dst]) for e in edges]
            for decor in itertools.product(*homs):
                basis.append((lam, decor))
        module = Module(cat.ring, tuple(sorted(basis)))
        if not groupoid_isos:
            return module
        if not cat.ring.is_field:
            raise NotImplementedError(
                "linear groupoid coinvariants are supported over fields only")
        return _groupoid_coinvariants(cat, verts, edges, module, groupoid_isos)
    raise TypeError(f"unsupported enrichment {cat!r}")


def _iso_inverse(cat: FinCategory, alpha):
    x, y = cat.src(alpha), cat.tgt(alpha)
    for w in cat.hom(y, x):
        if (cat.compose_table.get((w, alpha)) == cat.unit(x)
                and cat.compose_table.get((alpha, w)) == cat.unit(y)):
            return w
    raise ValueError(f"designated groupoid morphism {alpha!r} is not invertible")


def _transport_element(cat, verts, edges, element, vi, alpha, alpha_inv):
    lam, decor = element
    v = verts[vi]
    lam2 = lam[:vi] + (cat.tgt(alpha),) + lam[vi + 1:]
    decor2 = list(decor)
    for ei, e in enumerate(edges):
        f = decor2[ei]
        if e.src == v:
            f = cat.compose(f, alpha_inv)
        if e.dst == v:
            f = cat.compose(alpha, f)
        decor2[ei] = f
    return (lam2, tuple(decor2))


def _groupoid_quotient_set(cat, verts, edges, elements, isos):
    inverses = {alpha: _iso_inverse(cat, alpha) for alpha in isos}
    uf = UnionFind(elements)
    for element in elements:
        lam, _ = element
        for vi in range(len(verts)):
            for alpha, alpha_inv in inverses.items():
                if cat.src(alpha) != lam[vi]:
                    continue
                uf.union(element, _transport_element(
                    cat, verts, edges, element, vi, alpha, alpha_inv))
    return tuple(block[0] for block in uf.classes())


def _groupoid_coinvariants(cat, verts, edges, module, isos):
    """Coinvariants of the free module under basis transport: the cokernel
    of the stacked maps T_alpha - 1.

    Linear groupoid isomorphisms are given as triples (x, y, b) with b an
    invertible basis element of hom(x, y); the inverse is recovered from the
    structure constants.
    """
    from .enrich import Module
    ring = cat.ring
    one = ring.normalize(1)

    resolved = []
    for (x, y, b) in isos:
        inv = None
        for w in cat.hom(y, x):
            fwd = cat.compose_basis(x, y, x, b, w)
            bwd = cat.compose_basis(y, x, y, w, b)
            if (fwd == cat.unit_vector(x) and bwd == cat.unit_vector(y)):
                inv = w
                break
        if inv is None:
            raise ValueError(f"designated iso {b!r} of hom({x},{y}) "
                             "is not invertible")
        resolved.append((x, y, b, inv))

    vindex = {v: i for i, v in enumerate(verts)}

    def transport(element, vi, x, y, b, binv):
        lam, decor = element
        v = verts[vi]
        lam2 = lam[:vi] + (y,) + lam[vi + 1:]
        parts = []
        for ei, e in enumerate(edges):
            t0 = lam[vindex[e.dst]]
            s1 = lam2[vindex[e.src]]
            coeffs = {decor[ei]: one}
            if e.src == v:
                # precompose with the inverse: hom(x, t0) -> hom(y, t0)
                new = {}
                for g, c in coeffs.items():
                    for k, c2 in cat.compose_basis(y, x, t0, binv, g).items():
                        new[k] = ring.add(new.get(k, 0), ring.mul(c, c2))
                coeffs = new
            if e.dst == v:
                # postcompose: hom(s1, x) -> hom(s1, y)
                new = {}
                for g, c in coeffs.items():
                    for k, c2 in cat.compose_basis(s1, x, y, g, b).items():
                        new[k] = ring.add(new.get(k, 0), ring.mul(c, c2))
                coeffs = new
            parts.append(coeffs)
        out = {}
        for combo in itertools.product(*(p.items() for p in parts)):
            label = (lam2, tuple(g for g, _ in combo))
            coeff = one
            for _, c in combo:
                coeff = ring.mul(coeff, c)
            out[label] = ring.add(out.get(label, 0), coeff)
        return out

    cols = []
    index = module.index
    for element in module.basis:
        lam, _ = element
        for vi in range(len(verts)):
            for (x, y, b, binv) in resolved:
                if lam[vi] != x:
                    continue
                col = {index[element]: ring.normalize(-1)}
                for label, c in transport(element, vi, x, y, b, binv).items():
                    col[index[label]] = ring.add(col.get(index[label], 0), c)
                col = {i: v for i, v in col.items() if not ring.is_zero(v)}
                if col:
                    cols.append(col)
    mat = SparseMat.from_columns(module.dim, cols)
    dim = module.dim - mat.rank(ring)
    return Module(ring, tuple(f"coinv{i}" for i in range(dim)))


def facthom_set_pi0(m: GraphManifold, cat: FinCategory):
    """pi_0 of Set-enriched factorization homology over a general stratified
    1-manifold: the product over connected components, disk components
    through the terminal-refinement formula and circles through trace
    classes."""
    component_values = []
    for verts, edge_ids in m.graph_components():
        sub = m.subgraph(verts, edge_ids)
        component_values.append(enr_facthom_disk(sub, cat))
    table = None
    if m.circles:
        table = thh_set_pi0(cat)
        component_values.extend([tuple(table.class_representatives())] * m.circles)
    return tensor_all_sets(component_values)


# -- trace classes (pi_0 of THH in the Set backend) ------------------------------

class TraceClassTable:
    """Endomorphisms modulo the trace relations g∘f ~ f∘g.

    Classes are canonicalized by least representative; the rotation action
    is trivial on classes by construction (the level-1 cyclic operator swaps
    the two composition orders, which the relations identify).
    """

    def __init__(self, cat: FinCategory):
        self.category = cat
        self.elements = tuple(sorted(m for m in cat.morphisms()
                                     if cat.src(m) == cat.tgt(m)))
        self._uf = UnionFind(self.elements)
        for (g, f), h in cat.compose_table.items():
            if cat.src(f) == cat.tgt(g):
                fg = cat.compose_table.get((f, g))
                if fg is not None:
                    # h = g∘f is an endomorphism of src(f); fg one of src(g)
                    self._uf.union(h, fg)
        self._classes = self._uf.classes()
        self._rep = {}
        for block in self._classes:
            for m in block:
                self._rep[m] = block[0]

    def class_of(self, endo):
        return self._rep[endo]

    def class_representatives(self):
        return tuple(block[0] for block in self._classes)

    def classes(self):
        return self._classes

    def members(self, rep):
        for block in self._classes:
            if block[0] == rep:
                return block
        raise KeyError(rep)

    def __len__(self):
        return len(self._classes)

    def word_class(self, word):
        """Class of a cyclic word: the class of its full composite; words are
        tuples of composable morphisms closing up at the start."""
        out = word[0]
        for m in word[1:]:
            out = self.category.compose(m, out)
            if out is None:
                raise ValueError("word leaves the composition bound")
        return self.class_of(out)

    def to_json_dict(self):
        return {"classes": [{"rep": block[0], "members": list(block)}
                            for block in self._classes]}


def thh_set_pi0(cat: FinCategory) -> TraceClassTable:
    return TraceClassTable(cat)


# -- the cyclic bar construction --------------------------------------------------

def _rotate(xs, gs):
    return (xs[-1],) + xs[:-1], (gs[-1],) + gs[:-1]


class SetCyclicLevel:
    """Level n of the cyclic bar construction in the Set backend: tuples of
    objects (x_0..x_n) with g_i in hom(x_i, x_{i+1 cyc}), plus the structure
    maps as explicit dicts."""

    def __init__(self, cat: FinCategory, n: int):
        self.n = n
        self.elements = tuple(sorted(_set_bar_elements(cat, n)))
        self.faces = []
        if n >= 1:
            for i in range(n + 1):
                fm = {}
                for (xs, gs) in self.elements:
                    if i < n:
                        comp = cat.compose(gs[i + 1], gs[i])
                        fm[(xs, gs)] = (xs[:i + 1] + xs[i + 2:],
                                        gs[:i] + (comp,) + gs[i + 2:])
                    else:
                        comp = cat.compose(gs[0], gs[n])
                        fm[(xs, gs)] = ((xs[n],) + xs[1:n],
                                        (comp,) + gs[1:n])
                self.faces.append(fm)
        self.degens = []
        for i in range(n + 1):
            dm = {}
            for (xs, gs) in self.elements:
                idx = (i + 1) % (n + 1)
                nx = xs[:i + 2] + (xs[idx],) + xs[i + 2:]
                ng = gs[:i + 1] + (cat.unit(xs[idx]),) + gs[i + 1:]
                dm[(xs, gs)] = (nx, ng)
            self.degens.append(dm)
        self.cyclic = {(xs, gs): _rotate(xs, gs) for (xs, gs) in self.elements}


def _set_bar_elements(cat: FinCategory, n: int):
    for xs in itertools.product(cat.objects, repeat=n + 1):
        homs = [cat.hom(xs[i], xs[(i + 1) % (n + 1)]) for i in range(n + 1)]
        for gs in itertools.product(*homs):
            yield (xs, gs)


def cyclic_bar_set_level(cat: FinCategory, n: int) -> SetCyclicLevel:
    return SetCyclicLevel(cat, n)


def _linear_bar_basis(cat: LinearCategory, n: int):
    basis = []
    for xs in itertools.product(cat.objects, repeat=n + 1):
        homs = [cat.hom(xs[i], xs[(i + 1) % (n + 1)]) for i in range(n + 1)]
        for gs in itertools.product(*homs):
            basis.append((xs, gs))
    return sorted(basis)


class ChainComplexBundle:
    """The cyclic bar chain complex of a linear category, with the mixed
    structure: boundaries b, signed cyclic operators, norms, the extra
    degeneracy, and the resulting degree-raising operator B = (1 - t) s N.
    """

    def __init__(self, cat: LinearCategory, n_max: int):
        self.category = cat
        self.ring = cat.ring
        self.n_max = n_max
        self.bases = [_linear_bar_basis(cat, n) for n in range(n_max + 1)]
        self.index = [{b: i for i, b in enumerate(basis)} for basis in self.bases]
        self.dims = [len(b) for b in self.bases]
        self.boundaries = [None]  # b_0 is undefined
        for n in range(1, n_max + 1):
            self.boundaries.append(self._boundary(n))
        self.cyclic = [self._cyclic(n) for n in range(n_max + 1)]
        self.norms = [self._norm(n) for n in range(n_max + 1)]
        self.extra_degens = [self._extra_degen(n) for n in range(n_max)]
        self.connes_b = [self._connes_b(n) for n in range(n_max)]

    def _face_columns(self, n, i):
        """d_i : C_n -> C_{n-1} as a dict-of-columns."""
        cat = self.category
        cols = []
        for (xs, gs) in self.bases[n]:
            col = {}
            if i < n:
                x, y, z = xs[i], xs[i + 1], xs[(i + 2) % (n + 1)]
                vec = cat.compose_basis(x, y, z, gs[i], gs[i + 1])
                new_xs = xs[:i + 1] + xs[i + 2:]
                for k, c in vec.items():
                    tgt = (new_xs, gs[:i] + (k,) + gs[i + 2:])
                    col[self.index[n - 1][tgt]] = col.get(
                        self.index[n - 1][tgt], 0) + c
            else:
                vec = cat.compose_basis(xs[n], xs[0], xs[1], gs[n], gs[0])
                new_xs = (xs[n],) + xs[1:n]
                for k, c in vec.items():
                    tgt = (new_xs, (k,) + gs[1:n])
                    col[self.index[n - 1][tgt]] = col.get(
                        self.index[n - 1][tgt], 0) + c
            cols.append(col)
        return cols

    def face_matrix(self, n, i) -> SparseMat:
        """d_i : C_n -> C_{n-1} (unsigned)."""
        return SparseMat.from_columns(self.dims[n - 1],
                                      self._face_columns(n, i))

    def degeneracy_matrix(self, n, i) -> SparseMat:
        """s_i : C_n -> C_{n+1}, inserting the unit after the i-th factor."""
        cat = self.category
        cols = []
        for (xs, gs) in self.bases[n]:
            idx = (i + 1) % (n + 1)
            nx = xs[:i + 2] + (xs[idx],) + xs[i + 2:]
            col = {}
            for k, c in cat.unit_vector(xs[idx]).items():
                ng = gs[:i + 1] + (k,) + gs[i + 1:]
                col[self.index[n + 1][(nx, ng)]] = c
            cols.append(col)
        return SparseMat.from_columns(self.dims[n + 1], cols)

    def _boundary(self, n) -> SparseMat:
        ring = self.ring
        total = [dict() for _ in range(self.dims[n])]
        for i in range(n + 1):
            sign = 1 if i % 2 == 0 else -1
            for j, col in enumerate(self._face_columns(n, i)):
                acc = total[j]
                for row, v in col.items():
                    w = ring.add(acc.get(row, 0), ring.mul(sign, v))
                    if ring.is_zero(w):
                        acc.pop(row, None)
                    else:
                        acc[row] = w
        return SparseMat.from_columns(self.dims[n - 1], total)

    def _cyclic(self, n) -> SparseMat:
        """The signed cyclic operator t_n = (-1)^n * rotation."""
        sign = 1 if n % 2 == 0 else -1
        cols = []
        for (xs, gs) in self.bases[n]:
            cols.append({self.index[n][_rotate(xs, gs)]: sign})
        return SparseMat.from_columns(self.dims[n], cols)

    def _norm(self, n) -> SparseMat:
        t = self.cyclic[n]
        acc = SparseMat.identity(self.dims[n])
        out = SparseMat.identity(self.dims[n])
        for _ in range(n):
            acc = t.mul(acc)
            out = out.add(acc)
        return out

    def _extra_degen(self, n) -> SparseMat:
        """s : C_n -> C_{n+1}, inserting the unit in front."""
        cat = self.category
        cols = []
        for (xs, gs) in self.bases[n]:
            col = {}
            for k, c in cat.unit_vector(xs[0]).items():
                tgt = ((xs[0],) + xs, (k,) + gs)
                col[self.index[n + 1][tgt]] = c
            cols.append(col)
        return SparseMat.from_columns(self.dims[n + 1], cols)

    def _connes_b(self, n) -> SparseMat:
        """B = (1 - t) s N : C_n -> C_{n+1}."""
        one_minus_t = SparseMat.identity(self.dims[n + 1]).add(
            self.cyclic[n + 1].scale(-1))
        return one_minus_t.mul(self.extra_degens[n]).mul(self.norms[n])

    def _is_zero(self, mat: SparseMat) -> bool:
        return all(self.ring.is_zero(v) for row in mat.rows
                   for v in row.values())

    def validate(self):
        """The defining identities: b b = 0, b B + B b = 0, B B = 0."""
        report = []
        for n in range(2, self.n_max + 1):
            if not self._is_zero(self.boundaries[n - 1].mul(self.boundaries[n])):
                report.append(f"b b != 0 out of degree {n}")
        for n in range(1, self.n_max):
            mixed = self.boundaries[n + 1].mul(self.connes_b[n]).add(
                self.connes_b[n - 1].mul(self.boundaries[n]))
            if not self._is_zero(mixed):
                report.append(f"b B + B b != 0 at degree {n}")
        for n in range(0, self.n_max - 1):
            if not self._is_zero(self.connes_b[n + 1].mul(self.connes_b[n])):
                report.append(f"B B != 0 at degree {n}")
        return report


def connes_B(cat: LinearCategory, n: int) -> SparseMat:
    """The degree-raising operator on the cyclic bar complex at degree n."""
    return ChainComplexBundle(cat, n + 1).connes_b[n]


class LinearCyclicLevel:
    """Level n of the linear cyclic bar construction: the based module with
    its face, degeneracy and signed cyclic operator matrices."""

    def __init__(self, cat: LinearCategory, n: int):
        from .enrich import Module
        bundle = ChainComplexBundle(cat, n + 1)
        self.n = n
        self.module = Module(cat.ring, tuple(bundle.bases[n]))
        self.faces = ([bundle.face_matrix(n, i) for i in range(n + 1)]
                      if n >= 1 else [])
        self.degens = [bundle.degeneracy_matrix(n, i) for i in range(n + 1)]
        self.cyclic = bundle.cyclic[n]


def cyclic_bar_level(cat, n: int):
    """Level n of the cyclic bar construction, dispatched on the backend."""
    if isinstance(cat, FinCategory):
        return SetCyclicLevel(cat, n)
    if isinstance(cat, LinearCategory):
        return LinearCyclicLevel(cat, n)
    raise TypeError(f"unsupported enrichment {cat!r}")


def hochschild_homology(cat: LinearCategory, n_max: int):
    """Homology of (C_*, b) in degrees 0..n_max; each entry is a dict with
    the degree, the free rank, and the torsion coefficients (empty over a
    field)."""
    complex_ = ChainComplexBundle(cat, n_max + 1)
    out = []
    for n in range(n_max + 1):
        b_n = complex_.boundaries[n] if n >= 1 else None
        b_next = complex_.boundaries[n + 1]
        rank, torsion = homology_group(complex_.dims[n], b_n, b_next,
                                       cat.ring)
        out.append({"degree": n, "rank": rank, "torsion": list(torsion)})
    return out


def _total_complex(complex_: ChainComplexBundle, n_max: int):
    """First-quadrant (b, B) total complex: Tot_n = C_n + C_{n-2} + ...;
    the differential sends the i-th block by b into block i and by B into
    block i - 1 of the target."""
    dims = []
    offsets = []
    for n in range(n_max + 2):
        blocks = [n - 2 * i for i in range(n // 2 + 1)]
        offs = []
        total = 0
        for d in blocks:
            offs.append(total)
            total += complex_.dims[d]
        dims.append(total)
        offsets.append((blocks, offs))
    mats = [None]
    for n in range(1, n_max + 2):
        blocks, offs = offsets[n]
        _, toffs = offsets[n - 1]
        m = SparseMat(dims[n - 1], dims[n])
        for bi, d in enumerate(blocks):
            src_off = offs[bi]
            if d >= 1:
                # b : C_d -> C_{d-1}, target block index bi
                t_off = toffs[bi]
                for i, row in enumerate(complex_.boundaries[d].rows):
                    for j, v in row.items():
                        m.rows[t_off + i][src_off + j] = v
            if bi >= 1 and d + 1 <= complex_.n_max:
                # B : C_d -> C_{d+1}, target block index bi - 1
                t_off = toffs[bi - 1]
                for i, row in enumerate(complex_.connes_b[d].rows):
                    for j, v in row.items():
                        w = m.rows[t_off + i].get(src_off + j, 0) + v
                        if w == 0:
                            m.rows[t_off + i].pop(src_off + j, None)
                        else:
                            m.rows[t_off + i][src_off + j] = w
        mats.append(m)
    return dims, mats


def cyclic_homology(cat: LinearCategory, n_max: int):
    """First-quadrant cyclic homology in degrees 0..n_max: the homology of
    the (b, B) total complex, computed exactly per degree."""
    complex_ = ChainComplexBundle(cat, n_max + 1)
    dims, mats = _total_complex(complex_, n_max)
    out = []
    for n in range(n_max + 1):
        rank, torsion = homology_group(dims[n], mats[n] if n >= 1 else None,
                                       mats[n + 1], cat.ring)
        out.append({"degree": n, "rank": rank, "torsion": list(torsion)})
    return out


def negative_cyclic_homology(cat: LinearCategory, n_max: int, i_max: int = 3):
    """Column-truncated negative cyclic homology.

    The honest theory needs all columns C_{n + 2i}, i >= 0; this truncates
    at i <= i_max and reports the truncation, which is exact whenever the
    Hochschild homology vanishes above the degrees the truncation covers.
    """
    top = n_max + 2 * i_max + 1
    complex_ = ChainComplexBundle(cat, top)
    hh = hochschild_homology(cat, top - 1)
    # degree index runs from -1 (the target of D_0 is nonzero here, unlike
    # the first-quadrant complex) up to n_max + 1
    dims = {}
    offsets = {}
    for n in range(-1, n_max + 2):
        blocks = [n + 2 * i for i in range(i_max + 1)
                  if 0 <= n + 2 * i <= top]
        offs = []
        total = 0
        for d in blocks:
            offs.append(total)
            total += complex_.dims[d]
        dims[n] = total
        offsets[n] = (blocks, offs)
    mats = {}
    for n in range(0, n_max + 2):
        blocks, offs = offsets[n]
        tblocks, toffs = offsets[n - 1]
        tindex = {d: toffs[k] for k, d in enumerate(tblocks)}
        m = SparseMat(dims[n - 1], dims[n])
        for bi, d in enumerate(blocks):
            src_off = offs[bi]
            if d >= 1 and d - 1 in tindex:
                t_off = tindex[d - 1]
                for i, row in enumerate(complex_.boundaries[d].rows):
                    for j, v in row.items():
                        m.rows[t_off + i][src_off + j] = v
            if d < complex_.n_max and d + 1 in tindex:
                t_off = tindex[d + 1]
                for i, row in enumerate(complex_.connes_b[d].rows):
                    for j, v in row.items():
                        w = m.rows[t_off + i].get(src_off + j, 0) + v
                        if w == 0:
                            m.rows[t_off + i].pop(src_off + j, None)
                        else:
                            m.rows[t_off + i][src_off + j] = w
        mats[n] = m
    groups = []
    for n in range(n_max + 1):
        rank, torsion = homology_group(dims[n], mats[n], mats[n + 1],
                                       cat.ring)
        groups.append({"degree": n, "rank": rank, "torsion": list(torsion)})
    hh_top = max((g["degree"] for g in hh if g["rank"] or g["torsion"]),
                 default=-1)
    return {"groups": groups, "truncated_at_column": i_max,
            "hh_vanishes_above": hh_top,
            "exact": hh_top <= n_max + 2 * i_max - 1}
