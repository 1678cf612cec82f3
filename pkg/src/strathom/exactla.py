"""Exact linear algebra over Z, Q and prime fields.

This is the arithmetic core behind the chain-complex engines.  Everything is
exact: integers are arbitrary-precision, rationals are `fractions.Fraction`,
and F_p elements are reduced ints.  No floating point anywhere.

Matrices are sparse dict-of-rows.  Ranks are computed by fraction-free row
elimination (rows are scaled to integers over Q, updates are cross-multiplies
followed by a gcd reduction); torsion comes from Smith normal form with
minimal-absolute-value pivoting.  All pivot ties break by index order, so
results are deterministic.
"""

from __future__ import annotations

import math
from fractions import Fraction


class Ring:
    """Base coefficient ring.  Subclasses fix the element representation."""

    name = "?"
    is_field = False

    def normalize(self, x):
        raise NotImplementedError

    def add(self, a, b):
        return self.normalize(a + b)

    def sub(self, a, b):
        return self.normalize(a - b)

    def mul(self, a, b):
        return self.normalize(a * b)

    def neg(self, a):
        return self.normalize(-a)

    def is_zero(self, a):
        return self.normalize(a) == 0

    def parse(self, s):
        """Parse a serialized scalar; integers as "n", rationals as "p/q"."""
        s = str(s).strip()
        if "/" in s:
            num, den = s.split("/")
            return self.normalize(Fraction(int(num), int(den)))
        return self.normalize(int(s))

    def show(self, x) -> str:
        x = self.normalize(x)
        if isinstance(x, Fraction) and x.denominator != 1:
            return f"{x.numerator}/{x.denominator}"
        return str(int(x))

    def __repr__(self):
        return f"Ring({self.name})"

    def __eq__(self, other):
        return isinstance(other, Ring) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


class RingZ(Ring):
    name = "Z"
    is_field = False

    def normalize(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return int(x)
        return int(x)


class RingQ(Ring):
    name = "Q"
    is_field = True

    def normalize(self, x):
        return Fraction(x)

    def inv(self, a):
        return 1 / Fraction(a)


class RingFp(Ring):
    is_field = True

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(math.isqrt(p)) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"Fp:{p}"

    def normalize(self, x):
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return (x.numerator % self.p) * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, a):
        a = self.normalize(a)
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)


ZZ = RingZ()
QQ = RingQ()


def ring_from_name(name: str) -> Ring:
    """Resolve "Z", "Q" or "Fp:<p>" to a ring instance."""
    name = name.strip()
    if name == "Z":
        return ZZ
    if name == "Q":
        return QQ
    if name.startswith("Fp:"):
        return RingFp(int(name.split(":", 1)[1]))
    raise ValueError(f"unknown ring {name!r}")


class SparseMat:
    """A sparse matrix: ``rows[i]`` maps column index to a nonzero entry.

    Acts on column vectors, so a map C_n -> C_m is an m x n matrix.
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = [dict() for _ in range(nrows)] if rows is None else rows

    @classmethod
    def from_dense(cls, ring: Ring, data) -> "SparseMat":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        m = cls(nrows, ncols)
        for i, row in enumerate(data):
            for j, v in enumerate(row):
                v = ring.normalize(v)
                if v != 0:
                    m.rows[i][j] = v
        return m

    @classmethod
    def from_columns(cls, nrows: int, columns) -> "SparseMat":
        """Build from an iterable of columns, each a dict row->value."""
        columns = list(columns)
        m = cls(nrows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v != 0:
                    m.rows[i][j] = v
        return m

    @classmethod
    def identity(cls, n: int) -> "SparseMat":
        m = cls(n, n)
        for i in range(n):
            m.rows[i][i] = 1
        return m

    def to_dense(self, zero=0):
        return [[self.rows[i].get(j, zero) for j in range(self.ncols)]
                for i in range(self.nrows)]

    def entry(self, i, j):
        return self.rows[i].get(j, 0)

    def set_entry(self, i, j, v):
        if v == 0:
            self.rows[i].pop(j, None)
        else:
            self.rows[i][j] = v

    def clone(self) -> "SparseMat":
        return SparseMat(self.nrows, self.ncols, [dict(r) for r in self.rows])

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def __eq__(self, other):
        return (isinstance(other, SparseMat) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __repr__(self):
        return f"SparseMat({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def add(self, other: "SparseMat") -> "SparseMat":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        out = self.clone()
        for i, r in enumerate(other.rows):
            row = out.rows[i]
            for j, v in r.items():
                w = row.get(j, 0) + v
                if w == 0:
                    row.pop(j, None)
                else:
                    row[j] = w
        return out

    def scale(self, c) -> "SparseMat":
        if c == 0:
            return SparseMat(self.nrows, self.ncols)
        return SparseMat(self.nrows, self.ncols,
                         [{j: c * v for j, v in r.items()} for r in self.rows])

    def mul(self, other: "SparseMat") -> "SparseMat":
        """Matrix product self @ other."""
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = SparseMat(self.nrows, other.ncols)
        for i, r in enumerate(self.rows):
            acc = out.rows[i]
            for k, v in r.items():
                for j, w in other.rows[k].items():
                    s = acc.get(j, 0) + v * w
                    if s == 0:
                        acc.pop(j, None)
                    else:
                        acc[j] = s
        return out

    def apply(self, vec: dict) -> dict:
        """Apply to a sparse column vector (dict index->value)."""
        out = {}
        for i, r in enumerate(self.rows):
            s = 0
            for j, v in r.items():
                if j in vec:
                    s += v * vec[j]
            if s != 0:
                out[i] = s
        return out

    def _integer_rows(self, ring: Ring):
        """Rows scaled to integer entries (rank is scaling-invariant)."""
        rows = []
        for r in self.rows:
            if not r:
                continue
            if ring is QQ or isinstance(ring, RingQ):
                scale = 1
                for v in r.values():
                    f = Fraction(v)
                    scale = scale * f.denominator // math.gcd(scale, f.denominator)
                row = {j: int(Fraction(v) * scale) for j, v in r.items()}
            else:
                row = {j: int(v) for j, v in r.items()}
            g = 0
            for v in row.values():
                g = math.gcd(g, abs(v))
            if g > 1:
                row = {j: v // g for j, v in row.items()}
            if row:
                rows.append(row)
        return rows

    def rank(self, ring: Ring) -> int:
        """Rank over the fraction field of `ring` (for Fp, over Fp itself)."""
        if isinstance(ring, RingFp):
            return self._rank_fp(ring)
        rows = self._integer_rows(ring)
        rank = 0
        # column-by-column fraction-free elimination; pivot = fewest nonzeros,
        # then least absolute value, then least row index
        col_rows: dict[int, set] = {}
        for idx, row in enumerate(rows):
            for j in row:
                col_rows.setdefault(j, set()).add(idx)
        alive = set(range(len(rows)))
        for col in range(self.ncols):
            cands = [i for i in col_rows.get(col, ()) if i in alive]
            if not cands:
                continue
            piv = min(cands, key=lambda i: (len(rows[i]), abs(rows[i][col]), i))
            alive.discard(piv)
            rank += 1
            prow = rows[piv]
            pval = prow[col]
            for i in cands:
                if i == piv:
                    continue
                row = rows[i]
                fval = row[col]
                new = {}
                for j, v in row.items():
                    new[j] = v * pval
                for j, v in prow.items():
                    w = new.get(j, 0) - v * fval
                    if w == 0:
                        new.pop(j, None)
                    else:
                        new[j] = w
                g = 0
                for v in new.values():
                    g = math.gcd(g, abs(v))
                if g > 1:
                    new = {j: v // g for j, v in new.items()}
                for j in row:
                    if j not in new:
                        col_rows[j].discard(i)
                for j in new:
                    if j not in row:
                        col_rows.setdefault(j, set()).add(i)
                rows[i] = new
                if not new:
                    alive.discard(i)
        return rank

    def _rank_fp(self, ring: RingFp) -> int:
        p = ring.p
        rows = []
        for r in self.rows:
            row = {j: v % p for j, v in r.items()}
            row = {j: v for j, v in row.items() if v}
            if row:
                rows.append(row)
        rank = 0
        col_rows: dict[int, set] = {}
        for idx, row in enumerate(rows):
            for j in row:
                col_rows.setdefault(j, set()).add(idx)
        alive = set(range(len(rows)))
        for col in range(self.ncols):
            cands = [i for i in col_rows.get(col, ()) if i in alive]
            if not cands:
                continue
            piv = min(cands, key=lambda i: (len(rows[i]), i))
            alive.discard(piv)
            rank += 1
            prow = rows[piv]
            pinv = pow(prow[col], -1, p)
            for i in cands:
                if i == piv:
                    continue
                row = rows[i]
                f = row[col] * pinv % p
                new = dict(row)
                for j, v in prow.items():
                    w = (new.get(j, 0) - v * f) % p
                    if w == 0:
                        new.pop(j, None)
                    else:
                        new[j] = w
                for j in row:
                    if j not in new:
                        col_rows[j].discard(i)
                for j in new:
                    if j not in row:
                        col_rows.setdefault(j, set()).add(i)
                rows[i] = new
                if not new:
                    alive.discard(i)
        return rank


def smith_invariant_factors(mat: SparseMat) -> list:
    """Invariant factors d_1 | d_2 | ... (positive, nonzero) of an integer matrix.

    Pivoting picks the least-absolute-value nonzero entry, ties broken by
    (row, col) index order.
    """
    entries = {}
    for i, r in enumerate(mat.rows):
        for j, v in r.items():
            v = int(v)
            if v:
                entries[(i, j)] = v
    factors = []
    while entries:
        (pi, pj) = min(entries, key=lambda k: (abs(entries[k]), k))
        # clear the pivot row and column by division with remainder
        progress = True
        while progress:
            progress = False
            pval = entries[(pi, pj)]
            for (i, j) in [k for k in entries if k[1] == pj and k[0] != pi]:
                q = entries[(i, j)] // pval
                _row_op(entries, i, pi, q, mat.ncols)
                if (i, pj) in entries:
                    # remainder nonzero: smaller entry becomes the new pivot
                    pi = i
                    progress = True
                    break
            else:
                pval = entries[(pi, pj)]
                for (i, j) in [k for k in entries if k[0] == pi and k[1] != pj]:
                    q = entries[(i, j)] // pval
                    _col_op(entries, j, pj, q, mat.nrows)
                    if (pi, j) in entries:
                        pj = j
                        progress = True
                        break
        d = abs(entries.pop((pi, pj)))
        # divisibility fix: if some remaining entry is not divisible by d,
        # fold it into the pivot position and redo
        bad = next((k for k in entries if entries[k] % d), None)
        if bad is not None:
            entries[(pi, pj)] = d
            _row_op(entries, pi, bad[0], -1, mat.ncols)
            continue
        factors.append(d)
        entries = {k: v for k, v in entries.items() if k[0] != pi and k[1] != pj}
    factors.sort()
    return factors


def _row_op(entries, i, k, q, ncols):
    """row_i -= q * row_k on a dict-encoded matrix."""
    if q == 0:
        return
    for j in range(ncols):
        if (k, j) in entries:
            w = entries.get((i, j), 0) - q * entries[(k, j)]
            if w == 0:
                entries.pop((i, j), None)
            else:
                entries[(i, j)] = w


def _col_op(entries, j, k, q, nrows):
    """col_j -= q * col_k."""
    if q == 0:
        return
    for i in range(nrows):
        if (i, k) in entries:
            w = entries.get((i, j), 0) - q * entries[(i, k)]
            if w == 0:
                entries.pop((i, j), None)
            else:
                entries[(i, j)] = w


def homology_group(dim_n: int, b_n, b_next, ring: Ring):
    """Invariants of H_n = ker(b_n) / im(b_{n+1}).

    `b_n` maps C_n -> C_{n-1} (or None in degree 0), `b_next` maps
    C_{n+1} -> C_n (or None at the top).  Returns (rank, torsion tuple);
    torsion is only nontrivial over Z.
    """
    r_n = b_n.rank(ring) if b_n is not None else 0
    r_next = b_next.rank(ring) if b_next is not None else 0
    rank = dim_n - r_n - r_next
    if rank < 0:
        raise ArithmeticError("inconsistent ranks; input is not a complex")
    torsion = ()
    if not ring.is_field and b_next is not None:
        torsion = tuple(d for d in smith_invariant_factors(b_next) if d > 1)
    return rank, torsion


def cokernel_invariants(mat: SparseMat, ring: Ring):
    """(free rank, torsion) of coker(mat : R^cols -> R^rows)."""
    r = mat.rank(ring)
    if ring.is_field:
        return mat.nrows - r, ()
    torsion = tuple(d for d in smith_invariant_factors(mat) if d > 1)
    return mat.nrows - r, torsion
