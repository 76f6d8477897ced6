"""Exact scalar linear algebra and polynomial determinants.

Sparse vectors are dicts {row_index: coefficient}.  Echelon structures grow
incrementally, which fits degree-piece computations where columns arrive one
generator at a time.  Dense integer elimination uses the fraction-free
Bareiss scheme, so intermediate values stay integral.
"""

from __future__ import annotations

import heapq
from fractions import Fraction


class Echelon:
    """Incremental row-echelon span of sparse vectors over an exact field.

    Pivot of a vector is its smallest row index; pivot entries are
    normalized to 1, so reduction is a plain subtract-multiple loop.
    Elimination at a row only fills rows below it, so a lazy min-heap
    worklist visits every reducible row exactly as it becomes live.
    """

    def __init__(self, field):
        self.field = field
        self.pivots = {}  # pivot row -> normalized vector

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, vec):
        """Fully reduce a sparse vector against the current span."""
        field = self.field
        v = {r: c for r, c in vec.items() if not field.is_zero(c)}
        heap = [r for r in v if r in self.pivots]
        heapq.heapify(heap)
        while heap:
            row = heapq.heappop(heap)
            c = v.get(row)
            if c is None:
                continue
            piv = self.pivots.get(row)
            for r, pc in piv.items():
                nc = field.sub(v.get(r, field.zero), field.mul(c, pc))
                if field.is_zero(nc):
                    v.pop(r, None)
                else:
                    fresh = r not in v
                    v[r] = nc
                    if fresh and r in self.pivots:
                        heapq.heappush(heap, r)
        return v

    def insert(self, vec):
        """Add a vector to the span; returns its pivot row or None."""
        v = self.reduce(vec)
        if not v:
            return None
        row = min(v)
        inv = self.field.inv(v[row])
        self.pivots[row] = {r: self.field.mul(c, inv) for r, c in v.items()}
        return row

    def contains(self, vec):
        return not self.reduce(vec)


class AugmentedEchelon:
    """Echelon span that remembers how each pivot combines the inserts."""

    def __init__(self, field):
        self.field = field
        self.pivots = {}  # pivot row -> (vector, combo over tags)

    @property
    def rank(self):
        return len(self.pivots)

    def _reduce(self, vec, combo):
        field = self.field
        v = {r: c for r, c in vec.items() if not field.is_zero(c)}
        lam = dict(combo)
        heap = [r for r in v if r in self.pivots]
        heapq.heapify(heap)
        while heap:
            row = heapq.heappop(heap)
            c = v.get(row)
            if c is None:
                continue
            pv, pcombo = self.pivots.get(row)
            for r, pc in pv.items():
                nc = field.sub(v.get(r, field.zero), field.mul(c, pc))
                if field.is_zero(nc):
                    v.pop(r, None)
                else:
                    fresh = r not in v
                    v[r] = nc
                    if fresh and r in self.pivots:
                        heapq.heappush(heap, r)
            for t, pc in pcombo.items():
                nc = field.add(lam.get(t, field.zero), field.mul(c, pc))
                if field.is_zero(nc):
                    lam.pop(t, None)
                else:
                    lam[t] = nc
        return v, lam

    def insert(self, vec, tag):
        """Insert vec remembering its tag; returns None if dependent.

        On a dependent insert the returned dict expresses vec as a
        combination of previously inserted tags.
        """
        v, lam = self._reduce(vec, {})
        if not v:
            return lam
        row = min(v)
        inv = self.field.inv(v[row])
        nv = {r: self.field.mul(c, inv) for r, c in v.items()}
        ncombo = {t: self.field.mul(c, inv) for t, c in lam.items()}
        # combo tracks: pivot = inv*(vec - sum lam_t * insert_t)
        ncombo = {t: self.field.neg(c) for t, c in ncombo.items()}
        ncombo[tag] = inv
        self.pivots[row] = (nv, ncombo)
        return None

    def solve(self, vec):
        """Coefficients over tags expressing vec in the span, or None."""
        v, lam = self._reduce(vec, {})
        if v:
            return None
        return lam


class IntEchelon:
    """Fraction-free echelon span of integer sparse vectors.

    Cross-multiplication elimination with content removal keeps entries
    integral and small; pivot rows are minimal indices as in Echelon.
    """

    def __init__(self):
        self.pivots = {}  # pivot row -> content-free integer vector

    @property
    def rank(self):
        return len(self.pivots)

    def insert(self, vec):
        v = {r: c for r, c in vec.items() if c}
        heap = [r for r in v if r in self.pivots]
        heapq.heapify(heap)
        while heap:
            row = heapq.heappop(heap)
            c = v.get(row)
            if c is None:
                continue
            piv = self.pivots.get(row)
            pc = piv[row]
            for r in list(v):
                v[r] *= pc
            for r, a in piv.items():
                nc = v.get(r, 0) - c * a
                if nc:
                    fresh = r not in v
                    v[r] = nc
                    if fresh and r in self.pivots:
                        heapq.heappush(heap, r)
                else:
                    v.pop(r, None)
            g = 0
            for a in v.values():
                g = _gcd(g, a)
                if g == 1:
                    break
            if g > 1:
                v = {r: a // g for r, a in v.items()}
        if not v:
            return None
        row = min(v)
        self.pivots[row] = v
        return row


def kernel_basis(columns, field):
    """Kernel of the map sending unit j to columns[j]; sparse coords over j."""
    ech = AugmentedEchelon(field)
    kernel = []
    for j, col in enumerate(columns):
        dep = ech.insert(col, j)
        if dep is not None:
            vec = {t: field.neg(c) for t, c in dep.items()}
            vec[j] = field.one
            kernel.append(vec)
    return kernel


def solve_columns(columns, target, field):
    """One solution x with sum x_j * columns[j] = target, or None."""
    ech = AugmentedEchelon(field)
    for j, col in enumerate(columns):
        ech.insert(col, j)
    return ech.solve(target)


def rank_of_columns(columns, field):
    ech = Echelon(field)
    for col in columns:
        ech.insert(col)
    return ech.rank


# -- dense fraction-free elimination ------------------------------------------


def bareiss_rank(rows):
    """Rank of a dense integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    prev = 1
    pr = 0
    for pc in range(nc):
        piv = None
        for r in range(pr, nr):
            if m[r][pc] != 0:
                piv = r
                break
        if piv is None:
            continue
        if piv != pr:
            m[pr], m[piv] = m[piv], m[pr]
        pivot = m[pr][pc]
        for r in range(pr + 1, nr):
            factor = m[r][pc]
            row_r = m[r]
            row_p = m[pr]
            for c in range(pc + 1, nc):
                row_r[c] = (row_r[c] * pivot - factor * row_p[c]) // prev
            row_r[pc] = 0
        prev = pivot
        pr += 1
        rank += 1
        if pr == nr:
            break
    return rank


def rational_matrix_rank(rows):
    """Rank of a dense matrix of Fractions/ints (row-scaled to integers)."""
    cleared = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // _gcd(den, x.denominator)
        cleared.append([int(x * den) if isinstance(x, Fraction) else x * den for x in row])
    return bareiss_rank(cleared)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a) if a else 1


# -- polynomial determinants ----------------------------------------------------


def _int_terms(p):
    """Exponent->int dict when every coefficient is an integer, else None."""
    out = {}
    for m, c in p.terms:
        if isinstance(c, Fraction):
            if c.denominator != 1:
                return None
            out[m.exponents] = c.numerator
        elif isinstance(c, int):
            out[m.exponents] = c
        else:
            return None
    return out


def _int_dict_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            elif e in out:
                del out[e]
    return out


def _int_dict_add(a, b, sign):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + sign * c
        if v:
            out[e] = v
        elif e in out:
            del out[e]
    return out


def poly_det(grid, ring=None):
    """Determinant of a square polynomial matrix by memoized Laplace expansion.

    Expands along the sparsest row at each level; integer-coefficient input
    (the usual case over QQ) runs on plain int dicts.  For an empty matrix
    the determinant is 1, so a ring handle is required then.
    """
    n = len(grid)
    if n == 0:
        if ring is None:
            raise ValueError("empty determinant needs a ring handle")
        return ring.one()
    if any(len(row) != n for row in grid):
        raise ValueError("determinant of a non-square matrix")
    ring = grid[0][0].ring
    idx = tuple(range(n))

    if ring.field.characteristic == 0:
        int_grid = [[_int_terms(p) for p in row] for row in grid]
        if all(t is not None for row in int_grid for t in row):
            memo = {}

            def rec_int(rows, cols):
                if not rows:
                    return {(0,) * ring.nvars: 1}
                key = (rows, cols)
                hit = memo.get(key)
                if hit is not None:
                    return hit
                best = min(
                    range(len(rows)),
                    key=lambda rp: sum(
                        1 for c in cols if int_grid[rows[rp]][c]
                    ),
                )
                r = rows[best]
                sub_rows = rows[:best] + rows[best + 1 :]
                acc = {}
                for jp, c in enumerate(cols):
                    e = int_grid[r][c]
                    if not e:
                        continue
                    minor = rec_int(sub_rows, cols[:jp] + cols[jp + 1 :])
                    if not minor:
                        continue
                    acc = _int_dict_add(
                        acc, _int_dict_mul(e, minor), -1 if (best + jp) % 2 else 1
                    )
                memo[key] = acc
                return acc

            from .ring import Monomial

            result = rec_int(idx, idx)
            return ring.from_terms(
                (Monomial(e), Fraction(c)) for e, c in result.items()
            )

    memo = {}

    def rec(rows, cols):
        if not rows:
            return ring.one()
        key = (rows, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        best = min(
            range(len(rows)),
            key=lambda rp: sum(0 if grid[rows[rp]][c].is_zero() else 1 for c in cols),
        )
        r = rows[best]
        sub_rows = rows[:best] + rows[best + 1 :]
        acc = ring.zero()
        for jp, c in enumerate(cols):
            e = grid[r][c]
            if e.is_zero():
                continue
            minor = rec(sub_rows, cols[:jp] + cols[jp + 1 :])
            if minor.is_zero():
                continue
            term = e * minor
            if (best + jp) % 2:
                term = -term
            acc = acc + term
        memo[key] = acc
        return acc

    return rec(idx, idx)
