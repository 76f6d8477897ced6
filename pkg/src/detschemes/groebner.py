"""Reduced Groebner bases and the ideal-theoretic toolkit.

Buchberger's algorithm with the two classical pair-elimination criteria
(coprime leading terms, chain) and the normal selection strategy; on top of
it: membership, Krull dimension and height via independent variable sets,
ideal quotient and saturation through a single auxiliary elimination
variable, and minimal generator counts by degreewise linear algebra.

A light extension to submodules of twisted free modules (column modules of
homogeneous matrices) provides exact Hilbert functions of cokernels through
standard-monomial counting; the grading layer uses it as the fast engine for
large degree pieces and as an independent cross-check oracle.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from itertools import combinations

from .linalg import Echelon, IntEchelon
from .ring import Monomial, Polynomial, PolyRing


class GroebnerError(ValueError):
    pass


@dataclass(frozen=True)
class IdealBasis:
    """Generator set for a homogeneous ideal, optionally a certified reduced GB."""

    ring: PolyRing
    generators: tuple
    is_reduced_gb: bool = False
    order: str = "grevlex"

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def is_zero_ideal(self):
        return all(g.is_zero() for g in self.generators)

    def contains_unit(self):
        return any(
            not g.is_zero() and g.leading_monomial().is_one() for g in self.generators
        )


def ideal(ring, *gens):
    """Convenience constructor accepting polynomials or strings."""
    polys = tuple(ring.parse(g) if isinstance(g, str) else g for g in gens)
    return IdealBasis(ring, polys, False, ring.order)


def _poly_sort_key(p):
    return tuple((p.ring.monomial_key(m), _coeff_key(c)) for m, c in p.terms)


def _coeff_key(c):
    # Fraction and int coefficients are mutually comparable
    return c


def spoly(f, g):
    lm_f, lc_f = f.leading_term()
    lm_g, lc_g = g.leading_term()
    lcm = lm_f.lcm(lm_g)
    field = f.ring.field
    a = f.mul_term(lcm.div(lm_f), field.inv(lc_f))
    b = g.mul_term(lcm.div(lm_g), field.inv(lc_g))
    return a - b


def reduce_full(p, reducers):
    """Full normal form of p against a list of nonzero polynomials.

    Works on raw exponent tuples keyed by the monomial order, so no
    intermediate Polynomial is materialized; the remainder accumulates in
    strictly decreasing order.
    """
    ring = p.ring
    field = ring.field
    key_of = ring._key
    red = [
        (
            g.terms[0][0].exponents,
            g.terms[0][1],
            [(m.exponents, c) for m, c in g.terms],
        )
        for g in reducers
    ]
    cur = {key_of(m.exponents): (m.exponents, c) for m, c in p.terms}
    remainder = []
    while cur:
        k = max(cur)
        le, lc = cur[k]
        hit = None
        for ge, gc, gterms in red:
            divides = True
            for a, b in zip(ge, le):
                if a > b:
                    divides = False
                    break
            if divides:
                hit = (ge, gc, gterms)
                break
        if hit is None:
            remainder.append((le, lc))
            del cur[k]
            continue
        ge, gc, gterms = hit
        qe = tuple(b - a for a, b in zip(ge, le))
        qc = field.div(lc, gc)
        for me, c in gterms:
            e2 = tuple(a + b for a, b in zip(qe, me))
            k2 = key_of(e2)
            old = cur.get(k2)
            nc = (
                field.sub(old[1], field.mul(qc, c))
                if old is not None
                else field.neg(field.mul(qc, c))
            )
            if field.is_zero(nc):
                cur.pop(k2, None)
            else:
                cur[k2] = (e2, nc)
    return Polynomial(ring, tuple((Monomial(e), c) for e, c in remainder))


def _linear_preprocess(polys):
    """Interreduce same-degree homogeneous generators by exact echelon.

    Large minor sets are linearly very redundant; row-reducing them first
    gives distinct leading monomials and shrinks Buchberger's pair queue.
    Over QQ the elimination runs fraction-free on integer vectors.
    """
    ring = polys[0].ring
    field = ring.field
    by_degree = {}
    passthrough = []
    for p in polys:
        d = p.homogeneous_degree()
        if isinstance(d, int):
            by_degree.setdefault(d, []).append(p)
        else:
            passthrough.append(p)
    out = list(passthrough)
    rational = field.characteristic == 0
    for d in sorted(by_degree):
        group = by_degree[d]
        if len(group) == 1:
            out.extend(group)
            continue
        monomials = sorted(
            {m for p in group for m, _ in p.terms},
            key=lambda m: ring.monomial_key(m),
            reverse=True,
        )
        index = {m: i for i, m in enumerate(monomials)}
        if rational:
            ech = IntEchelon()
            for p in group:
                den = 1
                for _, c in p.terms:
                    den = den * c.denominator // math.gcd(den, c.denominator)
                ech.insert({index[m]: int(c * den) for m, c in p.terms})
            for vec in ech.pivots.values():
                out.append(
                    ring.from_terms(
                        (monomials[i], field.from_int(c)) for i, c in vec.items()
                    )
                )
        else:
            ech = Echelon(field)
            for p in group:
                ech.insert({index[m]: c for m, c in p.terms})
            for vec in ech.pivots.values():
                out.append(
                    ring.from_terms((monomials[i], c) for i, c in vec.items())
                )
    return out


def buchberger(gens, ring=None):
    """Reduced Groebner basis generating the same ideal as `gens`.

    Deterministic for a fixed monomial order: generators are sorted
    canonically, pairs are selected by smallest lcm (normal strategy), and
    the result is minimalized, interreduced and made monic.
    """
    if isinstance(gens, IdealBasis):
        ring = gens.ring
        polys = list(gens.generators)
    else:
        polys = list(gens)
        if ring is None:
            if not polys:
                raise GroebnerError("cannot infer ring from an empty generator list")
            ring = polys[0].ring
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return IdealBasis(ring, (), True, ring.order)

    polys = _linear_preprocess(polys)
    polys = [p.monic() for p in polys]
    polys.sort(key=_poly_sort_key)
    deduped = []
    for p in polys:
        if not deduped or deduped[-1] != p:
            deduped.append(p)
    basis = deduped

    key_of = ring.monomial_key
    pending = set()
    heap = []

    def push_pairs(j):
        lm_j = basis[j].leading_monomial()
        for i in range(j):
            lcm = basis[i].leading_monomial().lcm(lm_j)
            pending.add((i, j))
            heapq.heappush(heap, (key_of(lcm), i, j))

    for j in range(len(basis)):
        push_pairs(j)

    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        lm_i = basis[i].leading_monomial()
        lm_j = basis[j].leading_monomial()
        lcm = lm_i.lcm(lm_j)
        if lcm.total_degree == lm_i.total_degree + lm_j.total_degree and lcm == lm_i.mul(lm_j):
            continue  # coprime leading terms
        chain = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if basis[k].leading_monomial().divides(lcm):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pending and b not in pending:
                    chain = True
                    break
        if chain:
            continue
        r = reduce_full(spoly(basis[i], basis[j]), basis)
        if not r.is_zero():
            basis.append(r.monic())
            push_pairs(len(basis) - 1)

    # minimalize: drop elements whose leading monomial another one divides
    minimal = []
    for p in sorted(basis, key=lambda q: key_of(q.leading_monomial())):
        lm = p.leading_monomial()
        if not any(q.leading_monomial().divides(lm) for q in minimal):
            minimal.append(p)
    # interreduce tails
    reduced = []
    for idx, p in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        reduced.append(reduce_full(p, others).monic())
    reduced.sort(key=lambda q: key_of(q.leading_monomial()), reverse=True)
    return IdealBasis(ring, tuple(reduced), True, ring.order)


_GB_CACHE = {}


def ensure_gb(I):
    """Reduced GB of I, cached: IdealBasis values are immutable."""
    if I.is_reduced_gb:
        return I
    hit = _GB_CACHE.get(I)
    if hit is None:
        hit = buchberger(I)
        _GB_CACHE[I] = hit
    return hit


def normal_form(p, gb):
    """Remainder of p modulo a certified reduced Groebner basis."""
    if not gb.is_reduced_gb:
        raise GroebnerError("normal_form requires a certified reduced Groebner basis")
    return reduce_full(p, list(gb.generators))


def is_member(p, I):
    return normal_form(p, ensure_gb(I)).is_zero()


def ideals_equal(I, J):
    """Ideal equality via the canonical reduced Groebner bases."""
    return ensure_gb(I).generators == ensure_gb(J).generators


# -- dimension ------------------------------------------------------------------


@dataclass(frozen=True)
class DimensionReport:
    """Cone dimension of R/I and height of I; unit ideal gets (-1, +inf)."""

    krull_dim: int
    height: float  # int in the proper case, math.inf for the unit ideal


def dimension_report(I):
    gb = ensure_gb(I)
    ring = I.ring
    nvars = ring.nvars
    if gb.contains_unit():
        return DimensionReport(-1, math.inf)
    lms = [g.leading_monomial() for g in gb.generators]
    supports = [
        frozenset(i for i, e in enumerate(lm.exponents) if e > 0) for lm in lms
    ]
    best = 0
    for size in range(nvars, 0, -1):
        found = False
        for subset in combinations(range(nvars), size):
            s = frozenset(subset)
            if all(not supp <= s for supp in supports):
                found = True
                break
        if found:
            best = size
            break
    return DimensionReport(best, nvars - best)


def height(I):
    """n+1 - dim R/I; +inf for the unit ideal."""
    return dimension_report(I).height


def krull_dim(I):
    return dimension_report(I).krull_dim


# -- quotient / saturation through elimination -----------------------------------


def _aux_ring(ring):
    name = "_w"
    while name in ring.variables:
        name += "_"
    return (
        PolyRing(ring.variables + (name,), ring.field, "elim_last", _allow_small=True),
        len(ring.variables),
    )


def _lift(p, aux):
    return aux.from_terms(
        (Monomial(m.exponents + (0,)), c) for m, c in p.terms
    )


def _project(p, ring):
    return ring.from_terms(
        (Monomial(m.exponents[:-1]), c) for m, c in p.terms
    )


def intersect(I, J):
    """I ∩ J by the single-auxiliary-variable elimination trick."""
    ring = I.ring
    if ring != J.ring:
        raise GroebnerError("ideals live in different rings")
    aux, w_index = _aux_ring(ring)
    w = aux.variable(w_index)
    one_minus_w = aux.one() - w
    gens = [w * _lift(f, aux) for f in I.generators if not f.is_zero()]
    gens += [one_minus_w * _lift(g, aux) for g in J.generators if not g.is_zero()]
    if not gens:
        return IdealBasis(ring, (), True, ring.order)
    gb = buchberger(gens, aux)
    kept = [
        _project(g, ring)
        for g in gb.generators
        if all(m.exponents[-1] == 0 for m, _ in g.terms)
    ]
    kept.sort(key=lambda q: ring.monomial_key(q.leading_monomial()), reverse=True)
    certified = ring.order == "grevlex"
    return IdealBasis(ring, tuple(kept), certified, ring.order)


def _quotient_by_poly(I, g):
    ring = I.ring
    if g.is_zero():
        return IdealBasis(ring, (ring.one(),), False, ring.order)
    if g.leading_monomial().is_one():
        return I  # unit divisor: (I : c) = I
    meet = intersect(I, IdealBasis(ring, (g,), False, ring.order))
    gens = tuple(h.exact_div(g) for h in meet.generators)
    return IdealBasis(ring, gens, False, ring.order)


def ideal_quotient(I, J):
    """(I : J) = {r : rJ ⊆ I}, intersected over the generators of J."""
    ring = I.ring
    nonzero = [g for g in J.generators if not g.is_zero()]
    if not nonzero:
        return IdealBasis(ring, (ring.one(),), True, ring.order)
    result = None
    for g in nonzero:
        q = _quotient_by_poly(I, g)
        result = q if result is None else intersect(result, q)
    return ensure_gb(result)


def saturate(I, J):
    """(I : J^inf): iterate the quotient until it stabilizes."""
    current = ensure_gb(I)
    while True:
        nxt = ensure_gb(ideal_quotient(current, J))
        if nxt.generators == current.generators:
            return current
        current = nxt


# -- minimal generators and Hilbert functions --------------------------------------


def minimal_generator_count(I):
    """dim_k (I / mI)_d per degree d, by degreewise exact linear algebra."""
    ring = I.ring
    gens = [g for g in I.generators if not g.is_zero()]
    degrees = []
    for g in gens:
        d = g.homogeneous_degree()
        if not isinstance(d, int):
            raise GroebnerError("minimal_generator_count needs homogeneous generators")
        degrees.append(d)
    counts = {}
    for d in sorted(set(degrees)):
        monomials = ring.monomials_of_degree(d)
        index = {m: i for i, m in enumerate(monomials)}
        ech = Echelon(ring.field)
        for g, dg in zip(gens, degrees):
            if dg < d:
                for mu in ring.monomials_of_degree(d - dg):
                    prod = g.mul_term(mu, ring.field.one)
                    ech.insert({index[m]: c for m, c in prod.terms})
        rank_m_part = ech.rank
        for g, dg in zip(gens, degrees):
            if dg == d:
                ech.insert({index[m]: c for m, c in g.terms})
        fresh = ech.rank - rank_m_part
        if fresh:
            counts[d] = fresh
    return counts


def quotient_hilbert_function(I, d):
    """dim_k (R/I)_d by counting standard monomials of the reduced GB."""
    if d < 0:
        return 0
    gb = ensure_gb(I)
    if gb.contains_unit():
        return 0
    lms = [g.leading_monomial() for g in gb.generators]
    count = 0
    for m in I.ring.monomials_of_degree(d):
        if not any(lm.divides(m) for lm in lms):
            count += 1
    return count


# -- column modules of homogeneous matrices -----------------------------------------


class ColumnModuleGB:
    """Groebner basis of the submodule spanned by homogeneous column vectors.

    Vectors live in a twisted free module (twists = generator degrees); the
    order is degree, then the ring order on the monomial, then component.
    Only top-reduction is performed: leading terms are what standard-monomial
    counting needs.
    """

    def __init__(self, ring, twists, columns):
        self.ring = ring
        self.twists = tuple(twists)
        self.rank = len(self.twists)
        self.basis = []
        self._min_leads = None
        self._count_cache = {}
        self._build([tuple(col) for col in columns])

    # vector helpers: a vector is a tuple of Polynomials, one per component

    def _lead(self, vec):
        best = None
        for i, part in enumerate(vec):
            if part.is_zero():
                continue
            m, c = part.leading_term()
            key = (
                m.total_degree + self.twists[i],
                self.ring.monomial_key(m),
                -i,
            )
            if best is None or key > best[0]:
                best = (key, i, m, c)
        return best

    def _sub_multiple(self, vec, other, comp_shift_m, coeff):
        return tuple(
            p - q.mul_term(comp_shift_m, coeff) for p, q in zip(vec, other)
        )

    def _top_reduce(self, vec):
        field = self.ring.field
        while True:
            lead = self._lead(vec)
            if lead is None:
                return None
            _, i, m, c = lead
            hit = None
            for entry in self.basis:
                (_, bi, bm, bc), bvec = entry
                if bi == i and bm.divides(m):
                    hit = (bm, bc, bvec)
                    break
            if hit is None:
                return lead, vec
            bm, bc, bvec = hit
            vec = self._sub_multiple(vec, bvec, m.div(bm), field.div(c, bc))

    def _build(self, columns):
        todo = []
        for col in columns:
            if len(col) != self.rank:
                raise GroebnerError("column length does not match module rank")
            if any(not p.is_zero() for p in col):
                todo.append(col)
        for col in todo:
            reduced = self._top_reduce(col)
            if reduced is not None:
                self.basis.append(reduced)
        pairs = []
        for a, b in combinations(range(len(self.basis)), 2):
            self._maybe_pair(pairs, a, b)
        field = self.ring.field
        while pairs:
            _, a, b = heapq.heappop(pairs)
            (_, _ia, ma, ca), va = self.basis[a]
            (_, _ib, mb, cb), vb = self.basis[b]
            lcm = ma.lcm(mb)
            s = self._sub_multiple(
                tuple(p.mul_term(lcm.div(ma), field.inv(ca)) for p in va),
                vb,
                lcm.div(mb),
                field.inv(cb),
            )
            reduced = self._top_reduce(s)
            if reduced is not None:
                self.basis.append(reduced)
                new = len(self.basis) - 1
                for old in range(new):
                    self._maybe_pair(pairs, old, new)
        self._finalize()

    def _maybe_pair(self, pairs, a, b):
        (_, ia, ma, _), _ = self.basis[a]
        (_, ib, mb, _), _ = self.basis[b]
        if ia != ib:
            return
        lcm = ma.lcm(mb)
        key = (lcm.total_degree + self.twists[ia], self.ring.monomial_key(lcm))
        heapq.heappush(pairs, (key, a, b))

    def _finalize(self):
        by_comp = {}
        for (_, i, m, _), _vec in self.basis:
            by_comp.setdefault(i, []).append(m)
        minimal = {}
        for i, ms in by_comp.items():
            keep = []
            for m in sorted(ms, key=lambda x: x.total_degree):
                if not any(k.divides(m) for k in keep):
                    keep.append(m)
            minimal[i] = keep
        self._min_leads = minimal

    # -- counting -------------------------------------------------------------

    def coker_dim(self, d):
        """dim_k of degree-d piece of (free module)/(column span)."""
        hit = self._count_cache.get(d)
        if hit is not None:
            return hit
        total = 0
        for i, tw in enumerate(self.twists):
            deg = d - tw
            if deg < 0:
                continue
            leads = self._min_leads.get(i, ())
            if not leads:
                total += self.ring.dim_of_degree(deg)
                continue
            for m in self.ring.monomials_of_degree(deg):
                if not any(lm.divides(m) for lm in leads):
                    total += 1
        self._count_cache[d] = total
        return total

    def image_dim(self, d):
        full = sum(self.ring.dim_of_degree(d - tw) for tw in self.twists)
        return full - self.coker_dim(d)
