"""Eagon-Northcott and Buchsbaum-Rim complexes with explicit differentials.

For a homogeneous map Φ: F -> G with rank F = f, rank G = g <= f, bases are
indexed explicitly: exterior powers by sorted index tuples, dual symmetric
powers by exponent multisets (the basis dual to monomials, so contraction
carries no multinomial coefficients and the construction is exact over any
coefficient field with characteristic 0 or > f - g).

Term shapes:

    EN:  0 -> ∧^f F ⊗ (S^{f-g}G)^∨ ⊗ ∧^g G^∨ -> ... -> ∧^g F ⊗ ∧^g G^∨ -> R
    BR:  0 -> ∧^f F ⊗ (S^{f-g-1}G)^∨ ⊗ ∧^g G^∨ -> ... -> ∧^{g+1}F ⊗ ∧^g G^∨
            -> F -> G

The first EN differential is the list of maximal minors; the map of BR into
F expands (g+1)-column index sets into signed maximal minors; all higher
differentials are one contraction against Φ.  Acyclicity is certified by the
Buchsbaum-Eisenbud rank/height criterion (grade equals height here: the
ambient polynomial ring is Cohen-Macaulay).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .determinantal import DeterminantalPresentation, classify, minors
from .errors import InputError, VerificationError
from .grading import (
    Coker,
    GradedFreeModule,
    HomogeneousMatrix,
    default_truncation_bound,
    hilbert_function,
    image_membership,
    matrix_piece,
)
from .groebner import ensure_gb, height, normal_form
from .linalg import Echelon, kernel_basis, poly_det, rank_of_columns


@dataclass(frozen=True)
class FreeComplex:
    """Chain F_0 <- F_1 <- ... <- F_l of graded free modules.

    differentials[k] is d_{k+1}: F_{k+1} -> F_k; compositions of consecutive
    differentials must vanish identically (see verify_complex).
    """

    modules: tuple
    differentials: tuple
    tag: str = "custom"

    @property
    def length(self):
        return len(self.differentials)

    @property
    def ranks(self):
        return tuple(m.rank for m in self.modules)

    def alternating_rank_sum(self):
        return sum((-1) ** i * m.rank for i, m in enumerate(self.modules))

    def replaced(self, position, differential):
        """Copy with d_position swapped out (used by mutation tests)."""
        diffs = list(self.differentials)
        diffs[position - 1] = differential
        return FreeComplex(self.modules, tuple(diffs), self.tag)


def _compositions(total, parts):
    """Exponent multisets: all tuples of `parts` nonnegatives summing to total."""
    if parts == 0:
        return [()] if total == 0 else []
    out = []

    def rec(prefix, remaining, slot):
        if slot == parts - 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + [e], remaining - e, slot + 1)

    rec([], total, 0)
    return out


def _check_characteristic(phi):
    p = phi.ring.field.characteristic
    codim = phi.ncols - phi.nrows + 1
    if p and p <= codim:
        raise InputError(
            f"characteristic {p} too small for a reliable duality of symmetric "
            f"powers here (need p > {codim - 1})"
        )


def _sum_target_twists(phi):
    return sum(phi.target.twists)


def _item_twist(phi, item):
    S, beta = item
    tw = sum(phi.source.twists[l] for l in S) - _sum_target_twists(phi)
    tw -= sum(b * t for b, t in zip(beta, phi.target.twists))
    return tw


def _module_for(phi, items):
    return GradedFreeModule(phi.ring, tuple(_item_twist(phi, it) for it in items))


def _contraction_matrix(phi, tgt_items, src_items):
    """One contraction against Φ: (S, β) -> Σ ± Φ[k][l] (S∖l, β-ε_k)."""
    ring = phi.ring
    zero = ring.zero()
    tgt_index = {item: i for i, item in enumerate(tgt_items)}
    entries = [[zero] * len(src_items) for _ in tgt_items]
    for col, (S, beta) in enumerate(src_items):
        for pos, l in enumerate(S):
            rest = S[:pos] + S[pos + 1 :]
            negative = pos % 2 == 1
            for k, bk in enumerate(beta):
                if bk == 0:
                    continue
                p = phi.entries[k][l]
                if p.is_zero():
                    continue
                beta2 = beta[:k] + (bk - 1,) + beta[k + 1 :]
                row = tgt_index[(rest, beta2)]
                entries[row][col] = entries[row][col] + (-p if negative else p)
    return entries


def _maximal_minor(phi, cols):
    grid = [[phi.entries[i][j] for j in cols] for i in range(phi.nrows)]
    return poly_det(grid, phi.ring)


def _as_matrix(pres_or_matrix):
    if isinstance(pres_or_matrix, DeterminantalPresentation):
        return pres_or_matrix.matrix
    return pres_or_matrix


def eagon_northcott(pres_or_matrix, tag="EN"):
    """The Eagon-Northcott complex of Φ, augmented over R by the minors map."""
    phi = _as_matrix(pres_or_matrix)
    g, f = phi.nrows, phi.ncols
    if g < 1:
        raise InputError("Eagon-Northcott needs a target of positive rank")
    if f < g:
        raise InputError("needs at least as many columns as rows")
    _check_characteristic(phi)
    ring = phi.ring
    zero_beta = (0,) * g

    levels = [[(S, zero_beta) for S in combinations(range(f), g)]]
    for i in range(1, f - g + 1):
        levels.append(
            [
                (S, beta)
                for S in combinations(range(f), g + i)
                for beta in _compositions(i, g)
            ]
        )

    modules = [GradedFreeModule(ring, (0,))]
    modules += [_module_for(phi, items) for items in levels]

    diffs = []
    first_row = [_maximal_minor(phi, S) for (S, _) in levels[0]]
    diffs.append(HomogeneousMatrix(modules[0], modules[1], [first_row]))
    for i in range(1, len(levels)):
        entries = _contraction_matrix(phi, levels[i - 1], levels[i])
        diffs.append(HomogeneousMatrix(modules[i], modules[i + 1], entries))
    return FreeComplex(tuple(modules), tuple(diffs), tag)


def buchsbaum_rim(pres_or_matrix, tag="BR"):
    """The Buchsbaum-Rim complex of Φ, terminating in G.

    For a rank-zero target the complex degenerates to 0 -> F -> F -> 0 with
    the identity in the middle (the empty minor is 1), so free modules are
    their own first Buchsbaum-Rim modules.
    """
    phi = _as_matrix(pres_or_matrix)
    g, f = phi.nrows, phi.ncols
    if f < g:
        raise InputError("needs at least as many columns as rows")
    _check_characteristic(phi)
    ring = phi.ring
    zero_beta = (0,) * g

    modules = [phi.target, phi.source]
    diffs = [phi]

    level2 = [(S, zero_beta) for S in combinations(range(f), g + 1)]
    if level2:
        modules.append(_module_for(phi, level2))
        zero = ring.zero()
        entries = [[zero] * len(level2) for _ in range(f)]
        for col, (S, _) in enumerate(level2):
            for pos, l in enumerate(S):
                det = _maximal_minor(phi, S[:pos] + S[pos + 1 :])
                if det.is_zero():
                    continue
                entries[l][col] = -det if pos % 2 == 1 else det
        diffs.append(HomogeneousMatrix(modules[1], modules[2], entries))
        prev_items = level2
        for j in range(1, f - g):
            items = [
                (S, beta)
                for S in combinations(range(f), g + 1 + j)
                for beta in _compositions(j, g)
            ]
            if not items:
                break
            modules.append(_module_for(phi, items))
            entries = _contraction_matrix(phi, prev_items, items)
            diffs.append(HomogeneousMatrix(modules[-2], modules[-1], entries))
            prev_items = items
    return FreeComplex(tuple(modules), tuple(diffs), tag)


def koszul(polys, tag="Koszul"):
    """Koszul complex of a sequence of forms: EN of the single-row matrix."""
    ring = polys[0].ring
    twists = []
    for p in polys:
        d = p.homogeneous_degree()
        if not isinstance(d, int):
            raise InputError("Koszul needs nonzero homogeneous forms")
        twists.append(d)
    target = GradedFreeModule(ring, (0,))
    source = GradedFreeModule(ring, tuple(twists))
    phi = HomogeneousMatrix(target, source, [list(polys)])
    return eagon_northcott(phi, tag=tag)


def verify_complex(C):
    """True iff consecutive differentials compose to zero as polynomials."""
    for k in range(len(C.differentials)):
        d = C.differentials[k]
        if d.target.twists != C.modules[k].twists:
            return False
        if d.source.twists != C.modules[k + 1].twists:
            return False
    for k in range(len(C.differentials) - 1):
        if not C.differentials[k].compose(C.differentials[k + 1]).is_zero():
            return False
    return True


# -- acyclicity ---------------------------------------------------------------------


def rank_of_map(phi, seed=0):
    """Largest s with a nonvanishing s x s minor.

    Seeded random evaluations give a fast certified lower bound (a nonzero
    scalar minor lifts to a nonzero polynomial minor); exhaustive search over
    one size settles the exact value.
    """
    if phi.nrows == 0 or phi.ncols == 0 or phi.is_zero():
        return 0
    ring = phi.ring
    field = ring.field
    rng = random.Random(seed)
    best = 0
    for _ in range(3):
        point = [field.random(rng, 37) for _ in range(ring.nvars)]
        cols = []
        for j in range(phi.ncols):
            col = {}
            for i in range(phi.nrows):
                v = phi.entries[i][j].evaluate(point)
                if not field.is_zero(v):
                    col[i] = v
            cols.append(col)
        best = max(best, rank_of_columns(cols, field))
    s = best
    limit = min(phi.nrows, phi.ncols)
    while s > 0 and not _has_nonzero_minor(phi, s):
        s -= 1
    while s < limit and _has_nonzero_minor(phi, s + 1):
        s += 1
    return s


def _has_nonzero_minor(phi, s):
    if s == 0:
        return True
    for rows in combinations(range(phi.nrows), s):
        for cols in combinations(range(phi.ncols), s):
            grid = [[phi.entries[i][j] for j in cols] for i in rows]
            if not poly_det(grid, phi.ring).is_zero():
                return True
    return False


@dataclass(frozen=True)
class AcyclicityEntry:
    position: int
    expected_rank: int
    computed_rank: int
    minor_height: float

    @property
    def rank_ok(self):
        return self.computed_rank == self.expected_rank

    @property
    def height_ok(self):
        return self.minor_height >= self.position

    @property
    def ok(self):
        return self.rank_ok and self.height_ok


@dataclass(frozen=True)
class AcyclicityReport:
    entries: tuple

    @property
    def passed(self):
        return all(e.ok for e in self.entries)


def buchsbaum_eisenbud(C, seed=0):
    """Rank and height conditions per differential; pass iff acyclic.

    Expected ranks come from alternating sums against the left end; each
    differential must attain its expected rank and the ideal of minors of
    that size must have height at least the homological position.
    """
    if not verify_complex(C):
        raise InputError("buchsbaum_eisenbud requires a complex (d∘d = 0)")
    n = len(C.differentials)
    expected = [0] * (n + 2)
    for i in range(n, 0, -1):
        expected[i] = C.modules[i].rank - expected[i + 1]
    entries = []
    for i in range(1, n + 1):
        d = C.differentials[i - 1]
        r_i = expected[i]
        computed = rank_of_map(d, seed)
        if r_i <= 0:
            ht = math.inf if r_i == 0 else 0
        elif r_i > min(d.nrows, d.ncols):
            ht = 0
        else:
            ideal = minors(d, r_i)
            ht = height(ideal) if ideal.generators else 0
        entries.append(AcyclicityEntry(i, r_i, computed, ht))
    return AcyclicityReport(tuple(entries))


# -- Betti numbers -------------------------------------------------------------------


@dataclass(frozen=True)
class BettiTable:
    """(homological position, internal degree) -> generator count."""

    cells: tuple  # ((i, d, count), ...)

    def as_dict(self):
        return {(i, d): c for i, d, c in self.cells}

    def total_ranks(self):
        totals = {}
        for i, _, c in self.cells:
            totals[i] = totals.get(i, 0) + c
        return tuple(totals[i] for i in sorted(totals))

    def alternating_sum(self):
        return sum((-1) ** i * c for i, _, c in self.cells)


def betti_table(C, acyclicity=None, seed=0):
    """Graded Betti numbers read off a minimal acyclic complex."""
    if acyclicity is None:
        acyclicity = buchsbaum_eisenbud(C, seed)
    if not acyclicity.passed:
        raise VerificationError("betti_table needs an acyclic complex")
    for d in C.differentials:
        for row in d.entries:
            for p in row:
                if not p.is_zero() and p.homogeneous_degree() == 0:
                    raise VerificationError(
                        "complex is not minimal: a differential has a unit entry"
                    )
    cells = []
    for i, module in enumerate(C.modules):
        counts = {}
        for tw in module.twists:
            counts[tw] = counts.get(tw, 0) + 1
        for d in sorted(counts):
            cells.append((i, d, counts[d]))
    return BettiTable(tuple(cells))


def cm_type(P, seed=0):
    """Cohen-Macaulay type: rank of the last module of the minimal EN resolution.

    Cross-checked against the closed form C(r+t-1, r).
    """
    report = classify(P)
    if not report.is_standard:
        raise InputError("cm_type requires a standard determinantal presentation")
    complex_ = eagon_northcott(P)
    last_rank = complex_.modules[-1].rank
    expected = comb(P.r + P.t - 1, P.r)
    if last_rank != expected:
        raise VerificationError(
            f"last Eagon-Northcott rank {last_rank} != C(r+t-1, r) = {expected}"
        )
    return last_rank


# -- annihilator of the cokernel ------------------------------------------------------


@dataclass(frozen=True)
class AnnihilatorReport:
    passed: bool
    max_degree: int
    failed_degree: object = None
    failed_direction: object = None

    def __bool__(self):
        return self.passed


def verify_annihilator(P, d_max=8):
    """Check Ann(coker Φ) = I(Φ) degreewise up to d_max.

    One direction: every maximal minor multiplies every target generator
    into the image (with an explicit preimage witness).  The other: in each
    degree, the forms multiplying all generators into the image span a
    subspace of the minor ideal.
    """
    report = classify(P)
    if not report.is_standard:
        raise InputError("verify_annihilator requires a standard presentation")
    phi = P.matrix
    ring = phi.ring
    field = ring.field
    ideal = minors(P, P.t)
    gb = ensure_gb(ideal)

    for gen in ideal.generators:
        for j in range(phi.nrows):
            v = tuple(
                gen if i == j else ring.zero() for i in range(phi.nrows)
            )
            ok, witness = image_membership(v, phi)
            if not ok or witness is None:
                return AnnihilatorReport(
                    False,
                    d_max,
                    gen.homogeneous_degree(),
                    "minors-annihilate",
                )

    for d in range(d_max + 1):
        monos = ring.monomials_of_degree(d)
        if not monos:
            continue
        pieces = {}
        echelons = {}
        row_indexes = {}
        offsets = {}
        offset = 0
        for j in range(phi.nrows):
            dj = d + phi.target.twists[j]
            if dj not in pieces:
                piece = matrix_piece(phi, dj)
                ech = Echelon(field)
                for col in piece.cols:
                    ech.insert(col)
                pieces[dj] = piece
                echelons[dj] = ech
                row_indexes[dj] = {
                    item: idx for idx, item in enumerate(piece.row_basis)
                }
            offsets[j] = offset
            offset += len(pieces[dj].row_basis)
        columns = []
        for mu in monos:
            stacked = {}
            for j in range(phi.nrows):
                dj = d + phi.target.twists[j]
                vec = {row_indexes[dj][(j, mu)]: field.one}
                residual = echelons[dj].reduce(vec)
                for r, c in residual.items():
                    stacked[offsets[j] + r] = c
            columns.append(stacked)
        for kern in kernel_basis(columns, field):
            f = ring.from_terms((monos[t], c) for t, c in kern.items())
            if not normal_form(f, gb).is_zero():
                return AnnihilatorReport(False, d_max, d, "annihilator-inside-minors")
    return AnnihilatorReport(True, d_max)


# -- codimension-two canonical module --------------------------------------------------


@dataclass(frozen=True)
class CanonicalModule:
    """Presentation of ω as a cokernel, with the aligning twist.

    `shift` is the integer e with ω ≅ (coker Φ)(e), verified through
    Hilbert functions: HF(ω, d) = HF(coker Φ, d + e) on the checked window.
    """

    presentation: HomogeneousMatrix
    shift: int
    cyclic: bool
    degrees: tuple


def canonical_module(P, d_max=None, engine="auto"):
    report = classify(P)
    if not report.is_standard or P.r != 1:
        raise InputError("canonical_module needs a standard codimension-2 presentation")
    ring = P.ring
    if d_max is None:
        max_deg = max(
            (
                p.homogeneous_degree()
                for row in P.matrix.entries
                for p in row
                if not p.is_zero()
            ),
            default=1,
        )
        d_max = default_truncation_bound(ring, max_deg)
    en = eagon_northcott(P)
    last = en.differentials[-1]
    omega = last.transpose_dual().shifted(ring.nvars)

    def first_nonzero(subject, start):
        for d in range(start, start + 64):
            if hilbert_function(subject, d, engine) > 0:
                return d
        raise VerificationError("module appears to vanish; no aligning twist")

    mx = Coker(P.matrix)
    om = Coker(omega)
    d0_x = first_nonzero(mx, min(P.matrix.target.twists))
    d0_w = first_nonzero(om, min(omega.target.twists))
    e = d0_x - d0_w
    degrees = []
    for k in range(d_max + 1):
        hx = hilbert_function(mx, k, engine)
        hw = hilbert_function(om, k - e, engine)
        if hx != hw:
            raise VerificationError(
                f"canonical-module Hilbert functions disagree in degree {k}: "
                f"{hx} != {hw}",
                degree=k,
            )
        degrees.append(k)
    return CanonicalModule(omega, e, omega.target.rank == 1, tuple(degrees))
