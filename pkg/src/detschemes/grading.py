"""Twisted graded free modules, homogeneous matrices, and degree pieces.

Twists record the degree of each free generator, so F = ⊕_j R(-twist_j) and
the degree-d piece of F has one basis element per (generator j, monomial of
degree d - twist_j).  A matrix between twisted modules is homogeneous when
entry (i, j) is zero or of degree source.twist(j) - target.twist(i); that is
checked at construction time, so every HomogeneousMatrix in flight is valid.

Degree-piece ranks drive Hilbert functions and exactness checks.  Two exact
engines are available and cross-checked by the test suite: incremental
sparse echelon on the assembled scalar piece (fine while pieces are small)
and standard-monomial counting against a Groebner basis of the column module
(fast at any degree).  The "auto" engine switches on piece size.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import ColumnModuleGB, IdealBasis, quotient_hilbert_function
from .linalg import AugmentedEchelon, Echelon

#: columns-times-rows bound below which the echelon engine is used by "auto"
_PIECE_AUTO_LIMIT = 20000


class GradingError(ValueError):
    pass


@dataclass(frozen=True)
class GradedFreeModule:
    """Free module with one integer twist (generator degree) per generator."""

    ring: object
    twists: tuple

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(self.twists))

    @property
    def rank(self):
        return len(self.twists)

    def dim(self, d):
        return sum(self.ring.dim_of_degree(d - tw) for tw in self.twists)

    def dual(self):
        return GradedFreeModule(self.ring, tuple(-tw for tw in self.twists))

    def shifted(self, e):
        """Add e to every generator degree (the module twisted by -e)."""
        return GradedFreeModule(self.ring, tuple(tw + e for tw in self.twists))

    def describe(self):
        """Human-readable sum of line-bundle style summands, e.g. R(-2)^3."""
        if not self.twists:
            return "0"
        groups = {}
        for tw in self.twists:
            groups[tw] = groups.get(tw, 0) + 1
        parts = []
        for tw in sorted(groups):
            base = f"R({-tw})" if tw != 0 else "R"
            n = groups[tw]
            parts.append(base if n == 1 else f"{base}^{n}")
        return " + ".join(parts)


@dataclass(frozen=True)
class DegreeBasis:
    """Ordered monomial basis of a degree piece of a graded free module."""

    degree: int
    items: tuple  # of (generator index, Monomial)

    def __len__(self):
        return len(self.items)

    def index_map(self):
        return {item: i for i, item in enumerate(self.items)}


def default_truncation_bound(ring, max_generator_degree):
    """Degreewise checks run to (max generator degree) + n + 3 by default:
    far enough to see Hilbert-polynomial stabilization on desk-scale data."""
    return max_generator_degree + (ring.nvars - 1) + 3


def degree_basis(F, d):
    """Deterministic basis of F_d: generators in order, monomials descending."""
    items = []
    for j, tw in enumerate(F.twists):
        k = d - tw
        if k < 0:
            continue
        for m in F.ring.monomials_of_degree(k):
            items.append((j, m))
    return DegreeBasis(d, tuple(items))


class HomogeneousMatrix:
    """Polynomial matrix representing a graded map source -> target.

    Entries act on column vectors: column j holds the image of the j-th
    source generator.
    """

    __slots__ = ("ring", "target", "source", "entries")

    def __init__(self, target, source, entries):
        if target.ring != source.ring:
            raise GradingError("source and target must share a ring")
        ring = target.ring
        rows = tuple(tuple(row) for row in entries)
        if len(rows) != target.rank:
            raise GradingError("row count must equal target rank")
        for row in rows:
            if len(row) != source.rank:
                raise GradingError("column count must equal source rank")
        for i, row in enumerate(rows):
            for j, p in enumerate(row):
                if p.ring != ring:
                    raise GradingError("entry from a different ring")
                if p.is_zero():
                    continue
                want = source.twists[j] - target.twists[i]
                if p.homogeneous_degree() != want:
                    raise GradingError(
                        f"entry ({i},{j}) must be homogeneous of degree {want}"
                    )
        self.ring = ring
        self.target = target
        self.source = source
        self.entries = rows

    @property
    def nrows(self):
        return self.target.rank

    @property
    def ncols(self):
        return self.source.rank

    def entry(self, i, j):
        return self.entries[i][j]

    def column(self, j):
        return tuple(self.entries[i][j] for i in range(self.nrows))

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def is_zero(self):
        return all(p.is_zero() for row in self.entries for p in row)

    def compose(self, other):
        """self ∘ other, valid when other.target equals self.source."""
        if other.target.twists != self.source.twists:
            raise GradingError("composition twist mismatch")
        ring = self.ring
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = ring.zero()
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return HomogeneousMatrix(self.target, other.source, rows)

    def transpose_dual(self):
        """The dual map between dual modules (entries transposed)."""
        rows = [
            [self.entries[i][j] for i in range(self.nrows)]
            for j in range(self.ncols)
        ]
        return HomogeneousMatrix(self.source.dual(), self.target.dual(), rows)

    def shifted(self, e):
        """Both modules shifted by e; entries unchanged."""
        return HomogeneousMatrix(
            self.target.shifted(e), self.source.shifted(e), self.entries
        )

    def __eq__(self, other):
        return (
            isinstance(other, HomogeneousMatrix)
            and self.target == other.target
            and self.source == other.source
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.target, self.source, self.entries))

    def __repr__(self):
        return f"HomogeneousMatrix({self.nrows}x{self.ncols}: {self.source.describe()} -> {self.target.describe()})"


def zero_matrix(target, source):
    z = target.ring.zero()
    rows = [[z] * source.rank for _ in range(target.rank)]
    return HomogeneousMatrix(target, source, rows)


def identity_matrix(F):
    z = F.ring.zero()
    one = F.ring.one()
    rows = [
        [one if i == j else z for j in range(F.rank)] for i in range(F.rank)
    ]
    return HomogeneousMatrix(F, F, rows)


def matrix_from_strings(ring, rows, row_twists=None, col_twists=None):
    """Build a HomogeneousMatrix from polynomial strings, inferring twists.

    Twist inference walks the bipartite row/column incidence graph of
    nonzero entries, pinning the first row of each connected component to
    twist 0 (columns are pinned when only columns remain unvisited).
    """
    polys = [[ring.parse(s) for s in row] for row in rows]
    return matrix_from_polys(ring, polys, row_twists, col_twists)


def matrix_from_polys(ring, polys, row_twists=None, col_twists=None):
    nrows = len(polys)
    ncols = len(polys[0]) if nrows else 0
    for row in polys:
        if len(row) != ncols:
            raise GradingError("matrix rows must have equal length")
    degs = {}
    for i, row in enumerate(polys):
        for j, p in enumerate(row):
            if p.is_zero():
                continue
            d = p.homogeneous_degree()
            if not isinstance(d, int):
                raise GradingError(f"entry ({i},{j}) is not homogeneous")
            degs[(i, j)] = d
    if row_twists is not None and col_twists is not None:
        rt, ct = list(row_twists), list(col_twists)
    else:
        rt = [None] * nrows
        ct = [None] * ncols
        if row_twists is not None:
            rt = list(row_twists)
        if col_twists is not None:
            ct = list(col_twists)
        # propagate along nonzero entries: ct[j] - rt[i] = deg(i, j)
        changed = True
        while changed:
            changed = False
            for (i, j), d in degs.items():
                if rt[i] is not None and ct[j] is None:
                    ct[j] = rt[i] + d
                    changed = True
                elif ct[j] is not None and rt[i] is None:
                    rt[i] = ct[j] - d
                    changed = True
            if all(tw is not None for tw in rt + ct):
                break
            if not changed:
                for i in range(nrows):
                    if rt[i] is None:
                        rt[i] = 0
                        changed = True
                        break
                else:
                    for j in range(ncols):
                        if ct[j] is None:
                            ct[j] = 1
                            changed = True
                            break
    target = GradedFreeModule(ring, tuple(rt))
    source = GradedFreeModule(ring, tuple(ct))
    return HomogeneousMatrix(target, source, polys)


# -- degree pieces -----------------------------------------------------------------


class PieceMatrix:
    """Scalar matrix of a degree piece, stored as sparse columns."""

    __slots__ = ("field", "row_basis", "col_basis", "cols")

    def __init__(self, field, row_basis, col_basis, cols):
        self.field = field
        self.row_basis = row_basis
        self.col_basis = col_basis
        self.cols = cols  # list of {row_index: coeff}

    @property
    def nrows(self):
        return len(self.row_basis)

    @property
    def ncols(self):
        return len(self.col_basis)

    def dense(self):
        zero = self.field.zero
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, c in col.items():
                out[i][j] = c
        return out

    def rank(self):
        ech = Echelon(self.field)
        for col in self.cols:
            ech.insert(col)
        return ech.rank

    def multiply(self, other):
        """Matrix product self * other on compatible piece bases."""
        if len(other.row_basis) != self.ncols:
            raise GradingError("piece multiplication shape mismatch")
        field = self.field
        cols = []
        for col in other.cols:
            acc = {}
            for k, c in col.items():
                for i, a in self.cols[k].items():
                    v = field.add(acc.get(i, field.zero), field.mul(a, c))
                    if field.is_zero(v):
                        acc.pop(i, None)
                    else:
                        acc[i] = v
            cols.append(acc)
        return PieceMatrix(field, self.row_basis, other.col_basis, cols)


def matrix_piece(phi, d):
    """The k-linear map (source)_d -> (target)_d in degree-basis coordinates."""
    ring = phi.ring
    field = ring.field
    rows = degree_basis(phi.target, d)
    cols = degree_basis(phi.source, d)
    row_index = rows.index_map()
    piece_cols = []
    for (j, mu) in cols.items:
        acc = {}
        for i in range(phi.nrows):
            p = phi.entries[i][j]
            if p.is_zero():
                continue
            for m, c in p.terms:
                key = (i, mu.mul(m))
                ridx = row_index[key]
                v = field.add(acc.get(ridx, field.zero), c)
                if field.is_zero(v):
                    acc.pop(ridx, None)
                else:
                    acc[ridx] = v
        piece_cols.append(acc)
    return PieceMatrix(field, rows.items, cols.items, piece_cols)


_COLUMN_GB_CACHE = {}


def column_module_gb(phi):
    hit = _COLUMN_GB_CACHE.get(phi)
    if hit is None:
        hit = ColumnModuleGB(phi.ring, phi.target.twists, phi.columns())
        _COLUMN_GB_CACHE[phi] = hit
    return hit


def piece_rank(phi, d, engine="auto"):
    """Exact rank of the degree-d piece of a homogeneous matrix."""
    if engine == "auto":
        size = phi.source.dim(d) * phi.target.dim(d)
        engine = "echelon" if size <= _PIECE_AUTO_LIMIT else "groebner"
    if engine == "echelon":
        return matrix_piece(phi, d).rank()
    if engine == "groebner":
        return column_module_gb(phi).image_dim(d)
    raise GradingError(f"unknown rank engine {engine!r}")


# -- Hilbert functions ----------------------------------------------------------------


@dataclass(frozen=True)
class Coker:
    matrix: HomogeneousMatrix


@dataclass(frozen=True)
class Ker:
    matrix: HomogeneousMatrix


def hilbert_function(subject, d, engine="auto"):
    """dim_k of the degree-d piece of R/I, coker Φ, or ker Φ.

    Values come from rank-nullity on the degree piece; the rank itself is
    computed by the selected exact engine.
    """
    if isinstance(subject, IdealBasis):
        return _hf_quotient(subject, d, engine)
    if isinstance(subject, Coker):
        m = subject.matrix
        return m.target.dim(d) - piece_rank(m, d, engine)
    if isinstance(subject, Ker):
        m = subject.matrix
        return m.source.dim(d) - piece_rank(m, d, engine)
    raise GradingError(f"unsupported Hilbert subject {subject!r}")


def _ideal_as_matrix(I):
    ring = I.ring
    gens = [g for g in I.generators if not g.is_zero()]
    twists = []
    for g in gens:
        dg = g.homogeneous_degree()
        if not isinstance(dg, int):
            raise GradingError("Hilbert function needs homogeneous generators")
        twists.append(dg)
    target = GradedFreeModule(ring, (0,))
    source = GradedFreeModule(ring, tuple(twists))
    return HomogeneousMatrix(target, source, [gens])


def _hf_quotient(I, d, engine):
    ring = I.ring
    if d < 0:
        return 0
    gens = [g for g in I.generators if not g.is_zero()]
    if not gens:
        return ring.dim_of_degree(d)
    if engine == "gb_oracle":
        return quotient_hilbert_function(I, d)
    return hilbert_function(Coker(_ideal_as_matrix(I)), d, engine)


# -- membership and exactness -----------------------------------------------------------


def image_membership(v, phi):
    """Decide v ∈ im Φ for a homogeneous target element; witness on success.

    v is a tuple of polynomials (one per target generator), homogeneous of a
    common total degree.  Returns (True, preimage) or (False, None).
    """
    ring = phi.ring
    field = ring.field
    if len(v) != phi.target.rank:
        raise GradingError("element length must equal target rank")
    degree = None
    for i, p in enumerate(v):
        if p.is_zero():
            continue
        dp = p.homogeneous_degree()
        if not isinstance(dp, int):
            raise GradingError("element must be homogeneous")
        total = dp + phi.target.twists[i]
        if degree is None:
            degree = total
        elif degree != total:
            raise GradingError("element components have mismatched degrees")
    if degree is None:
        return True, tuple(ring.zero() for _ in range(phi.source.rank))

    piece = matrix_piece(phi, degree)
    row_index = {item: idx for idx, item in enumerate(piece.row_basis)}
    target_vec = {}
    for i, p in enumerate(v):
        for m, c in p.terms:
            target_vec[row_index[(i, m)]] = c
    solver = AugmentedEchelon(field)
    for j, col in enumerate(piece.cols):
        solver.insert(col, j)
    combo = solver.solve(target_vec)
    if combo is None:
        return False, None
    parts = [[] for _ in range(phi.source.rank)]
    for j, c in combo.items():
        gen, mono = piece.col_basis[j]
        parts[gen].append((mono, c))
    preimage = tuple(ring.from_terms(part) for part in parts)
    return True, preimage


@dataclass(frozen=True)
class ExactnessEntry:
    position: int
    degree: int
    kernel_dim: int
    image_dim: int

    @property
    def exact(self):
        return self.kernel_dim == self.image_dim


@dataclass(frozen=True)
class ExactnessReport:
    entries: tuple

    @property
    def all_exact(self):
        return all(e.exact for e in self.entries)

    def failures(self):
        return [e for e in self.entries if not e.exact]


def graded_exactness_check(complex_, degrees, engine="auto"):
    """Degreewise exactness of a free complex at its interior positions.

    For each position i >= 1 and degree d: dim ker((d_i)_d) must equal
    dim im((d_{i+1})_d); the composition of consecutive differentials must
    already vanish (verify separately) for the report to certify acyclicity.
    """
    modules = complex_.modules
    diffs = complex_.differentials
    entries = []
    for d in degrees:
        ranks = [piece_rank(diff, d, engine) for diff in diffs]
        for i in range(1, len(modules)):
            dim_fi = modules[i].dim(d)
            ker_dim = dim_fi - ranks[i - 1]
            im_dim = ranks[i] if i < len(diffs) else 0
            entries.append(ExactnessEntry(i, d, ker_dim, im_dim))
    return ExactnessReport(tuple(entries))
