import random
from fractions import Fraction
from itertools import permutations

from detschemes import QQ
from detschemes.linalg import (
    AugmentedEchelon,
    IntEchelon,
    bareiss_rank,
    kernel_basis,
    poly_det,
    rank_of_columns,
    rational_matrix_rank,
    solve_columns,
)


def _dense_to_cols(rows):
    ncols = len(rows[0])
    cols = []
    for j in range(ncols):
        col = {i: Fraction(rows[i][j]) for i in range(len(rows)) if rows[i][j]}
        cols.append(col)
    return cols


def _random_matrix(rng, nrows, ncols, lo=-4, hi=4):
    return [[rng.randint(lo, hi) for _ in range(ncols)] for _ in range(nrows)]


def test_echelon_rank_matches_bareiss():
    rng = random.Random(3)
    for _ in range(30):
        rows = _random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        assert rank_of_columns(_dense_to_cols(rows), QQ) == bareiss_rank(rows)


def test_int_echelon_matches_fraction_echelon():
    rng = random.Random(5)
    for _ in range(30):
        rows = _random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        cols = _dense_to_cols(rows)
        ech = IntEchelon()
        for col in cols:
            ech.insert({r: int(c) for r, c in col.items()})
        assert ech.rank == rank_of_columns(cols, QQ)


def test_kernel_basis_annihilates():
    rng = random.Random(7)
    for _ in range(25):
        nrows, ncols = rng.randint(1, 5), rng.randint(1, 6)
        rows = _random_matrix(rng, nrows, ncols)
        cols = _dense_to_cols(rows)
        kern = kernel_basis(cols, QQ)
        assert len(kern) == ncols - bareiss_rank(rows)
        for vec in kern:
            for i in range(nrows):
                total = sum(Fraction(rows[i][j]) * c for j, c in vec.items())
                assert total == 0


def test_solve_columns_witness():
    rng = random.Random(9)
    for _ in range(25):
        nrows, ncols = rng.randint(1, 5), rng.randint(1, 5)
        rows = _random_matrix(rng, nrows, ncols)
        cols = _dense_to_cols(rows)
        x = [rng.randint(-3, 3) for _ in range(ncols)]
        target = {}
        for i in range(nrows):
            v = sum(Fraction(rows[i][j]) * x[j] for j in range(ncols))
            if v:
                target[i] = v
        combo = solve_columns(cols, target, QQ)
        assert combo is not None
        for i in range(nrows):
            got = sum(Fraction(rows[i][j]) * combo.get(j, 0) for j in range(ncols))
            assert got == target.get(i, 0)


def test_solve_columns_unsolvable():
    cols = [{0: Fraction(1)}]
    assert solve_columns(cols, {1: Fraction(1)}, QQ) is None


def test_augmented_echelon_dependency_combination():
    ech = AugmentedEchelon(QQ)
    ech.insert({0: Fraction(1), 1: Fraction(2)}, "a")
    ech.insert({1: Fraction(1)}, "b")
    dep = ech.insert({0: Fraction(2), 1: Fraction(5)}, "c")
    assert dep == {"a": Fraction(2), "b": Fraction(1)}


def test_bareiss_rank_known():
    assert bareiss_rank([[1, 2], [2, 4]]) == 1
    assert bareiss_rank([[1, 0], [0, 1]]) == 2
    assert bareiss_rank([[0, 0], [0, 0]]) == 0


def test_rational_matrix_rank_clears_denominators():
    rows = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), Fraction(2)]]
    assert rational_matrix_rank(rows) == 2
    singular = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), Fraction(1)]]
    assert rational_matrix_rank(singular) == 1


def _det_by_permutations(grid, ring):
    n = len(grid)
    total = ring.zero()
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = ring.one()
        for i in range(n):
            term = term * grid[i][perm[i]]
        total = total + (term if sign == 1 else -term)
    return total


def test_poly_det_matches_permutation_expansion(ring):
    rng = random.Random(11)
    gens = ring.gens()
    for _ in range(10):
        n = rng.randint(1, 3)
        grid = [
            [
                gens[rng.randrange(4)].scale(QQ.from_int(rng.randint(-2, 2)))
                for _ in range(n)
            ]
            for _ in range(n)
        ]
        assert poly_det(grid, ring) == _det_by_permutations(grid, ring)


def test_poly_det_empty_matrix(ring):
    assert poly_det([], ring) == ring.one()


def test_poly_det_fraction_coefficients(ring):
    # non-integer coefficients exercise the generic Laplace path
    half_x0 = ring.parse("1/2*x0")
    x1 = ring.parse("x1")
    grid = [[half_x0, x1], [x1, half_x0]]
    assert poly_det(grid) == ring.parse("1/4*x0^2 - x1^2")
