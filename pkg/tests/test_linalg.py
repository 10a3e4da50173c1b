"""Exact matrices over the cyclotomics: charpoly, solving, Jordan form.

The characteristic polynomial is checked against an independent oracle
(permutation expansion of det(xI - M) over the polynomial ring); Jordan data
is verified by exact reconstruction P^-1 M P = J.
"""

from itertools import permutations

import pytest
from hypothesis import given, settings

from conftest import cyclotomics

from fuchskit.errors import EigenvalueNotFound, NonSquare
from fuchskit.linalg import (
    Matrix,
    charpoly,
    eigenvalues,
    integer_eigenvalues,
    jordan_block,
    jordan_form,
)
from fuchskit.ratio import Rat
from fuchskit.scalar import Cyclotomic

C = Cyclotomic.from_rat


def _poly_mul(p, q):
    out = [Cyclotomic.zero()] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def charpoly_oracle(m):
    """det(x*I - M) by permutation expansion; independent of Faddeev-LeVerrier."""
    n = m.rows
    entries = [
        [
            [-m.data[i][j], Cyclotomic.one()] if i == j else [-m.data[i][j]]
            for j in range(n)
        ]
        for i in range(n)
    ]
    total = [Cyclotomic.zero()] * (n + 1)
    for perm in permutations(range(n)):
        prod = [Cyclotomic.one()]
        for i in range(n):
            prod = _poly_mul(prod, entries[i][perm[i]])
        sign = _perm_sign(perm)
        for k, c in enumerate(prod):
            total[k] = total[k] + (c if sign > 0 else -c)
    return total


class TestCharpoly:
    def test_nilpotent(self):
        m = Matrix([[C(0), C(1)], [C(0), C(0)]])
        assert charpoly(m) == [C(0), C(0), C(1)]

    def test_diagonal(self):
        a, b = C(Rat(1, 2)), C(3)
        m = Matrix([[a, C(0)], [C(0), b]])
        # (x - a)(x - b)
        assert charpoly(m) == [a * b, -(a + b), C(1)]

    def test_rotation(self):
        m = Matrix([[C(0), C(1)], [C(-1), C(0)]])
        assert charpoly(m) == [C(1), C(0), C(1)]

    def test_non_square_raises(self):
        with pytest.raises(NonSquare):
            charpoly(Matrix([[C(1), C(0)]]))

    @given(cyclotomics(), cyclotomics(), cyclotomics(), cyclotomics())
    @settings(max_examples=25, deadline=None)
    def test_matches_permutation_oracle(self, a, b, c, d):
        m = Matrix([[a, b], [c, d]])
        assert charpoly(m) == charpoly_oracle(m)

    @given(cyclotomics(), cyclotomics(), cyclotomics(), cyclotomics())
    @settings(max_examples=15, deadline=None)
    def test_cayley_hamilton(self, a, b, c, d):
        m = Matrix([[a, b], [c, d]])
        acc = Matrix.zeros(2, 2)
        power = Matrix.identity(2)
        for coeff in charpoly(m):
            acc = acc + power.scale(coeff)
            power = power * m
        assert acc == Matrix.zeros(2, 2)


class TestSolve:
    def test_identity(self):
        m = Matrix.identity(3)
        b = [C(1), C(2), C(3)]
        sol = m.solve(b)
        assert sol.particular == b and not sol.kernel

    def test_rank_one_system(self):
        m = Matrix([[C(1), C(1)], [C(1), C(1)]])
        sol = m.solve([C(1), C(1)])
        assert sol.particular == [C(1), C(0)]
        assert sol.kernel == [[C(-1), C(1)]]

    def test_inconsistent_is_empty(self):
        m = Matrix([[C(1)], [C(0)]])
        assert m.solve([C(0), C(1)]).is_empty


class TestJordan:
    def test_nilpotent_block(self):
        m = Matrix([[C(0), C(1)], [C(0), C(0)]])
        jd = jordan_form(m)
        assert jd.blocks == [(C(0), 2)]
        assert jd.transform.inverse() * m * jd.transform == jd.jordan_matrix()

    def test_rotation_splits_over_gaussians(self):
        m = Matrix([[C(0), C(1)], [C(-1), C(0)]])
        jd = jordan_form(m)
        z4 = Cyclotomic.root_of_unity(4)
        assert jd.blocks == [(z4, 1), (z4 ** 3, 1)]
        assert jd.transform.inverse() * m * jd.transform == jd.jordan_matrix()

    def test_scalar_matrix(self):
        h = C(Rat(1, 2))
        m = Matrix([[h, C(0)], [C(0), h]])
        assert jordan_form(m).blocks == [(h, 1), (h, 1)]

    def test_blocks_sorted_sizes_descending(self):
        m = Matrix.block_diag([jordan_block(C(2), 1), jordan_block(C(2), 3)])
        jd = jordan_form(m)
        assert jd.blocks == [(C(2), 3), (C(2), 1)]

    def test_idempotent_on_block_matrix(self, rng):
        from fuchskit.generate import Sizes, rand_constant_module

        for _ in range(10):
            m = rand_constant_module(rng, Sizes(max_dim=4)).constant_matrix()
            jd = jordan_form(m)
            assert jd.transform.inverse() * m * jd.transform == jd.jordan_matrix()
            again = jordan_form(jd.jordan_matrix())
            key = lambda blocks: sorted((l.sort_key(), s) for l, s in blocks)
            assert key(again.blocks) == key(jd.blocks)

    def test_eigenvalue_not_found(self):
        # x^2 - 2 has no rational or root-of-unity roots
        m = Matrix([[C(0), C(2)], [C(1), C(0)]])
        with pytest.raises(EigenvalueNotFound):
            jordan_form(m)

    def test_repeated_cyclotomic_roots_from_rational_matrix(self):
        # companion matrix of (x^2 + x + 1)^2: eigenvalues zeta_3, zeta_3^2,
        # each with one Jordan block of size 2 (minimal polynomial squared)
        comp = Matrix([
            [C(0), C(0), C(0), C(-1)],
            [C(1), C(0), C(0), C(-2)],
            [C(0), C(1), C(0), C(-3)],
            [C(0), C(0), C(1), C(-2)],
        ])
        z3 = Cyclotomic.root_of_unity(3)
        jd = jordan_form(comp)
        assert jd.blocks == [(z3, 2), (z3 ** 2, 2)]
        assert jd.transform.inverse() * comp * jd.transform == jd.jordan_matrix()

    def test_golden_ratio_matrix_rejected_honestly(self):
        m = Matrix([[C(1), C(1)], [C(1), C(0)]])
        with pytest.raises(EigenvalueNotFound):
            eigenvalues(m)


class TestIntegerEigenvalues:
    def test_mixed_spectrum(self):
        m = Matrix.block_diag(
            [jordan_block(C(2), 2), jordan_block(C(Rat(1, 2)), 1), jordan_block(C(-1), 1)]
        )
        assert integer_eigenvalues(m) == [(-1, 1), (2, 1)]

    def test_no_search_bound_needed(self):
        m = Matrix([[C(1000000)]])
        assert integer_eigenvalues(m) == [(1000000, 1)]
