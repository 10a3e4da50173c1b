"""Acceptance suite: every exit criterion at its stated scale, exact.

Each test prints one pass/fail line.  All comparisons are exact equalities
of exact objects; there are no tolerances anywhere.  Seeds are fixed so the
whole suite is reproducible.
"""

import random
import time

from fuchskit.diffmod import (
    DiffModule,
    base_change,
    block_extension,
    det_cofactor,
    expring_matrix_is_horizontal,
    ext_dim,
    fundamental_matrix,
    is_horizontal_morphism,
    laurent_matrix,
    match_right_factor,
    rank_one,
)
from fuchskit.errors import NotFoundWithinBounds
from fuchskit.expring import solve_dsigma, solve_partial, kernel_checks
from fuchskit.functors import (
    ExponentMultiset,
    exponents,
    find_constant_form,
    horizontal_isomorphism,
    mon,
    mon_hom_compare,
    rm,
    verify_no_exp_no_log,
)
from fuchskit.generate import (
    Sizes,
    rand_constant_gauge,
    rand_constant_module,
    rand_expring,
    rand_shearing_gauge,
    rand_sigma_module,
)
from fuchskit.laurent import LaurentPoly, kernel_partial, kernel_partial_plus, kernel_partial_square
from fuchskit.linalg import Matrix, jordan_form
from fuchskit.ratio import Rat
from fuchskit.scalar import Cyclotomic, ExponentClass, euler_phi
from fuchskit.sigmamod import isomorphism, rank_one as v_rank_one

C = Cyclotomic.from_rat
SIZES = Sizes(max_dim=5, max_denominator=12, max_numerator=3, shear_bound=2)


def report(criterion, ok, detail=""):
    line = f"[acceptance] criterion {criterion}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def test_criterion_1_equivalence_round_trip():
    """rm(mon(M)) isomorphic to M with an explicit horizontal witness, and
    mon(rm(V)) conjugate to V, 200 cases each, exact, under 120 s."""
    rng = random.Random(1001)
    start = time.time()
    for case in range(200):
        m = rand_constant_module(rng, SIZES)
        m2 = rm(mon(m))
        f = horizontal_isomorphism(m, m2)
        assert f is not None, (case, "no witness")
        assert is_horizontal_morphism(f, m, m2), (case, "witness not horizontal")
        assert det_cofactor(f).is_unit, (case, "witness not invertible over A")
    for case in range(200):
        v = rand_sigma_module(rng, SIZES)
        v2 = mon(rm(v))
        t = isomorphism(v, v2)
        assert t is not None, (case, "no conjugacy witness")
        assert t * v.monodromy * t.inverse() == v2.monodromy, (case, "conjugation fails")
    elapsed = time.time() - start
    report(1, elapsed < 120, f"200+200 round trips with witnesses in {elapsed:.1f}s")


def test_criterion_2_solver_surjectivity():
    """d_sigma(solve_dsigma(y)) = y and partial(solve_partial(y)) = y for
    500 random targets each, exactly."""
    rng = random.Random(1002)
    for case in range(500):
        y = rand_expring(rng, SIZES)
        assert solve_dsigma(y).dsigma() == y, ("dsigma", case)
    for case in range(500):
        y = rand_expring(rng, SIZES)
        assert solve_partial(y).partial() == y, ("partial", case)
    report(2, True, "500+500 exact round trips")


def test_criterion_3_kernel_theorems():
    """Windowed kernels on A, A[t^K], A[ell], E_A slices match K, K, 0, A
    for windows up to degree 8 and ell-degree 4."""
    rep = kernel_checks(
        degree_bound=8, ell_bound=4, exponent_samples=(Rat(1, 2), Rat(1, 3), Rat(5, 12))
    )
    ok = rep["ok"]
    # on A itself: ker(partial) = K, ker(partial^2) = K, ker(partial + a) = 0
    basis = kernel_partial(-8, 8)
    ok = ok and len(basis) == 1 and basis[0] == LaurentPoly.one()
    basis = kernel_partial_square(-8, 8)
    ok = ok and len(basis) == 1 and basis[0] == LaurentPoly.one()
    for a in (Rat(1, 2), Rat(1, 3), Rat(5, 12), Rat(11, 12)):
        ok = ok and kernel_partial_plus(-8, 8, a) == []
    ok = ok and verify_no_exp_no_log(degree_bound=8)["ok"]
    report(3, ok, "partial, partial^2, partial+a, d_sigma kernels exact")


def test_criterion_4_exponent_invariance():
    """Exponents before and after random gauges agree as multisets mod Z,
    for 100 modules: constant GL_n(K) gauges and shearing gauges."""
    rng = random.Random(1004)
    for case in range(100):
        m = rand_constant_module(rng, SIZES)
        before = exponents(m)
        after_const = exponents(base_change(m, rand_constant_gauge(rng, m.dim)))
        assert before == after_const, (case, "constant gauge")
        sheared = base_change(m, rand_shearing_gauge(rng, SIZES, m.dim))
        cf = find_constant_form(
            sheared,
            exponent_candidates=list(dict.fromkeys(before.entries)),
            laurent_degree_bound=SIZES.shear_bound + SIZES.max_numerator + 2,
        )
        after_shear = exponents(DiffModule.from_constant(cf.constant))
        assert before == after_shear, (case, "shearing gauge")
    report(4, True, "100 modules, constant and shearing gauges")


def test_criterion_5_functoriality():
    """mon_hom_compare passes on 100 random pairs; exponents of tensor and
    dual follow sums and negation mod Z."""
    rng = random.Random(1005)
    for case in range(100):
        m1 = rand_constant_module(rng, SIZES, dim=rng.randint(1, 3))
        m2 = rand_constant_module(rng, SIZES, dim=rng.randint(1, 3))
        rep = mon_hom_compare(m1, m2)
        assert rep["ok"], (case, rep)
    report(5, True, "100 pairs: Hom dimensions and exponent arithmetic")


def test_criterion_6_ext_dimensions():
    """ext_dim(N(a), N(b)) = [a = b mod Z] over all classes with denominator
    <= 12, and the unit self-extension has unipotent monodromy J(1,2)."""
    classes = []
    for q in range(1, 13):
        for p in range(q):
            from math import gcd

            if gcd(p, q) == 1:
                classes.append(Rat(p, q))
    assert len(classes) == sum(euler_phi(q) for q in range(1, 13))
    for a in classes:
        for b in classes:
            expected = 1 if a == b else 0
            assert ext_dim(rank_one(a), rank_one(b)) == expected, (a, b)
    # representatives differing by an integer still pair up
    assert ext_dim(rank_one(Rat(1, 2)), rank_one(Rat(5, 2))) == 1
    assert ext_dim(rank_one(2), rank_one(-1)) == 1

    e = block_extension(rank_one(0), rank_one(0), laurent_matrix([[1]]))
    assert e.matrix == laurent_matrix([[0, 1], [0, 0]])
    assert mon(e).monodromy == Matrix([[C(1), C(1)], [C(0), C(1)]])
    report(6, True, f"{len(classes)}^2 rank-one pairs + unit self-extension")


def test_criterion_7_fundamental_matrices():
    """partial(U) = -G U and sigma(U) = U R with R conjugate to the
    monodromy, for 100 random constant matrices."""
    rng = random.Random(1007)
    for case in range(100):
        m = rand_constant_module(rng, SIZES)
        u = fundamental_matrix(m)
        assert expring_matrix_is_horizontal(u, m.matrix), (case, "not horizontal")
        r = match_right_factor(u, u.map(lambda x: x.sigma()))
        assert jordan_form(r).blocks == jordan_form(mon(m).monodromy).blocks, (
            case,
            "sigma factor not conjugate to the monodromy",
        )
    report(7, True, "100 fundamental matrices")


def test_criterion_8_worked_examples():
    """The golden examples ship as written."""
    ok = mon(rank_one(Rat(1, 2))) == v_rank_one(C(-1))
    ok = ok and rm(v_rank_one(C(-1))) == rank_one(Rat(1, 2))

    shear_mod = DiffModule(laurent_matrix([[0, LaurentPoly.t_power(1)], [0, 0]]))
    gauge = laurent_matrix([[1, 0], [0, LaurentPoly.t_power(1)]])
    ok = ok and base_change(shear_mod, gauge).matrix == laurent_matrix([[0, 1], [0, 1]])
    ok = ok and exponents(shear_mod) == ExponentMultiset.from_classes(
        [ExponentClass(0), ExponentClass(0)]
    )
    cf = find_constant_form(shear_mod)
    ok = ok and base_change(shear_mod, cf.gauge).matrix == cf.constant.map(
        LaurentPoly.from_scalar
    )

    irregular = DiffModule(laurent_matrix([[LaurentPoly({0: 1, 1: 1})]]))
    try:
        find_constant_form(irregular, laurent_degree_bound=8)
        ok = False
    except NotFoundWithinBounds:
        pass
    report(8, ok, "Mon(N(1/2)), Rm(V_-1), shearing example, 1+t rejected")
