"""The monodromy equivalence made computable.

mon sends a module with constant connection matrix to the representation of
Z obtained by swapping every Jordan block J(a, n) for J(gamma(-a), n); rm is
the inverse dictionary.  For nonconstant matrices, find_constant_form
searches for a full basis of horizontal sections of M (x) E_A by exact
linear algebra on a bounded coefficient space, then reconstructs the gauge
and the constant matrix from the monodromy action on that basis.
"""

from dataclasses import dataclass
from math import factorial

from .diffmod import (
    DiffModule,
    base_change,
    dual,
    horizontal_hom,
    match_left_factor,
    tensor,
)
from .errors import (
    EigenvalueNotFound,
    MissingCandidates,
    NotFoundWithinBounds,
    NotRegularWithinBounds,
)
from .expring import ExpRingElem, GroupAlgElem
from .laurent import LaurentPoly, kernel_partial_plus, kernel_partial_square
from .linalg import (
    DEFAULT_CONDUCTOR_BOUND,
    Matrix,
    charpoly,
    det_cofactor,
    jordan_block,
    jordan_form,
    poly_roots,
    _rational_candidates,
    _poly_is_rational,
    _norm_poly,
)
from .ratio import Rat
from .scalar import Cyclotomic, ExponentClass, gamma, gamma_inverse
from .sigmamod import SigmaModule, hom_dim

DEFAULT_DEGREE_BOUND = 8


@dataclass
class ConstantForm:
    """gauge H and constant matrix C with partial(H)H^-1 + H G H^-1 = C."""

    gauge: Matrix  # over LaurentPoly
    constant: Matrix  # over Cyclotomic


@dataclass(frozen=True)
class ExponentMultiset:
    """Multiset of exponent classes in [0,1), sorted, one entry per dimension."""

    entries: tuple

    @classmethod
    def from_classes(cls, classes):
        return cls(entries=tuple(sorted(classes, key=lambda a: a.value)))

    def __eq__(self, other):
        if not isinstance(other, ExponentMultiset):
            return NotImplemented
        return self.entries == other.entries

    def negated(self):
        return ExponentMultiset.from_classes([-a for a in self.entries])

    def pairwise_sums(self, other):
        return ExponentMultiset.from_classes(
            [a + b for a in self.entries for b in other.entries]
        )

    def __repr__(self):
        return "{" + ", ".join(repr(a) for a in self.entries) + "}"


# ---------------------------------------------------------------------------
# exponent candidates


def _rational_eigenvalues(m):
    """Rational eigenvalues of a Cyclotomic matrix with geometric witness;
    tolerant: non-rational eigenvalues are simply not reported."""
    p = charpoly(m)
    rational = _poly_is_rational(p)
    q = rational if rational is not None else _norm_poly(p)
    n = m.rows
    ident = Matrix.identity(n)
    out = []
    for cand in _rational_candidates(q):
        shifted = m - ident.scale(Cyclotomic.from_rat(cand))
        if shifted.rank() < n:
            out.append(cand)
    return out


def default_exponent_candidates(module):
    """Eigenvalue classes of the t^0 coefficient of G; a documented heuristic
    valid when G has no negative t-degrees (t-adically entire matrices)."""
    for row in module.matrix.data:
        for entry in row:
            md = entry.min_degree
            if md is not None and md < 0:
                raise MissingCandidates(
                    "G has negative t-degrees; supply exponent_candidates explicitly"
                )
    g0 = module.matrix.map(lambda f: f.coeff(0))
    classes = [ExponentClass(r) for r in _rational_eigenvalues(g0)]
    classes.append(ExponentClass(0))
    return list(dict.fromkeys(classes))


# ---------------------------------------------------------------------------
# bounded search for horizontal sections (row form)


def _apply_row_operator(g, a_scalar, row):
    """T(w) = (partial + a)(w) + w G on a row vector of Laurent polynomials."""
    n = len(row)
    out = []
    for j in range(n):
        val = row[j].partial() + row[j] * a_scalar
        for i in range(n):
            gij = g.data[i][j]
            if not gij.is_zero and not row[i].is_zero:
                val = val + row[i] * gij
        out.append(val)
    return out


def _row_coordinates(rows):
    keys = set()
    for row in rows:
        for j, f in enumerate(row):
            keys.update((j, d) for d in f.terms)
    index = {k: i for i, k in enumerate(sorted(keys))}
    out = []
    for row in rows:
        vec = [Cyclotomic.zero()] * max(len(index), 1)
        for j, f in enumerate(row):
            for d, c in f.terms.items():
                vec[index[(j, d)]] = c
        out.append(vec)
    return out


def _row_solution_chains(g, search_class, lo, hi, nil_index):
    """All horizontal rows w = sum_k w_k ell^k of class a within the seed
    window: w_0 ranges over ker(T^nil) and w_{k+1} = -T(w_k)/(k+1)."""
    n = g.rows
    a_scalar = Cyclotomic.from_rat(search_class.value)
    zero_row = [LaurentPoly.zero()] * n

    seeds = []
    for d in range(lo, hi + 1):
        for i in range(n):
            row = list(zero_row)
            row[i] = LaurentPoly.t_power(d)
            seeds.append(row)

    images = []
    for seed in seeds:
        img = seed
        for _ in range(nil_index):
            img = _apply_row_operator(g, a_scalar, img)
        images.append(img)

    if all(all(f.is_zero for f in img) for img in images):
        combos = [[Cyclotomic.one() if i == s else Cyclotomic.zero() for i in range(len(seeds))] for s in range(len(seeds))]
    else:
        coord_rows = _row_coordinates(images)
        mat = Matrix(coord_rows).transpose()
        combos = mat.nullspace()

    chains = []
    for combo in combos:
        w0 = list(zero_row)
        for c, seed in zip(combo, seeds):
            if not c.is_zero:
                w0 = [f + g_ * c for f, g_ in zip(w0, seed)]
        chain = [w0]
        k = 0
        while True:
            img = _apply_row_operator(g, a_scalar, chain[-1])
            if all(f.is_zero for f in img):
                break
            k += 1
            if k >= nil_index:
                raise AssertionError("chain does not terminate at the nilpotency bound")
            scale = Cyclotomic.from_rat(Rat(-1, k))
            chain.append([f * scale for f in img])
        chains.append(chain)
    return chains


def _chain_to_expring_row(chain, search_class):
    n = len(chain[0])
    out = []
    for j in range(n):
        coeffs = [GroupAlgElem({search_class: chain[k][j]}) for k in range(len(chain))]
        out.append(ExpRingElem(coeffs))
    return out


def _row_fundamental_block(lam, a_class, size):
    """Row fundamental matrix of J(a, size) with monodromy exactly J(lam, size):
    W = t^{-a} Z0 exp(-ell N), rows of Z0: lam^i e_1^T X^i, X = exp(-N) - I."""
    zero_c, one_c = Cyclotomic.zero(), Cyclotomic.one()

    exp_neg_n = [[zero_c] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            exp_neg_n[i][j] = Cyclotomic.from_rat(Rat((-1) ** (j - i), factorial(j - i)))
    x = Matrix(exp_neg_n) - Matrix.identity(size)

    rows = []
    current = [one_c] + [zero_c] * (size - 1)
    lam_pow = one_c
    for i in range(size):
        rows.append([lam_pow * c for c in current])
        current = (Matrix([current]) * x).data[0] if i + 1 < size else current
        lam_pow = lam_pow * lam
    z0 = Matrix(rows)

    ell = ExpRingElem.ell_var()
    z = ExpRingElem.zero()
    exp_neg = [[z] * size for _ in range(size)]
    exp_pos = [[z] * size for _ in range(size)]
    ell_pow = ExpRingElem.one()
    for j in range(size):
        neg = ell_pow * Rat((-1) ** j, factorial(j))
        pos = ell_pow * Rat(1, factorial(j))
        for i in range(size - j):
            exp_neg[i][i + j] = neg
            exp_pos[i][i + j] = pos
        ell_pow = ell_pow * ell

    t_neg = ExpRingElem.t_power(-a_class.value)
    t_pos = ExpRingElem.t_power(a_class.value)
    z0_e = z0.map(ExpRingElem.from_scalar)
    z0_inv_e = z0.inverse().map(ExpRingElem.from_scalar)
    w_block = (z0_e * Matrix(exp_neg)).map(lambda e: e * t_neg)
    w_inv_block = (Matrix(exp_pos) * z0_inv_e).map(lambda e: e * t_pos)
    return w_block, w_inv_block


def find_constant_form(
    module,
    exponent_candidates=None,
    laurent_degree_bound=DEFAULT_DEGREE_BOUND,
    ell_degree_bound=None,
    conductor_bound=DEFAULT_CONDUCTOR_BOUND,
):
    """Search for a gauge H over A making the connection matrix constant.

    The horizontal-section equation is diagonal in the exponent classes and
    block triangular in ell, so sections of class a correspond exactly to
    seeds w_0 (the ell^0 coefficient, with Laurent degrees in the bound
    window) on which T = (partial + a) + G acts nilpotently; the higher ell
    coefficients follow by w_{k+1} = -T(w_k)/(k+1).  If n independent
    sections exist, the monodromy R of the section basis is computed, and
    W_C^-1 * Q^-1 * W is the gauge onto the Jordan constant matrix dictated
    by R (a sigma-invariant matrix, hence with entries in A).

    This is a semi-decision procedure: NotRegularWithinBounds means absence
    within the bounds, not a proof of irregularity.
    """
    module.require_standard_derivation()
    g = module.matrix
    n = module.dim

    if exponent_candidates is None:
        candidates = default_exponent_candidates(module)
    else:
        candidates = [ExponentClass(a) for a in exponent_candidates]
    search_classes = list(dict.fromkeys(-a for a in candidates))

    nil_index = n if ell_degree_bound is None else max(1, min(n, ell_degree_bound + 1))
    lo, hi = -laurent_degree_bound, laurent_degree_bound

    rows = []
    for sc in sorted(search_classes, key=lambda a: a.value):
        for chain in _row_solution_chains(g, sc, lo, hi, nil_index):
            rows.append(_chain_to_expring_row(chain, sc))
    if len(rows) < n:
        shown = ", ".join(str(a) for a in sorted(candidates, key=lambda a: a.value))
        raise NotFoundWithinBounds(
            f"found {len(rows)} independent horizontal sections (need {n}) "
            f"within degree window [{lo},{hi}] for exponent candidates [{shown}]"
        )
    if len(rows) > n:
        raise AssertionError("solution space exceeds the rank; this is a bug")

    w = Matrix(rows)
    sigma_w = w.map(lambda x: x.sigma())
    r = match_left_factor(w, sigma_w)

    jd = jordan_form(r, conductor_bound)
    q_inv = jd.transform.inverse().map(ExpRingElem.from_scalar)
    w_tilde = q_inv * w

    w_c_inv_blocks = []
    c_blocks = []
    for lam, size in jd.blocks:
        a_b = gamma_inverse(lam.inverse())
        _, w_inv_block = _row_fundamental_block(lam, a_b, size)
        w_c_inv_blocks.append(w_inv_block)
        c_blocks.append(jordan_block(a_b.as_cyclotomic(), size))

    h_e = Matrix.block_diag(w_c_inv_blocks, ring=ExpRingElem) * w_tilde
    h_rows = []
    for row in h_e.data:
        out = []
        for x in row:
            f = x.as_laurent()
            if f is None:
                raise AssertionError("gauge is not sigma-invariant; this is a bug")
            out.append(f)
        h_rows.append(out)
    h = Matrix(h_rows)

    c = Matrix.block_diag(c_blocks)
    det = det_cofactor(h)
    if not det.is_unit:
        raise AssertionError("reconstructed gauge is not invertible over A")
    if base_change(module, h).matrix != c.map(LaurentPoly.from_scalar):
        raise AssertionError("constant form verification failed; this is a bug")
    return ConstantForm(gauge=h, constant=c)


def ensure_constant_form(module, **opts):
    """Identity gauge for an already-constant matrix, else the bounded search."""
    module.require_standard_derivation()
    from .diffmod import constant_matrix_of

    c = constant_matrix_of(module.matrix)
    if c is not None:
        return ConstantForm(gauge=Matrix.identity(module.dim, LaurentPoly), constant=c)
    return find_constant_form(module, **opts)


def horizontal_sections(
    module,
    exponent_candidates=None,
    laurent_degree_bound=DEFAULT_DEGREE_BOUND,
    ell_degree_bound=None,
):
    """Basis of the solution space (M (x) E_A)^{nabla=0} within bounds.

    Column vectors v over the exponent ring with partial(v) + G v = 0: these
    are the row solutions of the transposed matrix, found by the same
    seed-chain search as find_constant_form.  Every returned vector is
    re-checked exactly against the defining equation.
    """
    from .diffmod import HorizontalSpace

    module.require_standard_derivation()
    g = module.matrix
    gt = g.transpose()
    n = module.dim
    if exponent_candidates is None:
        candidates = default_exponent_candidates(module)
    else:
        candidates = [ExponentClass(a) for a in exponent_candidates]
    search_classes = list(dict.fromkeys(-a for a in candidates))
    nil_index = n if ell_degree_bound is None else max(1, min(n, ell_degree_bound + 1))
    lo, hi = -laurent_degree_bound, laurent_degree_bound

    g_e = g.map(ExpRingElem.from_laurent)
    basis = []
    for sc in sorted(search_classes, key=lambda a: a.value):
        for chain in _row_solution_chains(gt, sc, lo, hi, nil_index):
            v = _chain_to_expring_row(chain, sc)
            image = [x.partial() for x in v]
            for i in range(n):
                for j in range(n):
                    image[i] = image[i] + g_e.data[i][j] * v[j]
            if any(not x.is_zero for x in image):
                raise AssertionError("section fails the defining equation; this is a bug")
            basis.append(v)
    return HorizontalSpace(basis=basis)


# ---------------------------------------------------------------------------
# the equivalence


def _constant_form_or_not_regular(module, **opts):
    try:
        return ensure_constant_form(module, **opts)
    except NotRegularWithinBounds:
        raise
    except NotFoundWithinBounds as exc:
        raise NotRegularWithinBounds(str(exc)) from exc


def mon(module, conductor_bound=DEFAULT_CONDUCTOR_BOUND, **opts):
    """The monodromy representation: J(a, n) blocks become J(gamma(-a), n)."""
    cf = _constant_form_or_not_regular(module, **opts)
    jd = jordan_form(cf.constant, conductor_bound)
    blocks = []
    for a, size in jd.blocks:
        cls = ExponentClass.from_scalar(a)
        blocks.append(jordan_block(gamma(-cls), size))
    return SigmaModule(Matrix.block_diag(blocks))


def rm(v, conductor_bound=DEFAULT_CONDUCTOR_BOUND):
    """The inverse dictionary: J(lam, n) blocks become J(gamma_inverse(1/lam), n)."""
    jd = jordan_form(v.monodromy, conductor_bound)
    blocks = []
    for lam, size in jd.blocks:
        a = gamma_inverse(lam.inverse())
        blocks.append(jordan_block(a.as_cyclotomic(), size))
    return DiffModule.from_constant(Matrix.block_diag(blocks))


def exponents(module, conductor_bound=DEFAULT_CONDUCTOR_BOUND, **opts):
    """Eigenvalues of a constant form, reduced mod Z, with multiplicity."""
    cf = _constant_form_or_not_regular(module, **opts)
    roots = poly_roots(charpoly(cf.constant), conductor_bound)
    classes = []
    for lam, mult in roots:
        cls = ExponentClass.from_scalar(lam)
        classes.extend([cls] * mult)
    if len(classes) != module.dim:
        raise EigenvalueNotFound("eigenvalues do not account for the dimension")
    return ExponentMultiset.from_classes(classes)


@dataclass
class FuchsDecomposition:
    """Triangularizing gauge, the Jordan constant matrix, and the ordered
    rank-one factors N(a_i) read off its diagonal."""

    gauge: Matrix  # over LaurentPoly
    triangular: Matrix  # over Cyclotomic, block upper triangular (Jordan)
    factors: list  # diagonal entries, one per rank-one sub-quotient
    exponent_multiset: ExponentMultiset


def fuchs_decomposition(module, conductor_bound=DEFAULT_CONDUCTOR_BOUND, **opts):
    """Jordan-Hoelder data: compose the constant form with a constant
    conjugation to Jordan shape, exposing the flag of rank-one sub-quotients."""
    cf = _constant_form_or_not_regular(module, **opts)
    jd = jordan_form(cf.constant, conductor_bound)
    p_inv = jd.transform.inverse().map(LaurentPoly.from_scalar)
    gauge = p_inv * cf.gauge
    triangular = jd.jordan_matrix()
    check = base_change(module, gauge)
    if check.matrix != triangular.map(LaurentPoly.from_scalar):
        raise AssertionError("triangularization verification failed; this is a bug")
    diag = [triangular.data[i][i] for i in range(module.dim)]
    classes = [ExponentClass.from_scalar(x) for x in diag]
    return FuchsDecomposition(
        gauge=gauge,
        triangular=triangular,
        factors=diag,
        exponent_multiset=ExponentMultiset.from_classes(classes),
    )


# ---------------------------------------------------------------------------
# comparison reports


def horizontal_isomorphism(m1, m2, conductor_bound=DEFAULT_CONDUCTOR_BOUND, max_trials=40):
    """An explicit invertible horizontal morphism M1 -> M2 over A, or None.

    Scans deterministic integer combinations of the horizontal Hom basis;
    under the equivalence the invertible locus is Zariski open, so a small
    power ladder of coefficients finds a witness whenever one exists.
    """
    space = horizontal_hom(m1, m2, conductor_bound)
    if not space.basis:
        return None
    for f in space.basis:
        if det_cofactor(f).is_unit:
            return f
    k = len(space.basis)
    for trial in range(1, max_trials + 1):
        combo = Matrix.zeros(m2.dim, m1.dim, LaurentPoly)
        for i, f in enumerate(space.basis):
            combo = combo + f.map(lambda x: x * Cyclotomic.from_rat((i + 1) ** trial))
        if det_cofactor(combo).is_unit:
            return combo
    return None


def mon_hom_compare(m1, m2, conductor_bound=DEFAULT_CONDUCTOR_BOUND, **opts):
    """Check dim Hom^nabla(M, N) = dim Hom^Z(Mon M, Mon N), plus the exponent
    arithmetic of tensor and dual.  Returns a report dict."""
    cf1 = _constant_form_or_not_regular(m1, **opts)
    cf2 = _constant_form_or_not_regular(m2, **opts)
    c1 = DiffModule.from_constant(cf1.constant)
    c2 = DiffModule.from_constant(cf2.constant)
    d_hom = horizontal_hom(c1, c2, conductor_bound).dimension
    d_mon = hom_dim(mon(c1, conductor_bound), mon(c2, conductor_bound))
    e1 = exponents(c1, conductor_bound)
    e2 = exponents(c2, conductor_bound)
    tensor_ok = exponents(tensor(c1, c2), conductor_bound) == e1.pairwise_sums(e2)
    dual_ok = exponents(dual(c1), conductor_bound) == e1.negated()
    return {
        "hom_dim": d_hom,
        "mon_hom_dim": d_mon,
        "hom_match": d_hom == d_mon,
        "tensor_exponents_match": bool(tensor_ok),
        "dual_exponents_match": bool(dual_ok),
        "ok": d_hom == d_mon and bool(tensor_ok) and bool(dual_ok),
    }


def verify_no_exp_no_log(degree_bound=6, exponent_samples=(Rat(1, 2), Rat(1, 3), Rat(5, 12))):
    """Windowed check that A = K[t,1/t] is without exponents nor logarithm:
    ker partial^2 = K and ker(partial + a) = 0 for sampled nonzero classes."""
    lo, hi = -degree_bound, degree_bound
    sq = kernel_partial_square(lo, hi)
    sq_ok = len(sq) == 1 and sq[0] == LaurentPoly.one()
    report = {
        "partial_square_kernel_dim": len(sq),
        "partial_square_is_constants": bool(sq_ok),
    }
    plus_ok = True
    for a in exponent_samples:
        cls = ExponentClass(a)
        if cls.is_zero:
            raise ValueError("samples must be nonzero classes")
        basis = kernel_partial_plus(lo, hi, cls)
        report[f"partial_plus_{cls!r}_kernel_dim"] = len(basis)
        plus_ok = plus_ok and not basis
    report["partial_plus_all_zero"] = bool(plus_ok)
    report["ok"] = bool(sq_ok and plus_ok)
    return report
