"""Finite-dimensional K-linear representations of Z (sigma-modules).

A representation is determined by the single invertible operator [1]; the
classification is its Jordan normal form.  Every such module is trivialized
over the exponent ring: per Jordan block J(lam, n), pick a with
gamma(a) = 1/lam, rescale by t^a and a constant diagonal, then solve the
d_sigma system for the remaining log-polynomial coefficients.
"""

from .errors import DimensionMismatch, ZeroEigenvalue
from .expring import ExpRingElem, solve_dsigma
from .linalg import DEFAULT_CONDUCTOR_BOUND, Matrix, jordan_form
from .scalar import as_cyclotomic, gamma_inverse
from .diffmod import _sylvester_operator


class SigmaModule:
    """A K-vector space with a distinguished automorphism (the monodromy)."""

    __slots__ = ("monodromy",)
    __hash__ = None

    def __init__(self, monodromy):
        if not isinstance(monodromy, Matrix):
            monodromy = Matrix([[as_cyclotomic(x) for x in row] for row in monodromy])
        if not monodromy.is_square:
            raise DimensionMismatch("monodromy must be square")
        if monodromy.rank() != monodromy.rows:
            raise ZeroEigenvalue("monodromy must be invertible")
        object.__setattr__(self, "monodromy", monodromy)

    def __setattr__(self, *_):
        raise AttributeError("SigmaModule is immutable")

    @property
    def dim(self):
        return self.monodromy.rows

    def __eq__(self, other):
        if not isinstance(other, SigmaModule):
            return NotImplemented
        return self.monodromy == other.monodromy

    def __repr__(self):
        return f"SigmaModule(dim={self.dim}, monodromy={self.monodromy!r})"


def rank_one(lam):
    """V_lam: sigma acts by multiplication by lam != 0."""
    lam = as_cyclotomic(lam)
    if lam.is_zero:
        raise ZeroEigenvalue("rank-one monodromy eigenvalue must be nonzero")
    return SigmaModule(Matrix([[lam]]))


def direct_sum(v, w):
    return SigmaModule(Matrix.block_diag([v.monodromy, w.monodromy]))


def tensor(v, w):
    """g(v (x) w) = g(v) (x) g(w): the Kronecker product of the operators."""
    return SigmaModule(v.monodromy.kron(w.monodromy))


def dual(v):
    """Hom(V, K) with g(f) = g o f o g^-1: the inverse transpose."""
    return SigmaModule(v.monodromy.transpose().inverse())


def hom_dim(v, w):
    """dim Hom^Z(V, W) = dim{F : F S_V = S_W F}, an exact Sylvester kernel."""
    syl, dim = _sylvester_operator(v.monodromy, w.monodromy)
    return dim - syl.rank()


def isomorphism(v, w, conductor_bound=DEFAULT_CONDUCTOR_BOUND):
    """An explicit T with T S_V T^-1 = S_W, or None when the Jordan block
    multisets differ."""
    jv = jordan_form(v.monodromy, conductor_bound)
    jw = jordan_form(w.monodromy, conductor_bound)
    if jv.blocks != jw.blocks:
        return None
    return jw.transform * jv.transform.inverse()


# ---------------------------------------------------------------------------
# trivialization over the exponent ring

_TRIV_POLYS = [ExpRingElem.one()]


def _triv_poly(j):
    """The universal log-polynomials p_j in K[ell] of the block system:
    p_0 = 1, d_sigma(p_j) = -sigma(p_{j-1}); free constants fixed to zero."""
    while len(_TRIV_POLYS) <= j:
        prev = _TRIV_POLYS[-1]
        _TRIV_POLYS.append(solve_dsigma(-(prev.sigma())))
    return _TRIV_POLYS[j]


def trivialize(v, conductor_bound=DEFAULT_CONDUCTOR_BOUND):
    """An invertible matrix B over E_A whose columns are fixed by the twisted
    action: S * sigma(B) = B.

    Per Jordan block J(lam, n): a = gamma_inverse(1/lam), then
    B_block = t^a * diag(1, lam, ..., lam^(n-1)) * X(ell) with X unipotent
    upper triangular, X[i][k] = p_{k-i}.  Raises NotRootOfUnity when an
    eigenvalue is not a root of unity.
    """
    jd = jordan_form(v.monodromy, conductor_bound)
    blocks = []
    for lam, size in jd.blocks:
        a = gamma_inverse(lam.inverse())
        t_a = ExpRingElem.t_power(a.value)
        z = ExpRingElem.zero()
        entries = [[z] * size for _ in range(size)]
        for i in range(size):
            scale = ExpRingElem.from_scalar(lam**i)
            for k in range(i, size):
                entries[i][k] = t_a * scale * _triv_poly(k - i)
        blocks.append(Matrix(entries))
    p = jd.transform.map(ExpRingElem.from_scalar)
    return p * Matrix.block_diag(blocks, ring=ExpRingElem)


def is_trivializing(v, b):
    """Exact fixed-point check: S * sigma(B) == B."""
    s = v.monodromy.map(ExpRingElem.from_scalar)
    sigma_b = b.map(lambda x: x.sigma())
    return s * sigma_b == b
