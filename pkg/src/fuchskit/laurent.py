"""Laurent polynomials A = K[t, 1/t] with the derivation t*d/dt.

Sparse representation: a map from integer degree to a nonzero Cyclotomic
coefficient.  The derivation acts diagonally on monomials, so kernel and
solvability questions are degree-wise exact linear algebra.
"""

from .errors import LogObstruction, NotAUnit
from .ratio import Rat
from .scalar import Cyclotomic, ExponentClass, as_cyclotomic


def _coerce_scalar(x):
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, type(Rat(0)))):
        return Cyclotomic.from_rat(x)
    return None


class LaurentPoly:
    """Element of K[t, 1/t]; immutable, no stored zero coefficients."""

    __slots__ = ("terms",)
    __hash__ = None

    def __init__(self, terms=None):
        data = {}
        if terms:
            for d, c in terms.items():
                c = as_cyclotomic(c)
                if not c.is_zero:
                    data[int(d)] = c
        object.__setattr__(self, "terms", data)

    def __setattr__(self, *_):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: Cyclotomic.one()})

    @classmethod
    def from_scalar(cls, c):
        return cls({0: as_cyclotomic(c)})

    @classmethod
    def t_power(cls, m, coeff=1):
        return cls({m: as_cyclotomic(coeff)})

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def coeff(self, d):
        return self.terms.get(d, Cyclotomic.zero())

    @property
    def constant_term(self):
        return self.coeff(0)

    @property
    def min_degree(self):
        return min(self.terms) if self.terms else None

    @property
    def max_degree(self):
        return max(self.terms) if self.terms else None

    @property
    def is_constant(self):
        return not self.terms or set(self.terms) == {0}

    @property
    def is_unit(self):
        """Units of K[t,1/t] are exactly the monomials c*t^m, c != 0."""
        return len(self.terms) == 1

    def unit_inverse(self):
        if not self.is_unit:
            raise NotAUnit(f"{self!r} is not a unit of K[t,1/t]")
        ((d, c),) = self.terms.items()
        return LaurentPoly({-d: c.inverse()})

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            c = _coerce_scalar(other)
            if c is None:
                return NotImplemented
            other = LaurentPoly({0: c})
        out = dict(self.terms)
        for d, c in other.terms.items():
            s = out.get(d)
            s = c if s is None else s + c
            if s.is_zero:
                out.pop(d, None)
            else:
                out[d] = s
        result = LaurentPoly()
        object.__setattr__(result, "terms", out)
        return result

    __radd__ = __add__

    def __neg__(self):
        result = LaurentPoly()
        object.__setattr__(result, "terms", {d: -c for d, c in self.terms.items()})
        return result

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            c = _coerce_scalar(other)
            if c is None:
                return NotImplemented
            other = LaurentPoly({0: c})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = _coerce_scalar(other)
            if c is None:
                return NotImplemented
            if c.is_zero:
                return LaurentPoly()
            result = LaurentPoly()
            object.__setattr__(result, "terms", {d: x * c for d, x in self.terms.items()})
            return result
        out = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                d = d1 + d2
                p = c1 * c2
                s = out.get(d)
                s = p if s is None else s + p
                if s.is_zero:
                    out.pop(d, None)
                else:
                    out[d] = s
        result = LaurentPoly()
        object.__setattr__(result, "terms", out)
        return result

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.unit_inverse() ** (-e)
        result = LaurentPoly.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        return self.terms == LaurentPoly({0: c}).terms

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    # -- the derivation ----------------------------------------------------

    def partial(self):
        """t*d/dt, acting as multiplication by the degree on each mode."""
        return LaurentPoly({d: c * Rat(d) for d, c in self.terms.items()})

    def substitute_inverse(self):
        """t -> 1/t."""
        result = LaurentPoly()
        object.__setattr__(result, "terms", {-d: c for d, c in self.terms.items()})
        return result

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for d in sorted(self.terms):
            c = self.terms[d]
            if d == 0:
                parts.append(f"({c!r})")
            else:
                parts.append(f"({c!r})*t^{d}")
        return " + ".join(parts)


def partial(f):
    """The derivation t*d/dt on K[t,1/t]."""
    return f.partial()


def solve_partial_plus_a(y, a):
    """Solve (partial + a)(x) = y for x in K[t,1/t], a a class in [0,1).

    Mode n scales by n + a, which vanishes only for a = 0, n = 0.  For a = 0
    the equation is solvable iff the constant term of y vanishes; the solution
    is normalized by setting the constant term of x to zero.  A nonzero
    constant term c raises LogObstruction(c).
    """
    a = ExponentClass(a).value
    out = {}
    for d, c in y.terms.items():
        scale = Rat(d) + a
        if scale == 0:
            raise LogObstruction(c)
        out[d] = c / Cyclotomic.from_rat(scale)
    return LaurentPoly(out)


def _windowed_kernel(lo, hi, diag_scalars):
    """Exact kernel of a degree-diagonal operator on span{t^lo..t^hi}.

    The operator multiplies mode d by diag_scalars(d); computed as honest
    linear algebra (nullspace of the operator matrix) rather than by the
    shortcut, so the windowed theorems are checked, not assumed.
    """
    from .linalg import Matrix

    degrees = list(range(lo, hi + 1))
    if not degrees:
        return []
    n = len(degrees)
    rows = [
        [diag_scalars(degrees[j]) if i == j else Cyclotomic.zero() for j in range(n)]
        for i in range(n)
    ]
    kernel = Matrix(rows).nullspace()
    basis = []
    for vec in kernel:
        basis.append(LaurentPoly({d: c for d, c in zip(degrees, vec)}))
    return basis


def kernel_partial(lo, hi):
    """Basis of ker(partial) on the degree window [lo, hi]."""
    return _windowed_kernel(lo, hi, lambda d: Cyclotomic.from_rat(d))


def kernel_partial_square(lo, hi):
    """Basis of ker(partial^2) on the degree window [lo, hi]."""
    return _windowed_kernel(lo, hi, lambda d: Cyclotomic.from_rat(Rat(d) * Rat(d)))


def kernel_partial_plus(lo, hi, a):
    """Basis of ker(partial + a) on the degree window [lo, hi]."""
    a = ExponentClass(a).value
    return _windowed_kernel(lo, hi, lambda d: Cyclotomic.from_rat(Rat(d) + a))
