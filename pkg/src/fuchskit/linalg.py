"""Exact dense linear algebra over the cyclotomic scalars.

Matrix is generic over any commutative ring element type exposing zero()/
one() classmethods and the usual operators; field algorithms (rref, solve,
inverse, Jordan form) additionally need .inverse() on entries, which
Cyclotomic provides.

The eigenvalue finder is deliberately restricted to Q union the roots of
unity up to a conductor bound: that is exactly the eigenvalue set reachable
through gamma on rational exponent classes, and anything else is an honest
EigenvalueNotFound instead of an approximation.
"""

from dataclasses import dataclass
from math import gcd

from .errors import DivisionByZero, EigenvalueNotFound, NonSquare
from .ratio import Rat, is_int
from .scalar import Cyclotomic, euler_phi

DEFAULT_CONDUCTOR_BOUND = 120


class Matrix:
    """Immutable dense matrix; entries share one ring element type."""

    __slots__ = ("rows", "cols", "data")
    __hash__ = None

    def __init__(self, data):
        data = tuple(tuple(row) for row in data)
        if not data or not data[0]:
            raise ValueError("matrix must be nonempty")
        cols = len(data[0])
        if any(len(row) != cols for row in data):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", data)

    def __setattr__(self, *_):
        raise AttributeError("Matrix is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, n, ring=Cyclotomic):
        z, o = ring.zero(), ring.one()
        return cls([[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows, cols, ring=Cyclotomic):
        z = ring.zero()
        return cls([[z] * cols for _ in range(rows)])

    @classmethod
    def block_diag(cls, blocks, ring=None):
        ring = ring or type(blocks[0].data[0][0])
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        z = ring.zero()
        out = [[z] * m for _ in range(n)]
        r = c = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r + i][c + j] = b.data[i][j]
            r += b.rows
            c += b.cols
        return cls(out)

    @classmethod
    def from_columns(cls, columns):
        return cls([[columns[j][i] for j in range(len(columns))] for i in range(len(columns[0]))])

    # -- bookkeeping -------------------------------------------------------

    @property
    def ring(self):
        return type(self.data[0][0])

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return list(self.data[i])

    def column(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def map(self, fn):
        return Matrix([[fn(x) for x in row] for row in self.data])

    def transpose(self):
        return Matrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def submatrix(self, drop_row, drop_col):
        return Matrix(
            [
                [self.data[i][j] for j in range(self.cols) if j != drop_col]
                for i in range(self.rows)
                if i != drop_row
            ]
        )

    # -- ring arithmetic ---------------------------------------------------

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return Matrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)]
        )

    def __sub__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return Matrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)]
        )

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            bt = other.transpose().data
            return Matrix(
                [[_dot(row, col) for col in bt] for row in self.data]
            )
        if isinstance(other, (list, tuple)):
            if self.cols != len(other):
                raise ValueError("shape mismatch")
            return [_dot(row, other) for row in self.data]
        return NotImplemented

    def scale(self, s):
        return self.map(lambda x: x * s)

    def kron(self, other):
        """Kronecker product, row-major block convention."""
        out = []
        for i in range(self.rows):
            for k in range(other.rows):
                row = []
                for j in range(self.cols):
                    a = self.data[i][j]
                    row.extend(a * other.data[k][l] for l in range(other.cols))
                out.append(row)
        return Matrix(out)

    def trace(self):
        if not self.is_square:
            raise NonSquare("trace of a non-square matrix")
        acc = self.data[0][0]
        for i in range(1, self.rows):
            acc = acc + self.data[i][i]
        return acc

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(a == b for r1, r2 in zip(self.data, other.data) for a, b in zip(r1, r2))
        )

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __repr__(self):
        return "Matrix(" + "; ".join(", ".join(repr(x) for x in row) for row in self.data) + ")"

    # -- field algorithms (entries need .inverse()) -------------------------

    def rref(self):
        """Reduced row echelon form; pivots on the lowest column index.
        Rows are treated sparsely (zero entries of the pivot row are skipped)."""
        m = [list(row) for row in self.data]
        pivots = []
        pr = 0
        for col in range(self.cols):
            pivot_row = None
            for r in range(pr, self.rows):
                if not m[r][col].is_zero:
                    pivot_row = r
                    break
            if pivot_row is None:
                continue
            m[pr], m[pivot_row] = m[pivot_row], m[pr]
            inv = m[pr][col].inverse()
            prow = [x if x.is_zero else x * inv for x in m[pr]]
            m[pr] = prow
            support = [j for j, x in enumerate(prow) if not x.is_zero]
            for r in range(self.rows):
                if r != pr and not m[r][col].is_zero:
                    factor = m[r][col]
                    row = m[r]
                    for j in support:
                        row[j] = row[j] - factor * prow[j]
            pivots.append(col)
            pr += 1
            if pr == self.rows:
                break
        return Matrix(m), tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def nullspace(self):
        """Deterministic kernel basis: one vector per free column, ascending,
        with a 1 in the free coordinate."""
        red, pivots = self.rref()
        pivot_set = set(pivots)
        zero, one = self.ring.zero(), self.ring.one()
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            vec = [zero] * self.cols
            vec[free] = one
            for r, pc in enumerate(pivots):
                vec[pc] = -red.data[r][free]
            basis.append(vec)
        return basis

    def solve(self, b):
        """Full solution set of self * x = b (LinearSolution)."""
        if len(b) != self.rows:
            raise ValueError("shape mismatch")
        aug = Matrix([list(row) + [bi] for row, bi in zip(self.data, b)])
        red, pivots = aug.rref()
        if self.cols in pivots:
            return LinearSolution(None, [])
        zero = self.ring.zero()
        particular = [zero] * self.cols
        for r, pc in enumerate(pivots):
            particular[pc] = red.data[r][self.cols]
        return LinearSolution(particular, self.nullspace())

    def inverse(self):
        if not self.is_square:
            raise NonSquare("inverse of a non-square matrix")
        n = self.rows
        zero, one = self.ring.zero(), self.ring.one()
        aug = Matrix(
            [list(self.data[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
        )
        red, pivots = aug.rref()
        if tuple(pivots) != tuple(range(n)):
            raise DivisionByZero("matrix is singular")
        return Matrix([row[n:] for row in red.data])


def _dot(xs, ys):
    it = zip(xs, ys)
    x, y = next(it)
    acc = x * y
    for x, y in it:
        acc = acc + x * y
    return acc


@dataclass
class LinearSolution:
    """particular is None iff the system is inconsistent (empty solution set)."""

    particular: object
    kernel: list

    @property
    def is_empty(self):
        return self.particular is None

    @property
    def is_unique(self):
        return self.particular is not None and not self.kernel


def det_cofactor(m):
    """Determinant by cofactor expansion; needs only ring operations, so it
    also works over K[t,1/t] and the exponent ring."""
    if not m.is_square:
        raise NonSquare("determinant of a non-square matrix")
    n = m.rows
    if n == 1:
        return m.data[0][0]
    acc = None
    for j in range(n):
        entry = m.data[0][j]
        if getattr(entry, "is_zero", False):
            continue
        term = entry * det_cofactor(m.submatrix(0, j))
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc if acc is not None else m.ring.zero()


def adjugate(m):
    """Classical adjugate over a commutative ring: adj(M) * M = det(M) * I."""
    n = m.rows
    if n == 1:
        return Matrix([[m.ring.one()]])
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            c = det_cofactor(m.submatrix(j, i))
            if (i + j) % 2:
                c = -c
            row.append(c)
        out.append(row)
    return Matrix(out)


# ---------------------------------------------------------------------------
# characteristic polynomial and eigenvalues


def charpoly(m):
    """Coefficients (ascending) of det(x*I - M), monic, by Faddeev-LeVerrier."""
    if not m.is_square:
        raise NonSquare("characteristic polynomial of a non-square matrix")
    n = m.rows
    coeffs = [Cyclotomic.zero()] * (n + 1)
    coeffs[n] = Cyclotomic.one()
    mk = m
    for k in range(1, n + 1):
        ck = -(mk.trace() / Cyclotomic.from_rat(k))
        coeffs[n - k] = ck
        if k < n:
            mk = m * (mk + Matrix.identity(n).scale(ck))
    return coeffs


def poly_eval(p, x):
    acc = Cyclotomic.zero()
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_div_linear(p, lam):
    """Divide p by (x - lam); requires lam to be a root. Returns the quotient."""
    n = len(p) - 1
    q = [Cyclotomic.zero()] * n
    carry = p[n]
    for i in range(n - 1, -1, -1):
        q[i] = carry
        carry = p[i] + carry * lam
    if not carry.is_zero:
        raise ArithmeticError("not a root")
    return q


def _poly_is_rational(p):
    vals = []
    for c in p:
        rv = c.rational_value
        if rv is None:
            return None
        vals.append(rv)
    return vals


def _norm_poly(p):
    """Product of the Galois conjugates of p; has rational coefficients."""
    conductor = 1
    for c in p:
        conductor = conductor * c.n // gcd(conductor, c.n)
    acc = [Cyclotomic.one()]
    for j in range(1, conductor + 1):
        if gcd(j, conductor) != 1:
            continue
        conj = [c.embed(conductor).galois_conjugate(j) for c in p]
        out = [Cyclotomic.zero()] * (len(acc) + len(conj) - 1)
        for i, a in enumerate(acc):
            if not a.is_zero:
                for k, b in enumerate(conj):
                    if not b.is_zero:
                        out[i + k] = out[i + k] + a * b
        acc = out
    vals = _poly_is_rational(acc)
    if vals is None:
        raise AssertionError("norm polynomial must be rational")
    return vals


def _is_probable_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic Miller-Rabin witnesses for n < 3.3 * 10^24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n):
    if n % 2 == 0:
        return 2
    import random as _random

    rng = _random.Random(n)
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d


def _factorize(n):
    """Prime factorization as a dict; small trial division then Pollard rho."""
    factors = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    d = 17
    while d * d <= n and d < 100000:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return factors


def _divisors_of(n):
    n = abs(n)
    if n == 0:
        return []
    divisors = [1]
    for p, e in _factorize(n).items():
        divisors = [d * p**k for d in divisors for k in range(e + 1)]
    return sorted(divisors)


def _rational_candidates(q):
    """Rational-root-theorem candidates for a rational polynomial, ascending,
    pruned by the Cauchy root bound."""
    while q and q[-1] == 0:
        q = q[:-1]
    if len(q) <= 1:
        return []
    denom_lcm = 1
    for c in q:
        d = int(c.denominator)
        denom_lcm = denom_lcm * d // gcd(denom_lcm, d)
    ints = [int(c.numerator) * (denom_lcm // int(c.denominator)) for c in q]
    shift = 0
    while ints[shift] == 0:
        shift += 1
    cands = set()
    if shift:
        cands.add(Rat(0))
    a0, an = ints[shift], ints[-1]
    bound = 1 + max(Rat(abs(c)) / Rat(abs(an)) for c in ints[shift:])
    for p in _divisors_of(a0):
        if Rat(p) > bound * abs(an):
            break  # divisors are ascending; p/q > bound for every q | an
        for qd in _divisors_of(an):
            r = Rat(p) / Rat(qd)
            if r <= bound:
                cands.add(r)
                cands.add(-r)
    return sorted(cands)


def _rational_poly_divides(d, q):
    """Does the integer polynomial d divide the rational polynomial q?"""
    q = list(q)
    while q and q[-1] == 0:
        q.pop()
    if len(q) < len(d):
        return False
    r = q[:]
    lead = Rat(d[-1])
    for i in range(len(r) - len(d), -1, -1):
        c = r[i + len(d) - 1] / lead
        if c:
            r[i + len(d) - 1] = Rat(0)
            for j in range(len(d) - 1):
                r[i + j] -= c * d[j]
    return not any(r)


def poly_roots(p, conductor_bound=DEFAULT_CONDUCTOR_BOUND):
    """All roots of p (Cyclotomic coefficients, nonzero) that lie in
    Q union mu_infinity, with multiplicities.

    Raises EigenvalueNotFound when the roots do not account for the full
    degree: some factor has roots outside the computable field.
    """
    from .scalar import cyclotomic_polynomial

    while p and p[-1].is_zero:
        p = p[:-1]
    if len(p) <= 1:
        return []
    rational = _poly_is_rational(p)
    q = rational if rational is not None else _norm_poly(p)

    remaining = list(p)
    roots = []

    for cand in _rational_candidates(q):
        lam = Cyclotomic.from_rat(cand)
        mult = 0
        while len(remaining) > 1 and poly_eval(remaining, lam).is_zero:
            remaining = poly_div_linear(remaining, lam)
            mult += 1
        if mult:
            roots.append((lam, mult))

    for d in range(3, conductor_bound + 1):
        if len(remaining) <= 1:
            break
        if euler_phi(d) > len(q) - 1:
            continue
        if not _rational_poly_divides(list(cyclotomic_polynomial(d)), q):
            continue
        for j in range(1, d):
            if gcd(j, d) != 1:
                continue
            lam = Cyclotomic.root_of_unity(d, j)
            mult = 0
            while len(remaining) > 1 and poly_eval(remaining, lam).is_zero:
                remaining = poly_div_linear(remaining, lam)
                mult += 1
            if mult:
                roots.append((lam, mult))

    if len(remaining) > 1:
        raise EigenvalueNotFound(
            "characteristic polynomial has a factor of degree "
            f"{len(remaining) - 1} with no root in Q or in roots of unity "
            f"of conductor <= {conductor_bound}"
        )
    roots.sort(key=lambda t: t[0].sort_key())
    return roots


def eigenvalues(m, conductor_bound=DEFAULT_CONDUCTOR_BOUND):
    """Eigenvalues with algebraic multiplicity, canonically ordered."""
    return poly_roots(charpoly(m), conductor_bound)


def integer_eigenvalues(m):
    """Integer eigenvalues with geometric multiplicity (no search bound
    needed: candidates come from the rational root theorem, verified by an
    exact kernel computation)."""
    p = charpoly(m)
    rational = _poly_is_rational(p)
    q = rational if rational is not None else _norm_poly(p)
    n = m.rows
    ident = Matrix.identity(n)
    out = []
    for cand in _rational_candidates(q):
        if not is_int(cand):
            continue
        shifted = m - ident.scale(Cyclotomic.from_rat(cand))
        g = n - shifted.rank()
        if g:
            out.append((int(cand), g))
    return out


# ---------------------------------------------------------------------------
# Jordan normal form


@dataclass
class JordanData:
    """blocks: list of (eigenvalue, size), canonically ordered; transform P
    satisfies P^-1 * M * P = block diagonal of J(eigenvalue, size)."""

    blocks: list
    transform: Matrix

    def jordan_matrix(self):
        return Matrix.block_diag([jordan_block(lam, size) for lam, size in self.blocks])


def jordan_block(lam, n):
    """J(lam, n): lam on the diagonal, 1 on the superdiagonal."""
    lam = lam if isinstance(lam, Cyclotomic) else Cyclotomic.from_rat(lam)
    z, o = Cyclotomic.zero(), Cyclotomic.one()
    return Matrix(
        [[lam if i == j else o if j == i + 1 else z for j in range(n)] for i in range(n)]
    )


def _stack_rank(vectors):
    if not vectors:
        return 0
    return Matrix(vectors).rank()


def _pick_vector(small_basis, big_basis):
    """First vector of big_basis independent from span(small_basis)."""
    base_rank = _stack_rank(small_basis)
    for v in big_basis:
        if _stack_rank(small_basis + [v]) > base_rank:
            return v
    raise AssertionError("no independent vector found")


def jordan_form(m, conductor_bound=DEFAULT_CONDUCTOR_BOUND):
    """Exact Jordan normal form with transformation matrix.

    Blocks are sorted by (canonical eigenvalue order, size descending); the
    generalized eigenvector chains are chosen deterministically (lowest
    column pivoting in every kernel computation).
    """
    if not m.is_square:
        raise NonSquare("Jordan form of a non-square matrix")
    n = m.rows
    eigs = eigenvalues(m, conductor_bound)
    ident = Matrix.identity(n)

    blocks = []
    basis_columns = []
    for lam, mult in eigs:
        e1 = m - ident.scale(lam)
        powers = {1: e1}

        def epow(k):
            if k == 0:
                return ident
            if k not in powers:
                powers[k] = epow(k - 1) * e1
            return powers[k]

        nullities = [0]
        nullity = n - e1.rank()
        k = 2
        while nullity != nullities[-1]:
            nullities.append(nullity)
            if nullity == mult:
                break
            nullity = n - epow(k).rank()
            k += 1

        if len(nullities) > 1:
            mid = [
                2 * nullities[i] - nullities[i - 1] - nullities[i + 1]
                for i in range(1, len(nullities) - 1)
            ]
            end = [nullities[-1] - nullities[-2]]
            counts = mid + end
        else:
            counts = []
        sizes = []
        for size_minus_1, count in reversed(list(enumerate(counts))):
            sizes.extend([size_minus_1 + 1] * count)

        eig_basis = []
        for size in sizes:
            null_big = epow(size).nullspace()
            null_small = epow(size - 1).nullspace() if size > 1 else []
            v = _pick_vector(null_small + eig_basis, null_big)
            chain = [v]
            for _ in range(size - 1):
                chain.append(e1 * chain[-1])
            eig_basis.extend(chain)
            basis_columns.extend(reversed(chain))
            blocks.append((lam, size))

    p = Matrix.from_columns(basis_columns)
    return JordanData(blocks=blocks, transform=p)
