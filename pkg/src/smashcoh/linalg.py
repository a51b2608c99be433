"""Exact linear algebra over Q and F_p.

Everything downstream (differentials, action maps, homology, lifting) runs
through the types in this module.  There is no floating point anywhere:
rational matrices hold ``fractions.Fraction`` entries, prime-field matrices
hold int64 residues handled with numpy (integer arithmetic mod p is exact).

Two matrix flavors coexist:

* ``Matrix`` -- dense, used for every rank / kernel / solve / quotient
  computation on the (small) reduced models.
* ``BasisMap`` -- a linear map given by a sparse formula on basis vectors,
  used for the structure maps of the large resolution complexes, where a
  dense representation would be hopeless.

Tensor index convention, fixed system-wide: the flat index of
``e_i (x) e_j`` with right factor of dimension ``m`` is ``i*m + j``
(left factor varies slowest).
"""

from fractions import Fraction

import numpy as np


class NoSolution(Exception):
    """Raised by solve() when the target is not in the image."""


class NotASubspace(Exception):
    """Raised by quotient_data when containment fails."""


class Field:
    """The ground field: Q (p is None) or F_p for a prime p."""

    def __init__(self, p=None):
        if p is not None:
            if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
                raise ValueError("p must be prime, got %r" % (p,))
        self.p = p

    @classmethod
    def rationals(cls):
        return cls(None)

    @classmethod
    def prime(cls, p):
        return cls(p)

    @property
    def is_rational(self):
        return self.p is None

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def of(self, x):
        """Coerce an int / Fraction into a normalized field element."""
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError("denominator divisible by p")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if self.p is None:
            if a == 0:
                raise ZeroDivisionError
            return Fraction(1) / a
        return pow(int(a), -1, self.p)

    def parse(self, text):
        """Parse an exact scalar: '3', '-2/7', or '4 mod 5' (p must match)."""
        text = text.strip()
        if "mod" in text:
            value, modulus = text.split("mod")
            if self.p is None or int(modulus) != self.p:
                raise ValueError("modulus %s does not match field" % modulus.strip())
            return self.of(int(value))
        return self.of(Fraction(text))

    def format(self, x):
        return str(x)

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p is None else "F_%d" % self.p


# ---------------------------------------------------------------------------
# sparse vectors: dict {index: scalar}, zero entries dropped eagerly


def sv_add_term(field, vec, idx, coeff):
    if coeff == 0:
        return
    c = field.add(vec.get(idx, field.zero), coeff)
    if c == 0:
        vec.pop(idx, None)
    else:
        vec[idx] = c


def sv_add(field, a, b, scale=None):
    """a += scale*b (in place on a); scale None means 1."""
    for idx, c in b.items():
        sv_add_term(field, a, idx, c if scale is None else field.mul(scale, c))
    return a


def sv_scale(field, a, s):
    if s == 0:
        return {}
    return {i: field.mul(c, s) for i, c in a.items()}


def sv_from_dense(field, vec):
    return {i: c for i, c in enumerate(vec) if c != 0}


def sv_to_dense(field, vec, dim):
    out = [field.zero] * dim
    for i, c in vec.items():
        out[i] = c
    return out


class Matrix:
    """Immutable-by-convention dense matrix over a Field.

    Rationals: list of row lists of Fractions.  Prime field: numpy int64
    array of residues in [0, p).
    """

    def __init__(self, field, rows, cols, data):
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data
        self._rref = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, field, rows, cols):
        if field.p is None:
            data = [[Fraction(0)] * cols for _ in range(rows)]
        else:
            data = np.zeros((rows, cols), dtype=np.int64)
        return cls(field, rows, cols, data)

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        for i in range(n):
            m._set(i, i, field.one)
        return m

    @classmethod
    def from_rows(cls, field, rows):
        r = len(rows)
        c = len(rows[0]) if r else 0
        m = cls.zeros(field, r, c)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                m._set(i, j, field.of(v))
        return m

    @classmethod
    def from_cols(cls, field, cols, rows=None):
        if not cols:
            return cls.zeros(field, rows or 0, 0)
        return cls.from_rows(field, [list(r) for r in zip(*cols)])

    @classmethod
    def from_entries(cls, field, rows, cols, entries):
        m = cls.zeros(field, rows, cols)
        for (i, j), v in entries.items():
            m._set(i, j, field.of(v))
        return m

    @classmethod
    def from_sparse_cols(cls, field, rows, sparse_cols):
        """Columns given as sparse dicts {row: coeff}."""
        m = cls.zeros(field, rows, len(sparse_cols))
        for j, col in enumerate(sparse_cols):
            for i, v in col.items():
                m._set(i, j, v)
        return m

    # -- basic access -------------------------------------------------------

    def _set(self, i, j, v):
        if self.field.p is None:
            self.data[i][j] = v
        else:
            self.data[i, j] = int(v) % self.field.p

    def entry(self, i, j):
        if self.field.p is None:
            return self.data[i][j]
        return int(self.data[i, j])

    def row(self, i):
        if self.field.p is None:
            return list(self.data[i])
        return [int(v) for v in self.data[i]]

    def col(self, j):
        if self.field.p is None:
            return [self.data[i][j] for i in range(self.rows)]
        return [int(v) for v in self.data[:, j]]

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def copy(self):
        if self.field.p is None:
            data = [row[:] for row in self.data]
        else:
            data = self.data.copy()
        return Matrix(self.field, self.rows, self.cols, data)

    def is_zero(self):
        if self.field.p is None:
            return all(v == 0 for row in self.data for v in row)
        return not self.data.any()

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        if self.field.p is None:
            return self.data == other.data
        return bool((self.data % self.field.p == other.data % other.field.p).all())

    def __repr__(self):
        return "Matrix(%dx%d over %r)" % (self.rows, self.cols, self.field)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        assert (self.rows, self.cols) == (other.rows, other.cols)
        if self.field.p is None:
            data = [[a + b for a, b in zip(r1, r2)]
                    for r1, r2 in zip(self.data, other.data)]
        else:
            data = (self.data + other.data) % self.field.p
        return Matrix(self.field, self.rows, self.cols, data)

    def __sub__(self, other):
        return self + other.scale(self.field.of(-1))

    def scale(self, s):
        if self.field.p is None:
            data = [[s * v for v in row] for row in self.data]
        else:
            data = (self.data * int(s)) % self.field.p
        return Matrix(self.field, self.rows, self.cols, data)

    def __mul__(self, other):
        assert self.cols == other.rows, "shape mismatch"
        f = self.field
        if f.p is not None:
            data = (self.data @ other.data) % f.p
            return Matrix(f, self.rows, other.cols, data)
        out = Matrix.zeros(f, self.rows, other.cols)
        for i in range(self.rows):
            srow = self.data[i]
            orow = out.data[i]
            for k in range(self.cols):
                a = srow[k]
                if a == 0:
                    continue
                brow = other.data[k]
                for j in range(other.cols):
                    b = brow[j]
                    if b != 0:
                        orow[j] += a * b
        return out

    def transpose(self):
        if self.field.p is None:
            data = [list(r) for r in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)]
            if not self.rows:
                data = [[] for _ in range(self.cols)]
        else:
            data = self.data.T.copy()
        return Matrix(self.field, self.cols, self.rows, data)

    def tensor(self, other):
        """Kronecker product in the fixed left-slow index convention."""
        f = self.field
        if f.p is not None:
            data = np.kron(self.data, other.data) % f.p
            return Matrix(f, self.rows * other.rows, self.cols * other.cols, data)
        out = Matrix.zeros(f, self.rows * other.rows, self.cols * other.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                a = self.data[i][j]
                if a == 0:
                    continue
                for k in range(other.rows):
                    orow = out.data[i * other.rows + k]
                    brow = other.data[k]
                    base = j * other.cols
                    for l in range(other.cols):
                        if brow[l] != 0:
                            orow[base + l] = a * brow[l]
        return out

    def hstack(self, other):
        assert self.rows == other.rows
        if self.field.p is None:
            data = [r1 + r2 for r1, r2 in zip(self.data, other.data)]
        else:
            data = np.hstack([self.data, other.data])
        return Matrix(self.field, self.rows, self.cols + other.cols, data)

    def vstack(self, other):
        assert self.cols == other.cols
        if self.field.p is None:
            data = [r[:] for r in self.data] + [r[:] for r in other.data]
        else:
            data = np.vstack([self.data, other.data])
        return Matrix(self.field, self.rows + other.rows, self.cols, data)

    def apply(self, vec):
        """Matrix times a dense column vector (list)."""
        assert len(vec) == self.cols
        f = self.field
        if f.p is not None:
            v = np.array([int(x) % f.p for x in vec], dtype=np.int64)
            return [int(x) for x in (self.data @ v) % f.p]
        out = [Fraction(0)] * self.rows
        for j, c in enumerate(vec):
            if c == 0:
                continue
            for i in range(self.rows):
                a = self.data[i][j]
                if a != 0:
                    out[i] += a * c
        return out

    def apply_sparse(self, vec):
        """Matrix times a sparse vector dict; returns a sparse dict."""
        f = self.field
        out = {}
        for j, c in vec.items():
            for i in range(self.rows):
                a = self.entry(i, j)
                if a != 0:
                    sv_add_term(f, out, i, f.mul(a, c))
        return out

    # -- elimination --------------------------------------------------------

    def rref(self):
        """Reduced row echelon form; returns (Matrix, pivot column list)."""
        if self._rref is not None:
            return self._rref
        f = self.field
        if f.p is not None:
            self._rref = _rref_mod_p(self.data, f.p)
            self._rref = (Matrix(f, self.rows, self.cols, self._rref[0]),
                          self._rref[1])
            return self._rref
        m = [row[:] for row in self.data]
        rows, cols = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            sel = None
            for i in range(r, rows):
                if m[i][c] != 0:
                    sel = i
                    break
            if sel is None:
                continue
            m[r], m[sel] = m[sel], m[r]
            pv = m[r][c]
            if pv != 1:
                inv = Fraction(1) / pv
                m[r] = [v * inv for v in m[r]]
            prow = m[r]
            for i in range(rows):
                if i == r:
                    continue
                fac = m[i][c]
                if fac == 0:
                    continue
                irow = m[i]
                for j in range(c, cols):
                    if prow[j] != 0:
                        irow[j] -= fac * prow[j]
            pivots.append(c)
            r += 1
        self._rref = (Matrix(f, rows, cols, m), pivots)
        return self._rref

    def rank(self):
        return len(self.rref()[1])

    def kernel_basis(self):
        """Basis of {v : self @ v = 0} as a Subspace of dimension cols."""
        R, pivots = self.rref()
        f = self.field
        pivset = set(pivots)
        free = [j for j in range(self.cols) if j not in pivset]
        basis = []
        for j in free:
            v = [f.zero] * self.cols
            v[j] = f.one
            for r, pc in enumerate(pivots):
                e = R.entry(r, j)
                if e != 0:
                    v[pc] = f.neg(e)
            basis.append(v)
        return Subspace(f, self.cols, basis)

    def column_space(self):
        _, pivots = self.rref()
        return Subspace(self.field, self.rows, [self.col(j) for j in pivots])

    def solver(self):
        return LinearSolver(self)

    def solve(self, target):
        """A particular solution of self @ x = target (list or Matrix)."""
        return self.solver().solve(target)

    def inverse(self):
        assert self.rows == self.cols
        aug = self.hstack(Matrix.identity(self.field, self.rows))
        R, pivots = aug.rref()
        if pivots[: self.rows] != list(range(self.rows)) or len(pivots) != self.rows:
            raise NoSolution("matrix not invertible")
        inv = Matrix.zeros(self.field, self.rows, self.rows)
        for i in range(self.rows):
            for j in range(self.rows):
                inv._set(i, j, R.entry(i, self.rows + j))
        return inv


def _rref_mod_p(a, p):
    m = a.copy() % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = m[r:, c]
        nz = np.nonzero(col)[0]
        if len(nz) == 0:
            continue
        sel = r + int(nz[0])
        if sel != r:
            m[[r, sel]] = m[[sel, r]]
        pv = int(m[r, c])
        if pv != 1:
            m[r] = (m[r] * pow(pv, -1, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        nzi = np.nonzero(col)[0]
        if len(nzi):
            m[nzi] = (m[nzi] - np.outer(col[nzi], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


class LinearSolver:
    """Prefactored RREF of a matrix for repeated exact solves."""

    def __init__(self, matrix):
        self.matrix = matrix
        self.field = matrix.field
        aug = matrix.hstack(Matrix.identity(matrix.field, matrix.rows))
        R, pivots = aug.rref()
        self.R = R
        self.pivots = [c for c in pivots if c < matrix.cols]

    def solve(self, target):
        if isinstance(target, Matrix):
            cols = [self.solve(target.col(j)) for j in range(target.cols)]
            return Matrix.from_cols(self.field, cols, rows=self.matrix.cols)
        f = self.field
        n = self.matrix.cols
        # y = T @ target where T is the recorded row transform
        y = []
        for r in range(self.matrix.rows):
            s = f.zero
            for k in range(self.matrix.rows):
                e = self.R.entry(r, n + k)
                if e != 0 and target[k] != 0:
                    s = f.add(s, f.mul(e, target[k]))
            y.append(s)
        x = [f.zero] * n
        for r, pc in enumerate(self.pivots):
            x[pc] = y[r]
        # consistency: rows beyond rank must vanish
        for r in range(len(self.pivots), self.matrix.rows):
            if y[r] != 0:
                raise NoSolution("inconsistent system")
        # verify (cheap): residual on pivot structure is exact by construction
        return x

    def in_image(self, target):
        try:
            self.solve(target)
            return True
        except NoSolution:
            return False


class Subspace:
    """A subspace of k^ambient_dim spanned by an independent basis."""

    def __init__(self, field, ambient_dim, basis, check=False):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = [list(v) for v in basis]
        if check and self.basis:
            if Matrix.from_cols(field, self.basis, rows=ambient_dim).rank() != len(self.basis):
                raise ValueError("basis not independent")

    @property
    def dim(self):
        return len(self.basis)

    def matrix(self):
        return Matrix.from_cols(self.field, self.basis, rows=self.ambient_dim)

    def contains(self, vec):
        if not self.basis:
            return all(v == 0 for v in vec)
        return self.matrix().solver().in_image(vec)

    def contains_subspace(self, other):
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        return (self.dim == other.dim and self.contains_subspace(other))

    @classmethod
    def full(cls, field, n):
        return cls(field, n, [r for r in Matrix.identity(field, n).columns()])

    def sum(self, other):
        cols = self.basis + other.basis
        if not cols:
            return Subspace(self.field, self.ambient_dim, [])
        m = Matrix.from_cols(self.field, cols, rows=self.ambient_dim)
        return m.column_space()

    def intersect(self, other):
        if not self.basis or not other.basis:
            return Subspace(self.field, self.ambient_dim, [])
        m = self.matrix().hstack(other.matrix())
        ker = m.kernel_basis()
        vecs = []
        for v in ker.basis:
            w = self.matrix().apply(v[: self.dim])
            vecs.append(w)
        if not vecs:
            return Subspace(self.field, self.ambient_dim, [])
        return Matrix.from_cols(self.field, vecs, rows=self.ambient_dim).column_space()


class QuotientData:
    """Coset representatives and projection for ambient/sub."""

    def __init__(self, field, ambient, sub):
        if not ambient.contains_subspace(sub):
            raise NotASubspace("sub is not contained in ambient")
        self.field = field
        self.ambient = ambient
        self.sub = sub
        # greedily extend sub's basis to ambient's using ambient basis vectors
        cols = sub.basis[:]
        reps = []
        if ambient.dim > sub.dim:
            m = Matrix.from_cols(field, cols + ambient.basis, rows=ambient.ambient_dim)
            _, pivots = m.rref()
            for c in pivots:
                if c >= len(cols):
                    reps.append(ambient.basis[c - len(cols)])
        self.representatives = reps
        all_cols = sub.basis + reps
        if all_cols:
            self._solver = Matrix.from_cols(field, all_cols,
                                            rows=ambient.ambient_dim).solver()
        else:
            self._solver = None
        self._nsub = sub.dim

    @property
    def dim(self):
        return len(self.representatives)

    def project(self, vec):
        """Coordinates of vec's class in the representative basis."""
        if self._solver is None:
            return []
        x = self._solver.solve(vec)
        return x[self._nsub:]

    def lift(self, coords):
        f = self.field
        out = [f.zero] * self.ambient.ambient_dim
        for c, rep in zip(coords, self.representatives):
            if c != 0:
                for i, v in enumerate(rep):
                    if v != 0:
                        out[i] = f.add(out[i], f.mul(c, v))
        return out


def rref(m):
    return m.rref()


def kernel_basis(m):
    return m.kernel_basis()


def solve(m, target):
    return m.solve(target)


def quotient_data(ambient, sub):
    return QuotientData(ambient.field, ambient, sub)


def tensor(m1, m2):
    return m1.tensor(m2)


class BasisMap:
    """A linear map src -> dst given by a sparse formula on basis vectors.

    ``fn(i)`` returns the image of the i-th basis vector as a sparse dict.
    Images are memoized; composition and conversion to a dense Matrix are
    provided for the (small) cases where that is affordable.
    """

    def __init__(self, field, src_dim, dst_dim, fn):
        self.field = field
        self.src_dim = src_dim
        self.dst_dim = dst_dim
        self._fn = fn
        self._cache = {}

    @classmethod
    def zero(cls, field, src_dim, dst_dim):
        return cls(field, src_dim, dst_dim, lambda i: {})

    @classmethod
    def identity(cls, field, dim):
        return cls(field, dim, dim, lambda i: {i: field.one})

    @classmethod
    def from_matrix(cls, m):
        def fn(i):
            return {r: m.entry(r, i) for r in range(m.rows) if m.entry(r, i) != 0}
        return cls(m.field, m.cols, m.rows, fn)

    def column(self, i):
        if i not in self._cache:
            self._cache[i] = self._fn(i)
        return self._cache[i]

    def apply(self, vec):
        """Apply to a sparse dict (or dense list); returns a sparse dict."""
        if isinstance(vec, list):
            vec = sv_from_dense(self.field, vec)
        out = {}
        for i, c in vec.items():
            sv_add(self.field, out, self.column(i), scale=c)
        return out

    def apply_dense(self, vec):
        return sv_to_dense(self.field, self.apply(vec), self.dst_dim)

    def compose(self, other):
        """self after other."""
        assert other.dst_dim == self.src_dim
        return BasisMap(self.field, other.src_dim, self.dst_dim,
                        lambda i: self.apply(other.column(i)))

    def add(self, other, scale=None):
        assert (self.src_dim, self.dst_dim) == (other.src_dim, other.dst_dim)

        def fn(i):
            out = dict(self.column(i))
            sv_add(self.field, out, other.column(i), scale=scale)
            return out
        return BasisMap(self.field, self.src_dim, self.dst_dim, fn)

    def scale(self, s):
        return BasisMap(self.field, self.src_dim, self.dst_dim,
                        lambda i: sv_scale(self.field, self.column(i), s))

    def to_matrix(self):
        return Matrix.from_sparse_cols(self.field, self.dst_dim,
                                       [self.column(i) for i in range(self.src_dim)])

    def is_zero(self):
        return all(not self.column(i) for i in range(self.src_dim))

    def equals(self, other):
        if (self.src_dim, self.dst_dim) != (other.src_dim, other.dst_dim):
            return False
        return all(self.column(i) == other.column(i) for i in range(self.src_dim))
