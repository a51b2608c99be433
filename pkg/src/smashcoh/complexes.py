"""Generic (co)chain complex machinery.

Conventions fixed here and used everywhere:

* A chain complex has differentials d_n : C_n -> C_{n-1}.
* A cochain complex has differentials d^n : C^n -> C^{n+1}.
* Applying Hom(-, B) to a chain complex gives the cochain differential
  (delta f) = -(-1)^n f o d_{n+1} for f of degree n, i.e. the degree-|f|
  sign of the hom complex Hom(C, B) with B in degree zero.
* The total complex of a double complex with commuting squares uses
  D = vertical - (-1)^(p+q) horizontal on the (p, q) summand; summands of
  total degree n are laid out in increasing p.

The hom-space and tensor-over-algebra routines here are generic and dense;
they are intended for small oracle computations, with the large structured
cases handled by the specialized reduced models elsewhere.
"""

from .linalg import (
    Matrix, Subspace, quotient_data,
)


class AlgebraModule:
    """A finite-dimensional module over a FinDimAlgebra.

    ``action[i]`` is the dense matrix of the i-th algebra basis vector
    acting (on the side recorded in ``side``, 'left' or 'right').
    """

    def __init__(self, algebra, dim, action, side="left"):
        self.algebra = algebra
        self.dim = dim
        self.action = action
        self.side = side

    @classmethod
    def from_sparse_action(cls, algebra, dim, act, side="left"):
        """act[i][j] = sparse image of basis j under algebra basis i."""
        mats = [Matrix.from_sparse_cols(algebra.field, dim, act[i])
                for i in range(algebra.dim)]
        return cls(algebra, dim, mats, side=side)

    @classmethod
    def regular(cls, algebra, side="left"):
        if side == "left":
            mats = [algebra.left_mult_matrix(algebra.basis_vec(i))
                    for i in range(algebra.dim)]
        else:
            mats = [algebra.right_mult_matrix(algebra.basis_vec(i))
                    for i in range(algebra.dim)]
        return cls(algebra, algebra.dim, mats, side=side)

    def act_matrix(self, vec):
        """Dense matrix of a general (sparse) algebra element acting."""
        m = Matrix.zeros(self.algebra.field, self.dim, self.dim)
        for i, c in vec.items():
            m = m + self.action[i].scale(c)
        return m

    def check(self):
        """Module axioms: unit acts as identity, action respects products."""
        alg = self.algebra
        ident = Matrix.identity(alg.field, self.dim)
        if self.act_matrix(alg.unit) != ident:
            return False
        for i in range(alg.dim):
            for j in range(alg.dim):
                prod = self.act_matrix(alg.table[i][j])
                if self.side == "left":
                    comp = self.action[i] * self.action[j]
                else:
                    comp = self.action[j] * self.action[i]
                if prod != comp:
                    return False
        return True


def hom_space(m, b):
    """Basis of Hom_E(M, B) inside flattened Hom_k(M, B).

    M and B are left AlgebraModules over the same algebra.  A k-linear map
    F (B.dim x M.dim) is flattened row-slow: entry (r, c) at r*M.dim + c.
    Returns a Subspace of dimension-(B.dim*M.dim) flattened matrices.
    """
    field = m.algebra.field
    blocks = []
    ident_b = Matrix.identity(field, b.dim)
    ident_m = Matrix.identity(field, m.dim)
    for i in range(m.algebra.dim):
        blocks.append(b.action[i].tensor(ident_m)
                      - ident_b.tensor(m.action[i].transpose()))
    big = blocks[0]
    for blk in blocks[1:]:
        big = big.vstack(blk)
    return big.kernel_basis()


def flat_to_matrix(field, flat, rows, cols):
    m = Matrix.zeros(field, rows, cols)
    for r in range(rows):
        for c in range(cols):
            v = flat[r * cols + c]
            if v != 0:
                m._set(r, c, v)
    return m


def matrix_to_flat(m):
    out = []
    for r in range(m.rows):
        out.extend(m.row(r))
    return out


def tensor_over_algebra(m, n):
    """M (x)_E N for a right module M and a left module N over E.

    Returns (quotient_data, project) where project maps a flattened
    m (x) n vector (index i*N.dim + j) to quotient coordinates.
    """
    assert m.side == "right" and n.side == "left"
    field = m.algebra.field
    dim = m.dim * n.dim
    relators = []
    for e in range(m.algebra.dim):
        me = m.action[e]        # v -> v . e
        ne = n.action[e]        # w -> e . w
        for i in range(m.dim):
            for j in range(n.dim):
                vec = [field.zero] * dim
                for r in range(m.dim):
                    a = me.entry(r, i)
                    if a != 0:
                        vec[r * n.dim + j] = field.add(vec[r * n.dim + j], a)
                for s in range(n.dim):
                    a = ne.entry(s, j)
                    if a != 0:
                        vec[i * n.dim + s] = field.sub(vec[i * n.dim + s], a)
                if any(v != 0 for v in vec):
                    relators.append(vec)
    if relators:
        sub = Matrix.from_cols(field, relators, rows=dim).column_space()
    else:
        sub = Subspace(field, dim, [])
    qd = quotient_data(Subspace.full(field, dim), sub)
    return qd


class CochainComplex:
    """Nonnegatively graded cochain complex with dense differentials."""

    def __init__(self, field, dims, diffs):
        self.field = field
        self.dims = dict(dims)          # degree -> dimension
        self.diffs = dict(diffs)        # degree n -> Matrix C^n -> C^{n+1}

    def dim(self, n):
        return self.dims.get(n, 0)

    def d(self, n):
        if n in self.diffs:
            return self.diffs[n]
        return Matrix.zeros(self.field, self.dim(n + 1), self.dim(n))

    def check_d_squared(self, lo, hi):
        for n in range(lo, hi):
            if not (self.d(n + 1) * self.d(n)).is_zero():
                return False
        return True

    def cohomology(self, n):
        return CohomologyData(self, n)


class CohomologyData:
    """ker d^n / im d^{n-1} with representatives and a projection map."""

    def __init__(self, cx, n):
        self.field = cx.field
        self.ambient_dim = cx.dim(n)
        ker = cx.d(n).kernel_basis()
        if n > 0 and cx.dim(n - 1) > 0:
            im = cx.d(n - 1).column_space()
        else:
            im = Subspace(cx.field, self.ambient_dim, [])
        self.qd = quotient_data(ker, im)
        self.dim = self.qd.dim
        self.representatives = self.qd.representatives
        self._ker = ker

    def project(self, cocycle):
        """Class coordinates of a cocycle (raises if not in the kernel)."""
        return self.qd.project(cocycle)

    def is_cocycle(self, vec):
        return self._ker.contains(vec)

    def lift(self, coords):
        return self.qd.lift(coords)


class DoubleComplex:
    """First-quadrant double complex with commuting squares.

    ``dims[(p, q)]`` are the summand dimensions; ``h[(p, q)]`` maps to
    (p+1, q) and ``v[(p, q)]`` to (p, q+1), both as honest commuting maps
    (the total differential inserts the signs).
    """

    def __init__(self, field, dims, h, v):
        self.field = field
        self.dims = dict(dims)
        self.h = dict(h)
        self.v = dict(v)

    def dim(self, p, q):
        return self.dims.get((p, q), 0)

    def hmap(self, p, q):
        if (p, q) in self.h:
            return self.h[(p, q)]
        return Matrix.zeros(self.field, self.dim(p + 1, q), self.dim(p, q))

    def vmap(self, p, q):
        if (p, q) in self.v:
            return self.v[(p, q)]
        return Matrix.zeros(self.field, self.dim(p, q + 1), self.dim(p, q))

    def check_commuting(self, max_total):
        for p in range(max_total + 1):
            for q in range(max_total + 1 - p):
                a = self.vmap(p + 1, q) * self.hmap(p, q)
                b = self.hmap(p, q + 1) * self.vmap(p, q)
                if a != b:
                    return False
        return True

    def summands(self, n):
        """(p, q, offset) triples for total degree n, p increasing."""
        out = []
        off = 0
        for p in range(n + 1):
            q = n - p
            d = self.dim(p, q)
            if d:
                out.append((p, q, off))
            off += d
        return out

    def total_dim(self, n):
        return sum(self.dim(p, n - p) for p in range(n + 1))

    def total(self, max_degree):
        """Total cochain complex through degree max_degree."""
        dims = {n: self.total_dim(n) for n in range(max_degree + 1)}
        diffs = {}
        sign = self.field.of(-1)
        for n in range(max_degree):
            m = Matrix.zeros(self.field, dims[n + 1], dims[n])
            tgt_off = {}
            off = 0
            for p in range(n + 2):
                q = n + 1 - p
                tgt_off[(p, q)] = off
                off += self.dim(p, q)
            for p, q, src_off in self.summands(n):
                vm = self.vmap(p, q)
                hm = self.hmap(p, q)
                # D = v - (-1)^n h on the (p, q) summand
                _insert_block(m, tgt_off[(p, q + 1)], src_off, vm)
                _insert_block(m, tgt_off[(p + 1, q)], src_off,
                              hm.scale(self.field.one if n % 2 == 1 else sign))
            diffs[n] = m
        return CochainComplex(self.field, dims, diffs)


def _insert_block(m, row_off, col_off, block):
    for i in range(block.rows):
        for j in range(block.cols):
            v = block.entry(i, j)
            if v != 0:
                m._set(row_off + i, col_off + j, v)


def chain_homology_dims(field, dims, diffs, max_degree):
    """Betti numbers of a chain complex given by dense matrices.

    ``diffs[n]`` is d_n : C_n -> C_{n-1}.
    """
    out = {}
    for n in range(max_degree + 1):
        dn = diffs.get(n)
        ker_dim = (dn.kernel_basis().dim if dn is not None and dims.get(n, 0)
                   else dims.get(n, 0))
        dnext = diffs.get(n + 1)
        im_dim = dnext.rank() if dnext is not None else 0
        out[n] = ker_dim - im_dim
    return out
