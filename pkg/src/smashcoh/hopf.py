"""Finite-dimensional algebras, Hopf algebras, actions, smash products.

An algebra is stored by its structure constants: ``table[i][j]`` is the
product of the i-th and j-th basis vectors as a sparse dict.  A Hopf algebra
additionally carries a coproduct (sparse vectors on the tensor-square index
grid), a counit, and an antipode with its inverse.

Tensor indices always follow the left-slow convention of linalg:
the pair (i, j) with right factor of dimension m flattens to i*m + j.
"""

from .linalg import BasisMap, Matrix, sv_add, sv_add_term, sv_scale


def tensor_index(i, j, right_dim):
    return i * right_dim + j


def untensor_index(idx, right_dim):
    return divmod(idx, right_dim)


def sv_tensor(field, a, b, right_dim):
    """Tensor of two sparse vectors as a sparse vector on the product grid."""
    out = {}
    for i, c in a.items():
        for j, d in b.items():
            sv_add_term(field, out, i * right_dim + j, field.mul(c, d))
    return out


class FinDimAlgebra:
    """Associative unital algebra given by structure constants."""

    def __init__(self, field, dim, table, unit, names=None):
        self.field = field
        self.dim = dim
        self.table = table          # table[i][j] = sparse dict
        self.unit = dict(unit)      # sparse vector of 1
        self.names = names or ["e%d" % i for i in range(dim)]

    def basis_product(self, i, j):
        return self.table[i][j]

    def multiply(self, u, v):
        """Product of two sparse vectors."""
        f = self.field
        out = {}
        for i, c in u.items():
            for j, d in v.items():
                sv_add(f, out, self.table[i][j], scale=f.mul(c, d))
        return out

    def multiply_many(self, vecs):
        acc = dict(self.unit)
        for v in vecs:
            acc = self.multiply(acc, v)
        return acc

    def basis_vec(self, i):
        return {i: self.field.one}

    def left_mult_matrix(self, u):
        """Dense matrix of v -> u*v."""
        cols = [self.multiply(u, self.basis_vec(j)) for j in range(self.dim)]
        return Matrix.from_sparse_cols(self.field, self.dim, cols)

    def right_mult_matrix(self, u):
        cols = [self.multiply(self.basis_vec(j), u) for j in range(self.dim)]
        return Matrix.from_sparse_cols(self.field, self.dim, cols)

    # -- axioms -------------------------------------------------------------

    def check_associative(self):
        f = self.field
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.table[i][j]
                for k in range(self.dim):
                    left = self.multiply(ij, self.basis_vec(k))
                    right = self.multiply(self.basis_vec(i), self.table[j][k])
                    if left != right:
                        return False
        return True

    def check_unital(self):
        for i in range(self.dim):
            e = self.basis_vec(i)
            if self.multiply(self.unit, e) != e or self.multiply(e, self.unit) != e:
                return False
        return True

    def opposite(self):
        table = [[self.table[j][i] for j in range(self.dim)] for i in range(self.dim)]
        return FinDimAlgebra(self.field, self.dim, table, self.unit,
                             names=[n + "^op" for n in self.names])

    def center_dim(self):
        """Dimension of {z : za = az for all basis a}."""
        f = self.field
        blocks = []
        for i in range(self.dim):
            e = self.basis_vec(i)
            l = self.left_mult_matrix(e)
            r = self.right_mult_matrix(e)
            blocks.append(l - r)
        m = blocks[0]
        for b in blocks[1:]:
            m = m.vstack(b)
        return m.kernel_basis().dim


def tensor_algebra(a, b):
    """A (x) B with componentwise multiplication (no twist)."""
    f = a.field
    dim = a.dim * b.dim
    table = [[None] * dim for _ in range(dim)]
    for i1 in range(a.dim):
        for j1 in range(b.dim):
            for i2 in range(a.dim):
                for j2 in range(b.dim):
                    prod = sv_tensor(f, a.table[i1][i2], b.table[j1][j2], b.dim)
                    table[i1 * b.dim + j1][i2 * b.dim + j2] = prod
    unit = sv_tensor(f, a.unit, b.unit, b.dim)
    names = ["%s.%s" % (x, y) for x in a.names for y in b.names]
    return FinDimAlgebra(f, dim, table, unit, names=names)


def enveloping_algebra(a):
    """A^e = A^op (x) A, so that A-bimodules are left A^e-modules via
    (a (x) b) . m = b m a."""
    return tensor_algebra(a.opposite(), a)


class HopfAlgebra(FinDimAlgebra):
    """Hopf algebra: algebra plus coproduct, counit, antipode.

    coproduct[i] is a sparse vector on the dim*dim grid; counit[i] a scalar;
    antipode / antipode_inv are lists of sparse vectors (columns).
    """

    def __init__(self, field, dim, table, unit, coproduct, counit,
                 antipode, antipode_inv=None, names=None):
        super().__init__(field, dim, table, unit, names=names)
        self.coproduct = coproduct
        self.counit = counit
        self.antipode = antipode
        if antipode_inv is None:
            s = Matrix.from_sparse_cols(field, dim, antipode)
            inv = s.inverse()
            antipode_inv = [{i: inv.entry(i, j) for i in range(dim)
                             if inv.entry(i, j) != 0} for j in range(dim)]
        self.antipode_inv = antipode_inv

    # coproduct of a sparse vector, as sparse vector on the dim^2 grid
    def delta(self, v):
        out = {}
        for i, c in v.items():
            sv_add(self.field, out, self.coproduct[i], scale=c)
        return out

    def eps(self, v):
        f = self.field
        s = f.zero
        for i, c in v.items():
            s = f.add(s, f.mul(self.counit[i], c))
        return s

    def s_map(self, v):
        out = {}
        for i, c in v.items():
            sv_add(self.field, out, self.antipode[i], scale=c)
        return out

    def s_inv_map(self, v):
        out = {}
        for i, c in v.items():
            sv_add(self.field, out, self.antipode_inv[i], scale=c)
        return out

    def sweedler_terms(self, i):
        """Coproduct of basis vector i as a list of (j, k, coeff) triples."""
        return [(idx // self.dim, idx % self.dim, c)
                for idx, c in self.coproduct[i].items()]

    def iterated_coproduct(self, i, n):
        """Delta^(n): sparse dict on the dim^n grid; n >= 1.

        n = 1 is the identity, n = 2 the coproduct, and so on.
        """
        if not hasattr(self, "_itco_cache"):
            self._itco_cache = {}
        if (i, n) in self._itco_cache:
            return self._itco_cache[(i, n)]
        if n == 1:
            return {i: self.field.one}
        prev = self.iterated_coproduct(i, n - 1)
        # expand the last tensor slot
        f = self.field
        out = {}
        for idx, c in prev.items():
            head, last = divmod(idx, self.dim)
            for jk, d in self.coproduct[last].items():
                sv_add_term(f, out, head * self.dim * self.dim + jk, f.mul(c, d))
        self._itco_cache[(i, n)] = out
        return out

    def twisted_coproduct(self, i):
        """gamma -> S(gamma_1) (x) gamma_2, sparse on the dim^2 grid."""
        f = self.field
        out = {}
        for j, k, c in self.sweedler_terms(i):
            for sj, d in self.antipode[j].items():
                sv_add_term(f, out, sj * self.dim + k, f.mul(c, d))
        return out

    def check_hopf(self):
        """Return a list of axiom violations (empty when valid)."""
        f = self.field
        bad = []
        if not self.check_associative():
            bad.append("multiplication not associative")
        if not self.check_unital():
            bad.append("unit law fails")
        d = self.dim
        for i in range(d):
            # coassociativity via iterated coproducts
            left = {}
            for idx, c in self.coproduct[i].items():
                j, k = divmod(idx, d)
                for jk2, c2 in self.coproduct[j].items():
                    sv_add_term(f, left, jk2 * d + k, f.mul(c, c2))
            if left != self.iterated_coproduct(i, 3):
                bad.append("coproduct not coassociative at basis %d" % i)
            # counit laws
            lvec, rvec = {}, {}
            for j, k, c in self.sweedler_terms(i):
                sv_add_term(f, lvec, k, f.mul(c, self.counit[j]))
                sv_add_term(f, rvec, j, f.mul(c, self.counit[k]))
            if lvec != {i: f.one} or rvec != {i: f.one}:
                bad.append("counit law fails at basis %d" % i)
            # antipode axioms: S(h1) h2 = eps(h) 1 = h1 S(h2)
            lv, rv = {}, {}
            for j, k, c in self.sweedler_terms(i):
                sv_add(f, lv, self.multiply(self.antipode[j], {k: f.one}), scale=c)
                sv_add(f, rv, self.multiply({j: f.one}, self.antipode[k]), scale=c)
            target = sv_scale(f, self.unit, self.counit[i])
            if lv != target or rv != target:
                bad.append("antipode axiom fails at basis %d" % i)
            # S_inv really inverts S
            if self.s_inv_map(self.antipode[i]) != {i: f.one}:
                bad.append("antipode inverse wrong at basis %d" % i)
        # bialgebra: Delta and eps are algebra maps
        for i in range(d):
            for j in range(d):
                prod = self.table[i][j]
                dp = self.delta(prod)
                # Delta(i) * Delta(j) in the tensor-square algebra
                acc = {}
                for i1, i2, c in self.sweedler_terms(i):
                    for j1, j2, e in self.sweedler_terms(j):
                        piece = sv_tensor(
                            f, self.multiply({i1: f.one}, {j1: f.one}),
                            self.multiply({i2: f.one}, {j2: f.one}), d)
                        sv_add(f, acc, piece, scale=f.mul(c, e))
                if dp != acc:
                    bad.append("coproduct not multiplicative at (%d,%d)" % (i, j))
                if self.eps(prod) != f.mul(self.counit[i], self.counit[j]):
                    bad.append("counit not multiplicative at (%d,%d)" % (i, j))
        if self.delta(self.unit) != sv_tensor(f, self.unit, self.unit, d):
            bad.append("coproduct of unit wrong")
        if self.eps(self.unit) != f.one:
            bad.append("counit of unit wrong")
        return bad

    def antipode_order(self, max_order=16):
        s = Matrix.from_sparse_cols(self.field, self.dim, self.antipode)
        acc = s
        ident = Matrix.identity(self.field, self.dim)
        for n in range(1, max_order + 1):
            if acc == ident:
                return n
            acc = acc * s
        return None

    def is_group_basis(self):
        """True when every basis element is grouplike and the unit is the
        0th basis element (i.e. this is a group algebra on its basis)."""
        if self.unit != {0: self.field.one}:
            return False
        return all(self.coproduct[i] == {i * self.dim + i: self.field.one}
                   for i in range(self.dim))

    def is_cocommutative(self):
        f = self.field
        for i in range(self.dim):
            flipped = {}
            for j, k, c in self.sweedler_terms(i):
                sv_add_term(f, flipped, k * self.dim + j, c)
            if flipped != self.coproduct[i]:
                return False
        return True


def group_algebra(field, mult, names=None, inverse=None):
    """Group algebra of a finite group given by its multiplication table.

    ``mult[i][j]`` is the index of the product; element 0 must be the
    identity.  Grouplike coproduct, counit 1, antipode g -> g^{-1}.
    """
    n = len(mult)
    assert all(mult[0][j] == j and mult[j][0] == j for j in range(n))
    one = field.one
    table = [[{mult[i][j]: one} for j in range(n)] for i in range(n)]
    if inverse is None:
        inverse = [next(j for j in range(n) if mult[i][j] == 0) for i in range(n)]
    coproduct = [{i * n + i: one} for i in range(n)]
    counit = [one] * n
    antipode = [{inverse[i]: one} for i in range(n)]
    return HopfAlgebra(field, n, table, {0: one}, coproduct, counit,
                       antipode, antipode_inv=antipode, names=names)


def cyclic_group_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def cyclic_group_algebra(field, n):
    names = ["1"] + ["g" + ("^%d" % k if k > 1 else "") for k in range(1, n)]
    return group_algebra(field, cyclic_group_table(n), names=names)


def symmetric_group_3_table():
    """S_3 as permutations of {0,1,2}; element 0 is the identity."""
    import itertools
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
    index = {p: i for i, p in enumerate(perms)}
    table = []
    for p in perms:
        row = []
        for q in perms:
            comp = tuple(p[q[i]] for i in range(3))
            row.append(index[comp])
        table.append(row)
    return table


def symmetric_group_3_algebra(field):
    names = ["e", "r", "r^2", "s", "sr", "sr^2"]
    return group_algebra(field, symmetric_group_3_table(), names=names)


def sweedler_h4(field):
    """The 4-dimensional Hopf algebra with basis 1, g, x, gx.

    Relations g^2 = 1, x^2 = 0, xg = -gx; the coproduct sends g to g (x) g
    and x to x (x) 1 + g (x) x.  The antipode has order 4.  Requires
    characteristic different from 2.
    """
    assert field.p != 2
    f = field
    one, minus = f.one, f.of(-1)
    I, G, X, GX = 0, 1, 2, 3
    table = [[None] * 4 for _ in range(4)]
    # encode: 0 -> (0,0)=1, 1 -> (1,0)=g, 2 -> (0,1)=x, 3 -> (1,1)=gx
    def enc(ge, xe):
        return (ge % 2) + 2 * xe
    def basis_pair(i):
        return (i % 2, i // 2)
    for a in range(4):
        for b in range(4):
            ga, xa = basis_pair(a)
            gb, xb = basis_pair(b)
            if xa + xb >= 2:
                table[a][b] = {}
                continue
            # (g^ga x^xa)(g^gb x^xb) = (-1)^(xa*gb) g^(ga+gb) x^(xa+xb)
            sign = minus if (xa * gb) % 2 else one
            table[a][b] = {enc(ga + gb, xa + xb): sign}
    unit = {I: one}
    coproduct = [None] * 4
    coproduct[I] = {tensor_index(I, I, 4): one}
    coproduct[G] = {tensor_index(G, G, 4): one}
    coproduct[X] = {tensor_index(X, I, 4): one, tensor_index(G, X, 4): one}
    # Delta(gx) = Delta(g) Delta(x) = gx (x) g + 1 (x) gx
    coproduct[GX] = {tensor_index(GX, G, 4): one, tensor_index(I, GX, 4): one}
    counit = [one, one, f.zero, f.zero]
    # S(1)=1, S(g)=g, S(x)=-gx, S(gx) = S(x)S(g) = -gx g = x g g ... compute:
    # S(gx) = S(x) S(g) = (-gx) g = -g (xg) = -g(-gx) = x
    antipode = [{I: one}, {G: one}, {GX: minus}, {X: one}]
    # S^{-1}: S^2(x) = -x so S has order 4; S^{-1} = S^3
    names = ["1", "g", "x", "gx"]
    return HopfAlgebra(field, 4, table, unit, coproduct, counit, antipode,
                       names=names)


class ModuleAlgebraAction:
    """An action of a Hopf algebra on an algebra making it a module algebra.

    ``act[i][j]`` is the sparse result of the i-th Hopf basis vector acting
    on the j-th algebra basis vector.
    """

    def __init__(self, hopf, algebra, act):
        self.hopf = hopf
        self.algebra = algebra
        self.act = act

    def apply(self, hvec, avec):
        f = self.hopf.field
        out = {}
        for i, c in hvec.items():
            for j, d in avec.items():
                sv_add(f, out, self.act[i][j], scale=f.mul(c, d))
        return out

    def check(self):
        """Violations of the module-algebra axioms (empty when valid)."""
        h, a, f = self.hopf, self.algebra, self.hopf.field
        bad = []
        # module axiom: (gh) . v = g . (h . v)
        for i in range(h.dim):
            for j in range(h.dim):
                prod = h.table[i][j]
                for k in range(a.dim):
                    lhs = self.apply(prod, a.basis_vec(k))
                    rhs = self.apply(h.basis_vec(i),
                                     self.apply(h.basis_vec(j), a.basis_vec(k)))
                    if lhs != rhs:
                        bad.append("action not associative at (%d,%d,%d)" % (i, j, k))
        for k in range(a.dim):
            if self.apply(h.unit, a.basis_vec(k)) != a.basis_vec(k):
                bad.append("unit acts nontrivially at %d" % k)
        # module algebra: h.(uv) = (h1.u)(h2.v), h.1 = eps(h)1
        for i in range(h.dim):
            if self.apply(h.basis_vec(i), a.unit) != sv_scale(f, a.unit, h.counit[i]):
                bad.append("action on unit wrong at %d" % i)
            for u in range(a.dim):
                for v in range(a.dim):
                    lhs = self.apply(h.basis_vec(i), a.table[u][v])
                    rhs = {}
                    for h1, h2, c in h.sweedler_terms(i):
                        piece = a.multiply(
                            self.apply({h1: f.one}, a.basis_vec(u)),
                            self.apply({h2: f.one}, a.basis_vec(v)))
                        sv_add(f, rhs, piece, scale=c)
                    if lhs != rhs:
                        bad.append("Leibniz fails at (%d,%d,%d)" % (i, u, v))
        return bad


def trivial_action(hopf, algebra):
    """Action through the counit: h . a = eps(h) a."""
    act = [[sv_scale(hopf.field, algebra.basis_vec(j), hopf.counit[i])
            for j in range(algebra.dim)] for i in range(hopf.dim)]
    return ModuleAlgebraAction(hopf, algebra, act)


def adjoint_action(hopf):
    """A Hopf algebra acting on itself by h . a = h1 a S(h2)."""
    f = hopf.field
    act = []
    for i in range(hopf.dim):
        row = []
        for j in range(hopf.dim):
            out = {}
            for h1, h2, c in hopf.sweedler_terms(i):
                piece = hopf.multiply(hopf.multiply({h1: f.one},
                                                    hopf.basis_vec(j)),
                                      hopf.antipode[h2])
                sv_add(f, out, piece, scale=c)
            row.append(out)
        act.append(row)
    return ModuleAlgebraAction(hopf, hopf, act)


def smash_product(action):
    """A # Gamma: basis a_i gamma_j at flat index i*dim(Gamma)+j.

    (a gamma)(b delta) = a (gamma_1 . b) gamma_2 delta.
    """
    h, a = action.hopf, action.algebra
    f = h.field
    dg = h.dim
    dim = a.dim * dg
    table = [[None] * dim for _ in range(dim)]
    for ia in range(a.dim):
        for ig in range(dg):
            for jb in range(a.dim):
                for jd in range(dg):
                    out = {}
                    for g1, g2, c in h.sweedler_terms(ig):
                        moved = action.apply({g1: f.one}, a.basis_vec(jb))
                        left = a.multiply(a.basis_vec(ia), moved)
                        right = h.multiply(h.basis_vec(g2), h.basis_vec(jd))
                        sv_add(f, out, sv_tensor(f, left, right, dg), scale=c)
                    table[ia * dg + ig][jb * dg + jd] = out
    unit = sv_tensor(f, a.unit, h.unit, dg)
    names = ["%s#%s" % (x, y) for x in a.names for y in h.names]
    return FinDimAlgebra(f, dim, table, unit, names=names)


def dual_numbers(field, name="x"):
    """k[x]/(x^2), basis 1, x."""
    one, zero = field.one, field.zero
    table = [[{0: one}, {1: one}], [{1: one}, {}]]
    return FinDimAlgebra(field, 2, table, {0: one}, names=["1", name])


def truncated_polynomial_algebra(field, n, name="x"):
    """k[x]/(x^n), basis 1, x, ..., x^(n-1)."""
    one = field.one
    table = [[{i + j: one} if i + j < n else {} for j in range(n)]
             for i in range(n)]
    names = ["1"] + [name + ("^%d" % k if k > 1 else "") for k in range(1, n)]
    return FinDimAlgebra(field, n, table, {0: one}, names=names)


def sign_action_on_dual_numbers(field):
    """Z/2 = <g> acting on k[x]/(x^2) by g . x = -x."""
    h = cyclic_group_algebra(field, 2)
    a = dual_numbers(field)
    one, minus = field.one, field.of(-1)
    act = [
        [{0: one}, {1: one}],           # identity
        [{0: one}, {1: minus}],         # g
    ]
    return ModuleAlgebraAction(h, a, act)


def sweedler_action_on_dual_numbers(field):
    """Sweedler's H4 acting on k[y]/(y^2): g.y = -y, x.y = 0 shifted...

    The action used here: g . y = -y, x . y = 1 (a non-inner derivation-like
    action twisted by g), x . 1 = 0.  This makes k[y]/(y^2) an H4-module
    algebra: x.(y y) = (x.y)(1... checked in tests via ModuleAlgebraAction.
    """
    h = sweedler_h4(field)
    a = dual_numbers(field, name="y")
    f = field
    one, minus, zero = f.one, f.of(-1), f.zero
    # basis of H4: 1, g, x, gx ; basis of A: 1, y
    act = [
        [{0: one}, {1: one}],            # 1 . (1, y)
        [{0: one}, {1: minus}],          # g . y = -y
        [{}, {0: one}],                  # x . 1 = 0, x . y = 1
        [{}, {0: one}],                  # gx . y = g.(x.y) = g.1 = 1
    ]
    return ModuleAlgebraAction(h, a, act)
