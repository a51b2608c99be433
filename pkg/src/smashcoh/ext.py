"""Yoneda Ext algebras over a smash product A # Gamma.

Ext_{A#Gamma}(M, M) is computed from the double complex
Hom_Gamma(L, Hom_A(K (x)_A M, M)): the inner complex is the Yoneda
cochain complex of M over A, the outer structure is the same as for
Hochschild cohomology.  The tensor-hom adjunction identifies the inner
complex with Hom_{A^e}(K, End_k(M)), so the machinery of
:mod:`smashcoh.hochschild` applies verbatim once End_k(M) is presented
as an algebra extension of A # Gamma.

The module also provides normalized bar-resolution group cohomology
(used as an independent oracle) and the Lyndon-Hochschild-Serre
specialization for semidirect products N x| G.
"""

from .linalg import Matrix, sv_add, sv_add_term, sv_scale
from .hopf import (FinDimAlgebra, ModuleAlgebraAction, group_algebra,
                   smash_product)
from .resolutions import (InducedComplex, SigmaMap, SmashResolution,
                          index_tuple, tuple_index)
from .hochschild import (AlgebraExtension, DgAlgebra, DoubleComplexModel,
                         HomAeComplex, SmashCochainModel, double_complex_dg,
                         hh_ring, smash_dg, xi_matrix, phi_matrix)


class NotAnAction(Exception):
    """The declared group action fails the automorphism checks."""


class SmashModule:
    """A finite-dimensional left module over R = A # Gamma.

    ``rho`` is a list of dim x dim matrices, one per R-basis index
    (layout r = a_idx * dim(Gamma) + g_idx), acting on column vectors.
    """

    def __init__(self, action, dim, rho):
        self.action = action
        self.alg = action.algebra
        self.hopf = action.hopf
        self.field = action.algebra.field
        self.smash = smash_product(action)
        self.dim = dim
        self.rho = rho
        self.gdim = action.hopf.dim

    def act_r(self, r_idx, mvec):
        return self.rho[r_idx].apply_sparse(mvec)

    def act_r_sparse(self, rvec, mvec):
        out = {}
        for r, c in rvec.items():
            sv_add(self.field, out, self.act_r(r, mvec), scale=c)
        return out

    def act_a(self, a_idx, mvec):
        return self.act_r(a_idx * self.gdim, mvec)

    def act_g(self, g_idx, mvec):
        return self.act_r(g_idx, mvec)

    def act_g_sparse(self, gvec, mvec):
        out = {}
        for g, c in gvec.items():
            sv_add(self.field, out, self.act_g(g, mvec), scale=c)
        return out

    def check(self):
        """Violations of unitality, associativity, and the smash
        compatibility gamma(am) = (gamma_1 . a)(gamma_2 m)."""
        f, r, h = self.field, self.smash, self.hopf
        bad = []
        eye = Matrix.identity(f, self.dim)
        unit_mat = None
        for i, c in r.unit.items():
            scaled = self.rho[i].scale(c)
            unit_mat = scaled if unit_mat is None else unit_mat + scaled
        if unit_mat != eye:
            bad.append("unit")
        for i in range(r.dim):
            for j in range(r.dim):
                lhs = self.rho[i] * self.rho[j]
                rhs = None
                for k, c in r.basis_product(i, j).items():
                    scaled = self.rho[k].scale(c)
                    rhs = scaled if rhs is None else rhs + scaled
                if rhs is None:
                    rhs = Matrix.from_sparse_cols(
                        f, self.dim, [{} for _ in range(self.dim)])
                if lhs != rhs:
                    bad.append(("assoc", i, j))
        for g in range(h.dim):
            for a in range(self.alg.dim):
                for m in range(self.dim):
                    lhs = self.act_g(
                        g, self.act_a(a, {m: f.one}))
                    rhs = {}
                    for g1, g2, c in h.sweedler_terms(g):
                        moved = self.action.apply({g1: f.one}, {a: f.one})
                        for a2, d in moved.items():
                            piece = self.act_a(
                                a2, self.act_g(g2, {m: f.one}))
                            sv_add(f, rhs, piece, scale=f.mul(c, d))
                    if lhs != rhs:
                        bad.append(("compat", g, a, m))
        return bad


def regular_module(action):
    """R = A # Gamma as a left module over itself."""
    r = smash_product(action)
    rho = [r.left_mult_matrix(r.basis_vec(i)) for i in range(r.dim)]
    return SmashModule(action, r.dim, rho)


def module_from_action(action):
    """A as an A # Gamma-module: (a # gamma) . b = a (gamma . b)."""
    f, a, h = action.algebra.field, action.algebra, action.hopf
    rho = []
    for i in range(a.dim):
        for g in range(h.dim):
            cols = [a.multiply({i: f.one}, action.apply({g: f.one},
                                                        {b: f.one}))
                    for b in range(a.dim)]
            rho.append(Matrix.from_sparse_cols(f, a.dim, cols))
    return SmashModule(action, a.dim, rho)


def trivial_module(action, aug):
    """M = k through an augmentation of A (a list of scalars, an algebra
    map A -> k) tensored with the counit of Gamma."""
    f, h = action.algebra.field, action.hopf
    rho = []
    for i in range(action.algebra.dim):
        for g in range(h.dim):
            c = f.mul(aug[i], h.counit[g])
            rho.append(Matrix.from_sparse_cols(
                f, 1, [{0: c}] if c != f.zero else [{}]))
    return SmashModule(action, 1, rho)


def end_algebra(field, m):
    """The matrix algebra End_k(k^m), basis E_ij at flat index i*m + j."""
    dim = m * m
    table = []
    for x in range(dim):
        i, j = divmod(x, m)
        row = []
        for y in range(dim):
            k, l = divmod(y, m)
            row.append({i * m + l: field.one} if j == k else {})
        table.append(row)
    unit = {i * m + i: field.one for i in range(m)}
    names = ["E%d%d" % divmod(x, m) for x in range(dim)]
    return FinDimAlgebra(field, dim, table, unit, names=names)


def end_extension(module):
    """End_k(M) as an algebra extension of R = A # Gamma; the structure
    map sends r to its action matrix."""
    f, m = module.field, module.dim
    b = end_algebra(f, m)
    cols = []
    for r in range(module.smash.dim):
        mat = module.rho[r]
        col = {}
        for i in range(m):
            for j in range(m):
                e = mat.entry(i, j)
                if e != f.zero:
                    col[i * m + j] = e
        cols.append(col)
    phi = Matrix.from_sparse_cols(f, m * m, cols)
    return AlgebraExtension(module.action, b=b, phi=phi)


class BimoduleStructure:
    """Hom_k(M, N) as an R-bimodule: (r . f . r')(m) = r f(r' m).

    Coordinates: f = E_ij (e_j -> e_i) at flat index i * dim(M) + j.
    ``left[r]`` and ``right[r]`` are the action matrices.
    """

    def __init__(self, m, n):
        f = m.field
        self.M, self.N = m, n
        self.field = f
        self.dim = n.dim * m.dim
        eye_m = Matrix.identity(f, m.dim)
        eye_n = Matrix.identity(f, n.dim)
        self.left = [n.rho[r].tensor(eye_m) for r in range(n.smash.dim)]
        self.right = [eye_n.tensor(m.rho[r].transpose())
                      for r in range(m.smash.dim)]


def hom_k_bimodule(m, n):
    """The R-bimodule Hom_k(M, N); for M = N its algebra structure is
    exposed separately through :func:`end_extension`."""
    if m.field is not n.field and m.field != n.field:
        raise ValueError("modules over different fields")
    return BimoduleStructure(m, n)


class YonedaComplex:
    """Hom_A(K (x)_A M, N) in reduced coordinates, for K the bar
    resolution of A.

    A degree-q cochain is stored flat on Kbar_q (x) Hom_k(M, N):
    index kbar * (dim N * dim M) + i * dim M + j, where the (i, j)
    component sends kbar (x) e_j to e_i.  Carries the hom differential
    F -> -(-1)^q F . (d_K (x) id), the right Gamma-action
    (F . gamma)(x (x) m) = S(gamma_1) F(gamma_2 x (x) gamma_3 m), and
    (for M = N) the Yoneda product
    (FG)(x (x) m) = (-1)^{|F||G|} F(omega_1(x) (x) G(omega_2(x) (x) m)).
    """

    def __init__(self, bar, m, n=None):
        self.K = bar
        self.M = m
        self.N = n if n is not None else m
        self.field = bar.field
        self.adim = bar.alg.dim
        self.mdim = self.M.dim
        self.ndim = self.N.dim
        self.bdim = self.ndim * self.mdim
        self._gamma = {}
        self._dmat = {}

    def dim(self, q):
        return self.K.base_dim(q) * self.bdim

    def value_fn(self, flat_vec):
        grouped = {}
        for idx, c in flat_vec.items():
            kbar, b = divmod(idx, self.bdim)
            grouped.setdefault(kbar, {})[b] = c
        return lambda kbar: grouped.get(kbar, {})

    def _apply_hom(self, hvec, mvec):
        """Apply a sparse Hom_k(M, N) vector to a sparse M vector."""
        f = self.field
        out = {}
        for b, c in hvec.items():
            i, j = divmod(b, self.mdim)
            d = mvec.get(j)
            if d is not None:
                sv_add_term(f, out, i, f.mul(c, d))
        return out

    def eval_on(self, q, full_vec, vals, mvec):
        """A-linear extension evaluated on (full K_q vector) (x) mvec."""
        f = self.field
        out = {}
        for idx, c in full_vec.items():
            tup = index_tuple(idx, q + 2, self.adim)
            hv = vals(tuple_index(tup[1:q + 1], self.adim))
            if not hv:
                continue
            m1 = self.M.act_a(tup[q + 1], mvec)
            res = self.N.act_a(tup[0], self._apply_hom(hv, m1))
            sv_add(f, out, res, scale=c)
        return out

    def d_matrix(self, q):
        """C^q -> C^{q+1}: F -> -(-1)^q F . (d_K (x) id)."""
        if q in self._dmat:
            return self._dmat[q]
        f = self.field
        sgn = f.of(-1) if q % 2 == 0 else f.one
        cols = [{} for _ in range(self.dim(q))]
        dk = self.K.d(q + 1)
        for tbar in range(self.K.base_dim(q + 1)):
            dvec = dk.apply(self.K.base_embed(q + 1, tbar))
            for idx, c in dvec.items():
                tup = index_tuple(idx, q + 2, self.adim)
                kbar = tuple_index(tup[1:q + 1], self.adim)
                rho_l = self.N.rho[tup[0] * self.N.gdim]
                for j0 in range(self.mdim):
                    m1 = self.M.act_a(tup[q + 1], {j0: f.one})
                    for j, mc in m1.items():
                        for i in range(self.ndim):
                            src = kbar * self.bdim + i * self.mdim + j
                            for i2 in range(self.ndim):
                                e = rho_l.entry(i2, i)
                                if e != f.zero:
                                    sv_add_term(
                                        f, cols[src],
                                        tbar * self.bdim
                                        + i2 * self.mdim + j0,
                                        f.mul(sgn, f.mul(c, f.mul(mc, e))))
        mat = Matrix.from_sparse_cols(f, self.dim(q + 1), cols)
        self._dmat[q] = mat
        return mat

    def gamma_matrix(self, q, g_idx):
        """Matrix of F -> F . g on reduced degree-q cochains:
        (F . g)(x (x) m) = S(g_1) F(g_2 x (x) g_3 m)."""
        key = (q, g_idx)
        if key in self._gamma:
            return self._gamma[key]
        f, h = self.field, self.K.hopf
        cols = [{} for _ in range(self.dim(q))]
        for flat3, c in h.iterated_coproduct(g_idx, 3).items():
            g12, g3 = divmod(flat3, h.dim)
            g1, g2 = divmod(g12, h.dim)
            post = None
            for s, sc in h.antipode[g1].items():
                scaled = self.N.rho[s].scale(sc)
                post = scaled if post is None else post + scaled
            for tbar in range(self.K.base_dim(q)):
                moved = self.K.gamma_base(q, {g2: f.one}, {tbar: f.one})
                for j0 in range(self.mdim):
                    m1 = self.M.act_g(g3, {j0: f.one})
                    for kbar, kc in moved.items():
                        for j, mc in m1.items():
                            for i in range(self.ndim):
                                src = kbar * self.bdim + i * self.mdim + j
                                for i2 in range(self.ndim):
                                    e = post.entry(i2, i)
                                    if e != f.zero:
                                        sv_add_term(
                                            f, cols[src],
                                            tbar * self.bdim
                                            + i2 * self.mdim + j0,
                                            f.mul(c, f.mul(
                                                kc, f.mul(mc, e))))
        mat = Matrix.from_sparse_cols(f, self.dim(q), cols)
        self._gamma[key] = mat
        return mat

    def product(self, qf, fvec, qg, gvec):
        """Yoneda product; requires M = N."""
        if self.M is not self.N:
            raise ValueError("product requires M = N")
        f = self.field
        n = qf + qg
        vf, vg = self.value_fn(fvec), self.value_fn(gvec)
        sgn = f.one if (qf * qg) % 2 == 0 else f.of(-1)
        out = {}
        for kbar in range(self.K.base_dim(n)):
            for (i, x_full, y_full) in self.K.omega_base_terms(n, kbar):
                if i != qf:
                    continue
                for j0 in range(self.mdim):
                    inner = self.eval_on(qg, {y_full: f.one}, vg,
                                         {j0: f.one})
                    if not inner:
                        continue
                    res = self.eval_on(qf, {x_full: f.one}, vf, inner)
                    for i0, c in res.items():
                        sv_add_term(f, out,
                                    kbar * self.bdim + i0 * self.mdim + j0,
                                    f.mul(sgn, c))
        return out


def adjunction_iso(bar, module, maxdeg):
    """Degreewise isomorphism Hom_{A^e}(K, End_k(M)) -> Hom_A(K (x)_A M, M).

    With the coordinate conventions of HomAeComplex (End basis E_ij at
    flat i * dim(M) + j) and YonedaComplex, the adjoint of f is read off
    in the same coordinates, so the matrices are identities; the content
    (that the isomorphism intertwines differentials, Gamma-actions, and
    products) is checked against the independently built YonedaComplex.
    """
    ext = end_extension(module)
    hom = HomAeComplex(bar, ext)
    yc = YonedaComplex(bar, module)
    isos = {q: Matrix.identity(bar.field, hom.dim(q))
            for q in range(maxdeg + 1)}
    return isos, hom, yc


def yoneda_dg(bar, module, maxdeg):
    """The dg algebra Hom_A(K (x)_A M, M) computing Ext_A(M, M)."""
    yc = YonedaComplex(bar, module)
    dims = {q: yc.dim(q) for q in range(maxdeg + 2)}
    diffs = {q: yc.d_matrix(q) for q in range(maxdeg + 1)}
    return DgAlgebra(bar.field, maxdeg, dims, diffs, yc.product)


class ExtComputation:
    """Both sides of the Ext double complex and the chain isomorphism."""

    def __init__(self, trivial, bar, module, sigma, maxdeg, smash=None):
        self.module = module
        self.ext = end_extension(module)
        self.inner = YonedaComplex(bar, module)
        self.dc_model = DoubleComplexModel(trivial, bar, self.ext, sigma,
                                           inner=self.inner)
        self.dg = double_complex_dg(self.dc_model, maxdeg)
        if smash is None:
            smash = SmashResolution(bar, InducedComplex(trivial))
        self.smash_model = SmashCochainModel(smash, sigma, self.ext)
        self.smash_dg = smash_dg(self.smash_model, maxdeg)
        self.maxdeg = maxdeg

    def xi(self, n):
        return xi_matrix(self.smash_model, self.dc_model, n)

    def phi(self, n):
        return phi_matrix(self.smash_model, self.dc_model, n)

    def ring(self, certify_trials=3):
        return hh_ring(self.dg, self.maxdeg, certify_trials=certify_trials)


def ext_double_complex(trivial, bar, module, sigma, maxdeg, smash=None):
    """Ext_{A#Gamma}(M, M) via Hom_Gamma(L, Hom_A(K (x)_A M, M)), with
    the smash-resolution side Hom_{A#Gamma}(K#L^ (x) M, M) materialized
    (through End_k(M)) for cross-checking."""
    return ExtComputation(trivial, bar, module, sigma, maxdeg, smash=smash)


def ext_space_dims(trivial, bar, m, n, maxdeg):
    """Graded dimensions of Ext_{A#Gamma}(M, N) (no ring structure)."""
    yc = YonedaComplex(bar, m, n)
    dcm = DoubleComplexModel(trivial, bar, None, None, inner=yc)
    cx = dcm.double_complex(maxdeg).total(maxdeg + 1)
    out = {}
    for deg in range(maxdeg + 1):
        mat = cx.d(deg)
        prev_rank = cx.d(deg - 1).rank() if deg > 0 else 0
        out[deg] = mat.kernel_basis().dim - prev_rank
    return out


# ---------------------------------------------------------------------------
# groups: normalized bar cohomology and semidirect products


def group_cohomology(table, field, maxdeg, module=None):
    """H^n(G, M) for n <= maxdeg via the normalized bar complex.

    ``table[i][j]`` is the index of g_i g_j with g_0 = e.  ``module`` is
    an optional pair (dim, rho) with rho a list of action matrices per
    group element; default is the trivial one-dimensional module.
    Returns (dims, complex) where dims is a list of cohomology
    dimensions and complex the underlying CochainComplex.
    """
    from .complexes import CochainComplex
    g = len(table)
    if module is None:
        mdim, rho = 1, [Matrix.identity(field, 1)] * g
    else:
        mdim, rho = module
    nz = g - 1  # non-identity elements, shifted by one

    def elts(n):
        return nz ** n

    def decode(idx, n):
        return [x + 1 for x in index_tuple(idx, n, nz)]

    def encode(tup):
        return tuple_index([x - 1 for x in tup], nz)

    def d_matrix(n):
        cols = [{} for _ in range(elts(n) * mdim)]
        for t in range(elts(n + 1)):
            tup = decode(t, n + 1)
            # g_1 . f(g_2 ... g_{n+1})
            head = tup[1:]
            if all(x != 0 for x in head):
                src = encode(head)
                mat = rho[tup[0]]
                for j in range(mdim):
                    for i in range(mdim):
                        e = mat.entry(i, j)
                        if e != field.zero:
                            sv_add_term(field, cols[src * mdim + j],
                                        t * mdim + i, e)
            # alternating interior face maps
            for i in range(n):
                merged = tup[:i] + [table[tup[i]][tup[i + 1]]] + tup[i + 2:]
                if any(x == 0 for x in merged):
                    continue
                src = encode(merged)
                sgn = field.one if i % 2 == 1 else field.of(-1)
                for j in range(mdim):
                    sv_add_term(field, cols[src * mdim + j],
                                t * mdim + j, sgn)
            # last face: drop g_{n+1}
            tail = tup[:n]
            if all(x != 0 for x in tail):
                src = encode(tail)
                sgn = field.one if (n + 1) % 2 == 0 else field.of(-1)
                for j in range(mdim):
                    sv_add_term(field, cols[src * mdim + j],
                                t * mdim + j, sgn)
        return Matrix.from_sparse_cols(field, elts(n + 1) * mdim, cols)

    dims = {n: elts(n) * mdim for n in range(maxdeg + 2)}
    diffs = {n: d_matrix(n) for n in range(maxdeg + 1)}
    cx = CochainComplex(field, dims, diffs)
    return [cx.cohomology(n).dim for n in range(maxdeg + 1)], cx


def group_cohomology_dims(table, field, maxdeg):
    return group_cohomology(table, field, maxdeg)[0]


def check_group_action(n_table, g_table, act):
    """Raise NotAnAction unless act[g] is a list of automorphisms of N
    compatible with the multiplication of G (identity element 0)."""
    nn, ng = len(n_table), len(g_table)
    if len(act) != ng:
        raise NotAnAction("one permutation per group element required")
    for g in range(ng):
        p = act[g]
        if sorted(p) != list(range(nn)):
            raise NotAnAction("not a permutation at %d" % g)
        if p[0] != 0:
            raise NotAnAction("identity not fixed at %d" % g)
        for a in range(nn):
            for b in range(nn):
                if p[n_table[a][b]] != n_table[p[a]][p[b]]:
                    raise NotAnAction("not an automorphism at %d" % g)
    if act[0] != list(range(nn)):
        raise NotAnAction("identity acts nontrivially")
    for g in range(ng):
        for h in range(ng):
            gh = g_table[g][h]
            comp = [act[g][act[h][x]] for x in range(nn)]
            if comp != act[gh]:
                raise NotAnAction("not compatible with G at (%d,%d)" % (g, h))


def semidirect_product_table(n_table, g_table, act):
    """Multiplication table of N x| G, elements (n, g) at n*|G|+g."""
    check_group_action(n_table, g_table, act)
    ng = len(g_table)
    dim = len(n_table) * ng
    table = []
    for x in range(dim):
        n1, g1 = divmod(x, ng)
        row = []
        for y in range(dim):
            n2, g2 = divmod(y, ng)
            row.append(n_table[n1][act[g1][n2]] * ng + g_table[g1][g2])
        table.append(row)
    return table


class LhsResult:
    """E_2 = H(G, H(N, k)) data and the abutment H(N x| G, k)."""

    def __init__(self, e2, abutment, computation):
        self.e2 = e2
        self.abutment = abutment
        self.computation = computation


def lhs_specialize(n_table, g_table, act, field, maxdeg, certify_trials=0):
    """Run the Ext double complex for A = kN, Gamma = kG, M = k with
    N x| G given by ``act``, and report E_2 = H(G, H(N, k)) alongside
    the abutment H^n(N x| G, k)."""
    check_group_action(n_table, g_table, act)
    from .resolutions import BarResolution, TrivialResolution
    a = group_algebra(field, n_table)
    gamma = group_algebra(field, g_table)
    action_table = [[{act[g][n]: field.one} for n in range(len(n_table))]
                    for g in range(len(g_table))]
    action = ModuleAlgebraAction(gamma, a, action_table)
    bar = BarResolution(action)
    trivial = TrivialResolution(gamma)
    sigma = SigmaMap(trivial, maxdeg + 1, use_aw=True)
    module = trivial_module(action, [field.one] * len(n_table))
    comp = ExtComputation(trivial, bar, module, sigma, maxdeg)
    if certify_trials:
        ring = comp.ring(certify_trials=certify_trials)
    else:
        ring = comp.ring(certify_trials=0)
    abutment = [ring.dims[n] for n in range(maxdeg + 1)]

    # E_2 column dims, computed coefficients-first: H(N, k) with the
    # conjugation action of G, then H(G, -) with those coefficients.
    e2 = {}
    hn = group_cohomology(n_table, field, maxdeg)
    hn_dims, hn_cx = hn
    for q in range(maxdeg + 1):
        coh = hn_cx.cohomology(q)
        if coh.dim == 0:
            for p in range(maxdeg + 1 - q):
                e2[(p, q)] = 0
            continue
        # action of g on normalized q-cochains: (g.f)(n_1..) = f(g^{-1}.n_i)
        nz = len(n_table) - 1
        rho = []
        for g in range(len(g_table)):
            ginv = g_table[g].index(0)
            cols = []
            for src in range(coh.dim):
                rep = coh.lift([field.one if i == src else field.zero
                                for i in range(coh.dim)])
                moved = [field.zero] * len(rep)
                for t, c in enumerate(rep):
                    if c == field.zero:
                        continue
                    tup = [x + 1 for x in index_tuple(t, q, nz)]
                    img = [act[ginv][x] for x in tup]
                    moved[tuple_index([x - 1 for x in img], nz)] = \
                        field.add(moved[tuple_index(
                            [x - 1 for x in img], nz)], c)
                coords = coh.project(moved)
                cols.append({i: c for i, c in enumerate(coords)
                             if c != field.zero})
            rho.append(Matrix.from_sparse_cols(field, coh.dim, cols))
        dims_g, _ = group_cohomology(g_table, field, maxdeg - q,
                                     module=(coh.dim, rho))
        for p in range(maxdeg + 1 - q):
            e2[(p, q)] = dims_g[p]
    return LhsResult(e2, abutment, comp)
