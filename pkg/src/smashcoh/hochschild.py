"""Cochain models for the Hochschild cohomology of a smash product.

Two models of HH(A#G, B) are built here, for B an algebra extension of
R = A#G:

* the reduced complex of R-bimodule maps on the smash resolution
  X = K # L^ (values stored on the free generators), with the cup
  product coming from the diagonal phi(omega (x) sigma^);
* the double complex Hom_G(L_p, Hom_{A^e}(K_q, B)) with the product
  mu(f (x) g) sigma and inner product mu_B(f (x)_A g) omega.

The maps xi and phi translate between the two models degree by degree;
they are mutually inverse chain isomorphisms and xi is multiplicative
at the cochain level.
"""

import random

from .linalg import Matrix, sv_add, sv_add_term, sv_from_dense, sv_to_dense
from .complexes import CochainComplex, DoubleComplex
from .hopf import smash_product
from .resolutions import index_tuple, tuple_index, smash_diagonal_terms


class NotLinear(Exception):
    """A cochain failed its declared linearity."""


class CertificationError(Exception):
    """Product structure constants depended on the chosen representatives."""


class AlgebraExtension:
    """An algebra B with an algebra map R = A#G -> B.

    The default (B omitted) is B = R with the identity map.  R-basis
    indices follow the smash layout r = a_idx * dim(G) + g_idx.
    """

    def __init__(self, action, b=None, phi=None):
        self.action = action
        self.alg = action.algebra
        self.hopf = action.hopf
        self.field = action.algebra.field
        self.smash = smash_product(action)
        if b is None:
            b = self.smash
            phi = Matrix.identity(self.field, b.dim)
        self.B = b
        self.phi = phi
        self.gdim = self.hopf.dim
        self._cols = {}

    def map_r(self, r_idx):
        """phi applied to an R-basis vector, as a sparse B-vector."""
        if r_idx not in self._cols:
            col = self.phi.col(r_idx)
            self._cols[r_idx] = {i: c for i, c in enumerate(col) if c != 0}
        return self._cols[r_idx]

    def map_a(self, a_idx):
        return self.map_r(a_idx * self.gdim)

    def map_g(self, g_idx):
        return self.map_r(g_idx)

    def map_g_sparse(self, gvec):
        out = {}
        for g, c in gvec.items():
            sv_add(self.field, out, self.map_g(g), scale=c)
        return out

    def left_r(self, r_idx, bvec):
        return self.B.multiply(self.map_r(r_idx), bvec)

    def right_r(self, r_idx, bvec):
        return self.B.multiply(bvec, self.map_r(r_idx))

    def check(self):
        """Unitality and multiplicativity violations of the structure map."""
        f = self.field
        out = []
        img = {}
        for i, c in self.smash.unit.items():
            sv_add(f, img, self.map_r(i), scale=c)
        if img != self.B.unit:
            out.append("unit")
        for i in range(self.smash.dim):
            for j in range(self.smash.dim):
                lhs = self.B.multiply(self.map_r(i), self.map_r(j))
                rhs = {}
                for k, c in self.smash.basis_product(i, j).items():
                    sv_add(f, rhs, self.map_r(k), scale=c)
                if lhs != rhs:
                    out.append(("mult", i, j))
        return out


class HomAeComplex:
    """Hom_{A^e}(K, B) in reduced coordinates, for K the bar resolution.

    A degree-q cochain is stored flat on Kbar_q (x) B: index
    kbar * dim(B) + b.  Carries the hom differential, the right G-action
    f.g = S(g_1) f(g_2 -) g_3, and the product mu_B (f (x)_A g) omega.
    """

    def __init__(self, bar, ext):
        self.K = bar
        self.ext = ext
        self.field = bar.field
        self.adim = bar.alg.dim
        self.bdim = ext.B.dim
        self._gamma = {}
        self._dmat = {}

    def dim(self, q):
        return self.K.base_dim(q) * self.bdim

    def value_fn(self, flat_vec):
        """Sparse flat cochain -> callable kbar -> sparse B-vector."""
        grouped = {}
        for idx, c in flat_vec.items():
            kbar, b = divmod(idx, self.bdim)
            grouped.setdefault(kbar, {})[b] = c
        return lambda kbar: grouped.get(kbar, {})

    def ext_eval(self, q, full_vec, vals):
        """A^e-linear extension of ``vals`` evaluated on a full K_q vector."""
        f, ext = self.field, self.ext
        out = {}
        for idx, c in full_vec.items():
            tup = index_tuple(idx, q + 2, self.adim)
            mid = vals(tuple_index(tup[1:q + 1], self.adim))
            if not mid:
                continue
            term = ext.B.multiply(ext.map_a(tup[0]), mid)
            term = ext.B.multiply(term, ext.map_a(tup[q + 1]))
            sv_add(f, out, term, scale=c)
        return out

    def d_matrix(self, q):
        """Hom differential C^q -> C^{q+1}: f -> -(-1)^q f . d_K."""
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
                for b in range(self.bdim):
                    sandwich = self.ext.B.multiply(
                        self.ext.map_a(tup[0]),
                        self.ext.B.multiply({b: f.one},
                                            self.ext.map_a(tup[q + 1])))
                    for b2, e in sandwich.items():
                        sv_add_term(f, cols[kbar * self.bdim + b],
                                    tbar * self.bdim + b2,
                                    f.mul(sgn, f.mul(c, e)))
        m = Matrix.from_sparse_cols(f, self.dim(q + 1), cols)
        self._dmat[q] = m
        return m

    def gamma_matrix(self, q, g_idx):
        """Matrix of f -> f.g on reduced degree-q cochains."""
        key = (q, g_idx)
        if key in self._gamma:
            return self._gamma[key]
        f, h, ext = self.field, self.K.hopf, self.ext
        cols = [{} for _ in range(self.dim(q))]
        for flat3, c in h.iterated_coproduct(g_idx, 3).items():
            g12, g3 = divmod(flat3, h.dim)
            g1, g2 = divmod(g12, h.dim)
            bl = ext.map_g_sparse(h.antipode[g1])
            br = ext.map_g(g3)
            sandwiches = [ext.B.multiply(bl,
                                         ext.B.multiply({b: f.one}, br))
                          for b in range(self.bdim)]
            for tbar in range(self.K.base_dim(q)):
                # (f.g)(tbar) = S(g1) f(g2 . tbar) g3: read f at g2.tbar.
                moved = self.K.gamma_base(q, {g2: f.one}, {tbar: f.one})
                for kbar, kc in moved.items():
                    for b in range(self.bdim):
                        for b2, e in sandwiches[b].items():
                            sv_add_term(f, cols[kbar * self.bdim + b],
                                        tbar * self.bdim + b2,
                                        f.mul(c, f.mul(kc, e)))
        m = Matrix.from_sparse_cols(f, self.dim(q), cols)
        self._gamma[key] = m
        return m

    def product(self, qf, fvec, qg, gvec):
        """mu_B (f (x)_A g) omega as a sparse flat degree-(qf+qg) cochain."""
        f = self.field
        n = qf + qg
        vf, vg = self.value_fn(fvec), self.value_fn(gvec)
        sgn = f.one if (qf * qg) % 2 == 0 else f.of(-1)
        out = {}
        for kbar in range(self.K.base_dim(n)):
            acc = {}
            for (i, x_full, y_full) in self.K.omega_base_terms(n, kbar):
                if i != qf:
                    continue
                left = self.ext_eval(qf, {x_full: f.one}, vf)
                right = self.ext_eval(qg, {y_full: f.one}, vg)
                sv_add(f, acc, self.ext.B.multiply(left, right), scale=sgn)
            for b, c in acc.items():
                sv_add_term(f, out, kbar * self.bdim + b, c)
        return out


class DoubleComplexModel:
    """The double complex C^{p,q} = Hom_G(L_p, Hom_{A^e}(K_q, B)).

    p is the L-degree (column), q the K-degree (row).  Coordinates:
    (lbar * kbase + kbar) * dim(B) + b, i.e. chi(lbar) is stored in the
    reduced Hom_{A^e}(K, B) coordinates.  The product is
    (chi * chi')(l) = +- chi(sigma_1(l)) chi'(sigma_2(l)).
    """

    def __init__(self, trivial, bar, ext, sigma, inner=None):
        self.L = trivial
        self.K = bar
        self.ext = ext
        self.sigma = sigma
        self.hom = inner if inner is not None else HomAeComplex(bar, ext)
        self.field = bar.field
        self.bdim = ext.B.dim if ext is not None else self.hom.bdim
        self.gdim = trivial.hopf.dim

    def dim(self, p, q):
        return self.L.base_dim(p) * self.hom.dim(q)

    def h_matrix(self, p, q):
        """chi -> chi . d_L (no sign), C^{p,q} -> C^{p+1,q}."""
        f = self.field
        hdim = self.hom.dim(q)
        cols = [{} for _ in range(self.dim(p, q))]
        dl = self.L.d(p + 1)
        gmats = {}
        for tbar in range(self.L.base_dim(p + 1)):
            dvec = dl.apply(self.L.base_embed(p + 1, tbar))
            for idx, c in dvec.items():
                mbar, g = divmod(idx, self.gdim)
                if g not in gmats:
                    gmats[g] = self.hom.gamma_matrix(q, g)
                gm = gmats[g]
                for hflat in range(hdim):
                    col = gm.col(hflat)
                    src = mbar * hdim + hflat
                    for b2, e in enumerate(col):
                        if e != 0:
                            sv_add_term(f, cols[src],
                                        tbar * hdim + b2, f.mul(c, e))
        return Matrix.from_sparse_cols(f, self.dim(p + 1, q), cols)

    def v_matrix(self, p, q):
        """The hom differential on the inner factor, C^{p,q} -> C^{p,q+1}."""
        eye = Matrix.identity(self.field, self.L.base_dim(p))
        return eye.tensor(self.hom.d_matrix(q))

    def double_complex(self, maxdeg):
        """DoubleComplex through total degree maxdeg (inclusive)."""
        f = self.field
        dims, h, v = {}, {}, {}
        for n in range(maxdeg + 2):
            for p in range(n + 1):
                dims[(p, n - p)] = self.dim(p, n - p)
        for n in range(maxdeg + 1):
            for p in range(n + 1):
                q = n - p
                h[(p, q)] = self.h_matrix(p, q)
                # v already carries the hom-complex sign -(-1)^q via
                # HomAeComplex.d_matrix; squares still commute since the
                # sign only depends on q.
                v[(p, q)] = self.v_matrix(p, q)
        return DoubleComplex(f, dims, h, v)

    def summands(self, n):
        """(p, q, offset) in total degree n, p (L-degree) increasing."""
        out = []
        off = 0
        for p in range(n + 1):
            q = n - p
            out.append((p, q, off))
            off += self.dim(p, q)
        return out

    def total_dim(self, n):
        return sum(self.dim(p, n - p) for p in range(n + 1))

    def _component(self, n, flat_vec, p):
        """The (p, n-p) component of a total-degree-n sparse vector,
        as {lbar: sparse hom vector}."""
        for (pp, q, off) in self.summands(n):
            if pp == p:
                lo, hi = off, off + self.dim(p, q)
                hdim = self.hom.dim(q)
                grouped = {}
                for idx, c in flat_vec.items():
                    if lo <= idx < hi:
                        lbar, hflat = divmod(idx - lo, hdim)
                        grouped.setdefault(lbar, {})[hflat] = c
                return grouped
        return {}

    def product(self, m, vec, m2, vec2):
        """Total-degree product of sparse total-degree vectors."""
        f = self.field
        out = {}
        offs_out = {(p, q): off for (p, q, off) in self.summands(m + m2)}
        for (p, q, _) in self.summands(m):
            comp = self._component(m, vec, p)
            if not comp:
                continue
            for (p2, q2, _) in self.summands(m2):
                comp2 = self._component(m2, vec2, p2)
                if not comp2:
                    continue
                sgn = f.one if ((p2 + q2) * p) % 2 == 0 else f.of(-1)
                tgt_off = offs_out[(p + p2, q + q2)]
                hdim_t = self.hom.dim(q + q2)
                for lbar in range(self.L.base_dim(p + p2)):
                    terms = self.sigma.generator_terms(p + p2, lbar)
                    acc = {}
                    for (i, u_full, v_full), c in terms.items():
                        if i != p:
                            continue
                        ubar, gu = divmod(u_full, self.gdim)
                        vbar, gv = divmod(v_full, self.gdim)
                        fv = comp.get(ubar)
                        gv2 = comp2.get(vbar)
                        if not fv or not gv2:
                            continue
                        fmoved = self.hom.gamma_matrix(q, gu).apply_sparse(fv)
                        gmoved = self.hom.gamma_matrix(
                            q2, gv).apply_sparse(gv2)
                        prod = self.hom.product(q, fmoved, q2, gmoved)
                        sv_add(f, acc, prod, scale=f.mul(c, sgn))
                    for hflat, c in acc.items():
                        sv_add_term(f, out, tgt_off + lbar * hdim_t + hflat, c)
        return out


class SmashCochainModel:
    """Reduced cochains Hom_{R^e}(X, B) on the smash resolution X = K # L^.

    A degree-n cochain is stored on the free generators: for the base
    blocks (p, q) of X_n (K-degree p descending, offsets from
    base_blocks) the flat index is (off + w) * dim(B) + b.
    """

    def __init__(self, smash, sigma, ext):
        self.X = smash
        self.sigma = sigma
        self.ext = ext
        self.field = smash.field
        self.bdim = ext.B.dim
        self._diag = {}

    def dim(self, n):
        return self.X.base_dim(n) * self.bdim

    def value_fn(self, n, flat_vec):
        """flat cochain -> callable (p, q, w) -> sparse B-vector."""
        offs = {(p, q): off for (p, q, off) in self.X.base_blocks(n)}
        grouped = {}
        for idx, c in flat_vec.items():
            wflat, b = divmod(idx, self.bdim)
            grouped.setdefault(wflat, {})[b] = c

        def vals(p, q, w):
            off = offs.get((p, q))
            if off is None:
                return {}
            return grouped.get(off + w, {})
        return vals

    def evaluate(self, n, vals, p, q, full_vec):
        """R^e-linear extension evaluated on a full block-(p, q) vector."""
        return self.X.evaluate_reduced(
            p, q, full_vec, lambda w: vals(p, q, w), self.ext)

    def d_matrix(self, n):
        """C^n -> C^{n+1}: theta -> -(-1)^n theta . d_X."""
        f = self.field
        sgn = f.of(-1) if n % 2 == 0 else f.one
        src_offs = {(p, q): off for (p, q, off) in self.X.base_blocks(n)}
        cols = [{} for _ in range(self.dim(n))]
        for (p, q, toff) in self.X.base_blocks(n + 1):
            for w in range(self.X.base_dim_block(p, q)):
                gen = self.X.kappa(p, q, w)
                for (pq2, bm) in self.X.d_block(p, q):
                    p2, q2 = pq2
                    if (p2, q2) not in src_offs:
                        continue
                    img = bm.apply(gen)
                    soff = src_offs[(p2, q2)]
                    for idx, c in img.items():
                        for r, ww, rp, e in self.X.u_decompose(p2, q2, idx):
                            for b in range(self.bdim):
                                moved = self.ext.right_r(
                                    rp, self.ext.left_r(r, {b: f.one}))
                                coeff = f.mul(sgn, f.mul(c, e))
                                for b2, mc in moved.items():
                                    sv_add_term(
                                        f, cols[(soff + ww) * self.bdim + b],
                                        (toff + w) * self.bdim + b2,
                                        f.mul(coeff, mc))
        return Matrix.from_sparse_cols(f, self.dim(n + 1), cols)

    def diagonal_terms(self, p, q, w):
        key = (p, q, w)
        if key not in self._diag:
            self._diag[key] = smash_diagonal_terms(
                self.X, self.sigma, p, q, w)
        return self._diag[key]

    def product(self, m, vec, m2, vec2):
        """Cup product of sparse flat cochains of degrees m and m2."""
        f = self.field
        vals, vals2 = self.value_fn(m, vec), self.value_fn(m2, vec2)
        out = {}
        for (p, q, toff) in self.X.base_blocks(m + m2):
            for w in range(self.X.base_dim_block(p, q)):
                acc = {}
                for ((blk1, idx1, blk2, idx2), c) in \
                        self.diagonal_terms(p, q, w).items():
                    i, s = blk1
                    j, t = blk2
                    if i + s != m or j + t != m2:
                        continue
                    left = self.evaluate(m, vals, i, s, {idx1: f.one})
                    if not left:
                        continue
                    right = self.evaluate(m2, vals2, j, t, {idx2: f.one})
                    if not right:
                        continue
                    sgn = f.one if (m2 * (i + s)) % 2 == 0 else f.of(-1)
                    sv_add(f, acc, self.ext.B.multiply(left, right),
                           scale=f.mul(c, sgn))
                for b, c in acc.items():
                    sv_add_term(f, out, (toff + w) * self.bdim + b, c)
        return out

    # -- full (unreduced) cochains --------------------------------------------

    def full_dim(self, n):
        return self.X.total_dim(n) * self.bdim

    def expand(self, n, reduced_flat):
        """Reduced cochain -> values on all full basis vectors of X_n."""
        f = self.field
        vals = self.value_fn(n, reduced_flat)
        out = {}
        off = 0
        for (p, q, _) in self.X.blocks(n):
            for idx in range(self.X.block_dim(p, q)):
                bvec = self.evaluate(n, vals, p, q, {idx: f.one})
                for b, c in bvec.items():
                    out[(off + idx) * self.bdim + b] = c
            off += self.X.block_dim(p, q)
        return out

    def reduce(self, n, full_flat):
        """Full cochain -> reduced; raises NotLinear if not R^e-linear."""
        f = self.field
        reduced = {}
        full_offs = {}
        o = 0
        for (p, q, _) in self.X.blocks(n):
            full_offs[(p, q)] = o
            o += self.X.block_dim(p, q)
        for (p, q, boff) in self.X.base_blocks(n):
            fo = full_offs[(p, q)]
            for w in range(self.X.base_dim_block(p, q)):
                gen = self.X.kappa(p, q, w)
                acc = {}
                for idx, c in gen.items():
                    for b in range(self.bdim):
                        e = full_flat.get((fo + idx) * self.bdim + b, 0)
                        if e != 0:
                            sv_add_term(f, acc, b, f.mul(c, e))
                for b, c in acc.items():
                    reduced[(boff + w) * self.bdim + b] = c
        if self.expand(n, reduced) != {k: v for k, v in full_flat.items()
                                       if v != 0}:
            raise NotLinear("cochain is not R-bilinear")
        return reduced


def xi_matrix(smash_model, dc_model, n):
    """The reduced matrix of xi: theta -> (l -> theta(- (x) l)) in degree n.

    Smash block (p, q) (K-degree p, L-degree q) maps to double-complex
    summand (q, p) with sign (-1)^{pq}.
    """
    f = smash_model.field
    bdim = smash_model.bdim
    X = smash_model.X
    kbase = {q: X.K.base_dim(q) for q in range(n + 1)}
    lbase = {p: X.Lup.L.base_dim(p) for p in range(n + 1)}
    dc_offs = {(p, q): off for (p, q, off) in dc_model.summands(n)}
    cols = [{} for _ in range(smash_model.dim(n))]
    for (p, q, off) in X.base_blocks(n):
        sgn = f.one if (p * q) % 2 == 0 else f.of(-1)
        toff = dc_offs[(q, p)]
        hdim = dc_model.hom.dim(p)
        for w in range(X.base_dim_block(p, q)):
            kbar, lbar = divmod(w, lbase[q])
            for b in range(bdim):
                src = (off + w) * bdim + b
                tgt = toff + lbar * hdim + kbar * bdim + b
                cols[src][tgt] = sgn
    return Matrix.from_sparse_cols(f, dc_model.total_dim(n), cols)


def phi_matrix(smash_model, dc_model, n):
    """The reduced matrix of phi = xi^{-1} in degree n."""
    f = smash_model.field
    bdim = smash_model.bdim
    X = smash_model.X
    lbase = {q: X.Lup.L.base_dim(q) for q in range(n + 1)}
    dc_offs = {(p, q): off for (p, q, off) in dc_model.summands(n)}
    cols = [{} for _ in range(dc_model.total_dim(n))]
    for (p, q, off) in X.base_blocks(n):
        sgn = f.one if (p * q) % 2 == 0 else f.of(-1)
        soff = dc_offs[(q, p)]
        hdim = dc_model.hom.dim(p)
        for w in range(X.base_dim_block(p, q)):
            kbar, lbar = divmod(w, lbase[q])
            for b in range(bdim):
                src = soff + lbar * hdim + kbar * bdim + b
                tgt = (off + w) * bdim + b
                cols[src][tgt] = sgn
    return Matrix.from_sparse_cols(f, smash_model.dim(n), cols)


def xi_map(smash_model, dc_model, n, full_theta):
    """xi on a full degree-n cochain (validates R^e-linearity)."""
    reduced = smash_model.reduce(n, full_theta)
    return xi_matrix(smash_model, dc_model, n).apply_sparse(reduced)


def phi_inverse(smash_model, dc_model, n, chi):
    """phi on a reduced double-complex cochain; returns a full cochain."""
    reduced = phi_matrix(smash_model, dc_model, n).apply_sparse(chi)
    return smash_model.expand(n, reduced)


class DgAlgebra:
    """A cochain complex with a bilinear product, trusted through maxdeg.

    ``diffs[n]`` maps C^n -> C^{n+1} for n <= maxdeg; ``product`` takes
    (m, sparse, m2, sparse) and returns a sparse degree-(m+m2) vector.
    ``bigrade`` (optional) lists (p, q, offset, dim) summands per degree
    for filtration bookkeeping.
    """

    def __init__(self, field, maxdeg, dims, diffs, product, bigrade=None):
        self.field = field
        self.maxdeg = maxdeg
        self.dims = dims
        self.diffs = diffs
        self.product = product
        self.bigrade = bigrade

    def complex(self):
        return CochainComplex(self.field, self.dims, self.diffs)


def smash_dg(smash_model, maxdeg):
    f = smash_model.field
    dims = {n: smash_model.dim(n) for n in range(maxdeg + 2)}
    diffs = {n: smash_model.d_matrix(n) for n in range(maxdeg + 1)}

    def bigrade(n):
        out = []
        for (p, q, off) in smash_model.X.base_blocks(n):
            # report as (L-degree, K-degree) to match the double complex
            out.append((q, p, off * smash_model.bdim,
                        smash_model.X.base_dim_block(p, q)
                        * smash_model.bdim))
        return out
    return DgAlgebra(f, maxdeg, dims, diffs, smash_model.product, bigrade)


def double_complex_dg(dc_model, maxdeg):
    f = dc_model.field
    dc = dc_model.double_complex(maxdeg)
    total = dc.total(maxdeg + 1)
    dims = {n: total.dim(n) for n in range(maxdeg + 2)}
    diffs = {n: total.d(n) for n in range(maxdeg + 1)}

    def bigrade(n):
        return [(p, q, off, dc_model.dim(p, q))
                for (p, q, off) in dc_model.summands(n)]
    return DgAlgebra(f, maxdeg, dims, diffs, dc_model.product, bigrade)


class HHRing:
    """Graded ring data extracted from a dg algebra.

    ``dims[n]`` per-degree cohomology dimensions; ``representatives[n]``
    chosen cocycle representatives (dense); ``constants[(m, n)][i][j]``
    the class coordinates of the product of representative i (degree m)
    with representative j (degree n); gr_gamma / gr_a the dimensions of
    the two filtration gradings as {(p, total_degree): dim}.
    """

    def __init__(self, maxdeg, dims, representatives, constants,
                 cohomology, gr_gamma=None, gr_a=None):
        self.maxdeg = maxdeg
        self.dims = dims
        self.representatives = representatives
        self.constants = constants
        self.cohomology = cohomology
        self.gr_gamma = gr_gamma
        self.gr_a = gr_a


def _ring_constants(dg, coh, maxdeg, reps):
    f = dg.field
    constants = {}
    for m in range(maxdeg + 1):
        for n in range(maxdeg + 1 - m):
            if not reps[m] or not reps[n]:
                continue
            table = []
            for u in reps[m]:
                row = []
                for v in reps[n]:
                    prod = dg.product(m, sv_from_dense(f, u),
                                      n, sv_from_dense(f, v))
                    dense = sv_to_dense(f, prod, dg.dims[m + n])
                    row.append(coh[m + n].project(dense))
                table.append(row)
            constants[(m, n)] = table
    return constants


def _filtration_dims(dg, coh, maxdeg, level_of):
    """dims of F_p H^n where F_p is spanned by summands with level >= p."""
    f = dg.field
    out = {}
    for n in range(maxdeg + 1):
        if dg.dims[n] == 0 or coh[n].dim == 0:
            for p in range(n + 2):
                out[(p, n)] = 0
            continue
        levels = [0] * dg.dims[n]
        for (p, q, off, d) in dg.bigrade(n):
            for i in range(d):
                levels[off + i] = level_of(p, q)
        for p in range(n + 2):
            keep = [i for i in range(dg.dims[n]) if levels[i] >= p]
            if not keep:
                out[(p, n)] = 0
                continue
            sub = Matrix.from_cols(f, [dg.diffs[n].col(i) for i in keep])
            ker = sub.kernel_basis()
            # embed kernel vectors back and project to cohomology classes
            coords = []
            for v in ker.basis:
                full = [f.zero] * dg.dims[n]
                for j, i in enumerate(keep):
                    full[i] = v[j]
                coords.append(coh[n].project(full))
            if coords:
                m = Matrix.from_cols(f, coords)
                out[(p, n)] = m.rank()
            else:
                out[(p, n)] = 0
    return out


def _gr_dims(filt, maxdeg):
    out = {}
    for (p, n), d in filt.items():
        nxt = filt.get((p + 1, n), 0)
        if d - nxt:
            out[(p, n)] = d - nxt
    return out


def hh_ring(dg, maxdeg, certify_trials=3, seed=20240901):
    """Cohomology ring of a dg algebra with deterministic representatives.

    Product constants are recomputed with representatives perturbed by
    random coboundaries; a mismatch raises CertificationError.
    """
    f = dg.field
    cx = dg.complex()
    coh = {n: cx.cohomology(n) for n in range(maxdeg + 1)}
    dims = {n: coh[n].dim for n in range(maxdeg + 1)}
    reps = {n: list(coh[n].representatives) for n in range(maxdeg + 1)}
    constants = _ring_constants(dg, coh, maxdeg, reps)

    rng = random.Random(seed)
    for _ in range(certify_trials):
        perturbed = {}
        for n in range(maxdeg + 1):
            if n == 0 or dg.dims.get(n - 1, 0) == 0:
                perturbed[n] = reps[n]
                continue
            dprev = dg.diffs[n - 1]
            newreps = []
            for u in reps[n]:
                noise = [f.of(rng.randint(-3, 3))
                         for _ in range(dg.dims[n - 1])]
                cob = dprev.apply(noise)
                newreps.append([f.add(a, b) for a, b in zip(u, cob)])
            perturbed[n] = newreps
        check = _ring_constants(dg, coh, maxdeg, perturbed)
        if check != constants:
            raise CertificationError(
                "product constants depend on representatives")

    gr_gamma = gr_a = None
    if dg.bigrade is not None:
        filt_g = _filtration_dims(dg, coh, maxdeg, lambda p, q: p)
        filt_a = _filtration_dims(dg, coh, maxdeg, lambda p, q: q)
        gr_gamma = _gr_dims(filt_g, maxdeg)
        gr_a = _gr_dims(filt_a, maxdeg)
    return HHRing(maxdeg, dims, reps, constants, coh, gr_gamma, gr_a)


class BarCochainAlgebra:
    """Independent model: the reduced bar cochain algebra of an algebra R
    with coefficients in an extension B, C^n = Hom_k(R^{(x)n}, B).

    Differential: (d f)(r_0 .. r_n) = r_0 f(...) + sum (-1)^{i+1}
    f(.. r_i r_{i+1} ..) + (-1)^{n+1} f(...) r_n (outer factors through
    the structure map).  Product: (fg)(r_1..r_{m+n}) =
    (-1)^{mn} f(r_1..r_m) g(r_{m+1}..).
    """

    def __init__(self, ralg, b=None, phi=None):
        self.R = ralg
        self.field = ralg.field
        if b is None:
            b = ralg
            phi = Matrix.identity(self.field, b.dim)
        self.B = b
        self.phi = phi
        self.bdim = b.dim
        self._cols = {}

    def map_r(self, i):
        if i not in self._cols:
            col = self.phi.col(i)
            self._cols[i] = {k: c for k, c in enumerate(col) if c != 0}
        return self._cols[i]

    def dim(self, n):
        return (self.R.dim ** n) * self.bdim

    def d_matrix(self, n):
        f, rdim = self.field, self.R.dim
        cols = [{} for _ in range(self.dim(n))]
        for tbar in range(rdim ** (n + 1)):
            tup = index_tuple(tbar, n + 1, rdim)
            # r_0 f(r_1 ..)
            src_bar = tuple_index(tup[1:], rdim)
            for b in range(self.bdim):
                for b2, c in self.B.multiply(self.map_r(tup[0]),
                                             {b: f.one}).items():
                    sv_add_term(f, cols[src_bar * self.bdim + b],
                                tbar * self.bdim + b2, c)
            # inner faces
            sign = f.of(-1)
            for i in range(n):
                prod = self.R.basis_product(tup[i], tup[i + 1])
                merged = tup[:i] + tup[i + 2:]
                for v, c in prod.items():
                    new = merged[:i] + (v,) + merged[i:]
                    src_bar = tuple_index(new, rdim)
                    for b in range(self.bdim):
                        sv_add_term(f, cols[src_bar * self.bdim + b],
                                    tbar * self.bdim + b,
                                    f.mul(sign, c))
                sign = f.neg(sign)
            # f(..) r_n
            src_bar = tuple_index(tup[:n], rdim)
            for b in range(self.bdim):
                for b2, c in self.B.multiply({b: f.one},
                                             self.map_r(tup[n])).items():
                    sv_add_term(f, cols[src_bar * self.bdim + b],
                                tbar * self.bdim + b2, f.mul(sign, c))
        return Matrix.from_sparse_cols(f, self.dim(n + 1), cols)

    def product(self, m, vec, m2, vec2):
        f, rdim = self.field, self.R.dim

        def group(v):
            g = {}
            for idx, c in v.items():
                bar, b = divmod(idx, self.bdim)
                g.setdefault(bar, {})[b] = c
            return g
        gf, gg = group(vec), group(vec2)
        sgn = f.one if (m * m2) % 2 == 0 else f.of(-1)
        out = {}
        for tbar in range(rdim ** (m + m2)):
            tup = index_tuple(tbar, m + m2, rdim)
            left = gf.get(tuple_index(tup[:m], rdim))
            right = gg.get(tuple_index(tup[m:], rdim))
            if not left or not right:
                continue
            for b, c in self.B.multiply(left, right).items():
                sv_add_term(f, out, tbar * self.bdim + b, f.mul(sgn, c))
        return out

    def dg(self, maxdeg):
        dims = {n: self.dim(n) for n in range(maxdeg + 2)}
        diffs = {n: self.d_matrix(n) for n in range(maxdeg + 1)}
        return DgAlgebra(self.field, maxdeg, dims, diffs, self.product)


def hh_oracle(ralg, maxdeg, b=None, phi=None, certify_trials=3):
    """HH(R, B) from the reduced bar cochain algebra of R itself."""
    return hh_ring(BarCochainAlgebra(ralg, b, phi).dg(maxdeg), maxdeg,
                   certify_trials=certify_trials)
