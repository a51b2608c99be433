"""The structured resolutions and chain maps underlying everything else.

Objects built here, for a Hopf algebra G acting on an algebra A
(R = A # G denotes the smash product):

* ``BarResolution`` K of A: K_n = A (x) A^{(x)n} (x) A, free over A^e on the
  base space Kbar_n = A^{(x)n}, with the diagonal G-action.
* ``TrivialResolution`` L of the trivial right G-module k:
  L_n = G^{(x)n} (x) G, free right G-module on Lbar_n = G^{(x)n}.
* ``InducedComplex`` L^ = L (x)_G G^e with its G-bimodule structure,
  coaction rho, augmentation xi^, and the embedding L -> L^.
* ``SmashResolution`` X = K # L^, a complex of R-bimodules, free over R^e on
  base_(p,q) = Kbar_p (x) Lbar_q, with the explicit freeness witness
  (u_decompose / u_compose) used to reduce all Hom computations to the base.
* Diagonals: the splitting diagonal omega on K, a diagonal sigma on L
  (closed-form for group algebras, solver-lifted in general), its induced
  sigma^ on L^, the twist phi, and the composite diagonal on X, emitted as
  lists of tensor-representative terms.

Index conventions: a degree-n tuple over a dimension-d space is encoded as a
base-d integer with the leftmost slot most significant.
"""

from .linalg import (
    BasisMap, LinearSolver, Matrix, sv_add, sv_add_term, sv_from_dense,
    sv_scale, sv_to_dense,
)


def tuple_index(tup, dim):
    idx = 0
    for t in tup:
        idx = idx * dim + t
    return idx


def index_tuple(idx, length, dim):
    out = []
    for _ in range(length):
        idx, r = divmod(idx, dim)
        out.append(r)
    return tuple(reversed(out))


def substitute_slot(tup, pos, sparse, dim, field, out, coeff, width):
    """Accumulate coeff * (tup with slot pos replaced by each sparse term)."""
    for v, c in sparse.items():
        new = tup[:pos] + (v,) + tup[pos + 1:]
        sv_add_term(field, out, tuple_index(new, dim), field.mul(coeff, c))


def multi_substitute(field, tup, replacements, dim):
    """Replace several slots by sparse values; returns sparse dict of tuples.

    ``replacements`` is {pos: sparse}; untouched slots keep their basis value.
    """
    acc = {tup: field.one}
    for pos, sp in replacements.items():
        nxt = {}
        for t, c in acc.items():
            for v, e in sp.items():
                new = t[:pos] + (v,) + t[pos + 1:]
                sv_add_term(field, nxt, new, field.mul(c, e))
        acc = nxt
    return {tuple_index(t, dim): c for t, c in acc.items()}


class BarResolution:
    """Two-sided bar resolution of A with diagonal G-action."""

    def __init__(self, action):
        self.action = action
        self.alg = action.algebra
        self.hopf = action.hopf
        self.field = self.alg.field

    def full_dim(self, n):
        return self.alg.dim ** (n + 2)

    def base_dim(self, n):
        return self.alg.dim ** n

    def d(self, n):
        """Bar differential K_n -> K_{n-1} as a BasisMap; n >= 1."""
        a = self.alg
        f = self.field

        def fn(idx):
            tup = index_tuple(idx, n + 2, a.dim)
            out = {}
            sign = f.one
            for t in range(n + 1):
                prod = a.basis_product(tup[t], tup[t + 1])
                merged = tup[:t] + tup[t + 2:]
                for v, c in prod.items():
                    new = merged[:t] + (v,) + merged[t:]
                    sv_add_term(f, out, tuple_index(new, a.dim),
                                f.mul(sign, c))
                sign = f.neg(sign)
            return out
        return BasisMap(f, self.full_dim(n), self.full_dim(n - 1), fn)

    def tau(self):
        """Augmentation K_0 = A (x) A -> A (multiplication)."""
        a = self.alg
        f = self.field

        def fn(idx):
            i, j = index_tuple(idx, 2, a.dim)
            return dict(a.basis_product(i, j))
        return BasisMap(f, self.full_dim(0), a.dim, fn)

    def base_embed(self, n, kbar_idx):
        """1 (x) kbar (x) 1 as a sparse full vector."""
        a = self.alg
        f = self.field
        tup = index_tuple(kbar_idx, n, a.dim)
        out = {}
        for u, c in a.unit.items():
            for v, e in a.unit.items():
                sv_add_term(f, out, tuple_index((u,) + tup + (v,), a.dim),
                            f.mul(c, e))
        return out

    def gamma_full(self, n, gamma_sparse, vec):
        """Diagonal G-action on K_n applied to a sparse full vector."""
        return self._diag_action(n + 2, gamma_sparse, vec)

    def gamma_base(self, n, gamma_sparse, vec):
        """Diagonal G-action on the base Kbar_n (n slots)."""
        return self._diag_action(n, gamma_sparse, vec)

    def _diag_action(self, slots, gamma_sparse, vec):
        h, a, f = self.hopf, self.alg, self.field
        out = {}
        for g, gc in gamma_sparse.items():
            if slots == 0:
                sv_add(f, out, vec, scale=f.mul(gc, h.counit[g]))
                continue
            parts = h.iterated_coproduct(g, slots)
            for pidx, pc in parts.items():
                gtup = index_tuple(pidx, slots, h.dim)
                for idx, c in vec.items():
                    tup = index_tuple(idx, slots, a.dim)
                    repl = {t: self.action.act[gtup[t]][tup[t]]
                            for t in range(slots)}
                    term = multi_substitute(f, tup, repl, a.dim)
                    sv_add(f, out, term,
                           scale=f.mul(f.mul(gc, pc), c))
        return out

    def left_mult(self, n, a_idx, vec):
        """Left A-action on K_n (first slot)."""
        return self._slot_mult(n + 2, 0, a_idx, vec, left=True)

    def right_mult(self, n, a_idx, vec):
        return self._slot_mult(n + 2, n + 1, a_idx, vec, left=False)

    def right_mult_sparse(self, n, a_sparse, vec):
        f = self.field
        out = {}
        for i, c in a_sparse.items():
            sv_add(f, out, self.right_mult(n, i, vec), scale=c)
        return out

    def _slot_mult(self, slots, pos, a_idx, vec, left):
        a, f = self.alg, self.field
        out = {}
        for idx, c in vec.items():
            tup = index_tuple(idx, slots, a.dim)
            if left:
                prod = a.basis_product(a_idx, tup[pos])
            else:
                prod = a.basis_product(tup[pos], a_idx)
            substitute_slot(tup, pos, prod, a.dim, f, out, c, slots)
        return out

    def omega_base_terms(self, n, kbar_idx):
        """Splitting diagonal on the base generator 1 (x) kbar (x) 1.

        Returns a list of (i, x_full_idx, y_full_idx) with i + j = n: the
        representative (1 (x) a_1..a_i (x) 1) (x)_A (1 (x) a_{i+1}..a_n (x) 1),
        valid when the unit of A is the basis vector 0.
        """
        a = self.alg
        assert a.unit == {0: self.field.one}
        tup = index_tuple(kbar_idx, n, a.dim)
        out = []
        for i in range(n + 1):
            x = (0,) + tup[:i] + (0,)
            y = (0,) + tup[i:] + (0,)
            out.append((i, tuple_index(x, a.dim), tuple_index(y, a.dim)))
        return out

    def omega_collapsed(self, n):
        """omega: K_n -> sum_i K_i (x)_A K_j in collapsed coordinates.

        Collapsed coordinates for K_i (x)_A K_j: tuples of length i+j+3
        (b, a_1..a_i, c, a_1'..a_j', b'), i.e. the middle A-coordinate kept
        once.  Block (i, j) is laid out at increasing i; returns a BasisMap
        into the direct sum.
        """
        a, f = self.alg, self.field
        offs, total = self._collapsed_offsets(n)

        def fn(idx):
            tup = index_tuple(idx, n + 2, a.dim)
            out = {}
            for i in range(n + 1):
                # (b, a1..ai, 1) (x)_A (1, a_{i+1}..an, b') collapses to
                # (b, a1..ai, 1*1=unit, a_{i+1}.., b')
                for u, c in a.unit.items():
                    new = tup[: i + 1] + (u,) + tup[i + 1:]
                    sv_add_term(f, out,
                                offs[i] + tuple_index(new, a.dim), c)
            return out
        return BasisMap(f, self.full_dim(n), total, fn)

    def _collapsed_offsets(self, n):
        offs = []
        total = 0
        for i in range(n + 1):
            offs.append(total)
            total += self.alg.dim ** (n + 3)
        return offs, total

    def collapsed_d(self, n):
        """Differential on sum_{i+j=n} K_i (x)_A K_j collapsed coordinates."""
        a, f = self.alg, self.field
        offs_src, total_src = self._collapsed_offsets(n)
        offs_dst, total_dst = self._collapsed_offsets(n - 1)

        def fn(flat):
            # locate the block
            i = 0
            while i + 1 <= n and i + 1 < len(offs_src) and flat >= offs_src[i + 1]:
                i += 1
            j = n - i
            idx = flat - offs_src[i]
            tup = index_tuple(idx, n + 3, a.dim)
            out = {}
            # left factor bar differential: faces 0..i on slots 0..i+1
            if i >= 1:
                sign = f.one
                for t in range(i + 1):
                    prod = a.basis_product(tup[t], tup[t + 1])
                    merged = tup[:t] + tup[t + 2:]
                    for v, c in prod.items():
                        new = merged[:t] + (v,) + merged[t:]
                        sv_add_term(f, out,
                                    offs_dst[i - 1] + tuple_index(new, a.dim),
                                    f.mul(sign, c))
                    sign = f.neg(sign)
            # right factor: faces on slots i+1 .. n+2, Koszul sign (-1)^i
            if j >= 1:
                sign = f.one if i % 2 == 0 else f.of(-1)
                for t in range(i + 1, n + 2):
                    prod = a.basis_product(tup[t], tup[t + 1])
                    merged = tup[:t] + tup[t + 2:]
                    for v, c in prod.items():
                        new = merged[:t] + (v,) + merged[t:]
                        sv_add_term(f, out,
                                    offs_dst[i] + tuple_index(new, a.dim),
                                    f.mul(sign, c))
                    sign = f.neg(sign)
            return out
        return BasisMap(f, total_src, total_dst, fn)

    def collapsed_gamma(self, n, gamma_sparse, vec):
        """Diagonal G-action on the collapsed K (x)_A K in total degree n."""
        f = self.field
        size = self.alg.dim ** (n + 3)
        out = {}
        for flat, c in vec.items():
            blk, idx = divmod(flat, size)
            moved = self._diag_action(n + 3, gamma_sparse, {idx: c})
            for v, mc in moved.items():
                sv_add_term(f, out, blk * size + v, mc)
        return out


class TrivialResolution:
    """L_n = G^{(x)n} (x) G resolving the trivial right G-module k."""

    def __init__(self, hopf):
        self.hopf = hopf
        self.field = hopf.field

    def full_dim(self, n):
        return self.hopf.dim ** (n + 1)

    def base_dim(self, n):
        return self.hopf.dim ** n

    def d(self, n):
        h, f = self.hopf, self.field

        def fn(idx):
            tup = index_tuple(idx, n + 1, h.dim)
            out = {}
            # face 0: eps(a_1) times the rest
            e = h.counit[tup[0]]
            if e != 0:
                sv_add_term(f, out, tuple_index(tup[1:], h.dim), e)
            sign = f.of(-1)
            for t in range(1, n + 1):
                prod = h.basis_product(tup[t - 1], tup[t])
                merged = tup[: t - 1] + tup[t + 1:]
                for v, c in prod.items():
                    new = merged[: t - 1] + (v,) + merged[t - 1:]
                    sv_add_term(f, out, tuple_index(new, h.dim),
                                f.mul(sign, c))
                sign = f.neg(sign)
            return out
        return BasisMap(f, self.full_dim(n), self.full_dim(n - 1), fn)

    def xi(self):
        """Augmentation L_0 = G -> k (the counit)."""
        h, f = self.hopf, self.field
        return BasisMap(f, h.dim, 1,
                        lambda i: ({0: h.counit[i]} if h.counit[i] != 0
                                   else {}))

    def right_mult(self, n, g_idx, vec):
        """Right G-action (last slot)."""
        h, f = self.hopf, self.field
        out = {}
        for idx, c in vec.items():
            tup = index_tuple(idx, n + 1, h.dim)
            prod = h.basis_product(tup[n], g_idx)
            substitute_slot(tup, n, prod, h.dim, f, out, c, n + 1)
        return out

    def right_mult_sparse(self, n, g_sparse, vec):
        f = self.field
        out = {}
        for i, c in g_sparse.items():
            sv_add(f, out, self.right_mult(n, i, vec), scale=c)
        return out

    def base_embed(self, n, lbar_idx):
        """lbar (x) 1 as a sparse full vector."""
        h, f = self.hopf, self.field
        tup = index_tuple(lbar_idx, n, h.dim)
        out = {}
        for u, c in h.unit.items():
            sv_add_term(f, out, tuple_index(tup + (u,), h.dim), c)
        return out


class InducedComplex:
    """L^ = L (x)_G G^e in coordinates Lbar_n (x) G (x) G.

    The basis element (lbar, g, g') stands for g . (lbar (x) (1 (x) 1)) . g'
    for the outer G-bimodule structure; the embedded copy of L sits at
    (lbar, S(d_1), d_2) for lbar (x) d in L.
    """

    def __init__(self, trivial):
        self.L = trivial
        self.hopf = trivial.hopf
        self.field = trivial.field

    def full_dim(self, n):
        return self.hopf.dim ** (n + 2)

    def decode(self, n, idx):
        g = self.hopf.dim
        rest, gp = divmod(idx, g)
        lbar, gm = divmod(rest, g)
        return lbar, gm, gp

    def encode(self, n, lbar, gm, gp):
        g = self.hopf.dim
        return (lbar * g + gm) * g + gp

    def embed(self, n, vec):
        """L_n -> L^_n, l (x) d  ->  l (x) (S(d_1) (x) d_2)."""
        h, f = self.hopf, self.field
        g = h.dim
        out = {}
        for idx, c in vec.items():
            lbar, d = divmod(idx, g)
            for jk, e in h.coproduct[d].items():
                d1, d2 = divmod(jk, g)
                for s, sc in h.antipode[d1].items():
                    sv_add_term(f, out, self.encode(n, lbar, s, d2),
                                f.mul(c, f.mul(e, sc)))
        return out

    def d(self, n):
        """Induced differential: if d(lbar (x) 1) = sum m (x) delta, then
        (lbar, g, g') maps to sum m (x) (g S(delta_1), delta_2 g')."""
        h, f = self.hopf, self.field
        g = h.dim
        dl = self.L.d(n)

        def fn(idx):
            lbar, gm, gp = self.decode(n, idx)
            base = self.L.base_embed(n, lbar)
            img = dl.apply(base)
            out = {}
            for midx, c in img.items():
                mbar, delta = divmod(midx, g)
                for jk, e in h.coproduct[delta].items():
                    d1, d2 = divmod(jk, g)
                    left = h.multiply({gm: f.one}, h.antipode[d1])
                    right = h.basis_product(d2, gp)
                    for lv, lc in left.items():
                        for rv, rc in right.items():
                            sv_add_term(
                                f, out, self.encode(n - 1, mbar, lv, rv),
                                f.mul(f.mul(c, e), f.mul(lc, rc)))
            return out
        return BasisMap(f, self.full_dim(n), self.full_dim(n - 1), fn)

    def coaction(self, n, idx):
        """rho(lbar,(g,g')) = sum g_1 g'_1 (x) (lbar,(g_2, g'_2)); returns a
        sparse dict on the G (x) L^_n grid (G index slowest)."""
        h, f = self.hopf, self.field
        g = h.dim
        lbar, gm, gp = self.decode(n, idx)
        out = {}
        dim = self.full_dim(n)
        for jk, c in h.coproduct[gm].items():
            g1, g2 = divmod(jk, g)
            for jk2, e in h.coproduct[gp].items():
                p1, p2 = divmod(jk2, g)
                prod = h.basis_product(g1, p1)
                tgt = self.encode(n, lbar, g2, p2)
                for v, pc in prod.items():
                    sv_add_term(f, out, v * dim + tgt,
                                f.mul(f.mul(c, e), pc))
        return out

    def xi_up(self):
        """L^_0 = G (x) G -> G, (g, g') -> g g'."""
        h, f = self.hopf, self.field

        def fn(idx):
            _, gm, gp = self.decode(0, idx)
            return dict(h.basis_product(gm, gp))
        return BasisMap(f, self.full_dim(0), h.dim, fn)

    def left_mult(self, n, g_idx, vec):
        h, f = self.hopf, self.field
        out = {}
        for idx, c in vec.items():
            lbar, gm, gp = self.decode(n, idx)
            for v, e in h.basis_product(g_idx, gm).items():
                sv_add_term(f, out, self.encode(n, lbar, v, gp), f.mul(c, e))
        return out

    def right_mult(self, n, g_idx, vec):
        h, f = self.hopf, self.field
        out = {}
        for idx, c in vec.items():
            lbar, gm, gp = self.decode(n, idx)
            for v, e in h.basis_product(gp, g_idx).items():
                sv_add_term(f, out, self.encode(n, lbar, gm, v), f.mul(c, e))
        return out


class SmashResolution:
    """X = K # L^ with the four Def-style actions and the freeness witness.

    Block (p, q) of X_{p+q} has full coordinates K_p (x) L^_q (K index
    slowest).  The free R^e-generators are kappa(kbar, lbar); u_decompose
    writes any full basis vector as sum r . kappa(w) . r' and u_compose
    inverts that, giving the reduction used by all Hom computations.
    """

    def __init__(self, bar, induced):
        self.K = bar
        self.Lup = induced
        self.action = bar.action
        self.alg = bar.alg
        self.hopf = bar.hopf
        self.field = bar.field
        self.rdim = self.alg.dim * self.hopf.dim

    # -- layout --------------------------------------------------------------

    def block_dim(self, p, q):
        return self.K.full_dim(p) * self.Lup.full_dim(q)

    def blocks(self, n):
        out = []
        off = 0
        for p in range(n, -1, -1):
            q = n - p
            out.append((p, q, off))
            off += self.block_dim(p, q)
        return out

    def total_dim(self, n):
        return sum(self.block_dim(p, n - p) for p in range(n + 1))

    def base_dim_block(self, p, q):
        return self.K.base_dim(p) * self.Lup.L.base_dim(q)

    def base_dim(self, n):
        return sum(self.base_dim_block(p, n - p) for p in range(n + 1))

    def base_blocks(self, n):
        out = []
        off = 0
        for p in range(n, -1, -1):
            q = n - p
            out.append((p, q, off))
            off += self.base_dim_block(p, q)
        return out

    def split(self, p, q, idx):
        return divmod(idx, self.Lup.full_dim(q))

    def join(self, p, q, kidx, lidx):
        return kidx * self.Lup.full_dim(q) + lidx

    def r_index(self, a_idx, g_idx):
        return a_idx * self.hopf.dim + g_idx

    # -- differential ----------------------------------------------------------

    def d_block(self, p, q):
        """Differential restricted to block (p, q): list of
        ((p', q'), BasisMap) summands; d = d_K (x) id + (-1)^p id (x) d_L^."""
        f = self.field
        out = []
        if p >= 1:
            dk = self.K.d(p)

            def fnk(idx, dk=dk, p=p, q=q):
                kidx, lidx = self.split(p, q, idx)
                img = dk.column(kidx)
                return {self.join(p - 1, q, k2, lidx): c
                        for k2, c in img.items()}
            out.append(((p - 1, q),
                        BasisMap(f, self.block_dim(p, q),
                                 self.block_dim(p - 1, q), fnk)))
        if q >= 1:
            dl = self.Lup.d(q)
            sgn = f.one if p % 2 == 0 else f.of(-1)

            def fnl(idx, dl=dl, sgn=sgn, p=p, q=q):
                kidx, lidx = self.split(p, q, idx)
                img = dl.column(lidx)
                return {self.join(p, q - 1, kidx, l2): f.mul(sgn, c)
                        for l2, c in img.items()}
            out.append(((p, q - 1),
                        BasisMap(f, self.block_dim(p, q),
                                 self.block_dim(p, q - 1), fnl)))
        return out

    # -- actions (sparse vec in, sparse vec out, within block (p, q)) --------

    def act_left_a(self, p, q, a_idx, vec):
        f = self.field
        out = {}
        for idx, c in vec.items():
            kidx, lidx = self.split(p, q, idx)
            img = self.K.left_mult(p, a_idx, {kidx: f.one})
            for k2, e in img.items():
                sv_add_term(f, out, self.join(p, q, k2, lidx), f.mul(c, e))
        return out

    def act_left_gamma(self, p, q, g_idx, vec):
        """gamma . (x (x) y) = gamma_1 x (x) gamma_2 y."""
        h, f = self.hopf, self.field
        out = {}
        for idx, c in vec.items():
            kidx, lidx = self.split(p, q, idx)
            for jk, e in h.coproduct[g_idx].items():
                g1, g2 = divmod(jk, h.dim)
                kimg = self.K.gamma_full(p, {g1: f.one}, {kidx: f.one})
                limg = self.Lup.left_mult(q, g2, {lidx: f.one})
                for k2, kc in kimg.items():
                    for l2, lc in limg.items():
                        sv_add_term(f, out, self.join(p, q, k2, l2),
                                    f.mul(f.mul(c, e), f.mul(kc, lc)))
        return out

    def act_right_gamma(self, p, q, g_idx, vec):
        f = self.field
        out = {}
        for idx, c in vec.items():
            kidx, lidx = self.split(p, q, idx)
            limg = self.Lup.right_mult(q, g_idx, {lidx: f.one})
            for l2, e in limg.items():
                sv_add_term(f, out, self.join(p, q, kidx, l2), f.mul(c, e))
        return out

    def act_right_a(self, p, q, a_idx, vec):
        """(x (x) y) . a = x (^{y_-1} a) (x) y_0 via the coaction on L^."""
        f = self.field
        dim_l = self.Lup.full_dim(q)
        out = {}
        for idx, c in vec.items():
            kidx, lidx = self.split(p, q, idx)
            co = self.Lup.coaction(q, lidx)
            for gidx2, e in co.items():
                gm, l0 = divmod(gidx2, dim_l)
                moved = self.action.apply({gm: f.one},
                                          {a_idx: f.one})
                kimg = self.K.right_mult_sparse(p, moved, {kidx: f.one})
                for k2, kc in kimg.items():
                    sv_add_term(f, out, self.join(p, q, k2, l0),
                                f.mul(f.mul(c, e), kc))
        return out

    def act_left_r(self, p, q, r_idx, vec):
        """Left multiplication by the R-basis vector a (x) gamma."""
        a_idx, g_idx = divmod(r_idx, self.hopf.dim)
        return self.act_left_a(p, q, a_idx,
                               self.act_left_gamma(p, q, g_idx, vec))

    def act_right_r(self, p, q, r_idx, vec):
        a_idx, g_idx = divmod(r_idx, self.hopf.dim)
        return self.act_right_gamma(p, q, g_idx,
                                    self.act_right_a(p, q, a_idx, vec))

    # -- free generators and the freeness witness -----------------------------

    def kappa(self, p, q, w_idx):
        """The generator (1 (x) kbar (x) 1) (x) (lbar, 1, 1), sparse."""
        f = self.field
        kbar, lbar = divmod(w_idx, self.Lup.L.base_dim(q))
        kvec = self.K.base_embed(p, kbar)
        lvec = {}
        for u, c in self.hopf.unit.items():
            for u2, e in self.hopf.unit.items():
                sv_add_term(f, lvec, self.Lup.encode(q, lbar, u, u2),
                            f.mul(c, e))
        out = {}
        for kidx, kc in kvec.items():
            for lidx, lc in lvec.items():
                sv_add_term(f, out, self.join(p, q, kidx, lidx),
                            f.mul(kc, lc))
        return out

    def u_decompose(self, p, q, full_idx):
        """Write a full basis vector as sum coeff * r . kappa(w) . r'.

        Returns a list of (r_idx, w_idx, rp_idx, coeff): for the K-part
        (b, m, b') and L^-part (lbar, g, g') the decomposition is
        b g_3 . kappa(S^{-1}(g_2) m (x) lbar) . (^{S^{-1}(g_1)} b') g'.
        """
        h, a, f = self.hopf, self.alg, self.field
        act = self.action
        kidx, lidx = self.split(p, q, full_idx)
        ktup = index_tuple(kidx, p + 2, a.dim)
        b, m_tup, bp = ktup[0], ktup[1: p + 1], ktup[p + 1]
        lbar, gm, gp = self.Lup.decode(q, lidx)
        out = []
        lbase = self.Lup.L.base_dim(q)
        for g3flat, c in h.iterated_coproduct(gm, 3).items():
            g12, g3 = divmod(g3flat, h.dim)
            g1, g2 = divmod(g12, h.dim)
            # S^{-1}(g2) acting diagonally on the base tuple m
            mvec = self.K.gamma_base(p, h.antipode_inv[g2],
                                     {tuple_index(m_tup, a.dim): f.one})
            # ^{S^{-1}(g1)} b'
            bpvec = act.apply(h.antipode_inv[g1], {bp: f.one})
            for midx, mc in mvec.items():
                w = midx * lbase + lbar
                r = self.r_index(b, g3)
                for bpi, bc in bpvec.items():
                    rp = self.r_index(bpi, gp)
                    out.append((r, w, rp, f.mul(c, f.mul(mc, bc))))
        return out

    def u_compose(self, p, q, r_idx, w_idx, rp_idx):
        """r . kappa(w) . r' as a sparse full vector."""
        vec = self.kappa(p, q, w_idx)
        vec = self.act_right_r(p, q, rp_idx, vec)
        vec = self.act_left_r(p, q, r_idx, vec)
        return vec

    def augmentation(self, full_idx):
        """X_0 -> R via the freeness witness (tau (x) xi^)."""
        f = self.field
        out = {}
        for r, w, rp, c in self.u_decompose(0, 0, full_idx):
            prod = self._r_product(r, rp)
            sv_add(f, out, prod, scale=c)
        return out

    def _r_product(self, r_idx, rp_idx):
        """Product of two R-basis vectors, computed from the smash rule."""
        h, a, f = self.hopf, self.alg, self.field
        act = self.action
        a1, g1 = divmod(r_idx, h.dim)
        a2, g2 = divmod(rp_idx, h.dim)
        out = {}
        for jk, c in h.coproduct[g1].items():
            ga, gb = divmod(jk, h.dim)
            moved = act.apply({ga: f.one}, {a2: f.one})
            left = a.multiply({a1: f.one}, moved)
            right = h.basis_product(gb, g2)
            for lv, lc in left.items():
                for rv, rc in right.items():
                    sv_add_term(f, out, self.r_index(lv, rv),
                                f.mul(c, f.mul(lc, rc)))
        return out

    # -- reduced evaluation ----------------------------------------------------

    def evaluate_reduced(self, p, q, vec, values, bimodule):
        """Evaluate the R^e-linear map with generator values ``values`` on a
        sparse full vector of block (p, q).

        ``values[w]`` is a sparse B-vector; ``bimodule`` provides
        left_r(r_idx, bvec) and right_r(r_idx, bvec).
        """
        f = self.field
        out = {}
        for idx, c in vec.items():
            for r, w, rp, e in self.u_decompose(p, q, idx):
                val = values(w)
                if not val:
                    continue
                moved = bimodule.right_r(rp, bimodule.left_r(r, val))
                sv_add(f, out, moved, scale=f.mul(c, e))
        return out


def aw_sigma(trivial, n, lbar_idx):
    """Alexander-Whitney diagonal for a group algebra: on the generator
    (g_1..g_n, e) returns sum_i (g_1..g_i, g_{i+1}...g_n) (x) (g_{i+1}..g_n, e)
    as {(i, u_full, v_full): coeff} with i the left degree.

    Valid for group algebras only (basis = grouplikes, unit = basis 0).
    """
    h = trivial.hopf
    f = trivial.field
    g = h.dim
    tup = index_tuple(lbar_idx, n, g)
    out = {}
    for i in range(n + 1):
        # product g_{i+1} ... g_n (an honest basis element for group algebras)
        prod = 0
        for t in tup[i:]:
            nxt = h.basis_product(prod, t)
            assert len(nxt) == 1
            prod = next(iter(nxt))
        u = tuple_index(tup[:i] + (prod,), g)
        v = tuple_index(tup[i:] + (0,), g)
        sv_add_term(f, out, (i, u, v), f.one)
    return out


class TensorSquareL:
    """(L (x)_k L) with the diagonal right G-action, as a dense complex.

    Block (i, j) of degree n laid out at decreasing i (matching blocks()
    elsewhere).  Used as the target for lifting the diagonal sigma.
    """

    def __init__(self, trivial):
        self.L = trivial
        self.hopf = trivial.hopf
        self.field = trivial.field

    def blocks(self, n):
        out = []
        off = 0
        for i in range(n, -1, -1):
            j = n - i
            out.append((i, j, off))
            off += self.L.full_dim(i) * self.L.full_dim(j)
        return out

    def total_dim(self, n):
        return sum(self.L.full_dim(i) * self.L.full_dim(n - i)
                   for i in range(n + 1))

    def encode(self, n, i, u, v):
        for (bi, bj, off) in self.blocks(n):
            if bi == i:
                return off + u * self.L.full_dim(bj) + v
        raise ValueError

    def d_matrix(self, n):
        """Dense matrix of the differential (degree n -> n-1)."""
        f = self.field
        src = self.total_dim(n)
        dst = self.total_dim(n - 1)
        cols = []
        dmaps = {m: self.L.d(m) for m in range(1, n + 1)}
        dst_off = {(bi, bj): off for (bi, bj, off) in self.blocks(n - 1)}
        for (i, j, off) in self.blocks(n):
            dim_j = self.L.full_dim(j)
            for u in range(self.L.full_dim(i)):
                for v in range(dim_j):
                    out = {}
                    if i >= 1:
                        o2 = dst_off[(i - 1, j)]
                        for u2, c in dmaps[i].column(u).items():
                            sv_add_term(f, out, o2 + u2 * dim_j + v, c)
                    if j >= 1:
                        o2 = dst_off[(i, j - 1)]
                        sgn = f.one if i % 2 == 0 else f.of(-1)
                        dim_j2 = self.L.full_dim(j - 1)
                        for v2, c in dmaps[j].column(v).items():
                            sv_add_term(f, out, o2 + u * dim_j2 + v2,
                                        f.mul(sgn, c))
                    cols.append(out)
        return Matrix.from_sparse_cols(f, dst, cols)

    def apply_d(self, n, vec):
        """Sparse differential (degree n -> n-1) on a sparse vector."""
        f = self.field
        dst_off = {(bi, bj): off for (bi, bj, off) in self.blocks(n - 1)}
        src = self.blocks(n)
        out = {}
        for flat, c in vec.items():
            i, j, off = None, None, None
            for (bi, bj, boff) in src:
                if boff <= flat < boff + self.L.full_dim(bi) * self.L.full_dim(bj):
                    i, j, off = bi, bj, boff
                    break
            dim_j = self.L.full_dim(j)
            u, v = divmod(flat - off, dim_j)
            if i >= 1:
                o2 = dst_off[(i - 1, j)]
                for u2, e in self.L.d(i).column(u).items():
                    sv_add_term(f, out, o2 + u2 * dim_j + v, f.mul(c, e))
            if j >= 1:
                o2 = dst_off[(i, j - 1)]
                sgn = c if i % 2 == 0 else f.neg(c)
                dim_j2 = self.L.full_dim(j - 1)
                for v2, e in self.L.d(j).column(v).items():
                    sv_add_term(f, out, o2 + u * dim_j2 + v2, f.mul(sgn, e))
        return out

    def right_action(self, n, g_idx, vec):
        """Diagonal right action: (u (x) v) . g = u g_1 (x) v g_2."""
        h, f = self.hopf, self.field
        out = {}
        offs = self.blocks(n)
        for flat, c in vec.items():
            i, j, off = None, None, None
            for (bi, bj, boff) in offs:
                if flat >= boff and flat < boff + self.L.full_dim(bi) * self.L.full_dim(bj):
                    i, j, off = bi, bj, boff
                    break
            u, v = divmod(flat - off, self.L.full_dim(j))
            for jk, e in h.coproduct[g_idx].items():
                g1, g2 = divmod(jk, h.dim)
                uimg = self.L.right_mult(i, g1, {u: f.one})
                vimg = self.L.right_mult(j, g2, {v: f.one})
                for u2, uc in uimg.items():
                    for v2, vc in vimg.items():
                        sv_add_term(f, out,
                                    off + u2 * self.L.full_dim(j) + v2,
                                    f.mul(f.mul(c, e), f.mul(uc, vc)))
        return out


class SigmaMap:
    """A right-G-linear diagonal sigma: L -> L (x) L.

    Stores values on the free generators lbar (x) 1; values are sparse
    dicts over the TensorSquareL flat layout.  Built either from the
    group-algebra closed form or by degreewise lifting.
    """

    def __init__(self, trivial, max_degree, use_aw=False):
        self.L = trivial
        self.square = TensorSquareL(trivial)
        self.hopf = trivial.hopf
        self.field = trivial.field
        self.max_degree = max_degree
        self.gen_values = {}   # (n, lbar) -> sparse flat vec
        if use_aw:
            self._build_aw()
        else:
            self._build_lift()

    def _store(self, n, lbar, terms):
        f = self.field
        flat = {}
        for (i, u, v), c in terms.items():
            sv_add_term(f, flat, self.square.encode(n, i, u, v), c)
        self.gen_values[(n, lbar)] = flat

    def _build_aw(self):
        for n in range(self.max_degree + 1):
            for lbar in range(self.L.base_dim(n)):
                self._store(n, lbar, aw_sigma(self.L, n, lbar))

    def _build_lift(self):
        h, f = self.hopf, self.field
        # degree 0: generator is 1 (x) 1 in L_0 = G; sigma_0 = Delta, and on
        # the generator Delta(1) = 1 (x) 1
        out = {}
        for u, c in h.unit.items():
            for v, e in h.unit.items():
                sv_add_term(f, out, self.square.encode(0, 0, u, v),
                            f.mul(c, e))
        self.gen_values[(0, 0)] = out
        for n in range(1, self.max_degree + 1):
            solver = LinearSolver(self.square.d_matrix(n))
            dl = self.L.d(n)
            for lbar in range(self.L.base_dim(n)):
                gen = self.L.base_embed(n, lbar)
                rhs = self.apply(n - 1, dl.apply(gen))
                dense = sv_to_dense(f, rhs, self.square.total_dim(n - 1))
                sol = solver.solve(dense)
                self.gen_values[(n, lbar)] = sv_from_dense(f, sol)

    def apply(self, n, vec):
        """sigma on an arbitrary sparse L_n vector (G-linear extension)."""
        f = self.field
        g = self.hopf.dim
        out = {}
        for idx, c in vec.items():
            lbar, d = divmod(idx, g)
            val = self.gen_values[(n, lbar)]
            moved = self.square.right_action(n, d, val)
            sv_add(f, out, moved, scale=c)
        return out

    def generator_terms(self, n, lbar):
        """Value on the generator as {(i, u_full, v_full): coeff}."""
        out = {}
        flat = self.gen_values[(n, lbar)]
        for (i, j, off) in self.square.blocks(n):
            dim_j = self.L.full_dim(j)
            hi = off + self.L.full_dim(i) * dim_j
            for idx, c in flat.items():
                if off <= idx < hi:
                    u, v = divmod(idx - off, dim_j)
                    out[(i, u, v)] = c
        return out


def smash_diagonal_terms(smash, sigma, p, q, w_idx):
    """Diagonal on X applied to the generator kappa(w) of block (p, q).

    Returns {((i, s), idx1, (j, t), idx2): coeff}: tensor representatives of
    elements of X_{i+s} (x)_R X_{j+t}, obtained as phi(omega (x) sigma^).
    phi((x (x)_A y) (x) (l (x)_G l')) =
        (-1)^{|l| |y|} (x (x) l_0) (x)_R (S^{-1}(l_{-1}) y (x) l').
    """
    f = smash.field
    h = smash.hopf
    K, Lup = smash.K, smash.Lup
    kbar, lbar = divmod(w_idx, Lup.L.base_dim(q))
    omega_terms = K.omega_base_terms(p, kbar)
    sigma_terms = sigma.generator_terms(q, lbar)
    out = {}
    for (i, x_idx, y_idx) in omega_terms:
        j = p - i
        for (s, u_full, v_full), sc in sigma_terms.items():
            t = q - s
            lvec = Lup.embed(s, {u_full: f.one})
            lpvec = Lup.embed(t, {v_full: f.one})
            sign = f.one if (s * j) % 2 == 0 else f.of(-1)
            for lidx, lc in lvec.items():
                co = Lup.coaction(s, lidx)
                dim_ls = Lup.full_dim(s)
                for gi2, cc in co.items():
                    gm, l0 = divmod(gi2, dim_ls)
                    yvec = K.gamma_full(j, h.antipode_inv[gm],
                                        {y_idx: f.one})
                    for y2, yc in yvec.items():
                        for lp, pc in lpvec.items():
                            idx1 = smash.join(i, s, x_idx, l0)
                            idx2 = smash.join(j, t, y2, lp)
                            key = ((i, s), idx1, (j, t), idx2)
                            sv_add_term(f, out, key,
                                        f.mul(f.mul(sc, sign),
                                              f.mul(f.mul(lc, cc),
                                                    f.mul(yc, pc))))
    return out


class MediatingResolution:
    """A resolution Q mediating between two equivariant resolutions of A.

    Q_0 = K_0 (+) P_0 with augmentation the sum of the two augmentations;
    inductively Q_n = K_n (+) (A (x) ker d_{n-1} (x) A) (+) P_n, with the
    middle summand mapping down by a (x) z (x) a' -> a z a' through the
    bimodule structure of Q_{n-1}.  G acts diagonally on the middle summand.
    Both resolutions include into Q as equivariant quasi-isomorphisms, so Q
    transports computations between them.
    """

    def __init__(self, bar_k, bar_p, max_degree):
        if bar_k.action is not bar_p.action and (
                bar_k.alg is not bar_p.alg or bar_k.hopf is not bar_p.hopf):
            raise ValueError("resolutions must live over the same action")
        self.K = bar_k
        self.P = bar_p
        self.alg = bar_k.alg
        self.hopf = bar_k.hopf
        self.action = bar_k.action
        self.field = bar_k.field
        self.max_degree = max_degree
        # per degree: kernel basis (dense vectors in Q_{n-1}), solver for
        # re-expressing kernel elements in that basis, and the differential.
        self._ker = {}
        self._ker_solver = {}
        self._d = {}
        self._build()

    # -- layout -----------------------------------------------------------

    def kdim(self, n):
        return self.K.full_dim(n)

    def middim(self, n):
        if n == 0:
            return 0
        return self.alg.dim * len(self._ker[n]) * self.alg.dim

    def pdim(self, n):
        return self.P.full_dim(n)

    def dim(self, n):
        return self.kdim(n) + self.middim(n) + self.pdim(n)

    def mid_index(self, n, i, m, j):
        a = self.alg.dim
        return self.kdim(n) + (i * len(self._ker[n]) + m) * a + j

    def i_k(self, n):
        """Inclusion K_n -> Q_n."""
        return BasisMap(self.field, self.kdim(n), self.dim(n),
                        lambda i: {i: self.field.one})

    def i_p(self, n):
        """Inclusion P_n -> Q_n."""
        off = self.kdim(n) + self.middim(n)
        return BasisMap(self.field, self.pdim(n), self.dim(n),
                        lambda i: {off + i: self.field.one})

    # -- construction -----------------------------------------------------

    def _build(self):
        f = self.field
        aug = self.augmentation().to_matrix()
        prev = aug
        for n in range(1, self.max_degree + 1):
            basis = [list(v) for v in prev.kernel_basis().basis]
            self._ker[n] = basis
            if basis:
                self._ker_solver[n] = Matrix.from_cols(
                    f, basis, rows=prev.cols).solver()
            dn = self._d_map(n).to_matrix()
            self._d[n] = dn
            prev = dn

    def augmentation(self):
        """Q_0 = K_0 (+) P_0 -> A."""
        f = self.field
        tk = self.K.tau()
        tp = self.P.tau()
        kd = self.kdim(0)

        def fn(i):
            if i < kd:
                return tk.apply({i: f.one})
            return tp.apply({i - kd: f.one})
        return BasisMap(f, self.dim(0), self.alg.dim, fn)

    def d_matrix(self, n):
        """Differential Q_n -> Q_{n-1} (dense); n >= 1."""
        return self._d[n]

    def _d_map(self, n):
        f = self.field
        kd, md = self.kdim(n), self.middim(n)
        dk, dp = self.K.d(n), self.P.d(n)
        poff = self.kdim(n - 1) + self.middim(n - 1)

        def fn(idx):
            if idx < kd:
                return dict(dk.apply({idx: f.one}))
            if idx < kd + md:
                a = self.alg.dim
                ker = self._ker[n]
                rem, j = divmod(idx - kd, a)
                i, m = divmod(rem, len(ker))
                vec = sv_from_dense(f, ker[m])
                vec = self.right_mult(n - 1, j, vec)
                return self.left_mult(n - 1, i, vec)
            return {poff + t: c
                    for t, c in dp.apply({idx - kd - md: f.one}).items()}
        return BasisMap(f, self.dim(n), self.dim(n - 1), fn)

    # -- bimodule and G structure (blockwise) -------------------------------

    def _blockwise(self, n, vec, kfn, midfn, pfn):
        f = self.field
        kd, md = self.kdim(n), self.middim(n)
        out = {}
        kpart, mpart, ppart = {}, {}, {}
        for idx, c in vec.items():
            if idx < kd:
                kpart[idx] = c
            elif idx < kd + md:
                mpart[idx - kd] = c
            else:
                ppart[idx - kd - md] = c
        if kpart:
            sv_add(f, out, kfn(kpart))
        if mpart:
            sv_add(f, out, {kd + i: c for i, c in midfn(mpart).items()})
        if ppart:
            sv_add(f, out, {kd + md + i: c
                            for i, c in pfn(ppart).items()})
        return out

    def _mid_slot_mult(self, n, a_idx, vec, left):
        a, f = self.alg, self.field
        nk = len(self._ker[n])
        out = {}
        for idx, c in vec.items():
            rem, j = divmod(idx, a.dim)
            i, m = divmod(rem, nk)
            if left:
                for v, e in a.basis_product(a_idx, i).items():
                    sv_add_term(f, out, (v * nk + m) * a.dim + j,
                                f.mul(c, e))
            else:
                for v, e in a.basis_product(j, a_idx).items():
                    sv_add_term(f, out, (i * nk + m) * a.dim + v,
                                f.mul(c, e))
        return out

    def left_mult(self, n, a_idx, vec):
        return self._blockwise(
            n, vec,
            lambda v: self.K.left_mult(n, a_idx, v),
            lambda v: self._mid_slot_mult(n, a_idx, v, True),
            lambda v: self.P.left_mult(n, a_idx, v))

    def right_mult(self, n, a_idx, vec):
        return self._blockwise(
            n, vec,
            lambda v: self.K.right_mult(n, a_idx, v),
            lambda v: self._mid_slot_mult(n, a_idx, v, False),
            lambda v: self.P.right_mult(n, a_idx, v))

    def _mid_gamma(self, n, g_sparse, vec):
        h, a, f = self.hopf, self.alg, self.field
        ker = self._ker[n]
        nk = len(ker)
        solver = self._ker_solver[n]
        out = {}
        for g, gc in g_sparse.items():
            parts = h.iterated_coproduct(g, 3)
            for pidx, pc in parts.items():
                g12, g3 = divmod(pidx, h.dim)
                g1, g2 = divmod(g12, h.dim)
                for idx, c in vec.items():
                    rem, j = divmod(idx, a.dim)
                    i, m = divmod(rem, nk)
                    moved = self.gamma(n - 1, {g2: f.one},
                                       sv_from_dense(f, ker[m]))
                    coords = solver.solve(
                        sv_to_dense(f, moved, len(ker[m])))
                    scale = f.mul(f.mul(gc, pc), c)
                    for i2, e1 in self.action.act[g1][i].items():
                        for j2, e3 in self.action.act[g3][j].items():
                            for m2, cc in enumerate(coords):
                                if cc == f.zero:
                                    continue
                                sv_add_term(
                                    f, out, (i2 * nk + m2) * a.dim + j2,
                                    f.mul(scale,
                                          f.mul(f.mul(e1, e3), cc)))
        return out

    def gamma(self, n, g_sparse, vec):
        """Diagonal G-action on Q_n applied to a sparse vector."""
        return self._blockwise(
            n, vec,
            lambda v: self.K.gamma_full(n, g_sparse, v),
            lambda v: self._mid_gamma(n, g_sparse, v),
            lambda v: self.P.gamma_full(n, g_sparse, v))

    # -- homological accessors ---------------------------------------------

    def augmented_homology_dims(self):
        """Homology of A <- Q_0 <- Q_1 <- ...; all zero iff exact."""
        from .complexes import chain_homology_dims
        dims = {0: self.alg.dim}
        diffs = {1: self.augmentation().to_matrix()}
        for n in range(1, self.max_degree + 1):
            dims[n] = self.dim(n - 1)
            diffs[n + 1] = self._d[n]
        dims[self.max_degree + 1] = self.dim(self.max_degree)
        return chain_homology_dims(self.field, dims, diffs,
                                   self.max_degree)

    def base_dim(self, n):
        """Rank of Q_n as a free A-bimodule."""
        kb = self.K.base_dim(n)
        pb = self.P.base_dim(n)
        return kb + (len(self._ker.get(n, ())) if n else 0) + pb

    def base_embed(self, n, b_idx):
        """The b-th free generator of Q_n as a sparse vector."""
        f = self.field
        kb = self.K.base_dim(n)
        nk = len(self._ker.get(n, ())) if n else 0
        if b_idx < kb:
            return dict(self.K.base_embed(n, b_idx))
        if b_idx < kb + nk:
            m = b_idx - kb
            out = {}
            a = self.alg.dim
            for u, c in self.alg.unit.items():
                for v, e in self.alg.unit.items():
                    sv_add_term(f, out,
                                self.kdim(n) + (u * nk + m) * a + v,
                                f.mul(c, e))
            return out
        poff = self.kdim(n) + self.middim(n)
        emb = self.P.base_embed(n, b_idx - kb - nk)
        return {poff + i: c for i, c in emb.items()}

    def evaluate(self, n, vec, vals):
        """Extend values on free generators bimodule-linearly to Q_n.

        ``vals[b]`` is a dense vector in A (the value on generator b);
        returns a dense vector in A.
        """
        a, f = self.alg, self.field
        kb = self.K.base_dim(n)
        nk = len(self._ker.get(n, ())) if n else 0
        kd, md = self.kdim(n), self.middim(n)
        out = [f.zero] * a.dim
        for idx, c in vec.items():
            if idx < kd:
                tup = index_tuple(idx, n + 2, a.dim)
                b = tuple_index(tup[1:-1], a.dim) if n else 0
                mid = sv_from_dense(f, vals[b])
                term = a.multiply({tup[0]: f.one},
                                  a.multiply(mid, {tup[-1]: f.one}))
            elif idx < kd + md:
                rem, j = divmod(idx - kd, a.dim)
                i, m = divmod(rem, nk)
                mid = sv_from_dense(f, vals[kb + m])
                term = a.multiply({i: f.one},
                                  a.multiply(mid, {j: f.one}))
            else:
                tup = index_tuple(idx - kd - md, n + 2, a.dim)
                b = tuple_index(tup[1:-1], a.dim) if n else 0
                mid = sv_from_dense(f, vals[kb + nk + b])
                term = a.multiply({tup[0]: f.one},
                                  a.multiply(mid, {tup[-1]: f.one}))
            for t, e in term.items():
                out[t] = f.add(out[t], f.mul(c, e))
        return out

    def hom_complex(self):
        """The complex computing Ext over the enveloping algebra of A with
        coefficients in A, using Q; coordinates are (generator, A-basis).
        """
        from .complexes import CochainComplex
        f = self.field
        a = self.alg
        dims = {}
        diffs = {}
        for n in range(self.max_degree + 1):
            dims[n] = self.base_dim(n) * a.dim
        for n in range(1, self.max_degree + 1):
            rows = []
            for b2 in range(self.base_dim(n)):
                img = self.d_matrix(n).apply_sparse(
                    self.base_embed(n, b2))
                row = []
                for b in range(self.base_dim(n - 1)):
                    for t in range(a.dim):
                        vals = [[f.zero] * a.dim
                                for _ in range(self.base_dim(n - 1))]
                        vals[b][t] = f.one
                        row.append(self.evaluate(n - 1, img, vals))
                rows.append(row)
            mat = [[f.zero] * (self.base_dim(n - 1) * a.dim)
                   for _ in range(dims[n])]
            for b2 in range(self.base_dim(n)):
                for tcol, dense in enumerate(rows[b2]):
                    for t2, c in enumerate(dense):
                        if c != f.zero:
                            mat[b2 * a.dim + t2][tcol] = c
            diffs[n - 1] = Matrix.from_rows(f, mat)
        return CochainComplex(f, dims, diffs)


def mediating_resolution(bar_k, bar_p, max_degree):
    """Build Q with inclusions from two equivariant resolutions of A."""
    return MediatingResolution(bar_k, bar_p, max_degree)
