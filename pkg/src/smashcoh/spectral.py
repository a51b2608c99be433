"""Multiplicative spectral sequences of the filtered dg algebras.

The total complexes built in :mod:`smashcoh.hochschild` and
:mod:`smashcoh.ext` carry two decreasing filtrations, by the Gamma-degree
(column) and by the A-degree (row).  Pages are computed by explicit
subquotient linear algebra on the truncated total complex:

    Z_r(s, n) = { x in F_s Tot^n : D x in F_{s+r} }
    E_r(s, t) = Z_r(s, s+t) / ( Z_{r-1}(s+1, s+t) + D Z_{r-1}(s-r+1, s+t-1) )

with d_r induced by D (bidegree (r, 1-r) in (filtration, complement)
coordinates) and the page product induced by the product of the dg
algebra on representatives.
"""

import random

from .linalg import Matrix, QuotientData, Subspace
from .hochschild import CertificationError


class NotStabilized(Exception):
    """r_max is too small to certify stabilization in the trusted range."""


class SpectralPage:
    """One page of a first-quadrant multiplicative spectral sequence.

    ``dims[(s, t)]`` are the bigraded dimensions for s + t <= maxdeg,
    ``representatives[(s, t)]`` dense vectors in the total complex,
    ``d[(s, t)]`` the matrix of d_r : E_r^{s,t} -> E_r^{s+r, t-r+1}
    in page coordinates (present when the target lies in range), and
    ``products[((s, t), (s2, t2))]`` the table of page-coordinate
    products of representatives.  ``stable_from[(s, t)]`` is the page
    from which the slot is final (r > max(s, t+1)).
    """

    def __init__(self, r, maxdeg, dims, representatives, quotients,
                 d, dg):
        self.r = r
        self.maxdeg = maxdeg
        self.dims = dims
        self.representatives = representatives
        self.quotients = quotients
        self.d = d
        self._dg = dg
        self._products = None
        self.stable_from = {st: max(st[0], st[1] + 1) + 1 for st in dims}

    @property
    def products(self):
        """Page-coordinate product tables, computed on first access."""
        if self._products is None:
            self._products = _page_products(
                self._dg, self.quotients, self.representatives,
                self.maxdeg, self._dg.field)
        return self._products

    def certify_products(self, trials, seed=20240901):
        """Recompute the product tables with representatives perturbed
        inside the denominator subspaces; raise CertificationError on a
        mismatch."""
        f = self._dg.field
        rng = random.Random(seed)
        base = self.products
        for _ in range(trials):
            pre = {}
            for (s, t), rl in self.representatives.items():
                qd = self.quotients[(s, t)]
                newreps = []
                for v in rl:
                    w = list(v)
                    for bvec in qd.sub.basis:
                        c = f.of(rng.randint(-2, 2))
                        w = [f.add(a, f.mul(c, bb))
                             for a, bb in zip(w, bvec)]
                    newreps.append(w)
                pre[(s, t)] = newreps
            check = _page_products(self._dg, self.quotients, pre,
                                   self.maxdeg, f)
            if check != base:
                raise CertificationError(
                    "page products depend on representatives")

    def is_stable(self, s, t):
        return self.r >= self.stable_from[(s, t)]


def _levels(dg, n, which):
    """Filtration level of each coordinate of Tot^n."""
    levels = [0] * dg.dims[n]
    for (p, q, off, d) in dg.bigrade(n):
        lv = p if which == "column" else q
        for i in range(d):
            levels[off + i] = lv
    return levels


class _Filtration:
    """Z_r subspace bookkeeping for one filtered total complex."""

    def __init__(self, dg, which):
        self.dg = dg
        self.field = dg.field
        self.which = which
        self.levels = {n: _levels(dg, n, which)
                       for n in range(dg.maxdeg + 2) if n in dg.dims}
        self._z = {}

    def z_space(self, s, n, r):
        """Z_r(s, n) as a Subspace of Tot^n.

        For s < 0 the filtration condition F_s is vacuous but the target
        condition D x in F_{s+r} is not, so clamping s to 0 must keep
        s + r fixed.
        """
        f = self.field
        dim = self.dg.dims[n]
        target = s + r
        if s < 0:
            s = 0
        key = (s, n, target)
        if key in self._z:
            return self._z[key]
        keep = [i for i in range(dim) if self.levels[n][i] >= s]
        if not keep:
            out = Subspace(f, dim, [])
            self._z[key] = out
            return out
        d = self.dg.diffs[n]
        tgt_levels = self.levels[n + 1]
        rows = [i for i in range(self.dg.dims[n + 1])
                if tgt_levels[i] < target]
        if rows:
            sub = Matrix.from_rows(
                f, [[d.entry(i, j) for j in keep] for i in rows])
            ker = sub.kernel_basis()
            vecs = []
            for v in ker.basis:
                w = [f.zero] * dim
                for jj, j in enumerate(keep):
                    w[j] = v[jj]
                vecs.append(w)
        else:
            vecs = []
            for j in keep:
                w = [f.zero] * dim
                w[j] = f.one
                vecs.append(w)
        out = Subspace(f, dim, vecs)
        self._z[key] = out
        return out

    def boundary_space(self, s, n, r):
        """D Z_{r-1}(s - r + 1, n - 1) as a Subspace of Tot^n."""
        f = self.field
        dim = self.dg.dims[n]
        if n == 0 or self.dg.dims.get(n - 1, 0) == 0:
            return Subspace(f, dim, [])
        src = self.z_space(s - r + 1, n - 1, r - 1)
        if src.dim == 0:
            return Subspace(f, dim, [])
        d = self.dg.diffs[n - 1]
        imgs = [d.apply(v) for v in src.basis]
        return Matrix.from_cols(f, imgs, rows=dim).column_space()


def pages(dg, which="column", r_max=2, maxdeg=None, certify_trials=0,
          seed=20240901):
    """The pages E_1 .. E_{r_max} of the chosen filtration.

    ``dg`` must carry a ``bigrade`` and differentials through ``maxdeg``
    (default: its own trusted degree).  Products on each page are formed
    on representatives and projected; with ``certify_trials`` > 0 they
    are recomputed with representatives perturbed inside the denominator
    subspace, and a mismatch raises CertificationError.
    """
    if maxdeg is None:
        maxdeg = dg.maxdeg
    f = dg.field
    filt = _Filtration(dg, which)
    out = []
    for r in range(1, r_max + 1):
        dims, reps, quots = {}, {}, {}
        for n in range(maxdeg + 1):
            for s in range(n + 1):
                t = n - s
                z = filt.z_space(s, n, r)
                b = filt.z_space(s + 1, n, r - 1).sum(
                    filt.boundary_space(s, n, r))
                qd = QuotientData(f, z, b)
                dims[(s, t)] = qd.dim
                reps[(s, t)] = qd.representatives
                quots[(s, t)] = qd
        d = {}
        for (s, t), rl in reps.items():
            s2, t2 = s + r, t - r + 1
            if t2 < 0 or s + t + 1 > maxdeg or not rl:
                continue
            tgt = quots.get((s2, t2))
            if tgt is None:
                continue
            n = s + t
            cols = []
            for v in rl:
                img = dg.diffs[n].apply(v)
                cols.append({i: c for i, c in
                             enumerate(tgt.project(img)) if c != f.zero})
            d[(s, t)] = Matrix.from_sparse_cols(f, tgt.dim, cols)
        page = SpectralPage(r, maxdeg, dims, reps, quots, d, dg)
        if certify_trials:
            page.certify_products(certify_trials, seed=seed)
        out.append(page)
    return out


def _page_products(dg, quots, reps, maxdeg, f):
    products = {}
    for (s, t), rl in reps.items():
        if not rl:
            continue
        for (s2, t2), rl2 in reps.items():
            if not rl2 or s + t + s2 + t2 > maxdeg:
                continue
            tgt = quots[(s + s2, t + t2)]
            n, n2 = s + t, s2 + t2
            table = []
            for u in rl:
                row = []
                uv = {i: c for i, c in enumerate(u) if c != f.zero}
                for v in rl2:
                    vv = {i: c for i, c in enumerate(v) if c != f.zero}
                    prod = dg.product(n, uv, n2, vv)
                    dense = [f.zero] * dg.dims[n + n2]
                    for i, c in prod.items():
                        dense[i] = c
                    row.append(tgt.project(dense))
                table.append(row)
            products[((s, t), (s2, t2))] = table
    return products


class GrComparison:
    """E_infty vs the associated graded of the abutment."""

    def __init__(self, einfty_dims, gr_dims, total_dims, abutment_dims,
                 mismatches):
        self.einfty_dims = einfty_dims
        self.gr_dims = gr_dims
        self.total_dims = total_dims
        self.abutment_dims = abutment_dims
        self.mismatches = mismatches
        self.ok = not mismatches


def einfty_vs_gr(page_list, ring, which="column", strict=True):
    """Compare the last computed page against gr of the abutment.

    Raises NotStabilized unless every slot in range is final on the last
    page.  With ``strict`` a dimension mismatch raises ValueError;
    otherwise it is recorded in the report.
    """
    last = page_list[-1]
    maxdeg = last.maxdeg
    for (s, t) in last.dims:
        if not last.is_stable(s, t):
            raise NotStabilized(
                "slot (%d, %d) stabilizes at page %d > %d"
                % (s, t, last.stable_from[(s, t)], last.r))
    gr = ring.gr_gamma if which == "column" else ring.gr_a
    mismatches = []
    einfty = {}
    totals = {}
    for n in range(maxdeg + 1):
        tot = 0
        for s in range(n + 1):
            d = last.dims[(s, n - s)]
            einfty[(s, n - s)] = d
            tot += d
            g = gr.get((s, n), 0)
            if d != g:
                mismatches.append(("dim", s, n - s, d, g))
        totals[n] = tot
        if tot != ring.dims.get(n, 0):
            mismatches.append(("total", n, tot, ring.dims.get(n, 0)))
    if mismatches and strict:
        raise ValueError("E_infty does not match gr: %r" % (mismatches,))
    return GrComparison(einfty, {k: v for k, v in gr.items()},
                        totals, dict(ring.dims), mismatches)


# ---------------------------------------------------------------------------
# independent page checks (coefficients-first)


def gamma_ext_dims(trivial, module_dim, act_mats, maxdeg):
    """dim Ext_Gamma^p(k, M) for a right Gamma-module M given by
    ``act_mats[g]`` (the matrix of m -> m . g), computed from the
    resolution L: C^p = Hom_Gamma(L_p, M) = Hom_k(Lbar_p, M)."""
    from .complexes import CochainComplex
    f = trivial.field
    gdim = trivial.hopf.dim

    def d_matrix(p):
        cols = [{} for _ in range(trivial.base_dim(p) * module_dim)]
        dl = trivial.d(p + 1)
        for tbar in range(trivial.base_dim(p + 1)):
            dvec = dl.apply(trivial.base_embed(p + 1, tbar))
            for idx, c in dvec.items():
                mbar, g = divmod(idx, gdim)
                mat = act_mats[g]
                for j in range(module_dim):
                    col = cols[mbar * module_dim + j]
                    for i in range(module_dim):
                        e = mat.entry(i, j)
                        if e != f.zero:
                            tgt = tbar * module_dim + i
                            col[tgt] = f.add(col.get(tgt, f.zero),
                                             f.mul(c, e))
        return Matrix.from_sparse_cols(
            f, trivial.base_dim(p + 1) * module_dim, cols)

    dims = {p: trivial.base_dim(p) * module_dim for p in range(maxdeg + 2)}
    diffs = {p: d_matrix(p) for p in range(maxdeg + 1)}
    cx = CochainComplex(f, dims, diffs)
    return [cx.cohomology(p).dim for p in range(maxdeg + 1)]


def column_e2_independent(trivial, inner, maxdeg):
    """E_2 column dims computed coefficients-first: the cohomology of the
    inner complex (e.g. HH(A, B)) with its right Gamma-action, then
    Ext_Gamma(k, -).  Returns {(p, q): dim} for p + q <= maxdeg."""
    from .complexes import CochainComplex
    f = trivial.field
    dims = {q: inner.dim(q) for q in range(maxdeg + 2)}
    diffs = {q: inner.d_matrix(q) for q in range(maxdeg + 1)}
    cx = CochainComplex(f, dims, diffs)
    out = {}
    for q in range(maxdeg + 1):
        coh = cx.cohomology(q)
        if coh.dim == 0:
            for p in range(maxdeg + 1 - q):
                out[(p, q)] = 0
            continue
        mats = []
        for g in range(trivial.hopf.dim):
            gm = inner.gamma_matrix(q, g)
            cols = []
            for j in range(coh.dim):
                rep = coh.lift([f.one if i == j else f.zero
                                for i in range(coh.dim)])
                moved = gm.apply(rep)
                cols.append({i: c for i, c in enumerate(coh.project(moved))
                             if c != f.zero})
            mats.append(Matrix.from_sparse_cols(f, coh.dim, cols))
        ext_dims = gamma_ext_dims(trivial, coh.dim, mats, maxdeg - q)
        for p in range(maxdeg + 1 - q):
            out[(p, q)] = ext_dims[p]
    return out


def row_e1_independent(trivial, inner, maxdeg):
    """Row-filtration E_1 dims: Ext_Gamma^p(k, Hom_{A^e}(K_q, B)) with
    the coefficient module taken degreewise (no inner differential).
    Returns {(q, p): dim} keyed by (filtration level, complement)."""
    out = {}
    for q in range(maxdeg + 1):
        mats = [inner.gamma_matrix(q, g)
                for g in range(trivial.hopf.dim)]
        dims = gamma_ext_dims(trivial, inner.dim(q), mats, maxdeg - q)
        for p in range(maxdeg + 1 - q):
            out[(q, p)] = dims[p]
    return out
