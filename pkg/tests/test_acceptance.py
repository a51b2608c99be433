"""Acceptance gate: seven exact, zero-tolerance criteria.

Each test prints a single pass/fail line (visible with ``pytest -s``; under
plain ``pytest -v`` the per-test PASSED/FAILED line carries the verdict).
All comparisons are exact — no tolerances anywhere.
"""

import time

import pytest

from smashcoh.linalg import Field, Matrix, sv_add
from smashcoh.hopf import (
    cyclic_group_algebra, dual_numbers, sign_action_on_dual_numbers,
    smash_product, sweedler_action_on_dual_numbers, sweedler_h4,
    symmetric_group_3_algebra, trivial_action, truncated_polynomial_algebra,
)
from smashcoh.resolutions import (
    BarResolution, InducedComplex, SigmaMap, SmashResolution,
    TrivialResolution,
)
from smashcoh.hochschild import (
    AlgebraExtension, DoubleComplexModel, SmashCochainModel,
    double_complex_dg, hh_oracle, hh_ring, smash_dg, xi_matrix, phi_matrix,
)
from smashcoh.ext import (
    group_cohomology_dims, lhs_specialize, semidirect_product_table,
)
from smashcoh.spectral import (
    column_e2_independent, einfty_vs_gr, pages, row_e1_independent,
)

Q = Field.rationals()
F2 = Field.prime(2)
F3 = Field.prime(3)

Z3 = [[(i + j) % 3 for j in range(3)] for i in range(3)]
Z2 = [[(i + j) % 2 for j in range(2)] for i in range(2)]
INV = [[0, 1, 2], [0, 2, 1]]  # Z/2 acting on Z/3 by inversion


def _report(label, started, ok):
    status = "PASS" if ok else "FAIL"
    print("[%s] %s (%.1fs)" % (label, status, time.monotonic() - started),
          flush=True)


def build(act, maxdeg, use_aw, b=None, phi=None):
    K = BarResolution(act)
    L = TrivialResolution(act.hopf)
    X = SmashResolution(K, InducedComplex(L))
    sigma = SigmaMap(L, maxdeg + 1, use_aw=use_aw)
    ext = AlgebraExtension(act, b=b, phi=phi)
    sm = SmashCochainModel(X, sigma, ext)
    dc = DoubleComplexModel(L, K, ext, sigma)
    return sm, dc, smash_dg(sm, maxdeg), double_complex_dg(dc, maxdeg)


def counit_extension(field, hopf):
    """A = k with the trivial action; B = k through the counit."""
    k = truncated_polynomial_algebra(field, 1)
    act = trivial_action(hopf, k)
    phi = Matrix.from_sparse_cols(
        field, 1,
        [{0: hopf.counit[g]} if hopf.counit[g] != field.zero else {}
         for g in range(hopf.dim)])
    return act, k, phi


@pytest.fixture(scope="module")
def sign_models():
    return build(sign_action_on_dual_numbers(Q), 3, True)


@pytest.fixture(scope="module")
def h4_models():
    return build(sweedler_action_on_dual_numbers(Q), 2, False)


@pytest.fixture(scope="module")
def f2_models():
    act = trivial_action(cyclic_group_algebra(F2, 2), dual_numbers(F2))
    return build(act, 3, True)


@pytest.fixture(scope="module")
def sign_pages(sign_models):
    _, _, _, ddg = sign_models
    return pages(ddg, "column", r_max=5, maxdeg=3)


# ---------------------------------------------------------------------------
# 1. cochain isomorphism


def test_acceptance_1_cochain_isomorphism(sign_models):
    started = time.monotonic()
    ok = False
    try:
        sm, dc, sdg, ddg = sign_models
        # mutually inverse in every degree of the length-4 complexes
        for n in range(4):
            xi = xi_matrix(sm, dc, n)
            phi = phi_matrix(sm, dc, n)
            assert xi * phi == Matrix.identity(Q, ddg.dims[n])
            assert phi * xi == Matrix.identity(Q, sdg.dims[n])
        # chain maps on the nose
        for n in range(3):
            assert xi_matrix(sm, dc, n + 1) * sdg.diffs[n] == \
                ddg.diffs[n] * xi_matrix(sm, dc, n)
        assert time.monotonic() - started < 60.0
        ok = True
    finally:
        _report("AC1 cochain isomorphism, Z/2 on dual numbers", started, ok)


# ---------------------------------------------------------------------------
# 2. multiplicativity


PAIRS = [(0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (2, 0)]


def mult_entrywise(sm, dc, sdg, ddg, pairs, field):
    for m, m2 in pairs:
        xm = xi_matrix(sm, dc, m)
        xm2 = xi_matrix(sm, dc, m2)
        xout = xi_matrix(sm, dc, m + m2)
        for i in range(sdg.dims[m]):
            for j in range(sdg.dims[m2]):
                th, th2 = {i: field.one}, {j: field.one}
                lhs = xout.apply_sparse(sdg.product(m, th, m2, th2))
                rhs = ddg.product(m, xm.apply_sparse(th),
                                  m2, xm2.apply_sparse(th2))
                assert lhs == rhs, (m, m2, i, j)


def test_acceptance_2_multiplicativity(sign_models, h4_models):
    started = time.monotonic()
    ok = False
    try:
        sm, dc, sdg, ddg = sign_models
        mult_entrywise(sm, dc, sdg, ddg, PAIRS, Q)
        sm, dc, sdg, ddg = h4_models
        mult_entrywise(sm, dc, sdg, ddg, PAIRS, Q)
        assert time.monotonic() - started < 300.0
        ok = True
    finally:
        _report("AC2 multiplicativity, Z/2 and Sweedler instances",
                started, ok)


# ---------------------------------------------------------------------------
# 3. oracle equivalence


def test_acceptance_3_oracle_equivalence(sign_models, f2_models):
    started = time.monotonic()
    ok = False
    try:
        # (i) sign action on the rational dual numbers
        _, _, _, ddg = sign_models
        dims_i = hh_ring(ddg, 3, certify_trials=0).dims
        oracle_i = hh_oracle(smash_product(sign_action_on_dual_numbers(Q)),
                             3, certify_trials=0).dims
        assert dims_i == oracle_i == {0: 1, 1: 1, 2: 1, 3: 1}

        # (ii) trivial Z/2 action on the mod-2 dual numbers
        _, _, _, f2ddg = f2_models
        dims_ii = hh_ring(f2ddg, 3, certify_trials=0).dims
        act_ii = trivial_action(cyclic_group_algebra(F2, 2), dual_numbers(F2))
        oracle_ii = hh_oracle(smash_product(act_ii), 3,
                              certify_trials=0).dims
        assert dims_ii == oracle_ii == {0: 4, 1: 8, 2: 12, 3: 16}

        # (iii) A = k, both ground fields
        for field, pinned in ((Q, {0: 2, 1: 0, 2: 0, 3: 0}),
                              (F2, {0: 2, 1: 2, 2: 2, 3: 2})):
            act = trivial_action(cyclic_group_algebra(field, 2),
                                 truncated_polynomial_algebra(field, 1))
            _, _, _, gddg = build(act, 3, True)
            dims = hh_ring(gddg, 3, certify_trials=0).dims
            oracle = hh_oracle(smash_product(act), 3, certify_trials=0).dims
            assert dims == oracle == pinned

        # (iii) over F2 with trivial coefficients the ring is a polynomial
        # ring on one degree-1 generator through degree 3
        act, k, phi = counit_extension(F2, cyclic_group_algebra(F2, 2))
        _, _, _, cddg = build(act, 3, True, b=k, phi=phi)
        ring = hh_ring(cddg, 3, certify_trials=1)
        assert ring.dims == {0: 1, 1: 1, 2: 1, 3: 1}
        assert ring.constants[(1, 1)] == [[[F2.one]]]   # x * x != 0
        assert ring.constants[(1, 2)] == [[[F2.one]]]   # x * x^2 != 0
        oracle = hh_oracle(smash_product(act), 3, b=k, phi=phi,
                           certify_trials=0)
        assert oracle.dims == ring.dims
        assert time.monotonic() - started < 600.0
        ok = True
    finally:
        _report("AC3 oracle equivalence, degrees 0..3", started, ok)


# ---------------------------------------------------------------------------
# 4. semisimple collapse


def test_acceptance_4_semisimple_collapse(sign_models, sign_pages):
    started = time.monotonic()
    ok = False
    try:
        _, _, _, ddg = sign_models
        e2 = sign_pages[1]
        assert all(d == 0 for (p, q), d in e2.dims.items() if p > 0)
        assert sign_pages[-1].dims == e2.dims  # E_2 = E_infinity
        ring = hh_ring(ddg, 3, certify_trials=0)
        for n in range(4):
            assert sum(e2.dims.get((p, n - p), 0)
                       for p in range(n + 1)) == ring.dims[n]
        ok = True
    finally:
        _report("AC4 semisimple collapse at E_2, column filtration",
                started, ok)


# ---------------------------------------------------------------------------
# 5. group-extension specialization


def test_acceptance_5_lhs_specialization():
    started = time.monotonic()
    ok = False
    try:
        res3 = lhs_specialize(Z3, Z2, INV, F3, 4)
        assert res3.abutment == [1, 0, 0, 1, 1]
        res2 = lhs_specialize(Z3, Z2, INV, F2, 3)
        assert res2.abutment == [1, 1, 1, 1]
        s3 = semidirect_product_table(Z3, Z2, INV)
        assert group_cohomology_dims(s3, F3, 4) == [1, 0, 0, 1, 1]
        assert group_cohomology_dims(s3, F2, 3) == [1, 1, 1, 1]
        assert time.monotonic() - started < 1800.0
        ok = True
    finally:
        _report("AC5 S_3 group cohomology via the extension, F_3 and F_2",
                started, ok)


# ---------------------------------------------------------------------------
# 6. structural invariant suite


def _hopf_axioms():
    for hopf in (cyclic_group_algebra(Q, 2), cyclic_group_algebra(F2, 2),
                 symmetric_group_3_algebra(F3), sweedler_h4(Q)):
        assert hopf.check_hopf() == []
    for act in (sign_action_on_dual_numbers(Q),
                sweedler_action_on_dual_numbers(Q)):
        assert act.check() == []


def _coaction_identities():
    # counit law and colinearity of the augmentation of the induced complex
    for act in (sign_action_on_dual_numbers(Q),
                sweedler_action_on_dual_numbers(Q)):
        h = act.hopf
        f = h.field
        Lup = InducedComplex(TrivialResolution(h))
        xi = Lup.xi_up()
        dim = Lup.full_dim(0)
        for idx in range(dim):
            co = Lup.coaction(0, idx)
            # counit law
            back = {}
            for gi, c in co.items():
                g, tgt = divmod(gi, dim)
                e = f.mul(c, h.counit[g])
                if e != f.zero:
                    back[tgt] = f.add(back.get(tgt, f.zero), e)
            assert {k: v for k, v in back.items() if v != 0} == {idx: f.one}
            # colinearity: (id (x) xi) rho = Delta xi
            lhs = {}
            for gi, c in co.items():
                g, tgt = divmod(gi, dim)
                for v, e in xi.column(tgt).items():
                    key = g * h.dim + v
                    lhs[key] = f.add(lhs.get(key, f.zero), f.mul(c, e))
            assert ({k: v for k, v in lhs.items() if v != 0}
                    == h.delta(xi.column(idx)))


def _condition_iii():
    # the splitting diagonal on K is a G-equivariant chain map
    act = sign_action_on_dual_numbers(Q)
    K = BarResolution(act)
    f = K.field
    for n in (1, 2, 3):
        lhs = K.collapsed_d(n).compose(K.omega_collapsed(n))
        assert lhs.equals(K.omega_collapsed(n - 1).compose(K.d(n)))
    for n in (1, 2):
        om = K.omega_collapsed(n)
        for g in range(act.hopf.dim):
            for idx in range(K.full_dim(n)):
                lhs = K.collapsed_gamma(n, {g: f.one}, om.column(idx))
                rhs = om.apply(K.gamma_full(n, {g: f.one}, {idx: f.one}))
                assert lhs == rhs


def _sigma_augmentation():
    # the diagonal on L is compatible with the augmentation
    for hopf in (cyclic_group_algebra(Q, 2), sweedler_h4(Q)):
        L = TrivialResolution(hopf)
        sigma = SigmaMap(L, 1, use_aw=hopf.is_group_basis())
        f = hopf.field
        for g in range(hopf.dim):
            val = sigma.apply(0, {g: f.one})
            s = f.zero
            for (i, j, off) in sigma.square.blocks(0):
                for flat, c in val.items():
                    u, v = divmod(flat - off, L.full_dim(0))
                    s = f.add(s, f.mul(c, f.mul(hopf.counit[u],
                                                hopf.counit[v])))
            assert s == hopf.counit[g]


def _leibniz(dg, field, maxm):
    for m in range(maxm + 1):
        for m2 in range(maxm + 1 - m):
            for i in range(dg.dims[m]):
                for j in range(dg.dims[m2]):
                    th, th2 = {i: field.one}, {j: field.one}
                    lhs = dg.diffs[m + m2].apply_sparse(
                        dg.product(m, th, m2, th2))
                    rhs = dict(dg.product(
                        m + 1, dg.diffs[m].apply_sparse(th), m2, th2))
                    s = field.one if m % 2 == 0 else field.of(-1)
                    sv_add(field, rhs,
                           dg.product(m, th, m2 + 1,
                                      dg.diffs[m2].apply_sparse(th2)),
                           scale=s)
                    assert ({k: v for k, v in lhs.items() if v != 0}
                            == {k: v for k, v in rhs.items() if v != 0})


def _derivation_on_page(page, field, maxn):
    for ((s, t), (s2, t2)), table in page.products.items():
        n, n2 = s + t, s2 + t2
        if n + n2 + 1 > maxn:
            continue
        tgt = (s + s2 + page.r, t + t2 - page.r + 1)
        d_out = page.d.get((s + s2, t + t2))
        dx = page.d.get((s, t))
        dy = page.d.get((s2, t2))
        if d_out is None or tgt[1] < 0 or page.dims.get(tgt, 0) == 0:
            continue
        for i in range(page.dims[(s, t)]):
            for j in range(page.dims[(s2, t2)]):
                lhs = d_out.apply(table[i][j])
                rhs = [field.zero] * page.dims[tgt]
                if dx is not None:
                    prod = page.products.get(((s + page.r, t - page.r + 1),
                                              (s2, t2)))
                    if prod is not None:
                        x = dx.apply([field.one if a == i else field.zero
                                      for a in range(page.dims[(s, t)])])
                        for a, c in enumerate(x):
                            for b, v in enumerate(prod[a][j] if c != 0
                                                  else ()):
                                rhs[b] = field.add(rhs[b], field.mul(c, v))
                if dy is not None:
                    prod = page.products.get(((s, t),
                                              (s2 + page.r,
                                               t2 - page.r + 1)))
                    if prod is not None:
                        y = dy.apply([field.one if a == j else field.zero
                                      for a in range(page.dims[(s2, t2)])])
                        sg = field.one if n % 2 == 0 else field.of(-1)
                        for a, c in enumerate(y):
                            if c == 0:
                                continue
                            for b, v in enumerate(prod[i][a]):
                                rhs[b] = field.add(
                                    rhs[b], field.mul(field.mul(sg, c), v))
                assert list(lhs) == rhs, (page.r, s, t, s2, t2, i, j)


def test_acceptance_6_invariant_suite(sign_models, f2_models, sign_pages):
    started = time.monotonic()
    ok = False
    try:
        _hopf_axioms()
        _coaction_identities()
        _condition_iii()
        _sigma_augmentation()
        # Leibniz on both cochain algebras of the rational sign instance
        _, dc, sdg, ddg = sign_models
        _leibniz(sdg, Q, 2)
        _leibniz(ddg, Q, 2)
        # derivation law on the first two pages of the column filtration
        for page in sign_pages[:2]:
            _derivation_on_page(page, Q, 3)
        # dimension bookkeeping: sum of E_infinity dims = abutment dims
        L = TrivialResolution(sign_action_on_dual_numbers(Q).hopf)
        ring = hh_ring(ddg, 3, certify_trials=0)
        rep = einfty_vs_gr(sign_pages, ring, "column")
        assert rep.ok
        # independent recomputations of E_2 (column) and E_1 (row)
        e2 = column_e2_independent(L, dc.hom, 3)
        assert all(sign_pages[1].dims[k] == v for k, v in e2.items())
        rpg = pages(ddg, "row", r_max=1, maxdeg=3)
        e1 = row_e1_independent(L, dc.hom, 3)
        assert all(rpg[0].dims[k] == v for k, v in e1.items())
        # the F2 instance: E_infinity vs gr bookkeeping
        _, _, _, f2ddg = f2_models
        f2pg = pages(f2ddg, "column", r_max=5, maxdeg=3)
        f2ring = hh_ring(f2ddg, 3, certify_trials=0)
        assert einfty_vs_gr(f2pg, f2ring, "column").ok
        assert time.monotonic() - started < 900.0
        ok = True
    finally:
        _report("AC6 structural invariant suite on the fixture corpus",
                started, ok)


# ---------------------------------------------------------------------------
# 7. lifting solver soundness


def test_acceptance_7_solver_vs_closed_form():
    started = time.monotonic()
    ok = False
    try:
        act, k, phi = counit_extension(F2, cyclic_group_algebra(F2, 2))
        rings = []
        for use_aw in (True, False):
            _, _, _, ddg = build(act, 3, use_aw, b=k, phi=phi)
            rings.append(hh_ring(ddg, 3, certify_trials=0))
        aw, solved = rings
        assert aw.dims == solved.dims == {0: 1, 1: 1, 2: 1, 3: 1}
        assert aw.constants == solved.constants
        ok = True
    finally:
        _report("AC7 solver diagonal vs closed-form diagonal, F_2 Z/2",
                started, ok)
