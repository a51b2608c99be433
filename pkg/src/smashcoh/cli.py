"""Command-line front end.

A job file describes a Hopf algebra acting on an algebra (plus optional
module / extension data) in a plain-text key = value format, and names a
task.  The tool validates the input, runs the requested computation, and
emits a deterministic report: delimited text or a structured JSON tree with
all scalars serialized exactly (never as floats).  The spectral-sequence
task additionally renders one page diagram per computed page as a PNG file
next to the report.

Job file format
---------------
Top-level keys::

    task   = validate | hh | ext | ss | oracle-compare | lhs
    field  = q | p=<prime>
    maxdeg = <int>          (default 3)
    r_max  = <int>          (default maxdeg + 2; ss task only)
    format = text | structured   (default text)

Sections are introduced by ``[name]``; repeated keys accumulate.  Scalars
are exact: ``3``, ``-2/7`` over q, ``2`` (optionally ``2 mod 5``) over a
prime field.  A sparse row ``i j : c0 c1 ...`` gives the product of basis
elements i and j in coordinates.

``[gamma]`` with ``kind = group`` takes ``table = <row of indices>`` lines
(the group multiplication table); with ``kind = hopf`` it takes ``dim``,
``unit``, ``mult`` rows, ``cop = i : j k c`` triples, a ``counit`` row and
``antipode = i : coords`` rows.  ``[algebra]`` takes ``dim``, ``unit`` and
``mult`` rows.  ``[action]`` takes ``act = g a : coords`` rows or
``trivial = true``.  ``[module]`` (ext task) takes ``kind = trivial`` and an
``aug`` row.  ``[extension]`` takes ``kind = smash | counit``.  The lhs task
instead uses ``[n_group]`` / ``[g_group]`` tables and ``[semidirect]`` rows
``act = g : permutation of N``.
"""

import argparse
import json
import os
import sys

from . import __version__
from .linalg import Field
from .hopf import (
    FinDimAlgebra, HopfAlgebra, ModuleAlgebraAction, group_algebra,
    trivial_action,
)
from .resolutions import BarResolution, SigmaMap, TrivialResolution
from .hochschild import (
    AlgebraExtension, DoubleComplexModel, double_complex_dg, hh_oracle,
    hh_ring,
)
from .ext import ExtComputation, lhs_specialize, trivial_module
from .spectral import NotStabilized, einfty_vs_gr, pages


class ParseError(Exception):
    """Malformed job file; message carries the line number."""


class ValidationError(Exception):
    """Well-formed input describing an invalid structure."""


# ---------------------------------------------------------------------------
# job file parsing


class JobSpec:
    def __init__(self):
        self.task = None
        self.field = None
        self.maxdeg = 3
        self.r_max = None
        self.fmt = "text"
        self.gamma = None
        self.algebra = None
        self.action = None
        self.module_aug = None
        self.extension = "smash"
        self.lhs = None  # (n_table, g_table, act)


def _read_sections(path):
    """Return {section: [(key, value, lineno), ...]}; '' = top level."""
    sections = {"": []}
    current = ""
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as e:
        raise ParseError(str(e))
    for no, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            sections.setdefault(current, [])
            continue
        if "=" not in line:
            raise ParseError("line %d: expected 'key = value'" % no)
        key, value = line.split("=", 1)
        sections[current].append((key.strip(), value.strip(), no))
    return sections


def _single(entries, key, default=None, required=False):
    hits = [(v, no) for k, v, no in entries if k == key]
    if not hits:
        if required:
            raise ParseError("missing required key '%s'" % key)
        return default, None
    if len(hits) > 1:
        raise ParseError("line %d: key '%s' given more than once"
                         % (hits[1][1], key))
    return hits[0]


def _many(entries, key):
    return [(v, no) for k, v, no in entries if k == key]


def _parse_field(text, lineno=None):
    loc = "" if lineno is None else "line %d: " % lineno
    if text == "q":
        return Field.rationals()
    if text.startswith("p="):
        try:
            p = int(text[2:])
        except ValueError:
            raise ParseError(loc + "bad prime in field '%s'" % text)
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ParseError(loc + "%d is not prime" % p)
        return Field.prime(p)
    raise ParseError(loc + "field must be 'q' or 'p=<prime>'")


def _coords(field, text, dim, lineno):
    parts = text.split()
    if len(parts) != dim:
        raise ParseError("line %d: expected %d coordinates, got %d"
                         % (lineno, dim, len(parts)))
    out = {}
    for i, p in enumerate(parts):
        try:
            c = field.parse(p)
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError("line %d: bad scalar '%s' (%s)"
                             % (lineno, p, e))
        if c != field.zero:
            out[i] = c
    return out


def _sparse_rows(field, entries, key, nleft, dim, lineno_hint):
    """Parse repeated ``key = i j : coords`` rows into a full table."""
    table = [[None] * nleft[1] for _ in range(nleft[0])]
    for value, no in _many(entries, key):
        if ":" not in value:
            raise ParseError("line %d: expected 'i j : coordinates'" % no)
        head, tail = value.split(":", 1)
        idx = head.split()
        if len(idx) != 2:
            raise ParseError("line %d: expected two indices before ':'" % no)
        try:
            i, j = int(idx[0]), int(idx[1])
        except ValueError:
            raise ParseError("line %d: indices must be integers" % no)
        if not (0 <= i < nleft[0] and 0 <= j < nleft[1]):
            raise ParseError("line %d: index (%d,%d) out of range" % (no, i, j))
        if table[i][j] is not None:
            raise ParseError("line %d: duplicate row (%d,%d)" % (no, i, j))
        table[i][j] = _coords(field, tail.strip(), dim, no)
    for i in range(nleft[0]):
        for j in range(nleft[1]):
            if table[i][j] is None:
                raise ParseError("missing '%s = %d %d : ...' row near line %d"
                                 % (key, i, j, lineno_hint))
    return table


def _group_table(entries, section):
    rows = _many(entries, "table")
    if not rows:
        raise ParseError("section [%s] needs 'table = ...' rows" % section)
    n = len(rows)
    table = []
    for value, no in rows:
        parts = value.split()
        if len(parts) != n:
            raise ParseError("line %d: table row needs %d entries" % (no, n))
        try:
            row = [int(p) for p in parts]
        except ValueError:
            raise ParseError("line %d: table entries must be integers" % no)
        if any(not 0 <= e < n for e in row):
            raise ParseError("line %d: table entry out of range" % no)
        table.append(row)
    return table


def _check_group(table):
    n = len(table)
    # identity must be index 0 and every element invertible; associativity
    if any(table[0][j] != j or table[j][0] != j for j in range(n)):
        raise ValidationError("group table: index 0 is not an identity")
    for i in range(n):
        if 0 not in table[i]:
            raise ValidationError("group table: element %d has no inverse" % i)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[table[i][j]][k] != table[i][table[j][k]]:
                    raise ValidationError(
                        "group table not associative at (%d,%d,%d)"
                        % (i, j, k))


def _parse_gamma(field, entries):
    kind, kno = _single(entries, "kind", default="group")
    if kind == "group":
        table = _group_table(entries, "gamma")
        _check_group(table)
        names, _ = _single(entries, "names")
        return group_algebra(field, table,
                             names=names.split() if names else None)
    if kind != "hopf":
        raise ParseError("gamma kind must be 'group' or 'hopf'")
    dim_s, no = _single(entries, "dim", required=True)
    dim = int(dim_s)
    unit_s, uno = _single(entries, "unit", required=True)
    unit = _coords(field, unit_s, dim, uno)
    mult = _sparse_rows(field, entries, "mult", (dim, dim), dim, no)
    cop = [{} for _ in range(dim)]
    for value, vno in _many(entries, "cop"):
        head, tail = (value.split(":", 1) + [""])[:2]
        try:
            i = int(head.strip())
            j_s, k_s, c_s = tail.split()
            j, k = int(j_s), int(k_s)
        except ValueError:
            raise ParseError("line %d: expected 'cop = i : j k c'" % vno)
        c = field.parse(c_s)
        cop[i][j * dim + k] = field.add(cop[i].get(j * dim + k, field.zero), c)
    counit_s, cno = _single(entries, "counit", required=True)
    counit_parts = counit_s.split()
    if len(counit_parts) != dim:
        raise ParseError("line %d: counit needs %d entries" % (cno, dim))
    counit = [field.parse(p) for p in counit_parts]
    antipode = [None] * dim
    for value, vno in _many(entries, "antipode"):
        head, tail = (value.split(":", 1) + [""])[:2]
        try:
            i = int(head.strip())
        except ValueError:
            raise ParseError("line %d: expected 'antipode = i : coords'" % vno)
        antipode[i] = _coords(field, tail.strip(), dim, vno)
    if any(a is None for a in antipode):
        raise ParseError("antipode rows missing in [gamma]")
    names, _ = _single(entries, "names")
    hopf = HopfAlgebra(field, dim, mult, unit, cop, counit, antipode,
                       names=names.split() if names else None)
    bad = hopf.check_hopf()
    if bad:
        raise ValidationError("; ".join(bad))
    return hopf


def _assoc_violation(alg):
    """First failing associativity triple of a FinDimAlgebra, or None."""
    for i in range(alg.dim):
        for j in range(alg.dim):
            ij = alg.table[i][j]
            for k in range(alg.dim):
                left = alg.multiply(ij, alg.basis_vec(k))
                right = alg.multiply(alg.basis_vec(i), alg.table[j][k])
                if left != right:
                    return (i, j, k)
    return None


def _parse_algebra(field, entries):
    dim_s, no = _single(entries, "dim", required=True)
    dim = int(dim_s)
    unit_s, uno = _single(entries, "unit", required=True)
    unit = _coords(field, unit_s, dim, uno)
    mult = _sparse_rows(field, entries, "mult", (dim, dim), dim, no)
    names, _ = _single(entries, "names")
    alg = FinDimAlgebra(field, dim, mult, unit,
                        names=names.split() if names else None)
    bad = _assoc_violation(alg)
    if bad is not None:
        raise ValidationError(
            "multiplication not associative at triple %r" % (bad,))
    if not alg.check_unital():
        raise ValidationError("declared unit is not a unit")
    return alg


def _parse_action(field, entries, gamma, alg):
    triv, _ = _single(entries, "trivial")
    if triv is not None and triv.lower() in ("true", "yes", "1"):
        return trivial_action(gamma, alg)
    table = _sparse_rows(field, entries, "act", (gamma.dim, alg.dim),
                         alg.dim, 0)
    action = ModuleAlgebraAction(gamma, alg, table)
    bad = action.check()
    if bad:
        raise ValidationError("; ".join(bad))
    return action


def _parse_permutations(entries, key, gdim, ndim):
    act = [None] * gdim
    for value, no in _many(entries, key):
        head, tail = (value.split(":", 1) + [""])[:2]
        try:
            g = int(head.strip())
            perm = [int(p) for p in tail.split()]
        except ValueError:
            raise ParseError("line %d: expected '%s = g : permutation'"
                             % (no, key))
        if not 0 <= g < gdim or len(perm) != ndim:
            raise ParseError("line %d: bad permutation row" % no)
        act[g] = perm
    if any(a is None for a in act):
        raise ParseError("[semidirect] is missing an 'act' row")
    return act


def parse_job(path, overrides=None):
    """Parse and validate a job file; ``overrides`` come from flags."""
    overrides = overrides or {}
    sections = _read_sections(path)
    top = sections.get("", [])
    job = JobSpec()

    task, _ = _single(top, "task", required="task" not in overrides)
    job.task = overrides.get("task", task)
    if job.task not in ("validate", "hh", "ext", "ss", "oracle-compare",
                        "lhs"):
        raise ParseError("unknown task '%s'" % job.task)

    field_s, fno = _single(top, "field", required="field" not in overrides)
    job.field = _parse_field(overrides.get("field", field_s), fno)

    maxdeg_s, mno = _single(top, "maxdeg", default="3")
    job.maxdeg = int(overrides.get("maxdeg", maxdeg_s))
    if job.maxdeg < 0:
        raise ParseError("maxdeg must be >= 0")
    r_max_s, _ = _single(top, "r_max", default=None)
    r_max = overrides.get("pages", r_max_s)
    job.r_max = int(r_max) if r_max is not None else job.maxdeg + 2
    fmt, _ = _single(top, "format", default="text")
    job.fmt = overrides.get("format", fmt)
    if job.fmt not in ("text", "structured"):
        raise ParseError("format must be 'text' or 'structured'")

    if job.task == "lhs":
        n_table = _group_table(sections.get("n_group", []), "n_group")
        g_table = _group_table(sections.get("g_group", []), "g_group")
        _check_group(n_table)
        _check_group(g_table)
        act = _parse_permutations(sections.get("semidirect", []), "act",
                                  len(g_table), len(n_table))
        job.lhs = (n_table, g_table, act)
        return job

    job.gamma = _parse_gamma(job.field, sections.get("gamma", []))
    job.algebra = _parse_algebra(job.field, sections.get("algebra", []))
    job.action = _parse_action(job.field, sections.get("action", []),
                               job.gamma, job.algebra)

    mod = sections.get("module")
    if mod:
        kind, _ = _single(mod, "kind", default="trivial")
        if kind != "trivial":
            raise ParseError("module kind must be 'trivial'")
        aug_s, ano = _single(mod, "aug", required=True)
        aug = _coords(job.field, aug_s, job.algebra.dim, ano)
        job.module_aug = [aug.get(i, job.field.zero)
                          for i in range(job.algebra.dim)]

    ext = sections.get("extension")
    if ext:
        kind, _ = _single(ext, "kind", default="smash")
        if kind not in ("smash", "counit"):
            raise ParseError("extension kind must be 'smash' or 'counit'")
        job.extension = kind
    return job


# ---------------------------------------------------------------------------
# pipeline helpers


def _counit_extension(action):
    """B = k with phi the counit composed with the algebra augmentation;
    only available when A = k."""
    if action.algebra.dim != 1:
        raise ValidationError("extension kind 'counit' needs dim A = 1")
    f = action.hopf.field
    b = FinDimAlgebra(f, 1, [[{0: f.one}]], {0: f.one})
    phi = []
    for a in range(1):
        for g in range(action.hopf.dim):
            c = action.hopf.counit[g]
            phi.append({0: c} if c != f.zero else {})
    return AlgebraExtension(action, b=b, phi=phi)


def _extension(job):
    if job.extension == "counit":
        return _counit_extension(job.action)
    return AlgebraExtension(job.action)


def _hh_pipeline(job):
    trivial = TrivialResolution(job.gamma)
    bar = BarResolution(job.action)
    use_aw = job.gamma.is_group_basis()
    sigma = SigmaMap(trivial, job.maxdeg + 1, use_aw=use_aw)
    ext = _extension(job)
    dcm = DoubleComplexModel(trivial, bar, ext, sigma)
    return dcm, double_complex_dg(dcm, job.maxdeg)


def _ext_pipeline(job):
    trivial = TrivialResolution(job.gamma)
    bar = BarResolution(job.action)
    use_aw = job.gamma.is_group_basis()
    sigma = SigmaMap(trivial, job.maxdeg + 1, use_aw=use_aw)
    module = trivial_module(job.action, job.module_aug)
    return ExtComputation(trivial, bar, module, sigma, job.maxdeg)


# ---------------------------------------------------------------------------
# report rendering


def _fmt_vec(field, vec):
    return " ".join(field.format(c) for c in vec)


def _ring_report(field, ring, lines, tree):
    lines.append("[dims]")
    tree["dims"] = {}
    for n in sorted(ring.dims):
        lines.append("%d\t%d" % (n, ring.dims[n]))
        tree["dims"][str(n)] = ring.dims[n]
    lines.append("[representatives]")
    tree["representatives"] = {}
    for n in sorted(ring.representatives):
        tree["representatives"][str(n)] = [
            [field.format(c) for c in v] for v in ring.representatives[n]]
        for i, v in enumerate(ring.representatives[n]):
            lines.append("%d\t%d\t%s" % (n, i, _fmt_vec(field, v)))
    lines.append("[products]")
    tree["products"] = {}
    for (m, n) in sorted(ring.constants):
        table = ring.constants[(m, n)]
        tree["products"]["%d,%d" % (m, n)] = [
            [[field.format(c) for c in cell] for cell in row]
            for row in table]
        for i, row in enumerate(table):
            for j, cell in enumerate(row):
                lines.append("%d\t%d\t%d\t%d\t%s"
                             % (m, n, i, j, _fmt_vec(field, cell)))
    for label, gr in (("gr-gamma", ring.gr_gamma), ("gr-a", ring.gr_a)):
        if gr is None:
            continue
        lines.append("[%s]" % label)
        tree[label] = {}
        for (p, n) in sorted(gr):
            lines.append("%d\t%d\t%d" % (p, n, gr[(p, n)]))
            tree[label]["%d,%d" % (p, n)] = gr[(p, n)]


def _render_page_figure(page, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    fig, ax = plt.subplots(figsize=(5, 4))
    smax = max((s for (s, t) in page.dims), default=0)
    tmax = max((t for (s, t) in page.dims), default=0)
    for (s, t), d in sorted(page.dims.items()):
        if d:
            ax.text(s, t, str(d), ha="center", va="center", fontsize=12)
            ax.plot([s], [t], "o", mfc="none", mec="#777777", ms=22)
    for (s, t), m in sorted(page.d.items()):
        if page.dims.get((s, t)) and not m.is_zero():
            ax.annotate("", xy=(s + page.r - 0.18, t - page.r + 1 + 0.12),
                        xytext=(s + 0.18, t - 0.12),
                        arrowprops=dict(arrowstyle="->", color="#cc3333"))
    ax.set_xlim(-0.7, smax + 0.7)
    ax.set_ylim(-0.7, tmax + 0.7)
    ax.set_xticks(range(smax + 1))
    ax.set_yticks(range(tmax + 1))
    ax.set_xlabel("filtration degree s")
    ax.set_ylabel("complementary degree t")
    ax.set_title("page E_%d" % page.r)
    ax.grid(True, alpha=0.25)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _pages_report(field, page_list, lines, tree, outdir, prefix):
    figures = []
    tree["pages"] = {}
    for page in page_list:
        lines.append("[page E_%d]" % page.r)
        ptree = {"dims": {}, "d_nonzero": [], "stable": {}}
        for (s, t) in sorted(page.dims):
            lines.append("%d\t%d\t%d" % (s, t, page.dims[(s, t)]))
            ptree["dims"]["%d,%d" % (s, t)] = page.dims[(s, t)]
        for (s, t), m in sorted(page.d.items()):
            if not m.is_zero():
                lines.append("d\t%d\t%d\t->\t%d\t%d"
                             % (s, t, s + page.r, t - page.r + 1))
                ptree["d_nonzero"].append([s, t])
        for (s, t) in sorted(page.dims):
            ptree["stable"]["%d,%d" % (s, t)] = page.is_stable(s, t)
        tree["pages"][str(page.r)] = ptree
        if outdir is not None:
            figpath = os.path.join(outdir, "%spage_e%d.png"
                                   % (prefix, page.r))
            _render_page_figure(page, figpath)
            figures.append(figpath)
            lines.append("figure\t%s" % os.path.basename(figpath))
    last = page_list[-1]
    stab = ["%d,%d:E_%d" % (s, t, last.stable_from[(s, t)])
            for (s, t) in sorted(last.dims) if last.dims[(s, t)]]
    lines.append("[stabilization]")
    lines.append("stable-from\t" + (" ".join(stab) if stab else "-"))
    tree["stabilization"] = {k.split(":")[0]: k.split(":")[1] for k in stab}
    return figures


# ---------------------------------------------------------------------------
# tasks


def run(job, outdir=None, out_name="report"):
    """Execute a parsed job; returns (exit_code, text, tree)."""
    f = job.field
    lines = ["smashcoh %s" % __version__, "task\t%s" % job.task,
             "field\t%s" % ("q" if f.p is None else "p=%d" % f.p),
             "maxdeg\t%d" % job.maxdeg]
    tree = {"version": __version__, "task": job.task,
            "field": "q" if f.p is None else "p=%d" % f.p,
            "maxdeg": job.maxdeg}
    code = 0

    if job.task == "validate":
        problems = []
        if isinstance(job.gamma, HopfAlgebra):
            problems += job.gamma.check_hopf()
        problems += job.action.check()
        bad = _assoc_violation(job.algebra)
        if bad is not None:
            problems.append("algebra not associative at %r" % (bad,))
        order = job.gamma.antipode_order()
        if problems:
            code = 1
            lines.append("[violations]")
            lines.extend(problems)
            tree["violations"] = problems
        else:
            lines.append("ok, antipode order %s" % order)
            tree["ok"] = True
            tree["antipode_order"] = order

    elif job.task == "hh":
        _, dg = _hh_pipeline(job)
        ring = hh_ring(dg, job.maxdeg, certify_trials=1)
        _ring_report(f, ring, lines, tree)

    elif job.task == "ext":
        if job.module_aug is None:
            raise ValidationError("ext task needs a [module] section")
        comp = _ext_pipeline(job)
        ring = comp.ring(certify_trials=1)
        _ring_report(f, ring, lines, tree)

    elif job.task == "ss":
        dcm, dg = _hh_pipeline(job)
        page_list = pages(dg, "column", r_max=job.r_max, maxdeg=job.maxdeg)
        _pages_report(f, page_list, lines, tree, outdir,
                      out_name + "_" if out_name != "report" else "")
        ring = hh_ring(dg, job.maxdeg, certify_trials=0)
        try:
            rep = einfty_vs_gr(page_list, ring, "column")
            lines.append("[abutment]")
            tree["abutment"] = {}
            for n in sorted(rep.abutment_dims):
                lines.append("%d\t%d" % (n, rep.abutment_dims[n]))
                tree["abutment"][str(n)] = rep.abutment_dims[n]
            support = sorted({s for (s, t), d in page_list[-1].dims.items()
                              if d})
            if support == [0] and page_list[1].dims == page_list[-1].dims:
                lines.append("E_2 = E_infinity, support s=0")
                tree["collapse"] = "E2=Einf, support s=0"
        except NotStabilized as e:
            code = 1
            lines.append("error\tnot stabilized: %s" % e)
            tree["error"] = "not stabilized"

    elif job.task == "oracle-compare":
        _, dg = _hh_pipeline(job)
        ring = hh_ring(dg, job.maxdeg, certify_trials=0)
        ext = _extension(job)
        oracle = hh_oracle(ext.smash, job.maxdeg, b=ext.B, phi=ext.phi,
                           certify_trials=0)
        match = (ring.dims == oracle.dims)
        lines.append("[compare]")
        tree["compare"] = {}
        for n in sorted(ring.dims):
            ok = ring.dims[n] == oracle.dims.get(n)
            lines.append("%d\t%d\t%d\t%s"
                         % (n, ring.dims[n], oracle.dims.get(n, -1),
                            "ok" if ok else "MISMATCH"))
            tree["compare"][str(n)] = [ring.dims[n], oracle.dims.get(n)]
        lines.append("result\t%s" % ("match" if match else "mismatch"))
        tree["match"] = match
        code = 0 if match else 2

    elif job.task == "lhs":
        n_table, g_table, act = job.lhs
        res = lhs_specialize(n_table, g_table, act, f, job.maxdeg)
        lines.append("[e2]")
        tree["e2"] = {}
        for (p, q) in sorted(res.e2):
            lines.append("%d\t%d\t%d" % (p, q, res.e2[(p, q)]))
            tree["e2"]["%d,%d" % (p, q)] = res.e2[(p, q)]
        lines.append("[abutment]")
        tree["abutment"] = {}
        for n, d in enumerate(res.abutment):
            lines.append("%d\t%d" % (n, d))
            tree["abutment"][str(n)] = d

    text = "\n".join(lines) + "\n"
    return code, text, tree


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="smashcoh",
        description="Cohomology of smash products from job files.")
    parser.add_argument("job", help="path to a .job file")
    parser.add_argument("--task", help="override the job's task")
    parser.add_argument("--maxdeg", type=int, help="override maxdeg")
    parser.add_argument("--pages", type=int,
                        help="override r_max for the ss task")
    parser.add_argument("--field", help="override the field: q or p=<prime>")
    parser.add_argument("--format", dest="fmt", choices=("text",
                                                         "structured"),
                        help="override the output format")
    parser.add_argument("--out", help="output directory (default: stdout; "
                        "figures require --out)")
    args = parser.parse_args(argv)

    overrides = {}
    for key in ("task", "maxdeg", "pages", "field"):
        v = getattr(args, key)
        if v is not None:
            overrides[key] = str(v) if key in ("maxdeg", "pages") else v
    if args.fmt:
        overrides["format"] = args.fmt

    try:
        job = parse_job(args.job, overrides)
    except (ParseError, ValidationError) as e:
        print("%s: %s" % (type(e).__name__, e), file=sys.stderr)
        return 1

    outdir = args.out
    if outdir is not None:
        os.makedirs(outdir, exist_ok=True)
    out_name = os.path.splitext(os.path.basename(args.job))[0]

    try:
        code, text, tree = run(job, outdir=outdir, out_name=out_name)
    except (ParseError, ValidationError, NotStabilized) as e:
        print("%s: %s" % (type(e).__name__, e), file=sys.stderr)
        return 1

    if job.fmt == "structured":
        payload = json.dumps(tree, indent=2, sort_keys=True) + "\n"
        suffix = ".json"
    else:
        payload = text
        suffix = ".txt"
    if outdir is not None:
        path = os.path.join(outdir, out_name + suffix)
        with open(path, "w") as fh:
            fh.write(payload)
        print(path)
    else:
        sys.stdout.write(payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
