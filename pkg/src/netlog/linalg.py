"""Exact sparse linear algebra and degree-wise Macaulay matrices.

Rows are dicts column -> nonzero field element.  Columns may be any
hashable, orderable labels; elimination pivots on the largest column
label, which for monomial keys means the leading term.
"""

from __future__ import annotations

from gmpy2 import mpq


def _pivot(row):
    return max(row)


def echelon(rows):
    """Reduced row echelon form.  Returns {pivot column: row} with every row
    monic at its pivot and no other row containing that pivot column."""
    basis = {}
    for r in rows:
        r = {k: v for k, v in r.items() if v}
        # reduce against the current basis
        while r:
            changed = False
            for col in sorted(r, reverse=True):
                if col in basis:
                    c = r[col]
                    for k, v in basis[col].items():
                        nv = r.get(k, 0) - c * v
                        if nv:
                            r[k] = nv
                        else:
                            r.pop(k, None)
                    changed = True
                    break
            if not changed:
                break
        if not r:
            continue
        p = _pivot(r)
        inv = 1 / r[p]
        r = {k: v * inv for k, v in r.items()}
        # clear p from existing rows
        for q, row in basis.items():
            if p in row:
                c = row[p]
                for k, v in r.items():
                    nv = row.get(k, 0) - c * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        basis[p] = r
    return basis


def rank(rows) -> int:
    return len(_forward(rows))


def _forward(rows):
    """Plain forward elimination; cheaper than the reduced form when only the rank is needed."""
    basis = {}
    for r in rows:
        r = {k: v for k, v in r.items() if v}
        while r:
            p = _pivot(r)
            b = basis.get(p)
            if b is None:
                inv = 1 / r[p]
                basis[p] = {k: v * inv for k, v in r.items()}
                break
            c = r[p]
            for k, v in b.items():
                nv = r.get(k, 0) - c * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return basis


def in_span(rows_basis, v) -> bool:
    """Is v in the span of an echelon basis from :func:`echelon` or :func:`_forward`?"""
    r = {k: c for k, c in v.items() if c}
    while r:
        p = _pivot(r)
        b = rows_basis.get(p)
        if b is None:
            return False
        c = r[p]
        for k, x in b.items():
            nv = r.get(k, 0) - c * x
            if nv:
                r[k] = nv
            else:
                r.pop(k, None)
    return True


def _one_like(rows):
    for r in rows:
        for v in r.values():
            if v:
                return v / v
    return mpq(1)


def _field(v):
    return mpq(v) if isinstance(v, int) else v


def nullspace(rows, columns):
    """Basis of {x : A x = 0} where A has the given rows and column labels."""
    E = echelon(rows)
    pivots = set(E)
    free = [c for c in columns if c not in pivots]
    one = _one_like(rows)
    out = []
    for f in free:
        x = {f: one}
        for p, row in E.items():
            c = row.get(f)
            if c:
                x[p] = -c
        out.append(x)
    return out


def solve(rows, rhs, columns):
    """Solve A x = b.  ``rhs`` holds the right-hand side entry per row.
    Returns (particular solution dict, nullspace basis) or None if inconsistent."""
    aug = []
    tag = ("~rhs",)
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[tag] = -b
        aug.append(row)
    # pivot order: make sure the rhs column is the smallest label
    cols = list(columns)
    order = {c: i + 1 for i, c in enumerate(sorted(cols))}
    order[tag] = 0
    relabeled = [{order[k]: v for k, v in r.items()} for r in aug]
    E = echelon(relabeled)
    if 0 in E:
        return None
    inv = {v: k for k, v in order.items()}
    sol = {}
    for p, row in E.items():
        c = row.get(0)
        if c:
            sol[inv[p]] = -c
    kernel = nullspace([{order[k]: v for k, v in r.items()} for r in rows], range(1, len(cols) + 1))
    kernel = [{inv[k]: v for k, v in x.items()} for x in kernel]
    return sol, kernel


# ----------------------------------------------------- dense helpers

def mat_mul(A, B):
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    return [[sum((A[i][k] * B[k][j] for k in range(m)), 0) for j in range(p)] for i in range(n)]


def mat_inverse(A):
    n = len(A)
    M = [[_field(v) for v in r] + [mpq(int(i == j)) for j in range(n)] for i, r in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                c = M[r][col]
                M[r] = [a - c * b for a, b in zip(M[r], M[col])]
    return [r[n:] for r in M]


def dense_rank(A):
    return rank([{j: v for j, v in enumerate(r) if v} for r in A])


def dense_nullspace(A, ncols):
    rows = [{j: v for j, v in enumerate(r) if v} for r in A]
    ns = nullspace(rows, range(ncols))
    return [[x.get(j, 0) for j in range(ncols)] for x in ns]


# -------------------------------------------------- Macaulay matrices

def monomials(nvars, d):
    if d < 0:
        return []
    if nvars == 1:
        return [(d,)]
    out = []
    for i in range(d, -1, -1):
        for rest in monomials(nvars - 1, d - i):
            out.append((i,) + rest)
    return out


def _shift_rows(vec, degrees, d, nvars):
    """All x^a * vec of total degree d as sparse rows keyed by (pos, exponent)."""
    vd = None
    for pos, p in enumerate(vec):
        if not p.is_zero():
            vd = p.degree() + degrees[pos]
            break
    if vd is None or vd > d:
        return []
    rows = []
    for a in monomials(nvars, d - vd):
        row = {}
        for pos, p in enumerate(vec):
            for e, c in p.terms.items():
                row[(pos, tuple(x + y for x, y in zip(e, a)))] = c
        rows.append(row)
    return rows


def macaulay_rows(gens, degrees, d, quotient=(), nvars=None):
    """Rows spanning the degree-d part of the submodule generated by ``gens``
    (plus quotient·e_k) inside the free module with basis degrees ``degrees``."""
    if nvars is None:
        for g in gens:
            nvars = g[0].ring.nvars
            break
        else:
            for q in quotient:
                nvars = q.ring.nvars
                break
    rows = []
    for g in gens:
        rows += _shift_rows(g, degrees, d, nvars)
    if quotient:
        ring = quotient[0].ring
        r = len(degrees)
        for k in range(r):
            for q in quotient:
                v = [ring.zero()] * r
                v[k] = q
                rows += _shift_rows(v, degrees, d, nvars)
    return rows


def free_dimension(degrees, d, nvars):
    from math import comb

    return sum(comb(d - g + nvars - 1, nvars - 1) for g in degrees if d - g >= 0)


def free_columns(degrees, d, nvars):
    cols = []
    for pos, g in enumerate(degrees):
        for a in monomials(nvars, d - g):
            cols.append((pos, a))
    return cols


def submodule_dimension(gens, degrees, d, quotient=(), nvars=None):
    """dim_k of the degree-d part of a submodule, by brute-force rank."""
    return rank(macaulay_rows(gens, degrees, d, quotient, nvars))


def quotient_dimension(gens, degrees, d, quotient=(), nvars=None):
    if nvars is None:
        nvars = (gens[0][0].ring if gens else quotient[0].ring).nvars
    return free_dimension(degrees, d, nvars) - submodule_dimension(gens, degrees, d, quotient, nvars)


def map_matrix_in_degree(columns, src_degrees, tgt_degrees, d, nvars):
    """Degree-d part of the map given by its columns, as rows indexed by source
    monomial (one row per basis element of the source in degree d).  Returns
    (rows, source column labels)."""
    rows = []
    labels = []
    for j, col in enumerate(columns):
        for a in monomials(nvars, d - src_degrees[j]):
            row = {}
            for pos, p in enumerate(col):
                for e, c in p.terms.items():
                    k = (pos, tuple(x + y for x, y in zip(e, a)))
                    row[k] = row.get(k, 0) + c
            rows.append({k: v for k, v in row.items() if v})
            labels.append((j, a))
    return rows, labels


def kernel_dimension(columns, src_degrees, tgt_degrees, d, nvars, quotient=()):
    """dim of the degree-d kernel of a map of free modules (over S/(quotient) when given)."""
    rows, labels = map_matrix_in_degree(columns, src_degrees, tgt_degrees, d, nvars)
    if not quotient:
        return len(labels) - rank(rows)
    I0 = macaulay_rows([], tgt_degrees, d, quotient, nvars)
    I1 = macaulay_rows([], src_degrees, d, quotient, nvars)
    # I·F1 maps into I·F0, so the induced rank is read off modulo I·F0
    image_rank = rank(rows + I0) - rank(I0)
    return len(labels) - rank(I1) - image_rank
