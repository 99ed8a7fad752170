#!/usr/bin/env python3
"""Regenerate data/expected/*.json by brute force.

Deliberately independent of the C++ implementation: monomials are index
tuples, signs come from sorting permutations, and every rank is computed
by plain fraction Gaussian elimination. Lefschetz ranks are computed
representative-free on explicit column spans, so no choice made by the
library can leak into the expectations.
"""

import itertools
import json
import os
import sys
from fractions import Fraction

HERE = os.path.dirname(os.path.abspath(__file__))
FIXDIR = os.path.join(HERE, "..", "data", "fixtures")
OUTDIR = os.path.join(HERE, "..", "data", "expected")
FIXTURES = ["torus4", "torus6", "kodaira_thurston", "heis_r2", "solv5", "torus4_z2"]


def sort_sign(seq):
    """Sign of the permutation sorting seq; None if it has repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return None
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def add_term(form, mono, coeff):
    if coeff == 0:
        return
    s = sort_sign(mono)
    if s is None:
        return
    key = tuple(sorted(mono))
    form[key] = form.get(key, Fraction(0)) + s * coeff
    if form[key] == 0:
        del form[key]


def wedge(f, g):
    out = {}
    for a, ca in f.items():
        for b, cb in g.items():
            add_term(out, a + b, ca * cb)
    return out


def load(name):
    with open(os.path.join(FIXDIR, name + ".json")) as fh:
        return json.load(fh)


def d_generators(model):
    m = model["dim"]
    gens = {k: {} for k in range(1, m + 1)}
    for (i, j, k, c) in model.get("brackets", []):
        c = Fraction(c)
        add_term(gens[k], (i, j), -c)
    return gens


def d_form(gens, form):
    out = {}
    for mono, c in form.items():
        for t, idx in enumerate(mono):
            pre, post = mono[:t], mono[t + 1:]
            sgn = -1 if t % 2 else 1
            for gm, gc in gens[idx].items():
                add_term(out, pre + gm + post, c * gc * sgn)
    return out


def monomials(m, k, allowed=None):
    idx = allowed if allowed is not None else range(1, m + 1)
    return [tuple(c) for c in itertools.combinations(sorted(idx), k)]


def form_to_vec(form, basis):
    return [form.get(mono, Fraction(0)) for mono in basis]


def rank(rows):
    rows = [list(r) for r in rows]
    rnk = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = None
        for r in range(rnk, len(rows)):
            if rows[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        rows[rnk], rows[piv] = rows[piv], rows[rnk]
        inv = Fraction(1) / rows[rnk][col]
        rows[rnk] = [x * inv for x in rows[rnk]]
        for r in range(len(rows)):
            if r != rnk and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rnk])]
        rnk += 1
    return rnk


def kernel(rows, ncols):
    """Null space basis (list of column vectors) of the matrix given by rows."""
    work = [list(r) for r in rows]
    pivots = []
    rnk = 0
    for col in range(ncols):
        piv = None
        for r in range(rnk, len(work)):
            if work[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        work[rnk], work[piv] = work[piv], work[rnk]
        inv = Fraction(1) / work[rnk][col]
        work[rnk] = [x * inv for x in work[rnk]]
        for r in range(len(work)):
            if r != rnk and work[r][col] != 0:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[rnk])]
        pivots.append(col)
        rnk += 1
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -work[r][f]
        out.append(v)
    return out


def mat_cols_to_rows(cols):
    if not cols:
        return []
    return [[col[i] for col in cols] for i in range(len(cols[0]))]


def mat_apply(rows_matrix, col):
    return [sum((r[i] * col[i] for i in range(len(col))), Fraction(0)) for r in rows_matrix]


def operator_matrix(op, in_basis, out_basis):
    """Rows x cols matrix (list of rows) of a monomial-wise operator."""
    cols = []
    for mono in in_basis:
        img = op({mono: Fraction(1)})
        cols.append(form_to_vec(img, out_basis))
    return mat_cols_to_rows(cols)


class GradedSpan:
    """Per-degree column spans of a d-stable subspace, ambient coordinates."""

    def __init__(self, m, gens, span_cols_by_degree):
        self.m = m
        self.gens = gens
        self.cols = span_cols_by_degree  # degree -> list of column vectors over monomials(m, k)

    def closed_cols(self, k):
        basis_k = monomials(self.m, k)
        basis_up = monomials(self.m, k + 1)
        D = operator_matrix(lambda f: d_form(self.gens, f), basis_k, basis_up)
        V = self.cols.get(k, [])
        if not V:
            return []
        DV = [mat_apply(D, v) for v in V]  # columns
        ker = kernel(mat_cols_to_rows(DV), len(V))
        out = []
        for coeffs in ker:
            col = [Fraction(0)] * len(basis_k)
            for c, v in zip(coeffs, V):
                for i in range(len(col)):
                    col[i] += c * v[i]
            out.append(col)
        return out

    def exact_cols(self, k):
        if k == 0:
            return []
        basis_prev = monomials(self.m, k - 1)
        basis_k = monomials(self.m, k)
        D = operator_matrix(lambda f: d_form(self.gens, f), basis_prev, basis_k)
        return [mat_apply(D, v) for v in self.cols.get(k - 1, [])]

    def betti(self, k):
        Z = self.closed_cols(k)
        B = self.exact_cols(k)
        rz = rank(mat_cols_to_rows(Z)) if Z else 0
        rb = rank(mat_cols_to_rows(B)) if B else 0
        return rz - rb

    def lefschetz_rank(self, omega, k, n):
        """rank of L^k : H^{n-k} -> H^{n+k} plus source/target dims."""
        a, b = n - k, n + k
        basis_a = monomials(self.m, a)
        basis_b = monomials(self.m, b)
        wk = {(): Fraction(1)}
        for _ in range(k):
            wk = wedge(wk, omega)
        W = operator_matrix(lambda f: wedge(wk, f), basis_a, basis_b)
        Z_a = self.closed_cols(a)
        B_b = self.exact_cols(b)
        WZ = [mat_apply(W, z) for z in Z_a]
        rb = rank(mat_cols_to_rows(B_b)) if B_b else 0
        joint = WZ + B_b
        rj = rank(mat_cols_to_rows(joint)) if joint else 0
        return {
            "k": k,
            "rank": rj - rb,
            "dim_source": self.betti(a),
            "dim_target": self.betti(b),
            "surjective": rj - rb == self.betti(b),
        }


def full_span(m, gens):
    cols = {}
    for k in range(m + 1):
        basis = monomials(m, k)
        cols[k] = [[Fraction(1 if i == j else 0) for i in range(len(basis))] for j in range(len(basis))]
    return GradedSpan(m, gens, cols)


def pullback(A, mono, m):
    """Pullback of a basis monomial along the matrix A (A* e^i = sum_j A[i][j] e^j)."""
    out = {(): Fraction(1)}
    for i in mono:
        one = {}
        for j in range(1, m + 1):
            c = A[i - 1][j - 1]
            if c != 0:
                add_term(one, (j,), c)
        out = wedge(out, one)
    return out


def group_closure(gens_raw, m):
    def key(M):
        return tuple(tuple(x for x in row) for row in M)

    def mul(A, B):
        return [[sum(A[i][k] * B[k][j] for k in range(m)) for j in range(m)] for i in range(m)]

    I = [[Fraction(1 if i == j else 0) for j in range(m)] for i in range(m)]
    gens = [[[Fraction(x) for x in row] for row in g] for g in gens_raw]
    seen = {key(I)}
    elements = [I]
    queue = [I]
    while queue:
        cur = queue.pop(0)
        for g in gens:
            nxt = mul(cur, g)
            if key(nxt) in seen:
                continue
            seen.add(key(nxt))
            elements.append(nxt)
            queue.append(nxt)
            if len(elements) > 10000:
                raise RuntimeError("group too large")
    return elements


def invariant_span(model, gens):
    m = model["dim"]
    G = group_closure(model["group"], m)
    cols = {}
    for k in range(m + 1):
        basis = monomials(m, k)
        cols_k = []
        for mono in basis:
            acc = {}
            for g in G:
                img = pullback(g, mono, m)
                for mm, c in img.items():
                    acc[mm] = acc.get(mm, Fraction(0)) + c
                    if acc[mm] == 0:
                        del acc[mm]
            avg = {mm: c / len(G) for mm, c in acc.items()}
            cols_k.append(form_to_vec(avg, basis))
        cols[k] = cols_k
    return GradedSpan(m, gens, cols)


def basic_span(model, gens):
    m = model["dim"]
    leaf = set(model["foliation"]["leaf_basis"])
    trans = [i for i in range(1, m + 1) if i not in leaf]
    cols = {}
    for k in range(m + 1):
        cand = monomials(m, k, allowed=trans)
        if not cand:
            cols[k] = []
            continue
        basis_up = monomials(m, k + 1)
        bad_rows = []
        for r, mono in enumerate(basis_up):
            if any(i in leaf for i in mono):
                bad_rows.append(r)
        D = operator_matrix(lambda f: d_form(gens, f), cand, basis_up)
        cond = [D[r] for r in bad_rows]
        ker = kernel(cond, len(cand)) if cond else [
            [Fraction(1 if i == j else 0) for i in range(len(cand))] for j in range(len(cand))
        ]
        basis_full = monomials(m, k)
        pos = {mono: i for i, mono in enumerate(basis_full)}
        cols_k = []
        for coeffs in ker:
            col = [Fraction(0)] * len(basis_full)
            for c, mono in zip(coeffs, cand):
                col[pos[mono]] += c
            cols_k.append(col)
        cols[k] = cols_k
    return GradedSpan(m, gens, cols)


def omega_form(model):
    w = {}
    for (i, j, c) in model["omega"]:
        add_term(w, (i, j), Fraction(c))
    return w


def omega_fully_nondegenerate(model):
    m = model["dim"]
    if m % 2 != 0:
        return False
    w = omega_form(model)
    top = {(): Fraction(1)}
    for _ in range(m // 2):
        top = wedge(top, w)
    return bool(top)


def main():
    os.makedirs(OUTDIR, exist_ok=True)
    for name in FIXTURES:
        model = load(name)
        m = model["dim"]
        gens = d_generators(model)
        out = {"name": name}

        span = full_span(m, gens)
        out["betti"] = [span.betti(k) for k in range(m + 1)]

        if omega_fully_nondegenerate(model):
            w = omega_form(model)
            n = m // 2
            out["lefschetz"] = [span.lefschetz_rank(w, k, n) for k in range(n + 1)]

        if model.get("group"):
            inv = invariant_span(model, gens)
            out["invariant_betti"] = [inv.betti(k) for k in range(m + 1)]
            if omega_fully_nondegenerate(model):
                w = omega_form(model)
                n = m // 2
                out["invariant_lefschetz"] = [inv.lefschetz_rank(w, k, n) for k in range(n + 1)]

        if model.get("foliation"):
            basic = basic_span(model, gens)
            codim = m - len(model["foliation"]["leaf_basis"])
            n = codim // 2
            out["basic_betti"] = [basic.betti(k) for k in range(codim + 1)]
            w = omega_form(model)
            out["basic_lefschetz"] = [basic.lefschetz_rank(w, k, n) for k in range(n + 1)]

        path = os.path.join(OUTDIR, name + ".json")
        with open(path, "w") as fh:
            json.dump(out, fh, indent=2)
            fh.write("\n")
        print("wrote", os.path.relpath(path, os.path.join(HERE, "..")))


if __name__ == "__main__":
    sys.exit(main())
