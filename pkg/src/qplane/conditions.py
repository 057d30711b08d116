"""The structural conditions on a flip/metric pair, as exact tensor checks.

A flip S is a 4x4 scalar matrix S^ij_kl under the index flattening
(11,12,21,22) -> (1,2,3,4) with the upper pair as row; a metric is the 2x2
matrix g^ij.  Every check returns its full exact residual, so failures are
diagnosable and negative results can be asserted on the nose.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .scalars import ScalarExpr, ZERO, ONE, Q, QINV, parse, scalar
from .forms import wedge_projector

__all__ = [
    "Flip", "Metric", "CheckResult", "SchemaError",
    "check_sp", "check_symmetry", "check_compat", "check_flip_reality",
    "check_metric_reality", "check_braid", "check_tau",
    "run_all_checks", "classical_flip", "tau2_flip",
    "mat4_identity", "mat4_mul", "mat4_sub", "det4",
]

_PAIRS = ((1, 1), (1, 2), (2, 1), (2, 2))


def _idx(i, j):
    return 2 * (i - 1) + (j - 1)


class SchemaError(Exception):
    pass


def _coerce_entry(e):
    if isinstance(e, ScalarExpr):
        return e
    if isinstance(e, str):
        return parse(e)
    if isinstance(e, int):
        return scalar(e)
    raise SchemaError(f"bad matrix entry {e!r}")


@dataclass(frozen=True)
class Flip:
    """S^ij_kl flattened to 4x4, upper pair = row."""

    rows: tuple

    @staticmethod
    def from_rows(rows):
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise SchemaError("flip must be a 4x4 matrix")
        return Flip(tuple(tuple(_coerce_entry(e) for e in r) for r in rows))

    def tensor(self, i, j, k, l):
        return self.rows[_idx(i, j)][_idx(k, l)]

    def subst(self, var, value):
        return Flip(tuple(tuple(e.subst(var, value) for e in r) for r in self.rows))

    def to_json(self):
        return {"flip": [[str(e) for e in r] for r in self.rows]}


@dataclass(frozen=True)
class Metric:
    """Frame components g^ij as a 2x2 matrix."""

    rows: tuple

    @staticmethod
    def from_rows(rows):
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise SchemaError("metric must be a 2x2 matrix")
        return Metric(tuple(tuple(_coerce_entry(e) for e in r) for r in rows))

    def g(self, i, j):
        return self.rows[i - 1][j - 1]

    def vec(self):
        return (self.rows[0][0], self.rows[0][1], self.rows[1][0], self.rows[1][1])

    def det(self):
        return self.rows[0][0] * self.rows[1][1] - self.rows[0][1] * self.rows[1][0]

    @property
    def degenerate(self):
        return self.det().is_zero

    def subst(self, var, value):
        return Metric(tuple(tuple(e.subst(var, value) for e in r) for r in self.rows))

    def to_json(self):
        return {"metric": [[str(e) for e in r] for r in self.rows]}


@dataclass
class CheckResult:
    """One condition: pass iff the exact residual vanishes identically."""

    name: str
    passed: bool
    residual: list
    data: dict | None = None

    def to_json(self):
        out = {
            "condition": self.name,
            "pass": self.passed,
            "residual": _stringify(self.residual),
        }
        if self.data:
            out.update(self.data)
        return out

    def __str__(self):
        return json.dumps(self.to_json(), sort_keys=True)


def _stringify(x):
    if isinstance(x, ScalarExpr):
        return str(x)
    return [_stringify(e) for e in x]


def _all_zero(rows):
    for r in rows:
        for e in r:
            if not e.is_zero:
                return False
    return True


# ---------------------------------------------------------------------------
# 4x4 scalar matrix helpers
# ---------------------------------------------------------------------------

def mat4_identity():
    return tuple(tuple(ONE if a == b else ZERO for b in range(4)) for a in range(4))


def mat4_mul(a, b):
    out = []
    for i in range(4):
        row = []
        for j in range(4):
            s = ZERO
            for k in range(4):
                if a[i][k].is_zero or b[k][j].is_zero:
                    continue
                s = s + a[i][k] * b[k][j]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mat4_add(a, b):
    return tuple(tuple(a[i][j] + b[i][j] for j in range(4)) for i in range(4))


def mat4_sub(a, b):
    return tuple(tuple(a[i][j] - b[i][j] for j in range(4)) for i in range(4))


def det4(m):
    import itertools
    total = ZERO
    for perm in itertools.permutations(range(4)):
        sign = 1
        for a in range(4):
            for b in range(a + 1, 4):
                if perm[a] > perm[b]:
                    sign = -sign
        term = ONE if sign > 0 else -ONE
        for k in range(4):
            term = term * m[k][perm[k]]
            if term.is_zero:
                break
        total = total + term
    return total


# ---------------------------------------------------------------------------
# the six conditions
# ---------------------------------------------------------------------------

def check_sp(S):
    """Consistency with the wedge: residual (1 + S) P, plus the equivalent
    four component relations between the second and third columns."""
    P = wedge_projector()
    one_plus = mat4_add(mat4_identity(), S.rows)
    residual = mat4_mul(one_plus, P)
    comps = [one_plus[a][2] - Q * one_plus[a][1] for a in range(4)]
    ok = _all_zero(residual)
    assert ok == all(c.is_zero for c in comps)
    return CheckResult("SP", ok, [list(r) for r in residual],
                       {"component_form_residual": [str(c) for c in comps]})


def check_symmetry(g):
    """sigma-symmetry: the metric annihilates two-forms, P^ij_lm g^lm = 0;
    in components g^12 = q g^21."""
    P = wedge_projector()
    gv = g.vec()
    residual = [sum((P[a][b] * gv[b] for b in range(4)), ZERO) for a in range(4)]
    scalar_form = gv[1] - Q * gv[2]
    ok = all(e.is_zero for e in residual)
    assert ok == scalar_form.is_zero
    return CheckResult("Pg", ok, [residual],
                       {"scalar_form": str(scalar_form),
                        "degenerate": g.degenerate})


def _compat_tensor(S, g):
    res = [[ZERO] * 4 for _ in range(4)]
    for i in (1, 2):
        for j in (1, 2):
            for k in (1, 2):
                for l in (1, 2):
                    s = ZERO
                    for m in (1, 2):
                        for n in (1, 2):
                            left = S.tensor(i, m, l, n)
                            if left.is_zero:
                                continue
                            for p in (1, 2):
                                right = S.tensor(j, k, m, p)
                                if right.is_zero:
                                    continue
                                s = s + left * g.g(n, p) * right
                    if k == l:
                        s = s - g.g(i, j)
                    res[_idx(i, j)][_idx(k, l)] = s
    return res


def _compat_matrix_form(S, g):
    """The matrix cross-check: S x S_(g) = [g^ci delta^d_j] entrywise."""
    gv = g.vec()
    sg = [[ZERO] * 4 for _ in range(4)]
    for a in (1, 2):
        for b in (1, 2):
            for c in (1, 2):
                for d in (1, 2):
                    s = ZERO
                    for p in (1, 2):
                        s = s + S.tensor(c, a, d, p) * g.g(p, b)
                    sg[_idx(a, b)][_idx(c, d)] = s
    lhs = mat4_mul(S.rows, tuple(tuple(r) for r in sg))
    res = [[ZERO] * 4 for _ in range(4)]
    for i in (1, 2):
        for j in (1, 2):
            for c in (1, 2):
                for d in (1, 2):
                    rhs = g.g(c, i) if d == j else ZERO
                    res[_idx(i, j)][_idx(c, d)] = lhs[_idx(i, j)][_idx(c, d)] - rhs
    return res


def check_compat(S, g):
    """Metric compatibility S^im_ln g^np S^jk_mp = g^ij delta^k_l; rows (ij),
    columns (kl); cross-checked against the flattened matrix form."""
    res = _compat_tensor(S, g)
    ok = _all_zero(res)
    matrix_res = _compat_matrix_form(S, g)
    assert ok == _all_zero(matrix_res)
    return CheckResult("compat", ok, res,
                       {"matrix_form_consistent": True})


def check_flip_reality(S):
    """Flip reality (S^ji_kl)* S^lk_mn = delta^i_m delta^j_n; rows (ij),
    columns (mn)."""
    res = [[ZERO] * 4 for _ in range(4)]
    for i in (1, 2):
        for j in (1, 2):
            for m in (1, 2):
                for n in (1, 2):
                    s = ZERO
                    for k in (1, 2):
                        for l in (1, 2):
                            a = S.tensor(j, i, k, l)
                            if a.is_zero:
                                continue
                            b = S.tensor(l, k, m, n)
                            if b.is_zero:
                                continue
                            s = s + a.star() * b
                    if i == m and j == n:
                        s = s - ONE
                    res[_idx(i, j)][_idx(m, n)] = s
    return CheckResult("j-s", _all_zero(res), res)


def check_metric_reality(S, g):
    """Metric reality S^ij_kl g^kl = (g^ji)*; residual indexed (i, j)."""
    res = [[ZERO] * 2 for _ in range(2)]
    for i in (1, 2):
        for j in (1, 2):
            s = ZERO
            for k in (1, 2):
                for l in (1, 2):
                    s = s + S.tensor(i, j, k, l) * g.g(k, l)
            res[i - 1][j - 1] = s - g.g(j, i).star()
    return CheckResult("her-f", _all_zero(res), res)


def _braid_factors(S):
    s12 = [[ZERO] * 8 for _ in range(8)]
    s23 = [[ZERO] * 8 for _ in range(8)]
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    for e in range(2):
                        s12[4 * a + 2 * b + c][4 * d + 2 * e + c] = S.rows[2 * a + b][2 * d + e]
                        s23[4 * c + 2 * a + b][4 * c + 2 * d + e] = S.rows[2 * a + b][2 * d + e]
    return s12, s23


def _mat8_mul(a, b):
    out = [[ZERO] * 8 for _ in range(8)]
    for i in range(8):
        ai = a[i]
        for k in range(8):
            c = ai[k]
            if c.is_zero:
                continue
            bk = b[k]
            row = out[i]
            for j in range(8):
                if not bk[j].is_zero:
                    row[j] = row[j] + c * bk[j]
    return out


def check_braid(S):
    """Braid equation S12 S23 S12 = S23 S12 S23 on the triple product."""
    s12, s23 = _braid_factors(S)
    lhs = _mat8_mul(_mat8_mul(s12, s23), s12)
    rhs = _mat8_mul(_mat8_mul(s23, s12), s23)
    res = [[lhs[i][j] - rhs[i][j] for j in range(8)] for i in range(8)]
    return CheckResult("braid", _all_zero(res), res)


def check_tau(S, T):
    """The splitting 1 + S = (1 - P) T, with T's invertibility reported."""
    P = wedge_projector()
    one_minus = mat4_sub(mat4_identity(), P)
    res = mat4_sub(mat4_add(mat4_identity(), S.rows), mat4_mul(one_minus, T))
    d = det4(T)
    return CheckResult("s-t", _all_zero(res), [list(r) for r in res],
                       {"tau_invertible": not d.is_zero, "tau_det": str(d)})


def run_all_checks(S, g, T=None):
    """All six conditions (plus the tau split when T is supplied)."""
    out = [
        check_sp(S),
        check_symmetry(g),
        check_compat(S, g),
        check_flip_reality(S),
        check_metric_reality(S, g),
        check_braid(S),
    ]
    if T is not None:
        out.append(check_tau(S, T))
    return out


# ---------------------------------------------------------------------------
# reference flips
# ---------------------------------------------------------------------------

def classical_flip():
    """The undeformed permutation S^ij_kl = delta^i_l delta^j_k."""
    rows = [[ZERO] * 4 for _ in range(4)]
    for i in (1, 2):
        for j in (1, 2):
            rows[_idx(i, j)][_idx(j, i)] = ONE
    return Flip.from_rows(rows)


def tau2_flip():
    """sigma = 1 - 2 pi, the tau = 2 choice."""
    P = wedge_projector()
    rows = mat4_sub(mat4_identity(), tuple(tuple(scalar(2) * e for e in r) for r in P))
    return Flip.from_rows([list(r) for r in rows])
