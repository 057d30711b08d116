"""Differential calculus in the frame basis.

One-forms are pairs of algebra coefficients on the frame legs th1, th2
(which commute with everything), two-forms a single coefficient on th1*th2.
The exterior algebra relations are (th1)^2 = (th2)^2 = 0 and
th1*th2 + q th2*th1 = 0 with q = r^-4; the differential acts by inner
derivations, df = th^i [lambda_i, f].
"""
from __future__ import annotations

from .scalars import ScalarExpr, ZERO, ONE, Q, QINV, QHALF, QHALFINV, scalar
from .ncpoly import (
    NCElement, Presentation, PresentationMismatch, StarConvention,
    UV, XY, lambda1_uv, lambda2_uv, lambda_xy, embed_uv_in_xy,
)

__all__ = [
    "OneForm", "TwoForm", "Calculus", "uv_calculus", "xy_calculus",
    "wedge_projector", "c_matrix", "trig_q_matrix",
    "check_wz_relations", "check_tr_relations",
]


class OneForm:
    """f1 th1 + f2 th2 with algebra coefficients."""

    __slots__ = ("f1", "f2")

    def __init__(self, f1, f2):
        f1._check(f2)
        self.f1 = f1
        self.f2 = f2

    @property
    def pres(self):
        return self.f1.pres

    @property
    def is_zero(self):
        return self.f1.is_zero and self.f2.is_zero

    def __add__(self, other):
        return OneForm(self.f1 + other.f1, self.f2 + other.f2)

    def __sub__(self, other):
        return OneForm(self.f1 - other.f1, self.f2 - other.f2)

    def __neg__(self):
        return OneForm(-self.f1, -self.f2)

    def lmul(self, f):
        """Left module action f * omega."""
        return OneForm(f * self.f1, f * self.f2)

    def rmul(self, f):
        """Right module action omega * f; the frame commutes with f."""
        return OneForm(self.f1 * f, self.f2 * f)

    def scale(self, c):
        return OneForm(self.f1 * c, self.f2 * c)

    def __eq__(self, other):
        if not isinstance(other, OneForm):
            return NotImplemented
        return self.f1 == other.f1 and self.f2 == other.f2

    def __str__(self):
        return f"({self.f1}) [th1] + ({self.f2}) [th2]"

    def __repr__(self):
        return f"OneForm({self})"


class TwoForm:
    """g * th1 th2; th2 th1 is always reduced via th1 th2 + q th2 th1 = 0."""

    __slots__ = ("g",)

    def __init__(self, g):
        self.g = g

    @property
    def is_zero(self):
        return self.g.is_zero

    def __add__(self, other):
        return TwoForm(self.g + other.g)

    def __sub__(self, other):
        return TwoForm(self.g - other.g)

    def __neg__(self):
        return TwoForm(-self.g)

    def lmul(self, f):
        return TwoForm(f * self.g)

    def scale(self, c):
        return TwoForm(self.g * c)

    def __eq__(self, other):
        if not isinstance(other, TwoForm):
            return NotImplemented
        return self.g == other.g

    def __str__(self):
        return f"({self.g}) [th1 th2]"

    def __repr__(self):
        return f"TwoForm({self})"


class Calculus:
    """Frame calculus over one presentation, with its inner-derivation pair."""

    def __init__(self, pres, lam1, lam2):
        if lam1.pres is not pres or lam2.pres is not pres:
            raise PresentationMismatch("lambda elements must live in the presentation")
        self.pres = pres
        self.lam1 = lam1
        self.lam2 = lam2
        # structure elements of d(th^i): C^1_12 = (q^-1 - 1) lambda_2,
        # C^2_12 = (q^-1 - 1) lambda_1, with C^i_21 = -q C^i_12
        self.c1_12 = lam2 * (QINV - ONE)
        self.c2_12 = lam1 * (QINV - ONE)

    # -- basic forms ----------------------------------------------------------

    def zero_one_form(self):
        z = NCElement.zero(self.pres)
        return OneForm(z, z)

    def one_form(self, f1, f2):
        return OneForm(f1, f2)

    def th1(self):
        return OneForm(NCElement.one(self.pres), NCElement.zero(self.pres))

    def th2(self):
        return OneForm(NCElement.zero(self.pres), NCElement.one(self.pres))

    def theta(self):
        """The anti-hermitian 1-form -lambda_i th^i generating d."""
        return OneForm(-self.lam1, -self.lam2)

    # -- differential ---------------------------------------------------------

    def d(self, f):
        """df = th^i [lambda_i, f]."""
        return OneForm(self.lam1.commutator(f), self.lam2.commutator(f))

    def dth1(self):
        return TwoForm(-self.c1_12)

    def dth2(self):
        return TwoForm(-self.c2_12)

    def d1(self, w):
        """d on one-forms: d(f th^i) = df th^i + f dth^i."""
        g = (self.lam2.commutator(w.f1)) * (-QINV) + w.f1 * (-self.c1_12) \
            + self.lam1.commutator(w.f2) + w.f2 * (-self.c2_12)
        return TwoForm(g)

    def wedge(self, a, b):
        """Product of one-forms reduced to the th1 th2 basis."""
        return TwoForm(a.f1 * b.f2 - (a.f2 * b.f1) * QINV)

    # -- star -----------------------------------------------------------------

    def star_form(self, w, convention=StarConvention.XY_INDUCED):
        """(f th^i)* = f* th^i; the frame legs are hermitian."""
        return OneForm(w.f1.star(convention), w.f2.star(convention))

    # -- conversions ----------------------------------------------------------

    def from_du_dv(self, a, b):
        """a du + b dv as a frame one-form (via du = q u v^-1 th1, dv = v u^-1 th2)."""
        u = NCElement.gen1(self.pres)
        v = NCElement.gen2(self.pres)
        du1 = (u * v.inverse()) * Q
        dv2 = v * u.inverse()
        return OneForm(a * du1, b * dv2)

    def to_du_dv(self, w):
        """Coefficients (a, b) with w = a du + b dv; inverse of from_du_dv."""
        u = NCElement.gen1(self.pres)
        v = NCElement.gen2(self.pres)
        return (w.f1 * (v * u.inverse()) * QINV, w.f2 * (u * v.inverse()))


def uv_calculus():
    return Calculus(UV, lambda1_uv(), lambda2_uv())


def xy_calculus(eps1=1, eps2=1):
    lam1, lam2 = lambda_xy(eps1, eps2)
    return Calculus(XY, lam1, lam2)


# ---------------------------------------------------------------------------
# exterior-algebra tensors (index flattening (11,12,21,22) -> 1..4)
# ---------------------------------------------------------------------------

def wedge_projector():
    """The projector P with th^i th^j = P^ij_kl th^k th^l."""
    half = scalar(1) / 2
    return (
        (ZERO, ZERO, ZERO, ZERO),
        (ZERO, half, -Q * half, ZERO),
        (ZERO, -QINV * half, half, ZERO),
        (ZERO, ZERO, ZERO, ZERO),
    )


def c_matrix():
    """C^ij_kl = delta delta - 2 P^ij_kl; an involution."""
    p = wedge_projector()
    out = []
    for a in range(4):
        row = []
        for b in range(4):
            e = (ONE if a == b else ZERO) - scalar(2) * p[a][b]
            row.append(e)
        out.append(tuple(row))
    return tuple(out)


def trig_q_matrix():
    """Exact surrogate of the unitary Q of the light-cone relations:
    cos(pi gamma) = (q^(1/2) + q^(-1/2))/2 on the diagonal,
    i sin(pi gamma) = (q^(1/2) - q^(-1/2))/2 off it."""
    a = (QHALF + QHALFINV) * scalar(1) / 2
    b = (QHALF - QHALFINV) * scalar(1) / 2
    return ((a, b), (b, a))


# ---------------------------------------------------------------------------
# relation checks
# ---------------------------------------------------------------------------

def check_wz_relations(eps1=1, eps2=1):
    """Residuals of the module relations, x dx = r^2 dx x etc., plus the
    (u, v) block; each entry is (name, residual OneForm)."""
    qt2 = ScalarExpr.variable(0, 2)
    qt = ScalarExpr.variable(0, 1)
    calc = xy_calculus(eps1, eps2)
    x = NCElement.gen1(XY)
    y = NCElement.gen2(XY)
    dx, dy = calc.d(x), calc.d(y)
    out = [
        ("x dx = r^2 dx x", dx.lmul(x) - dx.rmul(x).scale(qt2)),
        ("x dy = r dy x + (r^2 - 1) dx y",
         dy.lmul(x) - dy.rmul(x).scale(qt) - dx.rmul(y).scale(qt2 - ONE)),
        ("y dx = r dx y", dx.lmul(y) - dx.rmul(y).scale(qt)),
        ("y dy = r^2 dy y", dy.lmul(y) - dy.rmul(y).scale(qt2)),
    ]
    ucalc = uv_calculus()
    u = NCElement.gen1(UV)
    v = NCElement.gen2(UV)
    du, dv = ucalc.d(u), ucalc.d(v)
    out += [
        ("u du = q^-1 du u", du.lmul(u) - du.rmul(u).scale(QINV)),
        ("u dv = q dv u", dv.lmul(u) - dv.rmul(u).scale(Q)),
        ("v du = q^-1 du v", du.lmul(v) - du.rmul(v).scale(QINV)),
        ("v dv = q dv v", dv.lmul(v) - dv.rmul(v).scale(Q)),
    ]
    return out


def check_tr_relations():
    """The light-cone matrix relations with exact trigonometric surrogates.

    Works with the scaled combinations t = u + v, r = u - v (the relations
    are homogeneous).  The quadric needs the sigma2 Q ordering, and the
    mixed coordinate-differential relation holds in the form
    x_i dx_j = (Q^-2)_jk dx_k x_i; both are returned as exact residuals.
    """
    from .ncpoly import check_xy_quadric
    qm = trig_q_matrix()
    quadric = check_xy_quadric(qm)

    calc = uv_calculus()
    u = NCElement.gen1(UV)
    v = NCElement.gen2(UV)
    t, rr = u + v, u - v
    dt = calc.d(t)
    dr = calc.d(rr)
    coords = (t, rr)
    diffs = (dt, dr)

    # Xi^t Q Xi = 0: a two-form identity
    a, b = qm[0][0], qm[0][1]
    xiqxi = calc.wedge(dt, dt).scale(a) + calc.wedge(dt, dr).scale(b) \
        + calc.wedge(dr, dt).scale(b) + calc.wedge(dr, dr).scale(a)

    # Q^2 and its inverse, exactly
    a2 = (Q + QINV) * scalar(1) / 2
    b2 = (Q - QINV) * scalar(1) / 2
    q2inv = ((a2, -b2), (-b2, a2))
    mixed = []
    for i in range(2):
        for j in range(2):
            lhs = diffs[j].lmul(coords[i])
            rhs = calc.zero_one_form()
            for k in range(2):
                rhs = rhs + diffs[k].rmul(coords[i]).scale(q2inv[j][k])
            mixed.append((f"x{i+1} dx{j+1} twisted commutation", lhs - rhs))
    return {
        "quadric": quadric,
        "two_form": xiqxi,
        "mixed": mixed,
    }
