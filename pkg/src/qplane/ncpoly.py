"""Two-generator q-commuting Laurent algebra with normal ordering.

Elements are finite sums of monomials c * G1^a * G2^b with scalar
coefficients, kept normal-ordered (G1 powers on the left).  A presentation
fixes the generator names and the commutation unit Q in G1 G2 = Q G2 G1;
the quantum plane uses (x, y) with Q = r and (u, v) with Q = r^-4, and the
commutative limits reuse the same machinery with Q = 1.
"""
from __future__ import annotations

import enum
from fractions import Fraction

from .scalars import (
    ScalarExpr, ZERO, ONE, Q, QINV, R, scalar,
)

__all__ = [
    "Presentation", "NCElement", "StarConvention", "PresentationMismatch",
    "XY", "UV", "UV_COMM", "TR_COMM", "WV_COMM",
    "lambda1_uv", "lambda2_uv", "lambda_xy", "embed_uv_in_xy",
    "hermitian_rescaled_uv", "to_tr", "check_xy_quadric",
]


class PresentationMismatch(Exception):
    pass


class Presentation:
    """Generator names plus the commutation unit Q in G1 G2 = Q G2 G1."""

    __slots__ = ("name", "gens", "qunit", "_qpowers")

    def __init__(self, name, gens, qunit):
        self.name = name
        self.gens = gens
        self.qunit = qunit
        self._qpowers = {0: ONE, 1: qunit}

    def qpow(self, n):
        p = self._qpowers.get(n)
        if p is None:
            p = self.qunit ** n
            self._qpowers[n] = p
        return p

    def __repr__(self):
        return f"Presentation({self.name})"


XY = Presentation("xy", ("x", "y"), R)
UV = Presentation("uv", ("u", "v"), Q)
UV_COMM = Presentation("uv-commutative", ("u", "v"), ONE)
# generators below are the sqrt(2)-scaled combinations u+v, u-v
TR_COMM = Presentation("tr-commutative", ("t", "r"), ONE)
# jordanian limit bookkeeping: w stands for u' + h0, vp for v'
WV_COMM = Presentation("jordan-commutative", ("w", "vp"), ONE)


class NCElement:
    """Normal-ordered element: finite map (a, b) -> coefficient."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres, terms):
        self.pres = pres
        self.terms = {e: c for e, c in terms.items() if not c.is_zero}

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(pres):
        return NCElement(pres, {})

    @staticmethod
    def one(pres):
        return NCElement(pres, {(0, 0): ONE})

    @staticmethod
    def monomial(pres, coeff, a, b):
        if isinstance(coeff, (int, Fraction)):
            coeff = scalar(coeff)
        return NCElement(pres, {(a, b): coeff})

    @staticmethod
    def gen1(pres, power=1):
        return NCElement(pres, {(power, 0): ONE})

    @staticmethod
    def gen2(pres, power=1):
        return NCElement(pres, {(0, power): ONE})

    # -- structure -----------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def coeff(self, a, b):
        return self.terms.get((a, b), ZERO)

    def _check(self, other):
        if self.pres is not other.pres:
            raise PresentationMismatch(
                f"{self.pres.name} element mixed with {other.pres.name} element")

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, ScalarExpr)):
            other = NCElement.monomial(self.pres, ONE * other, 0, 0)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero:
                out.pop(e, None)
            else:
                out[e] = s
        return NCElement(self.pres, out)

    __radd__ = __add__

    def __neg__(self):
        return NCElement(self.pres, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, ScalarExpr)):
            other = NCElement.monomial(self.pres, ONE * other, 0, 0)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ScalarExpr)):
            c = ONE * other
            if c.is_zero:
                return NCElement.zero(self.pres)
            return NCElement(self.pres, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        qpow = self.pres.qpow
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                # G2^b1 G1^a2 = Q^(-b1 a2) G1^a2 G2^b1
                c = c1 * c2
                n = -b1 * a2
                if n:
                    c = c * qpow(n)
                e = (a1 + a2, b1 + b2)
                s = out.get(e)
                s = c if s is None else s + c
                if s.is_zero:
                    out.pop(e, None)
                else:
                    out[e] = s
        return NCElement(self.pres, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ScalarExpr)):
            return self * other
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            return NCElement.one(self.pres)
        base = self if n > 0 else self.inverse()
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    def inverse(self):
        """Inverse of a single monomial; general elements are not invertible here."""
        if len(self.terms) != 1:
            raise ArithmeticError("only monomials are invertible")
        (a, b), c = next(iter(self.terms.items()))
        coeff = (ONE / c) * self.pres.qpow(-a * b)
        return NCElement(self.pres, {(-a, -b): coeff})

    def __eq__(self, other):
        if not isinstance(other, NCElement):
            return NotImplemented
        return self.pres is other.pres and self.terms == other.terms

    def __hash__(self):
        return hash((self.pres.name, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    # -- involutions ---------------------------------------------------------

    def star_diagonal(self, alpha, beta):
        """Antimultiplicative star determined by G1* = alpha G1, G2* = beta G2."""
        qpow = self.pres.qpow
        out = {}
        for (a, b), c in self.terms.items():
            s = c.star() * (alpha ** a) * (beta ** b) * qpow(-a * b)
            if not s.is_zero:
                out[(a, b)] = s
        return NCElement(self.pres, out)

    def star(self, convention):
        alpha, beta = convention.factors(self.pres)
        return self.star_diagonal(alpha, beta)

    # -- misc -----------------------------------------------------------------

    def commutator(self, other):
        return self * other - other * self

    def map_coeffs(self, fn, pres=None):
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if not v.is_zero:
                out[e] = v
        return NCElement(pres if pres is not None else self.pres, out)

    def subst_gens(self, img1, img2):
        """Algebra map sending G1, G2 to monomial images (Laurent-safe)."""
        img1._check(img2)
        out = NCElement.zero(img1.pres)
        for (a, b), c in self.terms.items():
            out = out + (img1 ** a) * (img2 ** b) * c
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        g1, g2 = self.pres.gens
        parts = []
        for (a, b) in sorted(self.terms, reverse=True):
            c = self.terms[(a, b)]
            factors = []
            cs = str(c)
            if ("+" in cs[1:]) or ("-" in cs[1:]) or "/" in cs:
                cs = f"({cs})"
            if cs != "1" or (a == 0 and b == 0):
                factors.append(cs)
            if a:
                factors.append(g1 if a == 1 else f"{g1}^{a}")
            if b:
                factors.append(g2 if b == 1 else f"{g2}^{b}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"NCElement<{self.pres.name}>({self})"


class StarConvention(enum.Enum):
    """The two coexisting star structures on the quantum plane."""

    XY_INDUCED = "xy-induced"      # x* = x, y* = y; induces u* = q^-1 u, v* = q^-1 v
    UV_HERMITIAN = "uv-hermitian"  # u* = u, v* = v

    def factors(self, pres):
        if self is StarConvention.XY_INDUCED:
            if pres is XY:
                return ONE, ONE
            if pres is UV:
                return QINV, QINV
            raise PresentationMismatch(f"{self} undefined on {pres.name}")
        if pres is UV:
            return ONE, ONE
        raise PresentationMismatch(f"{self} undefined on {pres.name}")


# ---------------------------------------------------------------------------
# the standard elements
# ---------------------------------------------------------------------------

_LAMBDA_SCALE = ONE / (ONE - QINV)


def lambda1_uv():
    """Inner-derivation generator dual to the first frame leg: (1/(1-q^-1)) v^-1."""
    return NCElement(UV, {(0, -1): _LAMBDA_SCALE})


def lambda2_uv():
    """Inner-derivation generator dual to the second frame leg: -(1/(1-q^-1)) u^-1."""
    return NCElement(UV, {(-1, 0): -_LAMBDA_SCALE})


def embed_uv_in_xy(el, eps1=1, eps2=1):
    """Algebra embedding u -> eps2 r^-2 x^2, v -> eps1 x^2 y^-2."""
    if el.pres is not UV:
        raise PresentationMismatch("embedding is defined on (u, v) elements")
    img_u = NCElement(XY, {(2, 0): scalar(eps2) * (R ** -2)})
    img_v = NCElement(XY, {(2, -2): scalar(eps1)})
    return el.subst_gens(img_u, img_v)


def lambda_xy(eps1=1, eps2=1):
    """The inner-derivation pair pushed to the (x, y) presentation."""
    return (embed_uv_in_xy(lambda1_uv(), eps1, eps2),
            embed_uv_in_xy(lambda2_uv(), eps1, eps2))


def hermitian_rescaled_uv():
    """Phase-rescaled generators u_h = r^2 u, v_h = r^2 v, hermitian under
    the xy-induced star."""
    u_h = NCElement(UV, {(1, 0): R ** 2})
    v_h = NCElement(UV, {(0, 1): R ** 2})
    return u_h, v_h


def to_tr(el):
    """Rewrite a commutative (u, v) polynomial in the light-cone combinations.

    The output generators are the sqrt(2)-scaled t = u + v, r = u - v, so
    all coefficients stay rational.  Only polynomial (nonnegative) powers
    have an image.
    """
    if el.pres.qunit != ONE:
        raise PresentationMismatch("to_tr needs a commutative-limit element")
    if any(a < 0 or b < 0 for a, b in el.terms):
        raise ArithmeticError("negative powers have no polynomial (t, r) image")
    half = scalar(Fraction(1, 2))
    img_u = NCElement(TR_COMM, {(1, 0): half, (0, 1): half})
    img_v = NCElement(TR_COMM, {(1, 0): half, (0, 1): -half})
    out = NCElement.zero(TR_COMM)
    for (a, b), c in el.terms.items():
        out = out + (img_u ** a) * (img_v ** b) * c
    return out


def check_xy_quadric(qmat):
    """Residual of the coordinate relation X^t (sigma2 Q) X = 0 in (u, v).

    qmat is the 2x2 scalar matrix of exact trigonometric surrogates; the
    coordinates are the scaled light-cone combinations t = u + v, r = u - v
    (the relation is homogeneous, so the scale drops out).
    """
    u = NCElement.gen1(UV)
    v = NCElement.gen2(UV)
    t, rr = u + v, u - v
    coords = (t, rr)
    # sigma2 Q = [[-i q21, -i q22], [i q11, i q12]]
    from .scalars import I as IMAG
    m = ((-IMAG * qmat[1][0], -IMAG * qmat[1][1]),
         (IMAG * qmat[0][0], IMAG * qmat[0][1]))
    out = NCElement.zero(UV)
    for i in range(2):
        for j in range(2):
            out = out + coords[i] * coords[j] * m[i][j]
    return out
