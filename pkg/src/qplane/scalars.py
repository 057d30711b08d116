"""Exact coefficient field of the engine.

Scalars are rational functions in the formal variables r, h, zeta, h0 with
Gaussian-rational coefficients.  r is the basic deformation unit: the familiar
q is derived as q = r^-4 and q^(1/2) as r^-2, so every exponent that shows up
is an integer and no algebraic extension is ever needed.  h is the jordanian
parameter, zeta the flip-family parameter, h0 the jordanian limit variable;
h, zeta and h0 are self-conjugate.

Values are kept in reduced canonical form (coprime numerator/denominator,
no common monomial factor, denominator monic in lex order), so equality of
values is equality of representations.
"""
from __future__ import annotations

from fractions import Fraction

from sympy.polys.domains import QQ as _QQ, QQ_I
from sympy.polys.rings import ring as _sympy_ring

__all__ = [
    "ScalarExpr", "UnitEval", "ScalarError", "DivisionByZero", "PoleError",
    "ParseError", "scalar", "gauss", "monomial", "parse", "qpow", "qhalfpow",
    "ZERO", "ONE", "I", "R", "H", "Z", "H0", "Q", "QINV", "QHALF", "QHALFINV",
]

VAR_NAMES = ("r", "h", "zeta", "h0")
_NVARS = 4
_E0 = (0, 0, 0, 0)

_C0 = QQ_I.zero
_C1 = QQ_I.one
_CI = QQ_I(0, 1)

_RING = _sympy_ring("r,h,zeta,h0", QQ_I)[0]


class ScalarError(Exception):
    pass


class DivisionByZero(ScalarError, ZeroDivisionError):
    pass


class PoleError(ScalarError):
    """Evaluation or substitution hit a zero of the denominator."""


class ParseError(ScalarError):
    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


# ---------------------------------------------------------------------------
# polynomial layer: sparse dicts {exponent 4-tuple: QQ_I coefficient}
# ---------------------------------------------------------------------------

def _coeff(value):
    if isinstance(value, int):
        return QQ_I(value, 0)
    if isinstance(value, Fraction):
        return QQ_I(value, 0)
    if isinstance(value, complex):
        re, im = Fraction(value.real), Fraction(value.imag)
        return QQ_I(re, im)
    return QQ_I.convert(value)


def _padd(a, b):
    out = dict(a)
    for m, c in b.items():
        s = out.get(m)
        s = c if s is None else s + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def _pneg(a):
    return {m: -c for m, c in a.items()}


def _pmul(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for (a0, a1, a2, a3), ca in a.items():
        for (b0, b1, b2, b3), cb in b.items():
            k = (a0 + b0, a1 + b1, a2 + b2, a3 + b3)
            s = out.get(k)
            s = ca * cb if s is None else s + ca * cb
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def _pscale(a, c):
    if not c:
        return {}
    return {m: v * c for m, v in a.items()}


def _pshift(a, shift):
    if shift == _E0:
        return a
    s0, s1, s2, s3 = shift
    return {(m0 + s0, m1 + s1, m2 + s2, m3 + s3): c
            for (m0, m1, m2, m3), c in a.items()}


def _pminexps(a):
    it = iter(a)
    m = list(next(it))
    for e in it:
        for k in range(_NVARS):
            if e[k] < m[k]:
                m[k] = e[k]
    return m


def _pmonic(a):
    lc = a[max(a)]
    if lc == _C1:
        return a
    return {m: c / lc for m, c in a.items()}


def _pquo(a, b):
    """Exact division of polynomial dicts; b must divide a."""
    rem = dict(a)
    quo = {}
    lb = max(b)
    cb = b[lb]
    while rem:
        la = max(rem)
        e = (la[0] - lb[0], la[1] - lb[1], la[2] - lb[2], la[3] - lb[3])
        if min(e) < 0:
            raise ArithmeticError("inexact polynomial division")
        c = rem[la] / cb
        quo[e] = c
        for m, cm in b.items():
            k = (e[0] + m[0], e[1] + m[1], e[2] + m[2], e[3] + m[3])
            s = rem.get(k, _C0) - c * cm
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return quo


_GCD_CACHE = {}
_RING_Q = _sympy_ring("r,h,zeta,h0", _QQ)[0]


def _all_rational(p):
    return all(not c.y for c in p.values())


def _ring_gcd(sa, sb):
    """gcd of content-stripped polynomial dicts, via sympy rings."""
    if _all_rational(sa) and _all_rational(sb):
        pa = _RING_Q.from_dict({m: _QQ.convert(c.x) for m, c in sa.items()})
        pb = _RING_Q.from_dict({m: _QQ.convert(c.x) for m, c in sb.items()})
        return {m: QQ_I(c, 0) for m, c in pa.gcd(pb).terms()}
    ma, mb = _pmonic(sa), _pmonic(sb)
    if _all_rational(ma) and _all_rational(mb):
        pa = _RING_Q.from_dict({m: _QQ.convert(c.x) for m, c in ma.items()})
        pb = _RING_Q.from_dict({m: _QQ.convert(c.x) for m, c in mb.items()})
        return {m: QQ_I(c, 0) for m, c in pa.gcd(pb).terms()}
    pa = _RING.from_dict(sa)
    pb = _RING.from_dict(sb)
    return dict(pa.gcd(pb).terms())


def _pgcd(a, b):
    """Monic gcd of two nonzero polynomial dicts (nonnegative exponents)."""
    if a == b:
        return _pmonic(a)
    ma, mb = _pminexps(a), _pminexps(b)
    common = tuple(min(x, y) for x, y in zip(ma, mb))
    if len(a) == 1 or len(b) == 1:
        return {common: _C1}
    sa = _pshift(a, tuple(-x for x in ma))
    sb = _pshift(b, tuple(-x for x in mb))
    ka, kb = tuple(sorted(sa.items())), tuple(sorted(sb.items()))
    g = _GCD_CACHE.get((ka, kb))
    if g is None:
        g = _pmonic(_ring_gcd(sa, sb))
        _GCD_CACHE[(ka, kb)] = g
    if len(g) == 1 and _E0 in g:
        return {common: _C1}
    return _pshift(g, common)


def _peval(a, point):
    out = 0j
    for (e0, e1, e2, e3), c in a.items():
        mono = point[0] ** e0 * point[1] ** e1 * point[2] ** e2 * point[3] ** e3
        out += (float(c.x) + 1j * float(c.y)) * mono
    return out


# ---------------------------------------------------------------------------
# the field
# ---------------------------------------------------------------------------

class ScalarExpr:
    """An element of Q(i)(r, h, zeta, h0) in reduced canonical form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den, _reduced=False):
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            self.num = {}
            self.den = {_E0: _C1}
            self._hash = None
            return
        mins = _pminexps(num)
        for k, e in enumerate(_pminexps(den)):
            if e < mins[k]:
                mins[k] = e
        if any(mins):
            shift = tuple(-x for x in mins)
            num = _pshift(num, shift)
            den = _pshift(den, shift)
        if not _reduced and den != {_E0: _C1}:
            g = _pgcd(num, den)
            if len(g) > 1 or max(g) != _E0:
                num = _pquo(num, g)
                den = _pquo(den, g)
        lc = den[max(den)]
        if lc != _C1:
            num = {m: c / lc for m, c in num.items()}
            den = {m: c / lc for m, c in den.items()}
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_const(c):
        c = _coeff(c)
        return ScalarExpr({_E0: c} if c else {}, {_E0: _C1}, _reduced=True)

    @staticmethod
    def variable(index, power=1):
        if power >= 0:
            e = tuple(power if k == index else 0 for k in range(_NVARS))
            return ScalarExpr({e: _C1}, {_E0: _C1}, _reduced=True)
        e = tuple(-power if k == index else 0 for k in range(_NVARS))
        return ScalarExpr({_E0: _C1}, {e: _C1}, _reduced=True)

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self):
        return not self.num

    @property
    def is_one(self):
        return self.num == self.den

    def is_unit_monomial(self):
        """True for c * r^k h^l zeta^m h0^n with a single term over a single term."""
        return len(self.num) == 1 and len(self.den) == 1

    def __bool__(self):
        return bool(self.num)

    # -- ring/field operations ----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ScalarExpr):
            return other
        if isinstance(other, (int, Fraction)):
            return ScalarExpr.from_const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num:
            return o
        if not o.num:
            return self
        d1, d2 = self.den, o.den
        if d1 == d2:
            return ScalarExpr(_padd(self.num, o.num), dict(d1))
        if d1 == {_E0: _C1}:
            return ScalarExpr(_padd(_pmul(self.num, d2), o.num), dict(d2), _reduced=True)
        if d2 == {_E0: _C1}:
            return ScalarExpr(_padd(self.num, _pmul(o.num, d1)), dict(d1), _reduced=True)
        # Henrici addition: reduce against gcd of the denominators only
        g = _pgcd(d1, d2)
        if len(g) == 1 and max(g) == _E0:
            num = _padd(_pmul(self.num, d2), _pmul(o.num, d1))
            return ScalarExpr(num, _pmul(d1, d2), _reduced=True)
        d1g, d2g = _pquo(d1, g), _pquo(d2, g)
        t = _padd(_pmul(self.num, d2g), _pmul(o.num, d1g))
        if not t:
            return ZERO
        g2 = _pgcd(t, g)
        if len(g2) > 1 or max(g2) != _E0:
            t = _pquo(t, g2)
            den = _pmul(_pquo(d1, g2), d2g)
        else:
            den = _pmul(d1, d2g)
        return ScalarExpr(t, den, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        out = ScalarExpr.__new__(ScalarExpr)
        out.num = _pneg(self.num)
        out.den = self.den
        out._hash = None
        return out

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return ZERO
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if d2 != {_E0: _C1}:
            g = _pgcd(n1, d2)
            if len(g) > 1 or max(g) != _E0:
                n1, d2 = _pquo(n1, g), _pquo(d2, g)
        if d1 != {_E0: _C1}:
            g = _pgcd(n2, d1)
            if len(g) > 1 or max(g) != _E0:
                n2, d1 = _pquo(n2, g), _pquo(d1, g)
        return ScalarExpr(_pmul(n1, n2), _pmul(d1, d2), _reduced=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise DivisionByZero("division by zero scalar")
        inv = ScalarExpr.__new__(ScalarExpr)
        inv.num, inv.den, inv._hash = o.den, o.num, None
        # restore monic-denominator convention before multiplying
        return self * ScalarExpr(dict(inv.num), dict(inv.den), _reduced=True)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            return ONE
        base = self
        if n < 0:
            base = ONE / self
            n = -n
        out = base
        for _ in range(n - 1):
            out = out * base
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(sorted(self.num.items())),
                               tuple(sorted(self.den.items()))))
        return self._hash

    # -- involution ---------------------------------------------------------

    def star(self):
        """Conjugate-linear involution: i -> -i, r -> 1/r; h, zeta, h0 fixed."""
        num = {(-e0, e1, e2, e3): QQ_I(c.x, -c.y)
               for (e0, e1, e2, e3), c in self.num.items()}
        den = {(-e0, e1, e2, e3): QQ_I(c.x, -c.y)
               for (e0, e1, e2, e3), c in self.den.items()}
        return ScalarExpr(num, den, _reduced=True)

    # -- substitution and evaluation ----------------------------------------

    def subst(self, index, value):
        """Exact substitution of one variable by a rational or a ScalarExpr."""
        if isinstance(value, (int, Fraction)):
            value = ScalarExpr.from_const(value)
        num = _subst_poly(self.num, index, value)
        den = _subst_poly(self.den, index, value)
        if den.is_zero:
            if num.is_zero:
                raise ArithmeticError("indeterminate substitution 0/0")
            raise PoleError(f"pole at {VAR_NAMES[index]} substitution")
        return num / den

    def eval(self, at):
        """Numeric evaluation at a UnitEval point."""
        point = (at.qtilde, complex(at.h), complex(at.z), complex(at.h0))
        dv = _peval(self.den, point)
        nv = _peval(self.num, point)
        scale = max(abs(c.x) + abs(c.y) for c in self.den.values())
        if abs(dv) <= 1e-12 * float(scale):
            raise PoleError("pole at evaluation point")
        return nv / dv

    # -- degree bookkeeping in h0 (jordanian limits) --------------------------

    def h0_weight(self):
        """Growth order as h0 -> infinity; None for the zero scalar."""
        if not self.num:
            return None
        return max(e[3] for e in self.num) - max(e[3] for e in self.den)

    def h0_leading(self):
        """Leading coefficient as h0 -> infinity, with its growth order."""
        if not self.num:
            return None, ZERO
        dn = max(e[3] for e in self.num)
        dd = max(e[3] for e in self.den)
        num = {(e0, e1, e2, 0): c for (e0, e1, e2, e3), c in self.num.items() if e3 == dn}
        den = {(e0, e1, e2, 0): c for (e0, e1, e2, e3), c in self.den.items() if e3 == dd}
        return dn - dd, ScalarExpr(num, den)

    # -- display -------------------------------------------------------------

    def __str__(self):
        if not self.num:
            return "0"
        ns = _poly_str(self.num)
        if self.den == {_E0: _C1}:
            return ns
        return f"({ns})/({_poly_str(self.den)})"

    def __repr__(self):
        return f"ScalarExpr({self})"


def _subst_poly(poly, index, value):
    out = ZERO
    powers = {0: ONE}
    for e, c in poly.items():
        k = e[index]
        p = powers.get(k)
        if p is None:
            p = value ** k
            powers[k] = p
        rest = list(e)
        rest[index] = 0
        mono = ScalarExpr({tuple(rest): c}, {_E0: _C1}, _reduced=True)
        out = out + mono * p
    return out


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def _coeff_str(c):
    a, b = c.x, c.y
    if b == 0:
        return str(Fraction(a.numerator, a.denominator))
    if a == 0:
        if b == 1:
            return "i"
        if b == -1:
            return "-i"
        return f"{Fraction(b.numerator, b.denominator)}*i"
    sb = "+" if b > 0 else "-"
    babs = abs(Fraction(b.numerator, b.denominator))
    bs = "i" if babs == 1 else f"{babs}*i"
    return f"({Fraction(a.numerator, a.denominator)} {sb} {bs})"


def _poly_str(poly):
    parts = []
    for e in sorted(poly, reverse=True):
        c = poly[e]
        mono = "*".join(
            f"{VAR_NAMES[k]}^{e[k]}" if e[k] != 1 else VAR_NAMES[k]
            for k in range(_NVARS) if e[k]
        )
        cs = _coeff_str(c)
        if not mono:
            term = cs
        elif cs == "1":
            term = mono
        elif cs == "-1":
            term = f"-{mono}"
        else:
            term = f"{cs}*{mono}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        if term.startswith("-"):
            out += f" - {term[1:]}"
        else:
            out += f" + {term}"
    return out


# ---------------------------------------------------------------------------
# parsing: expr := term (('+'|'-') term)*; term := factor (('*'|'/') factor)*;
# factor := base ('^' int)?; base := int | 'i' | 'r' | 'q' | 'h' | 'zeta'
#         | 'h0' | '(' expr ')' | 'q^(1/2)' | 'q^(-1/2)'
# ---------------------------------------------------------------------------

def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            tokens.append(("int", int(text[start:pos]), start))
            continue
        if ch.isalpha():
            start = pos
            while pos < n and (text[pos].isalnum() or text[pos] == "_"):
                pos += 1
            tokens.append(("name", text[start:pos], start))
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, pos))
            pos += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", pos)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def next(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def expr(self):
        sign = 1
        if self.peek()[0] == "-":
            self.next()
            sign = -1
        elif self.peek()[0] == "+":
            self.next()
        out = self.term()
        if sign < 0:
            out = -out
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.next()[0]
            rhs = self.factor()
            if op == "*":
                out = out * rhs
            else:
                if rhs.is_zero:
                    raise DivisionByZero("division by zero scalar")
                out = out / rhs
        return out

    def factor(self):
        base, is_q = self.base()
        if self.peek()[0] == "^":
            self.next()
            if is_q and self.peek()[0] == "(":
                return base ** self._half_exponent()
            sign = 1
            if self.peek()[0] == "-":
                self.next()
                sign = -1
            tok = self.expect("int")
            return base ** (sign * tok[1])
        return base

    def _half_exponent(self):
        # the q^(1/2), q^(-1/2) literals; base is r^-2 here
        self.expect("(")
        sign = 1
        if self.peek()[0] == "-":
            self.next()
            sign = -1
        tok = self.expect("int")
        if tok[1] != 1:
            raise ParseError("only half-integer exponents 1/2 are allowed", tok[2])
        self.expect("/")
        tok = self.expect("int")
        if tok[1] != 2:
            raise ParseError("only half-integer exponents 1/2 are allowed", tok[2])
        self.expect(")")
        return sign

    def base(self):
        tok = self.next()
        kind, value, pos = tok
        if kind == "int":
            return ScalarExpr.from_const(value), False
        if kind == "(":
            out = self.expr()
            self.expect(")")
            return out, False
        if kind == "name":
            if value == "i":
                return I, False
            if value == "r":
                return R, False
            if value == "h":
                return H, False
            if value == "zeta":
                return Z, False
            if value == "h0":
                return H0, False
            if value == "q":
                # q^(1/2) must keep integer exponents: hand back r^-2 with a
                # doubled-exponent marker consumed by factor()
                if self.peek()[0] == "^" and self.tokens[self.k + 1][0] == "(":
                    return QHALF, True
                return Q, False
            raise ParseError(f"unknown identifier {value!r}", pos)
        raise ParseError(f"unexpected token {value!r}", pos)


def parse(text):
    """Parse an expression in the scalar grammar into canonical form."""
    p = _Parser(text)
    out = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    return out


# ---------------------------------------------------------------------------
# numeric evaluation point
# ---------------------------------------------------------------------------

class UnitEval:
    """Numeric point with |r| = 1 by construction: r = exp(i*angle)."""

    __slots__ = ("angle", "h", "z", "h0")

    def __init__(self, angle, h=0.0, z=0.0, h0=0.0):
        self.angle = float(angle)
        self.h = float(h)
        self.z = float(z)
        self.h0 = float(h0)

    @property
    def qtilde(self):
        import cmath
        return cmath.exp(1j * self.angle)

    @property
    def q(self):
        return self.qtilde ** -4

    @property
    def deformed(self):
        """q-tilde^4 != 1, the regime where the inner derivations exist."""
        return abs(self.qtilde ** 4 - 1.0) > 1e-12


# ---------------------------------------------------------------------------
# shared constants and convenience constructors
# ---------------------------------------------------------------------------

ZERO = ScalarExpr({}, {_E0: _C1}, _reduced=True)
ONE = ScalarExpr({_E0: _C1}, {_E0: _C1}, _reduced=True)
I = ScalarExpr({_E0: _CI}, {_E0: _C1}, _reduced=True)
R = ScalarExpr.variable(0)
H = ScalarExpr.variable(1)
Z = ScalarExpr.variable(2)
H0 = ScalarExpr.variable(3)
Q = ScalarExpr.variable(0, -4)
QINV = ScalarExpr.variable(0, 4)
QHALF = ScalarExpr.variable(0, -2)
QHALFINV = ScalarExpr.variable(0, 2)


def scalar(value):
    """Coerce an int or Fraction into the field."""
    return ScalarExpr.from_const(value)


def gauss(re, im):
    """Gaussian-rational constant re + im*i."""
    return ScalarExpr.from_const(QQ_I(Fraction(re), Fraction(im)))


def monomial(coeff, er=0, eh=0, ez=0, eh0=0):
    c = _coeff(coeff)
    if not c:
        return ZERO
    pos = tuple(max(e, 0) for e in (er, eh, ez, eh0))
    neg = tuple(max(-e, 0) for e in (er, eh, ez, eh0))
    return ScalarExpr({pos: c}, {neg: _C1}, _reduced=True)


def qpow(n):
    """q^n as a scalar."""
    return ScalarExpr.variable(0, -4 * n)


def qhalfpow(n):
    """q^(n/2) as a scalar."""
    return ScalarExpr.variable(0, -2 * n)
