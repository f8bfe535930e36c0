"""Exact scalars: rationals (``fractions.Fraction``) and rational functions in ``q``.

Rational functions are stored as a reduced pair of polynomials over the
rationals with a monic denominator, so equality is structural.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

Poly = tuple  # tuple[Fraction, ...], lowest degree first, no trailing zeros

_ZERO: Poly = ()
_ONE: Poly = (Fraction(1),)


def _trim(p) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(p: Poly, r: Poly) -> Poly:
    if len(p) < len(r):
        p, r = r, p
    out = list(p)
    for i, c in enumerate(r):
        out[i] += c
    return _trim(out)


def _pneg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def _pmul(p: Poly, r: Poly) -> Poly:
    if not p or not r:
        return _ZERO
    out = [Fraction(0)] * (len(p) + len(r) - 1)
    for i, c in enumerate(p):
        if c:
            for j, d in enumerate(r):
                out[i + j] += c * d
    return _trim(out)


def _pscale(p: Poly, c) -> Poly:
    if c == 0:
        return _ZERO
    return tuple(x * c for x in p)


def _pdivmod(p: Poly, r: Poly) -> tuple[Poly, Poly]:
    if not r:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [Fraction(0)] * max(len(p) - len(r) + 1, 0)
    lead = r[-1]
    while len(rem) >= len(r) and rem:
        shift = len(rem) - len(r)
        c = rem[-1] / lead
        quo[shift] = c
        for i, d in enumerate(r):
            rem[shift + i] -= c * d
        rem = list(_trim(rem))
    return _trim(quo), _trim(rem)


def _pmonic(p: Poly) -> Poly:
    if not p:
        return p
    lead = p[-1]
    return tuple(c / lead for c in p)


def _pgcd(p: Poly, r: Poly) -> Poly:
    while r:
        p, r = r, _pdivmod(p, r)[1]
    return _pmonic(p)


def _peval(p: Poly, x):
    acc = Fraction(0) if not isinstance(x, RationalFunction) else RationalFunction(_ZERO)
    for c in reversed(p):
        acc = acc * x + c
    return acc


class RationalFunction:
    """Element of Q(q) in canonical reduced form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=_ONE, *, normalized: bool = False):
        num = tuple(Fraction(c) for c in num)
        den = tuple(Fraction(c) for c in den)
        if not normalized:
            num, den = _trim(num), _trim(den)
            if not den:
                raise ZeroDivisionError("rational function with zero denominator")
            if not num:
                den = _ONE
            else:
                g = _pgcd(num, den)
                if len(g) > 1:
                    num = _pdivmod(num, g)[0]
                    den = _pdivmod(den, g)[0]
                lead = den[-1]
                if lead != 1:
                    num = _pscale(num, 1 / lead)
                    den = _pscale(den, 1 / lead)
        self.num = num
        self.den = den

    @classmethod
    def q(cls) -> "RationalFunction":
        return cls((Fraction(0), Fraction(1)), _ONE, normalized=True)

    @classmethod
    def const(cls, c) -> "RationalFunction":
        c = Fraction(c)
        return cls((c,) if c else _ZERO, _ONE, normalized=True)

    # -- predicates -------------------------------------------------------
    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0] if self.num else Fraction(0)

    def evaluate(self, x):
        """Substitute ``q := x``; raises ZeroDivisionError at a pole."""
        d = _peval(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"{self} has a pole at q = {x}")
        return _peval(self.num, x) / d

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFunction(_padd(self.num, o.num), self.den)
        return RationalFunction(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)), _pmul(self.den, o.den)
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(_pneg(self.num), self.den, normalized=True)

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RationalFunction(_ZERO)
            return RationalFunction(_pscale(self.num, Fraction(other)), self.den, normalized=True)
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return RationalFunction(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return RationalFunction(_ONE) / (self ** (-k))
        out = RationalFunction(_ONE)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _coerce(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction)):
        return RationalFunction.const(x)
    return NotImplemented


Scalar = Union[Fraction, RationalFunction]


def is_symbolic(x) -> bool:
    return isinstance(x, RationalFunction) and not x.is_constant()


def exact_div(a, b):
    """Exact quotient; integers must divide evenly."""
    if isinstance(a, int) and isinstance(b, int):
        quo, rem = divmod(a, b)
        if rem:
            raise ArithmeticError(f"{a} is not divisible by {b}")
        return quo
    return a / b


# -- formatting and parsing -------------------------------------------------


def _format_poly(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = "q" if k == 1 else f"q^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_scalar(x) -> str:
    """Canonical string; rationals as ``n`` or ``n/d``, functions in ``q``."""
    if isinstance(x, RationalFunction):
        if x.den == _ONE:
            return _format_poly(x.num)
        return f"({_format_poly(x.num)})/({_format_poly(x.den)})"
    return str(Fraction(x))


_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|([-+*/^()]))")


class ScalarParseError(ValueError):
    pass


def parse_scalar(text: str, q=None):
    """Parse ``"3/4"``, ``"-1/q"``, ``"(q^2 + 1)/(q)"`` ...

    ``q=None`` keeps ``q`` symbolic; otherwise it is substituted.  Results
    free of ``q`` come back as ``Fraction``.
    """
    text = str(text)
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ScalarParseError(f"bad scalar {text!r} at position {pos}")
        tokens.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    qval = RationalFunction.q() if q is None else q
    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else None

    def take():
        nonlocal idx
        tok = peek()
        if tok is None:
            raise ScalarParseError(f"unexpected end of {text!r}")
        idx += 1
        return tok

    def expr():
        val = term()
        while peek() in ("+", "-"):
            op = take()
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = unary()
        while True:
            tok = peek()
            if tok in ("*", "/"):
                take()
                rhs = unary()
                if tok == "*":
                    val = val * rhs
                else:
                    if rhs == 0:
                        raise ScalarParseError(f"division by zero in {text!r}")
                    val = val / rhs
            elif tok == "q" or tok == "(":
                val = val * unary()
            else:
                return val

    def unary():
        if peek() == "-":
            take()
            return -unary()
        if peek() == "+":
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == "^":
            take()
            neg = False
            if peek() == "-":
                take()
                neg = True
            tok = take()
            if not tok.isdigit():
                raise ScalarParseError(f"bad exponent in {text!r}")
            k = int(tok)
            if neg:
                if base == 0:
                    raise ScalarParseError(f"division by zero in {text!r}")
                return Fraction(1) / base**k if not isinstance(base, RationalFunction) else base ** (-k)
            return base**k
        return base

    def atom():
        tok = take()
        if tok.isdigit():
            return Fraction(int(tok))
        if tok == "q":
            return qval
        if tok == "(":
            val = expr()
            if take() != ")":
                raise ScalarParseError(f"unbalanced parentheses in {text!r}")
            return val
        raise ScalarParseError(f"unexpected token {tok!r} in {text!r}")

    if not tokens:
        raise ScalarParseError("empty scalar")
    value = expr()
    if idx != len(tokens):
        raise ScalarParseError(f"trailing input in {text!r}")
    return simplify(value)


def simplify(x):
    """Collapse constant rational functions to ``Fraction``."""
    if isinstance(x, RationalFunction):
        return x.constant_value() if x.is_constant() else x
    return Fraction(x)


def specialize(x, q_value):
    """Evaluate a scalar at ``q = q_value``; rationals pass through."""
    if isinstance(x, RationalFunction):
        return simplify(x.evaluate(q_value))
    return x
