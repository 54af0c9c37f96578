"""Polynomials in the holomorphic variables z_1..z_m with rational
coefficients, plus a small parser for the textual syntax used in config files
("z1*z2", "z1 - z2", "3/2 z1^2 (z2 + 1)").
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .algebra import MultiIndex, rat
from .errors import DomainError, InputError, ShapeError


class Poly:
    """Sparse polynomial: MultiIndex (length nvars) -> nonzero Fraction."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs: Mapping | None = None):
        if nvars < 1:
            raise DomainError(f"polynomial needs at least one variable, got {nvars}")
        self.nvars = nvars
        clean = {}
        if coeffs:
            for key, val in coeffs.items():
                k = key if isinstance(key, MultiIndex) else MultiIndex(key)
                if len(k) != nvars:
                    raise ShapeError(f"exponent {tuple(k)} has wrong arity")
                v = rat(val)
                if v != 0:
                    clean[k] = v
        self.coeffs = clean

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "Poly":
        return Poly(nvars)

    @staticmethod
    def constant(nvars: int, c) -> "Poly":
        return Poly(nvars, {MultiIndex.zero(nvars): c})

    @staticmethod
    def monomial(nvars: int, exps, c=1) -> "Poly":
        return Poly(nvars, {MultiIndex(exps): c})

    @staticmethod
    def variable(nvars: int, i: int) -> "Poly":
        """z_{i+1} as a polynomial (i is 0-based)."""
        return Poly(nvars, {MultiIndex.unit(nvars, i): 1})

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Total degree; zero polynomial reports -1."""
        return max((k.degree for k in self.coeffs), default=-1)

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def monomial_exponent(self) -> MultiIndex:
        if not self.is_monomial():
            raise DomainError(f"{self} is not a monomial")
        return next(iter(self.coeffs))

    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise ShapeError("polynomial variable-count mismatch")

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    __hash__ = None

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k, Fraction(0)) + v
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = rat(other)
            if c == 0:
                return Poly.zero(self.nvars)
            return Poly(self.nvars, {k: c * v for k, v in self.coeffs.items()})
        self._check(other)
        out: dict = {}
        for ka, va in self.coeffs.items():
            for kb, vb in other.coeffs.items():
                k = ka + kb
                s = out.get(k, Fraction(0)) + va * vb
                if s == 0:
                    out.pop(k, None)
                else:
                    out[k] = s
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative polynomial power")
        out = Poly.constant(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def shift_by_monomial(self, exps) -> "Poly":
        """Multiply by z^exps."""
        e = MultiIndex(exps)
        return Poly(self.nvars, {k + e: v for k, v in self.coeffs.items()})

    def evaluate(self, point) -> Fraction:
        vals = [rat(x) for x in point]
        if len(vals) != self.nvars:
            raise ShapeError("evaluation point has wrong arity")
        total = Fraction(0)
        for k, v in self.coeffs.items():
            term = v
            for x, e in zip(vals, k):
                if e:
                    term *= x ** e
            total += term
        return total

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            v = self.coeffs[k]
            factors = []
            for i, e in enumerate(k):
                if e == 1:
                    factors.append(f"z{i+1}")
                elif e > 1:
                    factors.append(f"z{i+1}^{e}")
            if not factors:
                parts.append(str(v))
            elif v == 1:
                parts.append("*".join(factors))
            elif v == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{v}*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self.nvars}: {self})"


# ---------------------------------------------------------------------------
# Parser.  Grammar, with implicit multiplication between adjacent factors:
#
#   expr   := ['+'|'-'] term (('+'|'-') term)*
#   term   := factor (('*')? factor)*
#   factor := atom (('^'|'**') integer)?
#   atom   := rational | variable | '(' expr ')'
#
# rational := digits ('/' digits)? ; variable := 'z' digits (1-based).


class _Tokenizer:
    def __init__(self, text: str, nvars: int):
        self.text = text
        self.nvars = nvars
        self.pos = 0

    def error(self, msg):
        return InputError(f"polynomial syntax: {msg}", column=self.pos + 1)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_number(self) -> Fraction:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        num = int(self.text[start:self.pos])
        if self.pos < len(self.text) and self.text[self.pos] == "/":
            save = self.pos
            self.pos += 1
            dstart = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if dstart == self.pos:
                # a '/' not followed by digits is not division we support
                self.pos = save
                return Fraction(num)
            den = int(self.text[dstart:self.pos])
            if den == 0:
                raise self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def take_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer exponent")
        return int(self.text[start:self.pos])


def parse_poly(text: str, nvars: int) -> Poly:
    """Parse polynomial source into a Poly over z1..z{nvars}."""
    tk = _Tokenizer(text, nvars)

    def parse_expr() -> Poly:
        sign = 1
        c = tk.peek()
        if c in "+-":
            tk.pos += 1
            sign = -1 if c == "-" else 1
        out = parse_term() * sign
        while True:
            c = tk.peek()
            if c == "+":
                tk.pos += 1
                out = out + parse_term()
            elif c == "-":
                tk.pos += 1
                out = out - parse_term()
            else:
                return out

    def parse_term() -> Poly:
        out = parse_factor()
        while True:
            c = tk.peek()
            if c == "*":
                # disambiguate from '**' power on the preceding factor,
                # handled inside parse_factor; here '*' is multiplication
                tk.pos += 1
                out = out * parse_factor()
            elif c.isdigit() or c == "z" or c == "(":
                out = out * parse_factor()
            else:
                return out

    def parse_factor() -> Poly:
        base = parse_atom()
        c = tk.peek()
        if c == "^":
            tk.pos += 1
            return base ** tk.take_int()
        if c == "*" and tk.text[tk.pos:tk.pos + 2] == "**":
            tk.pos += 2
            return base ** tk.take_int()
        return base

    def parse_atom() -> Poly:
        c = tk.peek()
        if c == "(":
            tk.pos += 1
            inner = parse_expr()
            if tk.peek() != ")":
                raise tk.error("expected ')'")
            tk.pos += 1
            return inner
        if c.isdigit():
            return Poly.constant(nvars, tk.take_number())
        if c == "z":
            tk.pos += 1
            start = tk.pos
            while tk.pos < len(tk.text) and tk.text[tk.pos].isdigit():
                tk.pos += 1
            if start == tk.pos:
                raise tk.error("expected a variable index after 'z'")
            idx = int(tk.text[start:tk.pos])
            if not 1 <= idx <= nvars:
                raise InputError(
                    f"variable z{idx} out of range for {nvars} variables",
                    column=start)
            return Poly.variable(nvars, idx - 1)
        if c == "":
            raise tk.error("unexpected end of input")
        raise tk.error(f"unexpected character {c!r}")

    result = parse_expr()
    if tk.peek() != "":
        raise tk.error(f"trailing input {tk.text[tk.pos:]!r}")
    return result
