"""Sparse homogeneous multivariate polynomials over an exact field.

The ring R = k[x_0, ..., x_n] carries the standard grading.  Polynomials are
immutable term sequences kept strictly decreasing in the ring's monomial
order, with no zero coefficients, so equal polynomials compare equal
structurally.
"""

from __future__ import annotations

import re
from math import comb

from .field import QQ, FieldError


class RingError(ValueError):
    pass


class ParseError(RingError):
    pass


class _Sentinel:
    __slots__ = ("label",)

    def __init__(self, label):
        self.label = label

    def __repr__(self):
        return self.label


#: homogeneous_degree sentinels: the zero polynomial has no degree, and a
#: mixed-degree polynomial has none either.
ZERO = _Sentinel("ZERO")
NOT_HOMOGENEOUS = _Sentinel("NOT_HOMOGENEOUS")


class Monomial:
    """Exponent vector with cached total degree."""

    __slots__ = ("exponents", "total_degree")

    def __init__(self, exponents):
        exps = tuple(exponents)
        if any(e < 0 for e in exps):
            raise RingError("negative exponent")
        self.exponents = exps
        self.total_degree = sum(exps)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exponents == other.exponents

    def __hash__(self):
        return hash(self.exponents)

    def __repr__(self):
        return f"Monomial{self.exponents}"

    def mul(self, other):
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def divides(self, other):
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def div(self, other):
        if not other.divides(self):
            raise RingError("inexact monomial division")
        return Monomial(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def lcm(self, other):
        return Monomial(tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

    def is_one(self):
        return self.total_degree == 0


def _grevlex_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


def _lex_key(exps):
    return exps


def _elim_last_key(exps):
    # Block order eliminating the last variable: its exponent dominates.
    return (exps[-1], _grevlex_key(exps[:-1]))


_ORDER_KEYS = {
    "grevlex": _grevlex_key,
    "lex": _lex_key,
    "elim_last": _elim_last_key,
}


class PolyRing:
    """k[x_0,...,x_n] with a fixed monomial order ("grevlex" or "lex")."""

    def __init__(self, variables, field=QQ, order="grevlex", _allow_small=False):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise RingError("variable names must be distinct")
        if len(variables) < 3 and not _allow_small:
            raise RingError("need at least 3 variables (projective space of dim >= 2)")
        if order not in _ORDER_KEYS:
            raise RingError(f"unknown monomial order {order!r}")
        self.variables = variables
        self.field = field
        self.order = order
        self.nvars = len(variables)
        self._key = _ORDER_KEYS[order]
        self._var_index = {v: i for i, v in enumerate(variables)}

    def __repr__(self):
        return f"PolyRing({','.join(self.variables)}; {self.field.name}; {self.order})"

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.variables, self.field, self.order))

    def monomial_key(self, m):
        return self._key(m.exponents)

    def with_order(self, order):
        return PolyRing(self.variables, self.field, order, _allow_small=True)

    # -- construction ----------------------------------------------------

    def zero(self):
        return Polynomial(self, ())

    def one(self):
        return self.constant(self.field.one)

    def constant(self, c):
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, ((Monomial((0,) * self.nvars), c),))

    def variable(self, i):
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, ((Monomial(tuple(exps)), self.field.one),))

    def gens(self):
        return tuple(self.variable(i) for i in range(self.nvars))

    def from_terms(self, pairs):
        """Canonicalize arbitrary (Monomial, coeff) pairs into a Polynomial."""
        acc = {}
        for m, c in pairs:
            if m.exponents in acc:
                acc[m.exponents] = self.field.add(acc[m.exponents], c)
            else:
                acc[m.exponents] = c
        terms = [
            (Monomial(e), c) for e, c in acc.items() if not self.field.is_zero(c)
        ]
        terms.sort(key=lambda t: self._key(t[0].exponents), reverse=True)
        return Polynomial(self, tuple(terms))

    def monomials_of_degree(self, d):
        """All monomials of total degree d, decreasing in the ring order."""
        if d < 0:
            return []
        out = []

        def rec(prefix, remaining, pos):
            if pos == self.nvars - 1:
                out.append(Monomial(tuple(prefix + [remaining])))
                return
            for e in range(remaining, -1, -1):
                rec(prefix + [e], remaining - e, pos + 1)

        rec([], d, 0)
        out.sort(key=lambda m: self._key(m.exponents), reverse=True)
        return out

    def dim_of_degree(self, d):
        """dim_k R_d = C(d + n, n)."""
        if d < 0:
            return 0
        return comb(d + self.nvars - 1, self.nvars - 1)

    # -- parsing ---------------------------------------------------------

    _TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+|\^|\*|\+|-|/)")

    def parse(self, text):
        """Parse `expr := term (('+'|'-') term)*` with `a/b` coefficients.

        Terms are products of an optional coefficient and variable powers;
        a leading sign on the first term is accepted so printed output
        parses back.
        """
        tokens = []
        pos = 0
        while pos < len(text):
            m = self._TOKEN.match(text, pos)
            if m is None:
                if text[pos:].strip() == "":
                    break
                raise ParseError(f"malformed token at {text[pos:]!r}")
            tokens.append(m.group(1))
            pos = m.end()
        if not tokens:
            raise ParseError("empty polynomial text")
        return _PolyParser(self, tokens).parse()

    # -- printing ---------------------------------------------------------

    def format_monomial(self, m):
        parts = [
            self.variables[i] if e == 1 else f"{self.variables[i]}^{e}"
            for i, e in enumerate(m.exponents)
            if e > 0
        ]
        return "*".join(parts)

    def format_poly(self, p):
        if not p.terms:
            return "0"
        field = self.field
        chunks = []
        for idx, (m, c) in enumerate(p.terms):
            neg = self._coeff_is_negative(c)
            mag = field.neg(c) if neg else c
            body = self._format_term(m, mag)
            if idx == 0:
                chunks.append(("-" if neg else "") + body)
            else:
                chunks.append((" - " if neg else " + ") + body)
        return "".join(chunks)

    def _coeff_is_negative(self, c):
        if self.field.characteristic == 0:
            return c < 0
        return False

    def _format_term(self, m, coeff):
        if m.is_one():
            return self.field.to_str(coeff)
        if self.field.eq(coeff, self.field.one):
            return self.format_monomial(m)
        return f"{self.field.to_str(coeff)}*{self.format_monomial(m)}"


class _PolyParser:
    def __init__(self, ring, tokens):
        self.ring = ring
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self):
        result = self.parse_term(allow_sign=True)
        while self.peek() in ("+", "-"):
            op = self.next()
            term = self.parse_term(allow_sign=False)
            result = result + (term if op == "+" else -term)
        if self.peek() is not None:
            raise ParseError(f"unexpected token {self.peek()!r}")
        return result

    def parse_term(self, allow_sign):
        sign = 1
        if allow_sign and self.peek() in ("+", "-"):
            if self.next() == "-":
                sign = -1
        factors = [self.parse_factor()]
        while self.peek() == "*":
            self.next()
            factors.append(self.parse_factor())
        result = factors[0]
        for f in factors[1:]:
            result = result * f
        if sign < 0:
            result = -result
        return result

    def parse_factor(self):
        tok = self.next()
        if tok is None:
            raise ParseError("unexpected end of input")
        if tok.isdigit() or (tok.startswith("-") and tok[1:].isdigit()):
            num = int(tok)
            if self.peek() == "/":
                self.next()
                den_tok = self.next()
                if den_tok is None or not den_tok.isdigit():
                    raise ParseError("malformed rational coefficient")
                try:
                    c = self.ring.field.from_fraction(num, int(den_tok))
                except FieldError as e:
                    raise ParseError(str(e))
                return self.ring.constant(c)
            return self.ring.constant(self.ring.field.from_int(num))
        if tok in self.ring._var_index:
            i = self.ring._var_index[tok]
            exp = 1
            if self.peek() == "^":
                self.next()
                e_tok = self.next()
                if e_tok is None or not e_tok.isdigit():
                    raise ParseError("malformed exponent")
                exp = int(e_tok)
            exps = [0] * self.ring.nvars
            exps[i] = exp
            return Polynomial(
                self.ring, ((Monomial(tuple(exps)), self.ring.field.one),)
            )
        if tok.isidentifier():
            raise ParseError(f"unknown variable {tok!r}")
        raise ParseError(f"malformed token {tok!r}")


class Polynomial:
    """Immutable sparse polynomial; terms sorted decreasing in ring order."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- basics -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def leading_term(self):
        if not self.terms:
            raise RingError("zero polynomial has no leading term")
        return self.terms[0]

    def leading_monomial(self):
        return self.leading_term()[0]

    def leading_coeff(self):
        return self.leading_term()[1]

    def coeff_of(self, m):
        for mm, c in self.terms:
            if mm == m:
                return c
        return self.ring.field.zero

    def monic(self):
        if self.is_zero():
            return self
        lc = self.leading_coeff()
        if self.ring.field.eq(lc, self.ring.field.one):
            return self
        inv = self.ring.field.inv(lc)
        return Polynomial(
            self.ring,
            tuple((m, self.ring.field.mul(c, inv)) for m, c in self.terms),
        )

    def homogeneous_degree(self):
        """Total degree if homogeneous, else NOT_HOMOGENEOUS; ZERO for 0."""
        if not self.terms:
            return ZERO
        d = self.terms[0][0].total_degree
        for m, _ in self.terms[1:]:
            if m.total_degree != d:
                return NOT_HOMOGENEOUS
        return d

    def is_homogeneous(self):
        return not isinstance(self.homogeneous_degree(), _Sentinel) or self.is_zero()

    def total_degree(self):
        if not self.terms:
            return ZERO
        return max(m.total_degree for m, _ in self.terms)

    # -- arithmetic --------------------------------------------------------

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingError("ring mismatch")

    def __add__(self, other):
        self._check_ring(other)
        return self.ring.from_terms(self.terms + other.terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial(self.ring, tuple((m, neg(c)) for m, c in self.terms))

    def __mul__(self, other):
        self._check_ring(other)
        field = self.ring.field
        acc = {}
        for m1, c1 in self.terms:
            e1 = m1.exponents
            for m2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, m2.exponents))
                c = field.mul(c1, c2)
                if e in acc:
                    acc[e] = field.add(acc[e], c)
                else:
                    acc[e] = c
        terms = [(Monomial(e), c) for e, c in acc.items() if not field.is_zero(c)]
        terms.sort(key=lambda t: self.ring._key(t[0].exponents), reverse=True)
        return Polynomial(self.ring, tuple(terms))

    def scale(self, c):
        field = self.ring.field
        if field.is_zero(c):
            return self.ring.zero()
        return Polynomial(
            self.ring, tuple((m, field.mul(cc, c)) for m, cc in self.terms)
        )

    def mul_term(self, m, c):
        """Multiply by the single term c*m (order is preserved)."""
        field = self.ring.field
        if field.is_zero(c):
            return self.ring.zero()
        me = m.exponents
        return Polynomial(
            self.ring,
            tuple(
                (Monomial(tuple(a + b for a, b in zip(me, mm.exponents))), field.mul(cc, c))
                for mm, cc in self.terms
            ),
        )

    def __pow__(self, k):
        if k < 0:
            raise RingError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, self.terms))

    def __repr__(self):
        return self.ring.format_poly(self)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, point):
        """Exact substitution at a vector of field elements."""
        if len(point) != self.ring.nvars:
            raise RingError("point length must match variable count")
        field = self.ring.field
        total = field.zero
        for m, c in self.terms:
            val = c
            for e, x in zip(m.exponents, point):
                for _ in range(e):
                    val = field.mul(val, x)
            total = field.add(total, val)
        return total

    # -- exact division -------------------------------------------------------

    def exact_div(self, g):
        """Quotient self/g when g divides exactly; raises otherwise."""
        if g.is_zero():
            raise RingError("division by zero polynomial")
        field = self.ring.field
        rem = self
        q_terms = []
        lm, lc = g.leading_term()
        while not rem.is_zero():
            rm, rc = rem.leading_term()
            if not lm.divides(rm):
                raise RingError("inexact polynomial division")
            qm = rm.div(lm)
            qc = field.div(rc, lc)
            q_terms.append((qm, qc))
            rem = rem - g.mul_term(qm, qc)
        return self.ring.from_terms(q_terms)

    def change_order(self, ring):
        """Reinterpret in a ring with the same variables/field, other order."""
        if ring.variables != self.ring.variables or ring.field != self.ring.field:
            raise RingError("incompatible ring for order change")
        return ring.from_terms(self.terms)


# -- functional wrappers matching the operation-style API ----------------------


def parse_polynomial(text, ring):
    return ring.parse(text)


def poly_arith(kind, p, q):
    if kind == "add":
        return p + q
    if kind == "mul":
        return p * q
    if kind == "scale":
        return p.scale(q)
    raise RingError(f"unknown arithmetic kind {kind!r}")


def homogeneous_degree(p):
    return p.homogeneous_degree()


def evaluate(p, point):
    return p.evaluate(point)


def random_homogeneous(ring, degree, rng, bound=10, allow_zero=False):
    """Random homogeneous form of the given degree with seeded coefficients."""
    while True:
        terms = [
            (m, ring.field.random(rng, bound)) for m in ring.monomials_of_degree(degree)
        ]
        p = ring.from_terms(terms)
        if allow_zero or not p.is_zero() or degree < 0:
            return p
