"""Parser for the ring-specification language used by every ``--ring`` flag.

Grammar (whitespace-insensitive)::

    spec := term ("x" term)*
    term := "Z" int | "GF(" int ")" | "GF(" int ")[t]/(t^" int ")"

Composite ``Zn`` is split into its prime-power CRT factors as it is parsed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import CapExceeded, NotPrimePower, RingSpecSyntaxError
from .ring import (
    DEFAULT_ORDER_CAP,
    GF,
    TRUNC,
    ZPK,
    FiniteRing,
    LocalRingDesc,
    factorize,
    make_ring,
    prime_power,
    smallest_irreducible,
)


@dataclass(frozen=True)
class Zn:
    n: int

    def render(self) -> str:
        return f"Z{self.n}"


@dataclass(frozen=True)
class GFq:
    q: int

    def render(self) -> str:
        return f"GF({self.q})"


@dataclass(frozen=True)
class GFTrunc:
    q: int
    m: int

    def render(self) -> str:
        return f"GF({self.q})[t]/(t^{self.m})"


Term = Union[Zn, GFq, GFTrunc]


@dataclass(frozen=True)
class RingSpecAst:
    factors: tuple[Term, ...]

    def render(self) -> str:
        return " x ".join(t.render() for t in self.factors)

    @property
    def order(self) -> int:
        return math.prod(_term_order(t) for t in self.factors)

    def descriptors(self) -> list[LocalRingDesc]:
        out: list[LocalRingDesc] = []
        for t in self.factors:
            if isinstance(t, Zn):
                (p, k), = factorize(t.n)
                out.append(ZPK(p, k))
            elif isinstance(t, GFq):
                out.append(GF(*prime_power(t.q)))
            else:
                out.append(TRUNC(t.q, t.m))
        return out


def _term_order(t: Term) -> int:
    if isinstance(t, Zn):
        return t.n
    if isinstance(t, GFq):
        return t.q
    return t.q**t.m


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def error(self, expected: str):
        self.skip_ws()
        found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
        # offsets always point inside the input; end-of-input errors point at the last byte
        offset = min(self.pos, max(len(self.text) - 1, 0))
        raise RingSpecSyntaxError(f"expected {expected}, found {found!r}", offset, self.text)

    def accept(self, literal: str) -> bool:
        """Match ``literal`` allowing whitespace between its characters."""
        save = self.pos
        for ch in literal:
            self.skip_ws()
            if self.pos < len(self.text) and self.text[self.pos] == ch:
                self.pos += 1
            else:
                self.pos = save
                return False
        return True

    def expect(self, literal: str):
        if not self.accept(literal):
            self.error(repr(literal))

    def integer(self) -> tuple[int, int]:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("an integer")
        return int(self.text[start:self.pos]), start


def parse_ring_spec(text: str, order_cap: int = DEFAULT_ORDER_CAP) -> RingSpecAst:
    lex = _Lexer(text)
    terms: list[Term] = []
    while True:
        terms.extend(_term(lex))
        if lex.at_end():
            break
        lex.expect("x")
    ast = RingSpecAst(tuple(terms))
    if ast.order > order_cap:
        raise CapExceeded("ring order", ast.order, order_cap)
    return ast


def _term(lex: _Lexer) -> list[Term]:
    lex.skip_ws()
    if lex.accept("GF("):
        q, at = lex.integer()
        if prime_power(q) is None:
            raise NotPrimePower(f"GF({q}): {q} is not a prime power", at, lex.text)
        lex.expect(")")
        if lex.accept("[t]/(t^"):
            m, at = lex.integer()
            if m < 1:
                raise RingSpecSyntaxError("truncation exponent must be >= 1", at, lex.text)
            lex.expect(")")
            return [GFTrunc(q, m)]
        return [GFq(q)]
    if lex.accept("Z"):
        n, at = lex.integer()
        if n < 2:
            raise RingSpecSyntaxError(f"Z{n}: modulus must be >= 2", at, lex.text)
        return [Zn(p**e) for p, e in factorize(n)]
    lex.error("'Z' or 'GF('")


def parse_descriptors(text: str, order_cap: int = DEFAULT_ORDER_CAP) -> list[LocalRingDesc]:
    return parse_ring_spec(text, order_cap).descriptors()


def ring_from_spec(text: str, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    return make_ring(parse_descriptors(text, order_cap), order_cap=order_cap)


def render_descriptors(factors) -> str | None:
    """DSL text for a descriptor list, or None if some factor has no DSL form."""
    parts = []
    for d in factors:
        if isinstance(d, ZPK):
            parts.append(f"Z{d.order}")
        elif isinstance(d, GF):
            if d.modulus is not None and tuple(d.modulus) != smallest_irreducible(d.p, d.k):
                return None
            parts.append(f"GF({d.order})")
        elif isinstance(d, TRUNC):
            parts.append(f"GF({d.q})[t]/(t^{d.m})")
        else:
            return None
    return " x ".join(parts)


def ring_to_spec(R: FiniteRing) -> str | None:
    return render_descriptors(R.factors) if R.require_local else None
