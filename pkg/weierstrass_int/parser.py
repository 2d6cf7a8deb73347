"""
Parser module – surface syntax for elements of K and for q.

Grammar (whitespace-insensitive)::

    expr     :: term [ ('+' | '-') term ]*
    term     :: factor [ ('*' | '/') factor ]*
    factor   :: base [ '^' integer ]
    base     :: rational | atom | '(' expr ')' | '-' base
    rational :: integer [ '/' integer ]

For elements the atoms are ``p`` (t = ℘), ``p'`` (t' = ℘') and ``z``; for
q-strings they are ``t`` and ``z``.  Unary minus applies to a base, so
``-p^2`` is (−p)² and −(p²) is written ``-(p^2)``.  Implicit
multiplication is rejected.
"""

from __future__ import annotations

import logging
from typing import Any, Callable, Dict, List

from pyparsing import (
    Forward,
    ParseBaseException,
    Opt,
    Regex,
    Suppress,
    Word,
    ZeroOrMore,
    nums,
    one_of,
)

from weierstrass_int.arith import ZGEN, BigRational, rational
from weierstrass_int.errors import InvalidField, ParseError
from weierstrass_int.field import FieldCtx, KElem
from weierstrass_int.polyt import T_POLY, PolyT, RatFunT

logger = logging.getLogger("weierstrass_int.parser")


class ExpressionParser:
    """Recursive-descent grammar evaluating directly into a field of values.

    Parameters
    ----------
    atoms : dict
        Maps each atom name to its value.
    lift : callable
        Embeds an exact rational into the value field.
    """

    def __init__(self, atoms: Dict[str, Any], lift: Callable[[BigRational], Any]) -> None:
        self.atoms = atoms
        self.lift = lift

        expr = Forward()
        base = Forward()
        lpar, rpar = Suppress("("), Suppress(")")

        number = Regex(r"\d+(?:/\d+)?").set_parse_action(self._push_rational)
        atom = one_of(list(atoms)).set_parse_action(lambda t: self.atoms[t[0]])
        negated = (Suppress("-") + base).set_parse_action(lambda t: -t[0])
        base <<= number | atom | (lpar + expr + rpar) | negated
        factor = (base + Opt(Suppress("^") + Word(nums))).set_parse_action(self._push_power)
        term = (factor + ZeroOrMore(one_of("* /") + factor)).set_parse_action(self._fold)
        expr <<= (term + ZeroOrMore(one_of("+ -") + term)).set_parse_action(self._fold)
        self.bnf = expr

    # ── Parse actions ────────────────────────────────────────

    def _push_rational(self, tokens) -> Any:
        num, _, den = tokens[0].partition("/")
        return self.lift(rational(int(num), int(den or 1)))

    @staticmethod
    def _push_power(tokens) -> Any:
        if len(tokens) == 1:
            return tokens[0]
        return tokens[0] ** int(tokens[1])

    @staticmethod
    def _fold(tokens) -> Any:
        items: List[Any] = list(tokens)
        acc = items[0]
        for op, operand in zip(items[1::2], items[2::2]):
            if op == "+":
                acc = acc + operand
            elif op == "-":
                acc = acc - operand
            elif op == "*":
                acc = acc * operand
            else:
                acc = acc / operand
        return acc

    # ── Entry point ──────────────────────────────────────────

    def parse(self, text: str) -> Any:
        """Parse and evaluate *text*.

        Raises
        ------
        ParseError
            On a syntax error, with the byte offset into the UTF-8 text.
        DivisionByZero
            When the expression divides by zero.
        """
        try:
            result = self.bnf.parse_string(text, parse_all=True)
        except ParseBaseException as exc:
            raise ParseError(exc.msg, _byte_offset(text, exc.loc)) from exc
        return result[0]


def _byte_offset(text: str, loc: int) -> int:
    return len(text[:loc].encode("utf-8"))


def parse_expr(text: str, ctx: FieldCtx) -> KElem:
    """Parse a ℘-expression (atoms p, p', z) into an element of K."""
    parser = ExpressionParser(
        {"p": ctx.t, "p'": ctx.y, "z": ctx.elem(ZGEN)},
        ctx.elem,
    )
    value = parser.parse(text)
    logger.debug("Parsed %r -> %s", text, value)
    return value


def parse_q(text: str) -> PolyT:
    """Parse a q-string (atoms t, z) into a polynomial in t.

    Raises
    ------
    InvalidField
        If the expression is not a polynomial in t.
    """
    parser = ExpressionParser({"t": RatFunT(T_POLY), "z": RatFunT.lift(ZGEN)}, RatFunT.lift)
    value = parser.parse(text)
    if not value.is_poly:
        raise InvalidField(f"q must be a polynomial in t, got {value}")
    return value.num


_RATIONAL = Regex(r"-?\d+(?:/\d+)?")


def parse_rational(text: str) -> BigRational:
    """Parse an exact rational such as ``-4`` or ``3/2``."""
    try:
        token = _RATIONAL.parse_string(text, parse_all=True)[0]
    except ParseBaseException as exc:
        offset = _byte_offset(text, exc.loc)
        raise ParseError(f"not a rational number: {text!r}", offset) from exc
    num, _, den = token.partition("/")
    return rational(int(num), int(den or 1))
