"""Group presentations and words in their generators.

Syntax accepted::

    <a,b,c: a^3=b^3=c^4=[a,b]=[a,c]=[b,c]=1>
    <a,b,c,d | a^3=b^3=c^2=d^2=1, da=ac, cda=ad>

``[u,v]`` is the commutator ``u^-1 v^-1 u v``.  Braces in exponents
(``a^{-1}``) are accepted and ignored, as is whitespace.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "ParseError",
    "Word",
    "Presentation",
    "parse_presentation",
    "parse_word",
    "reduce_factors",
]


class ParseError(ValueError):
    """Syntax error or undeclared generator, with a character position."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


Factor = tuple[int, int]


def reduce_factors(factors) -> tuple[Factor, ...]:
    """Free reduction: merge equal neighbours, drop zero exponents."""
    stack: list[Factor] = []
    for gen, exp in factors:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            e = stack[-1][1] + exp
            stack.pop()
            if e:
                stack.append((gen, e))
        else:
            stack.append((gen, exp))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    factors: tuple[Factor, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", reduce_factors(self.factors))

    def __mul__(self, other: Word) -> Word:
        return Word(self.factors + other.factors)

    def inverse(self) -> Word:
        return Word(tuple((g, -e) for g, e in reversed(self.factors)))

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.factors)

    def letters(self) -> list[int]:
        """Expand to a list of letters; generator i is 2i, its inverse 2i+1."""
        out = []
        for g, e in self.factors:
            out.extend([2 * g + (e < 0)] * abs(e))
        return out

    def render(self, generators: Sequence[str]) -> str:
        if not self.factors:
            return "1"
        parts = []
        for g, e in self.factors:
            parts.append(generators[g] if e == 1 else f"{generators[g]}^{e}")
        return "*".join(parts)


def commutator(u: Word, v: Word) -> Word:
    return u.inverse() * v.inverse() * u * v


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def render(self) -> str:
        rels = ", ".join(r.render(self.generators) for r in self.relators)
        return f"<{','.join(self.generators)}: {rels}>"

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)


class _Parser:
    def __init__(self, text: str, generators: Sequence[str] | None = None):
        self.text = text
        self.pos = 0
        self.gens = {name: i for i, name in enumerate(generators or ())}

    def error(self, msg: str, pos: int | None = None):
        raise ParseError(msg, self.pos if pos is None else pos, self.text)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n{}":
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, chars: str) -> str:
        c = self.peek()
        if not c or c not in chars:
            found = repr(c) if c else "end of input"
            self.error(f"expected {' or '.join(repr(ch) for ch in chars)}, found {found}")
        self.pos += 1
        return c

    def at_end(self) -> bool:
        return self.peek() == ""

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
            self.skip()
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.error("expected integer exponent", start)
        return int(self.text[start:self.pos].replace(" ", "").replace("{", "").replace("}", ""))

    def name(self) -> str:
        c = self.peek()
        if not (len(c) == 1 and "a" <= c <= "z"):
            self.error(f"expected generator name, found {c!r}" if c else "expected generator name")
        self.pos += 1
        return c

    def generator(self) -> int:
        pos = self.pos
        self.skip()
        pos = self.pos
        name = self.name()
        if name not in self.gens:
            self.error(f"undeclared generator {name!r}", pos)
        return self.gens[name]

    def factor(self) -> Word:
        c = self.peek()
        if c == "[":
            self.pos += 1
            u = self.word()
            self.expect(",")
            v = self.word()
            self.expect("]")
            return commutator(u, v)
        g = self.generator()
        exp = 1
        if self.peek() == "^":
            self.pos += 1
            pos = self.pos
            exp = self.integer()
            if exp == 0:
                self.error("exponent must be nonzero", pos)
        return Word(((g, exp),))

    def word(self) -> Word:
        if self.peek() == "1":
            self.pos += 1
            return Word()
        w = self.factor()
        while True:
            c = self.peek()
            if c == "*":
                self.pos += 1
                w = w * self.factor()
            elif c == "[" or (len(c) == 1 and "a" <= c <= "z"):
                w = w * self.factor()
            else:
                return w

    def relation(self) -> list[Word]:
        words = [self.word()]
        while self.peek() == "=":
            self.pos += 1
            words.append(self.word())
        if len(words) == 1:
            return words
        last = words[-1]
        return [w * last.inverse() for w in words[:-1]]

    def presentation(self) -> Presentation:
        self.expect("<")
        names = [self.name()]
        while self.peek() == ",":
            self.pos += 1
            pos = self.pos
            n = self.name()
            if n in names:
                self.error(f"duplicate generator {n!r}", pos)
            names.append(n)
        self.gens = {n: i for i, n in enumerate(names)}
        self.expect(":|")
        relators = self.relation()
        while self.peek() == ",":
            self.pos += 1
            relators.extend(self.relation())
        self.expect(">")
        if not self.at_end():
            self.error("trailing input after '>'")
        return Presentation(tuple(names), tuple(r for r in relators if r.factors))


def parse_presentation(text: str) -> Presentation:
    p = _Parser(text)
    if p.peek() == "<":
        # give a clear message for "<:" / "<>" instead of a generic one
        save = p.pos
        p.pos += 1
        if p.peek() in (":", "|", ">"):
            p.error("empty generator list")
        p.pos = save
    return p.presentation()


def parse_word(text: str, generators: Sequence[str]) -> Word:
    p = _Parser(text, generators)
    w = p.word()
    if not p.at_end():
        p.error(f"unexpected {p.peek()!r}")
    return w
