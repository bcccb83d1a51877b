"""Text grammar and JSON serialization for forests, words and combinations.

Grammar::

    tree       := decoration [ '[' forest ']' ]
    forest     := tree { ',' tree } | empty      (top level also accepts spaces)
    decoration := positive integer | 'x' | 'y'
    word       := '(' decoration { ',' decoration } ')' | "xy-string"
    lincomb    := ['-'] term { ('+'|'-') term }
    term       := [rational '*'] (forest | word)
    rational   := int [ '/' int ]

``2[1,3[2]]`` is the tree with root 2 over a leaf 1 and a chain 3-2.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .errors import ParseError
from .lincomb import Coeff, LinComb
from .trees import Forest, Tree
from .words import Word
from .zeta import MzvCombination, MzvEval

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<str>\"[xy]*\")|(?P<sym>[\[\](),+\-*/xy]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}")
            break
        if m.group("num"):
            tokens.append(("num", m.group("num")))
        elif m.group("str"):
            tokens.append(("str", m.group("str")[1:-1]))
        else:
            tokens.append(("sym", m.group("sym")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, sym: str):
        kind, value = self.next()
        if kind != "sym" or value != sym:
            raise ParseError(f"expected {sym!r}, got {value!r}")

    def at_sym(self, *symbols: str) -> bool:
        kind, value = self.peek()
        return kind == "sym" and value in symbols

    def done(self) -> bool:
        return self.pos >= len(self.tokens)

    # decorations and trees ------------------------------------------------

    def at_tree_start(self) -> bool:
        kind, value = self.peek()
        return kind == "num" or (kind == "sym" and value in ("x", "y"))

    def parse_decoration(self):
        kind, value = self.next()
        if kind == "num":
            n = int(value)
            if n < 1:
                raise ParseError(f"decoration must be >= 1, got {n}")
            return n
        if kind == "sym" and value in ("x", "y"):
            return value
        raise ParseError(f"expected a decoration, got {value!r}")

    def parse_tree(self) -> Tree:
        dec = self.parse_decoration()
        children: tuple[Tree, ...] = ()
        if self.at_sym("["):
            self.next()
            children = self.parse_inner_forest().trees
            self.expect("]")
        return Tree(dec, children)

    def parse_inner_forest(self) -> Forest:
        trees: list[Tree] = []
        if self.at_tree_start():
            trees.append(self.parse_tree())
            while self.at_sym(","):
                self.next()
                trees.append(self.parse_tree())
        return Forest(tuple(trees))

    def parse_top_forest(self) -> Forest:
        trees: list[Tree] = []
        while self.at_tree_start() or self.at_sym(","):
            if self.at_sym(","):
                self.next()
                continue
            trees.append(self.parse_tree())
        return Forest(tuple(trees))

    # words ------------------------------------------------------------------

    def parse_word(self) -> Word:
        kind, value = self.peek()
        if kind == "str":
            self.next()
            return Word(tuple(value))
        self.expect("(")
        letters = []
        if not self.at_sym(")"):
            letters.append(self.parse_decoration())
            while self.at_sym(","):
                self.next()
                letters.append(self.parse_decoration())
        self.expect(")")
        return Word(tuple(letters))

    # linear combinations ----------------------------------------------------

    def parse_rational(self) -> Fraction:
        kind, value = self.next()
        if kind != "num":
            raise ParseError(f"expected a number, got {value!r}")
        numerator = int(value)
        if self.at_sym("/"):
            self.next()
            kind, value = self.next()
            if kind != "num":
                raise ParseError(f"expected a denominator, got {value!r}")
            return Fraction(numerator, int(value))
        return Fraction(numerator)

    def parse_term(self):
        coeff = Fraction(1)
        save = self.pos
        kind, _ = self.peek()
        if kind == "num":
            maybe = self.parse_rational()
            if self.at_sym("*"):
                self.next()
                coeff = maybe
            else:
                self.pos = save
        if self.at_sym("(") or self.peek()[0] == "str":
            return coeff, self.parse_word()
        forest = self.parse_top_forest_term()
        return coeff, forest

    def parse_top_forest_term(self) -> Forest:
        return self.parse_top_forest()

    def parse_lincomb(self) -> LinComb:
        out: LinComb = LinComb.zero()
        sign = 1
        if self.at_sym("-"):
            self.next()
            sign = -1
        elif self.at_sym("+"):
            self.next()
        basis_kind = None
        while True:
            coeff, basis = self.parse_term()
            kind = type(basis)
            if basis_kind is None:
                basis_kind = kind
            elif kind is not basis_kind:
                raise ParseError("cannot mix forests and words in one combination")
            out = out + LinComb.of(basis, sign * coeff)
            if self.at_sym("+"):
                self.next()
                sign = 1
            elif self.at_sym("-"):
                self.next()
                sign = -1
            else:
                break
        if not self.done():
            raise ParseError(f"trailing input at {self.peek()[1]!r}")
        return out


def parse_forest(text: str) -> Forest:
    parser = _Parser(text)
    forest = parser.parse_top_forest()
    if not parser.done():
        raise ParseError(f"trailing input at {parser.peek()[1]!r}")
    return forest


def parse_word(text: str) -> Word:
    parser = _Parser(text)
    if parser.done():
        return Word()
    w = parser.parse_word()
    if not parser.done():
        raise ParseError(f"trailing input at {parser.peek()[1]!r}")
    return w


def parse_lincomb(text: str) -> LinComb:
    parser = _Parser(text)
    if parser.done():
        return LinComb.of(Forest())
    return parser.parse_lincomb()


def parse_expression(text: str):
    """Forest, word, or linear combination, whichever the text denotes."""
    stripped = text.strip()
    if not stripped:
        return Forest()
    if stripped.startswith(("(", '"')):
        parser = _Parser(stripped)
        w = parser.parse_word()
        if parser.done():
            return w
    parser = _Parser(stripped)
    comb = parser.parse_lincomb()
    if len(comb) == 1:
        [(basis, coeff)] = list(comb.items())
        if coeff == 1:
            return basis
    return comb


# -- printing ---------------------------------------------------------------------

def format_tree(tree: Tree) -> str:
    if not tree.children:
        return str(tree.decoration)
    inner = ",".join(format_tree(c) for c in tree.children)
    return f"{tree.decoration}[{inner}]"


def format_forest(forest: Forest) -> str:
    return " ".join(format_tree(t) for t in forest.trees)


def format_word(w: Word) -> str:
    if w and all(l in ("x", "y") for l in w.letters):
        return '"' + "".join(w.letters) + '"'
    return "(" + ",".join(str(l) for l in w.letters) + ")"


def format_basis(basis) -> str:
    if isinstance(basis, Forest):
        return format_forest(basis) if basis else "()"
    return format_word(basis)


def format_coeff(coeff: Coeff) -> str:
    return str(coeff)


def format_lincomb(comb: LinComb) -> str:
    if comb.is_zero():
        return "0"
    parts = []
    for basis, coeff in comb.sorted_items():
        text = format_basis(basis)
        if coeff == 1:
            piece = text
        elif coeff == -1:
            piece = f"-{text}"
        else:
            piece = f"{format_coeff(coeff)}*{text}"
        parts.append(piece)
    out = " + ".join(parts)
    return out.replace("+ -", "- ")


def format_combination(comb: MzvCombination) -> str:
    if not comb.terms:
        return "0"
    tag = "zs" if comb.flavor == "star" else "z"
    parts = []
    for index, coeff in comb.sorted_items():
        body = "1" if not index else f"{tag}({','.join(map(str, index))})"
        if coeff == 1:
            parts.append(body)
        elif coeff == -1:
            parts.append(f"-{body}")
        else:
            parts.append(f"{format_coeff(coeff)}*{body}")
    return " + ".join(parts).replace("+ -", "- ")


def format_eval(ev: MzvEval) -> str:
    return f"{ev.value:.10f} ± {ev.abs_error:.3g}"


# -- JSON --------------------------------------------------------------------------

def tree_to_json(tree: Tree) -> dict:
    return {"d": tree.decoration, "c": [tree_to_json(c) for c in tree.children]}

def forest_to_json(forest: Forest) -> list:
    return [tree_to_json(t) for t in forest.trees]


def word_to_json(w: Word) -> dict:
    return {"letters": list(w.letters)}


def basis_to_json(basis):
    if isinstance(basis, Forest):
        return forest_to_json(basis)
    return word_to_json(basis)


def lincomb_to_json(comb: LinComb) -> list:
    return [
        {"coeff": format_coeff(coeff), "basis": basis_to_json(basis)}
        for basis, coeff in comb.sorted_items()
    ]


def combination_to_json(comb: MzvCombination) -> dict:
    return {
        "flavor": comb.flavor,
        "terms": [
            {"coeff": format_coeff(c), "index": list(index)}
            for index, c in comb.sorted_items()
        ],
    }


def eval_to_json(ev) -> dict:
    return {"value": ev.value, "abs_error": ev.abs_error}


def tree_from_json(data: dict) -> Tree:
    return Tree(data["d"], tuple(tree_from_json(c) for c in data.get("c", [])))


def forest_from_json(data: list) -> Forest:
    return Forest(tuple(tree_from_json(t) for t in data))


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=False)
