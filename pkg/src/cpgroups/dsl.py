"""A small language for naming groups built from catalog atoms.

Grammar::

    spec  := atom | "direct(" spec "," spec ")" | "central(" spec "," spec ";" pairs ")"
    atom  := ("C" | "D" | "S" | "A" | "Dic") "(" int ")" | "Q8" | "Triv"
    pairs := word "=" word { "," word "=" word }
    word  := factor { ["*"] factor }          factor := name ["^" ["-"] int] | "1"

Generator names: ``C(n)`` uses ``x`` as a left operand and ``y`` as a right
operand; ``D(n)``: ``r, s``; ``Q8``: ``i, j``; ``Dic(n)``: ``a, b``;
``S(n)``: ``s1 .. s(n-1)``; ``A(n)``: ``a`` (and ``b`` for n >= 4).  In a
product the right operand's names are primed when they clash with the left
ones.  In an amalgam pair the left word uses the left factor's own names and
the right word the right factor's.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .catalog import catalog_group
from .config import DEFAULT_LIMITS, Limits
from .core import Group, Subgroup
from .errors import GroupError, SpecSyntaxError, ValidationError
from .products import CentralProduct, CentralProductSpec, external_central_product, merge_names

ATOM_KINDS = ("C", "D", "S", "A", "Dic")
BARE_ATOMS = ("Q8", "Triv")
SPEC_START = frozenset(ATOM_KINDS + BARE_ATOMS + ("direct", "central"))
_CHAR_CLASSES = frozenset({"<name>", "<int>", "(", ")", ",", ";", "=", "^", "-", "*"})


@dataclass(frozen=True)
class Word:
    tokens: tuple[tuple[str, int], ...]

    def __str__(self) -> str:
        if not self.tokens:
            return "1"
        return "*".join(nm if p == 1 else f"{nm}^{p}" for nm, p in self.tokens)


@dataclass(frozen=True)
class Atom:
    kind: str
    param: int | None = None
    pos: tuple[int, int] = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class Direct:
    left: "Spec"
    right: "Spec"
    pos: tuple[int, int] = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class Central:
    left: "Spec"
    right: "Spec"
    pairs: tuple[tuple[Word, Word], ...]
    pos: tuple[int, int] = field(default=(1, 1), compare=False)


Spec = Union[Atom, Direct, Central]


def print_spec(node: Spec) -> str:
    if isinstance(node, Atom):
        return node.kind if node.param is None else f"{node.kind}({node.param})"
    if isinstance(node, Direct):
        return f"direct({print_spec(node.left)}, {print_spec(node.right)})"
    pairs = ", ".join(f"{a} = {b}" for a, b in node.pairs)
    return f"central({print_spec(node.left)}, {print_spec(node.right)}; {pairs})"


def atom_names(kind: str, n: int | None, side: str = "left") -> list[str]:
    if kind == "C":
        return [] if n == 1 else (["x"] if side == "left" else ["y"])
    if kind == "D":
        return ["r", "s"]
    if kind == "Q8":
        return ["i", "j"]
    if kind == "Dic":
        return ["a", "b"]
    if kind == "S":
        return [f"s{k}" for k in range(1, n)]
    if kind == "A":
        return [] if n < 3 else (["a"] if n == 3 else ["a", "b"])
    return []


def generator_names(node: Spec, side: str = "left") -> list[str]:
    """Generator names of the group a node evaluates to."""
    if isinstance(node, Atom):
        return atom_names(node.kind, node.param, side)
    left = generator_names(node.left, "left")
    return left + merge_names(left, generator_names(node.right, "right"))


# tokenizer

@dataclass(frozen=True)
class _Tok:
    kind: str  # IDENT INT PUNCT EOF
    text: str
    line: int
    col: int


def _lex(text: str) -> list[_Tok]:
    toks = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        c = text[i]
        if c == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        start = i
        if c.isalpha():
            while i < len(text) and (text[i].isalnum() or text[i] in "_'"):
                i += 1
            kind = "IDENT"
        elif c.isdigit():
            while i < len(text) and text[i].isdigit():
                i += 1
            kind = "INT"
        elif c in "(),;=^*-·":
            i += 1
            kind = "PUNCT"
        else:
            raise SpecSyntaxError(f"unexpected character {c!r}", line, col, _CHAR_CLASSES)
        toks.append(_Tok(kind, text[start:i], line, col))
        col += i - start
    toks.append(_Tok("EOF", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _lex(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, message: str, expected=()) -> SpecSyntaxError:
        t = self.tok
        found = "end of input" if t.kind == "EOF" else repr(t.text)
        return SpecSyntaxError(f"{message}, found {found}", t.line, t.col, frozenset(expected))

    def expect(self, text: str) -> _Tok:
        if self.tok.text != text or self.tok.kind == "EOF":
            raise self.fail("unexpected token", {text})
        t = self.tok
        self.i += 1
        return t

    def integer(self) -> int:
        if self.tok.kind != "INT":
            raise self.fail("expected an integer", {"<int>"})
        v = int(self.tok.text)
        self.i += 1
        return v

    def spec(self) -> Spec:
        t = self.tok
        pos = (t.line, t.col)
        if t.kind != "IDENT" or t.text not in SPEC_START:
            raise self.fail("expected a group", SPEC_START)
        self.i += 1
        if t.text in BARE_ATOMS:
            return Atom(t.text, None, pos)
        if t.text in ATOM_KINDS:
            self.expect("(")
            n = self.integer()
            self.expect(")")
            return Atom(t.text, n, pos)
        self.expect("(")
        left = self.spec()
        self.expect(",")
        right = self.spec()
        if t.text == "direct":
            self.expect(")")
            return Direct(left, right, pos)
        self.expect(";")
        lnames = generator_names(left, "left")
        rnames = generator_names(right, "right")
        pairs = [self.pair(lnames, rnames)]
        while self.tok.text == ",":
            self.i += 1
            pairs.append(self.pair(lnames, rnames))
        self.expect(")")
        return Central(left, right, tuple(pairs), pos)

    def pair(self, lnames, rnames) -> tuple[Word, Word]:
        a = self.word(lnames, "left factor")
        self.expect("=")
        b = self.word(rnames, "right factor")
        return a, b

    def word(self, names: list[str], where: str) -> Word:
        tokens: list[tuple[str, int]] = []
        first = True
        while True:
            t = self.tok
            if t.kind == "PUNCT" and t.text in "*·" and not first:
                self.i += 1
                t = self.tok
            if t.kind == "INT" and t.text == "1":
                self.i += 1
                first = False
                continue
            if t.kind != "IDENT":
                if first:
                    raise self.fail(f"expected a word in the {where}", set(names) | {"1"})
                break
            self.i += 1
            parts = _split_ident(t, names, where)
            if self.tok.text == "^":
                self.i += 1
                sign = 1
                if self.tok.text == "-":
                    sign = -1
                    self.i += 1
                p = sign * self.integer()
                parts[-1] = (parts[-1][0], p)
            tokens.extend(parts)
            first = False
        return Word(tuple(tokens))


def _split_ident(t: _Tok, names: list[str], where: str) -> list[tuple[str, int]]:
    by_len = sorted(names, key=len, reverse=True)
    out = []
    k = 0
    while k < len(t.text):
        m = next((nm for nm in by_len if t.text.startswith(nm, k)), None)
        if m is None:
            raise SpecSyntaxError(
                f"unknown generator in {t.text!r} for the {where}", t.line, t.col + k, frozenset(names)
            )
        out.append((m, 1))
        k += len(m)
    return out


def parse_spec(text: str) -> Spec:
    """Parse a group spec; syntax errors carry line, column and expected tokens."""
    p = _Parser(text)
    node = p.spec()
    if p.tok.kind != "EOF":
        raise p.fail("trailing input", {"<end>"})
    return node


# evaluation

def _located(node: Spec, err: GroupError) -> GroupError:
    line, col = node.pos
    err.args = (f"line {line}, column {col}: {err.args[0] if err.args else err}",) + err.args[1:]
    return err


def _eval_group(node: Spec, side: str, limits: Limits) -> Group:
    if isinstance(node, Atom):
        name = node.kind if node.param is None else f"{node.kind}({node.param})"
        try:
            G = catalog_group(name, limits=limits)
        except GroupError as e:
            raise _located(node, e)
        names = atom_names(node.kind, node.param, side)
        return G.renamed(names) if names != G.gen_names else G
    return _eval_product(node, limits).G


def _word_value(G: Group, w: Word) -> int:
    r = G.identity
    for nm, p in w.tokens:
        r = G.mul(r, G.power(G.generator(nm), p))
    return r


def _eval_product(node: Direct | Central, limits: Limits) -> CentralProduct:
    V1 = _eval_group(node.left, "left", limits)
    V2 = _eval_group(node.right, "right", limits)
    pairs = []
    if isinstance(node, Central):
        pairs = [(_word_value(V1, a), _word_value(V2, b)) for a, b in node.pairs]
    try:
        return external_central_product(CentralProductSpec(V1, V2, pairs), limits=limits)
    except GroupError as e:
        raise _located(node, e)


def evaluate_spec(node: Spec, *, limits: Limits = DEFAULT_LIMITS) -> Group | CentralProduct:
    """Atoms evaluate to a Group, products to a CentralProduct (direct
    products are central products over the trivial group)."""
    if isinstance(node, Atom):
        return _eval_group(node, "left", limits)
    return _eval_product(node, limits)


def diagonal_subgroup(node: Spec, built: CentralProduct) -> Subgroup:
    """``{(g, g)}`` for a product of two identical factors, pushed into G."""
    if isinstance(node, Atom) or print_spec(node.left) != print_spec(node.right):
        raise ValidationError("the diagonal needs a product of two identical factors")
    D = built.D
    gens = [D.pair(a, b) for a, b in zip(D.V1.gen_indices, D.V2.gen_indices)]
    return built.epsilon.image_of(D.group.subgroup(gens))


def subgroup_from_words(G: Group, text: str) -> Subgroup:
    """Subgroup generated by comma-separated words in G's generator names."""
    words = [w for w in text.split(",")]
    if not any(w.strip() for w in words):
        raise ValidationError("no subgroup generators given")
    return G.subgroup(G.parse_word(w) for w in words if w.strip())
