"""Front end for the sqrt-Pi combinator language.

Value types are finite types built from 0, 1, + and *.  Combinators are
built from the primitive isomorphisms below, the square-root primitives
v / vi / w / wi, sequencing ``;``, and the two parallel compositions
``+`` and ``*``.

Concrete grammar (ASCII)::

    term  ::= seq [":" type "<->" type]
    seq   ::= sum (";" sum)*
    sum   ::= prod ("+" prod)*          (right associative)
    prod  ::= atom ("*" atom)*          (right associative)
    atom  ::= name | "?" name | "(" term ")"
    type  ::= tsum
    tsum  ::= tprod ("+" tprod)*        (right associative)
    tprod ::= tatom ("*" tatom)*        (right associative)
    tatom ::= "0" | "1" | "2" | "(" type ")"

``;`` binds loosest, then ``+``, then ``*``.  ``2`` is sugar for ``1+1``.
``?name`` is a rewrite-pattern metavariable, accepted only when parsing
patterns.  ``#`` starts a comment that runs to end of line.  Identifiers
other than primitive names resolve through the gate-macro table when
macro expansion is requested.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union


# ---------------------------------------------------------------------------
# value types


@dataclass(frozen=True)
class Zero:
    def __repr__(self) -> str:
        return "Zero"


@dataclass(frozen=True)
class One:
    def __repr__(self) -> str:
        return "One"


@dataclass(frozen=True)
class Sum:
    left: "ValueType"
    right: "ValueType"


@dataclass(frozen=True)
class Prod:
    left: "ValueType"
    right: "ValueType"


@dataclass(frozen=True)
class TVar:
    """Unification metavariable; never appears in a checked type."""

    id: int


ValueType = Union[Zero, One, Sum, Prod, TVar]

ZERO_T = Zero()
ONE_T = One()
BOOL = Sum(ONE_T, ONE_T)


def dimension(t: ValueType) -> int:
    if isinstance(t, Zero):
        return 0
    if isinstance(t, One):
        return 1
    if isinstance(t, Sum):
        return dimension(t.left) + dimension(t.right)
    if isinstance(t, Prod):
        return dimension(t.left) * dimension(t.right)
    raise TypeError(f"dimension of open type {t!r}")


def type_str(t: ValueType, level: int = 0) -> str:
    """Render a type; reparses to the same tree. Levels: 0 sum, 1 prod, 2 atom."""
    if t == BOOL:
        return "2"
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, TVar):
        return f"t{t.id}"
    if isinstance(t, Sum):
        s = f"{type_str(t.left, 1)}+{type_str(t.right, 0)}"
        return f"({s})" if level > 0 else s
    s = f"{type_str(t.left, 2)}*{type_str(t.right, 1)}"
    return f"({s})" if level > 1 else s


# ---------------------------------------------------------------------------
# combinator AST


@dataclass(frozen=True)
class Prim:
    name: str
    loc: Optional[tuple[int, int]] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Seq:
    first: "Combinator"
    second: "Combinator"
    loc: Optional[tuple[int, int]] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SumC:
    left: "Combinator"
    right: "Combinator"
    loc: Optional[tuple[int, int]] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ProdC:
    left: "Combinator"
    right: "Combinator"
    loc: Optional[tuple[int, int]] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Ann:
    """Type-annotated subterm ``(c : src <-> tgt)``."""

    term: "Combinator"
    src: ValueType
    tgt: ValueType
    loc: Optional[tuple[int, int]] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class MetaVar:
    """Pattern hole; only valid inside rewrite-rule patterns."""

    name: str
    loc: Optional[tuple[int, int]] = field(default=None, compare=False, repr=False)


Combinator = Union[Prim, Seq, SumC, ProdC, Ann, MetaVar]


def seq(*cs: Combinator) -> Combinator:
    """Right-nested sequential composition of one or more combinators."""
    if not cs:
        raise ValueError("empty sequence")
    out = cs[-1]
    for c in reversed(cs[:-1]):
        out = Seq(c, out)
    return out


# primitive typing schemes, one row per primitive (a, b, c are metavariables)
_A, _B, _C = TVar(-1), TVar(-2), TVar(-3)

SCHEMES: dict[str, tuple[ValueType, ValueType]] = {
    "id": (_A, _A),
    "swap+": (Sum(_A, _B), Sum(_B, _A)),
    "assocr+": (Sum(Sum(_A, _B), _C), Sum(_A, Sum(_B, _C))),
    "assocl+": (Sum(_A, Sum(_B, _C)), Sum(Sum(_A, _B), _C)),
    "unite+l": (Sum(ZERO_T, _A), _A),
    "uniti+l": (_A, Sum(ZERO_T, _A)),
    "swap*": (Prod(_A, _B), Prod(_B, _A)),
    "assocr*": (Prod(Prod(_A, _B), _C), Prod(_A, Prod(_B, _C))),
    "assocl*": (Prod(_A, Prod(_B, _C)), Prod(Prod(_A, _B), _C)),
    "unite*l": (Prod(ONE_T, _A), _A),
    "uniti*l": (_A, Prod(ONE_T, _A)),
    "dist": (Prod(Sum(_A, _B), _C), Sum(Prod(_A, _C), Prod(_B, _C))),
    "factor": (Sum(Prod(_A, _C), Prod(_B, _C)), Prod(Sum(_A, _B), _C)),
    "absorbl": (Prod(_A, ZERO_T), ZERO_T),
    "factorzr": (ZERO_T, Prod(_A, ZERO_T)),
    "v": (BOOL, BOOL),
    "vi": (BOOL, BOOL),
    "w": (ONE_T, ONE_T),
    "wi": (ONE_T, ONE_T),
}

PRIMITIVES = tuple(SCHEMES)

_DUAL = {
    "id": "id",
    "swap+": "swap+",
    "assocr+": "assocl+",
    "assocl+": "assocr+",
    "unite+l": "uniti+l",
    "uniti+l": "unite+l",
    "swap*": "swap*",
    "assocr*": "assocl*",
    "assocl*": "assocr*",
    "unite*l": "uniti*l",
    "uniti*l": "unite*l",
    "dist": "factor",
    "factor": "dist",
    "absorbl": "factorzr",
    "factorzr": "absorbl",
    "v": "vi",
    "vi": "v",
    "w": "wi",
    "wi": "w",
}


def invert(c: Combinator) -> Combinator:
    """Syntactic dagger: primitives map to their duals, Seq reverses."""
    if isinstance(c, Prim):
        return Prim(_DUAL[c.name])
    if isinstance(c, Seq):
        return Seq(invert(c.second), invert(c.first))
    if isinstance(c, SumC):
        return SumC(invert(c.left), invert(c.right))
    if isinstance(c, ProdC):
        return ProdC(invert(c.left), invert(c.right))
    if isinstance(c, Ann):
        return Ann(invert(c.term), c.tgt, c.src)
    if isinstance(c, MetaVar):
        return c
    raise TypeError(f"cannot invert {c!r}")


def pretty(c: Combinator, level: int = 0) -> str:
    """Render a combinator; reparses to an equal AST (locations aside).

    Levels: 0 seq, 1 sum, 2 prod, 3 atom.
    """
    if isinstance(c, Prim):
        return c.name
    if isinstance(c, MetaVar):
        return f"?{c.name}"
    if isinstance(c, Ann):
        return f"({pretty(c.term)} : {type_str(c.src)} <-> {type_str(c.tgt)})"
    if isinstance(c, Seq):
        s = f"{pretty(c.first, 1)} ; {pretty(c.second, 0)}"
        return f"({s})" if level > 0 else s
    if isinstance(c, SumC):
        s = f"{pretty(c.left, 2)} + {pretty(c.right, 1)}"
        return f"({s})" if level > 1 else s
    if isinstance(c, ProdC):
        s = f"{pretty(c.left, 3)} * {pretty(c.right, 2)}"
        return f"({s})" if level > 2 else s
    raise TypeError(f"cannot print {c!r}")


# ---------------------------------------------------------------------------
# errors


class SqrtPiError(Exception):
    pass


class ParseError(SqrtPiError):
    def __init__(self, msg: str, line: int, col: int, expected: tuple[str, ...] = ()):
        self.line, self.col, self.expected = line, col, expected
        tail = f" (expected one of: {', '.join(expected)})" if expected else ""
        super().__init__(f"{line}:{col}: {msg}{tail}")


class TypeCheckError(SqrtPiError):
    pass


class UnificationFailure(TypeCheckError):
    def __init__(self, t1: ValueType, t2: ValueType, node: Optional[Combinator]):
        self.t1, self.t2, self.node = t1, t2, node
        where = f" at `{pretty(node)}`" if node is not None else ""
        super().__init__(
            f"cannot unify {type_str(t1)} with {type_str(t2)}{where}"
        )


class UnresolvedMetavariable(TypeCheckError):
    def __init__(self, node: Combinator):
        self.node = node
        super().__init__(
            f"type of `{pretty(node)}` is not fully determined; "
            "add an annotation or an expected type"
        )


# ---------------------------------------------------------------------------
# tokenizer / parser

_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r\n]+)
      | (?P<comment>\#[^\n]*)
      | (?P<arrow><->)
      | (?P<compound>(?:swap|assocr|assocl|unite|uniti)[+*][lr]?)
      | (?P<name>[A-Za-z][A-Za-z0-9_]*)
      | (?P<num>\d+)
      | (?P<meta>\?[A-Za-z][A-Za-z0-9_]*)
      | (?P<sym>[;+*():,=])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup or ""
        raw = m.group()
        if kind not in ("ws", "comment"):
            k = "name" if kind == "compound" else kind
            toks.append(_Tok(k, raw, line, col))
        nl = raw.count("\n")
        if nl:
            line += nl
            col = len(raw) - raw.rfind("\n")
        else:
            col += len(raw)
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(
        self,
        toks: list[_Tok],
        macros: Optional[dict[str, Combinator]],
        allow_metavars: bool,
    ):
        self.toks = toks
        self.pos = 0
        self.macros = macros
        self.allow_metavars = allow_metavars

    @property
    def cur(self) -> _Tok:
        return self.toks[self.pos]

    def _advance(self) -> _Tok:
        t = self.cur
        self.pos += 1
        return t

    def _expect(self, text: str) -> _Tok:
        if self.cur.text != text:
            raise ParseError(
                f"unexpected {self.cur.text!r}" if self.cur.kind != "eof" else "unexpected end of input",
                self.cur.line,
                self.cur.col,
                expected=(repr(text),),
            )
        return self._advance()

    # terms

    def term(self) -> Combinator:
        t = self.seq()
        if self.cur.text == ":":
            self._advance()
            src = self.type_()
            self._expect("<->")
            tgt = self.type_()
            return Ann(t, src, tgt)
        return t

    def seq(self) -> Combinator:
        parts = [self.sum()]
        while self.cur.text == ";":
            self._advance()
            parts.append(self.sum())
        return seq(*parts)

    def sum(self) -> Combinator:
        left = self.prod()
        if self.cur.text == "+":
            tok = self._advance()
            return SumC(left, self.sum(), loc=(tok.line, tok.col))
        return left

    def prod(self) -> Combinator:
        left = self.atom()
        if self.cur.text == "*":
            tok = self._advance()
            return ProdC(left, self.prod(), loc=(tok.line, tok.col))
        return left

    def atom(self) -> Combinator:
        t = self.cur
        if t.text == "(":
            self._advance()
            inner = self.term()
            self._expect(")")
            return inner
        if t.kind == "meta":
            if not self.allow_metavars:
                raise ParseError("pattern variable outside a pattern", t.line, t.col)
            self._advance()
            return MetaVar(t.text[1:], loc=(t.line, t.col))
        if t.kind == "name":
            self._advance()
            if t.text in SCHEMES:
                return Prim(t.text, loc=(t.line, t.col))
            if self.macros is not None and t.text in self.macros:
                return self.macros[t.text]
            hint = ("a primitive or gate name",) if self.macros is not None else (
                "a primitive name (pass expand_macros=True for gate names)",
            )
            raise ParseError(f"unknown name {t.text!r}", t.line, t.col, expected=hint)
        raise ParseError(
            f"unexpected {t.text!r}" if t.kind != "eof" else "unexpected end of input",
            t.line,
            t.col,
            expected=("name", "'('", "'?var'"),
        )

    # types

    def type_(self) -> ValueType:
        left = self.tprod()
        if self.cur.text == "+":
            self._advance()
            return Sum(left, self.type_())
        return left

    def tprod(self) -> ValueType:
        left = self.tatom()
        if self.cur.text == "*":
            self._advance()
            return Prod(left, self.tprod())
        return left

    def tatom(self) -> ValueType:
        t = self.cur
        if t.text == "(":
            self._advance()
            inner = self.type_()
            self._expect(")")
            return inner
        if t.kind == "num":
            self._advance()
            if t.text == "0":
                return ZERO_T
            if t.text == "1":
                return ONE_T
            if t.text == "2":
                return BOOL
            raise ParseError(f"unknown type literal {t.text!r}", t.line, t.col,
                             expected=("0", "1", "2"))
        raise ParseError(
            f"unexpected {t.text!r} in type" if t.kind != "eof" else "unexpected end of input",
            t.line,
            t.col,
            expected=("0", "1", "2", "'('"),
        )


def parse(
    text: str,
    expand_macros: bool = False,
    allow_metavars: bool = False,
) -> Combinator:
    """Parse surface syntax into an (untyped) combinator AST."""
    macros = None
    if expand_macros:
        from . import gates  # late import; gates builds terms via this module

        macros = gates.macro_table()
    p = _Parser(_tokenize(text), macros, allow_metavars)
    t = p.term()
    if p.cur.kind != "eof":
        raise ParseError(f"trailing input {p.cur.text!r}", p.cur.line, p.cur.col)
    return t


def parse_type(text: str) -> ValueType:
    p = _Parser(_tokenize(text), None, False)
    t = p.type_()
    if p.cur.kind != "eof":
        raise ParseError(f"trailing input {p.cur.text!r}", p.cur.line, p.cur.col)
    return t


def parse_type_pair(text: str) -> tuple[ValueType, ValueType]:
    """Parse ``type <-> type``."""
    p = _Parser(_tokenize(text), None, False)
    src = p.type_()
    p._expect("<->")
    tgt = p.type_()
    if p.cur.kind != "eof":
        raise ParseError(f"trailing input {p.cur.text!r}", p.cur.line, p.cur.col)
    return src, tgt


# ---------------------------------------------------------------------------
# type checking (first-order unification over {0,1,+,*})


@dataclass(frozen=True)
class Typed:
    """A combinator node annotated with concrete source and target types."""

    term: Combinator
    src: ValueType
    tgt: ValueType
    children: tuple["Typed", ...] = ()


class _Unifier:
    def __init__(self) -> None:
        self.subst: dict[int, ValueType] = {}
        self.counter = 0

    def fresh(self) -> TVar:
        self.counter += 1
        return TVar(self.counter)

    def find(self, t: ValueType) -> ValueType:
        while isinstance(t, TVar) and t.id in self.subst:
            t = self.subst[t.id]
        return t

    def resolve(self, t: ValueType) -> ValueType:
        t = self.find(t)
        if isinstance(t, Sum):
            return Sum(self.resolve(t.left), self.resolve(t.right))
        if isinstance(t, Prod):
            return Prod(self.resolve(t.left), self.resolve(t.right))
        return t

    def _occurs(self, v: TVar, t: ValueType) -> bool:
        t = self.find(t)
        if isinstance(t, TVar):
            return t.id == v.id
        if isinstance(t, (Sum, Prod)):
            return self._occurs(v, t.left) or self._occurs(v, t.right)
        return False

    def unify(self, a: ValueType, b: ValueType, node: Optional[Combinator]) -> None:
        a, b = self.find(a), self.find(b)
        if isinstance(a, TVar) and isinstance(b, TVar) and a.id == b.id:
            return
        if isinstance(a, TVar):
            if self._occurs(a, b):
                raise UnificationFailure(self.resolve(a), self.resolve(b), node)
            self.subst[a.id] = b
            return
        if isinstance(b, TVar):
            self.unify(b, a, node)
            return
        if isinstance(a, Zero) and isinstance(b, Zero):
            return
        if isinstance(a, One) and isinstance(b, One):
            return
        if type(a) is type(b) and isinstance(a, (Sum, Prod)):
            self.unify(a.left, b.left, node)
            self.unify(a.right, b.right, node)
            return
        raise UnificationFailure(self.resolve(a), self.resolve(b), node)

    def instantiate(self, t: ValueType, mapping: dict[int, TVar]) -> ValueType:
        if isinstance(t, TVar):
            if t.id not in mapping:
                mapping[t.id] = self.fresh()
            return mapping[t.id]
        if isinstance(t, Sum):
            return Sum(self.instantiate(t.left, mapping), self.instantiate(t.right, mapping))
        if isinstance(t, Prod):
            return Prod(self.instantiate(t.left, mapping), self.instantiate(t.right, mapping))
        return t


def typecheck(
    c: Combinator,
    expected: Optional[tuple[ValueType, ValueType]] = None,
) -> Typed:
    """Infer concrete types for every node; returns the annotated tree.

    Raises UnificationFailure on a type clash and UnresolvedMetavariable if
    the term stays polymorphic after inference (supply ``expected`` or add
    annotations in that case).
    """
    u = _Unifier()

    def infer(node: Combinator) -> Typed:
        if isinstance(node, MetaVar):
            raise TypeCheckError(f"cannot typecheck pattern variable ?{node.name}")
        if isinstance(node, Prim):
            mapping: dict[int, TVar] = {}
            src, tgt = SCHEMES[node.name]
            return Typed(node, u.instantiate(src, mapping), u.instantiate(tgt, mapping))
        if isinstance(node, Ann):
            inner = infer(node.term)
            u.unify(inner.src, node.src, node)
            u.unify(inner.tgt, node.tgt, node)
            return Typed(node, node.src, node.tgt, (inner,))
        if isinstance(node, Seq):
            f = infer(node.first)
            g = infer(node.second)
            u.unify(f.tgt, g.src, node)
            return Typed(node, f.src, g.tgt, (f, g))
        if isinstance(node, SumC):
            l, r = infer(node.left), infer(node.right)
            return Typed(node, Sum(l.src, r.src), Sum(l.tgt, r.tgt), (l, r))
        if isinstance(node, ProdC):
            l, r = infer(node.left), infer(node.right)
            return Typed(node, Prod(l.src, r.src), Prod(l.tgt, r.tgt), (l, r))
        raise TypeError(f"cannot typecheck {node!r}")

    root = infer(c)
    if expected is not None:
        u.unify(root.src, expected[0], c)
        u.unify(root.tgt, expected[1], c)

    def resolve(t: Typed) -> Typed:
        src, tgt = u.resolve(t.src), u.resolve(t.tgt)
        if _has_var(src) or _has_var(tgt):
            raise UnresolvedMetavariable(t.term)
        return Typed(t.term, src, tgt, tuple(resolve(ch) for ch in t.children))

    return resolve(root)


def _has_var(t: ValueType) -> bool:
    if isinstance(t, TVar):
        return True
    if isinstance(t, (Sum, Prod)):
        return _has_var(t.left) or _has_var(t.right)
    return False


def strip_ann(c: Combinator) -> Combinator:
    """Erase type annotations (for structural comparisons)."""
    if isinstance(c, Ann):
        return strip_ann(c.term)
    if isinstance(c, Seq):
        return Seq(strip_ann(c.first), strip_ann(c.second))
    if isinstance(c, SumC):
        return SumC(strip_ann(c.left), strip_ann(c.right))
    if isinstance(c, ProdC):
        return ProdC(strip_ann(c.left), strip_ann(c.right))
    return c
