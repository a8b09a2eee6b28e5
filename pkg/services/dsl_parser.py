"""Parser for the quiver DSL.

    quiver { 1 2 3; a: 1->2; b: 2->3 }
    relations { a*b; }
    module M { dim 1 1 0; map a = [[1]]; }
    chain { step { I3, I2 } ; step { S1 } }
    nsection { class { P2 } ; class { P1, S1 } }

`#` starts a comment. Matrices list one row per target dimension. References in
chain and section blocks are module names, shifted projectives `P3[1]` or
dimension vectors `(1,0,1)`.
"""
import json
import logging
import re
from pathlib import Path as FilePath
from typing import List, NamedTuple, Optional, Sequence

from pydantic import ValidationError

from models.documents import AlgebraDocument, ModuleDocument, WorkbenchDocument
from models.quiver import Arrow, Quiver, Relation, RelationTerm
from services.errors import DslSyntaxError, InputError, UnknownReferenceError
from services.path_algebra import BoundQuiverAlgebra

logger = logging.getLogger(__name__)

TOKEN_RE = re.compile(r"""
    (?P<newline>\n)
  | (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<number>\d+(?:/\d+)?)
  | (?P<ident>[^\W\d]\w*'*)
  | (?P<symbol>[{};:*+\-\[\],=()])
""", re.VERBOSE)

BLOCKS = ("quiver", "relations", "module", "chain", "nsection")


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if m is None:
            raise DslSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "newline":
            line, line_start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    # -- token helpers ------------------------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        return self.peek().text == text and self.peek().kind != "eof"

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.pos += 1
            return True
        return False

    def error(self, message: str, tok: Optional[Token] = None) -> DslSyntaxError:
        tok = tok or self.peek()
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return DslSyntaxError(f"{message}, found {found}", tok.line, tok.column)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        return self.next()

    def expect_kind(self, *kinds: str) -> Token:
        if self.peek().kind not in kinds:
            raise self.error(f"expected {' or '.join(kinds)}")
        return self.next()

    # -- grammar ------------------------------------------------------------------------

    def document(self) -> WorkbenchDocument:
        algebra: Optional[AlgebraDocument] = None
        modules: List[ModuleDocument] = []
        chain: List[List[str]] = []
        sections: List[List[str]] = []
        while self.peek().kind != "eof":
            tok = self.expect_kind("ident")
            if tok.text not in BLOCKS:
                raise self.error(f"expected one of {', '.join(BLOCKS)}", tok)
            if tok.text == "quiver":
                if algebra is not None:
                    raise self.error("second quiver block", tok)
                algebra = self.quiver()
            elif algebra is None:
                raise self.error("the quiver block must come first", tok)
            elif tok.text == "relations":
                algebra.relations.extend(self.relations(algebra))
            elif tok.text == "module":
                modules.append(self.module(algebra))
            elif tok.text == "chain":
                chain.extend(self.reference_groups("step"))
            else:
                sections.extend(self.reference_groups("class"))
        if algebra is None:
            raise DslSyntaxError("missing quiver block", 1, 1)
        return WorkbenchDocument(algebra=algebra, modules=modules, chain=chain, sections=sections)

    def vertex(self) -> Token:
        return self.expect_kind("number", "ident")

    def quiver(self) -> AlgebraDocument:
        self.expect("{")
        vertices: List[str] = []
        while not (self.at(";") or self.at("}")):
            tok = self.vertex()
            if tok.text in vertices:
                raise self.error(f"vertex {tok.text} declared twice", tok)
            vertices.append(tok.text)
        if not vertices:
            raise self.error("a quiver needs at least one vertex")
        arrows: List[Arrow] = []
        while not self.accept("}"):
            if self.accept(";") or self.accept(","):
                continue
            label = self.expect_kind("ident")
            self.expect(":")
            src = self.vertex()
            self.expect_kind("arrow")
            dst = self.vertex()
            for end in (src, dst):
                if end.text not in vertices:
                    raise UnknownReferenceError(
                        f"unknown vertex {end.text!r} in arrow {label.text} (line {end.line}, column {end.column})")
            if any(a.label == label.text for a in arrows):
                raise self.error(f"arrow {label.text} declared twice", label)
            if src.text == dst.text:
                raise self.error(f"loops are not supported (arrow {label.text})", label)
            arrows.append(Arrow(label=label.text, src=src.text, dst=dst.text))
        return AlgebraDocument(vertices=vertices, arrows=arrows)

    def relations(self, algebra: AlgebraDocument) -> List[str]:
        self.expect("{")
        out = []
        while not self.accept("}"):
            if self.accept(";"):
                continue
            relation = self.relation({a.label for a in algebra.arrows})
            out.append(relation.text())
        return out

    def scalar(self) -> str:
        sign = "-" if self.accept("-") else ""
        tok = self.expect_kind("number")
        return sign + tok.text

    def relation(self, labels) -> Relation:
        terms = []
        first = True
        while True:
            negative = False
            if self.accept("-"):
                negative = True
            elif not first and not self.accept("+"):
                break
            elif first:
                self.accept("+")
            coefficient = "1"
            if self.peek().kind == "number":
                coefficient = self.next().text
                self.expect("*")
            arrows = [self.arrow_label(labels)]
            while self.accept("*"):
                arrows.append(self.arrow_label(labels))
            terms.append(RelationTerm(coefficient=("-" if negative else "") + coefficient, arrows=tuple(arrows)))
            first = False
            if self.at(";") or self.at("}") or self.peek().kind == "eof":
                break
        return Relation(terms=tuple(terms))

    def arrow_label(self, labels) -> str:
        tok = self.expect_kind("ident")
        if labels is not None and tok.text not in labels:
            raise UnknownReferenceError(f"unknown arrow {tok.text!r} (line {tok.line}, column {tok.column})")
        return tok.text

    def module(self, algebra: AlgebraDocument) -> ModuleDocument:
        name = self.expect_kind("ident").text
        self.expect("{")
        self.expect("dim")
        dims = []
        while not self.at(";"):
            dims.append(int(self.expect_kind("number").text))
        self.expect(";")
        if len(dims) != len(algebra.vertices):
            raise self.error(f"module {name} has {len(dims)} dimensions for {len(algebra.vertices)} vertices")
        labels = {a.label for a in algebra.arrows}
        maps = {}
        while not self.accept("}"):
            if self.accept(";"):
                continue
            self.expect("map")
            label = self.arrow_label(labels)
            self.expect("=")
            maps[label] = self.matrix()
        return ModuleDocument(name=name, dims=dims, maps=maps)

    def matrix(self) -> List[List[str]]:
        self.expect("[")
        rows = []
        while not self.accept("]"):
            if rows:
                self.expect(",")
            self.expect("[")
            row = []
            while not self.accept("]"):
                if row:
                    self.expect(",")
                row.append(self.scalar())
            rows.append(row)
        return rows

    def reference(self) -> str:
        if self.accept("("):
            entries = [self.expect_kind("number").text]
            while self.accept(","):
                entries.append(self.expect_kind("number").text)
            self.expect(")")
            return "(" + ",".join(entries) + ")"
        name = self.expect_kind("ident").text
        if self.accept("["):
            shift = self.expect_kind("number").text
            self.expect("]")
            return f"{name}[{shift}]"
        return name

    def references(self, closing: str = "}") -> List[str]:
        out = []
        while not self.at(closing) and self.peek().kind != "eof":
            if out and not (self.accept(",") or self.accept("+")):
                raise self.error("expected ',' between references")
            out.append(self.reference())
        return out

    def reference_groups(self, keyword: str) -> List[List[str]]:
        self.expect("{")
        groups = []
        while not self.accept("}"):
            if self.accept(";"):
                continue
            self.expect(keyword)
            self.expect("{")
            groups.append(self.references())
            self.expect("}")
        return groups


def parse_document(text: str) -> WorkbenchDocument:
    return _Parser(text).document()


def parse_relation(text: str, labels: Optional[Sequence[str]] = None) -> Relation:
    p = _Parser(text)
    relation = p.relation(set(labels) if labels is not None else None)
    p.accept(";")
    if p.peek().kind != "eof":
        raise p.error("unexpected text after relation")
    return relation


def parse_references(text: str) -> List[str]:
    """`I3+I2+I1` or `I3, P1[1]`."""
    p = _Parser(text)
    refs = p.references(closing="")
    if p.peek().kind != "eof":
        raise p.error("unexpected text after references")
    return refs


def algebra_from_document(doc: AlgebraDocument, field, name: str = "A") -> BoundQuiverAlgebra:
    labels = [a.label for a in doc.arrows]
    try:
        quiver = Quiver(vertices=tuple(doc.vertices), arrows=tuple(doc.arrows))
    except ValidationError as exc:
        raise InputError(f"invalid quiver: {exc.errors()[0]['msg']}") from exc
    relations = [parse_relation(r, labels) for r in doc.relations]
    return BoundQuiverAlgebra(quiver, relations, field, name=name)


def parse_algebra(text: str, field, name: str = "A") -> BoundQuiverAlgebra:
    return algebra_from_document(parse_document(text).algebra, field, name)


def load_document(path: str) -> WorkbenchDocument:
    """A DSL file, or JSON holding either a full document or just an algebra."""
    file = FilePath(path)
    try:
        text = file.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    if file.suffix.lower() == ".json":
        try:
            data = json.loads(text)
            if "algebra" in data:
                return WorkbenchDocument.model_validate(data)
            return WorkbenchDocument(algebra=AlgebraDocument.model_validate(data))
        except (json.JSONDecodeError, ValidationError) as exc:
            raise InputError(f"{path}: {exc}") from exc
    doc = parse_document(text)
    logger.debug("parsed %s: %d vertices, %d modules, %d chain steps", path,
                 len(doc.algebra.vertices), len(doc.modules), len(doc.chain))
    return doc.model_copy(update={"name": doc.name or file.stem})
