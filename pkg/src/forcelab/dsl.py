"""Scenario files: declarations plus one command, parsed by recursive descent.

Grammar (whitespace-insensitive, ``#`` starts a line comment)::

    scenario    = { declaration } [ command ]
    declaration = family | poset | grid | assignment | sigma
                | name | formula | perm | cond | conds
    family      = "family" ID "{" { ID ":" hfset } "}"
    poset       = "poset" ID ( "explicit" "{" "elements" ID+ ";"
                                 [ "order" ID "<" ID { "," ID "<" ID } ";" ]
                                 [ "top" ID ] "}"
                             | "flat" ID
                             | "choice" ID [ "level" "=" INT ]
                             | "fn" "dom" "=" INT "cod" "=" INT
                             | "inj" "dom" "=" INT "cod" "=" INT
                             | "tree" "depth" "=" INT )
    grid        = "grid" ID "cols" "=" INT "rows" "=" INT
    assignment  = "assignment" ID ID "[" INT { "," INT } "]"
    sigma       = "sigma" ID "=" "{" [ pair { "," pair } ] "}"
    name        = "name" ID [ "over" ID ] "=" nameexpr
    formula     = "formula" ID [ "(" ID ")" ] "=" fml
    perm        = "perm" ID "=" ( "id" | { cycle | chain } )
    cond        = "cond" ID "over" ID "=" condition
    conds       = "conds" ID "over" ID "=" "{" [ condition { "," } ] "}"
    command     = "command" ID { INT | ID | ID "=" ( INT | ID ) }

    hf          = INT | "{" [ hf { "," hf } ] "}"
    hfset       = "{" [ hf { "," hf } ] "}"
    nameexpr    = "check" "(" hf ")" | "gamma" "(" ID ")"
                | "xdot" "(" ID "," INT ")" | "xcc" "(" ID "," INT ")"
                | "rsigma" "(" ID "," ID ")"
                | "pair" "(" nameexpr "," nameexpr ")"
                | "upair" "(" nameexpr "," nameexpr ")"
                | "{" [ "(" condition "," nameexpr ")" { "," } ] "}"
                | ID
    fml         = disj [ "->" fml ]
    disj        = conj { "or" conj }
    conj        = neg { "and" neg }
    neg         = "not" neg | "(" fml ")" | quant | term ("in" | "=") term
    quant       = ("forall" | "exists") ID bound fml
    bound       = "[" ( "in" nameexpr | "rank" "<=" INT | "ord" "<" INT ) "]"
    term        = ID | nameexpr
    cycle       = "(" INT INT { INT } ")"
    chain       = "chain" "(" "lo" "=" INT "," "mid" "=" "[" [ INT { "," INT } ]
                  "]" "," "neg" "=" pair "," "pos" "=" pair ")"
    pair        = "(" INT "," INT ")"

Condition literals depend on the kind of their poset: explicit-style posets
use the element identifier (or 1), the choice poset uses ``(level, hf)``,
map posets use ``{u->v, ...}``, grids use ``{(c,r)=bit, ...}``, trees use a
bit list, and ``1`` always denotes the greatest element.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cohen import Assignment, r_sigma_name, xcheckcheck_name, xdot_name
from .errors import DuplicateIdentifier, ParseError, UnresolvedReference
from .hf import HF, nat
from .names import (
    EMPTY_NAME, PName, check_name, gamma_name, ordered_pair_name, pname,
    unordered_pair_name,
)
from .perms import Chain, Perm
from .posets import (
    BinaryTreePoset, ChoicePoset, CohenGridPoset, ExplicitPoset, Family,
    FlatPoset, ONE, Poset, fn_omega_omega, inj_omega_omega,
)
from .formulas import (
    And, Cname, Eq, Exists, Forall, Formula, Implies, InName, Member, Not,
    Or, OrdLT, RankLE, Var,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "ident" | "punct" | "end"
    text: str
    line: int
    col: int


_PUNCTS = ("->", "<=", "{", "}", "(", ")", "[", "]", ",", ";", ":", "=", "<")


def tokenize(text: str) -> list[Token]:
    out = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        two = text[i:i + 2]
        if two in _PUNCTS:
            out.append(Token("punct", two, line, col))
            i += 2
            col += 2
            continue
        if ch in _PUNCTS:
            out.append(Token("punct", ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    out.append(Token("end", "", line, col))
    return out


@dataclass(frozen=True)
class Command:
    verb: str
    args: tuple = ()
    kwargs: tuple = ()

    def kwarg(self, key: str, default=None):
        for k, v in self.kwargs:
            if k == key:
                return v
        return default


@dataclass
class Scenario:
    entities: dict[str, tuple[str, object]] = field(default_factory=dict)
    command: Optional[Command] = None

    def lookup(self, ident: str, kind: Optional[str] = None):
        if ident not in self.entities:
            raise UnresolvedReference(f"unknown identifier {ident!r}")
        got_kind, obj = self.entities[ident]
        if kind is not None and got_kind != kind:
            raise UnresolvedReference(
                f"{ident!r} is a {got_kind}, expected a {kind}")
        return obj


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.scenario = Scenario()

    # -- token plumbing ------------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            self.fail(f"expected {want!r}, found {tok.text or 'end of file'!r}")
        return self.next()

    def accept(self, kind: str, text: Optional[str] = None) -> Optional[Token]:
        tok = self.peek()
        if tok.kind == kind and (text is None or tok.text == text):
            return self.next()
        return None

    def int_value(self) -> int:
        return int(self.expect("int").text)

    def ident(self) -> str:
        return self.expect("ident").text

    # -- entity table --------------------------------------------------------

    def define(self, ident: str, kind: str, obj, tok: Token):
        if ident in self.scenario.entities:
            raise DuplicateIdentifier(
                f"identifier {ident!r} is already defined", tok.line, tok.col)
        self.scenario.entities[ident] = (kind, obj)

    def resolve(self, ident: str, kind: str, tok: Token):
        entry = self.scenario.entities.get(ident)
        if entry is None:
            raise UnresolvedReference(
                f"unknown identifier {ident!r}", tok.line, tok.col)
        if entry[0] != kind:
            raise UnresolvedReference(
                f"{ident!r} is a {entry[0]}, expected a {kind}",
                tok.line, tok.col)
        return entry[1]

    # -- scenario ------------------------------------------------------------

    def parse(self) -> Scenario:
        handlers = {
            "family": self.parse_family,
            "poset": self.parse_poset,
            "grid": self.parse_grid,
            "assignment": self.parse_assignment,
            "sigma": self.parse_sigma,
            "name": self.parse_name,
            "formula": self.parse_formula_decl,
            "perm": self.parse_perm,
            "cond": self.parse_cond_decl,
            "conds": self.parse_conds_decl,
        }
        while True:
            tok = self.peek()
            if tok.kind == "end":
                break
            if tok.kind != "ident":
                self.fail("expected a declaration keyword")
            if tok.text == "command":
                self.parse_command()
                break
            handler = handlers.get(tok.text)
            if handler is None:
                self.fail(f"unknown declaration keyword {tok.text!r}")
            handler()
        self.expect("end")
        return self.scenario

    # -- declarations ---------------------------------------------------------

    def parse_family(self):
        self.expect("ident", "family")
        tok = self.peek()
        ident = self.ident()
        self.expect("punct", "{")
        blocks = []
        while not self.accept("punct", "}"):
            label = self.ident()
            self.expect("punct", ":")
            blocks.append((label, self.parse_hf_set()))
        self.define(ident, "family", Family(blocks), tok)

    def parse_hf(self) -> HF:
        tok = self.peek()
        if tok.kind == "int":
            value = self.int_value()
            if value < 0:
                self.fail("set literals use nonnegative numerals", tok)
            return nat(value)
        self.expect("punct", "{")
        members = []
        if not self.accept("punct", "}"):
            members.append(self.parse_hf())
            while self.accept("punct", ","):
                members.append(self.parse_hf())
            self.expect("punct", "}")
        return HF(members)

    def parse_hf_set(self) -> list[HF]:
        self.expect("punct", "{")
        members = []
        if not self.accept("punct", "}"):
            members.append(self.parse_hf())
            while self.accept("punct", ","):
                members.append(self.parse_hf())
            self.expect("punct", "}")
        return members

    def parse_poset(self):
        self.expect("ident", "poset")
        tok = self.peek()
        ident = self.ident()
        kind = self.ident()
        if kind == "explicit":
            poset = self.parse_explicit_body()
        elif kind == "flat":
            fam_tok = self.peek()
            poset = FlatPoset(self.resolve(self.ident(), "family", fam_tok))
        elif kind == "choice":
            fam_tok = self.peek()
            family = self.resolve(self.ident(), "family", fam_tok)
            level = None
            if self.accept("ident", "level"):
                self.expect("punct", "=")
                level = self.int_value()
            poset = ChoicePoset(family, level)
        elif kind in ("fn", "inj"):
            self.expect("ident", "dom")
            self.expect("punct", "=")
            dom = self.int_value()
            self.expect("ident", "cod")
            self.expect("punct", "=")
            cod = self.int_value()
            maker = fn_omega_omega if kind == "fn" else inj_omega_omega
            poset = maker(dom, cod)
        elif kind == "tree":
            self.expect("ident", "depth")
            self.expect("punct", "=")
            poset = BinaryTreePoset(self.int_value())
        else:
            self.fail(f"unknown poset kind {kind!r}")
        self.define(ident, "poset", poset, tok)

    def parse_explicit_body(self) -> ExplicitPoset:
        self.expect("punct", "{")
        self.expect("ident", "elements")
        elements = []
        while self.peek().kind in ("ident", "int") and \
                self.peek().text not in ("order", "top"):
            elements.append(self.next().text)
        self.expect("punct", ";")
        order = []
        if self.accept("ident", "order"):
            while True:
                a = self.next()
                if a.kind not in ("ident", "int"):
                    self.fail("expected an element name", a)
                self.expect("punct", "<")
                b = self.next()
                if b.kind not in ("ident", "int"):
                    self.fail("expected an element name", b)
                order.append((a.text, b.text))
                if not self.accept("punct", ","):
                    break
            self.expect("punct", ";")
        top = None
        if self.accept("ident", "top"):
            top = self.next().text
        self.expect("punct", "}")
        return ExplicitPoset(elements, order, top)

    def parse_grid(self):
        self.expect("ident", "grid")
        tok = self.peek()
        ident = self.ident()
        self.expect("ident", "cols")
        self.expect("punct", "=")
        cols = self.int_value()
        self.expect("ident", "rows")
        self.expect("punct", "=")
        rows = self.int_value()
        self.define(ident, "grid", CohenGridPoset(cols, rows), tok)

    def parse_assignment(self):
        self.expect("ident", "assignment")
        tok = self.peek()
        ident = self.ident()
        grid_tok = self.peek()
        grid = self.resolve(self.ident(), "grid", grid_tok)
        self.expect("punct", "[")
        bits = []
        if not self.accept("punct", "]"):
            bits.append(self.int_value())
            while self.accept("punct", ","):
                bits.append(self.int_value())
            self.expect("punct", "]")
        self.define(ident, "assignment", Assignment(grid, bits), tok)

    def parse_int_pair(self) -> tuple[int, int]:
        self.expect("punct", "(")
        a = self.int_value()
        self.expect("punct", ",")
        b = self.int_value()
        self.expect("punct", ")")
        return (a, b)

    def parse_sigma(self):
        self.expect("ident", "sigma")
        tok = self.peek()
        ident = self.ident()
        self.expect("punct", "=")
        self.expect("punct", "{")
        pairs = []
        if not self.accept("punct", "}"):
            pairs.append(self.parse_int_pair())
            while self.accept("punct", ","):
                pairs.append(self.parse_int_pair())
            self.expect("punct", "}")
        self.define(ident, "sigma", frozenset(pairs), tok)

    # -- conditions ------------------------------------------------------------

    def parse_condition(self, poset: Optional[Poset]):
        tok = self.peek()
        if tok.kind == "int" and tok.text == "1":
            self.next()
            return ONE
        if poset is None:
            self.fail("a condition other than 1 needs a poset context", tok)
        if poset.kind in ("explicit", "flat", "nontrivial-flat"):
            if tok.kind not in ("ident", "int"):
                self.fail("expected an element name", tok)
            self.next()
            return tok.text
        if poset.kind == "choice":
            self.expect("punct", "(")
            level = self.int_value()
            self.expect("punct", ",")
            value = self.parse_hf()
            self.expect("punct", ")")
            return (level, value)
        if poset.kind in ("fn", "inj"):
            self.expect("punct", "{")
            pairs = []
            if not self.accept("punct", "}"):
                while True:
                    u = self.int_value()
                    self.expect("punct", "->")
                    v = self.int_value()
                    pairs.append((u, v))
                    if not self.accept("punct", ","):
                        break
                self.expect("punct", "}")
            return frozenset(pairs)
        if poset.kind == "cohen":
            self.expect("punct", "{")
            cells = []
            if not self.accept("punct", "}"):
                while True:
                    cell = self.parse_int_pair()
                    self.expect("punct", "=")
                    cells.append((cell, self.int_value()))
                    if not self.accept("punct", ","):
                        break
                self.expect("punct", "}")
            return frozenset(cells)
        if poset.kind == "binary":
            self.expect("punct", "[")
            bits = []
            if not self.accept("punct", "]"):
                bits.append(self.int_value())
                while self.accept("punct", ","):
                    bits.append(self.int_value())
                self.expect("punct", "]")
            return "".join(str(b) for b in bits)
        self.fail(f"no condition syntax for poset kind {poset.kind!r}", tok)

    def resolve_posetlike(self) -> Poset:
        tok = self.peek()
        ident = self.ident()
        entry = self.scenario.entities.get(ident)
        if entry is None:
            raise UnresolvedReference(
                f"unknown identifier {ident!r}", tok.line, tok.col)
        if entry[0] not in ("poset", "grid"):
            raise UnresolvedReference(
                f"{ident!r} is a {entry[0]}, expected a poset or grid",
                tok.line, tok.col)
        return entry[1]

    def parse_cond_decl(self):
        self.expect("ident", "cond")
        tok = self.peek()
        ident = self.ident()
        self.expect("ident", "over")
        poset = self.resolve_posetlike()
        self.expect("punct", "=")
        cond = self.parse_condition(poset)
        self.define(ident, "cond", (poset, cond), tok)

    def parse_conds_decl(self):
        self.expect("ident", "conds")
        tok = self.peek()
        ident = self.ident()
        self.expect("ident", "over")
        poset = self.resolve_posetlike()
        self.expect("punct", "=")
        self.expect("punct", "{")
        conds = []
        if not self.accept("punct", "}"):
            conds.append(self.parse_condition(poset))
            while self.accept("punct", ","):
                conds.append(self.parse_condition(poset))
            self.expect("punct", "}")
        self.define(ident, "conds", (poset, tuple(conds)), tok)

    # -- names -----------------------------------------------------------------

    def parse_name(self):
        self.expect("ident", "name")
        tok = self.peek()
        ident = self.ident()
        poset = None
        if self.accept("ident", "over"):
            poset = self.resolve_posetlike()
        self.expect("punct", "=")
        self.define(ident, "name", self.parse_name_expr(poset), tok)

    def parse_name_expr(self, poset: Optional[Poset]) -> PName:
        tok = self.peek()
        if tok.kind == "punct" and tok.text == "{":
            self.next()
            entries = []
            if not self.accept("punct", "}"):
                while True:
                    self.expect("punct", "(")
                    cond = self.parse_condition(poset)
                    self.expect("punct", ",")
                    child = self.parse_name_expr(poset)
                    self.expect("punct", ")")
                    entries.append((cond, child))
                    if not self.accept("punct", ","):
                        break
                self.expect("punct", "}")
            return pname(entries) if entries else EMPTY_NAME
        if tok.kind != "ident":
            self.fail("expected a name expression", tok)
        head = self.next().text
        if head == "check":
            self.expect("punct", "(")
            value = self.parse_hf()
            self.expect("punct", ")")
            return check_name(value)
        if head == "gamma":
            self.expect("punct", "(")
            ptok = self.peek()
            target = self.resolve(self.ident(), "poset", ptok)
            self.expect("punct", ")")
            return gamma_name(target)
        if head in ("xdot", "xcc"):
            self.expect("punct", "(")
            gtok = self.peek()
            grid = self.resolve(self.ident(), "grid", gtok)
            self.expect("punct", ",")
            col = self.int_value()
            self.expect("punct", ")")
            maker = xdot_name if head == "xdot" else xcheckcheck_name
            return maker(grid, col)
        if head == "rsigma":
            self.expect("punct", "(")
            gtok = self.peek()
            grid = self.resolve(self.ident(), "grid", gtok)
            self.expect("punct", ",")
            stok = self.peek()
            sigma = self.resolve(self.ident(), "sigma", stok)
            self.expect("punct", ")")
            return r_sigma_name(grid, sigma)
        if head in ("pair", "upair"):
            self.expect("punct", "(")
            left = self.parse_name_expr(poset)
            self.expect("punct", ",")
            right = self.parse_name_expr(poset)
            self.expect("punct", ")")
            maker = ordered_pair_name if head == "pair" else unordered_pair_name
            return maker(left, right)
        return self.resolve(head, "name", tok)

    # -- formulas ----------------------------------------------------------------

    def parse_formula_decl(self):
        """An optional parenthesized head variable declares an open formula,
        as in ``formula theta(x) = x in g``."""
        self.expect("ident", "formula")
        tok = self.peek()
        ident = self.ident()
        scope: tuple[str, ...] = ()
        if self.accept("punct", "("):
            scope = (self.ident(),)
            self.expect("punct", ")")
        self.expect("punct", "=")
        self.define(ident, "formula", self.parse_formula(scope), tok)

    def parse_formula(self, scope: tuple[str, ...]) -> Formula:
        left = self.parse_disjunction(scope)
        if self.accept("punct", "->"):
            return Implies(left, self.parse_formula(scope))
        return left

    def parse_disjunction(self, scope) -> Formula:
        out = self.parse_conjunction(scope)
        while self.accept("ident", "or"):
            out = Or(out, self.parse_conjunction(scope))
        return out

    def parse_conjunction(self, scope) -> Formula:
        out = self.parse_negation(scope)
        while self.accept("ident", "and"):
            out = And(out, self.parse_negation(scope))
        return out

    def parse_negation(self, scope) -> Formula:
        if self.accept("ident", "not"):
            return Not(self.parse_negation(scope))
        tok = self.peek()
        if tok.kind == "ident" and tok.text in ("forall", "exists"):
            self.next()
            var = self.ident()
            bound = self.parse_bound(scope)
            body = self.parse_formula(scope + (var,))
            maker = Forall if tok.text == "forall" else Exists
            return maker(var, bound, body)
        if tok.kind == "punct" and tok.text == "(":
            self.next()
            inner = self.parse_formula(scope)
            self.expect("punct", ")")
            return inner
        left = self.parse_term(scope)
        op = self.peek()
        if op.kind == "ident" and op.text == "in":
            self.next()
            return Member(left, self.parse_term(scope))
        if op.kind == "punct" and op.text == "=":
            self.next()
            return Eq(left, self.parse_term(scope))
        self.fail("expected 'in' or '=' after a term")

    def parse_bound(self, scope):
        self.expect("punct", "[")
        tok = self.peek()
        if self.accept("ident", "rank"):
            self.expect("punct", "<=")
            bound = RankLE(self.int_value())
        elif self.accept("ident", "ord"):
            self.expect("punct", "<")
            bound = OrdLT(self.int_value())
        elif self.accept("ident", "in"):
            bound = InName(self.parse_name_expr(None))
        else:
            self.fail("expected a quantifier bound", tok)
        self.expect("punct", "]")
        return bound

    def parse_term(self, scope):
        tok = self.peek()
        if tok.kind == "ident":
            head = tok.text
            if head in scope:
                self.next()
                return Var(head)
            entry = self.scenario.entities.get(head)
            if entry is not None and entry[0] == "name" and \
                    self.tokens[self.pos + 1].text != "(":
                self.next()
                return Cname(entry[1])
            if head in ("check", "gamma", "xdot", "xcc", "rsigma",
                        "pair", "upair"):
                return Cname(self.parse_name_expr(None))
            raise UnresolvedReference(
                f"{head!r} is neither a bound variable nor a declared name",
                tok.line, tok.col)
        if tok.kind == "punct" and tok.text == "{":
            return Cname(self.parse_name_expr(None))
        self.fail("expected a term", tok)

    # -- permutations ---------------------------------------------------------

    def parse_perm(self):
        self.expect("ident", "perm")
        tok = self.peek()
        ident = self.ident()
        self.expect("punct", "=")
        if self.accept("ident", "id"):
            self.define(ident, "perm", Perm(), tok)
            return
        cycles = []
        chains = []
        while True:
            nxt = self.peek()
            if nxt.kind == "punct" and nxt.text == "(":
                self.next()
                entries = [self.int_value()]
                while self.peek().kind == "int":
                    entries.append(self.int_value())
                self.expect("punct", ")")
                cycles.append(tuple(entries))
            elif nxt.kind == "ident" and nxt.text == "chain":
                chains.append(self.parse_chain())
            else:
                break
        if not cycles and not chains:
            self.fail("expected cycles, chains, or 'id'")
        self.define(ident, "perm", Perm(cycles, chains), tok)

    def parse_chain(self) -> Chain:
        self.expect("ident", "chain")
        self.expect("punct", "(")
        self.expect("ident", "lo")
        self.expect("punct", "=")
        lo = self.int_value()
        self.expect("punct", ",")
        self.expect("ident", "mid")
        self.expect("punct", "=")
        self.expect("punct", "[")
        mid = []
        if not self.accept("punct", "]"):
            mid.append(self.int_value())
            while self.accept("punct", ","):
                mid.append(self.int_value())
            self.expect("punct", "]")
        self.expect("punct", ",")
        self.expect("ident", "neg")
        self.expect("punct", "=")
        neg = self.parse_int_pair()
        self.expect("punct", ",")
        self.expect("ident", "pos")
        self.expect("punct", "=")
        pos = self.parse_int_pair()
        self.expect("punct", ")")
        return Chain(lo, tuple(mid), neg, pos)

    # -- the command ------------------------------------------------------------

    def parse_command(self):
        self.expect("ident", "command")
        verb = self.ident()
        args = []
        kwargs = []
        while True:
            tok = self.peek()
            if tok.kind == "end":
                break
            if tok.kind == "int":
                args.append(int(self.next().text))
                continue
            if tok.kind == "ident":
                name = self.next().text
                if self.accept("punct", "="):
                    vtok = self.next()
                    if vtok.kind == "int":
                        kwargs.append((name, int(vtok.text)))
                    elif vtok.kind == "ident":
                        kwargs.append((name, vtok.text))
                    else:
                        self.fail("expected a value after '='", vtok)
                else:
                    args.append(name)
                continue
            self.fail("unexpected token in command arguments")
        self.scenario.command = Command(verb, tuple(args), tuple(kwargs))


def parse_scenario(text: str) -> Scenario:
    return Parser(text).parse()
