"""Problem files, QDIMACS, and circuit netlists.

Problem file grammar (UTF-8, ``#`` line comments)::

    problem  := (directive)* "kb" "{" clause* "}" "query" "{" formula "}"
    directive:= "level" NAT
    clause   := lit ("|" lit)*          # one clause per line
    lit      := term ("=" | "!=") NAME
    term     := IDENT ("(" NAME ("," NAME)* ")")?
    formula  := lit | "~" formula | formula "|" formula
              | formula "&" formula | "B" NAT formula | "(" formula ")"

Precedence ``~`` > ``&`` > ``|``, with ``B NAT`` binding like ``~``; ``&`` is
stored as the standard negation/disjunction abbreviation.  The ``level``
directive is present exactly when the query is objective.  ``@``-prefixed
identifiers are rejected except for the gadget vocabulary (``@o<i>``/``@w<i>``
term symbols and the name ``@t``), which reduction outputs contain; parsing a
printed instance reproduces it exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .lang import (
    Believe,
    Clause,
    Formula,
    GADGET_NAME,
    IDENT_RE,
    LangError,
    Lit,
    Literal,
    NestedBeliefError,
    Not,
    Or,
    Term,
    canonical_clause,
    is_objective,
)
from .oracle import Gate, OracleError, Qbf, make_circuit
from .solver import Instance

_GADGET_TERM_RE = re.compile(r"@[ow][0-9]+\Z")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = "" if line is None else "line %d, column %d: " % (line, col)
        super().__init__(where + message)


# Tokenizer -------------------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str  # IDENT RESERVED NAT PUNCT NEWLINE EOF
    value: str
    line: int
    col: int


_PUNCT = "{}(),|&~="


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col, i, n = 1, 1, 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            tokens.append(_Token("NEWLINE", "\n", line, col))
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            i += 1
            col += 1
        elif ch == "#":
            while i < n and text[i] != "\n":
                i += 1
                col += 1
        elif ch == "!":
            if i + 1 < n and text[i + 1] == "=":
                tokens.append(_Token("PUNCT", "!=", line, col))
                i += 2
                col += 2
            else:
                raise ParseError("expected '=' after '!'", line, col)
        elif ch in _PUNCT:
            tokens.append(_Token("PUNCT", ch, line, col))
            i += 1
            col += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("NAT", text[i:j], line, col))
            col += j - i
            i = j
        elif ch.isalpha() or ch == "_" or ch == "@":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "RESERVED" if ch == "@" else "IDENT"
            if kind == "RESERVED" and len(word) == 1:
                raise ParseError("stray '@'", line, col)
            tokens.append(_Token(kind, word, line, col))
            col += j - i
            i = j
        else:
            raise ParseError("unexpected character %r" % ch, line, col)
    tokens.append(_Token("EOF", "", line, col))
    return tokens


class _TokenStream:
    def __init__(self, tokens: list[_Token]):
        self._tokens = tokens
        self._pos = 0

    def peek(self, skip_newlines: bool = False) -> _Token:
        pos = self._pos
        if skip_newlines:
            while self._tokens[pos].kind == "NEWLINE":
                pos += 1
        return self._tokens[pos]

    def next(self, skip_newlines: bool = False) -> _Token:
        if skip_newlines:
            while self._tokens[self._pos].kind == "NEWLINE":
                self._pos += 1
        tok = self._tokens[self._pos]
        if tok.kind != "EOF":
            self._pos += 1
        return tok

    def expect(self, kind: str, value: str | None = None, skip_newlines: bool = False) -> _Token:
        tok = self.next(skip_newlines)
        if tok.kind != kind or (value is not None and tok.value != value):
            want = value if value is not None else kind
            raise ParseError("expected %r, found %r" % (want, tok.value or tok.kind), tok.line, tok.col)
        return tok


def _term_symbol(tok: _Token) -> str:
    if tok.kind == "IDENT":
        return tok.value
    if tok.kind == "RESERVED":
        if _GADGET_TERM_RE.match(tok.value):
            return tok.value
        raise ParseError("reserved identifier %r" % tok.value, tok.line, tok.col)
    raise ParseError("expected a term, found %r" % (tok.value or tok.kind), tok.line, tok.col)


def _name_token(tok: _Token) -> str:
    if tok.kind == "IDENT":
        return tok.value
    if tok.kind == "RESERVED":
        if tok.value == GADGET_NAME:
            return tok.value
        raise ParseError("reserved identifier %r" % tok.value, tok.line, tok.col)
    raise ParseError("expected a name, found %r" % (tok.value or tok.kind), tok.line, tok.col)


class _ProblemParser:
    def __init__(self, text: str):
        self.ts = _TokenStream(_tokenize(text))

    def parse(self) -> Instance:
        ts = self.ts
        level: int | None = None
        while True:
            tok = ts.peek(skip_newlines=True)
            if tok.kind == "IDENT" and tok.value == "level":
                ts.next(skip_newlines=True)
                if level is not None:
                    raise ParseError("duplicate level directive", tok.line, tok.col)
                nat = ts.expect("NAT")
                level = int(nat.value)
            else:
                break
        ts.expect("IDENT", "kb", skip_newlines=True)
        ts.expect("PUNCT", "{", skip_newlines=True)
        kb = self._clauses()
        ts.expect("IDENT", "query", skip_newlines=True)
        ts.expect("PUNCT", "{", skip_newlines=True)
        query = self._formula()
        ts.expect("PUNCT", "}", skip_newlines=True)
        trailing = ts.next(skip_newlines=True)
        if trailing.kind != "EOF":
            raise ParseError(
                "unexpected trailing input %r" % trailing.value, trailing.line, trailing.col
            )

        if is_objective(query):
            if level is None:
                raise ParseError("objective query requires a level directive")
        elif level is not None:
            raise ParseError("level directive and in-query belief operators are mutually exclusive")
        try:
            return Instance(tuple(kb), query, level if level is not None else 0)
        except LangError as exc:
            raise ParseError(str(exc)) from exc

    def _clauses(self) -> list[Clause]:
        ts = self.ts
        out: list[Clause] = []
        while True:
            tok = ts.peek(skip_newlines=True)
            if tok.kind == "PUNCT" and tok.value == "}":
                ts.next(skip_newlines=True)
                return out
            if tok.kind == "EOF":
                raise ParseError("unterminated kb block", tok.line, tok.col)
            lits = [self._literal()]
            while True:
                nxt = ts.peek()
                if nxt.kind == "PUNCT" and nxt.value == "|":
                    ts.next()
                    lits.append(self._literal())
                elif nxt.kind in ("NEWLINE", "EOF") or (
                    nxt.kind == "PUNCT" and nxt.value == "}"
                ):
                    break
                else:
                    raise ParseError(
                        "expected '|' or end of clause, found %r" % (nxt.value or nxt.kind),
                        nxt.line,
                        nxt.col,
                    )
            out.append(canonical_clause(lits))

    def _literal(self) -> Literal:
        ts = self.ts
        tok = ts.next(skip_newlines=True)
        symbol = _term_symbol(tok)
        args: list[str] = []
        nxt = ts.peek()
        if nxt.kind == "PUNCT" and nxt.value == "(":
            ts.next()
            args.append(_name_token(ts.next()))
            while True:
                sep = ts.next()
                if sep.kind == "PUNCT" and sep.value == ",":
                    args.append(_name_token(ts.next()))
                elif sep.kind == "PUNCT" and sep.value == ")":
                    break
                else:
                    raise ParseError(
                        "expected ',' or ')', found %r" % (sep.value or sep.kind),
                        sep.line,
                        sep.col,
                    )
        op = ts.next()
        if op.kind != "PUNCT" or op.value not in ("=", "!="):
            raise ParseError(
                "expected '=' or '!=', found %r" % (op.value or op.kind), op.line, op.col
            )
        name = _name_token(ts.next())
        return Literal(Term(symbol, tuple(args)), op.value == "=", name)

    # Formula parsing: '|' < '&' < prefix; both binary operators associate to
    # the right, and explicit parentheses are preserved in the tree.

    def _formula(self) -> Formula:
        return self._or()

    def _or(self) -> Formula:
        parts = [self._and()]
        while True:
            tok = self.ts.peek(skip_newlines=True)
            if tok.kind == "PUNCT" and tok.value == "|":
                self.ts.next(skip_newlines=True)
                parts.append(self._and())
            else:
                break
        out = parts[-1]
        for f in reversed(parts[:-1]):
            out = Or(f, out)
        return out

    def _and(self) -> Formula:
        parts = [self._prefix()]
        while True:
            tok = self.ts.peek(skip_newlines=True)
            if tok.kind == "PUNCT" and tok.value == "&":
                self.ts.next(skip_newlines=True)
                parts.append(self._prefix())
            else:
                break
        out = parts[-1]
        for f in reversed(parts[:-1]):
            out = Not(Or(Not(f), Not(out)))
        return out

    def _prefix(self) -> Formula:
        ts = self.ts
        tok = ts.peek(skip_newlines=True)
        if tok.kind == "PUNCT" and tok.value == "~":
            ts.next(skip_newlines=True)
            return Not(self._prefix())
        if tok.kind == "IDENT" and tok.value == "B":
            save = ts._pos
            ts.next(skip_newlines=True)
            nxt = ts.peek()
            if nxt.kind == "NAT":
                ts.next()
                body = self._prefix()
                try:
                    return Believe(int(nxt.value), body)
                except NestedBeliefError:
                    raise ParseError("belief operators may not be nested", tok.line, tok.col)
            ts._pos = save
        return self._atom()

    def _atom(self) -> Formula:
        ts = self.ts
        tok = ts.peek(skip_newlines=True)
        if tok.kind == "PUNCT" and tok.value == "(":
            ts.next(skip_newlines=True)
            inner = self._formula()
            ts.expect("PUNCT", ")", skip_newlines=True)
            return inner
        return Lit(self._literal())


def parse_problem(text: str) -> Instance:
    """Parse a problem file into a reasoning instance."""
    return _ProblemParser(text).parse()


# Printing ---------------------------------------------------------------------


def format_literal(lit: Literal) -> str:
    return "%s%s%s" % (lit.term, "=" if lit.positive else "!=", lit.name)


def format_clause(clause: Clause) -> str:
    if not clause:
        raise LangError("the empty clause has no file form")
    return " | ".join(format_literal(l) for l in clause)


_PREC_OR, _PREC_AND, _PREC_PREFIX = 0, 1, 2


def _conjuncts(formula: Formula):
    # The stored shape of `a & b` is ~(~a | ~b).
    if (
        isinstance(formula, Not)
        and isinstance(formula.body, Or)
        and isinstance(formula.body.left, Not)
        and isinstance(formula.body.right, Not)
    ):
        return formula.body.left.body, formula.body.right.body
    return None


def format_formula(formula: Formula, _prec: int = _PREC_OR) -> str:
    pair = _conjuncts(formula)
    if pair is not None:
        text = "%s & %s" % (
            format_formula(pair[0], _PREC_PREFIX),
            format_formula(pair[1], _PREC_AND),
        )
        prec = _PREC_AND
    elif isinstance(formula, Lit):
        return format_literal(formula.literal)
    elif isinstance(formula, Or):
        text = "%s | %s" % (
            format_formula(formula.left, _PREC_AND),
            format_formula(formula.right, _PREC_OR),
        )
        prec = _PREC_OR
    elif isinstance(formula, Not):
        text = "~%s" % format_formula(formula.body, _PREC_PREFIX)
        prec = _PREC_PREFIX
    elif isinstance(formula, Believe):
        text = "B %d %s" % (formula.level, format_formula(formula.body, _PREC_PREFIX))
        prec = _PREC_PREFIX
    else:  # pragma: no cover
        raise LangError("unknown formula shape")
    if prec < _prec:
        return "(%s)" % text
    return text


def print_problem(instance: Instance) -> str:
    """Serialize an instance; parsing the result reproduces it exactly."""
    lines: list[str] = []
    if is_objective(instance.query):
        lines.append("level %d" % instance.level)
    lines.append("kb {")
    for clause in instance.kb:
        lines.append(format_clause(clause))
    lines.append("}")
    lines.append("query {")
    lines.append(format_formula(instance.query))
    lines.append("}")
    return "\n".join(lines) + "\n"


# QDIMACS ------------------------------------------------------------------------


def parse_qdimacs(text: str) -> Qbf:
    """Parse standard QDIMACS; the quantifier sequence is outermost-first.

    Free variables are rejected: every variable of the matrix must appear in
    some ``a``/``e`` prefix line, and prefix variables must fit the header.
    """
    header: tuple[int, int] | None = None
    quantifiers: list[tuple[str, int]] = []
    matrix_tokens: list[int] = []
    in_matrix = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise ParseError("duplicate header", lineno, 1)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("malformed header %r" % line, lineno, 1)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError("malformed header %r" % line, lineno, 1)
            if header[0] < 0 or header[1] < 0:
                raise ParseError("malformed header %r" % line, lineno, 1)
            continue
        if header is None:
            raise ParseError("clause or prefix before header", lineno, 1)
        if line[0] in ("a", "e"):
            if in_matrix:
                raise ParseError("prefix line after clauses", lineno, 1)
            parts = line.split()
            try:
                values = [int(v) for v in parts[1:]]
            except ValueError:
                raise ParseError("malformed prefix line %r" % line, lineno, 1)
            if not values or values[-1] != 0 or 0 in values[:-1]:
                raise ParseError("prefix line must end with 0", lineno, 1)
            for var in values[:-1]:
                if var < 1 or var > header[0]:
                    raise ParseError("prefix variable %d outside header" % var, lineno, 1)
                if any(v == var for _, v in quantifiers):
                    raise ParseError("variable %d quantified twice" % var, lineno, 1)
                quantifiers.append((parts[0], var))
            continue
        in_matrix = True
        try:
            matrix_tokens.extend(int(v) for v in line.split())
        except ValueError:
            raise ParseError("malformed clause line %r" % line, lineno, 1)

    if header is None:
        raise ParseError("missing header")
    nvars, nclauses = header
    quantified = {v for _, v in quantifiers}
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for sv in matrix_tokens:
        if sv == 0:
            clauses.append(tuple(current))
            current = []
            continue
        var = abs(sv)
        if var > nvars:
            raise ParseError("variable %d outside %d-variable header" % (var, nvars))
        if var not in quantified:
            raise ParseError("unquantified variable %d" % var)
        current.append(sv)
    if current:
        raise ParseError("clause missing terminating 0")
    if len(clauses) != nclauses:
        raise ParseError(
            "header announces %d clauses, found %d" % (nclauses, len(clauses))
        )
    try:
        return Qbf(tuple(quantifiers), tuple(clauses))
    except OracleError as exc:
        raise ParseError(str(exc)) from exc


# Circuit netlists ----------------------------------------------------------------


def parse_circuit(text: str):
    """Parse the circuit netlist format.

    Lines (``#`` comments): ``input <id> block <i>``, ``not <id> = <arg>``,
    ``and|or <id> = <arg>...``, ``output <id>``, ``weights k1 k2 ...``.
    Node ids are plain identifiers; acyclicity, gate arities and the
    block/weight arity are validated.
    """
    nodes: dict[str, Gate] = {}
    block_of: dict[str, int] = {}
    output: str | None = None
    weights: list[int] | None = None

    def ident(token: str, lineno: int) -> str:
        if not IDENT_RE.match(token):
            raise ParseError("node id %r is not a plain identifier" % token, lineno, 1)
        return token

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if head == "input":
            if len(parts) != 4 or parts[2] != "block" or not parts[3].isdigit():
                raise ParseError("malformed input line %r" % line, lineno, 1)
            nid = ident(parts[1], lineno)
            if nid in nodes:
                raise ParseError("duplicate node %r" % nid, lineno, 1)
            nodes[nid] = Gate("input")
            block_of[nid] = int(parts[3])
        elif head in ("not", "and", "or"):
            if len(parts) < 4 or parts[2] != "=":
                raise ParseError("malformed %s line %r" % (head, line), lineno, 1)
            nid = ident(parts[1], lineno)
            if nid in nodes:
                raise ParseError("duplicate node %r" % nid, lineno, 1)
            args = tuple(ident(a, lineno) for a in parts[3:])
            if head == "not" and len(args) != 1:
                raise ParseError("not-node takes exactly one argument", lineno, 1)
            nodes[nid] = Gate(head, args)
        elif head == "output":
            if len(parts) != 2:
                raise ParseError("malformed output line %r" % line, lineno, 1)
            if output is not None:
                raise ParseError("duplicate output line", lineno, 1)
            output = ident(parts[1], lineno)
        elif head == "weights":
            if weights is not None:
                raise ParseError("duplicate weights line", lineno, 1)
            if len(parts) < 2 or not all(p.isdigit() for p in parts[1:]):
                raise ParseError("malformed weights line %r" % line, lineno, 1)
            weights = [int(p) for p in parts[1:]]
        else:
            raise ParseError("unknown directive %r" % head, lineno, 1)

    if output is None:
        raise ParseError("missing output line")
    if weights is None:
        raise ParseError("missing weights line")
    if not block_of:
        raise ParseError("circuit has no inputs")
    indices = sorted(set(block_of.values()))
    if indices != list(range(1, len(indices) + 1)):
        raise ParseError("block indices must be 1..l without gaps")
    if len(weights) != len(indices):
        raise ParseError(
            "weights arity %d does not match %d blocks" % (len(weights), len(indices))
        )
    blocks = [
        tuple(sorted(n for n, b in block_of.items() if b == i)) for i in indices
    ]
    try:
        return make_circuit(nodes, output, blocks, weights)
    except OracleError as exc:
        raise ParseError(str(exc)) from exc


def print_circuit(circuit) -> str:
    lines = []
    for n, g in circuit.nodes:
        if g.kind == "input":
            lines.append("input %s block %d" % (n, circuit.block_of(n) + 1))
    for n, g in circuit.nodes:
        if g.kind != "input":
            lines.append("%s %s = %s" % (g.kind, n, " ".join(g.args)))
    lines.append("output %s" % circuit.output)
    lines.append("weights %s" % " ".join(str(w) for w in circuit.weights))
    return "\n".join(lines) + "\n"
