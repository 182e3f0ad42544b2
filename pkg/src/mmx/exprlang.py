"""Parser and evaluator for the module-expression command language.

Grammar:

    command := OPNAME {flag} {param} module {module}
    module  := term { "+" term }
    term    := atom [ "^" NAT ]
    atom    := "Z" | "Z/" NAT | "Pr(" NAT ")" | "Zp(" NAT ")" | "(" module ")"
    flag    := --ring=Z | --ring=p:<prime>

Whitespace only separates tokens; module operands are delimited by the
grammar itself ("tensor Z/12 Z/18" is unambiguous because a module ends
when no "+" or "^" follows).  Composite Z/n is normalized into prime-power
blocks at parse time.  Errors carry 1-based character positions.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import duality, homology, structure
from .errors import InvalidIndex, MmxError, ParseError, Unsupported
from .modules import (
    CanonicalModule,
    Pr,
    RingContext,
    Z_RING,
    Zp,
    cyclic,
    direct_sum,
    normalize,
    padic,
)
from .modules import Z as _z_block
from .modules import block_count, repeat

_MAX_DEPTH = 100
_MAX_BLOCKS = 10_000  # command-language guard; the library itself is unbounded

OPNAMES = {
    "hom": (0, 2),
    "tensor": (0, 2),
    "ext": (1, 2),
    "tor": (1, 2),
    "dual": (0, 1),
    "gamma": ("primes", 1),
    "localize": ("primes", 1),
    "complete": ("primes", 1),
    "supp": (0, 1),
    "ass": (0, 1),
    "att": (0, 1),
    "len": (0, 1),
    "ann": (0, 1),
    "classify": (0, 1),
    "reflexive": (0, 1),
    "bass": (2, 1),
    "betti": (2, 1),
    "theta": (1, 2),
    "bound": (0, 2),
    "vanish": (0, 2),
    "homc": (0, 2),
}


# --- expression trees ---------------------------------------------------------


@dataclass(frozen=True)
class ModuleExpr:
    def value(self) -> CanonicalModule:
        raise NotImplementedError


@dataclass(frozen=True)
class Atom(ModuleExpr):
    kind: str  # 'Z', 'Zn', 'Pr', 'Zp'
    arg: int | None = None

    def value(self) -> CanonicalModule:
        if self.kind == "Z":
            return normalize([_z_block()])
        if self.kind == "Zn":
            return cyclic(self.arg)
        if self.kind == "Pr":
            return normalize([Pr(self.arg)])
        return normalize([Zp(self.arg)])


@dataclass(frozen=True)
class Sum(ModuleExpr):
    terms: tuple[ModuleExpr, ...]

    def value(self) -> CanonicalModule:
        return direct_sum(*(t.value() for t in self.terms))


@dataclass(frozen=True)
class Pow(ModuleExpr):
    base: ModuleExpr
    count: int

    def value(self) -> CanonicalModule:
        base = self.base.value()
        if block_count(base) * self.count > _MAX_BLOCKS:
            raise Unsupported("module expression exceeds the block budget")
        return repeat(base, self.count)


@dataclass(frozen=True)
class Command:
    op: str
    ring: RingContext
    params: tuple
    exprs: tuple[ModuleExpr, ...]
    modules: tuple[CanonicalModule, ...]


# --- tokenizer ----------------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str  # 'name', 'nat', 'sym', 'flag'
    text: str
    pos: int  # 1-based


def _tokenize(text: str) -> list[_Token]:
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        pos = i + 1
        if ch == "-":
            j = i
            while j < n and not text[j].isspace():
                j += 1
            lexeme = text[i:j]
            if not lexeme.startswith("--ring="):
                raise ParseError(f"unknown flag {lexeme!r}", pos)
            out.append(_Token("flag", lexeme[len("--ring=") :], pos))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            out.append(_Token("name", text[i:j], pos))
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(_Token("nat", text[i:j], pos))
            i = j
            continue
        if ch in "+^()/:":
            out.append(_Token("sym", ch, pos))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", pos)
    return out


class _Parser:
    def __init__(self, tokens: list[_Token], text_len: int):
        self.tokens = tokens
        self.i = 0
        self.end_pos = text_len + 1

    def peek(self) -> _Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.end_pos)
        self.i += 1
        return tok

    def expect_sym(self, sym: str) -> _Token:
        tok = self.next()
        if tok.kind != "sym" or tok.text != sym:
            raise ParseError(f"expected {sym!r}", tok.pos)
        return tok

    def expect_nat(self) -> int:
        tok = self.next()
        if tok.kind != "nat":
            raise ParseError("expected a number", tok.pos)
        value = int(tok.text)
        if value <= 0:
            raise ParseError("numerals must be positive", tok.pos)
        return value

    def parse_atom(self, depth: int) -> ModuleExpr:
        if depth > _MAX_DEPTH:
            nxt = self.peek()
            raise ParseError(
                "expression nested too deeply", nxt.pos if nxt else self.end_pos
            )
        tok = self.next()
        if tok.kind == "sym" and tok.text == "(":
            inner = self.parse_module(depth + 1)
            self.expect_sym(")")
            return inner
        if tok.kind != "name":
            raise ParseError("expected a module atom", tok.pos)
        if tok.text == "Z":
            nxt = self.peek()
            if nxt is not None and nxt.kind == "sym" and nxt.text == "/":
                self.next()
                return Atom("Zn", self.expect_nat())
            return Atom("Z")
        if tok.text in ("Pr", "Zp"):
            self.expect_sym("(")
            p = self.expect_nat()
            self.expect_sym(")")
            return Atom(tok.text, p)
        raise ParseError(f"unknown atom {tok.text!r}", tok.pos)

    def parse_term(self, depth: int) -> ModuleExpr:
        atom = self.parse_atom(depth)
        nxt = self.peek()
        if nxt is not None and nxt.kind == "sym" and nxt.text == "^":
            self.next()
            return Pow(atom, self.expect_nat())
        return atom

    def parse_module(self, depth: int = 0) -> ModuleExpr:
        terms = [self.parse_term(depth)]
        while True:
            nxt = self.peek()
            if nxt is not None and nxt.kind == "sym" and nxt.text == "+":
                self.next()
                terms.append(self.parse_term(depth))
            else:
                break
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))


def _parse_ring(value: str, pos: int) -> RingContext:
    if value == "Z":
        return Z_RING
    if value.startswith("p:"):
        digits = value[2:]
        if not digits.isdigit():
            raise ParseError(f"bad ring flag value {value!r}", pos)
        return padic(int(digits))
    raise ParseError(f"bad ring flag value {value!r}", pos)


def parse(text: str) -> Command:
    tokens = _tokenize(text)
    parser = _Parser(tokens, len(text))
    tok = parser.next()
    if tok.kind != "name" or tok.text not in OPNAMES:
        raise ParseError(f"unknown operation {tok.text!r}", tok.pos)
    op = tok.text
    ring = Z_RING
    while True:
        nxt = parser.peek()
        if nxt is not None and nxt.kind == "flag":
            parser.next()
            ring = _parse_ring(nxt.text, nxt.pos)
        else:
            break
    param_spec, n_modules = OPNAMES[op]
    params: list = []
    if param_spec == "primes":
        while True:
            nxt = parser.peek()
            if nxt is not None and nxt.kind == "nat":
                params.append(parser.expect_nat())
            else:
                break
        if not params:
            nxt = parser.peek()
            raise ParseError(
                f"{op} requires at least one prime parameter",
                nxt.pos if nxt else parser.end_pos,
            )
    elif param_spec:
        # first param of ext/tor/theta/bass/betti is a homological degree (0 allowed)
        params.append(_nonneg_nat(parser))
        for _ in range(param_spec - 1):
            nxt = parser.peek()
            if (
                op in ("bass", "betti")
                and nxt is not None
                and nxt.kind == "name"
                and nxt.text == "generic"
            ):
                parser.next()
                params.append(homology.GENERIC)
            else:
                params.append(parser.expect_nat())
    exprs = tuple(parser.parse_module() for _ in range(n_modules))
    trailing = parser.peek()
    if trailing is not None:
        raise ParseError("unexpected trailing input", trailing.pos)
    modules = tuple(e.value() for e in exprs)
    if any(block_count(m) > _MAX_BLOCKS for m in modules):
        raise Unsupported("module expression exceeds the block budget")
    return Command(op, ring, tuple(params), exprs, modules)


def _nonneg_nat(parser: _Parser) -> int:
    tok = parser.next()
    if tok.kind != "nat":
        raise ParseError("expected a number", tok.pos)
    return int(tok.text)  # homological degrees may be 0


# --- evaluation ---------------------------------------------------------------


def _ok(result, **extra) -> dict:
    out = {"ok": True, "result": result}
    out.update(extra)
    return out


def eval_command(cmd: Command) -> dict:
    op, ctx, params, mods = cmd.op, cmd.ring, cmd.params, cmd.modules
    if op in ("hom", "tensor"):
        fn = homology.hom if op == "hom" else homology.tensor
        res = fn(ctx, mods[0], mods[1])
        return _ok(res.module.to_json(), ring=res.ring.to_json(), path=res.path)
    if op in ("ext", "tor"):
        fn = homology.ext if op == "ext" else homology.tor
        res = fn(params[0], ctx, mods[0], mods[1])
        return _ok(res.module.to_json(), ring=res.ring.to_json(), path=res.path)
    if op == "dual":
        res = duality.dual(ctx, mods[0])
        return _ok(res.module.to_json(), ring=res.ring.to_json())
    if op == "gamma":
        return _ok(structure.gamma(ctx, params, mods[0]).to_json())
    if op == "localize":
        return _ok(structure.localize(params, mods[0]).to_json())
    if op == "complete":
        return _ok(structure.complete(params, mods[0]).to_json())
    if op == "supp":
        return _ok(structure.support(ctx, mods[0]).to_json())
    if op == "ass":
        return _ok(structure.ass(ctx, mods[0]).to_json())
    if op == "att":
        return _ok(structure.att(mods[0]).to_json())
    if op == "len":
        return _ok(structure.length(mods[0]).to_json())
    if op == "ann":
        return _ok(structure.annihilator(mods[0]))
    if op == "classify":
        return _ok(structure.classify(ctx, mods[0]).to_json())
    if op == "reflexive":
        return _ok(duality.check_biduality(ctx, mods[0]))
    if op in ("bass", "betti"):
        fn = homology.bass if op == "bass" else homology.betti
        i, p = params
        if isinstance(i, str):
            raise InvalidIndex("homological degree cannot be 'generic'")
        return _ok(fn(i, p, mods[0]))
    if op == "theta":
        return _ok(homology.theta_check(params[0], mods[0], mods[1], ctx))
    if op == "bound":
        return _ok(homology.tensor_length_bound(mods[0], mods[1]).to_json())
    if op == "vanish":
        return _ok(homology.vanishing_tensor(mods[0], mods[1]).to_json())
    if op == "homc":
        res = homology.hom_theoremC(mods[0], mods[1])
        return _ok(
            res.module.to_json(),
            ring=res.ring.to_json(),
            path=res.path,
            annihilator_bound=homology.theoremC_annihilator_bound(mods[0], mods[1]),
        )
    raise AssertionError(f"unhandled op {op}")


def eval_text(text: str) -> dict:
    """Parse and evaluate; errors come back in-band, never as exceptions."""
    try:
        return eval_command(parse(text))
    except MmxError as exc:
        return {"ok": False, "error": type(exc).__name__, "detail": str(exc)}
    except RecursionError:
        return {"ok": False, "error": "ParseError", "detail": "input too deeply nested"}
