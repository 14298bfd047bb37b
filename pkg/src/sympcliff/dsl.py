"""Expression language for the CLI.

Grammar::

    expr    := term (("+"|"-") term)* ;
    term    := factor (("*"|"/") factor)* ;
    factor  := "-" factor | primary ("^" integer)? ;
    primary := number | ident | "(" expr ")" | "{" expr "," expr "}"
             | "[" expr "," expr "]" | ident "(" expr ("," expr)* ")" ;
    number  := integer ;            a/b is parsed as a division
    ident   := letter (letter|digit)* ;

Three evaluation modes pick the symbol set: ``quaternion`` (e, i, j, k),
``poly`` (q, p) and ``endf`` (id, J, A, B).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import endf as endf_mod
from .endf import Endo2
from .poisson import QuadPoly, format_poly, ham, ham_inverse, q_inner
from .quantize import spectrum as quantum_spectrum, weyl_quantize
from .quaternion import Quaternion, cross as vcross, dot as vdot
from .weyl import WeylElement, commutator as weyl_commutator

GRAMMAR = """\
expr    := term (("+"|"-") term)* ;
term    := factor (("*"|"/") factor)* ;
factor  := "-" factor | primary ("^" integer)? ;
primary := number | ident | "(" expr ")" | "{" expr "," expr "}"
         | "[" expr "," expr "]" | ident "(" expr ("," expr)* ")" ;
number  := integer ("/" positive-integer)? ;
ident   := letter (letter|digit)* ;
"""

FUNCTIONS = ("ham", "quantize", "spectrum", "cross", "dot")
MODES = ("quaternion", "poly", "endf")
MAX_DEPTH = 200
MAX_FOCK_DIM = 64
SYMBOLS = {
    "quaternion": {"e": Quaternion(1), "i": Quaternion(0, (1, 0, 0)),
                   "j": Quaternion(0, (0, 1, 0)), "k": Quaternion(0, (0, 0, 1))},
    "endf": dict(endf_mod.BASIS),
}


class DslError(Exception):
    def __init__(self, message: str, position=None, expected=None):
        self.message = message
        self.position = position
        self.expected = tuple(expected) if expected else ()
        where = f" at byte {position}" if position is not None else ""
        super().__init__(message + where)


class LexError(DslError):
    pass


class ParseError(DslError):
    pass


class EvalError(DslError):
    pass


# -- tokens -----------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


_SINGLE = {
    "+": "Op", "-": "Op", "*": "Op", "/": "Op", "^": "Caret",
    "(": "LParen", ")": "RParen", "{": "LBrace", "}": "RBrace",
    "[": "LBracket", "]": "RBracket", ",": "Comma",
}


def _is_letter(ch):
    return ("a" <= ch <= "z") or ("A" <= ch <= "Z")


def tokenize(text) -> list:
    text = _decode(text)
    tokens = []
    i = 0
    pos = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            pos += 1
            continue
        start = pos
        if ch.isascii() and ch.isdigit():
            j = i
            while j < n and text[j].isascii() and text[j].isdigit():
                j += 1
            tokens.append(Token("Number", text[i:j], start))
        elif _is_letter(ch):
            j = i
            while j < n and (_is_letter(text[j]) or (text[j].isascii() and text[j].isdigit())):
                j += 1
            tokens.append(Token("Ident", text[i:j], start))
        elif ch in _SINGLE:
            j = i + 1
            tokens.append(Token(_SINGLE[ch], ch, start))
        else:
            raise LexError(f"unexpected character {ch!r}", start)
        pos += len(text[i:j].encode("utf-8"))
        i = j
    return tokens


# -- syntax tree ------------------------------------------------------------

@dataclass(frozen=True)
class Expr:
    pos: int = field(default=0, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Literal(Expr):
    value: Fraction


@dataclass(frozen=True)
class Symbol(Expr):
    name: str


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class BinOp(Expr):
    left: Expr
    right: Expr


class Add(BinOp):
    pass


class Sub(BinOp):
    pass


class Mul(BinOp):
    pass


class Div(BinOp):
    pass


class PoissonBracket(BinOp):
    pass


class Commutator(BinOp):
    pass


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True)
class Call(Expr):
    name: str
    args: tuple


class _Parser:
    def __init__(self, tokens, end):
        self.tokens = tokens
        self.i = 0
        self.end = end
        self.depth = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def error(self, expected):
        tok = self.peek()
        got = repr(tok.text) if tok else "end of input"
        where = tok.position if tok else self.end
        raise ParseError(f"expected {' or '.join(expected)}, got {got}", where, expected)

    def take(self, kind, text=None):
        tok = self.peek()
        if tok is None or tok.kind != kind or (text is not None and tok.text != text):
            self.error([repr(text) if text else kind])
        self.i += 1
        return tok

    def at(self, kind, *texts):
        tok = self.peek()
        return tok is not None and tok.kind == kind and (not texts or tok.text in texts)

    def expr(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            tok = self.peek()
            raise ParseError("expression nested too deeply", tok.position if tok else self.end)
        node = self.term()
        while self.at("Op", "+", "-"):
            tok = self.take("Op")
            cls = Add if tok.text == "+" else Sub
            node = cls(node, self.term(), pos=tok.position)
        self.depth -= 1
        return node

    def term(self):
        node = self.factor()
        while self.at("Op", "*", "/"):
            tok = self.take("Op")
            cls = Mul if tok.text == "*" else Div
            node = cls(node, self.factor(), pos=tok.position)
        return node

    def factor(self):
        if self.at("Op", "-"):
            tok = self.take("Op")
            self.depth += 1
            if self.depth > MAX_DEPTH:
                raise ParseError("expression nested too deeply", tok.position)
            node = Neg(self.factor(), pos=tok.position)
            self.depth -= 1
            return node
        node = self.primary()
        if self.at("Caret"):
            tok = self.take("Caret")
            num = self.take("Number")
            k = int(num.text)
            if k not in (1, 2):
                raise ParseError("exponent must be 1 or 2", num.position)
            node = Pow(node, k, pos=tok.position)
        return node

    def pair(self, close):
        left = self.expr()
        self.take("Comma")
        right = self.expr()
        self.take(close)
        return left, right

    def primary(self):
        tok = self.peek()
        if tok is None:
            self.error(["number", "identifier", "'('", "'{'", "'['"])
        if tok.kind == "Number":
            self.i += 1
            return Literal(Fraction(int(tok.text)), pos=tok.position)
        if tok.kind == "Ident":
            self.i += 1
            if self.at("LParen"):
                if tok.text not in FUNCTIONS:
                    raise ParseError(f"unknown function {tok.text!r}", tok.position, FUNCTIONS)
                self.take("LParen")
                args = [self.expr()]
                while self.at("Comma"):
                    self.take("Comma")
                    args.append(self.expr())
                self.take("RParen")
                return Call(tok.text, tuple(args), pos=tok.position)
            return Symbol(tok.text, pos=tok.position)
        if tok.kind == "LParen":
            self.i += 1
            node = self.expr()
            self.take("RParen")
            return node
        if tok.kind == "LBrace":
            self.i += 1
            return PoissonBracket(*self.pair("RBrace"), pos=tok.position)
        if tok.kind == "LBracket":
            self.i += 1
            return Commutator(*self.pair("RBracket"), pos=tok.position)
        self.error(["number", "identifier", "'('", "'{'", "'['"])


def _decode(raw) -> str:
    if isinstance(raw, (bytes, bytearray)):
        try:
            return bytes(raw).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise LexError("input is not valid UTF-8", exc.start) from None
    return raw


def parse(source) -> Expr:
    """Parse a string, UTF-8 bytes or a token list into an expression tree."""
    source = _decode(source)
    if isinstance(source, str):
        end = len(source.encode("utf-8"))
        tokens = tokenize(source)
    else:
        tokens = list(source)
        end = tokens[-1].position + len(tokens[-1].text) if tokens else 0
    p = _Parser(tokens, end)
    node = p.expr()
    if p.peek() is not None:
        p.error(["operator", "end of input"])
    return node


# -- pretty printer ---------------------------------------------------------

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4}


def _prec(e):
    return _PREC.get(type(e), 5)


def print_expr(e: Expr, level: int = 0) -> str:
    if isinstance(e, Literal):
        v = e.value
        if v.denominator == 1 and v >= 0:
            text = str(v.numerator)
        else:
            text = f"({'-' if v < 0 else ''}{abs(v.numerator)}/{v.denominator})" \
                if v.denominator != 1 else f"(-{abs(v.numerator)})"
        return text
    if isinstance(e, Symbol):
        text = e.name
    elif isinstance(e, Neg):
        text = "-" + print_expr(e.operand, 3)
    elif isinstance(e, Pow):
        text = f"{print_expr(e.base, 5)}^{e.exponent}"
    elif isinstance(e, (Add, Sub, Mul, Div)):
        p = _prec(e)
        op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(e)]
        text = f"{print_expr(e.left, p)} {op} {print_expr(e.right, p + 1)}"
    elif isinstance(e, PoissonBracket):
        text = f"{{{print_expr(e.left)}, {print_expr(e.right)}}}"
    elif isinstance(e, Commutator):
        text = f"[{print_expr(e.left)}, {print_expr(e.right)}]"
    elif isinstance(e, Call):
        text = f"{e.name}({', '.join(print_expr(a) for a in e.args)})"
    else:
        raise TypeError(f"not an expression: {e!r}")
    if _prec(e) < level:
        return f"({text})"
    return text


# -- evaluation -------------------------------------------------------------

class Poly:
    """Polynomial in q, p of total degree at most two."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = {k: Fraction(v) for k, v in terms.items() if v}

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    def degree(self):
        return max((a + b for a, b in self.terms), default=0)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __add__(self, o):
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, 0) + v
        return Poly(out)

    def __neg__(self):
        return Poly({k: -v for k, v in self.terms.items()})

    def __mul__(self, o):
        out = {}
        for (a, b), c in self.terms.items():
            for (x, y), d in o.terms.items():
                key = (a + x, b + y)
                out[key] = out.get(key, 0) + c * d
        result = Poly(out)
        if result.degree() > 2:
            raise ValueError("degree above 2 leaves the quadratic algebra")
        return result

    def derivative(self, var):
        out = {}
        for (a, b), c in self.terms.items():
            if var == "q" and a:
                out[(a - 1, b)] = out.get((a - 1, b), 0) + a * c
            if var == "p" and b:
                out[(a, b - 1)] = out.get((a, b - 1), 0) + b * c
        return Poly(out)

    def bracket(self, o):
        return (self.derivative("q") * o.derivative("p")
                + -(self.derivative("p") * o.derivative("q")))

    def as_quad(self):
        if any(a + b != 2 for a, b in self.terms):
            return None
        t = self.terms
        return QuadPoly(t.get((2, 0), 0), t.get((0, 2), 0), t.get((1, 1), 0))

    def __str__(self):
        return format_poly(self.terms)


def _poly_of(quad: QuadPoly) -> Poly:
    return Poly({(2, 0): quad.cqq, (0, 2): quad.cpp, (1, 1): quad.cqp})


@dataclass(frozen=True)
class Spectrum:
    values: tuple

    def __str__(self):
        return "[" + ", ".join(f"{v:.12g}" for v in self.values) + "]"


def _is_scalar(v):
    return isinstance(v, Fraction)


def _type_name(v):
    return {Fraction: "number", Quaternion: "quaternion", Poly: "polynomial",
            Endo2: "matrix", WeylElement: "operator", Spectrum: "spectrum"}.get(type(v), type(v).__name__)


class _Evaluator:
    def __init__(self, mode):
        if mode not in MODES:
            raise EvalError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
        self.mode = mode

    def fail(self, node, message):
        raise EvalError(message, node.pos)

    def eval(self, node):
        method = getattr(self, "eval_" + type(node).__name__)
        try:
            return method(node)
        except ZeroDivisionError as exc:
            self.fail(node, f"division by zero: {exc}")
        except (ValueError, ArithmeticError) as exc:
            self.fail(node, str(exc))

    def eval_Literal(self, node):
        return Fraction(node.value)

    def eval_Symbol(self, node):
        name = node.name
        if self.mode == "poly":
            if name == "q":
                return Poly({(1, 0): 1})
            if name == "p":
                return Poly({(0, 1): 1})
        elif name in SYMBOLS[self.mode]:
            return SYMBOLS[self.mode][name]
        allowed = {"poly": "q, p", "quaternion": "e, i, j, k", "endf": "id, J, A, B"}[self.mode]
        self.fail(node, f"unknown symbol {name!r} in {self.mode} mode (symbols: {allowed})")

    def _lift(self, node, v):
        """Promote a number into the mode's ambient algebra."""
        if not _is_scalar(v):
            return v
        if self.mode == "poly":
            return Poly.const(v)
        if self.mode == "quaternion":
            return Quaternion(v)
        return endf_mod.ID.scale(v)

    def _pair(self, node, l, r):
        if _is_scalar(l) and _is_scalar(r):
            return l, r
        if isinstance(l, Spectrum) or isinstance(r, Spectrum):
            self.fail(node, "spectra do not support arithmetic")
        if isinstance(l, WeylElement) or isinstance(r, WeylElement):
            return self._to_weyl(node, l), self._to_weyl(node, r)
        l, r = self._lift(node, l), self._lift(node, r)
        if type(l) is not type(r):
            self.fail(node, f"cannot combine {_type_name(l)} with {_type_name(r)}")
        return l, r

    def _to_weyl(self, node, v):
        if isinstance(v, WeylElement):
            return v
        if _is_scalar(v):
            return WeylElement.scalar(v)
        self.fail(node, f"cannot combine {_type_name(v)} with an operator")

    def eval_Neg(self, node):
        v = self.eval(node.operand)
        if isinstance(v, Spectrum):
            self.fail(node, "spectra do not support arithmetic")
        return -v

    def eval_Add(self, node):
        l, r = self._pair(node, self.eval(node.left), self.eval(node.right))
        return l + r

    def eval_Sub(self, node):
        l, r = self._pair(node, self.eval(node.left), self.eval(node.right))
        return l + (-r)

    def _mul(self, node, l, r):
        if isinstance(l, Spectrum) or isinstance(r, Spectrum):
            self.fail(node, "spectra do not support arithmetic")
        if _is_scalar(l) and _is_scalar(r):
            return l * r
        if _is_scalar(l) or _is_scalar(r):
            s, v = (l, r) if _is_scalar(l) else (r, l)
            if isinstance(v, Poly):
                return v * Poly.const(s)
            if isinstance(v, Endo2):
                return v.scale(s)
            return v * s
        l, r = self._pair(node, l, r)
        if isinstance(l, Endo2):
            return l @ r
        return l * r

    def eval_Mul(self, node):
        return self._mul(node, self.eval(node.left), self.eval(node.right))

    def eval_Div(self, node):
        l, r = self.eval(node.left), self.eval(node.right)
        if _is_scalar(r):
            if r == 0:
                self.fail(node, "division by zero")
            return self._mul(node, l, 1 / r)
        if isinstance(r, Quaternion) and isinstance(self._lift(node, l), Quaternion):
            return self._lift(node, l) * r.inverse()
        self.fail(node, f"cannot divide by a {_type_name(r)}")

    def eval_Pow(self, node):
        v = self.eval(node.base)
        out = v
        for _ in range(node.exponent - 1):
            out = self._mul(node, out, v)
        return out

    def eval_PoissonBracket(self, node):
        if self.mode != "poly":
            self.fail(node, f"{{,}} is the Poisson bracket and only exists in poly mode, not {self.mode} mode")
        l, r = self._lift(node, self.eval(node.left)), self._lift(node, self.eval(node.right))
        if not (isinstance(l, Poly) and isinstance(r, Poly)):
            self.fail(node, "Poisson brackets take polynomials")
        return l.bracket(r)

    def eval_Commutator(self, node):
        l, r = self._pair(node, self.eval(node.left), self.eval(node.right))
        if _is_scalar(l):
            return Fraction(0)
        if isinstance(l, Endo2):
            return endf_mod.commutator(l, r)
        if isinstance(l, WeylElement):
            return weyl_commutator(l, r)
        return l * r + -(r * l)

    def _quad_arg(self, node, v):
        if isinstance(v, Poly):
            quad = v.as_quad()
            if quad is not None:
                return quad
        if _is_scalar(v) and v == 0:
            return QuadPoly()
        self.fail(node, f"{node.name} expects a homogeneous quadratic polynomial")

    def eval_Call(self, node):
        name = node.name
        args = [self.eval(a) for a in node.args]
        if name in ("ham", "quantize", "spectrum") and self.mode != "poly":
            self.fail(node, f"{name}() is only available in poly mode")
        if name == "ham":
            self._arity(node, args, 1)
            return ham(self._quad_arg(node, args[0])).matrix
        if name == "quantize":
            self._arity(node, args, 1)
            return weyl_quantize(self._quad_arg(node, args[0]))
        if name == "spectrum":
            if len(args) not in (1, 2):
                self.fail(node, "spectrum() takes a polynomial and an optional Fock dimension")
            dim = 8
            if len(args) == 2:
                d = args[1]
                if not (_is_scalar(d) and d.denominator == 1 and 3 <= d <= MAX_FOCK_DIM):
                    self.fail(node, f"Fock dimension must be an integer in 3..{MAX_FOCK_DIM}")
                dim = int(d)
            return Spectrum(tuple(quantum_spectrum(self._quad_arg(node, args[0]), dim)))
        self._arity(node, args, 2)
        l, r = args
        if self.mode == "quaternion":
            l, r = self._lift(node, l), self._lift(node, r)
            if not (isinstance(l, Quaternion) and isinstance(r, Quaternion)
                    and l.is_pure() and r.is_pure()):
                self.fail(node, f"{name}() takes pure quaternions")
            if name == "dot":
                return vdot(l.vec, r.vec)
            return Quaternion(0, vcross(l.vec, r.vec))
        if self.mode == "endf":
            if not (isinstance(l, Endo2) and isinstance(r, Endo2)):
                self.fail(node, f"{name}() takes matrices")
            if name == "dot":
                return endf_mod.trace_inner(l, r)
            if not (endf_mod.in_sp(l) and endf_mod.in_sp(r)):
                self.fail(node, "cross() takes traceless matrices")
            return endf_mod.sp_cross(l, r)
        fq, gq = self._quad_arg(node, l), self._quad_arg(node, r)
        if name == "dot":
            return q_inner(fq, gq)
        return _poly_of(ham_inverse(endf_mod.sp_cross(ham(fq).matrix, ham(gq).matrix)))

    def _arity(self, node, args, k):
        if len(args) != k:
            self.fail(node, f"{node.name}() takes {k} argument{'s' if k > 1 else ''}")


def evaluate(e, mode: str = "poly"):
    """Evaluate a parsed expression (or source text) in ``mode``."""
    if isinstance(e, (str, bytes, bytearray)):
        e = parse(e)
    return _Evaluator(mode).eval(e)


def format_value(v) -> str:
    return str(v)


def value_to_json(v):
    if isinstance(v, Fraction):
        return {"type": "number", "value": str(v)}
    if isinstance(v, Quaternion):
        return {"type": "quaternion", "value": str(v),
                "components": [str(c) for c in v.components()]}
    if isinstance(v, Poly):
        quad = v.as_quad()
        out = {"type": "polynomial", "value": str(v)}
        if quad is not None:
            out["quadratic"] = {"q^2": str(quad.cqq), "p^2": str(quad.cpp), "q*p": str(quad.cqp)}
        return out
    if isinstance(v, Endo2):
        return {"type": "matrix", "value": [[str(x) for x in row] for row in v.rows()]}
    if isinstance(v, WeylElement):
        return {"type": "operator", "value": str(v), "terms": [
            {"q": m, "p": n, "re": str(c.re), "im": str(c.im)}
            for (m, n), c in sorted(v.terms.items())]}
    if isinstance(v, Spectrum):
        return {"type": "spectrum", "value": [float(x) for x in v.values]}
    if isinstance(v, np.ndarray):
        return {"type": "matrix", "value": [[[float(z.real), float(z.imag)] for z in row] for row in v]}
    raise TypeError(f"cannot serialize {v!r}")
